//! Exact coefficient families of the weighted energy identities.
//!
//! * `c_{n,k}`: `-⟨Sⁿu, SⁿΔu⟩ = Σ_k c_{n,k} ‖∇S^k u‖²`.
//! * `c'_{n,k}`: `⟨Sⁿu, (S-2)ⁿu⟩ = Σ_k c'_{n,k} ‖S^k u‖²`.
//! * `d_{n,k} = min{0, c_{n,k}}` and the nonnegative `a`, `a'` built from them.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{EnergyError, Result};
use crate::poly::Poly;
use crate::rational::{neg_part, Exact};

/// Largest order the tables are built for.
pub const MAX_ORDER: usize = 12;

/// `S* = -S - 5` for the vector scaling field `S = x·∇ - 1`.
pub const ADJOINT_SHIFT: i64 = 5;

fn check(n: usize, k: usize) -> Result<()> {
    if k > n {
        Err(EnergyError::Domain(format!("k = {k} exceeds n = {n}")))
    } else if n > MAX_ORDER {
        Err(EnergyError::Domain(format!("n = {n} exceeds the supported order {MAX_ORDER}")))
    } else {
        Ok(())
    }
}

/// Coefficient of `x^k` in `(x + 3/2)(-1)^{n-k}(x + 3)^{n-k-1}(x - 2)^n`, and 1 on the diagonal.
pub fn c_coeff<Q: Exact>(n: usize, k: usize) -> Result<Q> {
    check(n, k)?;
    if k == n {
        return Ok(Q::one());
    }
    let p =
        Poly::linear(Q::frac(3, 2)).mul(&Poly::linear(Q::int(3)).pow(n - k - 1)).mul(&Poly::linear(Q::int(-2)).pow(n));
    let sign = if (n - k) % 2 == 0 { Q::one() } else { -Q::one() };
    Ok(p.coeff(k) * sign)
}

/// `min{0, c_{n,k}}` below the diagonal, 1 on it.
pub fn d_coeff<Q: Exact>(n: usize, k: usize) -> Result<Q> {
    check(n, k)?;
    if k == n {
        Ok(Q::one())
    } else {
        Ok(neg_part(&c_coeff::<Q>(n, k)?))
    }
}

/// Expansion of `⟨S^a u, T S^b u⟩` in the diagonal quantities `⟨S^j u, T S^j u⟩`,
/// where `T` is self-adjoint and `S* T = -T(S + shift)`.
struct Pairings<Q> {
    shift: Q,
    memo: HashMap<(usize, usize), Vec<Q>>,
}

impl<Q: Exact> Pairings<Q> {
    fn new(shift: i64) -> Self {
        Self { shift: Q::int(shift), memo: HashMap::new() }
    }

    fn get(&mut self, a: usize, b: usize) -> Vec<Q> {
        let (a, b) = if a < b { (b, a) } else { (a, b) };
        if let Some(v) = self.memo.get(&(a, b)) {
            return v.clone();
        }
        let mut out = vec![Q::zero(); a + 1];
        if a == b {
            out[a] = Q::one();
        } else if a == b + 1 {
            // ⟨S v, T v⟩ = -⟨v, T S v⟩ - shift⟨v, T v⟩ and both pairings agree.
            out[b] = -self.shift.clone() / Q::int(2);
        } else {
            // Move one S across: ⟨S^a u, T S^b u⟩ = -⟨S^{a-1}u, T S^{b+1}u⟩ - shift⟨S^{a-1}u, T S^b u⟩.
            let left = self.get(a - 1, b + 1);
            let right = self.get(a - 1, b);
            for (j, v) in left.into_iter().enumerate() {
                out[j] = out[j].clone() - v;
            }
            for (j, v) in right.into_iter().enumerate() {
                out[j] = out[j].clone() - self.shift.clone() * v;
            }
        }
        self.memo.insert((a, b), out.clone());
        out
    }

    /// `⟨Sⁿu, T(S-2)ⁿu⟩` in the diagonal quantities.
    fn against_shifted(&mut self, n: usize) -> Vec<Q> {
        let mut out = vec![Q::zero(); n + 1];
        for j in 0..=n {
            let w = binomial::<Q>(n, j) * Q::int(-2).pow_u(n - j);
            for (i, v) in self.get(n, j).into_iter().enumerate() {
                out[i] = out[i].clone() + w.clone() * v;
            }
        }
        out
    }
}

trait PowU {
    fn pow_u(self, e: usize) -> Self;
}

impl<Q: Exact> PowU for Q {
    fn pow_u(self, e: usize) -> Self {
        (0..e).fold(Q::one(), |acc, _| acc * self.clone())
    }
}

fn binomial<Q: Exact>(n: usize, k: usize) -> Q {
    (0..k).fold(Q::one(), |acc, i| acc * Q::int((n - i) as i64) / Q::int((i + 1) as i64))
}

/// `c_{n,·}` from the operator rules alone: `SΔ = Δ(S-2)`, `S* = -S-5`, and
/// `⟨S^k u, ΔS^k u⟩ = -‖∇S^k u‖²`.
pub fn derive_c<Q: Exact>(n: usize) -> Result<Vec<Q>> {
    check(n, n)?;
    // With T = Δ: S*Δ = -(S+5)Δ = -Δ(S+3).
    let mut p = Pairings::<Q>::new(ADJOINT_SHIFT - 2);
    // The diagonal pairings are -‖∇S^j u‖²; that sign cancels the one in front of the identity.
    Ok(p.against_shifted(n))
}

/// `c'_{n,·}` with `⟨Sⁿu, (S-2)ⁿu⟩ = Σ c'_{n,k}‖S^k u‖²`, from `S* = -S-5` alone.
pub fn derive_cprime<Q: Exact>(n: usize) -> Result<Vec<Q>> {
    check(n, n)?;
    Ok(Pairings::<Q>::new(ADJOINT_SHIFT).against_shifted(n))
}

pub fn cprime_coeff<Q: Exact>(n: usize, k: usize) -> Result<Q> {
    check(n, k)?;
    Ok(derive_cprime::<Q>(n)?.swap_remove(k))
}

// a_{n,j} = Σ_{k=j}^{n-1} |w_{n,k}| a_{k,j}, a_{n,n} = 1, for the weights w.
fn lower_recursion<Q: Exact>(n_max: usize, weight: impl Fn(usize, usize) -> Result<Q>) -> Result<Vec<Vec<Q>>> {
    let mut a: Vec<Vec<Q>> = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let mut row = vec![Q::zero(); n + 1];
        row[n] = Q::one();
        let w: Vec<Q> = (0..n).map(|k| weight(n, k).map(|v| neg_part(&v).abs())).collect::<Result<_>>()?;
        for j in 0..n {
            let mut s = Q::zero();
            for k in j..n {
                s = s + w[k].clone() * a[k][j].clone();
            }
            row[j] = s;
        }
        a.push(row);
    }
    Ok(a)
}

/// `a_{n,k}` from `a_{n,j} = Σ_{k=j}^{n-1} |d_{n,k}| a_{k,j}`.
pub fn a_coeff<Q: Exact>(n: usize, k: usize) -> Result<Q> {
    check(n, k)?;
    Ok(lower_recursion::<Q>(n, c_coeff)?[n][k].clone())
}

/// `a'_{n,k} = Σ_{j=k}^{n-1} |min{c'_{n,j}, 0}| a'_{k,j}`, read literally.
///
/// `a'_{k,j}` vanishes for `j > k`, so only `j = k` survives and this is
/// `|min{c'_{n,k}, 0}|`. See [`a_prime_reconciled`] for the recursion that
/// matches the induction.
pub fn a_prime_coeff<Q: Exact>(n: usize, k: usize) -> Result<Q> {
    check(n, k)?;
    if k == n {
        return Ok(Q::one());
    }
    Ok(neg_part(&cprime_coeff::<Q>(n, k)?).abs())
}

/// `a'_{n,j} = Σ_{k=j}^{n-1} |min{c'_{n,k}, 0}| a'_{k,j}`, the same shape as `a`.
pub fn a_prime_reconciled<Q: Exact>(n: usize, k: usize) -> Result<Q> {
    check(n, k)?;
    let rows: Vec<Vec<Q>> = (0..=n).map(derive_cprime::<Q>).collect::<Result<_>>()?;
    Ok(lower_recursion::<Q>(n, |m, j| Ok(rows[m][j].clone()))?[n][k].clone())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Family {
    C,
    D,
    A,
    APrime,
    APrimeReconciled,
    CPrime,
}

impl Family {
    pub const ALL: [Family; 6] =
        [Family::C, Family::D, Family::A, Family::APrime, Family::APrimeReconciled, Family::CPrime];

    pub fn name(self) -> &'static str {
        match self {
            Family::C => "c",
            Family::D => "d",
            Family::A => "a",
            Family::APrime => "a_prime",
            Family::APrimeReconciled => "a_prime_reconciled",
            Family::CPrime => "c_prime",
        }
    }

    pub fn parse(s: &str) -> Option<Family> {
        Family::ALL.into_iter().find(|f| f.name() == s)
    }
}

/// One family for `0 ≤ k ≤ n ≤ n_max`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoeffTable<Q> {
    pub family: Family,
    pub entries: BTreeMap<(usize, usize), Q>,
}

impl<Q: Exact> CoeffTable<Q> {
    pub fn build(family: Family, n_max: usize) -> Result<Self> {
        check(n_max, 0)?;
        let mut entries = BTreeMap::new();
        match family {
            Family::A => {
                for (n, row) in lower_recursion::<Q>(n_max, c_coeff)?.into_iter().enumerate() {
                    entries.extend(row.into_iter().enumerate().map(|(k, v)| ((n, k), v)));
                }
            }
            Family::APrimeReconciled => {
                let rows: Vec<Vec<Q>> = (0..=n_max).map(derive_cprime::<Q>).collect::<Result<_>>()?;
                for (n, row) in lower_recursion::<Q>(n_max, |m, j| Ok(rows[m][j].clone()))?.into_iter().enumerate() {
                    entries.extend(row.into_iter().enumerate().map(|(k, v)| ((n, k), v)));
                }
            }
            Family::CPrime => {
                for n in 0..=n_max {
                    entries.extend(derive_cprime::<Q>(n)?.into_iter().enumerate().map(|(k, v)| ((n, k), v)));
                }
            }
            _ => {
                for n in 0..=n_max {
                    for k in 0..=n {
                        let v = match family {
                            Family::C => c_coeff(n, k)?,
                            Family::D => d_coeff(n, k)?,
                            _ => a_prime_coeff(n, k)?,
                        };
                        entries.insert((n, k), v);
                    }
                }
            }
        }
        Ok(Self { family, entries })
    }

    pub fn get(&self, n: usize, k: usize) -> Option<&Q> {
        self.entries.get(&(n, k))
    }

    pub fn row(&self, n: usize) -> Vec<Q> {
        self.entries.range((n, 0)..=(n, n)).map(|(_, v)| v.clone()).collect()
    }

    pub fn min_entry(&self) -> Option<Q> {
        self.entries.values().cloned().reduce(|a, b| if b < a { b } else { a })
    }

    /// `n,k,numerator,denominator` with a header row.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("n,k,numerator,denominator\n");
        for ((n, k), v) in &self.entries {
            let (num, den) = v.parts();
            writeln!(s, "{n},{k},{num},{den}").expect("writing to a String");
        }
        s
    }
}
