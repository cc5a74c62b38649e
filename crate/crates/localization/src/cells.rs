//! Dyadic shells `P_k` and the anisotropic cells `P_{k,p}`, `P_{k,p,q}`.
//!
//! The anisotropy indices run over `p, q ≤ 0`. On a finite grid the families
//! are closed off by a floor level: the floor weight is the cumulative cap
//! `ψ(2^{-p_min} s)`, so that the floor plus the finite levels `p_min+1..=0`
//! telescope to exactly one.

use std::fmt;

use nsc_spectral::{Grid, Real, SpectralField};

use crate::bump::{dyadic, dyadic_cap};

/// Default lowest anisotropy exponent.
pub const DEFAULT_FLOOR: i32 = -24;

/// One anisotropy level; `Floor` collects everything below the finite range.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Level {
    Floor,
    At(i32),
}

pub const P_FLOOR: Level = Level::Floor;
pub const Q_FLOOR: Level = Level::Floor;

impl Level {
    /// Exponent used in weights; the floor counts as its configured minimum.
    pub fn exponent(self, floor: i32) -> i32 {
        match self {
            Level::Floor => floor,
            Level::At(p) => p,
        }
    }

    pub fn is_floor(self) -> bool {
        matches!(self, Level::Floor)
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Level::Floor => write!(f, "floor"),
            Level::At(p) => write!(f, "{p}"),
        }
    }
}

/// Index of a localization cell. Orders lexicographically in `(k, p, q, l)`
/// with floors before finite levels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CellIndex {
    pub k: i32,
    pub p: Level,
    pub q: Level,
    pub l: Option<u32>,
}

impl CellIndex {
    pub fn new(k: i32, p: Level, q: Level) -> Self {
        Self { k, p, q, l: None }
    }

    pub fn with_l(self, l: u32) -> Self {
        Self { l: Some(l), ..self }
    }
}

impl fmt::Display for CellIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(k={}, p={}, q={}", self.k, self.p, self.q)?;
        if let Some(l) = self.l {
            write!(f, ", l={l}")?;
        }
        write!(f, ")")
    }
}

/// Horizontal share `√(1-Λ²) = |ξ_h|/|ξ|` and `Λ = ξ_3/|ξ|`; `None` at `ξ = 0`.
pub fn anisotropy<T: Real>(xi: [T; 3]) -> Option<(T, T)> {
    let h = (xi[0] * xi[0] + xi[1] * xi[1]).sqrt();
    let r = (h * h + xi[2] * xi[2]).sqrt();
    if r == T::zero() {
        None
    } else {
        Some((h / r, xi[2] / r))
    }
}

/// Floor exponents for the `p` and `q` families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Partition {
    pub p_min: i32,
    pub q_min: i32,
}

impl Default for Partition {
    fn default() -> Self {
        Self { p_min: DEFAULT_FLOOR, q_min: DEFAULT_FLOOR }
    }
}

impl Partition {
    /// Finite and floor levels of the `p` family, floor first.
    pub fn p_levels(&self) -> Vec<Level> {
        levels(self.p_min)
    }

    pub fn q_levels(&self) -> Vec<Level> {
        levels(self.q_min)
    }

    pub fn p_weight<T: Real>(&self, p: Level, horizontal: T) -> T {
        level_weight(p, horizontal, self.p_min)
    }

    pub fn q_weight<T: Real>(&self, q: Level, lambda: T) -> T {
        level_weight(q, lambda.abs(), self.q_min)
    }

    /// `2^{2p} + 2^q ∈ [2^{-3}, 2^3]`, floors counted at their exponents.
    pub fn admissible(&self, p: Level, q: Level) -> bool {
        let v = 2f64.powi(2 * p.exponent(self.p_min)) + 2f64.powi(q.exponent(self.q_min));
        (0.125..=8.0).contains(&v)
    }

    /// Levels of the family whose weight at `x ∈ [0, 1]` is nonzero, with weights.
    pub fn levels_at<T: Real>(&self, x: T, floor: i32) -> Vec<(Level, T)> {
        let mut out = Vec::with_capacity(2);
        let w = dyadic_cap(x, floor);
        if w > T::zero() {
            out.push((Level::Floor, w));
        }
        if x > T::zero() {
            // φ(2^{-p} x) ≠ 0 only for x ∈ (2^{p-1}, 2^{p+1}).
            let c = x.to64().log2().floor() as i32;
            for p in [c, c + 1] {
                if p > floor && p <= 0 {
                    let w = dyadic(x, p);
                    if w > T::zero() {
                        out.push((Level::At(p), w));
                    }
                }
            }
        }
        out
    }

    /// All `(k, p, q)` cells with a nonzero weight at `ξ`, each with its weight.
    pub fn cells_at<T: Real>(&self, xi: [T; 3]) -> Vec<(CellIndex, T)> {
        let Some((s, lambda)) = anisotropy(xi) else { return Vec::new() };
        let r = (xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]).sqrt();
        let ps = self.levels_at(s, self.p_min);
        let qs = self.levels_at(lambda.abs(), self.q_min);
        let mut out = Vec::with_capacity(8);
        for (k, wk) in shells_at(r) {
            for &(p, wp) in &ps {
                for &(q, wq) in &qs {
                    out.push((CellIndex::new(k, p, q), wk * wp * wq));
                }
            }
        }
        out
    }

    /// Multiplier `φ_{k,p}(ξ)`.
    pub fn kp_weight<T: Real>(&self, k: i32, p: Level, xi: [T; 3]) -> T {
        match anisotropy(xi) {
            None => T::zero(),
            Some((s, _)) => shell_weight(k, xi) * self.p_weight(p, s),
        }
    }

    /// Multiplier `φ_{k,p,q}(ξ)`.
    pub fn kpq_weight<T: Real>(&self, k: i32, p: Level, q: Level, xi: [T; 3]) -> T {
        match anisotropy(xi) {
            None => T::zero(),
            Some((s, lambda)) => shell_weight(k, xi) * self.p_weight(p, s) * self.q_weight(q, lambda),
        }
    }

    pub fn apply_pkp<T: Real>(&self, f: &SpectralField<T>, k: i32, p: Level) -> SpectralField<T> {
        f.apply_real_multiplier(|xi| self.kp_weight(k, p, xi))
    }

    pub fn apply_pkpq<T: Real>(&self, f: &SpectralField<T>, k: i32, p: Level, q: Level) -> SpectralField<T> {
        f.apply_real_multiplier(|xi| self.kpq_weight(k, p, q, xi))
    }

    /// Every admissible cell of the grid in report order.
    pub fn cells<T: Real>(&self, grid: &Grid<T>) -> Vec<CellIndex> {
        let mut out = Vec::new();
        for k in shell_range(grid) {
            for p in self.p_levels() {
                for q in self.q_levels() {
                    if self.admissible(p, q) {
                        out.push(CellIndex::new(k, p, q));
                    }
                }
            }
        }
        out
    }
}

fn levels(floor: i32) -> Vec<Level> {
    std::iter::once(Level::Floor).chain((floor + 1..=0).map(Level::At)).collect()
}

fn level_weight<T: Real>(level: Level, x: T, floor: i32) -> T {
    match level {
        Level::Floor => dyadic_cap(x, floor),
        Level::At(p) if p > floor && p <= 0 => dyadic(x, p),
        Level::At(_) => T::zero(),
    }
}

/// Multiplier `φ_k(ξ) = φ(2^{-k}|ξ|)`.
pub fn shell_weight<T: Real>(k: i32, xi: [T; 3]) -> T {
    let r = (xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]).sqrt();
    if r == T::zero() {
        T::zero()
    } else {
        dyadic(r, k)
    }
}

/// Shells `k` with `φ(2^{-k} r) > 0`, with weights.
pub fn shells_at<T: Real>(r: T) -> Vec<(i32, T)> {
    if !(r > T::zero()) {
        return Vec::new();
    }
    let c = r.to64().log2().floor() as i32;
    [c, c + 1].into_iter().map(|k| (k, dyadic(r, k))).filter(|(_, w)| *w > T::zero()).collect()
}

/// Shells touching some nonzero, non-Nyquist grid frequency.
pub fn shell_range<T: Real>(grid: &Grid<T>) -> std::ops::RangeInclusive<i32> {
    let lo = grid.xi_spacing().to64();
    let hi = grid.max_xi().to64();
    (lo.log2().floor() as i32)..=(hi.log2().floor() as i32 + 1)
}

pub fn apply_pk<T: Real>(f: &SpectralField<T>, k: i32) -> SpectralField<T> {
    f.apply_real_multiplier(|xi| shell_weight(k, xi))
}

/// `P_{k,p}` with the default floors.
pub fn apply_pkp<T: Real>(f: &SpectralField<T>, k: i32, p: Level) -> SpectralField<T> {
    Partition::default().apply_pkp(f, k, p)
}

/// `P_{k,p,q}` with the default floors.
pub fn apply_pkpq<T: Real>(f: &SpectralField<T>, k: i32, p: Level, q: Level) -> SpectralField<T> {
    Partition::default().apply_pkpq(f, k, p, q)
}
