//! Index relations forced by `ξ = (ξ-η) + η`, checked on concrete vectors.
//!
//! Indices are read off with the nearest-dyadic rounding of
//! [`nearest_cell`](crate::symbols::nearest_cell); `p` measures the horizontal
//! share `|ζ_h|/|ζ|` and `q` the vertical share `|ζ_3|/|ζ|`.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use nsc_localization::{CellIndex, DEFAULT_FLOOR};

use crate::sweep::{random_vector, sample_rng};
use crate::symbols::{nearest_cell, Vec3};

/// Which statement, and whether it is read on `p` (horizontal) or `q` (vertical).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum GeometryLemma {
    /// `p ≤ min{p_1, p_2} - 10`: one small output share.
    OneSmallP,
    OneSmallQ,
    /// `p_1, p_2 ≤ p - 15`, `|p_1 - p_2| ≤ 2`: two small input shares.
    TwoSmallP,
    TwoSmallQ,
}

impl GeometryLemma {
    fn vertical(self) -> bool {
        matches!(self, GeometryLemma::OneSmallQ | GeometryLemma::TwoSmallQ)
    }
}

/// `(k, share index)` for `ξ`, `ξ-η`, `η`.
pub type Indices = [(i32, i32); 3];

pub fn indices(xi: Vec3<f64>, eta: Vec3<f64>, lemma: GeometryLemma) -> Indices {
    let zeta = [xi[0] - eta[0], xi[1] - eta[1], xi[2] - eta[2]];
    let pick = |c: CellIndex| {
        let share = if lemma.vertical() { c.q } else { c.p };
        (c.k, share.exponent(DEFAULT_FLOOR))
    };
    [pick(nearest_cell(xi)), pick(nearest_cell(zeta)), pick(nearest_cell(eta))]
}

pub fn hypothesis(lemma: GeometryLemma, ix: &Indices) -> bool {
    let [(_, p), (_, p1), (_, p2)] = *ix;
    match lemma {
        GeometryLemma::OneSmallP | GeometryLemma::OneSmallQ => p <= p1.min(p2) - 10,
        GeometryLemma::TwoSmallP | GeometryLemma::TwoSmallQ => p1 <= p - 15 && p2 <= p - 15 && (p1 - p2).abs() <= 2,
    }
}

/// Which of the three alternatives of the one-small-share statement holds, if any.
pub fn one_small_case(ix: &Indices) -> Option<usize> {
    let [(k, _), (k1, p1), (k2, p2)] = *ix;
    if (k1 - k2).abs() <= 4 && (p1 - p2).abs() <= 6 {
        Some(1)
    } else if k2 < k1 - 4 && (k - k1).abs() <= 2 && p1 <= p2 - 2 {
        Some(2)
    } else if k1 < k2 - 4 && (k - k2).abs() <= 2 && p2 <= p1 - 2 {
        Some(3)
    } else {
        None
    }
}

/// Each conclusion of the statement, by name, evaluated at these indices.
pub fn clauses(lemma: GeometryLemma, ix: &Indices) -> Vec<(&'static str, bool)> {
    let [(k, p), (k1, p1), (k2, p2)] = *ix;
    match lemma {
        GeometryLemma::OneSmallP | GeometryLemma::OneSmallQ => vec![
            ("k+p < k1+p1-4", p + k < p1 + k1 - 4),
            ("|k1+p1 - k2-p2| <= 2", (p1 + k1 - p2 - k2).abs() <= 2),
            ("one of the three cases", one_small_case(ix).is_some()),
        ],
        GeometryLemma::TwoSmallP | GeometryLemma::TwoSmallQ => vec![
            ("k1, k2 >= k+6", k1 >= k + 6 && k2 >= k + 6),
            ("|k1-k2| <= 2", (k1 - k2).abs() <= 2),
            ("|k1+p1 - k2-p2| <= 4", (k1 + p1 - k2 - p2).abs() <= 4),
            ("k2+p2 >= k+p-2", k2 + p2 >= k + p - 2),
            // What the triangle inequality gives without fixing which input is larger.
            ("max(k1+p1, k2+p2) >= k+p-2", (k1 + p1).max(k2 + p2) >= k + p - 2),
        ],
    }
}

/// All conclusions at once.
pub fn conclusion(lemma: GeometryLemma, ix: &Indices) -> bool {
    clauses(lemma, ix).iter().all(|(_, ok)| *ok)
}

#[derive(Clone, Debug, Serialize)]
pub struct Counterexample {
    pub xi: Vec3<f64>,
    pub eta: Vec3<f64>,
    pub indices: Indices,
}

#[derive(Clone, Debug, Serialize)]
pub struct PredicateReport {
    pub lemma: GeometryLemma,
    pub draws: usize,
    pub hypothesis_hits: usize,
    pub violations: usize,
    /// Violations per conclusion, in the order of [`clauses`].
    pub clause_violations: Vec<(String, usize)>,
    /// How often each alternative of the one-small-share statement occurred.
    pub case_counts: [usize; 3],
    pub counterexamples: Vec<Counterexample>,
}

impl PredicateReport {
    fn empty(lemma: GeometryLemma) -> Self {
        PredicateReport {
            lemma,
            draws: 0,
            hypothesis_hits: 0,
            violations: 0,
            clause_violations: Vec::new(),
            case_counts: [0; 3],
            counterexamples: Vec::new(),
        }
    }

    /// Violations of one named conclusion; zero if it never came up.
    pub fn clause(&self, name: &str) -> usize {
        self.clause_violations.iter().find(|(n, _)| n == name).map_or(0, |(_, v)| *v)
    }

    pub fn hypothesis_empty(&self) -> bool {
        self.hypothesis_hits == 0
    }

    pub fn holds(&self) -> bool {
        self.violations == 0
    }

    fn collect(lemma: GeometryLemma, draws: usize, pairs: Vec<Option<(Vec3<f64>, Vec3<f64>)>>) -> Self {
        let mut r = PredicateReport::empty(lemma);
        r.draws = draws;
        for (xi, eta) in pairs.into_iter().flatten() {
            let ix = indices(xi, eta, lemma);
            if !hypothesis(lemma, &ix) {
                continue;
            }
            r.hypothesis_hits += 1;
            if let Some(c) = one_small_case(&ix) {
                r.case_counts[c - 1] += 1;
            }
            let cl = clauses(lemma, &ix);
            if r.clause_violations.is_empty() {
                r.clause_violations = cl.iter().map(|(name, _)| (name.to_string(), 0)).collect();
            }
            for (slot, (_, ok)) in r.clause_violations.iter_mut().zip(&cl) {
                slot.1 += usize::from(!ok);
            }
            if !cl.iter().all(|(_, ok)| *ok) {
                r.violations += 1;
                if r.counterexamples.len() < 16 {
                    r.counterexamples.push(Counterexample { xi, eta, indices: ix });
                }
            }
        }
        r
    }
}

// A vector of size 2^{log_r} whose (horizontal or vertical) share is 2^{log_s}.
fn with_share(rng: &mut ChaCha8Rng, log_r: f64, log_s: f64, vertical: bool) -> Vec3<f64> {
    let r = 2f64.powf(log_r);
    let s = 2f64.powf(log_s).min(1.0);
    let other = (1.0 - s * s).max(0.0).sqrt();
    let (h, v) = if vertical { (other, s) } else { (s, other) };
    let a: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
    [r * h * a.cos(), r * h * a.sin(), sign * r * v]
}

// Draws aimed at the hypothesis region of each statement.
fn draw(lemma: GeometryLemma, rng: &mut ChaCha8Rng) -> Option<(Vec3<f64>, Vec3<f64>)> {
    let vertical = lemma.vertical();
    match lemma {
        GeometryLemma::OneSmallP | GeometryLemma::OneSmallQ => {
            // Output with a tiny share, second input anywhere.
            let (lr, ls) = (rng.gen_range(-8.0..8.0), rng.gen_range(-22.0..-9.5));
            let xi = with_share(rng, lr, ls, vertical);
            let eta = random_vector(rng, -10.0, 10.0);
            Some((xi, eta))
        }
        GeometryLemma::TwoSmallP | GeometryLemma::TwoSmallQ => {
            // Output anywhere; both inputs nearly aligned with the other axis and
            // summing back to ξ in the small component.
            let xi = random_vector(rng, -6.0, 6.0);
            let (lr, ls) = (rng.gen_range(-4.0..24.0), rng.gen_range(-23.0..-10.0));
            let zeta = with_share(rng, lr, ls, vertical);
            // η is fixed by η = ξ - ζ.
            let eta = [xi[0] - zeta[0], xi[1] - zeta[1], xi[2] - zeta[2]];
            if eta.iter().all(|v| *v == 0.0) {
                return None;
            }
            Some((xi, eta))
        }
    }
}

/// Monte-Carlo check of one statement over `draws` seeded triples.
pub fn geometry_sweep(lemma: GeometryLemma, draws: usize, seed: u64) -> PredicateReport {
    let pairs: Vec<_> = (0..draws as u64).into_par_iter().map(|i| draw(lemma, &mut sample_rng(seed, i))).collect();
    PredicateReport::collect(lemma, draws, pairs)
}

/// Draws `ξ` and `η` from the given output and second-input cells (nearest-index
/// sense), keeps the triples whose `ξ - η` lands in the first-input cell, and
/// checks the statement there. If the cells violate the hypothesis, the report
/// is empty rather than failing.
pub fn index_geometry(lemma: GeometryLemma, cells: Indices, draws: usize, seed: u64) -> PredicateReport {
    if !hypothesis(lemma, &cells) {
        return PredicateReport::empty(lemma);
    }
    let vertical = lemma.vertical();
    let pairs: Vec<_> = (0..draws as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = sample_rng(seed, i);
            let mut in_cell = |(k, p): (i32, i32)| {
                let lr = k as f64 + rng.gen_range(-0.5..0.5);
                let ls = if p == 0 { rng.gen_range(-0.5..0.0) } else { p as f64 + rng.gen_range(-0.5..0.5) };
                with_share(&mut rng, lr, ls, vertical)
            };
            let xi = in_cell(cells[0]);
            let eta = in_cell(cells[2]);
            let ix = indices(xi, eta, lemma);
            (ix == cells).then_some((xi, eta))
        })
        .collect();
    let mut r = PredicateReport::collect(lemma, draws, pairs);
    r.draws = draws;
    r
}
