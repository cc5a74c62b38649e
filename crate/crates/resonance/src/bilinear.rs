//! The bilinear operator `𝒬_𝔪` summed directly over the lattice, and the
//! set-size experiment built on it.

use num_complex::Complex;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use nsc_localization::{CellIndex, Level, Partition};
use nsc_spectral::{make_grid, Grid, SpectralField};
use nsc_unknowns::Sign;

use crate::error::{ResonanceError, Result};
use crate::multiplier::MultiplierSpec;
use crate::symbols::{phi, Signs, Vec3};

/// Largest grid the direct sum accepts.
pub const DIRECT_SUM_MAX_N: usize = 16;

fn check_size(n: usize) -> Result<()> {
    if n > DIRECT_SUM_MAX_N {
        Err(ResonanceError::GridTooLarge { n, cost: (n as f64).powi(6) })
    } else {
        Ok(())
    }
}

// Nonzero coefficients with their wavenumbers.
fn support(f: &SpectralField<f64>) -> Vec<([i64; 3], Complex<f64>)> {
    let g = f.grid();
    (0..g.len())
        .filter(|&i| f.coeffs()[i] != Complex::new(0.0, 0.0))
        .map(|i| (g.wavenumbers(i), f.coeffs()[i]))
        .collect()
}

fn to_xi(j: [i64; 3], h: f64) -> Vec3<f64> {
    [j[0] as f64 * h, j[1] as f64 * h, j[2] as f64 * h]
}

/// `Σ_η e^{isΦ} 𝔪(ξ, η) f̂_1(ξ - η) f̂_2(η)` for every `ξ` of the grid.
///
/// The sum is a linear convolution: pairs whose `ξ` falls outside the grid are
/// dropped, nothing wraps. Pairs where the multiplier is undefined (a zero
/// vector, or a zero horizontal part under an angle factor) contribute zero.
pub fn q_m_direct(
    spec: &MultiplierSpec,
    f1: &SpectralField<f64>,
    f2: &SpectralField<f64>,
    s: f64,
    signs: Signs,
) -> Result<SpectralField<f64>> {
    q_m_weighted(spec, f1, f2, s, signs, |_, _| 1.0).map(|(q, _)| q)
}

// Direct sum with an extra real weight; also returns sup |𝔪 w| over the pairs visited.
fn q_m_weighted<W>(
    spec: &MultiplierSpec,
    f1: &SpectralField<f64>,
    f2: &SpectralField<f64>,
    s: f64,
    signs: Signs,
    weight: W,
) -> Result<(SpectralField<f64>, f64)>
where
    W: Fn(Vec3<f64>, Vec3<f64>) -> f64 + Sync,
{
    let g = f1.grid();
    check_size(g.n())?;
    if g != f2.grid() {
        return Err(ResonanceError::GridMismatch);
    }
    let h = g.xi_spacing();
    let b = support(f2);
    let sums: Vec<(usize, Complex<f64>, f64)> = (0..g.len())
        .into_par_iter()
        .filter(|&i| !g.is_nyquist(i))
        .map(|i| {
            let j = g.wavenumbers(i);
            let xi = to_xi(j, h);
            let mut acc = Complex::new(0.0, 0.0);
            let mut sup: f64 = 0.0;
            for &(jb, cb) in &b {
                let ja = [j[0] - jb[0], j[1] - jb[1], j[2] - jb[2]];
                let Some(ca) = lookup(g, ja, f1) else { continue };
                let eta = to_xi(jb, h);
                let w = weight(xi, eta);
                if w == 0.0 {
                    continue;
                }
                let (Ok(m), Ok(ph)) = (spec.eval(xi, eta, signs), phi(xi, eta, signs)) else { continue };
                sup = sup.max((m * w).abs());
                acc += Complex::from_polar(m * w, s * ph) * ca * cb;
            }
            (i, acc, sup)
        })
        .collect();
    let mut coeffs = vec![Complex::new(0.0, 0.0); g.len()];
    let mut sup: f64 = 0.0;
    for (i, c, m) in sums {
        coeffs[i] = c;
        sup = sup.max(m);
    }
    Ok((SpectralField::from_coeffs(g, coeffs).expect("length matches"), sup))
}

fn lookup(g: &Grid<f64>, j: [i64; 3], f: &SpectralField<f64>) -> Option<Complex<f64>> {
    let i0 = g.index_of_wavenumber(j[0])?;
    let i1 = g.index_of_wavenumber(j[1])?;
    let i2 = g.index_of_wavenumber(j[2])?;
    let c = f.coeffs()[g.index(i0, i1, i2)];
    (c != Complex::new(0.0, 0.0)).then_some(c)
}

/// `min{2^{k+p}, ...} · min{2^{(k+q)/2}, ...}` over the three cells.
pub fn set_size(cells: &[CellIndex; 3], part: &Partition) -> f64 {
    let h = cells.iter().map(|c| c.k + c.p.exponent(part.p_min)).min().unwrap();
    let v = cells.iter().map(|c| 0.5 * (c.k + c.q.exponent(part.q_min)) as f64).fold(f64::INFINITY, f64::min);
    2f64.powi(h) * 2f64.powf(v)
}

/// One localized pair of the set-size experiment.
#[derive(Clone, Debug, Serialize)]
pub struct SetSizeTrial {
    /// Output, first input, second input.
    pub cells: [String; 3],
    pub signs: String,
    pub time: f64,
    pub multiplier: usize,
    pub localized_norm: f64,
    pub set_size: f64,
    pub multiplier_sup: f64,
    pub input_norms: [f64; 2],
    pub ratio: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SetSizeReport {
    pub n: usize,
    pub box_scale: f64,
    pub seed: u64,
    pub trials: Vec<SetSizeTrial>,
    /// Draws rejected because the localized output vanished.
    pub rejected: usize,
    pub max_ratio: f64,
    pub median_ratio: f64,
}

/// Cells carrying at least `min_points` grid modes with weight above one half.
pub fn resolved_cells(grid: &Grid<f64>, part: &Partition, min_points: usize) -> Vec<CellIndex> {
    let mut out = Vec::new();
    for cell in part.cells(grid) {
        if cell.p.is_floor() || cell.q.is_floor() {
            continue;
        }
        let Level::At(p) = cell.p else { continue };
        let Level::At(q) = cell.q else { continue };
        let count = (0..grid.len())
            .filter(|&i| {
                !grid.is_nyquist(i) && part.kpq_weight(cell.k, Level::At(p), Level::At(q), grid.wavevector(i)) > 0.5
            })
            .count();
        if count >= min_points {
            out.push(cell);
        }
    }
    out
}

// Random coefficients on the support of the cell; the cell weight itself enters through χ.
fn random_near_cell(grid: &Grid<f64>, part: &Partition, cell: CellIndex, rng: &mut ChaCha8Rng) -> SpectralField<f64> {
    let coeffs = (0..grid.len())
        .map(|i| {
            let c = Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            let inside = !grid.is_nyquist(i) && part.kpq_weight(cell.k, cell.p, cell.q, grid.wavevector(i)) > 0.0;
            if inside {
                c
            } else {
                Complex::new(0.0, 0.0)
            }
        })
        .collect();
    SpectralField::from_coeffs(grid, coeffs).expect("length matches")
}

/// Ratio `‖P_{k,p,q} 𝒬_𝔪(P f_1, P f_2)‖_2 / (|S| ‖𝔪χ‖_∞ ‖P f_1‖_2 ‖P f_2‖_2)`
/// over random resolved cells, signs, times and spanning multipliers.
pub fn set_size_study(n: usize, box_scale: f64, trials: usize, seed: u64) -> Result<SetSizeReport> {
    check_size(n)?;
    let grid = make_grid(n, box_scale).map_err(|e| ResonanceError::Domain(e.to_string()))?;
    let part = Partition::default();
    let cells = resolved_cells(&grid, &part, 4);
    if cells.is_empty() {
        return Err(ResonanceError::Domain("no resolved cells on this grid".into()));
    }
    let span = MultiplierSpec::spanning_set();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(trials);
    let mut rejected = 0;
    while out.len() < trials {
        let c1 = *cells.choose(&mut rng).unwrap();
        let c2 = *cells.choose(&mut rng).unwrap();
        let c0 = *cells.choose(&mut rng).unwrap();
        let sg = |r: &mut ChaCha8Rng| if r.gen_bool(0.5) { Sign::Plus } else { Sign::Minus };
        let signs = Signs::new(sg(&mut rng), sg(&mut rng), sg(&mut rng));
        let time = rng.gen_range(0.0..10.0);
        let which = rng.gen_range(0..=span.len());
        let spec = if which == span.len() { MultiplierSpec::modulus() } else { span[which].clone() };
        let f1 = random_near_cell(&grid, &part, c1, &mut rng);
        let f2 = random_near_cell(&grid, &part, c2, &mut rng);
        let chi = |xi: Vec3<f64>, eta: Vec3<f64>| {
            let zeta = [xi[0] - eta[0], xi[1] - eta[1], xi[2] - eta[2]];
            part.kpq_weight(c0.k, c0.p, c0.q, xi)
                * part.kpq_weight(c1.k, c1.p, c1.q, zeta)
                * part.kpq_weight(c2.k, c2.p, c2.q, eta)
        };
        let (q, sup) = q_m_weighted(&spec, &f1, &f2, time, signs, chi)?;
        let localized = q.l2_norm();
        if localized == 0.0 || sup == 0.0 {
            rejected += 1;
            if rejected > 100 * trials.max(1) {
                return Err(ResonanceError::Domain("localized outputs keep vanishing".into()));
            }
            continue;
        }
        let cs = [c0, c1, c2];
        let size = set_size(&cs, &part);
        let norms =
            [part.apply_pkpq(&f1, c1.k, c1.p, c1.q).l2_norm(), part.apply_pkpq(&f2, c2.k, c2.p, c2.q).l2_norm()];
        out.push(SetSizeTrial {
            cells: cs.map(|c| c.to_string()),
            signs: signs.label(),
            time,
            multiplier: which,
            localized_norm: localized,
            set_size: size,
            multiplier_sup: sup,
            input_norms: norms,
            ratio: localized / (size * sup * norms[0] * norms[1]),
        });
    }
    let mut ratios: Vec<f64> = out.iter().map(|t| t.ratio).collect();
    ratios.sort_by(f64::total_cmp);
    Ok(SetSizeReport {
        n,
        box_scale,
        seed,
        max_ratio: *ratios.last().unwrap_or(&0.0),
        median_ratio: ratios.get(ratios.len() / 2).copied().unwrap_or(0.0),
        trials: out,
        rejected,
    })
}
