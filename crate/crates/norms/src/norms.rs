use std::collections::{BTreeMap, HashMap};

use num_complex::Complex;
use rayon::prelude::*;

use nsc_localization::{anisotropy, shells_at, AngularBasis, CellIndex, Level, Partition, Variant};
use nsc_spectral::{homogeneous_sobolev_norm, s_scalar, sobolev_norm, Grid, Real, SpectralField, VectorField};

use crate::error::Result;
use crate::report::{NormEntry, NormReport};

/// Angular smoothness gain in the `X` norm.
pub const DEFAULT_BETA: f64 = 1.0 / 60.0;
/// Sobolev index `N_0` of the initial-data norm `H^{2N_0} ∩ Ḣ^{-1}` at desk scale.
pub const DEFAULT_SOBOLEV_INDEX: i32 = 5;
/// `S`-iterates entering `‖·‖_D`: `a ≤ 3` for `B`, `b ≤ 2` for `X`.
pub const D_NORM_B_ITERATES: usize = 3;
pub const D_NORM_X_ITERATES: usize = 2;

/// Everything the norms need for one grid.
#[derive(Clone, Debug)]
pub struct NormContext {
    pub partition: Partition,
    pub basis: AngularBasis,
    pub beta: f64,
}

impl NormContext {
    pub fn new<T: Real>(grid: &Grid<T>) -> Self {
        Self { partition: Partition::default(), basis: AngularBasis::new(grid), beta: DEFAULT_BETA }
    }

    pub fn with_beta(mut self, beta: f64) -> Self {
        self.beta = beta;
        self
    }

    /// Largest angular band index with content on this grid.
    pub fn max_band(&self) -> u32 {
        let d = self.basis.max_degree().max(1) as f64;
        d.log2().ceil() as u32 + 1
    }
}

/// `Σ |w_c(ξ) f̂(ξ)|^2` per cell, times the box volume, in a single pass.
/// Slabs are reduced in a fixed order so the result does not depend on threading.
fn cell_energies<T, F>(f: &SpectralField<T>, cells: F) -> BTreeMap<CellIndex, f64>
where
    T: Real,
    F: Fn([f64; 3]) -> Vec<(CellIndex, f64)> + Sync,
{
    let grid = f.grid();
    let n = grid.n();
    let slab = n * n;
    let partial: Vec<HashMap<CellIndex, f64>> = f
        .coeffs()
        .par_chunks(slab)
        .enumerate()
        .map(|(s, chunk)| {
            let mut acc: HashMap<CellIndex, f64> = HashMap::new();
            for (o, c) in chunk.iter().enumerate() {
                let idx = s * slab + o;
                let m = c.norm_sqr().to64();
                if m == 0.0 || grid.is_nyquist(idx) {
                    continue;
                }
                let xi = grid.wavevector(idx);
                for (cell, w) in cells([xi[0].to64(), xi[1].to64(), xi[2].to64()]) {
                    *acc.entry(cell).or_default() += w * w * m;
                }
            }
            acc
        })
        .collect();
    let vol = grid.volume().to64();
    let mut out = BTreeMap::new();
    for map in partial {
        let mut keys: Vec<_> = map.into_iter().collect();
        keys.sort_by(|a, b| a.0.cmp(&b.0));
        for (cell, e) in keys {
            *out.entry(cell).or_insert(0.0) += e;
        }
    }
    for v in out.values_mut() {
        *v *= vol;
    }
    out
}

fn k_weight_b(k: i32) -> f64 {
    2f64.powf(3.0 * k.max(0) as f64 - 0.5 * k.min(0) as f64)
}

/// `‖f‖_B = sup 2^{3k⁺ - k⁻/2} 2^{-p-q/2} ‖P_{k,p,q} f‖_2`; floors count at their exponents.
pub fn b_norm<T: Real>(f: &SpectralField<T>, partition: &Partition) -> NormReport {
    let energies = cell_energies(f, |xi| partition.cells_at(xi));
    let entries = energies
        .into_iter()
        .map(|(cell, e)| {
            let p = cell.p.exponent(partition.p_min) as f64;
            let q = cell.q.exponent(partition.q_min) as f64;
            let weight = k_weight_b(cell.k) * 2f64.powf(-p - 0.5 * q);
            let l2 = e.sqrt();
            NormEntry { cell, weight, localized_l2: l2, product: weight * l2 }
        })
        .collect();
    NormReport::from_entries(entries, Vec::new())
}

/// `(k, p)` cells of `ξ` with finite `p ≥ p_lo`.
fn kp_cells(partition: &Partition, xi: [f64; 3], p_lo: i32, p_hi: i32, l: u32) -> Vec<(CellIndex, f64)> {
    let Some((s, _)) = anisotropy(xi) else { return Vec::new() };
    let r = (xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]).sqrt();
    let mut out = Vec::with_capacity(4);
    for (k, wk) in shells_at(r) {
        for (p, wp) in partition.levels_at(s, partition.p_min) {
            if let Level::At(pv) = p {
                if pv >= p_lo && pv <= p_hi {
                    // q is aggregated in X; the floor marker stands for "all q".
                    out.push((CellIndex { k, p, q: Level::Floor, l: Some(l) }, wk * wp));
                }
            }
        }
    }
    out
}

/// `‖f‖_X = sup 2^{3k⁺} 2^{(1+β)l + βp} ‖P_{k,p} R_l f‖_2` over `p ≤ 0 ≤ l`, `p + l ≥ 0`.
///
/// Entries carry `q = floor` as a placeholder: the `X` norm does not localize in `q`.
pub fn x_norm<T: Real>(f: &SpectralField<T>, ctx: &NormContext) -> Result<NormReport> {
    let part = &ctx.partition;
    let mut entries = Vec::new();
    let mut boundary = Vec::new();
    for l in 0..=ctx.max_band() {
        let li = l as i32;
        let lowest = (-li).max(part.p_min + 1);
        let exact = ctx.basis.apply_rl(f, l, Variant::Exact)?;
        let mut table = cell_energies(&exact, |xi| kp_cells(part, xi, lowest + i32::from(lowest == -li), 0, l));
        if lowest == -li {
            let leq = ctx.basis.apply_rl(f, l, Variant::Leq)?;
            let edge = cell_energies(&leq, |xi| kp_cells(part, xi, -li, -li, l));
            boundary.extend(edge.keys().copied());
            table.extend(edge);
        }
        for (cell, e) in table {
            let p = cell.p.exponent(part.p_min) as f64;
            let weight = 2f64.powf(3.0 * cell.k.max(0) as f64 + (1.0 + ctx.beta) * l as f64 + ctx.beta * p);
            let l2 = e.sqrt();
            entries.push(NormEntry { cell, weight, localized_l2: l2, product: weight * l2 });
        }
    }
    Ok(NormReport::from_entries(entries, boundary))
}

#[derive(Clone, Debug, PartialEq)]
pub struct DNorm {
    pub value: f64,
    /// `‖S^a f‖_B`, `a = 0..=3`.
    pub b_terms: Vec<f64>,
    /// `‖S^b f‖_X`, `b = 0..=2`.
    pub x_terms: Vec<f64>,
    /// Worst outer-shell mass fraction seen while applying `S`.
    pub outer_mass_fraction: f64,
}

/// `‖f‖_D = sup_{a ≤ 3, b ≤ 2} (‖S^a f‖_B + ‖S^b f‖_X)` for a scalar field.
pub fn d_norm<T: Real>(f: &SpectralField<T>, ctx: &NormContext) -> Result<DNorm> {
    let mut iterates = vec![f.clone()];
    let mut fraction: f64 = 0.0;
    for _ in 0..D_NORM_B_ITERATES {
        let next = s_scalar(iterates.last().unwrap());
        fraction = fraction.max(next.outer_mass_fraction);
        iterates.push(next.value);
    }
    let b_terms: Vec<f64> = iterates.iter().map(|g| b_norm(g, &ctx.partition).value).collect();
    let x_terms =
        iterates[..=D_NORM_X_ITERATES].iter().map(|g| x_norm(g, ctx).map(|r| r.value)).collect::<Result<Vec<f64>>>()?;
    let value = b_terms.iter().cloned().fold(0.0, f64::max) + x_terms.iter().cloned().fold(0.0, f64::max);
    Ok(DNorm { value, b_terms, x_terms, outer_mass_fraction: fraction })
}

/// `‖f‖_{H^{2N_0}} + ‖f‖_{Ḣ^{-1}}`.
pub fn initial_data_norm<T: Real>(f: &SpectralField<T>, sobolev_index: i32) -> f64 {
    sobolev_norm(f, 2 * sobolev_index).to64() + homogeneous_sobolev_norm(f, -T::one()).to64()
}

/// Fraction of velocity mass in nonzero azimuthal modes.
///
/// In Fourier space an axisymmetric velocity has cylindrical components
/// `(û_r, û_θ, û_z)` (taken along `ξ_h/|ξ_h|`, `ξ_h^⊥/|ξ_h|`, `e_3`) that are
/// constant on every lattice circle `|j_h|^2 = const, j_3 = const`, and no
/// horizontal part on the vertical axis. The residual is the within-circle
/// variance plus the horizontal axis mass, over the total mass.
pub fn axisymmetry_residual<T: Real>(u: &VectorField<T>) -> f64 {
    let grid = u[0].grid();
    let mut groups: HashMap<(i64, i64), ([Complex<f64>; 3], [f64; 3], u32)> = HashMap::new();
    let mut total = 0.0;
    let mut axis = 0.0;
    let cast = |c: Complex<T>| Complex::new(c.re.to64(), c.im.to64());
    for idx in 0..grid.len() {
        if grid.is_nyquist(idx) {
            continue;
        }
        let j = grid.wavenumbers(idx);
        let v = [cast(u[0].coeffs()[idx]), cast(u[1].coeffs()[idx]), cast(u[2].coeffs()[idx])];
        total += v.iter().map(|c| c.norm_sqr()).sum::<f64>();
        let m = j[0] * j[0] + j[1] * j[1];
        if m == 0 {
            axis += v[0].norm_sqr() + v[1].norm_sqr();
            continue;
        }
        let h = (m as f64).sqrt();
        let (e1, e2) = (j[0] as f64 / h, j[1] as f64 / h);
        let cyl = [v[0] * e1 + v[1] * e2, -v[0] * e2 + v[1] * e1, v[2]];
        let g = groups.entry((m, j[2])).or_insert(([Complex::new(0.0, 0.0); 3], [0.0; 3], 0));
        for a in 0..3 {
            g.0[a] += cyl[a];
            g.1[a] += cyl[a].norm_sqr();
        }
        g.2 += 1;
    }
    if total == 0.0 {
        return 0.0;
    }
    // Σ|c - mean|^2 = Σ|c|^2 - |Σc|^2/count.
    let variance: f64 = groups
        .values()
        .map(|(s, s2, n)| (0..3).map(|a| (s2[a] - s[a].norm_sqr() / *n as f64).max(0.0)).sum::<f64>())
        .sum();
    (variance + axis) / total
}
