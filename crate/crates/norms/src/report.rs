use std::fmt::Write as _;

use nsc_localization::CellIndex;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NormEntry {
    pub cell: CellIndex,
    pub weight: f64,
    pub localized_l2: f64,
    pub product: f64,
}

/// Weighted sup over localization cells, with the whole table kept.
#[derive(Clone, Debug, PartialEq)]
pub struct NormReport {
    pub entries: Vec<NormEntry>,
    pub value: f64,
    pub argmax_cell: Option<CellIndex>,
    /// Cells evaluated through `R̄_{≤l}` because `p + l = 0`.
    pub boundary_cells: Vec<CellIndex>,
}

impl NormReport {
    pub fn from_entries(mut entries: Vec<NormEntry>, boundary_cells: Vec<CellIndex>) -> Self {
        entries.sort_by(|a, b| a.cell.cmp(&b.cell));
        let mut value = 0.0;
        let mut argmax_cell = None;
        for e in &entries {
            if e.product > value {
                value = e.product;
                argmax_cell = Some(e.cell);
            }
        }
        Self { entries, value, argmax_cell, boundary_cells }
    }

    pub fn entry(&self, cell: CellIndex) -> Option<&NormEntry> {
        self.entries.iter().find(|e| e.cell == cell)
    }

    /// CSV with columns `k,p,q,l,weight,localized_l2,product`; absent indices are blank.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("k,p,q,l,weight,localized_l2,product\n");
        for e in &self.entries {
            let c = e.cell;
            let q = if c.l.is_some() { String::new() } else { c.q.to_string() };
            let l = c.l.map(|l| l.to_string()).unwrap_or_default();
            let _ = writeln!(out, "{},{},{},{},{:e},{:e},{:e}", c.k, c.p, q, l, e.weight, e.localized_l2, e.product);
        }
        out
    }
}
