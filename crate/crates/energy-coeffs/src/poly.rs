//! Dense polynomials in one variable, lowest degree first.

use crate::rational::Exact;

#[derive(Clone, Debug, PartialEq)]
pub struct Poly<Q> {
    pub coeffs: Vec<Q>,
}

impl<Q: Exact> Poly<Q> {
    pub fn constant(c: Q) -> Self {
        Self { coeffs: vec![c] }
    }

    /// `x + a`.
    pub fn linear(a: Q) -> Self {
        Self { coeffs: vec![a, Q::one()] }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = vec![Q::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self { coeffs: out }
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::constant(Q::one()), |acc, _| acc.mul(self))
    }

    pub fn scale(&self, c: &Q) -> Self {
        Self { coeffs: self.coeffs.iter().map(|a| a.clone() * c.clone()).collect() }
    }

    /// Coefficient of `x^k`, zero past the degree.
    pub fn coeff(&self, k: usize) -> Q {
        self.coeffs.get(k).cloned().unwrap_or_else(Q::zero)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }
}
