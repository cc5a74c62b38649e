//! Binary checkpoint: little-endian `"NSCK"`, `u32` version, `u32 n`, `f64 L`,
//! `f64 t`, `f64 kappa`, `u32` component count, then per component `n^3`
//! interleaved `(re, im)` pairs of `f64` in C order.

use std::io::{Read, Write};
use std::path::Path;

use num_complex::Complex;

use crate::error::{Result, SpectralError};
use crate::field::SpectralField;
use crate::grid::Grid;
use crate::Real;

pub const MAGIC: &[u8; 4] = b"NSCK";
pub const VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq)]
pub struct Checkpoint {
    pub n: u32,
    pub box_scale: f64,
    pub t: f64,
    pub kappa: f64,
    pub components: Vec<Vec<Complex<f64>>>,
}

impl Checkpoint {
    pub fn from_fields<T: Real>(fields: &[SpectralField<T>], t: T, kappa: T) -> Self {
        let grid = fields.first().expect("at least one component").grid();
        Checkpoint {
            n: grid.n() as u32,
            box_scale: grid.box_scale().to64(),
            t: t.to64(),
            kappa: kappa.to64(),
            components: fields
                .iter()
                .map(|f| f.coeffs().iter().map(|c| Complex::new(c.re.to64(), c.im.to64())).collect())
                .collect(),
        }
    }

    pub fn to_fields<T: Real>(&self) -> Result<(Grid<T>, Vec<SpectralField<T>>)> {
        let grid = Grid::new(self.n as usize, T::lit(self.box_scale))?;
        let fields = self
            .components
            .iter()
            .map(|c| {
                let coeffs = c.iter().map(|v| Complex::new(T::lit(v.re), T::lit(v.im))).collect();
                SpectralField::from_coeffs(&grid, coeffs)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((grid, fields))
    }

    pub fn write_to<W: Write>(&self, mut w: W) -> Result<()> {
        w.write_all(MAGIC)?;
        w.write_all(&VERSION.to_le_bytes())?;
        w.write_all(&self.n.to_le_bytes())?;
        w.write_all(&self.box_scale.to_le_bytes())?;
        w.write_all(&self.t.to_le_bytes())?;
        w.write_all(&self.kappa.to_le_bytes())?;
        w.write_all(&(self.components.len() as u32).to_le_bytes())?;
        let len = (self.n as usize).pow(3);
        let mut buf = Vec::with_capacity(len * 16);
        for comp in &self.components {
            if comp.len() != len {
                return Err(SpectralError::BadLength { expected: len, found: comp.len() });
            }
            buf.clear();
            for c in comp {
                buf.extend_from_slice(&c.re.to_le_bytes());
                buf.extend_from_slice(&c.im.to_le_bytes());
            }
            w.write_all(&buf)?;
        }
        Ok(())
    }

    pub fn read_from<R: Read>(mut r: R) -> Result<Self> {
        let mut magic = [0u8; 4];
        r.read_exact(&mut magic)?;
        if &magic != MAGIC {
            return Err(SpectralError::Format("bad magic".into()));
        }
        let version = read_u32(&mut r)?;
        if version != VERSION {
            return Err(SpectralError::Format(format!("unsupported version {version}")));
        }
        let n = read_u32(&mut r)?;
        let box_scale = read_f64(&mut r)?;
        let t = read_f64(&mut r)?;
        let kappa = read_f64(&mut r)?;
        let count = read_u32(&mut r)?;
        if n as usize > crate::grid::MAX_MODES || count > 64 {
            return Err(SpectralError::Format(format!("implausible header: n = {n}, components = {count}")));
        }
        let len = (n as usize).pow(3);
        let mut components = Vec::with_capacity(count as usize);
        let mut buf = vec![0u8; len * 16];
        for _ in 0..count {
            r.read_exact(&mut buf)?;
            let comp = buf
                .chunks_exact(16)
                .map(|b| {
                    Complex::new(
                        f64::from_le_bytes(b[..8].try_into().unwrap()),
                        f64::from_le_bytes(b[8..].try_into().unwrap()),
                    )
                })
                .collect();
            components.push(comp);
        }
        Ok(Checkpoint { n, box_scale, t, kappa, components })
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let file = std::fs::File::create(path)?;
        self.write_to(std::io::BufWriter::new(file))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let file = std::fs::File::open(path)?;
        Self::read_from(std::io::BufReader::new(file))
    }
}

fn read_u32<R: Read>(r: &mut R) -> Result<u32> {
    let mut b = [0u8; 4];
    r.read_exact(&mut b)?;
    Ok(u32::from_le_bytes(b))
}

fn read_f64<R: Read>(r: &mut R) -> Result<f64> {
    let mut b = [0u8; 8];
    r.read_exact(&mut b)?;
    Ok(f64::from_le_bytes(b))
}
