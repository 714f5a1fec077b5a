use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point `(x_1, …, x_m)` of `R^{nm}`, stored block by block.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MVector {
    n: usize,
    data: Vec<f64>,
}

impl MVector {
    pub fn new(n: usize, data: Vec<f64>) -> Result<Self> {
        if n == 0 || data.is_empty() || !data.len().is_multiple_of(n) {
            return Err(Error::InvalidDimension(n));
        }
        Ok(Self { n, data })
    }

    pub fn from_blocks(blocks: &[Vec<f64>]) -> Result<Self> {
        let n = blocks.first().map_or(0, Vec::len);
        if blocks.iter().any(|b| b.len() != n) {
            return Err(Error::InvalidDimension(n));
        }
        Self::new(n, blocks.concat())
    }

    pub fn zero(n: usize, m: usize) -> Self {
        Self { n, data: vec![0.0; n * m] }
    }

    /// Block dimension.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of blocks.
    pub fn m(&self) -> usize {
        self.data.len() / self.n
    }

    pub fn block(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn blocks(&self) -> impl Iterator<Item = &[f64]> {
        self.data.chunks(self.n)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn norm(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn scaled(&self, t: f64) -> Self {
        Self { n: self.n, data: self.data.iter().map(|x| x * t).collect() }
    }

    /// Unit-norm copy; `None` for the zero vector.
    pub fn normalized(&self) -> Option<Self> {
        let r = self.norm();
        (r > 0.0).then(|| self.scaled(1.0 / r))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| *x == 0.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn blocks_round_trip() {
        let x = MVector::from_blocks(&[vec![1.0, 2.0], vec![3.0, 4.0], vec![5.0, 6.0]]).unwrap();
        assert_eq!(x.n(), 2);
        assert_eq!(x.m(), 3);
        assert_eq!(x.block(1), &[3.0, 4.0]);
        assert!(MVector::new(2, vec![1.0, 2.0, 3.0]).is_err());
        let u = x.normalized().unwrap();
        assert!((u.norm() - 1.0).abs() < 1e-15);
    }
}
