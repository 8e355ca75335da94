//! Exact rational matrices (tiny, dense) for basis changes and projectors.

use num_traits::{One, Zero};

use super::matrix::IntMatrix;
use crate::error::{Error, Result};
use crate::rational::{rat_int, Rational};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn zero(rows: usize, cols: usize) -> RatMatrix {
        RatMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> RatMatrix {
        let mut m = RatMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_int(m: &IntMatrix) -> RatMatrix {
        let mut out = RatMatrix::zero(m.rows(), m.cols());
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                out.set(i, j, rat_int(m.get(i, j)));
            }
        }
        out
    }

    pub fn from_rows(rows: &[Vec<Rational>]) -> RatMatrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = RatMatrix::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c);
            for (j, x) in row.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Rational) {
        self.data[i * self.cols + j] = x;
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut t = RatMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = RatMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Rational::zero();
                for k in 0..self.cols {
                    acc += self.get(i, k) * other.get(k, j);
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = Rational::zero();
                for k in 0..self.cols {
                    acc += self.get(i, k) * &v[k];
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn sub(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn scale(&self, k: &Rational) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * k).collect(),
        }
    }

    pub fn det(&self) -> Rational {
        assert_eq!(self.rows, self.cols);
        // Gaussian elimination on a copy
        let mut m = self.clone();
        let n = self.rows;
        let mut det = Rational::one();
        for k in 0..n {
            let pivot = (k..n).find(|&i| !m.get(i, k).is_zero());
            let Some(p) = pivot else {
                return Rational::zero();
            };
            if p != k {
                for j in 0..n {
                    let (a, b) = (m.get(k, j).clone(), m.get(p, j).clone());
                    m.set(k, j, b);
                    m.set(p, j, a);
                }
                det = -det;
            }
            let piv = m.get(k, k).clone();
            det *= &piv;
            for i in k + 1..n {
                let f = m.get(i, k) / &piv;
                for j in k..n {
                    let v = m.get(i, j) - &f * m.get(k, j);
                    m.set(i, j, v);
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Result<RatMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut m = self.clone();
        let mut inv = RatMatrix::identity(n);
        for k in 0..n {
            let pivot = (k..n).find(|&i| !m.get(i, k).is_zero());
            let Some(p) = pivot else {
                return Err(Error::Internal("singular matrix has no inverse".into()));
            };
            if p != k {
                for j in 0..n {
                    let (a, b) = (m.get(k, j).clone(), m.get(p, j).clone());
                    m.set(k, j, b);
                    m.set(p, j, a);
                    let (a, b) = (inv.get(k, j).clone(), inv.get(p, j).clone());
                    inv.set(k, j, b);
                    inv.set(p, j, a);
                }
            }
            let piv = m.get(k, k).clone();
            for j in 0..n {
                m.set(k, j, m.get(k, j) / &piv);
                inv.set(k, j, inv.get(k, j) / &piv);
            }
            for i in 0..n {
                if i == k || m.get(i, k).is_zero() {
                    continue;
                }
                let f = m.get(i, k).clone();
                for j in 0..n {
                    let v = m.get(i, j) - &f * m.get(k, j);
                    m.set(i, j, v);
                    let v = inv.get(i, j) - &f * inv.get(k, j);
                    inv.set(i, j, v);
                }
            }
        }
        Ok(inv)
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|x| x.denom().is_one())
    }

    pub fn to_int(&self) -> Result<IntMatrix> {
        use num_traits::ToPrimitive;
        if !self.is_integral() {
            return Err(Error::Internal("matrix is not integral".into()));
        }
        let mut out = IntMatrix::zero(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let x = self
                    .get(i, j)
                    .numer()
                    .to_i64()
                    .ok_or_else(|| Error::Internal("matrix entry overflow".into()))?;
                out.set(i, j, x);
            }
        }
        Ok(out)
    }
}
