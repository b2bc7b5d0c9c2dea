use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A dense matrix over `Q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigRational::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<BigRational>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged matrix rows".into()));
        }
        Ok(QMatrix {
            rows: r,
            cols: c,
            data: rows.iter().flatten().cloned().collect(),
        })
    }

    /// From integer rows; `cols` fixes the width when there are no rows.
    pub fn from_ints(rows: usize, cols: usize, entries: &[i64]) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(QMatrix {
            rows,
            cols,
            data: entries.iter().map(|&x| q(x)).collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: BigRational) {
        self.data[i * self.cols + j] = x;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.rows)
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn try_mul(&self, other: &QMatrix) -> Result<QMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = QMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, other: &QMatrix) -> Result<QMatrix> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Dimension(format!(
                "{}x{} plus {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn try_sub(&self, other: &QMatrix) -> Result<QMatrix> {
        self.try_add(&-other)
    }

    /// Gauss-Jordan inverse; `None` when singular.
    pub fn inverse(&self) -> Option<QMatrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = QMatrix::identity(n);
        for col in 0..n {
            let piv = (col..n).find(|&r| !a.get(r, col).is_zero())?;
            for j in 0..n {
                a.data.swap(col * n + j, piv * n + j);
                inv.data.swap(col * n + j, piv * n + j);
            }
            let d = a.get(col, col).clone();
            for j in 0..n {
                a.data[col * n + j] /= &d;
                inv.data[col * n + j] /= &d;
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a.get(r, col).clone();
                if f.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let (x, y) = (&f * a.get(col, j), &f * inv.get(col, j));
                    a.data[r * n + j] -= x;
                    inv.data[r * n + j] -= y;
                }
            }
        }
        Some(inv)
    }

    /// Integer power; negative exponents need an invertible matrix.
    pub fn pow(&self, e: i64) -> Result<QMatrix> {
        if !self.is_square() {
            return Err(Error::Dimension("power of a non-square matrix".into()));
        }
        let base = if e < 0 {
            self.inverse()
                .ok_or_else(|| Error::Dimension("negative power of a singular matrix".into()))?
        } else {
            self.clone()
        };
        let mut out = QMatrix::identity(self.rows);
        for _ in 0..e.unsigned_abs() {
            out = out.try_mul(&base)?;
        }
        Ok(out)
    }

    pub fn is_nilpotent(&self) -> bool {
        self.is_square()
            && self
                .pow(self.rows as i64)
                .map(|m| m.is_zero())
                .unwrap_or(false)
    }

    pub fn is_unipotent(&self) -> bool {
        self.is_square() && (self - &QMatrix::identity(self.rows)).is_nilpotent()
    }

    /// Places `blocks[i][j]` at block position `(i, j)`; absent blocks are zero.
    pub fn block(
        row_dims: &[usize],
        col_dims: &[usize],
        blocks: &[(usize, usize, QMatrix)],
    ) -> QMatrix {
        let ro: Vec<usize> = row_dims
            .iter()
            .scan(0, |s, &d| {
                let o = *s;
                *s += d;
                Some(o)
            })
            .collect();
        let co: Vec<usize> = col_dims
            .iter()
            .scan(0, |s, &d| {
                let o = *s;
                *s += d;
                Some(o)
            })
            .collect();
        let mut out = QMatrix::zeros(row_dims.iter().sum(), col_dims.iter().sum());
        for (bi, bj, m) in blocks {
            for i in 0..m.rows {
                for j in 0..m.cols {
                    out.set(ro[*bi] + i, co[*bj] + j, m.get(i, j).clone());
                }
            }
        }
        out
    }
}

impl Neg for &QMatrix {
    type Output = QMatrix;
    fn neg(self) -> QMatrix {
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| -x).collect(),
        }
    }
}

/// Panics on a shape mismatch; use [`QMatrix::try_mul`] for checked products.
impl Mul for &QMatrix {
    type Output = QMatrix;
    fn mul(self, rhs: &QMatrix) -> QMatrix {
        self.try_mul(rhs).expect("matrix shapes")
    }
}

impl Add for &QMatrix {
    type Output = QMatrix;
    fn add(self, rhs: &QMatrix) -> QMatrix {
        self.try_add(rhs).expect("matrix shapes")
    }
}

impl Sub for &QMatrix {
    type Output = QMatrix;
    fn sub(self, rhs: &QMatrix) -> QMatrix {
        self.try_sub(rhs).expect("matrix shapes")
    }
}

impl fmt::Display for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

#[derive(Serialize, Deserialize)]
struct Wire {
    rows: usize,
    cols: usize,
    /// `[numerator, denominator]` per entry, row-major.
    entries: Vec<Vec<[i64; 2]>>,
}

impl Serialize for QMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let entry = |x: &BigRational| -> std::result::Result<[i64; 2], S::Error> {
            match (x.numer().to_i64(), x.denom().to_i64()) {
                (Some(n), Some(d)) => Ok([n, d]),
                _ => Err(serde::ser::Error::custom(format!(
                    "entry {x} exceeds 64 bits"
                ))),
            }
        };
        let entries = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| entry(self.get(i, j))).collect())
            .collect::<std::result::Result<_, _>>()?;
        Wire {
            rows: self.rows,
            cols: self.cols,
            entries,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = Wire::deserialize(d)?;
        if w.entries.len() != w.rows || w.entries.iter().any(|r| r.len() != w.cols) {
            return Err(serde::de::Error::custom(
                "matrix entries do not match rows/cols",
            ));
        }
        let mut data = vec![];
        for [n, den] in w.entries.into_iter().flatten() {
            if den == 0 {
                return Err(serde::de::Error::custom("zero denominator"));
            }
            data.push(BigRational::new(BigInt::from(n), BigInt::from(den)));
        }
        Ok(QMatrix {
            rows: w.rows,
            cols: w.cols,
            data,
        })
    }
}

/// `Σ_m c_m x^m` truncated at `max_m`, for `(1 + x)^e`.
pub fn binomial_series(e: i64, max_m: usize) -> Vec<BigRational> {
    // generalized binomial coefficients C(e, m)
    let mut out = vec![BigRational::one()];
    let mut c = BigRational::one();
    for m in 1..=max_m {
        c = c * q(e - (m as i64 - 1)) / q(m as i64);
        if c.is_zero() {
            break;
        }
        out.push(c.clone());
    }
    out
}
