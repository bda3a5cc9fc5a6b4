use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::chirotope::Chirotope;
use crate::error::{Error, Result};
use crate::sign::Sign;
use crate::tuple::RTuple;

/// `n` column vectors in `Q^r`, stored row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct Realization {
    rows: Vec<Vec<BigRational>>,
}

/// First tuple whose determinant sign disagrees with the chirotope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub tuple: RTuple,
    pub expected: Sign,
    pub found: Sign,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "tuple {}: expected {}, determinant sign {}",
            self.tuple, self.expected, self.found
        )
    }
}

impl Realization {
    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Result<Realization> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.is_empty() || rows.iter().any(|row| row.len() != cols) {
            return Err(Error::DimensionMismatch {
                rows: rows.len(),
                cols,
                r: rows.len(),
                n: cols,
            });
        }
        Ok(Realization { rows })
    }

    pub fn from_integer_rows(rows: &[Vec<i64>]) -> Result<Realization> {
        Realization::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&v| BigRational::from_integer(BigInt::from(v))).collect())
                .collect(),
        )
    }

    /// Homogenized point coordinates: each point becomes the column `(p, 1)`.
    pub fn from_points(points: &[Vec<i64>]) -> Result<Realization> {
        let d = points.first().map_or(0, Vec::len);
        let mut rows = vec![Vec::with_capacity(points.len()); d + 1];
        for p in points {
            if p.len() != d {
                return Err(Error::DimensionMismatch {
                    rows: p.len(),
                    cols: points.len(),
                    r: d,
                    n: points.len(),
                });
            }
            for (k, &x) in p.iter().enumerate() {
                rows[k].push(BigRational::from_integer(BigInt::from(x)));
            }
            rows[d].push(BigRational::one());
        }
        Realization::from_rows(rows)
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn len(&self) -> usize {
        self.rows[0].len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn rows(&self) -> &[Vec<BigRational>] {
        &self.rows
    }

    pub fn entry(&self, row: usize, col: usize) -> &BigRational {
        &self.rows[row][col]
    }

    pub fn entry_mut(&mut self, row: usize, col: usize) -> &mut BigRational {
        &mut self.rows[row][col]
    }

    /// Sign of `det(v_{c_1}, …, v_{c_r})` for the given column sequence.
    pub fn det_sign(&self, cols: &[usize]) -> Sign {
        let r = self.rank();
        let mut m: Vec<Vec<BigRational>> = (0..r)
            .map(|i| cols.iter().map(|&c| self.rows[i][c].clone()).collect())
            .collect();
        det_sign_in_place(&mut m)
    }

    /// The chirotope of the column vectors.
    pub fn chirotope(&self) -> Result<Chirotope> {
        Chirotope::from_fn(self.len(), self.rank(), |t| self.det_sign(t.elements()))
    }

    pub fn first_mismatch(&self, chi: &Chirotope) -> Result<Option<Mismatch>> {
        if self.rank() != chi.r() || self.len() != chi.n() {
            return Err(Error::DimensionMismatch {
                rows: self.rank(),
                cols: self.len(),
                r: chi.r(),
                n: chi.n(),
            });
        }
        let space = chi.space();
        for (i, t) in space.tuples().iter().enumerate() {
            let found = self.det_sign(t.elements());
            if found != chi.sign_at(i) {
                return Ok(Some(Mismatch {
                    tuple: t.clone(),
                    expected: chi.sign_at(i),
                    found,
                }));
            }
        }
        Ok(None)
    }
}

/// Exact determinant sign by Gaussian elimination over the rationals.
pub fn det_sign_in_place(m: &mut [Vec<BigRational>]) -> Sign {
    let r = m.len();
    let mut sign = Sign::Plus;
    for col in 0..r {
        let Some(pivot) = (col..r).find(|&row| !m[row][col].is_zero()) else {
            return Sign::Zero;
        };
        if pivot != col {
            m.swap(pivot, col);
            sign = -sign;
        }
        sign *= Sign::of(&m[col][col]);
        for row in col + 1..r {
            if m[row][col].is_zero() {
                continue;
            }
            let factor = &m[row][col] / &m[col][col];
            for k in col..r {
                let delta = &factor * &m[col][k];
                m[row][k] -= delta;
            }
        }
    }
    sign
}

impl fmt::Debug for Realization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}
