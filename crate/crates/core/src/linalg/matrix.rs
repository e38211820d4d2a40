use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Graph, Result};

/// Dense matrix of exact rationals, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

/// Echelon form produced by fraction-free elimination.
struct Echelon {
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch {
                expected: cols,
                got: bad.len(),
            });
        }
        Ok(RationalMatrix {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_integers(rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(|&x| BigRational::from_integer(x.into()))
                        .collect()
                })
                .collect(),
        )
    }

    /// Symmetric 0/1 adjacency matrix.
    pub fn adjacency(g: &Graph) -> Self {
        let mut m = Self::zeros(g.n(), g.n());
        for &(u, v) in g.edges() {
            m.set(u, v, BigRational::one());
            m.set(v, u, BigRational::one());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigRational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: BigRational) {
        self.data[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[BigRational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    /// Appends a row; panics on a length mismatch.
    pub fn push_row(&mut self, row: Vec<BigRational>) {
        assert_eq!(row.len(), self.cols, "row length mismatch");
        self.data.extend(row);
        self.rows += 1;
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hconcat(&self, other: &RationalMatrix) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                got: other.rows,
            });
        }
        let rows = (0..self.rows)
            .map(|r| self.row(r).iter().chain(other.row(r)).cloned().collect())
            .collect();
        let mut out = Self::from_rows(rows)?;
        out.cols = self.cols + other.cols;
        Ok(out)
    }

    pub fn mul_vec(&self, x: &[BigRational]) -> Result<Vec<BigRational>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: x.len(),
            });
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(x)
                    .filter(|(a, _)| !a.is_zero())
                    .fold(BigRational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    /// Each row scaled by the lcm of its denominators.
    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|r| {
                let row = self.row(r);
                let lcm = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
                row.iter().map(|q| q.numer() * (&lcm / q.denom())).collect()
            })
            .collect()
    }

    /// Bareiss fraction-free elimination to row echelon form. Every
    /// intermediate entry is a minor of the input, so each division is exact.
    fn echelon(&self) -> Echelon {
        let mut m = self.integer_rows();
        let mut pivots = Vec::new();
        let mut prev = BigInt::one();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, p);
            let (top, rest) = m.split_at_mut(r + 1);
            let pivot_row = &top[r];
            for row in rest.iter_mut() {
                let factor = row[c].clone();
                for j in c + 1..self.cols {
                    let num = &pivot_row[c] * &row[j] - &factor * &pivot_row[j];
                    debug_assert!((&num % &prev).is_zero(), "inexact Bareiss step");
                    row[j] = num / &prev;
                }
                row[c] = BigInt::zero();
            }
            prev = m[r][c].clone();
            pivots.push(c);
            r += 1;
        }
        Echelon { rows: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Basis of the right nullspace. Each vector is a primitive integer
    /// vector whose first nonzero entry is positive, one per free column in
    /// increasing order. `A·b = 0` is checked exactly before returning.
    pub fn nullspace(&self) -> Vec<Vec<BigRational>> {
        let ech = self.echelon();
        let rank = ech.pivots.len();
        let mut is_pivot = vec![false; self.cols];
        for &p in &ech.pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut x = vec![BigRational::zero(); self.cols];
            x[free] = BigRational::one();
            for i in (0..rank).rev() {
                let p = ech.pivots[i];
                let row = &ech.rows[i];
                let mut s = BigRational::zero();
                for j in p + 1..self.cols {
                    if !row[j].is_zero() && !x[j].is_zero() {
                        s += BigRational::from_integer(row[j].clone()) * &x[j];
                    }
                }
                x[p] = -s / BigRational::from_integer(row[p].clone());
            }
            basis.push(primitive(&x));
        }
        for b in &basis {
            let ax = self.mul_vec(b).expect("dimensions agree");
            assert!(
                ax.iter().all(Zero::is_zero),
                "nullspace vector fails A*b = 0"
            );
        }
        basis
    }
}

/// Scales a rational vector to a primitive integer vector with positive
/// leading entry. The zero vector is returned unchanged.
pub fn primitive(x: &[BigRational]) -> Vec<BigRational> {
    let lcm = x.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<BigInt> = x.iter().map(|q| q.numer() * (&lcm / q.denom())).collect();
    let gcd = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if gcd.is_zero() {
        return x.to_vec();
    }
    let sign = match ints.iter().find(|v| !v.is_zero()) {
        Some(v) if v.is_negative() => -BigInt::one(),
        _ => BigInt::one(),
    };
    ints.into_iter()
        .map(|v| BigRational::from_integer(v / &gcd * &sign))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(x: i64) -> BigRational {
        BigRational::from_integer(x.into())
    }

    #[test]
    fn rank_of_small_matrices() {
        let m =
            RationalMatrix::from_integers(&[vec![1, 2, 3], vec![2, 4, 6], vec![1, 0, 1]]).unwrap();
        assert_eq!(m.rank(), 2);
        let id = RationalMatrix::from_integers(&[vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(id.rank(), 2);
        assert_eq!(RationalMatrix::zeros(3, 4).rank(), 0);
    }

    #[test]
    fn nullspace_of_rank_deficient() {
        let m = RationalMatrix::from_integers(&[vec![1, 2, 3], vec![2, 4, 6]]).unwrap();
        let ns = m.nullspace();
        assert_eq!(ns.len(), 2);
        assert_eq!(ns[0], vec![q(2), q(-1), q(0)]);
        assert_eq!(ns[1], vec![q(3), q(0), q(-1)]);
    }

    #[test]
    fn fractional_input_rows() {
        let half = BigRational::new(1.into(), 2.into());
        let m =
            RationalMatrix::from_rows(vec![vec![half.clone(), q(1)], vec![q(1), q(2)]]).unwrap();
        assert_eq!(m.rank(), 1);
        assert_eq!(m.nullspace(), vec![vec![q(2), q(-1)]]);
    }

    #[test]
    fn bareiss_matches_known_determinant_pattern() {
        // 4x4 Hilbert-like integer matrix of full rank.
        let m = RationalMatrix::from_integers(&[
            vec![2, -1, 0, 0],
            vec![-1, 2, -1, 0],
            vec![0, -1, 2, -1],
            vec![0, 0, -1, 2],
        ])
        .unwrap();
        assert_eq!(m.rank(), 4);
        assert!(m.nullspace().is_empty());
    }

    #[test]
    fn primitive_normalizes_sign_and_scale() {
        let x = vec![
            q(0),
            BigRational::new((-2).into(), 3.into()),
            BigRational::new(4.into(), 3.into()),
        ];
        assert_eq!(primitive(&x), vec![q(0), q(1), q(-2)]);
    }
}
