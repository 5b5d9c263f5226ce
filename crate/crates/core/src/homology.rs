//! The chain complex `(Lambda L, D)` over the ground field and its homology.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exterior::{Blade, Multivector};
use crate::gerstenhaber::{Generator, MultivectorOperator};
use crate::lie_rinehart::LieRinehartAlgebra;
use crate::ring::Rational;

/// Dense matrix over `Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<Rational>>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            entries: vec![vec![Rational::zero(); cols]; rows],
        }
    }

    /// Panics on ragged input.
    pub fn from_rows(cols: usize, entries: Vec<Vec<Rational>>) -> Self {
        assert!(entries.iter().all(|r| r.len() == cols), "ragged matrix");
        RationalMatrix {
            rows: entries.len(),
            cols,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        self.entries[i][j] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(Zero::is_zero)
    }

    /// Panics when the inner dimensions differ.
    pub fn mul(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.cols, other.rows, "inner dimensions");
        let mut out = RationalMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.entries[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out.entries[i][j] += a * &other.entries[k][j];
                }
            }
        }
        out
    }

    /// Rank by fraction-free (Bareiss) elimination after clearing
    /// denominators row by row.
    pub fn rank(&self) -> usize {
        let mut m: Vec<Vec<BigInt>> = self
            .entries
            .iter()
            .map(|row| {
                let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
            })
            .collect();
        let mut rank = 0;
        let mut prev = BigInt::one();
        for col in 0..self.cols {
            let Some(pivot) = (rank..self.rows).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(rank, pivot);
            for r in rank + 1..self.rows {
                for c in col + 1..self.cols {
                    let v = &m[rank][col] * &m[r][c] - &m[r][col] * &m[rank][c];
                    m[r][c] = v / &prev;
                }
                m[r][col] = BigInt::zero();
            }
            prev = m[rank][col].clone();
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        rank
    }
}

/// A finite chain complex `C_n -> ... -> C_0`; `boundaries[p]` is the matrix
/// of `d_p : C_p -> C_{p-1}` (`boundaries[0]` is the zero map to nothing).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    pub dims: Vec<usize>,
    pub boundaries: Vec<RationalMatrix>,
}

impl ChainComplex {
    pub fn top_degree(&self) -> usize {
        self.dims.len().saturating_sub(1)
    }

    /// Fails with the first `p` where `d_{p-1} d_p != 0`.
    pub fn check_square_zero(&self) -> Result<()> {
        for p in 2..self.boundaries.len() {
            if !self.boundaries[p - 1].mul(&self.boundaries[p]).is_zero() {
                return Err(Error::BoundarySquare(p - 1, p));
            }
        }
        Ok(())
    }
}

/// Matrix of `D` on the bases of blades, for a ground-field algebra with
/// `D o D = 0`.
pub fn rinehart_complex(alg: &LieRinehartAlgebra, d: &Generator) -> Result<ChainComplex> {
    if alg.nvars() != 0 {
        return Err(Error::NotGroundField(alg.nvars()));
    }
    d.right_connection().check(alg)?;
    let n = alg.rank();
    let bases: Vec<Vec<Blade>> = (0..=n).map(|p| Blade::all_of_degree(n, p)).collect();
    let mut boundaries = vec![RationalMatrix::zeros(0, 1)];
    for p in 1..=n {
        let mut mat = RationalMatrix::zeros(bases[p - 1].len(), bases[p].len());
        for (j, &s) in bases[p].iter().enumerate() {
            let image = d.apply(alg, &Multivector::basis(0, n, s));
            for (t, c) in image.terms() {
                let i = bases[p - 1].iter().position(|b| b == t).expect("degree -1 image");
                mat.set(i, j, c.constant_term());
            }
        }
        boundaries.push(mat);
    }
    for &s in bases.iter().flatten() {
        let u = Multivector::basis(0, n, s);
        let sq = d.apply(alg, &d.apply(alg, &u));
        if !sq.is_zero() {
            return Err(Error::NotExact {
                input: u.to_string(),
                square: sq.to_string(),
            });
        }
    }
    Ok(ChainComplex {
        dims: bases.iter().map(Vec::len).collect(),
        boundaries,
    })
}

/// `dim H_p = dim C_p - rank d_p - rank d_{p+1}`.
pub fn homology_dims(complex: &ChainComplex) -> Result<Vec<usize>> {
    complex.check_square_zero()?;
    let ranks: Vec<usize> = complex.boundaries.iter().map(RationalMatrix::rank).collect();
    let top = complex.top_degree();
    Ok((0..=top)
        .map(|p| {
            let next = if p < top { ranks[p + 1] } else { 0 };
            complex.dims[p] - ranks[p] - next
        })
        .collect())
}

/// `sum_p (-1)^p b_p`.
pub fn euler_characteristic(dims: &[usize]) -> i64 {
    dims.iter()
        .enumerate()
        .map(|(p, &b)| if p % 2 == 0 { b as i64 } else { -(b as i64) })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gerstenhaber::RightConnection;
    use crate::lie_rinehart::LElement;
    use crate::ring::{rational, Poly};

    fn q(v: i64) -> Rational {
        rational(v, 1)
    }

    #[test]
    fn bareiss_rank() {
        let m = RationalMatrix::from_rows(
            3,
            vec![vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)], vec![q(0), q(1), q(1)]],
        );
        assert_eq!(m.rank(), 2);
        let m = RationalMatrix::from_rows(2, vec![vec![rational(1, 2), rational(1, 3)], vec![q(3), q(2)]]);
        assert_eq!(m.rank(), 1);
        assert_eq!(RationalMatrix::zeros(3, 4).rank(), 0);
        let id = RationalMatrix::from_rows(
            3,
            vec![vec![q(0), q(0), q(1)], vec![q(0), q(1), q(0)], vec![q(1), q(0), q(0)]],
        );
        assert_eq!(id.rank(), 3);
    }

    #[test]
    fn abelian_plane() {
        let alg = LieRinehartAlgebra::abelian(0, 2).unwrap();
        let c = rinehart_complex(&alg, &Generator::new(RightConnection::zero(&alg))).unwrap();
        assert_eq!(homology_dims(&c).unwrap(), vec![1, 2, 1]);
    }

    #[test]
    fn affine_line_unimodular_connection() {
        let alg = LieRinehartAlgebra::abelian(0, 2)
            .unwrap()
            .with_bracket(0, 1, LElement::basis(0, 2, 0))
            .unwrap();
        let d = Generator::new(RightConnection::new(vec![Poly::int(0, 0), Poly::int(0, -1)]));
        let c = rinehart_complex(&alg, &d).unwrap();
        assert_eq!(c.boundaries[1], RationalMatrix::from_rows(2, vec![vec![q(0), q(-1)]]));
        let dims = homology_dims(&c).unwrap();
        assert_eq!(dims, vec![0, 1, 1]);
        assert_eq!(euler_characteristic(&dims), 0);

        let bad = Generator::new(RightConnection::new(vec![Poly::int(0, 1), Poly::int(0, 0)]));
        assert!(matches!(rinehart_complex(&alg, &bad), Err(Error::NotExact { .. })));
    }

    #[test]
    fn needs_ground_field() {
        let alg = LieRinehartAlgebra::coordinate(1);
        let d = Generator::new(RightConnection::zero(&alg));
        assert_eq!(rinehart_complex(&alg, &d), Err(Error::NotGroundField(1)));
    }

    #[test]
    fn square_check_catches_bad_complex() {
        let c = ChainComplex {
            dims: vec![1, 1, 1],
            boundaries: vec![
                RationalMatrix::zeros(0, 1),
                RationalMatrix::from_rows(1, vec![vec![q(1)]]),
                RationalMatrix::from_rows(1, vec![vec![q(1)]]),
            ],
        };
        assert_eq!(homology_dims(&c), Err(Error::BoundarySquare(1, 2)));
    }
}
