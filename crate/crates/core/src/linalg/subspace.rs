//! Rational subspaces of `Q^n` in canonical form, and cyclic invariant
//! subspaces of a linear map.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::matrix::{is_zero_vec, RatMatrix};

/// A subspace of `Q^n`. The basis is the set of nonzero rows of the reduced
/// row echelon form of any spanning set, so equal subspaces compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatSubspace {
    ambient: usize,
    basis: Vec<Vec<BigRational>>,
}

impl RatSubspace {
    pub fn from_spanning(ambient: usize, vectors: &[Vec<BigRational>]) -> Self {
        if vectors.is_empty() {
            return RatSubspace::zero(ambient);
        }
        let m = RatMatrix::from_columns(ambient, vectors).transpose();
        let (r, pivots) = m.rref();
        let basis = (0..pivots.len()).map(|i| r.row(i)).collect();
        RatSubspace { ambient, basis }
    }

    pub fn zero(ambient: usize) -> Self {
        RatSubspace { ambient, basis: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        let id = RatMatrix::identity(ambient);
        RatSubspace::from_spanning(ambient, &id.columns())
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<BigRational>] {
        &self.basis
    }

    /// Basis as the columns of an `ambient × dim` matrix.
    pub fn basis_matrix(&self) -> RatMatrix {
        RatMatrix::from_columns(self.ambient, &self.basis)
    }

    pub fn contains(&self, v: &[BigRational]) -> bool {
        self.coordinates(v).is_some()
    }

    /// Coordinates of `v` in the canonical basis.
    pub fn coordinates(&self, v: &[BigRational]) -> Option<Vec<BigRational>> {
        assert_eq!(v.len(), self.ambient);
        if is_zero_vec(v) {
            return Some(vec![BigRational::zero(); self.dim()]);
        }
        if self.basis.is_empty() {
            return None;
        }
        self.basis_matrix().solve(v)
    }

    pub fn is_subspace_of(&self, other: &RatSubspace) -> bool {
        self.basis.iter().all(|b| other.contains(b))
    }

    pub fn sum(&self, other: &RatSubspace) -> RatSubspace {
        let vs: Vec<_> = self.basis.iter().chain(&other.basis).cloned().collect();
        RatSubspace::from_spanning(self.ambient, &vs)
    }

    pub fn intersect(&self, other: &RatSubspace) -> RatSubspace {
        if self.basis.is_empty() || other.basis.is_empty() {
            return RatSubspace::zero(self.ambient);
        }
        let mut cols = self.basis.clone();
        cols.extend(other.basis.iter().map(|b| b.iter().map(|x| -x).collect()));
        let m = RatMatrix::from_columns(self.ambient, &cols);
        let k1 = self.dim();
        let vs: Vec<Vec<BigRational>> = m.kernel().iter().map(|k| self.basis_matrix().mul_vec(&k[..k1])).collect();
        RatSubspace::from_spanning(self.ambient, &vs)
    }

    /// Image under `m` (an `r × ambient` matrix).
    pub fn image(&self, m: &RatMatrix) -> RatSubspace {
        let vs: Vec<_> = self.basis.iter().map(|b| m.mul_vec(b)).collect();
        RatSubspace::from_spanning(m.rows(), &vs)
    }

    pub fn is_invariant_under(&self, m: &RatMatrix) -> bool {
        self.basis.iter().all(|b| self.contains(&m.mul_vec(b)))
    }

    /// Matrix of `m` restricted to this subspace, in the canonical basis.
    /// Requires the subspace to be `m`-invariant.
    pub fn restrict(&self, m: &RatMatrix) -> Option<RatMatrix> {
        let cols: Option<Vec<_>> = self.basis.iter().map(|b| self.coordinates(&m.mul_vec(b))).collect();
        Some(RatMatrix::from_columns(self.dim(), &cols?))
    }
}

impl fmt::Display for RatSubspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "span{{")?;
        for (i, b) in self.basis.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            let parts: Vec<String> = b.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", parts.join(","))?;
        }
        write!(f, "}}")
    }
}

/// The smallest `φ`-invariant subspace containing a vector, with the
/// restriction of `φ` written in the cyclic basis `x, φx, …, φ^{d-1}x`.
#[derive(Clone, Debug)]
pub struct CyclicSubspace {
    pub subspace: RatSubspace,
    pub cyclic_basis: Vec<Vec<BigRational>>,
    pub restriction: RatMatrix,
}

pub fn smallest_invariant_subspace(phi: &RatMatrix, x: &[BigRational]) -> CyclicSubspace {
    assert!(phi.is_square());
    assert_eq!(x.len(), phi.rows());
    let n = phi.rows();
    let mut krylov: Vec<Vec<BigRational>> = Vec::new();
    let mut cur = x.to_vec();
    let coeffs = loop {
        if krylov.is_empty() && is_zero_vec(&cur) {
            break Vec::new();
        }
        if !krylov.is_empty() {
            if let Some(c) = RatMatrix::from_columns(n, &krylov).solve(&cur) {
                break c;
            }
        }
        let next = phi.mul_vec(&cur);
        krylov.push(std::mem::replace(&mut cur, next));
    };
    let d = krylov.len();
    // companion matrix: φ(φ^i x) = φ^{i+1} x, last column from the relation
    let mut restriction = RatMatrix::zeros(d, d);
    for j in 0..d {
        if j + 1 < d {
            restriction.set(j + 1, j, BigRational::one());
        } else {
            for (i, c) in coeffs.iter().enumerate() {
                restriction.set(i, j, c.clone());
            }
        }
    }
    CyclicSubspace { subspace: RatSubspace::from_spanning(n, &krylov), cyclic_basis: krylov, restriction }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::int_vec;
    use crate::linalg::matrix::to_rat_vec;

    fn rv(xs: &[i64]) -> Vec<BigRational> {
        to_rat_vec(&int_vec(xs))
    }

    #[test]
    fn eigenvector_gives_line() {
        let phi = RatMatrix::identity(2).scale(&BigRational::from_integer(2.into()));
        let c = smallest_invariant_subspace(&phi, &rv(&[1, 0]));
        assert_eq!(c.subspace.dim(), 1);
        assert_eq!(c.restriction, RatMatrix::from_i64_rows(&[&[2]], 1));
    }

    #[test]
    fn rotation_spans_plane() {
        let phi = RatMatrix::from_i64_rows(&[&[0, -1], &[1, 0]], 2);
        let c = smallest_invariant_subspace(&phi, &rv(&[1, 0]));
        assert_eq!(c.subspace, RatSubspace::full(2));
    }

    #[test]
    fn zero_vector_gives_zero_subspace() {
        let phi = RatMatrix::identity(2);
        let c = smallest_invariant_subspace(&phi, &rv(&[0, 0]));
        assert_eq!(c.subspace.dim(), 0);
        assert_eq!(c.restriction.rows(), 0);
    }

    #[test]
    fn canonical_form_is_spanning_set_independent() {
        let a = RatSubspace::from_spanning(3, &[rv(&[1, 2, 3]), rv(&[0, 1, 1])]);
        let b = RatSubspace::from_spanning(3, &[rv(&[1, 3, 4]), rv(&[2, 5, 7]), rv(&[0, 2, 2])]);
        assert_eq!(a, b);
    }

    #[test]
    fn intersection_of_planes() {
        let a = RatSubspace::from_spanning(3, &[rv(&[1, 0, 0]), rv(&[0, 1, 0])]);
        let b = RatSubspace::from_spanning(3, &[rv(&[0, 1, 0]), rv(&[0, 0, 1])]);
        assert_eq!(a.intersect(&b), RatSubspace::from_spanning(3, &[rv(&[0, 1, 0])]));
    }
}
