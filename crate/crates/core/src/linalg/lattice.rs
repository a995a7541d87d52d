//! Integer lattices in Hermite normal form, affine sublattices and finite
//! unions of them.
//!
//! A [`Lattice`] stores its basis as echelon rows: pivot columns strictly
//! increase, pivots are positive and every entry above a pivot lies in
//! `[0, pivot)`. This form is canonical, so two lattices are equal exactly
//! when their stored bases are identical.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::{is_zero_vec, vec_add, vec_scale, vec_sub, IntMatrix};

/// Result of an integer row reduction with tracked unimodular transform.
#[derive(Clone, Debug)]
pub(crate) struct Echelon {
    /// Nonzero echelon rows, in pivot order.
    pub rows: Vec<Vec<BigInt>>,
    pub pivots: Vec<usize>,
    /// `transforms[i]` expresses `rows[i]` as a combination of the inputs.
    pub transforms: Vec<Vec<BigInt>>,
    /// Combinations of the inputs that vanish; a basis of the relation lattice.
    pub kernel: Vec<Vec<BigInt>>,
}

/// Integer row reduction of `input` (each a vector of length `dim`) to
/// Hermite normal form, tracking the transform.
pub(crate) fn echelon(input: &[Vec<BigInt>], dim: usize) -> Echelon {
    let n = input.len();
    let mut rows: Vec<Vec<BigInt>> = input.to_vec();
    let mut trans: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            let mut e = vec![BigInt::zero(); n];
            e[i] = BigInt::from(1);
            e
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..dim {
        if r == n {
            break;
        }
        loop {
            // smallest nonzero |entry| at column c among rows r..
            let best =
                (r..n).filter(|&i| !rows[i][c].is_zero()).min_by(|&a, &b| rows[a][c].abs().cmp(&rows[b][c].abs()));
            let Some(best) = best else { break };
            rows.swap(r, best);
            trans.swap(r, best);
            let mut done = true;
            for i in r + 1..n {
                if rows[i][c].is_zero() {
                    continue;
                }
                let q = rows[i][c].div_floor(&rows[r][c]);
                let (head, tail) = rows.split_at_mut(i);
                sub_multiple(&mut tail[0], &head[r], &q);
                let (th, tt) = trans.split_at_mut(i);
                sub_multiple(&mut tt[0], &th[r], &q);
                if !rows[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if rows.get(r).is_none_or(|row| row[c].is_zero()) {
            continue;
        }
        if rows[r][c].is_negative() {
            rows[r].iter_mut().for_each(|x| *x = -x.clone());
            trans[r].iter_mut().for_each(|x| *x = -x.clone());
        }
        for i in 0..r {
            let q = rows[i][c].div_floor(&rows[r][c]);
            if q.is_zero() {
                continue;
            }
            let (head, tail) = rows.split_at_mut(r);
            sub_multiple(&mut head[i], &tail[0], &q);
            let (th, tt) = trans.split_at_mut(r);
            sub_multiple(&mut th[i], &tt[0], &q);
        }
        pivots.push(c);
        r += 1;
    }
    let kernel = trans.split_off(r);
    rows.truncate(r);
    Echelon { rows, pivots, transforms: trans, kernel }
}

fn sub_multiple(target: &mut [BigInt], src: &[BigInt], q: &BigInt) {
    for (t, s) in target.iter_mut().zip(src) {
        *t -= q * s;
    }
}

/// A subgroup of `Z^n` with canonical Hermite basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lattice {
    dim: usize,
    basis: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

impl Lattice {
    pub fn from_generators(dim: usize, gens: &[Vec<BigInt>]) -> Self {
        for g in gens {
            assert_eq!(g.len(), dim, "generator dimension mismatch");
        }
        let e = echelon(gens, dim);
        Lattice { dim, basis: e.rows, pivots: e.pivots }
    }

    pub fn zero(dim: usize) -> Self {
        Lattice { dim, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(dim: usize) -> Self {
        let gens: Vec<Vec<BigInt>> = IntMatrix::identity(dim).row_vecs();
        Lattice::from_generators(dim, &gens)
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// Basis vectors in canonical order.
    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    /// Basis as the columns of a `dim × rank` matrix.
    pub fn basis_matrix(&self) -> IntMatrix {
        IntMatrix::from_columns(self.dim, &self.basis)
    }

    /// Canonical representative of `v` modulo the lattice.
    pub fn reduce(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.dim);
        let mut out = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            let q = out[p].div_floor(&row[p]);
            if !q.is_zero() {
                sub_multiple(&mut out, row, &q);
            }
        }
        out
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        is_zero_vec(&self.reduce(v))
    }

    /// Integer coordinates of `v` in the canonical basis.
    pub fn coordinates(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        let mut rest = v.to_vec();
        let mut coords = Vec::with_capacity(self.rank());
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            let (q, r) = rest[p].div_rem(&row[p]);
            if !r.is_zero() {
                return None;
            }
            sub_multiple(&mut rest, row, &q);
            coords.push(q);
        }
        is_zero_vec(&rest).then_some(coords)
    }

    pub fn is_sublattice_of(&self, other: &Lattice) -> bool {
        self.dim == other.dim && self.basis.iter().all(|b| other.contains(b))
    }

    pub fn sum(&self, other: &Lattice) -> Lattice {
        assert_eq!(self.dim, other.dim);
        let gens: Vec<_> = self.basis.iter().chain(&other.basis).cloned().collect();
        Lattice::from_generators(self.dim, &gens)
    }

    pub fn intersect(&self, other: &Lattice) -> Lattice {
        assert_eq!(self.dim, other.dim);
        // x = B1 y = B2 z  <=>  (y, z) in ker [B1 | -B2]
        let k1 = self.rank();
        let mut rows: Vec<Vec<BigInt>> = self.basis.clone();
        rows.extend(other.basis.iter().map(|b| b.iter().map(|x| -x).collect()));
        let e = echelon(&rows, self.dim);
        let gens: Vec<Vec<BigInt>> = e.kernel.iter().map(|k| combine(&self.basis, &k[..k1], self.dim)).collect();
        Lattice::from_generators(self.dim, &gens)
    }

    /// Image of the lattice under the linear map `m` (rows = target dim).
    pub fn image(&self, m: &IntMatrix) -> Lattice {
        assert_eq!(m.cols(), self.dim);
        let gens: Vec<_> = self.basis.iter().map(|b| m.mul_vec(b)).collect();
        Lattice::from_generators(m.rows(), &gens)
    }
}

impl fmt::Display for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, b) in self.basis.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", fmt_vec(b))?;
        }
        write!(f, ">")
    }
}

pub(crate) fn fmt_vec(v: &[BigInt]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

fn combine(vectors: &[Vec<BigInt>], coeffs: &[BigInt], dim: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); dim];
    for (v, c) in vectors.iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(v) {
            *o += c * x;
        }
    }
    out
}

/// Canonical basis of the lattice spanned by the columns of `generators`.
pub fn hermite_basis(generators: &IntMatrix) -> Lattice {
    Lattice::from_generators(generators.rows(), &generators.columns())
}

/// A coset `base + lattice`; `base` is reduced modulo the lattice.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineLattice {
    base: Vec<BigInt>,
    lattice: Lattice,
}

impl AffineLattice {
    pub fn new(base: Vec<BigInt>, lattice: Lattice) -> Self {
        assert_eq!(base.len(), lattice.ambient_dim());
        let base = lattice.reduce(&base);
        AffineLattice { base, lattice }
    }

    pub fn point(p: Vec<BigInt>) -> Self {
        let d = p.len();
        AffineLattice::new(p, Lattice::zero(d))
    }

    pub fn full(dim: usize) -> Self {
        AffineLattice::new(vec![BigInt::zero(); dim], Lattice::full(dim))
    }

    pub fn base(&self) -> &[BigInt] {
        &self.base
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn ambient_dim(&self) -> usize {
        self.lattice.ambient_dim()
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.lattice.contains(&vec_sub(v, &self.base))
    }

    pub fn is_subset_of(&self, other: &AffineLattice) -> bool {
        self.lattice.is_sublattice_of(&other.lattice) && other.contains(&self.base)
    }

    pub fn intersect(&self, other: &AffineLattice) -> Option<AffineLattice> {
        assert_eq!(self.ambient_dim(), other.ambient_dim());
        let dim = self.ambient_dim();
        // a + B1 y = b + B2 z  <=>  [B1 | -B2](y, z) = b - a
        let b1 = self.lattice.basis();
        let mut columns: Vec<Vec<BigInt>> = b1.to_vec();
        columns.extend(other.lattice.basis().iter().map(|b| b.iter().map(|x| -x).collect()));
        let sys = IntMatrix::from_columns(dim, &columns);
        let rhs = vec_sub(&other.base, &self.base);
        let sol = solve_linear_system_integer(&sys, &rhs)?;
        let k1 = b1.len();
        let base = vec_add(&self.base, &combine(b1, &sol.base[..k1], dim));
        let gens: Vec<_> = sol.lattice.basis().iter().map(|k| combine(b1, &k[..k1], dim)).collect();
        Some(AffineLattice::new(base, Lattice::from_generators(dim, &gens)))
    }

    /// Image under `x ↦ m x + shift`.
    pub fn map_affine(&self, m: &IntMatrix, shift: &[BigInt]) -> AffineLattice {
        let base = vec_add(&m.mul_vec(&self.base), shift);
        AffineLattice::new(base, self.lattice.image(m))
    }

    /// The point `base + Σ c_i b_i`.
    pub fn element(&self, coeffs: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(coeffs.len(), self.lattice.rank());
        vec_add(&self.base, &combine(self.lattice.basis(), coeffs, self.ambient_dim()))
    }

    /// A few concrete members: the base and base ± each basis vector.
    pub fn sample_points(&self) -> Vec<Vec<BigInt>> {
        let mut out = vec![self.base.clone()];
        for b in self.lattice.basis() {
            out.push(vec_add(&self.base, b));
            out.push(vec_sub(&self.base, b));
            out.push(vec_add(&self.base, &vec_scale(b, &BigInt::from(2))));
        }
        out
    }
}

impl fmt::Display for AffineLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}", fmt_vec(&self.base), self.lattice)
    }
}

/// Finite union of affine sublattices of a common `Z^n`. The empty union is
/// the empty set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineLatticeUnion {
    dim: usize,
    parts: Vec<AffineLattice>,
}

impl AffineLatticeUnion {
    pub fn empty(dim: usize) -> Self {
        AffineLatticeUnion { dim, parts: Vec::new() }
    }

    pub fn single(part: AffineLattice) -> Self {
        AffineLatticeUnion { dim: part.ambient_dim(), parts: vec![part] }
    }

    pub fn full(dim: usize) -> Self {
        AffineLatticeUnion::single(AffineLattice::full(dim))
    }

    pub fn from_parts(dim: usize, parts: impl IntoIterator<Item = AffineLattice>) -> Self {
        let mut u = AffineLatticeUnion::empty(dim);
        for p in parts {
            u.insert(p);
        }
        u
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn parts(&self) -> &[AffineLattice] {
        &self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.parts.iter().any(|p| p.contains(v))
    }

    /// Adds a part, dropping anything it makes redundant.
    pub fn insert(&mut self, part: AffineLattice) {
        assert_eq!(part.ambient_dim(), self.dim);
        if self.parts.iter().any(|p| part.is_subset_of(p)) {
            return;
        }
        self.parts.retain(|p| !p.is_subset_of(&part));
        self.parts.push(part);
        self.parts.sort_by(|a, b| format!("{a}").cmp(&format!("{b}")));
    }

    pub fn union(&self, other: &AffineLatticeUnion) -> AffineLatticeUnion {
        let mut out = self.clone();
        for p in &other.parts {
            out.insert(p.clone());
        }
        out
    }

    /// Some member, if nonempty.
    pub fn any_point(&self) -> Option<Vec<BigInt>> {
        self.parts.first().map(|p| p.base().to_vec())
    }

    /// Subgroup generated by every member; equals the set itself when the
    /// union is a subgroup.
    pub fn generated_lattice(&self) -> Lattice {
        let mut gens = Vec::new();
        for p in &self.parts {
            gens.push(p.base().to_vec());
            gens.extend(p.lattice().basis().iter().cloned());
        }
        Lattice::from_generators(self.dim, &gens)
    }
}

impl fmt::Display for AffineLatticeUnion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "∅");
        }
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, " ∪ ")?;
            }
            write!(f, "{{{p}}}")?;
        }
        Ok(())
    }
}

/// All integer solutions of `a x = b`, or `None` when there are none.
pub fn solve_linear_system_integer(a: &IntMatrix, b: &[BigInt]) -> Option<AffineLattice> {
    assert_eq!(a.rows(), b.len(), "right-hand side has wrong dimension");
    let n = a.cols();
    // rows of the reduction are the images of the unit vectors
    let e = echelon(&a.columns(), a.rows());
    let mut rest = b.to_vec();
    let mut x = vec![BigInt::zero(); n];
    for ((row, &p), t) in e.rows.iter().zip(&e.pivots).zip(&e.transforms) {
        let (q, r) = rest[p].div_rem(&row[p]);
        if !r.is_zero() {
            return None;
        }
        if q.is_zero() {
            continue;
        }
        sub_multiple(&mut rest, row, &q);
        for (xi, ti) in x.iter_mut().zip(t) {
            *xi += &q * ti;
        }
    }
    if !is_zero_vec(&rest) {
        return None;
    }
    Some(AffineLattice::new(x, Lattice::from_generators(n, &e.kernel)))
}

/// Exact intersection of two unions.
pub fn intersect_affine(u: &AffineLatticeUnion, v: &AffineLatticeUnion) -> AffineLatticeUnion {
    assert_eq!(u.ambient_dim(), v.ambient_dim());
    let mut out = AffineLatticeUnion::empty(u.ambient_dim());
    for p in u.parts() {
        for q in v.parts() {
            if let Some(r) = p.intersect(q) {
                out.insert(r);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::int_vec;

    fn lat(dim: usize, gens: &[&[i64]]) -> Lattice {
        let g: Vec<_> = gens.iter().map(|v| int_vec(v)).collect();
        Lattice::from_generators(dim, &g)
    }

    fn one_dim(base: i64, modulus: i64) -> AffineLattice {
        AffineLattice::new(int_vec(&[base]), lat(1, &[&[modulus]]))
    }

    #[test]
    fn hermite_drops_dependent_column() {
        let g = IntMatrix::from_i64_rows(&[&[2, 0, 2], &[0, 2, 2]], 3);
        let l = hermite_basis(&g);
        assert_eq!(l.basis(), &[int_vec(&[2, 0]), int_vec(&[0, 2])]);
    }

    #[test]
    fn hermite_of_identity_is_identity() {
        let l = hermite_basis(&IntMatrix::identity(2));
        assert_eq!(l.basis(), &[int_vec(&[1, 0]), int_vec(&[0, 1])]);
    }

    #[test]
    fn hermite_takes_gcd() {
        let g = IntMatrix::from_i64_rows(&[&[4, 6], &[0, 0]], 2);
        assert_eq!(hermite_basis(&g).basis(), &[int_vec(&[2, 0])]);
    }

    #[test]
    fn hermite_is_order_independent() {
        let a = lat(2, &[&[3, 1], &[1, 5], &[-2, 7]]);
        let b = lat(2, &[&[-2, 7], &[3, 1], &[1, 5]]);
        assert_eq!(a, b);
        let again = Lattice::from_generators(2, a.basis());
        assert_eq!(again, a);
    }

    #[test]
    fn solve_examples() {
        let a = IntMatrix::from_i64_rows(&[&[2]], 1);
        let s = solve_linear_system_integer(&a, &int_vec(&[4])).unwrap();
        assert_eq!(s, AffineLattice::point(int_vec(&[2])));
        assert!(solve_linear_system_integer(&a, &int_vec(&[3])).is_none());

        let a = IntMatrix::from_i64_rows(&[&[1, 1]], 2);
        let s = solve_linear_system_integer(&a, &int_vec(&[0])).unwrap();
        assert_eq!(s.base(), &int_vec(&[0, 0])[..]);
        assert_eq!(s.lattice(), &lat(2, &[&[1, -1]]));
    }

    #[test]
    fn crt_intersection() {
        let u = AffineLatticeUnion::single(one_dim(0, 2));
        let v = AffineLatticeUnion::single(one_dim(0, 3));
        let w = intersect_affine(&u, &v);
        assert_eq!(w.parts(), &[one_dim(0, 6)]);
        let odd = AffineLatticeUnion::single(one_dim(1, 2));
        assert!(intersect_affine(&odd, &u).is_empty());
    }

    #[test]
    fn union_absorbs_subsets() {
        let mut u = AffineLatticeUnion::empty(1);
        u.insert(one_dim(0, 4));
        u.insert(one_dim(0, 2));
        assert_eq!(u.parts(), &[one_dim(0, 2)]);
        u.insert(one_dim(2, 4));
        assert_eq!(u.parts().len(), 1);
    }

    #[test]
    fn zero_dimensional_lattices() {
        let full = AffineLattice::full(0);
        assert!(full.contains(&[]));
        let s = solve_linear_system_integer(&IntMatrix::zeros(0, 0), &[]).unwrap();
        assert_eq!(s, full);
    }

    #[test]
    fn coordinates_round_trip() {
        let l = lat(3, &[&[2, 1, 0], &[0, 3, 1], &[1, 1, 1]]);
        let v = vec_add(&vec_scale(&l.basis()[0], &BigInt::from(5)), &l.basis()[1]);
        let c = l.coordinates(&v).unwrap();
        let back = combine(l.basis(), &c, 3);
        assert_eq!(back, v);
    }
}
