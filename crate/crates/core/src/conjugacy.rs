//! Conjugacy of hyperbolic elements, centralizers of hyperbolic elements,
//! and simultaneous conjugacy of tuples.
//!
//! A witness `x` for tuples `A`, `B` always satisfies `x a_i x⁻¹ = b_i`.

use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::group::Group;
use crate::linalg::{intersect_affine, AffineLatticeUnion, Lattice};
use crate::modulus::IntersectionShape;
use crate::tree::{Axis, TreeVertex};
use crate::word::Word;

/// Range of powers of `h'` tried when every intersection is the whole axis.
pub const POLYCYCLIC_WINDOW: i64 = 10;

/// Default state budget for the rank-one elliptic case.
pub const DEFAULT_BUDGET: usize = 100_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NotConjugateReason {
    TranslationLengths { left: usize, right: usize },
    NoLocalConjugator,
    EllipticVersusHyperbolic,
    TrivialVersusNontrivial,
    ShapeMismatch { index: usize, left: &'static str, right: &'static str },
    ShiftMismatch { first: i64, other: i64 },
    ShiftNotDivisible { shift: i64, step: usize },
    EmptyIntersection,
    ExponentMismatch,
    Unreachable { closure_size: usize },
}

impl NotConjugateReason {
    pub fn code(&self) -> &'static str {
        match self {
            NotConjugateReason::TranslationLengths { .. } => "translation_lengths",
            NotConjugateReason::NoLocalConjugator => "no_local_conjugator",
            NotConjugateReason::EllipticVersusHyperbolic => "elliptic_versus_hyperbolic",
            NotConjugateReason::TrivialVersusNontrivial => "trivial_versus_nontrivial",
            NotConjugateReason::ShapeMismatch { .. } => "shape_mismatch",
            NotConjugateReason::ShiftMismatch { .. } => "shift_mismatch",
            NotConjugateReason::ShiftNotDivisible { .. } => "shift_not_divisible",
            NotConjugateReason::EmptyIntersection => "empty_intersection",
            NotConjugateReason::ExponentMismatch => "exponent_mismatch",
            NotConjugateReason::Unreachable { .. } => "unreachable",
        }
    }
}

impl fmt::Display for NotConjugateReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NotConjugateReason::TranslationLengths { left, right } => {
                write!(f, "translation lengths differ ({left} and {right})")
            }
            NotConjugateReason::NoLocalConjugator => write!(f, "no local conjugator on the fundamental domain"),
            NotConjugateReason::EllipticVersusHyperbolic => {
                write!(f, "one tuple generates an elliptic subgroup and the other does not")
            }
            NotConjugateReason::TrivialVersusNontrivial => {
                write!(f, "a trivial entry is matched with a nontrivial one")
            }
            NotConjugateReason::ShapeMismatch { index, left, right } => {
                write!(f, "entry {index}: intersections with the axis are {left} and {right}")
            }
            NotConjugateReason::ShiftMismatch { first, other } => {
                write!(f, "entries are shifted by different amounts ({first} and {other})")
            }
            NotConjugateReason::ShiftNotDivisible { shift, step } => {
                write!(f, "shift {shift} is not a multiple of the centralizer step {step}")
            }
            NotConjugateReason::EmptyIntersection => write!(f, "no centralizer element matches every entry"),
            NotConjugateReason::ExponentMismatch => write!(f, "exponent patterns differ"),
            NotConjugateReason::Unreachable { closure_size } => {
                write!(f, "target not in the conjugacy closure of size {closure_size}")
            }
        }
    }
}

/// Data of a simultaneous conjugacy question that remains after reducing to
/// the centralizer `E ⋊ ⟨h'⟩` of a common hyperbolic element: `b` is
/// conjugate to `a` iff some `e·h'^m` (with `e` in `E`) conjugates every
/// `a_i` to `b_i`. Powers with `|m| ≤ searched_window` were ruled out.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolycyclicReduction {
    pub a_tuple: Vec<Word>,
    /// `B` already conjugated by `pre_conjugator⁻¹`.
    pub b_tuple: Vec<Word>,
    pub pre_conjugator: Word,
    pub hyperbolic: Word,
    pub e_basepoint: TreeVertex,
    pub e_generators: Vec<Vec<BigInt>>,
    pub h_prime: Word,
    pub searched_window: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConjugacyAnswer {
    Conjugate { witness: Word },
    NotConjugate { reason: NotConjugateReason },
    ReducedToPolycyclic(Box<PolycyclicReduction>),
    EllipticUnsupported { explanation: String },
    Inconclusive { explored: usize, bound: usize },
}

impl ConjugacyAnswer {
    pub fn kind(&self) -> &'static str {
        match self {
            ConjugacyAnswer::Conjugate { .. } => "conjugate",
            ConjugacyAnswer::NotConjugate { .. } => "not_conjugate",
            ConjugacyAnswer::ReducedToPolycyclic(_) => "reduced_to_polycyclic",
            ConjugacyAnswer::EllipticUnsupported { .. } => "elliptic_unsupported",
            ConjugacyAnswer::Inconclusive { .. } => "inconclusive",
        }
    }

    pub fn is_conjugate(&self) -> bool {
        matches!(self, ConjugacyAnswer::Conjugate { .. })
    }

    pub fn witness(&self) -> Option<&Word> {
        match self {
            ConjugacyAnswer::Conjugate { witness } => Some(witness),
            _ => None,
        }
    }

    fn not(reason: NotConjugateReason) -> Self {
        ConjugacyAnswer::NotConjugate { reason }
    }
}

/// How a hyperbolic element of `⟨A⟩` was found.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HyperbolicChoice {
    Single {
        index: usize,
        element: Word,
    },
    Product {
        first: usize,
        second: usize,
        element: Word,
    },
    /// Every entry fixes `fixed`.
    Elliptic {
        fixed: TreeVertex,
    },
}

impl HyperbolicChoice {
    /// The element built from another tuple by the same recipe.
    pub fn apply(&self, tuple: &[Word]) -> Option<Word> {
        match self {
            HyperbolicChoice::Single { index, .. } => Some(tuple[*index].clone()),
            HyperbolicChoice::Product { first, second, .. } => Some(tuple[*first].mul(&tuple[*second])),
            HyperbolicChoice::Elliptic { .. } => None,
        }
    }

    pub fn element(&self) -> Option<&Word> {
        match self {
            HyperbolicChoice::Single { element, .. } | HyperbolicChoice::Product { element, .. } => Some(element),
            HyperbolicChoice::Elliptic { .. } => None,
        }
    }
}

/// `C(h) = E ⋊ ⟨h'⟩`; `E` is given by coordinates at `basepoint`, a vertex
/// of the axis of `h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Centralizer {
    pub basepoint: TreeVertex,
    pub e_lattice: Lattice,
    pub h_prime: Word,
    pub h_prime_length: usize,
}

impl Centralizer {
    pub fn e_generators(&self) -> &[Vec<BigInt>] {
        self.e_lattice.basis()
    }

    pub fn e_elements(&self, group: &Group) -> Vec<Word> {
        self.e_generators().iter().map(|y| group.stabilizer_element(&self.basepoint, y)).collect()
    }
}

impl Group {
    /// A hyperbolic entry, else a hyperbolic product of two entries, else a
    /// vertex fixed by every entry.
    pub fn find_hyperbolic_in_tuple(&self, tuple: &[Word]) -> Result<HyperbolicChoice> {
        for (index, a) in tuple.iter().enumerate() {
            if !self.is_elliptic(a) {
                return Ok(HyperbolicChoice::Single { index, element: a.clone() });
            }
        }
        for i in 0..tuple.len() {
            for j in i + 1..tuple.len() {
                let p = tuple[i].mul(&tuple[j]);
                if !self.is_elliptic(&p) {
                    return Ok(HyperbolicChoice::Product { first: i, second: j, element: p });
                }
            }
        }
        Ok(HyperbolicChoice::Elliptic { fixed: self.common_fixed_vertex(tuple)? })
    }

    /// A vertex fixed by all entries of a tuple whose entries and pairwise
    /// products are elliptic.
    pub(crate) fn common_fixed_vertex(&self, tuple: &[Word]) -> Result<TreeVertex> {
        let mut x = self.base_tree_vertex();
        for (i, a) in tuple.iter().enumerate() {
            let fixed = self.translation_profile(a).fixed_vertex().cloned().ok_or(Error::NotElliptic)?;
            if i == 0 {
                x = fixed;
                continue;
            }
            // the projection of x onto Fix(a) still lies in the common fixed set
            let path = self.tree_path(&x, &fixed);
            x = path.vertices.into_iter().find(|y| self.fixes(a, y)).expect("path ends at a fixed vertex");
        }
        if tuple.iter().all(|a| self.fixes(a, &x)) {
            Ok(x)
        } else {
            Err(Error::Internal("entries do not have a common fixed vertex".into()))
        }
    }

    /// Decides whether hyperbolic `a` and `b` are conjugate.
    pub fn conjugate_hyperbolic(&self, a: &Word, b: &Word) -> Result<ConjugacyAnswer> {
        let axis_a = self.axis(a).ok_or(Error::NotHyperbolic)?;
        let axis_b = self.axis(b).ok_or(Error::NotHyperbolic)?;
        if axis_a.length != axis_b.length {
            return Ok(ConjugacyAnswer::not(NotConjugateReason::TranslationLengths {
                left: axis_a.length,
                right: axis_b.length,
            }));
        }
        let v = &axis_a.fd.vertices[0];
        let c_inv = self.inverse(&v.carrier);
        for vj in &axis_b.fd.vertices[..axis_b.length] {
            if vj.vertex != v.vertex {
                continue;
            }
            let gj = vj.carrier.mul(&c_inv);
            let moved = self.conjugate_by(&gj, a);
            if let Some(y) = self.local_conjugators(vj, &moved, b).any_point() {
                let witness = self.simplify(&Word::product([&self.stabilizer_element(vj, &y), &gj]));
                self.verify_witness(&witness, std::slice::from_ref(a), std::slice::from_ref(b))?;
                return Ok(ConjugacyAnswer::Conjugate { witness });
            }
        }
        Ok(ConjugacyAnswer::not(NotConjugateReason::NoLocalConjugator))
    }

    /// `C(h) = E ⋊ ⟨h'⟩` for hyperbolic `h`.
    pub fn centralizer_hyperbolic(&self, h: &Word) -> Result<Centralizer> {
        let axis = self.axis(h).ok_or(Error::NotHyperbolic)?;
        Ok(self.centralizer_on_axis(&axis))
    }

    fn centralizer_on_axis(&self, axis: &Axis) -> Centralizer {
        let h = &axis.h;
        let v = &axis.fd.vertices[0];
        let e_lattice = self.local_conjugators(v, h, h).generated_lattice();
        let c_inv = self.inverse(&v.carrier);
        for k in 1..axis.length {
            let vk = &axis.fd.vertices[k];
            if vk.vertex != v.vertex {
                continue;
            }
            let gk = vk.carrier.mul(&c_inv);
            if let Some(y) = self.local_conjugators(vk, &self.conjugate_by(&gk, h), h).any_point() {
                let h_prime = self.simplify(&self.stabilizer_element(vk, &y).mul(&gk));
                return Centralizer { basepoint: v.clone(), e_lattice, h_prime, h_prime_length: k };
            }
        }
        Centralizer { basepoint: v.clone(), e_lattice, h_prime: h.clone(), h_prime_length: axis.length }
    }

    /// Simultaneous conjugacy of two tuples, with the default budget for the
    /// rank-one elliptic case.
    pub fn multi_conjugate(&self, a: &[Word], b: &[Word]) -> Result<ConjugacyAnswer> {
        self.multi_conjugate_with_budget(a, b, DEFAULT_BUDGET)
    }

    pub fn multi_conjugate_with_budget(&self, a: &[Word], b: &[Word], budget: usize) -> Result<ConjugacyAnswer> {
        if a.len() != b.len() {
            return Err(Error::LengthMismatch(a.len(), b.len()));
        }
        if a.iter().zip(b).all(|(x, y)| self.equal(x, y)) {
            return Ok(ConjugacyAnswer::Conjugate { witness: Word::identity() });
        }
        for (x, y) in a.iter().zip(b) {
            if self.is_trivial(x) != self.is_trivial(y) {
                return Ok(ConjugacyAnswer::not(NotConjugateReason::TrivialVersusNontrivial));
            }
        }
        let choice = self.find_hyperbolic_in_tuple(a)?;
        let Some(b_elem) = choice.apply(b) else {
            if self.find_hyperbolic_in_tuple(b)?.element().is_some() {
                return Ok(ConjugacyAnswer::not(NotConjugateReason::EllipticVersusHyperbolic));
            }
            if self.graph().is_rank_one() {
                return self.gbs_multi_conjugate(a, b, budget);
            }
            return Ok(ConjugacyAnswer::EllipticUnsupported {
                explanation: "both tuples generate elliptic subgroups and some vertex group has rank above 1".into(),
            });
        };
        let a_elem = choice.element().unwrap();
        if self.is_elliptic(&b_elem) {
            return Ok(ConjugacyAnswer::not(NotConjugateReason::EllipticVersusHyperbolic));
        }
        let g0 = match self.conjugate_hyperbolic(a_elem, &b_elem)? {
            ConjugacyAnswer::Conjugate { witness } => witness,
            other => return Ok(other),
        };
        let g0_inv = self.inverse(&g0);
        let b0: Vec<Word> = b.iter().map(|x| self.simplify(&self.conjugate_by(&g0_inv, x))).collect();
        let axis = self.axis(a_elem).expect("hyperbolic");
        let cent = self.centralizer_on_axis(&axis);
        let mut shapes = Vec::with_capacity(a.len());
        for (i, (x, y)) in a.iter().zip(&b0).enumerate() {
            let sx = self.classify_on_axis(x, &axis)?;
            let sy = self.classify_on_axis(y, &axis)?;
            if sx.kind() != sy.kind() {
                return Ok(ConjugacyAnswer::not(NotConjugateReason::ShapeMismatch {
                    index: i,
                    left: sx.kind(),
                    right: sy.kind(),
                }));
            }
            shapes.push((sx, sy));
        }
        let shifts: Vec<i64> = shapes
            .iter()
            .filter(|(sx, _)| *sx != IntersectionShape::WholeAxis)
            .map(|(sx, sy)| sy.anchor().unwrap() - sx.anchor().unwrap())
            .collect();
        let finish = |m: i64| -> Option<Word> {
            self.centralizer_match(a, &b0, &cent, m)
                .map(|e| self.simplify(&Word::product([&g0, &e, &self.pow(&cent.h_prime, m)])))
        };
        let Some(&d) = shifts.first() else {
            for m in window(POLYCYCLIC_WINDOW) {
                if let Some(witness) = finish(m) {
                    self.verify_witness(&witness, a, b)?;
                    return Ok(ConjugacyAnswer::Conjugate { witness });
                }
            }
            return Ok(ConjugacyAnswer::ReducedToPolycyclic(Box::new(PolycyclicReduction {
                a_tuple: a.to_vec(),
                b_tuple: b0,
                pre_conjugator: g0,
                hyperbolic: a_elem.clone(),
                e_basepoint: cent.basepoint.clone(),
                e_generators: cent.e_generators().to_vec(),
                h_prime: cent.h_prime.clone(),
                searched_window: POLYCYCLIC_WINDOW,
            })));
        };
        if let Some(&other) = shifts.iter().find(|&&s| s != d) {
            return Ok(ConjugacyAnswer::not(NotConjugateReason::ShiftMismatch { first: d, other }));
        }
        let step = cent.h_prime_length as i64;
        if d % step != 0 {
            return Ok(ConjugacyAnswer::not(NotConjugateReason::ShiftNotDivisible {
                shift: d,
                step: cent.h_prime_length,
            }));
        }
        match finish(d / step) {
            Some(witness) => {
                self.verify_witness(&witness, a, b)?;
                Ok(ConjugacyAnswer::Conjugate { witness })
            }
            None => Ok(ConjugacyAnswer::not(NotConjugateReason::EmptyIntersection)),
        }
    }

    /// An element `e` of `E` with `e h'^m a_i h'^{-m} e⁻¹ = b_i` for all `i`.
    fn centralizer_match(&self, a: &[Word], b: &[Word], cent: &Centralizer, m: i64) -> Option<Word> {
        let hm = self.pow(&cent.h_prime, m);
        let v = &cent.basepoint;
        let dim = self.rank(v.vertex);
        let e_part = crate::linalg::AffineLattice::new(vec![BigInt::from(0); dim], cent.e_lattice.clone());
        let mut acc = AffineLatticeUnion::single(e_part);
        for (x, y) in a.iter().zip(b) {
            let moved = self.simplify(&self.conjugate_by(&hm, x));
            acc = intersect_affine(&acc, &self.local_conjugators(v, &moved, y));
            if acc.is_empty() {
                return None;
            }
        }
        acc.any_point().map(|y| self.stabilizer_element(v, &y))
    }

    pub(crate) fn verify_witness(&self, witness: &Word, a: &[Word], b: &[Word]) -> Result<()> {
        for (x, y) in a.iter().zip(b) {
            if !self.equal(&self.conjugate_by(witness, x), y) {
                return Err(Error::Internal(format!("witness {} does not conjugate", self.render(witness))));
            }
        }
        Ok(())
    }
}

/// `0, 1, -1, 2, -2, …, w, -w`.
fn window(w: i64) -> impl Iterator<Item = i64> {
    std::iter::once(0).chain((1..=w).flat_map(|m| [m, -m]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn hyperbolic_choice() {
        let g = fixtures::bs12();
        let (a, t) = (g.vertex_word(0, &[1]), g.letter(0));
        assert!(matches!(
            g.find_hyperbolic_in_tuple(&[a.clone(), t]).unwrap(),
            HyperbolicChoice::Single { index: 1, .. }
        ));
        assert!(matches!(
            g.find_hyperbolic_in_tuple(&[a.clone(), g.pow(&a, 2)]).unwrap(),
            HyperbolicChoice::Elliptic { .. }
        ));
        let am = fixtures::amalg();
        let c = am.find_hyperbolic_in_tuple(&[am.vertex_word(0, &[1]), am.vertex_word(1, &[1])]).unwrap();
        assert!(matches!(c, HyperbolicChoice::Product { first: 0, second: 1, .. }));
    }

    #[test]
    fn hyperbolic_conjugacy_in_bs12() {
        let g = fixtures::bs12();
        let (a, t) = (g.vertex_word(0, &[1]), g.letter(0));
        let r = g.conjugate_hyperbolic(&t, &a.mul(&t)).unwrap();
        let w = r.witness().unwrap();
        assert!(g.equal(&g.conjugate_by(w, &t), &a.mul(&t)));
        let f = fixtures::f2();
        assert!(!f.conjugate_hyperbolic(&f.letter(0), &f.letter(2)).unwrap().is_conjugate());
    }

    #[test]
    fn centralizers() {
        let g = fixtures::bs12();
        let c = g.centralizer_hyperbolic(&g.letter(0)).unwrap();
        assert_eq!(c.e_lattice.rank(), 0);
        assert_eq!(c.h_prime_length, 1);
        let k = fixtures::klein();
        let t = k.letter(0);
        let c = k.centralizer_hyperbolic(&k.pow(&t, 2)).unwrap();
        assert_eq!(c.e_lattice.rank(), 1);
        assert_eq!(c.h_prime_length, 1);
        let t2 = k.pow(&t, 2);
        assert!(k.is_trivial(&k.commutator(&c.h_prime, &t2)));
        for e in c.e_elements(&k) {
            assert!(k.is_trivial(&k.commutator(&e, &t2)));
        }
    }

    #[test]
    fn tuples_in_bs12() {
        let g = fixtures::bs12();
        let (a, t) = (g.vertex_word(0, &[1]), g.letter(0));
        let r = g.multi_conjugate(&[t.clone(), a.clone()], &[t.clone(), g.pow(&a, 2)]).unwrap();
        assert_eq!(g.render(r.witness().unwrap()), "te1");
        let r = g.multi_conjugate(&[t.clone(), a.clone()], &[t, g.pow(&a, 3)]).unwrap();
        assert_eq!(r.kind(), "not_conjugate");
    }

    #[test]
    fn klein_polycyclic_branch() {
        let k = fixtures::klein();
        let (a, t) = (k.vertex_word(0, &[1]), k.letter(0));
        let r = k.multi_conjugate(&[t.clone(), a.clone()], &[t.clone(), k.pow(&a, 3)]).unwrap();
        assert_eq!(r.kind(), "reduced_to_polycyclic");
        let r = k.multi_conjugate(&[t.clone(), a.clone()], &[t, k.inverse(&a)]).unwrap();
        assert!(r.is_conjugate());
    }
}
