//! Path forms, loop forms and the reduction process; the word problem.
//!
//! A [`PathForm`] `c_0 s_1 c_1 … s_p c_p` runs along oriented edges
//! `e_1, …, e_p` with `e_i` going from `v_{i-1}` to `v_i`, and `c_i` in the
//! vertex group of `v_i`. The edge letter `s_e` is the stable letter of the
//! reverse edge, so that `s_e · inj_terminal(e)(x) · s_e⁻¹ = inj_initial(e)(x)`;
//! for tree edges it is trivial. A loop form is a path form starting and
//! ending at the base vertex.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::group::Group;
use crate::linalg::{fmt_vec, is_zero_vec, vec_add, vec_neg};
use crate::word::{Syllable, Word};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PathForm {
    /// `v_0, …, v_p`.
    pub vertices: Vec<usize>,
    /// `e_1, …, e_p`.
    pub edges: Vec<usize>,
    /// `c_0, …, c_p`.
    pub terms: Vec<Vec<BigInt>>,
}

pub type LoopForm = PathForm;
pub type ReducedForm = PathForm;

impl PathForm {
    /// The trivial form at `v` carrying `x`.
    pub fn at_vertex(v: usize, x: Vec<BigInt>) -> Self {
        PathForm { vertices: vec![v], edges: Vec::new(), terms: vec![x] }
    }

    pub fn length(&self) -> usize {
        self.edges.len()
    }

    pub fn start(&self) -> usize {
        self.vertices[0]
    }

    pub fn end(&self) -> usize {
        *self.vertices.last().unwrap()
    }

    pub fn is_identity_form(&self) -> bool {
        self.edges.is_empty() && is_zero_vec(&self.terms[0])
    }

    /// Prefix `c_0 s_1 … c_{i-1} s_i` as a form ending at `v_i` with zero last term.
    pub fn prefix(&self, i: usize) -> PathForm {
        let mut terms: Vec<Vec<BigInt>> = self.terms[..i].to_vec();
        terms.push(vec![BigInt::zero(); self.terms[i].len()]);
        PathForm { vertices: self.vertices[..=i].to_vec(), edges: self.edges[..i].to_vec(), terms }
    }
}

impl fmt::Display for PathForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]{}", self.vertices[0], fmt_vec(&self.terms[0]))?;
        for i in 0..self.edges.len() {
            write!(f, " -{}-> [{}]{}", self.edges[i], self.vertices[i + 1], fmt_vec(&self.terms[i + 1]))?;
        }
        Ok(())
    }
}

impl Group {
    /// Form along the tree edges from `from` to `to`, with zero terms.
    pub fn tree_form(&self, from: usize, to: usize) -> PathForm {
        let g = self.graph();
        let pres = self.presentation();
        let up = pres.path_from_base(g, from);
        let down = pres.path_from_base(g, to);
        let common = up.iter().zip(&down).take_while(|(a, b)| a == b).count();
        let mut edges: Vec<usize> = up[common..].iter().rev().map(|&e| g.reverse(e)).collect();
        edges.extend(&down[common..]);
        self.form_along(from, &edges)
    }

    fn form_along(&self, from: usize, edges: &[usize]) -> PathForm {
        let g = self.graph();
        let mut vertices = vec![from];
        for &e in edges {
            vertices.push(g.edge(e).to);
        }
        let terms = vertices.iter().map(|&v| vec![BigInt::zero(); self.rank(v)]).collect();
        PathForm { vertices, edges: edges.to_vec(), terms }
    }

    /// `a · b`; requires `a` to end where `b` starts.
    pub fn concat_forms(&self, a: &PathForm, b: &PathForm) -> PathForm {
        assert_eq!(a.end(), b.start(), "forms do not meet");
        let mut out = a.clone();
        let last = out.terms.pop().unwrap();
        out.vertices.pop();
        out.vertices.extend(&b.vertices);
        out.edges.extend(&b.edges);
        out.terms.push(vec_add(&last, &b.terms[0]));
        out.terms.extend(b.terms[1..].iter().cloned());
        out
    }

    pub fn invert_form(&self, f: &PathForm) -> PathForm {
        let g = self.graph();
        PathForm {
            vertices: f.vertices.iter().rev().cloned().collect(),
            edges: f.edges.iter().rev().map(|&e| g.reverse(e)).collect(),
            terms: f.terms.iter().rev().map(|c| vec_neg(c)).collect(),
        }
    }

    /// Loop form of a word, built generator by generator.
    pub fn to_loop_form(&self, w: &Word) -> LoopForm {
        let base = self.base();
        let mut acc = PathForm::at_vertex(base, vec![BigInt::zero(); self.rank(base)]);
        for s in w.syllables() {
            let piece = match s {
                Syllable::Vertex { vertex, exponents } => {
                    let there = self.tree_form(base, *vertex);
                    let x = PathForm::at_vertex(*vertex, exponents.clone());
                    let back = self.tree_form(*vertex, base);
                    self.concat_forms(&self.concat_forms(&there, &x), &back)
                }
                Syllable::Stable(e) => {
                    // t_e is the edge letter of the reverse edge
                    let r = self.graph().reverse(*e);
                    let edge = self.graph().edge(r);
                    let there = self.tree_form(base, edge.from);
                    let step = self.form_along(edge.from, &[r]);
                    let back = self.tree_form(edge.to, base);
                    self.concat_forms(&self.concat_forms(&there, &step), &back)
                }
            };
            acc = self.concat_forms(&acc, &piece);
        }
        acc
    }

    /// Path form of a word read from vertex `from` to vertex `to`, i.e. the
    /// element `w` written as a form on the path `[ṽ_from, w·ṽ_to]`.
    pub fn path_form(&self, from: usize, w: &Word, to: usize) -> PathForm {
        let base = self.base();
        let lf = self.to_loop_form(w);
        let f = self.concat_forms(&self.tree_form(from, base), &lf);
        self.concat_forms(&f, &self.tree_form(base, to))
    }

    /// Applies every available elimination of a backtracking pair; the
    /// result satisfies the reduced-form condition.
    pub fn reduce_form(&self, f: &PathForm) -> ReducedForm {
        let g = self.graph();
        let mut vertices = vec![f.vertices[0]];
        let mut edges: Vec<usize> = Vec::new();
        let mut terms = vec![f.terms[0].clone()];
        for i in 0..f.edges.len() {
            let e = f.edges[i];
            let c = &f.terms[i + 1];
            if let Some(&last) = edges.last() {
                if g.reverse(last) == e {
                    let middle = terms.last().unwrap();
                    if let Some(d) = g.preimage_terminal(last, middle) {
                        // c_{i-1} s c_i s⁻¹ c_{i+1} = c_{i-1} + inj_initial(d) + c_{i+1}
                        terms.pop();
                        vertices.pop();
                        edges.pop();
                        let moved = g.edge(last).inj_initial.mul_vec(&d);
                        let prev = terms.last_mut().unwrap();
                        *prev = vec_add(&vec_add(prev, &moved), c);
                        continue;
                    }
                }
            }
            edges.push(e);
            vertices.push(f.vertices[i + 1]);
            terms.push(c.clone());
        }
        PathForm { vertices, edges, terms }
    }

    pub fn reduce_loop_form(&self, lf: &LoopForm) -> ReducedForm {
        self.reduce_form(lf)
    }

    pub fn reduced_form(&self, w: &Word) -> ReducedForm {
        self.reduce_form(&self.to_loop_form(w))
    }

    /// True when no elimination applies.
    pub fn is_reduced(&self, f: &PathForm) -> bool {
        let g = self.graph();
        (1..f.edges.len()).all(|i| {
            let e = f.edges[i - 1];
            f.edges[i] != g.reverse(e) || g.preimage_terminal(e, &f.terms[i]).is_none()
        })
    }

    pub fn is_trivial(&self, w: &Word) -> bool {
        self.reduced_form(w).is_identity_form()
    }

    /// Equality in the group.
    pub fn equal(&self, a: &Word, b: &Word) -> bool {
        self.is_trivial(&a.mul(&self.inverse(b)))
    }

    /// Coordinates `x` with `w = x` in the vertex group of `v`, if `w` lies
    /// in that vertex group.
    pub fn express_in_vertex(&self, w: &Word, v: usize) -> Option<Vec<BigInt>> {
        let r = self.reduce_form(&self.path_form(v, w, v));
        (r.length() == 0).then(|| r.terms.into_iter().next().unwrap())
    }

    /// The element a form represents, as a word.
    pub fn form_to_word(&self, f: &PathForm) -> Word {
        let g = self.graph();
        let mut syl = Vec::new();
        for i in 0..f.vertices.len() {
            if i > 0 {
                syl.push(Syllable::Stable(g.reverse(f.edges[i - 1])));
            }
            syl.push(Syllable::Vertex { vertex: f.vertices[i], exponents: f.terms[i].clone() });
        }
        self.normalize(&Word::from_syllables(syl))
    }

    /// Shorter equivalent word obtained from the reduced form.
    pub fn simplify(&self, w: &Word) -> Word {
        let candidate = self.form_to_word(&self.reduced_form(w));
        let plain = self.normalize(w);
        if candidate.len() < plain.len() {
            candidate
        } else {
            plain
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn relation_is_trivial_in_bs12() {
        let g = fixtures::bs12();
        let t = g.letter(0);
        let a = g.vertex_word(0, &[1]);
        let rel = Word::product([&t, &a, &g.inverse(&t), &g.pow(&a, -2)]);
        assert!(g.is_trivial(&rel));
        assert!(!g.is_trivial(&a));
    }

    #[test]
    fn loop_form_of_letter_uses_reverse_edge() {
        let g = fixtures::bs12();
        let lf = g.to_loop_form(&g.letter(0));
        assert_eq!(lf.edges, vec![1]);
        assert_eq!(lf.length(), 1);
    }

    #[test]
    fn amalgam_vertex_syllable_travels_through_tree() {
        let g = fixtures::amalg();
        let b = g.vertex_word(1, &[1]);
        let lf = g.to_loop_form(&b);
        assert_eq!(lf.length(), 2);
        let b2 = g.vertex_word(1, &[2]);
        assert_eq!(g.express_in_vertex(&b2, 0), Some(vec![BigInt::from(2)]));
        assert_eq!(g.express_in_vertex(&b, 0), None);
    }

    #[test]
    fn reduce_is_idempotent() {
        let g = fixtures::bs23();
        let t = g.letter(0);
        let a = g.vertex_word(0, &[1]);
        let w = Word::product([&t, &a, &t, &g.inverse(&t)]);
        let r = g.reduced_form(&w);
        assert!(g.is_reduced(&r));
        assert_eq!(g.reduce_form(&r), r);
    }
}
