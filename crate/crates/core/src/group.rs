//! The fundamental group of a validated graph, with a fixed adapted
//! presentation. Most algorithms in the crate are methods on [`Group`].

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::Result;
use crate::graph::{build_presentation, AdaptedPresentation, VGBSGraph};
use crate::linalg::{fmt_vec, is_zero_vec, vec_add, vec_neg};
use crate::word::{Syllable, Word};

#[derive(Clone, Debug)]
pub struct Group {
    graph: VGBSGraph,
    pres: AdaptedPresentation,
}

impl Group {
    /// Uses the first vertex as base vertex.
    pub fn new(graph: VGBSGraph) -> Self {
        Group::with_base(graph, 0).expect("vertex 0 exists in a validated graph")
    }

    pub fn with_base(graph: VGBSGraph, base: usize) -> Result<Self> {
        let pres = build_presentation(&graph, base)?;
        Ok(Group { graph, pres })
    }

    pub fn graph(&self) -> &VGBSGraph {
        &self.graph
    }

    pub fn presentation(&self) -> &AdaptedPresentation {
        &self.pres
    }

    pub fn base(&self) -> usize {
        self.pres.base_vertex
    }

    pub fn rank(&self, v: usize) -> usize {
        self.graph.rank(v)
    }

    /// Vertex-group element given by small coordinates.
    pub fn vertex_word(&self, v: usize, exps: &[i64]) -> Word {
        Word::vertex_i64(v, exps)
    }

    /// The `j`-th standard generator of the vertex group at `v`.
    pub fn generator(&self, v: usize, j: usize) -> Word {
        let mut e = vec![BigInt::zero(); self.rank(v)];
        e[j] = BigInt::from(1);
        Word::vertex(v, e)
    }

    pub fn letter(&self, e: usize) -> Word {
        Word::stable(e)
    }

    pub fn inverse(&self, w: &Word) -> Word {
        let syllables = w
            .syllables()
            .iter()
            .rev()
            .map(|s| match s {
                Syllable::Vertex { vertex, exponents } => {
                    Syllable::Vertex { vertex: *vertex, exponents: vec_neg(exponents) }
                }
                Syllable::Stable(e) => Syllable::Stable(self.graph.reverse(*e)),
            })
            .collect();
        Word::from_syllables(syllables)
    }

    pub fn mul(&self, a: &Word, b: &Word) -> Word {
        a.mul(b)
    }

    pub fn pow(&self, w: &Word, n: i64) -> Word {
        let base = if n < 0 { self.inverse(w) } else { w.clone() };
        let mut out = Word::identity();
        for _ in 0..n.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// `g · w · g⁻¹`.
    pub fn conjugate_by(&self, g: &Word, w: &Word) -> Word {
        Word::product([g, w, &self.inverse(g)])
    }

    /// `[a, b] = a b a⁻¹ b⁻¹`.
    pub fn commutator(&self, a: &Word, b: &Word) -> Word {
        Word::product([a, b, &self.inverse(a), &self.inverse(b)])
    }

    /// Freely simplifies a word without changing the element: merges
    /// adjacent syllables at the same vertex, drops zero syllables and
    /// tree-edge letters, and cancels `t_e t_ē`.
    pub fn normalize(&self, w: &Word) -> Word {
        let mut out: Vec<Syllable> = Vec::new();
        for s in w.syllables() {
            match s {
                Syllable::Stable(e) if self.pres.is_tree_edge(*e) => {}
                Syllable::Stable(e) => {
                    if out.last() == Some(&Syllable::Stable(self.graph.reverse(*e))) {
                        out.pop();
                    } else {
                        out.push(s.clone());
                    }
                }
                Syllable::Vertex { vertex, exponents } => {
                    if let Some(Syllable::Vertex { vertex: lv, exponents: le }) = out.last_mut() {
                        if lv == vertex {
                            *le = vec_add(le, exponents);
                            if is_zero_vec(le) {
                                out.pop();
                            }
                            continue;
                        }
                    }
                    if !is_zero_vec(exponents) {
                        out.push(s.clone());
                    }
                }
            }
        }
        Word::from_syllables(out)
    }

    /// Text form accepted by [`crate::cli::parse_word`]; the identity renders
    /// as the empty string. Of each edge pair, the one listed first is
    /// written `t<id>` and the other `T<id>`.
    pub fn render(&self, w: &Word) -> String {
        let parts: Vec<String> = w
            .syllables()
            .iter()
            .map(|s| match s {
                Syllable::Vertex { vertex, exponents } => {
                    format!("x{}{}", self.graph.vertex(*vertex).id, fmt_vec(exponents))
                }
                Syllable::Stable(e) => {
                    let r = self.graph.reverse(*e);
                    if r < *e {
                        format!("T{}", self.graph.edge(r).id)
                    } else {
                        format!("t{}", self.graph.edge(*e).id)
                    }
                }
            })
            .collect();
        parts.join(" ")
    }
}
