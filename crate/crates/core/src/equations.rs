//! Equations in elliptic powers: the set of integer exponent vectors `k`
//! solving `a_0^{k_σ(0)} g_1 a_1^{k_σ(1)} … g_n a_n^{k_σ(n)} = 1` is a finite
//! union of affine sublattices, computed exactly.
//!
//! The equation is first written as one parametric loop form whose vertex
//! terms are affine in `k`. Solving recurses on the loop length: a
//! backtracking position can be eliminated exactly on the sublattice of `k`
//! where its middle term lies in the edge image, and the trivial element
//! only has the empty reduced form, so some elimination must apply.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::group::Group;
use crate::linalg::{to_int_vec, AffineLattice, AffineLatticeUnion, IntMatrix, Lattice, RatMatrix};
use crate::normal_form::PathForm;
use crate::tree::TreeVertex;
use crate::word::Word;

/// One factor of an equation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EquationFactor {
    /// A constant element.
    Constant(Word),
    /// `base^{k_unknown}`; the base must be elliptic.
    Power { base: Word, unknown: usize },
    /// `c · (M k) · c⁻¹` for the stabilizer of `vertex = c·ṽ`; `M` has one
    /// row per coordinate of the vertex group and one column per unknown.
    Linear { vertex: TreeVertex, coefficients: IntMatrix },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyllableEquation {
    pub unknowns: usize,
    pub factors: Vec<EquationFactor>,
}

impl SyllableEquation {
    pub fn new(unknowns: usize) -> Self {
        SyllableEquation { unknowns, factors: Vec::new() }
    }

    /// The standard shape `a_0^{k_σ(0)} g_1 a_1^{k_σ(1)} … g_n a_n^{k_σ(n)}`,
    /// with `sigma[i]` the (zero-based) unknown attached to `bases[i]`.
    pub fn standard(unknowns: usize, bases: &[Word], connectors: &[Word], sigma: &[usize]) -> Self {
        assert_eq!(bases.len(), connectors.len() + 1);
        assert_eq!(bases.len(), sigma.len());
        let mut eq = SyllableEquation::new(unknowns);
        for i in 0..bases.len() {
            if i > 0 {
                eq.constant(connectors[i - 1].clone());
            }
            eq.power(bases[i].clone(), sigma[i]);
        }
        eq
    }

    pub fn constant(&mut self, w: Word) -> &mut Self {
        self.factors.push(EquationFactor::Constant(w));
        self
    }

    pub fn power(&mut self, base: Word, unknown: usize) -> &mut Self {
        assert!(unknown < self.unknowns, "unknown index out of range");
        self.factors.push(EquationFactor::Power { base, unknown });
        self
    }

    pub fn linear(&mut self, vertex: TreeVertex, coefficients: IntMatrix) -> &mut Self {
        assert_eq!(coefficients.cols(), self.unknowns);
        self.factors.push(EquationFactor::Linear { vertex, coefficients });
        self
    }

    /// The word obtained by substituting `k`.
    pub fn evaluate(&self, group: &Group, k: &[BigInt]) -> Word {
        assert_eq!(k.len(), self.unknowns);
        let mut out = Word::identity();
        for f in &self.factors {
            let piece = match f {
                EquationFactor::Constant(w) => w.clone(),
                EquationFactor::Power { base, unknown } => {
                    let n: i64 = (&k[*unknown]).try_into().expect("exponent fits in i64");
                    group.pow(base, n)
                }
                EquationFactor::Linear { vertex, coefficients } => {
                    group.stabilizer_element(vertex, &coefficients.mul_vec(k))
                }
            };
            out = out.mul(&piece);
        }
        out
    }
}

/// A vertex term `w(k) = (b_0 + Σ k_j b_j) / r` with integer vectors `b_j`,
/// stored as the columns of `numerators`, and `r > 0` in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ScaledVertexTerm {
    pub vertex: usize,
    pub denominator: BigInt,
    pub numerators: IntMatrix,
}

impl ScaledVertexTerm {
    fn from_rat(vertex: usize, m: &RatMatrix) -> Self {
        let r = m.common_denominator();
        let mut entries = Vec::with_capacity(m.entries().len());
        for x in m.entries() {
            entries.push((x * BigRational::from_integer(r.clone())).to_integer());
        }
        let mut g = r.clone();
        for e in &entries {
            g = g.gcd(e);
        }
        let entries = entries.into_iter().map(|e| e / &g).collect();
        ScaledVertexTerm { vertex, denominator: r / &g, numerators: IntMatrix::new(m.rows(), m.cols(), entries) }
    }

    fn to_rat(&self) -> RatMatrix {
        let r = &self.denominator;
        let entries = self.numerators.entries().iter().map(|x| BigRational::new(x.clone(), r.clone())).collect();
        RatMatrix::new(self.numerators.rows(), self.numerators.cols(), entries)
    }

    /// Value at `k`.
    pub fn eval(&self, k: &[BigInt]) -> Vec<BigRational> {
        let mut full = vec![BigInt::one()];
        full.extend(k.iter().cloned());
        let num = self.numerators.mul_vec(&full);
        num.into_iter().map(|x| BigRational::new(x, self.denominator.clone())).collect()
    }

    /// Constant part and linear part after substituting `k = k0 + B y`.
    fn restrict(&self, domain: &AffineLattice) -> (Vec<BigInt>, IntMatrix) {
        let m = self.to_rat();
        let p = m.cols() - 1;
        let basis = domain.lattice().basis();
        let constant = to_int_vec(&self.eval(domain.base())).expect("terms are integral on their domain");
        let mut cols = Vec::with_capacity(basis.len());
        for b in basis {
            let mut v = vec![BigRational::zero(); m.rows()];
            for j in 0..p {
                if b[j].is_zero() {
                    continue;
                }
                let bj = BigRational::from_integer(b[j].clone());
                for (i, vi) in v.iter_mut().enumerate() {
                    *vi += m.get(i, j + 1) * &bj;
                }
            }
            cols.push(to_int_vec(&v).expect("terms are integral on their domain"));
        }
        (constant, IntMatrix::from_columns(m.rows(), &cols))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct ParamForm {
    vertices: Vec<usize>,
    edges: Vec<usize>,
    terms: Vec<ScaledVertexTerm>,
}

struct Solver<'a> {
    group: &'a Group,
    p: usize,
    memo: HashMap<(ParamForm, AffineLattice), AffineLatticeUnion>,
}

impl Group {
    /// All `k ∈ Z^p` for which the equation holds.
    pub fn solve_syllable_equation(&self, eq: &SyllableEquation) -> Result<AffineLatticeUnion> {
        let form = self.parametric_form(eq)?;
        let mut solver = Solver { group: self, p: eq.unknowns, memo: HashMap::new() };
        Ok(solver.solve(&form, &AffineLattice::full(eq.unknowns)))
    }

    /// The `y` (coordinates at the orbit representative of `v = c·ṽ`) with
    /// `(c y c⁻¹) · g · (c y c⁻¹)⁻¹ = h`.
    pub fn local_conjugators(&self, v: &TreeVertex, g: &Word, h: &Word) -> AffineLatticeUnion {
        let r = self.rank(v.vertex);
        let id = IntMatrix::identity(r);
        let neg = IntMatrix::new(r, r, id.entries().iter().map(|x| -x).collect());
        let mut eq = SyllableEquation::new(r);
        eq.linear(v.clone(), id).constant(g.clone()).linear(v.clone(), neg).constant(self.inverse(h));
        self.solve_syllable_equation(&eq).expect("linear factors need no ellipticity check")
    }

    fn parametric_form(&self, eq: &SyllableEquation) -> Result<ParamForm> {
        let p = eq.unknowns;
        let base = self.base();
        let mut acc = self.constant_param(&PathForm::at_vertex(base, vec![BigInt::zero(); self.rank(base)]), p);
        for f in &eq.factors {
            let piece = match f {
                EquationFactor::Constant(w) => self.constant_param(&self.to_loop_form(w), p),
                EquationFactor::Power { base: a, unknown } => {
                    let profile = self.translation_profile(a);
                    let fixed = profile.fixed_vertex().ok_or(Error::NotElliptic)?.clone();
                    let x = self.stabilizer_coordinates(a, &fixed).expect("fixed vertex is fixed");
                    let mut m = IntMatrix::zeros(x.len(), p);
                    for (i, xi) in x.into_iter().enumerate() {
                        m.set(i, *unknown, xi);
                    }
                    self.linear_param(&fixed, &m, p)
                }
                EquationFactor::Linear { vertex, coefficients } => self.linear_param(vertex, coefficients, p),
            };
            acc = concat_param(&acc, &piece);
        }
        Ok(acc)
    }

    fn constant_param(&self, f: &PathForm, p: usize) -> ParamForm {
        let terms = f
            .vertices
            .iter()
            .zip(&f.terms)
            .map(|(&v, c)| {
                let mut m = RatMatrix::zeros(c.len(), p + 1);
                for (i, ci) in c.iter().enumerate() {
                    m.set(i, 0, BigRational::from_integer(ci.clone()));
                }
                ScaledVertexTerm::from_rat(v, &m)
            })
            .collect();
        ParamForm { vertices: f.vertices.clone(), edges: f.edges.clone(), terms }
    }

    fn linear_param(&self, v: &TreeVertex, m: &IntMatrix, p: usize) -> ParamForm {
        let base = self.base();
        let lf = self.to_loop_form(&v.carrier);
        let there = self.concat_forms(&lf, &self.tree_form(base, v.vertex));
        let back = self.invert_form(&there);
        let mut mid = RatMatrix::zeros(m.rows(), p + 1);
        for i in 0..m.rows() {
            for j in 0..p {
                mid.set(i, j + 1, BigRational::from_integer(m.get(i, j).clone()));
            }
        }
        let middle = ParamForm {
            vertices: vec![v.vertex],
            edges: Vec::new(),
            terms: vec![ScaledVertexTerm::from_rat(v.vertex, &mid)],
        };
        concat_param(&concat_param(&self.constant_param(&there, p), &middle), &self.constant_param(&back, p))
    }
}

fn concat_param(a: &ParamForm, b: &ParamForm) -> ParamForm {
    let mut out = a.clone();
    let last = out.terms.pop().unwrap();
    out.vertices.pop();
    out.vertices.extend(&b.vertices);
    out.edges.extend(&b.edges);
    let merged = last.to_rat().add(&b.terms[0].to_rat());
    out.terms.push(ScaledVertexTerm::from_rat(last.vertex, &merged));
    out.terms.extend(b.terms[1..].iter().cloned());
    out
}

impl Solver<'_> {
    fn solve(&mut self, form: &ParamForm, domain: &AffineLattice) -> AffineLatticeUnion {
        let key = (form.clone(), domain.clone());
        if let Some(r) = self.memo.get(&key) {
            return r.clone();
        }
        let result = self.solve_uncached(form, domain);
        self.memo.insert(key, result.clone());
        result
    }

    fn solve_uncached(&mut self, form: &ParamForm, domain: &AffineLattice) -> AffineLatticeUnion {
        let graph = self.group.graph();
        let m = form.edges.len();
        if m == 0 {
            let (c, lin) = form.terms[0].restrict(domain);
            let neg: Vec<BigInt> = c.iter().map(|x| -x).collect();
            return match crate::linalg::solve_linear_system_integer(&lin, &neg) {
                Some(ys) => AffineLatticeUnion::single(self.lift(domain, &ys)),
                None => AffineLatticeUnion::empty(self.p),
            };
        }
        let mut branches = Vec::new();
        for i in 1..m {
            let e = form.edges[i - 1];
            if form.edges[i] != graph.reverse(e) {
                continue;
            }
            let Some(s) = self.membership_domain(form, i, domain) else { continue };
            if s.lattice() == domain.lattice() {
                // every k in the domain allows this elimination
                let pinched = self.pinch(form, i);
                return self.solve(&pinched, domain);
            }
            branches.push((i, s));
        }
        let mut out = AffineLatticeUnion::empty(self.p);
        for (i, s) in branches {
            let pinched = self.pinch(form, i);
            out = out.union(&self.solve(&pinched, &s));
        }
        out
    }

    /// `{k ∈ domain : w_i(k) ∈ inj_terminal(e_i)(Z^r)}`.
    fn membership_domain(&self, form: &ParamForm, i: usize, domain: &AffineLattice) -> Option<AffineLattice> {
        let e = form.edges[i - 1];
        let a = &self.group.graph().edge(e).inj_terminal;
        let (c, lin) = form.terms[i].restrict(domain);
        let r = a.cols();
        let q = lin.cols();
        // A d - lin y = c
        let mut cols = a.columns();
        cols.extend(lin.columns().into_iter().map(|v| v.into_iter().map(|x| -x).collect()));
        let sys = IntMatrix::from_columns(a.rows(), &cols);
        let sol = crate::linalg::solve_linear_system_integer(&sys, &c)?;
        let ybase = sol.base()[r..].to_vec();
        let ygens: Vec<Vec<BigInt>> = sol.lattice().basis().iter().map(|g| g[r..].to_vec()).collect();
        let ys = AffineLattice::new(ybase, Lattice::from_generators(q, &ygens));
        Some(self.lift(domain, &ys))
    }

    /// Maps a set of `y` to `k = k0 + B y`.
    fn lift(&self, domain: &AffineLattice, ys: &AffineLattice) -> AffineLattice {
        let b = domain.lattice().basis_matrix();
        ys.map_affine(&b, domain.base())
    }

    fn pinch(&self, form: &ParamForm, i: usize) -> ParamForm {
        let graph = self.group.graph();
        let e = form.edges[i - 1];
        let psi = graph.transport_matrix(e);
        let moved = psi.mul(&form.terms[i].to_rat());
        let merged = form.terms[i - 1].to_rat().add(&moved).add(&form.terms[i + 1].to_rat());
        let mut out = ParamForm {
            vertices: form.vertices[..i].to_vec(),
            edges: form.edges[..i - 1].to_vec(),
            terms: form.terms[..i - 1].to_vec(),
        };
        out.terms.push(ScaledVertexTerm::from_rat(form.vertices[i - 1], &merged));
        out.vertices.extend(&form.vertices[i + 2..]);
        out.edges.extend(&form.edges[i + 1..]);
        out.terms.extend(form.terms[i + 2..].iter().cloned());
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::linalg::int_vec;

    #[test]
    fn linear_equation_in_z2() {
        let g = fixtures::z2();
        let mut eq = SyllableEquation::new(1);
        eq.constant(g.vertex_word(0, &[2, 0])).power(g.vertex_word(0, &[-1, 0]), 0);
        let s = g.solve_syllable_equation(&eq).unwrap();
        assert_eq!(s.parts(), &[AffineLattice::point(int_vec(&[2]))]);
    }

    #[test]
    fn central_conjugate_in_bs12() {
        let g = fixtures::bs12();
        let t = g.letter(0);
        let a = g.vertex_word(0, &[1]);
        let tat = g.conjugate_by(&t, &a);
        let mut eq = SyllableEquation::new(1);
        eq.power(a.clone(), 0).constant(tat).power(g.inverse(&a), 0).constant(g.pow(&a, -2));
        let s = g.solve_syllable_equation(&eq).unwrap();
        assert_eq!(s, AffineLatticeUnion::full(1));
    }

    #[test]
    fn local_conjugators_in_bs12() {
        let g = fixtures::bs12();
        let t = g.letter(0);
        let a = g.vertex_word(0, &[1]);
        let v0 = g.base_tree_vertex();
        let c = g.local_conjugators(&v0, &t, &t);
        assert_eq!(c.parts(), &[AffineLattice::point(int_vec(&[0]))]);
        let c = g.local_conjugators(&v0, &t, &a.mul(&t));
        assert_eq!(c.parts(), &[AffineLattice::point(int_vec(&[-1]))]);
    }

    #[test]
    fn hyperbolic_base_is_rejected() {
        let g = fixtures::bs12();
        let mut eq = SyllableEquation::new(1);
        eq.power(g.letter(0), 0);
        assert_eq!(g.solve_syllable_equation(&eq), Err(Error::NotElliptic));
    }
}
