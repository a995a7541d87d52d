//! Conjugacy of elliptic elements when every vertex and edge group is `Z`.
//!
//! Conjugating `a_v^m` by the stable letter of an edge `e: v → w` with
//! inclusions `σ`, `τ` is possible exactly when `σ | m`, and gives
//! `a_w^{mτ/σ}`. Writing `m` through its sign and its prime exponents turns
//! the search for a conjugating sequence into reachability in a vector
//! addition system, explored here by bounded breadth-first closure.

use std::collections::{HashMap, HashSet, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::conjugacy::{ConjugacyAnswer, NotConjugateReason};
use crate::error::{Error, Result};
use crate::graph::VGBSGraph;
use crate::group::Group;
use crate::word::Word;

/// `conjugator · g · conjugator⁻¹ = a_vertex^exponent`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EllipticExponentForm {
    pub vertex: usize,
    pub exponent: BigInt,
    pub conjugator: Word,
}

/// `sign · Π p_i^{exponents_i}` at `vertex`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VASState {
    pub exponents: Vec<u64>,
    pub negative: bool,
    pub vertex: usize,
}

impl VASState {
    pub fn decode(&self, primes: &[BigInt]) -> BigInt {
        let mut v = BigInt::one();
        for (p, &e) in primes.iter().zip(&self.exponents) {
            v *= num_traits::pow(p.clone(), e as usize);
        }
        if self.negative {
            -v
        } else {
            v
        }
    }
}

/// Conjugation by the stable letter of `edge`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VASTransition {
    pub edge: usize,
    pub from_vertex: usize,
    pub to_vertex: usize,
    pub guard: Vec<u64>,
    pub delta: Vec<i64>,
    pub sign_flip: bool,
}

impl VASTransition {
    pub fn fire(&self, s: &VASState) -> Option<VASState> {
        if s.vertex != self.from_vertex || s.exponents.iter().zip(&self.guard).any(|(e, g)| e < g) {
            return None;
        }
        let exponents = s.exponents.iter().zip(&self.delta).map(|(&e, &d)| (e as i64 + d) as u64).collect();
        Some(VASState { exponents, negative: s.negative ^ self.sign_flip, vertex: self.to_vertex })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReachabilityInstance {
    pub primes: Vec<BigInt>,
    pub source: VASState,
    pub target: VASState,
    pub transitions: Vec<VASTransition>,
}

impl ReachabilityInstance {
    pub fn encode(&self, value: &BigInt, vertex: usize) -> Option<VASState> {
        encode(&self.primes, value, vertex)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReachabilityResult {
    /// Indices into the instance's transitions, in firing order.
    Reachable {
        transitions: Vec<usize>,
    },
    DefinitivelyUnreachable {
        closure_size: usize,
    },
    Inconclusive {
        explored: usize,
        bound: usize,
    },
}

fn prime_factors(n: &BigInt) -> Vec<BigInt> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        if n.is_multiple_of(&p) {
            out.push(p.clone());
            while n.is_multiple_of(&p) {
                n /= &p;
            }
        }
        p += 1;
    }
    if n > BigInt::one() {
        out.push(n);
    }
    out
}

fn encode(primes: &[BigInt], value: &BigInt, vertex: usize) -> Option<VASState> {
    if value.is_zero() {
        return None;
    }
    let mut rest = value.abs();
    let mut exponents = Vec::with_capacity(primes.len());
    for p in primes {
        let mut e = 0;
        while rest.is_multiple_of(p) {
            rest /= p;
            e += 1;
        }
        exponents.push(e);
    }
    rest.is_one().then(|| VASState { exponents, negative: value.is_negative(), vertex })
}

fn scalar(m: &crate::linalg::IntMatrix) -> BigInt {
    m.get(0, 0).clone()
}

/// The instance "does `a_v^m` reach `a_{v'}^n`".
pub fn build_reachability_instance(
    graph: &VGBSGraph,
    m: &BigInt,
    v: usize,
    n: &BigInt,
    v_target: usize,
) -> Result<ReachabilityInstance> {
    if !graph.is_rank_one() {
        return Err(Error::NotRankOne);
    }
    if m.is_zero() || n.is_zero() {
        return Err(Error::Dimension("exponents must be nonzero".into()));
    }
    let mut primes: Vec<BigInt> = Vec::new();
    let mut add = |x: &BigInt| {
        for p in prime_factors(x) {
            if !primes.contains(&p) {
                primes.push(p);
            }
        }
    };
    for e in graph.edges() {
        add(&scalar(&e.inj_initial));
        add(&scalar(&e.inj_terminal));
    }
    add(m);
    add(n);
    primes.sort();
    let transitions = graph
        .edges()
        .iter()
        .enumerate()
        .map(|(i, e)| {
            let sigma = scalar(&e.inj_initial);
            let tau = scalar(&e.inj_terminal);
            let gs = encode(&primes, &sigma, 0).expect("all primes present").exponents;
            let gt = encode(&primes, &tau, 0).expect("all primes present").exponents;
            let delta = gs.iter().zip(&gt).map(|(&s, &t)| t as i64 - s as i64).collect();
            VASTransition {
                edge: i,
                from_vertex: e.from,
                to_vertex: e.to,
                guard: gs,
                delta,
                sign_flip: sigma.is_negative() != tau.is_negative(),
            }
        })
        .collect();
    let source = encode(&primes, m, v).expect("all primes present");
    let target = encode(&primes, n, v_target).expect("all primes present");
    Ok(ReachabilityInstance { primes, source, target, transitions })
}

/// Breadth-first closure from the source, stopping after `budget` states.
pub fn bounded_reachability(instance: &ReachabilityInstance, budget: usize) -> ReachabilityResult {
    let mut parent: HashMap<VASState, Option<(VASState, usize)>> = HashMap::new();
    let mut queue = VecDeque::new();
    parent.insert(instance.source.clone(), None);
    queue.push_back(instance.source.clone());
    while let Some(s) = queue.pop_front() {
        if s == instance.target {
            let mut seq = Vec::new();
            let mut cur = s;
            while let Some(Some((prev, t))) = parent.get(&cur) {
                seq.push(*t);
                cur = prev.clone();
            }
            seq.reverse();
            return ReachabilityResult::Reachable { transitions: seq };
        }
        for (i, t) in instance.transitions.iter().enumerate() {
            let Some(next) = t.fire(&s) else { continue };
            if parent.contains_key(&next) {
                continue;
            }
            if parent.len() >= budget {
                return ReachabilityResult::Inconclusive { explored: parent.len(), bound: budget };
            }
            parent.insert(next.clone(), Some((s.clone(), i)));
            queue.push_back(next);
        }
    }
    ReachabilityResult::DefinitivelyUnreachable { closure_size: parent.len() }
}

/// Every state reachable from `start`, sorted, or `None` past the budget.
pub fn reachability_closure(transitions: &[VASTransition], start: &VASState, budget: usize) -> Option<Vec<VASState>> {
    let mut seen = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start.clone()]);
    while let Some(s) = queue.pop_front() {
        for t in transitions {
            let Some(next) = t.fire(&s) else { continue };
            if seen.contains(&next) {
                continue;
            }
            if seen.len() >= budget {
                return None;
            }
            seen.insert(next.clone());
            queue.push_back(next);
        }
    }
    let mut out: Vec<VASState> = seen.into_iter().collect();
    out.sort();
    Some(out)
}

impl Group {
    pub fn elliptic_exponent_form(&self, g: &Word) -> Result<EllipticExponentForm> {
        if !self.graph().is_rank_one() {
            return Err(Error::NotRankOne);
        }
        let profile = self.translation_profile(g);
        let fixed = profile.fixed_vertex().ok_or(Error::NotElliptic)?;
        let y = self.stabilizer_coordinates(g, fixed).expect("fixed vertex is fixed");
        let conjugator = self.simplify(&self.inverse(&fixed.carrier));
        Ok(EllipticExponentForm { vertex: fixed.vertex, exponent: y[0].clone(), conjugator })
    }

    /// The product `t_{e_s} ⋯ t_{e_1}` of the stable letters of a sequence.
    pub fn replay_sequence(&self, instance: &ReachabilityInstance, seq: &[usize]) -> Word {
        let mut w = Word::identity();
        for &i in seq {
            w = self.letter(instance.transitions[i].edge).mul(&w);
        }
        w
    }

    /// Simultaneous conjugacy of two tuples of elliptic elements in a graph
    /// of infinite cyclic groups.
    pub fn gbs_multi_conjugate(&self, a: &[Word], b: &[Word], budget: usize) -> Result<ConjugacyAnswer> {
        if a.len() != b.len() {
            return Err(Error::LengthMismatch(a.len(), b.len()));
        }
        if !self.graph().is_rank_one() {
            return Ok(ConjugacyAnswer::EllipticUnsupported {
                explanation: "some vertex or edge group is not infinite cyclic".into(),
            });
        }
        let xa = self.common_fixed_vertex(a)?;
        let xb = match self.common_fixed_vertex(b) {
            Ok(x) => x,
            Err(Error::NotElliptic) | Err(Error::Internal(_)) => {
                return Ok(ConjugacyAnswer::NotConjugate { reason: NotConjugateReason::EllipticVersusHyperbolic })
            }
            Err(e) => return Err(e),
        };
        let coords = |t: &[Word], x| -> Vec<BigInt> {
            t.iter().map(|w| self.stabilizer_coordinates(w, x).expect("common fixed vertex")[0].clone()).collect()
        };
        let (m, n) = (coords(a, &xa), coords(b, &xb));
        let (gm, pm) = primitive(&m);
        let (gn, pn) = primitive(&n);
        if pm != pn {
            return Ok(ConjugacyAnswer::NotConjugate { reason: NotConjugateReason::ExponentMismatch });
        }
        if gm.is_zero() {
            return Ok(ConjugacyAnswer::Conjugate { witness: Word::identity() });
        }
        let instance = build_reachability_instance(self.graph(), &gm, xa.vertex, &gn, xb.vertex)?;
        match bounded_reachability(&instance, budget) {
            ReachabilityResult::Reachable { transitions } => {
                let seq = self.replay_sequence(&instance, &transitions);
                let witness = self.simplify(&Word::product([&xb.carrier, &seq, &self.inverse(&xa.carrier)]));
                self.verify_witness(&witness, a, b)?;
                Ok(ConjugacyAnswer::Conjugate { witness })
            }
            ReachabilityResult::DefinitivelyUnreachable { closure_size } => {
                Ok(ConjugacyAnswer::NotConjugate { reason: NotConjugateReason::Unreachable { closure_size } })
            }
            ReachabilityResult::Inconclusive { explored, bound } => {
                Ok(ConjugacyAnswer::Inconclusive { explored, bound })
            }
        }
    }
}

/// `(g, m / g)` with `g` the gcd carrying the sign of the first nonzero entry.
fn primitive(m: &[BigInt]) -> (BigInt, Vec<BigInt>) {
    let mut g = BigInt::zero();
    for x in m {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return (g, m.to_vec());
    }
    if m.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        g = -g;
    }
    let p = m.iter().map(|x| x / &g).collect();
    (g, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn bs23_instance_and_closure() {
        let g = fixtures::bs23();
        let inst = build_reachability_instance(g.graph(), &big(2), 0, &big(3), 0).unwrap();
        assert_eq!(inst.primes, vec![big(2), big(3)]);
        assert_eq!(inst.source.exponents, vec![1, 0]);
        assert_eq!(inst.target.exponents, vec![0, 1]);
        assert_eq!(inst.transitions.len(), 2);
        let closure = reachability_closure(&inst.transitions, &inst.source, 100).unwrap();
        let mut values: Vec<BigInt> = closure.iter().map(|s| s.decode(&inst.primes)).collect();
        values.sort();
        assert_eq!(values, vec![big(2), big(3)]);
        let r = bounded_reachability(&inst, 100);
        assert!(matches!(r, ReachabilityResult::Reachable { ref transitions } if transitions.len() == 1));
        let inst = build_reachability_instance(g.graph(), &big(2), 0, &big(4), 0).unwrap();
        assert_eq!(bounded_reachability(&inst, 100), ReachabilityResult::DefinitivelyUnreachable { closure_size: 2 });
    }

    #[test]
    fn klein_sign_flip() {
        let g = fixtures::klein();
        let a = g.vertex_word(0, &[1]);
        let r = g.gbs_multi_conjugate(&[a.clone()], &[g.inverse(&a)], 100).unwrap();
        assert_eq!(g.render(r.witness().unwrap()), "te1");
    }

    #[test]
    fn exponent_forms() {
        let g = fixtures::bs12();
        let (a, t) = (g.vertex_word(0, &[1]), g.letter(0));
        let f = g.elliptic_exponent_form(&g.conjugate_by(&t, &a)).unwrap();
        assert_eq!((f.vertex, f.exponent.clone()), (0, big(2)));
        let w = Word::product([&a, &t, &a, &g.inverse(&t), &g.inverse(&a)]);
        let f = g.elliptic_exponent_form(&w).unwrap();
        let lhs = g.conjugate_by(&f.conjugator, &w);
        assert!(g.equal(&lhs, &g.pow(&a, f.exponent.clone().try_into().unwrap())));
    }

    #[test]
    fn tuples_in_bs23() {
        let g = fixtures::bs23();
        let a = g.vertex_word(0, &[1]);
        let p = |k| g.pow(&a, k);
        let r = g.gbs_multi_conjugate(&[p(2), p(4)], &[p(3), p(6)], 1000).unwrap();
        assert!(r.is_conjugate());
        let r = g.gbs_multi_conjugate(&[p(2), p(4)], &[p(3), p(9)], 1000).unwrap();
        assert_eq!(r.kind(), "not_conjugate");
    }
}
