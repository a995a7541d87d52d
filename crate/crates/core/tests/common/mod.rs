#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vgbs::{Group, Syllable, Word};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random word with `len` syllables; vertex exponents lie in `[-bound, bound]`.
pub fn random_word(g: &Group, rng: &mut impl Rng, len: usize, bound: i64) -> Word {
    let graph = g.graph();
    let nv = graph.vertices().len();
    let ne = graph.edges().len();
    let all_trivial = (0..nv).all(|v| graph.rank(v) == 0);
    let mut syl = Vec::with_capacity(len);
    for _ in 0..len {
        if ne > 0 && (all_trivial || rng.gen_bool(0.5)) {
            syl.push(Syllable::Stable(rng.gen_range(0..ne)));
        } else {
            let v = rng.gen_range(0..nv);
            let e: Vec<i64> = (0..graph.rank(v)).map(|_| rng.gen_range(-bound..=bound)).collect();
            syl.push(Syllable::Vertex { vertex: v, exponents: e.into_iter().map(BigInt::from).collect() });
        }
    }
    Word::from_syllables(syl)
}

/// A conjugate of a random nonzero vertex-group element.
pub fn random_elliptic(g: &Group, rng: &mut impl Rng, conj_len: usize) -> Word {
    let graph = g.graph();
    let candidates: Vec<usize> = (0..graph.vertices().len()).filter(|&v| graph.rank(v) > 0).collect();
    let v = candidates[rng.gen_range(0..candidates.len())];
    let mut e: Vec<i64> = (0..graph.rank(v)).map(|_| rng.gen_range(-3..=3)).collect();
    if e.iter().all(|&x| x == 0) {
        e[0] = 1;
    }
    let c = random_word(g, rng, conj_len, 2);
    g.conjugate_by(&c, &Word::vertex_i64(v, &e))
}

/// A random tuple generating a non-elliptic subgroup.
pub fn random_nonelliptic_tuple(g: &Group, rng: &mut impl Rng, max_size: usize, len: usize) -> Vec<Word> {
    loop {
        let n = rng.gen_range(1..=max_size);
        let t: Vec<Word> = (0..n)
            .map(|_| {
                let l = rng.gen_range(1..=len);
                g.simplify(&random_word(g, rng, l, 2))
            })
            .collect();
        if g.find_hyperbolic_in_tuple(&t).unwrap().element().is_some() {
            return t;
        }
    }
}

/// A random hyperbolic element.
pub fn random_hyperbolic(g: &Group, rng: &mut impl Rng, len: usize) -> Word {
    loop {
        let l = rng.gen_range(1..=len);
        let w = g.simplify(&random_word(g, rng, l, 2));
        if !g.is_elliptic(&w) {
            return w;
        }
    }
}

/// The affine map `x ↦ m·x + b` as the pair `(m, b)`.
pub type Affine = (BigRational, BigRational);

/// Image of a word of `⟨a, t | t a t⁻¹ = a²⟩` under `a ↦ x + 1`, `t ↦ 2x`,
/// a faithful representation. Words act by composition, rightmost first.
pub fn bs12_affine(g: &Group, w: &Word) -> Affine {
    let two = BigRational::from_integer(BigInt::from(2));
    let t_fwd = g.graph().edge_index("e1").unwrap();
    let mut acc: Affine = (BigRational::one(), BigRational::zero());
    for s in w.syllables() {
        let f: Affine = match s {
            Syllable::Vertex { exponents, .. } => (BigRational::one(), BigRational::from_integer(exponents[0].clone())),
            Syllable::Stable(e) if *e == t_fwd => (two.clone(), BigRational::zero()),
            Syllable::Stable(_) => (two.recip(), BigRational::zero()),
        };
        // acc ∘ f
        acc = (&acc.0 * &f.0, &acc.0 * &f.1 + &acc.1);
    }
    acc
}

/// Letters of an F2 word as signed generator indices `±1`, `±2`.
pub fn f2_letters(g: &Group, w: &Word) -> Vec<i32> {
    let graph = g.graph();
    let e1 = graph.edge_index("e1").unwrap();
    let e1r = graph.edge_index("e1r").unwrap();
    let e2 = graph.edge_index("e2").unwrap();
    w.syllables()
        .iter()
        .filter_map(|s| match s {
            Syllable::Stable(e) if *e == e1 => Some(1),
            Syllable::Stable(e) if *e == e1r => Some(-1),
            Syllable::Stable(e) if *e == e2 => Some(2),
            Syllable::Stable(_) => Some(-2),
            Syllable::Vertex { .. } => None,
        })
        .collect()
}

pub fn free_reduce(letters: &[i32]) -> Vec<i32> {
    let mut out: Vec<i32> = Vec::new();
    for &x in letters {
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

pub fn cyclic_reduce(letters: &[i32]) -> Vec<i32> {
    let mut w = free_reduce(letters);
    while w.len() >= 2 && w[0] == -w[w.len() - 1] {
        w.remove(0);
        w.pop();
    }
    w
}

/// Conjugacy in a free group: cyclic reductions agree up to rotation.
pub fn free_conjugate(a: &[i32], b: &[i32]) -> bool {
    let a = cyclic_reduce(a);
    let b = cyclic_reduce(b);
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    (0..a.len()).any(|r| a[r..].iter().chain(&a[..r]).eq(b.iter()))
}

/// All integer points of `[-r, r]^p`.
pub fn box_points(p: usize, r: i64) -> Vec<Vec<BigInt>> {
    let mut pts = vec![Vec::new()];
    for _ in 0..p {
        pts =
            pts.into_iter().flat_map(|v| (-r..=r).map(move |x| [v.clone(), vec![BigInt::from(x)]].concat())).collect();
    }
    pts
}
