//! Solving `a^{k_1} g a^{k_2} = 1`-style equations over vertex groups.

use num_bigint::BigInt;
use vgbs::{fixtures, SyllableEquation};

fn main() {
    let g = fixtures::bs12();
    let (a, t) = (g.vertex_word(0, &[1]), g.letter(0));

    // a^{k0} · t · a^{k1} · t⁻¹ = a⁶
    let mut eq = SyllableEquation::standard(2, &[a.clone(), a.clone()], &[t.clone()], &[0, 1]);
    eq.constant(g.inverse(&t)).constant(g.pow(&a, -6));
    let sol = g.solve_syllable_equation(&eq).expect("bases are elliptic");
    for part in sol.parts() {
        println!("solutions: {:?} + span {:?}", part.base(), part.lattice().basis());
    }
    for k in [[2, 2], [4, 1], [0, 3], [1, 1]] {
        let k: Vec<BigInt> = k.iter().map(|&x| BigInt::from(x)).collect();
        println!("  k = {:?}: in set {}, word trivial {}", k, sol.contains(&k), g.is_trivial(&eq.evaluate(&g, &k)));
    }

    // Which a^y conjugate t⁻¹ a t to itself, and a to a²?
    let v = g.base_tree_vertex();
    let u = g.conjugate_by(&g.inverse(&t), &a);
    for (x, y, label) in [(&u, &u, "u to u"), (&a, &g.pow(&a, 2), "a to a²")] {
        let lc = g.local_conjugators(&v, x, y);
        let parts: Vec<String> =
            lc.parts().iter().map(|p| format!("{:?} + span {:?}", p.base(), p.lattice().basis())).collect();
        println!("local conjugators {label}: {}", if parts.is_empty() { "none".into() } else { parts.join(" ∪ ") });
    }
}
