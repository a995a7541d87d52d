//! Centralizers and simultaneous conjugacy of tuples.

use vgbs::{fixtures, ConjugacyAnswer, Word};

fn main() {
    let g = fixtures::klein();
    let (a, t) = (g.vertex_word(0, &[1]), g.letter(0));
    for h in [t.clone(), g.pow(&t, 2)] {
        let c = g.centralizer_hyperbolic(&h).unwrap();
        let gens: Vec<String> = c.e_elements(&g).iter().map(|e| g.render(e)).collect();
        println!("klein: C({}) = <{}> ⋊ <{}>", g.render(&h), gens.join(", "), g.render(&c.h_prime));
    }

    let cases = [
        ("bs12", fixtures::bs12(), vec![t.clone(), a.clone()], vec![t.clone(), g.pow(&a, 2)]),
        ("bs12", fixtures::bs12(), vec![t.clone(), a.clone()], vec![t.clone(), g.pow(&a, 3)]),
        ("klein", fixtures::klein(), vec![t.clone(), a.clone()], vec![t.clone(), g.inverse(&a)]),
        ("klein", fixtures::klein(), vec![t.clone(), a.clone()], vec![t.clone(), g.pow(&a, 3)]),
        ("bs23", fixtures::bs23(), vec![g.pow(&a, 2), g.pow(&a, 4)], vec![g.pow(&a, 3), g.pow(&a, 6)]),
    ];
    for (name, g, x, y) in cases {
        let show = |v: &[Word]| v.iter().map(|w| g.render(&g.simplify(w))).collect::<Vec<_>>().join(", ");
        let ans = g.multi_conjugate(&x, &y).unwrap();
        let detail = match &ans {
            ConjugacyAnswer::Conjugate { witness } => format!("witness {}", g.render(witness)),
            ConjugacyAnswer::NotConjugate { reason } => reason.to_string(),
            ConjugacyAnswer::ReducedToPolycyclic(r) => {
                format!("h' = {}, window ±{}", g.render(&r.h_prime), r.searched_window)
            }
            other => other.kind().to_string(),
        };
        println!("{name}: ({}) vs ({}): {} ({detail})", show(&x), show(&y), ans.kind());
    }
}
