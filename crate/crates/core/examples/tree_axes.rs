//! Translation lengths, fixed vertices and axes in the Bass–Serre tree.

use vgbs::{fixtures, Group, ProfileKind, Word};

fn show(g: &Group, w: &Word) -> String {
    let s = g.render(&g.simplify(w));
    if s.is_empty() {
        "1".into()
    } else {
        s
    }
}

fn main() {
    let g = fixtures::bs23();
    let (a, t) = (g.vertex_word(0, &[1]), g.letter(0));
    for w in [a.clone(), t.clone(), Word::product([&t, &a, &t]), g.conjugate_by(&t, &g.pow(&a, 2))] {
        let p = g.translation_profile(&w);
        match &p.kind {
            ProfileKind::Elliptic { fixed } => {
                println!("{:<14} elliptic, fixes {}·v{}", show(&g, &w), show(&g, &fixed.carrier), fixed.vertex)
            }
            ProfileKind::Hyperbolic { fundamental_domain } => println!(
                "{:<14} hyperbolic, length {}, domain through {} vertices",
                show(&g, &w),
                p.length,
                fundamental_domain.vertices.len()
            ),
        }
    }

    let h = Word::product([&t, &a, &t]);
    let axis = g.axis(&h).expect("hyperbolic");
    for n in -2..=2 {
        let x = axis.vertex_at(&g, n);
        println!("axis position {n:>2}: {:<24} fixed by a: {}", show(&g, &x.carrier), g.fixes(&a, &x));
    }
}
