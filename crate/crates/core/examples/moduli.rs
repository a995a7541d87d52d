//! Moduli of hyperbolic elements and how elliptic fixed sets meet their axes.

use vgbs::{fixtures, Direction, Word};

fn main() {
    for (name, g) in [("bs12", fixtures::bs12()), ("bs23", fixtures::bs23()), ("klein", fixtures::klein())] {
        let (a, t) = (g.vertex_word(0, &[1]), g.letter(0));
        let m = g.compute_modulus(&t).expect("t is hyperbolic");
        println!(
            "{name}: dim D_t = {}, phi_t = {:?}",
            m.dim(),
            m.phi.entries().iter().map(|x| x.to_string()).collect::<Vec<_>>()
        );
        let shape = g.classify_intersection(&a, &t).unwrap();
        println!("  Fix(a) ∩ axis(t): {} (anchor {:?})", shape.kind(), shape.anchor());
        for d in [Direction::Positive, Direction::Negative] {
            let f = g.halfline_fixation(&a, &t, d).unwrap();
            println!("  a fixes a {d:?} half-line: {} from {:?}", f.fixes, f.origin_position);
        }
        let h = Word::product([&a, &t, &g.inverse(&a)]);
        println!("  shape of a·t·a⁻¹ against t: {}", g.classify_intersection(&h, &t).unwrap().kind());
    }

    let g = fixtures::bs12();
    let (a, t) = (g.vertex_word(0, &[1]), g.letter(0));
    let shift = g.shift_length(&a, &g.conjugate_by(&t, &a), &t).unwrap();
    println!("bs12: shift from Fix(a) to Fix(t a t⁻¹) along axis(t): {shift:?}");
}
