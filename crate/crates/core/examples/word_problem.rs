//! The word problem in a few small groups: reduced forms and triviality.

use vgbs::{fixtures, Word};

fn main() {
    let g = fixtures::bs12();
    let (a, t) = (g.vertex_word(0, &[1]), g.letter(0));

    // t a t⁻¹ a⁻² = 1
    let rel = Word::product([&t, &a, &g.inverse(&t), &g.pow(&a, -2)]);
    println!("bs12: {:<28} trivial = {}", g.render(&rel), g.is_trivial(&rel));

    // conjugates of a commute with each other, but not with t
    let u = g.conjugate_by(&g.inverse(&t), &a);
    for c in [g.commutator(&u, &a), g.commutator(&t, &a)] {
        println!("bs12: {:<28} trivial = {}", g.render(&c), g.is_trivial(&c));
        println!("      reduced length {}, simplified `{}`", g.reduced_form(&c).length(), g.render(&g.simplify(&c)));
    }

    let h = fixtures::amalg();
    let (a, b) = (h.vertex_word(0, &[1]), h.vertex_word(1, &[1]));
    let w = Word::product([&h.pow(&a, 2), &h.pow(&b, -2)]);
    println!("amalg: {:<27} trivial = {}", h.render(&w), h.is_trivial(&w));
    let w = h.commutator(&a, &b);
    println!("amalg: {:<27} trivial = {}", h.render(&w), h.is_trivial(&w));
}
