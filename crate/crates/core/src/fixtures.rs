//! Small standard graphs of groups used by tests, examples and the CLI docs.
//!
//! Every fixture has base vertex `v0` with generator `a` (or `a_j`); loop
//! edges are named `e1`, `e2` with reverses `e1r`, `e2r`.

use crate::graph::{GraphSpec, VGBSGraph};
use crate::group::Group;
use crate::linalg::IntMatrix;

fn scalar(x: i64) -> IntMatrix {
    IntMatrix::from_i64_rows(&[&[x]], 1)
}

fn build(spec: GraphSpec) -> Group {
    Group::new(VGBSGraph::new(spec).expect("fixture graphs are valid"))
}

/// Baumslag–Solitar group with `t a^p t⁻¹ = a^q`.
pub fn baumslag_solitar_spec(p: i64, q: i64) -> GraphSpec {
    let mut s = GraphSpec::default();
    s.vertex("v0", 1).edge_pair("e1", "e1r", "v0", "v0", scalar(p), scalar(q));
    s
}

/// `⟨a, t | t a t⁻¹ = a²⟩`.
pub fn bs12() -> Group {
    build(baumslag_solitar_spec(1, 2))
}

/// `⟨a, t | t a² t⁻¹ = a³⟩`.
pub fn bs23() -> Group {
    build(baumslag_solitar_spec(2, 3))
}

/// Klein bottle group `⟨a, t | t a t⁻¹ = a⁻¹⟩`.
pub fn klein() -> Group {
    build(baumslag_solitar_spec(1, -1))
}

pub fn amalg_spec() -> GraphSpec {
    let mut s = GraphSpec::default();
    s.vertex("v0", 1).vertex("v1", 1).edge_pair("e1", "e1r", "v0", "v1", scalar(2), scalar(2));
    s
}

/// `⟨a, b | a² = b²⟩` as an amalgam over `Z`; `a` lives at `v0`, `b` at `v1`.
pub fn amalg() -> Group {
    build(amalg_spec())
}

pub fn z2_spec() -> GraphSpec {
    let mut s = GraphSpec::default();
    s.vertex("v0", 2);
    s
}

/// `Z²` as a single vertex without edges.
pub fn z2() -> Group {
    build(z2_spec())
}

pub fn f2_spec() -> GraphSpec {
    let mut s = GraphSpec::default();
    let empty = IntMatrix::zeros(0, 0);
    s.vertex("v0", 0).edge_pair("e1", "e1r", "v0", "v0", empty.clone(), empty.clone()).edge_pair(
        "e2",
        "e2r",
        "v0",
        "v0",
        empty.clone(),
        empty,
    );
    s
}

/// Free group on `t_e1`, `t_e2`: a trivial vertex group with two loops.
pub fn f2() -> Group {
    build(f2_spec())
}

pub fn z4f2_spec() -> GraphSpec {
    let mut s = GraphSpec::default();
    let id = IntMatrix::identity(4);
    let m1 = IntMatrix::from_i64_rows(&[&[2, 1, 0, 0], &[1, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]], 4);
    let m2 = IntMatrix::from_i64_rows(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 1], &[0, 0, 1, 2]], 4);
    s.vertex("v0", 4).edge_pair("e1", "e1r", "v0", "v0", id.clone(), m1).edge_pair("e2", "e2r", "v0", "v0", id, m2);
    s
}

/// `Z⁴ ⋊ F₂` with two hyperbolic automorphisms of `Z⁴`.
pub fn z4f2() -> Group {
    build(z4f2_spec())
}

/// All fixtures with their names.
pub fn all() -> Vec<(&'static str, Group)> {
    vec![
        ("bs12", bs12()),
        ("bs23", bs23()),
        ("klein", klein()),
        ("amalg", amalg()),
        ("z2", z2()),
        ("f2", f2()),
        ("z4f2", z4f2()),
    ]
}
