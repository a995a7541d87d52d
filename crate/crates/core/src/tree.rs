//! The Bass–Serre tree: vertices `g·ṽ`, geodesics, hulls, translation
//! lengths and axes.
//!
//! Lifts of the graph's edges follow the edge letters of
//! [`crate::normal_form`]: an oriented edge `e: u → w` lifts to the edge
//! joining `ũ` and `s_e·w̃`. Tree edges therefore lift with trivial carriers.

use num_bigint::BigInt;

use crate::group::Group;
use crate::normal_form::PathForm;
use crate::word::Word;

/// The vertex `carrier · ṽ` where `ṽ` is the lift of graph vertex `vertex`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TreeVertex {
    pub carrier: Word,
    pub vertex: usize,
}

impl TreeVertex {
    pub fn new(carrier: Word, vertex: usize) -> Self {
        TreeVertex { carrier, vertex }
    }
}

/// The edge from `carrier·ṽ_{from(edge)}` to `carrier·s_edge·ṽ_{to(edge)}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TreeEdge {
    pub carrier: Word,
    pub edge: usize,
}

/// A reduced edge path in the tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreePath {
    pub vertices: Vec<TreeVertex>,
    pub edges: Vec<TreeEdge>,
    /// Reduced form of `start.carrier⁻¹ · end.carrier` along the path.
    pub form: PathForm,
}

impl TreePath {
    pub fn length(&self) -> usize {
        self.edges.len()
    }

    pub fn start(&self) -> &TreeVertex {
        &self.vertices[0]
    }

    pub fn end(&self) -> &TreeVertex {
        self.vertices.last().unwrap()
    }

    /// The single-vertex path.
    pub fn trivial(x: TreeVertex, rank: usize) -> Self {
        let form = PathForm::at_vertex(x.vertex, vec![BigInt::from(0); rank]);
        TreePath { vertices: vec![x], edges: Vec::new(), form }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProfileKind {
    Elliptic {
        fixed: TreeVertex,
    },
    /// Fundamental domain from a vertex `x` of the axis to `w·x`.
    Hyperbolic {
        fundamental_domain: TreePath,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranslationProfile {
    pub length: usize,
    pub kind: ProfileKind,
}

impl TranslationProfile {
    pub fn is_elliptic(&self) -> bool {
        matches!(self.kind, ProfileKind::Elliptic { .. })
    }

    pub fn fixed_vertex(&self) -> Option<&TreeVertex> {
        match &self.kind {
            ProfileKind::Elliptic { fixed } => Some(fixed),
            ProfileKind::Hyperbolic { .. } => None,
        }
    }

    pub fn fundamental_domain(&self) -> Option<&TreePath> {
        match &self.kind {
            ProfileKind::Elliptic { .. } => None,
            ProfileKind::Hyperbolic { fundamental_domain } => Some(fundamental_domain),
        }
    }
}

/// A finite subtree given by vertices and index pairs of adjacent vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hull {
    pub vertices: Vec<TreeVertex>,
    pub edges: Vec<(usize, usize)>,
}

impl Hull {
    /// Graphviz text, for debugging.
    pub fn to_dot(&self, group: &Group) -> String {
        let mut out = String::from("graph hull {\n");
        for (i, v) in self.vertices.iter().enumerate() {
            let label = format!("{} · {}", group.render(&v.carrier), group.graph().vertex(v.vertex).id);
            out.push_str(&format!("  n{i} [label=\"{}\"];\n", label.trim_start_matches(' ')));
        }
        for (a, b) in &self.edges {
            out.push_str(&format!("  n{a} -- n{b};\n"));
        }
        out.push('}');
        out
    }
}

impl Group {
    pub fn base_tree_vertex(&self) -> TreeVertex {
        TreeVertex::new(Word::identity(), self.base())
    }

    /// `g · x`.
    pub fn act(&self, g: &Word, x: &TreeVertex) -> TreeVertex {
        TreeVertex::new(self.normalize(&g.mul(&x.carrier)), x.vertex)
    }

    /// The geodesic from `x` to `y`.
    pub fn tree_path(&self, x: &TreeVertex, y: &TreeVertex) -> TreePath {
        let rel = self.inverse(&x.carrier).mul(&y.carrier);
        let form = self.reduce_form(&self.path_form(x.vertex, &rel, y.vertex));
        let p = form.length();
        let mut vertices = Vec::with_capacity(p + 1);
        let mut edges = Vec::with_capacity(p);
        vertices.push(x.clone());
        for i in 1..=p {
            let before = self.form_to_word(&form.prefix(i - 1));
            let term = Word::vertex(form.vertices[i - 1], form.terms[i - 1].clone());
            let edge_carrier = self.normalize(&Word::product([&x.carrier, &before, &term]));
            edges.push(TreeEdge { carrier: edge_carrier, edge: form.edges[i - 1] });
            if i == p {
                vertices.push(y.clone());
            } else {
                let after = self.form_to_word(&form.prefix(i));
                vertices.push(TreeVertex::new(self.normalize(&x.carrier.mul(&after)), form.vertices[i]));
            }
        }
        TreePath { vertices, edges, form }
    }

    pub fn distance(&self, x: &TreeVertex, y: &TreeVertex) -> usize {
        let rel = self.inverse(&x.carrier).mul(&y.carrier);
        self.reduce_form(&self.path_form(x.vertex, &rel, y.vertex)).length()
    }

    pub fn same_vertex(&self, x: &TreeVertex, y: &TreeVertex) -> bool {
        x.vertex == y.vertex && {
            let rel = self.inverse(&x.carrier).mul(&y.carrier);
            self.express_in_vertex(&rel, x.vertex).is_some()
        }
    }

    /// True when `g` fixes `x`.
    pub fn fixes(&self, g: &Word, x: &TreeVertex) -> bool {
        let rel = Word::product([&self.inverse(&x.carrier), g, &x.carrier]);
        self.express_in_vertex(&rel, x.vertex).is_some()
    }

    /// Coordinates of `g` in the stabilizer of `x = c·ṽ`, i.e. the `y` with
    /// `g = c·y·c⁻¹`, if `g` fixes `x`.
    pub fn stabilizer_coordinates(&self, g: &Word, x: &TreeVertex) -> Option<Vec<BigInt>> {
        let rel = Word::product([&self.inverse(&x.carrier), g, &x.carrier]);
        self.express_in_vertex(&rel, x.vertex)
    }

    /// The element `c·y·c⁻¹` of the stabilizer of `x = c·ṽ`.
    pub fn stabilizer_element(&self, x: &TreeVertex, y: &[BigInt]) -> Word {
        let inner = Word::vertex(x.vertex, y.to_vec());
        self.normalize(&self.conjugate_by(&x.carrier, &inner))
    }

    /// Smallest subtree containing all the given vertices.
    pub fn convex_hull(&self, vs: &[TreeVertex]) -> Hull {
        let mut hull = Hull { vertices: Vec::new(), edges: Vec::new() };
        let index_of = |hull: &mut Hull, x: &TreeVertex| -> usize {
            if let Some(i) = hull.vertices.iter().position(|y| self.same_vertex(x, y)) {
                return i;
            }
            hull.vertices.push(x.clone());
            hull.vertices.len() - 1
        };
        if let Some(first) = vs.first() {
            index_of(&mut hull, first);
        }
        for i in 0..vs.len() {
            for j in i + 1..vs.len() {
                let path = self.tree_path(&vs[i], &vs[j]);
                let mut prev = index_of(&mut hull, &path.vertices[0]);
                for v in &path.vertices[1..] {
                    let cur = index_of(&mut hull, v);
                    let key = (prev.min(cur), prev.max(cur));
                    if !hull.edges.contains(&key) {
                        hull.edges.push(key);
                    }
                    prev = cur;
                }
            }
        }
        hull
    }

    /// Translation length together with a fixed vertex or a fundamental domain.
    pub fn translation_profile(&self, w: &Word) -> TranslationProfile {
        let w = self.normalize(w);
        let start = self.base_tree_vertex();
        let path = self.tree_path(&start, &self.act(&w, &start));
        let mut best: Option<(usize, &TreeVertex)> = None;
        for u in &path.vertices {
            let d = self.distance(u, &self.act(&w, u));
            if d == 0 {
                return TranslationProfile { length: 0, kind: ProfileKind::Elliptic { fixed: u.clone() } };
            }
            if best.is_none_or(|(b, _)| d < b) {
                best = Some((d, u));
            }
        }
        let (length, u) = best.expect("a path has at least one vertex");
        let fundamental_domain = self.tree_path(u, &self.act(&w, u));
        TranslationProfile { length, kind: ProfileKind::Hyperbolic { fundamental_domain } }
    }

    pub fn translation_length(&self, w: &Word) -> usize {
        self.translation_profile(w).length
    }

    pub fn is_elliptic(&self, w: &Word) -> bool {
        self.translation_profile(w).is_elliptic()
    }

    /// True when `x` lies on the fixed set (elliptic) or axis (hyperbolic) of `w`.
    pub fn on_characteristic_space(&self, w: &Word, x: &TreeVertex) -> bool {
        let l = self.translation_length(w);
        self.distance(x, &self.act(w, x)) == l
    }

    /// Axis of a hyperbolic element, or `None` if it is elliptic.
    pub fn axis(&self, h: &Word) -> Option<Axis> {
        let h = self.normalize(h);
        let profile = self.translation_profile(&h);
        let fd = profile.fundamental_domain()?.clone();
        Some(Axis { h, length: profile.length, fd })
    }
}

/// The axis of a hyperbolic element `h`, parametrized by integers: position
/// `n = qL + r` (with `0 ≤ r < L`) is `h^q · fd[r]`.
#[derive(Clone, Debug)]
pub struct Axis {
    pub h: Word,
    pub length: usize,
    pub fd: TreePath,
}

impl Axis {
    pub fn vertex_at(&self, group: &Group, n: i64) -> TreeVertex {
        let l = self.length as i64;
        let q = n.div_euclid(l);
        let r = n.rem_euclid(l) as usize;
        let base = &self.fd.vertices[r];
        let hq = group.pow(&self.h, q);
        group.act(&hq, base)
    }

    /// Position of an axis vertex, or `None` if `x` is not on the axis.
    pub fn position_of(&self, group: &Group, x: &TreeVertex) -> Option<i64> {
        let d = group.distance(x, &self.fd.vertices[0]) as i64;
        if group.same_vertex(&self.vertex_at(group, d), x) {
            return Some(d);
        }
        if d > 0 && group.same_vertex(&self.vertex_at(group, -d), x) {
            return Some(-d);
        }
        None
    }

    pub fn contains(&self, group: &Group, x: &TreeVertex) -> bool {
        group.distance(x, &group.act(&self.h, x)) == self.length
    }
}

#[cfg(test)]
mod tests {
    use crate::fixtures;

    #[test]
    fn bs12_neighbours_of_base() {
        let g = fixtures::bs12();
        let t = g.letter(0);
        let a = g.vertex_word(0, &[1]);
        let v0 = g.base_tree_vertex();
        let tv = g.act(&t, &v0);
        let atv = g.act(&a.mul(&t), &v0);
        assert_eq!(g.distance(&v0, &tv), 1);
        assert_eq!(g.distance(&v0, &atv), 1);
        assert!(!g.same_vertex(&tv, &atv));
        assert_eq!(g.distance(&tv, &atv), 2);
    }

    #[test]
    fn hull_of_three_is_a_path_through_base() {
        let g = fixtures::bs12();
        let t = g.letter(0);
        let a = g.vertex_word(0, &[1]);
        let v0 = g.base_tree_vertex();
        let hull = g.convex_hull(&[v0.clone(), g.act(&t, &v0), g.act(&a.mul(&t), &v0)]);
        assert_eq!(hull.vertices.len(), 3);
        assert_eq!(hull.edges.len(), 2);
    }

    #[test]
    fn profiles_of_standard_elements() {
        let g = fixtures::bs12();
        let t = g.letter(0);
        assert_eq!(g.translation_length(&t), 1);
        assert!(g.is_elliptic(&g.vertex_word(0, &[5])));
        let am = fixtures::amalg();
        let ab = am.vertex_word(0, &[1]).mul(&am.vertex_word(1, &[1]));
        assert_eq!(am.translation_length(&ab), 2);
    }

    #[test]
    fn characteristic_space_membership() {
        let g = fixtures::bs12();
        let t = g.letter(0);
        let a = g.vertex_word(0, &[1]);
        let v0 = g.base_tree_vertex();
        assert!(g.on_characteristic_space(&a, &v0));
        assert!(!g.on_characteristic_space(&a, &g.act(&t, &v0)));
        assert!(g.on_characteristic_space(&a, &g.act(&g.inverse(&t), &v0)));
    }
}
