//! The modulus of a hyperbolic element and the trace of characteristic
//! spaces on its axis.
//!
//! Axis positions follow [`Axis`]: position `n` is `h^q · fd[r]` with
//! `n = qL + r`, so `h` moves every vertex of its axis by `+L`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::group::Group;
use crate::linalg::{
    is_zero_vec, minimal_polynomial, smallest_invariant_subspace, solve_linear_system_integer, to_rat_vec, IntMatrix,
    RatMatrix, RatSubspace,
};
use crate::tree::{Axis, ProfileKind, TreePath, TreeVertex};
use crate::word::Word;

/// Longest walk along an axis before giving up on a finite overlap.
const WALK_CAP: i64 = 100_000;

/// `t_h(x) = h x h⁻¹` on the vertex group at `basepoint`, extended to the
/// largest subspace `space` on which all its powers are defined.
#[derive(Clone, Debug)]
pub struct Modulus {
    pub basepoint: TreeVertex,
    /// `V ⊗ Q`, where `V` is the domain of `t_h`.
    pub domain: RatSubspace,
    /// `W ⊗ Q = t_h(V) ⊗ Q`.
    pub image: RatSubspace,
    /// `D_h`.
    pub space: RatSubspace,
    /// `φ_h` in the basis of `space`.
    pub phi: RatMatrix,
}

impl Modulus {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// `φ_h(x)` for `x` in `D_h`, in ambient coordinates.
    pub fn apply(&self, x: &[BigRational]) -> Option<Vec<BigRational>> {
        let c = self.space.coordinates(x)?;
        let y = self.phi.mul_vec(&c);
        Some(self.space.basis_matrix().transpose().mul_vec(&y))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Positive,
    Negative,
}

impl Direction {
    pub fn sign(self) -> i64 {
        match self {
            Direction::Positive => 1,
            Direction::Negative => -1,
        }
    }

    pub fn opposite(self) -> Direction {
        match self {
            Direction::Positive => Direction::Negative,
            Direction::Negative => Direction::Positive,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfLineFixation {
    pub fixes: bool,
    /// Endpoint of the fixed half-line; `None` if it is not fixed or the
    /// whole axis is.
    pub origin: Option<TreeVertex>,
    pub origin_position: Option<i64>,
}

/// How the characteristic space of `g` meets the axis of `h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IntersectionShape {
    /// `bridge` runs from the nearest axis vertex (at `nearest`) to the
    /// characteristic space of `g`.
    Empty {
        bridge: TreePath,
        nearest: i64,
    },
    /// Axis positions `start ≤ end`.
    Finite {
        segment: TreePath,
        start: i64,
        end: i64,
    },
    PositiveHalfLine {
        origin: TreeVertex,
        position: i64,
    },
    NegativeHalfLine {
        origin: TreeVertex,
        position: i64,
    },
    WholeAxis,
}

impl IntersectionShape {
    pub fn kind(&self) -> &'static str {
        match self {
            IntersectionShape::Empty { .. } => "empty",
            IntersectionShape::Finite { .. } => "finite",
            IntersectionShape::PositiveHalfLine { .. } => "positive_half_line",
            IntersectionShape::NegativeHalfLine { .. } => "negative_half_line",
            IntersectionShape::WholeAxis => "whole_axis",
        }
    }

    /// The reference position used for shift lengths.
    pub fn anchor(&self) -> Option<i64> {
        match self {
            IntersectionShape::Empty { nearest, .. } => Some(*nearest),
            IntersectionShape::Finite { start, .. } => Some(*start),
            IntersectionShape::PositiveHalfLine { position, .. } => Some(*position),
            IntersectionShape::NegativeHalfLine { position, .. } => Some(*position),
            IntersectionShape::WholeAxis => None,
        }
    }
}

impl Group {
    /// Modulus of `h` at the first vertex of its fundamental domain.
    pub fn compute_modulus(&self, h: &Word) -> Result<Modulus> {
        let axis = self.axis(h).ok_or(Error::NotHyperbolic)?;
        Ok(self.modulus_on_axis(&axis, &axis.fd.vertices[0]))
    }

    /// Modulus of `h` at an arbitrary vertex of its axis.
    pub fn compute_modulus_at(&self, h: &Word, w0: &TreeVertex) -> Result<Modulus> {
        let axis = self.axis(h).ok_or(Error::NotHyperbolic)?;
        if !axis.contains(self, w0) {
            return Err(Error::Disjoint);
        }
        Ok(self.modulus_on_axis(&axis, w0))
    }

    fn modulus_on_axis(&self, axis: &Axis, w0: &TreeVertex) -> Modulus {
        let graph = self.graph();
        let path = self.tree_path(w0, &self.act(&axis.h, w0));
        let form = &path.form;
        let r = self.rank(w0.vertex);
        // pairs (x, h⁻¹ x h), the second coordinate carried along the path
        let mut xs: Vec<Vec<BigInt>> = Vec::new();
        let mut ys: Vec<Vec<BigInt>> = Vec::new();
        for j in 0..r {
            let mut u = vec![BigInt::zero(); r];
            u[j] = BigInt::from(1);
            xs.push(u.clone());
            ys.push(u);
        }
        for i in 0..form.length() {
            if xs.is_empty() {
                break;
            }
            let edge = graph.edge(form.edges[i]);
            let a = &edge.inj_initial;
            let k = ys.len();
            let mut cols = ys.clone();
            cols.extend(a.columns().into_iter().map(|c| c.into_iter().map(|x| -x).collect::<Vec<_>>()));
            let sys = IntMatrix::from_columns(a.rows(), &cols);
            let sol = solve_linear_system_integer(&sys, &vec![BigInt::zero(); a.rows()]).expect("zero is a solution");
            let mut nx = Vec::new();
            let mut ny = Vec::new();
            for g in sol.lattice().basis() {
                let mut x = vec![BigInt::zero(); r];
                for (c, xj) in g[..k].iter().zip(&xs) {
                    for (xi, v) in x.iter_mut().zip(xj) {
                        *xi += c * v;
                    }
                }
                nx.push(x);
                ny.push(edge.inj_terminal.mul_vec(&g[k..]));
            }
            xs = nx;
            ys = ny;
        }
        let xr: Vec<Vec<BigRational>> = xs.iter().map(|x| to_rat_vec(x)).collect();
        let yr: Vec<Vec<BigRational>> = ys.iter().map(|y| to_rat_vec(y)).collect();
        let domain = RatSubspace::from_spanning(r, &yr);
        let image = RatSubspace::from_spanning(r, &xr);
        let ymat = RatMatrix::from_columns(r, &yr);
        let xmat = RatMatrix::from_columns(r, &xr);
        let t = |u: &[BigRational]| -> Vec<BigRational> {
            let c = ymat.solve(u).expect("vector lies in the domain of t_h");
            xmat.mul_vec(&c)
        };
        let mut space = domain.clone();
        loop {
            let moved: Vec<Vec<BigRational>> = space.basis().iter().map(|b| t(b)).collect();
            let next = RatSubspace::from_spanning(r, &moved).intersect(&space);
            if next.dim() == space.dim() {
                break;
            }
            space = next;
        }
        let d = space.dim();
        let mut phi = RatMatrix::zeros(d, d);
        for (j, b) in space.basis().iter().enumerate() {
            let c = space.coordinates(&t(b)).expect("D_h is invariant");
            for (i, ci) in c.into_iter().enumerate() {
                phi.set(i, j, ci);
            }
        }
        Modulus { basepoint: w0.clone(), domain, image, space, phi }
    }

    /// Whether the elliptic `g` fixes a half-line of the axis of `h` in the
    /// given direction, with the origin of that half-line.
    pub fn halfline_fixation(&self, g: &Word, h: &Word, direction: Direction) -> Result<HalfLineFixation> {
        let axis = self.axis(h).ok_or(Error::NotHyperbolic)?;
        self.halfline_on_axis(g, &axis, direction)
    }

    fn halfline_on_axis(&self, g: &Word, axis: &Axis, direction: Direction) -> Result<HalfLineFixation> {
        let profile = self.translation_profile(g);
        let fixed = profile.fixed_vertex().ok_or(Error::NotElliptic)?;
        let (w0, p0) = self.elliptic_meets_axis(g, fixed, axis).map_err(|_| Error::Disjoint)?;
        if !self.fixes_halfline_from(g, axis, &w0, p0, direction) {
            return Ok(HalfLineFixation { fixes: false, origin: None, origin_position: None });
        }
        if self.fixes_halfline_from(g, axis, &w0, p0, direction.opposite()) {
            return Ok(HalfLineFixation { fixes: true, origin: None, origin_position: None });
        }
        let o = self.walk_fixed(axis, p0, direction.opposite().sign(), |x| self.fixes(g, x))?;
        Ok(HalfLineFixation { fixes: true, origin: Some(axis.vertex_at(self, o)), origin_position: Some(o) })
    }

    /// A vertex of the axis fixed by `g` with its position, or the bridge
    /// from the nearest axis vertex to the fixed set of `g`.
    fn elliptic_meets_axis(
        &self,
        g: &Word,
        fixed: &TreeVertex,
        axis: &Axis,
    ) -> std::result::Result<(TreeVertex, i64), (TreePath, i64)> {
        let path = self.tree_path(fixed, &axis.fd.vertices[0]);
        let k = path.vertices.iter().position(|x| axis.contains(self, x)).expect("path ends on the axis");
        let pi = &path.vertices[k];
        let p0 = axis.position_of(self, pi).expect("vertex lies on the axis");
        if self.fixes(g, pi) {
            return Ok((pi.clone(), p0));
        }
        let last = path.vertices[..k].iter().rposition(|x| self.fixes(g, x)).unwrap_or(0);
        Err((self.tree_path(pi, &path.vertices[last]), p0))
    }

    fn fixes_halfline_from(&self, g: &Word, axis: &Axis, w0: &TreeVertex, p0: i64, direction: Direction) -> bool {
        let x = self.stabilizer_coordinates(g, w0).expect("g fixes w0");
        if is_zero_vec(&x) {
            return true;
        }
        let m = self.modulus_on_axis(axis, w0);
        let Some(xd) = m.space.coordinates(&to_rat_vec(&x)) else {
            return false;
        };
        let cyc = smallest_invariant_subspace(&m.phi, &xd);
        let op = match direction {
            Direction::Positive => cyc.restriction.inverse().expect("the modulus is invertible"),
            Direction::Negative => cyc.restriction.clone(),
        };
        if !minimal_polynomial(&op).has_integer_coefficients() {
            return false;
        }
        let reach = (cyc.subspace.dim() * axis.length) as i64;
        self.fixes(g, &axis.vertex_at(self, p0 + direction.sign() * reach))
    }

    /// Last position `p0 + k·step` (k ≥ 0) such that all positions up to it
    /// satisfy `inside`; `p0` itself is assumed inside.
    fn walk_fixed(&self, axis: &Axis, p0: i64, step: i64, inside: impl Fn(&TreeVertex) -> bool) -> Result<i64> {
        let mut p = p0;
        for _ in 0..WALK_CAP {
            if !inside(&axis.vertex_at(self, p + step)) {
                return Ok(p);
            }
            p += step;
        }
        Err(Error::Internal("axis walk exceeded its cap".into()))
    }

    /// Classifies `A_g ∩ A_h` for hyperbolic `h`.
    pub fn classify_intersection(&self, g: &Word, h: &Word) -> Result<IntersectionShape> {
        let axis = self.axis(h).ok_or(Error::NotHyperbolic)?;
        self.classify_on_axis(g, &axis)
    }

    pub(crate) fn classify_on_axis(&self, g: &Word, axis: &Axis) -> Result<IntersectionShape> {
        let profile = self.translation_profile(g);
        match &profile.kind {
            ProfileKind::Elliptic { fixed } => self.classify_elliptic(g, fixed, axis),
            ProfileKind::Hyperbolic { fundamental_domain } => {
                self.classify_hyperbolic(g, profile.length, fundamental_domain, axis)
            }
        }
    }

    fn classify_elliptic(&self, g: &Word, fixed: &TreeVertex, axis: &Axis) -> Result<IntersectionShape> {
        let (w0, p0) = match self.elliptic_meets_axis(g, fixed, axis) {
            Ok(x) => x,
            Err((bridge, nearest)) => return Ok(IntersectionShape::Empty { bridge, nearest }),
        };
        let pos = self.fixes_halfline_from(g, axis, &w0, p0, Direction::Positive);
        let neg = self.fixes_halfline_from(g, axis, &w0, p0, Direction::Negative);
        let inside = |x: &TreeVertex| self.fixes(g, x);
        Ok(match (pos, neg) {
            (true, true) => IntersectionShape::WholeAxis,
            (true, false) => {
                let o = self.walk_fixed(axis, p0, -1, inside)?;
                IntersectionShape::PositiveHalfLine { origin: axis.vertex_at(self, o), position: o }
            }
            (false, true) => {
                let o = self.walk_fixed(axis, p0, 1, inside)?;
                IntersectionShape::NegativeHalfLine { origin: axis.vertex_at(self, o), position: o }
            }
            (false, false) => {
                let start = self.walk_fixed(axis, p0, -1, inside)?;
                let end = self.walk_fixed(axis, p0, 1, inside)?;
                self.finite_shape(axis, start, end)
            }
        })
    }

    fn finite_shape(&self, axis: &Axis, start: i64, end: i64) -> IntersectionShape {
        let segment = self.tree_path(&axis.vertex_at(self, start), &axis.vertex_at(self, end));
        IntersectionShape::Finite { segment, start, end }
    }

    fn classify_hyperbolic(&self, g: &Word, lg: usize, gfd: &TreePath, axis: &Axis) -> Result<IntersectionShape> {
        let on_g = |x: &TreeVertex| self.distance(x, &self.act(g, x)) == lg;
        let q = &axis.fd.vertices[0];
        let path = self.tree_path(q, &gfd.vertices[0]);
        let k = path.vertices.iter().position(|x| on_g(x)).expect("path ends on the axis of g");
        let z = &path.vertices[k];
        if !axis.contains(self, z) {
            let last = path.vertices[..k].iter().rposition(|x| axis.contains(self, x)).unwrap_or(0);
            let near = &path.vertices[last];
            let nearest = axis.position_of(self, near).expect("vertex lies on the axis");
            return Ok(IntersectionShape::Empty { bridge: self.tree_path(near, z), nearest });
        }
        let p0 = axis.position_of(self, z).expect("vertex lies on the axis");
        let bound = (lg + axis.length + 1) as i64;
        let mut ends = [None, None];
        for (slot, step) in [(0usize, -1i64), (1, 1)] {
            let mut p = p0;
            let mut checked_ray = false;
            loop {
                if !on_g(&axis.vertex_at(self, p + step)) {
                    ends[slot] = Some(p);
                    break;
                }
                p += step;
                if (p - p0).abs() > bound && !checked_ray {
                    checked_ray = true;
                    if self.shares_end(g, lg, axis, p0, step)? {
                        break;
                    }
                }
                if (p - p0).abs() > WALK_CAP {
                    return Err(Error::Internal("axis walk exceeded its cap".into()));
                }
            }
        }
        Ok(match ends {
            [None, None] => IntersectionShape::WholeAxis,
            [Some(o), None] => IntersectionShape::PositiveHalfLine { origin: axis.vertex_at(self, o), position: o },
            [None, Some(o)] => IntersectionShape::NegativeHalfLine { origin: axis.vertex_at(self, o), position: o },
            [Some(start), Some(end)] => self.finite_shape(axis, start, end),
        })
    }

    /// For an overlap of the two axes that is longer than both translation
    /// lengths in direction `step` from `p0`: whether the axes share that end.
    /// Powers of `g` and `h` translating by the same amount along the overlap
    /// differ by an elliptic element, which fixes a half-line exactly when
    /// the end is shared.
    fn shares_end(&self, g: &Word, lg: usize, axis: &Axis, p0: i64, step: i64) -> Result<bool> {
        let z = axis.vertex_at(self, p0);
        let ahead = axis.vertex_at(self, p0 + step * lg as i64);
        let gsign: i64 = if self.same_vertex(&self.act(g, &z), &ahead) { 1 } else { -1 };
        let l = lg.lcm(&axis.length);
        let alpha = (l / lg) as i64;
        let beta = (l / axis.length) as i64;
        let k = self.normalize(&self.pow(g, gsign * alpha).mul(&self.pow(&axis.h, -step * beta)));
        let direction = if step > 0 { Direction::Positive } else { Direction::Negative };
        match self.halfline_on_axis(&k, axis, direction) {
            Ok(f) => Ok(f.fixes),
            Err(Error::NotElliptic) | Err(Error::Disjoint) => Ok(false),
            Err(e) => Err(e),
        }
    }

    /// Signed displacement along the axis of `h` from the intersection
    /// `A_{g1} ∩ A_h` to `A_{g2} ∩ A_h`; `None` when the shapes differ.
    pub fn shift_length(&self, g1: &Word, g2: &Word, h: &Word) -> Result<Option<i64>> {
        let axis = self.axis(h).ok_or(Error::NotHyperbolic)?;
        let s1 = self.classify_on_axis(g1, &axis)?;
        let s2 = self.classify_on_axis(g2, &axis)?;
        if s1 == IntersectionShape::WholeAxis || s2 == IntersectionShape::WholeAxis {
            return Err(Error::ShiftUndefined("the intersection is the whole axis".into()));
        }
        if s1.kind() != s2.kind() {
            return Ok(None);
        }
        Ok(Some(s2.anchor().unwrap() - s1.anchor().unwrap()))
    }
}
