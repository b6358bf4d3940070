//! Planar primitives: points, rigid motions and the handful of predicates the
//! rest of the crate is built on.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::ops::{Add, Mul, Neg, Sub};

pub const TAU: f64 = 2.0 * PI;

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct PlanarPoint {
    pub x: f64,
    pub y: f64,
}

impl PlanarPoint {
    pub const ORIGIN: PlanarPoint = PlanarPoint { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn from_angle(angle: f64) -> Self {
        Self::new(angle.cos(), angle.sin())
    }

    pub fn dot(self, o: Self) -> f64 {
        self.x * o.x + self.y * o.y
    }

    pub fn cross(self, o: Self) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dist(self, o: Self) -> f64 {
        (self - o).norm()
    }

    pub fn angle(self) -> f64 {
        self.y.atan2(self.x)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn lerp(self, o: Self, t: f64) -> Self {
        self + (o - self) * t
    }

    /// Counter-clockwise rotation about the origin.
    pub fn rotate(self, angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Self::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }
}

impl Add for PlanarPoint {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for PlanarPoint {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for PlanarPoint {
    type Output = Self;
    fn mul(self, k: f64) -> Self {
        Self::new(self.x * k, self.y * k)
    }
}

impl Neg for PlanarPoint {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.x, -self.y)
    }
}

/// Orientation-preserving isometry of the plane: `p ↦ R(rotation)·p + translation`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RigidMotion {
    pub rotation: f64,
    pub translation: PlanarPoint,
}

impl Default for RigidMotion {
    fn default() -> Self {
        Self::IDENTITY
    }
}

impl RigidMotion {
    pub const IDENTITY: RigidMotion = RigidMotion {
        rotation: 0.0,
        translation: PlanarPoint::ORIGIN,
    };

    pub fn new(rotation: f64, translation: PlanarPoint) -> Self {
        Self {
            rotation: normalize_signed(rotation),
            translation,
        }
    }

    pub fn translation(t: PlanarPoint) -> Self {
        Self::new(0.0, t)
    }

    /// Rotation by `angle` about `center`.
    pub fn rotation_about(center: PlanarPoint, angle: f64) -> Self {
        Self::new(angle, center - center.rotate(angle))
    }

    /// The unique motion sending segment `a0→a1` onto `b0→b1`. Lengths are
    /// assumed equal; only the direction of the target is used.
    pub fn mapping_segment(a0: PlanarPoint, a1: PlanarPoint, b0: PlanarPoint, b1: PlanarPoint) -> Self {
        let rot = (b1 - b0).angle() - (a1 - a0).angle();
        Self::new(rot, b0 - a0.rotate(rot))
    }

    pub fn apply(&self, p: PlanarPoint) -> PlanarPoint {
        p.rotate(self.rotation) + self.translation
    }

    pub fn apply_vector(&self, v: PlanarPoint) -> PlanarPoint {
        v.rotate(self.rotation)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &RigidMotion) -> RigidMotion {
        RigidMotion::new(
            self.rotation + other.rotation,
            self.apply(other.translation),
        )
    }

    pub fn inverse(&self) -> RigidMotion {
        RigidMotion::new(-self.rotation, (-self.translation).rotate(-self.rotation))
    }

    pub fn approx_eq(&self, o: &RigidMotion, tol: f64) -> bool {
        angle_diff(self.rotation, o.rotation).abs() <= tol
            && self.translation.dist(o.translation) <= tol
    }
}

/// Normalize an angle into `[0, 2π)`.
pub fn normalize_angle(a: f64) -> f64 {
    let r = a.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Normalize an angle into `(-π, π]`.
pub fn normalize_signed(a: f64) -> f64 {
    let r = normalize_angle(a);
    if r > PI {
        r - TAU
    } else {
        r
    }
}

/// Signed difference `a - b` folded into `(-π, π]`.
pub fn angle_diff(a: f64, b: f64) -> f64 {
    normalize_signed(a - b)
}

/// Twice the signed area of `abc`; positive when counter-clockwise.
pub fn orient(a: PlanarPoint, b: PlanarPoint, c: PlanarPoint) -> f64 {
    (b - a).cross(c - a)
}

/// Interior angle at `b` between rays `b→a` and `b→c`, in `[0, π]`.
pub fn corner_angle(a: PlanarPoint, b: PlanarPoint, c: PlanarPoint) -> f64 {
    let u = a - b;
    let v = c - b;
    u.cross(v).abs().atan2(u.dot(v))
}

/// Counter-clockwise angle swept from direction `from` to direction `to`, in `[0, 2π)`.
pub fn ccw_sweep(from: PlanarPoint, to: PlanarPoint) -> f64 {
    normalize_angle(to.angle() - from.angle())
}

pub fn point_segment_distance(p: PlanarPoint, a: PlanarPoint, b: PlanarPoint) -> f64 {
    let ab = b - a;
    let len2 = ab.dot(ab);
    if len2 == 0.0 {
        return p.dist(a);
    }
    let t = ((p - a).dot(ab) / len2).clamp(0.0, 1.0);
    p.dist(a + ab * t)
}

/// Parameter `t` of the foot of `p` on the line `a + t(b-a)`, unclamped.
pub fn project_param(p: PlanarPoint, a: PlanarPoint, b: PlanarPoint) -> f64 {
    let ab = b - a;
    let len2 = ab.dot(ab);
    if len2 == 0.0 {
        0.0
    } else {
        (p - a).dot(ab) / len2
    }
}

/// Intersection of lines `p + s·(q-p)` and `a + t·(b-a)`; returns `(s, t)`.
pub fn line_intersection(
    p: PlanarPoint,
    q: PlanarPoint,
    a: PlanarPoint,
    b: PlanarPoint,
) -> Option<(f64, f64)> {
    let r = q - p;
    let e = b - a;
    let den = r.cross(e);
    if den.abs() < 1e-300 {
        return None;
    }
    let w = a - p;
    Some((w.cross(e) / den, w.cross(r) / den))
}

/// Proper crossing of two segments: interiors meet at a single point away
/// from all four endpoints (by more than `tol` in parameter-length).
pub fn segments_cross_properly(
    p0: PlanarPoint,
    p1: PlanarPoint,
    q0: PlanarPoint,
    q1: PlanarPoint,
    tol: f64,
) -> Option<PlanarPoint> {
    let (s, t) = line_intersection(p0, p1, q0, q1)?;
    let lp = p0.dist(p1);
    let lq = q0.dist(q1);
    if lp == 0.0 || lq == 0.0 {
        return None;
    }
    let sp = tol / lp;
    let sq = tol / lq;
    if s > sp && s < 1.0 - sp && t > sq && t < 1.0 - sq {
        Some(p0.lerp(p1, s))
    } else {
        None
    }
}

pub fn segment_segment_distance(
    p0: PlanarPoint,
    p1: PlanarPoint,
    q0: PlanarPoint,
    q1: PlanarPoint,
) -> f64 {
    if segments_cross_properly(p0, p1, q0, q1, 0.0).is_some() {
        return 0.0;
    }
    point_segment_distance(p0, q0, q1)
        .min(point_segment_distance(p1, q0, q1))
        .min(point_segment_distance(q0, p0, p1))
        .min(point_segment_distance(q1, p0, p1))
}

pub fn point_in_triangle(p: PlanarPoint, tri: &[PlanarPoint; 3], tol: f64) -> bool {
    (0..3).all(|i| {
        let a = tri[i];
        let b = tri[(i + 1) % 3];
        let len = a.dist(b);
        orient(a, b, p) >= -tol * len
    })
}

/// Distance from `p` to a closed counter-clockwise triangle (0 inside).
pub fn point_triangle_distance(p: PlanarPoint, tri: &[PlanarPoint; 3]) -> f64 {
    if point_in_triangle(p, tri, 0.0) {
        return 0.0;
    }
    (0..3)
        .map(|i| point_segment_distance(p, tri[i], tri[(i + 1) % 3]))
        .fold(f64::INFINITY, f64::min)
}

pub fn polygon_signed_area(pts: &[PlanarPoint]) -> f64 {
    let n = pts.len();
    (0..n).map(|i| pts[i].cross(pts[(i + 1) % n])).sum::<f64>() * 0.5
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    #[test]
    fn motion_maps_segment() {
        let a0 = PlanarPoint::new(1.0, 0.0);
        let a1 = PlanarPoint::new(1.0, 1.0);
        let b0 = PlanarPoint::new(0.0, 1.0);
        let b1 = PlanarPoint::new(0.0, 0.0);
        let m = RigidMotion::mapping_segment(a0, a1, b0, b1);
        assert!(m.apply(a0).dist(b0) < 1e-12);
        assert!(m.apply(a1).dist(b1) < 1e-12);
    }

    #[test]
    fn corner_and_sweep() {
        let o = PlanarPoint::ORIGIN;
        assert_abs_diff_eq!(
            corner_angle(PlanarPoint::new(1.0, 0.0), o, PlanarPoint::new(0.0, 2.0)),
            PI / 2.0,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            ccw_sweep(PlanarPoint::new(0.0, 1.0), PlanarPoint::new(1.0, 0.0)),
            1.5 * PI,
            epsilon = 1e-15
        );
    }

    #[test]
    fn crossing_excludes_endpoints() {
        let a = PlanarPoint::new(0.0, 0.0);
        let b = PlanarPoint::new(2.0, 0.0);
        assert!(segments_cross_properly(a, b, PlanarPoint::new(1.0, -1.0), PlanarPoint::new(1.0, 1.0), 1e-9).is_some());
        assert!(segments_cross_properly(a, b, PlanarPoint::new(2.0, -1.0), PlanarPoint::new(2.0, 1.0), 1e-9).is_none());
    }

    fn motion() -> impl Strategy<Value = RigidMotion> {
        (-10.0f64..10.0, -5.0f64..5.0, -5.0f64..5.0)
            .prop_map(|(r, x, y)| RigidMotion::new(r, PlanarPoint::new(x, y)))
    }

    proptest! {
        #[test]
        fn compose_inverse_is_identity(m in motion(), x in -3.0f64..3.0, y in -3.0f64..3.0) {
            let p = PlanarPoint::new(x, y);
            let q = m.compose(&m.inverse()).apply(p);
            prop_assert!(p.dist(q) < 1e-9);
        }

        #[test]
        fn composition_is_associative(a in motion(), b in motion(), c in motion()) {
            let l = a.compose(&b).compose(&c);
            let r = a.compose(&b.compose(&c));
            prop_assert!(l.approx_eq(&r, 1e-9));
        }
    }
}
