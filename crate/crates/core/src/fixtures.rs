//! Small hand-built traces used in examples and tests.

use num_traits::One;

use crate::geometry::{rat, ratio, CurveId, PLPath, PathKind, Point, Rational};
use crate::trace::{make_trace, CurveSet, Direction, PathSpec, Surface, Trace};

/// Rational point on the unit circle with half-angle tangent `t`.
fn circle_point(t: &Rational) -> Point {
    let t2 = t * t;
    let d = Rational::one() + &t2;
    Point::new((Rational::one() - &t2) / &d, rat(2) * t / d)
}

/// A counterclockwise 16-gon close to the unit circle, symmetric under both
/// axis reflections, whose vertical edges cross the x-axis at `(±1, 0)`.
pub fn circle16() -> PLPath {
    let ts = [ratio(1, 10), ratio(3, 10), ratio(8, 15), ratio(9, 11)];
    let first: Vec<Point> = ts.iter().map(circle_point).collect();
    let scale = Rational::one() / &first[0].x;
    let q1: Vec<Point> = first.iter().map(|p| p.scale(&scale)).collect();
    let mut pts = q1.clone();
    pts.extend(
        q1.iter()
            .rev()
            .map(|p| Point::new(-p.x.clone(), p.y.clone())),
    );
    pts.extend(q1.iter().map(|p| Point::new(-p.x.clone(), -p.y.clone())));
    pts.extend(
        q1.iter()
            .rev()
            .map(|p| Point::new(p.x.clone(), -p.y.clone())),
    );
    PLPath::new(pts, PathKind::Closed).expect("valid 16-gon")
}

/// Upper half disc: α the x-axis, β the counterclockwise circle, `γ_α`
/// the segment from `(−1, 0)` to `(1, 0)` and `γ_β` the upper arc.
pub fn half_disc() -> Trace {
    make_trace(
        Surface::Plane,
        PLPath::x_axis(),
        circle16(),
        &Point::from_ints(-1, 0),
        &Point::from_ints(1, 0),
        PathSpec::forward(),
        PathSpec::backward(),
        0,
    )
    .expect("half disc")
}

/// The half disc on the sphere model with degree offset `d`.
pub fn half_disc_on_sphere(d: i64) -> Trace {
    make_trace(
        Surface::SpherePlane,
        PLPath::x_axis(),
        circle16(),
        &Point::from_ints(-1, 0),
        &Point::from_ints(1, 0),
        PathSpec::forward(),
        PathSpec::backward(),
        d,
    )
    .expect("half disc")
}

/// Constant trace at `(1, 0)` for the half-disc curves.
pub fn constant_trace() -> Trace {
    make_trace(
        Surface::Plane,
        PLPath::x_axis(),
        circle16(),
        &Point::from_ints(1, 0),
        &Point::from_ints(1, 0),
        PathSpec::constant(),
        PathSpec::constant(),
        0,
    )
    .expect("constant trace")
}

/// The second circle of the circle pair: the 16-gon moved right and up.
pub fn shifted_circle() -> PLPath {
    let v = Point::new(ratio(6, 5), ratio(1, 7));
    PLPath::new(
        circle16().vertices().iter().map(|p| p + &v).collect(),
        PathKind::Closed,
    )
    .expect("valid 16-gon")
}

/// Two counterclockwise circles meeting at two points; `x = y` is the lower
/// crossing, `γ_α` winds `nu_alpha` times around α and `γ_β` winds
/// `nu_beta` times around β.
pub fn circle_pair(nu_alpha: i64, nu_beta: i64) -> Trace {
    let alpha = circle16();
    let beta = shifted_circle();
    let curves = CurveSet {
        alpha: alpha.clone(),
        beta: beta.clone(),
        deck: None,
    };
    let xs = curves
        .crossings_along(CurveId::Alpha)
        .expect("transverse circles");
    let x = xs
        .iter()
        .min_by(|a, b| a.location.y.cmp(&b.location.y))
        .expect("two crossings")
        .location
        .clone();
    make_trace(
        Surface::Plane,
        alpha,
        beta,
        &x,
        &x,
        PathSpec::new(Direction::Stay, nu_alpha),
        PathSpec::new(Direction::Stay, nu_beta),
        0,
    )
    .expect("circle pair")
}

/// A circle against the x-axis with `x = y = (1, 0)` and `γ_α` winding
/// `nu_alpha` times around the circle.
pub fn single_circle(nu_alpha: i64) -> Trace {
    make_trace(
        Surface::Plane,
        circle16(),
        PLPath::x_axis(),
        &Point::from_ints(1, 0),
        &Point::from_ints(1, 0),
        PathSpec::new(Direction::Stay, nu_alpha),
        PathSpec::constant(),
        0,
    )
    .expect("single circle")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circle_is_embedded_and_crosses_axis_at_unit_points() {
        let c = circle16();
        c.check_embedded().unwrap();
        let xs = crate::geometry::intersect_curves(&PLPath::x_axis(), &c).unwrap();
        let locs: Vec<Point> = xs.iter().map(|p| p.location.clone()).collect();
        assert_eq!(locs, vec![Point::from_ints(-1, 0), Point::from_ints(1, 0)]);
        assert_eq!(xs[0].sign, -xs[1].sign);
    }

    #[test]
    fn circle_pair_crosses_twice() {
        let t = circle_pair(1, 0);
        let xs = t.curves().crossings_along(CurveId::Alpha).unwrap();
        assert_eq!(xs.len(), 2);
        shifted_circle().check_embedded().unwrap();
    }
}
