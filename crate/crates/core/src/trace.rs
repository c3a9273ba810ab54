//! Traces `Λ = (x, y, w)` of strips between two curves, given by their
//! endpoints and the boundary paths `γ_α`, `γ_β`.

use num_traits::{Signed, Zero};

use crate::chains::{degree_two_chain, OneChain};
use crate::cover::DeckGroup;
use crate::error::{Error, Result};
use crate::geometry::{
    floor_int, intersect_pieces, intersect_pieces_lists, min_feature_distance, rat, ratio, rmod,
    sign, BBox, CurveId, IntersectionPoint, PLPath, PathKind, Piece, Point, Rational,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Surface {
    Plane,
    /// The plane standing in for the sphere; traces carry a degree offset.
    SpherePlane,
    Annulus {
        period: Point,
    },
    Torus {
        e1: Point,
        e2: Point,
    },
}

impl Surface {
    pub fn deck(&self) -> Result<Option<DeckGroup>> {
        match self {
            Surface::Plane | Surface::SpherePlane => Ok(None),
            Surface::Annulus { period } => DeckGroup::annulus(period.clone()).map(Some),
            Surface::Torus { e1, e2 } => DeckGroup::torus(e1.clone(), e2.clone()).map(Some),
        }
    }

    pub fn is_planar(&self) -> bool {
        matches!(self, Surface::Plane | Surface::SpherePlane)
    }

    pub fn name(&self) -> &'static str {
        match self {
            Surface::Plane => "plane",
            Surface::SpherePlane => "sphere",
            Surface::Annulus { .. } => "annulus",
            Surface::Torus { .. } => "torus",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Forward,
    Backward,
    /// Stay at the start; only full loops (if any) are traversed.
    Stay,
}

/// User-facing description of a boundary path: move from the start to
/// the end in `direction`, then traverse `extra_loops` full loops.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PathSpec {
    pub direction: Direction,
    pub extra_loops: i64,
}

impl PathSpec {
    pub const fn new(direction: Direction, extra_loops: i64) -> Self {
        PathSpec {
            direction,
            extra_loops,
        }
    }

    pub const fn forward() -> Self {
        PathSpec::new(Direction::Forward, 0)
    }

    pub const fn backward() -> Self {
        PathSpec::new(Direction::Backward, 0)
    }

    pub const fn constant() -> Self {
        PathSpec::new(Direction::Stay, 0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryPathSpec {
    pub start: IntersectionPoint,
    pub end: IntersectionPoint,
    pub direction: Direction,
    pub extra_loops: i64,
}

impl BoundaryPathSpec {
    pub fn spec(&self) -> PathSpec {
        PathSpec::new(self.direction, self.extra_loops)
    }
}

/// The two curves together with the deck group whose orbits give their
/// preimages in the plane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveSet {
    pub alpha: PLPath,
    pub beta: PLPath,
    pub deck: Option<DeckGroup>,
}

impl CurveSet {
    pub fn curve(&self, id: CurveId) -> &PLPath {
        match id {
            CurveId::Alpha => &self.alpha,
            CurveId::Beta => &self.beta,
        }
    }

    /// Pieces of the full preimage of one curve that may meet `window`.
    /// On the plane every piece is returned.
    pub fn curve_pieces_near(&self, id: CurveId, window: &BBox) -> Vec<Piece> {
        let curve = self.curve(id);
        let Some(deck) = &self.deck else {
            if curve.is_periodic() {
                return curve.pieces(id, Some(window));
            }
            return curve.pieces(id, None);
        };
        let mut out = Vec::new();
        if curve.is_periodic() {
            for k in deck.transverse_shifts(&curve.chunk_bbox(), window) {
                let shift = if deck.rank() == 2 {
                    deck.generators()[1].scale(&rat(k))
                } else {
                    Point::origin()
                };
                let local = window.translate(&-&shift);
                out.extend(
                    curve
                        .pieces(id, Some(&local))
                        .into_iter()
                        .map(|p| p.translated(&shift)),
                );
            }
        } else {
            let base = curve.pieces(id, None);
            let bbox = curve.chunk_bbox();
            for g in deck.translates_between(&bbox, window) {
                let v = deck.element(&g);
                out.extend(base.iter().map(|p| p.translated(&v)));
            }
        }
        out
    }

    pub fn pieces_near(&self, window: &BBox) -> Vec<Piece> {
        let mut out = self.curve_pieces_near(CurveId::Alpha, window);
        out.extend(self.curve_pieces_near(CurveId::Beta, window));
        out
    }

    /// True when `z` lies on the preimage of either curve.
    pub fn on_curves(&self, z: &Point) -> bool {
        let window = BBox::around(z, &ratio(1, 2));
        self.pieces_near(&window)
            .iter()
            .any(|p| p.locate(z).is_some())
    }

    /// Pieces of one fundamental copy of a curve: one period of a periodic
    /// lift, or the whole curve otherwise.
    pub fn fundamental_pieces(&self, id: CurveId) -> Vec<Piece> {
        let curve = self.curve(id);
        if curve.is_periodic() {
            let n = curve.segment_count() as i64;
            (0..n).map(|g| curve.piece(g, id)).collect()
        } else {
            curve.pieces(id, None)
        }
    }

    /// Every crossing of the two curves in the surface, each reported once
    /// with its lift on the fundamental copy of `id`, sorted by position
    /// along that curve.
    pub fn crossings_along(&self, id: CurveId) -> Result<Vec<IntersectionPoint>> {
        let own = self.fundamental_pieces(id);
        let other_id = match id {
            CurveId::Alpha => CurveId::Beta,
            CurveId::Beta => CurveId::Alpha,
        };
        let other = match own.iter().map(Piece::bbox).collect::<Option<Vec<_>>>() {
            Some(boxes) if !boxes.is_empty() => {
                let window = boxes[1..].iter().fold(boxes[0].clone(), |a, b| a.union(b));
                self.curve_pieces_near(other_id, &window)
            }
            _ => self.curve(other_id).pieces(other_id, None),
        };
        let mut xs = match id {
            CurveId::Alpha => intersect_pieces_lists(&own, &other)?,
            CurveId::Beta => intersect_pieces_lists(&other, &own)?,
        };
        if id == CurveId::Beta {
            xs.sort_by(|a, b| a.beta_position.cmp(&b.beta_position));
        }
        Ok(xs)
    }

    /// The piece of the given lift containing `z` in its interior.
    pub fn piece_through(&self, id: CurveId, z: &Point) -> Option<Piece> {
        let window = BBox::around(z, &ratio(1, 2));
        let curve = self.curve(id);
        let pieces = if curve.is_periodic() {
            curve.pieces(id, Some(&window))
        } else {
            curve.pieces(id, None)
        };
        pieces.into_iter().find(|p| p.locate_interior(z).is_some())
    }

    /// Positive radius `r` such that the disc of radius `r` about `z` meets
    /// only the pieces passing through `z`.
    pub fn clearance(&self, z: &Point) -> Result<Rational> {
        let window = BBox::around(z, &rat(1));
        min_feature_distance(z, &self.pieces_near(&window))
    }

    /// True when the open segment from `a` to `b` meets no curve piece.
    pub fn segment_clear(&self, a: &Point, b: &Point) -> bool {
        let mut window = BBox::of_points([a, b]).expect("two points");
        window = window.expand(&rat(1));
        let seg = Piece::segment(a, b, 0, CurveId::Alpha);
        let span = BBox::of_points([a, b]).expect("two points");
        self.pieces_near(&window).iter().all(|p| {
            p.bbox().is_some_and(|pb| !pb.intersects(&span))
                || matches!(intersect_pieces(&seg, p), Ok(None))
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trace {
    surface: Surface,
    curves: CurveSet,
    x: IntersectionPoint,
    y: IntersectionPoint,
    gamma_alpha: BoundaryPathSpec,
    gamma_beta: BoundaryPathSpec,
    offset: i64,
    alpha_span: (Rational, Rational),
    beta_span: (Rational, Rational),
}

fn check_curve(surface: &Surface, curve: &PLPath) -> Result<()> {
    match (surface, curve.kind()) {
        (Surface::Plane | Surface::SpherePlane, PathKind::Periodic { .. }) => Err(
            Error::UnsupportedSurface(format!("periodic lift on the {}", surface.name())),
        ),
        (Surface::Annulus { .. } | Surface::Torus { .. }, PathKind::Line) => Err(
            Error::UnsupportedSurface(format!("infinite line on the {}", surface.name())),
        ),
        (Surface::Annulus { period }, PathKind::Periodic { period: p })
        | (Surface::Torus { e1: period, .. }, PathKind::Periodic { period: p }) => {
            if p == period {
                Ok(())
            } else {
                Err(Error::InconsistentPeriodicity(format!(
                    "curve period {p} differs from the deck generator {period}"
                )))
            }
        }
        _ => Ok(()),
    }
}

/// Locates `p` as a transverse crossing of the two given lifts.
fn locate_crossing(curves: &CurveSet, p: &Point) -> Result<IntersectionPoint> {
    let a = curves.piece_through(CurveId::Alpha, p);
    let b = curves.piece_through(CurveId::Beta, p);
    match (a, b) {
        (Some(a), Some(b)) => {
            let s = sign(&a.dir.cross(&b.dir));
            if s == 0 {
                return Err(Error::NonTransverse(p.clone()));
            }
            let ta = a.locate(p).expect("interior point");
            let tb = b.locate(p).expect("interior point");
            Ok(IntersectionPoint {
                location: p.clone(),
                sign: s,
                alpha_position: a.param(&ta),
                beta_position: b.param(&tb),
            })
        }
        _ => {
            if curves.alpha.contains(p) && curves.beta.contains(p) {
                Err(Error::NonTransverse(p.clone()))
            } else {
                Err(Error::EndpointNotIntersection(p.clone()))
            }
        }
    }
}

/// Unrolled parameter of the end of a path on `curve` starting at `s`.
fn span_end(curve: &PLPath, s: &Rational, e: &Rational, spec: PathSpec) -> Result<Rational> {
    match curve.cycle_len() {
        None => {
            if spec.extra_loops != 0 {
                return Err(Error::IllegalLoopSpec(
                    "extra loops on a curve that is not a loop".into(),
                ));
            }
            let ok = match spec.direction {
                Direction::Forward => e > s,
                Direction::Backward => e < s,
                Direction::Stay => e == s,
            };
            if !ok {
                return Err(Error::IllegalLoopSpec(format!(
                    "{:?} does not lead from the start to the end",
                    spec.direction
                )));
            }
            Ok(e.clone())
        }
        Some(n) => {
            let n = rat(n);
            let r = rmod(&(e - s), &n);
            let arc = match spec.direction {
                Direction::Stay if r.is_zero() => Rational::zero(),
                Direction::Forward if !r.is_zero() => r,
                Direction::Backward if !r.is_zero() => &r - &n,
                Direction::Stay => {
                    return Err(Error::IllegalLoopSpec(
                        "constant path between distinct points".into(),
                    ))
                }
                _ => {
                    return Err(Error::IllegalLoopSpec(
                        "directed arc from a point to itself; use a constant path with loops"
                            .into(),
                    ))
                }
            };
            Ok(s + arc + n * rat(spec.extra_loops))
        }
    }
}

/// Inverse of [`span_end`]: the canonical spec of the path `s -> e`.
fn spec_of_span(curve: &PLPath, s: &Rational, e: &Rational) -> PathSpec {
    let delta = e - s;
    let dir_of = |d: &Rational| {
        if d.is_positive() {
            Direction::Forward
        } else if d.is_negative() {
            Direction::Backward
        } else {
            Direction::Stay
        }
    };
    match curve.cycle_len() {
        None => PathSpec::new(dir_of(&delta), 0),
        Some(n) => {
            let nr = rat(n);
            let r = rmod(&delta, &nr);
            if r.is_zero() {
                let k = floor_int(&(&delta / &nr));
                PathSpec::new(Direction::Stay, k)
            } else if delta.is_positive() {
                PathSpec::new(Direction::Forward, floor_int(&((&delta - &r) / &nr)))
            } else {
                let arc = &r - &nr;
                PathSpec::new(Direction::Backward, floor_int(&((&delta - &arc) / &nr)))
            }
        }
    }
}

/// Builds a validated trace.
///
/// `x` and `y` must be transverse crossings of the given lifts of the two
/// curves. On quotient surfaces the end of each path is the first lift of
/// `y` reached in the given direction, moved by the extra loops; both
/// paths must end at the same lift.
#[allow(clippy::too_many_arguments)]
pub fn make_trace(
    surface: Surface,
    alpha: PLPath,
    beta: PLPath,
    x: &Point,
    y: &Point,
    gamma_alpha: PathSpec,
    gamma_beta: PathSpec,
    offset: i64,
) -> Result<Trace> {
    check_curve(&surface, &alpha)?;
    check_curve(&surface, &beta)?;
    if offset != 0 && surface != Surface::SpherePlane {
        return Err(Error::UnsupportedSurface(format!(
            "degree offset on the {}",
            surface.name()
        )));
    }
    let curves = CurveSet {
        alpha,
        beta,
        deck: surface.deck()?,
    };
    curves.crossings_along(CurveId::Alpha)?;
    let xi = locate_crossing(&curves, x)?;
    let yi = locate_crossing(&curves, y)?;
    let a_end = span_end(
        &curves.alpha,
        &xi.alpha_position,
        &yi.alpha_position,
        gamma_alpha,
    )?;
    let b_end = span_end(
        &curves.beta,
        &xi.beta_position,
        &yi.beta_position,
        gamma_beta,
    )?;
    Trace::from_spans(
        surface,
        curves,
        xi.clone(),
        (xi.alpha_position.clone(), a_end),
        (xi.beta_position.clone(), b_end),
        offset,
    )
}

impl Trace {
    /// Builds a trace from unrolled parameter spans on the two lifts.
    pub fn from_spans(
        surface: Surface,
        curves: CurveSet,
        x: IntersectionPoint,
        alpha_span: (Rational, Rational),
        beta_span: (Rational, Rational),
        offset: i64,
    ) -> Result<Trace> {
        let ya = curves.alpha.point_at(&alpha_span.1);
        let yb = curves.beta.point_at(&beta_span.1);
        if ya != yb {
            return Err(if curves.alpha.is_periodic() || curves.beta.is_periodic() {
                Error::InconsistentPeriodicity(format!("lifted paths end at {ya} and {yb}"))
            } else {
                Error::IllegalLoopSpec(format!("paths end at {ya} and {yb}"))
            });
        }
        let y = locate_crossing(&curves, &ya)?;
        let y = IntersectionPoint {
            alpha_position: alpha_span.1.clone(),
            beta_position: beta_span.1.clone(),
            ..y
        };
        let sa = spec_of_span(&curves.alpha, &alpha_span.0, &alpha_span.1);
        let sb = spec_of_span(&curves.beta, &beta_span.0, &beta_span.1);
        let gamma_alpha = BoundaryPathSpec {
            start: x.clone(),
            end: y.clone(),
            direction: sa.direction,
            extra_loops: sa.extra_loops,
        };
        let gamma_beta = BoundaryPathSpec {
            start: x.clone(),
            end: y.clone(),
            direction: sb.direction,
            extra_loops: sb.extra_loops,
        };
        Ok(Trace {
            surface,
            curves,
            x,
            y,
            gamma_alpha,
            gamma_beta,
            offset,
            alpha_span,
            beta_span,
        })
    }

    pub fn surface(&self) -> &Surface {
        &self.surface
    }

    pub fn curves(&self) -> &CurveSet {
        &self.curves
    }

    pub fn alpha(&self) -> &PLPath {
        &self.curves.alpha
    }

    pub fn beta(&self) -> &PLPath {
        &self.curves.beta
    }

    pub fn x(&self) -> &IntersectionPoint {
        &self.x
    }

    /// End point; on quotient surfaces this is the lift reached by the paths.
    pub fn y(&self) -> &IntersectionPoint {
        &self.y
    }

    pub fn gamma_alpha(&self) -> &BoundaryPathSpec {
        &self.gamma_alpha
    }

    pub fn gamma_beta(&self) -> &BoundaryPathSpec {
        &self.gamma_beta
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn alpha_span(&self) -> &(Rational, Rational) {
        &self.alpha_span
    }

    pub fn beta_span(&self) -> &(Rational, Rational) {
        &self.beta_span
    }

    pub fn span(&self, id: CurveId) -> &(Rational, Rational) {
        match id {
            CurveId::Alpha => &self.alpha_span,
            CurveId::Beta => &self.beta_span,
        }
    }

    /// True when both endpoints agree (on quotients: up to a deck translation).
    pub fn is_closed(&self) -> bool {
        let d = &self.y.location - &self.x.location;
        match &self.curves.deck {
            None => d.is_zero(),
            Some(deck) => deck.contains(&d),
        }
    }

    /// Vertices of the realized path `γ_α` (or `γ_β`) from x to y.
    pub fn realized(&self, id: CurveId) -> Vec<Point> {
        let (s, e) = self.span(id);
        self.curves.curve(id).path_points(s, e)
    }

    /// The closed polygon `γ_α − γ_β` whose winding number is `w`.
    pub fn loop_points(&self) -> Vec<Point> {
        let mut pts = self.realized(CurveId::Alpha);
        let mut back = self.realized(CurveId::Beta);
        back.reverse();
        pts.extend(back.into_iter().skip(1));
        pts.pop();
        pts.dedup();
        pts
    }

    /// Replaces the degree offset (sphere only).
    pub fn with_offset(&self, offset: i64) -> Result<Trace> {
        if self.surface != Surface::SpherePlane && offset != 0 {
            return Err(Error::UnsupportedSurface(format!(
                "degree offset on the {}",
                self.surface.name()
            )));
        }
        Ok(Trace {
            offset,
            ..self.clone()
        })
    }
}

/// Result of testing the arc condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ArcCondition {
    Satisfied(ArcData),
    Violated(String),
}

/// Arcs `A ⊂ α`, `B ⊂ β` from x to y carrying the boundary of an arc
/// condition trace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArcData {
    pub a: Vec<Point>,
    pub b: Vec<Point>,
    /// Whether A runs along the orientation of α (ν_α = +1 on A).
    pub a_agrees: bool,
    pub b_agrees: bool,
}

pub fn arc_condition(trace: &Trace) -> Result<ArcCondition> {
    if trace.is_closed() {
        return Ok(ArcCondition::Violated("x = y".into()));
    }
    let nu = OneChain::of_trace(trace)?;
    for id in [CurveId::Alpha, CurveId::Beta] {
        let min = nu.cells(id).map(|c| nu.nu(c).abs()).min().unwrap_or(0);
        if min != 0 {
            return Ok(ArcCondition::Violated(format!(
                "min |nu_{}| = {min}",
                if id == CurveId::Alpha {
                    "alpha"
                } else {
                    "beta"
                }
            )));
        }
    }
    Ok(ArcCondition::Satisfied(ArcData {
        a: trace.realized(CurveId::Alpha),
        b: trace.realized(CurveId::Beta),
        a_agrees: trace.alpha_span.1 > trace.alpha_span.0,
        b_agrees: trace.beta_span.1 > trace.beta_span.0,
    }))
}

/// `Λ # Λ'`: follow `t1` from x to y, then `t2` from y to z.
pub fn catenate(t1: &Trace, t2: &Trace) -> Result<Trace> {
    if t1.surface != t2.surface || t1.curves != t2.curves {
        return Err(Error::EndpointMismatch);
    }
    let shift = &t1.y.location - &t2.x.location;
    let aligned = match &t1.curves.deck {
        None => shift.is_zero(),
        Some(deck) => deck.contains(&shift),
    };
    if !aligned {
        return Err(Error::EndpointMismatch);
    }
    let extend = |span1: &(Rational, Rational), span2: &(Rational, Rational), curve: &PLPath| {
        let step = &span2.1 - &span2.0;
        let lift_ok = match curve.cycle_len() {
            None => span1.1 == span2.0,
            Some(n) => rmod(&(&span1.1 - &span2.0), &rat(n)).is_zero(),
        };
        lift_ok.then(|| (span1.0.clone(), &span1.1 + step))
    };
    let a =
        extend(&t1.alpha_span, &t2.alpha_span, &t1.curves.alpha).ok_or(Error::EndpointMismatch)?;
    let b = extend(&t1.beta_span, &t2.beta_span, &t1.curves.beta).ok_or(Error::EndpointMismatch)?;
    Trace::from_spans(
        t1.surface.clone(),
        t1.curves.clone(),
        t1.x.clone(),
        a,
        b,
        t1.offset + t2.offset,
    )
}

/// Complex conjugate `Λ̄ = (x̄, ȳ, z ↦ −w(z̄))`.
pub fn conjugate(trace: &Trace) -> Result<Trace> {
    if !trace.surface.is_planar() {
        return Err(Error::UnsupportedSurface(format!(
            "conjugation on the {}",
            trace.surface.name()
        )));
    }
    let curves = CurveSet {
        alpha: trace.curves.alpha.conj(),
        beta: trace.curves.beta.conj(),
        deck: None,
    };
    let x = IntersectionPoint {
        location: trace.x.location.conj(),
        sign: -trace.x.sign,
        ..trace.x.clone()
    };
    Trace::from_spans(
        trace.surface.clone(),
        curves,
        x,
        trace.alpha_span.clone(),
        trace.beta_span.clone(),
        -trace.offset,
    )
}

/// The four values of `w` around a point, in counterclockwise order of
/// the sample vectors `+a+b, −a+b, −a−b, +a−b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quadrants {
    pub values: [i64; 4],
    /// Index into `values` of the quadrant to the right of both directions.
    pub right_of_both: usize,
}

impl Quadrants {
    pub fn sum(&self) -> i64 {
        self.values.iter().sum()
    }

    pub fn k(&self) -> i64 {
        self.values[self.right_of_both]
    }
}

/// Samples `w` once in each of the four sectors spanned by `a` and `b` at `z`.
pub fn quadrant_values(trace: &Trace, z: &Point, a: &Point, b: &Point) -> Result<Quadrants> {
    let eval = degree_two_chain(trace)?;
    let r = trace.curves.clearance(z)?;
    let ea = &r / (rat(4) * a.l1());
    let eb = &r / (rat(4) * b.l1());
    let va = a.scale(&ea);
    let vb = b.scale(&eb);
    let offsets = [&va + &vb, &vb - &va, -&(&va + &vb), &va - &vb];
    let mut values = [0i64; 4];
    let mut right = 0;
    for (i, v) in offsets.iter().enumerate() {
        let p = z + v;
        let inner = z + &v.scale(&ratio(1, 2));
        if !trace.curves.segment_clear(&p, &inner) {
            return Err(Error::Degenerate(z.clone()));
        }
        values[i] = eval.eval(&p)?;
        if sign(&a.cross(v)) < 0 && sign(&b.cross(v)) < 0 {
            right = i;
        }
    }
    Ok(Quadrants {
        values,
        right_of_both: right,
    })
}

/// Quadrant samples at a crossing of α and β, using their tangents.
pub fn crossing_quadrants(trace: &Trace, z: &Point) -> Result<Quadrants> {
    let window = BBox::around(z, &ratio(1, 2));
    let find = |id| {
        trace
            .curves
            .curve_pieces_near(id, &window)
            .into_iter()
            .find(|p| p.locate_interior(z).is_some())
    };
    match (find(CurveId::Alpha), find(CurveId::Beta)) {
        (Some(a), Some(b)) if !a.dir.cross(&b.dir).is_zero() => {
            quadrant_values(trace, z, &a.dir, &b.dir)
        }
        _ => Err(Error::EndpointNotIntersection(z.clone())),
    }
}

/// `m_z`: the sum of the four values of `w` around the crossing `z`.
pub fn m_value(trace: &Trace, z: &Point) -> Result<i64> {
    Ok(crossing_quadrants(trace, z)?.sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{circle16, half_disc};

    #[test]
    fn half_disc_is_valid() {
        let t = half_disc();
        assert_eq!(t.x().location, Point::from_ints(-1, 0));
        assert_eq!(t.y().location, Point::from_ints(1, 0));
        assert_eq!(t.x().sign, -t.y().sign);
        assert_eq!(t.gamma_beta().direction, Direction::Backward);
    }

    #[test]
    fn endpoint_must_be_a_crossing() {
        let err = make_trace(
            Surface::Plane,
            PLPath::x_axis(),
            circle16(),
            &Point::from_ints(0, 0),
            &Point::from_ints(1, 0),
            PathSpec::forward(),
            PathSpec::backward(),
            0,
        );
        assert_eq!(
            err,
            Err(Error::EndpointNotIntersection(Point::from_ints(0, 0)))
        );
    }

    #[test]
    fn loops_need_a_loop() {
        let err = make_trace(
            Surface::Plane,
            PLPath::x_axis(),
            circle16(),
            &Point::from_ints(-1, 0),
            &Point::from_ints(1, 0),
            PathSpec::new(Direction::Forward, 1),
            PathSpec::backward(),
            0,
        );
        assert!(matches!(err, Err(Error::IllegalLoopSpec(_))));
    }

    #[test]
    fn half_disc_m_values() {
        let t = half_disc();
        let q = crossing_quadrants(&t, &t.x().location).unwrap();
        let mut v = q.values;
        v.sort();
        assert_eq!(v, [0, 0, 0, 1]);
        assert_eq!(m_value(&t, &t.x().location).unwrap(), 1);
        assert_eq!(m_value(&t, &t.y().location).unwrap(), 1);
    }

    #[test]
    fn arc_condition_examples() {
        let t = half_disc();
        match arc_condition(&t).unwrap() {
            ArcCondition::Satisfied(d) => {
                assert!(d.a_agrees);
                assert!(!d.b_agrees);
                assert_eq!(d.a, vec![Point::from_ints(-1, 0), Point::from_ints(1, 0)]);
            }
            other => panic!("{other:?}"),
        }
        let c = make_trace(
            Surface::Plane,
            PLPath::x_axis(),
            circle16(),
            &Point::from_ints(1, 0),
            &Point::from_ints(1, 0),
            PathSpec::constant(),
            PathSpec::constant(),
            0,
        )
        .unwrap();
        assert_eq!(
            arc_condition(&c).unwrap(),
            ArcCondition::Violated("x = y".into())
        );
    }

    #[test]
    fn extra_loop_violates_arc_condition() {
        let big = circle16();
        let alpha = PLPath::new(
            big.vertices().iter().map(|p| p.scale(&rat(3))).collect(),
            PathKind::Closed,
        )
        .unwrap();
        let beta = PLPath::new(
            vec![
                Point::from_ints(-1, -5),
                Point::from_ints(1, -5),
                Point::from_ints(1, 5),
                Point::from_ints(-1, 5),
            ],
            PathKind::Closed,
        )
        .unwrap();
        let xs = CurveSet {
            alpha: alpha.clone(),
            beta: beta.clone(),
            deck: None,
        }
        .crossings_along(CurveId::Alpha)
        .unwrap();
        assert_eq!(xs.len(), 4);
        let t = make_trace(
            Surface::Plane,
            alpha,
            beta,
            &xs[0].location,
            &xs[1].location,
            PathSpec::new(Direction::Forward, 1),
            PathSpec::forward(),
            0,
        )
        .unwrap();
        match arc_condition(&t).unwrap() {
            ArcCondition::Violated(r) => assert!(r.contains("alpha")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn catenation_with_constant_is_identity() {
        let t = half_disc();
        let c = make_trace(
            Surface::Plane,
            t.alpha().clone(),
            t.beta().clone(),
            &t.y().location,
            &t.y().location,
            PathSpec::constant(),
            PathSpec::constant(),
            0,
        )
        .unwrap();
        assert_eq!(catenate(&t, &c).unwrap(), t);
        assert_eq!(catenate(&c, &t), Err(Error::EndpointMismatch));
    }

    #[test]
    fn conjugation_is_an_involution() {
        let t = half_disc();
        let c = conjugate(&t).unwrap();
        assert_eq!(m_value(&c, &c.x().location).unwrap(), -1);
        assert_eq!(conjugate(&c).unwrap(), t);
    }

    #[test]
    fn spans_round_trip_through_specs() {
        let loop_ = circle16();
        for (s, e) in [(1, 9), (9, 1)] {
            for extra in -2..=2 {
                for dir in [Direction::Forward, Direction::Backward] {
                    let s = ratio(2 * s + 1, 2);
                    let e = ratio(2 * e + 1, 2);
                    let spec = PathSpec::new(dir, extra);
                    let end = span_end(&loop_, &s, &e, spec).unwrap();
                    let back = spec_of_span(&loop_, &s, &end);
                    assert_eq!(span_end(&loop_, &s, &e, back).unwrap(), end);
                }
            }
        }
    }
}
