//! Exact planar primitives over the rationals.
//!
//! Curves are piecewise linear. Every curve is parametrized by a single
//! rational `u`: the piece with index `i` covers `u ∈ [i, i + 1]` (the two
//! end pieces of a [`PathKind::Line`] extend to `±∞`, and a
//! [`PathKind::Periodic`] lift uses every integer index, copy `k` of
//! fundamental piece `i` having index `k * n + i`).

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Sign of a rational as `-1`, `0` or `1`.
pub fn sign(r: &Rational) -> i8 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

pub fn floor_int(r: &Rational) -> i64 {
    let f = r.floor().to_integer();
    i64::try_from(f).expect("parameter out of i64 range")
}

pub fn ceil_int(r: &Rational) -> i64 {
    let c = r.ceil().to_integer();
    i64::try_from(c).expect("parameter out of i64 range")
}

/// `a mod n` in `[0, n)` for positive `n`.
pub fn rmod(a: &Rational, n: &Rational) -> Rational {
    a - n * (a / n).floor()
}

/// Formats a rational as `p` or `p/q`.
pub fn fmt_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: Rational,
    pub y: Rational,
}

impl Point {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point::new(rat(x), rat(y))
    }

    pub fn origin() -> Self {
        Point::from_ints(0, 0)
    }

    pub fn scale(&self, s: &Rational) -> Point {
        Point::new(&self.x * s, &self.y * s)
    }

    pub fn cross(&self, other: &Point) -> Rational {
        &self.x * &other.y - &self.y * &other.x
    }

    pub fn dot(&self, other: &Point) -> Rational {
        &self.x * &other.x + &self.y * &other.y
    }

    pub fn norm2(&self) -> Rational {
        self.dot(self)
    }

    /// Manhattan length; an upper bound for the Euclidean length.
    pub fn l1(&self) -> Rational {
        self.x.abs() + self.y.abs()
    }

    /// Rotation by a quarter turn counterclockwise.
    pub fn perp(&self) -> Point {
        Point::new(-self.y.clone(), self.x.clone())
    }

    /// Complex conjugation.
    pub fn conj(&self) -> Point {
        Point::new(self.x.clone(), -self.y.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", fmt_rational(&self.x), fmt_rational(&self.y))
    }
}

impl Add for &Point {
    type Output = Point;
    fn add(self, rhs: &Point) -> Point {
        Point::new(&self.x + &rhs.x, &self.y + &rhs.y)
    }
}

impl Sub for &Point {
    type Output = Point;
    fn sub(self, rhs: &Point) -> Point {
        Point::new(&self.x - &rhs.x, &self.y - &rhs.y)
    }
}

impl Neg for &Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-self.x.clone(), -self.y.clone())
    }
}

/// Sign of twice the signed area of the triangle `(a, b, c)`.
pub fn orient2d(a: &Point, b: &Point, c: &Point) -> i8 {
    sign(&(b - a).cross(&(c - a)))
}

/// Axis-aligned box with inclusive bounds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BBox {
    pub min: Point,
    pub max: Point,
}

impl BBox {
    pub fn around(p: &Point, radius: &Rational) -> BBox {
        BBox {
            min: Point::new(&p.x - radius, &p.y - radius),
            max: Point::new(&p.x + radius, &p.y + radius),
        }
    }

    pub fn of_points<'a>(points: impl IntoIterator<Item = &'a Point>) -> Option<BBox> {
        let mut it = points.into_iter();
        let first = it.next()?;
        let mut b = BBox {
            min: first.clone(),
            max: first.clone(),
        };
        for p in it {
            b.include(p);
        }
        Some(b)
    }

    pub fn include(&mut self, p: &Point) {
        if p.x < self.min.x {
            self.min.x = p.x.clone();
        }
        if p.y < self.min.y {
            self.min.y = p.y.clone();
        }
        if p.x > self.max.x {
            self.max.x = p.x.clone();
        }
        if p.y > self.max.y {
            self.max.y = p.y.clone();
        }
    }

    pub fn union(&self, other: &BBox) -> BBox {
        let mut b = self.clone();
        b.include(&other.min);
        b.include(&other.max);
        b
    }

    pub fn expand(&self, by: &Rational) -> BBox {
        BBox {
            min: Point::new(&self.min.x - by, &self.min.y - by),
            max: Point::new(&self.max.x + by, &self.max.y + by),
        }
    }

    pub fn translate(&self, v: &Point) -> BBox {
        BBox {
            min: &self.min + v,
            max: &self.max + v,
        }
    }

    pub fn contains(&self, p: &Point) -> bool {
        p.x >= self.min.x && p.x <= self.max.x && p.y >= self.min.y && p.y <= self.max.y
    }

    pub fn intersects(&self, other: &BBox) -> bool {
        self.min.x <= other.max.x
            && other.min.x <= self.max.x
            && self.min.y <= other.max.y
            && other.min.y <= self.max.y
    }

    pub fn corners(&self) -> [Point; 4] {
        [
            self.min.clone(),
            Point::new(self.max.x.clone(), self.min.y.clone()),
            self.max.clone(),
            Point::new(self.min.x.clone(), self.max.y.clone()),
        ]
    }
}

/// Which of the two curves a piece belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CurveId {
    Alpha,
    Beta,
}

/// One straight piece `origin + t * dir` of a curve, `t` ranging over
/// `[lo, hi]` with `None` meaning unbounded. The curve parameter of the
/// point at `t` is `index + t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piece {
    pub origin: Point,
    pub dir: Point,
    pub lo: Option<Rational>,
    pub hi: Option<Rational>,
    pub index: i64,
    pub curve: CurveId,
}

impl Piece {
    pub fn segment(a: &Point, b: &Point, index: i64, curve: CurveId) -> Piece {
        Piece {
            origin: a.clone(),
            dir: b - a,
            lo: Some(Rational::zero()),
            hi: Some(Rational::one()),
            index,
            curve,
        }
    }

    pub fn at(&self, t: &Rational) -> Point {
        &self.origin + &self.dir.scale(t)
    }

    pub fn param(&self, t: &Rational) -> Rational {
        rat(self.index) + t
    }

    pub fn translated(&self, v: &Point) -> Piece {
        Piece {
            origin: &self.origin + v,
            ..self.clone()
        }
    }

    fn in_closed(&self, t: &Rational) -> bool {
        self.lo.as_ref().is_none_or(|lo| t >= lo) && self.hi.as_ref().is_none_or(|hi| t <= hi)
    }

    fn at_end(&self, t: &Rational) -> bool {
        self.lo.as_ref() == Some(t) || self.hi.as_ref() == Some(t)
    }

    /// Parameter `t` of `p` if `p` lies on this piece (endpoints included).
    pub fn locate(&self, p: &Point) -> Option<Rational> {
        let w = p - &self.origin;
        if !self.dir.cross(&w).is_zero() {
            return None;
        }
        let t = w.dot(&self.dir) / self.dir.norm2();
        self.in_closed(&t).then_some(t)
    }

    /// `Some(t)` when `p` lies strictly inside the piece.
    pub fn locate_interior(&self, p: &Point) -> Option<Rational> {
        self.locate(p).filter(|t| !self.at_end(t))
    }

    /// Exact squared distance from `p` to the piece.
    pub fn dist2(&self, p: &Point) -> Rational {
        let w = p - &self.origin;
        let mut t = w.dot(&self.dir) / self.dir.norm2();
        if let Some(lo) = &self.lo {
            if &t < lo {
                t = lo.clone();
            }
        }
        if let Some(hi) = &self.hi {
            if &t > hi {
                t = hi.clone();
            }
        }
        (p - &self.at(&t)).norm2()
    }

    pub fn bbox(&self) -> Option<BBox> {
        let a = self.at(self.lo.as_ref()?);
        let b = self.at(self.hi.as_ref()?);
        BBox::of_points([&a, &b])
    }
}

/// Transverse crossing of two pieces, as parameters `(t, s)` on `p` and `q`.
///
/// Collinear overlap, tangency and meeting at an end of either piece are
/// reported as [`Error::NonTransverse`].
pub fn intersect_pieces(p: &Piece, q: &Piece) -> Result<Option<(Rational, Rational)>> {
    let denom = p.dir.cross(&q.dir);
    let w = &q.origin - &p.origin;
    if denom.is_zero() {
        if !p.dir.cross(&w).is_zero() {
            return Ok(None);
        }
        // Collinear: map q's range into p's parameter and test overlap.
        let pp = p.dir.norm2();
        let t0 = w.dot(&p.dir) / &pp;
        let rate = q.dir.dot(&p.dir) / &pp;
        let map = |s: &Option<Rational>| s.as_ref().map(|s| &t0 + &rate * s);
        let (mut a, mut b) = (map(&q.lo), map(&q.hi));
        if rate.is_negative() {
            std::mem::swap(&mut a, &mut b);
        }
        let lo_ok = match (&a, &p.hi) {
            (Some(a), Some(hi)) => a <= hi,
            _ => true,
        };
        let hi_ok = match (&b, &p.lo) {
            (Some(b), Some(lo)) => b >= lo,
            _ => true,
        };
        if lo_ok && hi_ok {
            return Err(Error::NonTransverse(q.origin.clone()));
        }
        return Ok(None);
    }
    let t = w.cross(&q.dir) / &denom;
    let s = w.cross(&p.dir) / &denom;
    if !p.in_closed(&t) || !q.in_closed(&s) {
        return Ok(None);
    }
    if p.at_end(&t) || q.at_end(&s) {
        return Err(Error::NonTransverse(p.at(&t)));
    }
    Ok(Some((t, s)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PathKind {
    /// Closed polygon; the last vertex connects back to the first.
    Closed,
    /// Polyline with two free ends.
    Open,
    /// Polyline whose first and last pieces extend to infinity.
    Line,
    /// Lift of a noncontractible quotient curve: the fundamental vertices
    /// repeat under translation by `period`.
    Periodic { period: Point },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PLPath {
    vertices: Vec<Point>,
    kind: PathKind,
}

impl PLPath {
    pub fn new(vertices: Vec<Point>, kind: PathKind) -> Result<Self> {
        let min = match kind {
            PathKind::Closed => 3,
            PathKind::Open | PathKind::Line => 2,
            PathKind::Periodic { .. } => 1,
        };
        if vertices.len() < min {
            return Err(Error::InvalidCurve(format!(
                "{:?} needs at least {min} vertices",
                kind
            )));
        }
        if let PathKind::Periodic { period } = &kind {
            if period.is_zero() {
                return Err(Error::InvalidCurve("zero period".into()));
            }
        }
        let path = PLPath { vertices, kind };
        let n = path.segment_count();
        for i in 0..n {
            let (a, b) = path.fundamental_segment(i);
            if a == b {
                return Err(Error::InvalidCurve(format!(
                    "repeated consecutive vertex {a}"
                )));
            }
        }
        Ok(path)
    }

    /// Convenience constructor for the x-axis oriented towards `+x`.
    pub fn x_axis() -> Self {
        PLPath::new(
            vec![Point::from_ints(-1, 0), Point::from_ints(1, 0)],
            PathKind::Line,
        )
        .expect("valid axis")
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn kind(&self) -> &PathKind {
        &self.kind
    }

    pub fn is_closed(&self) -> bool {
        matches!(self.kind, PathKind::Closed)
    }

    pub fn is_periodic(&self) -> bool {
        matches!(self.kind, PathKind::Periodic { .. })
    }

    pub fn period(&self) -> Option<&Point> {
        match &self.kind {
            PathKind::Periodic { period } => Some(period),
            _ => None,
        }
    }

    /// Number of pieces (per period for periodic lifts).
    pub fn segment_count(&self) -> usize {
        match self.kind {
            PathKind::Closed | PathKind::Periodic { .. } => self.vertices.len(),
            PathKind::Open | PathKind::Line => self.vertices.len() - 1,
        }
    }

    /// Parameter length of one traversal for loops and periodic lifts.
    pub fn cycle_len(&self) -> Option<i64> {
        match self.kind {
            PathKind::Closed | PathKind::Periodic { .. } => Some(self.vertices.len() as i64),
            _ => None,
        }
    }

    fn fundamental_segment(&self, i: usize) -> (Point, Point) {
        let n = self.vertices.len();
        let a = self.vertices[i].clone();
        let b = match &self.kind {
            PathKind::Closed => self.vertices[(i + 1) % n].clone(),
            PathKind::Periodic { period } => {
                if i + 1 == n {
                    &self.vertices[0] + period
                } else {
                    self.vertices[i + 1].clone()
                }
            }
            _ => self.vertices[i + 1].clone(),
        };
        (a, b)
    }

    /// Translation applied to copy `k` of a periodic lift.
    fn shift(&self, k: i64) -> Point {
        match &self.kind {
            PathKind::Periodic { period } => period.scale(&rat(k)),
            _ => Point::origin(),
        }
    }

    /// Piece with global index `g`.
    pub fn piece(&self, g: i64, curve: CurveId) -> Piece {
        let n = self.segment_count() as i64;
        let (k, i) = match self.kind {
            PathKind::Periodic { .. } | PathKind::Closed => {
                (Integer::div_floor(&g, &n), Integer::mod_floor(&g, &n))
            }
            _ => (0, g),
        };
        let (a, b) = self.fundamental_segment(i as usize);
        let shift = if matches!(self.kind, PathKind::Closed) {
            Point::origin()
        } else {
            self.shift(k)
        };
        let mut piece = Piece::segment(&(&a + &shift), &(&b + &shift), g, curve);
        if matches!(self.kind, PathKind::Line) {
            if i == 0 {
                piece.lo = None;
            }
            if i == n - 1 {
                piece.hi = None;
            }
        }
        piece
    }

    /// All pieces of a finite curve; for a periodic lift only the copies
    /// whose bounding box meets `window`.
    pub fn pieces(&self, curve: CurveId, window: Option<&BBox>) -> Vec<Piece> {
        let n = self.segment_count() as i64;
        match &self.kind {
            PathKind::Periodic { period } => {
                let window = window.expect("periodic pieces need a window");
                let chunk = self.chunk_bbox();
                let mut out = Vec::new();
                for k in copy_range(&chunk, period, window) {
                    if !chunk.translate(&period.scale(&rat(k))).intersects(window) {
                        continue;
                    }
                    out.extend((0..n).map(|i| self.piece(k * n + i, curve)));
                }
                out
            }
            _ => (0..n).map(|i| self.piece(i, curve)).collect(),
        }
    }

    /// Bounding box of one period of a periodic lift (or of the vertices).
    pub fn chunk_bbox(&self) -> BBox {
        let mut b = BBox::of_points(&self.vertices).expect("nonempty");
        if let Some(p) = self.period() {
            b.include(&(&self.vertices[0] + p));
        }
        b
    }

    fn split_param(&self, u: &Rational) -> (i64, Rational) {
        let n = self.segment_count() as i64;
        let mut g = floor_int(u);
        if matches!(self.kind, PathKind::Line | PathKind::Open) {
            g = g.clamp(0, n - 1);
        }
        (g, u - rat(g))
    }

    /// Point with curve parameter `u`; closed curves are read modulo their length.
    pub fn point_at(&self, u: &Rational) -> Point {
        let (g, t) = self.split_param(u);
        self.piece(g, CurveId::Alpha).at(&t)
    }

    /// Oriented tangent of the piece containing `u` (`u` not a vertex).
    pub fn tangent_at(&self, u: &Rational) -> Point {
        let (g, _) = self.split_param(u);
        self.piece(g, CurveId::Alpha).dir
    }

    /// Curve parameter of `p` if it lies in the interior of some piece.
    /// For closed curves the result lies in `[0, n)`; periodic lifts give
    /// the parameter on the lift itself.
    pub fn locate(&self, p: &Point) -> Option<Rational> {
        let window = BBox::around(p, &Rational::one());
        self.pieces(CurveId::Alpha, Some(&window))
            .iter()
            .find_map(|pc| pc.locate_interior(p).map(|t| pc.param(&t)))
    }

    /// True when `p` lies anywhere on the curve, vertices included.
    pub fn contains(&self, p: &Point) -> bool {
        let window = BBox::around(p, &Rational::one());
        self.pieces(CurveId::Alpha, Some(&window))
            .iter()
            .any(|pc| pc.locate(p).is_some())
    }

    /// Vertices visited when moving monotonically from parameter `from`
    /// to `to`, with both endpoints included.
    pub fn path_points(&self, from: &Rational, to: &Rational) -> Vec<Point> {
        let mut pts = vec![self.point_at(from)];
        if from < to {
            let start = floor_int(from) + 1;
            let end = ceil_int(to) - 1;
            for g in start..=end {
                pts.push(self.point_at(&rat(g)));
            }
        } else if to < from {
            let start = ceil_int(from) - 1;
            let end = floor_int(to) + 1;
            let mut g = start;
            while g >= end {
                pts.push(self.point_at(&rat(g)));
                g -= 1;
            }
        }
        if from != to {
            pts.push(self.point_at(to));
        }
        pts
    }

    /// Tangent vectors of the pieces visited from `from` to `to`, in order.
    pub fn path_tangents(&self, from: &Rational, to: &Rational) -> Vec<Point> {
        let (g0, _) = self.split_param(from);
        if from == to {
            return vec![self.tangent_at(from)];
        }
        let (g1, t1) = self.split_param(to);
        let g1 = if t1.is_zero() && to > from {
            g1 - 1
        } else {
            g1
        };
        let mut out = Vec::new();
        if from < to {
            for g in g0..=g1 {
                out.push(self.piece(g, CurveId::Alpha).dir);
            }
        } else {
            let (g0b, t0) = self.split_param(from);
            let g0b = if t0.is_zero() { g0b - 1 } else { g0b };
            let mut g = g0b;
            while g >= g1 {
                out.push(self.piece(g, CurveId::Alpha).dir);
                g -= 1;
            }
        }
        out
    }

    /// Image under complex conjugation (orientation of the parameter kept).
    pub fn conj(&self) -> PLPath {
        let kind = match &self.kind {
            PathKind::Periodic { period } => PathKind::Periodic {
                period: period.conj(),
            },
            k => k.clone(),
        };
        PLPath {
            vertices: self.vertices.iter().map(Point::conj).collect(),
            kind,
        }
    }

    /// Checks that no two non-adjacent pieces meet and adjacent pieces
    /// meet only at their shared vertex. Periodic lifts are checked over
    /// three consecutive periods.
    pub fn check_embedded(&self) -> Result<()> {
        let pieces: Vec<Piece> = match &self.kind {
            PathKind::Periodic { .. } => {
                let n = self.segment_count() as i64;
                (-n..2 * n).map(|g| self.piece(g, CurveId::Alpha)).collect()
            }
            _ => self.pieces(CurveId::Alpha, None),
        };
        let m = pieces.len();
        let cyclic = self.is_closed();
        for i in 0..m {
            for j in i + 1..m {
                let adjacent = j == i + 1 || (cyclic && i == 0 && j == m - 1);
                let (p, q) = (&pieces[i], &pieces[j]);
                if adjacent {
                    // Only the shared vertex may be common.
                    if p.dir.cross(&q.dir).is_zero() && p.dir.dot(&q.dir).is_negative() {
                        return Err(Error::InvalidCurve(format!("fold back at {}", q.origin)));
                    }
                    continue;
                }
                match intersect_pieces(p, q) {
                    Ok(None) => {}
                    Ok(Some((t, _))) => {
                        return Err(Error::InvalidCurve(format!(
                            "self intersection at {}",
                            p.at(&t)
                        )))
                    }
                    Err(_) => {
                        return Err(Error::InvalidCurve(format!(
                            "self contact near {}",
                            q.origin
                        )))
                    }
                }
            }
        }
        Ok(())
    }
}

/// Integer range of copies `k` such that `chunk + k * period` may meet `window`.
fn copy_range(chunk: &BBox, period: &Point, window: &BBox) -> std::ops::RangeInclusive<i64> {
    let (cmin, cmax, wmin, wmax, p) = if !period.x.is_zero() {
        (
            &chunk.min.x,
            &chunk.max.x,
            &window.min.x,
            &window.max.x,
            &period.x,
        )
    } else {
        (
            &chunk.min.y,
            &chunk.max.y,
            &window.min.y,
            &window.max.y,
            &period.y,
        )
    };
    // chunk + k p overlaps window iff k p in [wmin - cmax, wmax - cmin].
    let a = (wmin - cmax) / p;
    let b = (wmax - cmin) / p;
    let (a, b) = if a <= b { (a, b) } else { (b, a) };
    floor_int(&a)..=ceil_int(&b)
}

/// A transverse crossing of `alpha` and `beta`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionPoint {
    pub location: Point,
    /// Orientation of the frame (tangent of alpha, tangent of beta).
    pub sign: i8,
    pub alpha_position: Rational,
    pub beta_position: Rational,
}

/// Crossings between two lists of pieces, sorted by alpha position.
pub fn intersect_pieces_lists(alpha: &[Piece], beta: &[Piece]) -> Result<Vec<IntersectionPoint>> {
    let mut out = Vec::new();
    for p in alpha {
        let pb = p.bbox();
        for q in beta {
            if let (Some(a), Some(b)) = (&pb, q.bbox()) {
                if !a.intersects(&b) {
                    continue;
                }
            }
            if let Some((t, s)) = intersect_pieces(p, q)? {
                out.push(IntersectionPoint {
                    location: p.at(&t),
                    sign: sign(&p.dir.cross(&q.dir)),
                    alpha_position: p.param(&t),
                    beta_position: q.param(&s),
                });
            }
        }
    }
    out.sort_by(|a, b| a.alpha_position.cmp(&b.alpha_position));
    Ok(out)
}

/// All transverse crossings of two finite (non-periodic) curves, sorted
/// by alpha position.
pub fn intersect_curves(alpha: &PLPath, beta: &PLPath) -> Result<Vec<IntersectionPoint>> {
    if alpha.is_periodic() || beta.is_periodic() {
        return Err(Error::InvalidCurve(
            "periodic lifts need a window; use intersect_curves_in".into(),
        ));
    }
    intersect_pieces_lists(
        &alpha.pieces(CurveId::Alpha, None),
        &beta.pieces(CurveId::Beta, None),
    )
}

/// Crossings whose pieces meet `window` (needed when a curve is periodic).
pub fn intersect_curves_in(
    alpha: &PLPath,
    beta: &PLPath,
    window: &BBox,
) -> Result<Vec<IntersectionPoint>> {
    let a = alpha.pieces(CurveId::Alpha, Some(window));
    let b = beta.pieces(CurveId::Beta, Some(window));
    intersect_pieces_lists(&a, &b)
}

/// Winding number of the closed polygon through `loop_pts` about `z`.
///
/// A ray from `z` is intersected with every edge; an edge counts when it
/// strictly straddles the ray's line ahead of `z`. If a vertex lies exactly
/// on the forward ray, another rational direction is tried.
pub fn winding_number_points(loop_pts: &[Point], z: &Point) -> Result<i64> {
    let n = loop_pts.len();
    if n < 2 {
        if n == 1 && &loop_pts[0] == z {
            return Err(Error::OnCurve(z.clone()));
        }
        return Ok(0);
    }
    for i in 0..n {
        let a = &loop_pts[i];
        let b = &loop_pts[(i + 1) % n];
        if a == b {
            if a == z {
                return Err(Error::OnCurve(z.clone()));
            }
            continue;
        }
        let outside = (z.x < a.x && z.x < b.x)
            || (z.x > a.x && z.x > b.x)
            || (z.y < a.y && z.y < b.y)
            || (z.y > a.y && z.y > b.y);
        if !outside && Piece::segment(a, b, 0, CurveId::Alpha).locate(z).is_some() {
            return Err(Error::OnCurve(z.clone()));
        }
    }
    let horizontal_blocked = loop_pts.iter().any(|v| v.y == z.y && v.x > z.x);
    if !horizontal_blocked {
        let side = |v: &Point| v.y.cmp(&z.y) as i8;
        let mut w = 0;
        for i in 0..n {
            let a = &loop_pts[i];
            let b = &loop_pts[(i + 1) % n];
            let (sa, sb) = (side(a), side(b));
            if sa < 0 && sb > 0 && orient2d(a, b, z) > 0 {
                w += 1;
            } else if sa > 0 && sb < 0 && orient2d(a, b, z) < 0 {
                w -= 1;
            }
        }
        return Ok(w);
    }
    let mut k: i64 = 1;
    loop {
        let dir = Point::new(rat(1), ratio(k, 7919));
        let ahead = &dir + z;
        let blocked = loop_pts
            .iter()
            .any(|v| orient2d(z, &ahead, v) == 0 && (v - z).dot(&dir).is_positive());
        if !blocked {
            let mut w = 0;
            for i in 0..n {
                let a = &loop_pts[i];
                let b = &loop_pts[(i + 1) % n];
                let sa = orient2d(z, &ahead, a);
                let sb = orient2d(z, &ahead, b);
                if sa < 0 && sb > 0 && orient2d(a, b, z) > 0 {
                    w += 1;
                } else if sa > 0 && sb < 0 && orient2d(a, b, z) < 0 {
                    w -= 1;
                }
            }
            return Ok(w);
        }
        k = if k <= 0 { 1 - k } else { -k };
    }
}

/// Winding number of a closed curve about `z`.
pub fn winding_number(path: &PLPath, z: &Point) -> Result<i64> {
    if !path.is_closed() {
        return Err(Error::InvalidCurve(
            "winding number needs a closed loop".into(),
        ));
    }
    winding_number_points(path.vertices(), z)
}

/// Largest power of two whose square is at most `d2` (`d2 > 0`), capped at one.
fn sqrt_lower_bound(d2: &Rational) -> Rational {
    let mut r = Rational::one();
    while &(&r * &r) > d2 {
        r /= rat(2);
    }
    r
}

/// Positive lower bound on the distance from `z` to every piece that does
/// not pass through `z` (pieces through `z` are the incident ones).
///
/// Returns `1` when nothing else is closer than that.
pub fn min_feature_distance<'a>(
    z: &Point,
    pieces: impl IntoIterator<Item = &'a Piece>,
) -> Result<Rational> {
    let mut best: Option<Rational> = None;
    for p in pieces {
        if p.locate_interior(z).is_some() {
            continue;
        }
        let d2 = p.dist2(z);
        if d2.is_zero() {
            return Err(Error::Degenerate(z.clone()));
        }
        if best.as_ref().is_none_or(|b| &d2 < b) {
            best = Some(d2);
        }
    }
    Ok(best.map_or_else(Rational::one, |d2| sqrt_lower_bound(&d2)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: i64, y: i64) -> Point {
        Point::from_ints(x, y)
    }

    fn unit_square() -> PLPath {
        PLPath::new(vec![p(0, 0), p(1, 0), p(1, 1), p(0, 1)], PathKind::Closed).unwrap()
    }

    #[test]
    fn orient_examples() {
        assert_eq!(orient2d(&p(0, 0), &p(1, 0), &p(0, 1)), 1);
        assert_eq!(orient2d(&p(0, 0), &p(1, 0), &p(2, 0)), 0);
        assert_eq!(orient2d(&p(0, 0), &p(0, 1), &p(1, 0)), -1);
    }

    #[test]
    fn square_winding() {
        let sq = unit_square();
        let half = Point::new(ratio(1, 2), ratio(1, 2));
        assert_eq!(winding_number(&sq, &half).unwrap(), 1);
        assert_eq!(winding_number(&sq, &p(2, 0)).unwrap(), 0);
        let twice: Vec<Point> = sq.vertices().iter().chain(sq.vertices()).cloned().collect();
        assert_eq!(winding_number_points(&twice, &half).unwrap(), 2);
        assert_eq!(
            winding_number(&sq, &Point::new(ratio(1, 2), rat(0))),
            Err(Error::OnCurve(Point::new(ratio(1, 2), rat(0))))
        );
    }

    #[test]
    fn winding_with_vertex_on_ray() {
        // Vertex (2, 1/2) sits on the horizontal ray from the centre.
        let pts = vec![
            p(0, 0),
            p(1, 0),
            Point::new(rat(2), ratio(1, 2)),
            p(1, 1),
            p(0, 1),
        ];
        let half = Point::new(ratio(1, 2), ratio(1, 2));
        assert_eq!(winding_number_points(&pts, &half).unwrap(), 1);
        let rev: Vec<Point> = pts.iter().rev().cloned().collect();
        assert_eq!(winding_number_points(&rev, &half).unwrap(), -1);
    }

    #[test]
    fn axis_crossings() {
        let axis = PLPath::x_axis();
        let above =
            PLPath::new(vec![p(0, 1), p(1, 1), p(1, 2), p(0, 2)], PathKind::Closed).unwrap();
        assert!(intersect_curves(&axis, &above).unwrap().is_empty());

        let up = PLPath::new(vec![p(0, -1), p(0, 1)], PathKind::Line).unwrap();
        let xs = intersect_curves(&axis, &up).unwrap();
        assert_eq!(xs.len(), 1);
        assert_eq!(xs[0].location, p(0, 0));
        assert_eq!(xs[0].sign, 1);
    }

    #[test]
    fn rays_extend_lines() {
        let axis = PLPath::x_axis();
        let far = PLPath::new(vec![p(100, -1), p(100, 1)], PathKind::Open).unwrap();
        let xs = intersect_curves(&axis, &far).unwrap();
        assert_eq!(xs.len(), 1);
        assert_eq!(xs[0].alpha_position, rat(50) + ratio(1, 2));
        assert_eq!(axis.point_at(&xs[0].alpha_position), p(100, 0));
    }

    #[test]
    fn non_transverse_inputs() {
        let axis = PLPath::x_axis();
        let through_vertex = PLPath::new(vec![p(0, -1), p(0, 0), p(1, 1)], PathKind::Open).unwrap();
        assert!(matches!(
            intersect_curves(&axis, &through_vertex),
            Err(Error::NonTransverse(_))
        ));
        let overlap = PLPath::new(vec![p(2, 0), p(3, 0)], PathKind::Open).unwrap();
        assert!(matches!(
            intersect_curves(&axis, &overlap),
            Err(Error::NonTransverse(_))
        ));
    }

    #[test]
    fn feature_distance() {
        let axis = PLPath::x_axis();
        let yaxis = PLPath::new(vec![p(0, -1), p(0, 1)], PathKind::Line).unwrap();
        let far =
            PLPath::new(vec![p(5, -5), p(9, -5), p(9, 5), p(5, 5)], PathKind::Closed).unwrap();
        let mut pieces = axis.pieces(CurveId::Alpha, None);
        pieces.extend(yaxis.pieces(CurveId::Beta, None));
        pieces.extend(far.pieces(CurveId::Beta, None));
        let r = min_feature_distance(&p(0, 0), &pieces).unwrap();
        assert!(r.is_positive() && r <= rat(5));

        let near = PLPath::new(
            vec![
                Point::new(rat(-1), ratio(3, 4)),
                Point::new(rat(1), ratio(3, 4)),
            ],
            PathKind::Open,
        )
        .unwrap();
        let r = min_feature_distance(&p(0, 0), &near.pieces(CurveId::Beta, None)).unwrap();
        assert!(r.is_positive() && r <= ratio(3, 4));

        assert_eq!(min_feature_distance(&p(0, 0), &[]).unwrap(), rat(1));
    }

    #[test]
    fn periodic_pieces_and_locate() {
        let wave = PLPath::new(
            vec![p(0, -1), p(0, 1), p(2, 1), p(2, -1)],
            PathKind::Periodic { period: p(4, 0) },
        )
        .unwrap();
        let window = BBox::around(&p(9, 0), &rat(1));
        let pieces = wave.pieces(CurveId::Beta, Some(&window));
        assert!(pieces.iter().any(|pc| pc.locate(&p(8, 0)).is_some()));
        let u = wave.locate(&p(8, 0)).unwrap();
        assert_eq!(wave.point_at(&u), p(8, 0));
        assert_eq!(u, rat(8) + ratio(1, 2));
        wave.check_embedded().unwrap();
    }

    #[test]
    fn path_points_walk_both_ways() {
        let sq = unit_square();
        let fwd = sq.path_points(&ratio(1, 2), &(rat(2) + ratio(1, 2)));
        assert_eq!(fwd.len(), 4);
        let back = sq.path_points(&ratio(1, 2), &ratio(-1, 2));
        assert_eq!(
            back,
            vec![
                Point::new(ratio(1, 2), rat(0)),
                p(0, 0),
                Point::new(rat(0), ratio(1, 2))
            ]
        );
        assert_eq!(
            sq.path_tangents(&ratio(1, 2), &(rat(2) + ratio(1, 2)))
                .len(),
            3
        );
        assert_eq!(sq.path_tangents(&ratio(1, 2), &ratio(-1, 2)).len(), 2);
    }
}
