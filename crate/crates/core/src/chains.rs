//! The two-chain `w`, the one-chain `ν = ∂w`, and the reconstruction of
//! `w` from `ν` by counting signed crossings along paths.

use num_traits::Signed;

use crate::cover::DeckGroup;
use crate::error::{Error, Result};
use crate::geometry::{
    floor_int, intersect_pieces, rat, ratio, rmod, winding_number_points, BBox, CurveId, PLPath,
    PathKind, Piece, Point, Rational,
};
use crate::trace::{CurveSet, Trace};

/// Evaluates `w(z)` as the winding number of `γ_α − γ_β` about `z`, plus
/// the degree offset; on quotient surfaces the winding numbers of all
/// preimages of `z` are summed.
#[derive(Clone, Debug)]
pub struct TwoChainEval {
    loop_pts: Vec<Point>,
    loop_bbox: Option<BBox>,
    offset: i64,
    curves: CurveSet,
}

pub fn degree_two_chain(trace: &Trace) -> Result<TwoChainEval> {
    let loop_pts = trace.loop_points();
    let loop_bbox = BBox::of_points(&loop_pts);
    Ok(TwoChainEval {
        loop_pts,
        loop_bbox,
        offset: trace.offset(),
        curves: trace.curves().clone(),
    })
}

impl TwoChainEval {
    pub fn loop_points(&self) -> &[Point] {
        &self.loop_pts
    }

    pub fn loop_bbox(&self) -> Option<&BBox> {
        self.loop_bbox.as_ref()
    }

    pub fn deck(&self) -> Option<&DeckGroup> {
        self.curves.deck.as_ref()
    }

    /// Winding number of the lifted loop about `z`, with no curve check.
    pub fn lift_value(&self, z: &Point) -> Result<i64> {
        match &self.loop_bbox {
            Some(b) if b.contains(z) => winding_number_points(&self.loop_pts, z),
            _ => Ok(0),
        }
    }

    /// `w(z)` for `z` off both curves.
    pub fn eval(&self, z: &Point) -> Result<i64> {
        if self.curves.on_curves(z) {
            return Err(Error::OnCurve(z.clone()));
        }
        let Some(deck) = &self.curves.deck else {
            return Ok(self.lift_value(z)? + self.offset);
        };
        let Some(bbox) = &self.loop_bbox else {
            return Ok(self.offset);
        };
        let at = BBox {
            min: z.clone(),
            max: z.clone(),
        };
        let mut total = self.offset;
        for g in deck.translates_between(&at, bbox) {
            total += self.lift_value(&(z + &deck.element(&g)))?;
        }
        Ok(total)
    }
}

/// A maximal subarc of one curve between consecutive crossings, given by
/// its open parameter interval (`None` for an unbounded or wrap-around end).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneCell {
    pub curve: CurveId,
    pub lo: Option<Rational>,
    pub hi: Option<Rational>,
    pub sample_param: Rational,
    pub sample: Point,
    /// Tangent of the curve at the sample.
    pub tangent: Point,
    /// `w` just left of the cell minus `w` just right of it.
    pub value: i64,
}

/// The one-chain `ν`: one value per one-cell of α and of β.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneChain {
    cells: Vec<OneCell>,
    alpha_cycle: Option<i64>,
    beta_cycle: Option<i64>,
    alpha_cuts: Vec<Rational>,
    beta_cuts: Vec<Rational>,
}

/// Signed number of times the path with parameter span `(s, e)` passes
/// over parameter `u`, where `cycle` is the loop length if any.
pub fn passes(span: &(Rational, Rational), u: &Rational, cycle: Option<i64>) -> i64 {
    let (s, e) = span;
    match cycle {
        None => {
            if s < u && u < e {
                1
            } else if e < u && u < s {
                -1
            } else {
                0
            }
        }
        Some(n) => {
            let n = rat(n);
            floor_int(&((e - u) / &n)) - floor_int(&((s - u) / &n))
        }
    }
}

fn sample_between(lo: &Rational, hi: &Rational) -> Rational {
    let mid = (lo + hi) / rat(2);
    if mid.is_integer() {
        (mid + hi) / rat(2)
    } else {
        mid
    }
}

/// Cells of one curve cut at the given (sorted, fundamental) parameters.
type CellBounds = (Option<Rational>, Option<Rational>, Rational);

fn cells_of(curve: &PLPath, cuts: &[Rational]) -> Vec<CellBounds> {
    let mut out = Vec::new();
    match curve.cycle_len() {
        Some(n) => {
            if cuts.is_empty() {
                out.push((None, None, ratio(1, 2)));
                return out;
            }
            for w in cuts.windows(2) {
                out.push((
                    Some(w[0].clone()),
                    Some(w[1].clone()),
                    sample_between(&w[0], &w[1]),
                ));
            }
            let last = cuts.last().expect("nonempty").clone();
            let wrap = &cuts[0] + rat(n);
            let s = sample_between(&last, &wrap);
            out.push((Some(last), Some(wrap), s));
        }
        None => {
            let m = curve.segment_count() as i64;
            let open = matches!(curve.kind(), PathKind::Open);
            let (start, end) = if open {
                (Some(rat(0)), Some(rat(m)))
            } else {
                (None, None)
            };
            let mut bounds: Vec<Option<Rational>> = vec![start];
            bounds.extend(cuts.iter().cloned().map(Some));
            bounds.push(end);
            for w in bounds.windows(2) {
                let s = match (&w[0], &w[1]) {
                    (Some(a), Some(b)) => sample_between(a, b),
                    (None, Some(b)) => b - rat(1),
                    (Some(a), None) => a + rat(1),
                    (None, None) => ratio(1, 2),
                };
                out.push((w[0].clone(), w[1].clone(), s));
            }
        }
    }
    out
}

fn reduce_param(u: &Rational, cycle: Option<i64>) -> Rational {
    match cycle {
        Some(n) => rmod(u, &rat(n)),
        None => u.clone(),
    }
}

impl OneChain {
    pub fn of_trace(trace: &Trace) -> Result<OneChain> {
        let curves = trace.curves();
        let mut cells = Vec::new();
        let mut cuts_by = Vec::new();
        for id in [CurveId::Alpha, CurveId::Beta] {
            let curve = curves.curve(id);
            let cycle = curve.cycle_len();
            let xs = curves.crossings_along(id)?;
            let mut cuts: Vec<Rational> = xs
                .iter()
                .map(|p| {
                    let u = match id {
                        CurveId::Alpha => &p.alpha_position,
                        CurveId::Beta => &p.beta_position,
                    };
                    reduce_param(u, cycle)
                })
                .collect();
            cuts.sort();
            cuts.dedup();
            let span = trace.span(id);
            for (lo, hi, s) in cells_of(curve, &cuts) {
                let deg = passes(span, &s, cycle);
                cells.push(OneCell {
                    curve: id,
                    lo,
                    hi,
                    sample: curve.point_at(&s),
                    tangent: curve.tangent_at(&s),
                    sample_param: s,
                    value: match id {
                        CurveId::Alpha => deg,
                        CurveId::Beta => -deg,
                    },
                });
            }
            cuts_by.push(cuts);
        }
        let beta_cuts = cuts_by.pop().expect("two curves");
        let alpha_cuts = cuts_by.pop().expect("two curves");
        Ok(OneChain {
            cells,
            alpha_cycle: curves.alpha.cycle_len(),
            beta_cycle: curves.beta.cycle_len(),
            alpha_cuts,
            beta_cuts,
        })
    }

    pub fn all_cells(&self) -> &[OneCell] {
        &self.cells
    }

    pub fn cells(&self, id: CurveId) -> impl Iterator<Item = &OneCell> {
        self.cells.iter().filter(move |c| c.curve == id)
    }

    /// The raw value `w(left) − w(right)` of a cell.
    pub fn nu(&self, cell: &OneCell) -> i64 {
        cell.value
    }

    /// `ν_α` on an α-cell, `ν_β = −ν|β` on a β-cell (signed passes of `γ_β`).
    pub fn nu_curve(&self, cell: &OneCell) -> i64 {
        match cell.curve {
            CurveId::Alpha => cell.value,
            CurveId::Beta => -cell.value,
        }
    }

    pub fn cells_mut(&mut self) -> &mut [OneCell] {
        &mut self.cells
    }

    fn cycle(&self, id: CurveId) -> Option<i64> {
        match id {
            CurveId::Alpha => self.alpha_cycle,
            CurveId::Beta => self.beta_cycle,
        }
    }

    fn cuts(&self, id: CurveId) -> &[Rational] {
        match id {
            CurveId::Alpha => &self.alpha_cuts,
            CurveId::Beta => &self.beta_cuts,
        }
    }

    /// Raw value at curve parameter `u`; `None` exactly at a crossing.
    pub fn value_at(&self, id: CurveId, u: &Rational) -> Option<i64> {
        let cycle = self.cycle(id);
        let mut u = reduce_param(u, cycle);
        let cuts = self.cuts(id);
        if cuts.binary_search(&u).is_ok() {
            return None;
        }
        if let (Some(n), Some(first)) = (cycle, cuts.first()) {
            if &u < first {
                u += rat(n);
            }
        }
        self.cells(id)
            .find(|c| {
                c.lo.as_ref().is_none_or(|lo| lo < &u) && c.hi.as_ref().is_none_or(|hi| &u < hi)
            })
            .map(|c| c.value)
    }
}

pub fn boundary_one_chain(trace: &Trace) -> Result<OneChain> {
    OneChain::of_trace(trace)
}

/// Outcome of checking `w(left) − w(right) = ν` on one cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellCheck {
    pub curve: CurveId,
    pub sample: Point,
    pub expected: i64,
    pub observed: i64,
}

impl CellCheck {
    pub fn passed(&self) -> bool {
        self.expected == self.observed
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryReport {
    pub checks: Vec<CellCheck>,
}

impl BoundaryReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CellCheck::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CellCheck> {
        self.checks.iter().filter(|c| !c.passed())
    }
}

/// Compares `ν` with the jump of `w` across every one-cell.
pub fn verify_boundary_with(trace: &Trace, nu: &OneChain) -> Result<BoundaryReport> {
    let w = degree_two_chain(trace)?;
    let curves = trace.curves();
    let mut checks = Vec::new();
    for cell in nu.all_cells() {
        let z = &cell.sample;
        let n = cell.tangent.perp();
        let r = curves.clearance(z)?;
        let eps = r / (rat(4) * n.l1());
        let step = n.scale(&eps);
        let left = w.eval(&(z + &step))?;
        let right = w.eval(&(z - &step))?;
        checks.push(CellCheck {
            curve: cell.curve,
            sample: z.clone(),
            expected: cell.value,
            observed: left - right,
        });
    }
    Ok(BoundaryReport { checks })
}

pub fn verify_boundary(trace: &Trace) -> Result<BoundaryReport> {
    verify_boundary_with(trace, &OneChain::of_trace(trace)?)
}

/// `w` rebuilt from `ν` and its value at one base point.
#[derive(Clone, Debug)]
pub struct Reconstruction {
    nu: OneChain,
    curves: CurveSet,
    base: Point,
    base_value: i64,
}

pub fn reconstruct_w_from_nu(
    nu: &OneChain,
    curves: &CurveSet,
    base: &Point,
    base_value: i64,
) -> Result<Reconstruction> {
    if curves.on_curves(base) {
        return Err(Error::OnCurve(base.clone()));
    }
    Ok(Reconstruction {
        nu: nu.clone(),
        curves: curves.clone(),
        base: base.clone(),
        base_value,
    })
}

impl Reconstruction {
    /// Total jump of `w` along the segment `a -> b`.
    fn jump(&self, a: &Point, b: &Point) -> Result<i64> {
        let seg = Piece::segment(a, b, 0, CurveId::Alpha);
        let window = BBox::of_points([a, b]).expect("two points").expand(&rat(1));
        let mut total = 0;
        for p in self.curves.pieces_near(&window) {
            let hit = intersect_pieces(&seg, &p)
                .map_err(|_| Error::PathDegenerate(a.clone(), b.clone()))?;
            if let Some((_, s)) = hit {
                let u = p.param(&s);
                let v = self
                    .nu
                    .value_at(p.curve, &u)
                    .ok_or_else(|| Error::PathDegenerate(a.clone(), b.clone()))?;
                if p.dir.cross(&seg.dir).is_positive() {
                    total += v;
                } else {
                    total -= v;
                }
            }
        }
        Ok(total)
    }

    fn along(&self, via: &[Point], z: &Point) -> Result<i64> {
        let mut pts = vec![self.base.clone()];
        pts.extend(via.iter().cloned());
        pts.push(z.clone());
        let mut total = self.base_value;
        for w in pts.windows(2) {
            if w[0] != w[1] {
                total += self.jump(&w[0], &w[1])?;
            }
        }
        Ok(total)
    }

    fn detours(&self, z: &Point) -> impl Iterator<Item = Point> + '_ {
        let mid = (&self.base + z).scale(&ratio(1, 2));
        let d = z - &self.base;
        let normal = if d.is_zero() {
            Point::from_ints(1, 0)
        } else {
            d.perp()
        };
        (1..64i64).map(move |k| {
            let s = ratio(if k % 2 == 0 { k } else { -k }, 7 + k);
            let jitter = Point::new(ratio(k, 997), ratio(k * k % 13, 1009));
            &(&mid + &normal.scale(&s)) + &jitter
        })
    }

    /// `w(z)` computed along two different paths; they must agree.
    pub fn eval(&self, z: &Point) -> Result<i64> {
        if self.curves.on_curves(z) {
            return Err(Error::OnCurve(z.clone()));
        }
        let mut values = Vec::new();
        if let Ok(v) = self.along(&[], z) {
            values.push(v);
        }
        for m in self.detours(z) {
            if values.len() == 2 {
                break;
            }
            if self.curves.on_curves(&m) {
                continue;
            }
            if let Ok(v) = self.along(&[m], z) {
                values.push(v);
            }
        }
        match values.as_slice() {
            [a, b] if a == b => Ok(*a),
            [_, _] => Err(Error::PathDependent(z.clone())),
            _ => Err(Error::PathDegenerate(self.base.clone(), z.clone())),
        }
    }

    /// Signed sum of `ν` crossed along a closed polygon; zero for a one-chain
    /// that is a boundary.
    pub fn circulation(&self, polygon: &[Point]) -> Result<i64> {
        let n = polygon.len();
        let mut total = 0;
        for i in 0..n {
            total += self.jump(&polygon[i], &polygon[(i + 1) % n])?;
        }
        Ok(total)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{constant_trace, half_disc};
    use crate::trace::{make_trace, PathSpec, Surface};

    fn pt(x: i64, y: i64) -> Point {
        Point::from_ints(x, y)
    }

    #[test]
    fn half_disc_w() {
        let t = half_disc();
        let w = degree_two_chain(&t).unwrap();
        assert_eq!(w.eval(&Point::new(rat(0), ratio(1, 2))).unwrap(), 1);
        assert_eq!(w.eval(&Point::new(rat(0), ratio(-1, 2))).unwrap(), 0);
        assert_eq!(w.lift_value(&pt(3, 0)).unwrap(), 0);
        assert_eq!(w.eval(&pt(3, 1)).unwrap(), 0);
        assert_eq!(w.eval(&pt(3, 0)), Err(Error::OnCurve(pt(3, 0))));
        assert_eq!(w.eval(&pt(0, 0)), Err(Error::OnCurve(pt(0, 0))));
    }

    #[test]
    fn constant_trace_has_zero_w() {
        let t = constant_trace();
        let w = degree_two_chain(&t).unwrap();
        assert_eq!(w.eval(&Point::new(rat(0), ratio(1, 2))).unwrap(), 0);
        let nu = boundary_one_chain(&t).unwrap();
        assert!(nu.all_cells().iter().all(|c| c.value == 0));
    }

    #[test]
    fn half_disc_nu() {
        let t = half_disc();
        let nu = boundary_one_chain(&t).unwrap();
        let alpha: Vec<i64> = nu.cells(CurveId::Alpha).map(|c| c.value).collect();
        assert_eq!(alpha, vec![0, 1, 0]);
        let upper = nu
            .cells(CurveId::Beta)
            .find(|c| c.sample.y.is_positive())
            .unwrap();
        assert_eq!(nu.nu(upper), 1);
        assert_eq!(nu.nu_curve(upper), -1);
        let lower = nu
            .cells(CurveId::Beta)
            .find(|c| c.sample.y.is_negative())
            .unwrap();
        assert_eq!(nu.nu(lower), 0);
    }

    #[test]
    fn extra_loop_adds_one_everywhere() {
        let alpha = PLPath::new(
            vec![pt(-3, -3), pt(3, -3), pt(3, 3), pt(-3, 3)],
            PathKind::Closed,
        )
        .unwrap();
        let beta = PLPath::new(
            vec![pt(-5, -1), pt(5, -1), pt(5, 1), pt(-5, 1)],
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
        let build = |loops| {
            make_trace(
                Surface::Plane,
                alpha.clone(),
                beta.clone(),
                &xs[0].location,
                &xs[1].location,
                PathSpec::new(crate::trace::Direction::Forward, loops),
                PathSpec::forward(),
                0,
            )
            .unwrap()
        };
        let a = boundary_one_chain(&build(0)).unwrap();
        let b = boundary_one_chain(&build(1)).unwrap();
        for (ca, cb) in a.cells(CurveId::Alpha).zip(b.cells(CurveId::Alpha)) {
            assert_eq!(cb.value, ca.value + 1);
        }
        assert!(verify_boundary(&build(1)).unwrap().passed());
    }

    #[test]
    fn boundary_relation_and_fault_detection() {
        let t = half_disc();
        assert!(verify_boundary(&t).unwrap().passed());
        let mut nu = boundary_one_chain(&t).unwrap();
        nu.cells_mut()[1].value += 1;
        let report = verify_boundary_with(&t, &nu).unwrap();
        assert_eq!(report.failures().count(), 1);
        assert_eq!(
            report.failures().next().unwrap().sample,
            nu.all_cells()[1].sample
        );
    }

    #[test]
    fn reconstruction() {
        let t = half_disc();
        let nu = boundary_one_chain(&t).unwrap();
        let r = reconstruct_w_from_nu(&nu, t.curves(), &pt(3, 1), 0).unwrap();
        assert_eq!(r.eval(&Point::new(rat(0), ratio(1, 2))).unwrap(), 1);
        let r7 = reconstruct_w_from_nu(&nu, t.curves(), &pt(3, 1), 7).unwrap();
        assert_eq!(r7.eval(&Point::new(rat(0), ratio(1, 2))).unwrap(), 8);
        let square = [pt(-2, -2), pt(2, -3), pt(3, 2), pt(-3, 3)];
        assert_eq!(r.circulation(&square).unwrap(), 0);

        let c = constant_trace();
        let zero = boundary_one_chain(&c).unwrap();
        let r0 = reconstruct_w_from_nu(&zero, c.curves(), &pt(3, 1), 0).unwrap();
        assert_eq!(r0.eval(&Point::new(rat(0), ratio(1, 2))).unwrap(), 0);
    }

    #[test]
    fn passes_counts_lifts() {
        let span = (ratio(1, 2), rat(20) + ratio(1, 2));
        assert_eq!(passes(&span, &rat(3), Some(8)), 3);
        assert_eq!(passes(&span, &rat(7), Some(8)), 2);
        let back = (span.1.clone(), span.0.clone());
        assert_eq!(passes(&back, &rat(3), Some(8)), -3);
        assert_eq!(passes(&(rat(0), rat(2)), &rat(1), None), 1);
    }
}
