//! Translation deck groups of the annulus and the torus, lifted traces and
//! the identities relating m-values on the universal cover to the quotient.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::geometry::{
    ceil_int, floor_int, min_feature_distance, rat, winding_number_points, BBox, CurveId, PLPath,
    Piece, Point, Rational,
};
use crate::maslov::maslov_direct;
use crate::trace::Trace;

/// Deck group of `ℂ/⟨p⟩` or `ℂ/⟨e1, e2⟩` acting by translations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeckGroup {
    gens: Vec<Point>,
}

impl DeckGroup {
    pub fn annulus(period: Point) -> Result<Self> {
        if period.is_zero() {
            return Err(Error::InconsistentPeriodicity("zero annulus period".into()));
        }
        Ok(DeckGroup { gens: vec![period] })
    }

    pub fn torus(e1: Point, e2: Point) -> Result<Self> {
        if e1.cross(&e2).is_zero() {
            return Err(Error::InconsistentPeriodicity(
                "torus periods are linearly dependent".into(),
            ));
        }
        Ok(DeckGroup { gens: vec![e1, e2] })
    }

    pub fn generators(&self) -> &[Point] {
        &self.gens
    }

    pub fn rank(&self) -> usize {
        self.gens.len()
    }

    pub fn element(&self, coords: &[i64]) -> Point {
        self.gens
            .iter()
            .zip(coords)
            .fold(Point::origin(), |acc, (g, &k)| &acc + &g.scale(&rat(k)))
    }

    /// Lattice coordinates of `v`, or `None` if `v` is off the span (annulus).
    pub fn coords(&self, v: &Point) -> Option<Vec<Rational>> {
        match self.gens.as_slice() {
            [p] => {
                if !p.cross(v).is_zero() {
                    return None;
                }
                Some(vec![p.dot(v) / p.norm2()])
            }
            [e1, e2] => {
                let det = e1.cross(e2);
                Some(vec![v.cross(e2) / &det, e1.cross(v) / &det])
            }
            _ => unreachable!("deck groups have rank one or two"),
        }
    }

    /// True when `v` is a deck translation.
    pub fn contains(&self, v: &Point) -> bool {
        self.coords(v)
            .is_some_and(|c| c.iter().all(|r| r.is_integer()))
    }

    /// Coordinates of every translation `g` with `from + g` meeting `to`.
    pub fn translates_between(&self, from: &BBox, to: &BBox) -> Vec<Vec<i64>> {
        let d = BBox {
            min: &to.min - &from.max,
            max: &to.max - &from.min,
        };
        self.elements_in(&d)
    }

    /// Coordinates of every translation vector inside the box `d`.
    pub fn elements_in(&self, d: &BBox) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        match self.gens.as_slice() {
            [p] => {
                let mut lo = i64::MIN;
                let mut hi = i64::MAX;
                for (c, dmin, dmax) in [(&p.x, &d.min.x, &d.max.x), (&p.y, &d.min.y, &d.max.y)] {
                    if c.is_zero() {
                        continue;
                    }
                    let a = dmin / c;
                    let b = dmax / c;
                    let (a, b) = if a <= b { (a, b) } else { (b, a) };
                    lo = lo.max(ceil_int(&a));
                    hi = hi.min(floor_int(&b));
                }
                for k in lo..=hi {
                    if d.contains(&p.scale(&rat(k))) {
                        out.push(vec![k]);
                    }
                }
            }
            [_, _] => {
                let cs: Vec<Vec<Rational>> = d
                    .corners()
                    .iter()
                    .map(|c| self.coords(c).expect("torus coordinates"))
                    .collect();
                let range = |i: usize| {
                    let lo = cs.iter().map(|c| c[i].clone()).min().expect("corners");
                    let hi = cs.iter().map(|c| c[i].clone()).max().expect("corners");
                    floor_int(&lo)..=ceil_int(&hi)
                };
                for i in range(0) {
                    for j in range(1) {
                        if d.contains(&self.element(&[i, j])) {
                            out.push(vec![i, j]);
                        }
                    }
                }
            }
            _ => unreachable!("deck groups have rank one or two"),
        }
        out
    }

    /// Multiples `k` of the second generator such that a curve invariant
    /// under the first generator, lying in the strip spanned by `chunk`,
    /// meets `window` after translation by `k * e2`.
    pub fn transverse_shifts(&self, chunk: &BBox, window: &BBox) -> Vec<i64> {
        let [e1, e2] = self.gens.as_slice() else {
            return vec![0];
        };
        let n = e1.perp();
        let project = |b: &BBox| {
            let vals: Vec<Rational> = b.corners().iter().map(|c| c.dot(&n)).collect();
            (
                vals.iter().min().cloned().expect("corners"),
                vals.iter().max().cloned().expect("corners"),
            )
        };
        let (c0, c1) = project(chunk);
        let (w0, w1) = project(window);
        let step = e2.dot(&n);
        let a = (&w0 - &c1) / &step;
        let b = (&w1 - &c0) / &step;
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        (ceil_int(&a)..=floor_int(&b)).collect()
    }
}

/// Lift `Λ̃ = (x̃, ỹ, w̃)` of a quotient trace to the plane, with `w̃` the
/// winding number of the lifted loop `γ̃_α − γ̃_β`.
#[derive(Clone, Debug)]
pub struct LiftedTrace {
    base: Trace,
    deck: DeckGroup,
    loop_pts: Vec<Point>,
    loop_bbox: BBox,
    x_lift: Point,
    y_lift: Point,
}

pub fn lift_trace(trace: &Trace) -> Result<LiftedTrace> {
    let Some(deck) = trace.surface().deck()? else {
        return Err(Error::UnsupportedSurface(format!(
            "lifting from the {}",
            trace.surface().name()
        )));
    };
    let loop_pts = trace.loop_points();
    let x_lift = trace.x().location.clone();
    let y_lift = trace.y().location.clone();
    let mut loop_bbox =
        BBox::of_points(&loop_pts).unwrap_or_else(|| BBox::around(&x_lift, &rat(0)));
    loop_bbox.include(&y_lift);
    Ok(LiftedTrace {
        base: trace.clone(),
        deck,
        loop_pts,
        loop_bbox,
        x_lift,
        y_lift,
    })
}

fn lifted_pieces(curve: &PLPath, id: CurveId, window: &BBox) -> Vec<Piece> {
    if curve.is_periodic() {
        curve.pieces(id, Some(window))
    } else {
        curve.pieces(id, None)
    }
}

impl LiftedTrace {
    pub fn base(&self) -> &Trace {
        &self.base
    }

    pub fn deck(&self) -> &DeckGroup {
        &self.deck
    }

    pub fn x_lift(&self) -> &Point {
        &self.x_lift
    }

    pub fn y_lift(&self) -> &Point {
        &self.y_lift
    }

    pub fn loop_bbox(&self) -> &BBox {
        &self.loop_bbox
    }

    /// `w̃(z)`: winding number of the lifted loop.
    pub fn w_lift(&self, z: &Point) -> Result<i64> {
        if self.loop_pts.len() < 2 || !self.loop_bbox.contains(z) {
            return Ok(0);
        }
        winding_number_points(&self.loop_pts, z)
    }

    /// `m_p(Λ̃)`: the sum of `w̃` over four sectors at `p`. The sectors are
    /// spanned by the tangents of `α̃` and `β̃` where they pass through `p`,
    /// and by independent directions elsewhere, so off both curves this is
    /// `4 w̃(p)`.
    pub fn m_lift(&self, p: &Point) -> Result<i64> {
        let window = BBox::around(p, &rat(1));
        let alpha = lifted_pieces(self.base.alpha(), CurveId::Alpha, &window);
        let beta = lifted_pieces(self.base.beta(), CurveId::Beta, &window);
        let through = |pieces: &[Piece]| -> Result<Option<Point>> {
            if let Some(pc) = pieces.iter().find(|pc| pc.locate_interior(p).is_some()) {
                return Ok(Some(pc.dir.clone()));
            }
            if pieces.iter().any(|pc| pc.locate(p).is_some()) {
                return Err(Error::Degenerate(p.clone()));
            }
            Ok(None)
        };
        let (a, b) = match (through(&alpha)?, through(&beta)?) {
            (Some(a), Some(b)) => (a, b),
            (Some(a), None) => {
                let b = a.perp();
                (a, b)
            }
            (None, Some(b)) => (b.perp(), b),
            (None, None) => (Point::from_ints(1, 0), Point::from_ints(0, 1)),
        };
        if a.cross(&b).is_zero() {
            return Err(Error::NonTransverse(p.clone()));
        }
        let r = min_feature_distance(p, alpha.iter().chain(beta.iter()))?;
        let va = a.scale(&(&r / (rat(4) * a.l1())));
        let vb = b.scale(&(&r / (rat(4) * b.l1())));
        let mut total = 0;
        for v in [&va + &vb, &vb - &va, -&(&va + &vb), &va - &vb] {
            total += self.w_lift(&(p + &v))?;
        }
        Ok(total)
    }

    /// Coordinates of the translations `g` with `p + g` in the loop's
    /// bounding box expanded by one.
    fn near(&self, p: &Point) -> Vec<Vec<i64>> {
        let b = self.loop_bbox.expand(&rat(1));
        self.deck.elements_in(&b.translate(&-p))
    }

    /// Translations `g` for which any of `g x̃`, `g ỹ`, `g⁻¹ x̃`, `g⁻¹ ỹ`
    /// lies near the loop: every other translation has all four m-values 0.
    pub fn translate_range(&self) -> BTreeSet<Vec<i64>> {
        let mut out = BTreeSet::new();
        for p in [&self.x_lift, &self.y_lift] {
            for g in self.near(p) {
                out.insert(g.iter().map(|c| -c).collect());
                out.insert(g);
            }
        }
        out
    }

    /// Translations one generator step outside `range`.
    pub fn shell(&self, range: &BTreeSet<Vec<i64>>) -> BTreeSet<Vec<i64>> {
        let mut out = BTreeSet::new();
        for g in range {
            for i in 0..g.len() {
                for d in [-1, 1] {
                    let mut h = g.clone();
                    h[i] += d;
                    if !range.contains(&h) {
                        out.insert(h);
                    }
                }
            }
        }
        out
    }

    fn at(&self, base: &Point, g: &[i64], inverse: bool) -> Point {
        let v = self.deck.element(g);
        if inverse {
            base - &v
        } else {
            base + &v
        }
    }

    /// The four m-values `m_{g x̃}, m_{g⁻¹ ỹ}, m_{g ỹ}, m_{g⁻¹ x̃}`.
    pub fn m_quad(&self, g: &[i64]) -> Result<[i64; 4]> {
        Ok([
            self.m_lift(&self.at(&self.x_lift, g, false))?,
            self.m_lift(&self.at(&self.y_lift, g, true))?,
            self.m_lift(&self.at(&self.y_lift, g, false))?,
            self.m_lift(&self.at(&self.x_lift, g, true))?,
        ])
    }

    /// Fails with [`Error::TruncationTooSmall`] if any m-value on the
    /// shell around `range` is nonzero.
    pub fn check_shell(&self, range: &BTreeSet<Vec<i64>>) -> Result<()> {
        for g in self.shell(range) {
            if self.m_quad(&g)?.iter().any(|&m| m != 0) {
                return Err(Error::TruncationTooSmall);
            }
        }
        Ok(())
    }

    /// `w(z) = Σ w̃(z̃)` over the preimages of `z`.
    pub fn quotient_w(&self, z: &Point) -> Result<i64> {
        if self.base.curves().on_curves(z) {
            return Err(Error::OnCurve(z.clone()));
        }
        let range: BTreeSet<Vec<i64>> = self.near(z).into_iter().collect();
        for g in self.shell(&range) {
            if self.w_lift(&(z + &self.deck.element(&g)))? != 0 {
                return Err(Error::TruncationTooSmall);
            }
        }
        let mut total = 0;
        for g in &range {
            total += self.w_lift(&(z + &self.deck.element(g)))?;
        }
        Ok(total)
    }

    /// `m_p(Λ) = Σ_g m_{g p̃}(Λ̃)` for a lift `p̃` of a crossing.
    pub fn quotient_m(&self, p: &Point) -> Result<i64> {
        let range: BTreeSet<Vec<i64>> = self.near(p).into_iter().collect();
        for g in self.shell(&range) {
            if self.m_lift(&(p + &self.deck.element(&g)))? != 0 {
                return Err(Error::TruncationTooSmall);
            }
        }
        let mut total = 0;
        for g in &range {
            total += self.m_lift(&(p + &self.deck.element(g)))?;
        }
        Ok(total)
    }

    /// Whether `p` lies on `Ã`, the lifted path `γ̃_α`.
    pub fn on_a(&self, p: &Point) -> bool {
        let (s, e) = self.base.alpha_span();
        let (lo, hi) = if s <= e { (s, e) } else { (e, s) };
        let window = BBox::around(p, &rat(1));
        lifted_pieces(self.base.alpha(), CurveId::Alpha, &window)
            .iter()
            .filter_map(|pc| pc.locate(p).map(|t| pc.param(&t)))
            .any(|u| lo <= &u && &u <= hi)
    }

    /// Whether `Ã` and `g Ã` are disjoint.
    pub fn a_disjoint_from_translate(&self, g: &[i64]) -> bool {
        let v = self.deck.element(g);
        if v.is_zero() {
            return false;
        }
        let alpha = self.base.alpha();
        let (Some(period), Some(n)) = (alpha.period(), alpha.cycle_len()) else {
            return true;
        };
        if !period.cross(&v).is_zero() {
            return true;
        }
        let k = v.dot(period) / period.norm2();
        let (s, e) = self.base.alpha_span();
        (e - s).abs() < k.abs() * rat(n)
    }
}

/// The identities for one deck translation `g ≠ id`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GmCheck {
    pub g: Vec<i64>,
    pub m_gx: i64,
    pub m_ginv_y: i64,
    pub m_gy: i64,
    pub m_ginv_x: i64,
}

impl GmCheck {
    /// `m_{g x̃} + m_{g⁻¹ ỹ} = 0`.
    pub fn sum_vanishes(&self) -> bool {
        self.m_gx + self.m_ginv_y == 0
    }

    /// `m_{g x̃} − m_{g ỹ} = m_{g⁻¹ x̃} − m_{g⁻¹ ỹ}`.
    pub fn comparison_holds(&self) -> bool {
        self.m_gx - self.m_gy == self.m_ginv_x - self.m_ginv_y
    }

    /// The comparison with the right-hand side negated,
    /// `m_{g x̃} − m_{g ỹ} = m_{g⁻¹ ỹ} − m_{g⁻¹ x̃}`. Given the vanishing
    /// sums this holds only when `m_{g x̃} = m_{g ỹ}`.
    pub fn swapped_comparison_holds(&self) -> bool {
        self.m_gx - self.m_gy == self.m_ginv_y - self.m_ginv_x
    }

    pub fn passed(&self) -> bool {
        self.sum_vanishes() && self.comparison_holds()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GmReport {
    pub checks: Vec<GmCheck>,
}

impl GmReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(GmCheck::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &GmCheck> {
        self.checks.iter().filter(|c| !c.passed())
    }
}

/// Checks both identities for every nontrivial translation that can
/// contribute, after confirming the shell around them vanishes.
pub fn verify_gm(lifted: &LiftedTrace) -> Result<GmReport> {
    let range = lifted.translate_range();
    lifted.check_shell(&range)?;
    let mut checks = Vec::new();
    for g in range.iter().filter(|g| g.iter().any(|&c| c != 0)) {
        let [m_gx, m_ginv_y, m_gy, m_ginv_x] = lifted.m_quad(g)?;
        checks.push(GmCheck {
            g: g.clone(),
            m_gx,
            m_ginv_y,
            m_gy,
            m_ginv_x,
        });
    }
    Ok(GmReport { checks })
}

/// For arc-condition lifts: `g x̃ ∈ Ã ⟺ g⁻¹ ỹ ∈ Ã` and `Ã ∩ g Ã = ∅` for
/// every nontrivial `g` in range. Returns the translations that fail.
pub fn arc_lift_failures(lifted: &LiftedTrace) -> Vec<Vec<i64>> {
    lifted
        .translate_range()
        .into_iter()
        .filter(|g| g.iter().any(|&c| c != 0))
        .filter(|g| {
            let gx = lifted.at(&lifted.x_lift, g, false);
            let giy = lifted.at(&lifted.y_lift, g, true);
            lifted.on_a(&gx) != lifted.on_a(&giy) || !lifted.a_disjoint_from_translate(g)
        })
        .collect()
}

/// `μ(Λ) = μ(Λ̃)`, computed from the turning of the lifted paths.
pub fn maslov_quotient(trace: &Trace) -> Result<i64> {
    let lifted = lift_trace(trace)?;
    maslov_direct(lifted.base())
}
