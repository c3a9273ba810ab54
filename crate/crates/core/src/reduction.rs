//! Crossing words of an arc `B` against the real line, the next-crossing
//! map `f`, removal of bigons, and the four-case classification.

use std::collections::BTreeSet;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::geometry::{rat, sign, CurveId, PathKind, Rational};
use crate::trace::{arc_condition, ArcCondition, Surface, Trace};

/// One point of `B ∩ ℝ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Crossing {
    pub position: Rational,
    /// Intersection index of (α, β) at the point, for β's own orientation.
    pub sign: i8,
    /// Whether `B`, oriented from x to y, points into the upper half plane.
    pub up: bool,
}

/// `B ∩ ℝ` sorted by position, with the order in which `B` visits it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossingWord {
    crossings: Vec<Crossing>,
    traversal: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Case {
    One,
    Two,
    Three,
    Four,
}

impl Case {
    pub fn number(self) -> u8 {
        match self {
            Case::One => 1,
            Case::Two => 2,
            Case::Three => 3,
            Case::Four => 4,
        }
    }
}

impl CrossingWord {
    /// Word from positions listed in the order `B` visits them, starting at
    /// x and ending at y, with `B` leaving x upwards iff `first_up`.
    /// Directions alternate along `B`.
    pub fn from_b_order(positions: &[Rational], first_up: bool) -> Result<Self> {
        let ups: Vec<bool> = (0..positions.len())
            .map(|i| first_up == (i % 2 == 0))
            .collect();
        Self::from_parts(positions, &ups)
    }

    fn from_parts(positions: &[Rational], ups: &[bool]) -> Result<Self> {
        if positions.len() < 2 {
            return Err(Error::NotNormalized("a crossing word needs x and y".into()));
        }
        let mut order: Vec<usize> = (0..positions.len()).collect();
        order.sort_by(|&a, &b| positions[a].cmp(&positions[b]));
        if order.windows(2).any(|w| positions[w[0]] == positions[w[1]]) {
            return Err(Error::NotNormalized("repeated crossing position".into()));
        }
        let mut rank = vec![0; positions.len()];
        for (r, &i) in order.iter().enumerate() {
            rank[i] = r;
        }
        let crossings = order
            .iter()
            .map(|&i| Crossing {
                position: positions[i].clone(),
                sign: if ups[i] { 1 } else { -1 },
                up: ups[i],
            })
            .collect();
        Ok(CrossingWord {
            crossings,
            traversal: rank,
        })
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    /// Indices into [`crossings`](Self::crossings) in the order visited by `B`.
    pub fn traversal(&self) -> &[usize] {
        &self.traversal
    }

    pub fn len(&self) -> usize {
        self.crossings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.crossings.is_empty()
    }

    pub fn x_index(&self) -> usize {
        self.traversal[0]
    }

    pub fn y_index(&self) -> usize {
        *self.traversal.last().expect("nonempty word")
    }

    pub fn x(&self) -> &Rational {
        &self.crossings[self.x_index()].position
    }

    pub fn y(&self) -> &Rational {
        &self.crossings[self.y_index()].position
    }

    /// Positions in `B`-order.
    pub fn b_positions(&self) -> Vec<Rational> {
        self.traversal
            .iter()
            .map(|&i| self.crossings[i].position.clone())
            .collect()
    }

    /// Directions (`true` = up) in `B`-order.
    pub fn b_ups(&self) -> Vec<bool> {
        self.traversal
            .iter()
            .map(|&i| self.crossings[i].up)
            .collect()
    }

    /// The next-crossing map as indices into the sorted crossings.
    pub fn f(&self, i: usize) -> Option<usize> {
        let k = self.traversal.iter().position(|&j| j == i)?;
        self.traversal.get(k + 1).copied()
    }

    /// Which of the open intervals `(−∞,x)`, `(x,y)`, `(y,∞)` contains `p`.
    fn interval(&self, p: &Rational) -> Option<u8> {
        let (x, y) = (self.x(), self.y());
        let (lo, hi) = if x < y { (x, y) } else { (y, x) };
        if p < lo {
            Some(0)
        } else if lo < p && p < hi {
            Some(1)
        } else if p > hi {
            Some(2)
        } else {
            None
        }
    }

    /// No consecutive pair `(z, f(z))` lies in a single interval.
    pub fn is_reduced(&self) -> bool {
        self.b_positions().windows(2).all(|w| {
            let a = self.interval(&w[0]);
            a.is_none() || a != self.interval(&w[1])
        })
    }

    /// Sum of the intersection indices of ℝ and `B` over all crossings.
    pub fn index_sum(&self) -> i64 {
        self.crossings
            .iter()
            .map(|c| if c.up { 1 } else { -1 })
            .sum()
    }

    pub fn eps_x(&self) -> i8 {
        if self.crossings[self.x_index()].up {
            1
        } else {
            -1
        }
    }

    pub fn eps_y(&self) -> i8 {
        if self.crossings[self.y_index()].up {
            1
        } else {
            -1
        }
    }

    /// `k_x`: sum of the indices strictly left of x (for x < y).
    pub fn k_x(&self) -> i64 {
        let xi = self.x_index();
        self.crossings[..xi]
            .iter()
            .map(|c| if c.up { 1 } else { -1 })
            .sum()
    }

    /// `k_y`: minus the sum of the indices strictly right of y (for x < y).
    pub fn k_y(&self) -> i64 {
        let yi = self.y_index();
        -self.crossings[yi + 1..]
            .iter()
            .map(|c| if c.up { 1 } else { -1 })
            .sum::<i64>()
    }

    /// Arcs of `B` between consecutive crossings as `(lo, hi, upper)` in
    /// sorted-index coordinates.
    pub fn arcs(&self) -> Vec<(usize, usize, bool)> {
        self.traversal
            .windows(2)
            .map(|w| {
                let upper = self.crossings[w[0]].up;
                (w[0].min(w[1]), w[0].max(w[1]), upper)
            })
            .collect()
    }

    /// True when the arcs in each half plane are pairwise nested or
    /// disjoint, so that `B` can be drawn as an embedded arc.
    pub fn is_embeddable(&self) -> bool {
        let arcs = self.arcs();
        for (i, a) in arcs.iter().enumerate() {
            for b in &arcs[i + 1..] {
                if a.2 != b.2 {
                    continue;
                }
                let crossing =
                    (a.0 < b.0 && b.0 < a.1 && a.1 < b.1) || (b.0 < a.0 && a.0 < b.1 && b.1 < a.1);
                if crossing || a.0 == b.0 || a.1 == b.1 || a.0 == b.1 || a.1 == b.0 {
                    return false;
                }
            }
        }
        true
    }

    /// Removes the pair at `B`-order indices `k, k + 1`.
    fn remove_pair(&self, k: usize) -> CrossingWord {
        let mut pos = self.b_positions();
        let mut ups = self.b_ups();
        pos.drain(k..k + 2);
        ups.drain(k..k + 2);
        let mut w = Self::from_parts(&pos, &ups).expect("subword of a valid word");
        let keep: Vec<&Crossing> = self
            .crossings
            .iter()
            .filter(|c| pos.contains(&c.position))
            .collect();
        for (c, orig) in w.crossings.iter_mut().zip(keep) {
            c.sign = orig.sign;
        }
        w
    }

    /// Repeatedly removes innermost bigons `(z, f(z))` with both ends in the
    /// same interval until the word is reduced.
    pub fn reduce(&self) -> CrossingWord {
        let mut word = self.clone();
        'outer: loop {
            let pos = word.b_positions();
            let m = pos.len();
            for k in 1..m.saturating_sub(2) {
                let (a, b) = (&pos[k], &pos[k + 1]);
                let ia = word.interval(a);
                if ia.is_none() || ia != word.interval(b) {
                    continue;
                }
                let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                let empty = !pos.iter().any(|p| lo < p && p < hi);
                if empty {
                    word = word.remove_pair(k);
                    continue 'outer;
                }
            }
            return word;
        }
    }

    /// Cases 1 to 4 satisfied by a reduced word.
    pub fn classify(&self) -> Result<BTreeSet<Case>> {
        if !self.is_reduced() {
            return Err(Error::NotReduced);
        }
        let (x, y) = (self.x(), self.y());
        let (lo, hi) = if x < y { (x, y) } else { (y, x) };
        let yi = self.y_index();
        let inside = |c: &Crossing| lo <= &c.position && &c.position <= hi;
        let forward = |up: bool| {
            (0..self.len())
                .filter(|&i| i != yi && self.crossings[i].up == up)
                .all(|i| self.f(i).is_some_and(|j| j > i))
        };
        let mut cases = BTreeSet::new();
        if forward(true) {
            cases.insert(Case::One);
        }
        if self.crossings.iter().filter(|c| !c.up).all(inside) {
            cases.insert(Case::Two);
        }
        if forward(false) {
            cases.insert(Case::Three);
        }
        if self.crossings.iter().filter(|c| c.up).all(inside) {
            cases.insert(Case::Four);
        }
        Ok(cases)
    }

    /// Mirror image under complex conjugation: every direction flips.
    pub fn conjugate(&self) -> CrossingWord {
        let mut w = self.clone();
        for c in &mut w.crossings {
            c.up = !c.up;
            c.sign = -c.sign;
        }
        w
    }

    /// Text form: one `position up|down` line per crossing in `B`-order.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for &i in &self.traversal {
            let c = &self.crossings[i];
            s.push_str(&crate::geometry::fmt_rational(&c.position));
            s.push_str(if c.up { " up\n" } else { " down\n" });
        }
        s
    }

    pub fn parse(text: &str) -> Result<CrossingWord> {
        let mut pos = Vec::new();
        let mut ups = Vec::new();
        for (ln, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |column: usize, message: &str| Error::Parse {
                line: ln + 1,
                column,
                message: message.into(),
            };
            let mut parts = line.split_whitespace();
            let p = parts.next().ok_or_else(|| err(1, "missing position"))?;
            pos.push(crate::format::parse_rational(p).ok_or_else(|| err(1, "bad rational"))?);
            let col = line.find(char::is_whitespace).unwrap_or(line.len()) + 2;
            match parts.next() {
                Some("up") => ups.push(true),
                Some("down") => ups.push(false),
                _ => return Err(err(col, "expected up or down")),
            }
            if parts.next().is_some() {
                return Err(err(col, "trailing input"));
            }
        }
        let w = Self::from_parts(&pos, &ups)?;
        if ups.windows(2).any(|u| u[0] == u[1]) {
            return Err(Error::NotNormalized(
                "directions must alternate along B".into(),
            ));
        }
        Ok(w)
    }
}

/// Checks that a trace is a planar arc-condition trace with α the x-axis
/// oriented to the right and x < y.
pub fn check_normalized(trace: &Trace) -> Result<()> {
    if *trace.surface() != Surface::Plane {
        return Err(Error::NotNormalized(format!(
            "surface is the {}",
            trace.surface().name()
        )));
    }
    let alpha = trace.alpha();
    let on_axis = alpha.vertices().iter().all(|v| v.y.is_zero());
    let increasing = alpha.vertices().windows(2).all(|w| w[0].x < w[1].x);
    if *alpha.kind() != PathKind::Line || !on_axis || !increasing {
        return Err(Error::NotNormalized(
            "alpha must be the x-axis oriented to the right".into(),
        ));
    }
    if let ArcCondition::Violated(r) = arc_condition(trace)? {
        return Err(Error::ArcConditionViolated(r));
    }
    let (s, e) = trace.alpha_span();
    if e <= s {
        return Err(Error::NotNormalized("x must lie left of y".into()));
    }
    Ok(())
}

/// `B ∩ ℝ` of a normalized arc-condition trace.
pub fn crossing_profile(trace: &Trace) -> Result<CrossingWord> {
    check_normalized(trace)?;
    let beta = trace.beta();
    let (s, e) = trace.beta_span().clone();
    let forward = e > s;
    let (lo, hi) = if forward { (&s, &e) } else { (&e, &s) };
    let mut found: Vec<(Rational, Rational, i8, bool)> = Vec::new();
    for c in trace.curves().crossings_along(CurveId::Beta)? {
        let mut u = c.beta_position.clone();
        if let Some(n) = beta.cycle_len() {
            let n = rat(n);
            u = lo + crate::geometry::rmod(&(&u - lo), &n);
        }
        if &u < lo || &u > hi {
            continue;
        }
        let dy = sign(&beta.tangent_at(&u).y);
        let up = (dy > 0) == forward;
        found.push((u, c.location.x.clone(), c.sign, up));
    }
    found.sort_by(|a, b| a.0.cmp(&b.0));
    if !forward {
        found.reverse();
    }
    let pos: Vec<Rational> = found.iter().map(|f| f.1.clone()).collect();
    let ups: Vec<bool> = found.iter().map(|f| f.3).collect();
    let mut word = CrossingWord::from_parts(&pos, &ups)?;
    for c in &mut word.crossings {
        c.sign = found
            .iter()
            .find(|f| f.1 == c.position)
            .map(|f| f.2)
            .expect("crossing present");
    }
    Ok(word)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::half_disc;

    fn word(pos: &[i64], first_up: bool) -> CrossingWord {
        let p: Vec<Rational> = pos.iter().map(|&v| rat(v)).collect();
        CrossingWord::from_b_order(&p, first_up).unwrap()
    }

    #[test]
    fn half_disc_profile() {
        let w = crossing_profile(&half_disc()).unwrap();
        assert_eq!(w.len(), 2);
        assert_eq!(w.x(), &rat(-1));
        assert_eq!(w.y(), &rat(1));
        assert!(w.crossings()[0].up);
        assert!(!w.crossings()[1].up);
        assert_eq!(w.f(w.x_index()), Some(w.y_index()));
        assert!(w.is_reduced());
        assert!(w.classify().unwrap().contains(&Case::One));
    }

    #[test]
    fn f_walks_from_x_to_y() {
        let w = word(&[0, 5, 3, 10], true);
        let mut i = w.x_index();
        for _ in 0..w.len() - 1 {
            i = w.f(i).unwrap();
        }
        assert_eq!(i, w.y_index());
    }

    #[test]
    fn removes_back_and_forth_pair() {
        // x=0 up, over to 3 (down), under to 4 (up), over to 10 (down) = y.
        let w = word(&[0, 3, 4, 10], true);
        assert!(w.is_embeddable());
        assert!(!w.is_reduced());
        let r = w.reduce();
        assert_eq!(r.b_positions(), vec![rat(0), rat(10)]);
        assert!(r.is_reduced());
        assert_eq!(r.reduce(), r);
        assert_eq!(r.classify().unwrap().len(), 4);
    }

    #[test]
    fn reduced_word_is_a_fixpoint() {
        // x=0 up, over to 20, under back to 5, over to y=10.
        let w = word(&[0, 20, 5, 10], true);
        assert!(w.is_embeddable());
        assert!(w.is_reduced());
        assert_eq!(w.reduce(), w);
    }

    #[test]
    fn classifies_outer_down_arc() {
        let w = word(&[0, 20, 5, 10], true);
        let cases = w.classify().unwrap();
        assert!(cases.contains(&Case::One));
        assert!(cases.contains(&Case::Four));
        assert!(!cases.contains(&Case::Two));
        assert_eq!(
            word(&[0, 3, 4, 10], true).classify(),
            Err(Error::NotReduced)
        );
    }

    #[test]
    fn text_round_trip() {
        let w = word(&[0, 20, 5, 10], true);
        assert_eq!(CrossingWord::parse(&w.to_text()).unwrap(), w);
        assert!(matches!(
            CrossingWord::parse("0 up\n1 sideways\n"),
            Err(Error::Parse { line: 2, .. })
        ));
    }
}
