//! Four independent computations of the Viterbo–Maslov index of a trace,
//! and the degree shift on the sphere.

use num_traits::{Signed, Zero};

use crate::chains::degree_two_chain;
use crate::error::{Error, Result};
use crate::geometry::{rat, sign, CurveId, Point, Rational};
use crate::reduction::{check_normalized, crossing_profile};
use crate::trace::{m_value, Surface, Trace};

/// `μ = (m_x + m_y) / 2`.
pub fn maslov_via_trace_formula(trace: &Trace) -> Result<i64> {
    let mx = m_value(trace, &trace.x().location)?;
    let my = m_value(trace, &trace.y().location)?;
    let total = mx + my;
    if total % 2 != 0 {
        return Err(Error::ParityViolation(total));
    }
    Ok(total / 2)
}

/// The numbers entering the arc formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ArcInvariants {
    pub k_x: i64,
    pub k_y: i64,
    pub eps_x: i8,
    pub eps_y: i8,
}

impl ArcInvariants {
    pub fn maslov(&self) -> i64 {
        2 * self.k_x + 2 * self.k_y + (self.eps_x as i64 - self.eps_y as i64) / 2
    }
}

pub fn arc_invariants(trace: &Trace) -> Result<ArcInvariants> {
    check_normalized(trace)?;
    let x = trace.x().location.x.clone();
    let y = trace.y().location.x.clone();
    let crossings = trace.curves().crossings_along(CurveId::Alpha)?;
    let positions: Vec<Rational> = crossings.iter().map(|c| c.location.x.clone()).collect();
    let eval = degree_two_chain(trace)?;

    let left = positions.iter().filter(|p| **p < x).max();
    let dx = left.map_or(rat(1), |p| (&x - p) / rat(2));
    let right = positions.iter().filter(|p| **p > y).min();
    let dy = right.map_or(rat(1), |p| (p - &y) / rat(2));
    let k_x = eval.lift_value(&Point::new(&x - dx, Rational::zero()))?;
    let k_y = eval.lift_value(&Point::new(&y + dy, Rational::zero()))?;

    let (s, e) = trace.beta_span();
    let along = if e > s { 1 } else { -1 };
    let eps = |u: &Rational| sign(&trace.beta().tangent_at(u).y) * along;
    Ok(ArcInvariants {
        k_x,
        k_y,
        eps_x: eps(s),
        eps_y: eps(e),
    })
}

/// `μ = 2k_x + 2k_y + (ε_x − ε_y) / 2`.
pub fn maslov_via_arc_formula(trace: &Trace) -> Result<i64> {
    Ok(arc_invariants(trace)?.maslov())
}

/// A loop of direction vectors standing for a loop of lines in ℝP¹.
/// Consecutive vectors differ by a rotation of magnitude less than π.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RPPath {
    samples: Vec<Point>,
}

/// Half-plane class: 0 for angles in `[0, π)`, 1 for `[π, 2π)`.
fn half_class(v: &Point) -> u8 {
    if v.y.is_positive() || (v.y.is_zero() && v.x.is_positive()) {
        0
    } else {
        1
    }
}

impl RPPath {
    pub fn new(samples: Vec<Point>) -> Self {
        RPPath { samples }
    }

    pub fn samples(&self) -> &[Point] {
        &self.samples
    }

    /// Net rotation in multiples of π, counted by crossings of the
    /// boundary between the two half-plane classes.
    pub fn half_turns(&self) -> Result<i64> {
        let mut n = 0;
        for w in self.samples.windows(2) {
            let (v, u) = (&w[0], &w[1]);
            let c = sign(&v.cross(u));
            if c == 0 {
                if v.dot(u).is_negative() {
                    return Err(Error::NonIntegerDegree);
                }
                continue;
            }
            if half_class(v) != half_class(u) {
                n += c as i64;
            }
        }
        let (first, last) = match (self.samples.first(), self.samples.last()) {
            (Some(f), Some(l)) => (f, l),
            _ => return Ok(0),
        };
        if !first.cross(last).is_zero() {
            return Err(Error::NonIntegerDegree);
        }
        Ok(n)
    }
}

/// Traversal vectors of a path along one curve from `from` to `to`.
fn traversal(trace: &Trace, id: CurveId, from: &Rational, to: &Rational) -> Vec<Point> {
    let curve = trace.curves().curve(id);
    let dirs = curve.path_tangents(from, to);
    if to < from {
        dirs.iter().map(|d| -d).collect()
    } else {
        dirs
    }
}

/// Composite loop: `λ₀`, a counterclockwise turn at y, `λ₁` reversed and a
/// clockwise turn back at x.
pub fn rp_loop(trace: &Trace) -> Result<RPPath> {
    let (sa, ea) = trace.alpha_span();
    let (sb, eb) = trace.beta_span();
    let mut samples = traversal(trace, CurveId::Alpha, sa, ea);
    let back = traversal(trace, CurveId::Beta, eb, sb);

    let a_end = samples.last().expect("nonempty").clone();
    let b_y = &back[0];
    let turn = sign(&a_end.cross(b_y));
    if turn == 0 {
        return Err(Error::EndpointNotTransverse(trace.y().location.clone()));
    }
    let flip = rat(turn as i64);
    samples.extend(back.iter().map(|v| v.scale(&flip)));

    let b_x = samples.last().expect("nonempty").clone();
    let a_x = samples[0].clone();
    let turn = sign(&b_x.cross(&a_x));
    if turn == 0 {
        return Err(Error::EndpointNotTransverse(trace.x().location.clone()));
    }
    samples.push(if turn < 0 { a_x } else { -&a_x });
    Ok(RPPath::new(samples))
}

/// Degree of the composite ℝP¹ loop, plus `4d` on the sphere.
pub fn maslov_direct(trace: &Trace) -> Result<i64> {
    Ok(rp_loop(trace)?.half_turns()? + 4 * trace.offset())
}

/// Peels crossings of `B` with ℝ one at a time using the induction steps,
/// keeping `μ(Λ) = c + s·μ(Λ_current)`.
pub fn maslov_recursive(trace: &Trace) -> Result<i64> {
    let word = crossing_profile(trace)?;
    maslov_of_word(&word.b_positions(), &word.b_ups())
}

/// Recursive index of an arc given by its crossing positions and
/// directions in `B`-order, from x to y with x < y.
pub fn maslov_of_word(positions: &[Rational], ups: &[bool]) -> Result<i64> {
    if positions.len() != ups.len() || positions.len() < 2 {
        return Err(Error::NotNormalized("a crossing word needs x and y".into()));
    }
    let mut p = positions.to_vec();
    let mut u = ups.to_vec();
    let (mut c, mut s) = (0i64, 1i64);
    let mut budget = p.len();
    loop {
        let m = p.len();
        if p[0] >= p[m - 1] {
            return Err(Error::NotNormalized("x must lie left of y".into()));
        }
        if !u[0] {
            s = -s;
            u.iter_mut().for_each(|d| *d = !*d);
        }
        if m == 2 {
            return Ok(c + s);
        }
        if budget == 0 {
            return Err(Error::NonTermination);
        }
        budget -= 1;
        let (x, y, next) = (&p[0], &p[m - 1], &p[1]);
        if next < x {
            c -= s;
            p.remove(0);
            u.remove(0);
        } else if next < y {
            c += s;
            p.remove(0);
            u.remove(0);
        } else {
            c += s;
            s = -s;
            p = p[1..].iter().rev().cloned().collect();
            u = u[1..].iter().rev().map(|d| !d).collect();
        }
    }
}

/// Raises the degree offset of a sphere trace by `d`.
pub fn sphere_shift(trace: &Trace, d: i64) -> Result<Trace> {
    if *trace.surface() != Surface::SpherePlane {
        return Err(Error::UnsupportedSurface(format!(
            "degree shift on the {}",
            trace.surface().name()
        )));
    }
    trace.with_offset(trace.offset() + d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;
    use crate::trace::conjugate;

    fn all_four(t: &Trace) -> [i64; 4] {
        [
            maslov_via_trace_formula(t).unwrap(),
            maslov_via_arc_formula(t).unwrap(),
            maslov_direct(t).unwrap(),
            maslov_recursive(t).unwrap(),
        ]
    }

    #[test]
    fn half_disc_has_index_one() {
        let t = half_disc();
        assert_eq!(all_four(&t), [1; 4]);
        let inv = arc_invariants(&t).unwrap();
        assert_eq!((inv.k_x, inv.k_y, inv.eps_x, inv.eps_y), (0, 0, 1, -1));
    }

    #[test]
    fn conjugate_half_disc_has_index_minus_one() {
        let t = conjugate(&half_disc()).unwrap();
        assert_eq!(all_four(&t), [-1; 4]);
        let inv = arc_invariants(&t).unwrap();
        assert_eq!((inv.eps_x, inv.eps_y), (-1, 1));
    }

    #[test]
    fn constant_trace_has_index_zero() {
        let t = constant_trace();
        assert_eq!(maslov_via_trace_formula(&t).unwrap(), 0);
        assert_eq!(maslov_direct(&t).unwrap(), 0);
        assert!(matches!(
            maslov_via_arc_formula(&t),
            Err(Error::ArcConditionViolated(_))
        ));
    }

    #[test]
    fn circle_closed_forms() {
        for a in -2..=2 {
            assert_eq!(maslov_via_trace_formula(&single_circle(a)).unwrap(), 2 * a);
            assert_eq!(maslov_direct(&single_circle(a)).unwrap(), 2 * a);
            for b in -2..=2 {
                let t = circle_pair(a, b);
                assert_eq!(maslov_via_trace_formula(&t).unwrap(), 2 * a - 2 * b);
                assert_eq!(maslov_direct(&t).unwrap(), 2 * a - 2 * b);
            }
        }
    }

    #[test]
    fn sphere_offset_adds_four_per_degree() {
        let t = half_disc_on_sphere(0);
        let t1 = sphere_shift(&t, 1).unwrap();
        assert_eq!(m_value(&t1, &t1.x().location).unwrap(), 5);
        assert_eq!(maslov_via_trace_formula(&t1).unwrap(), 5);
        assert_eq!(maslov_direct(&t1).unwrap(), 5);
        assert_eq!(sphere_shift(&sphere_shift(&t, -1).unwrap(), 1).unwrap(), t);
        assert!(matches!(
            sphere_shift(&half_disc(), 1),
            Err(Error::UnsupportedSurface(_))
        ));
    }

    #[test]
    fn recursion_steps() {
        let w = |v: &[i64]| v.iter().map(|&k| rat(k)).collect::<Vec<_>>();
        let ups = [true, false, true, false];
        assert_eq!(maslov_of_word(&w(&[0, 3, 4, 10]), &ups).unwrap(), 1);
        assert_eq!(maslov_of_word(&w(&[0, 20, 5, 10]), &ups).unwrap(), 3);
        assert_eq!(maslov_of_word(&w(&[5, 0, 20, 10]), &ups).unwrap(), -3);
    }
}
