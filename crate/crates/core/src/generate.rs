//! Seed-deterministic random traces.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use num_traits::One;

use crate::error::{Error, Result};
use crate::geometry::{rat, ratio, CurveId, PLPath, PathKind, Point, Rational};
use crate::reduction::CrossingWord;
use crate::trace::{make_trace, CurveSet, Direction, PathSpec, Surface, Trace};

const MAX_ATTEMPTS: usize = 200;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Profile {
    PlaneArc,
    PlaneGeneral,
    Annulus,
    Torus,
    Word,
}

impl Profile {
    pub const ALL: [Profile; 5] = [
        Profile::PlaneArc,
        Profile::PlaneGeneral,
        Profile::Annulus,
        Profile::Torus,
        Profile::Word,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Profile::PlaneArc => "plane-arc",
            Profile::PlaneGeneral => "plane-general",
            Profile::Annulus => "annulus",
            Profile::Torus => "torus",
            Profile::Word => "word",
        }
    }

    fn tag(self) -> u64 {
        match self {
            Profile::PlaneArc => 1,
            Profile::PlaneGeneral => 2,
            Profile::Annulus => 3,
            Profile::Torus => 4,
            Profile::Word => 5,
        }
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Profile {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Profile::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| format!("unknown profile '{s}'"))
    }
}

pub fn rng_for(seed: u64, profile: Profile) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(profile.tag());
    rng
}

/// One trace of the given profile, the same for the same seed.
pub fn generate(seed: u64, profile: Profile) -> Result<Trace> {
    let mut rng = rng_for(seed, profile);
    match profile {
        Profile::PlaneArc => plane_arc(&mut rng, 60),
        Profile::Word => {
            let word = random_word(&mut rng, 30)?;
            realize_word(&word)
        }
        Profile::PlaneGeneral => plane_general(&mut rng),
        Profile::Annulus => quotient_trace(&mut rng, false),
        Profile::Torus => quotient_trace(&mut rng, true),
    }
}

/// An embedded walk along ℝ: crossings in visiting order with their ranks
/// in the sorted order, and the side of the first arc.
struct Meander {
    ranks: Vec<usize>,
    first_up: bool,
}

/// Grows a random meander from x. With `periodic`, every crossing stays
/// strictly between x and a fixed right end that closes the walk, and the
/// number of crossings before the end is even.
fn random_meander(rng: &mut ChaCha8Rng, max_crossings: usize, periodic: bool) -> Result<Meander> {
    const END: usize = usize::MAX;
    let max_crossings = max_crossings.max(2);
    for _ in 0..MAX_ATTEMPTS {
        let first_up = rng.gen_bool(0.5);
        let target = if periodic {
            rng.gen_range(2..=max_crossings)
        } else {
            rng.gen_range(1..max_crossings)
        };
        let side = |i: usize| first_up == i.is_multiple_of(2);
        // Sorted list of visiting indices, with END as the right end.
        let mut order: Vec<usize> = vec![0];
        if periodic {
            order.push(END);
        }
        let mut arcs: Vec<(usize, usize)> = Vec::new();
        for count in (1..).take(4 * max_crossings + 8) {
            // Slot `r` sits at `2r`; a new point in gap `g` sits at `2g - 1`.
            let mut slot = vec![0i64; count];
            let mut end_slot = 0;
            for (r, &v) in order.iter().enumerate() {
                if v == END {
                    end_slot = 2 * r as i64;
                } else {
                    slot[v] = 2 * r as i64;
                }
            }
            let at = |v: usize| if v == END { end_slot } else { slot[v] };
            let cur = count - 1;
            let up = side(cur);
            let a = slot[cur];
            let valid = |q: i64| {
                let (lo, hi) = (a.min(q), a.max(q));
                let inside = |v: usize| lo < at(v) && at(v) < hi;
                arcs.iter()
                    .enumerate()
                    .all(|(k, &(s, e))| side(k) != up || inside(s) == inside(e))
            };
            let ranks = |order: &[usize], n: usize| {
                let mut r = vec![0; n];
                for (i, &v) in order.iter().enumerate() {
                    if v != END {
                        r[v] = i;
                    }
                }
                r
            };
            if count >= target {
                if periodic {
                    if count % 2 == 0 && valid(end_slot) {
                        return Ok(Meander {
                            ranks: ranks(&order, count),
                            first_up,
                        });
                    }
                } else {
                    let x = (slot[0] / 2) as usize;
                    let gaps: Vec<usize> = (x + 1..=order.len())
                        .filter(|&g| valid(2 * g as i64 - 1))
                        .collect();
                    if let Some(&g) = gaps.choose(rng) {
                        order.insert(g, count);
                        return Ok(Meander {
                            ranks: ranks(&order, count + 1),
                            first_up,
                        });
                    }
                }
            }
            let slots = if periodic {
                1..order.len()
            } else {
                0..order.len() + 1
            };
            let gaps: Vec<usize> = slots.filter(|&g| valid(2 * g as i64 - 1)).collect();
            let Some(&g) = gaps.choose(rng) else { break };
            order.insert(g, count);
            arcs.push((cur, count));
        }
    }
    Err(Error::GenerationExhausted(MAX_ATTEMPTS))
}

/// Random crossing word of an embedded arc from x to y with x < y.
pub fn random_word(rng: &mut ChaCha8Rng, max_crossings: usize) -> Result<CrossingWord> {
    let m = random_meander(rng, max_crossings, false)?;
    let mut gaps = vec![Rational::from_integer(0.into())];
    for _ in 1..m.ranks.len() {
        let step = ratio(rng.gen_range(1..=6), 2);
        let last = gaps.last().expect("nonempty").clone();
        gaps.push(last + step);
    }
    let positions: Vec<Rational> = m.ranks.iter().map(|&r| gaps[r].clone()).collect();
    CrossingWord::from_b_order(&positions, m.first_up)
}

/// Heights of the arcs between consecutive crossings: one more than the
/// tallest arc nested inside on the same side.
fn arc_heights(positions: &[Rational], first_up: bool) -> Vec<i64> {
    let n = positions.len().saturating_sub(1);
    let arcs: Vec<(Rational, Rational, bool)> = (0..n)
        .map(|i| {
            let (a, b) = (&positions[i], &positions[i + 1]);
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            (lo.clone(), hi.clone(), first_up == i.is_multiple_of(2))
        })
        .collect();
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&i, &j| (&arcs[i].1 - &arcs[i].0).cmp(&(&arcs[j].1 - &arcs[j].0)));
    let mut h = vec![0i64; n];
    for (k, &i) in idx.iter().enumerate() {
        let inner = idx[..k]
            .iter()
            .filter(|&&j| {
                arcs[j].2 == arcs[i].2 && arcs[i].0 <= arcs[j].0 && arcs[j].1 <= arcs[i].1
            })
            .map(|&j| h[j])
            .max()
            .unwrap_or(0);
        h[i] = inner + 1;
    }
    h
}

/// Staircase vertices of the arcs through `positions`: each arc rises
/// vertically, runs horizontally at its height and descends.
fn staircase(positions: &[Rational], first_up: bool) -> Vec<Point> {
    let h = arc_heights(positions, first_up);
    let mut pts = Vec::new();
    for i in 0..h.len() {
        let y = if first_up == i.is_multiple_of(2) {
            rat(h[i])
        } else {
            rat(-h[i])
        };
        pts.push(Point::new(positions[i].clone(), y.clone()));
        pts.push(Point::new(positions[i + 1].clone(), y));
    }
    pts
}

/// Geometric trace whose crossing profile is `word`: α the x-axis, β an
/// open staircase arc from just beyond x to just beyond y.
pub fn realize_word(word: &CrossingWord) -> Result<Trace> {
    realize_word_oriented(word, false)
}

fn realize_word_oriented(word: &CrossingWord, reversed: bool) -> Result<Trace> {
    let positions = word.b_positions();
    if positions[0] >= positions[positions.len() - 1] {
        return Err(Error::NotNormalized("x must lie left of y".into()));
    }
    let first_up = word.b_ups()[0];
    let mut pts = staircase(&positions, first_up);
    let half = ratio(1, 2);
    let start_y = if first_up {
        -half.clone()
    } else {
        half.clone()
    };
    let last_up = first_up == positions.len().is_multiple_of(2);
    let end_y = if last_up { half } else { -half };
    pts.insert(0, Point::new(positions[0].clone(), start_y));
    pts.push(Point::new(positions[positions.len() - 1].clone(), -end_y));
    let gamma_beta = if reversed {
        pts.reverse();
        PathSpec::backward()
    } else {
        PathSpec::forward()
    };
    let beta = PLPath::new(pts, PathKind::Open)?;
    let axis = PLPath::new(
        vec![
            Point::new(
                &positions.iter().min().expect("nonempty").clone() - rat(1),
                rat(0),
            ),
            Point::new(positions.iter().max().expect("nonempty") + rat(1), rat(0)),
        ],
        PathKind::Line,
    )?;
    make_trace(
        Surface::Plane,
        axis,
        beta,
        &Point::new(positions[0].clone(), rat(0)),
        &Point::new(positions[positions.len() - 1].clone(), rat(0)),
        PathSpec::forward(),
        gamma_beta,
        0,
    )
}

/// Normalized arc-condition trace with up to `max_crossings` crossings.
pub fn plane_arc(rng: &mut ChaCha8Rng, max_crossings: usize) -> Result<Trace> {
    let word = random_word(rng, max_crossings)?;
    realize_word_oriented(&word, rng.gen_bool(0.5))
}

/// Rational point at angle about `θ` on the unit circle, via the
/// half-angle tangent rounded to a multiple of 1/64.
fn rational_direction(theta: f64) -> Point {
    let t = ratio(((theta / 2.0).tan() * 64.0).round() as i64, 64);
    let t2 = &t * &t;
    let d = Rational::one() + &t2;
    Point::new((Rational::one() - &t2) / &d, rat(2) * t / d)
}

fn star_polygon(rng: &mut ChaCha8Rng, center: &Point) -> Result<PLPath> {
    let k = rng.gen_range(5..=12);
    let base = rng.gen_range(0.0..std::f64::consts::TAU);
    let step = std::f64::consts::TAU / k as f64;
    let pts: Vec<Point> = (0..k)
        .map(|i| {
            let theta = base + step * (i as f64 + rng.gen_range(-0.3..0.3));
            let theta = (theta + std::f64::consts::PI).rem_euclid(std::f64::consts::TAU)
                - std::f64::consts::PI;
            let r = ratio(rng.gen_range(8..=24), 8);
            center + &rational_direction(theta).scale(&r)
        })
        .collect();
    let path = PLPath::new(pts, PathKind::Closed)?;
    path.check_embedded()?;
    Ok(path)
}

fn random_spec(rng: &mut ChaCha8Rng, same_point: bool) -> PathSpec {
    let loops = rng.gen_range(-1..=1);
    if same_point {
        PathSpec::new(Direction::Stay, loops)
    } else if rng.gen_bool(0.5) {
        PathSpec::new(Direction::Forward, loops)
    } else {
        PathSpec::new(Direction::Backward, loops)
    }
}

/// Pair of star-shaped loops (or a loop against the x-axis) with random
/// endpoints and boundary paths.
pub fn plane_general(rng: &mut ChaCha8Rng) -> Result<Trace> {
    for _ in 0..MAX_ATTEMPTS {
        let c1 = Point::new(
            ratio(rng.gen_range(-8..=8), 8),
            ratio(rng.gen_range(-8..=8), 8),
        );
        let c2 = Point::new(
            ratio(rng.gen_range(-16..=16), 8),
            ratio(rng.gen_range(-16..=16), 8),
        );
        let use_axis = rng.gen_bool(0.25);
        let Ok(beta) = star_polygon(rng, &c2) else {
            continue;
        };
        let alpha = if use_axis {
            PLPath::x_axis()
        } else {
            match star_polygon(rng, &c1) {
                Ok(a) => a,
                Err(_) => continue,
            }
        };
        let curves = CurveSet {
            alpha: alpha.clone(),
            beta: beta.clone(),
            deck: None,
        };
        let Ok(xs) = curves.crossings_along(CurveId::Alpha) else {
            continue;
        };
        if xs.is_empty() {
            continue;
        }
        let x = xs.choose(rng).expect("nonempty").clone();
        let y = xs.choose(rng).expect("nonempty").clone();
        let same = x.location == y.location;
        let ga = if use_axis {
            let d = match x.alpha_position.cmp(&y.alpha_position) {
                std::cmp::Ordering::Less => Direction::Forward,
                std::cmp::Ordering::Greater => Direction::Backward,
                std::cmp::Ordering::Equal => Direction::Stay,
            };
            PathSpec::new(d, 0)
        } else {
            random_spec(rng, same)
        };
        let gb = random_spec(rng, same);
        match make_trace(
            Surface::Plane,
            alpha,
            beta,
            &x.location,
            &y.location,
            ga,
            gb,
            0,
        ) {
            Ok(t) => return Ok(t),
            Err(Error::NonTransverse(_)) | Err(Error::Degenerate(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::GenerationExhausted(MAX_ATTEMPTS))
}

/// Periodic curves for the annulus or torus: α̃ the x-axis and β̃ a
/// periodic meander, both invariant under `(period, 0)`.
pub struct PeriodicPair {
    pub alpha: PLPath,
    pub beta: PLPath,
    pub period: Rational,
    pub max_height: i64,
}

pub fn periodic_pair(rng: &mut ChaCha8Rng, max_crossings: usize) -> Result<PeriodicPair> {
    let m = random_meander(rng, max_crossings, true)?;
    let count = m.ranks.len();
    let mut sorted = vec![ratio(1, 2)];
    for _ in 0..count {
        let step = rat(rng.gen_range(1..=3));
        let last = sorted.last().expect("nonempty").clone();
        sorted.push(last + step);
    }
    let period = &sorted[count] - &sorted[0];
    let mut positions: Vec<Rational> = m.ranks.iter().map(|&r| sorted[r].clone()).collect();
    positions.push(sorted[count].clone());
    let pts = staircase(&positions, m.first_up);
    let max_height = arc_heights(&positions, m.first_up)
        .into_iter()
        .max()
        .unwrap_or(1);
    let pv = Point::new(period.clone(), rat(0));
    Ok(PeriodicPair {
        alpha: PLPath::new(
            vec![Point::origin()],
            PathKind::Periodic { period: pv.clone() },
        )?,
        beta: PLPath::new(pts, PathKind::Periodic { period: pv })?,
        period,
        max_height,
    })
}

/// Trace on `surface` with the given lifted endpoints.
pub fn lifted_trace(
    surface: Surface,
    alpha: PLPath,
    beta: PLPath,
    x: &Point,
    y_lift: &Point,
) -> Result<Trace> {
    let curves = CurveSet {
        alpha,
        beta,
        deck: surface.deck()?,
    };
    let xi = curves
        .crossings_along(CurveId::Alpha)?
        .into_iter()
        .find(|c| c.location == *x)
        .ok_or_else(|| Error::EndpointNotIntersection(x.clone()))?;
    let locate = |id: CurveId| {
        curves
            .curve(id)
            .locate(y_lift)
            .ok_or_else(|| Error::EndpointNotIntersection(y_lift.clone()))
    };
    let ea = locate(CurveId::Alpha)?;
    let eb = locate(CurveId::Beta)?;
    let sa = xi.alpha_position.clone();
    let sb = xi.beta_position.clone();
    Trace::from_spans(surface, curves, xi, (sa, ea), (sb, eb), 0)
}

fn quotient_trace(rng: &mut ChaCha8Rng, torus: bool) -> Result<Trace> {
    let pair = periodic_pair(rng, 12)?;
    let e1 = Point::new(pair.period.clone(), rat(0));
    let surface = if torus {
        let q = ratio(rng.gen_range(0..8), 8) * &pair.period;
        Surface::Torus {
            e1: e1.clone(),
            e2: Point::new(q, rat(2 * pair.max_height + 1)),
        }
    } else {
        Surface::Annulus { period: e1.clone() }
    };
    let curves = CurveSet {
        alpha: pair.alpha.clone(),
        beta: pair.beta.clone(),
        deck: surface.deck()?,
    };
    let xs = curves.crossings_along(CurveId::Alpha)?;
    let x = xs
        .choose(rng)
        .expect("meanders cross the axis")
        .location
        .clone();
    let y = xs
        .choose(rng)
        .expect("meanders cross the axis")
        .location
        .clone();
    let k = rng.gen_range(-1..=2);
    let y_lift = &y + &e1.scale(&rat(k));
    lifted_trace(surface, pair.alpha, pair.beta, &x, &y_lift)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::serialize_trace;
    use crate::reduction::crossing_profile;

    #[test]
    fn deterministic() {
        for p in Profile::ALL {
            let a = serialize_trace(&generate(1, p).unwrap());
            let b = serialize_trace(&generate(1, p).unwrap());
            assert_eq!(a, b, "{p}");
        }
    }

    #[test]
    fn words_round_trip_through_geometry() {
        let mut rng = rng_for(7, Profile::Word);
        for _ in 0..20 {
            let w = random_word(&mut rng, 20).unwrap();
            assert!(w.is_embeddable());
            let t = realize_word(&w).unwrap();
            t.beta().check_embedded().unwrap();
            let back = crossing_profile(&t).unwrap();
            assert_eq!(back.b_positions(), w.b_positions());
            assert_eq!(back.b_ups(), w.b_ups());
        }
    }

    #[test]
    fn periodic_meanders_are_embedded() {
        let mut rng = rng_for(3, Profile::Annulus);
        for _ in 0..10 {
            let pair = periodic_pair(&mut rng, 12).unwrap();
            let n = pair.beta.vertices().len() / 2;
            assert_eq!(n % 2, 0);
        }
    }

    #[test]
    fn profiles_parse() {
        for p in Profile::ALL {
            assert_eq!(p.name().parse::<Profile>().unwrap(), p);
        }
        assert!("disc".parse::<Profile>().is_err());
    }
}
