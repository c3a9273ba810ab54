//! Property-suite runner over generated traces.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;

use crate::chains::verify_boundary;
use crate::cover::{arc_lift_failures, lift_trace, maslov_quotient, verify_gm};
use crate::error::Result;
use crate::format::serialize_trace;
use crate::generate::{generate, Profile};
use crate::maslov::{
    maslov_direct, maslov_recursive, maslov_via_arc_formula, maslov_via_trace_formula,
};
use crate::reduction::crossing_profile;
use crate::trace::{arc_condition, conjugate, m_value, ArcCondition, Trace};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Flip the sign of the trace formula, to confirm that the oracles
    /// catch a broken implementation.
    pub inject_fault: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub check: &'static str,
    pub profile: Profile,
    pub seed: u64,
    pub status: Status,
    /// Serialized trace when the check failed.
    pub document: Option<String>,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub results: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(CheckResult::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.results.iter().filter(|r| !r.passed())
    }

    /// `(passed, total)` per check name.
    pub fn tally(&self) -> BTreeMap<(&'static str, &'static str), (usize, usize)> {
        let mut out = BTreeMap::new();
        for r in &self.results {
            let e = out.entry((r.profile.name(), r.check)).or_insert((0, 0));
            e.1 += 1;
            if r.passed() {
                e.0 += 1;
            }
        }
        out
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for ((profile, check), (ok, total)) in self.tally() {
            let mark = if ok == total { "ok" } else { "FAIL" };
            writeln!(f, "{mark:4} {profile:14} {check:24} {ok}/{total}")?;
        }
        for r in self.failures() {
            if let Status::Fail(msg) = &r.status {
                writeln!(
                    f,
                    "\nfailure: {} {} seed {}: {msg}",
                    r.profile, r.check, r.seed
                )?;
            }
            if let Some(doc) = &r.document {
                write!(f, "{doc}")?;
            }
        }
        Ok(())
    }
}

fn trace_formula(t: &Trace, opts: VerifyOptions) -> Result<i64> {
    let mu = maslov_via_trace_formula(t)?;
    Ok(if opts.inject_fault { -mu } else { mu })
}

fn expect_equal(values: &[(&str, Result<i64>)]) -> Status {
    let mut seen = Vec::new();
    for (name, v) in values {
        match v {
            Ok(v) => seen.push(format!("{name}={v}")),
            Err(e) => return Status::Fail(format!("{name}: {e}")),
        }
    }
    let first = values[0].1.as_ref().ok();
    if values.iter().all(|(_, v)| v.as_ref().ok() == first) {
        Status::Pass
    } else {
        Status::Fail(seen.join(" "))
    }
}

fn status_of(r: Result<Status>) -> Status {
    r.unwrap_or_else(|e| Status::Fail(e.to_string()))
}

/// Every check that applies to a trace of the given profile.
pub fn check_trace(
    profile: Profile,
    t: &Trace,
    opts: VerifyOptions,
) -> Vec<(&'static str, Status)> {
    let mut out = Vec::new();
    match profile {
        Profile::PlaneArc | Profile::Word => {
            out.push((
                "four-way agreement",
                expect_equal(&[
                    ("formula", trace_formula(t, opts)),
                    ("arc", maslov_via_arc_formula(t)),
                    ("direct", maslov_direct(t)),
                    ("recursive", maslov_recursive(t)),
                ]),
            ));
            out.push((
                "reduction",
                status_of((|| {
                    let word = crossing_profile(t)?;
                    let reduced = word.reduce();
                    if !reduced.is_reduced() || reduced.reduce() != reduced {
                        return Ok(Status::Fail("reduce is not idempotent".into()));
                    }
                    if reduced.classify()?.is_empty() {
                        return Ok(Status::Fail(format!(
                            "reduced word fits none of the four cases:\n{}",
                            reduced.to_text()
                        )));
                    }
                    let sum = word.index_sum();
                    let half = (word.eps_x() as i64 + word.eps_y() as i64) / 2;
                    Ok(if sum == half {
                        Status::Pass
                    } else {
                        Status::Fail(format!("index sum {sum}, expected {half}"))
                    })
                })()),
            ));
        }
        Profile::PlaneGeneral => {
            out.push((
                "formula = direct",
                expect_equal(&[
                    ("formula", trace_formula(t, opts)),
                    ("direct", maslov_direct(t)),
                ]),
            ));
            out.push((
                "conjugation",
                status_of((|| {
                    let c = conjugate(t)?;
                    Ok(expect_equal(&[
                        ("mu", trace_formula(t, opts).map(|m| -m)),
                        ("mu(conj)", trace_formula(&c, opts)),
                    ]))
                })()),
            ));
            out.push((
                "boundary relation",
                status_of(verify_boundary(t).map(|r| {
                    if r.passed() {
                        Status::Pass
                    } else {
                        Status::Fail(format!("{} one-cells disagree", r.failures().count()))
                    }
                })),
            ));
        }
        Profile::Annulus | Profile::Torus => {
            out.push((
                "quotient formula",
                expect_equal(&[
                    ("formula", trace_formula(t, opts)),
                    ("lift direct", maslov_quotient(t)),
                ]),
            ));
            out.push((
                "deck identities",
                status_of((|| {
                    let lifted = lift_trace(t)?;
                    let report = verify_gm(&lifted)?;
                    if let Some(c) = report.failures().next() {
                        return Ok(Status::Fail(format!("{c:?}")));
                    }
                    let x = &t.x().location;
                    let eq =
                        expect_equal(&[("m_x", m_value(t, x)), ("lift sum", lifted.quotient_m(x))]);
                    if eq != Status::Pass {
                        return Ok(eq);
                    }
                    if let ArcCondition::Satisfied(_) = arc_condition(t)? {
                        let bad = arc_lift_failures(&lifted);
                        if !bad.is_empty() {
                            return Ok(Status::Fail(format!("arc lift fails for {bad:?}")));
                        }
                    }
                    Ok(Status::Pass)
                })()),
            ));
        }
    }
    out
}

/// Runs `n` generated cases per profile starting at `seed`, in parallel.
pub fn run_verify(profiles: &[Profile], n: u64, seed: u64, opts: VerifyOptions) -> VerifyReport {
    let jobs: Vec<(Profile, u64)> = profiles
        .iter()
        .flat_map(|&p| (0..n).map(move |i| (p, seed.wrapping_add(i))))
        .collect();
    let mut results: Vec<CheckResult> = jobs
        .par_iter()
        .flat_map_iter(|&(profile, s)| {
            let (checks, doc) = match generate(s, profile) {
                Ok(t) => (check_trace(profile, &t, opts), Some(serialize_trace(&t))),
                Err(e) => (vec![("generate", Status::Fail(e.to_string()))], None),
            };
            checks.into_iter().map(move |(check, status)| CheckResult {
                check,
                profile,
                seed: s,
                document: if status == Status::Pass {
                    None
                } else {
                    doc.clone()
                },
                status,
            })
        })
        .collect();
    results.sort_by(|a, b| {
        (a.profile.name(), a.check, a.seed).cmp(&(b.profile.name(), b.check, b.seed))
    });
    VerifyReport { results }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse_trace;

    #[test]
    fn small_run_passes() {
        let report = run_verify(&Profile::ALL, 3, 11, VerifyOptions::default());
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn injected_fault_is_caught_and_replays() {
        let opts = VerifyOptions { inject_fault: true };
        let report = run_verify(&[Profile::PlaneArc], 4, 0, opts);
        let failure = report.failures().next().expect("fault detected");
        assert_eq!(failure.check, "four-way agreement");
        let doc = failure.document.as_ref().expect("counterexample");
        let t = parse_trace(doc).unwrap();
        let again = check_trace(Profile::PlaneArc, &t, opts);
        assert_eq!(again[0].1, failure.status);
        assert_eq!(run_verify(&[Profile::PlaneArc], 4, 0, opts), report);
    }
}
