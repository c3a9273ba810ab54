use maslov_core::cover::{lift_trace, maslov_quotient, verify_gm};
use maslov_core::fixtures::half_disc;
use maslov_core::generate::{generate, Profile};
use maslov_core::maslov::maslov_via_trace_formula;
use maslov_core::trace::m_value;
use maslov_core::Error;

fn quotient_cases() -> impl Iterator<Item = (Profile, u64)> {
    [Profile::Annulus, Profile::Torus]
        .into_iter()
        .flat_map(|p| (100..112).map(move |s| (p, s)))
}

#[test]
fn lifted_m_sums_to_quotient_m() {
    for (p, s) in quotient_cases() {
        let t = generate(s, p).unwrap();
        let lifted = lift_trace(&t).unwrap();
        for z in [&t.x().location, &t.y().location] {
            assert_eq!(
                lifted.quotient_m(z).unwrap(),
                m_value(&t, z).unwrap(),
                "{p} {s}"
            );
        }
    }
}

#[test]
fn translates_cancel_in_pairs() {
    let mut swapped_failures = 0;
    for (p, s) in quotient_cases() {
        let t = generate(s, p).unwrap();
        let report = verify_gm(&lift_trace(&t).unwrap()).unwrap();
        assert!(report.passed(), "{p} {s}: {report:?}");
        swapped_failures += report
            .checks
            .iter()
            .filter(|c| !c.swapped_comparison_holds())
            .count();
        assert_eq!(
            maslov_quotient(&t).unwrap(),
            maslov_via_trace_formula(&t).unwrap()
        );
    }
    assert!(swapped_failures > 0);
}

#[test]
fn planar_traces_have_no_lift() {
    assert!(matches!(
        lift_trace(&half_disc()),
        Err(Error::UnsupportedSurface(_))
    ));
}
