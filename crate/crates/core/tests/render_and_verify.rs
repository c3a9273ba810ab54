use maslov_core::fixtures::half_disc;
use maslov_core::format::parse_trace;
use maslov_core::generate::{generate, Profile};
use maslov_core::render::render_svg;
use maslov_core::verify::{check_trace, run_verify, Status, VerifyOptions};

#[test]
fn half_disc_drawing() {
    let svg = render_svg(&half_disc()).unwrap();
    for label in ["w=1", "m_x=1", "m_y=1", "μ=1", ">x<", ">y<"] {
        assert!(svg.contains(label), "missing {label}");
    }
    assert!(svg.starts_with("<?xml"));
}

#[test]
fn quotient_drawings_are_stable() {
    for p in [Profile::Annulus, Profile::Torus] {
        let t = generate(7, p).unwrap();
        let svg = render_svg(&t).unwrap();
        assert!(svg.contains("ghost"));
        assert!(svg.contains("class=\"domain\""));
        assert_eq!(svg, render_svg(&t).unwrap());
    }
}

#[test]
fn fault_reports_replay() {
    let opts = VerifyOptions { inject_fault: true };
    let report = run_verify(&[Profile::PlaneGeneral, Profile::Word], 3, 40, opts);
    assert!(!report.passed());
    for failure in report.failures() {
        let t = parse_trace(failure.document.as_deref().unwrap()).unwrap();
        let again = check_trace(failure.profile, &t, opts);
        let status = again
            .iter()
            .find(|(c, _)| *c == failure.check)
            .map(|(_, s)| s);
        assert_eq!(status, Some(&failure.status));
        assert!(matches!(failure.status, Status::Fail(_)));
    }
    let clean = run_verify(
        &[Profile::PlaneGeneral, Profile::Word],
        3,
        40,
        VerifyOptions::default(),
    );
    assert!(clean.passed(), "{clean}");
}
