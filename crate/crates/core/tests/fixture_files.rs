use std::path::PathBuf;

use maslov_core::cover::{lift_trace, maslov_quotient, verify_gm};
use maslov_core::fixtures::half_disc;
use maslov_core::format::{parse_trace, serialize_trace};
use maslov_core::geometry::{ratio, Point};
use maslov_core::maslov::maslov_via_trace_formula;
use maslov_core::trace::{m_value, Trace};

fn load(name: &str) -> Trace {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name);
    let text = std::fs::read_to_string(&path).unwrap();
    let t = parse_trace(&text).unwrap();
    assert_eq!(serialize_trace(&t), text, "{name} is not in canonical form");
    t
}

#[test]
fn half_disc_file_matches_builtin() {
    assert_eq!(load("half_disc.trace"), half_disc());
}

#[test]
fn annulus_arc_pattern() {
    let t = load("annulus_arc.trace");
    let mx = m_value(&t, &t.x().location).unwrap();
    let my = m_value(&t, &t.y().location).unwrap();
    assert_eq!((mx, my), (1, 1));
    assert_eq!(maslov_via_trace_formula(&t).unwrap(), 1);
    assert_eq!(maslov_quotient(&t).unwrap(), 1);

    let lifted = lift_trace(&t).unwrap();
    let report = verify_gm(&lifted).unwrap();
    assert!(report.passed());
    let nonzero: Vec<_> = report.checks.iter().filter(|c| c.m_gx != 0).collect();
    assert!(!nonzero.is_empty());
    for c in nonzero {
        assert_eq!(c.m_gx, -c.m_ginv_y);
    }
}

#[test]
fn annulus_loop_values() {
    let t = load("annulus_loop.trace");
    assert_eq!(maslov_via_trace_formula(&t).unwrap(), 0);
    assert_eq!(maslov_quotient(&t).unwrap(), 0);
    let lifted = lift_trace(&t).unwrap();
    let m: Vec<i64> = (-2..=3)
        .map(|k| {
            let p = lifted.x_lift() + &Point::new(ratio(2 * k, 1), ratio(0, 1));
            lifted.m_lift(&p).unwrap()
        })
        .collect();
    assert_eq!(m, [0, 0, -1, 1, 0, 0]);
    assert_eq!(
        lifted
            .quotient_w(&Point::new(ratio(2, 1), ratio(1, 2)))
            .unwrap(),
        1
    );
    assert!(verify_gm(&lifted).unwrap().passed());
}
