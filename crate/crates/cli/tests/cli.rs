use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

fn run(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_maslov"))
        .args(args)
        .env_remove("MASLOV_SEED")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut input = child.stdin.take().unwrap();
    input.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    drop(input);
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn compute_each_method() {
    let path = fixture("half_disc.trace");
    for method in ["formula", "arc", "direct", "recursive"] {
        let o = run(
            &["compute", path.to_str().unwrap(), "--method", method],
            None,
        );
        assert_eq!(o.status.code(), Some(0), "{method}");
        assert_eq!(stdout(&o).trim(), "1");
    }
    let o = run(
        &["compute", "--method", "all"],
        Some(&std::fs::read_to_string(&path).unwrap()),
    );
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 4);
}

#[test]
fn input_errors_exit_with_two() {
    let o = run(&["compute"], Some("SURFACE PLANE\n"));
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line"));
    let annulus = fixture("annulus_arc.trace");
    let o = run(
        &["compute", annulus.to_str().unwrap(), "--method", "arc"],
        None,
    );
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_passes_and_catches_faults() {
    let o = run(&["verify", "--n", "2", "--seed", "9"], None);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = run(
        &[
            "verify",
            "--n",
            "3",
            "--profile",
            "plane-arc",
            "--inject-fault",
        ],
        None,
    );
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("SURFACE PLANE"));
}

#[test]
fn seed_comes_from_the_environment() {
    let with_env = Command::new(env!("CARGO_BIN_EXE_maslov"))
        .args(["generate", "--profile", "word"])
        .env("MASLOV_SEED", "17")
        .output()
        .unwrap();
    let explicit = run(&["generate", "--profile", "word", "--seed", "17"], None);
    let default = run(&["generate", "--profile", "word"], None);
    assert_eq!(with_env.stdout, explicit.stdout);
    assert_ne!(with_env.stdout, default.stdout);
}

#[test]
fn render_writes_svg() {
    let out = std::env::temp_dir().join(format!("maslov-cli-{}.svg", std::process::id()));
    let path = fixture("half_disc.trace");
    let o = run(
        &[
            "render",
            path.to_str().unwrap(),
            "--out",
            out.to_str().unwrap(),
        ],
        None,
    );
    assert_eq!(o.status.code(), Some(0));
    let svg = std::fs::read_to_string(&out).unwrap();
    std::fs::remove_file(&out).unwrap();
    assert!(svg.contains("w=1") && svg.contains("μ=1"));
}

#[test]
fn reduce_removes_bigons() {
    let o = run(&["reduce"], Some("0 up\n3 down\n4 up\n10 down\n"));
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "0 up\n10 down\n# cases 1 2 3 4\n# index 1\n");
    let o = run(&["reduce"], Some("0 up\n3 sideways\n"));
    assert_eq!(o.status.code(), Some(2));
}
