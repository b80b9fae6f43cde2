use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use commutant::text::{parse_blocks_with_tags, read_matrices, to_matrices};
use commutant::{gen_h, MatrixAlgebra, Orientation, PrimeField, Rationals};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_commutant"))
        .args(args)
        .env_remove("COMMUTANT_REPORT_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn gen_h5_over_gf5() {
    let o = run(&["gen", "H", "2", "--field", "GF(5)"]);
    assert_eq!(o.status.code(), Some(0));
    let f5 = PrimeField::new(5).unwrap();
    let mats = read_matrices(&stdout(&o), &f5).unwrap();
    assert_eq!(mats.len(), 4);
    assert_eq!(MatrixAlgebra::from_span(&f5, 5, &mats).unwrap(), gen_h(&f5, 2).unwrap());
}

#[test]
fn centralizer_of_t3_is_the_identity() {
    let o = run(&["centralizer", path_str(&fixture("t3.alg"))]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "3 3 Q\n1 0 0\n0 1 0\n0 0 1\n");
}

#[test]
fn classify_prepared_conjugates() {
    for (name, expected) in [
        ("h5-conjugated.alg", Orientation::H),
        ("h5t-conjugated.alg", Orientation::HTranspose),
    ] {
        let path = fixture(name);
        let o = run(&["classify", path_str(&path)]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        let out = stdout(&o);
        assert_eq!(out.lines().next().unwrap(), format!("orientation: {expected}"));
        let (blocks, tags) = parse_blocks_with_tags(&out).unwrap();
        assert_eq!(tags[0].1, "orientation");
        let r = to_matrices(&blocks, &Rationals).unwrap().remove(0);
        let a = MatrixAlgebra::closure(
            &Rationals,
            5,
            &read_matrices(&std::fs::read_to_string(&path).unwrap(), &Rationals).unwrap(),
        )
        .unwrap();
        let h = gen_h(&Rationals, 2).unwrap();
        let model = if expected == Orientation::H { h } else { h.transpose() };
        assert_eq!(model.conjugate(&r).unwrap(), a);
    }
}

#[test]
fn certificate_round_trips_through_centralizer() {
    let dir = tempfile::tempdir().unwrap();
    let alg = dir.path().join("j.alg");
    std::fs::write(
        &alg,
        "3 3 GF(7)\n0 1 0\n0 0 0\n0 0 0\n\n3 3 GF(7)\n0 0 0\n0 0 1\n0 0 0\n",
    )
    .unwrap();
    let cert = dir.path().join("cert.txt");
    let o = run(&["certify", path_str(&alg), "-o", path_str(&cert)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = std::fs::read_to_string(&cert).unwrap();
    assert!(text.starts_with("route: "));
    let o = run(&["centralizer", path_str(&alg), "--member", path_str(&cert)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "member: yes (non-scalar)\n");
    // a matrix outside the centralizer
    let other = dir.path().join("other.txt");
    std::fs::write(&other, "3 3 GF(7)\n0 0 0\n1 0 0\n0 0 0\n").unwrap();
    let o = run(&["centralizer", path_str(&alg), "--member", path_str(&other)]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "member: no\n");
}

#[test]
fn genuinely_trivial_is_an_answer() {
    let dir = tempfile::tempdir().unwrap();
    let h = dir.path().join("h3.alg");
    let o = run(&["gen", "h", "1", "-o", path_str(&h)]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["certify", path_str(&h)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("genuinely-trivial: "));
}

#[test]
fn outputs_are_deterministic() {
    let cfg = fixture("campaign.cfg");
    let runs: Vec<String> = (0..2)
        .map(|_| {
            let o = run(&["campaign", path_str(&cfg)]);
            assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
            stdout(&o)
        })
        .collect();
    assert_eq!(runs[0], runs[1]);
    assert!(runs[0].contains("agreements = 40"));
    let a = run(&["classify", path_str(&fixture("h5-conjugated.alg"))]);
    let b = run(&["classify", path_str(&fixture("h5-conjugated.alg"))]);
    assert_eq!(a.stdout, b.stdout);
    let seeded = |s: &str| stdout(&run(&["campaign", path_str(&cfg), "--seed", s]));
    assert_eq!(seeded("5"), seeded("5"));
    assert_ne!(seeded("5"), runs[0]);
}

#[test]
fn campaign_reports_go_to_a_directory_and_recheck() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = fixture("campaign.cfg");
    let o = Command::new(env!("CARGO_BIN_EXE_commutant"))
        .args(["campaign", path_str(&cfg)])
        .env("COMMUTANT_REPORT_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    let report = out
        .lines()
        .find_map(|l| l.strip_prefix("report: "))
        .unwrap()
        .to_string();
    assert!(report.ends_with("random-generators-n3-gf3-dim3-seed11.txt"));
    // a second run never overwrites the first
    let o = run(&["campaign", path_str(&cfg), "--report-dir", path_str(dir.path())]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 2);
    let o = run(&["campaign", "--recheck", &report]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("witnesses verified: "));
}

#[test]
fn pencils_reduce_or_explain() {
    let o = run(&["pencil", path_str(&fixture("pencil-l2.pen"))]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("full-rank: yes\n2 2 Q\n"));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.pen");
    // (1 + x) ⊕ L_1: common root −1
    std::fs::write(&bad, "2 3 Q\n1 0 0\n0 1 0\n\n2 3 Q\n1 0 0\n0 0 1\n").unwrap();
    let o = run(&["pencil", path_str(&bad)]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("full-rank: no"));
    assert!(out.contains("defect: common-root -1"), "{out}");
}

#[test]
fn field_override_reinterprets_integers_only() {
    let t3 = fixture("t3.alg");
    let o = run(&["centralizer", path_str(&t3), "--field", "GF(2)"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("3 3 GF(2)\n"));
    let dir = tempfile::tempdir().unwrap();
    let frac = dir.path().join("frac.alg");
    std::fs::write(&frac, "2 2 Q\n1/2 0\n0 1\n").unwrap();
    let o = run(&["closure", path_str(&frac), "--field", "GF(3)"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn malformed_input_names_its_location() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.alg");
    std::fs::write(&bad, "# comment\n2 2 Q\n1 0\n0 y\n").unwrap();
    let o = run(&["closure", path_str(&bad)]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert_eq!(err.lines().count(), 1);
    assert!(err.contains("bad.alg:"), "{err}");
    let mixed = dir.path().join("mixed.alg");
    std::fs::write(&mixed, "1 1 Q\n1\n\n1 1 GF(5)\n1\n").unwrap();
    assert_eq!(run(&["closure", path_str(&mixed)]).status.code(), Some(2));
    let missing = dir.path().join("missing.alg");
    assert_eq!(run(&["closure", path_str(&missing)]).status.code(), Some(2));
    assert_eq!(run(&["gen", "X", "2"]).status.code(), Some(2));
}

#[test]
fn domain_errors_exit_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let f4 = dir.path().join("f4.alg");
    assert_eq!(run(&["gen", "F", "2", "-o", path_str(&f4)]).status.code(), Some(0));
    let o = run(&["classify", path_str(&f4)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).starts_with("error: "));
}

#[test]
fn bounds_are_checked() {
    let o = run(&["check-bounds", "--p", "1", "--q", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("violations:0"));
    let o = run(&[
        "check-bounds",
        "--p",
        "2",
        "--q",
        "4",
        "--field",
        "GF(3)",
        "--samples",
        "20",
        "--seed",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(0));
}
