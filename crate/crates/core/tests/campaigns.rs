use commutant::verify::{check_rank_bounds, verify_report_witnesses, BoundMode, CampaignMode};
use commutant::{run_tn_campaign, CampaignConfig, FieldSpec, PrimeField};

fn config(n: usize, dim: usize, samples: usize, seed: u64) -> CampaignConfig {
    let field: FieldSpec = "GF(3)".parse().unwrap();
    CampaignConfig::new(n, field, dim, samples, seed)
}

#[test]
fn reports_are_reproducible_and_recheckable() {
    let cfg = config(4, 4, 60, 17);
    let a = run_tn_campaign(&cfg).unwrap();
    let b = run_tn_campaign(&cfg).unwrap();
    assert_eq!(a.render(), b.render());
    assert_eq!(a.trivial, 0);
    assert_eq!(a.agreements, 60);
    assert!(verify_report_witnesses(&a.render()).unwrap() > 0);
    let other = run_tn_campaign(&config(4, 4, 60, 18)).unwrap();
    assert_ne!(other.render(), a.render());
}

#[test]
fn report_files_are_never_overwritten() {
    let dir = tempfile::tempdir().unwrap();
    let report = run_tn_campaign(&config(3, 2, 10, 1)).unwrap();
    let first = report.write_to_dir(dir.path()).unwrap();
    let second = report.write_to_dir(dir.path()).unwrap();
    assert_ne!(first, second);
    assert_eq!(std::fs::read_to_string(&first).unwrap(), report.render());
    assert_eq!(std::fs::read_to_string(&second).unwrap(), report.render());
    assert_eq!(
        first.file_name().unwrap().to_str().unwrap(),
        "random-generators-n3-gf3-dim2-seed1.txt"
    );
}

#[test]
fn tampered_witnesses_are_caught() {
    let report = run_tn_campaign(&config(3, 2, 5, 3)).unwrap().render();
    // overwrite every row with 1 2 3 ...: the blocks stop commuting
    let (head, body) = report.split_once("== witness").unwrap();
    let tampered: String = body
        .lines()
        .map(|l| {
            if l.starts_with("3 3") || l.starts_with("==") || l.contains('|') {
                l.to_string()
            } else {
                l.split_whitespace()
                    .enumerate()
                    .map(|(i, _)| (i + 1).to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            }
        })
        .collect::<Vec<_>>()
        .join("\n");
    assert!(verify_report_witnesses(&format!("{head}== witness{tampered}\n")).is_err());
}

#[test]
fn canonical_conjugates_classify_completely() {
    let cfg = config(3, 4, 50, 2).with_mode(CampaignMode::RandomConjugatesOfCanonical);
    let r = run_tn_campaign(&cfg).unwrap();
    assert_eq!(r.trivial, 50);
    assert!(r.problems.is_empty());
    assert_eq!(r.orientations.values().sum::<usize>(), 50);
    assert_eq!(r.orientations.len(), 2);
    let cfg = config(4, 5, 20, 2).with_mode(CampaignMode::RandomConjugatesOfCanonical);
    assert_eq!(run_tn_campaign(&cfg).unwrap().trivial, 20);
}

#[test]
fn invalid_configurations_are_rejected() {
    assert!(run_tn_campaign(&config(1, 1, 5, 0)).is_err());
    assert!(run_tn_campaign(&config(3, 10, 5, 0)).is_err());
    assert!(run_tn_campaign(&config(3, 2, 0, 0)).is_err());
    let mut q = config(3, 2, 5, 0);
    q.field = FieldSpec::Rationals;
    assert!(run_tn_campaign(&q).is_err());
    assert!("n = 3\nfield = GF(3)\ndim = 2\nsamples = 4\nseed = 1\nbogus = 2\n"
        .parse::<CampaignConfig>()
        .is_err());
}

#[test]
fn small_rank_bounds_hold() {
    let f2 = PrimeField::new(2).unwrap();
    let r = check_rank_bounds(&f2, 1, 1, BoundMode::Exhaustive).unwrap();
    assert!(r.passed());
    assert_eq!(r.min_ker_f, Some(1));
    let r = check_rank_bounds(&f2, 1, 2, BoundMode::Exhaustive).unwrap();
    assert!(r.passed());
    assert!(r.min_ker_f.unwrap() >= 2);
    let f5 = PrimeField::new(5).unwrap();
    let r = check_rank_bounds(&f5, 2, 3, BoundMode::Random { samples: 50, seed: 4 }).unwrap();
    assert!(r.passed(), "{r}");
    assert!(check_rank_bounds(&f5, 3, 3, BoundMode::Exhaustive).is_err());
}
