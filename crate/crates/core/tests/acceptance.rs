//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit status
//! if any criterion fails.

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use commutant::pencil::Defect;
use commutant::structure::{unispectral_centralizer_witness, Triangularization};
use commutant::verify::{BoundMode, CampaignReport};
use commutant::{
    certify_nonscalar_commutant, classify_dim4, forbidden_block_detect, gen_f, gen_h, gen_t, is_fullrank_pencil,
    kronecker_reduce, run_tn_campaign, triangularize_unispectral, CampaignConfig, Field, FieldSpec, Matrix,
    MatrixAlgebra, Orientation, Pencil, PrimeField, Rationals,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = std::result::Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

struct Suite {
    failed: usize,
}

impl Suite {
    fn run(&mut self, id: u32, title: &str, limit: Duration, body: impl FnOnce() -> Check) -> Option<String> {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(body)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".to_string());
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|detail| {
            if elapsed <= limit {
                Ok(detail)
            } else {
                Err(format!("{detail}; exceeded the {:.0} s limit", limit.as_secs_f64()))
            }
        });
        let secs = elapsed.as_secs_f64();
        match outcome {
            Ok(detail) => {
                println!("PASS criterion {id} ({title}): {detail} [{secs:.1} s]");
                Some(detail)
            }
            Err(detail) => {
                println!("FAIL criterion {id} ({title}): {detail} [{secs:.1} s]");
                self.failed += 1;
                None
            }
        }
    }
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

// ---- 1: canonical examples -------------------------------------------------

fn canonical_on<F: Field>(f: &F) -> std::result::Result<usize, String> {
    let name = f.spec().to_string();
    let mut checked = Vec::new();
    checked.push(("T_2".to_string(), gen_t(f, 2).map_err(|e| e.to_string())?, 3));
    for p in 2..=4 {
        checked.push((format!("F_{}", 2 * p), gen_f(f, p).map_err(|e| e.to_string())?, 5));
    }
    for p in 1..=4 {
        checked.push((format!("H_{}", 2 * p + 1), gen_h(f, p).map_err(|e| e.to_string())?, 4));
    }
    for (label, a, dim) in &checked {
        ensure(a.dim() == *dim, || {
            format!("{label} over {name} has dimension {}", a.dim())
        })?;
        ensure(a.is_trivial_centralizer(), || {
            format!("{label} over {name} has a nontrivial centralizer")
        })?;
    }
    Ok(checked.len())
}

fn criterion_1() -> Check {
    let mut total = 0;
    total += canonical_on(&Rationals)?;
    total += canonical_on(&PrimeField::new(2).unwrap())?;
    total += canonical_on(&PrimeField::new(5).unwrap())?;
    Ok(format!(
        "{total} algebras over Q, F_2, F_5 with dims 3/5/4 and scalar centralizers"
    ))
}

// ---- 2: Jordan pair ----------------------------------------------------------

fn jordan_on<F: Field>(f: &F) -> std::result::Result<(), String> {
    for n in 2..=8 {
        let j = Matrix::jordan(f, n);
        let pair = MatrixAlgebra::centralizer_of(f, n, &[j.clone(), j.transpose()]).map_err(|e| e.to_string())?;
        ensure(pair == MatrixAlgebra::trivial(f, n), || {
            format!("C(J_{n}, J_{n}^t) over {} has dimension {}", f.spec(), pair.dim())
        })?;
        let single = MatrixAlgebra::centralizer_of(f, n, &[j]).map_err(|e| e.to_string())?;
        ensure(single.dim() == n, || {
            format!("C(J_{n}) over {} has dimension {}", f.spec(), single.dim())
        })?;
    }
    Ok(())
}

fn criterion_2() -> Check {
    jordan_on(&Rationals)?;
    jordan_on(&PrimeField::new(3).unwrap())?;
    Ok("n = 2..8 over Q and F_3: C(J, J^t) = K·I, dim C(J) = n".into())
}

// ---- 3, 4: sampled lower bounds ----------------------------------------------

const CAMPAIGN_SAMPLES: usize = 10_000;

/// Splits the sample budget evenly over dimensions `1..=max_dim` and runs a
/// campaign for each.
fn lower_bound_campaigns(n: usize, max_dim: usize, seed: u64) -> std::result::Result<Vec<CampaignReport>, String> {
    let field: FieldSpec = "GF(3)".parse().unwrap();
    let mut reports = Vec::new();
    for dim in 1..=max_dim {
        let share = CAMPAIGN_SAMPLES / max_dim + usize::from(dim <= CAMPAIGN_SAMPLES % max_dim);
        let mut cfg = CampaignConfig::new(n, field.clone(), dim, share, seed + dim as u64);
        cfg.generators = 3;
        let report = run_tn_campaign(&cfg).map_err(|e| e.to_string())?;
        reports.push(report);
    }
    Ok(reports)
}

fn check_campaigns(n: usize, reports: &[CampaignReport]) -> std::result::Result<(usize, usize), String> {
    let mut samples = 0;
    let mut routes = std::collections::BTreeSet::new();
    for r in reports {
        let d = r.config.target_dim;
        if let Some((i, s, msg)) = r.problems.first() {
            return Err(format!("n={n} dim={d} sample {i} (seed {s}): {msg}"));
        }
        ensure(r.trivial == 0, || {
            format!("n={n} dim={d}: {} trivial centralizers", r.trivial)
        })?;
        ensure(r.failures == 0 && r.disagreements == 0 && r.unchecked == 0, || {
            format!(
                "n={n} dim={d}: {} failures, {} disagreements",
                r.failures, r.disagreements
            )
        })?;
        ensure(r.agreements == r.config.samples, || {
            format!("n={n} dim={d}: {} of {} agree", r.agreements, r.config.samples)
        })?;
        samples += r.config.samples;
        routes.extend(r.routes.keys().cloned());
    }
    Ok((samples, routes.len()))
}

fn criterion_3() -> Check {
    let mut parts = Vec::new();
    for n in [3, 5] {
        let reports = lower_bound_campaigns(n, 3, 3_000 + n as u64)?;
        let (samples, routes) = check_campaigns(n, &reports)?;
        parts.push(format!(
            "n={n}: {samples}/{samples} verified witnesses via {routes} routes"
        ));
    }
    Ok(format!(
        "{}; no trivial centralizer in dim <= 3 over F_3",
        parts.join(", ")
    ))
}

fn criterion_4() -> Check {
    let reports = lower_bound_campaigns(4, 4, 4_000)?;
    let (samples, routes) = check_campaigns(4, &reports)?;
    Ok(format!(
        "n=4: {samples}/{samples} verified witnesses via {routes} routes; no trivial centralizer in dim <= 4 over F_3"
    ))
}

// ---- 5: upper bounds -----------------------------------------------------------

fn criterion_5(lower_odd: bool, lower_even: bool) -> Check {
    let q = Rationals;
    let f3 = PrimeField::new(3).unwrap();
    let witnesses = [
        (3, gen_h(&q, 1).unwrap(), gen_h(&f3, 1).unwrap(), 4),
        (4, gen_f(&q, 2).unwrap(), gen_f(&f3, 2).unwrap(), 5),
        (5, gen_h(&q, 2).unwrap(), gen_h(&f3, 2).unwrap(), 4),
    ];
    for (n, a, b, bound) in &witnesses {
        ensure(a.n() == *n && a.dim() == *bound && a.is_trivial_centralizer(), || {
            format!("no dimension-{bound} witness for t_{n} over Q")
        })?;
        ensure(b.dim() == *bound && b.is_trivial_centralizer(), || {
            format!("no dimension-{bound} witness for t_{n} over F_3")
        })?;
    }
    ensure(lower_odd && lower_even, || {
        "upper bounds hold but the sampled lower bounds (criteria 3, 4) failed".to_string()
    })?;
    Ok(
        "t_3 <= 4 (H_3), t_4 <= 5 (F_4), t_5 <= 4 (H_5); with criteria 3-4 this gives t_3 = 4, t_4 = 5, t_5 = 4 \
        (lower side sampled with certified witnesses, not exhaustive)"
            .into(),
    )
}

// ---- 6: classification -----------------------------------------------------------

fn classification_on<F: Field>(f: &F, seed: u64) -> std::result::Result<usize, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cases = 0;
    for p in 1..=3 {
        let h = gen_h(f, p).unwrap();
        let ht = h.transpose();
        for (model, expected) in [(&h, Orientation::H), (&ht, Orientation::HTranspose)] {
            for k in 0..100 {
                let r0 = Matrix::random_invertible(f, 2 * p + 1, &mut rng);
                let a = model.conjugate(&r0).unwrap();
                let r = classify_dim4(&a).map_err(|e| format!("{} p={p} {expected} #{k}: {e}", f.spec()))?;
                ensure(r.orientation == expected, || {
                    format!("{} p={p} #{k}: expected {expected}, got {}", f.spec(), r.orientation)
                })?;
                ensure(r.verify(&a), || {
                    format!("{} p={p} {expected} #{k}: conjugator does not reproduce", f.spec())
                })?;
                cases += 1;
            }
        }
    }
    Ok(cases)
}

fn criterion_6() -> Check {
    let cases = classification_on(&Rationals, 6)? + classification_on(&PrimeField::new(7).unwrap(), 7)?;
    Ok(format!("{cases}/1200 conjugates classified with exact reconstruction"))
}

// ---- 7: pencils -----------------------------------------------------------------------

/// Block-diagonal pencil; blocks may have zero rows or zero columns.
fn pencil_sum<F: Field>(f: &F, blocks: &[(usize, usize, Matrix<F>, Matrix<F>)]) -> Pencil<F> {
    let rows: usize = blocks.iter().map(|b| b.0).sum();
    let cols: usize = blocks.iter().map(|b| b.1).sum();
    let mut a = Matrix::zeros(f, rows, cols);
    let mut b = Matrix::zeros(f, rows, cols);
    let (mut r0, mut c0) = (0, 0);
    for (r, c, ba, bb) in blocks {
        for i in 0..*r {
            for j in 0..*c {
                a.set(r0 + i, c0 + j, ba.get(i, j).clone());
                b.set(r0 + i, c0 + j, bb.get(i, j).clone());
            }
        }
        r0 += r;
        c0 += c;
    }
    Pencil::new(a, b).unwrap()
}

/// `L_m`: the `m × (m+1)` pair `(C_m, D_m)`.
fn l_block<F: Field>(f: &F, m: usize) -> (usize, usize, Matrix<F>, Matrix<F>) {
    if m == 0 {
        return (0, 1, Matrix::zeros(f, 1, 1), Matrix::zeros(f, 1, 1));
    }
    (m, m + 1, Matrix::c_block(f, m), Matrix::d_block(f, m))
}

/// `L_mᵗ`: the `(m+1) × m` pair `(C_mᵗ, D_mᵗ)`.
fn lt_block<F: Field>(f: &F, m: usize) -> (usize, usize, Matrix<F>, Matrix<F>) {
    if m == 0 {
        return (1, 0, Matrix::zeros(f, 1, 1), Matrix::zeros(f, 1, 1));
    }
    (
        m + 1,
        m,
        Matrix::c_block(f, m).transpose(),
        Matrix::d_block(f, m).transpose(),
    )
}

fn scramble<F: Field>(pc: &Pencil<F>, rng: &mut ChaCha8Rng) -> Pencil<F> {
    let f = pc.field();
    let n = pc.n();
    pc.transform(
        &Matrix::random_invertible(f, n, rng),
        &Matrix::random_invertible(f, n + 1, rng),
    )
}

fn pencils_on<F: Field>(f: &F, seed: u64) -> std::result::Result<(usize, usize), String> {
    let name = f.spec().to_string();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut reduced = 0;
    for n in 1..=6 {
        for k in 0..100 {
            let pc = scramble(&Pencil::canonical(f, n), &mut rng);
            let r = kronecker_reduce(&pc).map_err(|e| format!("{name} n={n} #{k}: {e}"))?;
            let q_inv = r.q_right.try_inverse().map_err(|e| e.to_string())?;
            let a = &(&r.p_left * &Matrix::c_block(f, n)) * &q_inv;
            let b = &(&r.p_left * &Matrix::d_block(f, n)) * &q_inv;
            ensure(&a == pc.a() && &b == pc.b(), || {
                format!("{name} n={n} #{k}: reconstruction differs")
            })?;
            reduced += 1;
        }
    }
    let mut rejected = 0;
    for k in 0..100 {
        let n = 1 + k % 6;
        // common finite root: (C + x·I_r) ⊕ L_{n−r} with C upper triangular
        let r = rng.gen_range(1..=n);
        let c = Matrix::from_fn(f, r, r, |i, j| if i <= j { f.random_elem(&mut rng) } else { f.zero() });
        let lambda = f.neg(c.get(0, 0));
        let pc = scramble(
            &pencil_sum(f, &[(r, r, c, Matrix::identity(f, r)), l_block(f, n - r)]),
            &mut rng,
        );
        ensure(!is_fullrank_pencil(&pc), || format!("{name} root class #{k} accepted"))?;
        let d = forbidden_block_detect(&pc).map_err(|e| e.to_string())?;
        ensure(
            d.defects.contains(&Defect::CommonRoot(lambda)) && d.minimal_index == n - r,
            || format!("{name} root class #{k}: diagnostics {:?}", d.defects),
        )?;
        rejected += 1;

        // rank-deficient B: (I_r + x·J_r) ⊕ L_{n−r}
        let r = rng.gen_range(1..=n);
        let pc = scramble(
            &pencil_sum(
                f,
                &[(r, r, Matrix::identity(f, r), Matrix::jordan(f, r)), l_block(f, n - r)],
            ),
            &mut rng,
        );
        ensure(!is_fullrank_pencil(&pc), || {
            format!("{name} infinite class #{k} accepted")
        })?;
        let d = forbidden_block_detect(&pc).map_err(|e| e.to_string())?;
        ensure(
            d.minor_gcd.is_unit() && d.defects.contains(&Defect::Infinity { rank_b: n - 1 }),
            || format!("{name} infinite class #{k}: diagnostics {:?}", d.defects),
        )?;
        rejected += 1;

        // short minimal index: L_m ⊕ L_j ⊕ L_tᵗ with m + j + t + 1 = n
        let m = rng.gen_range(0..n);
        let j = rng.gen_range(0..n - m);
        let t = n - 1 - m - j;
        let pc = scramble(
            &pencil_sum(f, &[l_block(f, m), l_block(f, j), lt_block(f, t)]),
            &mut rng,
        );
        ensure(!is_fullrank_pencil(&pc), || {
            format!("{name} short-index class #{k} accepted")
        })?;
        let d = forbidden_block_detect(&pc).map_err(|e| e.to_string())?;
        let degree = m.min(j);
        ensure(
            d.minor_gcd.is_zero()
                && d.minimal_index == degree
                && d.defects.contains(&Defect::ShortMinimalIndex {
                    degree,
                    regular_size: n - degree,
                }),
            || {
                format!(
                    "{name} short-index class #{k} (m={m}, j={j}): diagnostics {:?}",
                    d.defects
                )
            },
        )?;
        rejected += 1;
    }
    Ok((reduced, rejected))
}

fn criterion_7() -> Check {
    let (rq, dq) = pencils_on(&Rationals, 70)?;
    let (rf, df) = pencils_on(&PrimeField::new(5).unwrap(), 75)?;
    Ok(format!(
        "{} reductions reconstructed exactly, {} degenerate pencils rejected with matching diagnostics (Q, F_5)",
        rq + rf,
        dq + df
    ))
}

// ---- 8: rank bounds -------------------------------------------------------------------

fn criterion_8() -> Check {
    let f2 = PrimeField::new(2).unwrap();
    let f3 = PrimeField::new(3).unwrap();
    let mut exhaustive = 0;
    let mut not_onto = 0;
    for q in 1..=3 {
        for p in 1..=q {
            let r = commutant::check_rank_bounds(&f2, p, q, BoundMode::Exhaustive).map_err(|e| e.to_string())?;
            ensure(r.passed(), || format!("F_2 exhaustive: {}", r.violations.join("; ")))?;
            exhaustive += r.f_instances;
            not_onto += r.not_onto_checked;
        }
    }
    let mut random = 0;
    for q in 1..=5 {
        for p in 1..=q {
            let mode = BoundMode::Random {
                samples: 200,
                seed: 800 + (10 * p + q) as u64,
            };
            let r = commutant::check_rank_bounds(&f3, p, q, mode).map_err(|e| e.to_string())?;
            ensure(r.passed(), || format!("F_3 random: {}", r.violations.join("; ")))?;
            random += r.f_instances;
            not_onto += r.not_onto_checked;
        }
    }
    Ok(format!(
        "{exhaustive} exhaustive W over F_2 (p <= q <= 3), {random} random W over F_3 (q <= 5), \
         {not_onto} rank-deficient W not onto"
    ))
}

// ---- 9: unispectral algebras ----------------------------------------------------------

fn criterion_9() -> Check {
    let f = PrimeField::new(5).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for k in 0..500 {
        let n = 3 + k % 3;
        let gens: Vec<Matrix<PrimeField>> = (0..rng.gen_range(1..=3))
            .map(|_| {
                let density = rng.gen_range(0.2..=1.0);
                Matrix::from_fn(&f, n, n, |i, j| {
                    if i < j && rng.gen_bool(density) {
                        f.random_elem(&mut rng)
                    } else {
                        f.zero()
                    }
                })
            })
            .collect();
        let upper = MatrixAlgebra::closure(&f, n, &gens).map_err(|e| e.to_string())?;
        let a = upper
            .conjugate(&Matrix::random_invertible(&f, n, &mut rng))
            .map_err(|e| e.to_string())?;
        let conj = match triangularize_unispectral(&a).map_err(|e| format!("#{k}: {e}"))? {
            Triangularization::Triangular { conjugator } => conjugator,
            Triangularization::NotUnispectral { .. } => return Err(format!("#{k} (n={n}): not triangularized")),
        };
        let inv = conj.try_inverse().map_err(|e| e.to_string())?;
        ensure(
            a.basis()
                .iter()
                .all(|m| m.conjugate_by(&conj, &inv).is_upper_triangular()),
            || format!("#{k} (n={n}): conjugate is not upper triangular"),
        )?;
        let cert = unispectral_centralizer_witness(&a).map_err(|e| format!("#{k}: {e}"))?;
        ensure(cert.verify(&a), || {
            format!("#{k} (n={n}): E_1n witness does not commute")
        })?;
        if a.dim() <= 4 {
            let c = certify_nonscalar_commutant(&a, k as u64).map_err(|e| format!("#{k}: {e}"))?;
            ensure(c.verify(&a), || format!("#{k}: certifier witness does not commute"))?;
        }
    }
    Ok("500 conjugated unispectral algebras over F_5 (n = 3, 4, 5) triangularized; E_1n witnesses verify".into())
}

fn main() -> ExitCode {
    let mut suite = Suite { failed: 0 };
    suite.run(1, "canonical examples", secs(5), criterion_1);
    suite.run(2, "Jordan pair centralizers", secs(5), criterion_2);
    let odd = suite.run(3, "lower bound, odd n", secs(600), criterion_3).is_some();
    let even = suite.run(4, "lower bound, even n", secs(600), criterion_4).is_some();
    suite.run(5, "upper bounds", secs(5), || criterion_5(odd, even));
    suite.run(6, "classification", secs(300), criterion_6);
    suite.run(7, "pencil reduction", secs(120), criterion_7);
    suite.run(8, "rank bounds", secs(120), criterion_8);
    suite.run(9, "unispectral algebras", secs(120), criterion_9);
    if suite.failed == 0 {
        println!("all 9 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("{} of 9 criteria failed", suite.failed);
        ExitCode::FAILURE
    }
}
