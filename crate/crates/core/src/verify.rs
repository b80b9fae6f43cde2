//! Randomized campaigns on the minimal dimension of trivial-centralizer
//! subalgebras, and brute-force checks of the kernel-dimension bounds used
//! in the case analysis.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::fs::OpenOptions;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::algebra::MatrixAlgebra;
use crate::classify::{classify_dim4, gen_f, gen_h, gen_t};
use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec};
use crate::matrix::Matrix;
use crate::structure::{certify_nonscalar_commutant, sylvester_map};
use crate::text::{format_matrix_set, parse_raw_blocks, to_matrices};
use crate::with_field;

/// Environment variable naming the default directory for campaign reports.
pub const REPORT_DIR_ENV: &str = "COMMUTANT_REPORT_DIR";

/// Rejection budget of [`sample_algebra`].
pub const SAMPLE_ATTEMPTS: usize = 20_000;

/// Number of witnesses kept per outcome label in a report.
const WITNESSES_PER_LABEL: usize = 1;

/// SplitMix64 finalizer; derives independent per-sample seeds.
pub fn sub_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn sparse<F: Field, R: Rng>(f: &F, n: usize, rng: &mut R, nonzeros: usize, strict_upper: bool) -> Matrix<F> {
    let mut m = Matrix::zeros(f, n, n);
    for _ in 0..nonzeros {
        let (mut i, mut j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if strict_upper {
            if n < 2 {
                break;
            }
            i = rng.gen_range(0..n - 1);
            j = rng.gen_range(i + 1..n);
        }
        m.set(i, j, f.random_elem(rng));
    }
    m
}

/// One random generator, drawn from a mix of shapes whose closures tend to
/// be small: sparse, diagonal, rank one, nilpotent, and pieces cut out by
/// the idempotent `frame` (the frame itself, `E·R·(I−E)`, `(I−E)·R·E`,
/// `a·E + E·R·(I−E)`),
/// plus dense matrices.
fn random_generator<F: Field, R: Rng>(f: &F, n: usize, frame: &Matrix<F>, rng: &mut R) -> Matrix<F> {
    let co_frame = frame.scale(&f.neg(&f.one())).add_scalar(&f.one());
    match rng.gen_range(0..11) {
        0 => sparse(f, n, rng, 1, false),
        1 => {
            let k = rng.gen_range(2..=3);
            sparse(f, n, rng, k, false)
        }
        2 => {
            let values: Vec<F::Elem> = (0..2).map(|_| f.random_elem(rng)).collect();
            Matrix::from_fn(f, n, n, |i, j| {
                if i == j {
                    values[rng.gen_range(0..2)].clone()
                } else {
                    f.zero()
                }
            })
        }
        3 => &Matrix::random(f, n, 1, rng) * &Matrix::random(f, 1, n, rng),
        4 => {
            let d = f.random_elem(rng);
            let k = rng.gen_range(1..=n);
            sparse(f, n, rng, k, true).add_scalar(&d)
        }
        5 => frame.clone(),
        8 => {
            let piece = &(frame * &Matrix::random(f, n, n, rng)) * &co_frame;
            &frame.scale(&f.random_elem(rng)) + &piece
        }
        6 | 7 => {
            let r = if rng.gen_bool(0.5) {
                Matrix::random(f, n, n, rng)
            } else {
                let k = rng.gen_range(1..=2);
                sparse(f, n, rng, k, false)
            };
            if rng.gen_bool(0.5) {
                &(frame * &r) * &co_frame
            } else {
                &(&co_frame * &r) * frame
            }
        }
        _ => Matrix::random(f, n, n, rng),
    }
}

/// Random subalgebra of `M_n(K)` of dimension exactly `target_dim`: the
/// closure of `generators` random matrices, conjugated by a random
/// invertible matrix, retried with successive sub-seeds until the
/// dimension matches.
pub fn sample_algebra<F: Field>(
    field: &F,
    n: usize,
    target_dim: usize,
    seed: u64,
    generators: usize,
) -> Result<MatrixAlgebra<F>> {
    if n == 0 || target_dim == 0 || target_dim > n * n {
        return Err(Error::Precondition(format!(
            "no subalgebra of M_{n} has dimension {target_dim}"
        )));
    }
    for attempt in 0..SAMPLE_ATTEMPTS {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(attempt as u64));
        let r = rng.gen_range(1..n.max(2));
        let frame = Matrix::from_fn(
            field,
            n,
            n,
            |i, j| if i == j && i < r { field.one() } else { field.zero() },
        );
        let gens: Vec<Matrix<F>> = (0..generators)
            .map(|_| random_generator(field, n, &frame, &mut rng))
            .collect();
        let Some(a) = MatrixAlgebra::closure_capped(field, n, &gens, target_dim)? else {
            continue;
        };
        if a.dim() == target_dim {
            let p = Matrix::random_invertible(field, n, &mut rng);
            return a.conjugate(&p);
        }
    }
    Err(Error::DimensionUnreachable {
        target: target_dim,
        attempts: SAMPLE_ATTEMPTS,
    })
}

/// A canonical algebra of the requested size and dimension, if one is
/// known: `K·I_n`, `T_n`, `M_n`, `F_n` (even `n`, dim 5) or `H_n` / `H_nᵗ`
/// (odd `n`, dim 4).
pub fn canonical_algebra<F: Field>(field: &F, n: usize, dim: usize, transpose: bool) -> Result<MatrixAlgebra<F>> {
    let a = if dim == 1 {
        MatrixAlgebra::trivial(field, n)
    } else if dim == n * n {
        let all: Vec<Matrix<F>> = (0..n * n).map(|k| Matrix::unit(field, n, n, k / n, k % n)).collect();
        MatrixAlgebra::from_span(field, n, &all)?
    } else if dim == n * (n + 1) / 2 {
        gen_t(field, n)?
    } else if n >= 4 && n.is_multiple_of(2) && dim == 5 {
        gen_f(field, n / 2)?
    } else if n >= 3 && n % 2 == 1 && dim == 4 {
        gen_h(field, n / 2)?
    } else {
        return Err(Error::Precondition(format!(
            "no canonical algebra of dimension {dim} in M_{n}"
        )));
    };
    Ok(if transpose { a.transpose() } else { a })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CampaignMode {
    RandomGenerators,
    RandomConjugatesOfCanonical,
}

impl fmt::Display for CampaignMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CampaignMode::RandomGenerators => "random-generators",
            CampaignMode::RandomConjugatesOfCanonical => "random-conjugates-of-canonical",
        })
    }
}

impl std::str::FromStr for CampaignMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "random-generators" => Ok(CampaignMode::RandomGenerators),
            "random-conjugates-of-canonical" => Ok(CampaignMode::RandomConjugatesOfCanonical),
            other => Err(Error::Parse {
                line: 0,
                message: format!("unknown campaign mode `{other}`"),
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CampaignConfig {
    pub n: usize,
    pub field: FieldSpec,
    pub target_dim: usize,
    pub samples: usize,
    pub seed: u64,
    pub mode: CampaignMode,
    /// Generators per sample in `random-generators` mode.
    pub generators: usize,
}

impl CampaignConfig {
    pub fn new(n: usize, field: FieldSpec, target_dim: usize, samples: usize, seed: u64) -> Self {
        CampaignConfig {
            n,
            field,
            target_dim,
            samples,
            seed,
            mode: CampaignMode::RandomGenerators,
            generators: 2,
        }
    }

    pub fn with_mode(mut self, mode: CampaignMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::Precondition("campaigns need n >= 2".into()));
        }
        if self.samples == 0 {
            return Err(Error::Precondition("samples must be at least 1".into()));
        }
        if self.target_dim == 0 || self.target_dim > self.n * self.n {
            return Err(Error::Precondition(format!("dim must lie in 1..={}", self.n * self.n)));
        }
        if self.generators == 0 {
            return Err(Error::Precondition("generators must be at least 1".into()));
        }
        if !self.field.is_finite() {
            return Err(Error::Precondition("campaigns run over finite fields only".into()));
        }
        Ok(())
    }
}

impl fmt::Display for CampaignConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n = {}", self.n)?;
        writeln!(f, "field = {}", self.field)?;
        writeln!(f, "dim = {}", self.target_dim)?;
        writeln!(f, "samples = {}", self.samples)?;
        writeln!(f, "seed = {}", self.seed)?;
        writeln!(f, "mode = {}", self.mode)?;
        writeln!(f, "generators = {}", self.generators)
    }
}

impl std::str::FromStr for CampaignConfig {
    type Err = Error;

    /// `key = value` lines; `#` starts a comment. `generators` and `mode`
    /// are optional.
    fn from_str(src: &str) -> Result<Self> {
        let mut keys: BTreeMap<String, (usize, String)> = BTreeMap::new();
        for (i, raw) in src.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| Error::Parse {
                line: i + 1,
                message: format!("expected `key = value`, found `{line}`"),
            })?;
            keys.insert(k.trim().to_string(), (i + 1, v.trim().to_string()));
        }
        fn get<T: std::str::FromStr>(keys: &BTreeMap<String, (usize, String)>, k: &str) -> Result<Option<T>> {
            match keys.get(k) {
                None => Ok(None),
                Some((line, v)) => v.parse().map(Some).map_err(|_| Error::Parse {
                    line: *line,
                    message: format!("bad value `{v}` for `{k}`"),
                }),
            }
        }
        let required = |k: &str| Error::Parse {
            line: 0,
            message: format!("missing key `{k}`"),
        };
        if let Some(k) = keys
            .keys()
            .find(|k| !["n", "field", "dim", "samples", "seed", "mode", "generators"].contains(&k.as_str()))
        {
            return Err(Error::Parse {
                line: keys[k].0,
                message: format!("unknown key `{k}`"),
            });
        }
        let cfg = CampaignConfig {
            n: get(&keys, "n")?.ok_or_else(|| required("n"))?,
            field: get(&keys, "field")?.ok_or_else(|| required("field"))?,
            target_dim: get(&keys, "dim")?.ok_or_else(|| required("dim"))?,
            samples: get(&keys, "samples")?.ok_or_else(|| required("samples"))?,
            seed: get(&keys, "seed")?.ok_or_else(|| required("seed"))?,
            mode: get(&keys, "mode")?.unwrap_or(CampaignMode::RandomGenerators),
            generators: get(&keys, "generators")?.unwrap_or(2),
        };
        Ok(cfg)
    }
}

/// What happened to one sampled algebra.
#[derive(Debug, Clone)]
enum Outcome {
    Trivial {
        classification: Option<std::result::Result<String, String>>,
    },
    Nontrivial {
        certifier: std::result::Result<String, String>,
    },
    /// Nontrivial centralizer, but the certifier only covers dimension ≤ 4.
    Unchecked,
    Failed(String),
}

#[derive(Debug, Clone)]
struct SampleRecord {
    index: usize,
    seed: u64,
    outcome: Outcome,
    /// Algebra basis followed by the certificate witness, if any.
    matrices: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessRecord {
    pub label: String,
    pub sample: usize,
    pub seed: u64,
    pub matrices: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CampaignReport {
    pub config: CampaignConfig,
    pub trivial: usize,
    pub nontrivial: usize,
    pub agreements: usize,
    pub disagreements: usize,
    /// Nontrivial centralizers of algebras too large for the certifier.
    pub unchecked: usize,
    pub failures: usize,
    pub routes: BTreeMap<String, usize>,
    pub orientations: BTreeMap<String, usize>,
    /// `(sample, seed, message)` for every disagreement or failure.
    pub problems: Vec<(usize, u64, String)>,
    pub witnesses: Vec<WitnessRecord>,
    /// Wall-clock time; not part of [`CampaignReport::render`].
    pub elapsed: Duration,
}

fn run_sample<F: Field>(f: &F, cfg: &CampaignConfig, index: usize) -> SampleRecord {
    let seed = sub_seed(cfg.seed, index as u64);
    let algebra = match cfg.mode {
        CampaignMode::RandomGenerators => sample_algebra(f, cfg.n, cfg.target_dim, seed, cfg.generators),
        CampaignMode::RandomConjugatesOfCanonical => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let transpose = rng.gen_bool(0.5);
            canonical_algebra(f, cfg.n, cfg.target_dim, transpose)
                .and_then(|a| a.conjugate(&Matrix::random_invertible(f, cfg.n, &mut rng)))
        }
    };
    let a = match algebra {
        Ok(a) => a,
        Err(e) => {
            return SampleRecord {
                index,
                seed,
                outcome: Outcome::Failed(e.to_string()),
                matrices: String::new(),
            }
        }
    };
    let mut mats = a.basis();
    let outcome = if a.is_trivial_centralizer() {
        let classification = (cfg.n % 2 == 1 && a.dim() == 4).then(|| match classify_dim4(&a) {
            Ok(r) => Ok(r.orientation.to_string()),
            Err(e) => Err(e.to_string()),
        });
        Outcome::Trivial { classification }
    } else if a.dim() > 4 {
        Outcome::Unchecked
    } else {
        let certifier = match certify_nonscalar_commutant(&a, seed) {
            Ok(c) if c.verify(&a) => {
                mats.push(c.witness.clone());
                Ok(c.route.tag().to_string())
            }
            Ok(c) => Err(format!("witness from route {} does not commute", c.route)),
            Err(e) => Err(e.to_string()),
        };
        Outcome::Nontrivial { certifier }
    };
    SampleRecord {
        index,
        seed,
        outcome,
        matrices: format_matrix_set(&mats),
    }
}

/// Samples algebras per the configuration and checks every one against the
/// centralizer oracle, the certifier and (for trivial centralizers in odd
/// size and dimension 4) the classifier. Samples run in parallel; the
/// report depends only on the configuration.
pub fn run_tn_campaign(cfg: &CampaignConfig) -> Result<CampaignReport> {
    cfg.validate()?;
    let start = Instant::now();
    let any = cfg.field.build()?;
    let records: Vec<SampleRecord> = with_field!(any, f => {
        (0..cfg.samples).into_par_iter().map(|i| run_sample(&f, cfg, i)).collect()
    });
    let mut report = CampaignReport {
        config: cfg.clone(),
        trivial: 0,
        nontrivial: 0,
        agreements: 0,
        disagreements: 0,
        unchecked: 0,
        failures: 0,
        routes: BTreeMap::new(),
        orientations: BTreeMap::new(),
        problems: Vec::new(),
        witnesses: Vec::new(),
        elapsed: Duration::ZERO,
    };
    let mut per_label: BTreeMap<String, usize> = BTreeMap::new();
    for r in records {
        let label = match &r.outcome {
            Outcome::Trivial { classification } => {
                report.trivial += 1;
                match classification {
                    Some(Ok(o)) => {
                        *report.orientations.entry(o.clone()).or_default() += 1;
                        Some(format!("trivial-centralizer {o}"))
                    }
                    Some(Err(e)) => {
                        report
                            .problems
                            .push((r.index, r.seed, format!("classification failed: {e}")));
                        Some("trivial-centralizer".to_string())
                    }
                    None => Some("trivial-centralizer".to_string()),
                }
            }
            Outcome::Nontrivial { certifier } => {
                report.nontrivial += 1;
                match certifier {
                    Ok(route) => {
                        report.agreements += 1;
                        *report.routes.entry(route.clone()).or_default() += 1;
                        Some(format!("route {route}"))
                    }
                    Err(e) => {
                        report.disagreements += 1;
                        report
                            .problems
                            .push((r.index, r.seed, format!("certifier disagrees: {e}")));
                        None
                    }
                }
            }
            Outcome::Unchecked => {
                report.nontrivial += 1;
                report.unchecked += 1;
                Some("nontrivial-unchecked".to_string())
            }
            Outcome::Failed(e) => {
                report.failures += 1;
                report.problems.push((r.index, r.seed, format!("sampling failed: {e}")));
                None
            }
        };
        if let Some(label) = label {
            let count = per_label.entry(label.clone()).or_default();
            if *count < WITNESSES_PER_LABEL {
                *count += 1;
                report.witnesses.push(WitnessRecord {
                    label,
                    sample: r.index,
                    seed: r.seed,
                    matrices: r.matrices,
                });
            }
        }
    }
    report.elapsed = start.elapsed();
    Ok(report)
}

impl CampaignReport {
    /// The report text: configuration, counts and witnesses. Identical for
    /// identical configurations.
    pub fn render(&self) -> String {
        let mut out = String::from("# commutant campaign report\n");
        out.push_str(&self.config.to_string());
        let mut kv = |k: &str, v: &dyn fmt::Display| writeln!(out, "{k} = {v}").unwrap();
        kv("trivial", &self.trivial);
        kv("nontrivial", &self.nontrivial);
        kv("agreements", &self.agreements);
        kv("disagreements", &self.disagreements);
        kv("unchecked", &self.unchecked);
        kv("failures", &self.failures);
        for (route, c) in &self.routes {
            kv(&format!("route {route}"), c);
        }
        for (o, c) in &self.orientations {
            kv(&format!("orientation {o}"), c);
        }
        for (i, seed, msg) in &self.problems {
            kv(&format!("problem sample {i} seed {seed}"), msg);
        }
        for w in &self.witnesses {
            writeln!(out, "\n== witness {} | sample {} seed {}", w.label, w.sample, w.seed).unwrap();
            out.push_str(&w.matrices);
        }
        out
    }

    /// Writes the report to a fresh file in `dir`, never overwriting an
    /// existing report.
    pub fn write_to_dir(&self, dir: &Path) -> Result<PathBuf> {
        let io = |e: std::io::Error| Error::Precondition(format!("cannot write report in {}: {e}", dir.display()));
        std::fs::create_dir_all(dir).map_err(io)?;
        let field: String = self
            .config
            .field
            .to_string()
            .chars()
            .filter(char::is_ascii_alphanumeric)
            .collect::<String>()
            .to_lowercase();
        let stem = format!(
            "{}-n{}-{}-dim{}-seed{}",
            self.config.mode, self.config.n, field, self.config.target_dim, self.config.seed
        );
        for k in 0.. {
            let name = if k == 0 {
                format!("{stem}.txt")
            } else {
                format!("{stem}-{k}.txt")
            };
            let path = dir.join(name);
            match OpenOptions::new().write(true).create_new(true).open(&path) {
                Ok(mut file) => {
                    file.write_all(self.render().as_bytes()).map_err(io)?;
                    return Ok(path);
                }
                Err(e) if e.kind() == std::io::ErrorKind::AlreadyExists => continue,
                Err(e) => return Err(io(e)),
            }
        }
        unreachable!()
    }
}

/// Re-checks the witnesses of a rendered report: trivial-centralizer
/// algebras must still have a trivial centralizer (unchecked ones a
/// nontrivial one), and route witnesses
/// (the last matrix of their section) must commute with the algebra
/// without being scalar. Returns the number of witnesses checked.
pub fn verify_report_witnesses(src: &str) -> Result<usize> {
    let mut sections: Vec<(String, usize, String)> = Vec::new();
    for (i, line) in src.lines().enumerate() {
        if let Some(rest) = line.strip_prefix("== witness ") {
            sections.push((rest.to_string(), i + 1, String::new()));
        } else if let Some((_, _, body)) = sections.last_mut() {
            body.push_str(line);
            body.push('\n');
        }
    }
    for (label, line, body) in &sections {
        let bad = |m: &str| Error::Parse {
            line: *line,
            message: format!("witness `{label}`: {m}"),
        };
        let raws = parse_raw_blocks(body)?;
        let spec = raws.first().ok_or_else(|| bad("no matrices"))?.spec.clone();
        let any = spec.build()?;
        let ok = with_field!(any, f => {
            let mut mats = to_matrices(&raws, &f)?;
            let n = mats[0].rows();
            if label.starts_with("trivial-centralizer") {
                MatrixAlgebra::from_span(&f, n, &mats)?.is_trivial_centralizer()
            } else if label.starts_with("nontrivial-unchecked") {
                !MatrixAlgebra::from_span(&f, n, &mats)?.is_trivial_centralizer()
            } else {
                let w = mats.pop().ok_or_else(|| bad("missing witness"))?;
                let a = MatrixAlgebra::from_span(&f, n, &mats)?;
                !w.is_scalar() && a.basis().iter().all(|m| m.commutes_with(&w))
            }
        });
        if !ok {
            return Err(bad("does not re-verify"));
        }
    }
    Ok(sections.len())
}

/// How [`check_rank_bounds`] chooses matrices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundMode {
    /// Every matrix (and every 2-dimensional span of matrices) of
    /// `M_{p,q}(K)`; `K` must be small enough.
    Exhaustive,
    /// Random matrices of random rank.
    Random { samples: usize, seed: u64 },
}

/// Observed kernel dimensions of `f: (X,Y) ↦ XW − WY` and
/// `g: (X,Y) ↦ (XU − UY, XV − VY)` on `M_p(K) × M_q(K)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankBoundReport {
    pub p: usize,
    pub q: usize,
    pub field: FieldSpec,
    pub f_instances: usize,
    pub g_instances: usize,
    /// Rank-deficient `W` for which `f` was checked not to be onto.
    pub not_onto_checked: usize,
    pub min_ker_f: Option<usize>,
    /// Minimum of `dim Ker g`, indexed by `m`, the number of `U`, `V`
    /// with rank below `p`.
    pub min_ker_g: [Option<usize>; 3],
    pub violations: Vec<String>,
}

impl RankBoundReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for RankBoundReport {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |v: Option<usize>| v.map_or("-".to_string(), |x| x.to_string());
        write!(
            out,
            "p={} q={} field={} f:{} (min ker {}, bound {}) g:{} (min ker m=0:{} m=1:{} m=2:{}) not-onto:{} violations:{}",
            self.p,
            self.q,
            self.field,
            self.f_instances,
            show(self.min_ker_f),
            f_bound(self.p, self.q),
            self.g_instances,
            show(self.min_ker_g[0]),
            show(self.min_ker_g[1]),
            show(self.min_ker_g[2]),
            self.not_onto_checked,
            self.violations.len()
        )
    }
}

fn f_bound(p: usize, q: usize) -> usize {
    p.abs_diff(q).pow(2) + p * q
}

fn g_bound(p: usize, q: usize, m: usize) -> usize {
    p.abs_diff(q).pow(2) + m
}

/// Largest number of matrices enumerated in exhaustive mode.
const EXHAUSTIVE_LIMIT: u64 = 1 << 12;

fn nth_matrix<F: Field>(f: &F, p: usize, q: usize, elems: &[F::Elem], mut k: u64) -> Matrix<F> {
    let base = elems.len() as u64;
    Matrix::from_fn(f, p, q, |_, _| {
        let e = elems[(k % base) as usize].clone();
        k /= base;
        e
    })
}

fn random_of_rank<F: Field, R: Rng>(f: &F, p: usize, q: usize, rng: &mut R) -> Matrix<F> {
    let r = rng.gen_range(0..=p.min(q));
    if r == 0 {
        return Matrix::zeros(f, p, q);
    }
    &Matrix::random(f, p, r, rng) * &Matrix::random(f, r, q, rng)
}

struct BoundCheck {
    ker_f: Option<usize>,
    not_onto: bool,
    ker_g: Option<(usize, usize)>,
    violations: Vec<String>,
}

fn check_f<F: Field>(w: &Matrix<F>, out: &mut BoundCheck) {
    let (p, q) = w.shape();
    let map = sylvester_map(w);
    let rank = map.rank();
    let ker = p * p + q * q - rank;
    out.ker_f = Some(ker);
    if ker < f_bound(p, q) {
        out.violations
            .push(format!("dim Ker f = {ker} < {} for W =\n{w}", f_bound(p, q)));
    }
    if w.rank() < p && p <= q {
        out.not_onto = true;
        if rank == p * q {
            out.violations.push(format!("f is onto for rank-deficient W =\n{w}"));
        }
    }
}

fn check_g<F: Field>(bases: &[(&Matrix<F>, &Matrix<F>)], out: &mut BoundCheck) {
    let (u, v) = bases[0];
    let (p, q) = u.shape();
    let g = Matrix::vstack(&[&sylvester_map(u), &sylvester_map(v)]);
    let ker = p * p + q * q - g.rank();
    let m = bases
        .iter()
        .map(|(u, v)| usize::from(u.rank() < p) + usize::from(v.rank() < p))
        .max()
        .unwrap_or(0);
    out.ker_g = Some((m, ker));
    if ker < g_bound(p, q, m) {
        out.violations.push(format!(
            "dim Ker g = {ker} < {} (m = {m}) for U =\n{u}V =\n{v}",
            g_bound(p, q, m)
        ));
    }
}

/// Checks `dim Ker f ≥ (p−q)² + pq`, `dim Ker g ≥ (q−p)² + m`, and that
/// `f` is not onto when `rank W < p`, for `1 ≤ p ≤ q ≤ 5`.
///
/// In exhaustive mode over `GF(2)` each 2-dimensional span `{U, V, U+V}`
/// is visited once and checked with the largest `m` among its three bases.
/// Over larger fields every unordered pair is visited.
pub fn check_rank_bounds<F: Field>(field: &F, p: usize, q: usize, mode: BoundMode) -> Result<RankBoundReport> {
    if !(1 <= p && p <= q && q <= 5) {
        return Err(Error::Precondition(format!("need 1 <= p <= q <= 5, got p={p}, q={q}")));
    }
    let checks: Vec<BoundCheck> = match mode {
        BoundMode::Exhaustive => {
            let elems = field
                .elements()
                .ok_or_else(|| Error::Precondition("exhaustive checks need a finite field".into()))?;
            let count = (elems.len() as u64)
                .checked_pow((p * q) as u32)
                .filter(|&c| c <= EXHAUSTIVE_LIMIT)
                .ok_or_else(|| {
                    Error::Precondition(format!("M_{{{p},{q}}}({}) is too large to enumerate", field.spec()))
                })?;
            let binary = elems.len() == 2;
            let mats: Vec<Matrix<F>> = (0..count).map(|k| nth_matrix(field, p, q, &elems, k)).collect();
            let mut checks: Vec<BoundCheck> = mats
                .par_iter()
                .map(|w| {
                    let mut c = BoundCheck {
                        ker_f: None,
                        not_onto: false,
                        ker_g: None,
                        violations: Vec::new(),
                    };
                    check_f(w, &mut c);
                    c
                })
                .collect();
            let pairs: Vec<BoundCheck> = (1..count)
                .into_par_iter()
                .flat_map_iter(|i| (i + 1..count).map(move |j| (i, j)))
                .filter_map(|(i, j)| {
                    let (u, v) = (&mats[i as usize], &mats[j as usize]);
                    let mut c = BoundCheck {
                        ker_f: None,
                        not_onto: false,
                        ker_g: None,
                        violations: Vec::new(),
                    };
                    if binary {
                        // indices encode matrices bitwise, so U + V is i ^ j
                        let s = i ^ j;
                        if s < j {
                            return None;
                        }
                        let w = &mats[s as usize];
                        check_g(&[(u, v), (u, w), (v, w)], &mut c);
                    } else {
                        let rows = Matrix::from_fn(field, 2, p * q, |r, k| {
                            if r == 0 {
                                u.entries()[k].clone()
                            } else {
                                v.entries()[k].clone()
                            }
                        });
                        if rows.rank() < 2 {
                            return None;
                        }
                        check_g(&[(u, v)], &mut c);
                    }
                    Some(c)
                })
                .collect();
            checks.extend(pairs);
            checks
        }
        BoundMode::Random { samples, seed } => (0..samples)
            .into_par_iter()
            .map(|i| {
                let mut rng = ChaCha8Rng::seed_from_u64(sub_seed(seed, i as u64));
                let mut c = BoundCheck {
                    ker_f: None,
                    not_onto: false,
                    ker_g: None,
                    violations: Vec::new(),
                };
                check_f(&random_of_rank(field, p, q, &mut rng), &mut c);
                let u = random_of_rank(field, p, q, &mut rng);
                let v = random_of_rank(field, p, q, &mut rng);
                check_g(&[(&u, &v)], &mut c);
                c
            })
            .collect(),
    };
    let mut report = RankBoundReport {
        p,
        q,
        field: field.spec(),
        f_instances: 0,
        g_instances: 0,
        not_onto_checked: 0,
        min_ker_f: None,
        min_ker_g: [None; 3],
        violations: Vec::new(),
    };
    for c in checks {
        if let Some(k) = c.ker_f {
            report.f_instances += 1;
            report.min_ker_f = Some(report.min_ker_f.map_or(k, |x| x.min(k)));
        }
        if let Some((m, k)) = c.ker_g {
            report.g_instances += 1;
            report.min_ker_g[m] = Some(report.min_ker_g[m].map_or(k, |x| x.min(k)));
        }
        report.not_onto_checked += usize::from(c.not_onto);
        report.violations.extend(c.violations);
    }
    Ok(report)
}
