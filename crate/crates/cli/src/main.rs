use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use commutant::pencil::{Defect, PencilDiagnostics};
use commutant::structure::CERTIFY_SEED;
use commutant::text::{
    format_certificate, format_matrix, format_matrix_set, parse_blocks_with_tags, resolve_field, to_matrices,
};
use commutant::verify::{verify_report_witnesses, BoundMode, REPORT_DIR_ENV};
use commutant::{
    certify_nonscalar_commutant, check_rank_bounds, classify_dim4, forbidden_block_detect, gen_f, gen_h, gen_t,
    kronecker_reduce, run_tn_campaign, with_field, CampaignConfig, Error, Field, FieldSpec, Matrix, MatrixAlgebra,
    Pencil,
};

/// Exact computations with matrix subalgebras and their centralizers.
#[derive(Debug, Parser)]
#[command(name = "commutant", version)]
struct Cli {
    /// Reinterpret integer literals of the input in this field
    /// (`Q`, `GF(p)`, `GF(p^d)`).
    #[arg(long, global = true)]
    field: Option<FieldSpec>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Write the result here instead of standard output.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    /// Upper triangular matrices `T_n` (size `n`).
    T,
    /// The 5-dimensional `F_{2p}`.
    F,
    /// The 4-dimensional `H_{2p+1}`.
    H,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print a basis of a canonical algebra: `T n`, `F p` or `H p`.
    Gen {
        #[arg(ignore_case = true)]
        family: Family,
        size: usize,
        #[arg(long)]
        transpose: bool,
    },
    /// Basis of the unital algebra generated by the matrices of a file.
    Closure { input: PathBuf },
    /// Basis of the centralizer of the matrices of a file.
    Centralizer {
        input: PathBuf,
        /// Instead of printing the basis, check that the (last) matrix of
        /// this file lies in the centralizer.
        #[arg(long)]
        member: Option<PathBuf>,
    },
    /// A non-scalar matrix commuting with the algebra generated by a file.
    Certify { input: PathBuf },
    /// Conjugacy of a 4-dimensional algebra of odd size to `H` or `Hᵗ`.
    Classify { input: PathBuf },
    /// Reduction of the pencil `A + xB` (two `n × (n+1)` matrices).
    Pencil { input: PathBuf },
    /// Run a randomized campaign described by a `key = value` file.
    Campaign {
        #[arg(required_unless_present = "recheck")]
        config: Option<PathBuf>,
        /// Report directory (default: the value of the report directory
        /// environment variable, else standard output).
        #[arg(long)]
        report_dir: Option<PathBuf>,
        /// Re-verify the witnesses stored in an existing report.
        #[arg(long, conflicts_with = "config")]
        recheck: Option<PathBuf>,
    },
    /// Check the kernel-dimension bounds of the Sylvester-type maps.
    CheckBounds {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        /// Random matrices instead of exhaustive enumeration.
        #[arg(long)]
        samples: Option<usize>,
    },
}

/// Usage and format problems exit with 2, domain failures with 1.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Domain(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Domain(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Domain(m) => m,
        }
    }
}

fn at(path: &Path, e: Error) -> Failure {
    let p = path.display();
    match e {
        Error::Parse { line, message } if line > 0 => Failure::Usage(format!("{p}:{line}: {message}")),
        Error::Parse { message, .. } => Failure::Usage(format!("{p}: {message}")),
        e @ (Error::FieldMismatch(..) | Error::Shape(_) | Error::NotPrime(_) | Error::ReducibleModulus(_)) => {
            Failure::Usage(format!("{p}: {e}"))
        }
        e => Failure::Domain(format!("{p}: {e}")),
    }
}

fn domain(e: Error) -> Failure {
    match e {
        e @ (Error::Parse { .. } | Error::NotPrime(_) | Error::ReducibleModulus(_)) => Failure::Usage(e.to_string()),
        e => Failure::Domain(e.to_string()),
    }
}

/// Result text plus the exit status it should produce.
struct Output {
    text: String,
    code: u8,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, code: 0 }
    }
}

struct Input {
    path: PathBuf,
    src: String,
}

impl Input {
    fn read(path: &Path) -> Result<Self, Failure> {
        let src = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
        Ok(Input {
            path: path.to_path_buf(),
            src,
        })
    }

    /// The field the input lives in, after the override.
    fn field(&self, over: Option<&FieldSpec>) -> Result<FieldSpec, Failure> {
        let (blocks, _) = parse_blocks_with_tags(&self.src).map_err(|e| at(&self.path, e))?;
        resolve_field(&blocks, over).map_err(|e| at(&self.path, e))
    }

    fn matrices<F: Field>(&self, f: &F) -> Result<Vec<Matrix<F>>, Failure> {
        let (blocks, _) = parse_blocks_with_tags(&self.src).map_err(|e| at(&self.path, e))?;
        to_matrices(&blocks, f).map_err(|e| at(&self.path, e))
    }

    /// All matrices, square of one size.
    fn square_family<F: Field>(&self, f: &F) -> Result<(usize, Vec<Matrix<F>>), Failure> {
        let mats = self.matrices(f)?;
        let n = mats[0].rows();
        if let Some(m) = mats.iter().find(|m| m.shape() != (n, n)) {
            return Err(Failure::Usage(format!(
                "{}: expected {n}x{n} matrices, found {}x{}",
                self.path.display(),
                m.rows(),
                m.cols()
            )));
        }
        Ok((n, mats))
    }

    fn algebra<F: Field>(&self, f: &F) -> Result<MatrixAlgebra<F>, Failure> {
        let (n, gens) = self.square_family(f)?;
        MatrixAlgebra::closure(f, n, &gens).map_err(|e| at(&self.path, e))
    }
}

fn generate<F: Field>(f: &F, family: Family, size: usize, transpose: bool) -> Result<Output, Failure> {
    let a = match family {
        Family::T => gen_t(f, size),
        Family::F => gen_f(f, size),
        Family::H => gen_h(f, size),
    }
    .map_err(|e| Failure::Usage(e.to_string()))?;
    let a = if transpose { a.transpose() } else { a };
    Ok(Output::ok(format_matrix_set(&a.basis())))
}

fn closure<F: Field>(f: &F, input: &Input) -> Result<Output, Failure> {
    Ok(Output::ok(format_matrix_set(&input.algebra(f)?.basis())))
}

fn centralizer<F: Field>(f: &F, input: &Input, member: Option<&Input>) -> Result<Output, Failure> {
    let (n, gens) = input.square_family(f)?;
    let c = MatrixAlgebra::centralizer_of(f, n, &gens).map_err(|e| at(&input.path, e))?;
    let Some(member) = member else {
        return Ok(Output::ok(format_matrix_set(&c.basis())));
    };
    let w = member.matrices(f)?.pop().expect("at least one block");
    if w.shape() != (n, n) {
        return Err(Failure::Usage(format!(
            "{}: expected a {n}x{n} matrix, found {}x{}",
            member.path.display(),
            w.rows(),
            w.cols()
        )));
    }
    let inside = c.contains(&w);
    let scalar = w.is_scalar();
    let verdict = match (inside, scalar) {
        (true, false) => "member: yes (non-scalar)",
        (true, true) => "member: yes (scalar)",
        (false, _) => "member: no",
    };
    Ok(Output {
        text: format!("{verdict}\n"),
        code: if inside { 0 } else { 1 },
    })
}

fn certify<F: Field>(f: &F, input: &Input, seed: u64) -> Result<Output, Failure> {
    let a = input.algebra(f)?;
    match certify_nonscalar_commutant(&a, seed) {
        Ok(c) => {
            if !c.verify(&a) {
                return Err(Failure::Domain(format!(
                    "{}: witness failed to verify",
                    input.path.display()
                )));
            }
            Ok(Output::ok(format_certificate(&c)))
        }
        Err(Error::GenuinelyTrivial(msg)) => Ok(Output::ok(format!("genuinely-trivial: {msg}\n"))),
        Err(e) => Err(at(&input.path, e)),
    }
}

fn classify<F: Field>(f: &F, input: &Input) -> Result<Output, Failure> {
    let a = input.algebra(f)?;
    let r = classify_dim4(&a).map_err(|e| at(&input.path, e))?;
    Ok(Output::ok(format!(
        "orientation: {}\n{}",
        r.orientation,
        format_matrix(&r.conjugator)
    )))
}

fn describe(d: &PencilDiagnostics<impl Field>, out: &mut String) {
    let f = d.minor_gcd.field();
    writeln!(out, "minor-gcd: {}", d.minor_gcd).unwrap();
    writeln!(out, "rank-b: {}", d.rank_b).unwrap();
    writeln!(out, "minimal-index: {}", d.minimal_index).unwrap();
    for defect in &d.defects {
        let line = match defect {
            Defect::CommonRoot(l) => format!("common-root {}", f.format_elem(l)),
            Defect::CommonFactor(p) => format!("common-factor {p}"),
            Defect::Infinity { rank_b } => format!("infinite-block rank-b={rank_b}"),
            Defect::ShortMinimalIndex { degree, regular_size } => {
                format!("short-minimal-index degree={degree} regular-size={regular_size}")
            }
        };
        writeln!(out, "defect: {line}").unwrap();
    }
}

fn pencil<F: Field>(f: &F, input: &Input) -> Result<Output, Failure> {
    let mats = input.matrices(f)?;
    let [a, b] = <[Matrix<F>; 2]>::try_from(mats).map_err(|m| {
        Failure::Usage(format!(
            "{}: expected 2 matrices, found {}",
            input.path.display(),
            m.len()
        ))
    })?;
    let pc = Pencil::new(a, b).map_err(|e| at(&input.path, e))?;
    match kronecker_reduce(&pc) {
        Ok(r) => Ok(Output::ok(format!(
            "full-rank: yes\n{}",
            format_matrix_set(&[r.p_left, r.q_right])
        ))),
        Err(Error::NotFullRankPencil) => {
            let d = forbidden_block_detect(&pc).map_err(domain)?;
            let mut text = String::from("full-rank: no\n");
            describe(&d, &mut text);
            Ok(Output { text, code: 1 })
        }
        Err(e) => Err(at(&input.path, e)),
    }
}

fn campaign(cli: &Cli, config: &Path, report_dir: Option<&Path>) -> Result<Output, Failure> {
    let input = Input::read(config)?;
    let mut cfg: CampaignConfig = input.src.parse().map_err(|e| at(config, e))?;
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    if let Some(field) = &cli.field {
        cfg.field = field.clone();
    }
    cfg.validate()
        .map_err(|e| Failure::Usage(format!("{}: {e}", config.display())))?;
    let report = run_tn_campaign(&cfg).map_err(domain)?;
    let dir = report_dir
        .map(Path::to_path_buf)
        .or_else(|| std::env::var_os(REPORT_DIR_ENV).map(PathBuf::from));
    let code = if report.problems.is_empty() { 0 } else { 1 };
    let text = match dir {
        Some(dir) => {
            fs::create_dir_all(&dir).map_err(|e| Failure::Usage(format!("{}: {e}", dir.display())))?;
            let path = report.write_to_dir(&dir).map_err(domain)?;
            format!(
                "samples: {}\ntrivial: {}\nnontrivial: {}\nagreements: {}\ndisagreements: {}\nfailures: {}\nreport: {}\n",
                cfg.samples,
                report.trivial,
                report.nontrivial,
                report.agreements,
                report.disagreements,
                report.failures,
                path.display()
            )
        }
        None => report.render(),
    };
    Ok(Output { text, code })
}

fn recheck(path: &Path) -> Result<Output, Failure> {
    let input = Input::read(path)?;
    let n = verify_report_witnesses(&input.src).map_err(|e| at(path, e))?;
    Ok(Output::ok(format!("witnesses verified: {n}\n")))
}

fn check_bounds<F: Field>(f: &F, p: usize, q: usize, samples: Option<usize>, seed: u64) -> Result<Output, Failure> {
    let mode = match samples {
        Some(samples) => BoundMode::Random { samples, seed },
        None => BoundMode::Exhaustive,
    };
    let r = check_rank_bounds(f, p, q, mode).map_err(|e| Failure::Usage(e.to_string()))?;
    let mut text = format!("{r}\n");
    for v in &r.violations {
        writeln!(text, "violation: {v}").unwrap();
    }
    Ok(Output {
        text,
        code: if r.passed() { 0 } else { 1 },
    })
}

fn build(spec: &FieldSpec) -> Result<commutant::AnyField, Failure> {
    spec.build().map_err(|e| Failure::Usage(e.to_string()))
}

fn dispatch(cli: &Cli) -> Result<Output, Failure> {
    let over = cli.field.as_ref();
    let seed = cli.seed.unwrap_or(CERTIFY_SEED);
    match &cli.command {
        Command::Gen {
            family,
            size,
            transpose,
        } => {
            let spec = over.cloned().unwrap_or(FieldSpec::Rationals);
            with_field!(build(&spec)?, f => generate(&f, *family, *size, *transpose))
        }
        Command::Closure { input } => {
            let input = Input::read(input)?;
            with_field!(build(&input.field(over)?)?, f => closure(&f, &input))
        }
        Command::Centralizer { input, member } => {
            let input = Input::read(input)?;
            let member = member.as_deref().map(Input::read).transpose()?;
            with_field!(build(&input.field(over)?)?, f => centralizer(&f, &input, member.as_ref()))
        }
        Command::Certify { input } => {
            let input = Input::read(input)?;
            with_field!(build(&input.field(over)?)?, f => certify(&f, &input, seed))
        }
        Command::Classify { input } => {
            let input = Input::read(input)?;
            with_field!(build(&input.field(over)?)?, f => classify(&f, &input))
        }
        Command::Pencil { input } => {
            let input = Input::read(input)?;
            with_field!(build(&input.field(over)?)?, f => pencil(&f, &input))
        }
        Command::Campaign {
            recheck: Some(report), ..
        } => recheck(report),
        Command::Campaign {
            config: Some(config),
            report_dir,
            recheck: None,
        } => campaign(cli, config, report_dir.as_deref()),
        Command::Campaign { .. } => Err(Failure::Usage("campaign needs a configuration file".into())),
        Command::CheckBounds { p, q, samples } => {
            let spec = over.cloned().unwrap_or(FieldSpec::Prime(2));
            with_field!(build(&spec)?, f => check_bounds(&f, *p, *q, *samples, seed))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = dispatch(&cli).and_then(|out| {
        match &cli.output {
            Some(path) => fs::write(path, &out.text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?,
            None => print!("{}", out.text),
        }
        Ok(out.code)
    });
    match result {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.code())
        }
    }
}
