mod claims;
mod source;
mod table;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spencer_core::format::{parse_algebra, parse_cochain, write_cochain};
use spencer_core::{
    bianchi_check, conformal_algebra, cr_algebra, gl_complex, prolong_dims, solve_against, space_form_algebra,
    AdmissibleTuple, ConstantForm, Error, LinearLieAlgebra, Matrix, RAlgebra, Rational, SolveOutcome, SpencerComplex,
    Subspace,
};

use source::{parse_range, Source};
use table::{OutputFormat, Table};

const EXIT_OK: u8 = 0;
const EXIT_INVALID: u8 = 1;
const EXIT_OBSTRUCTED: u8 = 2;
const EXIT_USAGE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "spencer",
    version,
    about = "Prolongations and generalized Spencer cohomology over exact rationals"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the Jacobi identity and the grading of an algebra file.
    Validate { path: PathBuf },
    /// Dimensions of the iterated prolongations of a linear Lie algebra.
    Prolong(ProlongArgs),
    /// Dimensions of cocycles, coboundaries and cohomology.
    Cohomology(CohomologyArgs),
    /// Solve `[w^-1, w] = -z` for a curvature cochain `z`.
    Solve(SolveArgs),
    /// Run the built-in claim suite.
    PaperVerify {
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
    /// Randomized identity checks; the seed comes from `SEED`.
    PropertyCheck {
        #[arg(long, default_value_t = 50)]
        trials: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum LinearFamily {
    So,
    Co,
    #[value(name = "glC")]
    GlC,
}

#[derive(clap::Args)]
struct ProlongArgs {
    #[arg(long, value_enum, conflicts_with = "algebra")]
    family: Option<LinearFamily>,
    /// Degree 0 of this algebra acting on degree -1.
    #[arg(long)]
    algebra: Option<PathBuf>,
    #[arg(long)]
    dim: Option<usize>,
    /// Complex dimension for `glC`.
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, default_value_t = 3)]
    max_order: usize,
    #[arg(long, value_enum, default_value_t)]
    format: OutputFormat,
}

#[derive(clap::Args)]
struct CohomologyArgs {
    #[command(flatten)]
    source: Source,
    /// Degree `p`, a number or an inclusive range `a..b`.
    #[arg(long, value_parser = parse_range, default_value = "0..2")]
    p: std::ops::RangeInclusive<usize>,
    #[arg(long, default_value_t = 2)]
    q: usize,
    #[arg(long, default_value_t = 0)]
    level: usize,
    #[arg(long, value_enum, default_value_t)]
    format: OutputFormat,
}

#[derive(clap::Args)]
struct SolveArgs {
    #[command(flatten)]
    source: Source,
    #[arg(long)]
    cochain: PathBuf,
    /// Write the solution or certificate here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Validate { path } => validate(&path),
        Command::Prolong(a) => prolong(&a),
        Command::Cohomology(a) => cohomology(&a),
        Command::Solve(a) => solve(&a),
        Command::PaperVerify { format } => paper_verify(format),
        Command::PropertyCheck { trials } => property_check(trials),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn validate(path: &PathBuf) -> Result<u8> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let alg: RAlgebra = parse_algebra(&text).with_context(|| format!("in {}", path.display()))?;
    let names = alg.names();
    let mut ok = true;
    for v in alg.jacobi_report() {
        let (i, j, k) = v.triple;
        println!("FAIL jacobi ({}, {}, {})", names[i], names[j], names[k]);
        ok = false;
    }
    for v in alg.grading_report() {
        let (i, j) = v.pair;
        let off: Vec<&str> = v.offending.iter().map(|&k| names[k].as_str()).collect();
        println!(
            "FAIL grading [{}, {}] has components {}",
            names[i],
            names[j],
            off.join(", ")
        );
        ok = false;
    }
    let ineffective = alg.ineffective_kernel();
    if !ineffective.is_zero() {
        println!(
            "note: {} element(s) of degree >= 0 act trivially on degree -1",
            ineffective.dim()
        );
    }
    if ok {
        println!(
            "PASS {} (dim {}, {}, height {})",
            alg.name(),
            alg.dim(),
            alg.kind(),
            alg.height()
        );
        Ok(EXIT_OK)
    } else {
        Ok(EXIT_INVALID)
    }
}

/// The degree 0 part of an algebra as matrices acting on degree -1.
fn linear_part(alg: &RAlgebra) -> Result<LinearLieAlgebra<Rational>> {
    let neg = alg.component(-1);
    let zero = alg.component(0);
    let mut gens = Vec::new();
    let mut names = Vec::new();
    for &x in &zero {
        let mut m = Matrix::zeros(neg.len(), neg.len());
        for (col, &v) in neg.iter().enumerate() {
            for (k, c) in alg.bracket_basis(x, v) {
                let row = neg
                    .iter()
                    .position(|i| i == k)
                    .context("degree 0 does not preserve degree -1")?;
                m[(row, col)] = c.clone();
            }
        }
        gens.push(m);
        names.push(alg.names()[x].clone());
    }
    Ok(LinearLieAlgebra::new(neg.len(), names, gens)?)
}

fn prolong(a: &ProlongArgs) -> Result<u8> {
    let need = |v: Option<usize>, flag: &str| v.with_context(|| format!("--{flag} is required"));
    let h0 = match (a.family, &a.algebra) {
        (Some(LinearFamily::So), _) => LinearLieAlgebra::so(need(a.dim, "dim")?),
        (Some(LinearFamily::Co), _) => LinearLieAlgebra::co(need(a.dim, "dim")?),
        (Some(LinearFamily::GlC), _) => gl_complex(need(a.m, "m")?, 0)?.0,
        (None, Some(path)) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            linear_part(&parse_algebra(&text).with_context(|| format!("in {}", path.display()))?)?
        }
        (None, None) => bail!("give either --family or --algebra"),
    };
    if !h0.closure_report().is_empty() {
        bail!("degree 0 generators are not closed under the commutator");
    }
    let res = prolong_dims(&h0, a.max_order);
    let verdict = match res.stabilization_order {
        Some(k) => format!("finite type (vanishes at order {k})"),
        None => format!("not finite by order {}", a.max_order),
    };
    let mut t = Table::new(&["order", "dim", "cumulative", "verdict"]);
    let mut total = h0.v_dim();
    for (p, d) in res.dims().into_iter().enumerate() {
        total += d;
        t.push(vec![p.to_string(), d.to_string(), total.to_string(), verdict.clone()]);
    }
    print!("{}", t.render(a.format));
    Ok(EXIT_OK)
}

fn cohomology(a: &CohomologyArgs) -> Result<u8> {
    let c = a.source.complex()?;
    let mut t = Table::new(&["p", "q", "level", "dim_C", "dim_Z", "dim_B", "dim_H"]);
    for p in a.p.clone() {
        let r = c.cohomology_dims(p, a.q, a.level);
        t.push(
            [p, a.q, a.level, r.dim_c, r.dim_z, r.dim_b, r.dim_h]
                .iter()
                .map(|x| x.to_string())
                .collect(),
        );
    }
    print!("{}", t.render(a.format));
    Ok(EXIT_OK)
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn solve(a: &SolveArgs) -> Result<u8> {
    let c = a.source.complex()?;
    let text = fs::read_to_string(&a.cochain).with_context(|| format!("reading {}", a.cochain.display()))?;
    let z = parse_cochain(&c, &text).with_context(|| format!("in {}", a.cochain.display()))?;
    if z.q() != 2 || z.level() != 0 {
        bail!("the curvature must be a level 0 cochain with q = 2");
    }
    match solve_against(&c, &z) {
        Ok(SolveOutcome::Solved(f)) => {
            emit(&a.out, &write_cochain(&c, &f.to_cochain(&c)?))?;
            Ok(EXIT_OK)
        }
        Ok(SolveOutcome::Obstructed(rep)) => {
            eprintln!("OBSTRUCTED");
            emit(&a.out, &write_cochain(&c, &rep))?;
            Ok(EXIT_OBSTRUCTED)
        }
        Err(Error::Precondition(msg)) => {
            eprintln!("{msg}");
            Ok(EXIT_INVALID)
        }
        Err(e) => Err(e.into()),
    }
}

fn paper_verify(format: OutputFormat) -> Result<u8> {
    let claims = claims::run_all()?;
    let mut t = Table::new(&["claim", "statement", "expected", "computed", "verdict"]);
    let mut all = true;
    for c in &claims {
        all &= c.passed();
        t.push(vec![
            c.id.clone(),
            c.statement.clone(),
            c.expected.clone(),
            c.computed.clone(),
            if c.passed() { "pass" } else { "FAIL" }.into(),
        ]);
    }
    print!("{}", t.render(format));
    Ok(if all { EXIT_OK } else { EXIT_INVALID })
}

fn seed() -> Result<u64> {
    match std::env::var("SEED") {
        Ok(s) => s
            .trim()
            .parse()
            .with_context(|| format!("SEED must be an integer, got `{s}`")),
        Err(_) => Ok(20_240_601),
    }
}

fn small(rng: &mut ChaCha8Rng) -> Rational {
    Rational::from_integer(rng.gen_range(-3i64..=3).into())
}

fn random_coords(rng: &mut ChaCha8Rng, n: usize) -> Vec<Rational> {
    (0..n).map(|_| small(rng)).collect()
}

/// Random element of `Z^{p,1}` at level 0.
fn random_cocycle_form(c: &SpencerComplex<Rational>, rng: &mut ChaCha8Rng, p: usize) -> Result<ConstantForm<Rational>> {
    let z = c.cocycles(p, 1, 0);
    let coords = z.combine(&random_coords(rng, z.dim()));
    Ok(ConstantForm::from_cochain(c, &c.from_coords(p, 1, 0, &coords)?)?)
}

fn property_check(trials: usize) -> Result<u8> {
    let seed = seed()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut complexes = vec![
        (
            "space form 4, W 2",
            SpencerComplex::with_leading_w(space_form_algebra(4, 0)?, 2)?,
        ),
        (
            "conformal 3, W 2",
            SpencerComplex::with_leading_w(conformal_algebra(3)?, 2)?,
        ),
        (
            "conformal 4, W 3",
            SpencerComplex::with_leading_w(conformal_algebra(4)?, 3)?,
        ),
    ];
    let (cr, cs) = cr_algebra(2, 1, 2)?;
    complexes.push((
        "cr 2 1",
        SpencerComplex::new(cr, Subspace::coordinate(4, cs.w.iter().copied()))?,
    ));

    let mut t = Table::new(&["property", "model", "trials", "failures"]);
    let mut failures_total = 0;
    for (name, c) in &complexes {
        let top = c.algebra().height();
        let mut failures = 0;
        for _ in 0..trials {
            let p = rng.gen_range(2..=top + 1);
            let q = rng.gen_range(0..=1);
            let x = c.from_coords(p, q, 0, &random_coords(&mut rng, c.dim_c(p, q, 0)))?;
            if !c.spencer_d(&c.spencer_d(&x)?)?.is_zero() {
                failures += 1;
            }
        }
        failures_total += failures;
        t.push(vec![
            "d^2 = 0".into(),
            name.to_string(),
            trials.to_string(),
            failures.to_string(),
        ]);
    }

    let c = &complexes[2].1;
    let alg = c.algebra();
    let gsharp = alg.g_sharp_subalgebra(c.w())?;
    let mut failures = 0;
    for _ in 0..trials {
        let x = alg.embed(0, &gsharp.combine(&random_coords(&mut rng, gsharp.dim())));
        let p = rng.gen_range(1..=2);
        let y = c.from_coords(p, 1, 0, &random_coords(&mut rng, c.dim_c(p, 1, 0)))?;
        let lhs = c.spencer_d(&c.g_sharp_act(&x, &y)?)?;
        let rhs = c.g_sharp_act(&x, &c.spencer_d(&y)?)?;
        if lhs != rhs {
            failures += 1;
        }
    }
    failures_total += failures;
    t.push(vec![
        "g# equivariance".into(),
        complexes[2].0.into(),
        trials.to_string(),
        failures.to_string(),
    ]);

    for (name, c) in &complexes[1..3] {
        let mut failures = 0;
        for _ in 0..trials {
            let mut tuple = AdmissibleTuple::empty();
            tuple.push(random_cocycle_form(c, &mut rng, 1)?)?;
            let mut ok = bianchi_check(c, &tuple, 1)?.passed();
            if let SolveOutcome::Solved(f) = spencer_core::solve_next(c, &tuple, 1)? {
                let extra = random_cocycle_form(c, &mut rng, 2)?;
                tuple.push(f.add(&extra)?)?;
                ok &= bianchi_check(c, &tuple, 2)?.passed();
            }
            if !ok {
                failures += 1;
            }
        }
        failures_total += failures;
        t.push(vec![
            "Bianchi".into(),
            name.to_string(),
            trials.to_string(),
            failures.to_string(),
        ]);
    }

    println!("seed {seed}");
    print!("{}", t.render(OutputFormat::Text));
    Ok(if failures_total == 0 { EXIT_OK } else { EXIT_INVALID })
}
