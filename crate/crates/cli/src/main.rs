//! JSON front door for the congruence-orbit toolkit.
//!
//! Commands read one JSON document from stdin and write one report to
//! stdout (or `--out`). Exit codes: 0 success, 1 verification failed or
//! nothing found, 2 malformed input, 3 rank precondition unmet.

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::RngCore;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use congruence_core::fixtures::{
    planted_rank_skew, planted_rank_symmetric, random_invertible, random_skew, random_symmetric,
};
use congruence_core::{
    block_normal_form, canonical_form, certificate_to_json, congruence_apply, field_from_json,
    find_free_subspace, matrix_from_json, matrix_to_json, phi_parametrize, point_from_json,
    point_to_json, required_rank, target_to_json, tuple_rank_exhaustive, verify_outcome_to_json,
    verify_witness, witness_bundle_from_json, witness_bundle_to_json, witness_full, AnyField,
    BlockPattern, Error, Field, JsonField, MatKind, Matrix, Rationals, Result, TargetCorner,
    Tower, TuplePoint,
};

#[derive(Parser)]
#[command(
    name = "congr",
    version,
    about = "Exact congruence-orbit tools: tuple rank, canonical forms, limit-curve witnesses"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,

    /// Scalar backend when the input document carries no field config.
    #[arg(long, global = true, value_enum, default_value_t = FieldKind::Tower)]
    field: FieldKind,

    /// Base prime for the tower backend.
    #[arg(long, global = true, default_value_t = 5)]
    prime: u64,

    /// Seed for randomized commands (required there, unused elsewhere).
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Point budget for certified rank enumeration.
    #[arg(long, global = true, default_value_t = 1 << 22)]
    enum_budget: u64,

    /// Retry budget for randomized searches.
    #[arg(long, global = true, default_value_t = 16)]
    retries: u32,

    /// Worker threads for batch commands (experiment only).
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FieldKind {
    Rational,
    Tower,
}

#[derive(Subcommand)]
enum Cmd {
    /// Certified tuple rank of the input point's matrix components.
    Rank,
    /// Canonical form of {"matrix"}, or block form of {"point"} at corner width l.
    NormalForm {
        /// Corner width for the block form of a point.
        #[arg(long, default_value_t = 1)]
        l: usize,
    },
    /// Build a limit-curve witness moving the point's corner onto the target.
    Witness,
    /// Independently check a witness bundle.
    Verify,
    /// Generate instance documents.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Sweep planted component ranks below the guaranteed bound; emits CSV.
    Experiment {
        /// Symmetric components.
        #[arg(long, default_value_t = 1)]
        syms: usize,
        /// Alternating components.
        #[arg(long, default_value_t = 0)]
        alts: usize,
        /// Column-block width.
        #[arg(long, default_value_t = 0)]
        cols: usize,
        /// Corner width.
        #[arg(long, default_value_t = 2)]
        l: usize,
        /// Matrix size (default: 2*required_rank + 2).
        #[arg(long)]
        size: Option<usize>,
        /// Instances per swept rank.
        #[arg(long, default_value_t = 20)]
        instances: usize,
    },
}

#[derive(Subcommand)]
enum GenKind {
    /// Point with planted component ranks plus a random compatible target.
    Planted {
        /// Symmetric components.
        #[arg(long, default_value_t = 1)]
        syms: usize,
        /// Alternating components.
        #[arg(long, default_value_t = 0)]
        alts: usize,
        /// Column-block width.
        #[arg(long, default_value_t = 0)]
        cols: usize,
        /// Corner width the target should have.
        #[arg(long, default_value_t = 1)]
        l: usize,
        /// Matrix size (default: smallest size the witness pipeline accepts).
        #[arg(long)]
        size: Option<usize>,
        /// Planted rank per component (default: 2*required_rank, capped at size).
        #[arg(long)]
        rank: Option<usize>,
    },
    /// Bounded-rank symmetric tuple through the quadratic parametrization.
    Phi {
        /// Number of components.
        #[arg(long, default_value_t = 2)]
        mats: usize,
        /// Matrix size.
        #[arg(long, default_value_t = 6)]
        size: usize,
        /// Rank bound planted into the low component.
        #[arg(long, default_value_t = 2)]
        rank: usize,
    },
}

/// Monomorphized dispatch over the two scalar backends.
macro_rules! with_field {
    ($any:expr, $f:ident => $body:expr) => {
        match $any {
            AnyField::Rational($f) => $body,
            AnyField::Tower($f) => $body,
        }
    };
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (text, code) = match run(&cli) {
        Ok(pair) => pair,
        Err(e) => {
            let report = json!({
                "error": { "kind": error_kind(&e), "message": e.to_string() }
            });
            (report.to_string(), exit_for(&e))
        }
    };
    let text = text + "\n";
    let write_result = match &cli.out {
        Some(path) => std::fs::write(path, &text),
        None => {
            use std::io::Write as _;
            std::io::stdout().write_all(text.as_bytes())
        }
    };
    if write_result.is_err() {
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}

fn run(cli: &Cli) -> Result<(String, u8)> {
    match &cli.command {
        Cmd::Rank => {
            let doc = read_stdin_json()?;
            let field = pick_field(cli, Some(&doc))?;
            let v = with_field!(&field, f => cmd_rank(f, &doc, u128::from(cli.enum_budget)))?;
            Ok((v.to_string(), 0))
        }
        Cmd::NormalForm { l } => {
            let doc = read_stdin_json()?;
            let field = pick_field(cli, Some(&doc))?;
            let v = with_field!(&field, f => cmd_normal_form(f, cli, &doc, *l))?;
            Ok((v.to_string(), 0))
        }
        Cmd::Witness => {
            let doc = read_stdin_json()?;
            let field = pick_field(cli, Some(&doc))?;
            let v = with_field!(&field, f => cmd_witness(f, cli, &doc))?;
            Ok((v.to_string(), 0))
        }
        Cmd::Verify => {
            let doc = read_stdin_json()?;
            let field = pick_field(cli, Some(&doc))?;
            let (v, ok) = with_field!(&field, f => cmd_verify(f, &doc))?;
            Ok((v.to_string(), if ok { 0 } else { 1 }))
        }
        Cmd::Gen { kind } => {
            let field = pick_field(cli, None)?;
            let mut rng = ChaCha8Rng::seed_from_u64(require_seed(cli)?);
            let v = with_field!(&field, f => cmd_gen(f, kind, &mut rng))?;
            Ok((v.to_string(), 0))
        }
        Cmd::Experiment { syms, alts, cols, l, size, instances } => {
            let field = pick_field(cli, None)?;
            let seed = require_seed(cli)?;
            let csv = with_field!(&field, f => cmd_experiment(
                f, *syms, *alts, *cols, *l, *size, *instances, seed, cli.retries, cli.jobs,
            ))?;
            Ok((csv, 0))
        }
    }
}

fn read_stdin_json() -> Result<Value> {
    let mut buf = String::new();
    std::io::stdin()
        .read_to_string(&mut buf)
        .map_err(|e| Error::Invalid(format!("could not read stdin: {e}")))?;
    serde_json::from_str(&buf).map_err(|e| Error::Invalid(format!("input is not JSON: {e}")))
}

/// Field from the document's "field" key when present, else from flags.
fn pick_field(cli: &Cli, doc: Option<&Value>) -> Result<AnyField> {
    if let Some(v) = doc.and_then(|d| d.get("field")) {
        return field_from_json(v);
    }
    match cli.field {
        FieldKind::Rational => Ok(AnyField::Rational(Rationals)),
        FieldKind::Tower => Ok(AnyField::Tower(Tower::new(cli.prime)?)),
    }
}

fn require_seed(cli: &Cli) -> Result<u64> {
    cli.seed.ok_or_else(|| Error::Invalid("this command is randomized; pass --seed".into()))
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::DivisionByZero => "division_by_zero",
        Error::NonSquareRational(_) => "non_square_rational",
        Error::EvenCharacteristic => "even_characteristic",
        Error::BadPrime(_) => "bad_prime",
        Error::Shape(_) => "shape",
        Error::NotSymmetric => "not_symmetric",
        Error::NotSkew => "not_skew",
        Error::NegativeDegree(_) => "negative_degree",
        Error::DependentColumns => "dependent_columns",
        Error::ZeroCoefficients => "zero_coefficients",
        Error::BudgetExceeded { .. } => "budget_exceeded",
        Error::RationalEnumeration => "rational_enumeration",
        Error::NotFound(_) => "not_found",
        Error::RankPrecondition(_) => "rank_precondition",
        Error::Infeasible(_) => "infeasible",
        Error::Inconsistent => "inconsistent",
        Error::Singular => "singular",
        Error::Invalid(_) => "invalid",
    }
}

fn exit_for(e: &Error) -> u8 {
    match e {
        Error::NotFound(_) => 1,
        Error::RankPrecondition(_) => 3,
        _ => 2,
    }
}

fn get<'a>(doc: &'a Value, key: &str) -> Result<&'a Value> {
    doc.get(key).ok_or_else(|| Error::Invalid(format!("input is missing \"{key}\"")))
}

fn cmd_rank<F: JsonField>(f: &F, doc: &Value, budget: u128) -> Result<Value> {
    let point = point_from_json(f, get(doc, "point")?)?;
    let cert = tuple_rank_exhaustive(&point.combined()?, budget)?;
    Ok(certificate_to_json(f, &cert))
}

fn cmd_normal_form<F: JsonField>(f: &F, cli: &Cli, doc: &Value, l: usize) -> Result<Value> {
    if let Some(mv) = doc.get("matrix") {
        let m = matrix_from_json(f, mv)?;
        let kind = MatKind::detect(&m)?;
        let c = canonical_form(f, kind, &m)?;
        return Ok(json!({
            "kind": kind_name(kind),
            "g": matrix_to_json(f, &c.g),
            "form": matrix_to_json(f, &c.form),
            "rank": c.rank,
            "diag": c.diag.iter().map(|d| f.scalar_to_json(d)).collect::<Vec<_>>(),
        }));
    }
    let point = point_from_json(f, get(doc, "point")?)?;
    if point.n() != 0 {
        return Err(Error::Shape("block form takes a pure tuple; drop the column block".into()));
    }
    let tuple = point.combined()?;
    let s = tuple.len();
    let m_dim = (1usize << s) * l;
    let mut rng = ChaCha8Rng::seed_from_u64(require_seed(cli)?);
    let free = find_free_subspace(&tuple, m_dim, &mut rng, cli.retries).map_err(|e| match e {
        Error::NotFound(msg) => Error::RankPrecondition(format!(
            "no free subspace of dimension {m_dim}: {msg}"
        )),
        other => other,
    })?;
    let g = block_normal_form(f, &tuple, &free, l)?;
    let moved: Vec<Matrix<F>> = tuple
        .components()
        .iter()
        .map(|m| congruence_apply(&g, m))
        .collect::<Result<_>>()?;
    let kinds: Vec<MatKind> = moved.iter().map(MatKind::detect).collect::<Result<_>>()?;
    let pattern = BlockPattern { s, l, strengthened: false };
    let violations = pattern.check(f, &moved, &kinds);
    Ok(json!({
        "g": matrix_to_json(f, &g),
        "components": moved.iter().map(|m| matrix_to_json(f, m)).collect::<Vec<_>>(),
        "violations": violations,
    }))
}

fn kind_name(kind: MatKind) -> &'static str {
    match kind {
        MatKind::Symmetric => "symmetric",
        MatKind::Skew => "skew",
    }
}

fn cmd_witness<F: JsonField>(f: &F, cli: &Cli, doc: &Value) -> Result<Value> {
    let point = point_from_json(f, get(doc, "point")?)?;
    let target = target_from_json_doc(f, doc)?;
    let mut rng = ChaCha8Rng::seed_from_u64(require_seed(cli)?);
    let w = witness_full(f, &point, &target, &mut rng, cli.retries)?;
    Ok(witness_bundle_to_json(f, &point, &target, &w))
}

fn target_from_json_doc<F: JsonField>(f: &F, doc: &Value) -> Result<TargetCorner<F>> {
    congruence_core::target_from_json(f, get(doc, "target")?)
}

fn cmd_verify<F: JsonField>(f: &F, doc: &Value) -> Result<(Value, bool)> {
    let (point, target, witness) = witness_bundle_from_json(f, doc)?;
    let outcome = verify_witness(f, &point, &target, &witness)?;
    let ok = outcome.ok;
    Ok((verify_outcome_to_json(f, &outcome), ok))
}

fn cmd_gen<F: JsonField>(f: &F, kind: &GenKind, rng: &mut ChaCha8Rng) -> Result<Value> {
    match kind {
        GenKind::Planted { syms, alts, cols, l, size, rank } => {
            let (p, q, n, l) = (*syms, *alts, *cols, *l);
            let s = p + q;
            let r = required_rank(p, q, n, l);
            let min_size = (s + 1) * n + ((s + 1) * l).max((1usize << s) * l);
            let size = size.unwrap_or((2 * r).max(min_size));
            let rank = rank.unwrap_or(2 * r).min(size);
            let point = planted_point(f, p, q, n, size, rank, rng)?;
            let target = random_target(f, p, q, n, l, rng)?;
            Ok(json!({
                "field": f.config_to_json(),
                "point": point_to_json(f, &point),
                "target": target_to_json(f, &target),
            }))
        }
        GenKind::Phi { mats, size, rank } => {
            let (s, n, r) = (*mats, *size, *rank);
            if s == 0 {
                return Err(Error::ZeroCoefficients);
            }
            let pool = 64.max(4 * n as u64 * n as u64);
            let mut mu = Vec::with_capacity(s);
            for i in 0..s {
                let mut c = f.sample(rng, pool)?;
                // pivot coefficient must be nonzero for the parametrization
                while i + 1 == s && f.is_zero(&c) {
                    c = f.sample(rng, pool)?;
                }
                mu.push(c);
            }
            let parts: Vec<Matrix<F>> = (0..s - 1)
                .map(|_| random_symmetric(f, n, rng))
                .collect::<Result<_>>()?;
            let low = planted_rank_symmetric(f, n, r.min(n), rng)?;
            let g = random_invertible(f, n, rng)?;
            let tuple = phi_parametrize(f, &mu, &parts, &low, &g)?;
            let point = TuplePoint {
                syms: tuple.components().to_vec(),
                alts: vec![],
                col: Matrix::zeros(f.clone(), n, 0),
            };
            Ok(json!({
                "field": f.config_to_json(),
                "point": point_to_json(f, &point),
                "rank_bound": r.min(n),
            }))
        }
    }
}

/// Point whose matrix components have planted rank `rank` (rounded down
/// to even for alternating components) and whose column block has full
/// column rank.
fn planted_point<F: Field>(
    f: &F,
    p: usize,
    q: usize,
    n: usize,
    size: usize,
    rank: usize,
    rng: &mut dyn RngCore,
) -> Result<TuplePoint<F>> {
    let rank = rank.min(size);
    let mut syms = Vec::with_capacity(p);
    for _ in 0..p {
        syms.push(planted_rank_symmetric(f, size, rank, rng)?);
    }
    let mut alts = Vec::with_capacity(q);
    for _ in 0..q {
        alts.push(planted_rank_skew(f, size, rank & !1, rng)?);
    }
    let col = full_rank_cols(f, size, n, rng)?;
    Ok(TuplePoint { syms, alts, col })
}

fn full_rank_cols<F: Field>(
    f: &F,
    rows: usize,
    n: usize,
    rng: &mut dyn RngCore,
) -> Result<Matrix<F>> {
    if n == 0 {
        return Ok(Matrix::zeros(f.clone(), rows, 0));
    }
    if n > rows {
        return Err(Error::Shape(format!("column block {n} wider than size {rows}")));
    }
    let pool = 64.max(4 * (rows as u64) * (n as u64));
    for _ in 0..64 {
        let mut m = Matrix::zeros(f.clone(), rows, n);
        for i in 0..rows {
            for j in 0..n {
                m.set(i, j, f.sample(rng, pool)?);
            }
        }
        if m.rank() == n {
            return Ok(m);
        }
    }
    Err(Error::NotFound("could not sample a full-rank column block".into()))
}

fn random_target<F: Field>(
    f: &F,
    p: usize,
    q: usize,
    n: usize,
    l: usize,
    rng: &mut dyn RngCore,
) -> Result<TargetCorner<F>> {
    let mut syms = Vec::with_capacity(p);
    for _ in 0..p {
        syms.push(random_symmetric(f, l, rng)?);
    }
    let mut alts = Vec::with_capacity(q);
    for _ in 0..q {
        alts.push(random_skew(f, l, rng)?);
    }
    let pool = 64.max(4 * (l as u64).max(1) * (n as u64).max(1));
    let mut col = Matrix::zeros(f.clone(), l, n);
    for i in 0..l {
        for j in 0..n {
            col.set(i, j, f.sample(rng, pool)?);
        }
    }
    Ok(TargetCorner { syms, alts, col })
}

/// One sweep row: plant component ranks at `rank`, try the full
/// pipeline, record whether the verifier accepted the result.
fn experiment_job<F: Field>(
    f: &F,
    p: usize,
    q: usize,
    n: usize,
    l: usize,
    size: usize,
    rank: usize,
    retries: u32,
    seed: u64,
) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let built = planted_point(f, p, q, n, size, rank, &mut rng)
        .and_then(|point| Ok((random_target(f, p, q, n, l, &mut rng)?, point)));
    let (target, point) = match built {
        Ok(pair) => pair,
        Err(_) => return false,
    };
    match witness_full(f, &point, &target, &mut rng, retries) {
        Ok(w) => verify_witness(f, &point, &target, &w).map(|o| o.ok).unwrap_or(false),
        Err(_) => false,
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_experiment<F>(
    f: &F,
    p: usize,
    q: usize,
    n: usize,
    l: usize,
    size: Option<usize>,
    instances: usize,
    seed: u64,
    retries: u32,
    jobs: usize,
) -> Result<String>
where
    F: Field + Send + Sync,
    F::Elem: Send + Sync,
{
    let s = p + q;
    if s == 0 {
        return Err(Error::Shape("experiment needs at least one matrix component".into()));
    }
    let r = required_rank(p, q, n, l);
    // guaranteed bound 2r down to the conjectured reduction s*2^s*l + (s+1)*n
    let top = 2 * r;
    let bottom = s * (1usize << s) * l + (s + 1) * n;
    let size = size.unwrap_or(top + 2);
    let grid: Vec<(usize, usize)> = (bottom..=top)
        .rev()
        .flat_map(|rank| (0..instances).map(move |inst| (rank, inst)))
        .collect();
    let mut results = vec![false; grid.len()];
    let workers = jobs.max(1).min(grid.len().max(1));
    std::thread::scope(|scope| {
        let chunk = grid.len().div_ceil(workers.max(1)).max(1);
        let mut handles = Vec::new();
        for (w, jobs_slice) in grid.chunks(chunk).enumerate() {
            let offset = w * chunk;
            handles.push((offset, scope.spawn(move || {
                jobs_slice
                    .iter()
                    .map(|&(rank, inst)| {
                        let job_seed = seed
                            .wrapping_add((rank as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15))
                            .wrapping_add(inst as u64);
                        experiment_job(f, p, q, n, l, size, rank, retries, job_seed)
                    })
                    .collect::<Vec<bool>>()
            })));
        }
        for (offset, h) in handles {
            let part = h.join().expect("experiment worker panicked");
            results[offset..offset + part.len()].copy_from_slice(&part);
        }
    });
    let mut csv = String::from("rank,instance,success\n");
    for (&(rank, inst), ok) in grid.iter().zip(&results) {
        csv.push_str(&format!("{rank},{inst},{ok}\n"));
    }
    // body rows already end with a newline; main adds one more for the
    // final terminator, so trim the trailing one here
    csv.pop();
    Ok(csv)
}
