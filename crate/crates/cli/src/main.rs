use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use weyl_pauli::basis::{self, PartitionRecord};
use weyl_pauli::export::{self, WeylPairRecord};
use weyl_pauli::mub;
use weyl_pauli::pauli_group::{self as group, PdElement};
use weyl_pauli::verify::{self, Suite, SuiteParams};
use weyl_pauli::weyl::{self, DenseMatrix};

/// Exit status for a partition search that stops short of a full partition.
const EXIT_INCOMPLETE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "weylpauli",
    version,
    about = "Weyl pairs, generalized Pauli groups, MUBs and Cartan partitions"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Global {
    /// Dimension
    #[arg(long, global = true)]
    d: Option<u32>,
    /// Prime
    #[arg(long, global = true)]
    p: Option<u32>,
    /// Exponent for prime powers
    #[arg(long, global = true)]
    e: Option<u32>,
    /// Numerical tolerance for residual checks
    #[arg(long, global = true, default_value_t = verify::DEFAULT_TOLERANCE)]
    tolerance: f64,
    /// Cap for brute-force group computations
    #[arg(long, global = true, default_value_t = group::DEFAULT_CAP)]
    max_d: u32,
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Add per-check timings to verification reports
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    ExactJson,
    Csv,
    DenseCsv,
}

impl Format {
    fn is_csv(self) -> bool {
        matches!(self, Format::Csv | Format::DenseCsv)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Continuous Heisenberg-Weyl group identities
    Hw {
        #[command(subcommand)]
        command: HwCommand,
    },
    /// Finite generalized Pauli group P_d
    Group {
        #[command(subcommand)]
        command: GroupCommand,
    },
    /// Weyl pair, V_ra, Fourier matrix and su(2) operators
    Weyl {
        #[command(subcommand)]
        command: WeylCommand,
    },
    /// Hadamard matrices and mutually unbiased bases
    Mub {
        #[command(subcommand)]
        command: MubCommand,
    },
    /// Pauli basis of su(d) and commuting partitions
    Basis {
        #[command(subcommand)]
        command: BasisCommand,
    },
    /// Run a named verification suite
    Verify {
        /// hw, group, weyl, mub, basis or all
        #[arg(value_parser = parse_suite)]
        suite: Suite,
    },
}

#[derive(Subcommand)]
enum HwCommand {
    /// Group law, commutators, matrix representation and Lie algebra
    Check,
}

#[derive(Subcommand)]
enum GroupCommand {
    /// Conjugacy classes
    Classes,
    /// Centralizer of one element
    Centralizer {
        /// Element as a,b,c
        #[arg(long)]
        elem: String,
    },
    /// Named subgroups and the quotient by the center
    Subgroups,
    /// Characters and irreducible representations
    Irreps,
}

#[derive(Subcommand)]
enum WeylCommand {
    /// Shift X and clock Z
    Pair,
    /// Diagonal V_ra and its eigenvectors
    Vra {
        #[arg(long, default_value_t = 0.0)]
        r: f64,
        #[arg(long, default_value_t = 0)]
        a: i64,
    },
    /// Fourier matrix and its action on X and Z
    Fourier,
    /// su(2) operators built from the Weyl pair
    Su2Check,
}

#[derive(Subcommand)]
enum MubCommand {
    /// Complete family of d+1 bases for prime --p
    Family,
    /// Exact Hadamard matrix H_a
    Hadamard {
        #[arg(long)]
        a: u32,
    },
}

#[derive(Subcommand)]
enum BasisCommand {
    /// Commuting-class partition of the Pauli basis
    Partition {
        /// Prime power as p,e
        #[arg(long)]
        tensor: Option<String>,
    },
    /// Nonzero structure constants
    Structure,
}

fn parse_suite(s: &str) -> std::result::Result<Suite, String> {
    s.parse().map_err(|e: weyl_pauli::Error| e.to_string())
}

fn parse_ints<const N: usize>(s: &str, what: &str) -> Result<[i64; N]> {
    let parts = s
        .split(',')
        .map(|p| p.trim().parse::<i64>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .with_context(|| format!("{what} must be {N} comma-separated integers"))?;
    parts
        .try_into()
        .map_err(|_| anyhow!("{what} must be {N} comma-separated integers"))
}

enum Output {
    Json(Value),
    Text(String),
}

struct Outcome {
    output: Output,
    code: u8,
}

impl Outcome {
    fn ok(value: Value) -> Self {
        Outcome {
            output: Output::Json(value),
            code: 0,
        }
    }

    fn csv(text: String) -> Self {
        Outcome {
            output: Output::Text(text),
            code: 0,
        }
    }

    fn status(value: Value, passed: bool) -> Self {
        Outcome {
            output: Output::Json(value),
            code: if passed { 0 } else { 1 },
        }
    }
}

impl Global {
    fn dim(&self) -> Result<u32> {
        self.d.ok_or_else(|| anyhow!("--d is required"))
    }

    fn params(&self) -> SuiteParams {
        SuiteParams {
            d: self.d,
            p: self.p,
            e: self.e,
            tolerance: self.tolerance,
            max_d: self.max_d,
        }
    }
}

fn triple(g: PdElement) -> [u32; 3] {
    [g.a(), g.b(), g.c()]
}

fn triples(elems: &[PdElement]) -> Vec<[u32; 3]> {
    elems.iter().copied().map(triple).collect()
}

fn run(cli: &Cli) -> Result<Outcome> {
    let g = &cli.global;
    match &cli.command {
        Command::Hw {
            command: HwCommand::Check,
        } => verify_suite(g, Suite::Hw),
        Command::Verify { suite } => verify_suite(g, *suite),
        Command::Group { command } => group_command(g, command),
        Command::Weyl { command } => weyl_command(g, command),
        Command::Mub { command } => mub_command(g, command),
        Command::Basis { command } => basis_command(g, command),
    }
}

fn verify_suite(g: &Global, suite: Suite) -> Result<Outcome> {
    let report = verify::run_suite(suite, &g.params())?;
    for check in report.failures() {
        eprintln!("FAIL {} (deviation {:e})", check.name, check.max_deviation);
    }
    Ok(Outcome::status(report.to_json(g.timing), report.passed()))
}

fn group_command(g: &Global, command: &GroupCommand) -> Result<Outcome> {
    let d = g.dim()?;
    let cap = g.max_d;
    let value = match command {
        GroupCommand::Classes => {
            let report = group::conjugacy_classes(d, cap)?;
            let classes: Vec<_> = report.classes.iter().map(|c| triples(c)).collect();
            export::envelope(
                "conjugacy_classes",
                json!({
                    "d": d,
                    "class_count": report.class_count(),
                    "singleton_count": report.singleton_count,
                    "size_d_count": report.size_d_count,
                    "other_size_count": report.other_size_count,
                    "classes": classes,
                }),
            )?
        }
        GroupCommand::Centralizer { elem } => {
            let [a, b, c] = parse_ints::<3>(elem, "--elem")?;
            let x = PdElement::try_new(d, a, b, c)?;
            if d > cap {
                return Err(weyl_pauli::Error::CapExceeded { d, cap }.into());
            }
            let mut members = Vec::new();
            for h in group::elements(d) {
                if x.commutes_with(h)? {
                    members.push(h);
                }
            }
            export::envelope(
                "centralizer",
                json!({
                    "d": d,
                    "element": triple(x),
                    "size": group::centralizer_size(x),
                    "elements": triples(&members),
                }),
            )?
        }
        GroupCommand::Subgroups => {
            let subs: Vec<Value> = group::named_subgroups(d, cap)?
                .into_iter()
                .map(|s| {
                    json!({
                        "name": s.name,
                        "pattern": s.pattern,
                        "order": s.elements.len(),
                        "is_closed": s.is_closed,
                        "is_normal": s.is_normal,
                        "is_abelian": s.is_abelian,
                        "tag": s.tag,
                        "elements": triples(&s.elements),
                    })
                })
                .collect();
            let quotient = group::quotient_check(d, cap)?;
            export::envelope("subgroups", json!({ "d": d, "subgroups": subs, "quotient": quotient }))?
        }
        GroupCommand::Irreps => {
            let counts = group::irrep_counts(d)?;
            let mut irreps = Vec::new();
            for k in 1..d {
                let norm = group::irrep_character_norm(d, k, cap)?;
                irreps.push(json!({
                    "k": k,
                    "homomorphism": group::irrep_is_homomorphism(d, k, cap)?,
                    "character_norm": norm,
                    "irreducible": norm.is_one(),
                }));
            }
            export::envelope(
                "irreps",
                json!({
                    "d": d,
                    "counts": counts,
                    "burnside_holds": counts.burnside_holds(),
                    "ambivalent": group::is_ambivalent(d, cap)?,
                    "faithful_family": irreps,
                }),
            )?
        }
    };
    Ok(Outcome::ok(value))
}

fn weyl_command(g: &Global, command: &WeylCommand) -> Result<Outcome> {
    let d = g.dim()?;
    match command {
        WeylCommand::Pair => {
            let pair = WeylPairRecord::new(d)?;
            if g.format.is_csv() {
                let (x, z) = (pair.x.to_dense(), pair.z.to_dense());
                return Ok(Outcome::csv(export::to_csv(&[("X", &x), ("Z", &z)])?));
            }
            Ok(Outcome::ok(export::envelope("weyl_pair", pair)?))
        }
        WeylCommand::Vra { r, a } => {
            let v = weyl::v_ra_matrix(d, *r, *a)?;
            let vectors = (0..d)
                .map(|alpha| weyl::v_ra_eigenvector(d, *r, *a, alpha))
                .collect::<weyl_pauli::Result<Vec<_>>>()?;
            if g.format.is_csv() {
                let phi = DenseMatrix::from_columns(&vectors);
                return Ok(Outcome::csv(export::to_csv(&[("V", &v), ("Phi", &phi)])?));
            }
            let mut residual = 0.0f64;
            let mut eigenvalues = Vec::new();
            for (alpha, phi) in vectors.iter().enumerate() {
                let lambda = weyl::v_ra_eigenvalue(d, *r, *a, alpha as u32);
                for (x, y) in v.apply(phi).iter().zip(phi) {
                    residual = residual.max((x - y * lambda).norm());
                }
                eigenvalues.push(lambda);
            }
            Ok(Outcome::ok(export::envelope(
                "v_ra",
                json!({
                    "d": d,
                    "r": r,
                    "a": a,
                    "eigenvalues": eigenvalues,
                    "eigenvectors": vectors,
                    "max_residual": residual,
                }),
            )?))
        }
        WeylCommand::Fourier => {
            let f = weyl::fourier_matrix(d)?;
            if g.format.is_csv() {
                return Ok(Outcome::csv(export::to_csv(&[("F", &f)])?));
            }
            let (x, z) = weyl::weyl_pair(d)?;
            let order_four = f.pow(4).max_abs_diff(&DenseMatrix::identity(d as usize));
            let conjugation = f.matmul(&x.to_dense()).matmul(&f.adjoint()).max_abs_diff(&z.to_dense());
            let rows: Vec<Vec<_>> = (0..d as usize)
                .map(|i| (0..d as usize).map(|j| f.get(i, j)).collect())
                .collect();
            Ok(Outcome::ok(export::envelope(
                "fourier",
                json!({
                    "d": d,
                    "matrix": rows,
                    "order_four_residual": order_four,
                    "conjugation_residual": conjugation,
                    "unitarity_deviation": f.unitarity_deviation(),
                }),
            )?))
        }
        WeylCommand::Su2Check => {
            let mut entries = Vec::new();
            let mut worst = 0.0f64;
            for r in [0.0, 1.0] {
                for a in 0..d as i64 {
                    let ops = weyl::polar_su2_ops(d, r, a)?;
                    let commutation = ops.commutation_residuals();
                    let ladder = ops.ladder_residual();
                    worst = commutation.iter().copied().fold(worst, f64::max).max(ladder);
                    entries.push(json!({ "r": r, "a": a, "commutation": commutation, "ladder": ladder }));
                }
            }
            let passed = worst <= g.tolerance;
            let value = export::envelope(
                "su2_check",
                json!({
                    "d": d,
                    "checks": entries,
                    "max_deviation": worst,
                    "tolerance": g.tolerance,
                    "overall": if passed { "pass" } else { "fail" },
                }),
            )?;
            Ok(Outcome::status(value, passed))
        }
    }
}

fn mub_command(g: &Global, command: &MubCommand) -> Result<Outcome> {
    match command {
        MubCommand::Hadamard { a } => {
            let h = mub::hadamard_h_a(g.dim()?, *a)?;
            if g.format.is_csv() {
                let name = format!("H{a}");
                return Ok(Outcome::csv(export::to_csv(&[(&name, &h.to_dense())])?));
            }
            Ok(Outcome::ok(export::envelope("hadamard", h)?))
        }
        MubCommand::Family => {
            let p = g.p.or(g.d).ok_or_else(|| anyhow!("--p is required"))?;
            let family = mub::mub_family(p)?;
            let deviations = mub::pairwise_deviations(&family)?;
            let worst = deviations.iter().flatten().copied().fold(0.0, f64::max);
            let passed = worst <= g.tolerance;
            if !passed {
                eprintln!("max pairwise deviation {worst:e} exceeds tolerance {:e}", g.tolerance);
            }
            if g.format.is_csv() {
                let names: Vec<String> = family.iter().map(verify::basis_name).collect();
                let matrices: Vec<DenseMatrix> = family.iter().map(mub::OrthonormalBasis::as_matrix).collect();
                let pairs: Vec<(&str, &DenseMatrix)> = names.iter().map(String::as_str).zip(&matrices).collect();
                return Ok(Outcome {
                    output: Output::Text(export::to_csv(&pairs)?),
                    code: if passed { 0 } else { 1 },
                });
            }
            let bases: Vec<Value> = family
                .iter()
                .map(|b| json!({ "name": verify::basis_name(b), "label": b.label, "vectors": b.vectors }))
                .collect();
            let value = export::envelope(
                "mub_family",
                json!({
                    "p": p,
                    "bases": bases,
                    "deviations": deviations,
                    "max_deviation": worst,
                    "tolerance": g.tolerance,
                    "overall": if passed { "pass" } else { "fail" },
                }),
            )?;
            Ok(Outcome::status(value, passed))
        }
    }
}

fn partition_value(record: &PartitionRecord, complete: bool, nodes: Option<u64>) -> Result<Value> {
    let mut value = export::envelope("partition", record)?;
    value["complete"] = json!(complete);
    if let Some(nodes) = nodes {
        value["search_nodes"] = json!(nodes);
    }
    Ok(value)
}

fn basis_command(g: &Global, command: &BasisCommand) -> Result<Outcome> {
    match command {
        BasisCommand::Partition { tensor } => {
            let (record, complete, nodes) = if let Some(spec) = tensor {
                let [p, e] = parse_ints::<2>(spec, "--tensor")?;
                let (p, e) = (u32::try_from(p)?, u32::try_from(e)?);
                match basis::cartan_partition_prime_power(p, e) {
                    Ok(partition) => (partition.record(), true, None),
                    Err(weyl_pauli::Error::SearchFailed(msg)) => {
                        eprintln!("partition incomplete: {msg}");
                        return Ok(Outcome {
                            output: Output::Json(export::envelope("partition_failure", json!({ "p": p, "e": e }))?),
                            code: EXIT_INCOMPLETE,
                        });
                    }
                    Err(err) => return Err(err.into()),
                }
            } else {
                let d = g.dim()?;
                if weyl_pauli::arith::is_prime(d) {
                    (basis::cartan_partition_prime(d)?.record(), true, None)
                } else {
                    let search = basis::commuting_class_search(d)?;
                    (search.partition.record(), search.complete, Some(search.nodes))
                }
            };
            if !complete {
                eprintln!("partition incomplete: {} classes found", record.classes.len());
            }
            Ok(Outcome {
                output: Output::Json(partition_value(&record, complete, nodes)?),
                code: if complete { 0 } else { EXIT_INCOMPLETE },
            })
        }
        BasisCommand::Structure => {
            let d = g.dim()?;
            let table = basis::structure_constants(d)?;
            Ok(Outcome::ok(export::envelope(
                "structure_constants",
                json!({ "d": d, "count": table.len(), "entries": table }),
            )?))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return if err.use_stderr() {
                ExitCode::FAILURE
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    if cli.global.tolerance.is_nan() || cli.global.tolerance < 0.0 {
        eprintln!("error: --tolerance must be non-negative");
        return ExitCode::FAILURE;
    }
    match run(&cli) {
        Ok(outcome) => {
            match outcome.output {
                Output::Json(value) => print!("{}", export::render(&value)),
                Output::Text(text) => print!("{text}"),
            }
            ExitCode::from(outcome.code)
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}
