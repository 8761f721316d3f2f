//! `weylkit` — command-line surface over the exact Lie-theory library.
//!
//! Every command computes with exact arithmetic and a fixed default seed,
//! so identical invocations produce identical results; in particular the
//! JSON output of two runs with the same arguments is byte-identical.
//! JSON is the machine contract (every document carries `schema_version`);
//! text output is for humans and not stable; CSV is provided where the
//! result is naturally tabular (`classes`, `census`, `strata`).
//!
//! Exit codes: 0 success, 1 computation or verification failure, 2 usage
//! error, 3 resource cap exceeded (with a partial report).

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use weylkit::b2model::{StrataDocument, StrataModel};
use weylkit::cache::{gram_key, Cache};
use weylkit::verification::{self, VerificationConfig};
use weylkit::weyl::{CensusConfig, CensusReport, ClassRecord, DescentOutcome, DEFAULT_DESCENT_CAP, DEFAULT_ELEMENT_CAP};
use weylkit::{AdjointModule, Error, LieType, WeylGroup, DEFAULT_SEED};

/// Version stamp carried by every JSON document this binary emits.
const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(
    name = "weylkit",
    version,
    about = "Exact root systems, Weyl groups, Chevalley operators, and symplectic strata",
    after_help = "Exit codes: 0 success, 1 failure, 2 usage error, 3 resource cap (partial report)."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format; csv is available for classes, census, and strata.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Cache directory for expensive reports (overrides $WEYLKIT_CACHE).
    #[arg(long, global = true, value_name = "DIR")]
    cache_dir: Option<PathBuf>,

    /// Worker threads for parallel enumeration (default: all cores).
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

/// Selects a root-system type: A1..A8, D4..D8, E6, E7, E8, or B2.
#[derive(Args)]
struct TypeArg {
    #[arg(long = "type", value_name = "TYPE", value_parser = parse_lie_type)]
    lie_type: LieType,
}

#[derive(Subcommand)]
enum Command {
    /// Count the roots of a type.
    Roots {
        #[command(flatten)]
        t: TypeArg,
    },
    /// Weyl group order via a stabilizer chain.
    WeylOrder {
        #[command(flatten)]
        t: TypeArg,
    },
    /// Exhaustive conjugacy classes (small groups).
    Classes {
        #[command(flatten)]
        t: TypeArg,
        /// Refuse enumeration beyond this many elements.
        #[arg(long, default_value_t = DEFAULT_ELEMENT_CAP)]
        cap: usize,
    },
    /// Sampling census of conjugacy-class fingerprints.
    Census {
        #[command(flatten)]
        t: TypeArg,
        /// Uniform samples to draw.
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        /// Sampling seed.
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Skip fingerprinting the divisor powers of each sample.
        #[arg(long)]
        no_power_closure: bool,
    },
    /// Minimal length over a conjugacy class, by non-increasing descent.
    Cmin {
        #[command(flatten)]
        t: TypeArg,
        /// Start element as a comma-separated word in the generators
        /// (e.g. "0,1,0,2"); default is the Coxeter element.
        #[arg(long, value_name = "WORD", conflicts_with = "longest")]
        word: Option<String>,
        /// Start from the longest element instead.
        #[arg(long)]
        longest: bool,
        /// Refuse descents whose plateaus exceed this many states.
        #[arg(long, default_value_t = DEFAULT_DESCENT_CAP)]
        cap: usize,
    },
    /// Operator identities for one simply-laced type: E³ = 0, E² even,
    /// sl2 relations, and the one-parameter law over F₂, F₃, F₅.
    AdjointCheck {
        #[command(flatten)]
        t: TypeArg,
    },
    /// Order of the group generated by exp(λE) over F_p (rank ≤ 3).
    Chevgroup {
        #[command(flatten)]
        t: TypeArg,
        /// Field characteristic.
        #[arg(long)]
        p: u32,
        /// Refuse closures beyond this many elements.
        #[arg(long, default_value_t = 1_000_000)]
        cap: usize,
    },
    /// Relative-position strata of the symplectic finite model.
    Strata {
        /// Only B2 is implemented.
        #[arg(long = "type", value_name = "TYPE", value_parser = parse_lie_type, default_value = "B2")]
        lie_type: LieType,
        /// Field size (3 or 5; 5 enumerates ~423k extension flags).
        #[arg(long, default_value_t = 3)]
        q: u8,
    },
    /// Run the full verification suite (builds everything from scratch).
    Verify {
        /// Census samples for the class-count check.
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        /// Seed for every sampling check.
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

fn main() {
    let cli = Cli::parse();
    std::process::exit(run(cli));
}

fn run(cli: Cli) -> i32 {
    if let Some(n) = cli.threads {
        // A failure here means a global pool already exists; that pool
        // serves fine, so the error is deliberately ignored.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let cache = match resolve_cache(&cli) {
        Ok(cache) => cache,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    match dispatch(&cli, &cache) {
        Ok(code) => code,
        Err(failure) => {
            if let Some(partial) = &failure.partial {
                match cli.format {
                    Format::Json => emit_json(failure.command, partial),
                    _ => println!(
                        "partial result in {}: reached {} of cap {}",
                        partial.what, partial.reached, partial.cap
                    ),
                }
            }
            eprintln!("error: {}", failure.message);
            failure.code
        }
    }
}

fn resolve_cache(cli: &Cli) -> weylkit::Result<Cache> {
    match &cli.cache_dir {
        Some(dir) => Cache::at(dir),
        None => Cache::from_env(),
    }
}

// ---------------------------------------------------------------------------
// Failure mapping
// ---------------------------------------------------------------------------

/// Where a resource-capped computation stopped.
#[derive(Serialize)]
struct PartialReport {
    status: &'static str,
    what: String,
    cap: String,
    reached: String,
}

struct Failure {
    command: &'static str,
    code: i32,
    message: String,
    partial: Option<PartialReport>,
}

impl Failure {
    fn usage(command: &'static str, message: impl Into<String>) -> Self {
        Failure { command, code: 2, message: message.into(), partial: None }
    }

    fn from_error(command: &'static str, e: Error) -> Self {
        let code = match &e {
            Error::Argument(_) | Error::Unsupported(_) | Error::NotPositiveDefinite { .. } => 2,
            Error::Resource { .. } => 3,
            _ => 1,
        };
        let partial = match &e {
            Error::Resource { what, limit, partial } => Some(PartialReport {
                status: "resource_cap_exceeded",
                what: (*what).to_string(),
                cap: limit.to_string(),
                reached: partial.to_string(),
            }),
            _ => None,
        };
        Failure { command, code, message: e.to_string(), partial }
    }
}

/// Shorthand for `Result` with a mapped CLI failure.
type CliResult = Result<i32, Failure>;

trait MapFailure<T> {
    fn or_fail(self, command: &'static str) -> Result<T, Failure>;
}

impl<T> MapFailure<T> for weylkit::Result<T> {
    fn or_fail(self, command: &'static str) -> Result<T, Failure> {
        self.map_err(|e| Failure::from_error(command, e))
    }
}

// ---------------------------------------------------------------------------
// Emission
// ---------------------------------------------------------------------------

/// Every JSON document is this envelope; `report` is command-specific.
#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    schema_version: u32,
    command: &'a str,
    report: T,
}

fn emit_json<T: Serialize>(command: &str, report: &T) {
    let doc = Envelope { schema_version: SCHEMA_VERSION, command, report };
    println!(
        "{}",
        serde_json::to_string_pretty(&doc).expect("reports serialize without maps or floats")
    );
}

fn no_csv(command: &'static str) -> Failure {
    Failure::usage(command, format!("csv output is not defined for `{command}`"))
}

/// Note cache traffic on stderr (stdout stays byte-stable across hits).
fn note_cache(cache: &Cache, kind: &str, hit: bool) {
    if cache.enabled() {
        eprintln!("cache {}: {kind}", if hit { "hit" } else { "miss" });
    }
}

// ---------------------------------------------------------------------------
// Dispatch
// ---------------------------------------------------------------------------

fn dispatch(cli: &Cli, cache: &Cache) -> CliResult {
    match &cli.command {
        Command::Roots { t } => cmd_roots(cli, t.lie_type),
        Command::WeylOrder { t } => cmd_weyl_order(cli, t.lie_type),
        Command::Classes { t, cap } => cmd_classes(cli, cache, t.lie_type, *cap),
        Command::Census { t, samples, seed, no_power_closure } => {
            cmd_census(cli, cache, t.lie_type, *samples, *seed, !*no_power_closure)
        }
        Command::Cmin { t, word, longest, cap } => {
            cmd_cmin(cli, t.lie_type, word.as_deref(), *longest, *cap)
        }
        Command::AdjointCheck { t } => cmd_adjoint_check(cli, t.lie_type),
        Command::Chevgroup { t, p, cap } => cmd_chevgroup(cli, t.lie_type, *p, *cap),
        Command::Strata { lie_type, q } => cmd_strata(cli, cache, *lie_type, *q),
        Command::Verify { samples, seed } => cmd_verify(cli, *samples, *seed),
    }
}

// ---------------------------------------------------------------------------
// roots
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct RootsReport {
    lie_type: String,
    rank: usize,
    roots: usize,
    positive_roots: usize,
    highest_root_height: i64,
}

fn cmd_roots(cli: &Cli, t: LieType) -> CliResult {
    const CMD: &str = "roots";
    let rs = weylkit::RootSystem::for_type(t);
    let highest = rs.root(rs.num_positive() as u16 - 1);
    let report = RootsReport {
        lie_type: t.to_string(),
        rank: rs.rank(),
        roots: rs.num_roots(),
        positive_roots: rs.num_positive(),
        highest_root_height: highest.iter().map(|&c| i64::from(c)).sum(),
    };
    match cli.format {
        Format::Json => emit_json(CMD, &report),
        Format::Text => println!(
            "{}: {} roots, {} positive (rank {}, highest root height {})",
            report.lie_type, report.roots, report.positive_roots, report.rank,
            report.highest_root_height
        ),
        Format::Csv => return Err(no_csv(CMD)),
    }
    Ok(0)
}

// ---------------------------------------------------------------------------
// weyl-order
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct WeylOrderReport {
    lie_type: String,
    /// Decimal string: the order exceeds 64 bits for large ranks.
    order: String,
    /// Closed-form factorization where one is traditional.
    display: Option<String>,
}

fn cmd_weyl_order(cli: &Cli, t: LieType) -> CliResult {
    const CMD: &str = "weyl-order";
    let w = WeylGroup::for_type(t);
    let order = w.order();
    let display = match t {
        LieType::E8 => Some("4!\u{b7}6!\u{b7}8!".to_string()),
        LieType::A(n) => Some(format!("{}!", n + 1)),
        LieType::D(n) => Some(format!("2^{}\u{b7}{}!", n - 1, n)),
        LieType::B2 => Some("2^2\u{b7}2!".to_string()),
        LieType::E6 | LieType::E7 => None,
    };
    let report = WeylOrderReport { lie_type: t.to_string(), order: order.to_string(), display };
    match cli.format {
        Format::Json => emit_json(CMD, &report),
        Format::Text => match &report.display {
            Some(d) => println!("|W({})| = {} = {d}", report.lie_type, report.order),
            None => println!("|W({})| = {}", report.lie_type, report.order),
        },
        Format::Csv => return Err(no_csv(CMD)),
    }
    Ok(0)
}

// ---------------------------------------------------------------------------
// classes
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct ClassesReport {
    lie_type: String,
    group_order: String,
    class_count: usize,
    distinct_fingerprints: usize,
    classes: Vec<ClassRecord>,
}

fn cmd_classes(cli: &Cli, cache: &Cache, t: LieType, cap: usize) -> CliResult {
    const CMD: &str = "classes";
    let w = WeylGroup::for_type(t);
    let mut key = gram_key(w.roots().datum());
    key.extend_from_slice(&(cap as u64).to_le_bytes());
    let (classes, hit): (Vec<ClassRecord>, bool) = cache
        .get_or_compute(CMD, 1, &key, || w.conjugacy_classes(cap))
        .or_fail(CMD)?;
    note_cache(cache, CMD, hit);
    let mut fingerprints: Vec<_> = classes.iter().map(|c| &c.fingerprint).collect();
    fingerprints.sort();
    fingerprints.dedup();
    let report = ClassesReport {
        lie_type: t.to_string(),
        group_order: w.order().to_string(),
        class_count: classes.len(),
        distinct_fingerprints: fingerprints.len(),
        classes,
    };
    match cli.format {
        Format::Json => emit_json(CMD, &report),
        Format::Text => {
            println!(
                "W({}): order {}, {} conjugacy classes, {} distinct fingerprints",
                report.lie_type, report.group_order, report.class_count,
                report.distinct_fingerprints
            );
            println!("{:>4} {:>10} {:>10} {:>6}  elliptic", "id", "size", "min_length", "order");
            for (id, c) in report.classes.iter().enumerate() {
                println!(
                    "{id:>4} {:>10} {:>10} {:>6}  {}",
                    c.size, c.min_length, c.element_order,
                    if c.elliptic { "yes" } else { "no" }
                );
            }
        }
        Format::Csv => {
            print!("{}", classes_csv(&report));
        }
    }
    Ok(0)
}

fn classes_csv(report: &ClassesReport) -> String {
    let mut out = String::from("class,size,min_length,element_order,elliptic\n");
    for (id, c) in report.classes.iter().enumerate() {
        out.push_str(&format!(
            "{id},{},{},{},{}\n",
            c.size, c.min_length, c.element_order, c.elliptic
        ));
    }
    out
}

// ---------------------------------------------------------------------------
// census
// ---------------------------------------------------------------------------

fn cmd_census(
    cli: &Cli,
    cache: &Cache,
    t: LieType,
    samples: u64,
    seed: u64,
    power_closure: bool,
) -> CliResult {
    const CMD: &str = "census";
    let w = WeylGroup::for_type(t);
    let config = CensusConfig { samples, seed, power_closure };
    let mut key = gram_key(w.roots().datum());
    key.extend_from_slice(&samples.to_le_bytes());
    key.extend_from_slice(&seed.to_le_bytes());
    key.push(u8::from(power_closure));
    let (report, hit): (CensusReport, bool) = cache
        .get_or_compute(CMD, 1, &key, || Ok(w.census(&config)))
        .or_fail(CMD)?;
    note_cache(cache, CMD, hit);
    match cli.format {
        Format::Json => emit_json(CMD, &report),
        Format::Text => {
            println!(
                "census of W({}): {} samples, seed {:#x}, power closure {}",
                t.to_string(), report.samples, report.seed,
                if report.power_closure { "on" } else { "off" }
            );
            println!("group order {}", report.group_order);
            println!(
                "{} distinct fingerprints, {} elliptic",
                report.distinct_fingerprints, report.elliptic_fingerprints
            );
            let mut histogram: Vec<(u64, usize)> = Vec::new();
            for class in &report.classes {
                match histogram.iter_mut().find(|(o, _)| *o == class.element_order) {
                    Some((_, n)) => *n += 1,
                    None => histogram.push((class.element_order, 1)),
                }
            }
            histogram.sort_unstable();
            let line: Vec<String> =
                histogram.iter().map(|(o, n)| format!("{o}:{n}")).collect();
            println!("fingerprints by element order: {}", line.join(" "));
        }
        Format::Csv => {
            let mut out = String::from("element_order,elliptic,sampled_occurrences\n");
            for c in &report.classes {
                out.push_str(&format!(
                    "{},{},{}\n",
                    c.element_order, c.elliptic, c.sampled_occurrences
                ));
            }
            print!("{out}");
        }
    }
    Ok(0)
}

// ---------------------------------------------------------------------------
// cmin
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct CminReport {
    lie_type: String,
    start: String,
    outcome: DescentOutcome,
}

fn cmd_cmin(cli: &Cli, t: LieType, word: Option<&str>, longest: bool, cap: usize) -> CliResult {
    const CMD: &str = "cmin";
    let w = WeylGroup::for_type(t);
    let (element, start) = if let Some(word) = word {
        let letters = parse_word(word).map_err(|m| Failure::usage(CMD, m))?;
        (w.word(&letters).or_fail(CMD)?, format!("word {letters:?}"))
    } else if longest {
        (w.longest_element(), "longest element".to_string())
    } else {
        (w.coxeter_element(), "Coxeter element".to_string())
    };
    let outcome = w.min_length_descent(&element, cap).or_fail(CMD)?;
    let report = CminReport { lie_type: t.to_string(), start, outcome };
    match cli.format {
        Format::Json => emit_json(CMD, &report),
        Format::Text => {
            println!(
                "cmin in W({}) from {}: length {} -> class minimum {}",
                report.lie_type, report.start,
                report.outcome.start_length, report.outcome.min_length
            );
            println!(
                "plateau size {}, {} strict drops, {} states explored",
                report.outcome.plateau_size, report.outcome.descent_steps,
                report.outcome.explored
            );
        }
        Format::Csv => return Err(no_csv(CMD)),
    }
    Ok(0)
}

fn parse_word(word: &str) -> Result<Vec<usize>, String> {
    word.split([',', ' '])
        .filter(|part| !part.is_empty())
        .map(|part| {
            part.parse::<usize>()
                .map_err(|_| format!("word letter `{part}` is not a generator index"))
        })
        .collect()
}

// ---------------------------------------------------------------------------
// adjoint-check
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct AdjointCheckReport {
    lie_type: String,
    dim: usize,
    mplus_dim: usize,
    operators: usize,
    one_parameter_products: usize,
    failures: Vec<String>,
    passed: bool,
}

fn cmd_adjoint_check(cli: &Cli, t: LieType) -> CliResult {
    const CMD: &str = "adjoint-check";
    let m = AdjointModule::for_type(t).or_fail(CMD)?;
    let mut failures = Vec::new();
    for node in 0..m.roots().rank() {
        if let Err(e) = m.sl2_check(node) {
            failures.push(e.to_string());
        }
    }
    let mut products = 0usize;
    let operators = m.shift_operators();
    for op in &operators {
        if !op.cube_is_zero() {
            failures.push(format!("node {} dir {}: cube is nonzero", op.node(), op.direction()));
            continue;
        }
        if let Err(e) = op.half_square() {
            failures.push(e.to_string());
            continue;
        }
        for p in [2u32, 3, 5] {
            let field = weylkit::linalg::PrimeField::new(p).or_fail(CMD)?;
            let exps: weylkit::Result<Vec<_>> =
                (0..p).map(|lambda| op.exp_in(field.clone(), &lambda)).collect();
            let exps = exps.or_fail(CMD)?;
            for lambda in 0..p as usize {
                for mu in 0..p as usize {
                    let prod = exps[lambda].mul(&exps[mu]).or_fail(CMD)?;
                    if prod != exps[(lambda + mu) % p as usize] {
                        failures.push(format!(
                            "node {} dir {}: one-parameter law fails at ({lambda},{mu}) over F_{p}",
                            op.node(), op.direction()
                        ));
                    }
                    products += 1;
                }
            }
        }
    }
    let report = AdjointCheckReport {
        lie_type: t.to_string(),
        dim: m.dim(),
        mplus_dim: m.mplus_dim(),
        operators: operators.len(),
        one_parameter_products: products,
        passed: failures.is_empty(),
        failures,
    };
    match cli.format {
        Format::Json => emit_json(CMD, &report),
        Format::Text => {
            println!(
                "adjoint module {}: dim {} (positive part {}), {} operators",
                report.lie_type, report.dim, report.mplus_dim, report.operators
            );
            println!(
                "cube-zero, even squares, sl2 relations, one-parameter law \
                 ({} products over F2/F3/F5): {}",
                report.one_parameter_products,
                if report.passed { "all hold" } else { "FAILED" }
            );
            for f in &report.failures {
                println!("  {f}");
            }
        }
        Format::Csv => return Err(no_csv(CMD)),
    }
    Ok(if report.passed { 0 } else { 1 })
}

// ---------------------------------------------------------------------------
// chevgroup
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct ChevgroupReport {
    lie_type: String,
    p: u32,
    order: u64,
}

fn cmd_chevgroup(cli: &Cli, t: LieType, p: u32, cap: usize) -> CliResult {
    const CMD: &str = "chevgroup";
    let m = AdjointModule::for_type(t).or_fail(CMD)?;
    let order = m.chevalley_closure_order(p, cap).or_fail(CMD)?;
    let report = ChevgroupReport { lie_type: t.to_string(), p, order };
    match cli.format {
        Format::Json => emit_json(CMD, &report),
        Format::Text => println!(
            "closure of exp(\u{3bb}E) for {} over F_{}: order {}",
            report.lie_type, report.p, report.order
        ),
        Format::Csv => return Err(no_csv(CMD)),
    }
    Ok(0)
}

// ---------------------------------------------------------------------------
// strata
// ---------------------------------------------------------------------------

fn cmd_strata(cli: &Cli, cache: &Cache, t: LieType, q: u8) -> CliResult {
    const CMD: &str = "strata";
    if t != LieType::B2 {
        return Err(Failure::usage(CMD, "strata are implemented for --type B2 only"));
    }
    if !matches!(q, 3 | 5) {
        return Err(Failure::usage(
            CMD,
            "strata need class dimensions, so q must be 3 or 5 (q = 2 is bad characteristic)",
        ));
    }
    let (doc, hit): (StrataDocument, bool) = cache
        .get_or_compute(CMD, 1, &[q], || Ok(StrataModel::build(q)?.document()))
        .or_fail(CMD)?;
    note_cache(cache, CMD, hit);
    match cli.format {
        Format::Json => emit_json(CMD, &doc),
        Format::Text => print!("{}", strata_text(&doc)),
        Format::Csv => print!("{}", doc.csv()),
    }
    Ok(0)
}

fn strata_text(doc: &StrataDocument) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "strata at q = {}: group order {}{}, {} classes\n\n",
        doc.q,
        doc.order,
        if doc.center_projected { " (central quotient)" } else { "" },
        doc.classes.len()
    ));
    out.push_str(&format!(
        "{:<14} {:>5} {:>5}  {:<18} boxed classes (dimension {{delta}})\n",
        "stratum", "min_l", "delta", "well defined"
    ));
    for s in &doc.strata {
        let boxed: Vec<String> = s.boxed.iter().map(|c| c.to_string()).collect();
        out.push_str(&format!(
            "{:<14} {:>5} {:>5}  {:<18} [{}]\n",
            s.label.as_str(),
            s.min_length,
            s.delta,
            if s.well_defined && s.rationally_well_defined { "yes (both fields)" } else { "NO" },
            boxed.join(",")
        ));
    }
    let th = &doc.theorems;
    out.push_str(&format!(
        "\n(a) boxed sets cover all classes: {}\n",
        if th.cover { "yes" } else { "NO" }
    ));
    if !th.rational_cover {
        out.push_str(&format!(
            "    over the base field alone, classes {:?} stay unboxed \
             (square-class obstruction; resolved over F_q\u{b2})\n",
            th.rationally_uncovered_classes
        ));
    }
    out.push_str(&format!(
        "(b) boxed sets pairwise equal or disjoint: {}\n",
        if th.pairwise_equal_or_disjoint { "yes" } else { "NO" }
    ));
    out.push_str(&format!(
        "(d) delta = 10 - l(w) on elliptic strata: {}\n",
        if th.elliptic_delta_law { "yes" } else { "NO" }
    ));
    for u in &th.unipotent {
        if u.raw_count > 0 {
            out.push_str(&format!(
                "(c) {}: {} unipotent class(es) boxed ({} after merging by \
                 dimension and characteristic polynomial)\n",
                u.label.as_str(),
                u.raw_count,
                u.merged_count
            ));
        }
    }
    out
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

fn cmd_verify(cli: &Cli, samples: u64, seed: u64) -> CliResult {
    const CMD: &str = "verify";
    if cli.format == Format::Csv {
        return Err(no_csv(CMD));
    }
    let config =
        VerificationConfig { census_samples: samples, conjugate_samples: 100, seed };
    let report = verification::run_all(&config).or_fail(CMD)?;
    match cli.format {
        Format::Json => emit_json(CMD, &report),
        Format::Text => {
            for check in &report.checks {
                println!(
                    "{} {:>2}  {}",
                    if check.passed { "ok  " } else { "FAIL" },
                    check.id,
                    check.name
                );
                if !check.passed {
                    for line in &check.details {
                        println!("        {line}");
                    }
                }
            }
            let failed = report.checks.iter().filter(|c| !c.passed).count();
            if failed == 0 {
                println!("all {} checks passed", report.checks.len());
            } else {
                println!("{failed} of {} checks FAILED", report.checks.len());
            }
        }
        Format::Csv => unreachable!("rejected above"),
    }
    Ok(if report.passed { 0 } else { 1 })
}

// ---------------------------------------------------------------------------
// type parsing
// ---------------------------------------------------------------------------

/// The library parser (A<n>, D<n>, E6/E7/E8, B2) with the CLI's rank
/// bound: ranks above 8 are out of scope for every command.
fn parse_lie_type(s: &str) -> Result<LieType, String> {
    let t: LieType = s.parse().map_err(|e: Error| e.to_string())?;
    if t.rank() > 8 {
        return Err(format!("{t} is out of the supported range (rank at most 8)"));
    }
    Ok(t)
}
