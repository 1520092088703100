//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 on a soundness violation or an internal
//! error, 2 on a usage error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::constancy::audit::{audit, AuditOptions, ConformanceReport};
use crate::constancy::{
    classify, classify_j0_with, decide, ClauseTables, ConstancyVerdict, KReading, Surface, SurfaceJ0,
    SurfaceJ1728,
};
use crate::error::Error;
use crate::geometry::{
    analyze_section_j1728, section_samples, EllipticSurfaceModel, Isotriviality, KodairaType, Place, SectionAnalysis,
};
use crate::local_root::{global_root, Family, RootMode, Sign, TraceEntry};
use crate::poly::{helfgott_shape, multiplicative_part, parse_poly, DiscriminantConvention, HelfgottShape, IntPoly};
use crate::scan::{cross_validate_verdict, scan, CrossValidation, ScanOptions, ScanReport};
use crate::weierstrass::{LutzNagell, TorsionOrder};

pub const THREADS_ENV: &str = "ROOTSCAN_THREADS";

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "rootscan", version, about = "Root numbers on isotrivial rational elliptic surfaces")]
pub struct Cli {
    /// Worker threads; overrides the ROOTSCAN_THREADS environment variable
    /// (default: available parallelism).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    J0,
    J1728,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::J0 => Family::J0,
            FamilyArg::J1728 => Family::J1728,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    PerPrime,
    ClosedForm,
}

impl From<ModeArg> for RootMode {
    fn from(m: ModeArg) -> RootMode {
        match m {
            ModeArg::PerPrime => RootMode::PerPrime,
            ModeArg::ClosedForm => RootMode::PaperClosedForm,
        }
    }
}

/// Which classifier produces the verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// The clause tables, read literally.
    Lemma,
    /// The local decision procedure.
    Sound,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KReadingArg {
    ThreeAdic,
    TwoAdic,
}

impl From<KReadingArg> for KReading {
    fn from(k: KReadingArg) -> KReading {
        match k {
            KReadingArg::ThreeAdic => KReading::ThreeAdic,
            KReadingArg::TwoAdic => KReading::TwoAdic,
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct FamilyArgs {
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    /// j0: coefficient of T^6.
    #[arg(long, value_name = "N", allow_negative_numbers = true)]
    pub a: Option<i128>,
    /// j0: constant term.
    #[arg(long, value_name = "N", allow_negative_numbers = true)]
    pub b: Option<i128>,
    #[arg(long = "A", value_name = "N", allow_negative_numbers = true)]
    pub big_a: Option<i128>,
    #[arg(long = "B", value_name = "N", allow_negative_numbers = true)]
    pub big_b: Option<i128>,
    #[arg(long = "C", value_name = "N", allow_negative_numbers = true)]
    pub big_c: Option<i128>,
}

#[derive(Args, Debug, Clone)]
pub struct VerdictArgs {
    #[arg(long, value_enum, default_value_t = Method::Lemma)]
    pub method: Method,
    /// Clause tables as JSON, replacing the built-in ones.
    #[arg(long, value_name = "PATH")]
    pub clause_table: Option<PathBuf>,
    /// Reading of `k` in the j = 0 lemma at 3.
    #[arg(long, value_enum, default_value_t = KReadingArg::ThreeAdic)]
    pub k_reading: KReadingArg,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Root number of y^2 = x^3 + delta or y^2 = x^3 + delta x.
    CurveRoot {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long, allow_negative_numbers = true)]
        delta: i128,
        #[arg(long, value_enum, default_value_t = ModeArg::PerPrime)]
        mode: ModeArg,
    },
    /// Decide whether the root number is constant on the family.
    Classify {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        verdict: VerdictArgs,
    },
    /// Root numbers of all fibers up to a height.
    Scan {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        height: u32,
    },
    /// Check a verdict against the fibers up to a height.
    Validate {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        verdict: VerdictArgs,
        #[arg(long)]
        height: u32,
    },
    /// Singular fibers of y^2 = x^3 + A(T) x + B(T).
    Kodaira {
        #[arg(long = "A", value_name = "POLY", allow_hyphen_values = true)]
        a: String,
        #[arg(long = "B", value_name = "POLY", allow_hyphen_values = true)]
        b: String,
        /// A single place: a polynomial in T, or `inf`.
        #[arg(long, allow_hyphen_values = true)]
        place: Option<String>,
    },
    /// Sections of y^2 = x^3 + A(T) x for a quartic A.
    Section {
        #[arg(long = "A", value_name = "POLY", allow_hyphen_values = true)]
        a: String,
        #[arg(long, default_value_t = 20)]
        samples: u32,
    },
    /// Places of bad reduction and the multiplicative part.
    Places {
        #[arg(long = "A", value_name = "POLY", allow_hyphen_values = true)]
        a: String,
        #[arg(long = "B", value_name = "POLY", allow_hyphen_values = true)]
        b: String,
    },
    /// Audit of the clause tables.
    Conformance {
        #[arg(long, value_name = "PATH")]
        clause_table: Option<PathBuf>,
        /// Skip the per-clause local checks.
        #[arg(long)]
        skip_local: bool,
        #[arg(long, default_value_t = 2000)]
        closed_form_limit: i128,
        #[arg(long, default_value_t = 20)]
        scan_height: u32,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveRootReport {
    pub family: Family,
    pub delta: i128,
    pub mode: RootMode,
    pub sign: Sign,
    pub trace: Vec<TraceEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyReport {
    pub surface: Surface,
    pub method: Method,
    #[serde(flatten)]
    pub verdict: ConstancyVerdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidateReport {
    pub surface: Surface,
    pub method: Method,
    #[serde(rename = "H")]
    pub h: u32,
    pub verdict: ConstancyVerdict,
    pub outcome: CrossValidation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberRow {
    pub place: String,
    pub degree: usize,
    pub v_a: Option<u32>,
    pub v_b: Option<u32>,
    pub v_delta: u32,
    pub kodaira: KodairaType,
    pub euler: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KodairaReport {
    #[serde(rename = "A")]
    pub a: String,
    #[serde(rename = "B")]
    pub b: String,
    pub discriminant: String,
    pub rational: bool,
    pub isotriviality: Isotriviality,
    pub euler_sum: u32,
    pub del_pezzo_degree1: bool,
    pub fibers: Vec<FiberRow>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleRow {
    pub z: String,
    pub x: String,
    pub point: String,
    pub alpha: String,
    pub lutz_nagell: LutzNagell,
    pub order: TorsionOrder,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectionReport {
    #[serde(rename = "A")]
    pub a: String,
    pub analysis: SectionAnalysis,
    pub samples: Vec<SampleRow>,
    pub infinite_order: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaceRow {
    pub place: String,
    pub degree: usize,
    pub multiplicative: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlacesReport {
    #[serde(rename = "A")]
    pub a: String,
    #[serde(rename = "B")]
    pub b: String,
    pub discriminant: String,
    pub places: Vec<PlaceRow>,
    /// Finite part of `M`, as a polynomial in T.
    pub m_finite: String,
    pub m_at_infinity: bool,
    pub m_degree: usize,
    pub shape: HelfgottShape,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Internal(e.to_string())
    }
}

fn usage(flag: &str, msg: impl std::fmt::Display) -> Failure {
    Failure::Usage(format!("{flag}: {msg}"))
}

struct Output {
    body: String,
    violation: bool,
}

impl Output {
    fn ok(body: String) -> Output {
        Output { body, violation: false }
    }
}

/// Parse `argv` (including the program name) and run the command.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let threads = match cli.threads {
        Some(n) => Ok(Some(n)),
        None => match std::env::var(THREADS_ENV) {
            Ok(v) => v.trim().parse::<usize>().map(Some).map_err(|e| usage(THREADS_ENV, format!("`{v}`: {e}"))),
            Err(_) => Ok(None),
        },
    };
    let result = match threads {
        Err(e) => Err(e),
        Ok(Some(0)) => Err(usage("--threads", "must be at least 1")),
        Ok(Some(n)) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| dispatch(&cli)),
            Err(e) => Err(Failure::Internal(e.to_string())),
        },
        Ok(None) => dispatch(&cli),
    };
    match result {
        Ok(o) => {
            let _ = out.write_all(o.body.as_bytes());
            if !o.body.ends_with('\n') {
                let _ = out.write_all(b"\n");
            }
            if o.violation {
                let _ = writeln!(err, "error: soundness violation");
                EXIT_FAILURE
            } else {
                EXIT_OK
            }
        }
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_USAGE
        }
        Err(Failure::Internal(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_FAILURE
        }
    }
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("report serializes")
}

fn surface(f: &FamilyArgs) -> Result<Surface, Failure> {
    let reject = |flag: &str, v: Option<i128>| match v {
        Some(_) => Err(usage(flag, format!("not used with --family {}", Family::from(f.family)))),
        None => Ok(()),
    };
    let need = |flag: &str, v: Option<i128>| v.ok_or_else(|| usage(flag, "required for this family"));
    match f.family {
        FamilyArg::J0 => {
            reject("--A", f.big_a)?;
            reject("--B", f.big_b)?;
            reject("--C", f.big_c)?;
            let s = SurfaceJ0::new(need("--a", f.a)?, need("--b", f.b)?).map_err(|e| usage("--a/--b", e))?;
            Ok(Surface::J0(s))
        }
        FamilyArg::J1728 => {
            reject("--a", f.a)?;
            reject("--b", f.b)?;
            let s = SurfaceJ1728::new(need("--A", f.big_a)?, need("--B", f.big_b)?, need("--C", f.big_c)?)
                .map_err(|e| usage("--A/--B/--C", e))?;
            Ok(Surface::J1728(s))
        }
    }
}

fn load_tables(path: &Option<PathBuf>) -> Result<ClauseTables, Failure> {
    let Some(path) = path else {
        return Ok(ClauseTables::paper());
    };
    let text = std::fs::read_to_string(path).map_err(|e| usage("--clause-table", format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| usage("--clause-table", format!("{}: {e}", path.display())))
}

fn poly(flag: &str, text: &str) -> Result<IntPoly, Failure> {
    parse_poly(text).map_err(|e| usage(flag, e))
}

fn verdict(s: &Surface, v: &VerdictArgs) -> Result<ConstancyVerdict, Failure> {
    let tables = load_tables(&v.clause_table)?;
    Ok(match (v.method, s) {
        (Method::Sound, _) => decide(s)?,
        (Method::Lemma, Surface::J0(x)) => classify_j0_with(x.a, x.b, &tables, v.k_reading.into())?,
        (Method::Lemma, _) => classify(s, &tables)?,
    })
}

fn no_csv(cmd: &str) -> Failure {
    usage("--format", format!("csv is not available for {cmd}"))
}

fn dispatch(cli: &Cli) -> Result<Output, Failure> {
    let fmt = cli.format;
    match &cli.command {
        Command::CurveRoot { family, delta, mode } => {
            let family = Family::from(*family);
            let mode = RootMode::from(*mode);
            let r = global_root(*delta, family, mode).map_err(|e| match e {
                Error::ZeroInput => usage("--delta", e),
                e => e.into(),
            })?;
            let rep = CurveRootReport { family, delta: *delta, mode, sign: r.sign, trace: r.trace.entries };
            Ok(Output::ok(match fmt {
                Format::Json => json(&rep),
                Format::Csv => {
                    format!("family,delta,mode,sign\n{},{},{:?},{}\n", family, delta, mode, rep.sign.as_i8())
                }
                Format::Text => {
                    let mut s = format!("W = {} for {family} delta = {delta}", rep.sign);
                    for e in &rep.trace {
                        let _ = write!(s, "\n  {}: {} ({})", e.place, e.sign, e.rule);
                    }
                    s
                }
            }))
        }
        Command::Classify { family, verdict: va } => {
            let s = surface(family)?;
            let v = verdict(&s, va)?;
            let rep = ClassifyReport { surface: s, method: va.method, verdict: v };
            Ok(Output::ok(match fmt {
                Format::Json => json(&rep),
                Format::Csv => format!(
                    "surface,method,verdict,sign\n\"{}\",{},{},{}\n",
                    s,
                    json_word(&rep.method),
                    if rep.verdict.is_constant() { "constant" } else { "varies" },
                    rep.verdict.constant_sign().map_or(String::new(), |x| x.as_i8().to_string())
                ),
                Format::Text => format!("{s}: {}", rep.verdict),
            }))
        }
        Command::Scan { family, height } => {
            let s = surface(family)?;
            let r: ScanReport = scan(&s, *height, ScanOptions::default())?;
            Ok(Output::ok(match fmt {
                Format::Json => r.to_json(),
                Format::Csv => r.to_csv(),
                Format::Text => r.to_text(),
            }))
        }
        Command::Validate { family, verdict: va, height } => {
            let s = surface(family)?;
            let v = verdict(&s, va)?;
            let outcome = cross_validate_verdict(&s, &v, *height)?;
            let violation = outcome.is_violation();
            let rep = ValidateReport { surface: s, method: va.method, h: *height, verdict: v, outcome };
            let body = match fmt {
                Format::Json => json(&rep),
                Format::Csv => {
                    let (kind, m, n, sign) = match &rep.outcome {
                        CrossValidation::Agree { .. } => ("agree", String::new(), String::new(), String::new()),
                        CrossValidation::WitnessNotFound { .. } => {
                            ("witness_not_found", String::new(), String::new(), String::new())
                        }
                        CrossValidation::SoundnessViolation { witness, .. } => (
                            "soundness_violation",
                            witness.m.to_string(),
                            witness.n.to_string(),
                            witness.sign.as_i8().to_string(),
                        ),
                    };
                    format!("surface,H,outcome,m,n,sign\n\"{s}\",{height},{kind},{m},{n},{sign}\n")
                }
                Format::Text => {
                    let o = match &rep.outcome {
                        CrossValidation::Agree { .. } => "agrees with the scan".to_string(),
                        CrossValidation::WitnessNotFound { observed } => match observed {
                            Some(x) => format!("only {x} observed; no witness of variation"),
                            None => "no fibers observed".to_string(),
                        },
                        CrossValidation::SoundnessViolation { claimed, witness } => format!(
                            "SOUNDNESS VIOLATION: claimed {claimed}, fiber (m, n) = ({}, {}) has {}",
                            witness.m, witness.n, witness.sign
                        ),
                    };
                    format!("{s}: {} at H = {height}: {o}", rep.verdict)
                }
            };
            Ok(Output { body, violation })
        }
        Command::Kodaira { a, b, place } => {
            let (pa, pb) = (poly("--A", a)?, poly("--B", b)?);
            let m = EllipticSurfaceModel::new(pa, pb).map_err(|e| usage("--A/--B", e))?;
            let places = match place {
                None => m.places()?,
                Some(t) if t.trim().eq_ignore_ascii_case("inf") => vec![Place::Infinity],
                Some(t) => vec![Place::Finite(poly("--place", t)?)],
            };
            let mut fibers = Vec::new();
            for p in &places {
                let (v_a, v_b, v_delta) = m.valuations(p).map_err(|e| usage("--place", e))?;
                let k = m.kodaira_type(p).map_err(|e| match (place, e) {
                    (Some(_), e) => usage("--place", e),
                    (None, e) => e.into(),
                })?;
                fibers.push(FiberRow {
                    place: p.to_string(),
                    degree: p.degree(),
                    v_a,
                    v_b,
                    v_delta,
                    kodaira: k,
                    euler: k.euler(),
                });
            }
            let rep = KodairaReport {
                a: m.a().to_string(),
                b: m.b().to_string(),
                discriminant: m.discriminant().to_string(),
                rational: m.is_rational(),
                isotriviality: m.isotriviality(),
                euler_sum: m.euler_sum()?,
                del_pezzo_degree1: m.is_del_pezzo_degree1()?,
                fibers,
            };
            Ok(Output::ok(match fmt {
                Format::Json => json(&rep),
                Format::Csv => {
                    let mut s = String::from("place,degree,v_A,v_B,v_delta,kodaira,euler\n");
                    for f in &rep.fibers {
                        let _ = writeln!(
                            s,
                            "\"{}\",{},{},{},{},{},{}",
                            f.place,
                            f.degree,
                            opt(f.v_a),
                            opt(f.v_b),
                            f.v_delta,
                            f.kodaira,
                            f.euler
                        );
                    }
                    s
                }
                Format::Text => {
                    let mut s = format!(
                        "y^2 = x^3 + ({})x + ({})\n  discriminant {}\n  rational: {}, euler sum: {}, del Pezzo degree 1: {}",
                        rep.a, rep.b, rep.discriminant, rep.rational, rep.euler_sum, rep.del_pezzo_degree1
                    );
                    for f in &rep.fibers {
                        let _ = write!(s, "\n  {}: {} (e = {})", f.place, f.kodaira, f.euler);
                    }
                    s
                }
            }))
        }
        Command::Section { a, samples } => {
            let pa = poly("--A", a)?;
            if pa.degree() != Some(4) {
                return Err(usage("--A", Error::NotDegreeFour(pa.degree().unwrap_or(0))));
            }
            let analysis = analyze_section_j1728(&pa).map_err(|e| usage("--A", e))?;
            let rows: Vec<SampleRow> = section_samples(&pa, i64::from(*samples))
                .map_err(|e| usage("--A", e))?
                .into_iter()
                .map(|s| SampleRow {
                        z: s.z.to_string(),
                        x: s.x.to_string(),
                        point: s.point.to_string(),
                        alpha: s.alpha.to_string(),
                        lutz_nagell: s.lutz_nagell,
                        order: s.order,
                })
                .collect();
            let infinite_order = rows.iter().filter(|r| r.lutz_nagell == LutzNagell::InfiniteOrder).count();
            let rep = SectionReport { a: pa.to_string(), analysis, samples: rows, infinite_order };
            Ok(Output::ok(match fmt {
                Format::Json => json(&rep),
                Format::Csv => {
                    let mut s = String::from("z,x,alpha,lutz_nagell,order\n");
                    for r in &rep.samples {
                        let _ = writeln!(
                            s,
                            "{},{},{},{},{}",
                            r.z,
                            r.x,
                            r.alpha,
                            json_word(&r.lutz_nagell),
                            order_word(r.order)
                        );
                    }
                    s
                }
                Format::Text => {
                    let mut s = format!(
                        "y^2 = x^3 + ({})x: {}\n  {} of {} samples certified of infinite order",
                        rep.a,
                        json_word(&rep.analysis),
                        rep.infinite_order,
                        rep.samples.len()
                    );
                    for r in &rep.samples {
                        let _ = write!(
                            s,
                            "\n  x = {}: {} (alpha = {}, order {})",
                            r.x,
                            json_word(&r.lutz_nagell),
                            r.alpha,
                            order_word(r.order)
                        );
                    }
                    s
                }
            }))
        }
        Command::Places { a, b } => {
            let (pa, pb) = (poly("--A", a)?, poly("--B", b)?);
            let m = EllipticSurfaceModel::new(pa.clone(), pb.clone()).map_err(|e| usage("--A/--B", e))?;
            let mp = multiplicative_part(&pa, &pb, DiscriminantConvention::Additive).map_err(|e| usage("--A/--B", e))?;
            let shape = helfgott_shape(&mp)?;
            let mut places = Vec::new();
            for p in m.places()? {
                let (v_a, _, _) = m.valuations(&p)?;
                places.push(PlaceRow { place: p.to_string(), degree: p.degree(), multiplicative: v_a == Some(0) });
            }
            let rep = PlacesReport {
                a: m.a().to_string(),
                b: m.b().to_string(),
                discriminant: m.discriminant().to_string(),
                places,
                m_finite: mp.finite.to_string(),
                m_at_infinity: mp.at_infinity,
                m_degree: mp.total_degree(),
                shape,
            };
            Ok(Output::ok(match fmt {
                Format::Json => json(&rep),
                Format::Csv => {
                    let mut s = String::from("place,degree,multiplicative\n");
                    for p in &rep.places {
                        let _ = writeln!(s, "\"{}\",{},{}", p.place, p.degree, p.multiplicative);
                    }
                    s
                }
                Format::Text => {
                    let mut s = format!("discriminant {}", rep.discriminant);
                    for p in &rep.places {
                        let kind = if p.multiplicative { "multiplicative" } else { "additive" };
                        let _ = write!(s, "\n  {} (degree {}): {kind}", p.place, p.degree);
                    }
                    let inf = if rep.m_at_infinity { " * V" } else { "" };
                    let (kind, label) = match &rep.shape {
                        HelfgottShape::Unconditional(l) => ("unconditional", l),
                        HelfgottShape::Conditional(l) => ("conditional", l),
                    };
                    let _ = write!(s, "\nM = {}{inf} (degree {}): {kind}, {label}", rep.m_finite, rep.m_degree);
                    s
                }
            }))
        }
        Command::Conformance { clause_table, skip_local, closed_form_limit, scan_height } => {
            if fmt == Format::Csv {
                return Err(no_csv("conformance"));
            }
            let tables = load_tables(clause_table)?;
            let opts = AuditOptions {
                local: !skip_local,
                closed_form_limit: *closed_form_limit,
                scan_height: *scan_height,
                surfaces: worked_examples(),
            };
            let r: ConformanceReport = audit(&tables, &opts)?;
            Ok(Output::ok(match fmt {
                Format::Text => r.render_text(),
                _ => r.to_json(),
            }))
        }
    }
}

/// Surfaces scanned by the conformance report.
pub fn worked_examples() -> Vec<Surface> {
    let j0 = |a, b| Surface::J0(SurfaceJ0::new(a, b).expect("valid"));
    let j1728 = |a, b, c| Surface::J1728(SurfaceJ1728::new(a, b, c).expect("valid"));
    vec![j0(1053, 39), j0(405, 15), j0(27, 16), j1728(3, 5, 7), j1728(3, 5, 11)]
}

fn opt(v: Option<u32>) -> String {
    v.map_or_else(|| "inf".to_string(), |x| x.to_string())
}

/// Serde name of a unit-like enum value.
fn json_word<T: Serialize>(v: &T) -> String {
    match serde_json::to_value(v).expect("serializes") {
        serde_json::Value::String(s) => s,
        serde_json::Value::Object(m) => m
            .get("kind")
            .and_then(|k| k.as_str())
            .map_or_else(|| serde_json::Value::Object(m.clone()).to_string(), str::to_string),
        other => other.to_string(),
    }
}

fn order_word(o: TorsionOrder) -> String {
    match o {
        TorsionOrder::Order(n) => n.to_string(),
        TorsionOrder::Infinite => "infinite".into(),
        TorsionOrder::Inconclusive => "inconclusive".into(),
    }
}
