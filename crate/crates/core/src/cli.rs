//! The `semilocal` command line.

use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::axioms::{verify_axioms, AxiomCheck};
use crate::builders::{
    build_commutative_voa, build_direct_sum, build_heisenberg, build_lattice_upper, build_semidirect, build_virasoro,
    build_virasoro_simple, commutative_fixture, ModuleData,
};
use crate::center::{block_decompose, center, primitive_idempotents};
use crate::classify::{classify, Status, Verdict};
use crate::error::{Error, Result};
use crate::format::{parse_voa, serialize_voa};
use crate::linalg::{fmt_scalar, fmt_vector, parse_scalar, Scalar};
use crate::power_assoc::{
    check_idempotents_central, check_mode_commutation, check_power_associative, extract_v0, require_truncation,
    DEFAULT_SAMPLES, DEFAULT_SEED,
};
use crate::radicals::{
    check_center_radical_identity, find_minimal_ideal, nilpotency_status, nilradical_assoc, radical_lower_bound,
    trivial_radical, NilpotencyVerdict,
};
use crate::voa::TruncatedVoa;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "semilocal",
    version,
    about = "Exact checks on weight-truncated vertex operator algebras"
)]
pub struct Cli {
    /// Emit `key=value` records instead of prose.
    #[arg(long, global = true)]
    pub machine: bool,
    /// Seed for every sampled search.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Number of random samples per sampled search.
    #[arg(long, global = true, default_value_t = DEFAULT_SAMPLES)]
    pub samples: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run the axiom verifier.
    Check { file: Option<PathBuf> },
    /// Compute the center Z(V) and its idempotents.
    Center { file: Option<PathBuf> },
    /// Split V into blocks along the primitive idempotents of Z(V).
    Blocks { file: Option<PathBuf> },
    /// Trivial radical, J(Z(V)), the radical lower bound and the center/radical identity.
    Radicals { file: Option<PathBuf> },
    /// Locality predicates per block.
    Classify { file: Option<PathBuf> },
    /// Write a stock algebra as a `.voa` file.
    Build {
        /// heisenberg, virasoro, virasoro-simple, lattice, semidirect,
        /// heisenberg-pair, or a commutative fixture (q, qxq, dual, idem, u3).
        name: String,
        #[arg(long, default_value_t = 2)]
        level: i32,
        /// Central charge for the Virasoro builders.
        #[arg(long, default_value = "1/2", allow_hyphen_values = true)]
        charge: String,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
}

/// A line of `key=value` pairs.
type Record = Vec<(String, String)>;

struct Report {
    machine: bool,
    records: Vec<Record>,
}

impl Report {
    fn new(machine: bool) -> Self {
        Report {
            machine,
            records: Vec::new(),
        }
    }

    fn push<K: Into<String>, V: ToString>(&mut self, pairs: impl IntoIterator<Item = (K, V)>) {
        self.records
            .push(pairs.into_iter().map(|(k, v)| (k.into(), v.to_string())).collect());
    }

    fn render(&self) -> String {
        let quote = |v: &str| {
            if v.contains(char::is_whitespace) || v.is_empty() {
                format!("{v:?}")
            } else {
                v.to_string()
            }
        };
        let mut s = String::new();
        for r in &self.records {
            if self.machine {
                let parts: Vec<String> = r.iter().map(|(k, v)| format!("{k}={}", quote(v))).collect();
                s.push_str(&parts.join(" "));
            } else {
                let parts: Vec<String> = r.iter().map(|(k, v)| format!("{k}: {v}")).collect();
                s.push_str(&parts.join(", "));
            }
            s.push('\n');
        }
        s
    }
}

fn dims(d: &[usize]) -> String {
    let parts: Vec<String> = d.iter().map(usize::to_string).collect();
    format!("[{}]", parts.join(","))
}

fn verdict(v: &Verdict) -> String {
    let value = match v.value {
        Some(true) => "true",
        Some(false) => "false",
        None => "unknown",
    };
    if v.is_exact() {
        value.to_string()
    } else {
        format!("{value}(sampled)")
    }
}

fn nilpotency(v: &NilpotencyVerdict) -> String {
    match v {
        NilpotencyVerdict::NilpotentWithinWindow(r) => format!("nilpotent({r})"),
        NilpotencyVerdict::SolvableWithinWindow(r) => format!("solvable({r})"),
        NilpotencyVerdict::NotDetected => "not_detected".into(),
    }
}

fn load(file: &Option<PathBuf>, stdin: &mut dyn Read) -> Result<TruncatedVoa> {
    let text = match file {
        Some(p) if p.as_os_str() != "-" => {
            std::fs::read_to_string(p).map_err(|e| Error::Input(format!("cannot read {}: {e}", p.display())))?
        }
        _ => {
            let mut s = String::new();
            stdin
                .read_to_string(&mut s)
                .map_err(|e| Error::Input(format!("cannot read standard input: {e}")))?;
            s
        }
    };
    parse_voa(&text)
}

pub fn build_named(name: &str, level: i32, charge: &Scalar) -> Result<TruncatedVoa> {
    match name {
        "heisenberg" => build_heisenberg(level),
        "virasoro" => build_virasoro(charge, level),
        "virasoro-simple" => build_virasoro_simple(charge, level),
        "lattice" => build_lattice_upper(level),
        "semidirect" => {
            let h = build_heisenberg(level)?;
            let m = ModuleData::adjoint(&h);
            build_semidirect(&h, &m)
        }
        "heisenberg-pair" => {
            let h = build_heisenberg(level)?;
            build_direct_sum(&h, &h)
        }
        other => {
            let (label, a) =
                commutative_fixture(other).map_err(|_| Error::Input(format!("unknown algebra '{other}'")))?;
            build_commutative_voa(&label, &a)
        }
    }
}

fn cmd_check(v: &TruncatedVoa, r: &mut Report) -> i32 {
    let report = verify_axioms(v);
    for check in AxiomCheck::ALL {
        let t = report.tallies[&check];
        r.push([
            ("check", check.label().to_string()),
            ("exact", t.exact.to_string()),
            ("skipped", t.skipped.to_string()),
            ("failed", t.failed.to_string()),
        ]);
    }
    let total = report.total();
    r.push([
        ("axioms", if report.is_clean() { "pass" } else { "fail" }.to_string()),
        ("exact", total.exact.to_string()),
        ("skipped", total.skipped.to_string()),
        ("failed", total.failed.to_string()),
    ]);
    for f in report.failures.iter().take(20) {
        r.push([("failure", f.to_string())]);
    }
    if report.is_clean() {
        EXIT_OK
    } else {
        EXIT_VIOLATION
    }
}

fn cmd_center(v: &TruncatedVoa, r: &mut Report) -> Result<i32> {
    let z = center(v)?;
    let nil = nilradical_assoc(&z.algebra)?;
    let prim = primitive_idempotents(&z.algebra)?;
    r.push([
        ("center_dim", z.dim().to_string()),
        ("nilradical_dim", nil.dim().to_string()),
        ("primitive_idempotents", prim.len().to_string()),
        ("local", (z.dim() - nil.dim() == 1).to_string()),
    ]);
    for (i, s) in z.inclusion.iter().enumerate() {
        r.push([("basis", i.to_string()), ("state", fmt_vector(s))]);
    }
    for (i, e) in prim.iter().enumerate() {
        r.push([("idempotent", i.to_string()), ("state", fmt_vector(&z.embed(e)))]);
    }
    Ok(EXIT_OK)
}

fn cmd_blocks(v: &TruncatedVoa, r: &mut Report) -> Result<i32> {
    let b = block_decompose(v)?;
    let ok = b.reconstructs(v);
    r.push([("blocks", b.len().to_string()), ("reconstructs", ok.to_string())]);
    for (i, block) in b.blocks.iter().enumerate() {
        r.push([
            ("block", (i + 1).to_string()),
            ("dims", dims(block.dims())),
            ("charge", fmt_scalar(block.central_charge())),
            ("idempotent", fmt_vector(&b.idempotents[i])),
        ]);
    }
    Ok(if ok { EXIT_OK } else { EXIT_VIOLATION })
}

fn cmd_radicals(v: &TruncatedVoa, r: &mut Report, samples: usize, seed: u64) -> Result<i32> {
    let t = trivial_radical(v);
    r.push([
        ("trivial_radical_dims", dims(&t.dims())),
        ("exact", t.is_exact().to_string()),
    ]);
    let z = center(v)?;
    let nil = nilradical_assoc(&z.algebra)?;
    r.push([
        ("center_dim", z.dim().to_string()),
        ("center_nilradical_dim", nil.dim().to_string()),
    ]);
    let lb = radical_lower_bound(v)?;
    r.push([
        ("J_lower_bound_dims", dims(&lb.ideal.dims())),
        ("rounds", lb.rounds.to_string()),
        ("exact", lb.ideal.is_exact().to_string()),
    ]);
    let st = nilpotency_status(v, &lb.ideal);
    r.push([
        ("J_lower_bound_nilpotency", nilpotency(&st.verdict)),
        ("chain", dims(&st.chain)),
        ("exact", st.exact.to_string()),
    ]);
    let cr = check_center_radical_identity(v)?;
    r.push([
        (
            "center_radical_identity",
            if cr.passed() { "pass" } else { "fail" }.to_string(),
        ),
        ("closure_dims", dims(&cr.closure_dims)),
        ("closure_nilpotency", nilpotency(&cr.closure_status.verdict)),
        ("assoc_index", cr.assoc_index.to_string()),
        ("exact", cr.exact.to_string()),
    ]);
    match find_minimal_ideal(v, samples, seed) {
        Some(m) => r.push([
            ("minimal_ideal_dims", dims(&m.ideal.dims())),
            ("low_dim", m.low_dim.to_string()),
            ("trivial_radical_nonzero", m.trivial_radical_nonzero.to_string()),
            ("provenance", "sampled".to_string()),
            ("seed", seed.to_string()),
            ("samples", samples.to_string()),
        ]),
        None => r.push([
            ("minimal_ideal", "none".to_string()),
            ("provenance", "sampled".to_string()),
            ("seed", seed.to_string()),
            ("samples", samples.to_string()),
        ]),
    }
    Ok(if cr.passed() || !cr.exact {
        EXIT_OK
    } else {
        EXIT_VIOLATION
    })
}

fn cmd_classify(v: &TruncatedVoa, r: &mut Report, samples: usize, seed: u64) -> Result<i32> {
    let c = classify(v, samples, seed)?;
    let local = match c.local {
        Some(b) => b.to_string(),
        None => "unknown".into(),
    };
    r.push([
        ("blocks", c.block_count.to_string()),
        ("semilocal", c.semilocal.to_string()),
        ("local", local),
    ]);
    r.push([
        ("agreement_applies", c.agreement_applies.to_string()),
        ("four_way_agreement", c.four_way_agreement.to_string()),
        (
            "status",
            match c.status {
                Status::Ok => "ok",
                Status::Inconclusive => "inconclusive",
            }
            .to_string(),
        ),
        ("seed", c.seed.to_string()),
        ("samples", c.samples.to_string()),
    ]);
    for (i, b) in c.blocks.iter().enumerate() {
        let d = b.v0plus_verdict().map(|x| verdict(&x)).unwrap_or_else(|| "n/a".into());
        r.push([
            ("block", (i + 1).to_string()),
            ("dims", dims(&b.dims)),
            ("local", verdict(&b.local)),
            ("indecomposable", verdict(&b.indecomposable)),
            ("z_local", verdict(&b.z_local)),
            ("v0plus_local", d),
            ("J_lower_bound_dims", dims(&b.j_lower_bound_dims)),
        ]);
    }
    if require_truncation(v).is_ok() {
        let pa = check_power_associative(&extract_v0(v)?);
        let mc = check_mode_commutation(v)?;
        let ic = check_idempotents_central(v, samples, seed)?;
        r.push([
            ("v0_power_associative", pa.passed().to_string()),
            ("mode_commutation_exact", mc.exact.to_string()),
            ("mode_commutation_skipped", mc.skipped.to_string()),
            ("idempotents_found", ic.idempotents.len().to_string()),
            ("idempotents_central", ic.passed().to_string()),
        ]);
    }
    for note in &c.caveats {
        r.push([("caveat", note.clone())]);
    }
    Ok(match c.status {
        Status::Ok => EXIT_OK,
        Status::Inconclusive => EXIT_INCONCLUSIVE,
    })
}

fn execute(cli: &Cli, stdin: &mut dyn Read, stdout: &mut dyn Write) -> Result<i32> {
    let mut r = Report::new(cli.machine);
    let code = match &cli.command {
        Command::Check { file } => cmd_check(&load(file, stdin)?, &mut r),
        Command::Center { file } => cmd_center(&load(file, stdin)?, &mut r)?,
        Command::Blocks { file } => cmd_blocks(&load(file, stdin)?, &mut r)?,
        Command::Radicals { file } => cmd_radicals(&load(file, stdin)?, &mut r, cli.samples, cli.seed)?,
        Command::Classify { file } => cmd_classify(&load(file, stdin)?, &mut r, cli.samples, cli.seed)?,
        Command::Build {
            name,
            level,
            charge,
            output,
        } => {
            let c = parse_scalar(charge).ok_or_else(|| Error::Input(format!("bad central charge '{charge}'")))?;
            let v = build_named(name, *level, &c)?;
            let text = serialize_voa(&v);
            match output {
                Some(path) => {
                    std::fs::write(path, &text)
                        .map_err(|e| Error::Input(format!("cannot write {}: {e}", path.display())))?;
                    r.push([
                        ("wrote", path.display().to_string()),
                        ("name", v.name().to_string()),
                        ("dims", dims(v.dims())),
                        ("products", v.product_count().to_string()),
                    ]);
                }
                None => {
                    stdout
                        .write_all(text.as_bytes())
                        .map_err(|e| Error::Input(format!("cannot write output: {e}")))?;
                }
            }
            EXIT_OK
        }
    };
    stdout
        .write_all(r.render().as_bytes())
        .map_err(|e| Error::Input(format!("cannot write output: {e}")))?;
    Ok(code)
}

/// Runs the command line and returns the exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match execute(&cli, stdin, stdout) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
