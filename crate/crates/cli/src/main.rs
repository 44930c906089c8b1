use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand};
use log::warn;
use serde::Serialize;

use permon_core::decomposition::{canonical_decomposition, verify_canonical};
use permon_core::dfa::{all_words, Dfa};
use permon_core::oracle::{cycle_gcd, lw_enumerate, mu_enumerate, OracleBudget};
use permon_core::period::max_period;
use permon_core::probability::{
    dfa_sinks, mu_series, probability_report, residue_verdict, series_entries, zero_one_all,
    zero_one_basic, ResidualVerdict,
};
use permon_core::report::{
    analyze, in_residual_scope, load_source, monoid_of, parse_alphabet, parse_gammas,
    parse_periods, signature_export, signature_of, AnalysisOptions, AnalysisReport, Source,
};
use permon_core::syntactic::{cayley_graph, SyntacticMonoid};
use permon_core::{Error, PeriodSignature};

#[derive(Parser)]
#[command(name = "permon", version, about = "Syntactic monoids, periods and decompositions of regular languages")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the whole pipeline and print one report
    Analyze(Common),
    /// Syntactic monoid and its Cayley graph
    Monoid {
        #[command(flatten)]
        common: Common,
        /// Write the Cayley graph in DOT format
        #[arg(long, value_name = "PATH")]
        dot: Option<PathBuf>,
    },
    /// Maximum periods and residual classes
    Period(Common),
    /// Densities, limits and sinks
    Prob {
        #[command(flatten)]
        common: Common,
        /// List exact densities for lengths 0..=N
        #[arg(long, value_name = "N")]
        length: Option<usize>,
    },
    /// The canonical embedding into a semidirect product
    Decompose(Common),
    /// Zero-one verdicts
    ZeroOne(Common),
    #[command(hide = true)]
    Oracle {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_name = "N", default_value_t = 8)]
        length: usize,
        #[arg(long, value_name = "N", default_value_t = 1)]
        blocks: usize,
    },
}

#[derive(Args)]
#[command(group(ArgGroup::new("source").required(true).args(["regex", "dfa"])))]
struct Common {
    /// Regular expression over [a-z0-9] with | * + ? ( ) and & for the empty word
    #[arg(long)]
    regex: Option<String>,
    /// DFA document in JSON
    #[arg(long, value_name = "PATH")]
    dfa: Option<PathBuf>,
    /// Alphabet as "ab" or "a,b"
    #[arg(long)]
    alphabet: Option<String>,
    /// Letter set for a period, e.g. "a,b"; repeatable
    #[arg(long)]
    gamma: Vec<String>,
    /// Periods to use instead of the maximum ones, e.g. "2,2"
    #[arg(long)]
    periods: Option<String>,
    /// Print JSON instead of text
    #[arg(long)]
    json: bool,
    /// Convergence tolerance for limits
    #[arg(long, default_value_t = permon_core::probability::DEFAULT_TOL)]
    tol: f64,
    /// Longest length used for limits
    #[arg(long, default_value_t = permon_core::probability::DEFAULT_CAP)]
    cap: usize,
    /// Largest monoid that will be built
    #[arg(long, default_value_t = permon_core::syntactic::DEFAULT_MONOID_CAP)]
    monoid_cap: usize,
}

impl Common {
    fn dfa(&self) -> Result<Dfa, Failure> {
        let alphabet = self.alphabet.as_deref().map(parse_alphabet);
        let source = match (&self.regex, &self.dfa) {
            (Some(r), _) => Source::Regex(r.clone()),
            (None, Some(path)) => Source::Document(
                std::fs::read_to_string(path)
                    .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?,
            ),
            (None, None) => unreachable!("clap requires a source"),
        };
        Ok(load_source(&source, alphabet.as_deref())?)
    }

    fn options(&self) -> Result<AnalysisOptions, Failure> {
        if self.tol.is_nan() || self.tol <= 0.0 {
            return Err(Failure::Input("--tol must be positive".into()));
        }
        Ok(AnalysisOptions {
            gammas: self.gamma.clone(),
            periods: self.periods.as_deref().map(parse_periods).transpose()?,
            tol: self.tol,
            cap: self.cap,
            monoid_cap: self.monoid_cap,
            ..AnalysisOptions::default()
        })
    }
}

enum Failure {
    Input(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_verification_failure() {
            Failure::Verification(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failure: {msg}");
            ExitCode::from(3)
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn run(command: Command) -> Result<String, Failure> {
    match command {
        Command::Analyze(c) => cmd_analyze(&c),
        Command::Monoid { common, dot } => cmd_monoid(&common, dot.as_deref()),
        Command::Period(c) => cmd_period(&c),
        Command::Prob { common, length } => cmd_prob(&common, length),
        Command::Decompose(c) => cmd_decompose(&c),
        Command::ZeroOne(c) => cmd_zero_one(&c),
        Command::Oracle { common, length, blocks } => cmd_oracle(&common, length, blocks),
    }
}

fn cmd_analyze(c: &Common) -> Result<String, Failure> {
    let dfa = c.dfa()?;
    let analysis = analyze(&dfa, &c.options()?)?;
    for w in &analysis.report.warnings {
        warn!("{w}");
    }
    if c.json {
        return Ok(to_json(&analysis.report));
    }
    Ok(analysis_text(&analysis.report, &analysis.monoid))
}

fn analysis_text(r: &AnalysisReport, m: &SyntacticMonoid) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "alphabet: {}", r.alphabet.join(" "));
    let _ = writeln!(out, "states: {} (minimal {})", r.dfa_states, r.minimal_states);
    let _ = writeln!(out, "monoid order: {}", r.monoid.order);
    let names: Vec<String> = (0..m.order()).map(|x| m.element_name(x)).collect();
    let _ = writeln!(out, "elements: {}", names.join(" "));
    let _ = write!(out, "{}", signature_text(&r.signature));
    let _ = writeln!(out, "K: {}", r.decomposition.k);
    let v = &r.verification;
    let _ = writeln!(
        out,
        "verification: homomorphism {}, injective {}, residual condition {}, stabilizers {}, padded tables exact {}",
        yes(v.homomorphism),
        yes(v.injective),
        yes(v.residual_condition),
        yes(v.stabilizers),
        yes(v.padded_exact)
    );
    for t in &r.residual_monoids {
        let _ = writeln!(out, "T_{}: order {} {{{}}}", t.r, t.order, t.elements.join(", "));
    }
    for rec in &r.recognizers {
        let w = if rec.w.is_empty() { "ε" } else { &rec.w };
        let _ = writeln!(
            out,
            "L_{w}: S = {{{}}}, block monoid order {}",
            rec.accepting.join(", "),
            rec.lw_monoid_order
        );
    }
    let _ = writeln!(
        out,
        "wreath: equivariant {}, group divides {}, |phi| = {}",
        yes(r.wreath.equivariant),
        yes(r.wreath.group_divides),
        r.wreath.phi_size
    );
    let _ = write!(out, "{}", probability_text(&r.probability));
    out
}

fn signature_text(s: &permon_core::report::SignatureExport) -> String {
    let mut out = String::new();
    for ((g, p), max) in s.gammas.iter().zip(&s.periods).zip(&s.max_periods) {
        let _ = writeln!(out, "period {{{}}}: {p} (max {max})", g.join(","));
    }
    let classes: Vec<String> = s
        .classes
        .iter()
        .map(|(k, v)| {
            let items: Vec<String> = v.iter().map(usize::to_string).collect();
            format!("{k}: [{}]", items.join(","))
        })
        .collect();
    let _ = writeln!(out, "classes: {}", classes.join("; "));
    out
}

fn probability_text(p: &permon_core::ProbabilityReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "period: {}", p.period);
    let points: Vec<String> = p
        .accumulation
        .iter()
        .map(|a| format!("{}{}", a.mu, if a.converged { "" } else { " (not converged)" }))
        .collect();
    let _ = writeln!(out, "accumulation: ({})", points.join(", "));
    if p.duplicate_points {
        let _ = writeln!(out, "accumulation: repeated values");
    }
    for s in &p.sinks {
        let _ = writeln!(out, "sink {{{}}}: period {}", s.states.join(","), s.period);
    }
    if let Some(z) = &p.zero_one {
        let _ = writeln!(out, "zero-one: basic {}", z.basic.as_str());
        for e in &z.residual {
            let w = if e.w.is_empty() { "ε" } else { &e.w };
            let witness = e
                .witness
                .as_ref()
                .map(|w| format!(" (witness {{{}}})", w.join(", ")))
                .unwrap_or_default();
            let _ = writeln!(out, "zero-one: w={w} {}{witness}", e.verdict.as_str());
        }
    }
    out
}

fn cmd_monoid(c: &Common, dot: Option<&std::path::Path>) -> Result<String, Failure> {
    let dfa = c.dfa()?;
    let (_, m) = monoid_of(&dfa, c.monoid_cap)?;
    if let Some(path) = dot {
        std::fs::write(path, cayley_graph(&m).to_dot())
            .map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))?;
    }
    let export = m.to_export();
    if c.json {
        return Ok(to_json(&export));
    }
    let mut out = String::new();
    let _ = writeln!(out, "order: {}", export.order);
    let names: Vec<String> = (0..m.order()).map(|x| m.element_name(x)).collect();
    let _ = writeln!(out, "elements: {}", names.join(" "));
    let gens: Vec<String> = export
        .generators
        .iter()
        .map(|(a, x)| format!("{a}={}", m.element_name(*x)))
        .collect();
    let _ = writeln!(out, "generators: {}", gens.join(" "));
    let acc: Vec<String> = export.accepting_image.iter().map(|&x| m.element_name(x)).collect();
    let _ = writeln!(out, "accepting: {}", acc.join(" "));
    for row in &export.table {
        let cells: Vec<String> = row.iter().map(usize::to_string).collect();
        let _ = writeln!(out, "{}", cells.join(" "));
    }
    Ok(out)
}

fn signature(c: &Common) -> Result<(Dfa, SyntacticMonoid, PeriodSignature), Failure> {
    let dfa = c.dfa()?;
    let (_, m) = monoid_of(&dfa, c.monoid_cap)?;
    let sig = signature_of(&m, &c.options()?)?;
    Ok((dfa, m, sig))
}

fn cmd_period(c: &Common) -> Result<String, Failure> {
    let (_, _, sig) = signature(c)?;
    let export = signature_export(&sig);
    if c.json {
        return Ok(to_json(&export));
    }
    Ok(signature_text(&export))
}

fn cmd_prob(c: &Common, length: Option<usize>) -> Result<String, Failure> {
    let dfa = c.dfa()?;
    let opts = c.options()?;
    if let Some(n) = length {
        let series = series_entries(&mu_series(&dfa, n));
        if c.json {
            return Ok(to_json(&series));
        }
        let mut out = String::new();
        for e in series {
            let _ = writeln!(out, "{} {}/{}", e.len, e.num, e.den);
        }
        return Ok(out);
    }
    let (_, m) = monoid_of(&dfa, opts.monoid_cap)?;
    let report = probability_report(&m, &dfa, None, opts.series_len, opts.tol, opts.cap)?;
    if c.json {
        return Ok(to_json(&report));
    }
    Ok(probability_text(&report))
}

fn cmd_decompose(c: &Common) -> Result<String, Failure> {
    let (_, m, sig) = signature(c)?;
    let dec = canonical_decomposition(&m, &sig)?;
    let report = verify_canonical(&dec);
    let export = dec.to_export(report.passed());
    if c.json {
        return Ok(to_json(&export));
    }
    let mut out = String::new();
    let _ = writeln!(out, "K: {}", export.k);
    let g: Vec<String> = export.g.iter().map(u32::to_string).collect();
    let _ = writeln!(out, "G: {}", g.join(" x "));
    for (r, class) in &export.theta {
        let names: Vec<String> = class.iter().map(|&x| m.element_name(x)).collect();
        let _ = writeln!(out, "theta {r}: {}", names.join(" "));
    }
    for t in m.monoid().elements() {
        let img = dec.can(t);
        let fs: Vec<String> = img
            .f
            .iter()
            .enumerate()
            .map(|(r, tau)| format!("{}->{tau}", sig.vector(r).key()))
            .collect();
        let _ = writeln!(
            out,
            "Can({}) = ({}; {})",
            m.element_name(t),
            fs.join(", "),
            sig.vector(img.r).key()
        );
    }
    let _ = writeln!(
        out,
        "verified: {} (padded tables exact: {})",
        yes(report.passed()),
        yes(report.padded_exact)
    );
    Ok(out)
}

#[derive(Serialize)]
struct ZeroOneJson {
    basic: &'static str,
    residues: Vec<ResidueJson>,
}

#[derive(Serialize)]
struct ResidueJson {
    r: usize,
    verdict: &'static str,
    witness: Option<Vec<String>>,
}

fn cmd_zero_one(c: &Common) -> Result<String, Failure> {
    let (dfa, m, sig) = signature(c)?;
    let opts = c.options()?;
    let dec = canonical_decomposition(&m, &sig)?;
    if !in_residual_scope(&dec) {
        return Err(Failure::Input(
            "zero-one verdicts need a single letter set equal to the alphabet with its maximum period"
                .into(),
        ));
    }
    let basic = zero_one_basic(&m, &dfa, opts.tol, opts.cap)?;
    let groups = zero_one_all(&dec, &dfa, opts.tol, opts.cap)?;
    let residues: Vec<ResidueJson> = groups
        .iter()
        .enumerate()
        .map(|(r, group)| {
            let verdict = residue_verdict(group);
            let witness = (verdict != ResidualVerdict::Neither)
                .then(|| group.first().map(|v| v.witness_names.clone()))
                .flatten();
            ResidueJson {
                r,
                verdict: if verdict == ResidualVerdict::Neither { "no" } else { "yes" },
                witness,
            }
        })
        .collect();
    let report = ZeroOneJson {
        basic: basic.verdict.as_str(),
        residues,
    };
    if c.json {
        return Ok(to_json(&report));
    }
    let mut parts = vec![format!("basic: {}", report.basic)];
    for r in &report.residues {
        let witness = r
            .witness
            .as_ref()
            .map(|w| format!(" (witness {{{}}})", w.join(", ")))
            .unwrap_or_default();
        parts.push(format!("r={}: {}{witness}", r.r, r.verdict));
    }
    Ok(format!("{}\n", parts.join("; ")))
}

#[derive(Serialize)]
struct OracleJson {
    mu: Vec<(usize, String)>,
    cycle_gcd: Vec<(String, u64)>,
    max_period: Vec<(String, u32)>,
    sinks: Vec<(Vec<String>, u32)>,
    block_words: Vec<(String, Vec<String>)>,
}

fn cmd_oracle(c: &Common, length: usize, blocks: usize) -> Result<String, Failure> {
    let dfa = c.dfa()?;
    let budget = OracleBudget::default();
    let (minimal, m) = monoid_of(&dfa, c.monoid_cap)?;
    let gammas = parse_gammas(m.alphabet(), &c.gamma)?;
    let graph = cayley_graph(&m);
    let mut report = OracleJson {
        mu: Vec::new(),
        cycle_gcd: Vec::new(),
        max_period: Vec::new(),
        sinks: dfa_sinks(&dfa),
        block_words: Vec::new(),
    };
    for len in 0..=length {
        report.mu.push((len, mu_enumerate(&dfa, len, &budget)?.to_string()));
    }
    let mut full_period = 1;
    for g in &gammas {
        let label: Vec<&str> = g.iter().map(|&a| m.alphabet()[a].as_str()).collect();
        let label = format!("{{{}}}", label.join(","));
        report.cycle_gcd.push((label.clone(), cycle_gcd(&graph, g, &budget)?));
        let p = max_period(&m, g)?;
        if g.len() == m.num_letters() {
            full_period = p as usize;
        }
        report.max_period.push((label, p));
    }
    for len in 0..full_period {
        for w in all_words(m.num_letters(), len) {
            let words = lw_enumerate(&minimal, &w, full_period, blocks, &budget)?;
            report.block_words.push((
                minimal.format_word(&w),
                words.iter().map(|u| minimal.format_word(u)).collect(),
            ));
        }
    }
    if c.json {
        return Ok(to_json(&report));
    }
    let mut out = String::new();
    for (len, mu) in &report.mu {
        let _ = writeln!(out, "mu {len} {mu}");
    }
    for ((label, g), (_, p)) in report.cycle_gcd.iter().zip(&report.max_period) {
        let _ = writeln!(out, "cycles {label}: gcd {g}, maximum period {p}");
    }
    for (states, p) in &report.sinks {
        let _ = writeln!(out, "sink {{{}}}: period {p}", states.join(","));
    }
    for (w, words) in &report.block_words {
        let w = if w.is_empty() { "ε" } else { w };
        let shown: Vec<&str> = words.iter().map(|u| if u.is_empty() { "ε" } else { u.as_str() }).collect();
        let _ = writeln!(out, "L_{w}: {}", shown.join(" "));
    }
    Ok(out)
}
