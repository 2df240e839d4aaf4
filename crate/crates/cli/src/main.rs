use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hiccup::bfile::{parse_bfile, write_bfile};
use hiccup::catalog::{is_oeis_id, load_catalog, lookup};
use hiccup::cfrac::{check_bds_conjecture, check_wythoff_s1};
use hiccup::exec::Execution;
use hiccup::morphism::{hiccup_morphism_with, Preference};
use hiccup::numeration::{dumont_thomas, render_digits};
use hiccup::sequence::{generate_hiccup, infer_params, HiccupParams};
use hiccup::sturmian::hiccup_beatty;
use hiccup::verify::{
    beatty_inapplicable, verify_all, verify_entry, VerificationReport, VerifyOptions,
    DEFAULT_CFRAC_HORIZON, DEFAULT_HORIZON,
};
use hiccup::Error;

#[derive(Parser)]
#[command(name = "hiccup", version, about = "Generate, characterize and verify hiccup sequences")]
struct Cli {
    /// Output format for reports.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    /// Run on the calling thread only.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum What {
    Morphism,
    Beatty,
    Numeration,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Style {
    /// Prefer the two-letter pure morphism when one exists.
    Pure,
    /// Always use the case-by-case construction.
    Literal,
}

impl From<Style> for Preference {
    fn from(s: Style) -> Self {
        match s {
            Style::Pure => Preference::Pure,
            Style::Literal => Preference::Literal,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print the first terms of a hiccup sequence.
    Generate {
        /// Parameters `j,x,y,z`.
        #[arg(long)]
        params: String,
        #[arg(long)]
        count: usize,
        /// Also write the terms as a b-file.
        #[arg(long)]
        bfile: Option<PathBuf>,
    },
    /// Derive a morphism, Beatty formula or numeration system.
    Derive {
        #[arg(long)]
        params: String,
        #[arg(long, value_enum)]
        what: What,
        #[arg(long, value_enum, default_value_t = Style::Pure)]
        style: Style,
    },
    /// Cross-check the characterizations of catalog entries.
    Verify {
        #[arg(long, conflicts_with = "all", required_unless_present = "all")]
        entry: Option<String>,
        #[arg(long)]
        all: bool,
        #[arg(long, default_value_t = DEFAULT_HORIZON)]
        horizon: u64,
        #[arg(long, default_value_t = DEFAULT_CFRAC_HORIZON)]
        cfrac_horizon: u64,
        #[arg(long, value_enum, default_value_t = Style::Pure)]
        style: Style,
    },
    /// Find parameters reproducing the terms of a b-file.
    Infer {
        #[arg(long)]
        bfile: PathBuf,
        #[arg(long, default_value_t = 2)]
        jmax: u64,
    },
    /// Check continued-fraction conjectures with certified floors.
    Conjecture {
        #[command(subcommand)]
        which: Conjecture,
    },
    /// Dumont-Thomas representations in the system of `0->01, 1->0001`.
    Represent {
        #[arg(long, conflicts_with = "an", required_unless_present = "an")]
        n: Option<u64>,
        /// Represent `a(N)` of the `(0,2,4,2)` sequence instead.
        #[arg(long)]
        an: Option<u64>,
        #[arg(long, default_value = "0->01, 1->0001")]
        morphism: String,
        #[arg(long, default_value_t = '0')]
        seed: char,
    },
}

#[derive(Subcommand)]
enum Conjecture {
    /// `floor(r_n)` against `floor(alpha_j n - (1 + alpha_j)/(2 alpha_j - j))`.
    Bds {
        #[arg(long)]
        j: u64,
        #[arg(long, default_value_t = DEFAULT_CFRAC_HORIZON)]
        horizon: u64,
        /// Extra decimal digits carried beyond the horizon's budget.
        #[arg(long, default_value_t = 30)]
        precision: u32,
    },
    /// `s_1` and the lower Wythoff floors.
    WythoffS1 {
        /// Certified decimal digits of `s_1`.
        #[arg(long, default_value_t = 20)]
        precision: u32,
        #[arg(long, default_value_t = DEFAULT_CFRAC_HORIZON)]
        horizon: u64,
    },
}

/// Failure modes mapped to exit codes.
enum Failure {
    Usage(String),
    Fail(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParams(_) | Error::Parse(_) | Error::UnknownEntry(_) | Error::Format { .. } => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Fail(e.to_string()),
        }
    }
}

type CmdResult = Result<bool, Failure>;

fn parse_params(s: &str) -> Result<HiccupParams, Failure> {
    let p: HiccupParams = s.parse().map_err(|e: Error| {
        Failure::Usage(format!("{e}\nhint: pass four integers, e.g. --params 1,1,3,2"))
    })?;
    p.validate()
        .map_err(|e| Failure::Usage(format!("{e}\nhint: y and z must differ and be at least 1")))?;
    Ok(p)
}

fn emit(format: Format, value: &Value, text: impl FnOnce() -> String) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(value).expect("serializable")),
        Format::Text => print!("{}", text()),
    }
}

fn generate(format: Format, params: &str, count: usize, bfile: Option<PathBuf>) -> CmdResult {
    let p = parse_params(params)?;
    if count == 0 {
        return Err(Failure::Usage("--count must be at least 1".into()));
    }
    let seq = generate_hiccup(&p, count)?;
    if let Some(path) = bfile {
        std::fs::write(&path, write_bfile(&seq))
            .map_err(|e| Failure::Fail(format!("writing {}: {e}", path.display())))?;
    }
    emit(format, &json!({ "params": p, "terms": seq.terms() }), || {
        let terms: Vec<String> = seq.terms().iter().map(i64::to_string).collect();
        format!("{}\n", terms.join(" "))
    });
    Ok(true)
}

fn derive(format: Format, params: &str, what: What, style: Style) -> CmdResult {
    let p = parse_params(params)?;
    match what {
        What::Morphism => {
            let hm = hiccup_morphism_with(&p, style.into())?;
            let coding: serde_json::Map<String, Value> = hm
                .coding
                .0
                .iter()
                .map(|(k, v)| (k.to_string(), json!(v.to_string())))
                .collect();
            let value = json!({
                "params": p,
                "morphism": hm.morphism.to_string(),
                "seed": hm.seed,
                "coding": coding,
                "shift": hm.shift,
                "first_index": hm.first_index,
                "construction": format!("{:?}", hm.construction),
                "pure": hm.is_pure(),
            });
            emit(format, &value, || {
                if hm.is_pure() {
                    format!("{}\n", hm.morphism)
                } else {
                    format!("{hm}\n")
                }
            });
        }
        What::Beatty => {
            if let Some(reason) = beatty_inapplicable(&p) {
                return Err(Failure::Fail(format!("not applicable: {reason}")));
            }
            let form = hiccup_beatty(&p)?;
            let value = json!({
                "params": p,
                "formula": form.beatty.render(),
                "rounding": form.beatty.rounding(),
                "first_index": form.first_index,
                "decomposition": form.decomposition.to_string(),
                "alpha": form.mechanical.alpha.render(),
                "beta": form.mechanical.beta.render(),
            });
            emit(format, &value, || {
                let mut s = form.beatty.render();
                if form.first_index > 1 {
                    s.push_str(&format!(" for n >= {}", form.first_index));
                }
                s + "\n"
            });
        }
        What::Numeration => {
            let hm = hiccup_morphism_with(&p, style.into())?;
            let seed = hm.seed.chars().next().unwrap_or('0');
            if !hm.is_pure() || hm.seed.chars().count() != 1 {
                return Err(Failure::Fail(format!(
                    "not applicable: {p} has no pure morphism with a one-letter seed ({hm})"
                )));
            }
            let ns = dumont_thomas(&hm.morphism, seed)?;
            let bases: Vec<u64> = ns.bases().into_iter().take(12).collect();
            let dot = ns.dfa().to_dot();
            let value = json!({
                "params": p,
                "morphism": hm.morphism.to_string(),
                "seed": seed.to_string(),
                "bases": bases,
                "positional": ns.is_positional(),
                "dfa_dot": dot,
            });
            emit(format, &value, || {
                let b: Vec<String> = bases.iter().map(u64::to_string).collect();
                format!(
                    "morphism: {}\nseed: {seed}\nbases: {}\npositional: {}\n{dot}",
                    hm.morphism,
                    b.join(" "),
                    ns.is_positional()
                )
            });
        }
    }
    Ok(true)
}

fn report_text(r: &VerificationReport) -> String {
    let mut s = format!(
        "{} {} horizon {}: {} ({} ms)\n",
        r.entry,
        r.params,
        r.horizon,
        if r.passed() { "PASS" } else { "FAIL" },
        r.elapsed_ms
    );
    let f = &r.formulas;
    let details = [f.morphism.as_deref(), f.beatty.as_deref(), f.cfrac.as_deref()];
    for (i, (name, status)) in r.legs().iter().enumerate() {
        s.push_str(&format!("  {name:<10} {status}\n"));
        if let Some(d) = details.get(i.wrapping_sub(1)).copied().flatten() {
            s.push_str(&format!("  {:<10}   {d}\n", ""));
        }
    }
    if let Some(stated) = &f.stated {
        s.push_str(&format!("  {:<10}   stated: {stated}\n", ""));
    }
    if let Some(rel) = &r.relation {
        s.push_str(&format!("  {:<10} {rel}\n", "relation"));
    }
    if let Some(n) = &r.numeration {
        let sp = &n.shifted_pair;
        let show = |c: &hiccup::numeration::PairCheck| match c.witness {
            None => "ok".to_string(),
            Some(w) => format!("fails at n = {w}"),
        };
        s.push_str(&format!(
            "  {:<10} gaps {}, member gap 4 {}, non-member gap 2 {}, (0w, w0) {}\n",
            "numeration",
            show(&sp.gaps),
            show(&sp.member_gap),
            show(&sp.nonmember_gap),
            show(&sp.pairing)
        ));
        let k = &n.kimberling;
        s.push_str(&format!(
            "  {:<10} {} < a(n) - (1 + sqrt(3))n < {}: {} (min {:.5} at {}, max {:.5} at {})\n",
            "kimberling",
            k.lower,
            k.upper,
            if k.holds { "holds" } else { "violated" },
            k.min,
            k.argmin,
            k.max,
            k.argmax
        ));
    }
    for e in &r.errors {
        s.push_str(&format!("  error      {e}\n"));
    }
    s
}

fn verify(format: Format, exec: Execution, entry: Option<String>, horizon: u64, cfrac_horizon: u64, style: Style) -> CmdResult {
    let opts = VerifyOptions {
        horizon,
        cfrac_horizon,
        preference: style.into(),
        exec,
    };
    let reports = match entry {
        Some(id) => {
            if !is_oeis_id(id.trim()) {
                return Err(Failure::Usage(format!(
                    "{id:?} is not an A-number\nhint: use the form A086377"
                )));
            }
            let e = lookup(&id).map_err(|e| {
                let ids: Vec<&str> = load_catalog().iter().map(|e| e.oeis_id).collect();
                Failure::Usage(format!("{e}\nhint: known entries are {}", ids.join(", ")))
            })?;
            vec![verify_entry(e, &opts)]
        }
        None => verify_all(&opts),
    };
    let ok = reports.iter().all(VerificationReport::passed);
    let value = if reports.len() == 1 {
        serde_json::to_value(&reports[0])
    } else {
        serde_json::to_value(&reports)
    }
    .expect("serializable");
    emit(format, &value, || {
        let mut s: String = reports.iter().map(report_text).collect();
        if reports.len() > 1 {
            let passed = reports.iter().filter(|r| r.passed()).count();
            s.push_str(&format!("{} entries, {passed} passed\n", reports.len()));
        }
        s
    });
    Ok(ok)
}

fn infer(format: Format, path: PathBuf, jmax: u64) -> CmdResult {
    let text = std::fs::read_to_string(&path)
        .map_err(|e| Failure::Usage(format!("reading {}: {e}", path.display())))?;
    let b = parse_bfile(&text)?;
    let found = infer_params(&b.terms, jmax)?;
    let matches: Vec<&str> = load_catalog()
        .iter()
        .filter(|e| found.contains(&e.params))
        .map(|e| e.oeis_id)
        .collect();
    emit(format, &json!({ "terms": b.terms.len(), "params": found, "catalog": matches }), || {
        if found.is_empty() {
            return "no hiccup parameters fit\n".into();
        }
        let mut s: String = found.iter().map(|p| format!("{p}\n")).collect();
        if !matches.is_empty() {
            s.push_str(&format!("catalog: {}\n", matches.join(", ")));
        }
        s
    });
    Ok(!found.is_empty())
}

fn conjecture(format: Format, which: Conjecture) -> CmdResult {
    match which {
        Conjecture::Bds { j, horizon, precision } => {
            if j == 0 {
                return Err(Failure::Usage("j must be at least 1".into()));
            }
            let r = check_bds_conjecture(j, horizon, precision)?;
            let ok = r.passed();
            emit(format, &serde_json::to_value(&r).expect("serializable"), || {
                let mut s = format!(
                    "j = {}: alpha = {}, beta = {}\nn <= {}: {} agreements, {} mismatches, {} uncertain\nmin r_n - alpha n - beta = {:.6e}, max n (r_n - alpha n - beta) = {:.6}\nprecision {} bits{}, {:.2} s\n",
                    r.j,
                    r.alpha,
                    r.beta,
                    r.horizon,
                    r.agreements,
                    r.mismatches.len(),
                    r.uncertain.len(),
                    r.min_positive_margin,
                    r.max_scaled_margin,
                    r.precision_bits,
                    if r.retried { " after retry" } else { "" },
                    r.runtime
                );
                for m in r.mismatches.iter().take(10) {
                    s.push_str(&format!("  n = {}: floor(r_n) = {}, Beatty {}\n", m.n, m.iterate, m.expected));
                }
                s.push_str(if ok { "PASS\n" } else { "FAIL\n" });
                s
            });
            Ok(ok)
        }
        Conjecture::WythoffS1 { precision, horizon } => {
            let r = check_wythoff_s1(horizon, precision)?;
            let ok = r.mismatches.is_empty() && r.uncertain.is_empty();
            emit(format, &serde_json::to_value(&r).expect("serializable"), || {
                format!(
                    "s_1 = {}\nfloor(s_n) = floor(n phi) for n <= {}: {} agreements, {} mismatches, {} uncertain\n{}\n",
                    r.s1,
                    r.horizon,
                    r.agreements,
                    r.mismatches.len(),
                    r.uncertain.len(),
                    r.status
                )
            });
            Ok(ok)
        }
    }
}

fn represent(format: Format, n: Option<u64>, an: Option<u64>, morphism: &str, seed: char) -> CmdResult {
    let m = morphism.parse().map_err(|e: Error| Failure::Usage(e.to_string()))?;
    let ns = dumont_thomas(&m, seed)?;
    let (value, term) = match (n, an) {
        (Some(n), _) => (n, None),
        (None, Some(k)) => {
            if k == 0 {
                return Err(Failure::Usage("--an needs N >= 1".into()));
            }
            let seq = generate_hiccup(&HiccupParams::new(0, 2, 4, 2), k as usize)?;
            (seq.terms()[k as usize - 1] as u64, Some(k))
        }
        (None, None) => return Err(Failure::Usage("pass --n or --an".into())),
    };
    let digits = render_digits(&ns.represent(value)?);
    let mut obj = json!({ "value": value, "representation": digits });
    if let Some(k) = term {
        obj["n"] = json!(k);
        obj["n_representation"] = json!(render_digits(&ns.represent(k)?));
    }
    emit(format, &obj, || match term {
        None => format!("{digits}\n"),
        Some(_) => format!("{value} {digits}\n"),
    });
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let exec = if cli.sequential {
        Execution::Sequential
    } else {
        Execution::Auto
    };
    let f = cli.format;
    let result = match cli.command {
        Command::Generate { params, count, bfile } => generate(f, &params, count, bfile),
        Command::Derive { params, what, style } => derive(f, &params, what, style),
        Command::Verify {
            entry,
            all: _,
            horizon,
            cfrac_horizon,
            style,
        } => verify(f, exec, entry, horizon, cfrac_horizon, style),
        Command::Infer { bfile, jmax } => infer(f, bfile, jmax),
        Command::Conjecture { which } => conjecture(f, which),
        Command::Represent { n, an, morphism, seed } => represent(f, n, an, &morphism, seed),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Fail(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
