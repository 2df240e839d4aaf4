//! Cross-checks every characterization of a catalog entry term by term.

use std::fmt;
use std::time::Instant;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::catalog::{bundled_prefix, load_catalog, lookup, CatalogEntry};
use crate::cfrac::{check_iterated_floors, CFracSpec};
use crate::error::Result;
use crate::exec::{map, map_chunks, Execution};
use crate::formula::parse_beatty;
use crate::morphism::{hiccup_morphism_with, Preference};
use crate::numeration::{dumont_thomas, kimberling_scan, verify_shifted_pair, KimberlingScan, ShiftedPairReport};
use crate::quadratic::QuadraticNumber;
use crate::sequence::{generate_hiccup, HiccupParams, IntegerSequence};
use crate::sturmian::{hiccup_beatty, BeattyParams};

pub const DEFAULT_HORIZON: u64 = 10_000;
pub const DEFAULT_CFRAC_HORIZON: u64 = 1_000;

/// Outcome of one characterization.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status")]
pub enum Status {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail { n: Option<u64>, detail: String },
    #[serde(rename = "NOT-APPLICABLE")]
    NotApplicable { reason: String },
    /// Agreement up to the horizon where no proof is known.
    #[serde(rename = "CONJECTURE")]
    Conjecture { note: String },
}

impl Status {
    pub fn is_fail(&self) -> bool {
        matches!(self, Status::Fail { .. })
    }

    fn mismatch(n: u64, expected: impl fmt::Display, found: impl fmt::Display) -> Self {
        Status::Fail {
            n: Some(n),
            detail: format!("a({n}) = {expected}, characterization gives {found}"),
        }
    }

    fn error(e: impl fmt::Display) -> Self {
        Status::Fail {
            n: None,
            detail: e.to_string(),
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::Pass => write!(f, "PASS"),
            Status::Fail { n: Some(n), detail } => write!(f, "FAIL({n}): {detail}"),
            Status::Fail { n: None, detail } => write!(f, "FAIL: {detail}"),
            Status::NotApplicable { reason } => write!(f, "NOT-APPLICABLE: {reason}"),
            Status::Conjecture { note } => write!(f, "CONJECTURE: {note}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct DerivedFormulas {
    pub morphism: Option<String>,
    pub beatty: Option<String>,
    pub stated: Option<String>,
    pub cfrac: Option<String>,
}

/// Numeration checks run for the `(0,2,4,2)` sequence.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NumerationChecks {
    pub shifted_pair: ShiftedPairReport,
    pub kimberling: KimberlingScan,
}

impl NumerationChecks {
    pub fn passed(&self) -> bool {
        self.shifted_pair.passed() && self.kimberling.holds
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub entry: String,
    pub params: HiccupParams,
    pub horizon: u64,
    pub cfrac_horizon: u64,
    pub recursion: Status,
    pub morphic: Status,
    pub beatty: Status,
    pub cfrac: Status,
    /// Shift relation to another catalog entry, when one is recorded.
    pub relation: Option<Status>,
    pub numeration: Option<NumerationChecks>,
    /// Failures outside the four characterizations.
    pub errors: Vec<String>,
    pub formulas: DerivedFormulas,
    pub elapsed_ms: u64,
}

impl VerificationReport {
    pub fn legs(&self) -> [(&'static str, &Status); 4] {
        [
            ("recursion", &self.recursion),
            ("morphic", &self.morphic),
            ("beatty", &self.beatty),
            ("cfrac", &self.cfrac),
        ]
    }

    pub fn passed(&self) -> bool {
        self.legs().iter().all(|(_, s)| !s.is_fail())
            && !self.relation.as_ref().is_some_and(Status::is_fail)
            && self.errors.is_empty()
            && self.numeration.as_ref().map_or(true, NumerationChecks::passed)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    pub horizon: u64,
    pub cfrac_horizon: u64,
    pub preference: Preference,
    pub exec: Execution,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            horizon: DEFAULT_HORIZON,
            cfrac_horizon: DEFAULT_CFRAC_HORIZON,
            preference: Preference::Pure,
            exec: Execution::Auto,
        }
    }
}

/// First index where `found(n)` differs from `a(n)`, scanning `from..=a.len()`.
fn first_mismatch<F>(exec: Execution, a: &[i64], from: usize, found: F) -> Option<(u64, i64, BigInt)>
where
    F: Fn(u64) -> BigInt + Sync + Send,
{
    let from = from.max(1);
    if from > a.len() {
        return None;
    }
    let len = a.len() + 1 - from;
    map_chunks(exec, len, 2048, |r| {
        r.map(|k| (k + from) as u64)
            .map(|n| (n, a[n as usize - 1], found(n)))
            .find(|(_, want, got)| BigInt::from(*want) != *got)
    })
    .into_iter()
    .flatten()
    .next()
}

/// Re-checks the defining rule with a set-based membership test.
fn recursion_leg(entry: &CatalogEntry, a: &IntegerSequence) -> Status {
    let HiccupParams { j, x, y, z } = entry.params;
    let t = a.terms();
    if t.first() != Some(&(x as i64)) {
        return Status::mismatch(1, x, t.first().copied().unwrap_or_default());
    }
    let mut seen = std::collections::HashSet::new();
    for n in 2..=t.len() {
        seen.insert(t[n - 2]);
        let step = if seen.contains(&(n as i64 - j as i64)) { y } else { z };
        if t[n - 1] - t[n - 2] != step as i64 {
            return Status::Fail {
                n: Some(n as u64),
                detail: format!("step a({n}) - a({}) is not {step}", n - 1),
            };
        }
    }
    if let Some(prefix) = bundled_prefix(entry.oeis_id) {
        let k = prefix.len().min(t.len());
        if let Some(i) = (0..k).find(|&i| prefix.terms()[i] != t[i]) {
            return Status::Fail {
                n: Some(i as u64 + 1),
                detail: format!(
                    "published term {} but recursion gives {}",
                    prefix.terms()[i],
                    t[i]
                ),
            };
        }
    }
    Status::Pass
}

fn morphic_leg(
    entry: &CatalogEntry,
    a: &IntegerSequence,
    pref: Preference,
    formulas: &mut DerivedFormulas,
) -> Status {
    let hm = match hiccup_morphism_with(&entry.params, pref) {
        Ok(hm) => hm,
        Err(e) => return Status::error(e),
    };
    formulas.morphism = Some(hm.to_string());
    let got = match hm.terms(a.len()) {
        Ok(s) => s,
        Err(e) => return Status::error(e),
    };
    match a.terms().iter().zip(got.terms()).position(|(u, v)| u != v) {
        Some(i) => Status::mismatch(i as u64 + 1, a.terms()[i], got.terms()[i]),
        None if got.len() < a.len() => Status::error("fixed point ended early"),
        None => Status::Pass,
    }
}

/// Why no Beatty form is derived, or `None` when one is.
pub fn beatty_inapplicable(params: &HiccupParams) -> Option<String> {
    let (core, _) = params.reduce_j();
    let HiccupParams { x, y, z, .. } = core;
    let mut why = Vec::new();
    if y.abs_diff(z) != 1 {
        why.push(format!("|y - z| = {} is not 1", y.abs_diff(z)));
    }
    if x > z {
        why.push(format!("x = {x} exceeds z = {z} after reducing j"));
    }
    if why.is_empty() {
        return None;
    }
    let mut reason = format!(
        "Sturmian criterion needs x <= z and |y - z| = 1: {}",
        why.join(", ")
    );
    if y == 1 || z == 1 {
        reason.push_str(&format!(
            "; {} = 1, a case whose morphism is not primitive",
            if y == 1 { "y" } else { "z" }
        ));
    }
    Some(reason)
}

fn beatty_leg(
    entry: &CatalogEntry,
    a: &IntegerSequence,
    exec: Execution,
    formulas: &mut DerivedFormulas,
) -> Status {
    let stated = match entry.stated_formula.map(parse_beatty).transpose() {
        Ok(s) => s,
        Err(e) => return Status::error(e),
    };
    if let Some(s) = &stated {
        formulas.stated = Some(s.render());
    }
    let check = |bp: &BeattyParams, from: usize, label: &str| -> Option<Status> {
        first_mismatch(exec, a.terms(), from, |n| bp.term(n as i64)).map(|(n, want, got)| {
            Status::Fail {
                n: Some(n),
                detail: format!("{label}: a({n}) = {want}, formula gives {got}"),
            }
        })
    };
    if let Some(fail) = stated.as_ref().and_then(|s| check(s, 1, "stated formula")) {
        return fail;
    }
    if let Some(reason) = beatty_inapplicable(&entry.params) {
        return Status::NotApplicable { reason };
    }
    let form = match hiccup_beatty(&entry.params) {
        Ok(f) => f,
        Err(e) => return Status::error(e),
    };
    formulas.beatty = Some(if form.first_index > 1 {
        format!("{} for n >= {}", form.beatty.render(), form.first_index)
    } else {
        form.beatty.render()
    });
    check(&form.beatty, form.first_index, "derived formula").unwrap_or(Status::Pass)
}

/// Continued-fraction characterization known for an entry: the iteration,
/// the shift inside the floor, and whether the identity is proved.
fn cfrac_case(id: &str) -> Option<(CFracSpec, QuadraticNumber, bool)> {
    let half = QuadraticNumber::ratio(1, 2);
    match id {
        "A086377" => Some((CFracSpec::metallic(2).ok()?, half, true)),
        "A080652" => Some((CFracSpec::metallic(2).ok()?, half + 1, true)),
        "A000201" => Some((CFracSpec::golden(), QuadraticNumber::zero(), false)),
        "A004956" => Some((CFracSpec::golden(), QuadraticNumber::one(), false)),
        _ => None,
    }
}

fn cfrac_leg(entry: &CatalogEntry, a: &IntegerSequence, horizon: u64, formulas: &mut DerivedFormulas) -> Status {
    let Some((spec, shift, proved)) = cfrac_case(entry.oeis_id) else {
        return Status::NotApplicable {
            reason: "no continued-fraction iteration is known for this entry".into(),
        };
    };
    let horizon = horizon.min(a.len() as u64);
    let inner = if shift.is_zero() {
        "r_n".to_string()
    } else {
        format!("r_n + {}", shift.render())
    };
    let step = if spec.z == 1 { "n".to_string() } else { format!("{}*n", spec.z) };
    formulas.cfrac = Some(format!(
        "floor({inner}), r_(n+1) = n^2/(r_n - {step} + {})",
        (-spec.v.clone()).render()
    ));
    let t = a.terms();
    let check = match check_iterated_floors(&spec, &shift, horizon, 30, |n| BigInt::from(t[n as usize - 1])) {
        Ok((c, _)) => c,
        Err(e) => return Status::error(e),
    };
    if let Some(m) = check.mismatches.first() {
        return Status::mismatch(m.n, &m.expected, &m.iterate);
    }
    if let Some(&n) = check.uncertain.first() {
        return Status::Fail {
            n: Some(n),
            detail: format!("floor not certified at {} bits", check.precision_bits),
        };
    }
    if proved {
        Status::Pass
    } else {
        Status::Conjecture {
            note: format!("agrees for n <= {horizon}"),
        }
    }
}

fn relation_leg(entry: &CatalogEntry, a: &IntegerSequence) -> Option<Status> {
    let rel = entry.relation?;
    let other = match lookup(rel.other).and_then(|o| generate_hiccup(&o.params, a.len())) {
        Ok(o) => o,
        Err(e) => return Some(Status::error(e)),
    };
    let t = a.terms();
    for n in rel.from..=t.len().saturating_sub(rel.index_shift) {
        let want = other.terms()[n - 1] + rel.offset;
        let got = t[n + rel.index_shift - 1];
        if want != got {
            return Some(Status::Fail {
                n: Some((n + rel.index_shift) as u64),
                detail: format!("{} gives {want}, entry has {got}", rel.other),
            });
        }
    }
    Some(Status::Pass)
}

fn numeration_checks(entry: &CatalogEntry, horizon: u64, exec: Execution) -> Result<Option<NumerationChecks>> {
    if entry.params != HiccupParams::new(0, 2, 4, 2) {
        return Ok(None);
    }
    let ns = dumont_thomas(&"0->01, 1->0001".parse()?, '0')?;
    let seq = generate_hiccup(&entry.params, horizon as usize + 1)?;
    let shifted_pair = verify_shifted_pair(&ns, &seq, horizon)?;
    let head = IntegerSequence(seq.terms()[..horizon as usize].to_vec());
    let kimberling = kimberling_scan(exec, &head, -3, 2);
    Ok(Some(NumerationChecks {
        shifted_pair,
        kimberling,
    }))
}

pub fn verify_entry(entry: &CatalogEntry, opts: &VerifyOptions) -> VerificationReport {
    let start = Instant::now();
    let mut formulas = DerivedFormulas::default();
    let mut report = VerificationReport {
        entry: entry.oeis_id.to_string(),
        params: entry.params,
        horizon: opts.horizon,
        cfrac_horizon: opts.cfrac_horizon.min(opts.horizon),
        recursion: Status::Pass,
        morphic: Status::Pass,
        beatty: Status::Pass,
        cfrac: Status::Pass,
        relation: None,
        numeration: None,
        errors: Vec::new(),
        formulas: DerivedFormulas::default(),
        elapsed_ms: 0,
    };
    let a = match generate_hiccup(&entry.params, opts.horizon as usize) {
        Ok(a) => a,
        Err(e) => {
            report.recursion = Status::error(e);
            return report;
        }
    };
    report.recursion = recursion_leg(entry, &a);
    report.morphic = morphic_leg(entry, &a, opts.preference, &mut formulas);
    report.beatty = beatty_leg(entry, &a, opts.exec, &mut formulas);
    report.cfrac = cfrac_leg(entry, &a, opts.cfrac_horizon, &mut formulas);
    report.relation = relation_leg(entry, &a);
    match numeration_checks(entry, opts.horizon, opts.exec) {
        Ok(n) => report.numeration = n,
        Err(e) => report.errors.push(format!("numeration: {e}")),
    }
    report.formulas = formulas;
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    report
}

/// Verifies the whole catalog; reports come back in catalog order.
pub fn verify_all(opts: &VerifyOptions) -> Vec<VerificationReport> {
    map(opts.exec, load_catalog(), |e| verify_entry(e, opts))
}
