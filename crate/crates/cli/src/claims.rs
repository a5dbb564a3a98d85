//! Claims files: declarative statements checked against the library.
//!
//! ```json
//! {"version": 1, "claims": [
//!   {"id": "unit", "kind": "e2_dim", "p": 5, "s": 0, "t": 0, "expect": 1}
//! ]}
//! ```
//!
//! Integer fields accept a number or an expression string in `p`, `q` and
//! the claim's `vars`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::fs;
use std::path::Path;

use mayss_core::adams_certify::{adams_dr_window, product_nonzero_at_e2, resolve_text, Certificate, Verdict};
use mayss_core::greek_bp::{enumerate_beta, enumerate_ext0_kr, enumerate_ext1_bpk, stem_of, thom_image, BPGen, BetaIndex, Family, GreekIndex};
use mayss_core::les_dims::{dual_shift, ext_dims, SphereTable, Spectrum};
use mayss_core::may_core::{parse_monomial, FactorKey};
use mayss_core::PrimeContext;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::expr::{eval_str, Env};
use crate::session::Session;

pub const CLAIMS_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Num {
    Int(i64),
    Expr(String),
}

impl Num {
    fn text(&self) -> String {
        match self {
            Num::Int(v) => v.to_string(),
            Num::Expr(e) => e.clone(),
        }
    }
}

impl From<i64> for Num {
    fn from(v: i64) -> Self {
        Num::Int(v)
    }
}

impl From<&str> for Num {
    fn from(v: &str) -> Self {
        Num::Expr(v.to_string())
    }
}

fn one() -> Num {
    Num::Int(1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Presence {
    /// Ext vanishes, certified by E1 or E2.
    Zero,
    /// Ext is nonzero, certified by collapse.
    Nonzero,
    /// E2 is nonzero, so the cell is not ruled out.
    Present,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowExpect {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub not_a_boundary: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub permanent: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub product_nonzero: Option<bool>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimExpect {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact: Option<Num>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub at_least: Option<Num>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub contains: Option<Num>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThomExpect {
    pub name: String,
    pub s: Num,
    pub t: Num,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ClaimBody {
    E1Basis {
        s: Num,
        t: Num,
        expect: Vec<String>,
    },
    E2Dim {
        s: Num,
        t: Num,
        expect: Num,
    },
    ExtVanishing {
        s: Num,
        t: Num,
        expect: Presence,
    },
    DrWindow {
        s: Num,
        t: Num,
        r_min: Num,
        r_max: Num,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        product: Vec<String>,
        expect: WindowExpect,
    },
    LesDim {
        spectrum: String,
        #[serde(default)]
        dual: bool,
        s: Num,
        t: Num,
        expect: DimExpect,
    },
    BetaList {
        t: Num,
        #[serde(default)]
        strict: bool,
        expect: Vec<String>,
    },
    Ext0List {
        n: Num,
        #[serde(default = "one")]
        t: Num,
        expect: Vec<String>,
    },
    Ext1BpkList {
        n: Num,
        expect: Vec<String>,
    },
    Stem {
        family: String,
        expect: Num,
    },
    Thom {
        index: String,
        expect: ThomExpect,
    },
}

impl ClaimBody {
    pub fn kind(&self) -> &'static str {
        match self {
            ClaimBody::E1Basis { .. } => "e1_basis",
            ClaimBody::E2Dim { .. } => "e2_dim",
            ClaimBody::ExtVanishing { .. } => "ext_vanishing",
            ClaimBody::DrWindow { .. } => "dr_window",
            ClaimBody::LesDim { .. } => "les_dim",
            ClaimBody::BetaList { .. } => "beta_list",
            ClaimBody::Ext0List { .. } => "ext0_list",
            ClaimBody::Ext1BpkList { .. } => "ext1_bpk_list",
            ClaimBody::Stem { .. } => "stem",
            ClaimBody::Thom { .. } => "thom",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claim {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub id: Option<String>,
    /// Free text saying where the statement comes from.
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub source: String,
    pub p: u64,
    #[serde(default)]
    pub conjectural: bool,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub vars: BTreeMap<String, Num>,
    #[serde(flatten)]
    pub body: ClaimBody,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimsFile {
    pub version: u32,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub description: String,
    pub claims: Vec<Claim>,
}

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("parse error at line {line}, column {column}: {msg}")]
    Parse { line: usize, column: usize, msg: String },
    #[error("unsupported claims version {0} (expected {CLAIMS_VERSION})")]
    Version(u32),
}

pub fn parse_claims(text: &str) -> Result<ClaimsFile, LoadError> {
    let file: ClaimsFile = serde_json::from_str(text).map_err(|e| LoadError::Parse {
        line: e.line(),
        column: e.column(),
        msg: e.to_string(),
    })?;
    if file.version != CLAIMS_VERSION {
        return Err(LoadError::Version(file.version));
    }
    Ok(file)
}

pub fn load_claims(path: &Path) -> Result<ClaimsFile, LoadError> {
    let text = fs::read_to_string(path).map_err(|source| LoadError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_claims(&text)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    Uncertified,
    SkippedConjectural,
    Error,
}

impl Status {
    pub fn label(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Uncertified => "uncertified",
            Status::SkippedConjectural => "skipped-conjectural",
            Status::Error => "error",
        }
    }

    fn worst(self, other: Status) -> Status {
        let rank = |s: Status| match s {
            Status::Pass | Status::SkippedConjectural => 0,
            Status::Uncertified => 1,
            Status::Fail => 2,
            Status::Error => 3,
        };
        if rank(other) > rank(self) {
            other
        } else {
            self
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClaimResult {
    pub index: usize,
    pub id: String,
    pub kind: String,
    pub status: Status,
    pub computed: Value,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub uncertified: usize,
    pub skipped_conjectural: usize,
    pub error: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub summary: Summary,
    pub results: Vec<ClaimResult>,
}

impl Report {
    fn new(results: Vec<ClaimResult>) -> Self {
        let mut s = Summary {
            total: results.len(),
            ..Summary::default()
        };
        for r in &results {
            match r.status {
                Status::Pass => s.pass += 1,
                Status::Fail => s.fail += 1,
                Status::Uncertified => s.uncertified += 1,
                Status::SkippedConjectural => s.skipped_conjectural += 1,
                Status::Error => s.error += 1,
            }
        }
        Report { summary: s, results }
    }

    /// 0 when nothing failed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.summary.fail + self.summary.error > 0 {
            1
        } else {
            0
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.results {
            out.push_str(&format!("{:<19} {:>3} {} [{}] {}\n", r.status.label(), r.index, r.id, r.kind, r.detail));
        }
        let s = &self.summary;
        out.push_str(&format!(
            "{} claims: {} pass, {} fail, {} uncertified, {} skipped-conjectural, {} error\n",
            s.total, s.pass, s.fail, s.uncertified, s.skipped_conjectural, s.error
        ));
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct RunOptions {
    pub include_conjectures: bool,
    /// Worker limit; `None` uses the global rayon pool.
    pub jobs: Option<usize>,
}

/// Evaluate every claim; results come back in file order.
pub fn run_claims(session: &Session, file: &ClaimsFile, opts: RunOptions) -> Report {
    let eval = || -> Vec<ClaimResult> {
        file.claims
            .par_iter()
            .enumerate()
            .map(|(i, c)| evaluate(session, i, c, opts.include_conjectures))
            .collect()
    };
    let results = match opts.jobs {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build() {
            Ok(pool) => pool.install(eval),
            Err(_) => eval(),
        },
        None => eval(),
    };
    Report::new(results)
}

struct Outcome {
    status: Status,
    computed: Value,
    detail: String,
}

impl Outcome {
    fn new(status: Status, computed: Value, detail: impl Into<String>) -> Self {
        Outcome {
            status,
            computed,
            detail: detail.into(),
        }
    }

    fn check(ok: bool, computed: Value, detail: impl Into<String>) -> Self {
        Outcome::new(if ok { Status::Pass } else { Status::Fail }, computed, detail)
    }
}

pub fn evaluate(session: &Session, index: usize, claim: &Claim, include_conjectures: bool) -> ClaimResult {
    let id = claim.id.clone().unwrap_or_else(|| format!("#{index}"));
    let kind = claim.body.kind().to_string();
    if claim.conjectural && !include_conjectures {
        return ClaimResult {
            index,
            id,
            kind,
            status: Status::SkippedConjectural,
            computed: Value::Null,
            detail: "conjectural".into(),
        };
    }
    let out = eval_claim(session, claim).unwrap_or_else(|e| Outcome::new(Status::Error, Value::Null, e));
    ClaimResult {
        index,
        id,
        kind,
        status: out.status,
        computed: out.computed,
        detail: out.detail,
    }
}

struct Vals {
    env: Env,
}

impl Vals {
    fn int(&self, n: &Num) -> Result<i128, String> {
        match n {
            Num::Int(v) => Ok(*v as i128),
            Num::Expr(e) => eval_str(e, &self.env).map_err(|e| e.to_string()),
        }
    }

    fn nonneg(&self, n: &Num, what: &str) -> Result<u64, String> {
        let v = self.int(n)?;
        u64::try_from(v).map_err(|_| format!("{what} = {} evaluates to {v}, expected a non-negative integer", n.text()))
    }

    fn small(&self, n: &Num, what: &str) -> Result<u32, String> {
        let v = self.nonneg(n, what)?;
        u32::try_from(v).map_err(|_| format!("{what} = {v} is too large"))
    }
}

fn sorted_key(k: &FactorKey) -> FactorKey {
    let mut k = k.clone();
    k.sort();
    k
}

fn set_compare<T: Ord + Clone + fmt::Display>(got: &[T], want: &[T]) -> (bool, String) {
    let g: BTreeSet<T> = got.iter().cloned().collect();
    let w: BTreeSet<T> = want.iter().cloned().collect();
    let ok = g == w && got.len() == want.len();
    if ok {
        return (true, format!("{} items match", got.len()));
    }
    let missing: Vec<String> = w.difference(&g).map(|x| x.to_string()).collect();
    let extra: Vec<String> = g.difference(&w).map(|x| x.to_string()).collect();
    (false, format!("missing [{}], unexpected [{}]", missing.join(", "), extra.join(", ")))
}

fn parse_all<T: std::str::FromStr>(items: &[String]) -> Result<Vec<T>, String>
where
    T::Err: fmt::Display,
{
    items.iter().map(|x| x.parse::<T>().map_err(|e| e.to_string())).collect()
}

fn cert_json(c: &Certificate) -> Value {
    json!({"s": c.s, "t": c.t, "verdict": c.verdict.to_string(), "e1": c.e1, "e2": c.e2, "lower": c.lower})
}

fn eval_claim(session: &Session, claim: &Claim) -> Result<Outcome, String> {
    let p = claim.p;
    let ctx = PrimeContext::new(p).map_err(|e| e.to_string())?;
    let mut env = Env::new(p);
    let defs: BTreeMap<String, String> = claim.vars.iter().map(|(k, v)| (k.clone(), v.text())).collect();
    env.bind_all(&defs).map_err(|e| e.to_string())?;
    let v = Vals { env };
    let engine = || session.engine(p).map_err(|e| e.to_string());
    Ok(match &claim.body {
        ClaimBody::E1Basis { s, t, expect } => {
            let (s, t) = (v.small(s, "s")?, v.nonneg(t, "t")?);
            let basis = engine()?.basis(s, t);
            let got: BTreeSet<FactorKey> = basis.iter().map(|m| sorted_key(m.key())).collect();
            let mut want = BTreeSet::new();
            for text in expect {
                let m = parse_monomial(&ctx, text)
                    .map_err(|e| e.to_string())?
                    .ok_or_else(|| format!("{text:?} is zero in E1"))?;
                let d = m.tridegree(&ctx);
                if (d.s, d.t) != (s, t) {
                    return Err(format!("expected monomial {text:?} lies in ({},{}), not ({s},{t})", d.s, d.t));
                }
                want.insert(sorted_key(m.key()));
            }
            let listed: Vec<String> = basis.iter().map(|m| m.to_string()).collect();
            let ok = got == want && want.len() == expect.len();
            Outcome::check(
                ok,
                json!({"s": s, "t": t, "basis": listed}),
                format!("E1^({s},{t}) has {} monomials{}", got.len(), if ok { "" } else { ", expected list differs" }),
            )
        }
        ClaimBody::E2Dim { s, t, expect } => {
            let (s, t) = (v.small(s, "s")?, v.nonneg(t, "t")?);
            let want = v.nonneg(expect, "expect")? as usize;
            let r = session.e2(p, s, t).map_err(|e| e.to_string())?;
            let reps: Vec<String> = r.representatives().map(|e| e.to_string()).collect();
            Outcome::check(
                r.e2_total == want,
                json!({"s": s, "t": t, "e1": r.e1_total, "e2": r.e2_total, "representatives": reps}),
                format!("dim E2^({s},{t}) = {} (expected {want})", r.e2_total),
            )
        }
        ClaimBody::ExtVanishing { s, t, expect } => {
            let (s, t) = (v.int(s)? as i64, v.int(t)? as i64);
            let c = match expect {
                Presence::Nonzero => session.dim(p, s, t),
                _ => session.vanishing(p, s, t),
            }
            .map_err(|e| e.to_string())?;
            let (lo, hi) = c.bounds();
            let status = match expect {
                Presence::Zero if c.verdict.is_vanishing() => Status::Pass,
                Presence::Zero if matches!(c.verdict, Verdict::UpperBound(_)) => Status::Uncertified,
                Presence::Zero => Status::Fail,
                Presence::Nonzero if lo >= 1 => Status::Pass,
                Presence::Nonzero if hi == 0 => Status::Fail,
                Presence::Nonzero => Status::Uncertified,
                Presence::Present if c.e2 >= 1 => Status::Pass,
                Presence::Present => Status::Fail,
            };
            Outcome::new(status, cert_json(&c), format!("Ext^({s},{t}): {} (dim in [{lo},{hi}])", c.verdict))
        }
        ClaimBody::DrWindow {
            s,
            t,
            r_min,
            r_max,
            product,
            expect,
        } => {
            let (s, t) = (v.small(s, "s")?, v.nonneg(t, "t")?);
            let (r_min, r_max) = (v.small(r_min, "r_min")?, v.small(r_max, "r_max")?);
            let eng = engine()?;
            let w = adams_dr_window(&eng, s, t, r_min, r_max).map_err(|e| e.to_string())?;
            let sources: Vec<Value> = w.entries.iter().filter_map(|e| e.source.as_ref().map(cert_json)).collect();
            let targets: Vec<Value> = w.entries.iter().map(|e| cert_json(&e.target)).collect();
            let mut computed = json!({
                "s": s, "t": t,
                "not_a_boundary": w.not_a_boundary,
                "permanent_up_to_r_max": w.permanent_up_to_r_max,
                "sources": sources,
                "targets": targets,
            });
            let mut status = Status::Pass;
            let mut notes = Vec::new();
            // a true expectation that is not met is a failure only when some cell is certified nonzero
            let judge = |want: bool, got: bool, certs: Vec<&Certificate>| -> Status {
                if want == got {
                    Status::Pass
                } else if want && certs.iter().all(|c| !matches!(c.verdict, Verdict::DimCertified(_))) {
                    Status::Uncertified
                } else {
                    Status::Fail
                }
            };
            if let Some(want) = expect.not_a_boundary {
                let st = judge(want, w.not_a_boundary, w.entries.iter().filter_map(|e| e.source.as_ref()).collect());
                notes.push(format!("not_a_boundary = {}", w.not_a_boundary));
                status = status.worst(st);
            }
            if let Some(want) = expect.permanent {
                let st = judge(want, w.permanent_up_to_r_max, w.entries.iter().map(|e| &e.target).collect());
                notes.push(format!("permanent up to r = {r_max}: {}", w.permanent_up_to_r_max));
                status = status.worst(st);
            }
            if !product.is_empty() || expect.product_nonzero.is_some() {
                let classes = product
                    .iter()
                    .map(|n| resolve_text(&ctx, n))
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|e| e.to_string())?;
                let pr = product_nonzero_at_e2(&eng, &classes).map_err(|e| e.to_string())?;
                computed["product"] = json!({
                    "s": pr.s, "t": pr.t, "nonzero": pr.nonzero,
                    "representative": pr.representative.to_string(),
                });
                if (pr.s, pr.t) != (s, t) {
                    notes.push(format!("product sits in ({},{}), not the window cell", pr.s, pr.t));
                    status = status.worst(Status::Fail);
                }
                if let Some(want) = expect.product_nonzero {
                    let word = if pr.nonzero { "nonzero" } else { "zero (d1-boundary)" };
                    notes.push(format!("product {} is {word} at E2", pr.representative));
                    status = status.worst(if want == pr.nonzero { Status::Pass } else { Status::Fail });
                }
            }
            Outcome::new(status, computed, notes.join("; "))
        }
        ClaimBody::LesDim {
            spectrum,
            dual,
            s,
            t,
            expect,
        } => {
            let sp = Spectrum::parse(spectrum).ok_or_else(|| format!("unknown spectrum {spectrum:?}"))?;
            let (s, t) = (v.small(s, "s")?, v.nonneg(t, "t")?);
            let eng = engine()?;
            let shift = if *dual { dual_shift(&ctx, sp) } else { 0 };
            let table = SphereTable::for_query(&eng, sp, s, t + shift).map_err(|e| e.to_string())?;
            let d = ext_dims(&table, sp, s as i64, t as i64, *dual).map_err(|e| e.to_string())?;
            let mut status = Status::Pass;
            let mut set = 0;
            if let Some(k) = &expect.exact {
                let k = v.nonneg(k, "exact")? as usize;
                set += 1;
                status = status.worst(if d.exact && d.lo == k {
                    Status::Pass
                } else if !d.contains(k) {
                    Status::Fail
                } else {
                    Status::Uncertified
                });
            }
            if let Some(k) = &expect.at_least {
                let k = v.nonneg(k, "at_least")? as usize;
                set += 1;
                status = status.worst(if d.lo >= k {
                    Status::Pass
                } else if d.hi < k {
                    Status::Fail
                } else {
                    Status::Uncertified
                });
            }
            if let Some(k) = &expect.contains {
                let k = v.nonneg(k, "contains")? as usize;
                set += 1;
                status = status.worst(if d.contains(k) { Status::Pass } else { Status::Fail });
            }
            if set == 0 {
                return Err("les_dim expectation needs exact, at_least or contains".into());
            }
            let name = format!("{sp}{}", if *dual { " dual" } else { "" });
            Outcome::new(
                status,
                json!({"spectrum": name, "s": s, "t": t, "lo": d.lo, "hi": d.hi, "exact": d.exact}),
                format!("dim Ext^({s},{t})({name}) in {d}"),
            )
        }
        ClaimBody::BetaList { t, strict, expect } => {
            let t = v.nonneg(t, "t")?;
            let got = enumerate_beta(&ctx, t, *strict);
            let want: Vec<BetaIndex> = parse_all(expect)?;
            let (ok, detail) = set_compare(&got, &want);
            let listed: Vec<String> = got.iter().map(|b| b.to_string()).collect();
            Outcome::check(ok, json!({"t": t, "betas": listed}), detail)
        }
        ClaimBody::Ext0List { n, t, expect } => {
            let (n, t) = (v.small(n, "n")?, v.nonneg(t, "t")?);
            let got = enumerate_ext0_kr(&ctx, n, t).map_err(|e| e.to_string())?;
            let want: Vec<BPGen> = parse_all(expect)?;
            let (ok, detail) = set_compare(&got, &want);
            let listed: Vec<String> = got.iter().map(|b| b.to_string()).collect();
            Outcome::check(ok, json!({"n": n, "t": t, "generators": listed}), detail)
        }
        ClaimBody::Ext1BpkList { n, expect } => {
            let n = v.small(n, "n")?;
            let got = enumerate_ext1_bpk(&ctx, n).map_err(|e| e.to_string())?;
            let want: Vec<BPGen> = parse_all(expect)?;
            let (ok, mut detail) = set_compare(&got.generators, &want);
            if !got.degree_uncertain.is_empty() {
                let open: Vec<String> = got.degree_uncertain.iter().map(|g| g.to_string()).collect();
                detail.push_str(&format!("; degree-undetermined candidates: {}", open.join(", ")));
            }
            let listed: Vec<String> = got.generators.iter().map(|b| b.to_string()).collect();
            let open: Vec<String> = got.degree_uncertain.iter().map(|b| b.to_string()).collect();
            Outcome::check(ok, json!({"n": n, "generators": listed, "degree_uncertain": open}), detail)
        }
        ClaimBody::Stem { family, expect } => {
            let fam = Family::from_parts(family, |k| v.env.get(k).and_then(|x| u64::try_from(x).ok())).map_err(|e| e.to_string())?;
            let stem = stem_of(&ctx, &fam).map_err(|e| e.to_string())?;
            let want = v.int(expect)?;
            let info = fam.info(&ctx).map_err(|e| e.to_string())?;
            Outcome::check(
                stem as i128 == want,
                json!({"family": family, "stem": stem, "s": info.s, "t": info.t}),
                format!("stem {stem} (expected {want}), detected in ({},{})", info.s, info.t),
            )
        }
        ClaimBody::Thom { index, expect } => {
            let idx: GreekIndex = index.parse().map_err(|e: mayss_core::TextError| e.to_string())?;
            let img = thom_image(&ctx, &idx).map_err(|e| e.to_string())?;
            let (ws, wt) = (v.small(&expect.s, "s")?, v.nonneg(&expect.t, "t")?);
            let ok = img.name == expect.name && img.s == ws && img.t == wt;
            Outcome::check(
                ok,
                json!({"name": img.name, "s": img.s, "t": img.t, "representative": img.representative.to_string()}),
                format!("{index} -> {} in ({},{})", img.name, img.s, img.t),
            )
        }
    })
}
