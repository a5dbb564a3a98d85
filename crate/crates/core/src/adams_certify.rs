//! Statements about Ext_A^{s,t}(Z_p, Z_p) backed by May E1/E2 data.
//!
//! Every May differential raises s by one and keeps t, and the May spectral
//! sequence converges to Ext, so E1 or E2 vanishing at (s,t) gives Ext^{s,t} = 0.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::CertifyError;
use crate::may_core::{Element, FactorKey, Generator, Monomial, TriDegree};
use crate::may_diff::{d1, E2Report, MayEngine};
use crate::prime::PrimeContext;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", content = "dim")]
pub enum Verdict {
    E1Empty,
    E2Zero,
    DimCertified(usize),
    UpperBound(usize),
}

impl Verdict {
    pub fn is_vanishing(&self) -> bool {
        matches!(self, Verdict::E1Empty | Verdict::E2Zero)
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::E1Empty => "E1Empty",
            Verdict::E2Zero => "E2Zero",
            Verdict::DimCertified(_) => "DimCertified",
            Verdict::UpperBound(_) => "UpperBound",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::DimCertified(d) | Verdict::UpperBound(d) => write!(f, "{}({d})", self.label()),
            _ => f.write_str(self.label()),
        }
    }
}

/// Outcome of a vanishing or dimension query at one bidegree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub s: u32,
    pub t: u64,
    pub verdict: Verdict,
    pub e1: usize,
    pub e2: usize,
    /// Proven lower bound on dim Ext^{s,t}; equals the dimension when certified.
    pub lower: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub basis: Option<Vec<String>>,
}

impl Certificate {
    /// `[lo, hi]` bounds on dim Ext^{s,t}.
    pub fn bounds(&self) -> (usize, usize) {
        match self.verdict {
            Verdict::E1Empty | Verdict::E2Zero => (0, 0),
            Verdict::DimCertified(d) => (d, d),
            Verdict::UpperBound(d) => (self.lower, d),
        }
    }

    pub fn is_certified(&self) -> bool {
        !matches!(self.verdict, Verdict::UpperBound(_))
    }

    pub fn with_basis(mut self, report: &E2Report) -> Self {
        self.basis = Some(report.representatives().map(|e| e.to_string()).collect());
        self
    }

    fn zero_below(s: i64, t: i64) -> Self {
        Certificate {
            s: s.max(0) as u32,
            t: t.max(0) as u64,
            verdict: Verdict::E1Empty,
            e1: 0,
            e2: 0,
            lower: 0,
            basis: None,
        }
    }
}

/// Monomials built only from the classes known to survive the whole May
/// spectral sequence: a0, h_{1,j}, b_{1,j} and h_{1,0}a_1.
pub fn is_known_permanent(key: &FactorKey) -> bool {
    let mut has_h10 = false;
    let mut a1 = 0;
    for &(g, e) in key {
        match g {
            Generator::A(0) | Generator::B(1, _) => {}
            Generator::H(1, 0) => has_h10 = true,
            Generator::H(1, _) => {}
            Generator::A(1) => a1 = e,
            _ => return false,
        }
    }
    a1 == 0 || (a1 == 1 && has_h10)
}

/// Dimension of the part of E2^{s,t} spanned by permanent-cycle monomials.
pub fn permanent_span(engine: &MayEngine, s: u32, t: u64) -> usize {
    let basis = engine.basis(s, t);
    let perm: Vec<Element> = basis
        .iter()
        .filter(|m| is_known_permanent(m.key()))
        .map(|m| Element::from(m.clone()))
        .collect();
    if perm.is_empty() {
        return 0;
    }
    engine.cell(s, t).rank_mod_boundaries(&perm)
}

/// E1Empty, E2Zero, or UpperBound(e2). Never claims more than that.
pub fn certify_ext_vanishing(engine: &MayEngine, s: i64, t: i64) -> Certificate {
    if s < 0 || t < 0 {
        return Certificate::zero_below(s, t);
    }
    let (s, t) = (s as u32, t as u64);
    let r = engine.cell(s, t);
    let rep = r.report();
    let verdict = if rep.e1_total == 0 {
        Verdict::E1Empty
    } else if rep.e2_total == 0 {
        Verdict::E2Zero
    } else {
        Verdict::UpperBound(rep.e2_total)
    };
    Certificate {
        s,
        t,
        verdict,
        e1: rep.e1_total,
        e2: rep.e2_total,
        lower: 0,
        basis: None,
    }
}

/// Dimension certificate under the collapse criterion.
///
/// No May d_r (r >= 2) can leave the cell if E2^{s+1,t} = 0 or E2^{s,t} is
/// spanned by permanent cycles; none can enter it if E2^{s-1,t} = 0 or is
/// spanned by permanent cycles. When both hold, E2 = E_infinity here.
pub fn certify_ext_dim(engine: &MayEngine, s: i64, t: i64) -> Certificate {
    let base = certify_ext_vanishing(engine, s, t);
    if base.verdict.is_vanishing() {
        return base;
    }
    let (s, t) = (s as u32, t as u64);
    let e2 = base.e2;
    let mut perm_here: Option<usize> = None;
    let mut perm_here_get = || *perm_here.get_or_insert_with(|| permanent_span(engine, s, t));
    let outgoing_ok = engine.e2_total(s as i64 + 1, t as i64) == 0 || perm_here_get() == e2;
    let incoming_ok = s == 0 || {
        let below = engine.e2_total(s as i64 - 1, t as i64);
        below == 0 || permanent_span(engine, s - 1, t) == below
    };
    let (verdict, lower) = if outgoing_ok && incoming_ok {
        (Verdict::DimCertified(e2), e2)
    } else if incoming_ok {
        (Verdict::UpperBound(e2), perm_here_get())
    } else {
        (Verdict::UpperBound(e2), 0)
    };
    Certificate {
        verdict,
        lower,
        ..base
    }
}

/// One Adams differential length in a window check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowEntry {
    pub r: u32,
    pub target: Certificate,
    /// `None` when the source filtration s - r is negative.
    pub source: Option<Certificate>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowReport {
    pub s: u32,
    pub t: u64,
    pub r_min: u32,
    pub r_max: u32,
    pub entries: Vec<WindowEntry>,
    /// All sources for 2 <= r <= s vanish, so nothing can hit the class.
    pub not_a_boundary: bool,
    /// All targets in `r_min..=r_max` vanish.
    pub permanent_up_to_r_max: bool,
}

/// Vanishing of the Adams d_r source (s-r, t-r+1) and target (s+r, t+r-1)
/// for each r in range.
pub fn adams_dr_window(engine: &MayEngine, s: u32, t: u64, r_min: u32, r_max: u32) -> Result<WindowReport, CertifyError> {
    if r_min < 2 || r_min > r_max {
        return Err(CertifyError::InvalidRange { r_min, r_max });
    }
    let mut entries = Vec::new();
    for r in r_min..=r_max {
        let target = certify_ext_vanishing(engine, s as i64 + r as i64, t as i64 + r as i64 - 1);
        let source = (r <= s).then(|| certify_ext_vanishing(engine, s as i64 - r as i64, t as i64 - r as i64 + 1));
        entries.push(WindowEntry { r, target, source });
    }
    let covers_sources = r_min <= 2 && r_max >= s;
    let not_a_boundary = covers_sources
        && entries
            .iter()
            .all(|e| e.source.as_ref().is_none_or(|c| c.verdict.is_vanishing()));
    let permanent_up_to_r_max = entries.iter().all(|e| e.target.verdict.is_vanishing());
    Ok(WindowReport {
        s,
        t,
        r_min,
        r_max,
        entries,
        not_a_boundary,
        permanent_up_to_r_max,
    })
}

/// A differential recorded from the literature, not computed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnownDifferential {
    pub r: u32,
    pub target: String,
    pub conjectural: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedClass {
    pub name: String,
    pub param: Option<u32>,
    pub s: u32,
    pub t: u64,
    pub representative: Option<Element>,
    pub conjectural: bool,
    pub differential: Option<KnownDifferential>,
}

impl NamedClass {
    pub fn stem(&self) -> i64 {
        self.t as i64 - self.s as i64
    }

    fn new(name: String, param: Option<u32>, s: u32, t: u64) -> Self {
        Self {
            name,
            param,
            s,
            t,
            representative: None,
            conjectural: false,
            differential: None,
        }
    }
}

impl fmt::Display for NamedClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.param {
            Some(n) => write!(f, "{}_{}", self.name, n),
            None => f.write_str(&self.name),
        }
    }
}

/// Names accepted by [`resolve_named`].
pub const CLASS_NAMES: &[&str] = &["h", "b", "a0", "alpha2~", "g0", "g", "k", "l", "l'", "beta~", "gamma~"];

fn need(name: &str, param: Option<u32>) -> Result<u32, CertifyError> {
    param.ok_or_else(|| CertifyError::ParamsOutOfRange {
        name: name.to_string(),
        detail: "missing index".to_string(),
    })
}

fn out_of_range(name: &str, detail: impl Into<String>) -> CertifyError {
    CertifyError::ParamsOutOfRange {
        name: name.to_string(),
        detail: detail.into(),
    }
}

fn rep(ctx: &PrimeContext, factors: &[(Generator, u32)]) -> Element {
    Monomial::from_factors(ctx, 1, factors.iter().copied())
        .expect("named representatives are nonzero monomials")
        .into()
}

/// Look up a named Ext class. Families with an index take it in `param`:
/// `h` (h_n), `b` (b_k in Ext^{2,p^{k+1}q}), `g`, `k`, `l`, `l'` (n >= 3),
/// `beta~` and `gamma~` (the filtration s).
pub fn resolve_named(ctx: &PrimeContext, name: &str, param: Option<u32>) -> Result<NamedClass, CertifyError> {
    use Generator::*;
    let p = ctx.p();
    let q = ctx.q();
    let pw = |e: u32| {
        ctx.checked_pow(e)
            .ok_or_else(|| out_of_range(name, format!("p^{e} overflows")))
    };
    let c = match name {
        "h" => {
            let n = need(name, param)?;
            let mut c = NamedClass::new("h".into(), Some(n), 1, pw(n)? * q);
            c.representative = Some(rep(ctx, &[(H(1, n), 1)]));
            if n >= 1 {
                c.differential = Some(KnownDifferential {
                    r: 2,
                    target: format!("a0 b_{}", n - 1),
                    conjectural: false,
                });
            }
            c
        }
        "b" => {
            let k = need(name, param)?;
            let mut c = NamedClass::new("b".into(), Some(k), 2, pw(k + 1)? * q);
            c.representative = Some(rep(ctx, &[(B(1, k), 1)]));
            c
        }
        "a0" => {
            let mut c = NamedClass::new("a0".into(), None, 1, 1);
            c.representative = Some(rep(ctx, &[(A(0), 1)]));
            c
        }
        "alpha2~" => {
            let mut c = NamedClass::new("alpha2~".into(), None, 2, 2 * q + 1);
            c.representative = Some(rep(ctx, &[(H(1, 0), 1), (A(1), 1)]));
            c
        }
        "g0" => {
            let mut c = NamedClass::new("g0".into(), None, 2, p * q + 2 * q);
            c.representative = Some(rep(ctx, &[(H(2, 0), 1), (H(1, 0), 1)]));
            c.differential = Some(KnownDifferential {
                r: 2,
                target: "b_0 alpha2~".into(),
                conjectural: false,
            });
            c
        }
        "g" | "k" | "l" | "l'" => {
            let n = need(name, param)?;
            if n < 3 || p < 7 {
                return Err(out_of_range(name, "defined for p >= 7, n >= 3"));
            }
            let (s, t) = match name {
                "g" => (2, pw(n + 1)? * q + 2 * pw(n)? * q),
                "l" => (3, pw(n + 1)? * q + 2 * pw(n)? * q),
                "k" => (2, 2 * pw(n + 1)? * q + pw(n)? * q),
                _ => (3, 2 * pw(n + 1)? * q + pw(n)? * q),
            };
            let mut c = NamedClass::new(name.to_string(), Some(n), s, t);
            c.conjectural = true;
            c.differential = match name {
                "g" => Some(KnownDifferential {
                    r: 2,
                    target: format!("a0 l_{n}"),
                    conjectural: true,
                }),
                "k" => Some(KnownDifferential {
                    r: 2,
                    target: format!("a0 l'_{n}"),
                    conjectural: true,
                }),
                _ => None,
            };
            c
        }
        "beta~" => {
            let s = need(name, param)?;
            if s < 2 || s as u64 >= p {
                return Err(out_of_range(name, "needs 2 <= s < p"));
            }
            let s64 = s as u64;
            NamedClass::new("beta~".into(), Some(s), s, s64 * p * q + (s64 - 1) * q + s64 - 2)
        }
        "gamma~" => {
            let s = need(name, param)?;
            if s < 3 || s as u64 >= p {
                return Err(out_of_range(name, "needs 3 <= s < p"));
            }
            let s64 = s as u64;
            let t = s64 * p * p * q + (s64 - 1) * p * q + (s64 - 2) * q + s64 - 3;
            let mut c = NamedClass::new("gamma~".into(), Some(s), s, t);
            c.representative = Some(rep(ctx, &[(H(2, 1), 1), (H(1, 2), 1), (H(3, 0), 1), (A(3), s - 3)]));
            c
        }
        other => return Err(CertifyError::UnknownName(other.to_string())),
    };
    if let Some(r) = &c.representative {
        let d: TriDegree = r.tridegree(ctx).expect("monomial representative");
        assert_eq!((d.s, d.t), (c.s, c.t), "representative of {c} has the wrong bidegree");
    }
    Ok(c)
}

/// Parse `h_3`, `gamma~_4`, `g0`, `alpha2~` and resolve.
pub fn resolve_text(ctx: &PrimeContext, text: &str) -> Result<NamedClass, CertifyError> {
    let text = text.trim();
    if CLASS_NAMES.contains(&text) {
        return resolve_named(ctx, text, None);
    }
    let (name, idx) = text
        .rsplit_once('_')
        .ok_or_else(|| CertifyError::UnknownName(text.to_string()))?;
    let n: u32 = idx
        .parse()
        .map_err(|_| CertifyError::UnknownName(text.to_string()))?;
    resolve_named(ctx, name, Some(n))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductReport {
    pub s: u32,
    pub t: u64,
    /// The product of representatives is a nonzero E2 class.
    pub nonzero: bool,
    pub representative: Element,
    pub conjectural: bool,
    /// Nonvanishing in Ext also needs the cell to collapse; this is that check.
    pub collapse: Option<Certificate>,
}

/// Multiply May representatives and test the product against d1-boundaries.
pub fn product_nonzero_at_e2(engine: &MayEngine, classes: &[NamedClass]) -> Result<ProductReport, CertifyError> {
    let ctx = engine.ctx();
    let mut prod = Element::one();
    let (mut s, mut t) = (0u32, 0u64);
    for c in classes {
        let r = c
            .representative
            .as_ref()
            .ok_or_else(|| CertifyError::MissingRepresentative(c.to_string()))?;
        prod = prod.multiply(r, ctx);
        s += c.s;
        t += c.t;
    }
    let conjectural = classes.iter().any(|c| c.conjectural);
    if prod.is_zero() {
        return Ok(ProductReport {
            s,
            t,
            nonzero: false,
            representative: prod,
            conjectural,
            collapse: None,
        });
    }
    assert!(d1(&prod, ctx).is_zero(), "product of cycles is not a cycle");
    let cell = engine.cell(s, t);
    let nonzero = !cell.is_boundary(&prod);
    let collapse = nonzero.then(|| certify_ext_dim(engine, s as i64, t as i64));
    Ok(ProductReport {
        s,
        t,
        nonzero,
        representative: prod,
        conjectural,
        collapse,
    })
}
