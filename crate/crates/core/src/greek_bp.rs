//! Brown-Peterson side bookkeeping: beta admissibility, small Ext^0 / Ext^1
//! generator lists solved from degree equations, alpha degrees, the Thom map
//! dictionary, and stems of the families built from them.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{GreekError, TextError};
use crate::may_core::{Element, Generator, Monomial};
use crate::prime::PrimeContext;

fn pw(ctx: &PrimeContext, e: u32) -> Result<u64, GreekError> {
    ctx.checked_pow(e)
        .ok_or_else(|| GreekError::InvalidParams(format!("{}^{e} overflows", ctx.p())))
}

/// `a_k = p^k + p^{k-1} - 1` for k >= 1, `a_0 = 1`, and 0 below.
pub fn mrw_a(p: u64, k: i64) -> u64 {
    match k {
        k if k < 0 => 0,
        0 => 1,
        k => p.pow(k as u32) + p.pow(k as u32 - 1) - 1,
    }
}

/// `t_r = (p^{2r+1} + 1)/(p + 1)`.
pub fn t_r(p: u64, r: u32) -> u64 {
    (p.pow(2 * r + 1) + 1) / (p + 1)
}

/// `a_r = (t p^{2r+1} + t p^{2r} - p^{2r} + 1)/(p + 1)`; equals `t_r` at t = 1.
pub fn a_r(p: u64, t: u64, r: u32) -> u64 {
    (t * p.pow(2 * r + 1) + t * p.pow(2 * r) - p.pow(2 * r) + 1) / (p + 1)
}

fn divides_p(p: u64, x: u64) -> bool {
    x % p == 0
}

/// `beta_{a p^s / b, c+1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BetaIndex {
    pub a: u64,
    pub s: u32,
    pub b: u64,
    pub c: u32,
}

impl BetaIndex {
    pub fn new(a: u64, s: u32, b: u64, c: u32) -> Self {
        Self { a, s, b, c }
    }

    pub fn is_well_formed(&self, ctx: &PrimeContext) -> bool {
        self.a >= 1 && !divides_p(ctx.p(), self.a) && self.b >= 1
    }

    /// Internal degree `a p^s (p+1) q - b q`, if nonnegative.
    pub fn degree(&self, ctx: &PrimeContext) -> Option<u64> {
        let top = self
            .a
            .checked_mul(ctx.checked_pow(self.s)?)?
            .checked_mul(ctx.p() + 1)?
            .checked_mul(ctx.q())?;
        top.checked_sub(self.b.checked_mul(ctx.q())?)
    }

    pub fn bidegree(&self, ctx: &PrimeContext) -> Option<(u32, u64)> {
        Some((2, self.degree(ctx)?))
    }

    /// Written like `beta_{25/24}` or `beta_{105/4,2}`.
    pub fn pretty(&self, ctx: &PrimeContext) -> String {
        let num = self.a * ctx.pow(self.s);
        if self.c == 0 {
            format!("beta_{{{num}/{}}}", self.b)
        } else {
            format!("beta_{{{num}/{},{}}}", self.b, self.c + 1)
        }
    }
}

impl fmt::Display for BetaIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "beta[{},{},{},{}]", self.a, self.s, self.b, self.c)
    }
}

fn bracket_args(what: &'static str, text: &str, prefix: &str) -> Result<Vec<u64>, TextError> {
    let inner = text
        .trim()
        .strip_prefix(prefix)
        .and_then(|r| r.strip_prefix('['))
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| TextError::new(what, text, format!("expected {prefix}[...]")))?;
    inner
        .split(',')
        .map(|x| {
            x.trim()
                .parse::<u64>()
                .map_err(|e| TextError::new(what, text, e.to_string()))
        })
        .collect()
}

impl FromStr for BetaIndex {
    type Err = TextError;

    fn from_str(text: &str) -> Result<Self, TextError> {
        let v = bracket_args("beta index", text, "beta")?;
        if v.len() != 4 {
            return Err(TextError::new("beta index", text, "expected beta[a,s,b,c]"));
        }
        Ok(BetaIndex::new(v[0], v[1] as u32, v[2], v[3] as u32))
    }
}

/// Admissibility of `beta_{a p^s/b, c+1}`:
/// (i) `b <= p^{s-c}` if `a = 1` (`b <= s` in strict mode),
/// (ii) `p^c | b <= a_{s-c}`,
/// (iii) `a_{s-c-1} < b` if `p^{c+1} | b`.
pub fn beta_admissible(ctx: &PrimeContext, idx: &BetaIndex, strict: bool) -> bool {
    let p = ctx.p();
    if !idx.is_well_formed(ctx) || idx.c > idx.s {
        return false;
    }
    let k = idx.s as i64 - idx.c as i64;
    if idx.a == 1 {
        let bound = if strict { idx.s as u64 } else { p.pow(k as u32) };
        if idx.b > bound {
            return false;
        }
    }
    let pc = p.pow(idx.c);
    if idx.b % pc != 0 || idx.b > mrw_a(p, k) {
        return false;
    }
    if idx.b % (pc * p) == 0 && idx.b <= mrw_a(p, k - 1) {
        return false;
    }
    true
}

/// All admissible beta indices in internal degree `t`, sorted.
pub fn enumerate_beta(ctx: &PrimeContext, t: u64, strict: bool) -> Vec<BetaIndex> {
    let (p, q) = (ctx.p(), ctx.q());
    let mut out = Vec::new();
    if t == 0 || t % q != 0 {
        return out;
    }
    let big_t = t / q;
    for s in 0u32.. {
        let Some(ps) = ctx.checked_pow(s) else { break };
        let unit = ps * (p + 1);
        let bmax = mrw_a(p, s as i64);
        // smallest a has a*unit - b = T with b <= a_s
        if unit > big_t + bmax {
            break;
        }
        let a_lo = (big_t + 1).div_ceil(unit);
        let a_hi = (big_t + bmax) / unit;
        for a in a_lo.max(1)..=a_hi {
            if divides_p(p, a) {
                continue;
            }
            let b = a * unit - big_t;
            for c in 0..=s {
                let idx = BetaIndex::new(a, s, b, c);
                if beta_admissible(ctx, &idx, strict) {
                    out.push(idx);
                }
            }
        }
    }
    out.sort();
    out
}

/// The generators `beta_{p^n/p^n-1}` and `beta_{t_r p^{n-2r}/p^{n-2r}-1}` of
/// Ext^{2, p^{n+1}q + q}, for comparison with [`enumerate_beta`].
pub fn beta_formula_list(ctx: &PrimeContext, n: u32) -> Vec<BetaIndex> {
    let p = ctx.p();
    let mut out = vec![BetaIndex::new(1, n, p.pow(n) - 1, 0)];
    for r in 1..=n / 2 {
        let s = n - 2 * r;
        let b = p.pow(s) - 1;
        if b >= 1 {
            out.push(BetaIndex::new(t_r(p, r), s, b, 0));
        }
    }
    out.sort();
    out
}

/// A generator of one of the small BP_*BP Ext groups.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BPGen {
    /// `v2^e`.
    V2Power(u64),
    /// `v1^b c~1(a p^s)`.
    V1C1 { b: u64, a: u64, s: u32 },
    /// `v2^e h_i`.
    H { i: u32, v2: u64 },
    /// `v2^e c2(a p^s)`.
    C2 { a: u64, s: u32, v2: u64 },
    /// `v2^e w2`.
    W2 { v2: u64 },
}

impl BPGen {
    /// Internal degree, or `None` where it depends on the unknown `q(a p^s)`.
    pub fn degree(&self, ctx: &PrimeContext) -> Option<u64> {
        let (p, q) = (ctx.p(), ctx.q());
        let v2 = (p + 1) * q;
        match *self {
            BPGen::V2Power(e) => Some(e * v2),
            BPGen::V1C1 { b, a, s } => Some(b * q + a * ctx.pow(s) * (p + 1) * q),
            BPGen::H { i, v2: e } => Some(e * v2 + ctx.pow(i) * q),
            BPGen::C2 { a, s, v2: e } => {
                if a != 1 {
                    return None;
                }
                // q(p^s) = p^s
                let ps = ctx.pow(s);
                Some(ps * (p * p + p + 1) * q - ps * (p + 1) * q + e * v2)
            }
            BPGen::W2 { v2: e } => Some((p + 1) * (p + 1) * q + e * v2),
        }
    }
}

impl fmt::Display for BPGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v2 = |f: &mut fmt::Formatter<'_>, e: u64| if e == 0 { Ok(()) } else { write!(f, "v2^{e} ") };
        match *self {
            BPGen::V2Power(e) => write!(f, "v2^{e}"),
            BPGen::V1C1 { b, a, s } => {
                if b > 0 {
                    write!(f, "v1^{b} ")?;
                }
                write!(f, "c1~[{a},{s}]")
            }
            BPGen::H { i, v2: e } => {
                v2(f, e)?;
                write!(f, "h{i}")
            }
            BPGen::C2 { a, s, v2: e } => {
                v2(f, e)?;
                write!(f, "c2[{a},{s}]")
            }
            BPGen::W2 { v2: e } => {
                v2(f, e)?;
                f.write_str("w2")
            }
        }
    }
}

impl FromStr for BPGen {
    type Err = TextError;

    fn from_str(text: &str) -> Result<Self, TextError> {
        let err = |why: &str| TextError::new("BP generator", text, why.to_string());
        let toks: Vec<&str> = text.split_whitespace().collect();
        let (mut v1, mut v2) = (None, None);
        let mut rest = None;
        for tok in &toks {
            if let Some(e) = tok.strip_prefix("v1^") {
                v1 = Some(e.parse::<u64>().map_err(|_| err("bad v1 exponent"))?);
            } else if let Some(e) = tok.strip_prefix("v2^") {
                v2 = Some(e.parse::<u64>().map_err(|_| err("bad v2 exponent"))?);
            } else if rest.replace(*tok).is_some() {
                return Err(err("more than one base generator"));
            }
        }
        let e2 = v2.unwrap_or(0);
        match rest {
            None => match (v1, v2) {
                (None, Some(e)) => Ok(BPGen::V2Power(e)),
                _ => Err(err("expected a base generator")),
            },
            Some(r) if r.starts_with("c1~") => {
                if v2.is_some() {
                    return Err(err("v2 power on c1~"));
                }
                let v = bracket_args("BP generator", r, "c1~")?;
                if v.len() != 2 {
                    return Err(err("expected c1~[a,s]"));
                }
                Ok(BPGen::V1C1 {
                    b: v1.unwrap_or(0),
                    a: v[0],
                    s: v[1] as u32,
                })
            }
            Some(_) if v1.is_some() => Err(err("v1 power only goes with c1~")),
            Some(r) if r.starts_with("c2") => {
                let v = bracket_args("BP generator", r, "c2")?;
                if v.len() != 2 {
                    return Err(err("expected c2[a,s]"));
                }
                Ok(BPGen::C2 {
                    a: v[0],
                    s: v[1] as u32,
                    v2: e2,
                })
            }
            Some("w2") => Ok(BPGen::W2 { v2: e2 }),
            Some(r) => {
                let i = r
                    .strip_prefix('h')
                    .and_then(|x| x.parse::<u32>().ok())
                    .ok_or_else(|| err("unknown generator"))?;
                Ok(BPGen::H { i, v2: e2 })
            }
        }
    }
}

/// `q1(a p^s)`: `p^s` for a = 1, `p^s + p^{s-1} - 1` for a >= 2, and 1 when
/// a >= 2 and s = 0.
pub fn q1(p: u64, a: u64, s: u32) -> u64 {
    if a == 1 {
        p.pow(s)
    } else if s == 0 {
        1
    } else {
        p.pow(s) + p.pow(s - 1) - 1
    }
}

/// Generators of Ext^0 in internal degree `t p^n (p+1) q` with coefficients
/// `BP_*/(p, v1^{p^n - 1})` (t = 1) or `BP_*/(p, v1^{p^n})` (t >= 2), found by
/// solving `b q + a p^s (p+1) q = t p^n (p+1) q` over the v1^b c~1(a p^s).
pub fn enumerate_ext0_kr(ctx: &PrimeContext, n: u32, t: u64) -> Result<Vec<BPGen>, GreekError> {
    let p = ctx.p();
    if n == 0 || t == 0 || divides_p(p, t) {
        return Err(GreekError::InvalidParams(format!("need n >= 1 and t >= 1 prime to p (n={n}, t={t})")));
    }
    let pn = pw(ctx, n)?;
    let target = t
        .checked_mul(pn)
        .ok_or_else(|| GreekError::InvalidParams("degree overflows".into()))?;
    let mut out = Vec::new();
    if t == 1 {
        out.push(BPGen::V2Power(pn));
    }
    for s in 0u32.. {
        let Some(ps) = ctx.checked_pow(s) else { break };
        if ps > target {
            break;
        }
        for a in 1..=target / ps {
            if divides_p(p, a) || a * ps == target {
                continue;
            }
            let b = (p + 1) * (target - a * ps);
            let q1v = q1(p, a, s);
            let lo = if t == 1 {
                (pn - 1).saturating_sub(q1v)
            } else {
                pn.saturating_sub(q1v).max(1)
            };
            if b >= lo.max(1) && b < pn {
                out.push(BPGen::V1C1 { b, a, s });
            }
        }
    }
    out.sort();
    Ok(out)
}

/// The closed-form list: `v2^{p^n}` (t = 1 only) and
/// `v1^{p^n - p^{n-2r}} c~1(a_r p^{n-2r})` for 1 <= r <= n/2.
pub fn ext0_formula_list(ctx: &PrimeContext, n: u32, t: u64) -> Vec<BPGen> {
    let p = ctx.p();
    let pn = p.pow(n);
    let mut out = Vec::new();
    if t == 1 {
        out.push(BPGen::V2Power(pn));
    }
    for r in 1..=n / 2 {
        let s = n - 2 * r;
        out.push(BPGen::V1C1 {
            b: pn - p.pow(s),
            a: a_r(p, t, r),
            s,
        });
    }
    out.sort();
    out
}

/// Generators of Ext^{1, p^n q}(BP_*, BP_*K).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ext1Bpk {
    pub generators: Vec<BPGen>,
    /// `c2(a p^s)` with a >= 2 whose degree could match for some admissible
    /// value of the undetermined `q(a p^s)`.
    pub degree_uncertain: Vec<BPGen>,
}

/// Solve `|v2^b h_i| = p^n q` (needs `(p+1) | p^i (p^{n-i} - 1)`),
/// `|v2^b c2(a p^s)| = p^n q` with `b < q(a p^s)`, and `|v2^b w2| = p^n q`.
pub fn enumerate_ext1_bpk(ctx: &PrimeContext, n: u32) -> Result<Ext1Bpk, GreekError> {
    let p = ctx.p();
    if n < 2 {
        return Err(GreekError::InvalidParams(format!("need n >= 2 (n={n})")));
    }
    let pn = pw(ctx, n)?;
    let mut generators = Vec::new();
    // v2^b h_i: b (p+1) = p^i (p^{n-i} - 1)
    for i in (0..=n).rev() {
        let num = p.pow(i) * (p.pow(n - i) - 1);
        if num % (p + 1) == 0 {
            generators.push(BPGen::H { i, v2: num / (p + 1) });
        }
    }
    // v2^b c2(p^s): p^{s+2} + b (p+1) = p^n with 0 <= b < p^s
    for s in 0..=n {
        let base = p.pow(s) * p * p;
        if base > pn {
            break;
        }
        let rest = pn - base;
        if rest % (p + 1) == 0 && rest / (p + 1) < p.pow(s) {
            generators.push(BPGen::C2 { a: 1, s, v2: rest / (p + 1) });
        }
    }
    // v2^b w2: (p+1)^2 + b (p+1) = p^n never holds since p+1 does not divide p^n
    let w2_unit = p + 1;
    for b in 0..=pn / w2_unit {
        if (p + 1) * (p + 1) + b * (p + 1) == pn {
            generators.push(BPGen::W2 { v2: b });
        }
    }
    // a >= 2: a p^s (p^2+p+1) - p^n = D (p+1), D = q(a p^s) - b with
    // 1 <= D < 2 p^s, s <= n - 2.
    let mut degree_uncertain = Vec::new();
    for s in 0..=n.saturating_sub(2) {
        let ps = p.pow(s);
        let unit = ps * (p * p + p + 1);
        let a_max = (pn + 2 * ps * (p + 1)) / unit;
        for a in 2..=a_max {
            if divides_p(p, a) || a * unit <= pn {
                continue;
            }
            let diff = a * unit - pn;
            if diff % (p + 1) == 0 {
                let d = diff / (p + 1);
                if d >= 1 && d < 2 * ps {
                    degree_uncertain.push(BPGen::C2 { a, s, v2: 0 });
                }
            }
        }
    }
    Ok(Ext1Bpk {
        generators,
        degree_uncertain,
    })
}

/// `alpha_{t p^n / n+1}`, p not dividing t.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AlphaIndex {
    pub t: u64,
    pub n: u32,
}

impl AlphaIndex {
    pub fn degree(&self, ctx: &PrimeContext) -> u64 {
        self.t * ctx.pow(self.n) * ctx.q()
    }
}

impl fmt::Display for AlphaIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "alpha[{},{}]", self.t, self.n)
    }
}

impl FromStr for AlphaIndex {
    type Err = TextError;

    fn from_str(text: &str) -> Result<Self, TextError> {
        let v = bracket_args("alpha index", text, "alpha")?;
        if v.len() != 2 {
            return Err(TextError::new("alpha index", text, "expected alpha[t,n]"));
        }
        Ok(AlphaIndex { t: v[0], n: v[1] as u32 })
    }
}

/// Generators of Ext^{1,t} over BP_*BP: at most one per multiple of q.
pub fn alpha_generators(ctx: &PrimeContext, t: u64) -> Vec<AlphaIndex> {
    let (p, q) = (ctx.p(), ctx.q());
    if t == 0 || t % q != 0 {
        return Vec::new();
    }
    let mut m = t / q;
    let mut n = 0;
    while m % p == 0 {
        m /= p;
        n += 1;
    }
    vec![AlphaIndex { t: m, n }]
}

/// `gamma_{t p^n / s, i}`; `i = 1` is the plain `gamma_{t p^n / s}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GammaIndex {
    pub t: u64,
    pub n: u32,
    pub s: u64,
    pub i: u64,
}

impl GammaIndex {
    /// `t p^n (p^2+p+1) q - s (p+1) q - i q`.
    pub fn degree(&self, ctx: &PrimeContext) -> Option<u64> {
        let (p, q) = (ctx.p(), ctx.q());
        let top = self.t * ctx.checked_pow(self.n)? * (p * p + p + 1) * q;
        top.checked_sub(self.s * (p + 1) * q + self.i * q)
    }
}

impl fmt::Display for GammaIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.i == 1 {
            write!(f, "gamma[{},{},{}]", self.t, self.n, self.s)
        } else {
            write!(f, "gamma[{},{},{},{}]", self.t, self.n, self.s, self.i)
        }
    }
}

impl FromStr for GammaIndex {
    type Err = TextError;

    fn from_str(text: &str) -> Result<Self, TextError> {
        let v = bracket_args("gamma index", text, "gamma")?;
        match v.len() {
            3 => Ok(GammaIndex { t: v[0], n: v[1] as u32, s: v[2], i: 1 }),
            4 => Ok(GammaIndex { t: v[0], n: v[1] as u32, s: v[2], i: v[3] }),
            _ => Err(TextError::new("gamma index", text, "expected gamma[t,n,s] or gamma[t,n,s,i]")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GreekIndex {
    Alpha(AlphaIndex),
    Beta(BetaIndex),
    Gamma(GammaIndex),
}

impl fmt::Display for GreekIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GreekIndex::Alpha(x) => x.fmt(f),
            GreekIndex::Beta(x) => x.fmt(f),
            GreekIndex::Gamma(x) => x.fmt(f),
        }
    }
}

impl FromStr for GreekIndex {
    type Err = TextError;

    fn from_str(text: &str) -> Result<Self, TextError> {
        let t = text.trim();
        if t.starts_with("alpha") {
            t.parse().map(GreekIndex::Alpha)
        } else if t.starts_with("beta") {
            t.parse().map(GreekIndex::Beta)
        } else if t.starts_with("gamma") {
            t.parse().map(GreekIndex::Gamma)
        } else {
            Err(TextError::new("Greek index", text, "expected alpha[..], beta[..] or gamma[..]"))
        }
    }
}

/// An Adams Ext class hit by the Thom map.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThomImage {
    pub name: String,
    pub s: u32,
    pub t: u64,
    pub representative: Element,
}

/// The Thom map on the dictionary entries
/// `beta_{p^k/p^k-1} -> h0 h_{k+1}`, `beta_{p^k/p^k} -> b_k`,
/// `gamma_{p^k/p^k-p^e, p^e-1} -> h0 h_{k+2} h_{e+1}` (1 <= e < k).
pub fn thom_image(ctx: &PrimeContext, idx: &GreekIndex) -> Result<ThomImage, GreekError> {
    use Generator::*;
    let p = ctx.p();
    let q = ctx.q();
    let none = || GreekError::NoDictionaryEntry(idx.to_string());
    let mk = |name: String, factors: &[Generator]| -> Result<ThomImage, GreekError> {
        let m = Monomial::product(ctx, factors).ok_or_else(none)?;
        let d = m.tridegree(ctx);
        Ok(ThomImage {
            name,
            s: d.s,
            t: d.t,
            representative: m.into(),
        })
    };
    match *idx {
        GreekIndex::Beta(b) if b.a == 1 && b.c == 0 => {
            let k = b.s;
            let pk = pw(ctx, k)?;
            if k >= 1 && b.b == pk - 1 {
                mk(format!("h0 h{}", k + 1), &[H(1, 0), H(1, k + 1)])
            } else if b.b == pk {
                mk(format!("b{k}"), &[B(1, k)])
            } else {
                Err(none())
            }
        }
        GreekIndex::Gamma(g) if g.t == 1 => {
            let k = g.n;
            let pk = pw(ctx, k)?;
            // i = p^e - 1 and s = p^k - p^e
            let pe = g.i + 1;
            let mut e = 0u32;
            let mut x = pe;
            while x % p == 0 {
                x /= p;
                e += 1;
            }
            if x != 1 || e < 1 || e >= k || g.s != pk - pe {
                return Err(none());
            }
            let out = mk(format!("h0 h{} h{}", k + 2, e + 1), &[H(1, 0), H(1, k + 2), H(1, e + 1)])?;
            debug_assert_eq!(Some(out.t), g.degree(ctx));
            let _ = q;
            Ok(out)
        }
        _ => Err(none()),
    }
}

/// Families whose stems the library knows, with their parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "family")]
pub enum Family {
    /// h0 h_n in pi_* S.
    H0Hn { n: u32 },
    /// h0 b_{n-1}.
    H0Bn { n: u32 },
    /// h0 h_n h_m.
    H0HnHm { n: u32, m: u32 },
    /// h0 (h_n b_{m-1} - h_m b_{n-1}).
    H0HnBm { n: u32, m: u32 },
    /// g0 h_n in pi_* K.
    G0HnK { n: u32 },
    /// g0 b_{n-1} in pi_* K.
    G0BnK { n: u32 },
    /// g0 h_n h_m in pi_* K.
    G0HnHmK { n: u32, m: u32 },
    /// g0 (h_n b_{m-1} - h_m b_{n-1}) in pi_* K.
    G0HnBmK { n: u32, m: u32 },
    G0HnGamma { n: u32, s: u32 },
    G0BnGamma { n: u32, s: u32 },
    G0HnHmGamma { n: u32, m: u32, s: u32 },
    G0HnBmGamma { n: u32, m: u32, s: u32 },
    H0HnGamma { n: u32, s: u32 },
    H0BnGamma { n: u32, s: u32 },
    H0HnHmGamma { n: u32, m: u32, s: u32 },
    H0HnBmGamma { n: u32, m: u32, s: u32 },
    /// gamma~_s, i.e. gamma_s in pi_* S.
    GammaTilde { s: u32 },
    /// h_n in pi_* K.
    HnK { n: u32 },
    /// gamma_{p^n/s}.
    GammaPn { n: u32, s: u64 },
    /// beta_{t p^n/s}.
    BetaTpn { t: u64, n: u32, s: u64 },
    /// beta_{t p^n/j, i+1}, of order p^{i+1}.
    BetaOrder { t: u64, n: u32, j: u64, i: u32 },
    /// h0 g_n (conjectural).
    H0Gn { n: u32 },
    /// h0 l_n (conjectural).
    H0Ln { n: u32 },
    /// h0 k_n (conjectural).
    H0Kn { n: u32 },
    /// h0 l'_n (conjectural).
    H0LnPrime { n: u32 },
}

/// Where a family's detecting class lives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ExtSetting {
    /// Ext_A(Z_p, Z_p).
    AdamsSphere,
    /// Ext_A(H*K, Z_p).
    AdamsK,
    /// Ext over BP_*BP with BP_* coefficients.
    NovikovSphere,
    /// Ext over BP_*BP with BP_*K coefficients.
    NovikovK,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyInfo {
    pub stem: i64,
    pub s: u32,
    pub t: u64,
    pub setting: ExtSetting,
    pub conjectural: bool,
    /// Order of the homotopy element, recorded but not verified.
    pub order: String,
}

fn check(cond: bool, what: &str) -> Result<(), GreekError> {
    if cond {
        Ok(())
    } else {
        Err(GreekError::InvalidParams(what.to_string()))
    }
}

impl Family {
    pub const NAMES: &'static [&'static str] = &[
        "h0hn", "h0bn", "h0hnhm", "h0hnbm", "g0hnK", "g0bnK", "g0hnhmK", "g0hnbmK", "g0hngamma", "g0bngamma",
        "g0hnhmgamma", "g0hnbmgamma", "h0hngamma", "h0bngamma", "h0hnhmgamma", "h0hnbmgamma", "gamma~", "hnK",
        "gamma_pn", "beta_tpn", "beta_order", "h0gn", "h0ln", "h0kn", "h0l'n",
    ];

    /// Build from a tag and named integer parameters.
    pub fn from_parts(tag: &str, get: impl Fn(&str) -> Option<u64>) -> Result<Family, GreekError> {
        let need = |k: &str| get(k).ok_or_else(|| GreekError::InvalidParams(format!("{tag} needs parameter {k}")));
        let n = || need("n").map(|x| x as u32);
        let m = || need("m").map(|x| x as u32);
        let s = || need("s").map(|x| x as u32);
        use Family::*;
        Ok(match tag {
            "h0hn" => H0Hn { n: n()? },
            "h0bn" => H0Bn { n: n()? },
            "h0hnhm" => H0HnHm { n: n()?, m: m()? },
            "h0hnbm" => H0HnBm { n: n()?, m: m()? },
            "g0hnK" => G0HnK { n: n()? },
            "g0bnK" => G0BnK { n: n()? },
            "g0hnhmK" => G0HnHmK { n: n()?, m: m()? },
            "g0hnbmK" => G0HnBmK { n: n()?, m: m()? },
            "g0hngamma" => G0HnGamma { n: n()?, s: s()? },
            "g0bngamma" => G0BnGamma { n: n()?, s: s()? },
            "g0hnhmgamma" => G0HnHmGamma { n: n()?, m: m()?, s: s()? },
            "g0hnbmgamma" => G0HnBmGamma { n: n()?, m: m()?, s: s()? },
            "h0hngamma" => H0HnGamma { n: n()?, s: s()? },
            "h0bngamma" => H0BnGamma { n: n()?, s: s()? },
            "h0hnhmgamma" => H0HnHmGamma { n: n()?, m: m()?, s: s()? },
            "h0hnbmgamma" => H0HnBmGamma { n: n()?, m: m()?, s: s()? },
            "gamma~" => GammaTilde { s: s()? },
            "hnK" => HnK { n: n()? },
            "gamma_pn" => GammaPn { n: n()?, s: need("s")? },
            "beta_tpn" => BetaTpn { t: need("t")?, n: n()?, s: need("s")? },
            "beta_order" => BetaOrder { t: need("t")?, n: n()?, j: need("j")?, i: need("i")? as u32 },
            "h0gn" => H0Gn { n: n()? },
            "h0ln" => H0Ln { n: n()? },
            "h0kn" => H0Kn { n: n()? },
            "h0l'n" => H0LnPrime { n: n()? },
            other => return Err(GreekError::UnknownFamily(other.to_string())),
        })
    }

    /// The stem as the closed formula quoted for each family, together with
    /// the bidegree of its detecting class.
    pub fn info(&self, ctx: &PrimeContext) -> Result<FamilyInfo, GreekError> {
        use ExtSetting::*;
        use Family::*;
        let p = ctx.p();
        let q = ctx.q() as i64;
        let pi = p as i64;
        let pp = |e: u32| pw(ctx, e).map(|x| x as i64);
        let gamma_ok = |s: u32| check(s >= 3 && (s as u64) < p, "needs 3 <= s < p");
        let nm_ok = |n: u32, m: u32, m_min: u32| check(m >= m_min && n >= m + 2, "needs n >= m + 2 and m large enough");
        let mk = |stem: i64, s: u32, t: i64, setting: ExtSetting| FamilyInfo {
            stem,
            s,
            t: t as u64,
            setting,
            conjectural: false,
            order: "p".into(),
        };
        let info = match *self {
            H0Hn { n } => {
                check(n >= 2, "needs n >= 2")?;
                mk(pp(n)? * q + q - 2, 2, pp(n)? * q + q, AdamsSphere)
            }
            H0Bn { n } => {
                check(n >= 2, "needs n >= 2")?;
                mk(pp(n)? * q + q - 3, 3, pp(n)? * q + q, AdamsSphere)
            }
            H0HnHm { n, m } => {
                nm_ok(n, m, 2)?;
                let base = pp(n)? * q + pp(m)? * q + q;
                mk(base - 3, 3, base, AdamsSphere)
            }
            H0HnBm { n, m } => {
                nm_ok(n, m, 2)?;
                let base = pp(n)? * q + pp(m)? * q + q;
                mk(base - 4, 4, base, AdamsSphere)
            }
            G0HnK { n } => {
                check(n >= 2, "needs n >= 2")?;
                let base = pp(n)? * q + pi * q + 2 * q;
                mk(base - 3, 3, base, AdamsK)
            }
            G0BnK { n } => {
                check(n >= 2, "needs n >= 2")?;
                let base = pp(n)? * q + pi * q + 2 * q;
                mk(base - 4, 4, base, AdamsK)
            }
            G0HnHmK { n, m } => {
                nm_ok(n, m, 2)?;
                let base = pp(n)? * q + pp(m)? * q + pi * q + 2 * q;
                mk(base - 4, 4, base, AdamsK)
            }
            G0HnBmK { n, m } => {
                nm_ok(n, m, 2)?;
                let base = pp(n)? * q + pp(m)? * q + pi * q + 2 * q;
                mk(base - 5, 5, base, AdamsK)
            }
            G0HnGamma { n, s } | G0BnGamma { n, s } => {
                check(n >= 3, "needs n >= 3")?;
                gamma_ok(s)?;
                let si = s as i64;
                let t = pp(n)? * q + si * pi * pi * q + si * pi * q + si * q + si - 3;
                let f = if matches!(self, G0HnGamma { .. }) { s + 3 } else { s + 4 };
                mk(t - f as i64, f, t, AdamsSphere)
            }
            G0HnHmGamma { n, m, s } | G0HnBmGamma { n, m, s } => {
                nm_ok(n, m, 3)?;
                gamma_ok(s)?;
                let si = s as i64;
                let t = pp(n)? * q + pp(m)? * q + si * (pi * pi + pi + 1) * q + si - 3;
                let f = if matches!(self, G0HnHmGamma { .. }) { s + 4 } else { s + 5 };
                mk(t - f as i64, f, t, AdamsSphere)
            }
            H0HnGamma { n, s } | H0BnGamma { n, s } => {
                check(n >= 3, "needs n >= 3")?;
                gamma_ok(s)?;
                let si = s as i64;
                let t = pp(n)? * q + si * pi * pi * q + (si - 1) * (pi + 1) * q + si - 3;
                let f = if matches!(self, H0HnGamma { .. }) { s + 2 } else { s + 3 };
                mk(t - f as i64, f, t, AdamsSphere)
            }
            H0HnHmGamma { n, m, s } | H0HnBmGamma { n, m, s } => {
                nm_ok(n, m, 3)?;
                gamma_ok(s)?;
                let si = s as i64;
                let t = pp(n)? * q + pp(m)? * q + si * pi * pi * q + (si - 1) * (pi + 1) * q + si - 3;
                let f = if matches!(self, H0HnHmGamma { .. }) { s + 3 } else { s + 4 };
                mk(t - f as i64, f, t, AdamsSphere)
            }
            GammaTilde { s } => {
                gamma_ok(s)?;
                let si = s as i64;
                let stem = si * pi * pi * q + (si - 1) * pi * q + (si - 2) * q - 3;
                let t = si * pi * pi * q + (si - 1) * pi * q + (si - 2) * q + si - 3;
                mk(stem, s, t, AdamsSphere)
            }
            HnK { n } => mk(pp(n)? * q - 1, 1, pp(n)? * q, NovikovK),
            GammaPn { n, s } => {
                let pn = pp(n)?;
                check(n >= 1 && s >= 1 && (s as i64) < pn, "needs n >= 1 and 1 <= s <= p^n - 1")?;
                let si = s as i64;
                let stem = pp(n + 2)? * q + (pn - si) * (pi + 1) * q - q - 3;
                let g = GammaIndex { t: 1, n, s, i: 1 };
                let t = g.degree(ctx).ok_or_else(|| GreekError::InvalidParams("negative degree".into()))?;
                mk(stem, 3, t as i64, NovikovSphere)
            }
            BetaTpn { t, n, s } => {
                beta_range(ctx, t, n, s)?;
                let ti = t as i64;
                let si = s as i64;
                let stem = ti * pp(n)? * (pi + 1) * q - si * q - 2;
                mk(stem, 2, ti * pp(n)? * (pi + 1) * q - si * q, NovikovSphere)
            }
            BetaOrder { t, n, j, i } => {
                check(i <= n, "needs i <= n")?;
                check(j % p.pow(i) == 0, "needs p^i | j")?;
                let bound = if t == 1 { pp(n - i)? - 1 } else { pp(n - i)? };
                check(j >= 1 && j as i64 <= bound, "j out of range")?;
                check(t >= 1 && t % p != 0, "needs p not dividing t")?;
                let ti = t as i64;
                let ji = j as i64;
                let base = ti * pp(n)? * (pi + 1) * q - ji * q;
                let mut f = mk(base - 2, 2, base, NovikovSphere);
                f.order = format!("p^{}", i + 1);
                f
            }
            H0Gn { n } | H0Ln { n } => {
                check(n >= 3, "needs n >= 3")?;
                let base = pp(n + 1)? * q + 2 * pp(n)? * q + q;
                let f = if matches!(self, H0Gn { .. }) { 3 } else { 4 };
                let mut i = mk(base - f as i64, f, base, AdamsSphere);
                i.conjectural = true;
                i
            }
            H0Kn { n } | H0LnPrime { n } => {
                check(n >= 3, "needs n >= 3")?;
                let base = 2 * pp(n + 1)? * q + pp(n)? * q + q;
                let f = if matches!(self, H0Kn { .. }) { 3 } else { 4 };
                let mut i = mk(base - f as i64, f, base, AdamsSphere);
                i.conjectural = true;
                i
            }
        };
        Ok(info)
    }
}

fn beta_range(ctx: &PrimeContext, t: u64, n: u32, s: u64) -> Result<(), GreekError> {
    let p = ctx.p();
    check(n >= 1, "needs n >= 1")?;
    check(t >= 1 && t % p != 0, "needs p not dividing t")?;
    let pn = pw(ctx, n)?;
    let bound = if t == 1 { pn - 1 } else { pn };
    check(s >= 1 && s <= bound, "s out of range")
}

/// Stem of a family element.
pub fn stem_of(ctx: &PrimeContext, family: &Family) -> Result<i64, GreekError> {
    family.info(ctx).map(|i| i.stem)
}

/// Stem from a text tag such as `"beta_tpn"` and its parameters.
pub fn stem_of_tag(ctx: &PrimeContext, tag: &str, get: impl Fn(&str) -> Option<u64>) -> Result<i64, GreekError> {
    stem_of(ctx, &Family::from_parts(tag, get)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(p: u64) -> PrimeContext {
        PrimeContext::new(p).unwrap()
    }

    #[test]
    fn admissibility_examples() {
        let c = ctx(5);
        assert!(beta_admissible(&c, &BetaIndex::new(1, 1, 1, 0), false));
        assert!(beta_admissible(&c, &BetaIndex::new(1, 2, 24, 0), false));
        assert!(!beta_admissible(&c, &BetaIndex::new(1, 2, 24, 0), true));
        assert!(!beta_admissible(&c, &BetaIndex::new(1, 1, 10, 0), false));
    }

    #[test]
    fn beta_lists() {
        let c = ctx(5);
        assert_eq!(enumerate_beta(&c, 125 * 8 + 8, false), vec![BetaIndex::new(1, 2, 24, 0)]);
        assert_eq!(
            enumerate_beta(&c, 625 * 8 + 8, false),
            vec![BetaIndex::new(1, 3, 124, 0), BetaIndex::new(21, 1, 4, 0)]
        );
        assert!(enumerate_beta(&c, 3, false).is_empty());
    }

    #[test]
    fn ext0_examples() {
        let c = ctx(5);
        let got: Vec<String> = enumerate_ext0_kr(&c, 2, 1).unwrap().iter().map(|g| g.to_string()).collect();
        assert_eq!(got, vec!["v2^25", "v1^24 c1~[21,0]"]);
        assert_eq!(enumerate_ext0_kr(&c, 1, 1).unwrap(), vec![BPGen::V2Power(5)]);
        let two = enumerate_ext0_kr(&c, 2, 2).unwrap();
        assert_eq!(two, vec![BPGen::V1C1 { b: 24, a: 46, s: 0 }]);
        assert!(enumerate_ext0_kr(&c, 2, 5).is_err());
    }

    #[test]
    fn ext1_bpk_examples() {
        let c = ctx(5);
        let got: Vec<String> = enumerate_ext1_bpk(&c, 4).unwrap().generators.iter().map(|g| g.to_string()).collect();
        assert_eq!(got, vec!["h4", "v2^100 h2", "v2^104 h0", "c2[1,2]"]);
        let got: Vec<String> = enumerate_ext1_bpk(&c, 2).unwrap().generators.iter().map(|g| g.to_string()).collect();
        assert_eq!(got, vec!["h2", "v2^4 h0", "c2[1,0]"]);
    }

    #[test]
    fn text_forms() {
        for s in ["h4", "v2^100 h2", "c2[1,2]", "v2^25", "v1^24 c1~[21,0]", "v2^3 w2"] {
            assert_eq!(s.parse::<BPGen>().unwrap().to_string(), s);
        }
        assert!("v1^3 h2".parse::<BPGen>().is_err());
        let g: GreekIndex = "gamma[1,3,100,24]".parse().unwrap();
        assert_eq!(g.to_string(), "gamma[1,3,100,24]");
        let b: GreekIndex = "beta[1,2,24,0]".parse().unwrap();
        assert_eq!(b.to_string(), "beta[1,2,24,0]");
        assert!("delta[1]".parse::<GreekIndex>().is_err());
    }

    #[test]
    fn alphas() {
        let c = ctx(5);
        assert_eq!(alpha_generators(&c, 8), vec![AlphaIndex { t: 1, n: 0 }]);
        assert_eq!(alpha_generators(&c, 40), vec![AlphaIndex { t: 1, n: 1 }]);
        assert!(alpha_generators(&c, 4).is_empty());
    }

    #[test]
    fn thom_examples() {
        let c = ctx(5);
        let x = thom_image(&c, &GreekIndex::Beta(BetaIndex::new(1, 1, 4, 0))).unwrap();
        assert_eq!(x.name, "h0 h2");
        let y = thom_image(&c, &GreekIndex::Beta(BetaIndex::new(1, 2, 25, 0))).unwrap();
        assert_eq!(y.name, "b2");
        assert!(matches!(
            thom_image(&c, &GreekIndex::Beta(BetaIndex::new(2, 1, 1, 0))),
            Err(GreekError::NoDictionaryEntry(_))
        ));
        // gamma_{p^3/p^3-p, p-1} -> h0 h5 h2
        let g = GammaIndex { t: 1, n: 3, s: 120, i: 4 };
        let z = thom_image(&c, &GreekIndex::Gamma(g)).unwrap();
        assert_eq!(z.name, "h0 h5 h2");
        assert_eq!(Some(z.t), g.degree(&c));
    }

    #[test]
    fn stem_examples() {
        assert_eq!(stem_of(&ctx(7), &Family::H0Hn { n: 2 }).unwrap(), 598);
        assert_eq!(stem_of(&ctx(7), &Family::GammaTilde { s: 3 }).unwrap(), 1941);
        assert_eq!(stem_of(&ctx(5), &Family::BetaTpn { t: 2, n: 1, s: 3 }).unwrap(), 454);
        assert!(matches!(
            stem_of_tag(&ctx(5), "omega", |_| None),
            Err(GreekError::UnknownFamily(_))
        ));
    }
}
