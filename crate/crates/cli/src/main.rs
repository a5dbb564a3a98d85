use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand};
use mayss_core::adams_certify::{adams_dr_window, product_nonzero_at_e2, resolve_text};
use mayss_core::greek_bp::{
    alpha_generators, enumerate_beta, enumerate_ext0_kr, enumerate_ext1_bpk, thom_image, Family, GreekIndex,
};
use mayss_core::les_dims::{dual_shift, ext_dims, SphereTable, Spectrum};
use mayss_core::may_core::{enumerate_by_weight, parse_element};
use mayss_core::may_diff::d1;
use mayss_core::PrimeContext;
use mayss_cli::chart::{build_chart, Format, Window, DEFAULT_CELL_CAP};
use mayss_cli::claims::{load_claims, run_claims, LoadError, RunOptions};
use mayss_cli::expr::{eval_str, Env};
use mayss_cli::{cache, Session};

#[derive(Parser)]
#[command(name = "mayss", version, about = "May spectral sequence queries at odd primes")]
struct Cli {
    /// Odd prime.
    #[arg(long, short = 'p', global = true, default_value_t = 5)]
    prime: u64,
    /// Directory for cached cell results.
    #[arg(long, global = true, env = cache::CACHE_ENV)]
    cache_dir: Option<PathBuf>,
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// E1 monomial basis at (s,t), by May weight.
    Basis {
        s: String,
        t: String,
        #[arg(long)]
        weight: Option<u32>,
    },
    /// d1 of an element such as "a1 b[1,3]".
    D1 { element: String },
    /// E2 dimensions and representatives at (s,t).
    E2 { s: String, t: String },
    /// Vanishing (or, with --dim, dimension) certificate for Ext^{s,t}.
    Vanish {
        s: String,
        t: String,
        #[arg(long)]
        dim: bool,
    },
    /// Adams d_r sources and targets around (s,t).
    Window {
        s: String,
        t: String,
        #[arg(long, default_value = "2")]
        r_min: String,
        #[arg(long)]
        r_max: String,
        /// Comma separated class names whose product should sit at (s,t).
        #[arg(long, value_delimiter = ',')]
        product: Vec<String>,
    },
    /// Dimension interval for Ext of M, L or K.
    Les {
        spectrum: String,
        s: String,
        t: String,
        #[arg(long)]
        dual: bool,
    },
    /// Brown-Peterson side lists.
    Greek {
        #[command(subcommand)]
        what: GreekCmd,
    },
    /// Stem of a family; `--list` prints the family tags.
    Stems {
        family: Option<String>,
        /// Parameter bindings such as n=3 (expressions allowed).
        #[arg(long = "param", value_name = "K=V")]
        params: Vec<String>,
        #[arg(long)]
        list: bool,
    },
    /// Chart of a window as json, svg or tsv.
    Chart {
        #[arg(long, default_value = "0")]
        s_min: String,
        #[arg(long)]
        s_max: String,
        #[arg(long, default_value = "0")]
        t_min: String,
        #[arg(long)]
        t_max: String,
        #[arg(long, default_value = "json")]
        format: Format,
        /// Output path; stdout when absent.
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Check a claims file.
    Verify {
        claims: PathBuf,
        #[arg(long)]
        include_conjectures: bool,
        #[arg(long)]
        jobs: Option<usize>,
        /// Also write the report here.
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum GreekCmd {
    /// beta_{a p^s/b, c+1} generators of internal degree t.
    Beta {
        t: String,
        #[arg(long)]
        strict: bool,
    },
    /// Ext^{0, t p^n (p+1) q}(BP_*, BP_*/(p, v1^inf)).
    Ext0 {
        n: String,
        #[arg(long, default_value = "1")]
        t: String,
    },
    /// Ext^{1, p^n q}(BP_*, BP_*K).
    Ext1 { n: String },
    /// alpha generators of internal degree t.
    Alpha { t: String },
    /// Thom image of beta[a,s,b,c] or gamma[t,n,s,i].
    Thom { index: String },
}

/// Failures in the user's input, reported with exit code 2.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    anyhow!(Usage(msg.into()))
}

struct Ctx {
    env: Env,
    json: bool,
}

impl Ctx {
    fn int(&self, text: &str) -> Result<i64> {
        let v = eval_str(text, &self.env).map_err(|e| usage(e.to_string()))?;
        i64::try_from(v).map_err(|_| usage(format!("{text} = {v} is out of range")))
    }

    fn nat(&self, text: &str) -> Result<u64> {
        let v = self.int(text)?;
        u64::try_from(v).map_err(|_| usage(format!("{text} = {v} is negative")))
    }

    fn small(&self, text: &str) -> Result<u32> {
        let v = self.nat(text)?;
        u32::try_from(v).map_err(|_| usage(format!("{text} = {v} is too large")))
    }

    fn emit(&self, value: serde_json::Value, text: String) {
        if self.json {
            println!("{}", serde_json::to_string_pretty(&value).expect("json"));
        } else {
            print!("{text}");
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<Usage>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    let pctx = PrimeContext::new(cli.prime).map_err(|e| usage(e.to_string()))?;
    let session = Session::new(cache::from_flag_or_env(cli.cache_dir.as_deref()));
    let c = Ctx {
        env: Env::new(cli.prime),
        json: cli.json,
    };
    let p = cli.prime;
    match cli.cmd {
        Cmd::Basis { s, t, weight } => {
            let (s, t) = (c.small(&s)?, c.nat(&t)?);
            let mut text = String::new();
            let mut rows = Vec::new();
            for (u, ms) in enumerate_by_weight(&pctx, s, t) {
                if weight.is_some_and(|w| w != u) {
                    continue;
                }
                let names: Vec<String> = ms.iter().map(|m| m.to_string()).collect();
                text.push_str(&format!("u={u}: {}\n", names.join(", ")));
                rows.push(serde_json::json!({"u": u, "monomials": names}));
            }
            if rows.is_empty() {
                text.push_str(&format!("E1^({s},{t}) is empty\n"));
            }
            c.emit(serde_json::json!({"s": s, "t": t, "weights": rows}), text);
        }
        Cmd::D1 { element } => {
            let x = parse_element(&pctx, &element).map_err(|e| usage(e.to_string()))?;
            let dx = d1(&x, &pctx);
            c.emit(serde_json::json!({"element": x.to_string(), "d1": dx.to_string()}), format!("d1({x}) = {dx}\n"));
        }
        Cmd::E2 { s, t } => {
            let (s, t) = (c.small(&s)?, c.nat(&t)?);
            let r = session.e2(p, s, t)?;
            let mut text = format!("E1^({s},{t}) = {}, E2 = {}\n", r.e1_total, r.e2_total);
            for w in &r.per_weight {
                let reps: Vec<String> = w.representatives.iter().map(|e| e.to_string()).collect();
                text.push_str(&format!("  u={}: e1={} e2={} {}\n", w.u, w.e1_dim, w.e2_dim, reps.join(", ")));
            }
            c.emit(serde_json::to_value(&r)?, text);
        }
        Cmd::Vanish { s, t, dim } => {
            let (s, t) = (c.int(&s)?, c.int(&t)?);
            let cert = if dim { session.dim(p, s, t)? } else { session.vanishing(p, s, t)? };
            let (lo, hi) = cert.bounds();
            c.emit(
                serde_json::to_value(&cert)?,
                format!("Ext^({s},{t}): {} (e1={}, e2={}, dim in [{lo},{hi}])\n", cert.verdict, cert.e1, cert.e2),
            );
        }
        Cmd::Window {
            s,
            t,
            r_min,
            r_max,
            product,
        } => {
            let (s, t) = (c.small(&s)?, c.nat(&t)?);
            let (r_min, r_max) = (c.small(&r_min)?, c.small(&r_max)?);
            let engine = session.engine(p)?;
            let w = adams_dr_window(&engine, s, t, r_min, r_max).map_err(|e| usage(e.to_string()))?;
            let mut text = String::new();
            for e in &w.entries {
                let src = e.source.as_ref().map_or("-".to_string(), |c| format!("({},{}) {}", c.s, c.t, c.verdict));
                text.push_str(&format!(
                    "r={}: source {src}, target ({},{}) {}\n",
                    e.r, e.target.s, e.target.t, e.target.verdict
                ));
            }
            text.push_str(&format!(
                "not a boundary: {}, permanent up to r={}: {}\n",
                w.not_a_boundary, r_max, w.permanent_up_to_r_max
            ));
            let mut value = serde_json::to_value(&w)?;
            if !product.is_empty() {
                let classes = product
                    .iter()
                    .map(|n| resolve_text(&pctx, n))
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|e| usage(e.to_string()))?;
                let pr = product_nonzero_at_e2(&engine, &classes).map_err(|e| usage(e.to_string()))?;
                text.push_str(&format!(
                    "product {} at ({},{}): {}\n",
                    pr.representative,
                    pr.s,
                    pr.t,
                    if pr.nonzero { "nonzero at E2" } else { "zero at E2" }
                ));
                value["product"] = serde_json::to_value(&pr)?;
            }
            c.emit(value, text);
        }
        Cmd::Les { spectrum, s, t, dual } => {
            let sp = Spectrum::parse(&spectrum).ok_or_else(|| usage(format!("unknown spectrum {spectrum:?} (M, L, K)")))?;
            let (s, t) = (c.small(&s)?, c.nat(&t)?);
            let engine = session.engine(p)?;
            let shift = if dual { dual_shift(&pctx, sp) } else { 0 };
            let table = SphereTable::for_query(&engine, sp, s, t + shift)?;
            let d = ext_dims(&table, sp, s as i64, t as i64, dual)?;
            let mut text = format!("dim Ext^({s},{t})({sp}{}) in {d}\n", if dual { " dual" } else { "" });
            for line in &d.provenance {
                text.push_str(&format!("  {line}\n"));
            }
            c.emit(serde_json::to_value(&d)?, text);
        }
        Cmd::Greek { what } => greek(&c, &pctx, what)?,
        Cmd::Stems { family, params, list } => {
            if list {
                let text: String = Family::NAMES.iter().map(|n| format!("{n}\n")).collect();
                c.emit(serde_json::json!(Family::NAMES), text);
                return Ok(0);
            }
            let family = family.ok_or_else(|| usage("stems needs a family tag or --list"))?;
            let mut defs = BTreeMap::new();
            for kv in &params {
                let (k, v) = kv.split_once('=').ok_or_else(|| usage(format!("expected K=V, got {kv:?}")))?;
                defs.insert(k.trim().to_string(), v.trim().to_string());
            }
            let mut env = c.env.clone();
            env.bind_all(&defs).map_err(|e| usage(e.to_string()))?;
            let fam = Family::from_parts(&family, |k| env.get(k).and_then(|x| u64::try_from(x).ok()))
                .map_err(|e| usage(e.to_string()))?;
            let info = fam.info(&pctx)?;
            c.emit(
                serde_json::to_value(&info)?,
                format!(
                    "{family}: stem {} in ({},{}) {:?}{}\n",
                    info.stem,
                    info.s,
                    info.t,
                    info.setting,
                    if info.conjectural { " (conjectural)" } else { "" }
                ),
            );
        }
        Cmd::Chart {
            s_min,
            s_max,
            t_min,
            t_max,
            format,
            out,
        } => {
            let window = Window::new(c.small(&s_min)?..=c.small(&s_max)?, c.nat(&t_min)?..=c.nat(&t_max)?);
            let chart = build_chart(&session, p, &window, DEFAULT_CELL_CAP)?;
            let body = chart.render(format);
            match out {
                Some(path) => fs::write(&path, body).with_context(|| format!("writing {}", path.display()))?,
                None => print!("{body}"),
            }
        }
        Cmd::Verify {
            claims,
            include_conjectures,
            jobs,
            out,
        } => {
            let file = load_claims(&claims).map_err(|e| match e {
                LoadError::Io { .. } => anyhow!(e),
                _ => usage(format!("{}: {e}", claims.display())),
            })?;
            let report = run_claims(&session, &file, RunOptions { include_conjectures, jobs });
            let body = if c.json { report.to_json() } else { report.to_text() };
            print!("{body}");
            if let Some(path) = out {
                fs::write(&path, &body).with_context(|| format!("writing {}", path.display()))?;
            }
            return Ok(report.exit_code() as u8);
        }
    }
    Ok(0)
}

fn greek(c: &Ctx, pctx: &PrimeContext, what: GreekCmd) -> Result<()> {
    let list = |items: Vec<String>| {
        let text: String = items.iter().map(|x| format!("{x}\n")).collect();
        (serde_json::json!(items), text)
    };
    let (value, text) = match what {
        GreekCmd::Beta { t, strict } => {
            let t = c.nat(&t)?;
            let betas = enumerate_beta(pctx, t, strict);
            let text: String = betas.iter().map(|b| format!("{b}  {}\n", b.pretty(pctx))).collect();
            (serde_json::json!(betas.iter().map(|b| b.to_string()).collect::<Vec<_>>()), text)
        }
        GreekCmd::Ext0 { n, t } => {
            let gens = enumerate_ext0_kr(pctx, c.small(&n)?, c.nat(&t)?).map_err(|e| usage(e.to_string()))?;
            list(gens.iter().map(|g| g.to_string()).collect())
        }
        GreekCmd::Ext1 { n } => {
            let r = enumerate_ext1_bpk(pctx, c.small(&n)?).map_err(|e| usage(e.to_string()))?;
            let gens: Vec<String> = r.generators.iter().map(|g| g.to_string()).collect();
            let open: Vec<String> = r.degree_uncertain.iter().map(|g| g.to_string()).collect();
            let mut text: String = gens.iter().map(|x| format!("{x}\n")).collect();
            if !open.is_empty() {
                text.push_str(&format!("degree undetermined: {}\n", open.join(", ")));
            }
            (serde_json::json!({"generators": gens, "degree_uncertain": open}), text)
        }
        GreekCmd::Alpha { t } => list(alpha_generators(pctx, c.nat(&t)?).iter().map(|a| a.to_string()).collect()),
        GreekCmd::Thom { index } => {
            let idx: GreekIndex = index.parse().map_err(|e: mayss_core::TextError| usage(e.to_string()))?;
            let img = thom_image(pctx, &idx)?;
            let text = format!("{idx} -> {} = {} in ({},{})\n", img.name, img.representative, img.s, img.t);
            (serde_json::to_value(&img)?, text)
        }
    };
    c.emit(value, text);
    Ok(())
}
