//! The `troprays` command line.
//!
//! Every command reads a model file, optionally a family file (`--b`), and
//! prints either a plain-text report or, with `--json`, a JSON document that
//! records the SHA-256 of the model file and the seed. Exit status is 0 on
//! success, 1 when a verification fails and 2 on input errors.

pub mod io;

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::csfun::{build_fw, uniqueness_classify, IntervalCsProfile};
use crate::error::{Error, Result};
use crate::frontier::{Frontier, JunctionOutcome};
use crate::isotropy::{entrance_stratum, stability_check, stratify_halfopen};
use crate::pmfunc::{compare, pm_add, pm_min, pm_mul, PmFunction};
use crate::quadspace::{random_vector_with, QuadraticPair, SampleBounds, Vector};
use crate::rays::{Ray, RayInterval};
use crate::semifield::TropValue;
use crate::strata::{
    derivation_chart, restrictions, sign_vector_at, stratify_interval, StrataTrace,
};
use io::{load_model, load_scenario, LoadedModel, Scenario};

#[derive(Parser, Debug)]
#[command(
    name = "troprays",
    version,
    about = "Exact tropical quadratic forms, CS-functions and ray strata"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Model file: {"dim", "q_diag", "b"} with optional "q_offdiag".
    #[arg(long)]
    pub model: PathBuf,
    /// Family file with named rays and basic functions.
    #[arg(long = "b")]
    pub family: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Emit JSON instead of text.
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug, Clone)]
pub struct Sampling {
    /// Number of random rays or intervals to draw.
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
    /// Largest absolute numerator of random exponents.
    #[arg(long, default_value_t = 12)]
    pub num_bound: i64,
    /// Largest denominator of random exponents.
    #[arg(long, default_value_t = 3)]
    pub den_bound: i64,
}

impl Sampling {
    fn bounds(&self) -> SampleBounds {
        SampleBounds {
            num: self.num_bound,
            den: self.den_bound,
            ..SampleBounds::default()
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct Endpoints {
    /// Start ray: a name from the family file or coordinates like `0,-2,-inf`.
    #[arg(long, allow_hyphen_values = true)]
    pub from: String,
    /// End ray, in the same form as `--from`.
    #[arg(long, allow_hyphen_values = true)]
    pub to: String,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the companion identity on basis pairs and random samples.
    Validate {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Summarize a model, or evaluate q, b and CS at given vectors.
    Eval {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        x: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        y: Option<String>,
    },
    /// The CS-function of a witness along an interval, with its regions.
    IntervalProfile {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        ends: Endpoints,
        /// Witness ray `w` of the profile `λ ↦ CS(π(λ), w)`.
        #[arg(long, allow_hyphen_values = true)]
        witness: String,
        /// Classify uniqueness of the value taken at this parameter.
        #[arg(long)]
        lambda: Option<TropValue>,
    },
    /// Compare two family members along an interval.
    Compare {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        ends: Endpoints,
        /// Index of the first family member.
        #[arg(long)]
        f: usize,
        /// Index of the second family member.
        #[arg(long)]
        g: usize,
    },
    /// Strata trace and separating rays of an interval.
    Stratify {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        ends: Endpoints,
    },
    /// Chart of direct derivations on named plus random rays.
    Chart {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        sampling: Sampling,
        /// Write the DOT graph here instead of printing it.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Run the junction process from `W`, `W'` towards a witness `U`.
    Junction {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        ends: Endpoints,
        /// Target ray `U`, regular towards the end ray.
        #[arg(long, allow_hyphen_values = true)]
        witness: String,
        /// Steps allowed before reporting a gorge.
        #[arg(long, default_value_t = 256)]
        max_iter: usize,
    },
    /// Construct and verify a butterfly from `W`, `W'` and a regular `U`.
    Butterfly {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        ends: Endpoints,
        /// Regular ray `U` in the stratum of the end ray.
        #[arg(long, allow_hyphen_values = true)]
        witness: String,
    },
    /// Entrance stratum of `ray(ε + tη)` as `t → 0`, with a stability table.
    IsotropyEntry {
        #[command(flatten)]
        common: Common,
        /// Isotropic start vector `ε` (name or coordinates).
        #[arg(long, allow_hyphen_values = true)]
        eps: String,
        /// Direction `η` (name or coordinates).
        #[arg(long, allow_hyphen_values = true)]
        eta: String,
        /// First anchor ray (name or coordinates).
        #[arg(long, allow_hyphen_values = true)]
        y2: String,
        /// Second anchor ray (name or coordinates).
        #[arg(long, allow_hyphen_values = true)]
        y3: String,
        /// Number of `t` values in the stability table.
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    /// Cross-check closed forms against direct evaluation on random intervals.
    Oracle {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        sampling: Sampling,
    },
}

impl Command {
    fn common(&self) -> &Common {
        match self {
            Command::Validate { common, .. }
            | Command::Eval { common, .. }
            | Command::IntervalProfile { common, .. }
            | Command::Compare { common, .. }
            | Command::Stratify { common, .. }
            | Command::Chart { common, .. }
            | Command::Junction { common, .. }
            | Command::Butterfly { common, .. }
            | Command::IsotropyEntry { common, .. }
            | Command::Oracle { common, .. } => common,
        }
    }

    fn name(&self) -> &'static str {
        match self {
            Command::Validate { .. } => "validate",
            Command::Eval { .. } => "eval",
            Command::IntervalProfile { .. } => "interval-profile",
            Command::Compare { .. } => "compare",
            Command::Stratify { .. } => "stratify",
            Command::Chart { .. } => "chart",
            Command::Junction { .. } => "junction",
            Command::Butterfly { .. } => "butterfly",
            Command::IsotropyEntry { .. } => "isotropy-entry",
            Command::Oracle { .. } => "oracle",
        }
    }
}

/// What a command produced: a JSON result, the text rendering, and whether
/// every verification passed.
struct Report {
    result: Value,
    text: String,
    ok: bool,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    let common = cli.command.common().clone();
    let model = match std::fs::read_to_string(&common.model)
        .map_err(|e| Error::Parse(format!("{}: {e}", common.model.display())))
        .and_then(|t| load_model(&t))
    {
        Ok(m) => m,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 2;
        }
    };
    let report = match execute(&cli.command, &model) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return match e {
                Error::VerificationFailed(_) => 1,
                _ => 2,
            };
        }
    };
    let written = if common.json {
        let doc = json!({
            "command": cli.command.name(),
            "model_sha256": model.sha256,
            "seed": common.seed,
            "ok": report.ok,
            "result": report.result,
        });
        writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&doc).expect("JSON values serialize")
        )
    } else {
        write!(
            out,
            "model sha256 {}\nseed {}\n{}",
            model.sha256, common.seed, report.text
        )
    };
    if written.is_err() {
        return 2;
    }
    if report.ok {
        0
    } else {
        1
    }
}

fn scenario(common: &Common, p: &QuadraticPair) -> Result<Scenario> {
    match &common.family {
        None => Ok(Scenario::empty()),
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
            load_scenario(&text, p)
        }
    }
}

fn need_family(sc: &Scenario) -> Result<()> {
    if sc.family.is_empty() {
        return Err(Error::Parse(
            "this command needs a family file (--b)".into(),
        ));
    }
    Ok(())
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("library types serialize")
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn execute(cmd: &Command, model: &LoadedModel) -> Result<Report> {
    if let Command::Validate { common, sampling } = cmd {
        let r = model.gram.validate(sampling.samples, &mut rng(common.seed));
        let mut text = format!(
            "basis pairs ok {}\nsamples checked {}\nsample failures {}\nnon-balanced coordinates {:?}\n",
            r.basis_pairs_ok, r.samples_checked, r.sample_failures, r.non_balanced
        );
        if let Some(f) = &r.first_failure {
            let _ = writeln!(text, "first failure {f}");
        }
        return Ok(Report {
            result: to_value(&r),
            ok: r.passed(),
            text,
        });
    }
    let p = model.pair()?;
    let n = p.dim();
    match cmd {
        Command::Validate { .. } => unreachable!(),
        Command::Eval { common, x, y } => {
            let sc = scenario(common, &p)?;
            let mut res = json!({
                "dim": n,
                "anisotropic": p.is_anisotropic(),
                "non_balanced": p.non_balanced(),
            });
            let mut text = format!(
                "dim {n}\nanisotropic {}\nnon-balanced coordinates {:?}\n",
                p.is_anisotropic(),
                p.non_balanced()
            );
            if let Some(x) = x {
                let xv = sc.ray(x, n)?.base().clone();
                let q = p.q(&xv)?;
                let _ = writeln!(text, "q(x) {q}");
                res["x"] = to_value(&xv);
                res["q"] = to_value(&q);
                if let Some(y) = y {
                    let yv = sc.ray(y, n)?.base().clone();
                    let b = p.b(&xv, &yv)?;
                    let cs = p.cs(&xv, &yv)?;
                    let _ = writeln!(text, "b(x,y) {b}\nCS(x,y) {cs}");
                    res["y"] = to_value(&yv);
                    res["b"] = to_value(&b);
                    res["cs"] = to_value(&cs);
                }
            }
            Ok(Report {
                result: res,
                text,
                ok: true,
            })
        }
        Command::IntervalProfile {
            common,
            ends,
            witness,
            lambda,
        } => {
            let sc = scenario(common, &p)?;
            let i = interval(&sc, ends, n)?;
            let w = sc.ray(witness, n)?;
            let prof = build_fw(&p, &i, w.base())?;
            let mut res = to_value(&prof);
            let mut text = profile_text(&prof);
            if let Some(l) = lambda {
                let u = uniqueness_classify(&prof, l);
                let _ = writeln!(
                    text,
                    "uniqueness at {l} {}",
                    to_value(&u).as_str().unwrap_or_default()
                );
                res["uniqueness"] = to_value(&u);
            }
            Ok(Report {
                result: res,
                text,
                ok: true,
            })
        }
        Command::Compare { common, ends, f, g } => {
            let sc = scenario(common, &p)?;
            need_family(&sc)?;
            let i = interval(&sc, ends, n)?;
            let fs = restrictions(&p, &sc.family, &i)?;
            let get = |k: usize| {
                fs.get(k).ok_or_else(|| {
                    Error::Parse(format!("family has {} functions, no index {k}", fs.len()))
                })
            };
            let (ff, gg) = (get(*f)?, get(*g)?);
            let pieces = compare(ff, gg);
            let mut text = format!("F {}\nG {}\n", pm_text(ff), pm_text(gg));
            for pc in &pieces {
                let _ = writeln!(
                    text,
                    "{}  F {} G",
                    span(pc.lo_closed, &pc.lo, &pc.hi, pc.hi_closed),
                    ord_char(pc.label)
                );
            }
            let rows: Vec<Value> = pieces
                .iter()
                .map(|pc| {
                    json!({"lo": pc.lo, "hi": pc.hi, "lo_closed": pc.lo_closed, "hi_closed": pc.hi_closed,
                           "sign": ord_char(pc.label).to_string()})
                })
                .collect();
            Ok(Report {
                result: json!({"f": ff, "g": gg, "pieces": rows}),
                text,
                ok: true,
            })
        }
        Command::Stratify { common, ends } => {
            let sc = scenario(common, &p)?;
            need_family(&sc)?;
            let i = interval(&sc, ends, n)?;
            let trace = if p.q(i.eps1())?.is_zero() && !p.q(i.eps2())?.is_zero() {
                stratify_halfopen(&p, &sc.family, i.start(), i.end())?
            } else {
                stratify_interval(&p, &sc.family, &i)?
            };
            Ok(Report {
                result: to_value(&trace),
                text: trace_text(&trace),
                ok: true,
            })
        }
        Command::Chart {
            common,
            sampling,
            dot,
        } => {
            let sc = scenario(common, &p)?;
            need_family(&sc)?;
            let mut sample: Vec<Ray> = sc.rays.values().cloned().collect();
            let mut r = rng(common.seed);
            let bounds = sampling.bounds();
            while sample.len() < sc.rays.len() + sampling.samples {
                let v = random_vector_with(n, &bounds, &mut r);
                if !p.q(&v)?.is_zero() {
                    sample.push(Ray::new(v)?);
                }
            }
            // Named rays may be isotropic; strata are only defined on anisotropic rays.
            let sample: Vec<Ray> = sample
                .into_iter()
                .filter(|x| p.q(x.base()).is_ok_and(|q| !q.is_zero()))
                .collect();
            let chart = derivation_chart(&p, &sc.family, &sample)?;
            let graph = chart.to_dot(None);
            let mut text = format!(
                "{} strata, {} direct derivations\n",
                chart.nodes.len(),
                chart.edges.len()
            );
            match dot {
                Some(path) => {
                    std::fs::write(path, &graph)
                        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
                    let _ = writeln!(text, "wrote {}", path.display());
                }
                None => text.push_str(&graph),
            }
            let edges: Vec<Value> = chart
                .edges
                .iter()
                .map(|((a, b), (i, j))| json!({"from": a, "to": b, "witnesses": [i, j]}))
                .collect();
            Ok(Report {
                result: json!({"nodes": chart.nodes, "edges": edges, "dot": graph}),
                text,
                ok: true,
            })
        }
        Command::Junction {
            common,
            ends,
            witness,
            max_iter,
        } => {
            let sc = scenario(common, &p)?;
            need_family(&sc)?;
            let (w, w2) = (sc.ray(&ends.from, n)?, sc.ray(&ends.to, n)?);
            let u = sc.ray(witness, n)?;
            let fr = Frontier::new(
                &p,
                &sc.family,
                sign_vector_at(&p, &sc.family, &w)?,
                sign_vector_at(&p, &sc.family, &u)?,
            );
            let rep = fr.junction_process(&w, &w2, &u, *max_iter)?;
            let mut text = String::from("k  lambda  Z_k\n");
            for s in &rep.steps {
                let _ = writeln!(text, "{}  {}  {}", s.k, s.lambda, s.ray);
            }
            let ok = rep.closed_form_ok
                && !matches!(
                    rep.outcome,
                    JunctionOutcome::Junction {
                        verified: false,
                        ..
                    }
                );
            match &rep.outcome {
                JunctionOutcome::Junction { k, z, verified } => {
                    let _ = writeln!(text, "junction at k={k}: {z} (verified {verified})");
                }
                JunctionOutcome::Gorge { sigma, tau } => {
                    let _ = writeln!(
                        text,
                        "gorge after {max_iter} steps: sigma {sigma}, tau {tau}"
                    );
                }
            }
            let _ = writeln!(text, "closed form holds {}", rep.closed_form_ok);
            Ok(Report {
                result: to_value(&rep),
                text,
                ok,
            })
        }
        Command::Butterfly {
            common,
            ends,
            witness,
        } => {
            let sc = scenario(common, &p)?;
            need_family(&sc)?;
            let (w, w2) = (sc.ray(&ends.from, n)?, sc.ray(&ends.to, n)?);
            let u = sc.ray(witness, n)?;
            let fr = Frontier::new(
                &p,
                &sc.family,
                sign_vector_at(&p, &sc.family, &w)?,
                sign_vector_at(&p, &sc.family, &u)?,
            );
            let b = fr.construct_butterfly(&w, &w2, &u)?;
            let verified = fr.is_butterfly(&b.w, &b.w1, &b.z, &b.z1)?;
            let text = format!(
                "W  {}\nW1 {}\nZ  {}\nZ1 {}\nc {}\nd {}\nkappa {}\nverified {verified}\n",
                b.w, b.w1, b.z, b.z1, b.c, b.d, b.kappa
            );
            let res = json!({
                "w": b.w.rep(), "w1": b.w1.rep(), "z": b.z.rep(), "z1": b.z1.rep(),
                "c": b.c, "d": b.d, "kappa": b.kappa, "verified": verified,
            });
            Ok(Report {
                result: res,
                text,
                ok: verified,
            })
        }
        Command::IsotropyEntry {
            common,
            eps,
            eta,
            y2,
            y3,
            samples,
        } => {
            let sc = scenario(common, &p)?;
            let (e, h) = (
                sc.ray(eps, n)?.base().clone(),
                sc.ray(eta, n)?.base().clone(),
            );
            let (y2, y3) = (sc.ray(y2, n)?, sc.ray(y3, n)?);
            let a = entrance_stratum(&p, &e, &h, &y2, &y3)?;
            let centre = a.t0.exponent().cloned().unwrap_or_default();
            let half = (*samples / 2) as i64;
            let ts: Vec<TropValue> = (0..*samples as i64)
                .map(|k| TropValue::Finite(&centre + crate::semifield::ratio(k - half, 4)))
                .collect();
            let rep = stability_check(&p, &e, &h, &y2, &y3, &ts)?;
            let fam = crate::strata::example_family(&p, &y2, &y3)?;
            let mut text = format!(
                "case {:?}\nt0 {}\nstrict {}\nswapped {}\nentrance {}\n",
                a.case, a.t0, a.strict, a.swapped, a.entrance
            );
            text.push_str("t  stratum  in-range\n");
            let mut rows = Vec::new();
            for t in &ts {
                let sv = sign_vector_at(&p, &fam, &Ray::new(e.plus(&h.scale(t)))?)?;
                let inr = a.in_stable_range(t);
                let _ = writeln!(text, "{t}  {sv}  {inr}");
                rows.push(json!({"t": t, "stratum": sv, "in_range": inr}));
            }
            let _ = writeln!(text, "stable {}", rep.stable());
            let mut res = to_value(&rep);
            res["samples"] = Value::Array(rows);
            Ok(Report {
                result: res,
                text,
                ok: rep.stable(),
            })
        }
        Command::Oracle { common, sampling } => {
            let r = oracle(&p, common.seed, sampling)?;
            let text = format!(
                "scenarios {}\nchecks {}\nmismatches {}\n{}",
                r.scenarios,
                r.checks,
                r.mismatches.len(),
                r.mismatches
                    .iter()
                    .take(10)
                    .map(|m| format!("mismatch {m}\n"))
                    .collect::<String>()
            );
            let res =
                json!({"scenarios": r.scenarios, "checks": r.checks, "mismatches": r.mismatches});
            Ok(Report {
                result: res,
                text,
                ok: r.mismatches.is_empty(),
            })
        }
    }
}

fn interval(sc: &Scenario, ends: &Endpoints, n: usize) -> Result<RayInterval> {
    RayInterval::new(sc.ray(&ends.from, n)?, sc.ray(&ends.to, n)?)
}

fn ord_char(o: Ordering) -> char {
    match o {
        Ordering::Less => '<',
        Ordering::Equal => '=',
        Ordering::Greater => '>',
    }
}

fn span(lo_closed: bool, lo: &TropValue, hi: &TropValue, hi_closed: bool) -> String {
    if lo == hi {
        return format!("{{{lo}}}");
    }
    format!(
        "{}{lo}, {hi}{}",
        if lo_closed { '[' } else { ']' },
        if hi_closed { ']' } else { '[' }
    )
}

fn pm_text(f: &PmFunction) -> String {
    let segs: Vec<String> = f.segments().iter().map(|m| m.to_string()).collect();
    let bps: Vec<String> = f.breakpoints().iter().map(|b| b.to_string()).collect();
    format!("{} on cuts [{}]", segs.join(" | "), bps.join(", "))
}

fn profile_text(prof: &IntervalCsProfile) -> String {
    let r = &prof.regions;
    format!(
        "f_w {}\nq {}\ncase {:?}\nA {}\nB {}\nC {}\n",
        pm_text(&prof.f),
        pm_text(&prof.q_profile),
        prof.case,
        span(true, &r.a.0, &r.a.1, true),
        span(true, &r.b.0, &r.b.1, true),
        span(true, &r.c.0, &r.c.1, true),
    )
}

fn trace_text(trace: &StrataTrace) -> String {
    let mut text = String::from("piece  stratum\n");
    for pc in &trace.pieces {
        let _ = writeln!(
            text,
            "{}  {}",
            span(pc.lo_closed, &pc.lo, &pc.hi, pc.hi_closed),
            pc.label
        );
    }
    for (k, s) in trace.separators.iter().enumerate() {
        let _ = writeln!(text, "separator {k} at {}: {}", s.param, s.ray);
    }
    text
}

/// Totals of an oracle run.
pub struct OracleReport {
    pub scenarios: usize,
    pub checks: usize,
    pub mismatches: Vec<String>,
}

struct Draw {
    i: RayInterval,
    w: Vector,
    w2: Vector,
    lambdas: Vec<TropValue>,
}

/// Random intervals and witnesses on which closed forms are compared against
/// direct evaluation. Scenarios are drawn sequentially and checked in parallel.
pub fn oracle(p: &QuadraticPair, seed: u64, sampling: &Sampling) -> Result<OracleReport> {
    let mut r = rng(seed);
    let bounds = sampling.bounds();
    let n = p.dim();
    let aniso = |r: &mut ChaCha8Rng| -> Result<Vector> {
        for _ in 0..1000 {
            let v = random_vector_with(n, &bounds, r);
            if !p.q(&v)?.is_zero() {
                return Ok(v);
            }
        }
        Err(Error::InvalidModel("no anisotropic vectors found".into()))
    };
    let mut draws = Vec::with_capacity(sampling.samples);
    while draws.len() < sampling.samples {
        let (a, b) = (aniso(&mut r)?, aniso(&mut r)?);
        let Ok(i) = RayInterval::new(Ray::new(a)?, Ray::new(b)?) else {
            continue;
        };
        let (w, w2) = (aniso(&mut r)?, aniso(&mut r)?);
        let lambdas = (0..6).map(|_| bounds.value(&mut r)).collect();
        draws.push(Draw { i, w, w2, lambdas });
    }
    let results = draws
        .par_iter()
        .map(|d| check_draw(p, d))
        .collect::<Result<Vec<_>>>()?;
    let mut out = OracleReport {
        scenarios: draws.len(),
        checks: 0,
        mismatches: vec![],
    };
    for (checks, bad) in results {
        out.checks += checks;
        out.mismatches.extend(bad);
    }
    Ok(out)
}

fn check_draw(p: &QuadraticPair, d: &Draw) -> Result<(usize, Vec<String>)> {
    let mut checks = 0;
    let mut bad = Vec::new();
    let mut check = |ok: bool, what: String| {
        checks += 1;
        if !ok {
            bad.push(what);
        }
    };
    let (f, g) = match (build_fw(p, &d.i, &d.w), build_fw(p, &d.i, &d.w2)) {
        (Ok(f), Ok(g)) => (f, g),
        (Err(Error::PerpendicularWitness), _) | (_, Err(Error::PerpendicularWitness)) => {
            return Ok((0, bad))
        }
        (Err(e), _) | (_, Err(e)) => return Err(e),
    };
    let mut ls: BTreeSet<TropValue> = d.lambdas.iter().cloned().collect();
    ls.extend(f.f.breakpoints().iter().cloned());
    ls.extend(f.q_profile.breakpoints().iter().cloned());
    let iv = format!("[{}, {}]", d.i.start(), d.i.end());
    for l in &ls {
        let x = d.i.point_at(l);
        let direct = p.cs(&x, &d.w)?;
        check(
            f.f.eval(l) == direct,
            format!("f_w({l}) on {iv}: {} vs {direct}", f.f.eval(l)),
        );
        // At λ = ∞ the interval sits at ε₂ while the profile of q diverges.
        if !l.is_infinite() {
            check(
                f.q_profile.eval(l) == p.q(&x)?,
                format!("q profile at {l} on {iv}"),
            );
        }
        check(
            d.i.reverse_identity_check(l),
            format!("reverse identity at {l} on {iv}"),
        );
    }
    for (name, (lo, hi)) in [("A", &f.regions.a), ("C", &f.regions.c)] {
        check(
            f.f.eval(lo) == f.f.eval(hi),
            format!("f_w not constant on region {name} of {iv}"),
        );
    }
    let lhs = pm_mul(&pm_add(&f.f, &g.f), &pm_min(&f.f, &g.f));
    check(
        lhs == pm_mul(&f.f, &g.f),
        format!("(F+G)(F∧G) ≠ FG on {iv}"),
    );
    for pc in compare(&f.f, &g.f) {
        if pc.is_point() && pc.label == Ordering::Equal {
            check(
                f.f.eval(&pc.lo) == g.f.eval(&pc.lo),
                format!("crossing at {} on {iv}", pc.lo),
            );
        }
    }
    Ok((checks, bad))
}
