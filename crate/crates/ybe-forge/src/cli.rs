//! Command-line surface: `decompose`, `tpg`, `rmatrix` and `verify`.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::liealg::AlgebraSignature;
use crate::rmatrix::{assemble_from, SpectralRMatrix};
use crate::reps::fuse_minimal;
use crate::scalars::{DeformParam, Rat};
use crate::tpg;
use crate::verify::{self, random_points, CheckReport};
use crate::Error;

#[derive(Parser, Debug)]
#[command(name = "ybe-forge", version, about = "Exact spectral R-matrices and Yang-Baxter checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decomposition grid of V(lambda_a) ⊗ V(lambda_b)
    Decompose(RunConfig),
    /// The extended twisted tensor product graph and its coefficients
    Tpg(RunConfig),
    /// Assemble the spectral R-matrix, optionally evaluated at --z
    Rmatrix(RunConfig),
    /// Run verification checks; exit code 1 if any fails
    Verify(RunConfig),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Pretty,
}

#[derive(Args, Debug, Clone)]
pub struct RunConfig {
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 1)]
    pub a: i64,
    /// Defaults to a
    #[arg(long)]
    pub b: Option<i64>,
    /// Deformation parameter, q = t^2
    #[arg(long, default_value = "6/5")]
    pub t: Rat,
    /// Comma-separated rationals, or random:<seed>
    #[arg(long)]
    pub z: Option<String>,
    #[arg(long)]
    pub w: Option<String>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Check group for verify
    #[arg(long, default_value = "all")]
    pub suite: String,
    /// Perturb one entry of the R-matrix before verifying
    #[arg(long)]
    pub perturb: bool,
    #[arg(long)]
    pub no_cache: bool,
}

struct Resolved {
    sig: AlgebraSignature,
    dp: DeformParam,
    a: i64,
    b: i64,
    swapped: bool,
}

impl RunConfig {
    fn resolve(&self) -> Result<Resolved, Error> {
        let sig = AlgebraSignature::new(self.m, self.n)?;
        let dp = DeformParam::new(self.t.clone())?;
        let b = self.b.unwrap_or(self.a);
        if self.a < 1 || b < 1 {
            return Err(Error::Usage(format!("a and b must be >= 1, got a = {}, b = {b}", self.a)));
        }
        let swapped = self.a > b;
        let (a, b) = if swapped { (b, self.a) } else { (self.a, b) };
        Ok(Resolved { sig, dp, a, b, swapped })
    }

    fn points(&self, spec: Option<&str>, reject: impl Fn(&Rat) -> bool) -> Result<Option<Vec<Rat>>, Error> {
        let Some(s) = spec else { return Ok(None) };
        if let Some(seed) = s.strip_prefix("random:") {
            let seed: u64 = seed.parse().map_err(|_| Error::Usage(format!("bad seed in {s:?}")))?;
            return Ok(Some(random_points(seed, 3, reject)));
        }
        let pts = s.split(',').map(|x| x.trim().parse::<Rat>()).collect::<Result<Vec<_>, _>>()?;
        if let Some(p) = pts.iter().find(|p| reject(p)) {
            return Err(Error::Pole(format!("a coefficient is singular at {p}")));
        }
        Ok(Some(pts))
    }
}

/// Parses arguments and runs; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let stdout = std::io::stdout();
    match run(&cli, &mut stdout.lock()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

/// Executes a parsed command, writing to `out` unless `--out` is given.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<i32, Error> {
    let (cfg, (text, code)) = match &cli.command {
        Command::Decompose(c) => (c, (cmd_decompose(c)?, 0)),
        Command::Tpg(c) => (c, (cmd_tpg(c)?, 0)),
        Command::Rmatrix(c) => (c, (cmd_rmatrix(c)?, 0)),
        Command::Verify(c) => (c, cmd_verify(c)?),
    };
    match &cfg.out {
        Some(p) => std::fs::write(p, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(code)
}

fn to_json<T: Serialize>(v: &T) -> Result<String, Error> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

pub fn cmd_decompose(cfg: &RunConfig) -> Result<String, Error> {
    let r = cfg.resolve()?;
    let grid = tpg::decomposition_grid(r.a, r.b, &r.sig)?;
    match cfg.format {
        Format::Json => to_json(&json!({
            "algebra": r.sig.to_string(),
            "a": r.a,
            "b": r.b,
            "swapped": r.swapped,
            "nodes": grid.nodes,
            "indecomposable": grid.has_vnode,
        })),
        Format::Pretty => {
            let mut s = format!("{} V(lambda_{})⊗V(lambda_{})\n", r.sig, r.a, r.b);
            for n in &grid.nodes {
                let tag = if n.indecomposable { "  [indecomposable]" } else { "" };
                s += &format!("  ({},{})  {:<12} C = {:<6} parity {}{tag}\n", n.c, n.k, n.weight.to_string(), n.casimir.to_string(), n.parity);
            }
            Ok(s)
        }
        Format::Dot => Err(Error::Usage("decompose has no dot output; use the tpg command".into())),
    }
}

pub fn cmd_tpg(cfg: &RunConfig) -> Result<String, Error> {
    let r = cfg.resolve()?;
    let grid = tpg::decomposition_grid(r.a, r.b, &r.sig)?;
    let graph = tpg::build_extended_ttpg(&grid, &r.sig);
    match cfg.format {
        Format::Dot => Ok(tpg::emit_dot(&graph)),
        Format::Json => {
            let rho = tpg::solve_coefficients(&graph, &r.dp)?;
            let rho: Vec<_> = rho.iter().map(|(k, v)| json!({"node": k, "rho": v, "display": v.to_string()})).collect();
            to_json(&json!({"graph": graph, "coefficients": rho}))
        }
        Format::Pretty => {
            let rho = tpg::solve_coefficients(&graph, &r.dp)?;
            let mut s = String::new();
            for e in &graph.edges {
                s += &format!("  {} -- {}  sign {:+}\n", e.from, e.to, e.sign);
            }
            for (k, v) in &rho {
                s += &format!("  rho[{k}] = {v}\n");
            }
            Ok(s)
        }
    }
}

/// Cache location: `YBE_FORGE_CACHE_DIR`, else a directory under the system temp dir.
pub fn cache_dir() -> PathBuf {
    std::env::var_os("YBE_FORGE_CACHE_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("ybe-forge-cache"))
}

fn cache_path(r: &Resolved, a: i64, b: i64) -> PathBuf {
    let t = r.dp.t();
    cache_dir().join(format!("rmatrix_m{}_n{}_a{a}_b{b}_t{}_{}.json", r.sig.m, r.sig.n, t.numer(), t.denom()))
}

fn load_or_assemble(r: &Resolved, no_cache: bool) -> Result<SpectralRMatrix, Error> {
    let path = cache_path(r, r.a, r.b);
    if !no_cache {
        if let Ok(text) = std::fs::read_to_string(&path) {
            if let Ok(rm) = serde_json::from_str::<SpectralRMatrix>(&text) {
                return Ok(rm);
            }
        }
    }
    let va = fuse_minimal(r.a, &r.sig, &r.dp)?;
    let vb = if r.a == r.b { va.clone() } else { fuse_minimal(r.b, &r.sig, &r.dp)? };
    let rm = assemble_from(r.a, r.b, va, vb)?.rmatrix;
    if !no_cache {
        // the cache is an optimization; failing to write it is not an error
        let _ = std::fs::create_dir_all(cache_dir()).and_then(|_| std::fs::write(&path, to_json(&rm).unwrap_or_default()));
    }
    Ok(rm)
}

pub fn cmd_rmatrix(cfg: &RunConfig) -> Result<String, Error> {
    let r = cfg.resolve()?;
    let mut rm = load_or_assemble(&r, cfg.no_cache)?;
    rm.meta.swapped = r.swapped;
    let zs = cfg.points(cfg.z.as_deref(), |z| verify::is_pole(&rm, z))?;
    match cfg.format {
        Format::Json => match zs {
            None => to_json(&rm),
            Some(zs) => {
                let mut evals = Vec::new();
                for z in &zs {
                    evals.push(json!({"z": z, "matrix": rm.eval(z)?}));
                }
                to_json(&json!({"rmatrix": rm, "evaluated": evals}))
            }
        },
        Format::Pretty => {
            let mut s = format!("{} a={} b={} q={}\n", r.sig, rm.meta.a, rm.meta.b, rm.meta.q);
            for t in rm.all_terms() {
                let what = if rm.n.as_ref() == Some(t) { "N".to_string() } else { format!("P[{}]", t.node) };
                s += &format!("  {what:<8} rho = {}\n", t.rho);
            }
            for z in zs.unwrap_or_default() {
                let x = rm.eval(&z)?;
                s += &format!("  R({z}): {} nonzero entries, max |numerator| {}\n", x.nnz(), x.max_abs_numer());
            }
            Ok(s)
        }
        Format::Dot => Err(Error::Usage("rmatrix has no dot output".into())),
    }
}

/// Runs the selected suite; exit code 0 iff every check passes.
pub fn cmd_verify(cfg: &RunConfig) -> Result<(String, i32), Error> {
    let r = cfg.resolve()?;
    if !verify::SUITES.contains(&cfg.suite.as_str()) {
        return Err(Error::Usage(format!("unknown suite {:?}; expected one of {:?}", cfg.suite, verify::SUITES)));
    }
    let va = fuse_minimal(r.a, &r.sig, &r.dp)?;
    let vb = if r.a == r.b { va.clone() } else { fuse_minimal(r.b, &r.sig, &r.dp)? };
    let asm = assemble_from(r.a, r.b, va.clone(), vb.clone())?;
    let flipped = if r.a == r.b { None } else { Some(assemble_from(r.b, r.a, vb, va)?.rmatrix) };
    let rm = if cfg.perturb { verify::perturbed(&asm.rmatrix, cfg.seed) } else { asm.rmatrix.clone() };
    let zs = cfg.points(cfg.z.as_deref(), |z| verify::is_pole(&rm, z))?;
    let ws = cfg.points(cfg.w.as_deref(), |z| verify::is_pole(&rm, z))?;
    let mut reports: Vec<CheckReport> = Vec::new();
    match zs {
        None => reports.extend(verify::run_suite(&cfg.suite, &asm, &rm, flipped.as_ref(), cfg.seed, None, ws.as_ref().map(|w| &w[0]))?),
        Some(zs) => {
            for (i, z) in zs.iter().enumerate() {
                let w = ws.as_ref().map(|w| &w[i.min(w.len() - 1)]);
                reports.extend(verify::run_suite(&cfg.suite, &asm, &rm, flipped.as_ref(), cfg.seed, Some(z), w)?);
            }
        }
    }
    let pass = reports.iter().all(|x| x.pass);
    let text = match cfg.format {
        Format::Json => to_json(&reports)?,
        Format::Pretty => {
            let mut s = String::new();
            for x in &reports {
                let at = x.params.z.as_ref().map(|z| format!(" z={z}")).unwrap_or_default();
                s += &format!("{} {}{at} residual={} {}ms\n", if x.pass { "PASS" } else { "FAIL" }, x.name, x.residual, x.runtime_ms);
            }
            s
        }
        Format::Dot => return Err(Error::Usage("verify has no dot output".into())),
    };
    Ok((text, if pass { 0 } else { 1 }))
}
