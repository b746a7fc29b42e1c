//! Argument parsing and subcommand dispatch.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nglab_core::aut::{aut_order, brute_force_aut, structure, BRUTE_FORCE_LIMIT};
use nglab_core::charsum::{l_poly, weil_check, WeilBranch};
use nglab_core::ff::{parse_field_spec, Fe, FieldCtx};
use nglab_core::k46::{find_k46, make_env, verify_certificate, BuildMode};
use nglab_core::neighborhoods::{
    base_pairs, common_neighborhood_bruteforce, pair_degree, st_enumerate, st_size, triple_degree, DegreeMethod,
};
use nglab_core::normgraph::{classify_set, GraphCtx, Vertex};
use nglab_core::resultants::quadruple_degree;
use nglab_core::subgraphs::{degree_extrema, PatternGraph, DEFAULT_BUDGET};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{NglabError, Result};
use crate::output::{fe, vertices, CertificateView, Emitter, Format};
use crate::verify::{self, Check, Options};

/// Vertex sets up to this size also get a brute-force common degree.
const ORACLE_LIMIT: u64 = 200_000;
/// `st-size` also enumerates S_t when the big field is at most this large.
const ENUMERATE_LIMIT: u64 = 1 << 20;

#[derive(Parser, Debug)]
#[command(name = "nglab", version, about = "Exact experiments on projective norm graphs")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Seed for sampled sweeps.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Emit CSV instead of JSON lines.
    #[arg(long, global = true)]
    pub csv: bool,
    /// key=value file supplying defaults for any flag.
    #[arg(long, global = true)]
    pub config: Option<String>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Work budget for subgraph counting.
    #[arg(long, global = true, env = "NGLAB_BUDGET", default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
}

#[derive(Args, Debug, Clone)]
pub struct GraphArgs {
    /// Field order q, as "25" or "5^2".
    #[arg(long)]
    pub q: String,
    #[arg(long, default_value_t = 3)]
    pub t: u32,
}

impl GraphArgs {
    fn ctx(&self) -> Result<GraphCtx> {
        let (p, k) = parse_field_spec(&self.q)?;
        Ok(GraphCtx::new(p, k, self.t)?)
    }
}

fn parse_q(s: &str) -> Result<u64> {
    let (p, k) = parse_field_spec(s)?;
    p.checked_pow(k).ok_or_else(|| NglabError::Input(format!("q = {s} overflows")))
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ModeArg {
    Fast,
    Certified,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Modulus, generator and group order of F_{p^k}.
    FieldInfo {
        #[arg(long)]
        field: String,
    },
    /// Vertex, edge and loop counts.
    Census(GraphArgs),
    /// Common degree of a vertex set, or degree extrema over d-sets.
    Deg {
        #[command(flatten)]
        graph: GraphArgs,
        /// Vertices as "A:a,B:b,..." with field elements in integer encoding.
        #[arg(long, conflicts_with = "extrema")]
        vertices: Option<String>,
        /// Set size d for extrema of the common degree.
        #[arg(long)]
        extrema: Option<usize>,
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
    },
    /// Invariants (c1, c2) and degree of a generic triple.
    TripleClass {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        vertices: String,
    },
    /// |S_t(c1, c2)|; elements are integers mod p or "#v" for a raw encoding.
    StSize {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, allow_hyphen_values = true, required_unless_present = "all")]
        c1: Option<String>,
        #[arg(long, allow_hyphen_values = true, required_unless_present = "all")]
        c2: Option<String>,
        #[arg(long)]
        all: bool,
    },
    /// Exhaustive or sampled verification of one identity.
    Verify {
        #[arg(long, value_enum)]
        theorem: Check,
        #[arg(long)]
        q: String,
        #[arg(long)]
        t: Option<u32>,
        #[arg(long)]
        samples: Option<usize>,
        /// Pattern names for `--theorem 3` (repeatable).
        #[arg(long = "pattern")]
        patterns: Vec<String>,
    },
    /// Explicit K_{4,6} certificates.
    FindK46 {
        #[arg(long)]
        q: String,
        #[arg(long, value_enum, default_value = "fast")]
        mode: ModeArg,
        #[arg(long, default_value_t = 1)]
        count: usize,
    },
    /// Labeled copies of a pattern graph.
    CountSubgraphs {
        #[command(flatten)]
        graph: GraphArgs,
        /// Edge-list file: "v e" then e lines "i j".
        #[arg(long, conflicts_with = "name", required_unless_present = "name")]
        pattern: Option<String>,
        /// Built-in pattern such as K4, P3, C4, K3,3.
        #[arg(long)]
        name: Option<String>,
    },
    /// Automorphism group order and structure.
    Aut {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        brute_force: bool,
        /// Treat loops as part of the structure in the brute-force search.
        #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
        respect_loops: bool,
    },
    /// Character sum of L_{c1,c2} against the Weil estimate.
    WeilCheck {
        #[arg(long)]
        q: String,
        #[arg(long, allow_hyphen_values = true, required_unless_present = "all_pairs")]
        c1: Option<String>,
        #[arg(long, allow_hyphen_values = true, required_unless_present = "all_pairs")]
        c2: Option<String>,
        #[arg(long)]
        all_pairs: bool,
    },
}

/// Parses "n", "-n" (reduced mod p) or "#v" (raw encoding).
fn parse_elem(f: &FieldCtx, s: &str) -> Result<Fe> {
    let s = s.trim();
    if let Some(raw) = s.strip_prefix('#') {
        let v: u64 = raw.parse().map_err(|_| NglabError::Input(format!("bad element {s:?}")))?;
        return Ok(f.elem(v)?);
    }
    let n: i64 = s.parse().map_err(|_| NglabError::Input(format!("bad element {s:?}")))?;
    Ok(f.from_int(n))
}

fn parse_vertices(gc: &GraphCtx, s: &str) -> Result<Vec<Vertex>> {
    s.split(',')
        .map(|item| {
            let (a, b) = item
                .split_once(':')
                .ok_or_else(|| NglabError::Input(format!("vertex {item:?} is not A:a")))?;
            let parse = |x: &str| x.trim().parse::<u64>().map_err(|_| NglabError::Input(format!("bad vertex {item:?}")));
            Ok(gc.vertex_from_values(parse(a)?, parse(b)?)?)
        })
        .collect()
}

#[derive(Serialize)]
struct DegRecord {
    q: u64,
    t: u32,
    vertices: Vec<[u64; 2]>,
    generic: bool,
    aligned: bool,
    degree: u64,
    method: &'static str,
    bound: Option<u64>,
    brute_force: Option<u64>,
}

fn deg_record(gc: &GraphCtx, vs: &[Vertex]) -> Result<DegRecord> {
    let set = classify_set(vs);
    let oracle = || common_neighborhood_bruteforce(gc, vs).len() as u64;
    let (degree, method, bound) = match (set.generic, vs.len()) {
        (false, _) | (_, 0 | 1) => (oracle(), "brute-force", None),
        (true, 2) => (pair_degree(gc, vs)?, "closed-form", None),
        (true, 3) if gc.t() >= 3 => {
            let d = triple_degree(gc, vs)?;
            let m = if d.method == DegreeMethod::ClosedForm { "closed-form" } else { "brute-force" };
            (d.degree, m, None)
        }
        (true, 4) if gc.t() >= 4 => {
            let d = quadruple_degree(gc, vs)?;
            (d.exact, "elimination", Some(d.bound))
        }
        _ => (oracle(), "brute-force", None),
    };
    let small = gc.n_vertices() <= ORACLE_LIMIT;
    let brute_force = (small && method != "brute-force").then(oracle);
    if brute_force.is_some_and(|b| b != degree) {
        return Err(NglabError::CheckFailed(format!("degree {degree} but enumeration finds {}", brute_force.unwrap())));
    }
    Ok(DegRecord {
        q: gc.q(),
        t: gc.t(),
        vertices: vertices(vs),
        generic: set.generic,
        aligned: set.aligned,
        degree,
        method,
        bound,
        brute_force,
    })
}

fn st_record(gc: &GraphCtx, c1: Fe, c2: Fe) -> Result<Value> {
    let size = st_size(gc, gc.t(), c1, c2)?;
    let enumerated = if gc.big_order() <= ENUMERATE_LIMIT {
        let e = st_enumerate(gc, gc.t(), c1, c2)?.len() as i64;
        if e != size {
            return Err(NglabError::CheckFailed(format!("|S_t| = {size} but enumeration finds {e}")));
        }
        Some(e)
    } else {
        None
    };
    Ok(json!({ "q": gc.q(), "t": gc.t(), "c1": fe(c1), "c2": fe(c2), "size": size, "enumerated": enumerated }))
}

fn weil_record(f: &FieldCtx, c1: Fe, c2: Fe) -> Result<Value> {
    let r = weil_check(f, &l_poly(f, c1, c2))?;
    let branch = match r.branch {
        WeilBranch::Square { .. } => "square",
        WeilBranch::Generic => "generic",
    };
    Ok(json!({
        "q": f.order(),
        "c1": fe(c1),
        "c2": fe(c2),
        "sum": r.sum,
        "degree": r.degree,
        "bound": r.bound,
        "expected": r.expected,
        "branch": branch,
        "ok": r.ok,
    }))
}

fn execute<W: Write>(cli: &Cli, out: &mut Emitter<W>) -> Result<()> {
    let g = &cli.global;
    match &cli.command {
        Command::FieldInfo { field } => {
            let (p, k) = parse_field_spec(field)?;
            let f = FieldCtx::new(p, k, None)?;
            out.emit(
                "field-info",
                &json!({
                    "p": p,
                    "k": k,
                    "order": f.order(),
                    "modulus": f.modulus(),
                    "generator": fe(f.generator()),
                    "group_factors": f.group_factors(),
                }),
            )
        }
        Command::Census(ga) => {
            let gc = ga.ctx()?;
            let c = gc.census();
            if c.verified == Some(false) {
                return Err(NglabError::CheckFailed("edge count disagrees with enumeration".into()));
            }
            out.emit(
                "census",
                &json!({ "q": gc.q(), "t": gc.t(), "n": c.n, "edges": c.edges, "loops": c.loops, "verified": c.verified }),
            )
        }
        Command::Deg { graph, vertices: vs, extrema, samples } => {
            let gc = graph.ctx()?;
            match (vs, extrema) {
                (Some(vs), _) => out.emit("deg", &deg_record(&gc, &parse_vertices(&gc, vs)?)?),
                (None, Some(d)) => {
                    let mut rng = ChaCha8Rng::seed_from_u64(g.seed);
                    let e = degree_extrema(&gc, *d, *samples, &mut rng)?;
                    out.emit(
                        "deg",
                        &json!({
                            "q": gc.q(),
                            "t": gc.t(),
                            "d": e.d,
                            "max": e.max,
                            "min": e.min,
                            "exact": e.exact,
                            "examined": e.examined.to_string(),
                            "argmax": vertices(&e.argmax),
                            "argmin": vertices(&e.argmin),
                            "seed": (!e.exact).then_some(g.seed),
                        }),
                    )
                }
                (None, None) => Err(NglabError::Input("deg needs --vertices or --extrema".into())),
            }
        }
        Command::TripleClass { graph, vertices: vs } => {
            let gc = graph.ctx()?;
            let vs = parse_vertices(&gc, vs)?;
            let d = triple_degree(&gc, &vs)?;
            out.emit(
                "triple-class",
                &json!({
                    "q": gc.q(),
                    "t": gc.t(),
                    "vertices": vertices(&vs),
                    "c1": fe(d.invariants.c1),
                    "c2": fe(d.invariants.c2),
                    "aligned": d.invariants.all_equal,
                    "degree": d.degree,
                }),
            )
        }
        Command::StSize { graph, c1, c2, all } => {
            let gc = graph.ctx()?;
            if *all {
                for (a, b) in base_pairs(&gc) {
                    out.emit("st-size", &st_record(&gc, a, b)?)?;
                }
                Ok(())
            } else {
                let f = gc.big();
                let (c1, c2) = (c1.as_deref().unwrap_or_default(), c2.as_deref().unwrap_or_default());
                out.emit("st-size", &st_record(&gc, parse_elem(f, c1)?, parse_elem(f, c2)?)?)
            }
        }
        Command::Verify { theorem, q, t, samples, patterns } => {
            let opts = Options { seed: g.seed, samples: *samples, budget: g.budget, patterns: patterns.clone() };
            let report = verify::run(*theorem, parse_q(q)?, t.unwrap_or(theorem.default_t()), &opts)?;
            out.emit("verify", &report)?;
            if report.ok {
                Ok(())
            } else {
                Err(NglabError::CheckFailed(format!("{} mismatches for {}", report.mismatches, report.theorem)))
            }
        }
        Command::FindK46 { q, mode, count } => {
            let (p, k) = parse_field_spec(q)?;
            let env = make_env(p, k)?;
            let mode = match mode {
                ModeArg::Fast => BuildMode::Fast,
                ModeArg::Certified => BuildMode::Certified,
            };
            let certs = find_k46(&env, mode, *count)?;
            if certs.is_empty() {
                return Err(nglab_core::Error::NotFound("loop-free translate").into());
            }
            for cert in &certs {
                let check = verify_certificate(env.gc(), cert);
                if !check.ok {
                    return Err(NglabError::CheckFailed(check.violations.join("; ")));
                }
                out.emit("find-k46", &CertificateView::from(cert))?;
            }
            Ok(())
        }
        Command::CountSubgraphs { graph, pattern, name } => {
            let gc = graph.ctx()?;
            let (label, h) = match (pattern, name) {
                (Some(path), _) => {
                    let text = std::fs::read_to_string(path)
                        .map_err(|e| NglabError::Input(format!("cannot read {path}: {e}")))?;
                    (path.clone(), PatternGraph::parse(&text)?)
                }
                (None, Some(n)) => (n.clone(), PatternGraph::named(n)?),
                (None, None) => return Err(NglabError::Input("need --pattern or --name".into())),
            };
            let row = verify::pattern_row(&gc, &label, &h, g.budget)?;
            out.emit("count-subgraphs", &json!({ "q": gc.q(), "t": gc.t(), "row": row }))
        }
        Command::Aut { graph, brute_force, respect_loops } => {
            let gc = graph.ctx()?;
            let order = aut_order(&gc)?;
            let brute = if *brute_force {
                if gc.n_vertices() > BRUTE_FORCE_LIMIT {
                    return Err(nglab_core::Error::TooLarge { size: gc.n_vertices(), limit: BRUTE_FORCE_LIMIT }.into());
                }
                let b = brute_force_aut(&gc, *respect_loops)?;
                if *respect_loops && u128::from(b) != order {
                    return Err(NglabError::CheckFailed(format!("formula {order}, search {b}")));
                }
                Some(b)
            } else {
                None
            };
            out.emit(
                "aut",
                &json!({
                    "q": gc.q(),
                    "t": gc.t(),
                    "order": order.to_string(),
                    "structure": structure(&gc)?,
                    "brute_force": brute,
                    "respect_loops": respect_loops,
                }),
            )
        }
        Command::WeilCheck { q, c1, c2, all_pairs } => {
            let (p, k) = parse_field_spec(q)?;
            let f = FieldCtx::new(p, k, None)?;
            let mut failed = 0;
            let pairs: Vec<(Fe, Fe)> = if *all_pairs {
                f.nonzero().flat_map(|a| f.nonzero().map(move |b| (a, b))).collect()
            } else {
                let (c1, c2) = (c1.as_deref().unwrap_or_default(), c2.as_deref().unwrap_or_default());
                vec![(parse_elem(&f, c1)?, parse_elem(&f, c2)?)]
            };
            for (a, b) in pairs {
                let rec = weil_record(&f, a, b)?;
                failed += usize::from(rec["ok"] != json!(true));
                out.emit("weil-check", &rec)?;
            }
            if failed > 0 {
                return Err(NglabError::CheckFailed(format!("{failed} character sums violate the estimate")));
            }
            Ok(())
        }
    }
}

/// Runs the CLI with explicit streams and returns the exit code.
pub fn run_with<I, S, W, E>(argv: I, stdout: W, mut stderr: E) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
    W: Write,
    E: Write,
{
    let argv: Vec<String> = argv.into_iter().map(Into::into).collect();
    let argv = match crate::config::merge(argv) {
        Ok(a) => a,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return e.exit_code();
        }
    };
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let _ = write!(stderr, "{}", e.render());
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => 0,
                _ => 3,
            };
        }
    };
    let format = if cli.global.csv { Format::Csv } else { Format::Json };
    let mut emitter = Emitter::new(format, Vec::new());
    let result = match cli.global.jobs {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| execute(&cli, &mut emitter)),
            Err(e) => Err(NglabError::Input(format!("cannot start {n} workers: {e}"))),
        },
        None => execute(&cli, &mut emitter),
    };
    // Records written before a failure are still delivered.
    let mut stdout = stdout;
    let flushed = stdout.write_all(&emitter.into_inner()).and_then(|()| stdout.flush());
    let result = result.and(flushed.map_err(NglabError::from));
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

/// Runs the CLI on the process streams.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let stdout = std::io::stdout();
    run_with(argv, stdout.lock(), std::io::stderr())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::output::vertex;

    fn run_capture(args: &str) -> (i32, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run_with(args.split_whitespace(), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap())
    }

    #[test]
    fn census_example() {
        let (code, out) = run_capture("nglab census --q 3 --t 2");
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(out.trim()).unwrap();
        assert_eq!((v["n"].as_u64(), v["edges"].as_u64(), v["loops"].as_u64()), (Some(6), Some(5), Some(2)));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_capture("nglab census --q 6 --t 2").0, 3);
        assert_eq!(run_capture("nglab frobnicate").0, 3);
        assert_eq!(run_capture("nglab count-subgraphs --q 5 --t 3 --name K4 --budget 10").0, 4);
    }

    #[test]
    fn vertex_and_element_parsing() {
        let gc = GraphCtx::from_q(5, 3).unwrap();
        let vs = parse_vertices(&gc, "0:1, 3:4").unwrap();
        assert_eq!(vertices(&vs), vec![[0, 1], [3, 4]]);
        assert!(parse_vertices(&gc, "0-1").is_err());
        let f = gc.big();
        assert_eq!(parse_elem(f, "-1").unwrap(), f.from_int(-1));
        assert_eq!(parse_elem(f, "#7").unwrap(), f.elem(7).unwrap());
        assert_eq!(vertex(&vs[1]), [3, 4]);
    }
}
