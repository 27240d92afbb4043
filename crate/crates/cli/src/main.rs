use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use stabtree_core::characters::{word_label, DEFAULT_SEED, DEFAULT_WORD_COUNT, DEFAULT_WORD_DEPTH};
use stabtree_core::coeffring::{hensel_quadratic, MonicQuadratic, Ring, RingSpec};
use stabtree_core::counterexample::{build_from_spec, no_ribet_lattice_check, CounterexampleSpec};
use stabtree_core::invariants::{invariants_from_tree, k_empirical};
use stabtree_core::io::{parse_group_file, parse_pair_file, to_dot, tree_report, PairFile};
use stabtree_core::matlat::LatticeClass;
use stabtree_core::oracle::{enumerate_character_pairs, enumerate_stable_ball};
use stabtree_core::ribet::{harvest_pair, reducibility_witness_in, ribet_lattice_in, Explored};
use stabtree_core::subtree::{GroupInput, IntegralModel};
use stabtree_core::Error;

const ORACLE_BUDGET: usize = 1 << 22;

#[derive(Parser)]
#[command(
    name = "stabtree",
    version,
    about = "Stable lattices of 2x2 matrix groups over local rings"
)]
struct Cli {
    /// Worker threads for parallel enumeration.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Print JSON instead of a text summary.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InputArgs {
    /// Group file (JSON).
    #[arg(long)]
    input: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the stable subtree and its shape.
    Tree {
        #[command(flatten)]
        input: InputArgs,
        /// Exploration radius; defaults to the precision minus a guard.
        #[arg(long)]
        cap: Option<u32>,
        /// Write a Graphviz file.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// n, m, k from the shape, with an empirical k.
    Invariants {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// The lattice realizing a non-split extension for a character pair.
    Ribet {
        #[command(flatten)]
        input: InputArgs,
        /// Character pair file; defaults to the pair read off the diameter.
        #[arg(long)]
        chars: Option<PathBuf>,
        /// Modulus for the default pair.
        #[arg(long)]
        n: Option<u32>,
    },
    /// Two stable vertices at distance n from a conjugate pair modulo pi^n.
    Witness {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        chars: PathBuf,
    },
    /// Brute-force certificates: stable ball and character pairs.
    Oracle {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = 4)]
        radius: u32,
        /// Enumerate pairs at this modulus only (default: d and d + 1).
        #[arg(long)]
        n: Option<u32>,
        #[arg(long, default_value_t = 3)]
        depth: usize,
    },
    /// The family where no lattice exists modulo pi^n.
    Counterexample {
        #[arg(long, default_value_t = 3)]
        p: u64,
        #[arg(long, default_value_t = 2)]
        f: u32,
        #[arg(long, default_value_t = 1)]
        m: u32,
        #[arg(long, default_value_t = 4)]
        n: u32,
        #[arg(long)]
        precision: Option<u32>,
    },
    /// Factor t^2 - trace t + det from approximate roots.
    Hensel {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        f: u32,
        #[arg(long)]
        precision: u32,
        #[arg(long)]
        laurent: bool,
        #[arg(long, allow_hyphen_values = true)]
        trace: i64,
        #[arg(long, allow_hyphen_values = true)]
        det: i64,
        #[arg(long, allow_hyphen_values = true)]
        alpha: i64,
        #[arg(long, allow_hyphen_values = true)]
        beta: i64,
        /// Precision of the input factorization.
        #[arg(long)]
        n: u32,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_group(path: &Path) -> Result<GroupInput> {
    let text = read(path)?;
    let file = parse_group_file(&text).with_context(|| format!("parsing {}", path.display()))?;
    Ok(file.to_group()?)
}

fn load_pair(path: &Path) -> Result<PairFile> {
    let text = read(path)?;
    parse_pair_file(&text).with_context(|| format!("parsing {}", path.display()))
}

fn explore(group: &GroupInput, cap: Option<u32>) -> Result<Explored> {
    let model = IntegralModel::from_input(group, 64)?;
    let cap = cap.unwrap_or_else(|| model.default_cap());
    Ok(Explored::with_cap(model, cap)?)
}

fn emit(as_json: bool, value: &Value, text: String) {
    if as_json {
        println!(
            "{}",
            serde_json::to_string_pretty(value).expect("serializable")
        );
    } else {
        print!("{}", text);
    }
}

fn run(cli: Cli) -> Result<()> {
    if let Some(j) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build_global()
            .ok();
    }
    let as_json = cli.json;
    match cli.command {
        Command::Tree { input, cap, dot } => {
            let group = load_group(&input.input)?;
            let ex = explore(&group, cap)?;
            let report = tree_report(&ex.tree, &ex.shape, &|x| ex.model.to_original(x))?;
            if let Some(path) = dot {
                fs::write(&path, to_dot(&report, &group.label))
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            let text = format!(
                "shape     {:?}\nvertices  {}\nd         {}\nr         {}\nnerve     {}\ntruncated {}\n",
                report.shape,
                report.vertices.len(),
                report.d.map_or("-".into(), |d| d.to_string()),
                report.r,
                report.nerve.join(" "),
                report.truncated
            );
            emit(as_json, &serde_json::to_value(&report)?, text);
        }
        Command::Invariants { input, seed } => {
            let group = load_group(&input.input)?;
            let ex = explore(&group, None)?;
            let inv = invariants_from_tree(&ex.shape, &ex.model.group)?;
            let k = k_empirical(&group, DEFAULT_WORD_DEPTH, DEFAULT_WORD_COUNT, seed)?;
            let text = format!(
                "n  {}\nm  {}\nk  {}\nd  {}\nr  {}\nk (empirical, cap {})  {}\n{}\n",
                inv.n, inv.m, inv.k, inv.d, inv.r, k.cap, k.k, inv.method_notes
            );
            let mut v = serde_json::to_value(&inv)?;
            v["k_empirical"] = serde_json::to_value(&k)?;
            emit(as_json, &v, text);
        }
        Command::Ribet { input, chars, n } => {
            let group = load_group(&input.input)?;
            let ex = explore(&group, None)?;
            let pair = match chars {
                Some(path) => load_pair(&path)?.to_pair(&ex.model.group)?,
                None => {
                    let (x, y) =
                        ex.shape.diametral.clone().ok_or_else(|| {
                            Error::NotIrreducible(format!("{:?}", ex.shape.shape))
                        })?;
                    let (_, _, p) = harvest_pair(&ex.model.group, &x, &y)?;
                    match n {
                        Some(k) => p.reduce(k)?,
                        None => p,
                    }
                }
            };
            let rep = ribet_lattice_in(&ex, &pair, None)?;
            let text = format!(
                "lattice   {}\nfar end   {}\nn(rho)    {}\ns         {}\nordering  {:?}\nnon-split {} (witness {})\n",
                rep.x.label(),
                rep.y.label(),
                rep.n_rho,
                rep.s,
                rep.ordering,
                rep.residually_nonsplit,
                rep.nonsplit_witness.map_or("-".into(), |i| format!("g{}", i))
            );
            emit(as_json, &serde_json::to_value(&rep)?, text);
        }
        Command::Witness { input, chars } => {
            let group = load_group(&input.input)?;
            let ex = explore(&group, None)?;
            let pair = load_pair(&chars)?.to_pair(&ex.model.group)?;
            let w = reducibility_witness_in(&ex, &pair)?;
            let mut v = serde_json::to_value(&w)?;
            v["g0"] = json!(word_label(&w.g0));
            v["g1"] = json!(w.g1.as_deref().map(word_label));
            let mut text = format!(
                "x  {}\nz  {}\nd(x, z) = {}\n",
                w.x.label(),
                w.z.label(),
                w.distance
            );
            for s in &w.steps {
                text.push_str(&format!("  {}\n", s));
            }
            emit(as_json, &v, text);
        }
        Command::Oracle {
            input,
            radius,
            n,
            depth,
        } => {
            let group = load_group(&input.input)?;
            let ex = explore(&group, None)?;
            let center = LatticeClass::standard(ex.model.ring());
            let ball = enumerate_stable_ball(&ex.model.group, &center, radius, ORACLE_BUDGET)?;
            let mut tree_in_ball: Vec<LatticeClass> = ex
                .tree
                .vertices
                .iter()
                .zip(&ex.tree.depth)
                .filter(|(_, &d)| d <= radius)
                .map(|(x, _)| x.clone())
                .collect();
            tree_in_ball.sort();
            let agrees = tree_in_ball == ball.stable;
            let moduli: Vec<u32> = match (n, ex.shape.d) {
                (Some(k), _) => vec![k],
                (None, Some(d)) => vec![d, d + 1],
                (None, None) => vec![],
            };
            let mut pair_certs = vec![];
            let mut text = format!(
                "ball radius {}: {} classes checked, {} stable, agrees with BFS: {}\n",
                radius,
                ball.classes_checked,
                ball.stable.len(),
                agrees
            );
            for k in moduli {
                let e = enumerate_character_pairs(&group, k, depth, ORACLE_BUDGET)?;
                let max_m = e.pairs.iter().map(|p| p.m).max();
                text.push_str(&format!(
                    "pairs modulo pi^{}: {} (max m {})\n",
                    k,
                    e.pairs.len(),
                    max_m.map_or("-".into(), |m| m.to_string())
                ));
                pair_certs.push(json!({
                    "n": k,
                    "count": e.pairs.len(),
                    "max_m": max_m,
                    "word_depth": depth,
                    "nodes_visited": e.nodes_visited,
                }));
            }
            let v = json!({
                "ball": {
                    "radius": radius,
                    "classes_checked": ball.classes_checked,
                    "stable": ball.stable.len(),
                    "agrees_with_bfs": agrees,
                },
                "pairs": pair_certs,
            });
            emit(as_json, &v, text);
        }
        Command::Counterexample {
            p,
            f,
            m,
            n,
            precision,
        } => {
            let mut spec = CounterexampleSpec::new(p, f, m, n);
            if let Some(prec) = precision {
                spec.precision = prec;
            }
            let c = build_from_spec(&spec)?;
            let ex = explore(&c.group, None)?;
            let at_s = no_ribet_lattice_check(&ex, &c.eta, spec.s())?;
            let at_n = no_ribet_lattice_check(&ex, &c.eta, n)?;
            let relation: Vec<Value> = c
                .relation
                .terms
                .iter()
                .map(|(a, w)| json!({"coefficient": a, "word": word_label(w)}))
                .collect();
            let residuals: Vec<Value> = c
                .residuals
                .iter()
                .map(|(name, e)| json!({"character": name, "residual": e.residual, "t": e.t, "extendable": e.extendable}))
                .collect();
            let v = json!({
                "spec": spec,
                "s": spec.s(),
                "eta": c.eta,
                "epsilon": c.epsilon,
                "relation": relation,
                "residuals": residuals,
                "tree": {"vertices": ex.tree.len(), "shape": ex.shape.shape, "d": ex.shape.d, "r": ex.shape.r},
                "lattice_at_s": at_s,
                "lattice_at_n": at_n,
            });
            let mut text = format!(
                "tree: {:?}, {} vertices, d = {:?}, r = {}\n",
                ex.shape.shape,
                ex.tree.len(),
                ex.shape.d,
                ex.shape.r
            );
            for (name, e) in &c.residuals {
                text.push_str(&format!(
                    "{:<5} residual {} (t = {}) extendable {}\n",
                    name, e.residual, e.t, e.extendable
                ));
            }
            text.push_str(&format!(
                "lattice modulo pi^{}: {}\n",
                spec.s(),
                !at_s.no_lattice
            ));
            text.push_str(&format!("lattice modulo pi^{}: {}\n", n, !at_n.no_lattice));
            emit(as_json, &v, text);
        }
        Command::Hensel {
            p,
            f,
            precision,
            laurent,
            trace,
            det,
            alpha,
            beta,
            n,
        } => {
            let spec = if laurent {
                RingSpec::laurent(p, precision)
            } else {
                RingSpec::unramified(p, f, precision)
            };
            let ring = Ring::new(spec)?;
            let poly = MonicQuadratic::from_trace_det(&ring.from_int(trace), &ring.from_int(det));
            let fac = hensel_quadratic(&poly, &ring.from_int(alpha), &ring.from_int(beta), n)?;
            let text = format!(
                "{}\nalpha {}\nbeta  {}\ngap   {}\nexact {}\n",
                poly, fac.alpha, fac.beta, fac.gap, fac.exact
            );
            emit(as_json, &serde_json::to_value(&fac)?, text);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {:#}", e);
            if e.downcast_ref::<Error>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
