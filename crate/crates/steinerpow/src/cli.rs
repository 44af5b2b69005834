//! Command-line front end. Exit codes: 0 accept/pass, 1 reject/fail,
//! 2 usage or parse error, 3 oracle budget exhausted.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand};

use crate::chordal::clique_arrangement;
use crate::cliquetree::build_final_clique_tree;
use crate::dp::{recognize_4_steiner, recognize_6_leaf, RejectReason};
use crate::error::Error;
use crate::graph::Graph;
use crate::sweep::{self, Recognizers, Scale};
use crate::testkit::{oracle_leaf_root, oracle_steiner_root, random_leaf_instance, random_yes_instance, OracleBudget, OracleOutcome};
use crate::tree::{verify_leaf_root, verify_root, NodeLabel, SteinerTree};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "steinerpow", version, about = "4-Steiner power and 6-leaf power recognition")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide the graph and print a witness tree on success
    Recognize(RecognizeArgs),
    /// Check a tree against a graph
    Verify(VerifyArgs),
    /// Exhaustive search (small graphs only)
    Oracle(OracleArgs),
    /// Write a random graph together with its witness
    Gen(GenArgs),
    /// Dump the clique arrangement (and optionally the rooted clique tree)
    Arrange(ArrangeArgs),
    /// Run the acceptance criteria and print a pass/fail table
    Sweep(SweepArgs),
}

#[derive(Args, Debug)]
#[command(group = clap::ArgGroup::new("mode").required(true).args(["k4", "leaf6"]))]
pub struct RecognizeArgs {
    #[arg(long)]
    pub k4: bool,
    #[arg(long)]
    pub leaf6: bool,
    pub graph: PathBuf,
    /// Write the tree here instead of stdout
    #[arg(short, long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long)]
    pub k: usize,
    /// Require every real node to be a leaf
    #[arg(long)]
    pub leaf: bool,
    pub graph: PathBuf,
    pub tree: PathBuf,
}

#[derive(Args, Debug)]
pub struct OracleArgs {
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub leaf: bool,
    #[arg(long)]
    pub max_steiner: Option<usize>,
    #[arg(long, default_value_t = 5_000_000)]
    pub node_cap: usize,
    /// Seconds
    #[arg(long)]
    pub time_cap: Option<f64>,
    pub graph: PathBuf,
}

#[derive(Args, Debug)]
pub struct GenArgs {
    #[arg(long, default_value_t = 4)]
    pub k: usize,
    #[arg(long)]
    pub reals: usize,
    /// Steiner nodes (internal nodes with --leaf)
    #[arg(long, default_value_t = 0)]
    pub steiner: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Reals are leaves hung on a Steiner tree
    #[arg(long)]
    pub leaf: bool,
    /// Output prefix; writes <prefix>.graph and <prefix>.tree
    #[arg(long, default_value = "instance")]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct ArrangeArgs {
    pub graph: PathBuf,
    /// Also print the rooted clique tree with convergence flags
    #[arg(long)]
    pub tree: bool,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    /// Reduced sizes
    #[arg(long)]
    pub small: bool,
    /// Comma-separated criterion ids
    #[arg(long, value_delimiter = ',')]
    pub only: Vec<usize>,
    /// Run with a deliberately broken recognizer: reject-trees | subdivide
    #[arg(long)]
    pub mutate: Option<String>,
}

struct Failure {
    code: i32,
    msg: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure { code: EXIT_USAGE, msg: e.to_string() }
    }
}

fn usage(msg: String) -> Failure {
    Failure { code: EXIT_USAGE, msg }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn read_graph(path: &Path) -> Result<Graph, Failure> {
    Graph::parse_edge_list(&read(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn read_tree(path: &Path) -> Result<SteinerTree, Failure> {
    SteinerTree::parse(&read(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

/// Parses `args` (program name first) and runs the command; output goes to
/// `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return EXIT_USAGE;
            }
            let _ = write!(out, "{}", e.render());
            return EXIT_OK;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.msg);
            f.code
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    match cmd {
        Command::Recognize(a) => recognize(a, out),
        Command::Verify(a) => verify(a, out),
        Command::Oracle(a) => oracle(a, out),
        Command::Gen(a) => gen(a, out),
        Command::Arrange(a) => arrange(a, out),
        Command::Sweep(a) => run_sweep(a, out),
    }
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    out.write_all(text.as_bytes()).map_err(|e| usage(e.to_string()))
}

fn recognize(a: RecognizeArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let g = read_graph(&a.graph)?;
    let res = if a.leaf6 { recognize_6_leaf(&g) } else { recognize_4_steiner(&g) };
    match res {
        Ok(t) => {
            match &a.out {
                Some(p) => write(p, &t.to_text())?,
                None => emit(out, &t.to_text())?,
            }
            Ok(EXIT_OK)
        }
        Err(r) => {
            emit(out, &format!("reject {r}\n"))?;
            Ok(EXIT_NO)
        }
    }
}

fn verify(a: VerifyArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let g = read_graph(&a.graph)?;
    let t = read_tree(&a.tree)?;
    let ok = if a.leaf { verify_leaf_root(&t, &g, a.k) } else { verify_root(&t, &g, a.k) };
    emit(out, if ok { "ok\n" } else { "fail\n" })?;
    Ok(if ok { EXIT_OK } else { EXIT_NO })
}

fn oracle(a: OracleArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let g = read_graph(&a.graph)?;
    let b = OracleBudget {
        max_steiner: a.max_steiner,
        node_cap: a.node_cap,
        time_cap: a.time_cap.map(Duration::from_secs_f64),
    };
    let res = if a.leaf { oracle_leaf_root(&g, a.k, &b) } else { oracle_steiner_root(&g, a.k, &b) };
    match res {
        OracleOutcome::Found(t) => {
            emit(out, &t.to_text())?;
            Ok(EXIT_OK)
        }
        OracleOutcome::NotFound => {
            emit(out, "no root\n")?;
            Ok(EXIT_NO)
        }
        OracleOutcome::Inconclusive => {
            emit(out, "inconclusive\n")?;
            Ok(EXIT_INCONCLUSIVE)
        }
    }
}

fn gen(a: GenArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    if a.reals == 0 {
        return Err(usage("--reals must be at least 1".into()));
    }
    if a.leaf && a.steiner == 0 {
        return Err(usage("--leaf needs --steiner >= 1".into()));
    }
    let (g, t) = if a.leaf {
        random_leaf_instance(a.k, a.reals, a.steiner, a.seed)
    } else {
        random_yes_instance(a.k, a.reals, a.steiner, a.seed)
    };
    let gp = a.out.with_extension("graph");
    let tp = a.out.with_extension("tree");
    write(&gp, &g.to_edge_list())?;
    write(&tp, &t.to_text())?;
    emit(out, &format!("{}\n{}\n", gp.display(), tp.display()))?;
    Ok(EXIT_OK)
}

fn arrange(a: ArrangeArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let g = read_graph(&a.graph)?;
    if let Err(r) = crate::dp::gate(&g) {
        emit(out, &format!("reject {r}\n"))?;
        return Ok(EXIT_NO);
    }
    for comp in g.connected_components() {
        let (sub, map) = g.induced_subgraph(&comp)?;
        emit(out, &format!("# component {comp} (local ids, map {map:?})\n"))?;
        emit(out, &clique_arrangement(&sub)?.dump())?;
        if a.tree {
            emit(out, &build_final_clique_tree(&sub)?.dump())?;
        }
    }
    Ok(EXIT_OK)
}

fn reject_trees(g: &Graph) -> Result<SteinerTree, RejectReason> {
    if g.n() >= 4 && g.m() + 1 == g.n() && g.is_connected() {
        return Err(RejectReason::DpExhausted);
    }
    recognize_4_steiner(g)
}

fn reject_trees_leaf(g: &Graph) -> Result<SteinerTree, RejectReason> {
    if g.n() >= 4 && g.m() + 1 == g.n() && g.is_connected() {
        return Err(RejectReason::DpExhausted);
    }
    recognize_6_leaf(g)
}

fn subdivided(t: SteinerTree) -> SteinerTree {
    let Some(&(a, b)) = t.edges().first() else { return t };
    let labels: Vec<NodeLabel> = t.labels().iter().copied().chain(std::iter::once(NodeLabel::Steiner)).collect();
    let s = t.len();
    let mut edges: Vec<(usize, usize)> = t.edges().into_iter().filter(|&e| e != (a, b)).collect();
    edges.extend([(a, s), (s, b)]);
    SteinerTree::from_edges(labels, &edges, t.root()).expect("subdivision of a tree")
}

fn subdivide(g: &Graph) -> Result<SteinerTree, RejectReason> {
    recognize_4_steiner(g).map(subdivided)
}

fn subdivide_leaf(g: &Graph) -> Result<SteinerTree, RejectReason> {
    recognize_6_leaf(g).map(subdivided)
}

fn run_sweep(a: SweepArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let r = match a.mutate.as_deref() {
        None => Recognizers::default(),
        Some("reject-trees") => Recognizers { steiner4: reject_trees, leaf6: reject_trees_leaf },
        Some("subdivide") => Recognizers { steiner4: subdivide, leaf6: subdivide_leaf },
        Some(m) => return Err(usage(format!("unknown mutation '{m}'"))),
    };
    if let Some(&bad) = a.only.iter().find(|&&i| !(1..=8).contains(&i)) {
        return Err(usage(format!("no criterion {bad}")));
    }
    let scale = if a.small { Scale::Small } else { Scale::Full };
    let results = sweep::run(&r, scale, &a.only);
    for res in &results {
        emit(out, &format!("{res}\n"))?;
    }
    let passed = results.iter().filter(|r| r.pass).count();
    emit(out, &format!("{passed}/{} criteria passed\n", results.len()))?;
    Ok(if passed == results.len() { EXIT_OK } else { EXIT_NO })
}
