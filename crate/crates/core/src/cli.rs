//! Command-line front end. Every command prints records of `key=value`
//! pairs, one record per line, or JSON objects with `--format json-lines`.
//!
//! Exit status is 0 on success, 1 when the requested object does not exist
//! (no asymmetrizing set, no certificate, failed asymmetrization) and 2 on
//! bad usage or malformed input.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use thiserror::Error;

use crate::asym::{
    count_rooted, count_unrooted, enumerate_rooted, find_set, motion, motion_rooted,
    unrank_unrooted, verify_set, AsymSet, SetContext,
};
use crate::generate::random_tree;
use crate::graph::RootedGraph;
use crate::oracle::{graph_automorphisms, oracle_count_asym, oracle_motion, support, Caps};
use crate::presented::{
    asym_certificate, classify, count_presented, minimize, motion_presented, rank_presented,
    unfold, PresentedError, TreePresentation, MAX_UNFOLD,
};
use crate::tree::{parse_tree_input, CenterResult, RootedTree, TreeInput, VertexId};
use crate::treelike::{
    asymmetrize_treelike, check_treelike, contract_even_levels, extract_forest, lift_asym_set,
    unexposed, Asymmetrization, LiftMode,
};

#[derive(Parser, Debug)]
#[command(name = "asymtree", version, about = "Asymmetrizing sets of trees")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    JsonLines,
}

/// Input file; standard input when absent or `-`.
#[derive(Args, Debug)]
struct Input {
    input: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Canonical code of a rooted or unrooted tree.
    Canon(Input),
    /// Twin classes of every vertex of a rooted tree.
    Similarity(Input),
    /// Central vertex or edge.
    Center(Input),
    /// Number of inequivalent asymmetrizing sets.
    Count(Input),
    /// Least number of vertices moved by a non-trivial automorphism.
    Motion(Input),
    /// The first asymmetrizing set.
    Find(Input),
    /// Asymmetrizing sets in order, one per orbit.
    Enumerate {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 100)]
        limit: usize,
    },
    /// Checks whether a set of labels is asymmetrizing.
    Verify {
        #[command(flatten)]
        input: Input,
        /// Comma-separated labels; empty for the empty set.
        #[arg(long)]
        set: String,
    },
    /// Brute-force reference computations on small trees and graphs.
    Oracle {
        #[command(subcommand)]
        command: OracleCommand,
    },
    /// Presented infinite trees.
    Presented {
        #[command(subcommand)]
        command: PresentedCommand,
    },
    /// Rooted graphs with unique shortest-path parents.
    Treelike {
        #[command(subcommand)]
        command: TreelikeCommand,
    },
    /// Merges each even-depth vertex of a rooted tree with its children.
    Contract(Input),
    /// Lifts an asymmetrizing set of the contracted tree.
    Lift {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = ModeArg::Plain)]
        mode: ModeArg,
        /// Comma-separated labels of contracted vertices.
        #[arg(long)]
        set: String,
    },
    /// Seeded random rooted tree.
    RandomTree {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand, Debug)]
enum OracleCommand {
    /// Asymmetrizing orbits by subset sweep.
    Count(Input),
    /// Motion by automorphism search.
    Motion(Input),
    /// Automorphism group order.
    Aut {
        #[command(flatten)]
        input: Input,
        /// Also print every element.
        #[arg(long)]
        list: bool,
    },
}

#[derive(Subcommand, Debug)]
enum PresentedCommand {
    /// Kind and size.
    Classify(Input),
    /// Asymmetrizing count and the rule used.
    Count(Input),
    Motion(Input),
    /// Rank of a rayless presentation.
    Rank(Input),
    /// All counting quantities at once.
    Report(Input),
    /// Merges classes with isomorphic unfoldings.
    Minimize(Input),
    /// Finite truncation.
    Unfold {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        depth: usize,
    },
    /// Asymmetrizing set of a finite truncation.
    Certificate {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        depth: usize,
    },
}

#[derive(Subcommand, Debug)]
enum TreelikeCommand {
    /// Unique-parent check for every vertex closer than the horizon.
    Check {
        #[command(flatten)]
        input: Input,
        /// Defaults to the eccentricity of the root.
        #[arg(long)]
        horizon: Option<usize>,
    },
    /// Edges to unique parents and their components.
    Forest(Input),
    /// Asymmetrizes the graph component by component.
    Asymmetrize(Input),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Plain,
    Augmented,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Domain(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Domain(_) => 1,
            CliError::Input(_) | CliError::Io(_) => 2,
        }
    }
}

fn input_err(e: impl std::fmt::Display) -> CliError {
    CliError::Input(e.to_string())
}

type Record = Vec<(&'static str, String)>;

struct Output<'a> {
    format: Format,
    out: &'a mut dyn Write,
}

impl Output<'_> {
    fn record(&mut self, fields: &[(&str, String)]) -> io::Result<()> {
        let line = match self.format {
            Format::Plain => fields
                .iter()
                .map(|(k, v)| format!("{k}={v}"))
                .collect::<Vec<_>>()
                .join(" "),
            Format::JsonLines => {
                let body: Vec<String> = fields
                    .iter()
                    .map(|(k, v)| format!("{}:{}", serde_json::json!(k), serde_json::json!(v)))
                    .collect();
                format!("{{{}}}", body.join(","))
            }
        };
        writeln!(self.out, "{line}")
    }
}

/// Runs one command; returns the exit status.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(stderr, "{text}");
                2
            } else {
                let _ = write!(stdout, "{text}");
                0
            };
        }
    };
    let mut out = Output {
        format: cli.format,
        out: stdout,
    };
    match dispatch(cli.command, stdin, &mut out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "asymtree: {e}");
            e.code()
        }
    }
}

fn read_input(input: &Input, stdin: &mut dyn Read) -> Result<String, CliError> {
    match &input.input {
        Some(path) if path.as_os_str() != "-" => fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display()))),
        _ => {
            let mut text = String::new();
            stdin.read_to_string(&mut text)?;
            Ok(text)
        }
    }
}

fn tree_input(input: &Input, stdin: &mut dyn Read) -> Result<TreeInput, CliError> {
    parse_tree_input(&read_input(input, stdin)?).map_err(input_err)
}

fn rooted_input(input: &Input, stdin: &mut dyn Read) -> Result<RootedTree, CliError> {
    match tree_input(input, stdin)? {
        TreeInput::Rooted(t) => Ok(t),
        TreeInput::Unrooted(_) => Err(CliError::Input("expected a rooted tree".into())),
    }
}

fn graph_input(input: &Input, stdin: &mut dyn Read) -> Result<RootedGraph, CliError> {
    RootedGraph::parse(&read_input(input, stdin)?).map_err(input_err)
}

fn presentation_input(input: &Input, stdin: &mut dyn Read) -> Result<TreePresentation, CliError> {
    TreePresentation::parse(&read_input(input, stdin)?).map_err(input_err)
}

fn labels_of(input: &TreeInput) -> &[String] {
    match input {
        TreeInput::Rooted(t) => t.labels(),
        TreeInput::Unrooted(t) => t.labels(),
    }
}

/// Resolves a comma-separated label list.
fn parse_set(text: &str, labels: &[String]) -> Result<Vec<VertexId>, CliError> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|l| {
            labels
                .iter()
                .position(|x| x == l)
                .ok_or_else(|| CliError::Input(format!("unknown vertex `{l}`")))
        })
        .collect()
}

fn render(labels: &[String], vs: &[VertexId], context: SetContext) -> String {
    AsymSet::new(vs.to_vec(), context).render(labels)
}

fn context_of(t: &TreeInput) -> SetContext {
    match t {
        TreeInput::Rooted(_) => SetContext::Rooted,
        TreeInput::Unrooted(_) => SetContext::Unrooted,
    }
}

fn presented_err(e: PresentedError) -> CliError {
    match e {
        PresentedError::NotRayless
        | PresentedError::NotAsymmetrizable
        | PresentedError::UnfoldTooLarge(_)
        | PresentedError::Cardinal(_) => CliError::Domain(e.to_string()),
        _ => CliError::Input(e.to_string()),
    }
}

/// Adjacency and fixed vertex of an oracle input: rooted trees fix their
/// root, unrooted trees and graphs do not.
fn oracle_input(
    input: &Input,
    stdin: &mut dyn Read,
) -> Result<(Vec<Vec<VertexId>>, Vec<String>, Option<VertexId>), CliError> {
    let text = read_input(input, stdin)?;
    if text.trim_start().starts_with("graph") {
        let g = RootedGraph::parse(&text).map_err(input_err)?;
        return Ok((g.adjacency().to_vec(), g.labels().to_vec(), None));
    }
    match parse_tree_input(&text).map_err(input_err)? {
        TreeInput::Rooted(t) => {
            let u = t.to_unrooted();
            Ok((u.adjacency().to_vec(), t.labels().to_vec(), Some(t.root())))
        }
        TreeInput::Unrooted(u) => Ok((u.adjacency().to_vec(), u.labels().to_vec(), None)),
    }
}

fn dispatch(command: Command, stdin: &mut dyn Read, out: &mut Output) -> Result<(), CliError> {
    match command {
        Command::Canon(input) => {
            let code = match tree_input(&input, stdin)? {
                TreeInput::Rooted(t) => t.canonical_code(None),
                TreeInput::Unrooted(t) => t.canonical_code(None),
            };
            out.record(&[("code", code.to_string())])?;
        }
        Command::Similarity(input) => {
            let t = rooted_input(&input, stdin)?;
            let table = t.similarity();
            for &v in t.bfs() {
                for class in table.at(v) {
                    out.record(&[
                        ("vertex", t.label(v).to_string()),
                        ("tau", class.tau.to_string()),
                        (
                            "members",
                            render(t.labels(), &class.members, SetContext::Rooted),
                        ),
                    ])?;
                }
            }
        }
        Command::Center(input) => {
            let u = match tree_input(&input, stdin)? {
                TreeInput::Rooted(t) => t.to_unrooted(),
                TreeInput::Unrooted(u) => u,
            };
            let record: Record = match u.center() {
                CenterResult::Vertex(c) => vec![("center", u.label(c).to_string())],
                CenterResult::Edge {
                    u: a,
                    v: b,
                    halves_isomorphic,
                } => vec![
                    ("center", format!("{},{}", u.label(a), u.label(b))),
                    ("halves_isomorphic", halves_isomorphic.to_string()),
                ],
            };
            out.record(&record)?;
        }
        Command::Count(input) => {
            let count = match tree_input(&input, stdin)? {
                TreeInput::Rooted(t) => count_rooted(&t),
                TreeInput::Unrooted(t) => count_unrooted(&t),
            };
            out.record(&[("count", count.to_string())])?;
        }
        Command::Motion(input) => {
            let m = match tree_input(&input, stdin)? {
                TreeInput::Rooted(t) => motion_rooted(&t),
                TreeInput::Unrooted(t) => motion(&t),
            };
            out.record(&[("motion", m.to_string())])?;
        }
        Command::Find(input) => {
            let t = tree_input(&input, stdin)?;
            let set = find_set(&t)
                .ok_or_else(|| CliError::Domain("no asymmetrizing set (count=0)".into()))?;
            out.record(&[("set", set.render(labels_of(&t)))])?;
        }
        Command::Enumerate { input, limit } => match tree_input(&input, stdin)? {
            TreeInput::Rooted(t) => {
                for (i, set) in enumerate_rooted(&t, Some(limit)).enumerate() {
                    out.record(&[("index", i.to_string()), ("set", set.render(t.labels()))])?;
                }
            }
            TreeInput::Unrooted(t) => {
                let count = count_unrooted(&t);
                let mut i = BigUint::ZERO;
                while i < count && i < BigUint::from(limit) {
                    let set = unrank_unrooted(&t, &i).expect("rank below count");
                    out.record(&[("index", i.to_string()), ("set", set.render(t.labels()))])?;
                    i += 1u32;
                }
            }
        },
        Command::Verify { input, set } => {
            let t = tree_input(&input, stdin)?;
            let members = parse_set(&set, labels_of(&t))?;
            let ok = verify_set(&t, &AsymSet::new(members, context_of(&t)));
            out.record(&[("verified", ok.to_string())])?;
        }
        Command::Oracle { command } => oracle(command, stdin, out)?,
        Command::Presented { command } => presented(command, stdin, out)?,
        Command::Treelike { command } => treelike(command, stdin, out)?,
        Command::Contract(input) => {
            let t = rooted_input(&input, stdin)?;
            let cm = contract_even_levels(&t);
            out.record(&[("contracted", cm.contracted.to_string())])?;
            for x in 0..cm.contracted.len() {
                let members: Vec<VertexId> = (0..t.len()).filter(|&v| cm.map[v] == x).collect();
                out.record(&[
                    ("block", t.label(cm.representative[x]).to_string()),
                    ("members", render(t.labels(), &members, SetContext::Rooted)),
                ])?;
            }
        }
        Command::Lift { input, mode, set } => {
            let t = rooted_input(&input, stdin)?;
            let cm = contract_even_levels(&t);
            let s_prime = parse_set(&set, cm.contracted.labels())?;
            let mode = match mode {
                ModeArg::Plain => LiftMode::Plain,
                ModeArg::Augmented => LiftMode::Augmented,
            };
            let lifted = lift_asym_set(&t, &cm, &s_prime, mode)
                .map_err(|e| CliError::Domain(e.to_string()))?;
            let adj = t.to_unrooted();
            let covered = unexposed(adj.adjacency(), lifted.members());
            out.record(&[
                ("set", lifted.render(t.labels())),
                (
                    "unexposed",
                    render(t.labels(), &covered, SetContext::Rooted),
                ),
            ])?;
        }
        Command::RandomTree { n, seed } => {
            let t =
                random_tree(n, seed).ok_or_else(|| CliError::Input("n must be positive".into()))?;
            out.record(&[("tree", t.to_string())])?;
        }
    }
    Ok(())
}

fn oracle(command: OracleCommand, stdin: &mut dyn Read, out: &mut Output) -> Result<(), CliError> {
    let caps = Caps::from_env();
    let domain = |e: crate::oracle::OracleError| CliError::Domain(e.to_string());
    match command {
        OracleCommand::Count(input) => {
            let (adj, _, fixed) = oracle_input(&input, stdin)?;
            let count = oracle_count_asym(&adj, fixed, &caps).map_err(domain)?;
            out.record(&[("count", count.to_string())])?;
        }
        OracleCommand::Motion(input) => {
            let (adj, _, fixed) = oracle_input(&input, stdin)?;
            let m = oracle_motion(&adj, fixed, &caps).map_err(domain)?;
            out.record(&[("motion", m.to_string())])?;
        }
        OracleCommand::Aut { input, list } => {
            let (adj, labels, fixed) = oracle_input(&input, stdin)?;
            let group = graph_automorphisms(&adj, fixed, &caps).map_err(domain)?;
            out.record(&[("order", group.order().to_string())])?;
            if list {
                for p in &group.elements {
                    let moves: Vec<String> = (0..p.len())
                        .filter(|&v| p[v] != v)
                        .map(|v| format!("{}:{}", labels[v], labels[p[v]]))
                        .collect();
                    out.record(&[
                        ("support", support(p).to_string()),
                        ("moves", moves.join(",")),
                    ])?;
                }
            }
        }
    }
    Ok(())
}

fn presented(
    command: PresentedCommand,
    stdin: &mut dyn Read,
    out: &mut Output,
) -> Result<(), CliError> {
    match command {
        PresentedCommand::Classify(input) => {
            let c = classify(&presentation_input(&input, stdin)?);
            out.record(&[
                ("classification", c.kind.to_string()),
                ("size", c.size.to_string()),
            ])?;
        }
        PresentedCommand::Count(input) => {
            let r = count_presented(&presentation_input(&input, stdin)?).map_err(presented_err)?;
            out.record(&[
                ("count", r.count.to_string()),
                ("theorem", r.theorem.to_string()),
            ])?;
        }
        PresentedCommand::Motion(input) => {
            let m = motion_presented(&presentation_input(&input, stdin)?);
            out.record(&[("motion", m.to_string())])?;
        }
        PresentedCommand::Rank(input) => {
            let r = rank_presented(&presentation_input(&input, stdin)?).map_err(presented_err)?;
            out.record(&[("rank", r.to_string())])?;
        }
        PresentedCommand::Report(input) => {
            let r = count_presented(&presentation_input(&input, stdin)?).map_err(presented_err)?;
            out.record(&r.fields())?;
        }
        PresentedCommand::Minimize(input) => {
            let m = minimize(&presentation_input(&input, stdin)?);
            for class in m.classes() {
                let slots: Vec<String> = class
                    .slots
                    .iter()
                    .map(|s| format!("{}*{}", m.name(s.class), s.mult))
                    .collect();
                out.record(&[("class", class.name.clone()), ("slots", slots.join(","))])?;
            }
        }
        PresentedCommand::Unfold { input, depth } => {
            let p = presentation_input(&input, stdin)?;
            let u = unfold(&p, depth, MAX_UNFOLD).map_err(presented_err)?;
            out.record(&[
                ("vertices", u.tree.len().to_string()),
                ("tree", u.tree.to_string()),
            ])?;
        }
        PresentedCommand::Certificate { input, depth } => {
            let p = presentation_input(&input, stdin)?;
            let cert = asym_certificate(&p, depth)
                .map_err(presented_err)?
                .ok_or_else(|| CliError::Domain(format!("no certificate at depth {depth}")))?;
            out.record(&[
                ("depth", depth.to_string()),
                ("vertices", cert.unfolding.tree.len().to_string()),
                ("set", cert.render()),
            ])?;
        }
    }
    Ok(())
}

fn treelike(
    command: TreelikeCommand,
    stdin: &mut dyn Read,
    out: &mut Output,
) -> Result<(), CliError> {
    match command {
        TreelikeCommand::Check { input, horizon } => {
            let g = graph_input(&input, stdin)?;
            let horizon = match horizon {
                Some(h) => h,
                None => g.distances().iter().flatten().copied().max().unwrap_or(0),
            };
            let report = check_treelike(&g, horizon).map_err(input_err)?;
            for c in &report.checks {
                out.record(&[
                    ("vertex", g.label(c.vertex).to_string()),
                    ("depth", c.depth.to_string()),
                    ("pass", c.witness.is_some().to_string()),
                ])?;
            }
            out.record(&[
                ("horizon", horizon.to_string()),
                ("treelike", report.passes().to_string()),
            ])?;
        }
        TreelikeCommand::Forest(input) => {
            let g = graph_input(&input, stdin)?;
            let f = extract_forest(&g).map_err(input_err)?;
            for &(a, b) in &f.edges {
                out.record(&[("edge", format!("{}-{}", g.label(a), g.label(b)))])?;
            }
            for (i, comp) in f.components.iter().enumerate() {
                out.record(&[
                    ("component", i.to_string()),
                    ("vertices", render(g.labels(), comp, SetContext::Unrooted)),
                    ("root", (i == f.root_component).to_string()),
                ])?;
            }
        }
        TreelikeCommand::Asymmetrize(input) => {
            let g = graph_input(&input, stdin)?;
            match asymmetrize_treelike(&g, &Caps::from_env()) {
                Ok(Asymmetrization::Success(set)) => {
                    out.record(&[("set", set.render(g.labels()))])?
                }
                Ok(Asymmetrization::Failure(reason)) => {
                    out.record(&[("failure", reason.to_string())])?;
                    return Err(CliError::Domain(format!(
                        "asymmetrization failed: {reason}"
                    )));
                }
                Err(e) => return Err(CliError::Domain(e.to_string())),
            }
        }
    }
    Ok(())
}
