//! Even-level contraction of rooted trees and asymmetrizing sets of rooted
//! graphs built along unique shortest-path parents.
//!
//! Contracting every edge from an even-depth vertex to its children turns a
//! rooted tree `T` into `T'`; each vertex of `T'` is identified with its
//! even-depth member. A root-fixing automorphism of `T` is determined by its
//! action on `T'`, so an asymmetrizing set of `T'` lifts to one of `T`.
//!
//! In a rooted graph `(G, w)`, the edges `yx` where `y` is the only neighbor
//! of `x` one step closer to `w` span a forest `F`. Asymmetrizing the
//! components of `F` pairwise inequivalently, with a recognizable root,
//! asymmetrizes `G`; on finite graphs this is an attempt that may fail.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use crate::asym::{verify_rooted, verify_unrooted, AsymSet, SetContext};
use crate::graph::RootedGraph;
use crate::oracle::{oracle_is_asymmetrizing, Caps, OracleError};
use crate::tree::{CanonicalCode, RootedTree, UnrootedTree, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreelikeError {
    #[error("graph is disconnected")]
    Disconnected,
    #[error("horizon {horizon} exceeds the root eccentricity {eccentricity}")]
    HorizonTooLarge { horizon: usize, eccentricity: usize },
    #[error("the set does not asymmetrize the contracted tree")]
    NotAsymmetrizing,
    #[error("vertex {0} is not a vertex of the contracted tree")]
    NotContracted(VertexId),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

/// Result of [`contract_even_levels`].
#[derive(Debug, Clone)]
pub struct ContractionMap {
    /// `T'`, labeled by the even-depth representatives.
    pub contracted: RootedTree,
    /// Vertex of `T'` containing each vertex of `T`.
    pub map: Vec<VertexId>,
    /// Even-depth vertex of `T` standing for each vertex of `T'`.
    pub representative: Vec<VertexId>,
}

impl ContractionMap {
    /// The `T'` vertex represented by `v`, if `v` has even depth.
    pub fn contracted_vertex(&self, v: VertexId) -> Option<VertexId> {
        let x = self.map[v];
        (self.representative[x] == v).then_some(x)
    }
}

/// Merges every even-depth vertex with its children.
pub fn contract_even_levels(tree: &RootedTree) -> ContractionMap {
    let depth = tree.depths();
    let mut representative = Vec::new();
    let mut map = vec![usize::MAX; tree.len()];
    for &v in tree.bfs() {
        if depth[v].is_multiple_of(2) {
            map[v] = representative.len();
            representative.push(v);
        } else {
            map[v] = map[tree.parent(v).expect("odd depth has a parent")];
        }
    }
    let labels = representative
        .iter()
        .map(|&v| tree.label(v).to_string())
        .collect();
    let parents = representative
        .iter()
        .map(|&v| tree.parent(v).map(|p| map[p]))
        .collect();
    let contracted = RootedTree::from_parents(labels, parents).expect("contraction is a tree");
    ContractionMap {
        contracted,
        map,
        representative,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LiftMode {
    /// The representatives of `S'`.
    Plain,
    /// The representatives plus the children of the root, or only the first
    /// child of the root all of whose children are in `S'`.
    Augmented,
}

/// Lifts an asymmetrizing set `s_prime` of `T'` to one of `T`.
pub fn lift_asym_set(
    tree: &RootedTree,
    map: &ContractionMap,
    s_prime: &[VertexId],
    mode: LiftMode,
) -> Result<AsymSet, TreelikeError> {
    let n_prime = map.contracted.len();
    if let Some(&bad) = s_prime.iter().find(|&&x| x >= n_prime) {
        return Err(TreelikeError::NotContracted(bad));
    }
    if !verify_rooted(&map.contracted, s_prime) {
        return Err(TreelikeError::NotAsymmetrizing);
    }
    let mut in_prime = vec![false; n_prime];
    for &x in s_prime {
        in_prime[x] = true;
    }
    let mut members: Vec<VertexId> = s_prime.iter().map(|&x| map.representative[x]).collect();
    if mode == LiftMode::Augmented {
        let w = tree.root();
        let exceptional = tree
            .children(w)
            .iter()
            .copied()
            .find(|&u| tree.children(u).iter().all(|&c| in_prime[map.map[c]]));
        match exceptional {
            Some(u) => members.push(u),
            None => members.extend_from_slice(tree.children(w)),
        }
    }
    Ok(AsymSet::new(members, SetContext::Rooted))
}

/// Members of `set` all of whose neighbors are in `set`.
pub fn unexposed(adj: &[Vec<VertexId>], set: &[VertexId]) -> Vec<VertexId> {
    let mut inside = vec![false; adj.len()];
    for &v in set {
        inside[v] = true;
    }
    set.iter()
        .copied()
        .filter(|&v| adj[v].iter().all(|&u| inside[u]))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexCheck {
    pub vertex: VertexId,
    pub depth: usize,
    /// A farther neighbor whose only closer neighbor is `vertex`.
    pub witness: Option<VertexId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreelikeReport {
    pub horizon: usize,
    /// Vertices closer than the horizon, by depth then id.
    pub checks: Vec<VertexCheck>,
}

impl TreelikeReport {
    pub fn passes(&self) -> bool {
        self.checks.iter().all(|c| c.witness.is_some())
    }

    pub fn failures(&self) -> impl Iterator<Item = &VertexCheck> {
        self.checks.iter().filter(|c| c.witness.is_none())
    }
}

fn depths(graph: &RootedGraph) -> Result<Vec<usize>, TreelikeError> {
    graph
        .distances()
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or(TreelikeError::Disconnected)
}

/// Closer neighbors of every vertex.
fn parents(graph: &RootedGraph, depth: &[usize]) -> Vec<Vec<VertexId>> {
    (0..graph.len())
        .map(|x| {
            graph
                .neighbors(x)
                .iter()
                .copied()
                .filter(|&y| depth[y] + 1 == depth[x])
                .collect()
        })
        .collect()
}

/// Checks, for every vertex closer to the root than `horizon`, that it is
/// the only parent of one of its children.
pub fn check_treelike(
    graph: &RootedGraph,
    horizon: usize,
) -> Result<TreelikeReport, TreelikeError> {
    let depth = depths(graph)?;
    let eccentricity = depth.iter().copied().max().unwrap_or(0);
    if horizon > eccentricity {
        return Err(TreelikeError::HorizonTooLarge {
            horizon,
            eccentricity,
        });
    }
    let parents = parents(graph, &depth);
    let mut checks: Vec<VertexCheck> = (0..graph.len())
        .filter(|&y| depth[y] < horizon)
        .map(|y| VertexCheck {
            vertex: y,
            depth: depth[y],
            witness: graph
                .neighbors(y)
                .iter()
                .copied()
                .find(|&x| depth[x] == depth[y] + 1 && parents[x] == [y]),
        })
        .collect();
    checks.sort_by_key(|c| (c.depth, c.vertex));
    Ok(TreelikeReport { horizon, checks })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForestDecomposition {
    /// `(parent, child)` edges, sorted.
    pub edges: Vec<(VertexId, VertexId)>,
    /// Vertex sets of the components, each sorted, ordered by least vertex.
    pub components: Vec<Vec<VertexId>>,
    /// Index of the component containing the root.
    pub root_component: usize,
}

/// Keeps the edges from each vertex to its parent when that parent is
/// unique.
pub fn extract_forest(graph: &RootedGraph) -> Result<ForestDecomposition, TreelikeError> {
    let depth = depths(graph)?;
    let parents = parents(graph, &depth);
    let mut edges: Vec<(VertexId, VertexId)> = parents
        .iter()
        .enumerate()
        .filter_map(|(x, ps)| match ps.as_slice() {
            [y] => Some((*y, x)),
            _ => None,
        })
        .collect();
    edges.sort_unstable();

    let n = graph.len();
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in &edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut comp = vec![usize::MAX; n];
    let mut components = Vec::new();
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = components.len();
        comp[s] = id;
        let mut members = vec![s];
        let mut head = 0;
        while head < members.len() {
            let v = members[head];
            head += 1;
            for &u in &adj[v] {
                if comp[u] == usize::MAX {
                    comp[u] = id;
                    members.push(u);
                }
            }
        }
        members.sort_unstable();
        components.push(members);
    }
    Ok(ForestDecomposition {
        edges,
        root_component: comp[graph.root()],
        components,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FailureReason {
    /// Some component has no admissible asymmetrizing set.
    Component,
    /// Isomorphic components cannot be colored pairwise inequivalently.
    Inequivalence,
    /// No admissible selection asymmetrizes the whole graph.
    Verification,
}

impl fmt::Display for FailureReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FailureReason::Component => "component",
            FailureReason::Inequivalence => "inequivalence",
            FailureReason::Verification => "verification",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Asymmetrization {
    Success(AsymSet),
    Failure(FailureReason),
}

/// A forest component as a tree with local ids.
struct Component {
    members: Vec<VertexId>,
    tree: UnrootedTree,
    /// Index of the graph root among `members`, if present.
    root: Option<usize>,
}

impl Component {
    fn new(graph: &RootedGraph, forest: &ForestDecomposition, members: &[VertexId]) -> Component {
        let local: HashMap<VertexId, usize> =
            members.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let labels = members
            .iter()
            .map(|&v| graph.label(v).to_string())
            .collect();
        let edges: Vec<(usize, usize)> = forest
            .edges
            .iter()
            .filter_map(|(a, b)| Some((*local.get(a)?, *local.get(b)?)))
            .collect();
        Component {
            members: members.to_vec(),
            tree: UnrootedTree::from_edges(labels, &edges).expect("forest components are trees"),
            root: local.get(&graph.root()).copied(),
        }
    }

    fn coloring(&self, mask: u64) -> Vec<bool> {
        (0..self.members.len())
            .map(|i| mask >> i & 1 == 1)
            .collect()
    }
}

/// Whether the local set `mask` is admissible for a component.
///
/// The root component of a root with several neighbors needs the root to be
/// the one member of the set with no neighbor outside it; every other
/// component needs all members of the set to have a neighbor outside it.
pub fn admissible(
    adj: &[Vec<VertexId>],
    colors: &[bool],
    root: Option<VertexId>,
    root_degree: usize,
) -> bool {
    let covered: Vec<VertexId> = (0..adj.len())
        .filter(|&v| colors[v] && adj[v].iter().all(|&u| colors[u]))
        .collect();
    match root {
        Some(_) if root_degree <= 1 => true,
        Some(w) => covered == [w],
        None => covered.is_empty(),
    }
}

/// Tries to asymmetrize `graph` component by component along its forest.
///
/// All admissible selections with pairwise inequivalent colorings of
/// isomorphic components are tried in order and each is checked against the
/// full automorphism group of `graph`.
pub fn asymmetrize_treelike(
    graph: &RootedGraph,
    caps: &Caps,
) -> Result<Asymmetrization, TreelikeError> {
    let n = graph.len();
    if n > caps.group_n {
        return Err(OracleError::TooLarge {
            what: "tree-like asymmetrization",
            n,
            cap: caps.group_n,
        }
        .into());
    }
    let forest = extract_forest(graph)?;
    let root_degree = graph.degree(graph.root());
    let comps: Vec<Component> = forest
        .components
        .iter()
        .map(|m| Component::new(graph, &forest, m))
        .collect();

    // Admissible asymmetrizing sets of each component, in (size, ids) order,
    // with their colored codes.
    let mut options: Vec<Vec<(u64, CanonicalCode)>> = Vec::with_capacity(comps.len());
    for c in &comps {
        let k = c.members.len();
        let mut opts: Vec<(u64, CanonicalCode)> = (0u64..1 << k)
            .filter_map(|mask| {
                let colors = c.coloring(mask);
                let set: Vec<usize> = (0..k).filter(|&i| colors[i]).collect();
                (verify_unrooted(&c.tree, &set)
                    && admissible(c.tree.adjacency(), &colors, c.root, root_degree))
                .then(|| (mask, c.tree.canonical_code(Some(&colors))))
            })
            .collect();
        if opts.is_empty() {
            return Ok(Asymmetrization::Failure(FailureReason::Component));
        }
        opts.sort_by_key(|&(mask, _)| (mask.count_ones(), local_ids(mask)));
        options.push(opts);
    }

    let shapes: Vec<CanonicalCode> = comps.iter().map(|c| c.tree.canonical_code(None)).collect();
    let mut search = Selection {
        options: &options,
        shapes: &shapes,
        chosen: Vec::new(),
        used: BTreeSet::new(),
        any_complete: false,
    };
    let mut found = None;
    search.run(&mut |chosen| {
        let mut members = Vec::new();
        for (c, &(mask, _)) in comps.iter().zip(chosen) {
            members.extend(
                (0..c.members.len())
                    .filter(|&i| mask >> i & 1 == 1)
                    .map(|i| c.members[i]),
            );
        }
        match oracle_is_asymmetrizing(graph.adjacency(), None, &members, caps) {
            Ok(true) => {
                found = Some(Ok(members));
                true
            }
            Ok(false) => false,
            Err(e) => {
                found = Some(Err(e));
                true
            }
        }
    });
    match found {
        Some(Ok(members)) => Ok(Asymmetrization::Success(AsymSet::new(
            members,
            SetContext::Unrooted,
        ))),
        Some(Err(e)) => Err(e.into()),
        None if search.any_complete => Ok(Asymmetrization::Failure(FailureReason::Verification)),
        None => Ok(Asymmetrization::Failure(FailureReason::Inequivalence)),
    }
}

fn local_ids(mask: u64) -> Vec<u32> {
    (0..64).filter(|i| mask >> i & 1 == 1).collect()
}

/// Backtracking over one admissible set per component, keeping colored
/// codes distinct among components of equal shape.
struct Selection<'a> {
    options: &'a [Vec<(u64, CanonicalCode)>],
    shapes: &'a [CanonicalCode],
    chosen: Vec<(u64, CanonicalCode)>,
    used: BTreeSet<(&'a CanonicalCode, CanonicalCode)>,
    any_complete: bool,
}

impl<'a> Selection<'a> {
    /// Calls `done` on complete selections until it returns true.
    fn run(&mut self, done: &mut dyn FnMut(&[(u64, CanonicalCode)]) -> bool) -> bool {
        let i = self.chosen.len();
        if i == self.options.len() {
            self.any_complete = true;
            return done(&self.chosen);
        }
        let shape = &self.shapes[i];
        for opt in &self.options[i] {
            let key = (shape, opt.1.clone());
            if !self.used.insert(key.clone()) {
                continue;
            }
            self.chosen.push(opt.clone());
            let stop = self.run(done);
            self.chosen.pop();
            self.used.remove(&key);
            if stop {
                return true;
            }
        }
        false
    }
}
