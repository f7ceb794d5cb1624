//! Finite trees: rooted and unrooted models, canonical codes, twin classes
//! and centers.

mod canon;
mod parse;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub use canon::CanonicalCode;
pub(crate) use canon::{bfs_order, bracket_code, class_ranks};
pub(crate) use parse::{is_label, parse_edge_list};
pub use parse::{parse_rooted, parse_tree_input, parse_unrooted, TreeInput};

pub type VertexId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("invalid label `{0}`")]
    InvalidLabel(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("not a tree: {0}")]
    NotATree(String),
    #[error("empty input")]
    Empty,
}

/// A rooted forest whose child lists are sorted by (class rank, label), so
/// twins are contiguous. Shared by rooted trees and center-rooted views of
/// unrooted trees.
#[derive(Debug, Clone)]
pub(crate) struct Shape {
    pub children: Vec<Vec<VertexId>>,
    pub parent: Vec<Option<VertexId>>,
    pub roots: Vec<VertexId>,
    pub order: Vec<VertexId>,
    pub ranks: Vec<u32>,
}

impl Shape {
    pub fn new(mut children: Vec<Vec<VertexId>>, roots: Vec<VertexId>, labels: &[String]) -> Shape {
        let n = children.len();
        let mut parent = vec![None; n];
        for (v, kids) in children.iter().enumerate() {
            for &c in kids {
                parent[c] = Some(v);
            }
        }
        let order = bfs_order(&children, &roots);
        let ranks = class_ranks(&children, &order, None);
        for kids in &mut children {
            kids.sort_by(|&a, &b| (ranks[a], &labels[a]).cmp(&(ranks[b], &labels[b])));
        }
        Shape {
            children,
            parent,
            roots,
            order,
            ranks,
        }
    }

    pub fn colored_ranks(&self, colors: &[bool]) -> Vec<u32> {
        class_ranks(&self.children, &self.order, Some(colors))
    }

    /// Children of `v` grouped into runs of equal rank (twin classes).
    pub fn twin_runs(&self, v: VertexId) -> impl Iterator<Item = &[VertexId]> {
        self.children[v].chunk_by(move |&a, &b| self.ranks[a] == self.ranks[b])
    }

    pub fn subtree_sizes(&self) -> Vec<usize> {
        let mut size = vec![1usize; self.children.len()];
        for &v in self.order.iter().rev() {
            if let Some(p) = self.parent[v] {
                if self.roots.contains(&v) {
                    continue;
                }
                size[p] += size[v];
            }
        }
        size
    }

    /// True iff every vertex's children carry pairwise distinct colored ranks.
    pub fn colored_asymmetric(&self, colored_ranks: &[u32]) -> bool {
        let mut seen = Vec::new();
        self.order.iter().all(|&v| {
            seen.clear();
            seen.extend(self.children[v].iter().map(|&c| colored_ranks[c]));
            seen.sort_unstable();
            seen.windows(2).all(|w| w[0] != w[1])
        })
    }
}

/// A finite tree with a designated root.
///
/// Vertex ids are dense `0..n`; trees parsed from text number vertices in
/// depth-first input order.
#[derive(Debug, Clone)]
pub struct RootedTree {
    labels: Vec<String>,
    pub(crate) shape: Shape,
}

impl RootedTree {
    /// Builds a tree from per-vertex labels and parent links (exactly one
    /// `None`, the root).
    pub fn from_parents(
        labels: Vec<String>,
        parents: Vec<Option<VertexId>>,
    ) -> Result<RootedTree, TreeError> {
        let n = labels.len();
        if n == 0 {
            return Err(TreeError::Empty);
        }
        if parents.len() != n {
            return Err(TreeError::NotATree("label/parent length mismatch".into()));
        }
        check_labels(&labels)?;
        let mut root = None;
        let mut children = vec![Vec::new(); n];
        for (v, p) in parents.iter().enumerate() {
            match p {
                None if root.is_some() => {
                    return Err(TreeError::NotATree("more than one root".into()))
                }
                None => root = Some(v),
                Some(p) if *p >= n => {
                    return Err(TreeError::NotATree(format!("parent {p} out of range")))
                }
                Some(p) => children[*p].push(v),
            }
        }
        let root = root.ok_or_else(|| TreeError::NotATree("no root".into()))?;
        let shape = Shape::new(children, vec![root], &labels);
        if shape.order.len() != n {
            return Err(TreeError::NotATree("parent links contain a cycle".into()));
        }
        Ok(RootedTree { labels, shape })
    }

    pub fn parse(text: &str) -> Result<RootedTree, TreeError> {
        parse_rooted(text)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn root(&self) -> VertexId {
        self.shape.roots[0]
    }

    pub fn label(&self, v: VertexId) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vertex(&self, label: &str) -> Option<VertexId> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn parent(&self, v: VertexId) -> Option<VertexId> {
        self.shape.parent[v]
    }

    /// Children in canonical order: by subtree class, then label.
    pub fn children(&self, v: VertexId) -> &[VertexId] {
        &self.shape.children[v]
    }

    /// Breadth-first order from the root.
    pub fn bfs(&self) -> &[VertexId] {
        &self.shape.order
    }

    pub fn depths(&self) -> Vec<usize> {
        let mut depth = vec![0; self.len()];
        for &v in &self.shape.order {
            if let Some(p) = self.shape.parent[v] {
                depth[v] = depth[p] + 1;
            }
        }
        depth
    }

    /// Number of vertices of the subtree hanging at `v`.
    pub fn subtree_size(&self, v: VertexId) -> usize {
        let mut count = 0;
        let mut stack = vec![v];
        while let Some(u) = stack.pop() {
            count += 1;
            stack.extend_from_slice(&self.shape.children[u]);
        }
        count
    }

    pub fn subtree_sizes(&self) -> Vec<usize> {
        self.shape.subtree_sizes()
    }

    /// Rank of each vertex's subtree class; equal ranks mean isomorphic
    /// rooted subtrees.
    pub fn class_ranks(&self) -> &[u32] {
        &self.shape.ranks
    }

    /// Canonical code of the whole tree, optionally with a vertex 2-coloring.
    pub fn canonical_code(&self, coloring: Option<&[bool]>) -> CanonicalCode {
        match coloring {
            None => bracket_code(&self.shape.children, &self.shape.ranks, self.root(), None),
            Some(colors) => {
                let ranks = self.shape.colored_ranks(colors);
                bracket_code(&self.shape.children, &ranks, self.root(), Some(colors))
            }
        }
    }

    /// Twin classes of the children of every vertex.
    pub fn similarity(&self) -> SimilarityTable {
        let classes = (0..self.len())
            .map(|v| {
                self.shape
                    .twin_runs(v)
                    .map(|run| TwinClass {
                        representative: run[0],
                        tau: run.len(),
                        members: run.to_vec(),
                    })
                    .collect()
            })
            .collect();
        SimilarityTable { classes }
    }

    pub fn to_unrooted(&self) -> UnrootedTree {
        let mut adj = vec![Vec::new(); self.len()];
        for (v, p) in self.shape.parent.iter().enumerate() {
            if let Some(p) = *p {
                adj[v].push(p);
                adj[p].push(v);
            }
        }
        UnrootedTree {
            labels: self.labels.clone(),
            adj,
        }
    }

    /// Depth-first vertex order following the canonical child order.
    pub fn preorder(&self) -> Vec<VertexId> {
        let mut out = Vec::with_capacity(self.len());
        let mut stack = vec![self.root()];
        while let Some(v) = stack.pop() {
            out.push(v);
            stack.extend(self.shape.children[v].iter().rev());
        }
        out
    }

    /// Renumbers vertices so ids follow [`RootedTree::preorder`].
    pub fn renumbered(&self) -> RootedTree {
        let pre = self.preorder();
        let mut new_id = vec![0; self.len()];
        for (i, &v) in pre.iter().enumerate() {
            new_id[v] = i;
        }
        let labels = pre.iter().map(|&v| self.labels[v].clone()).collect();
        let parents = pre
            .iter()
            .map(|&v| self.shape.parent[v].map(|p| new_id[p]))
            .collect();
        RootedTree::from_parents(labels, parents).expect("renumbering preserves validity")
    }
}

impl FromStr for RootedTree {
    type Err = TreeError;

    fn from_str(s: &str) -> Result<Self, TreeError> {
        parse_rooted(s)
    }
}

impl fmt::Display for RootedTree {
    /// Bracket serialization in canonical child order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        enum Step {
            Enter(VertexId),
            Close,
            Comma,
        }
        let mut stack = vec![Step::Enter(self.root())];
        while let Some(step) = stack.pop() {
            match step {
                Step::Close => f.write_str(")")?,
                Step::Comma => f.write_str(",")?,
                Step::Enter(v) => {
                    f.write_str(&self.labels[v])?;
                    let kids = &self.shape.children[v];
                    if !kids.is_empty() {
                        f.write_str("(")?;
                        stack.push(Step::Close);
                        for (i, &c) in kids.iter().enumerate().rev() {
                            stack.push(Step::Enter(c));
                            if i > 0 {
                                stack.push(Step::Comma);
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

fn check_labels(labels: &[String]) -> Result<(), TreeError> {
    let mut seen = HashMap::with_capacity(labels.len());
    for l in labels {
        if !is_label(l) {
            return Err(TreeError::InvalidLabel(l.clone()));
        }
        if seen.insert(l.as_str(), ()).is_some() {
            return Err(TreeError::DuplicateLabel(l.clone()));
        }
    }
    Ok(())
}

/// One class of twin siblings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwinClass {
    /// Least-labeled member.
    pub representative: VertexId,
    pub tau: usize,
    /// Members sorted by label.
    pub members: Vec<VertexId>,
}

/// For every vertex, the partition of its children into twin classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimilarityTable {
    pub classes: Vec<Vec<TwinClass>>,
}

impl SimilarityTable {
    pub fn at(&self, v: VertexId) -> &[TwinClass] {
        &self.classes[v]
    }
}

/// A finite tree without a root.
#[derive(Debug, Clone)]
pub struct UnrootedTree {
    labels: Vec<String>,
    adj: Vec<Vec<VertexId>>,
}

/// Center of a finite tree: fixed setwise by every automorphism.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CenterResult {
    Vertex(VertexId),
    /// Endpoints ordered by label.
    Edge {
        u: VertexId,
        v: VertexId,
        halves_isomorphic: bool,
    },
}

/// Center-rooted view of an unrooted tree. For a central edge the shape has
/// two roots (the halves), ordered by label.
#[derive(Debug, Clone)]
pub(crate) struct Rooting {
    pub shape: Shape,
    pub center: CenterResult,
}

impl UnrootedTree {
    pub fn from_edges(
        labels: Vec<String>,
        edges: &[(VertexId, VertexId)],
    ) -> Result<UnrootedTree, TreeError> {
        let n = labels.len();
        if n == 0 {
            return Err(TreeError::Empty);
        }
        check_labels(&labels)?;
        if edges.len() != n - 1 {
            return Err(TreeError::NotATree(format!(
                "{} vertices need {} edges, got {}",
                n,
                n - 1,
                edges.len()
            )));
        }
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in edges {
            if a >= n || b >= n || a == b {
                return Err(TreeError::NotATree(format!("bad edge ({a}, {b})")));
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        let tree = UnrootedTree { labels, adj };
        if tree.rooted_children(0).1 != n {
            return Err(TreeError::NotATree("graph is disconnected".into()));
        }
        Ok(tree)
    }

    pub fn parse(text: &str) -> Result<UnrootedTree, TreeError> {
        parse_unrooted(text)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, v: VertexId) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vertex(&self, label: &str) -> Option<VertexId> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adj[v]
    }

    pub fn adjacency(&self) -> &[Vec<VertexId>] {
        &self.adj
    }

    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::with_capacity(self.len().saturating_sub(1));
        for (a, nbrs) in self.adj.iter().enumerate() {
            out.extend(nbrs.iter().filter(|&&b| a < b).map(|&b| (a, b)));
        }
        out
    }

    /// Child lists when hanging the tree from `root`, plus the number of
    /// vertices reached.
    fn rooted_children(&self, root: VertexId) -> (Vec<Vec<VertexId>>, usize) {
        let n = self.len();
        let mut children = vec![Vec::new(); n];
        let mut seen = vec![false; n];
        seen[root] = true;
        let mut queue = vec![root];
        let mut head = 0;
        while head < queue.len() {
            let v = queue[head];
            head += 1;
            for &u in &self.adj[v] {
                if !seen[u] {
                    seen[u] = true;
                    children[v].push(u);
                    queue.push(u);
                }
            }
        }
        (children, queue.len())
    }

    pub fn rooted_at(&self, root: VertexId) -> RootedTree {
        let (children, _) = self.rooted_children(root);
        RootedTree {
            labels: self.labels.clone(),
            shape: Shape::new(children, vec![root], &self.labels),
        }
    }

    /// Central vertex or edge, found by repeatedly peeling all leaves.
    pub fn center(&self) -> CenterResult {
        self.rooting().center
    }

    fn peel(&self) -> Vec<VertexId> {
        let n = self.len();
        if n <= 2 {
            return (0..n).collect();
        }
        let mut degree: Vec<usize> = self.adj.iter().map(Vec::len).collect();
        let mut layer: Vec<VertexId> = (0..n).filter(|&v| degree[v] == 1).collect();
        let mut remaining = n;
        while remaining > 2 {
            remaining -= layer.len();
            let mut next = Vec::new();
            for &v in &layer {
                degree[v] = 0;
                for &u in &self.adj[v] {
                    if degree[u] > 0 {
                        degree[u] -= 1;
                        if degree[u] == 1 {
                            next.push(u);
                        }
                    }
                }
            }
            layer = next;
        }
        layer.sort_unstable();
        layer
    }

    pub(crate) fn rooting(&self) -> Rooting {
        let core = self.peel();
        match core.as_slice() {
            [c] => {
                let (children, _) = self.rooted_children(*c);
                Rooting {
                    shape: Shape::new(children, vec![*c], &self.labels),
                    center: CenterResult::Vertex(*c),
                }
            }
            [a, b] => {
                let (u, v) = if self.labels[*a] <= self.labels[*b] {
                    (*a, *b)
                } else {
                    (*b, *a)
                };
                let (mut children, _) = self.rooted_children(u);
                children[u].retain(|&x| x != v);
                let shape = Shape::new(children, vec![u, v], &self.labels);
                let halves_isomorphic = shape.ranks[u] == shape.ranks[v];
                Rooting {
                    shape,
                    center: CenterResult::Edge {
                        u,
                        v,
                        halves_isomorphic,
                    },
                }
            }
            _ => unreachable!("a finite tree has one or two central vertices"),
        }
    }

    /// Canonical code of the unrooted tree: the center-rooted code, with the
    /// two halves of a central edge in the smaller concatenation order.
    pub fn canonical_code(&self, coloring: Option<&[bool]>) -> CanonicalCode {
        let rooting = self.rooting();
        let shape = &rooting.shape;
        let ranks = match coloring {
            Some(c) => shape.colored_ranks(c),
            None => shape.ranks.clone(),
        };
        let code = |r| bracket_code(&shape.children, &ranks, r, coloring).0;
        match rooting.center {
            CenterResult::Vertex(c) => {
                let mut out = vec![b'V'];
                out.extend(code(c));
                CanonicalCode(out)
            }
            CenterResult::Edge { u, v, .. } => {
                let (cu, cv) = (code(u), code(v));
                let (first, second) = if cu <= cv { (cu, cv) } else { (cv, cu) };
                let mut out = vec![b'E'];
                out.extend(first);
                out.extend(second);
                CanonicalCode(out)
            }
        }
    }
}

impl FromStr for UnrootedTree {
    type Err = TreeError;

    fn from_str(s: &str) -> Result<Self, TreeError> {
        parse_unrooted(s)
    }
}

impl fmt::Display for UnrootedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "tree unrooted")?;
        if self.len() == 1 {
            return writeln!(f, "{}", self.labels[0]);
        }
        for (a, b) in self.edges() {
            writeln!(f, "{} {}", self.labels[a], self.labels[b])?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rooted(s: &str) -> RootedTree {
        parse_rooted(s).unwrap()
    }

    fn path(n: usize) -> UnrootedTree {
        let labels = (0..n).map(|i| format!("p{i}")).collect();
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        UnrootedTree::from_edges(labels, &edges).unwrap()
    }

    #[test]
    fn canonical_codes() {
        assert_eq!(
            rooted("w(a,b)").canonical_code(None),
            rooted("r(x,y)").canonical_code(None)
        );
        assert_ne!(
            rooted("w(a(b))").canonical_code(None),
            rooted("w(a,b)").canonical_code(None)
        );
        let t = rooted("w(a,b)");
        let (a, b) = (t.vertex("a").unwrap(), t.vertex("b").unwrap());
        let mut ca = vec![false; 3];
        ca[a] = true;
        let mut cb = vec![false; 3];
        cb[b] = true;
        assert_eq!(t.canonical_code(Some(&ca)), t.canonical_code(Some(&cb)));
        assert_ne!(t.canonical_code(Some(&ca)), t.canonical_code(None));
    }

    #[test]
    fn codes_ignore_child_order() {
        assert_eq!(
            rooted("r(a(b,c(d)),e)").canonical_code(None),
            rooted("r(e,a(c(d),b))").canonical_code(None)
        );
    }

    #[test]
    fn similarity_classes() {
        let t = rooted("w(a,b,c)");
        let at_w = t.similarity().at(t.root()).to_vec();
        assert_eq!(at_w.len(), 1);
        assert_eq!(at_w[0].tau, 3);
        assert_eq!(t.label(at_w[0].representative), "a");

        let t = rooted("w(a(b),c)");
        let s = t.similarity();
        assert_eq!(
            s.at(t.root()).iter().map(|c| c.tau).collect::<Vec<_>>(),
            [1, 1]
        );

        let t = rooted("w(a(x,y),b(u,v))");
        let s = t.similarity();
        assert_eq!(s.at(t.root()).len(), 1);
        assert_eq!(s.at(t.root())[0].tau, 2);
        for l in ["a", "b"] {
            let v = t.vertex(l).unwrap();
            assert_eq!(s.at(v).len(), 1);
            assert_eq!(s.at(v)[0].tau, 2);
        }
    }

    #[test]
    fn centers() {
        let p3 = path(3);
        assert_eq!(p3.center(), CenterResult::Vertex(1));
        assert_eq!(
            path(4).center(),
            CenterResult::Edge {
                u: 1,
                v: 2,
                halves_isomorphic: true
            }
        );
        // Diameter 3: peeling leaves {a, d, e} stops at the edge b-c.
        let spider = parse_unrooted("tree unrooted\na b\nb c\nc d\nc e\n").unwrap();
        assert_eq!(
            spider.center(),
            CenterResult::Edge {
                u: spider.vertex("b").unwrap(),
                v: spider.vertex("c").unwrap(),
                halves_isomorphic: false
            }
        );
        let spider = parse_unrooted("tree unrooted\na b\nb c\nc d\nc e\ne f\n").unwrap();
        assert_eq!(
            spider.center(),
            CenterResult::Vertex(spider.vertex("c").unwrap())
        );
        let lopsided = parse_unrooted("tree unrooted\na b\nb c\nc d\nb e\n").unwrap();
        match lopsided.center() {
            CenterResult::Edge {
                halves_isomorphic, ..
            } => assert!(!halves_isomorphic),
            other => panic!("{other:?}"),
        }
        assert_eq!(path(1).center(), CenterResult::Vertex(0));
        assert!(matches!(
            path(2).center(),
            CenterResult::Edge {
                halves_isomorphic: true,
                ..
            }
        ));
    }

    #[test]
    fn subtree_sizes() {
        let t = rooted("w(a,b)");
        assert_eq!(t.subtree_size(t.root()), 3);
        assert_eq!(t.subtree_size(t.vertex("a").unwrap()), 1);
        let t = rooted("w(a(b,c),d)");
        assert_eq!(t.subtree_size(t.vertex("a").unwrap()), 3);
        assert_eq!(t.subtree_sizes()[t.vertex("a").unwrap()], 3);
        assert_eq!(t.subtree_sizes()[t.root()], 5);
    }

    #[test]
    fn serialization_round_trips_up_to_isomorphism() {
        for s in ["w", "w(a,b)", "r(e,a(c(d),b))", "(*,(*,*),x(y(z)))"] {
            let t = rooted(s);
            let again = rooted(&t.to_string());
            assert_eq!(t.canonical_code(None), again.canonical_code(None), "{s}");
        }
        assert_eq!(rooted("w(b,a)").to_string(), "w(a,b)");
    }

    #[test]
    fn unrooted_codes_are_root_independent() {
        let t = rooted("a(b(c,d),e(f))").to_unrooted();
        let moved = rooted("f(e(a(b(c,d))))").to_unrooted();
        assert_eq!(t.canonical_code(None), moved.canonical_code(None));
        assert_ne!(t.canonical_code(None), path(6).canonical_code(None));
    }

    #[test]
    fn from_parents_validation() {
        let l = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
        assert!(RootedTree::from_parents(l(&["a", "b"]), vec![None, None]).is_err());
        assert!(RootedTree::from_parents(l(&["a", "b"]), vec![Some(1), Some(0)]).is_err());
        assert!(RootedTree::from_parents(l(&["a", "b c"]), vec![None, Some(0)]).is_err());
        assert!(RootedTree::from_parents(l(&["a", "b"]), vec![None, Some(0)]).is_ok());
    }
}
