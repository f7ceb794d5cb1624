//! Asymmetrizing sets of finite trees.
//!
//! A set `S` of vertices is asymmetrizing when the only automorphism that
//! maps `S` onto itself is the identity; for a rooted tree only root-fixing
//! automorphisms are considered. Sets are compared up to automorphism.
//!
//! For a rooted tree the number of inequivalent asymmetrizing sets is
//!
//! ```text
//! a(y) = 2 · ∏ binom(a(x), τ(x))
//! ```
//!
//! over the twin classes of the children of `y` (`x` a representative, `τ(x)`
//! the class size). The leading 2 counts the root's own membership; for
//! infinite subtrees it is absorbed since `2 · 2^κ = 2^κ`.
//!
//! The same product is a mixed-radix numbering of the inequivalent sets:
//! the root bit is the most significant digit, then one digit per twin class
//! (first class least significant) selecting a `τ`-combination of distinct
//! child ranks in colex order. Unranking gives [`find_rooted`] (rank 0) and
//! [`enumerate_rooted`].

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::cardinal::finite_binom;
use crate::tree::{CenterResult, RootedTree, Shape, UnrootedTree, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MotionResult {
    /// Least number of vertices moved by a non-identity automorphism.
    Moved(usize),
    Asymmetric,
}

impl fmt::Display for MotionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MotionResult::Moved(n) => write!(f, "{n}"),
            MotionResult::Asymmetric => f.write_str("asymmetric"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SetContext {
    Rooted,
    Unrooted,
}

/// A vertex subset of a tree, with the symmetry notion it is meant for.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AsymSet {
    members: Vec<VertexId>,
    pub context: SetContext,
}

impl AsymSet {
    pub fn new(mut members: Vec<VertexId>, context: SetContext) -> AsymSet {
        members.sort_unstable();
        members.dedup();
        AsymSet { members, context }
    }

    /// Members in increasing vertex id.
    pub fn members(&self) -> &[VertexId] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    pub fn coloring(&self, n: usize) -> Vec<bool> {
        let mut colors = vec![false; n];
        for &v in &self.members {
            colors[v] = true;
        }
        colors
    }

    /// `{a,b,...}` with labels sorted.
    pub fn render(&self, labels: &[String]) -> String {
        let mut names: Vec<&str> = self.members.iter().map(|&v| labels[v].as_str()).collect();
        names.sort_unstable();
        format!("{{{}}}", names.join(","))
    }
}

/// Per-vertex counts of a shape: `a(v)`, and for every twin run of `v` the
/// number of ways to pick distinct child colorings.
struct Counts {
    a: Vec<BigUint>,
    runs: Vec<Vec<BigUint>>,
    inner: Vec<BigUint>,
}

impl Counts {
    fn new(shape: &Shape) -> Counts {
        let n = shape.children.len();
        let mut a = vec![BigUint::zero(); n];
        let mut runs = vec![Vec::new(); n];
        let mut inner = vec![BigUint::zero(); n];
        for &v in shape.order.iter().rev() {
            let mut prod = BigUint::one();
            let mut digits = Vec::new();
            for run in shape.twin_runs(v) {
                let ways = finite_binom(&a[run[0]], &BigUint::from(run.len()))
                    .expect("counts of an n-vertex tree stay below 2^n");
                prod *= &ways;
                digits.push(ways);
            }
            a[v] = &prod << 1;
            runs[v] = digits;
            inner[v] = prod;
        }
        Counts { a, runs, inner }
    }
}

/// Number of inequivalent asymmetrizing sets of a rooted tree.
pub fn count_rooted(tree: &RootedTree) -> BigUint {
    Counts::new(&tree.shape).a[tree.root()].clone()
}

/// Number of inequivalent asymmetrizing sets of an unrooted tree.
///
/// Every automorphism fixes the center. A central vertex reduces to the
/// rooted count there; a central edge with isomorphic halves admits the
/// half swap, so the halves must get distinct colorings (`binom(h, 2)`).
pub fn count_unrooted(tree: &UnrootedTree) -> BigUint {
    let rooting = tree.rooting();
    let counts = Counts::new(&rooting.shape);
    match rooting.center {
        CenterResult::Vertex(c) => counts.a[c].clone(),
        CenterResult::Edge {
            u,
            v,
            halves_isomorphic: false,
        } => &counts.a[u] * &counts.a[v],
        CenterResult::Edge { u, .. } => {
            finite_binom(&counts.a[u], &BigUint::from(2u32)).expect("bounded by 2^n")
        }
    }
}

fn shape_motion(shape: &Shape) -> Option<usize> {
    let sizes = shape.subtree_sizes();
    shape
        .order
        .iter()
        .flat_map(|&v| shape.twin_runs(v))
        .filter(|run| run.len() >= 2)
        .map(|run| 2 * sizes[run[0]])
        .min()
}

/// Motion of a rooted tree under root-fixing automorphisms: the cheapest
/// swap of two twin subtrees.
pub fn motion_rooted(tree: &RootedTree) -> MotionResult {
    shape_motion(&tree.shape).map_or(MotionResult::Asymmetric, MotionResult::Moved)
}

/// Motion of an unrooted tree: the cheapest twin swap below the center, or
/// the whole tree when the two halves of a central edge can be exchanged.
pub fn motion(tree: &UnrootedTree) -> MotionResult {
    let rooting = tree.rooting();
    let twin = shape_motion(&rooting.shape);
    let swap = matches!(
        rooting.center,
        CenterResult::Edge {
            halves_isomorphic: true,
            ..
        }
    )
    .then_some(tree.len());
    match (twin, swap) {
        (Some(a), Some(b)) => MotionResult::Moved(a.min(b)),
        (Some(a), None) | (None, Some(a)) => MotionResult::Moved(a),
        (None, None) => MotionResult::Asymmetric,
    }
}

fn coloring_of(n: usize, set: &[VertexId]) -> Option<Vec<bool>> {
    let mut colors = vec![false; n];
    for &v in set {
        *colors.get_mut(v)? = true;
    }
    Some(colors)
}

/// True iff no non-identity root-fixing automorphism preserves `set`.
///
/// Decided with colored class ranks: the colored tree is asymmetric iff the
/// children of every vertex have pairwise distinct colored subtrees.
pub fn verify_rooted(tree: &RootedTree, set: &[VertexId]) -> bool {
    let Some(colors) = coloring_of(tree.len(), set) else {
        return false;
    };
    let ranks = tree.shape.colored_ranks(&colors);
    tree.shape.colored_asymmetric(&ranks)
}

/// True iff no non-identity automorphism preserves `set`.
pub fn verify_unrooted(tree: &UnrootedTree, set: &[VertexId]) -> bool {
    let Some(colors) = coloring_of(tree.len(), set) else {
        return false;
    };
    let rooting = tree.rooting();
    let ranks = rooting.shape.colored_ranks(&colors);
    if !rooting.shape.colored_asymmetric(&ranks) {
        return false;
    }
    match rooting.center {
        CenterResult::Edge {
            u,
            v,
            halves_isomorphic: true,
        } => ranks[u] != ranks[v],
        _ => true,
    }
}

/// Verifies an [`AsymSet`] against a tree of matching kind.
pub fn verify_set(tree: &crate::tree::TreeInput, set: &AsymSet) -> bool {
    match tree {
        crate::tree::TreeInput::Rooted(t) => verify_rooted(t, set.members()),
        crate::tree::TreeInput::Unrooted(t) => verify_unrooted(t, set.members()),
    }
}

/// The `rank`-th `k`-subset of `{0, 1, ...}` in colex order, ascending.
pub(crate) fn unrank_colex(rank: &BigUint, k: usize) -> Vec<BigUint> {
    if rank.is_zero() {
        return (0..k).map(BigUint::from).collect();
    }
    let mut rank = rank.clone();
    let mut out = Vec::with_capacity(k);
    for i in (1..=k).rev() {
        let ik = BigUint::from(i);
        let binom = |m: &BigUint| finite_binom(m, &ik).expect("bounded by the rank");
        // Largest m with binom(m, i) <= rank; binom(i - 1, i) = 0.
        let mut lo = BigUint::from(i - 1);
        let mut step = BigUint::one();
        let mut hi = &lo + &step;
        while binom(&hi) <= rank {
            lo = hi.clone();
            step <<= 1;
            hi = &lo + &step;
        }
        while &hi - &lo > BigUint::one() {
            let mid = (&lo + &hi) >> 1;
            if binom(&mid) <= rank {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        rank -= binom(&lo);
        out.push(lo);
    }
    out.reverse();
    out
}

fn unrank_into(
    shape: &Shape,
    counts: &Counts,
    root: VertexId,
    rank: BigUint,
    out: &mut Vec<VertexId>,
) {
    let mut stack = vec![(root, rank)];
    while let Some((v, rank)) = stack.pop() {
        let (bit, mut rest) = rank.div_rem(&counts.inner[v]);
        if !bit.is_zero() {
            out.push(v);
        }
        for (run, radix) in shape.twin_runs(v).zip(&counts.runs[v]) {
            let (quot, digit) = rest.div_rem(radix);
            rest = quot;
            let combo = unrank_colex(&digit, run.len());
            // The first twin (least label) takes the largest child rank.
            for (&child, r) in run.iter().zip(combo.into_iter().rev()) {
                stack.push((child, r));
            }
        }
    }
}

fn finish(mut members: Vec<VertexId>, context: SetContext) -> AsymSet {
    members.sort_unstable();
    AsymSet { members, context }
}

/// Lazily unranked asymmetrizing sets of a rooted tree, one per equivalence
/// class, in rank order.
pub struct AsymSets<'a> {
    tree: &'a RootedTree,
    counts: Counts,
    next: BigUint,
    end: BigUint,
}

impl Iterator for AsymSets<'_> {
    type Item = AsymSet;

    fn next(&mut self) -> Option<AsymSet> {
        if self.next >= self.end {
            return None;
        }
        let mut members = Vec::new();
        unrank_into(
            &self.tree.shape,
            &self.counts,
            self.tree.root(),
            self.next.clone(),
            &mut members,
        );
        self.next += 1u32;
        Some(finish(members, SetContext::Rooted))
    }
}

/// Pairwise inequivalent asymmetrizing sets of a rooted tree in rank order;
/// with no limit the stream has exactly [`count_rooted`] items.
pub fn enumerate_rooted(tree: &RootedTree, limit: Option<usize>) -> AsymSets<'_> {
    let counts = Counts::new(&tree.shape);
    let total = counts.a[tree.root()].clone();
    let end = match limit {
        Some(l) => total.min(BigUint::from(l)),
        None => total,
    };
    AsymSets {
        tree,
        counts,
        next: BigUint::zero(),
        end,
    }
}

/// The rank-`rank` asymmetrizing set of a rooted tree, if `rank < count`.
pub fn unrank_rooted(tree: &RootedTree, rank: &BigUint) -> Option<AsymSet> {
    let counts = Counts::new(&tree.shape);
    if *rank >= counts.a[tree.root()] {
        return None;
    }
    let mut members = Vec::new();
    unrank_into(
        &tree.shape,
        &counts,
        tree.root(),
        rank.clone(),
        &mut members,
    );
    Some(finish(members, SetContext::Rooted))
}

/// First asymmetrizing set in rank order, or `None` when the count is zero.
pub fn find_rooted(tree: &RootedTree) -> Option<AsymSet> {
    unrank_rooted(tree, &BigUint::zero())
}

/// The rank-`rank` asymmetrizing set of an unrooted tree.
pub fn unrank_unrooted(tree: &UnrootedTree, rank: &BigUint) -> Option<AsymSet> {
    let rooting = tree.rooting();
    let shape = &rooting.shape;
    let counts = Counts::new(shape);
    let mut members = Vec::new();
    match rooting.center {
        CenterResult::Vertex(c) => {
            if *rank >= counts.a[c] {
                return None;
            }
            unrank_into(shape, &counts, c, rank.clone(), &mut members);
        }
        CenterResult::Edge {
            u,
            v,
            halves_isomorphic: false,
        } => {
            if *rank >= &counts.a[u] * &counts.a[v] {
                return None;
            }
            let (ru, rv) = rank.div_rem(&counts.a[v]);
            unrank_into(shape, &counts, u, ru, &mut members);
            unrank_into(shape, &counts, v, rv, &mut members);
        }
        CenterResult::Edge { u, v, .. } => {
            let total = finite_binom(&counts.a[u], &BigUint::from(2u32)).expect("bounded");
            if *rank >= total {
                return None;
            }
            let pair = unrank_colex(rank, 2);
            unrank_into(shape, &counts, u, pair[1].clone(), &mut members);
            unrank_into(shape, &counts, v, pair[0].clone(), &mut members);
        }
    }
    Some(finish(members, SetContext::Unrooted))
}

pub fn find_unrooted(tree: &UnrootedTree) -> Option<AsymSet> {
    unrank_unrooted(tree, &BigUint::zero())
}

/// Finds a set for either kind of tree.
pub fn find_set(tree: &crate::tree::TreeInput) -> Option<AsymSet> {
    match tree {
        crate::tree::TreeInput::Rooted(t) => find_rooted(t),
        crate::tree::TreeInput::Unrooted(t) => find_unrooted(t),
    }
}

/// `count` as `u64` when it fits (for small fixtures and reports).
pub fn small(count: &BigUint) -> Option<u64> {
    count.to_u64()
}
