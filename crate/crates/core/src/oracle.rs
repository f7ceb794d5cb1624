//! Brute-force ground truth for small graphs.
//!
//! Automorphisms are found by backtracking over vertex images, keeping every
//! pair of assigned vertices at equal distance; on a connected graph a
//! distance preserving bijection is exactly an automorphism. Nothing here
//! uses twin classes or canonical codes, so it can check the tree engine
//! independently.

use std::ops::ControlFlow;

use num_bigint::BigUint;
use num_traits::One;
use rayon::prelude::*;
use thiserror::Error;

use crate::asym::MotionResult;
use crate::tree::VertexId;

pub const MAX_N_ENV: &str = "ASYMTREE_MAX_N";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{what} needs n <= {cap}, got n = {n} (raise {MAX_N_ENV} to override)")]
    TooLarge {
        what: &'static str,
        n: usize,
        cap: usize,
    },
    #[error("automorphism group has more than {cap} elements")]
    GroupTooLarge { cap: usize },
}

/// Size limits for brute-force work.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Largest graph whose group is listed or searched.
    pub group_n: usize,
    /// Largest graph for which all `2^n` subsets are swept.
    pub sweep_n: usize,
    /// Largest explicit group listing.
    pub elements: usize,
}

impl Default for Caps {
    fn default() -> Caps {
        Caps {
            group_n: 12,
            sweep_n: 16,
            elements: 1_000_000,
        }
    }
}

impl Caps {
    /// Defaults, with both vertex caps replaced by `ASYMTREE_MAX_N` if set.
    pub fn from_env() -> Caps {
        let mut caps = Caps::default();
        if let Some(n) = std::env::var(MAX_N_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
        {
            caps.group_n = n;
            caps.sweep_n = n;
        }
        caps
    }

    pub fn with_n(n: usize) -> Caps {
        Caps {
            group_n: n,
            sweep_n: n,
            ..Caps::default()
        }
    }

    fn check(n: usize, cap: usize, what: &'static str) -> Result<(), OracleError> {
        if n > cap {
            Err(OracleError::TooLarge { what, n, cap })
        } else {
            Ok(())
        }
    }
}

/// An explicit list of permutations, `p[v]` being the image of `v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutationGroup {
    pub degree: usize,
    pub elements: Vec<Vec<VertexId>>,
    /// Set when the list is known to be a complete group.
    pub closed: bool,
}

impl PermutationGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, p: &[VertexId]) -> bool {
        self.elements.iter().any(|e| e == p)
    }

    /// Checks identity, closure under composition and inverses.
    pub fn satisfies_axioms(&self) -> bool {
        let identity: Vec<VertexId> = (0..self.degree).collect();
        if !self.contains(&identity) {
            return false;
        }
        let set: std::collections::HashSet<&[VertexId]> =
            self.elements.iter().map(Vec::as_slice).collect();
        self.elements.iter().all(|p| {
            let mut inv = vec![0; self.degree];
            for (v, &img) in p.iter().enumerate() {
                inv[img] = v;
            }
            set.contains(inv.as_slice())
                && self.elements.iter().all(|q| {
                    let pq: Vec<VertexId> = q.iter().map(|&v| p[v]).collect();
                    set.contains(pq.as_slice())
                })
        })
    }
}

pub fn support(p: &[VertexId]) -> usize {
    p.iter().enumerate().filter(|&(v, &img)| v != img).count()
}

/// Backtracking state for one search.
struct Search<'a> {
    dist: &'a [Vec<u32>],
    degree: Vec<usize>,
    colors: Option<&'a [bool]>,
    order: Vec<VertexId>,
    forced: Vec<Option<VertexId>>,
    image: Vec<VertexId>,
    used: Vec<bool>,
    moved: usize,
}

impl Search<'_> {
    fn compatible(&self, depth: usize, v: VertexId, j: VertexId) -> bool {
        if self.used[j] || self.degree[v] != self.degree[j] {
            return false;
        }
        if let Some(c) = self.colors {
            if c[v] != c[j] {
                return false;
            }
        }
        self.order[..depth]
            .iter()
            .all(|&u| self.dist[u][v] == self.dist[self.image[u]][j])
    }

    fn run<F>(&mut self, depth: usize, bound: Option<usize>, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[VertexId]) -> ControlFlow<()>,
    {
        if depth == self.order.len() {
            return visit(&self.image);
        }
        let v = self.order[depth];
        let n = self.order.len();
        for j in 0..n {
            if let Some(f) = self.forced[v] {
                if f != j {
                    continue;
                }
            }
            if !self.compatible(depth, v, j) {
                continue;
            }
            let moved = self.moved + usize::from(v != j);
            if bound.is_some_and(|b| moved >= b) && moved > 0 {
                continue;
            }
            self.image[v] = j;
            self.used[j] = true;
            let saved = self.moved;
            self.moved = moved;
            let flow = self.run(depth + 1, bound, visit);
            self.moved = saved;
            self.used[j] = false;
            flow?;
        }
        ControlFlow::Continue(())
    }
}

/// All-pairs distances, `u32::MAX` between components.
fn distance_matrix(adj: &[Vec<VertexId>]) -> Vec<Vec<u32>> {
    (0..adj.len())
        .map(|s| {
            crate::graph::bfs_distances(adj, s)
                .into_iter()
                .map(|d| d.map_or(u32::MAX, |d| d as u32))
                .collect()
        })
        .collect()
}

/// Breadth-first order over all components, so most vertices are placed
/// after a neighbor.
fn search_order(adj: &[Vec<VertexId>], first: Option<VertexId>) -> Vec<VertexId> {
    let n = adj.len();
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let starts = first.into_iter().chain(0..n);
    for s in starts {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let start = order.len();
        order.push(s);
        let mut head = start;
        while head < order.len() {
            let v = order[head];
            head += 1;
            for &u in &adj[v] {
                if !seen[u] {
                    seen[u] = true;
                    order.push(u);
                }
            }
        }
    }
    order
}

/// A prepared graph for repeated automorphism searches.
pub struct Automorphisms<'a> {
    adj: &'a [Vec<VertexId>],
    dist: Vec<Vec<u32>>,
    fixed: Option<VertexId>,
}

impl<'a> Automorphisms<'a> {
    pub fn new(adj: &'a [Vec<VertexId>], fixed: Option<VertexId>) -> Automorphisms<'a> {
        Automorphisms {
            adj,
            dist: distance_matrix(adj),
            fixed,
        }
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    fn search<'s>(
        &'s self,
        colors: Option<&'s [bool]>,
        pins: &[(VertexId, VertexId)],
    ) -> Search<'s> {
        let n = self.adj.len();
        let mut forced = vec![None; n];
        if let Some(r) = self.fixed {
            forced[r] = Some(r);
        }
        for &(v, j) in pins {
            forced[v] = Some(j);
        }
        let first = pins.first().map(|p| p.0).or(self.fixed);
        Search {
            dist: &self.dist,
            degree: self.adj.iter().map(Vec::len).collect(),
            colors,
            order: search_order(self.adj, first),
            forced,
            image: vec![usize::MAX; n],
            used: vec![false; n],
            moved: 0,
        }
    }

    /// Calls `visit` on every (color-preserving) automorphism until it
    /// breaks.
    pub fn for_each<F>(&self, colors: Option<&[bool]>, mut visit: F) -> ControlFlow<()>
    where
        F: FnMut(&[VertexId]) -> ControlFlow<()>,
    {
        let mut s = self.search(colors, &[]);
        s.run(0, None, &mut visit)
    }

    /// True iff some non-identity automorphism preserves `colors`.
    pub fn has_nontrivial(&self, colors: Option<&[bool]>) -> bool {
        self.for_each(colors, |p| {
            if support(p) > 0 {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        })
        .is_break()
    }

    fn exists_with(&self, colors: Option<&[bool]>, pins: &[(VertexId, VertexId)]) -> bool {
        if pins.iter().any(|&(v, j)| self.fixed == Some(v) && j != v) {
            return false;
        }
        let mut s = self.search(colors, pins);
        s.run(0, None, &mut |_| ControlFlow::Break(())).is_break()
    }

    /// Group order via orbit sizes along a stabilizer chain; the group is
    /// never listed.
    pub fn order(&self, colors: Option<&[bool]>) -> BigUint {
        let base = search_order(self.adj, self.fixed);
        let mut order = BigUint::one();
        let mut pins: Vec<(VertexId, VertexId)> = Vec::new();
        for &b in &base {
            let orbit = (0..self.adj.len())
                .filter(|&j| {
                    pins.push((b, j));
                    let found = self.exists_with(colors, &pins);
                    pins.pop();
                    found
                })
                .count();
            order *= orbit;
            pins.push((b, b));
        }
        order
    }

    /// Least support of a non-identity automorphism, with branch and bound.
    pub fn min_support(&self) -> Option<usize> {
        let mut s = self.search(None, &[]);
        let mut best: Option<usize> = None;
        // Re-run with a tighter bound each time a better element is found.
        loop {
            let mut found = None;
            let _ = s.run(0, best, &mut |p| {
                let m = support(p);
                if m > 0 && best.is_none_or(|b| m < b) {
                    found = Some(m);
                    ControlFlow::Break(())
                } else {
                    ControlFlow::Continue(())
                }
            });
            match found {
                Some(m) => best = Some(m),
                None => return best,
            }
            s = self.search(None, &[]);
        }
    }
}

/// Full automorphism group, root-fixing when `fixed` is given.
pub fn graph_automorphisms(
    adj: &[Vec<VertexId>],
    fixed: Option<VertexId>,
    caps: &Caps,
) -> Result<PermutationGroup, OracleError> {
    Caps::check(adj.len(), caps.group_n, "automorphism listing")?;
    let mut elements = Vec::new();
    let mut overflow = false;
    let _ = Automorphisms::new(adj, fixed).for_each(None, |p| {
        if elements.len() == caps.elements {
            overflow = true;
            return ControlFlow::Break(());
        }
        elements.push(p.to_vec());
        ControlFlow::Continue(())
    });
    if overflow {
        return Err(OracleError::GroupTooLarge { cap: caps.elements });
    }
    Ok(PermutationGroup {
        degree: adj.len(),
        elements,
        closed: true,
    })
}

/// Automorphisms of a tree by the generic graph search.
pub fn tree_automorphisms(
    tree: &crate::tree::UnrootedTree,
    fixed_root: Option<VertexId>,
    caps: &Caps,
) -> Result<PermutationGroup, OracleError> {
    graph_automorphisms(tree.adjacency(), fixed_root, caps)
}

/// Number of subsets with trivial stabilizer, and the group order.
pub fn asym_subset_census(
    adj: &[Vec<VertexId>],
    fixed: Option<VertexId>,
    caps: &Caps,
) -> Result<(u64, BigUint), OracleError> {
    let n = adj.len();
    Caps::check(n, caps.sweep_n, "subset sweep")?;
    let auts = Automorphisms::new(adj, fixed);
    let raw = (0u64..1 << n)
        .into_par_iter()
        .filter(|&mask| {
            let colors: Vec<bool> = (0..n).map(|v| mask >> v & 1 == 1).collect();
            !auts.has_nontrivial(Some(&colors))
        })
        .count() as u64;
    Ok((raw, auts.order(None)))
}

/// Number of orbits of asymmetrizing subsets: trivially stabilized subsets
/// lie in orbits of full size `|G|`.
pub fn oracle_count_asym(
    adj: &[Vec<VertexId>],
    fixed: Option<VertexId>,
    caps: &Caps,
) -> Result<BigUint, OracleError> {
    let (raw, order) = asym_subset_census(adj, fixed, caps)?;
    let raw = BigUint::from(raw);
    debug_assert!((&raw % &order) == BigUint::ZERO);
    Ok(raw / order)
}

pub fn oracle_motion(
    adj: &[Vec<VertexId>],
    fixed: Option<VertexId>,
    caps: &Caps,
) -> Result<MotionResult, OracleError> {
    Caps::check(adj.len(), caps.group_n, "motion search")?;
    Ok(Automorphisms::new(adj, fixed)
        .min_support()
        .map_or(MotionResult::Asymmetric, MotionResult::Moved))
}

/// True iff no non-identity automorphism (fixing `fixed`) preserves `set`.
pub fn oracle_is_asymmetrizing(
    adj: &[Vec<VertexId>],
    fixed: Option<VertexId>,
    set: &[VertexId],
    caps: &Caps,
) -> Result<bool, OracleError> {
    Caps::check(adj.len(), caps.group_n, "stabilizer search")?;
    let mut colors = vec![false; adj.len()];
    for &v in set {
        colors[v] = true;
    }
    Ok(!Automorphisms::new(adj, fixed).has_nontrivial(Some(&colors)))
}
