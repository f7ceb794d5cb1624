//! Generators and brute-force references shared by the integration tests.
#![allow(dead_code)]

use std::ops::ControlFlow;

use asymtree::cardinal::Cardinal;
use asymtree::graph::RootedGraph;
use asymtree::oracle::{oracle_is_asymmetrizing, Automorphisms, Caps};
use asymtree::presented::TreePresentation;
use asymtree::tree::VertexId;
use rand::Rng;

/// Random acyclic presentation: class `i` only has slots into classes
/// `j > i`. Multiplicities are drawn from `mults`.
pub fn random_presentation(
    rng: &mut impl Rng,
    max_classes: usize,
    mults: &[Cardinal],
) -> TreePresentation {
    let k = rng.gen_range(1..=max_classes);
    let names: Vec<String> = (0..k).map(|i| format!("c{i}")).collect();
    let defs: Vec<(String, Vec<(String, Cardinal)>)> = (0..k)
        .map(|i| {
            let mut slots = Vec::new();
            for j in i + 1..k {
                if rng.gen_bool(0.5) {
                    slots.push((
                        names[j].clone(),
                        mults[rng.gen_range(0..mults.len())].clone(),
                    ));
                }
            }
            (names[i].clone(), slots)
        })
        .collect();
    TreePresentation::new(&defs).expect("generated presentation is valid")
}

/// Unfolded size of an acyclic finite-multiplicity presentation, if it
/// stays below `cap`.
pub fn unfolded_size(p: &TreePresentation, cap: usize) -> Option<usize> {
    let k = p.len();
    let mut size = vec![0usize; k];
    // Slots only point to later classes in generated presentations, but
    // handle any topological order by iterating to a fixed point.
    for _ in 0..k {
        for c in (0..k).rev() {
            let mut s = 1usize;
            for slot in &p.classes()[c].slots {
                let m = slot.mult.to_u64()? as usize;
                s = s.checked_add(m.checked_mul(size[slot.class])?)?;
            }
            size[c] = s.min(cap + 1);
        }
    }
    (size[0] <= cap).then_some(size[0])
}

/// Adjacency lists of the forest `edges` restricted to `members`, with
/// local ids.
fn local_forest(members: &[VertexId], edges: &[(VertexId, VertexId)]) -> Vec<Vec<VertexId>> {
    let pos = |v: VertexId| members.iter().position(|&m| m == v);
    let mut adj = vec![Vec::new(); members.len()];
    for &(a, b) in edges {
        if let (Some(i), Some(j)) = (pos(a), pos(b)) {
            adj[i].push(j);
            adj[j].push(i);
        }
    }
    adj
}

/// Colored isomorphism of two graphs by automorphism search on their
/// disjoint union.
fn colored_isomorphic(a: &[Vec<VertexId>], ca: &[bool], b: &[Vec<VertexId>], cb: &[bool]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let k = a.len();
    let mut adj: Vec<Vec<VertexId>> = a.to_vec();
    adj.extend(b.iter().map(|ns| ns.iter().map(|&v| v + k).collect()));
    let colors: Vec<bool> = ca.iter().chain(cb).copied().collect();
    Automorphisms::new(&adj, None)
        .for_each(Some(&colors), |p| {
            if p[0] >= k {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        })
        .is_break()
}

/// Exhaustive reference for component-wise asymmetrization of a rooted
/// graph: some subset is admissible on every unique-parent component,
/// colors isomorphic components inequivalently, and asymmetrizes the graph.
pub fn sweep_treelike(graph: &RootedGraph, caps: &Caps) -> bool {
    let n = graph.len();
    assert!(n <= caps.sweep_n && n <= 20, "sweep is exponential");
    let dist: Vec<usize> = graph.distances().into_iter().map(Option::unwrap).collect();
    let mut edges = Vec::new();
    for x in 0..n {
        let ps: Vec<VertexId> = graph
            .neighbors(x)
            .iter()
            .copied()
            .filter(|&y| dist[y] + 1 == dist[x])
            .collect();
        if ps.len() == 1 {
            edges.push((ps[0], x));
        }
    }
    // Components by repeated relabeling.
    let mut comp: Vec<usize> = (0..n).collect();
    loop {
        let mut changed = false;
        for &(a, b) in &edges {
            let m = comp[a].min(comp[b]);
            if comp[a] != m || comp[b] != m {
                comp[a] = m;
                comp[b] = m;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let mut ids: Vec<usize> = comp.clone();
    ids.sort_unstable();
    ids.dedup();
    let members: Vec<Vec<VertexId>> = ids
        .iter()
        .map(|&c| (0..n).filter(|&v| comp[v] == c).collect())
        .collect();
    let adjs: Vec<Vec<Vec<VertexId>>> = members.iter().map(|m| local_forest(m, &edges)).collect();
    let w = graph.root();
    let root_degree = graph.degree(w);

    (0u64..1 << n).any(|mask| {
        let inside = |v: VertexId| mask >> v & 1 == 1;
        let mut colorings = Vec::with_capacity(members.len());
        for (m, adj) in members.iter().zip(&adjs) {
            let colors: Vec<bool> = m.iter().map(|&v| inside(v)).collect();
            let set: Vec<VertexId> = (0..m.len()).filter(|&i| colors[i]).collect();
            let Ok(true) = oracle_is_asymmetrizing(adj, None, &set, caps) else {
                return false;
            };
            let covered: Vec<VertexId> = set
                .iter()
                .copied()
                .filter(|&i| adj[i].iter().all(|&j| colors[j]))
                .map(|i| m[i])
                .collect();
            let ok = if m.contains(&w) {
                root_degree <= 1 || covered == [w]
            } else {
                covered.is_empty()
            };
            if !ok {
                return false;
            }
            colorings.push(colors);
        }
        for i in 0..members.len() {
            for j in i + 1..members.len() {
                if colored_isomorphic(&adjs[i], &colorings[i], &adjs[j], &colorings[j]) {
                    return false;
                }
            }
        }
        let set: Vec<VertexId> = (0..n).filter(|&v| inside(v)).collect();
        oracle_is_asymmetrizing(graph.adjacency(), None, &set, caps).unwrap_or(false)
    })
}

/// Random connected graph: a random tree plus `extra` random edges.
pub fn random_connected_graph(rng: &mut impl Rng, n: usize, extra: usize) -> RootedGraph {
    let labels: Vec<String> = (0..n).map(|i| format!("g{i}")).collect();
    let mut edges: Vec<(usize, usize)> = (1..n).map(|i| (rng.gen_range(0..i), i)).collect();
    for _ in 0..extra {
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if a != b && !edges.contains(&(a.min(b), a.max(b))) {
            edges.push((a.min(b), a.max(b)));
        }
    }
    RootedGraph::from_edges(labels, &edges, rng.gen_range(0..n)).expect("simple graph")
}
