//! Bottom-up canonical class ranks (AHU) over rooted forests.
//!
//! Ranks are assigned height by height: the key of a vertex is its color bit
//! followed by the sorted ranks of its children, and the distinct keys at each
//! height are numbered in sorted order after all lower heights. Two vertices of
//! the same forest get equal ranks iff their (colored) rooted subtrees are
//! isomorphic, and isomorphic forests get identical rank assignments.

use std::fmt;

use super::VertexId;

/// Canonical code of a rooted tree: a bracket word with children emitted in
/// rank order. `(`/`)` wrap an uncolored vertex, `[`/`]` a colored one.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCode(pub(crate) Vec<u8>);

impl CanonicalCode {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Only ASCII brackets and markers are ever pushed.
        f.write_str(std::str::from_utf8(&self.0).unwrap_or("?"))
    }
}

/// Breadth-first order of a forest given by child lists.
pub(crate) fn bfs_order(children: &[Vec<VertexId>], roots: &[VertexId]) -> Vec<VertexId> {
    let mut order = Vec::with_capacity(children.len());
    order.extend_from_slice(roots);
    let mut head = 0;
    while head < order.len() {
        let v = order[head];
        head += 1;
        order.extend_from_slice(&children[v]);
    }
    order
}

/// Class ranks of every vertex reachable from the roots of `order`.
///
/// `order` must list parents before children (e.g. [`bfs_order`]).
pub(crate) fn class_ranks(
    children: &[Vec<VertexId>],
    order: &[VertexId],
    colors: Option<&[bool]>,
) -> Vec<u32> {
    let n = children.len();
    let mut height = vec![0usize; n];
    for &v in order.iter().rev() {
        height[v] = children[v]
            .iter()
            .map(|&c| height[c] + 1)
            .max()
            .unwrap_or(0);
    }
    let max_height = order.iter().map(|&v| height[v]).max().unwrap_or(0);
    let mut by_height: Vec<Vec<VertexId>> = vec![Vec::new(); max_height + 1];
    for &v in order {
        by_height[height[v]].push(v);
    }

    let mut ranks = vec![u32::MAX; n];
    let mut next = 0u32;
    let mut keys: Vec<Vec<u32>> = vec![Vec::new(); n];
    for level in &by_height {
        for &v in level {
            let color = colors.map_or(0, |c| u32::from(c[v]));
            let mut key = Vec::with_capacity(children[v].len() + 1);
            key.push(color);
            let start = key.len();
            key.extend(children[v].iter().map(|&c| ranks[c]));
            key[start..].sort_unstable();
            keys[v] = key;
        }
        let mut sorted = level.clone();
        sorted.sort_by(|&a, &b| keys[a].cmp(&keys[b]));
        let mut prev: Option<VertexId> = None;
        for &v in &sorted {
            if let Some(p) = prev {
                if keys[p] != keys[v] {
                    next += 1;
                }
            }
            ranks[v] = next;
            prev = Some(v);
        }
        if !sorted.is_empty() {
            next += 1;
        }
        for &v in level {
            keys[v] = Vec::new();
        }
    }
    ranks
}

/// Bracket word of the subtree at `root`, children in rank order.
pub(crate) fn bracket_code(
    children: &[Vec<VertexId>],
    ranks: &[u32],
    root: VertexId,
    colors: Option<&[bool]>,
) -> CanonicalCode {
    let mut out = Vec::new();
    // (vertex, entered)
    let mut stack = vec![(root, false)];
    while let Some((v, entered)) = stack.pop() {
        let colored = colors.is_some_and(|c| c[v]);
        if entered {
            out.push(if colored { b']' } else { b')' });
            continue;
        }
        out.push(if colored { b'[' } else { b'(' });
        stack.push((v, true));
        let mut kids = children[v].clone();
        kids.sort_by_key(|&c| ranks[c]);
        // Reverse so the smallest rank is emitted first.
        stack.extend(kids.into_iter().rev().map(|c| (c, false)));
    }
    CanonicalCode(out)
}
