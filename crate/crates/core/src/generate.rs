//! Tree generators: exhaustive lists of isomorphism classes, a bijective
//! ranking of rooted trees, and seeded random trees.

use std::collections::BTreeMap;

use num_bigint::{BigUint, RandBigInt};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::asym::unrank_colex;
use crate::tree::{RootedTree, UnrootedTree, VertexId};

fn auto_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("v{i}")).collect()
}

/// Builds a tree from a preorder level sequence (root at level 0).
fn from_levels(levels: &[usize]) -> RootedTree {
    let mut parents = Vec::with_capacity(levels.len());
    let mut path: Vec<VertexId> = Vec::new();
    for (v, &level) in levels.iter().enumerate() {
        path.truncate(level);
        parents.push(path.last().copied());
        path.push(v);
    }
    RootedTree::from_parents(auto_labels(levels.len()), parents).expect("valid level sequence")
}

/// One representative of every rooted tree on `n` vertices, generated as
/// canonical level sequences in reverse lexicographic order.
pub fn all_rooted_trees(n: usize) -> Vec<RootedTree> {
    if n == 0 {
        return Vec::new();
    }
    let mut levels: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    loop {
        out.push(from_levels(&levels));
        let Some(p) = levels.iter().rposition(|&l| l > 1) else {
            return out;
        };
        let q = levels[..p]
            .iter()
            .rposition(|&l| l == levels[p] - 1)
            .expect("a level-l vertex has an earlier level-(l-1) ancestor");
        for i in p..n {
            levels[i] = levels[i - (p - q)];
        }
    }
}

/// One representative of every unrooted tree on `n` vertices, ordered by
/// canonical code.
pub fn all_unrooted_trees(n: usize) -> Vec<UnrootedTree> {
    let mut classes = BTreeMap::new();
    for t in all_rooted_trees(n) {
        let u = t.to_unrooted();
        classes.entry(u.canonical_code(None)).or_insert(u);
    }
    classes.into_values().collect()
}

/// Counting tables for ranking rooted trees of at most `max_n` vertices.
///
/// A tree on `n` vertices is a root plus a multiset of subtrees of total size
/// `n - 1`. Forests are split by the number `j` of trees of the largest
/// allowed size `k`; each such block is a `j`-multiset of trees of size `k`
/// (numbered as `j`-combinations with repetition in colex order) times a
/// forest of smaller trees. Indices are mixed radix over that split.
pub struct TreeRanker {
    /// `trees[n]`: number of rooted trees on `n` vertices.
    trees: Vec<BigUint>,
    /// `forests[m][k]` for `k <= m`: forests of total size `m` whose trees
    /// have at most `k` vertices.
    forests: Vec<Vec<BigUint>>,
    /// `multisets[k][j]`: `j`-multisets of trees on `k` vertices.
    multisets: Vec<Vec<BigUint>>,
}

impl TreeRanker {
    pub fn new(max_n: usize) -> TreeRanker {
        let size = max_n + 1;
        let mut ranker = TreeRanker {
            trees: vec![BigUint::zero(); size],
            forests: vec![vec![BigUint::one()]],
            multisets: vec![vec![BigUint::one()]],
        };
        for m in 1..size {
            let r = ranker.forest(m - 1, m - 1);
            let mut mc = vec![BigUint::one()];
            for j in 1..=max_n / m {
                let next = mc[j - 1].clone() * (&r + (j - 1)) / j;
                mc.push(next);
            }
            ranker.trees[m] = r;
            ranker.multisets.push(mc);

            let mut row = vec![BigUint::zero(); m + 1];
            for k in 1..=m {
                let mut total = row[k - 1].clone();
                for j in 1..=m / k {
                    total += &ranker.multisets[k][j] * ranker.forest(m - j * k, k - 1);
                }
                row[k] = total;
            }
            ranker.forests.push(row);
        }
        ranker
    }

    pub fn max_n(&self) -> usize {
        self.trees.len() - 1
    }

    /// Number of rooted trees on `n` vertices.
    pub fn count(&self, n: usize) -> &BigUint {
        &self.trees[n]
    }

    fn forest(&self, m: usize, k: usize) -> BigUint {
        self.forests[m][k.min(m)].clone()
    }

    /// Appends the parent links of the `index`-th tree on `n` vertices.
    fn unrank_parents(&self, n: usize, index: &BigUint, parents: &mut Vec<Option<VertexId>>) {
        let root = parents.len();
        parents.push(None);
        // (parent vertex, forest size, max tree size, forest index)
        let mut stack = vec![(root, n - 1, n - 1, index.clone())];
        while let Some((parent, m, k, mut idx)) = stack.pop() {
            if m == 0 {
                continue;
            }
            let k = k.min(m);
            let mut j = 0;
            loop {
                let rest = self.forest(m - j * k, k - 1);
                let block = &self.multisets[k][j] * &rest;
                if idx < block {
                    let (multiset, rest_idx) = (&idx / &rest, &idx % &rest);
                    stack.push((parent, m - j * k, k - 1, rest_idx));
                    for (i, c) in unrank_colex(&multiset, j).into_iter().enumerate() {
                        let v = parents.len();
                        parents.push(Some(parent));
                        stack.push((v, k - 1, k - 1, c - i));
                    }
                    break;
                }
                idx -= block;
                j += 1;
            }
        }
    }

    /// The `index`-th rooted tree on `n` vertices, or `None` if out of range.
    pub fn unrank(&self, n: usize, index: &BigUint) -> Option<RootedTree> {
        if n == 0 || n > self.max_n() || *index >= self.trees[n] {
            return None;
        }
        let mut parents = Vec::with_capacity(n);
        self.unrank_parents(n, index, &mut parents);
        Some(RootedTree::from_parents(auto_labels(n), parents).expect("unranked tree is valid"))
    }
}

/// Largest `n` for which [`random_tree`] samples uniformly by unranking.
pub const RANKED_MAX_N: usize = 512;

/// A seeded random rooted tree. For `n <= RANKED_MAX_N` this is uniform
/// over isomorphism classes (a uniform index, unranked); above that it is a
/// random recursive tree.
pub fn random_tree(n: usize, seed: u64) -> Option<RootedTree> {
    if n == 0 {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if n <= RANKED_MAX_N {
        let ranker = TreeRanker::new(n);
        let index = rng.gen_biguint_below(ranker.count(n));
        ranker.unrank(n, &index)
    } else {
        Some(random_recursive(n, &mut rng))
    }
}

/// Vertex `i` attaches to a uniform earlier vertex.
pub fn random_recursive(n: usize, rng: &mut impl Rng) -> RootedTree {
    let parents = (0..n)
        .map(|i| (i > 0).then(|| rng.gen_range(0..i)))
        .collect();
    RootedTree::from_parents(auto_labels(n), parents).expect("recursive tree is valid")
}

/// Vertex `i` attaches to one of the `window` most recent vertices; gives
/// long, thin trees with few repeated leaves.
pub fn random_local(n: usize, window: usize, rng: &mut impl Rng) -> RootedTree {
    let parents = (0..n)
        .map(|i| (i > 0).then(|| rng.gen_range(i.saturating_sub(window.max(1))..i)))
        .collect();
    RootedTree::from_parents(auto_labels(n), parents).expect("attachment tree is valid")
}
