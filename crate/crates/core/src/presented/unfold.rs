//! Depth-limited unfolding of presentations into finite rooted trees.

use super::{count_presented, PresentedError, TreePresentation};
use crate::asym::{find_rooted, AsymSet};
use crate::cardinal::Cardinal;
use crate::tree::RootedTree;

/// Largest unfolding that will be materialized.
pub const MAX_UNFOLD: usize = 2_000_000;

/// A finite truncation; vertex `v` has class `class_of[v]` and label
/// `<class>_<v>`.
#[derive(Debug, Clone)]
pub struct Unfolding {
    pub tree: RootedTree,
    pub class_of: Vec<usize>,
}

/// Unfolds `p` down to depth `depth` (the root has depth 0).
///
/// Fails on an infinite multiplicity that would be expanded, or when the
/// truncation exceeds `max_vertices`.
pub fn unfold(
    p: &TreePresentation,
    depth: usize,
    max_vertices: usize,
) -> Result<Unfolding, PresentedError> {
    let mut class_of = vec![p.root()];
    let mut parents = vec![None];
    let mut level = vec![0usize];
    let mut head = 0;
    while head < class_of.len() {
        let v = head;
        head += 1;
        if level[v] == depth {
            continue;
        }
        for slot in &p.classes[class_of[v]].slots {
            let Cardinal::Finite(m) = &slot.mult else {
                return Err(PresentedError::InfiniteUnfolding(format!(
                    "{}*{}",
                    p.name(slot.class),
                    slot.mult
                )));
            };
            let m = usize::try_from(m).map_err(|_| PresentedError::UnfoldTooLarge(max_vertices))?;
            if class_of.len().saturating_add(m) > max_vertices {
                return Err(PresentedError::UnfoldTooLarge(max_vertices));
            }
            for _ in 0..m {
                class_of.push(slot.class);
                parents.push(Some(v));
                level.push(level[v] + 1);
            }
        }
    }
    let labels = class_of
        .iter()
        .enumerate()
        .map(|(v, &c)| format!("{}_{v}", p.name(c)))
        .collect();
    let tree = RootedTree::from_parents(labels, parents).expect("unfolding is a tree");
    Ok(Unfolding { tree, class_of })
}

/// A colored truncation whose coloring makes the truncated tree asymmetric.
#[derive(Debug, Clone)]
pub struct Certificate {
    pub unfolding: Unfolding,
    pub set: AsymSet,
}

impl Certificate {
    pub fn render(&self) -> String {
        self.set.render(self.unfolding.tree.labels())
    }
}

/// Colors the depth-`depth` truncation so that it has no non-trivial
/// root-fixing automorphism, giving twins distinct colored subtrees.
///
/// `Ok(None)` means the truncation itself admits no such coloring (for
/// instance when boundary leaves outnumber the available colorings); a
/// deeper truncation may succeed.
pub fn asym_certificate(
    p: &TreePresentation,
    depth: usize,
) -> Result<Option<Certificate>, PresentedError> {
    if depth == 0 {
        return Err(PresentedError::InvalidDepth);
    }
    if count_presented(p)?.count.is_zero() {
        return Err(PresentedError::NotAsymmetrizable);
    }
    let unfolding = unfold(p, depth, MAX_UNFOLD)?;
    Ok(find_rooted(&unfolding.tree).map(|set| Certificate { unfolding, set }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asym::verify_rooted;

    fn p(s: &str) -> TreePresentation {
        TreePresentation::parse(s).unwrap()
    }

    #[test]
    fn unfold_sizes() {
        let t3 = p("r: d*3 / d: d*2");
        assert_eq!(unfold(&t3, 0, 100).unwrap().tree.len(), 1);
        assert_eq!(unfold(&t3, 3, 100).unwrap().tree.len(), 1 + 3 + 6 + 12);
        assert!(matches!(
            unfold(&t3, 30, 1000),
            Err(PresentedError::UnfoldTooLarge(_))
        ));
        assert!(matches!(
            unfold(&p("r: l*w / l:"), 2, 100),
            Err(PresentedError::InfiniteUnfolding(_))
        ));
        // An infinite multiplicity beyond the depth is never expanded.
        assert_eq!(
            unfold(&p("r: s*1 / s: l*w / l:"), 1, 100)
                .unwrap()
                .tree
                .len(),
            2
        );
    }

    #[test]
    fn certificate_examples() {
        let c = asym_certificate(&p("r: l*2 / l:"), 1).unwrap().unwrap();
        assert_eq!(c.render(), "{l_1}");
        assert!(verify_rooted(&c.unfolding.tree, c.set.members()));

        let binary = p("r: d*2 / d: d*2");
        let c = asym_certificate(&binary, 3).unwrap().unwrap();
        assert!(verify_rooted(&c.unfolding.tree, c.set.members()));

        assert_eq!(
            asym_certificate(&p("r: l*w / l:"), 1).unwrap_err(),
            PresentedError::NotAsymmetrizable
        );
        assert_eq!(
            asym_certificate(&binary, 0).unwrap_err(),
            PresentedError::InvalidDepth
        );
        // Three twin binary branches exceed the two colorings of a truncated
        // binary tree at every depth.
        assert!(asym_certificate(&p("r: d*3 / d: d*2"), 3)
            .unwrap()
            .is_none());
    }
}
