//! Classification, size, rank, motion and asymmetrizing counts of presented
//! trees. Every routine works on the minimized presentation, where twins are
//! exactly the children produced by one slot.

use std::fmt;

use super::{minimize, ClassDef, PresentedError, Slot, TreePresentation};
use crate::cardinal::{binom, product_family, sum_family, Cardinal};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TreeKind {
    FiniteTree,
    RaylessInfinite,
    OneEnded,
    HasDoubleRay,
}

impl fmt::Display for TreeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TreeKind::FiniteTree => "finite",
            TreeKind::RaylessInfinite => "rayless",
            TreeKind::OneEnded => "one-ended",
            TreeKind::HasDoubleRay => "double-ray",
        })
    }
}

/// Which counting rule produced a count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Theorem {
    /// Finite recursion over twin classes.
    Finite,
    /// The same recursion with cardinal binomials over a rayless tree.
    Rayless,
    /// Product of the rayless pieces hanging off the ray from the root.
    OneEnded,
    /// Twin condition and product over the vertices on double rays; the
    /// count is for the unrooted tree.
    DoubleRay,
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Theorem::Finite => "finite",
            Theorem::Rayless => "rayless",
            Theorem::OneEnded => "one-ended",
            Theorem::DoubleRay => "double-ray",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PresentedMotion {
    Moved(Cardinal),
    Asymmetric,
}

impl fmt::Display for PresentedMotion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PresentedMotion::Moved(c) => write!(f, "{c}"),
            PresentedMotion::Asymmetric => f.write_str("asymmetric"),
        }
    }
}

/// Case split of a minimized presentation, with per-class flags indexed by
/// the minimized classes (named in `classes`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub kind: TreeKind,
    pub size: Cardinal,
    pub classes: Vec<String>,
    pub reaches_cycle: Vec<bool>,
    pub on_double_ray: Vec<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresentedReport {
    pub classification: TreeKind,
    pub size: Cardinal,
    pub motion: PresentedMotion,
    /// Rooted count, except for double-ray trees where it is the unrooted
    /// count.
    pub count: Cardinal,
    /// Only for rayless presentations.
    pub rank: Option<u32>,
    pub theorem: Theorem,
}

impl PresentedReport {
    /// `key=value` pairs in output order.
    pub fn fields(&self) -> Vec<(&'static str, String)> {
        let mut out = vec![
            ("classification", self.classification.to_string()),
            ("size", self.size.to_string()),
            ("motion", self.motion.to_string()),
            ("count", self.count.to_string()),
        ];
        if let Some(r) = self.rank {
            out.push(("rank", r.to_string()));
        }
        out.push(("theorem", self.theorem.to_string()));
        out
    }
}

/// Structural facts about a minimized presentation.
struct Analysis {
    p: TreePresentation,
    /// `reach[a][b]`: `b` is reachable from `a` (reflexive).
    reach: Vec<Vec<bool>>,
    on_cycle: Vec<bool>,
    /// The class unfolds to a tree containing a ray.
    ray: Vec<bool>,
    ray_mult: Vec<Cardinal>,
    size: Vec<Cardinal>,
}

impl Analysis {
    fn new(p: &TreePresentation) -> Analysis {
        let p = minimize(p);
        let k = p.len();
        let reach: Vec<Vec<bool>> = (0..k).map(|c| p.reachable_from(c)).collect();
        let on_cycle: Vec<bool> = (0..k)
            .map(|c| p.classes[c].slots.iter().any(|s| reach[s.class][c]))
            .collect();
        let ray: Vec<bool> = (0..k)
            .map(|c| (0..k).any(|e| reach[c][e] && on_cycle[e]))
            .collect();
        let ray_mult = (0..k)
            .map(|c| {
                let terms: Vec<_> = p.classes[c]
                    .slots
                    .iter()
                    .filter(|s| ray[s.class])
                    .map(|s| (Cardinal::one(), s.mult.clone()))
                    .collect();
                sum_family(&terms)
            })
            .collect();

        let mut size: Vec<Option<Cardinal>> = vec![None; k];
        for c in 0..k {
            if ray[c] {
                // ℵ0 vertices along the ray, or more from a large multiplicity.
                let widest = (0..k)
                    .filter(|&d| reach[c][d])
                    .flat_map(|d| p.classes[d].slots.iter())
                    .map(|s| s.mult.clone())
                    .max();
                size[c] = Some(widest.map_or(Cardinal::aleph0(), |m| m.max(Cardinal::aleph0())));
            }
        }
        for c in 0..k {
            acyclic_size(&p, c, &mut size);
        }
        Analysis {
            p,
            reach,
            on_cycle,
            ray,
            ray_mult,
            size: size
                .into_iter()
                .map(|s| s.expect("every class sized"))
                .collect(),
        }
    }

    fn kind(&self) -> TreeKind {
        let k = self.p.len();
        if self.ray_mult.iter().any(|m| *m >= Cardinal::finite(2)) {
            TreeKind::HasDoubleRay
        } else if self.ray[self.p.root()] {
            TreeKind::OneEnded
        } else if (0..k).any(|c| self.p.classes[c].slots.iter().any(|s| s.mult.is_infinite())) {
            TreeKind::RaylessInfinite
        } else {
            TreeKind::FiniteTree
        }
    }

    /// The unique slot of `c` into a ray class, when `ray_mult(c) == 1`.
    fn ray_child(&self, c: usize) -> Option<usize> {
        if !self.ray_mult[c].is_one() {
            return None;
        }
        self.p.classes[c]
            .slots
            .iter()
            .find(|s| self.ray[s.class])
            .map(|s| s.class)
    }

    /// Classes of the vertices on double rays: the first vertex `x0` below
    /// the root with two ray directions, and every ray class below it.
    fn double_ray_top(&self) -> (Vec<usize>, usize) {
        let mut path = Vec::new();
        let mut c = self.p.root();
        while let Some(next) = self.ray_child(c) {
            path.push(c);
            c = next;
            assert!(
                path.len() <= self.p.len(),
                "a double ray lies below the root"
            );
        }
        (path, c)
    }

    fn on_double_ray(&self) -> Vec<bool> {
        let k = self.p.len();
        if self.kind() != TreeKind::HasDoubleRay {
            return vec![false; k];
        }
        let (_, x0) = self.double_ray_top();
        let below = self.star_classes(x0);
        (0..k).map(|c| c == x0 || below[c]).collect()
    }

    /// Ray classes reachable from `x0` through at least one slot.
    fn star_classes(&self, x0: usize) -> Vec<bool> {
        let k = self.p.len();
        let mut seen = vec![false; k];
        let mut stack: Vec<usize> = Vec::new();
        let push = |c: usize, seen: &mut Vec<bool>, stack: &mut Vec<usize>| {
            for s in &self.p.classes[c].slots {
                if self.ray[s.class] && !seen[s.class] {
                    seen[s.class] = true;
                    stack.push(s.class);
                }
            }
        };
        push(x0, &mut seen, &mut stack);
        while let Some(c) = stack.pop() {
            push(c, &mut seen, &mut stack);
        }
        seen
    }

    /// `2 · ∏ binom(a(d), μ)` over the slots of `c` into rayless classes.
    fn off_ray_count(
        &self,
        c: usize,
        counts: &[Option<Cardinal>],
    ) -> Result<Cardinal, PresentedError> {
        let mut acc = Cardinal::finite(2);
        for s in self.p.classes[c]
            .slots
            .iter()
            .filter(|s| !self.ray[s.class])
        {
            let a = counts[s.class]
                .as_ref()
                .expect("rayless classes are counted");
            acc = acc.mul(&binom(a, &s.mult)?);
        }
        Ok(acc)
    }

    fn one_ended_count(&self, counts: &[Option<Cardinal>]) -> Result<Cardinal, PresentedError> {
        let mut spine: Vec<usize> = Vec::new();
        let mut c = self.p.root();
        let start = loop {
            if let Some(i) = spine.iter().position(|&x| x == c) {
                break i;
            }
            spine.push(c);
            c = self.ray_child(c).expect("one-ended spine continues");
        };
        let mut factors = Vec::with_capacity(spine.len());
        for (i, &x) in spine.iter().enumerate() {
            let times = if i < start {
                Cardinal::one()
            } else {
                Cardinal::aleph0()
            };
            factors.push((self.off_ray_count(x, counts)?, times));
        }
        Ok(product_family(&factors)?)
    }

    /// Number of vertices of class `e` in the subtree of double-ray vertices
    /// below (and including) a vertex of class `d`.
    fn star_paths(&self, d: usize, e: usize, memo: &mut [Option<Cardinal>]) -> Cardinal {
        if let Some(n) = &memo[d] {
            return n.clone();
        }
        let k = self.p.len();
        let n = if !self.reach[d][e] {
            Cardinal::zero()
        } else if (0..k).any(|z| self.on_cycle[z] && self.reach[d][z] && self.reach[z][e]) {
            // Infinitely many paths: their number is ℵ0 or the largest
            // multiplicity on an edge between d and e.
            let terms: Vec<_> = (0..k)
                .filter(|&u| self.reach[d][u])
                .flat_map(|u| self.p.classes[u].slots.iter())
                .filter(|s| self.ray[s.class] && self.reach[s.class][e])
                .map(|s| (Cardinal::one(), s.mult.clone()))
                .chain([(Cardinal::aleph0(), Cardinal::one())])
                .collect();
            sum_family(&terms)
        } else {
            let mut terms = vec![(Cardinal::from(u64::from(d == e)), Cardinal::one())];
            let slots: Vec<Slot> = self.p.classes[d]
                .slots
                .iter()
                .filter(|s| self.ray[s.class])
                .cloned()
                .collect();
            for s in slots {
                terms.push((self.star_paths(s.class, e, memo), s.mult));
            }
            sum_family(&terms)
        };
        memo[d] = Some(n.clone());
        n
    }

    fn double_ray_count(&self, counts: &[Option<Cardinal>]) -> Result<Cardinal, PresentedError> {
        let k = self.p.len();
        let (path, x0) = self.double_ray_top();
        let a_top = self.top_count(&path, x0)?;
        let star = self.star_classes(x0);
        let stars: Vec<usize> = (0..k).filter(|&e| star[e]).collect();

        // paths[e][d] = N(d, e)
        let mut paths: Vec<Vec<Option<Cardinal>>> = vec![vec![None; k]; k];
        for &e in &stars {
            for d in 0..k {
                self.star_paths(d, e, &mut paths[e]);
            }
        }
        let n = |d: usize, e: usize| paths[e][d].clone().expect("computed");
        let mut a_star = vec![Cardinal::zero(); k];
        for &e in &stars {
            a_star[e] = self.off_ray_count(e, counts)?;
        }

        // Twins of every double-ray vertex need distinct colorings of the
        // double-ray part below them.
        for u in (0..k).filter(|&u| u == x0 || star[u]) {
            for s in self.p.classes[u].slots.iter().filter(|s| self.ray[s.class]) {
                let factors: Vec<_> = stars
                    .iter()
                    .map(|&e| (a_star[e].clone(), n(s.class, e)))
                    .collect();
                if s.mult > product_family(&factors)? {
                    return Ok(Cardinal::zero());
                }
            }
        }

        let mut factors = vec![(a_top, Cardinal::one())];
        for &e in &stars {
            let total: Vec<_> = self.p.classes[x0]
                .slots
                .iter()
                .filter(|s| self.ray[s.class])
                .map(|s| (n(s.class, e), s.mult.clone()))
                .collect();
            factors.push((a_star[e].clone(), sum_family(&total)));
        }
        Ok(product_family(&factors)?)
    }

    /// Count of the rayless component at `x0`: its own rayless children plus
    /// the path back to the root, re-hung below `x0`.
    fn top_count(&self, path: &[usize], x0: usize) -> Result<Cardinal, PresentedError> {
        let k = self.p.len();
        let off = |c: usize, shift: usize| -> Vec<Slot> {
            self.p.classes[c]
                .slots
                .iter()
                .filter(|s| !self.ray[s.class])
                .map(|s| Slot {
                    class: s.class + shift,
                    mult: s.mult.clone(),
                })
                .collect()
        };
        let shift = path.len() + 1;
        // Class 0 is x0, class i + 1 stands for path[i] hung upside down.
        let mut classes = Vec::with_capacity(shift + k);
        let link = |i: usize| Slot {
            class: i + 1,
            mult: Cardinal::one(),
        };
        let mut top = off(x0, shift);
        if let Some(last) = path.len().checked_sub(1) {
            top.push(link(last));
        }
        classes.push(ClassDef {
            name: self.p.classes[x0].name.clone(),
            slots: top,
        });
        for (i, &c) in path.iter().enumerate() {
            let mut slots = off(c, shift);
            if i > 0 {
                slots.push(link(i - 1));
            }
            classes.push(ClassDef {
                name: format!("{}_up", self.p.classes[c].name),
                slots,
            });
        }
        for c in &self.p.classes {
            classes.push(ClassDef {
                name: c.name.clone(),
                slots: c
                    .slots
                    .iter()
                    .map(|s| Slot {
                        class: s.class + shift,
                        mult: s.mult.clone(),
                    })
                    .collect(),
            });
        }
        let mini = minimize(&TreePresentation { classes });
        let counts = acyclic_counts(&mini, &vec![false; mini.len()])?;
        Ok(counts[mini.root()].clone().expect("rayless root"))
    }
}

fn acyclic_size(p: &TreePresentation, c: usize, size: &mut [Option<Cardinal>]) -> Cardinal {
    if let Some(s) = &size[c] {
        return s.clone();
    }
    let mut terms = vec![(Cardinal::one(), Cardinal::one())];
    for s in &p.classes[c].slots {
        terms.push((acyclic_size(p, s.class, size), s.mult.clone()));
    }
    let total = sum_family(&terms);
    size[c] = Some(total.clone());
    total
}

/// `a(c) = 2 · ∏ binom(a(d), μ)` for every class not flagged in `skip`
/// (classes reaching a cycle must be flagged).
fn acyclic_counts(
    p: &TreePresentation,
    skip: &[bool],
) -> Result<Vec<Option<Cardinal>>, PresentedError> {
    fn go(
        p: &TreePresentation,
        c: usize,
        memo: &mut [Option<Cardinal>],
    ) -> Result<Cardinal, PresentedError> {
        if let Some(a) = &memo[c] {
            return Ok(a.clone());
        }
        let mut acc = Cardinal::finite(2);
        for s in &p.classes[c].slots {
            let a = go(p, s.class, memo)?;
            acc = acc.mul(&binom(&a, &s.mult)?);
        }
        memo[c] = Some(acc.clone());
        Ok(acc)
    }
    let mut memo = vec![None; p.len()];
    for c in 0..p.len() {
        if !skip[c] {
            go(p, c, &mut memo)?;
        }
    }
    Ok(memo)
}

pub fn classify(p: &TreePresentation) -> Classification {
    let an = Analysis::new(p);
    Classification {
        kind: an.kind(),
        size: an.size[an.p.root()].clone(),
        classes: an.p.classes.iter().map(|c| c.name.clone()).collect(),
        reaches_cycle: an.ray.clone(),
        on_double_ray: an.on_double_ray(),
    }
}

/// Schmidt-style rank of a rayless presentation: finite classes have rank
/// 0, an infinite multiplicity of finite children gives rank 1, and
/// infinitely many infinite children raise the rank by one.
pub fn rank_presented(p: &TreePresentation) -> Result<u32, PresentedError> {
    let an = Analysis::new(p);
    if an.ray.iter().any(|&r| r) {
        return Err(PresentedError::NotRayless);
    }
    fn go(an: &Analysis, c: usize, memo: &mut [Option<u32>]) -> u32 {
        if let Some(r) = memo[c] {
            return r;
        }
        let r = if an.size[c].is_finite() {
            0
        } else {
            an.p.classes[c]
                .slots
                .iter()
                .map(
                    |s| match (an.size[s.class].is_infinite(), s.mult.is_infinite()) {
                        (true, false) => go(an, s.class, memo),
                        (true, true) => go(an, s.class, memo) + 1,
                        (false, true) => 1,
                        (false, false) => 0,
                    },
                )
                .max()
                .unwrap_or(0)
        };
        memo[c] = Some(r);
        r
    }
    let mut memo = vec![None; an.p.len()];
    Ok(go(&an, an.p.root(), &mut memo))
}

/// Least number of vertices moved by a root-fixing automorphism: the
/// cheapest swap of two children produced by one slot.
pub fn motion_presented(p: &TreePresentation) -> PresentedMotion {
    let an = Analysis::new(p);
    motion_of(&an)
}

fn motion_of(an: &Analysis) -> PresentedMotion {
    an.p.classes
        .iter()
        .flat_map(|c| c.slots.iter())
        .filter(|s| s.mult >= Cardinal::finite(2))
        .map(|s| Cardinal::finite(2).mul(&an.size[s.class]))
        .min()
        .map_or(PresentedMotion::Asymmetric, PresentedMotion::Moved)
}

/// Full report: classification, size, motion, count and, for rayless
/// presentations, rank.
pub fn count_presented(p: &TreePresentation) -> Result<PresentedReport, PresentedError> {
    let an = Analysis::new(p);
    let kind = an.kind();
    let counts = acyclic_counts(&an.p, &an.ray)?;
    let root = an.p.root();
    let (count, theorem) = match kind {
        TreeKind::FiniteTree => (counts[root].clone().expect("rayless"), Theorem::Finite),
        TreeKind::RaylessInfinite => (counts[root].clone().expect("rayless"), Theorem::Rayless),
        TreeKind::OneEnded => (an.one_ended_count(&counts)?, Theorem::OneEnded),
        TreeKind::HasDoubleRay => (an.double_ray_count(&counts)?, Theorem::DoubleRay),
    };
    let rank = match kind {
        TreeKind::FiniteTree | TreeKind::RaylessInfinite => Some(rank_presented(&an.p)?),
        _ => None,
    };
    Ok(PresentedReport {
        classification: kind,
        size: an.size[root].clone(),
        motion: motion_of(&an),
        count,
        rank,
        theorem,
    })
}
