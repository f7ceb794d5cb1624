//! Finitely presented rooted trees with cardinal multiplicities.
//!
//! A presentation is a finite list of classes; a vertex of class `c` has,
//! for every slot `d*μ` of `c`, exactly `μ` children of class `d`. The first
//! class is the root. Cycles among classes unfold into rays, and infinite
//! multiplicities into vertices of infinite degree.
//!
//! ```text
//! class r: d*3
//! class d: d*2
//! ```
//!
//! The `class` keyword is optional and lines may be joined with `/`, so the
//! presentation above can also be written `r: d*3 / d: d*2`.

mod analysis;
mod unfold;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::cardinal::{sum_family, Cardinal, CardinalError};
use crate::tree::is_label;

pub use analysis::{
    classify, count_presented, motion_presented, rank_presented, Classification, PresentedMotion,
    PresentedReport, Theorem, TreeKind,
};
pub use unfold::{asym_certificate, unfold, Certificate, Unfolding, MAX_UNFOLD};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentedError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("undefined class `{0}`")]
    UndefinedClass(String),
    #[error("class `{0}` defined twice")]
    DuplicateClass(String),
    #[error("zero multiplicity in slot `{0}`")]
    ZeroMultiplicity(String),
    #[error("presentation has no classes")]
    Empty,
    #[error("rank is only defined for rayless (acyclic) presentations")]
    NotRayless,
    #[error("cannot unfold infinite multiplicity `{0}`")]
    InfiniteUnfolding(String),
    #[error("unfolding exceeds {0} vertices")]
    UnfoldTooLarge(usize),
    #[error("depth must be at least 1")]
    InvalidDepth,
    #[error("presented tree is not asymmetrizable (count 0)")]
    NotAsymmetrizable,
    #[error(transparent)]
    Cardinal(#[from] CardinalError),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Slot {
    /// Index of the child class.
    pub class: usize,
    pub mult: Cardinal,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ClassDef {
    pub name: String,
    pub slots: Vec<Slot>,
}

/// A validated presentation; class 0 is the root.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TreePresentation {
    classes: Vec<ClassDef>,
}

impl TreePresentation {
    /// Builds a presentation from `(name, [(child, multiplicity)])` records.
    pub fn new<S: AsRef<str>>(
        defs: &[(S, Vec<(S, Cardinal)>)],
    ) -> Result<TreePresentation, PresentedError> {
        if defs.is_empty() {
            return Err(PresentedError::Empty);
        }
        let mut index = HashMap::new();
        for (i, (name, _)) in defs.iter().enumerate() {
            let name = name.as_ref();
            if !is_label(name) {
                return Err(PresentedError::Syntax {
                    line: i + 1,
                    msg: format!("invalid class name `{name}`"),
                });
            }
            if index.insert(name.to_string(), i).is_some() {
                return Err(PresentedError::DuplicateClass(name.to_string()));
            }
        }
        let mut classes = Vec::with_capacity(defs.len());
        for (name, slots) in defs {
            let mut out = Vec::with_capacity(slots.len());
            for (child, mult) in slots {
                let child = child.as_ref();
                let &class = index
                    .get(child)
                    .ok_or_else(|| PresentedError::UndefinedClass(child.to_string()))?;
                if mult.is_zero() {
                    return Err(PresentedError::ZeroMultiplicity(format!("{child}*0")));
                }
                out.push(Slot {
                    class,
                    mult: mult.clone(),
                });
            }
            classes.push(ClassDef {
                name: name.as_ref().to_string(),
                slots: out,
            });
        }
        Ok(TreePresentation { classes })
    }

    pub fn parse(text: &str) -> Result<TreePresentation, PresentedError> {
        let mut defs: Vec<(String, Vec<(String, Cardinal)>)> = Vec::new();
        let segments = text
            .lines()
            .enumerate()
            .flat_map(|(i, line)| {
                let line = line.split('#').next().unwrap_or("");
                line.split('/').map(move |seg| (i + 1, seg.trim()))
            })
            .filter(|(_, seg)| !seg.is_empty());
        for (line, seg) in segments {
            let err = |msg: String| PresentedError::Syntax { line, msg };
            let body = match seg.strip_prefix("class") {
                Some(rest) if rest.starts_with(char::is_whitespace) => rest.trim_start(),
                _ => seg,
            };
            let (name, slots) = body
                .split_once(':')
                .ok_or_else(|| err(format!("expected `NAME: slots`, got `{seg}`")))?;
            let name = name.trim();
            if !is_label(name) {
                return Err(err(format!("invalid class name `{name}`")));
            }
            let mut parsed = Vec::new();
            if !slots.trim().is_empty() {
                for slot in slots.split(',') {
                    let slot = slot.trim();
                    let (child, mult) = slot
                        .split_once('*')
                        .ok_or_else(|| err(format!("expected `NAME*MULT`, got `{slot}`")))?;
                    let child = child.trim();
                    if !is_label(child) {
                        return Err(err(format!("invalid class name `{child}`")));
                    }
                    let mult: Cardinal = mult
                        .trim()
                        .parse()
                        .map_err(|e: CardinalError| err(e.to_string()))?;
                    if mult.is_zero() {
                        return Err(PresentedError::ZeroMultiplicity(slot.to_string()));
                    }
                    parsed.push((child.to_string(), mult));
                }
            }
            defs.push((name.to_string(), parsed));
        }
        TreePresentation::new(&defs)
    }

    pub fn classes(&self) -> &[ClassDef] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn root(&self) -> usize {
        0
    }

    pub fn name(&self, class: usize) -> &str {
        &self.classes[class].name
    }

    pub fn class(&self, name: &str) -> Option<usize> {
        self.classes.iter().position(|c| c.name == name)
    }

    /// Classes reachable from `start`, in index order.
    pub(crate) fn reachable_from(&self, start: usize) -> Vec<bool> {
        let mut seen = vec![false; self.len()];
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(c) = stack.pop() {
            for slot in &self.classes[c].slots {
                if !seen[slot.class] {
                    seen[slot.class] = true;
                    stack.push(slot.class);
                }
            }
        }
        seen
    }

    /// Single-line rendering with `/` separators.
    pub fn to_line(&self) -> String {
        self.to_string().trim_end().replace('\n', " / ")
    }
}

impl FromStr for TreePresentation {
    type Err = PresentedError;

    fn from_str(s: &str) -> Result<Self, PresentedError> {
        TreePresentation::parse(s)
    }
}

impl fmt::Display for TreePresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for class in &self.classes {
            write!(f, "class {}:", class.name)?;
            for (i, slot) in class.slots.iter().enumerate() {
                let sep = if i == 0 { " " } else { ", " };
                write!(f, "{sep}{}*{}", self.classes[slot.class].name, slot.mult)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Quotient by counting bisimulation: unreachable classes are dropped and
/// classes with isomorphic unfoldings merged.
///
/// Blocks are refined by the signature "total multiplicity into each block"
/// until stable. Each merged class keeps the name of its first member and
/// classes stay in order of first member; slots into one class are summed
/// and listed by class order.
pub fn minimize(p: &TreePresentation) -> TreePresentation {
    let reach = p.reachable_from(p.root());
    let live: Vec<usize> = (0..p.len()).filter(|&c| reach[c]).collect();
    let mut block: Vec<usize> = vec![0; p.len()];
    let mut count = 1;
    loop {
        let mut ids: BTreeMap<(usize, Vec<(usize, Cardinal)>), usize> = BTreeMap::new();
        let mut next = vec![0; p.len()];
        for &c in &live {
            let sig = signature(p, c, &block);
            let key = (block[c], sig);
            let fresh = ids.len();
            next[c] = *ids.entry(key).or_insert(fresh);
        }
        let stable = ids.len() == count;
        block = next;
        count = ids.len();
        if stable {
            break;
        }
    }

    // Name blocks by their first member.
    let mut first: BTreeMap<usize, usize> = BTreeMap::new();
    for &c in &live {
        first.entry(block[c]).or_insert(c);
    }
    let mut order: Vec<(usize, usize)> = first.iter().map(|(&b, &c)| (c, b)).collect();
    order.sort_unstable();
    let new_index: HashMap<usize, usize> = order
        .iter()
        .enumerate()
        .map(|(i, &(_, b))| (b, i))
        .collect();
    let classes = order
        .iter()
        .map(|&(rep, _)| {
            let mut slots: Vec<Slot> = signature(p, rep, &block)
                .into_iter()
                .map(|(b, mult)| Slot {
                    class: new_index[&b],
                    mult,
                })
                .collect();
            slots.sort_by_key(|s| s.class);
            ClassDef {
                name: p.classes[rep].name.clone(),
                slots,
            }
        })
        .collect();
    TreePresentation { classes }
}

/// Total multiplicity of `c`'s slots into each block, by block id.
fn signature(p: &TreePresentation, c: usize, block: &[usize]) -> Vec<(usize, Cardinal)> {
    let mut by_block: BTreeMap<usize, Vec<(Cardinal, Cardinal)>> = BTreeMap::new();
    for slot in &p.classes[c].slots {
        by_block
            .entry(block[slot.class])
            .or_default()
            .push((Cardinal::one(), slot.mult.clone()));
    }
    by_block
        .into_iter()
        .map(|(b, terms)| (b, sum_family(&terms)))
        .collect()
}
