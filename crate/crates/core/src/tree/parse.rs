//! Text formats for rooted and unrooted trees.
//!
//! Rooted trees use a bracket grammar, e.g. `w(a,b(c))`:
//!
//! ```text
//! node  := LABEL? group?      LABEL := [A-Za-z0-9_]+
//! group := '(' node (',' node)* ')'
//! ```
//!
//! A bare `*` is an unlabeled leaf and whitespace is ignored. Unrooted trees
//! are line based: a `tree unrooted` header followed by one `u v` edge per line
//! (a line holding a single label declares a vertex, which is how the one
//! vertex tree is written).

use std::collections::HashMap;

use super::{RootedTree, TreeError, UnrootedTree};

pub(crate) fn is_label_byte(b: u8) -> bool {
    b.is_ascii_alphanumeric() || b == b'_'
}

pub(crate) fn is_label(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(is_label_byte)
}

fn syntax(pos: usize, msg: impl Into<String>) -> TreeError {
    TreeError::Syntax {
        pos,
        msg: msg.into(),
    }
}

/// Parses the bracket grammar. Vertex ids are assigned in depth-first
/// (preorder) input order; missing labels become `v0, v1, ...` in that order.
pub fn parse_rooted(text: &str) -> Result<RootedTree, TreeError> {
    let bytes = text.as_bytes();
    let mut pos = 0;
    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    };

    let mut labels: Vec<Option<String>> = Vec::new();
    let mut parents: Vec<Option<usize>> = Vec::new();
    let mut open: Vec<usize> = Vec::new();

    skip_ws(&mut pos);
    if pos == bytes.len() {
        return Err(TreeError::Empty);
    }
    'nodes: loop {
        skip_ws(&mut pos);
        let id = labels.len();
        parents.push(open.last().copied());
        let start = pos;
        let mut star = false;
        if pos < bytes.len() && bytes[pos] == b'*' {
            star = true;
            pos += 1;
            labels.push(None);
        } else {
            while pos < bytes.len() && is_label_byte(bytes[pos]) {
                pos += 1;
            }
            labels.push((pos > start).then(|| text[start..pos].to_string()));
        }
        skip_ws(&mut pos);
        if pos < bytes.len() && bytes[pos] == b'(' {
            if star {
                return Err(syntax(pos, "`*` denotes a leaf and cannot have children"));
            }
            pos += 1;
            open.push(id);
            continue 'nodes;
        }
        if !star && pos == start {
            return Err(syntax(pos, "expected a label, `*` or `(`"));
        }
        loop {
            skip_ws(&mut pos);
            match bytes.get(pos) {
                Some(b',') if !open.is_empty() => {
                    pos += 1;
                    continue 'nodes;
                }
                Some(b')') if !open.is_empty() => {
                    pos += 1;
                    open.pop();
                }
                None if open.is_empty() => break 'nodes,
                None => return Err(syntax(pos, "unclosed `(`")),
                Some(&b) => {
                    return Err(syntax(pos, format!("unexpected `{}`", b as char)));
                }
            }
        }
    }

    let explicit: std::collections::HashSet<&str> =
        labels.iter().flatten().map(String::as_str).collect();
    let mut counter = 0usize;
    let mut resolved = Vec::with_capacity(labels.len());
    for label in &labels {
        match label {
            Some(l) => resolved.push(l.clone()),
            None => {
                let auto = format!("v{counter}");
                counter += 1;
                if explicit.contains(auto.as_str()) {
                    return Err(TreeError::DuplicateLabel(auto));
                }
                resolved.push(auto);
            }
        }
    }
    RootedTree::from_parents(resolved, parents)
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

/// Interns labels in order of first appearance.
#[derive(Default)]
pub(crate) struct LabelTable {
    pub labels: Vec<String>,
    index: HashMap<String, usize>,
}

impl LabelTable {
    pub fn intern(&mut self, label: &str) -> usize {
        if let Some(&i) = self.index.get(label) {
            return i;
        }
        let i = self.labels.len();
        self.labels.push(label.to_string());
        self.index.insert(label.to_string(), i);
        i
    }
}

/// Parses a header line and `u v` edge lines into labels and edges.
pub(crate) fn parse_edge_list(
    text: &str,
    header: impl Fn(&str) -> Result<Option<String>, String>,
) -> Result<(LabelTable, Vec<(usize, usize)>, Option<String>), TreeError> {
    let mut lines = content_lines(text);
    let (_, first) = lines.next().ok_or(TreeError::Empty)?;
    let extra = header(first).map_err(|msg| syntax(0, msg))?;
    let mut table = LabelTable::default();
    if let Some(root) = &extra {
        table.intern(root);
    }
    let mut edges = Vec::new();
    for (lineno, line) in lines {
        let parts: Vec<&str> = line.split_whitespace().collect();
        match parts.as_slice() {
            [u] if is_label(u) => {
                table.intern(u);
            }
            [u, v] if is_label(u) && is_label(v) => {
                let a = table.intern(u);
                let b = table.intern(v);
                edges.push((a, b));
            }
            _ => {
                return Err(syntax(
                    lineno,
                    format!("line {lineno}: expected `u v`, got `{line}`"),
                ))
            }
        }
    }
    Ok((table, edges, extra))
}

/// Parses the `tree unrooted` line format.
pub fn parse_unrooted(text: &str) -> Result<UnrootedTree, TreeError> {
    let (table, edges, _) = parse_edge_list(text, |first| {
        if first.split_whitespace().collect::<Vec<_>>() == ["tree", "unrooted"] {
            Ok(None)
        } else {
            Err("expected header `tree unrooted`".to_string())
        }
    })?;
    UnrootedTree::from_edges(table.labels, &edges)
}

/// Either kind of finite tree, as detected from the input text.
#[derive(Debug, Clone)]
pub enum TreeInput {
    Rooted(RootedTree),
    Unrooted(UnrootedTree),
}

/// Parses unrooted input when the first content line is `tree unrooted`,
/// otherwise the rooted bracket grammar.
pub fn parse_tree_input(text: &str) -> Result<TreeInput, TreeError> {
    let unrooted = content_lines(text)
        .next()
        .is_some_and(|(_, l)| l.split_whitespace().next() == Some("tree"));
    if unrooted {
        parse_unrooted(text).map(TreeInput::Unrooted)
    } else {
        parse_rooted(text).map(TreeInput::Rooted)
    }
}
