//! Full persistence: update histories branch into a version tree, and
//! queries may target any version.
//!
//! Recording walks the tree depth-first carrying a stack of per-version
//! overlays: entering a version pushes an empty overlay, the version's
//! updates run against a memory whose reads fall through the overlay stack
//! (newest first, then 0) and whose writes land in the top overlay, and
//! leaving pops the overlay into the version's permanent record. A query at
//! version `v` reads through the record chain from `v` up to the root —
//! the deepest recorded write wins.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::persistence::machine::{CellMachine, MemRead, MemWrite};
use crate::problems::marked::{check_path, MaOp, NodePath};

/// A rooted tree of versions; each version carries the update batch that
/// produced it from its parent. Node 0 is the root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VersionTree<U> {
    parents: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    updates: Vec<Vec<U>>,
}

impl<U> VersionTree<U> {
    /// A tree with only the root version.
    pub fn new(root_updates: Vec<U>) -> Self {
        VersionTree {
            parents: vec![None],
            children: vec![Vec::new()],
            updates: vec![root_updates],
        }
    }

    /// Append a child version; returns its id. Ids are dense and number
    /// versions in creation order.
    pub fn add_child(&mut self, parent: usize, updates: Vec<U>) -> Result<usize> {
        self.check_node(parent)?;
        let id = self.parents.len();
        self.parents.push(Some(parent));
        self.children.push(Vec::new());
        self.updates.push(updates);
        self.children[parent].push(id);
        Ok(id)
    }

    pub fn node_count(&self) -> usize {
        self.parents.len()
    }

    pub fn parent(&self, node: usize) -> Result<Option<usize>> {
        self.check_node(node)?;
        Ok(self.parents[node])
    }

    pub fn children(&self, node: usize) -> Result<&[usize]> {
        self.check_node(node)?;
        Ok(&self.children[node])
    }

    pub fn updates(&self, node: usize) -> Result<&[U]> {
        self.check_node(node)?;
        Ok(&self.updates[node])
    }

    /// Total updates across all versions.
    pub fn total_updates(&self) -> usize {
        self.updates.iter().map(Vec::len).sum()
    }

    /// Root-first list of versions on the path to `node`.
    pub fn path_from_root(&self, node: usize) -> Result<Vec<usize>> {
        self.check_node(node)?;
        let mut path = vec![node];
        let mut cur = node;
        while let Some(p) = self.parents[cur] {
            path.push(p);
            cur = p;
        }
        path.reverse();
        Ok(path)
    }

    fn check_node(&self, node: usize) -> Result<()> {
        if node >= self.parents.len() {
            return Err(Error::range(format!(
                "version {node} out of range for {} versions",
                self.parents.len()
            )));
        }
        Ok(())
    }

    /// The same tree with ids renumbered in depth-first preorder (children
    /// in creation order). The text format identifies versions by position
    /// only, so `from_text(to_text(t)) == t.renumbered_preorder()`; trees
    /// built in preorder are fixed points.
    pub fn renumbered_preorder(&self) -> VersionTree<U>
    where
        U: Clone,
    {
        fn copy<U: Clone>(
            src: &VersionTree<U>,
            node: usize,
            parent_in_dst: Option<usize>,
            dst: &mut Option<VersionTree<U>>,
        ) {
            let updates = src.updates[node].clone();
            let id = match (parent_in_dst, dst.as_mut()) {
                (None, None) => {
                    *dst = Some(VersionTree::new(updates));
                    0
                }
                (Some(p), Some(t)) => t.add_child(p, updates).expect("parent id is valid"),
                _ => unreachable!("root is copied first"),
            };
            for &c in &src.children[node] {
                copy(src, c, Some(id), dst);
            }
        }
        let mut dst = None;
        copy(self, 0, None, &mut dst);
        dst.expect("root was copied")
    }

    /// Serialize with the documented grammar:
    ///
    /// ```text
    /// node    := '(' '[' update* ']' node* ')'
    /// ```
    ///
    /// Updates are codec tokens separated by single spaces; children appear
    /// in creation order. Tokens may not contain whitespace, parentheses or
    /// brackets (enforced here).
    pub fn to_text(&self, codec: &dyn UpdateCodec<U>) -> Result<String> {
        let mut out = String::new();
        self.write_node(0, codec, &mut out)?;
        Ok(out)
    }

    fn write_node(&self, node: usize, codec: &dyn UpdateCodec<U>, out: &mut String) -> Result<()> {
        out.push('(');
        out.push('[');
        for (i, u) in self.updates[node].iter().enumerate() {
            let token = codec.encode(u)?;
            if token.is_empty()
                || token.contains(|c: char| c.is_whitespace() || "()[]".contains(c))
            {
                return Err(Error::param(format!("codec produced invalid token {token:?}")));
            }
            if i > 0 {
                out.push(' ');
            }
            out.push_str(&token);
        }
        out.push(']');
        for &c in &self.children[node] {
            out.push(' ');
            self.write_node(c, codec, out)?;
        }
        out.push(')');
        Ok(())
    }

    /// Parse the [`Self::to_text`] form. Whitespace between tokens is
    /// flexible; exactly one root node is required.
    pub fn from_text(text: &str, codec: &dyn UpdateCodec<U>) -> Result<Self> {
        let mut tokens = tokenize(text);
        let mut tree: Option<VersionTree<U>> = None;
        let root_start = tokens.next();
        match root_start {
            Some(Tok::Open) => {
                parse_node(&mut tokens, codec, &mut tree, None)?;
            }
            other => return Err(Error::parse(format!("expected '(', found {other:?}"))),
        }
        if let Some(extra) = tokens.next() {
            return Err(Error::parse(format!("trailing input after root: {extra:?}")));
        }
        Ok(tree.expect("root was parsed"))
    }
}

/// Token-level encoding of one update for the version-tree text format.
pub trait UpdateCodec<U> {
    /// Encode as a token free of whitespace, parentheses and brackets.
    fn encode(&self, u: &U) -> Result<String>;
    /// Decode one token.
    fn decode(&self, token: &str) -> Result<U>;
}

#[derive(Debug, PartialEq, Eq)]
enum Tok {
    Open,
    Close,
    OpenB,
    CloseB,
    Atom(String),
}

fn tokenize(text: &str) -> impl Iterator<Item = Tok> + '_ {
    let mut chars = text.chars().peekable();
    std::iter::from_fn(move || {
        while let Some(&c) = chars.peek() {
            if c.is_whitespace() {
                chars.next();
            } else {
                break;
            }
        }
        let c = *chars.peek()?;
        match c {
            '(' => {
                chars.next();
                Some(Tok::Open)
            }
            ')' => {
                chars.next();
                Some(Tok::Close)
            }
            '[' => {
                chars.next();
                Some(Tok::OpenB)
            }
            ']' => {
                chars.next();
                Some(Tok::CloseB)
            }
            _ => {
                let mut atom = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_whitespace() || "()[]".contains(c) {
                        break;
                    }
                    atom.push(c);
                    chars.next();
                }
                Some(Tok::Atom(atom))
            }
        }
    })
}

/// Parse one node body (the `(` was already consumed), appending into the
/// tree under `parent`.
fn parse_node<U>(
    tokens: &mut impl Iterator<Item = Tok>,
    codec: &dyn UpdateCodec<U>,
    tree: &mut Option<VersionTree<U>>,
    parent: Option<usize>,
) -> Result<()> {
    match tokens.next() {
        Some(Tok::OpenB) => {}
        other => return Err(Error::parse(format!("expected '[', found {other:?}"))),
    }
    let mut updates = Vec::new();
    loop {
        match tokens.next() {
            Some(Tok::Atom(a)) => updates.push(codec.decode(&a)?),
            Some(Tok::CloseB) => break,
            other => return Err(Error::parse(format!("expected update or ']', found {other:?}"))),
        }
    }
    let id = match (parent, tree.as_mut()) {
        (None, None) => {
            *tree = Some(VersionTree::new(updates));
            0
        }
        (Some(p), Some(t)) => t.add_child(p, updates)?,
        _ => return Err(Error::parse("malformed tree nesting".to_string())),
    };
    loop {
        match tokens.next() {
            Some(Tok::Open) => parse_node(tokens, codec, tree, Some(id))?,
            Some(Tok::Close) => return Ok(()),
            other => return Err(Error::parse(format!("expected '(' or ')', found {other:?}"))),
        }
    }
}

/// Codec for [`crate::persistence::machine::CounterMachine`] updates.
#[derive(Debug, Clone, Copy, Default)]
pub struct CounterCodec;

impl UpdateCodec<()> for CounterCodec {
    fn encode(&self, _u: &()) -> Result<String> {
        Ok("inc".to_string())
    }

    fn decode(&self, token: &str) -> Result<()> {
        if token == "inc" {
            Ok(())
        } else {
            Err(Error::parse(format!("expected \"inc\", found {token:?}")))
        }
    }
}

/// Codec for marked-ancestor updates: `mark:<digits>` / `unmark:<digits>`
/// with base-36 digit characters (the root is the empty digit string).
#[derive(Debug, Clone, Copy)]
pub struct MaOpCodec {
    degree: u32,
    depth: usize,
}

impl MaOpCodec {
    pub fn new(degree: u32, depth: usize) -> Result<Self> {
        if degree > 36 {
            return Err(Error::param(format!(
                "text codec supports degree <= 36, got {degree}"
            )));
        }
        crate::problems::marked::check_tree_params(degree, depth)?;
        Ok(MaOpCodec { degree, depth })
    }
}

impl UpdateCodec<MaOp> for MaOpCodec {
    fn encode(&self, u: &MaOp) -> Result<String> {
        check_path(self.degree, self.depth, u.node())?;
        let (verb, node) = match u {
            MaOp::Mark(n) => ("mark", n),
            MaOp::Unmark(n) => ("unmark", n),
        };
        let mut s = String::with_capacity(verb.len() + 1 + node.len());
        s.push_str(verb);
        s.push(':');
        for &d in node {
            s.push(char::from_digit(d, 36).expect("digit < 36 by check_path"));
        }
        Ok(s)
    }

    fn decode(&self, token: &str) -> Result<MaOp> {
        let (verb, digits) = token
            .split_once(':')
            .ok_or_else(|| Error::parse(format!("update token {token:?}: missing ':'")))?;
        let node: NodePath = digits
            .chars()
            .map(|c| {
                c.to_digit(36)
                    .ok_or_else(|| Error::parse(format!("update token {token:?}: bad digit {c:?}")))
            })
            .collect::<Result<_>>()?;
        check_path(self.degree, self.depth, &node)?;
        match verb {
            "mark" => Ok(MaOp::Mark(node)),
            "unmark" => Ok(MaOp::Unmark(node)),
            _ => Err(Error::parse(format!("update token {token:?}: unknown verb {verb:?}"))),
        }
    }
}

/// Overlay-stack memory used while recording one root-to-node path.
struct OverlayMemory<'a> {
    overlays: &'a mut Vec<BTreeMap<u64, u64>>,
}

impl MemRead for OverlayMemory<'_> {
    fn read(&self, addr: u64) -> u64 {
        for overlay in self.overlays.iter().rev() {
            if let Some(&v) = overlay.get(&addr) {
                return v;
            }
        }
        0
    }
}

impl MemWrite for OverlayMemory<'_> {
    fn write(&mut self, addr: u64, value: u64) {
        self.overlays.last_mut().expect("overlay stack non-empty").insert(addr, value);
    }
}

/// A recorded version tree, queryable at any version.
#[derive(Debug, Clone)]
pub struct FullStore<M: CellMachine> {
    machine: M,
    parents: Vec<Option<usize>>,
    records: Vec<BTreeMap<u64, u64>>,
}

/// Record every version of the tree by one depth-first replay.
pub fn record_full<M: CellMachine>(
    machine: M,
    tree: &VersionTree<M::Update>,
) -> Result<FullStore<M>> {
    let mut records: Vec<BTreeMap<u64, u64>> = vec![BTreeMap::new(); tree.node_count()];
    let mut overlays: Vec<BTreeMap<u64, u64>> = Vec::new();
    dfs(&machine, tree, 0, &mut overlays, &mut records)?;
    let parents = (0..tree.node_count())
        .map(|n| tree.parent(n).expect("node in range"))
        .collect();
    Ok(FullStore { machine, parents, records })
}

fn dfs<M: CellMachine>(
    machine: &M,
    tree: &VersionTree<M::Update>,
    node: usize,
    overlays: &mut Vec<BTreeMap<u64, u64>>,
    records: &mut Vec<BTreeMap<u64, u64>>,
) -> Result<()> {
    overlays.push(BTreeMap::new());
    {
        let mut mem = OverlayMemory { overlays };
        for u in tree.updates(node)? {
            machine.apply_update(&mut mem, u)?;
        }
    }
    for &c in tree.children(node)? {
        dfs(machine, tree, c, overlays, records)?;
    }
    records[node] = overlays.pop().expect("matching push");
    Ok(())
}

/// Version-chain view: reads fall through the records from `version` to
/// the root.
struct VersionView<'a> {
    parents: &'a [Option<usize>],
    records: &'a [BTreeMap<u64, u64>],
    version: usize,
}

impl MemRead for VersionView<'_> {
    fn read(&self, addr: u64) -> u64 {
        let mut cur = Some(self.version);
        while let Some(v) = cur {
            if let Some(&val) = self.records[v].get(&addr) {
                return val;
            }
            cur = self.parents[v];
        }
        0
    }
}

impl<M: CellMachine> FullStore<M> {
    pub fn version_count(&self) -> usize {
        self.records.len()
    }

    /// Answer `q` as of `version`.
    pub fn query(&self, q: &M::Query, version: usize) -> Result<M::Answer> {
        if version >= self.records.len() {
            return Err(Error::range(format!(
                "version {version} out of range for {} versions",
                self.records.len()
            )));
        }
        let view = VersionView {
            parents: &self.parents,
            records: &self.records,
            version,
        };
        self.machine.answer_query(&view, q)
    }
}

/// Debug rendering of a version tree shape (ids and update counts), useful
/// in reports.
pub fn tree_summary<U>(tree: &VersionTree<U>) -> String {
    let mut out = String::new();
    for node in 0..tree.node_count() {
        let parent = tree.parent(node).expect("in range");
        let updates = tree.updates(node).expect("in range").len();
        match parent {
            None => write!(out, "v{node}[{updates}]").expect("string write"),
            Some(p) => write!(out, " v{node}[{updates}]<-v{p}").expect("string write"),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::persistence::machine::{replay_fresh, CounterMachine, MarkedAncestorMachine};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn version_tree_structure() {
        let mut t: VersionTree<u32> = VersionTree::new(vec![1, 2]);
        let a = t.add_child(0, vec![3]).unwrap();
        let b = t.add_child(0, vec![]).unwrap();
        let c = t.add_child(a, vec![4, 5]).unwrap();
        assert_eq!((a, b, c), (1, 2, 3));
        assert_eq!(t.node_count(), 4);
        assert_eq!(t.total_updates(), 5);
        assert_eq!(t.path_from_root(c).unwrap(), vec![0, 1, 3]);
        assert_eq!(t.children(0).unwrap(), &[1, 2]);
        assert!(t.add_child(9, vec![]).is_err());
        assert!(t.updates(9).is_err());
    }

    #[test]
    fn counter_versions_count_path_lengths() {
        // Each version adds some increments; the count at a version is the
        // total along its root path.
        let mut t: VersionTree<()> = VersionTree::new(vec![(); 2]);
        let a = t.add_child(0, vec![(); 3]).unwrap();
        let b = t.add_child(0, vec![]).unwrap();
        let c = t.add_child(a, vec![(); 1]).unwrap();
        let store = record_full(CounterMachine, &t).unwrap();
        assert_eq!(store.query(&(), 0).unwrap(), 2);
        assert_eq!(store.query(&(), a).unwrap(), 5);
        assert_eq!(store.query(&(), b).unwrap(), 2);
        assert_eq!(store.query(&(), c).unwrap(), 6);
        assert!(store.query(&(), 4).is_err());
    }

    #[test]
    fn sibling_versions_do_not_leak_writes() {
        let machine = MarkedAncestorMachine::new(2, 2).unwrap();
        let mut t: VersionTree<MaOp> = VersionTree::new(vec![]);
        let marked = t.add_child(0, vec![MaOp::Mark(vec![0])]).unwrap();
        let clean = t.add_child(0, vec![]).unwrap();
        let store = record_full(machine, &t).unwrap();
        assert!(store.query(&vec![0, 0], marked).unwrap());
        assert!(!store.query(&vec![0, 0], clean).unwrap());
        assert!(!store.query(&vec![0, 0], 0).unwrap());
    }

    #[test]
    fn full_store_matches_path_replay_on_random_trees() {
        let (b, d) = (2, 3);
        let machine = MarkedAncestorMachine::new(b, d).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(41);

        for _ in 0..30 {
            // Random tree with random batches of updates.
            let mut tree: VersionTree<MaOp> = VersionTree::new(random_batch(&mut rng, b, d));
            for _ in 0..rng.gen_range(1..20) {
                let parent = rng.gen_range(0..tree.node_count());
                let batch = random_batch(&mut rng, b, d);
                tree.add_child(parent, batch).unwrap();
            }
            let store = record_full(machine, &tree).unwrap();

            for node in 0..tree.node_count() {
                // The oracle: replay the concatenated updates along the path.
                let mut flat = Vec::new();
                for v in tree.path_from_root(node).unwrap() {
                    flat.extend_from_slice(tree.updates(v).unwrap());
                }
                for leaf_rank in 0..(b as u64).pow(d as u32) {
                    let mut leaf = Vec::with_capacity(d);
                    let mut rest = leaf_rank;
                    for _ in 0..d {
                        leaf.push((rest % b as u64) as u32);
                        rest /= b as u64;
                    }
                    assert_eq!(
                        store.query(&leaf, node).unwrap(),
                        replay_fresh(&machine, &flat, &leaf).unwrap(),
                    );
                }
            }
        }
    }

    fn random_batch(rng: &mut ChaCha8Rng, b: u32, d: usize) -> Vec<MaOp> {
        (0..rng.gen_range(0..6))
            .map(|_| {
                let len = rng.gen_range(0..=d);
                let node: Vec<u32> = (0..len).map(|_| rng.gen_range(0..b)).collect();
                if rng.gen_bool(0.5) {
                    MaOp::Mark(node)
                } else {
                    MaOp::Unmark(node)
                }
            })
            .collect()
    }

    #[test]
    fn text_roundtrip_counter() {
        // Built in preorder: round-trip is the identity.
        let mut t: VersionTree<()> = VersionTree::new(vec![(); 2]);
        let a = t.add_child(0, vec![()]).unwrap();
        t.add_child(a, vec![(); 3]).unwrap();
        t.add_child(0, vec![]).unwrap();
        let text = t.to_text(&CounterCodec).unwrap();
        assert_eq!(text, "([inc inc] ([inc] ([inc inc inc])) ([]))");
        let parsed = VersionTree::from_text(&text, &CounterCodec).unwrap();
        assert_eq!(parsed, t);
    }

    #[test]
    fn text_roundtrip_renumbers_non_preorder_trees() {
        // Built breadth-first: ids come back renumbered in preorder, with
        // identical structure.
        let mut t: VersionTree<()> = VersionTree::new(vec![]);
        let a = t.add_child(0, vec![()]).unwrap();
        t.add_child(0, vec![(), ()]).unwrap();
        t.add_child(a, vec![(), (), ()]).unwrap();
        let text = t.to_text(&CounterCodec).unwrap();
        let parsed = VersionTree::from_text(&text, &CounterCodec).unwrap();
        assert_ne!(parsed, t);
        assert_eq!(parsed, t.renumbered_preorder());
        // Canonicalization is idempotent and content-preserving.
        assert_eq!(parsed.renumbered_preorder(), parsed);
        assert_eq!(parsed.total_updates(), t.total_updates());
    }

    #[test]
    fn text_roundtrip_marked_ancestor() {
        let codec = MaOpCodec::new(2, 3).unwrap();
        let mut t: VersionTree<MaOp> = VersionTree::new(vec![MaOp::Mark(vec![])]);
        t.add_child(0, vec![MaOp::Mark(vec![0, 1]), MaOp::Unmark(vec![])]).unwrap();
        let text = t.to_text(&codec).unwrap();
        assert_eq!(text, "([mark:] ([mark:01 unmark:]))");
        assert_eq!(VersionTree::from_text(&text, &codec).unwrap(), t);

        assert!(VersionTree::from_text("([mark:09])", &codec).is_err()); // bad digit
        assert!(VersionTree::from_text("([flip:0])", &codec).is_err()); // bad verb
        assert!(VersionTree::from_text("([mark:0]", &codec).is_err()); // unbalanced
        assert!(VersionTree::from_text("([]) ([])", &codec).is_err()); // two roots
    }
}
