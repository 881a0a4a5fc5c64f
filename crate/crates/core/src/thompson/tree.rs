//! Full rooted binary trees, stored as the depths of their leaves read left
//! to right. A depth sequence determines the tree, so it doubles as the
//! canonical form.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryTree {
    depths: Vec<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Node {
    Leaf(usize),
    Caret(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

/// A caret with its children and the caret above it. Carets are indexed in
/// infix order, so caret `k` sits between leaves `k` and `k + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caret {
    pub left: Node,
    pub right: Node,
    pub parent: Option<(usize, Side)>,
}

/// Explicit parent/child structure of a tree.
#[derive(Clone, Debug)]
pub struct TreeShape {
    pub carets: Vec<Caret>,
    pub leaf_parent: Vec<Option<(usize, Side)>>,
    pub root: Node,
}

impl TreeShape {
    fn parent(&self, node: Node) -> Option<(usize, Side)> {
        match node {
            Node::Leaf(i) => self.leaf_parent[i],
            Node::Caret(k) => self.carets[k].parent,
        }
    }

    /// Reached from the root by left edges only (the root included).
    pub fn on_left_side(&self, node: Node) -> bool {
        match self.parent(node) {
            None => true,
            Some((p, Side::Left)) => self.on_left_side(Node::Caret(p)),
            Some((_, Side::Right)) => false,
        }
    }

    /// Reached from the root by right edges only (the root included).
    pub fn on_right_side(&self, node: Node) -> bool {
        match self.parent(node) {
            None => true,
            Some((p, Side::Right)) => self.on_right_side(Node::Caret(p)),
            Some((_, Side::Left)) => false,
        }
    }
}

/// Pushes a subtree of depth `d` onto a merge stack, combining equal-depth
/// neighbours into their parent.
fn push_merge(stack: &mut Vec<u32>, mut d: u32) {
    while let Some(&top) = stack.last() {
        if top != d || d == 0 {
            break;
        }
        stack.pop();
        d -= 1;
    }
    stack.push(d);
}

impl BinaryTree {
    /// The one-leaf tree with no carets.
    pub fn trivial() -> Self {
        BinaryTree { depths: vec![0] }
    }

    pub fn from_depths(depths: Vec<u32>) -> Result<Self> {
        let mut stack = Vec::new();
        for (i, &d) in depths.iter().enumerate() {
            if stack == [0] {
                return Err(Error::MalformedTree(format!(
                    "leaf depths complete a tree before leaf {i}"
                )));
            }
            push_merge(&mut stack, d);
        }
        if stack != [0] {
            return Err(Error::MalformedTree(format!(
                "leaf depths {depths:?} do not form a full binary tree"
            )));
        }
        Ok(BinaryTree { depths })
    }

    pub(crate) fn from_depths_unchecked(depths: Vec<u32>) -> Self {
        debug_assert!(Self::from_depths(depths.clone()).is_ok());
        BinaryTree { depths }
    }

    /// Root with `n` carets hanging down the right side.
    pub fn right_vine(n: usize) -> Self {
        let mut depths: Vec<u32> = (1..=n as u32).collect();
        depths.push(n as u32);
        Self::from_depths_unchecked(depths)
    }

    /// Root with `n` carets hanging down the left side.
    pub fn left_vine(n: usize) -> Self {
        let mut depths = Self::right_vine(n).depths;
        depths.reverse();
        Self::from_depths_unchecked(depths)
    }

    pub fn depths(&self) -> &[u32] {
        &self.depths
    }

    pub fn leaf_count(&self) -> usize {
        self.depths.len()
    }

    pub fn caret_count(&self) -> usize {
        self.depths.len() - 1
    }

    pub fn shape(&self) -> TreeShape {
        let n = self.caret_count();
        let mut carets: Vec<Option<Caret>> = vec![None; n];
        let mut leaf_parent = vec![None; self.depths.len()];
        // (depth, node, last leaf below)
        let mut stack: Vec<(u32, Node, usize)> = Vec::new();
        for (i, &d) in self.depths.iter().enumerate() {
            let mut entry = (d, Node::Leaf(i), i);
            while let Some(&(top_d, left, left_last)) = stack.last() {
                if top_d != entry.0 {
                    break;
                }
                stack.pop();
                let k = left_last;
                for (child, side) in [(left, Side::Left), (entry.1, Side::Right)] {
                    match child {
                        Node::Leaf(j) => leaf_parent[j] = Some((k, side)),
                        Node::Caret(c) => {
                            carets[c].as_mut().expect("child built").parent = Some((k, side))
                        }
                    }
                }
                carets[k] = Some(Caret {
                    left,
                    right: entry.1,
                    parent: None,
                });
                entry = (top_d - 1, Node::Caret(k), entry.2);
            }
            stack.push(entry);
        }
        let root = stack.pop().expect("tree has a root").1;
        TreeShape {
            carets: carets
                .into_iter()
                .map(|c| c.expect("every caret built"))
                .collect(),
            leaf_parent,
            root,
        }
    }

    /// `exposed[k]` is true when leaves `k` and `k + 1` are the two children
    /// of one caret.
    pub fn exposed_carets(&self) -> Vec<bool> {
        let mut exposed = vec![false; self.caret_count()];
        let mut stack: Vec<(u32, Option<usize>)> = Vec::new();
        for (i, &d) in self.depths.iter().enumerate() {
            let mut entry = (d, Some(i));
            while let Some(&(top_d, top_leaf)) = stack.last() {
                if top_d != entry.0 {
                    break;
                }
                stack.pop();
                if let (Some(l), Some(_)) = (top_leaf, entry.1) {
                    exposed[l] = true;
                }
                entry = (top_d - 1, None);
            }
            stack.push(entry);
        }
        exposed
    }

    /// Removes the exposed caret over leaves `k` and `k + 1`.
    pub(crate) fn collapse(&mut self, k: usize) {
        self.depths[k] -= 1;
        self.depths.remove(k + 1);
    }

    /// Hangs a caret below leaf `k`.
    pub fn expand(&mut self, k: usize) {
        let d = self.depths[k] + 1;
        self.depths[k] = d;
        self.depths.insert(k + 1, d);
    }

    /// Leaf exponents: for each leaf, the length of the longest run of left
    /// edges climbing from it that stops short of the right side of the tree.
    pub fn leaf_exponents(&self) -> Vec<u32> {
        let shape = self.shape();
        (0..self.leaf_count())
            .map(|i| {
                let mut node = Node::Leaf(i);
                let mut count = 0;
                while let Some((p, Side::Left)) = shape.parent(node) {
                    node = Node::Caret(p);
                    count += 1;
                }
                if count > 0 && shape.on_right_side(node) {
                    count -= 1;
                }
                count
            })
            .collect()
    }

    /// Parenthesized form with `.` for a leaf, e.g. `((..).)`.
    pub fn to_paren_string(&self) -> String {
        fn walk(depths: &[u32], idx: &mut usize, depth: u32, out: &mut String) {
            if depths[*idx] == depth {
                out.push('.');
                *idx += 1;
            } else {
                out.push('(');
                walk(depths, idx, depth + 1, out);
                walk(depths, idx, depth + 1, out);
                out.push(')');
            }
        }
        let mut out = String::with_capacity(2 * self.depths.len());
        walk(&self.depths, &mut 0, 0, &mut out);
        out
    }

    pub fn parse(input: &str) -> Result<Self> {
        fn walk(bytes: &[u8], pos: &mut usize, depth: u32, out: &mut Vec<u32>) -> Result<()> {
            match bytes.get(*pos) {
                Some(b'.') => {
                    *pos += 1;
                    out.push(depth);
                    Ok(())
                }
                Some(b'(') => {
                    *pos += 1;
                    walk(bytes, pos, depth + 1, out)?;
                    walk(bytes, pos, depth + 1, out)?;
                    if bytes.get(*pos) != Some(&b')') {
                        return Err(Error::MalformedTree(format!(
                            "expected ')' at offset {pos}"
                        )));
                    }
                    *pos += 1;
                    Ok(())
                }
                other => Err(Error::MalformedTree(format!(
                    "unexpected {:?} at offset {pos}",
                    other.map(|&b| b as char)
                ))),
            }
        }
        let compact: Vec<u8> = input.bytes().filter(|b| !b.is_ascii_whitespace()).collect();
        let mut depths = Vec::new();
        let mut pos = 0;
        walk(&compact, &mut pos, 0, &mut depths)?;
        if pos != compact.len() {
            return Err(Error::MalformedTree(format!(
                "trailing input at offset {pos}"
            )));
        }
        Ok(BinaryTree { depths })
    }

    /// Appends the preorder encoding (1 = caret, 0 = leaf) to a bit buffer.
    pub(crate) fn push_preorder_bits(&self, bits: &mut BitBuf) {
        fn walk(depths: &[u32], idx: &mut usize, depth: u32, bits: &mut BitBuf) {
            if depths[*idx] == depth {
                bits.push(false);
                *idx += 1;
            } else {
                bits.push(true);
                walk(depths, idx, depth + 1, bits);
                walk(depths, idx, depth + 1, bits);
            }
        }
        walk(&self.depths, &mut 0, 0, bits);
    }

    /// Reads one preorder-encoded tree starting at bit `pos`.
    pub(crate) fn read_preorder_bits(words: &[u64], pos: &mut usize) -> Self {
        fn walk(words: &[u64], pos: &mut usize, depth: u32, out: &mut Vec<u32>) {
            let bit = words[*pos / 64] >> (*pos % 64) & 1 == 1;
            *pos += 1;
            if bit {
                walk(words, pos, depth + 1, out);
                walk(words, pos, depth + 1, out);
            } else {
                out.push(depth);
            }
        }
        let mut depths = Vec::new();
        walk(words, pos, 0, &mut depths);
        BinaryTree { depths }
    }
}

impl fmt::Display for BinaryTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_paren_string())
    }
}

#[derive(Default)]
pub(crate) struct BitBuf {
    words: Vec<u64>,
    len: usize,
}

impl BitBuf {
    pub(crate) fn push(&mut self, bit: bool) {
        if self.len.is_multiple_of(64) {
            self.words.push(0);
        }
        if bit {
            *self.words.last_mut().expect("word allocated") |= 1 << (self.len % 64);
        }
        self.len += 1;
    }

    pub(crate) fn into_words(self) -> Box<[u64]> {
        self.words.into_boxed_slice()
    }
}

/// Relative leaf depths of the common refinement of two trees below each of
/// their leaves: entry `i` of the first list describes the subtree that leaf
/// `i` of `a` must grow so that `a` becomes the refinement, and likewise for
/// `b`.
pub(crate) fn refine(a: &[u32], b: &[u32]) -> (Vec<Vec<u32>>, Vec<Vec<u32>>) {
    fn cover(coarse: u32, fine: &[u32], j: &mut usize, fine_out: &mut Vec<Vec<u32>>) -> Vec<u32> {
        let mut rel = Vec::new();
        let mut stack = Vec::new();
        while stack != [0] {
            let r = fine[*j] - coarse;
            rel.push(r);
            fine_out.push(vec![0]);
            push_merge(&mut stack, r);
            *j += 1;
        }
        rel
    }

    let mut ra = Vec::with_capacity(a.len());
    let mut rb = Vec::with_capacity(b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() {
        let (da, db) = (a[i], b[j]);
        if da == db {
            ra.push(vec![0]);
            rb.push(vec![0]);
            j += 1;
        } else if da < db {
            ra.push(cover(da, b, &mut j, &mut rb));
        } else {
            let mut ib = i;
            let rel = cover(db, a, &mut ib, &mut ra);
            rb.push(rel);
            j += 1;
            i = ib;
            continue;
        }
        i += 1;
    }
    debug_assert_eq!(j, b.len());
    (ra, rb)
}

/// Grows leaf `i` of `tree` into the subtree with relative depths `rel[i]`.
pub(crate) fn graft(tree: &[u32], rel: &[Vec<u32>]) -> Vec<u32> {
    tree.iter()
        .zip(rel)
        .flat_map(|(&d, sub)| sub.iter().map(move |&r| d + r))
        .collect()
}
