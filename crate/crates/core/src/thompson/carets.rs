//! Caret types and the pairing weights of the φ-image family.

use super::pair::TreePair;
use super::tree::{BinaryTree, Node};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CaretType {
    /// First caret in infix order (always on the left side).
    L0,
    /// Any other caret on the left side, the root included.
    LL,
    /// Interior caret whose right child is a leaf.
    I0,
    /// Interior caret whose right child is a caret.
    IR,
    /// Last caret in infix order, when it is a right caret.
    R0,
    /// Any other right caret.
    RStar,
}

impl CaretType {
    pub fn name(self) -> &'static str {
        match self {
            CaretType::L0 => "L0",
            CaretType::LL => "LL",
            CaretType::I0 => "I0",
            CaretType::IR => "IR",
            CaretType::R0 => "R0",
            CaretType::RStar => "R*",
        }
    }
}

/// Types of the carets of one tree, indexed in infix order.
pub fn classify_tree(tree: &BinaryTree) -> Vec<CaretType> {
    let shape = tree.shape();
    let n = shape.carets.len();
    (0..n)
        .map(|k| {
            let node = Node::Caret(k);
            if shape.on_left_side(node) {
                if k == 0 {
                    CaretType::L0
                } else {
                    CaretType::LL
                }
            } else if shape.on_right_side(node) {
                if k == n - 1 {
                    CaretType::R0
                } else {
                    CaretType::RStar
                }
            } else if matches!(shape.carets[k].right, Node::Leaf(_)) {
                CaretType::I0
            } else {
                CaretType::IR
            }
        })
        .collect()
}

/// `(type in S, type in T)` for each caret index.
pub fn classify_carets(p: &TreePair) -> Vec<(CaretType, CaretType)> {
    classify_tree(p.neg())
        .into_iter()
        .zip(classify_tree(p.pos()))
        .collect()
}

pub fn pairing_weight(neg: CaretType, pos: CaretType) -> Result<u64> {
    use CaretType::*;
    match (neg, pos) {
        (L0, L0) | (R0, R0) => Ok(0),
        (LL, LL) | (RStar, RStar) | (I0, I0) => Ok(2),
        (I0, IR) | (IR, I0) => Ok(4),
        _ => Err(Error::UnsupportedPairing(neg, pos)),
    }
}

pub fn fordham_weight(p: &TreePair) -> Result<u64> {
    classify_carets(p)
        .into_iter()
        .map(|(a, b)| pairing_weight(a, b))
        .sum()
}
