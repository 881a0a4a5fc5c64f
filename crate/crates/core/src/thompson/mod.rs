//! Thompson's group F as reduced tree pair diagrams.

mod carets;
mod normal_form;
mod pair;
mod tree;

pub use carets::{classify_carets, classify_tree, fordham_weight, pairing_weight, CaretType};
pub use normal_form::{normal_form_to_tree_pair, tree_pair_to_normal_form, FNormalForm, FWord};
pub use pair::{Generator, PairKey, TreePair};
pub use tree::{BinaryTree, Caret, Node, Side, TreeShape};
