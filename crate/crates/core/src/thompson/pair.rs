use std::fmt;

use serde_json::{Map, Value};

use super::tree::{graft, refine, BinaryTree, BitBuf};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    X0,
    X0Inv,
    X1,
    X1Inv,
}

impl Generator {
    pub const ALL: [Generator; 4] = [
        Generator::X0,
        Generator::X0Inv,
        Generator::X1,
        Generator::X1Inv,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Generator::X0 => "x0",
            Generator::X0Inv => "x0^-1",
            Generator::X1 => "x1",
            Generator::X1Inv => "x1^-1",
        }
    }
}

/// Element of F as a tree pair `(S, T)`: the positive tree `T` is the domain
/// subdivision and the negative tree `S` the range subdivision, leaf `i` of
/// `T` mapping to leaf `i` of `S`.
///
/// Products act on the right: `p·q` applies `p` first, so `x₁^{x₀} = x₀⁻¹x₁x₀`
/// is `x₂`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TreePair {
    neg: BinaryTree,
    pos: BinaryTree,
}

/// Injective compact key for a tree pair: both preorder encodings packed
/// into 64-bit words.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PairKey(Box<[u64]>);

impl TreePair {
    pub fn identity() -> Self {
        TreePair {
            neg: BinaryTree::trivial(),
            pos: BinaryTree::trivial(),
        }
    }

    /// A possibly unreduced pair; fails if the leaf counts differ.
    pub fn unreduced(neg: BinaryTree, pos: BinaryTree) -> Result<Self> {
        if neg.leaf_count() != pos.leaf_count() {
            return Err(Error::LeafCountMismatch {
                neg: neg.leaf_count(),
                pos: pos.leaf_count(),
            });
        }
        Ok(TreePair { neg, pos })
    }

    /// The reduced pair representing the same element as `(neg, pos)`.
    pub fn new(neg: BinaryTree, pos: BinaryTree) -> Result<Self> {
        Ok(Self::unreduced(neg, pos)?.reduce())
    }

    pub fn neg(&self) -> &BinaryTree {
        &self.neg
    }

    pub fn pos(&self) -> &BinaryTree {
        &self.pos
    }

    pub fn is_identity(&self) -> bool {
        self.neg.leaf_count() == 1
    }

    /// Number of carets in either tree.
    pub fn caret_count(&self) -> usize {
        self.neg.caret_count()
    }

    /// `xₙ`: the identity on `[0, 1 − 2⁻ⁿ]` followed by a copy of `x₀`.
    pub fn x_n(n: usize) -> Self {
        let spine: Vec<u32> = (1..=n as u32).collect();
        let d = n as u32;
        let neg = spine.iter().copied().chain([d + 1, d + 2, d + 2]).collect();
        let pos = spine.iter().copied().chain([d + 2, d + 2, d + 1]).collect();
        TreePair {
            neg: BinaryTree::from_depths_unchecked(neg),
            pos: BinaryTree::from_depths_unchecked(pos),
        }
    }

    pub fn generator(g: Generator) -> Self {
        match g {
            Generator::X0 => Self::x_n(0),
            Generator::X0Inv => Self::x_n(0).inverse(),
            Generator::X1 => Self::x_n(1),
            Generator::X1Inv => Self::x_n(1).inverse(),
        }
    }

    pub fn inverse(&self) -> Self {
        TreePair {
            neg: self.pos.clone(),
            pos: self.neg.clone(),
        }
    }

    /// `self · other`: refine `S_self` and `T_other` to a common tree, carry
    /// the refinement across both diagrams, splice and reduce.
    pub fn multiply(&self, other: &Self) -> Self {
        let (grow_self, grow_other) = refine(self.neg.depths(), other.pos.depths());
        TreePair {
            neg: BinaryTree::from_depths_unchecked(graft(other.neg.depths(), &grow_other)),
            pos: BinaryTree::from_depths_unchecked(graft(self.pos.depths(), &grow_self)),
        }
        .reduce()
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        (0..k.unsigned_abs()).fold(Self::identity(), |acc, _| acc.multiply(&base))
    }

    /// `self⁻¹ · g · self`.
    pub fn conjugate(&self, g: &Self) -> Self {
        self.inverse().multiply(g).multiply(self)
    }

    pub fn apply_generator(&self, g: Generator) -> Self {
        self.multiply(&Self::generator(g))
    }

    /// Indices `k` whose caret over leaves `k, k+1` is exposed in both trees.
    pub fn removable_carets(&self) -> Vec<usize> {
        let a = self.neg.exposed_carets();
        let b = self.pos.exposed_carets();
        (0..a.len()).filter(|&k| a[k] && b[k]).collect()
    }

    /// Removes one common exposed caret pair.
    pub fn remove_caret(&mut self, k: usize) {
        assert!(
            self.removable_carets().contains(&k),
            "caret {k} is not a removable pair"
        );
        self.neg.collapse(k);
        self.pos.collapse(k);
    }

    /// Adds a caret below leaf `k` of both trees; the element is unchanged.
    pub fn expand_leaf(&mut self, k: usize) {
        self.neg.expand(k);
        self.pos.expand(k);
    }

    pub fn is_reduced(&self) -> bool {
        self.removable_carets().is_empty()
    }

    pub fn reduce(mut self) -> Self {
        loop {
            let removable = self.removable_carets();
            if removable.is_empty() {
                return self;
            }
            // Exposed carets never share a leaf, so all of them can go at once.
            for &k in removable.iter().rev() {
                self.neg.collapse(k);
                self.pos.collapse(k);
            }
        }
    }

    pub fn key(&self) -> PairKey {
        let mut bits = BitBuf::default();
        self.neg.push_preorder_bits(&mut bits);
        self.pos.push_preorder_bits(&mut bits);
        PairKey(bits.into_words())
    }

    pub fn from_key(key: &PairKey) -> Self {
        let mut pos = 0;
        let neg = BinaryTree::read_preorder_bits(&key.0, &mut pos);
        let pos_tree = BinaryTree::read_preorder_bits(&key.0, &mut pos);
        TreePair { neg, pos: pos_tree }
    }

    pub fn to_json(&self) -> Value {
        let mut obj = Map::new();
        obj.insert("neg".into(), Value::from(self.neg.to_paren_string()));
        obj.insert("pos".into(), Value::from(self.pos.to_paren_string()));
        Value::Object(obj)
    }

    /// Reads `{"neg": "...", "pos": "..."}` and reduces.
    pub fn from_json(value: &Value) -> Result<Self> {
        let field = |name: &str| {
            value
                .get(name)
                .and_then(Value::as_str)
                .ok_or_else(|| Error::Json(format!("tree pair: missing string field {name:?}")))
        };
        Self::new(
            BinaryTree::parse(field("neg")?)?,
            BinaryTree::parse(field("pos")?)?,
        )
    }

    /// Canonical text `neg|pos`.
    pub fn serialize(&self) -> String {
        format!("{}|{}", self.neg, self.pos)
    }
}

impl fmt::Display for TreePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}", self.neg, self.pos)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Generator::*;

    fn gen(g: Generator) -> TreePair {
        TreePair::generator(g)
    }

    #[test]
    fn generator_diagrams() {
        let x0 = gen(X0);
        assert_eq!(x0.neg(), &BinaryTree::right_vine(2));
        assert_eq!(x0.pos(), &BinaryTree::left_vine(2));
        assert_eq!(x0.caret_count(), 2);
        assert_eq!(gen(X1).caret_count(), 3);
        assert!(x0.is_reduced() && gen(X1).is_reduced());
        assert_eq!(gen(X0Inv), x0.inverse());
        assert!(x0.multiply(&gen(X0Inv)).is_identity());
        assert_eq!(x0.multiply(&gen(X0Inv)), TreePair::identity());
    }

    #[test]
    fn finite_presentation_relators() {
        let (x0, x1) = (gen(X0), gen(X1));
        let x2 = x0.conjugate(&x1);
        let x3 = x0.conjugate(&x2);
        let x4 = x0.conjugate(&x3);
        assert_eq!(x1.conjugate(&x2), x3);
        assert_eq!(x1.conjugate(&x3), x4);
    }

    #[test]
    fn infinite_presentation_relators() {
        for n in 1..=6 {
            for i in 0..n {
                let lhs = TreePair::x_n(i).conjugate(&TreePair::x_n(n));
                assert_eq!(lhs, TreePair::x_n(n + 1), "x_{n}^x_{i}");
            }
        }
    }

    #[test]
    fn x_n_matches_conjugation_by_x0() {
        let mut xn = gen(X1);
        for n in 1..=8 {
            assert_eq!(xn, TreePair::x_n(n));
            xn = gen(X0).conjugate(&xn);
        }
    }

    #[test]
    fn identity_is_neutral() {
        let p = gen(X0).multiply(&gen(X1)).multiply(&gen(X0));
        assert_eq!(p.multiply(&TreePair::identity()), p);
        assert_eq!(TreePair::identity().multiply(&p), p);
        assert_eq!(TreePair::identity().caret_count(), 0);
    }

    #[test]
    fn reduce_undoes_expansion() {
        let p = gen(X1).multiply(&gen(X0Inv)).multiply(&gen(X1));
        for k in 0..=p.caret_count() {
            let mut q = p.clone();
            q.expand_leaf(k);
            assert!(!q.is_reduced());
            assert_eq!(q.reduce(), p);
        }
        let mut id = TreePair::identity();
        for k in [0, 0, 1, 2, 0] {
            id.expand_leaf(k);
        }
        assert_eq!(id.caret_count(), 5);
        assert_eq!(id.reduce(), TreePair::identity());
    }

    #[test]
    fn leaf_count_mismatch_is_rejected() {
        let err = TreePair::new(BinaryTree::right_vine(2), BinaryTree::right_vine(3));
        assert!(matches!(
            err,
            Err(Error::LeafCountMismatch { neg: 3, pos: 4 })
        ));
    }

    #[test]
    fn json_round_trip() {
        let v = gen(X0).to_json();
        assert_eq!(v.to_string(), r#"{"neg":"(.(..))","pos":"((..).)"}"#);
        assert_eq!(TreePair::from_json(&v).unwrap(), gen(X0));
    }

    #[test]
    fn keys_distinguish_pairs() {
        let a = gen(X0);
        let b = gen(X0Inv);
        assert_ne!(a.key(), b.key());
        assert_eq!(a.key(), TreePair::x_n(0).key());
    }
}
