//! Normal forms over the infinite generating set `{xᵢ}` and their
//! correspondence with reduced tree pairs via leaf exponents.

use std::fmt;

use super::pair::TreePair;
use super::tree::BinaryTree;
use crate::error::{Error, Result};

/// A word `x_{i₁}^{e₁} x_{i₂}^{e₂} …` over the infinite generating set.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FWord(pub Vec<(usize, i64)>);

impl FWord {
    /// Parses tokens `x<i>` or `x<i>^<k>`; `X<i>` is the inverse of `x<i>`.
    pub fn parse(input: &str) -> Result<Self> {
        let mut out = Vec::new();
        for token in input.split_whitespace() {
            let (head, exp) = match token.split_once('^') {
                Some((head, exp)) => {
                    let exp = exp.strip_prefix('+').unwrap_or(exp);
                    let k: i64 = exp
                        .parse()
                        .map_err(|_| Error::parse(token, "exponent is not a signed integer"))?;
                    (head, k)
                }
                None => (token, 1),
            };
            let (inverted, index) = if let Some(rest) = head.strip_prefix('x') {
                (false, rest)
            } else if let Some(rest) = head.strip_prefix('X') {
                (true, rest)
            } else {
                return Err(Error::parse(token, "expected a generator x<i>"));
            };
            let index: usize = index
                .parse()
                .map_err(|_| Error::parse(token, "generator index is not a natural number"))?;
            out.push((index, if inverted { -exp } else { exp }));
        }
        Ok(FWord(out))
    }

    pub fn evaluate(&self) -> TreePair {
        self.0.iter().fold(TreePair::identity(), |acc, &(i, k)| {
            acc.multiply(&TreePair::x_n(i).pow(k))
        })
    }
}

impl fmt::Display for FWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|&(i, k)| match k {
                1 => format!("x{i}"),
                k => format!("x{i}^{k}"),
            })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

/// `x_{i₁}^{r₁} … x_{i_k}^{r_k} x_{j_l}^{-s_l} … x_{j₁}^{-s₁}` with
/// `i₁ < … < i_k`, `j₁ < … < j_l` and all exponents positive. Both parts are
/// stored with ascending indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FNormalForm {
    pub positive: Vec<(usize, u32)>,
    pub negative: Vec<(usize, u32)>,
}

impl FNormalForm {
    pub fn is_empty(&self) -> bool {
        self.positive.is_empty() && self.negative.is_empty()
    }

    pub fn to_word(&self) -> FWord {
        FWord(
            self.positive
                .iter()
                .map(|&(i, r)| (i, r as i64))
                .chain(self.negative.iter().rev().map(|&(j, s)| (j, -(s as i64))))
                .collect(),
        )
    }

    /// Checks the shape of a normal form: increasing indices, positive
    /// exponents, and whenever `xᵢ` and `xᵢ⁻¹` both occur, so does `x_{i+1}`
    /// or its inverse.
    pub fn validate(&self) -> Result<()> {
        for (name, part) in [("positive", &self.positive), ("negative", &self.negative)] {
            if part.iter().any(|&(_, e)| e == 0) {
                return Err(Error::MalformedNormalForm(format!(
                    "zero exponent in {name} part"
                )));
            }
            if part.windows(2).any(|w| w[0].0 >= w[1].0) {
                return Err(Error::MalformedNormalForm(format!(
                    "{name} part indices are not strictly increasing"
                )));
            }
        }
        let occurs = |i: usize| {
            self.positive.iter().any(|p| p.0 == i) || self.negative.iter().any(|p| p.0 == i)
        };
        for &(i, _) in &self.positive {
            if self.negative.iter().any(|p| p.0 == i) && !occurs(i + 1) {
                return Err(Error::MalformedNormalForm(format!(
                    "x{i} and its inverse occur without x{}",
                    i + 1
                )));
            }
        }
        Ok(())
    }

    /// Parses a word and checks that it is already in normal form.
    pub fn parse(input: &str) -> Result<Self> {
        let word = FWord::parse(input)?;
        let split = word
            .0
            .iter()
            .position(|&(_, k)| k < 0)
            .unwrap_or(word.0.len());
        let mut nf = FNormalForm::default();
        for (pos, &(i, k)) in word.0.iter().enumerate() {
            match (pos < split, k) {
                (true, k) if k > 0 => nf.positive.push((i, k as u32)),
                (false, k) if k < 0 => nf.negative.push((i, k.unsigned_abs() as u32)),
                _ => {
                    return Err(Error::MalformedNormalForm(
                        "positive letters must precede negative ones".into(),
                    ))
                }
            }
        }
        nf.negative.reverse();
        nf.validate()?;
        Ok(nf)
    }
}

impl fmt::Display for FNormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_word().fmt(f)
    }
}

fn exponent_part(tree: &BinaryTree) -> Vec<(usize, u32)> {
    tree.leaf_exponents()
        .into_iter()
        .enumerate()
        .filter(|&(_, e)| e > 0)
        .collect()
}

/// Reads the normal form off a tree pair: positive part from the leaf
/// exponents of the positive tree, negative part from the negative tree.
pub fn tree_pair_to_normal_form(p: &TreePair) -> FNormalForm {
    let p = p.clone().reduce();
    FNormalForm {
        positive: exponent_part(p.pos()),
        negative: exponent_part(p.neg()),
    }
}

pub fn normal_form_to_tree_pair(nf: &FNormalForm) -> Result<TreePair> {
    nf.validate()?;
    Ok(nf.to_word().evaluate())
}
