//! Generator words shared by the command line and the group modules.
//!
//! A word is a whitespace-separated list of syllables `g` or `g^k`, where `g`
//! is a lowercase generator letter and `k` a signed decimal exponent. An
//! uppercase letter denotes the inverse generator, so `A^2` is `a^-2`.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Syllable {
    pub letter: char,
    pub exp: BigInt,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word {
    syllables: Vec<Syllable>,
}

impl Word {
    pub fn new() -> Self {
        Self::default()
    }

    /// Parses `input` over the given lowercase alphabet.
    pub fn parse(input: &str, alphabet: &[char]) -> Result<Self> {
        let mut syllables = Vec::new();
        for token in input.split_whitespace() {
            let (head, exp) = match token.split_once('^') {
                Some((head, exp)) => {
                    let exp = exp.strip_prefix('+').unwrap_or(exp);
                    let parsed: BigInt = exp
                        .parse()
                        .map_err(|_| Error::parse(token, "exponent is not a signed integer"))?;
                    (head, parsed)
                }
                None => (token, BigInt::one()),
            };
            let mut chars = head.chars();
            let (Some(c), None) = (chars.next(), chars.next()) else {
                return Err(Error::parse(token, "expected a single generator letter"));
            };
            let lower = c.to_ascii_lowercase();
            if !alphabet.contains(&lower) {
                return Err(Error::parse(token, format!("unknown generator {c:?}")));
            }
            let exp = if c.is_ascii_uppercase() { -exp } else { exp };
            syllables.push(Syllable { letter: lower, exp });
        }
        Ok(Word { syllables })
    }

    /// Appends `letter^exp`, merging with a trailing syllable of the same letter.
    pub fn push(&mut self, letter: char, exp: impl Into<BigInt>) {
        let exp = exp.into();
        if exp.is_zero() {
            return;
        }
        if let Some(last) = self.syllables.last_mut() {
            if last.letter == letter {
                last.exp += exp;
                if last.exp.is_zero() {
                    self.syllables.pop();
                }
                return;
            }
        }
        self.syllables.push(Syllable { letter, exp });
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Number of generator occurrences, i.e. the sum of absolute exponents.
    pub fn len(&self) -> BigUint {
        self.syllables
            .iter()
            .map(|s| s.exp.magnitude().clone())
            .sum()
    }

    pub fn inverse(&self) -> Word {
        Word {
            syllables: self
                .syllables
                .iter()
                .rev()
                .map(|s| Syllable {
                    letter: s.letter,
                    exp: -&s.exp,
                })
                .collect(),
        }
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut out = self.clone();
        for s in &other.syllables {
            out.push(s.letter, s.exp.clone());
        }
        out
    }

    /// Expands the word into single letters with signs, `(letter, +1 | -1)`.
    pub fn letters(&self) -> impl Iterator<Item = (char, bool)> + '_ {
        self.syllables.iter().flat_map(|s| {
            let n = s.exp.magnitude().clone();
            let inverted = s.exp.is_negative();
            num_iter_biguint(n).map(move |_| (s.letter, inverted))
        })
    }
}

fn num_iter_biguint(n: BigUint) -> impl Iterator<Item = ()> {
    let mut remaining = n;
    std::iter::from_fn(move || {
        if remaining.is_zero() {
            None
        } else {
            remaining -= 1u32;
            Some(())
        }
    })
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.syllables.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            if s.exp.is_one() {
                write!(f, "{}", s.letter)?;
            } else {
                write!(f, "{}^{}", s.letter, s.exp)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_exponents_and_inverses() {
        let w = Word::parse("t^2 a^-3 A T^+2 a", &['a', 't']).unwrap();
        assert_eq!(w.to_string(), "t^2 a^-3 a^-1 t^-2 a");
        assert_eq!(w.len(), BigUint::from(9u32));
    }

    #[test]
    fn rejects_bad_tokens() {
        assert!(Word::parse("b", &['a', 't']).is_err());
        assert!(Word::parse("a^x", &['a', 't']).is_err());
        assert!(Word::parse("at", &['a', 't']).is_err());
        assert!(Word::parse("a^", &['a', 't']).is_err());
    }

    #[test]
    fn empty_input_is_empty_word() {
        let w = Word::parse("   ", &['a']).unwrap();
        assert!(w.is_empty());
        assert_eq!(w.to_string(), "");
    }

    #[test]
    fn push_merges_and_cancels() {
        let mut w = Word::new();
        w.push('a', 2);
        w.push('a', -2);
        assert!(w.is_empty());
        w.push('t', 1);
        w.push('a', 0);
        w.push('t', 3);
        assert_eq!(w.to_string(), "t^4");
        assert_eq!(w.letters().count(), 4);
    }
}
