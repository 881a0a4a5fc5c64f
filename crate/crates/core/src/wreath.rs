//! The wreath product Z≀Z = ⟨a, t⟩ as a tape of integer counters with a cursor.
//!
//! A word is read as a sequence of instructions: `a` adds one to the counter
//! under the cursor and `t` moves the cursor one step to the right. The
//! conjugate `a_n = tⁿ a t⁻ⁿ` is therefore the element with a single unit
//! counter at position `n` and the cursor back at the origin.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use serde_json::{Map, Number, Value};

use crate::error::{Error, Result};
use crate::word::Word;

pub const ALPHABET: [char; 2] = ['a', 't'];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    A,
    AInv,
    T,
    TInv,
}

impl Generator {
    pub const ALL: [Generator; 4] = [Generator::A, Generator::AInv, Generator::T, Generator::TInv];

    pub fn inverse(self) -> Self {
        match self {
            Generator::A => Generator::AInv,
            Generator::AInv => Generator::A,
            Generator::T => Generator::TInv,
            Generator::TInv => Generator::T,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Generator::A => "a",
            Generator::AInv => "A",
            Generator::T => "t",
            Generator::TInv => "T",
        }
    }
}

/// Element of Z≀Z: finitely many nonzero counters and a cursor position.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WreathElement {
    counters: BTreeMap<i64, BigInt>,
    cursor: i64,
}

impl WreathElement {
    pub fn identity() -> Self {
        Self::default()
    }

    /// Builds an element from `(position, value)` pairs; zero values are
    /// dropped and repeated positions are summed.
    pub fn from_parts<I, V>(counters: I, cursor: i64) -> Self
    where
        I: IntoIterator<Item = (i64, V)>,
        V: Into<BigInt>,
    {
        let mut out = WreathElement {
            counters: BTreeMap::new(),
            cursor,
        };
        for (n, c) in counters {
            out.add_at(n, c.into());
        }
        out
    }

    /// `a_n = tⁿ a t⁻ⁿ`.
    pub fn a_n(n: i64) -> Self {
        Self::from_parts([(n, 1)], 0)
    }

    pub fn t_power(m: i64) -> Self {
        WreathElement {
            counters: BTreeMap::new(),
            cursor: m,
        }
    }

    pub fn generator(g: Generator) -> Self {
        Self::identity().apply_generator(g)
    }

    pub fn counters(&self) -> &BTreeMap<i64, BigInt> {
        &self.counters
    }

    pub fn counter(&self, n: i64) -> BigInt {
        self.counters.get(&n).cloned().unwrap_or_default()
    }

    pub fn cursor(&self) -> i64 {
        self.cursor
    }

    pub fn is_identity(&self) -> bool {
        self.counters.is_empty() && self.cursor == 0
    }

    fn add_at(&mut self, n: i64, delta: BigInt) {
        if delta.is_zero() {
            return;
        }
        let entry = self.counters.entry(n).or_default();
        *entry += delta;
        if entry.is_zero() {
            self.counters.remove(&n);
        }
    }

    pub fn apply_generator(&self, g: Generator) -> Self {
        let mut out = self.clone();
        match g {
            Generator::A => out.add_at(out.cursor, BigInt::one()),
            Generator::AInv => out.add_at(out.cursor, -BigInt::one()),
            Generator::T => out.cursor += 1,
            Generator::TInv => out.cursor -= 1,
        }
        out
    }

    /// `counters(uv)(n) = counters(u)(n) + counters(v)(n − m_u)`.
    pub fn multiply(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (n, c) in &other.counters {
            out.add_at(n + self.cursor, c.clone());
        }
        out.cursor += other.cursor;
        out
    }

    pub fn inverse(&self) -> Self {
        WreathElement {
            counters: self
                .counters
                .iter()
                .map(|(n, c)| (n - self.cursor, -c))
                .collect(),
            cursor: -self.cursor,
        }
    }

    /// Evaluates a word over `{a, t}` from the identity, left to right.
    pub fn evaluate(word: &Word) -> Result<Self> {
        let mut out = Self::identity();
        for s in word.syllables() {
            match s.letter {
                'a' => {
                    let at = out.cursor;
                    out.add_at(at, s.exp.clone());
                }
                't' => {
                    let step = s
                        .exp
                        .to_i64()
                        .ok_or_else(|| Error::Overflow(format!("t exponent {}", s.exp)))?;
                    out.cursor = out
                        .cursor
                        .checked_add(step)
                        .ok_or_else(|| Error::Overflow("cursor position".into()))?;
                }
                other => return Err(Error::parse(other.to_string(), "not a generator of Z wr Z")),
            }
        }
        Ok(out)
    }

    pub fn evaluate_word(input: &str) -> Result<Self> {
        Self::evaluate(&Word::parse(input, &ALPHABET)?)
    }

    /// Largest index `i_k ≥ 0` with a nonzero counter, or 0 if there is none.
    pub fn rightmost(&self) -> i64 {
        self.counters
            .keys()
            .next_back()
            .copied()
            .filter(|&n| n >= 0)
            .unwrap_or(0)
    }

    /// Largest `j_l ≥ 1` with a nonzero counter at `-j_l`, or 0 if there is none.
    pub fn leftmost_depth(&self) -> i64 {
        self.counters
            .keys()
            .next()
            .copied()
            .filter(|&n| n < 0)
            .map(|n| -n)
            .unwrap_or(0)
    }

    pub fn normal_form(&self, variant: Variant) -> WreathNormalForm {
        WreathNormalForm {
            variant,
            positive: self
                .counters
                .range(0..)
                .map(|(&n, c)| (n, c.clone()))
                .collect(),
            negative: self
                .counters
                .range(..0)
                .rev()
                .map(|(&n, c)| (-n, c.clone()))
                .collect(),
            cursor: self.cursor,
        }
    }

    /// Word length over `{a^±1, t^±1}`: total counter mass plus the shortest
    /// cursor tour that visits both extreme nonzero counters and ends at the
    /// cursor.
    pub fn word_length(&self) -> BigUint {
        let mass: BigUint = self.counters.values().map(|c| c.magnitude().clone()).sum();
        mass + BigUint::from(self.travel())
    }

    fn travel(&self) -> u64 {
        let i = self.rightmost() as i128;
        let j = self.leftmost_depth() as i128;
        let m = self.cursor as i128;
        let right_first = 2 * i + j + (m + j).abs();
        let left_first = 2 * j + i + (m - i).abs();
        right_first.min(left_first) as u64
    }

    /// A geodesic representative: right-first when the cursor ends at or left
    /// of the origin, left-first otherwise.
    pub fn geodesic_word(&self) -> Word {
        let variant = if self.cursor <= 0 {
            Variant::RightFirst
        } else {
            Variant::LeftFirst
        };
        self.normal_form(variant).route()
    }

    pub fn to_json(&self) -> Value {
        let counters: Map<String, Value> = self
            .counters
            .iter()
            .map(|(n, c)| (n.to_string(), bigint_to_json(c)))
            .collect();
        let mut obj = Map::new();
        obj.insert("counters".into(), Value::Object(counters));
        obj.insert("cursor".into(), Value::from(self.cursor));
        Value::Object(obj)
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let bad = |what: &str| Error::Json(format!("wreath element: {what}"));
        let counters = value
            .get("counters")
            .and_then(Value::as_object)
            .ok_or_else(|| bad("missing \"counters\" object"))?;
        let cursor = value
            .get("cursor")
            .and_then(Value::as_i64)
            .ok_or_else(|| bad("missing integer \"cursor\""))?;
        let mut pairs = Vec::with_capacity(counters.len());
        for (k, v) in counters {
            let n: i64 = k.parse().map_err(|_| bad("non-integer counter key"))?;
            let c = json_to_bigint(v).ok_or_else(|| bad("non-integer counter value"))?;
            pairs.push((n, c));
        }
        Ok(Self::from_parts(pairs, cursor))
    }

    /// Compact canonical text, e.g. `{-3:2 2:3 3:-2 4:1}@-2`.
    pub fn serialize(&self) -> String {
        let body: Vec<String> = self
            .counters
            .iter()
            .map(|(n, c)| format!("{n}:{c}"))
            .collect();
        format!("{{{}}}@{}", body.join(" "), self.cursor)
    }
}

impl fmt::Display for WreathElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.normal_form(Variant::RightFirst).fmt(f)
    }
}

pub(crate) fn bigint_to_json(c: &BigInt) -> Value {
    match c.to_i64() {
        Some(v) => Value::from(v),
        None => Value::Number(
            c.to_string()
                .parse::<Number>()
                .expect("decimal integer is a JSON number"),
        ),
    }
}

pub(crate) fn json_to_bigint(v: &Value) -> Option<BigInt> {
    match v {
        Value::Number(n) => n.to_string().parse().ok(),
        _ => None,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    /// Counters right of the origin first, then those to its left.
    RightFirst,
    /// Counters left of the origin first, then those to its right.
    LeftFirst,
}

/// `rf`/`lf` normal form. `positive` holds `(i, e)` with `0 ≤ i₁ < i₂ < …`,
/// `negative` holds `(j, f)` for the counter at `-j` with `1 ≤ j₁ < j₂ < …`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WreathNormalForm {
    pub variant: Variant,
    pub positive: Vec<(i64, BigInt)>,
    pub negative: Vec<(i64, BigInt)>,
    pub cursor: i64,
}

impl WreathNormalForm {
    pub fn to_element(&self) -> WreathElement {
        WreathElement::from_parts(
            self.positive
                .iter()
                .map(|(i, e)| (*i, e.clone()))
                .chain(self.negative.iter().map(|(j, f)| (-*j, f.clone()))),
            self.cursor,
        )
    }

    /// The cursor tour spelled by this normal form.
    pub fn route(&self) -> Word {
        let mut word = Word::new();
        let mut at = 0i64;
        let mut visit = |word: &mut Word, n: i64, c: &BigInt| {
            word.push('t', n - at);
            word.push('a', c.clone());
            at = n;
        };
        match self.variant {
            Variant::RightFirst => {
                for (i, e) in &self.positive {
                    visit(&mut word, *i, e);
                }
                for (j, f) in &self.negative {
                    visit(&mut word, -*j, f);
                }
            }
            Variant::LeftFirst => {
                for (j, f) in &self.negative {
                    visit(&mut word, -*j, f);
                }
                for (i, e) in &self.positive {
                    visit(&mut word, *i, e);
                }
            }
        }
        word.push('t', self.cursor - at);
        word
    }

    /// `k`, the number of counters at nonnegative positions.
    pub fn k(&self) -> usize {
        self.positive.len()
    }

    /// `l`, the number of counters at negative positions.
    pub fn l(&self) -> usize {
        self.negative.len()
    }

    pub fn i_k(&self) -> i64 {
        self.positive.last().map_or(0, |p| p.0)
    }

    pub fn j_l(&self) -> i64 {
        self.negative.last().map_or(0, |p| p.0)
    }

    pub fn positive_mass(&self) -> BigUint {
        self.positive
            .iter()
            .map(|(_, e)| e.magnitude().clone())
            .sum()
    }

    pub fn negative_mass(&self) -> BigUint {
        self.negative
            .iter()
            .map(|(_, f)| f.magnitude().clone())
            .sum()
    }
}

impl fmt::Display for WreathNormalForm {
    /// Prints in `a_n` notation, e.g. `a_2^3 a_3^-2 a_4 a_-3^2 t^-2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pos = self.positive.iter().map(|(i, e)| (*i, e));
        let neg = self.negative.iter().map(|(j, e)| (-*j, e));
        let terms: Vec<(i64, &BigInt)> = match self.variant {
            Variant::RightFirst => pos.chain(neg).collect(),
            Variant::LeftFirst => neg.chain(pos).collect(),
        };
        let mut parts: Vec<String> = terms
            .into_iter()
            .map(|(n, e)| {
                if e.is_one() {
                    format!("a_{n}")
                } else {
                    format!("a_{n}^{e}")
                }
            })
            .collect();
        match self.cursor {
            0 => {}
            1 => parts.push("t".into()),
            m => parts.push(format!("t^{m}")),
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join(" "))
        }
    }
}
