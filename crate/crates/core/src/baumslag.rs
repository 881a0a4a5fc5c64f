//! Baumslag's metabelian group `G = ⟨a, s, t | [s,t], [aᵗ,a], aˢ = a aᵗ⟩`.
//!
//! Elements are affine maps `p ↦ xⁱ (1 + x)ʲ p + q` of `Z[x, x⁻¹, (1 + x)⁻¹]`,
//! composed left to right: in `g·h` the map `g` is applied first. With
//! conjugation `uᵛ = v⁻¹uv`, `a` is translation by 1, `t` multiplies by `x`
//! and `s` multiplies by `1 + x`, so `aᵗ` is translation by `x` and
//! `aₙ = a^{tⁿ}` translation by `xⁿ`.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, LocalizedLaurentPoly};
use crate::word::Word;
use crate::wreath::{bigint_to_json, WreathElement};

pub const ALPHABET: [char; 3] = ['a', 's', 't'];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    A,
    AInv,
    S,
    SInv,
    T,
    TInv,
}

impl Generator {
    pub const ALL: [Generator; 6] = [
        Generator::A,
        Generator::AInv,
        Generator::S,
        Generator::SInv,
        Generator::T,
        Generator::TInv,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Generator::A => "a",
            Generator::AInv => "A",
            Generator::S => "s",
            Generator::SInv => "S",
            Generator::T => "t",
            Generator::TInv => "T",
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BaumslagElement {
    q: LocalizedLaurentPoly,
    t_exp: i64,
    s_exp: i64,
}

impl BaumslagElement {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn new(q: LocalizedLaurentPoly, t_exp: i64, s_exp: i64) -> Self {
        BaumslagElement { q, t_exp, s_exp }
    }

    pub fn translation(q: LaurentPoly) -> Self {
        Self::new(LocalizedLaurentPoly::from_poly(q), 0, 0)
    }

    pub fn generator(g: Generator) -> Self {
        let unit = || LocalizedLaurentPoly::from_poly(LaurentPoly::monomial(1, 0));
        let neg = || LocalizedLaurentPoly::from_poly(LaurentPoly::monomial(-1, 0));
        match g {
            Generator::A => Self::new(unit(), 0, 0),
            Generator::AInv => Self::new(neg(), 0, 0),
            Generator::S => Self::new(LocalizedLaurentPoly::zero(), 0, 1),
            Generator::SInv => Self::new(LocalizedLaurentPoly::zero(), 0, -1),
            Generator::T => Self::new(LocalizedLaurentPoly::zero(), 1, 0),
            Generator::TInv => Self::new(LocalizedLaurentPoly::zero(), -1, 0),
        }
    }

    /// `aₙ = t⁻ⁿ a tⁿ`, translation by `xⁿ`.
    pub fn a_n(n: i64) -> Self {
        Self::translation(LaurentPoly::monomial(1, n))
    }

    pub fn q(&self) -> &LocalizedLaurentPoly {
        &self.q
    }

    pub fn t_exp(&self) -> i64 {
        self.t_exp
    }

    pub fn s_exp(&self) -> i64 {
        self.s_exp
    }

    pub fn is_identity(&self) -> bool {
        self.q.is_zero() && self.t_exp == 0 && self.s_exp == 0
    }

    /// `(q₁,i₁,j₁)·(q₂,i₂,j₂) = (q₂ + x^{i₂}(1+x)^{j₂} q₁, i₁+i₂, j₁+j₂)`.
    pub fn multiply(&self, other: &Self) -> Self {
        BaumslagElement {
            q: &other.q + &self.q.scale(other.t_exp, other.s_exp),
            t_exp: self.t_exp + other.t_exp,
            s_exp: self.s_exp + other.s_exp,
        }
    }

    pub fn inverse(&self) -> Self {
        BaumslagElement {
            q: -&self.q.scale(-self.t_exp, -self.s_exp),
            t_exp: -self.t_exp,
            s_exp: -self.s_exp,
        }
    }

    /// `self⁻¹ · g · self`.
    pub fn conjugate(&self, g: &Self) -> Self {
        self.inverse().multiply(g).multiply(self)
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        (0..k.unsigned_abs()).fold(Self::identity(), |acc, _| acc.multiply(&base))
    }

    pub fn apply_generator(&self, g: Generator) -> Self {
        self.multiply(&Self::generator(g))
    }

    pub fn evaluate(word: &Word) -> Result<Self> {
        let mut out = Self::identity();
        for syl in word.syllables() {
            let step = match syl.letter {
                'a' => Self::translation(LaurentPoly::from_terms([(0, syl.exp.clone())])),
                't' | 's' => {
                    let k = syl.exp.to_i64().ok_or_else(|| {
                        Error::Overflow(format!("{} exponent {}", syl.letter, syl.exp))
                    })?;
                    if syl.letter == 't' {
                        Self::new(LocalizedLaurentPoly::zero(), k, 0)
                    } else {
                        Self::new(LocalizedLaurentPoly::zero(), 0, k)
                    }
                }
                other => return Err(Error::parse(other.to_string(), "not a generator of G")),
            };
            out = out.multiply(&step);
        }
        Ok(out)
    }

    pub fn evaluate_word(input: &str) -> Result<Self> {
        Self::evaluate(&Word::parse(input, &ALPHABET)?)
    }

    /// Sends counters `{n: cₙ}` and cursor `m` to `(Σ cₙ xⁿ, m, 0)`.
    ///
    /// The tape model of Z≀Z composes instructions in the opposite order to the
    /// affine model, so this map reverses products:
    /// `from_wreath(uv) = from_wreath(v) · from_wreath(u)`.
    pub fn from_wreath(w: &WreathElement) -> Self {
        let q = LaurentPoly::from_terms(w.counters().iter().map(|(n, c)| (*n, c.clone())));
        Self::new(LocalizedLaurentPoly::from_poly(q), w.cursor(), 0)
    }

    pub fn to_wreath(&self) -> Result<WreathElement> {
        if self.s_exp != 0 {
            return Err(Error::NotInSubgroupH);
        }
        let poly = self.q.as_poly().ok_or(Error::NotInSubgroupH)?;
        Ok(WreathElement::from_parts(
            poly.terms().iter().map(|(n, c)| (*n, c.clone())),
            self.t_exp,
        ))
    }

    pub fn in_subgroup_h(&self) -> bool {
        self.s_exp == 0 && self.q.den() == 0
    }

    pub fn to_json(&self) -> Value {
        let numerator: Map<String, Value> = self
            .q
            .numerator()
            .terms()
            .iter()
            .map(|(e, c)| (e.to_string(), bigint_to_json(c)))
            .collect();
        let mut obj = Map::new();
        obj.insert("numerator".into(), Value::Object(numerator));
        obj.insert("den".into(), Value::from(self.q.den()));
        obj.insert("t".into(), Value::from(self.t_exp));
        obj.insert("s".into(), Value::from(self.s_exp));
        Value::Object(obj)
    }

    /// Canonical text, e.g. `[1 + 2x + x^2]/0;t=0;s=0`.
    pub fn serialize(&self) -> String {
        format!(
            "[{}]/{};t={};s={}",
            self.q.numerator(),
            self.q.den(),
            self.t_exp,
            self.s_exp
        )
    }
}

impl fmt::Display for BaumslagElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.q, self.t_exp, self.s_exp)
    }
}

/// `s⁻ᵏ w sᵏ` computed inside Z≀Z: the counters are multiplied by `(1 + x)ᵏ`.
pub fn s_conjugate(w: &WreathElement, k: i64) -> Result<WreathElement> {
    if k < 0 {
        return Err(Error::NegativePower);
    }
    let mut counters = LaurentPoly::from_terms(w.counters().iter().map(|(n, c)| (*n, c.clone())));
    for _ in 0..k {
        counters = counters.mul_one_plus_x();
    }
    Ok(WreathElement::from_parts(
        counters.terms().iter().map(|(n, c)| (*n, c.clone())),
        w.cursor(),
    ))
}

/// The witness word `s⁻ⁿ a sⁿ` for `a^{sⁿ}`.
pub fn witness_word(n: u32) -> Word {
    let mut w = Word::new();
    w.push('s', -(n as i64));
    w.push('a', 1);
    w.push('s', n as i64);
    w
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistortionRow {
    pub n: u32,
    /// Length of the witness word `s⁻ⁿ a sⁿ`, an upper bound for `|a^{sⁿ}|_G`.
    pub len_g_witness: u64,
    /// `|a^{sⁿ}|` in Z≀Z over `{a, t}`.
    pub len_h: BigUint,
    /// The witness evaluates to the same model element as the Z≀Z conjugate.
    pub witness_ok: bool,
}

impl DistortionRow {
    /// `len_h / len_g_witness` as a reduced fraction, or an integer if exact.
    pub fn ratio(&self) -> String {
        let num = self.len_h.clone();
        let den = BigUint::from(self.len_g_witness);
        let g = num.gcd(&den);
        let (num, den) = (num / &g, den / &g);
        if den.is_one() {
            num.to_string()
        } else {
            format!("{num}/{den}")
        }
    }

    /// `2n + 2ⁿ`.
    pub fn closed_form(&self) -> BigUint {
        BigUint::from(2 * self.n as u64) + (BigUint::one() << self.n as usize)
    }
}

pub fn distortion_row(n: u32) -> DistortionRow {
    let conj = s_conjugate(&WreathElement::a_n(0), n as i64).expect("n is nonnegative");
    let witness = witness_word(n);
    let witness_ok = BaumslagElement::evaluate(&witness)
        .map(|g| g == BaumslagElement::from_wreath(&conj))
        .unwrap_or(false);
    DistortionRow {
        n,
        len_g_witness: witness.len().to_u64().expect("witness length fits u64"),
        len_h: conj.word_length(),
        witness_ok,
    }
}

pub fn distortion_table(max_n: u32) -> Vec<DistortionRow> {
    (0..=max_n).map(distortion_row).collect()
}
