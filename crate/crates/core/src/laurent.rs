//! Integer Laurent polynomials and their localization at `1 + x`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Finite-support map from exponent to nonzero integer coefficient.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(BigInt::one(), 0)
    }

    pub fn monomial(coeff: impl Into<BigInt>, exp: i64) -> Self {
        Self::from_terms([(exp, coeff.into())])
    }

    pub fn from_terms<I, V>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, V)>,
        V: Into<BigInt>,
    {
        let mut out = Self::zero();
        for (e, c) in terms {
            out.add_term(e, c.into());
        }
        out
    }

    /// `(1 + x)^n` for `n ≥ 0`.
    pub fn one_plus_x_pow(n: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..n {
            out = out.mul_one_plus_x();
        }
        out
    }

    pub fn terms(&self) -> &BTreeMap<i64, BigInt> {
        &self.terms
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, exp: i64, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_default();
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    /// Multiplication by `x^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn mul_one_plus_x(&self) -> Self {
        let mut out = self.clone();
        for (e, c) in &self.terms {
            out.add_term(e + 1, c.clone());
        }
        out
    }

    /// Value at `x = -1`; zero exactly when `1 + x` divides the polynomial.
    pub fn eval_at_minus_one(&self) -> BigInt {
        self.terms
            .iter()
            .map(|(e, c)| if e.rem_euclid(2) == 0 { c.clone() } else { -c })
            .sum()
    }

    /// Exact division by `1 + x`, or `None` if it does not divide.
    pub fn div_one_plus_x(&self) -> Option<Self> {
        let (&low, _) = self.terms.iter().next()?;
        let (&high, _) = self.terms.iter().next_back()?;
        // Synthetic division from the top coefficient down.
        let mut quotient = Self::zero();
        let mut carry = BigInt::zero();
        for e in (low + 1..=high).rev() {
            carry = self.coeff(e) - carry;
            quotient.add_term(e - 1, carry.clone());
        }
        if self.coeff(low) == carry {
            Some(quotient)
        } else {
            None
        }
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let mag = c.magnitude();
            match (i, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            match *e {
                0 => write!(f, "{mag}")?,
                1 if mag.is_one() => f.write_str("x")?,
                1 => write!(f, "{mag}x")?,
                e if mag.is_one() => write!(f, "x^{e}")?,
                e => write!(f, "{mag}x^{e}")?,
            }
        }
        Ok(())
    }
}

/// Element `numerator / (1 + x)^den` of `Z[x, x⁻¹, (1 + x)⁻¹]`, kept in lowest
/// terms: when `den > 0` the numerator is not divisible by `1 + x`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LocalizedLaurentPoly {
    numerator: LaurentPoly,
    den: u32,
}

impl LocalizedLaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    pub fn from_poly(numerator: LaurentPoly) -> Self {
        LocalizedLaurentPoly { numerator, den: 0 }
    }

    pub fn new(numerator: LaurentPoly, den: u32) -> Self {
        let mut out = LocalizedLaurentPoly { numerator, den };
        out.canonicalize();
        out
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.numerator
    }

    /// Power of `1 + x` in the denominator.
    pub fn den(&self) -> u32 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    /// The polynomial itself when there is no denominator.
    pub fn as_poly(&self) -> Option<&LaurentPoly> {
        (self.den == 0).then_some(&self.numerator)
    }

    fn canonicalize(&mut self) {
        if self.numerator.is_zero() {
            self.den = 0;
            return;
        }
        while self.den > 0 {
            match self.numerator.div_one_plus_x() {
                Some(q) => {
                    self.numerator = q;
                    self.den -= 1;
                }
                None => break,
            }
        }
    }

    fn lift(&self, den: u32) -> LaurentPoly {
        let mut p = self.numerator.clone();
        for _ in self.den..den {
            p = p.mul_one_plus_x();
        }
        p
    }

    /// Multiplication by the unit `x^i (1 + x)^j`.
    pub fn scale(&self, i: i64, j: i64) -> Self {
        let shifted = self.numerator.shift(i);
        if j >= 0 {
            let mut p = shifted;
            let mut den = self.den as i64;
            for _ in 0..j {
                if den > 0 {
                    den -= 1;
                } else {
                    p = p.mul_one_plus_x();
                }
            }
            Self::new(p, den as u32)
        } else {
            let den = self.den as i64 - j;
            Self::new(
                shifted,
                u32::try_from(den).expect("denominator power fits u32"),
            )
        }
    }
}

impl Add for &LocalizedLaurentPoly {
    type Output = LocalizedLaurentPoly;
    fn add(self, rhs: &LocalizedLaurentPoly) -> LocalizedLaurentPoly {
        let den = self.den.max(rhs.den);
        LocalizedLaurentPoly::new(&self.lift(den) + &rhs.lift(den), den)
    }
}

impl Neg for &LocalizedLaurentPoly {
    type Output = LocalizedLaurentPoly;
    fn neg(self) -> LocalizedLaurentPoly {
        LocalizedLaurentPoly {
            numerator: -&self.numerator,
            den: self.den,
        }
    }
}

impl Sub for &LocalizedLaurentPoly {
    type Output = LocalizedLaurentPoly;
    fn sub(self, rhs: &LocalizedLaurentPoly) -> LocalizedLaurentPoly {
        self + &(-rhs)
    }
}

impl Mul for &LocalizedLaurentPoly {
    type Output = LocalizedLaurentPoly;
    fn mul(self, rhs: &LocalizedLaurentPoly) -> LocalizedLaurentPoly {
        LocalizedLaurentPoly::new(&self.numerator * &rhs.numerator, self.den + rhs.den)
    }
}

impl fmt::Display for LocalizedLaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.den {
            0 => write!(f, "{}", self.numerator),
            1 => write!(f, "({})/(1 + x)", self.numerator),
            d => write!(f, "({})/(1 + x)^{d}", self.numerator),
        }
    }
}
