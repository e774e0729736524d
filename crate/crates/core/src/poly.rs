//! Integer Laurent polynomials in one variable `t`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

/// Sparse Laurent polynomial; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentPolynomial {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, BigInt::one())
    }

    pub fn monomial(exponent: i64, coefficient: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !coefficient.is_zero() {
            terms.insert(exponent, coefficient);
        }
        LaurentPolynomial { terms }
    }

    /// Dense coefficients starting at `t^0`.
    pub fn from_dense<I: IntoIterator<Item = BigInt>>(coefficients: I) -> Self {
        Self::from_terms(
            coefficients
                .into_iter()
                .enumerate()
                .map(|(e, c)| (e as i64, c)),
        )
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, BigInt)>>(terms: I) -> Self {
        let mut out = BTreeMap::new();
        for (e, c) in terms {
            *out.entry(e).or_insert_with(BigInt::zero) += c;
        }
        out.retain(|_, c| !c.is_zero());
        LaurentPolynomial { terms: out }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn coefficient(&self, exponent: i64) -> BigInt {
        self.terms.get(&exponent).cloned().unwrap_or_default()
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Difference between highest and lowest exponent.
    pub fn span(&self) -> i64 {
        match (self.min_exponent(), self.max_exponent()) {
            (Some(lo), Some(hi)) => hi - lo,
            _ => 0,
        }
    }

    pub fn shift(&self, by: i64) -> Self {
        LaurentPolynomial {
            terms: self
                .terms
                .iter()
                .map(|(&e, c)| (e + by, c.clone()))
                .collect(),
        }
    }

    /// Canonical representative up to units `±t^k`: lowest exponent 0, positive leading coefficient.
    pub fn normalized(&self) -> Self {
        let Some(lo) = self.min_exponent() else {
            return Self::zero();
        };
        let shifted = self.shift(-lo);
        let leading_negative = shifted
            .terms
            .values()
            .next_back()
            .is_some_and(|c| c.is_negative());
        if leading_negative {
            -shifted
        } else {
            shifted
        }
    }

    /// Normalized and centered on `t^0`; `None` when the span is odd.
    pub fn symmetrized(&self) -> Option<Self> {
        let n = self.normalized();
        let span = n.span();
        (span % 2 == 0).then(|| n.shift(-span / 2))
    }

    /// `p(1/t)`.
    pub fn inverted(&self) -> Self {
        LaurentPolynomial {
            terms: self.terms.iter().map(|(&e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Whether `p(t) ≐ p(1/t)`, i.e. they agree up to a unit `±t^k`.
    pub fn is_reciprocal(&self) -> bool {
        self.normalized() == self.inverted().normalized()
    }

    pub fn eval(&self, t: &BigRational) -> BigRational {
        self.terms.iter().fold(BigRational::zero(), |acc, (&e, c)| {
            let power = if e >= 0 {
                num_traits::pow(t.clone(), e as usize)
            } else {
                num_traits::pow(t.recip(), (-e) as usize)
            };
            acc + power * BigRational::from_integer(c.clone())
        })
    }

    /// Value at `t = ±1` or any integer where no negative exponent occurs.
    pub fn eval_int(&self, t: i64) -> BigInt {
        let value = self.eval(&BigRational::from_integer(BigInt::from(t)));
        assert!(value.is_integer(), "non-integral evaluation at t = {t}");
        value.to_integer()
    }
}

impl std::ops::Neg for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> Self {
        LaurentPolynomial {
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (&e, c)) in self.terms.iter().rev().enumerate() {
            let magnitude = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            let show_coefficient = !magnitude.is_one() || e == 0;
            if show_coefficient {
                write!(f, "{magnitude}")?;
            }
            match e {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{e}")?,
            }
        }
        Ok(())
    }
}

/// Serialized as an exponent → coefficient map.
impl Serialize for LaurentPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = serializer.serialize_map(Some(self.terms.len()))?;
        for (e, c) in &self.terms {
            match i64::try_from(c) {
                Ok(small) => map.serialize_entry(&e.to_string(), &small)?,
                Err(_) => map.serialize_entry(&e.to_string(), &c.to_string())?,
            }
        }
        map.end()
    }
}

/// Dense polynomial product, coefficients indexed from `t^0`.
pub(crate) fn dense_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact division by a monic dense polynomial; `None` if the remainder is nonzero.
pub(crate) fn dense_div_exact(numerator: &[BigInt], divisor: &[BigInt]) -> Option<Vec<BigInt>> {
    let d = divisor.len().checked_sub(1)?;
    if !divisor[d].is_one() {
        return None;
    }
    if numerator.len() <= d {
        return numerator.iter().all(Zero::is_zero).then(Vec::new);
    }
    let mut rem = numerator.to_vec();
    let mut quotient = vec![BigInt::zero(); numerator.len() - d];
    for k in (0..quotient.len()).rev() {
        let c = rem[k + d].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in divisor.iter().enumerate() {
            rem[k + j] -= &c * dj;
        }
        quotient[k] = c;
    }
    rem.iter().all(Zero::is_zero).then_some(quotient)
}

/// `t^n − 1` as a dense vector.
pub(crate) fn t_pow_minus_one(n: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); n + 1];
    v[0] = BigInt::from(-1);
    v[n] = BigInt::one();
    v
}
