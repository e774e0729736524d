//! Dimension of the instanton moduli space attached to a Seifert fibered homology sphere,
//! and the ordering quantities that control compactness of that moduli space.
//!
//! For `Σ(a1,…,an)` with `a = a1⋯an` the dimension is
//!
//! ```text
//! R = 2/a − 3 + n + Σ_i (2/a_i) Σ_{k=1}^{a_i−1} cot(πak/a_i²) cot(πk/a_i) sin²(πk/a_i)
//! ```
//!
//! It is evaluated twice. The trigonometric path sums the series above in floating
//! point with compensated accumulation. The exact path uses the finite Fourier
//! expansion of the sawtooth function, which collapses the inner sum for fiber `a_i`
//! to `−2((b_i*/a_i))`, where `b_i*` inverts `a/a_i` modulo `a_i`. The report is only
//! produced when both paths land on the same integer.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::seifert::SeifertSphere;

/// Exact reduced rational over arbitrary-precision integers.
pub type Rational = BigRational;

/// Float residual above which the two evaluation paths are declared to disagree.
pub const HARD_TOLERANCE: f64 = 1e-3;

/// Residual bound expected of every well-conditioned evaluation.
pub const ACCEPTANCE_TOLERANCE: f64 = 1e-6;

/// Largest modulus accepted by [`dedekind_sum`]; keeps the `i128` accumulator exact.
pub const DEDEKIND_MAX_MODULUS: i64 = 1 << 32;

fn rational(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// The sawtooth function `((x))`: `x − ⌊x⌋ − 1/2` off the integers, `0` on them.
pub fn sawtooth(x: &Rational) -> Rational {
    if x.is_integer() {
        Rational::zero()
    } else {
        x - x.floor() - rational(1, 2)
    }
}

/// Dedekind sum `s(b,c) = Σ_{k=1}^{c−1} ((k/c))((kb/c))`, summed directly.
pub fn dedekind_sum(b: i64, c: i64) -> Result<Rational> {
    if c < 1 {
        return Err(Error::Domain(format!(
            "Dedekind sum modulus must be >= 1, got {c}"
        )));
    }
    if c > DEDEKIND_MAX_MODULUS {
        return Err(Error::Domain(format!(
            "modulus {c} exceeds the direct-summation limit {DEDEKIND_MAX_MODULUS}"
        )));
    }
    let g = b.unsigned_abs().gcd(&(c as u64));
    if g != 1 {
        return Err(Error::Coprimality {
            a: b,
            b: c,
            gcd: g as i64,
        });
    }
    // ((k/c))((kb/c)) = (2k − c)(2m − c) / 4c², m = kb mod c
    let c128 = c as i128;
    let step = b.rem_euclid(c) as i128;
    let mut m = 0i128;
    let mut total = 0i128;
    for k in 1..c128 {
        m += step;
        if m >= c128 {
            m -= c128;
        }
        total += (2 * k - c128) * (2 * m - c128);
    }
    Ok(Rational::new(
        BigInt::from(total),
        BigInt::from(4 * c128 * c128),
    ))
}

/// Outcome of a two-path moduli-dimension evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct ModuliReport {
    pub sphere: SeifertSphere,
    pub dimension: i64,
    /// Distance of the trigonometric value from the nearest integer.
    pub residual: f64,
}

impl Serialize for ModuliReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("ModuliReport", 3)?;
        s.serialize_field("fibers", &self.sphere.fibers())?;
        s.serialize_field("dimension", &self.dimension)?;
        s.serialize_field("residual", &self.residual)?;
        s.end()
    }
}

/// Neumaier-compensated sum.
#[derive(Default)]
struct CompensatedSum {
    sum: f64,
    correction: f64,
}

impl CompensatedSum {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.correction += (self.sum - t) + x;
        } else {
            self.correction += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.correction
    }
}

/// `(a / a_i) mod a_i` computed without forming `a`.
fn cofactor_residue(fibers: &[u64; 3], i: usize) -> u64 {
    let m = fibers[i] as u128;
    let r = fibers
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != i)
        .fold(1u128, |acc, (_, &f)| acc * (f as u128 % m) % m);
    r as u64
}

fn inverse_mod(x: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let ext = (x as i128).extended_gcd(&(m as i128));
    debug_assert_eq!(ext.gcd, 1);
    ext.x.rem_euclid(m as i128) as u64
}

/// Trigonometric evaluation of the dimension series.
pub fn moduli_dimension_float(sphere: &SeifertSphere) -> f64 {
    let fibers = sphere.fibers();
    let a: f64 = fibers.iter().map(|&f| f as f64).product();
    let mut acc = CompensatedSum::default();
    acc.add(2.0 / a);
    acc.add(-3.0 + fibers.len() as f64);
    for (i, &ai) in fibers.iter().enumerate() {
        let b = cofactor_residue(&fibers, i);
        let scale = 2.0 / ai as f64;
        let mut inner = CompensatedSum::default();
        let mut m = 0u64;
        for k in 1..ai {
            // πak/a_i² = π(bk mod a_i)/a_i modulo π
            m = (m + b) % ai;
            let (s1, c1) = (PI * m as f64 / ai as f64).sin_cos();
            let (s2, c2) = (PI * k as f64 / ai as f64).sin_cos();
            inner.add((c1 / s1) * (c2 / s2) * s2 * s2);
        }
        acc.add(scale * inner.value());
    }
    acc.value()
}

/// Exact evaluation through sawtooth values.
pub fn moduli_dimension_exact(sphere: &SeifertSphere) -> Result<Rational> {
    let fibers = sphere.fibers();
    let a = sphere.fiber_product()?;
    let mut total = Rational::new(BigInt::from(2), BigInt::from(a));
    total += Rational::from_integer(BigInt::from(fibers.len() as i64 - 3));
    for (i, &ai) in fibers.iter().enumerate() {
        let b_inv = inverse_mod(cofactor_residue(&fibers, i), ai);
        let x = Rational::new(BigInt::from(b_inv), BigInt::from(ai));
        total -= sawtooth(&x) * BigInt::from(2);
    }
    Ok(total)
}

/// Two-path evaluation with the hard tolerance [`HARD_TOLERANCE`].
pub fn moduli_dimension(sphere: &SeifertSphere) -> Result<ModuliReport> {
    moduli_dimension_with_tolerance(sphere, HARD_TOLERANCE)
}

pub fn moduli_dimension_with_tolerance(
    sphere: &SeifertSphere,
    tolerance: f64,
) -> Result<ModuliReport> {
    let exact = moduli_dimension_exact(sphere)?;
    let float_value = moduli_dimension_float(sphere);
    let disagreement = || Error::EvaluationDisagreement {
        sphere: sphere.to_string(),
        float_value,
        exact_value: exact.to_string(),
    };
    if !exact.is_integer() {
        return Err(disagreement());
    }
    let dimension = exact.to_integer().to_i64().ok_or_else(disagreement)?;
    let nearest = float_value.round();
    let residual = (float_value - nearest).abs();
    if !float_value.is_finite() || nearest != dimension as f64 || residual > tolerance {
        return Err(disagreement());
    }
    Ok(ModuliReport {
        sphere: *sphere,
        dimension,
        residual,
    })
}

fn validate_triple(p: u64, q: u64, k: u64) -> Result<()> {
    if p < 2 || q < 2 {
        return Err(Error::Domain(format!("need p, q >= 2, got ({p}, {q})")));
    }
    if k < 1 {
        return Err(Error::Domain(format!("multiplier k must be >= 1, got {k}")));
    }
    let g = p.gcd(&q);
    if g != 1 {
        return Err(Error::Coprimality {
            a: p as i64,
            b: q as i64,
            gcd: g as i64,
        });
    }
    Ok(())
}

/// `pq(kpq − 1)`, the quantity whose strict growth along a family rules out leaking.
pub fn ordering_key(p: u64, q: u64, k: u64) -> Result<u128> {
    validate_triple(p, q, k)?;
    let pq = p as u128 * q as u128;
    pq.checked_mul(k as u128)
        .and_then(|kpq| pq.checked_mul(kpq - 1))
        .ok_or_else(|| Error::Domain(format!("ordering key overflows for ({p},{q},{k})")))
}

/// `1/4 < pq(kpq − 1)`, the bound that rules out bubbling.
pub fn bubbling_bound_holds(p: u64, q: u64, k: u64) -> Result<bool> {
    let key = ordering_key(p, q, k)?;
    Ok(key.checked_mul(4).is_none_or(|v| v > 1))
}

/// `(b/c + c/b + 1/(bc))/12 − 1/4`, the right side of Dedekind reciprocity.
pub fn reciprocity_rhs(b: i64, c: i64) -> Rational {
    let b = BigInt::from(b);
    let c = BigInt::from(c);
    let sum = Rational::new(b.clone(), c.clone())
        + Rational::new(c.clone(), b.clone())
        + Rational::new(BigInt::one(), &b * &c);
    sum / BigInt::from(12) - rational(1, 4)
}
