//! Seifert fibered homology spheres and the surgeries on torus knots that produce them.
//!
//! A sphere `Σ(a1,a2,a3)` is stored with its fiber orders sorted ascending and an
//! orientation sign; `−Σ(a1,a2,a3)` keeps the same fibers with sign `-1`.
//! Surgery with slope `1/n` on the torus knot `T(p,q)` is identified with
//! `−Σ(p, q, npq − 1)`.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};

/// Orientation sign of a 3-manifold or of a definite form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn from_i64(value: i64) -> Result<Self> {
        match value {
            1 => Ok(Sign::Positive),
            -1 => Ok(Sign::Negative),
            other => Err(Error::Domain(format!(
                "orientation sign must be ±1, got {other}"
            ))),
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }
}

impl std::ops::Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        self.flip()
    }
}

impl Serialize for Sign {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_i8(self.as_i8())
    }
}

impl<'de> Deserialize<'de> for Sign {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = i64::deserialize(d)?;
        Sign::from_i64(v).map_err(serde::de::Error::custom)
    }
}

/// A coprime pair naming the torus knot `T(p,q)`, stored with `p < q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TorusKnot {
    p: u64,
    q: u64,
}

impl TorusKnot {
    /// Nontrivial positive torus knot; the pair is sorted and must satisfy `2 <= p < q`.
    pub fn new(p: u64, q: u64) -> Result<Self> {
        let knot = Self::with_unknot(p, q)?;
        if knot.p == 1 {
            return Err(Error::Domain(format!(
                "T({p},{q}) is the unknot; use TorusKnot::with_unknot to admit it"
            )));
        }
        Ok(knot)
    }

    /// Like [`TorusKnot::new`] but admits `p = 1`.
    pub fn with_unknot(p: u64, q: u64) -> Result<Self> {
        let (p, q) = if p <= q { (p, q) } else { (q, p) };
        if p == 0 {
            return Err(Error::Domain(
                "torus knot parameters must be positive".into(),
            ));
        }
        let g = p.gcd(&q);
        if g != 1 {
            return Err(Error::Coprimality {
                a: p as i64,
                b: q as i64,
                gcd: g as i64,
            });
        }
        if p == q {
            // only (1,1) reaches here
            return Err(Error::Domain(
                "torus knot parameters must be distinct".into(),
            ));
        }
        Ok(TorusKnot { p, q })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn is_unknot(&self) -> bool {
        self.p == 1
    }

    /// `pq`, with overflow reported as a domain error.
    pub fn product(&self) -> Result<u64> {
        self.p
            .checked_mul(self.q)
            .ok_or_else(|| Error::Domain(format!("pq overflows for {self}")))
    }
}

impl fmt::Display for TorusKnot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T_{{{},{}}}", self.p, self.q)
    }
}

/// Oriented Seifert fibered homology sphere with three fibers of pairwise coprime order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SeifertSphere {
    fibers: [u64; 3],
    orientation: Sign,
}

impl SeifertSphere {
    pub fn fibers(&self) -> [u64; 3] {
        self.fibers
    }

    pub fn orientation(&self) -> Sign {
        self.orientation
    }

    pub fn reversed(&self) -> Self {
        SeifertSphere {
            fibers: self.fibers,
            orientation: self.orientation.flip(),
        }
    }

    /// Product of the fiber orders.
    pub fn fiber_product(&self) -> Result<u64> {
        self.fibers
            .iter()
            .try_fold(1u64, |acc, &a| acc.checked_mul(a))
            .ok_or_else(|| Error::Domain(format!("fiber product overflows for {self}")))
    }
}

impl fmt::Display for SeifertSphere {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a1, a2, a3] = self.fibers;
        let sign = if self.orientation == Sign::Negative {
            "−"
        } else {
            ""
        };
        write!(f, "{sign}Σ({a1},{a2},{a3})")
    }
}

impl Serialize for SeifertSphere {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("SeifertSphere", 2)?;
        s.serialize_field("sign", &self.orientation)?;
        s.serialize_field("fibers", &self.fibers)?;
        s.end()
    }
}

impl<'de> Deserialize<'de> for SeifertSphere {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            sign: Sign,
            fibers: [u64; 3],
        }
        let raw = Raw::deserialize(d)?;
        let [a1, a2, a3] = raw.fibers;
        normalize_seifert(a1, a2, a3, raw.sign).map_err(serde::de::Error::custom)
    }
}

/// Sorts and validates the fiber orders of a Seifert fibered homology sphere.
pub fn normalize_seifert(a1: u64, a2: u64, a3: u64, orientation: Sign) -> Result<SeifertSphere> {
    let mut fibers = [a1, a2, a3];
    if fibers.contains(&0) {
        return Err(Error::Domain(format!(
            "fiber orders must be >= 1, got {fibers:?}"
        )));
    }
    fibers.sort_unstable();
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let g = fibers[i].gcd(&fibers[j]);
        if g != 1 {
            return Err(Error::Coprimality {
                a: fibers[i] as i64,
                b: fibers[j] as i64,
                gcd: g as i64,
            });
        }
    }
    Ok(SeifertSphere {
        fibers,
        orientation,
    })
}

/// A surgery coefficient `m/n` in lowest terms with `n > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SurgerySlope {
    m: i64,
    n: u64,
}

impl SurgerySlope {
    pub fn new(m: i64, n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("slope denominator must be positive".into()));
        }
        let g = m.unsigned_abs().gcd(&n);
        if g != 1 {
            return Err(Error::Coprimality {
                a: m,
                b: n as i64,
                gcd: g as i64,
            });
        }
        Ok(SurgerySlope { m, n })
    }

    /// The slope `1/n`.
    pub fn reciprocal(n: u64) -> Result<Self> {
        Self::new(1, n)
    }

    pub fn integer(m: i64) -> Self {
        SurgerySlope { m, n: 1 }
    }

    pub fn numerator(&self) -> i64 {
        self.m
    }

    pub fn denominator(&self) -> u64 {
        self.n
    }
}

impl fmt::Display for SurgerySlope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n == 1 {
            write!(f, "{:+}", self.m)
        } else {
            write!(f, "{}/{}", self.m, self.n)
        }
    }
}

impl FromStr for SurgerySlope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Domain(format!("cannot parse slope {s:?}; expected m/n"));
        let s = s.trim();
        match s.split_once('/') {
            Some((m, n)) => {
                let m: i64 = m.trim().parse().map_err(|_| bad())?;
                let n: u64 = n.trim().parse().map_err(|_| bad())?;
                SurgerySlope::new(m, n)
            }
            None => Ok(SurgerySlope::integer(s.parse().map_err(|_| bad())?)),
        }
    }
}

impl Serialize for SurgerySlope {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&format!("{}/{}", self.m, self.n))
    }
}

/// Moser's identification for slopes `1/n`: `S³_{1/n}(T(p,q)) = −Σ(p, q, npq − 1)`.
pub fn moser_surgery(knot: TorusKnot, slope: SurgerySlope) -> Result<SeifertSphere> {
    if slope.m != 1 {
        return Err(Error::UnsupportedSlope {
            m: slope.m,
            n: slope.n,
        });
    }
    let third = knot
        .product()?
        .checked_mul(slope.n)
        .map(|v| v - 1)
        .ok_or_else(|| Error::Domain(format!("npq - 1 overflows for {knot} and 1/{}", slope.n)))?;
    normalize_seifert(knot.p, knot.q, third, Sign::Negative)
}
