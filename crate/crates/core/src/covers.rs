//! Double branched covers of iterated Whitehead doubles of torus knots.
//!
//! `Σ(D^r(K))` decomposes as the complement of the two-component link
//! `D^{r−1}_{−2}(T_{2,4})` glued to two copies of the exterior `E(K)`. For `r = 1` the
//! meridian `μ_K` goes to the curve `−2μ + λ` on each boundary torus of the `T_{2,4}`
//! complement; for `r ≥ 2` the gluing is the splice map `μ_K ↦ λ`, `λ_K ↦ μ`.
//!
//! Two independent routes certify that the cover is an integral homology sphere: the
//! Seifert-matrix determinant of the double, and a Mayer–Vietoris presentation of
//! `H_1` assembled from the decomposition and reduced to Smith normal form.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{determinant, presented_group_order, to_big};
use crate::poly::{dense_div_exact, dense_mul, t_pow_minus_one, LaurentPolynomial};
use crate::seifert::TorusKnot;

/// Square integer Seifert matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct SeifertMatrix {
    entries: Vec<Vec<i64>>,
}

impl SeifertMatrix {
    pub fn new(entries: Vec<Vec<i64>>) -> Result<Self> {
        let n = entries.len();
        if entries.iter().any(|row| row.len() != n) {
            return Err(Error::Shape("Seifert matrix must be square".into()));
        }
        Ok(SeifertMatrix { entries })
    }

    pub fn empty() -> Self {
        SeifertMatrix {
            entries: Vec::new(),
        }
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    fn transpose_entry(&self, i: usize, j: usize) -> i64 {
        self.entries[j][i]
    }
}

/// Alexander polynomial of `T(p,q)` from `(t^{pq}−1)(t−1)/((t^p−1)(t^q−1))`.
pub fn alexander_torus(knot: TorusKnot) -> LaurentPolynomial {
    let (p, q) = (knot.p() as usize, knot.q() as usize);
    let numerator = dense_mul(&t_pow_minus_one(p * q), &t_pow_minus_one(1));
    let denominator = dense_mul(&t_pow_minus_one(p), &t_pow_minus_one(q));
    let quotient = dense_div_exact(&numerator, &denominator)
        .expect("cyclotomic quotient of a torus knot is exact");
    LaurentPolynomial::from_dense(quotient).normalized()
}

/// Genus-one Seifert matrix `[[−1, 1], [0, n]]` of the positively clasped `n`-twisted double.
pub fn double_seifert_matrix(twist: i64) -> SeifertMatrix {
    SeifertMatrix {
        entries: vec![vec![-1, 1], vec![0, twist]],
    }
}

/// Normalized `det(V − tVᵀ)`; interpolated from its values at `t = 0, …, n`.
pub fn alexander_from_seifert(v: &SeifertMatrix) -> LaurentPolynomial {
    let n = v.size();
    let samples: Vec<BigInt> = (0..=n as i64)
        .map(|t| {
            let m: Vec<Vec<i64>> = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| v.entries[i][j] - t * v.transpose_entry(i, j))
                        .collect()
                })
                .collect();
            determinant(&to_big(&m))
        })
        .collect();
    let coefficients = interpolate(&samples);
    LaurentPolynomial::from_dense(coefficients).normalized()
}

/// Coefficients of the polynomial of degree `≤ len − 1` taking `values[i]` at `t = i`.
fn interpolate(values: &[BigInt]) -> Vec<BigInt> {
    let n = values.len();
    // Newton divided differences on nodes 0..n
    let mut diffs: Vec<BigRational> = values
        .iter()
        .map(|v| BigRational::from_integer(v.clone()))
        .collect();
    for level in 1..n {
        for i in (level..n).rev() {
            diffs[i] = (&diffs[i] - &diffs[i - 1]) / BigInt::from(level as i64);
        }
    }
    // expand Σ diffs[i] · Π_{j<i} (t − j)
    let mut coefficients = vec![BigRational::zero(); n];
    let mut basis = vec![BigRational::one()];
    for (i, d) in diffs.iter().enumerate() {
        for (c, b) in coefficients.iter_mut().zip(&basis) {
            *c += d * b;
        }
        let mut next = vec![BigRational::zero(); basis.len() + 1];
        for (k, b) in basis.iter().enumerate() {
            next[k + 1] += b;
            next[k] -= b * BigInt::from(i as i64);
        }
        basis = next;
    }
    coefficients
        .into_iter()
        .map(|c| {
            assert!(c.is_integer(), "integer samples of an integer polynomial");
            c.to_integer()
        })
        .collect()
}

/// `|det(V + Vᵀ)|`, the order of `H_1` of the double branched cover (0 when infinite).
pub fn determinant_from_seifert(v: &SeifertMatrix) -> BigInt {
    let n = v.size();
    let m: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| v.entries[i][j] + v.transpose_entry(i, j))
                .collect()
        })
        .collect();
    determinant(&to_big(&m)).abs()
}

/// How a literal curve `(x, y)` on a boundary torus is read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CurveConvention {
    /// `(x, y) = x·μ + y·λ`.
    #[default]
    MeridianLongitude,
    /// `(x, y) = x·λ + y·μ`.
    LongitudeMeridian,
}

impl std::str::FromStr for CurveConvention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mu-lambda" | "meridian-longitude" => Ok(CurveConvention::MeridianLongitude),
            "lambda-mu" | "longitude-meridian" => Ok(CurveConvention::LongitudeMeridian),
            other => Err(Error::Domain(format!("unknown curve convention {other:?}"))),
        }
    }
}

/// Homological data of the complement of `D^{depth}_{−2}(T_{2,4})`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PatternPiece {
    /// Number of twisted doublings applied to each component of `T_{2,4}`.
    pub depth: u32,
    pub components: usize,
    /// Framing of the longitude used as boundary coordinate, relative to the Seifert longitude.
    pub longitude_framing: [i64; 2],
    pub mutual_linking: i64,
    pub twist: i64,
}

impl PatternPiece {
    pub fn label(&self) -> String {
        match self.depth {
            0 => "S³∖N(T_{2,4})".to_string(),
            d => format!("S³∖N(D^{{{d}}}_{{{}}}(T_{{2,4}}))", self.twist),
        }
    }

    /// Class of `x·μ_j + y·λ_j` in `H_1` of the complement, in the meridian basis.
    fn curve_class(&self, component: usize, x: i64, y: i64) -> [i64; 2] {
        let other = 1 - component;
        let mut class = [0i64; 2];
        class[component] = x + y * self.longitude_framing[component];
        class[other] = y * self.mutual_linking;
        class
    }
}

/// Orientation-reversing identification of `∂E(K)` with one boundary torus of the pattern piece.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Gluing {
    /// Pattern component receiving this companion.
    pub component: usize,
    /// Image of `μ_K` as (meridian, longitude) coefficients.
    pub meridian_image: [i64; 2],
    /// Image of `λ_K` as (meridian, longitude) coefficients.
    pub longitude_image: [i64; 2],
}

impl Gluing {
    pub fn new(
        component: usize,
        meridian_image: [i64; 2],
        longitude_image: [i64; 2],
    ) -> Result<Self> {
        let g = Gluing {
            component,
            meridian_image,
            longitude_image,
        };
        if component > 1 {
            return Err(Error::Shape(format!(
                "pattern has two components, got index {component}"
            )));
        }
        if g.determinant().abs() != 1 {
            return Err(Error::Shape(format!(
                "gluing {meridian_image:?}, {longitude_image:?} is not unimodular"
            )));
        }
        Ok(g)
    }

    pub fn determinant(&self) -> i64 {
        self.meridian_image[0] * self.longitude_image[1]
            - self.meridian_image[1] * self.longitude_image[0]
    }

    /// The splice map `μ_K ↦ λ`, `λ_K ↦ μ`.
    pub fn splice(component: usize) -> Self {
        Gluing {
            component,
            meridian_image: [0, 1],
            longitude_image: [1, 0],
        }
    }

    /// Gluing sending `μ_K` to the literal curve `(x, y)` read under `convention`,
    /// completed by `λ_K ↦ μ` in the same reading.
    pub fn from_literal(
        component: usize,
        curve: [i64; 2],
        convention: CurveConvention,
    ) -> Result<Self> {
        let read = |[x, y]: [i64; 2]| match convention {
            CurveConvention::MeridianLongitude => [x, y],
            CurveConvention::LongitudeMeridian => [y, x],
        };
        Gluing::new(component, read(curve), read([1, 0]))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompanionPiece {
    pub knot: TorusKnot,
}

impl CompanionPiece {
    pub fn label(&self) -> String {
        format!("E({})", self.knot)
    }
}

/// Torus-glued decomposition of `Σ(D^r(K))`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverDecomposition {
    pub depth: u32,
    pub pattern: PatternPiece,
    pub companions: [CompanionPiece; 2],
    pub gluings: [Gluing; 2],
    pub convention: CurveConvention,
}

impl CoverDecomposition {
    /// Replaces both gluings, e.g. to build controls.
    pub fn with_gluings(&self, gluings: [Gluing; 2]) -> Self {
        CoverDecomposition {
            gluings,
            ..self.clone()
        }
    }
}

impl fmt::Display for CoverDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Σ(D^{}({})) = {} ∪ 2{}",
            self.depth,
            self.companions[0].knot,
            self.pattern.label(),
            self.companions[0].label()
        )
    }
}

/// The decomposition of `Σ(D^r(K))` with the default curve convention.
pub fn decompose_cover(knot: TorusKnot, r: u32) -> Result<CoverDecomposition> {
    decompose_cover_with(knot, r, CurveConvention::default())
}

pub fn decompose_cover_with(
    knot: TorusKnot,
    r: u32,
    convention: CurveConvention,
) -> Result<CoverDecomposition> {
    if r < 1 {
        return Err(Error::Depth { depth: r, min: 1 });
    }
    let (mutual_linking, twist) = if r == 1 { (2, 0) } else { (0, -2) };
    let pattern = PatternPiece {
        depth: r - 1,
        components: 2,
        longitude_framing: [0, 0],
        mutual_linking,
        twist,
    };
    let gluings = if r == 1 {
        [
            Gluing::from_literal(0, [-2, 1], convention)?,
            Gluing::from_literal(1, [-2, 1], convention)?,
        ]
    } else {
        [Gluing::splice(0), Gluing::splice(1)]
    };
    let companion = CompanionPiece { knot };
    Ok(CoverDecomposition {
        depth: r,
        pattern,
        companions: [companion.clone(), companion],
        gluings,
        convention,
    })
}

/// Mayer–Vietoris presentation of `H_1`: generators `m_0, m_1` (pattern meridians) and
/// `g_0, g_1` (companion meridians); two relations per gluing torus.
pub fn h1_presentation(decomposition: &CoverDecomposition) -> Vec<Vec<i64>> {
    let pattern = &decomposition.pattern;
    let mut relations = Vec::with_capacity(4);
    for (idx, gluing) in decomposition.gluings.iter().enumerate() {
        let j = gluing.component;
        // μ_K is the generator g_idx of H_1(E(K)); λ_K is null-homologous there.
        let [x, y] = gluing.meridian_image;
        let image = pattern.curve_class(j, x, y);
        let mut row = vec![-image[0], -image[1], 0, 0];
        row[2 + idx] = 1;
        relations.push(row);

        let [x, y] = gluing.longitude_image;
        let image = pattern.curve_class(j, x, y);
        relations.push(vec![image[0], image[1], 0, 0]);
    }
    relations
}

/// Order of `H_1` of the glued manifold, 0 when infinite.
pub fn h1_order(decomposition: &CoverDecomposition) -> BigInt {
    let relations = to_big(&h1_presentation(decomposition));
    presented_group_order(&relations, 4)
}

/// `h1_order` as a machine integer, for reports.
pub fn h1_order_u64(decomposition: &CoverDecomposition) -> u64 {
    h1_order(decomposition).to_u64().unwrap_or(u64::MAX)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn knot(p: u64, q: u64) -> TorusKnot {
        TorusKnot::new(p, q).unwrap()
    }

    fn lp(coeffs: &[i64]) -> LaurentPolynomial {
        LaurentPolynomial::from_dense(coeffs.iter().map(|&c| BigInt::from(c)))
    }

    #[test]
    fn torus_alexander_polynomials() {
        assert_eq!(alexander_torus(knot(2, 3)), lp(&[1, -1, 1]));
        assert_eq!(alexander_torus(knot(2, 5)), lp(&[1, -1, 1, -1, 1]));
        assert_eq!(
            alexander_torus(TorusKnot::with_unknot(1, 7).unwrap()),
            lp(&[1])
        );
        assert_eq!(alexander_torus(knot(3, 4)), lp(&[1, -1, 0, 1, 0, -1, 1]));
    }

    #[test]
    fn double_matrices() {
        assert_eq!(
            double_seifert_matrix(0).entries(),
            &[vec![-1, 1], vec![0, 0]]
        );
        assert_eq!(
            double_seifert_matrix(-2).entries(),
            &[vec![-1, 1], vec![0, -2]]
        );
        assert_eq!(
            double_seifert_matrix(1).entries(),
            &[vec![-1, 1], vec![0, 1]]
        );
    }

    #[test]
    fn alexander_of_doubles() {
        assert_eq!(
            alexander_from_seifert(&double_seifert_matrix(0)),
            LaurentPolynomial::one()
        );
        assert_eq!(
            alexander_from_seifert(&double_seifert_matrix(-2)),
            lp(&[2, -3, 2])
        );
        assert_eq!(
            alexander_from_seifert(&SeifertMatrix::empty()),
            LaurentPolynomial::one()
        );
        // −n(t−1)² + t for general twist n
        for n in -6i64..=6 {
            let expected = lp(&[-n, 2 * n + 1, -n]).normalized();
            assert_eq!(
                alexander_from_seifert(&double_seifert_matrix(n)),
                expected,
                "n = {n}"
            );
        }
    }

    #[test]
    fn trefoil_seifert_matrix() {
        let v = SeifertMatrix::new(vec![vec![-1, 1], vec![0, -1]]).unwrap();
        assert_eq!(alexander_from_seifert(&v), lp(&[1, -1, 1]));
        assert_eq!(determinant_from_seifert(&v), BigInt::from(3));
        assert!(SeifertMatrix::new(vec![vec![1, 2]]).is_err());
    }

    #[test]
    fn determinants_of_doubles() {
        assert_eq!(
            determinant_from_seifert(&double_seifert_matrix(0)),
            BigInt::one()
        );
        assert_eq!(
            determinant_from_seifert(&double_seifert_matrix(-2)),
            BigInt::from(7)
        );
        assert_eq!(
            determinant_from_seifert(&SeifertMatrix::empty()),
            BigInt::one()
        );
    }

    #[test]
    fn decompositions() {
        let d1 = decompose_cover(knot(2, 3), 1).unwrap();
        assert_eq!(d1.pattern.mutual_linking, 2);
        assert_eq!(d1.pattern.depth, 0);
        assert_eq!(d1.gluings[0].meridian_image, [-2, 1]);
        let d2 = decompose_cover(knot(2, 3), 2).unwrap();
        assert_eq!(d2.pattern.mutual_linking, 0);
        assert_eq!(d2.gluings[1], Gluing::splice(1));
        let d3 = decompose_cover(knot(2, 5), 3).unwrap();
        assert_eq!(d3.pattern.label(), "S³∖N(D^{2}_{-2}(T_{2,4}))");
        for d in [&d1, &d2, &d3] {
            assert!(d.gluings.iter().all(|g| g.determinant().abs() == 1));
        }
        assert_eq!(
            decompose_cover(knot(2, 3), 0),
            Err(Error::Depth { depth: 0, min: 1 })
        );
    }

    #[test]
    fn covers_are_homology_spheres() {
        for r in 1..=3 {
            assert_eq!(
                h1_order(&decompose_cover(knot(2, 3), r).unwrap()),
                BigInt::one()
            );
        }
    }

    #[test]
    fn identity_gluing_controls() {
        let identity = |c| Gluing::new(c, [1, 0], [0, 1]).unwrap();
        let d1 = decompose_cover(knot(2, 3), 1)
            .unwrap()
            .with_gluings([identity(0), identity(1)]);
        assert_eq!(h1_order(&d1), BigInt::from(4));
        let d2 = decompose_cover(knot(2, 3), 2)
            .unwrap()
            .with_gluings([identity(0), identity(1)]);
        assert_eq!(h1_order(&d2), BigInt::zero());
    }

    #[test]
    fn transposed_reading_is_not_a_homology_sphere() {
        let d = decompose_cover_with(knot(2, 3), 1, CurveConvention::LongitudeMeridian).unwrap();
        assert_eq!(h1_order(&d), BigInt::from(4));
        // splice gluings are symmetric under the transposition
        let d = decompose_cover_with(knot(2, 3), 2, CurveConvention::LongitudeMeridian).unwrap();
        assert_eq!(h1_order(&d), BigInt::one());
    }

    #[test]
    fn non_unimodular_gluing_rejected() {
        assert!(Gluing::new(0, [2, 0], [0, 1]).is_err());
        assert!(Gluing::new(2, [0, 1], [1, 0]).is_err());
    }
}
