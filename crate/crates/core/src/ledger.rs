//! Intersection-form bookkeeping for the definite cobordisms between double branched
//! covers and Seifert fibered spheres.
//!
//! A ledger records the intersection form of a 4-manifold built from 2-handles, the
//! labeled 3-manifolds at either end, and whether its definiteness is computed from an
//! explicit matrix or carried as an assumption from a construction done elsewhere.
//! Boundary convention: a ledger from `Y_in` to `Y_out` has oriented boundary
//! `−Y_in ⊔ Y_out`.

use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use crate::criterion::FamilyMember;
use crate::error::{Error, Result};
use crate::instanton::{bubbling_bound_holds, ordering_key};
use crate::linalg::{leading_minors, to_big};
use crate::seifert::{moser_surgery, SeifertSphere, Sign, SurgerySlope, TorusKnot};

/// Knots appearing as labels in ledger ends.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Knot {
    Unknot,
    Torus(TorusKnot),
    /// `depth`-fold iterated, `twist`-twisted positively clasped Whitehead double.
    Double {
        twist: i64,
        depth: u32,
        companion: Box<Knot>,
    },
    Named(String),
}

impl Knot {
    /// `D^depth_twist(companion)`; depth 0 is the companion itself.
    pub fn double(companion: Knot, depth: u32, twist: i64) -> Knot {
        if depth == 0 {
            companion
        } else {
            Knot::Double {
                twist,
                depth,
                companion: Box::new(companion),
            }
        }
    }
}

impl fmt::Display for Knot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Knot::Unknot => write!(f, "U"),
            Knot::Torus(t) => write!(f, "{t}"),
            Knot::Double {
                twist: 0,
                depth,
                companion,
            } => write!(f, "D^{{{depth}}}({companion})"),
            Knot::Double {
                twist,
                depth,
                companion,
            } => {
                write!(f, "D^{{{depth}}}_{{{twist}}}({companion})")
            }
            Knot::Named(name) => write!(f, "{name}"),
        }
    }
}

/// Closed oriented 3-manifolds appearing as ledger ends.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Manifold {
    BranchedCover(Knot),
    Splice(Knot, Knot),
    Surgery { knot: Knot, slope: SurgerySlope },
    Seifert(SeifertSphere),
    Sum(Vec<Manifold>),
    Reversed(Box<Manifold>),
}

impl Manifold {
    pub fn negate(&self) -> Manifold {
        match self {
            Manifold::Seifert(s) => Manifold::Seifert(s.reversed()),
            Manifold::Sum(parts) => Manifold::Sum(parts.iter().map(Manifold::negate).collect()),
            Manifold::Reversed(inner) => (**inner).clone(),
            other => Manifold::Reversed(Box::new(other.clone())),
        }
    }

    fn cover_of(knot: TorusKnot, r: u32) -> Manifold {
        Manifold::BranchedCover(Knot::double(Knot::Torus(knot), r, 0))
    }
}

impl fmt::Display for Manifold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Manifold::BranchedCover(k) => write!(f, "Σ({k})"),
            Manifold::Splice(a, b) => write!(f, "Splice({a}, {b})"),
            Manifold::Surgery { knot, slope } => write!(f, "S³_{{{slope}}}({knot})"),
            Manifold::Seifert(s) => write!(f, "{s}"),
            Manifold::Sum(parts) => {
                for (i, part) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, " # ")?;
                    }
                    write!(f, "{part}")?;
                }
                Ok(())
            }
            Manifold::Reversed(inner) => match **inner {
                Manifold::Sum(_) | Manifold::Splice(..) => write!(f, "−({inner})"),
                _ => write!(f, "−{inner}"),
            },
        }
    }
}

impl Serialize for Manifold {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Definiteness {
    Negative,
    Positive,
    Indefinite,
    Degenerate,
    /// The zero-dimensional form; neutral under block sums.
    Vacuous,
}

impl Definiteness {
    /// Definiteness of a block sum of two forms.
    pub fn combine(self, other: Definiteness) -> Definiteness {
        use Definiteness::*;
        match (self, other) {
            (Vacuous, x) | (x, Vacuous) => x,
            (Degenerate, _) | (_, Degenerate) => Degenerate,
            (Negative, Negative) => Negative,
            (Positive, Positive) => Positive,
            _ => Indefinite,
        }
    }

    fn of_sign(sign: Sign) -> Definiteness {
        match sign {
            Sign::Negative => Definiteness::Negative,
            Sign::Positive => Definiteness::Positive,
        }
    }
}

/// Exact definiteness of a symmetric integer matrix via leading principal minors.
pub fn definiteness(matrix: &[Vec<i64>]) -> Result<Definiteness> {
    let n = matrix.len();
    if matrix.iter().any(|row| row.len() != n) {
        return Err(Error::Shape("intersection form must be square".into()));
    }
    for i in 0..n {
        for j in 0..i {
            if matrix[i][j] != matrix[j][i] {
                return Err(Error::Shape(format!(
                    "matrix is not symmetric at ({i}, {j})"
                )));
            }
        }
    }
    if n == 0 {
        return Ok(Definiteness::Vacuous);
    }
    let minors = leading_minors(&to_big(matrix));
    if minors[n - 1].is_zero() {
        return Ok(Definiteness::Degenerate);
    }
    if minors.iter().all(Signed::is_positive) {
        return Ok(Definiteness::Positive);
    }
    // negative definite iff (−1)^k d_k > 0
    let alternating = minors.iter().enumerate().all(|(k, d)| {
        if k % 2 == 0 {
            d.is_negative()
        } else {
            d.is_positive()
        }
    });
    Ok(if alternating {
        Definiteness::Negative
    } else {
        Definiteness::Indefinite
    })
}

/// Whether the definiteness of a ledger is computed or carried from a cited construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Opacity {
    Explicit,
    OpaqueDefinite(Sign),
}

impl Serialize for Opacity {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Opacity::Explicit => serializer.serialize_str("explicit"),
            Opacity::OpaqueDefinite(Sign::Negative) => {
                serializer.serialize_str("opaque-definite(-)")
            }
            Opacity::OpaqueDefinite(Sign::Positive) => {
                serializer.serialize_str("opaque-definite(+)")
            }
        }
    }
}

/// A 2-handle attaching curve: its framing and its linking numbers with earlier curves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FramedCurve {
    pub framing: i64,
    pub linking_row: Vec<i64>,
}

impl FramedCurve {
    pub fn new(framing: i64, linking_row: Vec<i64>) -> Self {
        FramedCurve {
            framing,
            linking_row,
        }
    }

    /// `count` curves of the given framing, pairwise unlinked and unlinked from `existing` handles.
    pub fn unlinked(framing: i64, count: usize, existing: usize) -> Vec<FramedCurve> {
        (0..count)
            .map(|i| FramedCurve::new(framing, vec![0; existing + i]))
            .collect()
    }
}

/// The algebraic shadow of a cobordism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionLedger {
    matrix: Vec<Vec<i64>>,
    ends_in: Vec<Manifold>,
    ends_out: Vec<Manifold>,
    opacity: Opacity,
    assumptions: Vec<String>,
    h1_mod2_trivial: bool,
}

impl IntersectionLedger {
    /// Product cobordism with no handles.
    pub fn empty(ends_in: Vec<Manifold>, ends_out: Vec<Manifold>) -> Self {
        IntersectionLedger {
            matrix: Vec::new(),
            ends_in,
            ends_out,
            opacity: Opacity::Explicit,
            assumptions: Vec::new(),
            h1_mod2_trivial: true,
        }
    }

    /// A ledger whose form is not tracked; `sign` is taken as given.
    pub fn opaque(
        sign: Sign,
        ends_in: Vec<Manifold>,
        ends_out: Vec<Manifold>,
        assumption: impl Into<String>,
    ) -> Self {
        IntersectionLedger {
            matrix: Vec::new(),
            ends_in,
            ends_out,
            opacity: Opacity::OpaqueDefinite(sign),
            assumptions: vec![assumption.into()],
            h1_mod2_trivial: true,
        }
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn ends_in(&self) -> &[Manifold] {
        &self.ends_in
    }

    pub fn ends_out(&self) -> &[Manifold] {
        &self.ends_out
    }

    pub fn opacity(&self) -> Opacity {
        self.opacity
    }

    pub fn assumptions(&self) -> &[String] {
        &self.assumptions
    }

    pub fn h1_mod2_trivial(&self) -> bool {
        self.h1_mod2_trivial
    }

    pub fn is_explicit(&self) -> bool {
        self.opacity == Opacity::Explicit
    }

    pub fn definiteness(&self) -> Definiteness {
        match self.opacity {
            Opacity::OpaqueDefinite(sign) => Definiteness::of_sign(sign),
            Opacity::Explicit => {
                definiteness(&self.matrix).expect("ledger matrices are kept symmetric")
            }
        }
    }

    pub fn with_ends(mut self, ends_in: Vec<Manifold>, ends_out: Vec<Manifold>) -> Self {
        self.ends_in = ends_in;
        self.ends_out = ends_out;
        self
    }

    pub fn with_assumption(mut self, assumption: impl Into<String>) -> Self {
        self.assumptions.push(assumption.into());
        self
    }

    /// The same manifold with reversed orientation: form negated, every end reversed.
    pub fn negated(&self) -> Self {
        IntersectionLedger {
            matrix: self
                .matrix
                .iter()
                .map(|row| row.iter().map(|x| -x).collect())
                .collect(),
            ends_in: self.ends_in.iter().map(Manifold::negate).collect(),
            ends_out: self.ends_out.iter().map(Manifold::negate).collect(),
            opacity: match self.opacity {
                Opacity::Explicit => Opacity::Explicit,
                Opacity::OpaqueDefinite(s) => Opacity::OpaqueDefinite(s.flip()),
            },
            assumptions: self.assumptions.clone(),
            h1_mod2_trivial: self.h1_mod2_trivial,
        }
    }

    /// Block sum of the forms, with ends concatenated.
    pub fn disjoint_union(&self, other: &IntersectionLedger) -> Result<Self> {
        let opacity = combine_opacity(self, other)?;
        let n = self.matrix.len();
        let m = other.matrix.len();
        let mut matrix = vec![vec![0; n + m]; n + m];
        for i in 0..n {
            matrix[i][..n].copy_from_slice(&self.matrix[i]);
        }
        for i in 0..m {
            matrix[n + i][n..].copy_from_slice(&other.matrix[i]);
        }
        let (matrix, opacity) = match opacity {
            Opacity::Explicit => (matrix, opacity),
            opaque => (Vec::new(), opaque),
        };
        let mut assumptions = self.assumptions.clone();
        assumptions.extend(other.assumptions.iter().cloned());
        Ok(IntersectionLedger {
            matrix,
            ends_in: [self.ends_in.clone(), other.ends_in.clone()].concat(),
            ends_out: [self.ends_out.clone(), other.ends_out.clone()].concat(),
            opacity,
            assumptions,
            h1_mod2_trivial: self.h1_mod2_trivial && other.h1_mod2_trivial,
        })
    }

    /// Stacks `next` on top of `self`, gluing along `self`'s outgoing ends, which must
    /// equal `next`'s incoming ends. The ends are homology spheres, so forms add.
    pub fn compose(&self, next: &IntersectionLedger) -> Result<Self> {
        if self.ends_out != next.ends_in {
            return Err(Error::Shape(format!(
                "cannot glue: outgoing [{}] does not match incoming [{}]",
                join(&self.ends_out),
                join(&next.ends_in)
            )));
        }
        let glued = self.disjoint_union(next)?;
        Ok(glued.with_ends(self.ends_in.clone(), next.ends_out.clone()))
    }
}

fn join(ends: &[Manifold]) -> String {
    ends.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

fn combine_opacity(a: &IntersectionLedger, b: &IntersectionLedger) -> Result<Opacity> {
    if a.is_explicit() && b.is_explicit() {
        return Ok(Opacity::Explicit);
    }
    match a.definiteness().combine(b.definiteness()) {
        Definiteness::Negative => Ok(Opacity::OpaqueDefinite(Sign::Negative)),
        Definiteness::Positive => Ok(Opacity::OpaqueDefinite(Sign::Positive)),
        other => Err(Error::Shape(format!(
            "block sum with an opaque ledger has no definite sign ({other:?})"
        ))),
    }
}

impl Serialize for IntersectionLedger {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("IntersectionLedger", 7)?;
        s.serialize_field("matrix", &self.matrix)?;
        s.serialize_field("definiteness", &self.definiteness())?;
        s.serialize_field("opacity", &self.opacity)?;
        s.serialize_field("ends_in", &self.ends_in)?;
        s.serialize_field("ends_out", &self.ends_out)?;
        s.serialize_field("assumptions", &self.assumptions)?;
        s.serialize_field("h1_mod2_trivial", &self.h1_mod2_trivial)?;
        s.end()
    }
}

/// Extends the linking matrix by one row and column per curve.
pub fn attach_handles(
    ledger: &IntersectionLedger,
    curves: &[FramedCurve],
) -> Result<IntersectionLedger> {
    if !ledger.is_explicit() {
        return Err(Error::Shape(
            "cannot attach handles to an opaque ledger".into(),
        ));
    }
    let mut matrix = ledger.matrix.clone();
    for curve in curves {
        let n = matrix.len();
        if curve.linking_row.len() != n {
            return Err(Error::Shape(format!(
                "linking row has {} entries but {n} handles are attached",
                curve.linking_row.len()
            )));
        }
        for (row, &lk) in matrix.iter_mut().zip(&curve.linking_row) {
            row.push(lk);
        }
        let mut last = curve.linking_row.clone();
        last.push(curve.framing);
        matrix.push(last);
    }
    Ok(IntersectionLedger {
        matrix,
        ..ledger.clone()
    })
}

/// Self-linking of the `(m,1)` curve on `∂N(γ)` inside a splice: `m − 2`.
pub fn hoste_framing(m: i64) -> i64 {
    m - 2
}

/// Crossing changes in the positive-braid unknotting sequence of `T(p,q)`: `(p−1)(q−1)/2`.
pub fn default_crossing_count(knot: TorusKnot) -> u64 {
    (knot.p() - 1) * (knot.q() - 1) / 2
}

/// Negative definite cobordism from `Σ(D^r(K))` to `Splice(D^{r−1}_{−2}(U), K)` made of
/// `c` handles of framing −1 around the crossings of an unknotting sequence.
pub fn cover_to_splice(knot: TorusKnot, r: u32, c: u64) -> Result<IntersectionLedger> {
    if r < 2 {
        return Err(Error::Depth { depth: r, min: 2 });
    }
    if c < 1 {
        return Err(Error::Domain(
            "an unknotting sequence needs at least one crossing change".into(),
        ));
    }
    let start = IntersectionLedger::empty(
        vec![Manifold::cover_of(knot, r)],
        vec![Manifold::Splice(
            Knot::double(Knot::Unknot, r - 1, -2),
            Knot::Torus(knot),
        )],
    );
    let ledger = attach_handles(&start, &FramedCurve::unlinked(-1, c as usize, 0))?;
    Ok(ledger.with_assumption(format!(
        "{c} crossing-change curves of framing −1, each with linking number 0 with {knot}"
    )))
}

/// Negative definite cobordism from `Splice(K₀,K₁)` to `S³₊₁(K₀) # S³₊₁(K₁)`: one handle.
pub fn splice_to_surgery(k0: Knot, k1: Knot) -> IntersectionLedger {
    let plus_one = SurgerySlope::integer(1);
    let start = IntersectionLedger::empty(
        vec![Manifold::Splice(k0.clone(), k1.clone())],
        vec![Manifold::Sum(vec![
            Manifold::Surgery {
                knot: k0,
                slope: plus_one,
            },
            Manifold::Surgery {
                knot: k1,
                slope: plus_one,
            },
        ])],
    );
    attach_handles(&start, &[FramedCurve::new(-1, Vec::new())])
        .expect("single handle on an empty ledger")
        .with_assumption(format!(
            "framing −1 recorded as the form entry; the splice self-linking of the curve is {}",
            hoste_framing(-1)
        ))
}

/// A single handle along the Hoste curve with framing `m`, whose entry is the
/// self-linking `m − 2` measured in the splice. Negative definite iff `m ≤ 1`.
pub fn splice_attachment(k0: Knot, k1: Knot, m: i64) -> IntersectionLedger {
    let start = IntersectionLedger::empty(vec![Manifold::Splice(k0, k1)], Vec::new());
    attach_handles(&start, &[FramedCurve::new(hoste_framing(m), Vec::new())])
        .expect("single handle on an empty ledger")
        .with_assumption(format!("handle framing m = {m} measured in S³"))
}

/// `Z_{p,q}`: negative definite cobordism from `Σ(D^r(T_{p,q}))` to `−Σ(p,q,pq−1)`.
pub fn build_z(knot: TorusKnot, r: u32) -> Result<IntersectionLedger> {
    let sphere = moser_surgery(knot, SurgerySlope::integer(1))?;
    let target = Manifold::Seifert(sphere);
    match r {
        0 => Err(Error::Depth { depth: 0, min: 1 }),
        1 => Ok(IntersectionLedger::opaque(
            Sign::Negative,
            vec![Manifold::cover_of(knot, 1)],
            vec![target],
            "r = 1: negative definiteness carried from the cited construction through S³_{1/2}, not computed",
        )),
        _ => {
            let c = default_crossing_count(knot);
            let pattern = Knot::double(Knot::Unknot, r - 1, -2);
            let first = cover_to_splice(knot, r, c)?;
            let second = splice_to_surgery(pattern.clone(), Knot::Torus(knot));
            let unknotting = attach_handles(
                &IntersectionLedger::empty(second.ends_out().to_vec(), vec![target]),
                &[FramedCurve::new(-1, Vec::new())],
            )?
            .with_assumption(format!(
                "one −1 curve around the smallest clasp unknots {pattern}; its framing in S³₊₁({pattern}) stays −1"
            ))
            .with_assumption(format!("S³₊₁(U) # S³₊₁({knot}) = S³₊₁({knot}) = {sphere} by Moser"));
            first.compose(&second)?.compose(&unknotting)
        }
    }
}

/// `P_{p,q}`: positive definite cobordism from `Σ(D^r(T_{p,q}))` to `−Σ(p,q,4pq−1) # −Σ(p,q,4pq−1)`.
pub fn build_p(knot: TorusKnot, r: u32) -> Result<IntersectionLedger> {
    if r < 1 {
        return Err(Error::Depth { depth: r, min: 1 });
    }
    let quarter = Manifold::Seifert(moser_surgery(knot, SurgerySlope::reciprocal(4)?)?);
    let start = IntersectionLedger::empty(
        vec![Manifold::cover_of(knot, r)],
        vec![Manifold::Sum(vec![quarter.clone(), quarter])],
    );
    let curves = [
        FramedCurve::new(1, Vec::new()),
        FramedCurve::new(1, vec![0]),
    ];
    Ok(attach_handles(&start, &curves)?
        .with_assumption(
            "δ₁, δ₂ framed +1 with linking number 2 with their clasps; mutual linking taken as 0",
        )
        .with_assumption(format!(
            "resulting end is S³_{{1/4}}({knot}) # S³_{{1/4}}({knot}); identified by Moser"
        )))
}

/// `R_{p,q}`: negative definite manifold bounded by `−Σ(D^r(T_{p,q}))`.
pub fn build_r(knot: TorusKnot, r: u32) -> Result<IntersectionLedger> {
    if r < 1 {
        return Err(Error::Depth { depth: r, min: 1 });
    }
    Ok(IntersectionLedger::opaque(
        Sign::Negative,
        vec![Manifold::cover_of(knot, r)],
        Vec::new(),
        "negative definite cap carried from the cited construction, not computed",
    ))
}

/// Ledger of `W_q(A)`: replacing an annulus in a crossing-change cobordism keeps its form `−I`.
pub fn pos_to_neg_ledger(change_count: u64, slope: SurgerySlope) -> Result<IntersectionLedger> {
    if change_count < 1 {
        return Err(Error::Domain("need at least one crossing change".into()));
    }
    let start = IntersectionLedger::empty(
        vec![Manifold::Surgery {
            knot: Knot::Named("J".into()),
            slope,
        }],
        vec![Manifold::Surgery {
            knot: Knot::Named("K".into()),
            slope,
        }],
    );
    Ok(
        attach_handles(&start, &FramedCurve::unlinked(-1, change_count as usize, 0))?
            .with_assumption("H_2(W_q(A)) ≅ H_2(W ∖ A) ≅ H_2(W)"),
    )
}

/// One Seifert sphere on the boundary of the assembled manifold.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundarySphere {
    pub sphere: SeifertSphere,
    pub member: usize,
    pub k: u64,
    pub key: u128,
    /// Number of copies along the boundary.
    pub multiplicity: u64,
}

/// A piece of the assembled manifold and how many copies of it are used.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Constituent {
    pub label: String,
    pub multiplicity: u64,
    pub ledger: IntersectionLedger,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum ContradictionVerdict {
    /// The boundary satisfies the ordering criterion, so the slicing manifold cannot exist.
    Obstructed,
    NotObstructed {
        index: usize,
        next: usize,
    },
    BubblingFailed {
        member: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ContradictionReport {
    /// Coefficients after normalizing the last nonzero one to be positive.
    pub coefficients: Vec<i64>,
    pub top_index: usize,
    pub boundary: Vec<BoundarySphere>,
    pub constituents: Vec<Constituent>,
    pub definiteness: Definiteness,
    pub opacity: Opacity,
    pub h1_mod2_trivial: bool,
    pub verdict: ContradictionVerdict,
}

/// Caps off or simplifies the boundary of a putative `Z/2`-homology ball `Q` bounded by
/// `Σ c_i Σ(D^{r_i}(T_{p_i,q_i}))`, and tests the resulting Seifert boundary against the
/// ordering criterion.
pub fn assemble_contradiction(
    coefficients: &[i64],
    family: &[FamilyMember],
) -> Result<ContradictionReport> {
    if coefficients.len() != family.len() {
        return Err(Error::Shape(format!(
            "{} coefficients for {} family members",
            coefficients.len(),
            family.len()
        )));
    }
    let top = coefficients
        .iter()
        .rposition(|&c| c != 0)
        .ok_or(Error::ZeroCombination)?;
    let flip = coefficients[top] < 0;
    let normalized: Vec<i64> = coefficients
        .iter()
        .map(|&c| if flip { -c } else { c })
        .collect();

    let q_ledger = IntersectionLedger::empty(Vec::new(), Vec::new())
        .with_assumption("Q has the Z/2-homology of a punctured 4-ball; its rational form is zero");
    let mut constituents = vec![Constituent {
        label: "Q".into(),
        multiplicity: 1,
        ledger: q_ledger,
    }];
    let mut boundary = Vec::new();

    for (i, (&c, member)) in normalized.iter().zip(family).enumerate() {
        let knot = member.knot()?;
        let copies = c.unsigned_abs();
        if c < 0 {
            let ledger = build_p(knot, member.r)?.negated();
            constituents.push(Constituent {
                label: format!("−P[{i}]"),
                multiplicity: copies,
                ledger,
            });
            let sphere = moser_surgery(knot, SurgerySlope::reciprocal(4)?)?.reversed();
            boundary.push(BoundarySphere {
                sphere,
                member: i,
                k: 4,
                key: ordering_key(knot.p(), knot.q(), 4)?,
                multiplicity: 2 * copies,
            });
        } else if c > 0 {
            let caps = if i == top { copies - 1 } else { copies };
            if caps > 0 {
                let ledger = build_r(knot, member.r)?;
                constituents.push(Constituent {
                    label: format!("R[{i}]"),
                    multiplicity: caps,
                    ledger,
                });
            }
        }
    }

    let top_member = &family[top];
    let top_knot = top_member.knot()?;
    constituents.push(Constituent {
        label: format!("Z[{top}]"),
        multiplicity: 1,
        ledger: build_z(top_knot, top_member.r)?,
    });
    boundary.push(BoundarySphere {
        sphere: moser_surgery(top_knot, SurgerySlope::integer(1))?,
        member: top,
        k: 1,
        key: ordering_key(top_knot.p(), top_knot.q(), 1)?,
        multiplicity: 1,
    });

    let definiteness = constituents
        .iter()
        .map(|c| c.ledger.definiteness())
        .fold(Definiteness::Vacuous, Definiteness::combine);
    let opacity = if constituents.iter().all(|c| c.ledger.is_explicit()) {
        Opacity::Explicit
    } else {
        match definiteness {
            Definiteness::Positive => Opacity::OpaqueDefinite(Sign::Positive),
            _ => Opacity::OpaqueDefinite(Sign::Negative),
        }
    };
    let h1_mod2_trivial = constituents.iter().all(|c| c.ledger.h1_mod2_trivial());

    let verdict = boundary_verdict(&boundary)?;
    Ok(ContradictionReport {
        coefficients: normalized,
        top_index: top,
        boundary,
        constituents,
        definiteness,
        opacity,
        h1_mod2_trivial,
        verdict,
    })
}

fn boundary_verdict(boundary: &[BoundarySphere]) -> Result<ContradictionVerdict> {
    for b in boundary {
        let [p, q, _] = b.sphere.fibers();
        if !bubbling_bound_holds(p, q, b.k)? {
            return Ok(ContradictionVerdict::BubblingFailed { member: b.member });
        }
    }
    for pair in boundary.windows(2) {
        if pair[0].key >= pair[1].key {
            return Ok(ContradictionVerdict::NotObstructed {
                index: pair[0].member,
                next: pair[1].member,
            });
        }
    }
    Ok(ContradictionVerdict::Obstructed)
}

impl ContradictionReport {
    pub fn is_obstructed(&self) -> bool {
        self.verdict == ContradictionVerdict::Obstructed
    }

    /// Boundary spheres as a display list.
    pub fn boundary_labels(&self) -> Vec<String> {
        self.boundary.iter().map(|b| b.sphere.to_string()).collect()
    }
}
