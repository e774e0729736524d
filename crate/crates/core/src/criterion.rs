//! The ordering criterion on torus-knot families and end-to-end independence certificates.
//!
//! A certificate bundles every computable check behind the independence argument:
//! the inequality chain, the moduli-dimension values of both Seifert families, the
//! homology and Alexander data of the branched covers, and one contradiction
//! assembly per top index.

use num_integer::{Integer, Roots};
use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::covers::{
    alexander_from_seifert, decompose_cover, determinant_from_seifert, double_seifert_matrix,
    h1_order,
};
use crate::error::{Error, Result};
use crate::instanton::{
    bubbling_bound_holds, moduli_dimension_with_tolerance, ordering_key, HARD_TOLERANCE,
};
use crate::ledger::{assemble_contradiction, ContradictionVerdict, Definiteness};
use crate::seifert::{moser_surgery, SurgerySlope, TorusKnot};

/// Torus-knot parameters with a doubling depth; the unit of certification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawMember")]
pub struct FamilyMember {
    pub p: u64,
    pub q: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u64>,
    pub r: u32,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMember {
    p: u64,
    q: u64,
    #[serde(default)]
    k: Option<u64>,
    r: u32,
}

impl TryFrom<RawMember> for FamilyMember {
    type Error = Error;
    fn try_from(raw: RawMember) -> Result<Self> {
        FamilyMember::new(raw.p, raw.q, raw.k, raw.r)
    }
}

impl FamilyMember {
    /// Validates and orders `p < q`.
    pub fn new(p: u64, q: u64, k: Option<u64>, r: u32) -> Result<Self> {
        let (p, q) = if p <= q { (p, q) } else { (q, p) };
        if p < 2 || p == q {
            return Err(Error::Domain(format!("need 2 <= p < q, got ({p}, {q})")));
        }
        let g = p.gcd(&q);
        if g != 1 {
            return Err(Error::Coprimality {
                a: p as i64,
                b: q as i64,
                gcd: g as i64,
            });
        }
        if k == Some(0) {
            return Err(Error::Domain("multiplier k must be >= 1".into()));
        }
        if r < 1 {
            return Err(Error::Depth { depth: r, min: 1 });
        }
        Ok(FamilyMember { p, q, k, r })
    }

    pub fn knot(&self) -> Result<TorusKnot> {
        TorusKnot::new(self.p, self.q)
    }

    fn revalidated(&self) -> Result<Self> {
        FamilyMember::new(self.p, self.q, self.k, self.r)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
}

/// One named check: what went in, whether it passed, and the evidence.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    /// The mathematical statement this check evaluates.
    pub anchor: String,
    pub inputs: Value,
    pub result: Outcome,
    pub witness: Value,
    #[serde(skip)]
    failed_pair: Option<(usize, Option<usize>)>,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.result == Outcome::Pass
    }

    /// For a failed check, the offending member index and, for chain checks, its successor.
    pub fn failure(&self) -> Option<(usize, Option<usize>)> {
        self.failed_pair
    }

    fn new(name: impl Into<String>, anchor: &str, inputs: Value) -> Self {
        Check {
            name: name.into(),
            anchor: anchor.to_string(),
            inputs,
            result: Outcome::Pass,
            witness: Value::Null,
            failed_pair: None,
        }
    }

    fn pass(mut self, witness: Value) -> Self {
        self.result = Outcome::Pass;
        self.witness = witness;
        self
    }

    fn fail(mut self, index: usize, next: Option<usize>, witness: Value) -> Self {
        self.result = Outcome::Fail;
        self.witness = witness;
        self.failed_pair = Some((index, next));
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Verdict {
    Independent,
    CriterionFailed {
        check: String,
        index: usize,
        #[serde(skip_serializing_if = "Option::is_none")]
        next: Option<usize>,
    },
    InvalidInput {
        reason: String,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Certificate {
    pub family: Vec<FamilyMember>,
    pub checks: Vec<Check>,
    pub verdict: Verdict,
    pub toolkit_version: String,
    pub notes: Vec<String>,
}

pub const TOOLKIT_VERSION: &str = env!("CARGO_PKG_VERSION");

impl Certificate {
    pub fn is_independent(&self) -> bool {
        self.verdict == Verdict::Independent
    }

    /// A certificate recording that the input could not be certified at all.
    pub fn invalid(reason: impl Into<String>) -> Self {
        Certificate {
            family: Vec::new(),
            checks: Vec::new(),
            verdict: Verdict::InvalidInput {
                reason: reason.into(),
            },
            toolkit_version: TOOLKIT_VERSION.to_string(),
            notes: Vec::new(),
        }
    }

    /// Canonical JSON: keys sorted, two-space indentation, trailing newline.
    pub fn to_canonical_json(&self) -> String {
        canonical_json(self)
    }
}

/// Serializes through `serde_json::Value`, whose maps keep keys sorted.
pub fn canonical_json<T: Serialize>(value: &T) -> String {
    let value = serde_json::to_value(value).expect("certificate types serialize infallibly");
    let mut out = serde_json::to_string_pretty(&value).expect("values serialize infallibly");
    out.push('\n');
    out
}

const THEOREM_ANCHOR: &str =
    "no linear combination leaks when p_i q_i (k_i p_i q_i - 1) < p_{i+1} q_{i+1} and 1/4 < p_i q_i (k_i p_i q_i - 1)";
const COROLLARY_ANCHOR: &str =
    "p_i q_i (4 p_i q_i - 1) < p_{i+1} q_{i+1} (p_{i+1} q_{i+1} - 1) for consecutive members";
const BUBBLING_ANCHOR: &str = "1/4 < pq(kpq - 1) for k = 1 and k = 4";
const MODULI_ANCHOR: &str =
    "the moduli space over Σ(p,q,kpq-1) has dimension exactly 1 for k = 1 and k = 4";
const COVER_ANCHOR: &str =
    "Σ(D^r(T_{p,q})) is a homology sphere and D^r has trivial Alexander polynomial";
const CONTRADICTION_ANCHOR: &str =
    "a Z/2-homology ball bounded by the combination caps off to a negative definite manifold whose Seifert boundary violates the criterion";

/// Strictly increasing `pq(kpq − 1)` and the bubbling bound for every member.
pub fn check_theorem_family(members: &[(u64, u64, u64)]) -> Result<Check> {
    let inputs = json!(members
        .iter()
        .map(|&(p, q, k)| json!([p, q, k]))
        .collect::<Vec<_>>());
    let check = Check::new("theorem-chain", THEOREM_ANCHOR, inputs);
    let keys = members
        .iter()
        .map(|&(p, q, k)| ordering_key(p, q, k))
        .collect::<Result<Vec<_>>>()?;
    for (i, &(p, q, k)) in members.iter().enumerate() {
        if !bubbling_bound_holds(p, q, k)? {
            return Ok(check.fail(
                i,
                None,
                json!({"index": i, "violation": format!("1/4 ≮ {}", keys[i])}),
            ));
        }
    }
    if let Some(i) = keys.windows(2).position(|w| w[0] >= w[1]) {
        return Ok(check.fail(i, Some(i + 1), chain_failure(i, keys[i], keys[i + 1])));
    }
    Ok(check.pass(json!({"keys": key_values(&keys)})))
}

/// `p_i q_i(4p_iq_i − 1) < p_{i+1} q_{i+1}(p_{i+1} q_{i+1} − 1)` for consecutive pairs.
pub fn check_corollary_family(members: &[(u64, u64)]) -> Result<Check> {
    let inputs = json!(members
        .iter()
        .map(|&(p, q)| json!([p, q]))
        .collect::<Vec<_>>());
    let check = Check::new("corollary-chain", COROLLARY_ANCHOR, inputs);
    let mut links = Vec::new();
    for (i, pair) in members.windows(2).enumerate() {
        let left = ordering_key(pair[0].0, pair[0].1, 4)?;
        let right = ordering_key(pair[1].0, pair[1].1, 1)?;
        if left >= right {
            return Ok(check.fail(i, Some(i + 1), chain_failure(i, left, right)));
        }
        links.push(json!({"index": i, "left": left.to_string(), "right": right.to_string()}));
    }
    if members.len() == 1 {
        ordering_key(members[0].0, members[0].1, 4)?;
    }
    Ok(check.pass(json!({"links": links})))
}

fn key_values(keys: &[u128]) -> Vec<String> {
    keys.iter().map(u128::to_string).collect()
}

fn chain_failure(index: usize, left: u128, right: u128) -> Value {
    json!({
        "index": index,
        "next": index + 1,
        "left": left.to_string(),
        "right": right.to_string(),
        "violation": format!("{left} ≮ {right}"),
    })
}

/// A chain of `count` coprime pairs from `start`, each successor minimal by `(pq, p)`
/// among pairs satisfying the corollary inequality with its predecessor.
pub fn generate_family(start: (u64, u64), count: usize) -> Result<Vec<(u64, u64)>> {
    if count < 1 {
        return Err(Error::Domain("family size must be at least 1".into()));
    }
    let first = FamilyMember::new(start.0, start.1, None, 1)?;
    let mut family = vec![(first.p, first.q)];
    while family.len() < count {
        let &(p, q) = family.last().expect("family is nonempty");
        let bound = ordering_key(p, q, 4)?;
        family.push(next_pair(bound)?);
    }
    Ok(family)
}

/// Least `(p, q)` by `(pq, p)` with `pq(pq − 1) > bound`.
fn next_pair(bound: u128) -> Result<(u64, u64)> {
    // smallest n with n(n − 1) > bound, starting just below the square root
    let mut n = bound.sqrt().max(2);
    while n * (n - 1) <= bound {
        n += 1;
    }
    loop {
        let product = u64::try_from(n)
            .map_err(|_| Error::Domain(format!("family search exceeded 64-bit products at {n}")))?;
        if let Some(p) = smallest_coprime_split(product) {
            return Ok((p, product / p));
        }
        n += 1;
    }
}

/// Least `p ≥ 2` with `p < n/p`, `p | n`, `gcd(p, n/p) = 1`.
fn smallest_coprime_split(n: u64) -> Option<u64> {
    let mut p = 2;
    while p * p < n {
        if n.is_multiple_of(p) && p.gcd(&(n / p)) == 1 {
            return Some(p);
        }
        p += 1;
    }
    None
}

/// Knobs for [`certify_independence_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CertifyOptions {
    /// Agreement tolerance between the two moduli-dimension evaluation paths.
    pub tolerance: f64,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions {
            tolerance: HARD_TOLERANCE,
        }
    }
}

pub fn certify_independence(family: &[FamilyMember]) -> Result<Certificate> {
    certify_independence_with(family, &CertifyOptions::default())
}

/// Runs every check. Member-level work runs on the ambient rayon pool; the
/// certificate is assembled in input order.
pub fn certify_independence_with(
    family: &[FamilyMember],
    options: &CertifyOptions,
) -> Result<Certificate> {
    if family.is_empty() {
        return Err(Error::InvalidFamily("family is empty".into()));
    }
    let family = family
        .iter()
        .enumerate()
        .map(|(i, m)| {
            m.revalidated()
                .map_err(|e| Error::InvalidFamily(format!("member {i}: {e}")))
        })
        .collect::<Result<Vec<_>>>()?;

    let pairs: Vec<(u64, u64)> = family.iter().map(|m| (m.p, m.q)).collect();
    let mut checks = vec![check_corollary_family(&pairs)?];
    if family.iter().all(|m| m.k.is_some()) {
        let triples: Vec<_> = family
            .iter()
            .map(|m| (m.p, m.q, m.k.unwrap_or(1)))
            .collect();
        checks.push(check_theorem_family(&triples)?);
    }
    checks.push(bubbling_check(&family)?);

    let member_checks = family
        .par_iter()
        .enumerate()
        .map(|(i, m)| Ok([moduli_check(i, m, options.tolerance)?, cover_check(i, m)?]))
        .collect::<Result<Vec<_>>>()?;
    checks.extend(member_checks.into_iter().flatten());

    let contradiction_checks = (0..family.len())
        .into_par_iter()
        .map(|top| contradiction_check(top, &family))
        .collect::<Result<Vec<_>>>()?;
    checks.extend(contradiction_checks);

    let verdict = checks
        .iter()
        .find(|c| !c.passed())
        .map(|c| {
            let (index, next) = c.failure().unwrap_or((0, None));
            Verdict::CriterionFailed {
                check: c.name.clone(),
                index,
                next,
            }
        })
        .unwrap_or(Verdict::Independent);

    Ok(Certificate {
        family,
        checks,
        verdict,
        toolkit_version: TOOLKIT_VERSION.to_string(),
        notes: vec![
            "doubling depth r is recorded but does not enter any inequality".into(),
            "contradiction checks use, for each top index N, the vector with c_N = 1 and c_i = -1 below N; its boundary chain contains the chain of every other sign pattern with the same top index, so it covers all coefficient vectors up to global negation".into(),
        ],
    })
}

fn bubbling_check(family: &[FamilyMember]) -> Result<Check> {
    let inputs = json!(family.iter().map(|m| json!([m.p, m.q])).collect::<Vec<_>>());
    let check = Check::new("bubbling-bound", BUBBLING_ANCHOR, inputs);
    for (i, m) in family.iter().enumerate() {
        for k in [1, 4] {
            if !bubbling_bound_holds(m.p, m.q, k)? {
                let key = ordering_key(m.p, m.q, k)?;
                return Ok(check.fail(
                    i,
                    None,
                    json!({"index": i, "k": k, "violation": format!("1/4 ≮ {key}")}),
                ));
            }
        }
    }
    Ok(check.pass(json!({"members": family.len()})))
}

fn moduli_check(index: usize, member: &FamilyMember, tolerance: f64) -> Result<Check> {
    let knot = member.knot()?;
    let check = Check::new(
        format!("moduli-dimension[{index}]"),
        MODULI_ANCHOR,
        json!({"p": member.p, "q": member.q}),
    );
    let mut reports = Vec::new();
    for n in [1, 4] {
        let sphere = moser_surgery(knot, SurgerySlope::reciprocal(n)?)?.reversed();
        match moduli_dimension_with_tolerance(&sphere, tolerance) {
            Ok(report) if report.dimension == 1 => {
                reports.push(serde_json::to_value(report).expect("report"))
            }
            Ok(report) => return Ok(check.fail(
                index,
                None,
                json!({"sphere": sphere.to_string(), "dimension": report.dimension, "expected": 1}),
            )),
            Err(e) => {
                return Ok(check.fail(
                    index,
                    None,
                    json!({"sphere": sphere.to_string(), "error": e.to_string()}),
                ))
            }
        }
    }
    Ok(check.pass(json!({"reports": reports})))
}

fn cover_check(index: usize, member: &FamilyMember) -> Result<Check> {
    let knot = member.knot()?;
    let check = Check::new(
        format!("cover-homology[{index}]"),
        COVER_ANCHOR,
        json!({"p": member.p, "q": member.q, "r": member.r}),
    );
    let decomposition = decompose_cover(knot, member.r)?;
    let order = h1_order(&decomposition);
    let seifert = double_seifert_matrix(0);
    let determinant = determinant_from_seifert(&seifert);
    let alexander = alexander_from_seifert(&seifert);
    let witness = json!({
        "decomposition": decomposition.to_string(),
        "h1_order": order.to_string(),
        "determinant": determinant.to_string(),
        "alexander": alexander,
    });
    if order.is_one() && determinant.is_one() && alexander == crate::poly::LaurentPolynomial::one()
    {
        Ok(check.pass(witness))
    } else {
        Ok(check.fail(index, None, witness))
    }
}

fn contradiction_check(top: usize, family: &[FamilyMember]) -> Result<Check> {
    let coefficients: Vec<i64> = (0..family.len())
        .map(|i| {
            if i < top {
                -1
            } else if i == top {
                1
            } else {
                0
            }
        })
        .collect();
    let check = Check::new(
        format!("contradiction[{top}]"),
        CONTRADICTION_ANCHOR,
        json!({"coefficients": coefficients}),
    );
    let report = assemble_contradiction(&coefficients, family)?;
    let witness = json!({
        "boundary": report.boundary_labels(),
        "keys": report.boundary.iter().map(|b| b.key.to_string()).collect::<Vec<_>>(),
        "definiteness": report.definiteness,
        "opacity": report.opacity,
        "h1_mod2_trivial": report.h1_mod2_trivial,
        "verdict": report.verdict,
    });
    let sound = report.definiteness == Definiteness::Negative && report.h1_mod2_trivial;
    match report.verdict {
        ContradictionVerdict::Obstructed if sound => Ok(check.pass(witness)),
        ContradictionVerdict::NotObstructed { index, next } => {
            Ok(check.fail(index, Some(next), witness))
        }
        _ => Ok(check.fail(top, None, witness)),
    }
}
