use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use proptest::prelude::*;

use doubles_concordance::covers::{
    alexander_from_seifert, decompose_cover, h1_order, SeifertMatrix,
};
use doubles_concordance::criterion::{
    certify_independence, check_corollary_family, generate_family, FamilyMember, Verdict,
};
use doubles_concordance::instanton::{dedekind_sum, ordering_key, reciprocity_rhs};
use doubles_concordance::ledger::{
    assemble_contradiction, attach_handles, build_p, build_z, definiteness, Definiteness,
    FramedCurve, IntersectionLedger,
};
use doubles_concordance::seifert::{
    moser_surgery, normalize_seifert, Sign, SurgerySlope, TorusKnot,
};

fn coprime_pair(max: u64) -> impl Strategy<Value = (u64, u64)> {
    (2..max, 2..max).prop_filter_map("coprime, distinct", |(a, b)| {
        (a != b && a.gcd(&b) == 1).then(|| (a.min(b), a.max(b)))
    })
}

fn symmetric_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=6).prop_flat_map(|n| {
        prop::collection::vec(-4i64..=4, n * (n + 1) / 2).prop_map(move |upper| {
            let mut m = vec![vec![0; n]; n];
            let mut it = upper.into_iter();
            for i in 0..n {
                for j in i..n {
                    let x = it.next().unwrap();
                    m[i][j] = x;
                    m[j][i] = x;
                }
            }
            m
        })
    })
}

fn cofactor_det(m: &[Vec<i64>]) -> i128 {
    if m.is_empty() {
        return 1;
    }
    (0..m.len())
        .map(|j| {
            let minor: Vec<Vec<i64>> = m[1..]
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|&(k, _)| k != j)
                        .map(|(_, &x)| x)
                        .collect()
                })
                .collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * m[0][j] as i128 * cofactor_det(&minor)
        })
        .sum()
}

/// Exact determinant for degeneracy, eigenvalue signs otherwise.
fn oracle_definiteness(m: &[Vec<i64>]) -> Definiteness {
    if cofactor_det(m) == 0 {
        return Definiteness::Degenerate;
    }
    let n = m.len();
    let eigen = DMatrix::from_fn(n, n, |i, j| m[i][j] as f64)
        .symmetric_eigen()
        .eigenvalues;
    if eigen.iter().all(|&x| x < 0.0) {
        Definiteness::Negative
    } else if eigen.iter().all(|&x| x > 0.0) {
        Definiteness::Positive
    } else {
        Definiteness::Indefinite
    }
}

fn sawtooth(x: &BigRational) -> BigRational {
    if x.is_integer() {
        BigRational::from_integer(0.into())
    } else {
        x - x.floor() - BigRational::new(1.into(), 2.into())
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn definiteness_matches_eigenvalue_oracle(m in symmetric_matrix()) {
        prop_assert_eq!(definiteness(&m).unwrap(), oracle_definiteness(&m));
    }

    #[test]
    fn definite_forms_have_definite_values_on_sign_vectors(m in symmetric_matrix()) {
        let verdict = definiteness(&m).unwrap();
        let n = m.len();
        for mask in 1u32..(1 << n) {
            for signs in 0u32..(1 << n) {
                let v: Vec<i64> = (0..n)
                    .map(|i| if mask >> i & 1 == 0 { 0 } else if signs >> i & 1 == 0 { 1 } else { -1 })
                    .collect();
                let value: i64 = (0..n).map(|i| (0..n).map(|j| v[i] * m[i][j] * v[j]).sum::<i64>()).sum();
                match verdict {
                    Definiteness::Negative => prop_assert!(value < 0),
                    Definiteness::Positive => prop_assert!(value > 0),
                    _ => {}
                }
            }
        }
    }

    #[test]
    fn minus_one_handles_are_negative_identity(c in 1usize..20) {
        let empty = IntersectionLedger::empty(Vec::new(), Vec::new());
        let ledger = attach_handles(&empty, &FramedCurve::unlinked(-1, c, 0)).unwrap();
        for (i, row) in ledger.matrix().iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                prop_assert_eq!(x, if i == j { -1 } else { 0 });
            }
        }
        prop_assert_eq!(ledger.definiteness(), Definiteness::Negative);
    }

    #[test]
    fn negative_composition_stays_negative((p, q) in coprime_pair(15), r in 2u32..5) {
        let knot = TorusKnot::new(p, q).unwrap();
        let z = build_z(knot, r).unwrap();
        let minus_p = build_p(knot, r).unwrap().negated();
        let union = z.disjoint_union(&minus_p).unwrap();
        prop_assert_eq!(union.definiteness(), Definiteness::Negative);
        prop_assert_eq!(union.matrix().len(), z.matrix().len() + 2);
    }

    #[test]
    fn dedekind_sum_matches_sawtooth_definition((b, c) in (1i64..60, 2i64..60).prop_filter("coprime", |(b, c)| b.gcd(c) == 1)) {
        let direct: BigRational = (1..c)
            .map(|k| {
                let x = BigRational::new(BigInt::from(k), BigInt::from(c));
                let y = BigRational::new(BigInt::from(k * b), BigInt::from(c));
                sawtooth(&x) * sawtooth(&y)
            })
            .sum();
        prop_assert_eq!(dedekind_sum(b, c).unwrap(), direct);
    }

    #[test]
    fn dedekind_reciprocity((b, c) in (1i64..5000, 1i64..5000).prop_filter("coprime", |(b, c)| b.gcd(c) == 1)) {
        let sum = dedekind_sum(b, c).unwrap() + dedekind_sum(c, b).unwrap();
        prop_assert_eq!(sum, reciprocity_rhs(b, c));
    }

    #[test]
    fn moser_fiber_multiset((p, q) in coprime_pair(40), n in 1u64..12) {
        let sphere = moser_surgery(TorusKnot::new(p, q).unwrap(), SurgerySlope::reciprocal(n).unwrap()).unwrap();
        let mut expected = [p, q, n * p * q - 1];
        expected.sort_unstable();
        prop_assert_eq!(sphere.fibers(), expected);
        prop_assert_eq!(sphere.orientation(), Sign::Negative);
    }

    #[test]
    fn normalization_ignores_fiber_order((p, q) in coprime_pair(30), k in 1u64..5) {
        let c = k * p * q - 1;
        let a = normalize_seifert(p, q, c, Sign::Positive).unwrap();
        let b = normalize_seifert(c, q, p, Sign::Positive).unwrap();
        prop_assert_eq!(a, b);
        prop_assert_eq!(a.reversed().reversed(), a);
    }

    #[test]
    fn covers_are_homology_spheres((p, q) in coprime_pair(30), r in 1u32..5) {
        let cover = decompose_cover(TorusKnot::new(p, q).unwrap(), r).unwrap();
        prop_assert_eq!(h1_order(&cover), BigInt::from(1));
    }

    #[test]
    fn seifert_alexander_is_symmetric(entries in prop::collection::vec(-3i64..=3, 4)) {
        // genus-one surfaces need V − Vᵀ unimodular
        prop_assume!((entries[1] - entries[2]).abs() == 1);
        let v = SeifertMatrix::new(vec![entries[..2].to_vec(), entries[2..].to_vec()]).unwrap();
        let delta = alexander_from_seifert(&v);
        prop_assert!(delta.is_reciprocal());
        prop_assert_eq!(delta.eval_int(1).magnitude().clone(), 1u32.into());
    }

    #[test]
    fn corollary_pair_matches_ordering_keys(a in coprime_pair(60), b in coprime_pair(60)) {
        let passes = check_corollary_family(&[a, b]).unwrap().passed();
        let keys = ordering_key(a.0, a.1, 4).unwrap() < ordering_key(b.0, b.1, 1).unwrap();
        prop_assert_eq!(passes, keys);
    }

    #[test]
    fn passing_chains_are_closed_under_subchains(pairs in prop::collection::vec(coprime_pair(200), 1..7), lo in 0usize..7, len in 1usize..7) {
        let mut pairs = pairs;
        pairs.sort_by_key(|&(p, q)| ordering_key(p, q, 1).unwrap());
        if check_corollary_family(&pairs).unwrap().passed() {
            let lo = lo.min(pairs.len() - 1);
            let hi = (lo + len).min(pairs.len());
            prop_assert!(check_corollary_family(&pairs[lo..hi]).unwrap().passed());
        }
    }

    #[test]
    fn contradiction_is_invariant_under_negation(coefficients in prop::collection::vec(-4i64..=4, 3)) {
        prop_assume!(coefficients.iter().any(|&c| c != 0));
        let family = [
            FamilyMember::new(2, 3, None, 1).unwrap(),
            FamilyMember::new(2, 7, None, 2).unwrap(),
            FamilyMember::new(2, 15, None, 3).unwrap(),
        ];
        let negated: Vec<i64> = coefficients.iter().map(|c| -c).collect();
        let report = assemble_contradiction(&coefficients, &family).unwrap();
        prop_assert_eq!(&report, &assemble_contradiction(&negated, &family).unwrap());
        prop_assert!(report.is_obstructed());
        prop_assert_eq!(report.definiteness, Definiteness::Negative);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn generated_families_certify((p, q) in coprime_pair(12), count in 1usize..5, r in 1u32..4) {
        let pairs = generate_family((p, q), count).unwrap();
        prop_assert_eq!(&pairs, &generate_family((p, q), count).unwrap());
        prop_assert_eq!(pairs.len(), count);
        let family: Vec<_> = pairs.iter().map(|&(p, q)| FamilyMember::new(p, q, None, r).unwrap()).collect();
        let certificate = certify_independence(&family).unwrap();
        prop_assert_eq!(certificate.verdict, Verdict::Independent);
    }
}
