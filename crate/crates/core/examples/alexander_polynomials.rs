//! Alexander polynomials and determinants from Seifert matrices.

use doubles_concordance::covers::{
    alexander_from_seifert, alexander_torus, determinant_from_seifert, double_seifert_matrix,
};
use doubles_concordance::seifert::TorusKnot;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for twist in [0, -1, -2, 1, 3] {
        let v = double_seifert_matrix(twist);
        println!(
            "{twist:>2}-twisted double: Δ(t) = {}, det = {}",
            alexander_from_seifert(&v),
            determinant_from_seifert(&v)
        );
    }
    for (p, q) in [(2, 3), (2, 5), (3, 4), (3, 5)] {
        let knot = TorusKnot::new(p, q)?;
        let delta = alexander_torus(knot);
        println!(
            "{knot}: Δ(t) = {delta}, reciprocal: {}",
            delta.is_reciprocal()
        );
    }
    Ok(())
}
