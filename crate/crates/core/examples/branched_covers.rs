//! Splits the double branched cover of D^r(T(p,q)) into pieces and computes its homology.

use doubles_concordance::covers::{
    decompose_cover, decompose_cover_with, h1_order, CurveConvention, Gluing,
};
use doubles_concordance::seifert::TorusKnot;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (p, q) in [(2, 3), (2, 5), (3, 4)] {
        for r in 1..=3 {
            let cover = decompose_cover(TorusKnot::new(p, q)?, r)?;
            println!("{cover}    |H_1| = {}", h1_order(&cover));
        }
    }

    // Gluing by the identity instead of the splice map loses the homology sphere.
    let knot = TorusKnot::new(2, 3)?;
    for r in [1, 2] {
        let cover = decompose_cover(knot, r)?;
        let identity = cover.with_gluings([
            Gluing::new(0, [1, 0], [0, 1])?,
            Gluing::new(1, [1, 0], [0, 1])?,
        ]);
        println!(
            "r = {r}, identity gluing: |H_1| = {} (0 means infinite)",
            h1_order(&identity)
        );
    }
    let transposed = decompose_cover_with(knot, 1, CurveConvention::LongitudeMeridian)?;
    println!(
        "r = 1, curves read as (λ, μ): |H_1| = {}",
        h1_order(&transposed)
    );
    Ok(())
}
