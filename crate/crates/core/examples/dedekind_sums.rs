//! Dedekind sums and the reciprocity law they satisfy.

use doubles_concordance::instanton::{dedekind_sum, reciprocity_rhs};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (b, c) in [(1, 3), (2, 5), (5, 7), (17, 101), (1234, 99991)] {
        let forward = dedekind_sum(b, c)?;
        let backward = dedekind_sum(c, b)?;
        let sum = &forward + &backward;
        println!(
            "s({b},{c}) = {forward}, s({c},{b}) = {backward}, sum = {sum}, reciprocity holds: {}",
            sum == reciprocity_rhs(b, c)
        );
    }
    Ok(())
}
