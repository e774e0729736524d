//! Evaluates the instanton moduli dimension of Σ(p, q, kpq − 1) along both paths.

use doubles_concordance::instanton::{
    moduli_dimension, moduli_dimension_exact, moduli_dimension_float,
};
use doubles_concordance::seifert::{normalize_seifert, Sign};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!(
        "{:<14} {:>3} {:>22} {:>10}",
        "sphere", "R", "trigonometric", "residual"
    );
    for (p, q) in [(2, 3), (2, 5), (3, 4), (2, 7), (3, 5)] {
        for k in 1..=4 {
            let sphere = normalize_seifert(p, q, k * p * q - 1, Sign::Positive)?;
            let report = moduli_dimension(&sphere)?;
            println!(
                "{:<14} {:>3} {:>22.15} {:>10.1e}",
                sphere.to_string(),
                report.dimension,
                moduli_dimension_float(&sphere),
                report.residual
            );
        }
    }

    // outside the family the value need not be 1
    let sphere = normalize_seifert(2, 3, 7, Sign::Positive)?;
    println!("\nR(2,3,7) = {} (exact)", moduli_dimension_exact(&sphere)?);
    Ok(())
}
