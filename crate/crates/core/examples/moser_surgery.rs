//! Identifies 1/n surgery on torus knots as oppositely oriented Seifert spheres.

use doubles_concordance::seifert::{moser_surgery, SurgerySlope, TorusKnot};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (p, q) in [(2, 3), (2, 5), (3, 4), (2, 7)] {
        let knot = TorusKnot::new(p, q)?;
        for slope in ["1", "1/4"] {
            let slope: SurgerySlope = slope.parse()?;
            println!("S³_{{{slope}}}({knot}) = {}", moser_surgery(knot, slope)?);
        }
    }
    let rejected = moser_surgery(TorusKnot::new(2, 3)?, "2/3".parse()?);
    println!("slope 2/3: {}", rejected.unwrap_err());
    Ok(())
}
