//! Assembles the negative definite manifold bounded by Seifert spheres from a
//! hypothetical relation among doubled torus knots.

use doubles_concordance::criterion::FamilyMember;
use doubles_concordance::ledger::assemble_contradiction;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let family = [
        FamilyMember::new(2, 3, None, 1)?,
        FamilyMember::new(2, 7, None, 2)?,
        FamilyMember::new(2, 15, None, 1)?,
    ];
    for coefficients in [[1, -1, 0], [2, 3, 0], [-1, 0, 2], [1, 1, -1], [0, 5, 0]] {
        let report = assemble_contradiction(&coefficients, &family)?;
        let pieces: Vec<_> = report
            .constituents
            .iter()
            .map(|c| format!("{}×{}", c.multiplicity, c.label))
            .collect();
        println!("{coefficients:?} → c = {:?}", report.coefficients);
        println!("    pieces   {}", pieces.join(" ∪ "));
        println!("    boundary {}", report.boundary_labels().join(" ⊔ "));
        println!(
            "    {:?}, verdict {:?}",
            report.definiteness, report.verdict
        );
    }

    let bad = [
        FamilyMember::new(2, 3, None, 1)?,
        FamilyMember::new(2, 5, None, 1)?,
    ];
    println!(
        "(2,3),(2,5) with [-1, 1]: {:?}",
        assemble_contradiction(&[-1, 1], &bad)?.verdict
    );
    Ok(())
}
