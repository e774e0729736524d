//! Generates a family satisfying the ordering criterion and certifies it.
//!
//! Pass a family file (`cargo run --example certify_family -- family.json`) to certify it instead.

use doubles_concordance::criterion::{certify_independence, generate_family, FamilyMember};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let family: Vec<FamilyMember> = match std::env::args().nth(1) {
        Some(path) => serde_json::from_str(&std::fs::read_to_string(path)?)?,
        None => generate_family((2, 3), 4)?
            .into_iter()
            .zip(1..)
            .map(|((p, q), r)| FamilyMember::new(p, q, None, r))
            .collect::<Result<_, _>>()?,
    };
    let certificate = certify_independence(&family)?;
    for check in &certificate.checks {
        println!("{:<22} {:?}", check.name, check.result);
    }
    println!("verdict: {:?}", certificate.verdict);
    print!("{}", certificate.to_canonical_json());
    Ok(())
}
