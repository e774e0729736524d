//! Intersection forms of the definite cobordisms out of Σ(D^r(T(p,q))).

use doubles_concordance::ledger::{
    build_p, build_r, build_z, cover_to_splice, default_crossing_count, hoste_framing,
    splice_attachment, IntersectionLedger, Knot,
};
use doubles_concordance::seifert::TorusKnot;

fn show(name: &str, ledger: &IntersectionLedger) {
    let ends_in: Vec<_> = ledger.ends_in().iter().map(ToString::to_string).collect();
    let ends_out: Vec<_> = ledger.ends_out().iter().map(ToString::to_string).collect();
    println!(
        "{name}: {:?} {:?}  [{}] -> [{}]",
        ledger.definiteness(),
        ledger.matrix(),
        ends_in.join(", "),
        ends_out.join(", ")
    );
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let knot = TorusKnot::new(2, 5)?;
    let c = default_crossing_count(knot);
    show("cover→splice", &cover_to_splice(knot, 2, c)?);
    show("Z, r = 2", &build_z(knot, 2)?);
    show("Z, r = 1", &build_z(knot, 1)?);
    show("P", &build_p(knot, 1)?);
    show("−P", &build_p(knot, 1)?.negated());
    show("R", &build_r(knot, 1)?);

    for m in [-1, 1, 2, 3] {
        let l = splice_attachment(Knot::Unknot, Knot::Unknot, m);
        println!(
            "framing m = {m}: entry {} → {:?}",
            hoste_framing(m),
            l.definiteness()
        );
    }
    Ok(())
}
