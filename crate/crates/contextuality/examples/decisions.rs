//! Decide whether scenarios admit any or any classical model and check the
//! accompanying certificates.

use contextuality::catalog;
use contextuality::certificate;
use contextuality::polytope;

fn main() -> contextuality::error::Result<()> {
    let entries = [catalog::triangle(), catalog::ks_18(), catalog::circular(5)?, catalog::h0_empty()];
    for e in &entries {
        let (general, gc) = polytope::allows_general(&e.scenario);
        let (classical, cc) = polytope::allows_classical(&e.scenario)?;
        println!(
            "{:<12} general={general:<5} ({}, verified {})  classical={classical:<5} ({}, verified {})",
            e.key,
            gc.kind(),
            certificate::verify(&gc, &e.scenario, None)?,
            cc.kind(),
            certificate::verify(&cc, &e.scenario, None)?,
        );
    }
    let (s, boxes) = catalog::bell_boxes()?;
    let pr = &boxes[0].1;
    let (inside, cert) = polytope::is_classical(&s, pr)?;
    println!("PR box classical: {inside}; certificate {} verifies: {}", cert.kind(), certificate::verify(&cert, &s, Some(pr))?);
    Ok(())
}
