//! Consistent exclusivity applied to copies of the PR box.

use contextuality::catalog;
use contextuality::hierarchy::{self, DEFAULT_TOL};

fn main() -> contextuality::error::Result<()> {
    let (s, boxes) = catalog::bell_boxes()?;
    let pr = &boxes[0].1;
    for n in 1..=2 {
        let (ok, cert) = hierarchy::ce_level(&s, pr, n)?;
        println!("CE level {n}: {ok}");
        println!("{}", serde_json::to_string_pretty(&cert.to_json_value()).expect("serializable"));
    }
    let r = hierarchy::ce_infinity(&s, pr, 3, DEFAULT_TOL)?;
    println!("CE infinity: {:?} after {} powers", r.verdict, r.powers_checked);
    Ok(())
}
