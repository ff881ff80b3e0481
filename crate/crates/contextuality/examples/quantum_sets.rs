//! Membership in the first level of the moment hierarchy, by the moment
//! matrix and by the Lovász number.

use contextuality::catalog;
use contextuality::cli::APPROXIMATE_MODEL_TOL;
use contextuality::exact::Rational;
use contextuality::hierarchy::{self, DEFAULT_TOL};
use num_traits::{One, Zero};

fn main() -> contextuality::error::Result<()> {
    let (s, boxes) = catalog::bell_boxes()?;
    for (name, p) in boxes.iter().take(3) {
        let tol = if p.metadata.contains_key("approximate") { APPROXIMATE_MODEL_TOL } else { DEFAULT_TOL };
        let m = hierarchy::q_membership(&s, p, 1, tol)?;
        let t = hierarchy::q1_membership_theta(&s, p, tol)?;
        println!("{name:<14} moment={:?} (margin {:.2e})  theta={:?} ({:.6})", m.verdict, m.margin, t.verdict, t.theta);
    }
    let d5 = catalog::circular(5)?.scenario;
    let c: Vec<Rational> =
        d5.vertices().iter().map(|v| if v.starts_with('v') { Rational::one() } else { Rational::zero() }).collect();
    let r = hierarchy::q1_optimize(&d5, &c)?;
    println!("max of the v-sum on {}: {:.6} (sqrt 5 = {:.6})", d5.name(), r.value, 5f64.sqrt());
    Ok(())
}
