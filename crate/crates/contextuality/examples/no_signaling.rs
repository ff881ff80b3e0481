//! Tensor two single-party models and confirm the product does not signal.

use contextuality::exact::frac;
use contextuality::models;
use contextuality::products;

fn main() -> contextuality::error::Result<()> {
    let party = products::single_party(2, 2)?;
    let weights = [("0|0", frac(1, 3)), ("1|0", frac(2, 3)), ("0|1", frac(1, 4)), ("1|1", frac(3, 4))];
    let p = models::validate_model(&party, &weights.into_iter().map(|(v, w)| (v.to_string(), w)).collect())?;
    let q = models::uniform_model(&party)?;
    let fr = products::fr_product(&party, &party)?;
    let pq = models::tensor_models(&p, &q, &fr)?;
    for (v, w) in fr.vertices().iter().zip(pq.weights()) {
        println!("{v:>8}  {w}");
    }
    let violations = models::no_signaling_check(&[&party, &party], &pq, &fr)?;
    println!("signaling violations: {}", violations.len());
    Ok(())
}
