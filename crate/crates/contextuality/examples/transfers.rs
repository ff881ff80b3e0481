//! The no-detection transfer and the Yan extension of the pentagon.

use contextuality::catalog;
use contextuality::exact;

fn main() -> contextuality::error::Result<()> {
    let pentagon = catalog::pentagon().scenario;
    let csw = catalog::csw_transfer(&pentagon)?;
    println!("transfer: {} vertices, {} edges", csw.num_vertices(), csw.num_edges());

    let (labels, psi) = catalog::pentagon_umbrella();
    let (yan, q) = catalog::yan_extension(&pentagon, &labels, &psi, 1_000_000_000)?;
    println!("extension: {} vertices, {} edges", yan.num_vertices(), yan.num_edges());
    for (v, w) in yan.vertices().iter().zip(q.weights()) {
        println!("  {v:<10} {:.9}", exact::to_f64(w));
    }
    Ok(())
}
