//! Independence number, its fractional relaxation, the Lovász number and
//! Shannon-capacity bounds of a few graphs.

use contextuality::catalog;
use contextuality::graphs::{self, WeightedGraph};
use contextuality::solvers::sdp::SdpOptions;

fn main() -> contextuality::error::Result<()> {
    let opts = SdpOptions::default();
    let petersen = catalog::matching(5)?.scenario.non_orthogonality_graph();
    for (name, g) in [("C5", WeightedGraph::cycle(5)), ("C7", WeightedGraph::cycle(7)), ("Petersen", petersen)] {
        let a = graphs::alpha(&g)?.value;
        let s = graphs::alpha_star(&g)?.value;
        let t = graphs::lovasz_theta(&g, &opts)?;
        println!("{name:<9} alpha={a} theta={:.6} alpha*={s}", t.upper);
    }
    let b = graphs::capacity_bounds(&WeightedGraph::cycle(5), 2, &opts)?;
    println!("capacity of C5 in [{:.6}, {:.6}], single shot {:?}", b.lower, b.upper, b.single_shot);
    Ok(())
}
