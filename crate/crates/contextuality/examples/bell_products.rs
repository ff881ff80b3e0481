//! The CHSH scenario from single-party factors under each product.

use contextuality::products::{self, ProductCaps, ProductKind};

fn main() -> contextuality::error::Result<()> {
    let party = products::single_party(2, 2)?;
    for kind in [ProductKind::Direct, ProductKind::FrBinary, ProductKind::FrMin, ProductKind::FrMax] {
        let s = products::product(kind, &[&party, &party], &ProductCaps::default())?;
        println!("{kind:?}: {} vertices, {} edges", s.num_vertices(), s.num_edges());
    }
    let three = products::bell_scenario(3, 2, 2, ProductKind::FrMin)?;
    let max = products::bell_scenario(3, 2, 2, ProductKind::FrMax)?;
    println!("three parties: min has {} edges, max has {}", three.num_edges(), max.num_edges());
    Ok(())
}
