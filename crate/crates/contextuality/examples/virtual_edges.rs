//! Saturate the equivalence relation on outcome sets and list the virtual
//! edges it uncovers beyond the measured ones.

use contextuality::catalog;
use contextuality::scenario::saturate_equivalences;

fn main() -> contextuality::error::Result<()> {
    for e in [catalog::virtual_edge_scenario(), catalog::equivalent_pentagon()] {
        let table = saturate_equivalences(&e.scenario, 3, 3)?;
        println!("{}: {} subsets considered", e.key, table.universe_size());
        for v in table.virtual_edge_names() {
            let ids: Vec<&str> = v.iter().map(String::as_str).collect();
            if !e.scenario.has_edge(&ids) {
                println!("  virtual edge {{{}}}", v.join(","));
            }
        }
    }
    Ok(())
}
