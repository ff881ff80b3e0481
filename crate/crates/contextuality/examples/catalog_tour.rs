//! Walk the catalog and summarize each entry.

use contextuality::catalog;
use contextuality::polytope;

fn main() -> contextuality::error::Result<()> {
    for (key, description) in catalog::list() {
        println!("{key:<20} {description}");
    }
    println!();
    for e in catalog::standard_entries()? {
        let s = &e.scenario;
        let (general, _) = polytope::allows_general(s);
        println!(
            "{:<20} |V|={:<3} |E|={:<3} general={general:<5} bundled models: {}",
            e.key,
            s.num_vertices(),
            s.num_edges(),
            e.models.len()
        );
    }
    Ok(())
}
