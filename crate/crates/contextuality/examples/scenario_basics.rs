//! Build a scenario, round-trip it through JSON and inspect its
//! non-orthogonality graph.

use contextuality::scenario::Scenario;

fn main() -> contextuality::error::Result<()> {
    let s = Scenario::new("square", ["a", "b", "c", "d"], [["a", "b"], ["b", "c"], ["c", "d"], ["d", "a"]])?;
    let json = s.to_json();
    println!("{json}");
    assert_eq!(Scenario::from_json(&json)?, s);

    let no = s.non_orthogonality_graph();
    println!("NO graph has {} vertices and {} edges:", no.num_vertices(), no.num_edges());
    for (u, v) in no.edges() {
        println!("  {} ~ {}", s.vertices()[u], s.vertices()[v]);
    }
    Ok(())
}
