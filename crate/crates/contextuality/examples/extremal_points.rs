//! Extreme points of the general polytope of a circular scenario.

use contextuality::catalog;
use contextuality::polytope;

fn main() -> contextuality::error::Result<()> {
    let n = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(5);
    let s = catalog::circular(n)?.scenario;
    let ext = polytope::extremal_models(&s)?;
    println!("{}: dimension {}, {} extreme points", s.name(), polytope::g_dimension(&s)?, ext.len());
    for e in ext.iter().filter(|e| !e.is_deterministic) {
        let support: Vec<_> = e.support.iter().map(|&v| format!("{}={}", s.vertices()[v], e.model.weight(v))).collect();
        println!("  non-deterministic: {}", support.join(" "));
    }
    Ok(())
}
