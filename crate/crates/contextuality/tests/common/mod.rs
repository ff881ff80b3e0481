//! Independent reference computations shared by the integration tests.
//! Nothing here calls the library's solvers; the only library types used
//! are plain data (scenarios, rationals).

#![allow(dead_code)]

use contextuality::exact::Rational;
use contextuality::scenario::Scenario;
use num_traits::{One, Signed, Zero};
use rand::rngs::StdRng;
use rand::Rng;

/// Rank of a rational matrix by straightforward Gaussian elimination.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = &m[i][c] / &m[r][c];
                for j in c..cols {
                    let t = &f * &m[r][j];
                    m[i][j] -= t;
                }
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

/// Solves the square-or-tall system `A x = b` when it has a unique
/// solution.
pub fn unique_solution(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<Rational>> = a.iter().zip(b).map(|(row, x)| {
        let mut r = row.clone();
        r.push(x.clone());
        r
    }).collect();
    let mut r = 0;
    for c in 0..n {
        let p = (r..m.len()).find(|&i| !m[i][c].is_zero())?;
        m.swap(r, p);
        let inv = Rational::one() / &m[r][c];
        for j in c..=n {
            m[r][j] = &m[r][j] * &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..=n {
                    let t = &f * &m[r][j];
                    m[i][j] -= t;
                }
            }
        }
        r += 1;
    }
    if m[r..].iter().any(|row| !row[n].is_zero()) {
        return None;
    }
    Some((0..n).map(|i| m[i][n].clone()).collect())
}

/// Vertices of `{p ≥ 0 : Σ_{v∈e} p(v) = 1 for all edges}` by trying every
/// support: a point is a vertex iff its support columns are independent.
pub fn brute_force_vertices(s: &Scenario) -> Vec<Vec<Rational>> {
    let n = s.num_vertices();
    assert!(n <= 18, "brute force over {n} vertices is too slow");
    let mut out = Vec::new();
    for mask in 1u32..(1 << n) {
        let cols: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        let a: Vec<Vec<Rational>> = s
            .edges()
            .iter()
            .map(|e| cols.iter().map(|c| if e.contains(c) { Rational::one() } else { Rational::zero() }).collect())
            .collect();
        let b = vec![Rational::one(); s.num_edges()];
        if let Some(x) = unique_solution(&a, &b) {
            if x.iter().all(|q| q.is_positive()) {
                let mut p = vec![Rational::zero(); n];
                for (c, q) in cols.iter().zip(x) {
                    p[*c] = q;
                }
                out.push(p);
            }
        }
    }
    out.sort();
    out
}

/// Extreme fractional perfect matchings of `K_m`, found among all
/// half-integral edge weightings (the polytope is half-integral).
/// Edge order is lexicographic on pairs `(a, b)` with `a < b`.
pub fn fractional_perfect_matchings(m: usize) -> Vec<Vec<Rational>> {
    let edges: Vec<(usize, usize)> = (0..m).flat_map(|a| (a + 1..m).map(move |b| (a, b))).collect();
    let k = edges.len();
    let half = Rational::new(1.into(), 2.into());
    let values = [Rational::zero(), half, Rational::one()];
    let mut out = Vec::new();
    let total = 3usize.pow(k as u32);
    for code in 0..total {
        let mut c = code;
        let x: Vec<Rational> = (0..k)
            .map(|_| {
                let d = c % 3;
                c /= 3;
                values[d].clone()
            })
            .collect();
        let covered = (0..m).all(|v| {
            let s: Rational = edges.iter().zip(&x).filter(|((a, b), _)| *a == v || *b == v).map(|(_, q)| q.clone()).sum();
            s.is_one()
        });
        if !covered {
            continue;
        }
        let support: Vec<usize> = (0..k).filter(|&i| !x[i].is_zero()).collect();
        let cols: Vec<Vec<Rational>> = support
            .iter()
            .map(|&i| (0..m).map(|v| if edges[i].0 == v || edges[i].1 == v { Rational::one() } else { Rational::zero() }).collect())
            .collect();
        if rank(&cols) == support.len() {
            out.push(x);
        }
    }
    out
}

/// `ϑ(C_n)` for odd `n`.
pub fn theta_odd_cycle(n: usize) -> f64 {
    let c = (std::f64::consts::PI / n as f64).cos();
    n as f64 * c / (1.0 + c)
}

/// A random scenario on `2..=max_vertices` vertices: random edges until
/// every vertex is covered.
pub fn random_scenario(rng: &mut StdRng, max_vertices: usize, name: &str) -> Scenario {
    let n = rng.gen_range(2..=max_vertices);
    let names: Vec<String> = (0..n).map(|i| format!("{name}{i}")).collect();
    let mut edges: Vec<Vec<usize>> = Vec::new();
    let mut covered = vec![false; n];
    while covered.iter().any(|c| !c) || edges.len() < 2 {
        let size = rng.gen_range(1..=n.min(3));
        let mut e: Vec<usize> = Vec::new();
        while e.len() < size {
            let v = rng.gen_range(0..n);
            if !e.contains(&v) {
                e.push(v);
            }
        }
        for &v in &e {
            covered[v] = true;
        }
        edges.push(e);
        if edges.len() > 6 && covered.iter().all(|c| *c) {
            break;
        }
    }
    Scenario::from_indexed(name, names, edges).expect("random scenario")
}

/// Random graph on `1..=max_vertices` vertices with rational weights
/// between `1/4` and `8`.
pub fn random_graph(rng: &mut StdRng, max_vertices: usize) -> (Vec<String>, Vec<(usize, usize)>, Vec<Rational>) {
    let n = rng.gen_range(1..=max_vertices);
    let p: f64 = rng.gen_range(0.2..0.8);
    let names = (0..n).map(|i| format!("g{i}")).collect();
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(p) {
                edges.push((a, b));
            }
        }
    }
    let weights = (0..n).map(|_| Rational::new(rng.gen_range(1..=8).into(), rng.gen_range(1..=4).into())).collect();
    (names, edges, weights)
}
