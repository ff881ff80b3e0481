//! Products of scenarios: the direct product, the binary Foulis–Randall
//! product, the minimal and maximal n-ary Foulis–Randall products, and the
//! Bell scenarios `B_{n,k,m}` built from them.
//!
//! A product vertex is a tuple of factor vertices. Its id is the factor ids
//! joined by `⊗` in factor order, so `"a⊗b"` in `A × B`. Nested binary
//! products flatten to the same ids as the n-ary products.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scenario::Scenario;

pub const SEPARATOR: &str = "⊗";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProductKind {
    Direct,
    /// Binary Foulis–Randall products, nested from the left.
    FrBinary,
    FrMin,
    FrMax,
}

impl ProductKind {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "direct" => Ok(ProductKind::Direct),
            "fr" | "fr_binary" => Ok(ProductKind::FrBinary),
            "min" | "fr_min" => Ok(ProductKind::FrMin),
            "max" | "fr_max" => Ok(ProductKind::FrMax),
            _ => Err(Error::Invalid(format!("unknown product kind `{s}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ProductCaps {
    pub max_edges: u64,
    pub max_protocols: u64,
}

impl Default for ProductCaps {
    fn default() -> Self {
        ProductCaps { max_edges: 1_000_000, max_protocols: 10_000_000 }
    }
}

/// Mixed-radix indexing of tuples of factor vertices.
struct Tuples {
    sizes: Vec<usize>,
    strides: Vec<usize>,
    total: usize,
}

impl Tuples {
    fn new(factors: &[&Scenario]) -> Result<Self> {
        let sizes: Vec<usize> = factors.iter().map(|f| f.num_vertices()).collect();
        let mut strides = vec![0; sizes.len()];
        let mut total: usize = 1;
        for i in (0..sizes.len()).rev() {
            strides[i] = total;
            total = total
                .checked_mul(sizes[i])
                .filter(|&t| t <= 50_000_000)
                .ok_or(Error::CombinatorialBlowup { what: "product vertex set".into(), cap: 50_000_000 })?;
        }
        Ok(Tuples { sizes, strides, total })
    }

    fn names(&self, factors: &[&Scenario]) -> Vec<String> {
        (0..self.total)
            .map(|idx| {
                (0..self.sizes.len())
                    .map(|i| factors[i].vertices()[idx / self.strides[i] % self.sizes[i]].as_str())
                    .collect::<Vec<_>>()
                    .join(SEPARATOR)
            })
            .collect()
    }
}

fn blowup(what: &str, cap: u64) -> Error {
    Error::CombinatorialBlowup { what: what.into(), cap }
}

fn pow_capped(base: u64, exp: usize, cap: u64) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
        if acc > cap {
            return None;
        }
    }
    Some(acc)
}

fn assemble(name: String, factors: &[&Scenario], t: &Tuples, edges: BTreeSet<Vec<usize>>) -> Result<Scenario> {
    Scenario::from_indexed(name, t.names(factors), edges.into_iter().collect())
}

fn joined_name(factors: &[&Scenario], op: &str) -> String {
    factors.iter().map(|f| f.name()).collect::<Vec<_>>().join(op)
}

/// Cartesian product of vertex sets with edges `E(a) × E(b)`.
pub fn direct_product(a: &Scenario, b: &Scenario) -> Result<Scenario> {
    direct_product_n(&[a, b])
}

pub fn direct_product_n(factors: &[&Scenario]) -> Result<Scenario> {
    if factors.is_empty() {
        return Err(Error::Invalid("a product needs at least one factor".into()));
    }
    let t = Tuples::new(factors)?;
    let mut edges = BTreeSet::new();
    let mut choice = vec![0usize; factors.len()];
    loop {
        let mut e = vec![0usize];
        for (i, f) in factors.iter().enumerate() {
            let mut next = Vec::with_capacity(e.len() * f.edges()[choice[i]].len());
            for &base in &e {
                for &v in &f.edges()[choice[i]] {
                    next.push(base + v * t.strides[i]);
                }
            }
            e = next;
        }
        e.sort_unstable();
        edges.insert(e);
        if edges.len() as u64 > ProductCaps::default().max_edges {
            return Err(blowup("direct product edges", ProductCaps::default().max_edges));
        }
        let mut i = factors.len();
        loop {
            if i == 0 {
                return assemble(joined_name(factors, "×"), factors, &t, edges);
            }
            i -= 1;
            choice[i] += 1;
            if choice[i] < factors[i].num_edges() {
                break;
            }
            choice[i] = 0;
        }
    }
}

/// Binary Foulis–Randall product.
pub fn fr_product(a: &Scenario, b: &Scenario) -> Result<Scenario> {
    fr_product_with(a, b, &ProductCaps::default())
}

pub fn fr_product_with(a: &Scenario, b: &Scenario, caps: &ProductCaps) -> Result<Scenario> {
    min_product_with(&[a, b], caps).map(|s| {
        let name = format!("{}⊗{}", a.name(), b.name());
        s.with_name(name)
    })
}

/// Left-nested binary Foulis–Randall products `((H1 ⊗ H2) ⊗ H3) ⊗ …`.
pub fn fr_left_nested(factors: &[&Scenario], caps: &ProductCaps) -> Result<Scenario> {
    let (first, rest) = factors.split_first().ok_or_else(|| Error::Invalid("a product needs at least one factor".into()))?;
    let mut acc = (*first).clone();
    for f in rest {
        acc = fr_product_with(&acc, f, caps)?;
    }
    Ok(acc)
}

/// Minimal Foulis–Randall product: for each party `k`, every other party
/// measures a fixed edge and party `k` chooses its edge as a function of
/// their joint outcome.
pub fn min_product(factors: &[&Scenario]) -> Result<Scenario> {
    min_product_with(factors, &ProductCaps::default())
}

pub fn min_product_with(factors: &[&Scenario], caps: &ProductCaps) -> Result<Scenario> {
    if factors.is_empty() {
        return Err(Error::Invalid("a product needs at least one factor".into()));
    }
    if factors.len() == 1 {
        return Ok(factors[0].clone());
    }
    let t = Tuples::new(factors)?;
    let n = factors.len();
    // Edge-count estimate before enumeration.
    let mut estimate: u64 = 0;
    for k in 0..n {
        let others: Vec<usize> = (0..n).filter(|&i| i != k).collect();
        let mut combos: Vec<(u64, usize)> = vec![(1, 1)];
        for &i in &others {
            let mut next = Vec::new();
            for &(cnt, joint) in &combos {
                for e in factors[i].edges() {
                    next.push((cnt, joint * e.len()));
                }
            }
            combos = next;
            if combos.len() > 1_000_000 {
                return Err(blowup("minimal product edge tuples", caps.max_edges));
            }
        }
        for (_, joint) in combos {
            let c = pow_capped(factors[k].num_edges() as u64, joint, caps.max_edges)
                .ok_or_else(|| blowup("minimal product edges", caps.max_edges))?;
            estimate = estimate.saturating_add(c);
        }
    }
    if estimate > caps.max_edges {
        return Err(blowup("minimal product edges", caps.max_edges));
    }

    let mut edges = BTreeSet::new();
    for k in 0..n {
        let others: Vec<usize> = (0..n).filter(|&i| i != k).collect();
        let mut choice = vec![0usize; others.len()];
        loop {
            // Joint outcomes of the other parties, as partial tuple indices.
            let mut joint = vec![0usize];
            for (a, &i) in others.iter().enumerate() {
                let mut next = Vec::new();
                for &base in &joint {
                    for &v in &factors[i].edges()[choice[a]] {
                        next.push(base + v * t.strides[i]);
                    }
                }
                joint = next;
            }
            let ek = factors[k].edges();
            let mut f = vec![0usize; joint.len()];
            loop {
                let mut e = Vec::new();
                for (j, &base) in joint.iter().enumerate() {
                    for &v in &ek[f[j]] {
                        e.push(base + v * t.strides[k]);
                    }
                }
                e.sort_unstable();
                edges.insert(e);
                // Next function, lexicographically.
                let mut j = f.len();
                let mut advanced = false;
                while j > 0 {
                    j -= 1;
                    f[j] += 1;
                    if f[j] < ek.len() {
                        advanced = true;
                        break;
                    }
                    f[j] = 0;
                }
                if !advanced {
                    break;
                }
            }
            let mut a = others.len();
            let mut advanced = false;
            while a > 0 {
                a -= 1;
                choice[a] += 1;
                if choice[a] < factors[others[a]].num_edges() {
                    advanced = true;
                    break;
                }
                choice[a] = 0;
            }
            if !advanced {
                break;
            }
        }
    }
    assemble(joined_name(factors, "⊗"), factors, &t, edges)
}

/// Maximal Foulis–Randall product: the outcome sets of all measurement
/// protocols, in which parties measure one after another and each choice
/// may depend on all earlier outcomes.
pub fn max_product(factors: &[&Scenario]) -> Result<Scenario> {
    max_product_with(factors, &ProductCaps::default())
}

pub fn max_product_with(factors: &[&Scenario], caps: &ProductCaps) -> Result<Scenario> {
    if factors.is_empty() {
        return Err(Error::Invalid("a product needs at least one factor".into()));
    }
    if factors.len() == 1 {
        return Ok(factors[0].clone());
    }
    let n = factors.len();
    if n > 16 {
        return Err(blowup("maximal product parties", 16));
    }
    let t = Tuples::new(factors)?;
    let mut memo: HashMap<u32, Vec<Vec<usize>>> = HashMap::new();
    memo.insert(0, vec![vec![0]]);
    let mut enumerated: u64 = 0;
    // Party subsets in order of increasing size.
    let mut subsets: Vec<u32> = (1..(1u32 << n)).collect();
    subsets.sort_by_key(|s| s.count_ones());
    for s in subsets {
        let mut out = BTreeSet::new();
        for k in 0..n {
            if s >> k & 1 == 0 {
                continue;
            }
            let rest = &memo[&(s & !(1 << k))];
            for e in factors[k].edges() {
                let count = pow_capped(rest.len() as u64, e.len(), caps.max_protocols)
                    .ok_or_else(|| blowup("measurement protocols", caps.max_protocols))?;
                enumerated = enumerated.saturating_add(count);
                if enumerated > caps.max_protocols {
                    return Err(blowup("measurement protocols", caps.max_protocols));
                }
                let mut pick = vec![0usize; e.len()];
                loop {
                    let mut edge = Vec::new();
                    for (j, &v) in e.iter().enumerate() {
                        for &base in &rest[pick[j]] {
                            edge.push(base + v * t.strides[k]);
                        }
                    }
                    edge.sort_unstable();
                    out.insert(edge);
                    if out.len() as u64 > caps.max_edges {
                        return Err(blowup("maximal product edges", caps.max_edges));
                    }
                    let mut j = pick.len();
                    let mut advanced = false;
                    while j > 0 {
                        j -= 1;
                        pick[j] += 1;
                        if pick[j] < rest.len() {
                            advanced = true;
                            break;
                        }
                        pick[j] = 0;
                    }
                    if !advanced {
                        break;
                    }
                }
            }
        }
        memo.insert(s, out.into_iter().collect());
    }
    let full = memo.remove(&((1u32 << n) - 1)).expect("full party set computed");
    assemble(joined_name(factors, "⊗"), factors, &t, full.into_iter().collect())
}

pub fn product(kind: ProductKind, factors: &[&Scenario], caps: &ProductCaps) -> Result<Scenario> {
    match kind {
        ProductKind::Direct => direct_product_n(factors),
        ProductKind::FrBinary => fr_left_nested(factors, caps),
        ProductKind::FrMin => min_product_with(factors, caps),
        ProductKind::FrMax => max_product_with(factors, caps),
    }
}

/// One party with `k` settings of `m` outcomes: vertices `a|x`, one edge per
/// setting `x`.
pub fn single_party(k: usize, m: usize) -> Result<Scenario> {
    if k == 0 || m == 0 {
        return Err(Error::Invalid("settings and outcomes must be positive".into()));
    }
    let mut names = Vec::new();
    let mut edges = vec![Vec::new(); k];
    for x in 0..k {
        for a in 0..m {
            edges[x].push(names.len());
            names.push(format!("{a}|{x}"));
        }
    }
    Scenario::from_indexed(format!("B_1,{k},{m}"), names, edges)
}

/// The Bell scenario `B_{n,k,m}` with vertex ids `a1..an|x1..xn`. Digits
/// are concatenated when both `k` and `m` are at most 10 and separated by
/// commas otherwise.
pub fn bell_scenario(n: usize, k: usize, m: usize, kind: ProductKind) -> Result<Scenario> {
    if n == 0 {
        return Err(Error::Invalid("a Bell scenario needs at least one party".into()));
    }
    let one = single_party(k, m)?;
    let factors: Vec<&Scenario> = std::iter::repeat_n(&one, n).collect();
    let prod = if n == 1 { one.clone() } else { product(kind, &factors, &ProductCaps::default())? };
    let sep = if k <= 10 && m <= 10 { "" } else { "," };
    let rename = |id: &str| -> String {
        let (outs, sets): (Vec<&str>, Vec<&str>) =
            id.split(SEPARATOR).map(|p| p.split_once('|').expect("party ids contain `|`")).unzip();
        format!("{}|{}", outs.join(sep), sets.join(sep))
    };
    let names: Vec<String> = prod.vertices().iter().map(|v| rename(v)).collect();
    Scenario::from_indexed(format!("B_{n},{k},{m}"), names, prod.edges().to_vec())
}

/// Splits a product vertex id into its factor ids.
pub fn factor_ids(id: &str) -> Vec<&str> {
    id.split(SEPARATOR).collect()
}

/// Local orthogonality: two tuples are orthogonal in some factor.
pub fn locally_orthogonal(factors: &[&Scenario], u: &str, v: &str) -> bool {
    factor_ids(u).iter().zip(factor_ids(v)).zip(factors).any(|((a, b), f)| {
        match (f.vertex_index(a), f.vertex_index(b)) {
            (Some(x), Some(y)) => f.orthogonal(x, y),
            _ => false,
        }
    })
}
