//! Bounded saturation of the subset equivalence relation generated by
//! three rules: all edges are equivalent; disjoint unions of equivalent
//! pieces are equivalent; and a common part may be cancelled from two
//! equivalent sets. Sets equivalent to an edge are virtual edges.
//!
//! Subsets live in a finite universe chosen up front (all subsets up to a
//! size bound, or all subsets of some focus sets) and are encoded as `u128`
//! masks, so scenarios are limited to 128 vertices here. Every reported
//! equivalence is derived by the rules; failing to find one proves nothing.

use std::collections::HashMap;

use super::Scenario;
use crate::error::{budget, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SaturationBudget {
    pub depth: usize,
    pub max_subset_size: usize,
    pub max_subsets: usize,
}

impl Default for SaturationBudget {
    fn default() -> Self {
        SaturationBudget { depth: 6, max_subset_size: 8, max_subsets: 100_000 }
    }
}

#[derive(Clone, Debug)]
pub struct EquivClassTable {
    vertices: Vec<String>,
    /// Rule rounds actually performed before the fixpoint or the depth cap.
    pub rounds: usize,
    pub depth: usize,
    pub reached_fixpoint: bool,
    universe: Vec<u128>,
    position: HashMap<u128, usize>,
    root: Vec<usize>,
    edge_root: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CompletionVerdict {
    Equivalent,
    Unknown,
}

impl CompletionVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            CompletionVerdict::Equivalent => "equivalent",
            CompletionVerdict::Unknown => "unknown",
        }
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

pub(crate) fn mask_of(e: &[usize]) -> u128 {
    e.iter().fold(0u128, |m, &v| m | (1u128 << v))
}

fn members(mask: u128) -> Vec<usize> {
    (0..128).filter(|&i| mask >> i & 1 == 1).collect()
}

/// Calls `f` on every submask of `mask`, including 0 and `mask`.
fn for_each_submask(mask: u128, mut f: impl FnMut(u128)) {
    let mut sub = mask;
    loop {
        f(sub);
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & mask;
    }
}

fn universe_all(n: usize, max_size: usize, cap: usize) -> Result<Vec<u128>> {
    let mut out = Vec::new();
    let mut count: u128 = 0;
    let mut binom: u128 = 1;
    for k in 0..=max_size.min(n) {
        if k > 0 {
            binom = binom * (n - k + 1) as u128 / k as u128;
        }
        count += binom;
    }
    if count > cap as u128 {
        return Err(budget("equivalence saturation universe", cap as u64));
    }
    fn rec(start: usize, n: usize, left: usize, cur: u128, out: &mut Vec<u128>) {
        out.push(cur);
        if left == 0 {
            return;
        }
        for i in start..n {
            rec(i + 1, n, left - 1, cur | (1u128 << i), out);
        }
    }
    rec(0, n, max_size, 0, &mut out);
    Ok(out)
}

/// Saturates over all subsets of size at most `max_subset_size`.
pub fn saturate_equivalences(s: &Scenario, depth: usize, max_subset_size: usize) -> Result<EquivClassTable> {
    let b = SaturationBudget { depth, max_subset_size, ..SaturationBudget::default() };
    saturate_with_focus(s, b, None)
}

/// Saturates over the subsets of the given focus sets (vertex index lists)
/// when `focus` is present, or over all small subsets otherwise.
pub fn saturate_with_focus(s: &Scenario, b: SaturationBudget, focus: Option<&[Vec<usize>]>) -> Result<EquivClassTable> {
    let n = s.num_vertices();
    if n > 128 {
        return Err(Error::SizeCap { size: n, cap: 128 });
    }
    if b.depth == 0 || b.max_subset_size == 0 {
        return Err(Error::Invalid("saturation depth and subset size must be positive".into()));
    }
    let mut universe = match focus {
        None => universe_all(n, b.max_subset_size, b.max_subsets)?,
        Some(sets) => {
            let mut all = std::collections::HashSet::new();
            for v in 0..n {
                all.insert(1u128 << v);
            }
            all.insert(0);
            for f in sets {
                let m = mask_of(f);
                if f.len() > 24 {
                    return Err(Error::CombinatorialBlowup { what: "focus set subsets".into(), cap: 1 << 24 });
                }
                for_each_submask(m, |sub| {
                    if (sub.count_ones() as usize) <= b.max_subset_size {
                        all.insert(sub);
                    }
                });
                if all.len() > b.max_subsets {
                    return Err(budget("equivalence saturation universe", b.max_subsets as u64));
                }
            }
            all.into_iter().collect()
        }
    };
    for e in s.edges() {
        universe.push(mask_of(e));
    }
    universe.sort_by_key(|m| (m.count_ones(), *m));
    universe.dedup();
    if universe.len() > b.max_subsets {
        return Err(budget("equivalence saturation universe", b.max_subsets as u64));
    }
    let position: HashMap<u128, usize> = universe.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let mut uf = UnionFind { parent: (0..universe.len()).collect() };
    let edge_ids: Vec<usize> = s.edges().iter().map(|e| position[&mask_of(e)]).collect();
    for w in edge_ids.windows(2) {
        uf.union(w[0], w[1]);
    }

    let mut rounds = 0;
    let mut fixpoint = false;
    while rounds < b.depth {
        rounds += 1;
        let mut changed = false;
        let classes = nontrivial_classes(&mut uf, universe.len());

        // Cancellation of the common part.
        for class in &classes {
            for (i, &x) in class.iter().enumerate() {
                for &y in &class[i + 1..] {
                    let (a, c) = (universe[x], universe[y]);
                    let common = a & c;
                    if common == 0 {
                        continue;
                    }
                    if let (Some(&p), Some(&q)) = (position.get(&(a & !common)), position.get(&(c & !common))) {
                        changed |= uf.union(p, q);
                    }
                }
            }
        }

        // Disjoint unions: S = A ⊔ D and A' ⊔ D are equivalent when A ≃ A'.
        let mut nontrivial = vec![false; universe.len()];
        for class in nontrivial_classes(&mut uf, universe.len()) {
            for x in class {
                nontrivial[x] = true;
            }
        }
        let mut groups: HashMap<(usize, u128), usize> = HashMap::new();
        for (si, &set) in universe.iter().enumerate() {
            for_each_submask(set, |a| {
                if let Some(&ai) = position.get(&a) {
                    if nontrivial[ai] {
                        let key = (uf.find(ai), set & !a);
                        match groups.get(&key) {
                            Some(&first) => changed |= uf.union(first, si),
                            None => {
                                groups.insert(key, si);
                            }
                        }
                    }
                }
            });
        }
        if !changed {
            fixpoint = true;
            break;
        }
    }

    let root: Vec<usize> = (0..universe.len()).map(|i| uf.find(i)).collect();
    let edge_root = root[edge_ids[0]];
    Ok(EquivClassTable {
        vertices: s.vertices().to_vec(),
        rounds,
        depth: b.depth,
        reached_fixpoint: fixpoint,
        universe,
        position,
        root,
        edge_root,
    })
}

fn nontrivial_classes(uf: &mut UnionFind, len: usize) -> Vec<Vec<usize>> {
    let mut by_root: HashMap<usize, Vec<usize>> = HashMap::new();
    for i in 0..len {
        by_root.entry(uf.find(i)).or_default().push(i);
    }
    let mut out: Vec<Vec<usize>> = by_root.into_values().filter(|c| c.len() > 1).collect();
    out.sort();
    out
}

impl EquivClassTable {
    fn id(&self, set: &[usize]) -> Option<usize> {
        self.position.get(&mask_of(set)).copied()
    }

    /// True when the two index sets were proven equivalent.
    pub fn equivalent(&self, a: &[usize], b: &[usize]) -> bool {
        match (self.id(a), self.id(b)) {
            (Some(x), Some(y)) => self.root[x] == self.root[y],
            _ => mask_of(a) == mask_of(b),
        }
    }

    pub fn equivalent_ids(&self, a: &[&str], b: &[&str]) -> bool {
        let look = |ids: &[&str]| -> Option<Vec<usize>> {
            ids.iter().map(|id| self.vertices.iter().position(|v| v == id)).collect()
        };
        match (look(a), look(b)) {
            (Some(x), Some(y)) => self.equivalent(&x, &y),
            _ => false,
        }
    }

    pub fn is_virtual_edge(&self, set: &[usize]) -> bool {
        self.id(set).is_some_and(|x| self.root[x] == self.edge_root)
    }

    /// All subsets found equivalent to an edge, as sorted index lists.
    pub fn virtual_edges(&self) -> Vec<Vec<usize>> {
        (0..self.universe.len())
            .filter(|&i| self.root[i] == self.edge_root)
            .map(|i| members(self.universe[i]))
            .collect()
    }

    pub fn virtual_edge_names(&self) -> Vec<Vec<String>> {
        self.virtual_edges()
            .into_iter()
            .map(|e| e.into_iter().map(|v| self.vertices[v].clone()).collect())
            .collect()
    }

    /// Classes with at least two members, each a list of sorted index sets.
    pub fn classes(&self) -> Vec<Vec<Vec<usize>>> {
        let mut by_root: HashMap<usize, Vec<usize>> = HashMap::new();
        for (i, &r) in self.root.iter().enumerate() {
            by_root.entry(r).or_default().push(i);
        }
        let mut out: Vec<Vec<Vec<usize>>> = by_root
            .into_values()
            .filter(|c| c.len() > 1)
            .map(|c| c.into_iter().map(|i| members(self.universe[i])).collect())
            .collect();
        out.sort();
        out
    }

    pub fn universe_size(&self) -> usize {
        self.universe.len()
    }
}

/// Decides whether the two scenarios were shown to have each other's edges
/// as virtual edges. Never answers "not equivalent".
pub fn completion_check(a: &Scenario, b: &Scenario, budget: SaturationBudget) -> Result<CompletionVerdict> {
    if a.vertices() != b.vertices() {
        return Err(Error::VertexSetMismatch);
    }
    let focus: Vec<Vec<usize>> = a.edges().iter().chain(b.edges()).cloned().collect();
    let ta = saturate_with_focus(a, budget, Some(&focus))?;
    if !b.edges().iter().all(|e| ta.is_virtual_edge(e)) {
        return Ok(CompletionVerdict::Unknown);
    }
    let tb = saturate_with_focus(b, budget, Some(&focus))?;
    if !a.edges().iter().all(|e| tb.is_virtual_edge(e)) {
        return Ok(CompletionVerdict::Unknown);
    }
    Ok(CompletionVerdict::Equivalent)
}
