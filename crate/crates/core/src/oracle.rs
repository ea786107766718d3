//! Brute-force `k`-page crossing numbers of tiny `K_{m,n}`.
//!
//! Minimises over every canonical layout (crossing counts are invariant
//! under rotation and reflection, so one layout per dihedral orbit
//! suffices) and every page assignment. Assignments are searched edge by
//! edge in index order with branch and bound: a branch is cut once its
//! partial crossing count reaches the best total found so far, and an edge
//! may only open the lowest unused page.

use std::time::Instant;

use serde::Serialize;

use crate::constructions::{balanced_embedding, block_cyclic, blowup};
use crate::drawings::{count_crossings, Edge};
use crate::enumeration::enumerate_layouts;
use crate::error::{invalid, Error, Result};

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct OracleLimits {
    /// Largest `m + n` accepted.
    pub max_vertices: usize,
    pub max_pages: usize,
    /// Search nodes summed over all layouts.
    pub node_budget: u64,
    /// Start from the best constructed drawing instead of an empty bound.
    pub seed_incumbent: bool,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits { max_vertices: 10, max_pages: 3, node_budget: 2_000_000_000, seed_incumbent: true }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleResult {
    pub m: usize,
    pub n: usize,
    pub k: usize,
    pub value: u64,
    pub nodes: u64,
    pub millis: u64,
}

fn check_limits(m: usize, n: usize, k: usize, limits: &OracleLimits) -> Result<()> {
    if m == 0 || n == 0 || k == 0 {
        return Err(invalid("m, n and k must be positive"));
    }
    if m + n > limits.max_vertices {
        return Err(Error::LimitExceeded(format!("m + n = {} > {}", m + n, limits.max_vertices)));
    }
    if k > limits.max_pages {
        return Err(Error::LimitExceeded(format!("k = {k} > {}", limits.max_pages)));
    }
    Ok(())
}

/// Fewest crossings among the constructed drawings of `K_{m,n}` in `k` pages.
fn constructed_upper_bound(m: usize, n: usize, k: usize) -> Result<u64> {
    let mut best = count_crossings(&block_cyclic(m, n, k)?)?.total;
    if m == k + 1 {
        let base = balanced_embedding(k)?;
        if n >= base.n() {
            best = best.min(count_crossings(&blowup(&base, n)?)?.total);
        }
    }
    Ok(best)
}

/// Minimum number of crossings over all `k`-page drawings of `K_{m,n}`.
pub fn brute_force_nu(m: usize, n: usize, k: usize, limits: &OracleLimits) -> Result<OracleResult> {
    check_limits(m, n, k, limits)?;
    let start = Instant::now();
    let mut search = Search {
        k,
        best: if limits.seed_incumbent { constructed_upper_bound(m, n, k)? } else { u64::MAX },
        nodes: 0,
        budget: limits.node_budget,
        crossing_with_earlier: Vec::new(),
        page: Vec::new(),
    };
    let edges: Vec<Edge> = (0..m * n).map(|idx| Edge::new(idx / n, idx % n)).collect();
    for layout in enumerate_layouts(m, n)? {
        if search.best == 0 {
            break;
        }
        search.crossing_with_earlier = edges
            .iter()
            .enumerate()
            .map(|(i, &e)| (0..i).filter(|&j| layout.chords_cross(e, edges[j])).collect())
            .collect();
        search.page = vec![0; edges.len()];
        search.assign(0, 0, 0)?;
    }
    Ok(OracleResult { m, n, k, value: search.best, nodes: search.nodes, millis: start.elapsed().as_millis() as u64 })
}

/// Smallest `k` (up to `limits.max_pages`) with a crossing-free `k`-page
/// drawing of `K_{m,n}`.
pub fn brute_force_pagenumber(m: usize, n: usize, limits: &OracleLimits) -> Result<usize> {
    for k in 1..=limits.max_pages {
        if brute_force_nu(m, n, k, limits)?.value == 0 {
            return Ok(k);
        }
    }
    Err(Error::LimitExceeded(format!("K_{{{m},{n}}} needs more than {} pages", limits.max_pages)))
}

struct Search {
    k: usize,
    best: u64,
    nodes: u64,
    budget: u64,
    // for edge i, the earlier edges j < i whose chords cross it
    crossing_with_earlier: Vec<Vec<usize>>,
    page: Vec<usize>,
}

impl Search {
    fn assign(&mut self, edge: usize, pages_used: usize, crossings: u64) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::LimitExceeded(format!("oracle node budget {} exhausted", self.budget)));
        }
        if edge == self.page.len() {
            self.best = self.best.min(crossings);
            return Ok(());
        }
        for p in 0..(pages_used + 1).min(self.k) {
            let added = self.crossing_with_earlier[edge].iter().filter(|&&j| self.page[j] == p).count() as u64;
            let total = crossings + added;
            if total >= self.best {
                continue;
            }
            self.page[edge] = p;
            self.assign(edge + 1, pages_used.max(p + 1), total)?;
        }
        Ok(())
    }
}
