use std::time::Instant;

use super::{maximum_clique, Budget, ColoringResult, ConflictGraph, Verdict};
use crate::error::{invalid, Result};

const UNCOLOURED: u8 = u8::MAX;
pub const MAX_COLOURS: usize = 64;

/// Decides whether `g` has a proper `k`-coloring.
///
/// Backtracking in DSATUR order (most distinct neighbour colours, then
/// highest degree, then lowest index). One maximum clique is pre-coloured
/// `0, 1, 2, ...`; after that a new colour is only ever introduced as the
/// lowest unused one, so colour permutations are explored once. A vertex
/// whose neighbours already use all `k` colours fails the branch at once.
pub fn is_k_colorable(g: &ConflictGraph, k: usize, budget: Budget) -> Result<ColoringResult> {
    if k == 0 || k > MAX_COLOURS {
        return Err(invalid(format!("k = {k} outside 1..={MAX_COLOURS}")));
    }
    let start = Instant::now();
    let (clique, _) = maximum_clique(g);
    debug_assert!(clique.iter().enumerate().all(|(i, &u)| clique[..i].iter().all(|&v| g.has_edge(u, v))));
    if clique.len() > k {
        return Ok(ColoringResult { verdict: Verdict::NotColorable, nodes: 0, elapsed: start.elapsed() });
    }
    let mut search = Search::new(g, k, budget, start);
    for (c, &v) in clique.iter().enumerate() {
        search.assign(v, c);
    }
    let outcome = search.run(clique.len(), g.vertex_count() - clique.len());
    let verdict = match outcome {
        Outcome::Found => Verdict::Colorable(search.colour.iter().map(|&c| c as usize).collect()),
        Outcome::Exhausted => Verdict::NotColorable,
        Outcome::OutOfBudget => Verdict::BudgetExceeded,
    };
    if let Verdict::Colorable(colours) = &verdict {
        debug_assert!(g.is_proper_coloring(colours));
    }
    Ok(ColoringResult { verdict, nodes: search.nodes, elapsed: start.elapsed() })
}

#[derive(Copy, Clone, PartialEq, Eq)]
enum Outcome {
    Found,
    Exhausted,
    OutOfBudget,
}

struct Search<'a> {
    g: &'a ConflictGraph,
    k: usize,
    budget: Budget,
    start: Instant,
    nodes: u64,
    colour: Vec<u8>,
    degree: Vec<usize>,
    // neighbour_count[v * k + c]: coloured neighbours of v with colour c
    neighbour_count: Vec<u16>,
    // bit c set iff some neighbour of v has colour c
    saturation: Vec<u64>,
}

impl<'a> Search<'a> {
    fn new(g: &'a ConflictGraph, k: usize, budget: Budget, start: Instant) -> Self {
        let n = g.vertex_count();
        Search {
            g,
            k,
            budget,
            start,
            nodes: 0,
            colour: vec![UNCOLOURED; n],
            degree: (0..n).map(|v| g.degree(v)).collect(),
            neighbour_count: vec![0; n * k],
            saturation: vec![0; n],
        }
    }

    fn assign(&mut self, v: usize, c: usize) {
        self.colour[v] = c as u8;
        for u in self.g.neighbors(v) {
            let slot = &mut self.neighbour_count[u * self.k + c];
            *slot += 1;
            if *slot == 1 {
                self.saturation[u] |= 1 << c;
            }
        }
    }

    fn unassign(&mut self, v: usize) {
        let c = self.colour[v] as usize;
        self.colour[v] = UNCOLOURED;
        for u in self.g.neighbors(v) {
            let slot = &mut self.neighbour_count[u * self.k + c];
            *slot -= 1;
            if *slot == 0 {
                self.saturation[u] &= !(1 << c);
            }
        }
    }

    fn out_of_budget(&self) -> bool {
        if self.nodes > self.budget.max_nodes {
            return true;
        }
        match self.budget.max_time {
            Some(limit) if self.nodes.is_multiple_of(1024) => self.start.elapsed() > limit,
            _ => false,
        }
    }

    /// Uncoloured vertex with maximum (saturation, degree, -index).
    fn select(&self) -> Option<usize> {
        let mut best: Option<(u32, usize, usize)> = None;
        for v in 0..self.colour.len() {
            if self.colour[v] != UNCOLOURED {
                continue;
            }
            let key = (self.saturation[v].count_ones(), self.degree[v]);
            match best {
                Some((s, d, _)) if (s, d) >= key => {}
                _ => best = Some((key.0, key.1, v)),
            }
        }
        best.map(|(_, _, v)| v)
    }

    fn run(&mut self, used: usize, remaining: usize) -> Outcome {
        self.nodes += 1;
        if self.out_of_budget() {
            return Outcome::OutOfBudget;
        }
        if remaining == 0 {
            return Outcome::Found;
        }
        let v = self.select().expect("an uncoloured vertex remains");
        let limit = (used + 1).min(self.k);
        for c in 0..limit {
            if self.saturation[v] >> c & 1 == 1 {
                continue;
            }
            self.assign(v, c);
            let outcome = if self.dead_end(v) { Outcome::Exhausted } else { self.run(used.max(c + 1), remaining - 1) };
            if outcome != Outcome::Exhausted {
                return outcome;
            }
            self.unassign(v);
        }
        Outcome::Exhausted
    }

    /// Some uncoloured neighbour of `v` now sees all `k` colours.
    fn dead_end(&self, v: usize) -> bool {
        let full = if self.k == 64 { u64::MAX } else { (1u64 << self.k) - 1 };
        self.g.neighbors(v).any(|u| self.colour[u] == UNCOLOURED && self.saturation[u] == full)
    }
}
