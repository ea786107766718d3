use super::{bits, ConflictGraph};

const CLIQUE_NODE_CAP: u64 = 2_000_000;

/// Size of a large clique of `g`, a lower bound on its chromatic number.
pub fn clique_lower_bound(g: &ConflictGraph) -> usize {
    maximum_clique(g).0.len()
}

/// Branch and bound for a maximum clique, seeded with a greedy clique and
/// pruned by greedy colouring of the candidate set.
///
/// Returns the clique (sorted) and whether optimality was proven; the
/// search stops early only after a large node cap, far beyond what graphs
/// with a few hundred vertices of this density need.
pub fn maximum_clique(g: &ConflictGraph) -> (Vec<usize>, bool) {
    let n = g.vertex_count();
    if n == 0 {
        return (Vec::new(), true);
    }
    let mut search = CliqueSearch { g, best: greedy_clique(g), current: Vec::new(), nodes: 0, exhausted: false };
    let mut all = vec![0u64; g.words()];
    for v in 0..n {
        all[v / 64] |= 1 << (v % 64);
    }
    search.expand(all);
    let mut best = search.best;
    best.sort_unstable();
    (best, !search.exhausted)
}

fn greedy_clique(g: &ConflictGraph) -> Vec<usize> {
    let mut order: Vec<usize> = (0..g.vertex_count()).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
    let mut clique: Vec<usize> = Vec::new();
    for v in order {
        if clique.iter().all(|&u| g.has_edge(u, v)) {
            clique.push(v);
        }
    }
    clique
}

struct CliqueSearch<'a> {
    g: &'a ConflictGraph,
    best: Vec<usize>,
    current: Vec<usize>,
    nodes: u64,
    exhausted: bool,
}

impl CliqueSearch<'_> {
    fn expand(&mut self, mut candidates: Vec<u64>) {
        self.nodes += 1;
        if self.nodes > CLIQUE_NODE_CAP {
            self.exhausted = true;
            return;
        }
        let ordered = self.colour_order(&candidates);
        for &(v, colour) in ordered.iter().rev() {
            if self.exhausted || self.current.len() + colour <= self.best.len() {
                return;
            }
            self.current.push(v);
            let next: Vec<u64> = candidates.iter().zip(self.g.row(v)).map(|(a, b)| a & b).collect();
            if next.iter().all(|&w| w == 0) {
                if self.current.len() > self.best.len() {
                    self.best = self.current.clone();
                }
            } else {
                self.expand(next);
            }
            self.current.pop();
            candidates[v / 64] &= !(1 << (v % 64));
        }
    }

    /// Greedy sequential colouring of the candidates; each vertex is paired
    /// with its colour number (1-based), in non-decreasing colour order.
    fn colour_order(&self, candidates: &[u64]) -> Vec<(usize, usize)> {
        let mut uncoloured = candidates.to_vec();
        let mut out = Vec::new();
        let mut colour = 0;
        while uncoloured.iter().any(|&w| w != 0) {
            colour += 1;
            let mut open = uncoloured.clone();
            loop {
                let Some(v) = bits(&open).next() else { break };
                open[v / 64] &= !(1 << (v % 64));
                uncoloured[v / 64] &= !(1 << (v % 64));
                for (o, r) in open.iter_mut().zip(self.g.row(v)) {
                    *o &= !r;
                }
                out.push((v, colour));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edgeless_graph_has_unit_clique() {
        assert_eq!(clique_lower_bound(&ConflictGraph::empty(7)), 1);
        assert_eq!(clique_lower_bound(&ConflictGraph::empty(0)), 0);
    }

    #[test]
    fn complete_graph() {
        assert_eq!(clique_lower_bound(&ConflictGraph::complete(5)), 5);
    }

    #[test]
    fn finds_hidden_clique_missed_by_degree_order() {
        // a star centred at 0 (high degree) plus a disjoint triangle
        let g = ConflictGraph::from_edges(8, [(0, 1), (0, 2), (0, 3), (0, 4), (5, 6), (6, 7), (5, 7)]);
        let (clique, exact) = maximum_clique(&g);
        assert!(exact);
        assert_eq!(clique, vec![5, 6, 7]);
    }
}
