//! DIMACS CNF encoding of `k`-colorability and a small DPLL checker.
//!
//! Variable `v * k + c + 1` means "vertex `v` has colour `c`". Each vertex
//! gets one at-least-one clause, and each edge `{u, v}` one clause
//! `-x(u,c) -x(v,c)` per colour. There are no at-most-one clauses: a model
//! that gives a vertex several colours still yields a proper colouring by
//! picking any of them.

use std::fmt::Write as _;

use super::ConflictGraph;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cnf {
    pub num_vars: usize,
    pub clauses: Vec<Vec<i32>>,
}

impl Cnf {
    pub fn is_satisfied_by(&self, model: &[bool]) -> bool {
        self.clauses.iter().all(|clause| {
            clause.iter().any(|&lit| {
                let value = model[lit.unsigned_abs() as usize - 1];
                (lit > 0) == value
            })
        })
    }

    /// Model of the colouring `colours` (one true variable per vertex).
    pub fn model_of_coloring(colours: &[usize], k: usize) -> Vec<bool> {
        let mut model = vec![false; colours.len() * k];
        for (v, &c) in colours.iter().enumerate() {
            model[v * k + c] = true;
        }
        model
    }
}

fn var(v: usize, c: usize, k: usize) -> i32 {
    (v * k + c + 1) as i32
}

/// Decision CNF: satisfiable iff `g` is `k`-colorable.
pub fn export_cnf(g: &ConflictGraph, k: usize) -> String {
    let n = g.vertex_count();
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let mut out = String::new();
    writeln!(out, "c {k}-colorability of a {n}-vertex graph with {} edges", edges.len()).unwrap();
    writeln!(out, "p cnf {} {}", n * k, n + edges.len() * k).unwrap();
    for v in 0..n {
        for c in 0..k {
            write!(out, "{} ", var(v, c, k)).unwrap();
        }
        out.push_str("0\n");
    }
    for &(u, v) in &edges {
        for c in 0..k {
            writeln!(out, "-{} -{} 0", var(u, c, k), var(v, c, k)).unwrap();
        }
    }
    out
}

/// Parses DIMACS CNF text, checking the header counts.
pub fn parse_dimacs(text: &str) -> Result<Cnf> {
    let bad = |msg: String| Error::Malformed(format!("DIMACS: {msg}"));
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut current = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("p") {
            let fields: Vec<&str> = rest.split_whitespace().collect();
            match fields.as_slice() {
                ["cnf", vars, count] => {
                    let parse = |s: &str| s.parse::<usize>().map_err(|_| bad(format!("header field {s:?}")));
                    header = Some((parse(vars)?, parse(count)?));
                }
                _ => return Err(bad(format!("header {line:?}"))),
            }
            continue;
        }
        let (num_vars, _) = header.ok_or_else(|| bad("clause before header".into()))?;
        for token in line.split_whitespace() {
            let lit: i32 = token.parse().map_err(|_| bad(format!("literal {token:?}")))?;
            if lit == 0 {
                clauses.push(std::mem::take(&mut current));
            } else if lit.unsigned_abs() as usize > num_vars {
                return Err(bad(format!("literal {lit} exceeds {num_vars} variables")));
            } else {
                current.push(lit);
            }
        }
    }
    let (num_vars, count) = header.ok_or_else(|| bad("missing header".into()))?;
    if !current.is_empty() {
        return Err(bad("unterminated clause".into()));
    }
    if clauses.len() != count {
        return Err(bad(format!("header says {count} clauses, found {}", clauses.len())));
    }
    Ok(Cnf { num_vars, clauses })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SatResult {
    Satisfiable(Vec<bool>),
    Unsatisfiable,
}

/// Plain DPLL: unit propagation to fixpoint, then branch on a variable of
/// a shortest open clause. Exponential, meant for the small exported
/// instances only.
pub fn solve_cnf(cnf: &Cnf) -> SatResult {
    let mut assignment = vec![None; cnf.num_vars];
    if dpll(cnf, &mut assignment) {
        SatResult::Satisfiable(assignment.into_iter().map(|a| a.unwrap_or(false)).collect())
    } else {
        SatResult::Unsatisfiable
    }
}

fn value(assignment: &[Option<bool>], lit: i32) -> Option<bool> {
    assignment[lit.unsigned_abs() as usize - 1].map(|v| v == (lit > 0))
}

fn dpll(cnf: &Cnf, assignment: &mut Vec<Option<bool>>) -> bool {
    let mut trail = Vec::new();
    let ok = propagate(cnf, assignment, &mut trail);
    let result = ok && {
        match branch_literal(cnf, assignment) {
            None => true,
            Some(lit) => [lit, -lit].into_iter().any(|choice| {
                let idx = choice.unsigned_abs() as usize - 1;
                assignment[idx] = Some(choice > 0);
                let sat = dpll(cnf, assignment);
                if !sat {
                    assignment[idx] = None;
                }
                sat
            }),
        }
    };
    if !result {
        for idx in trail {
            assignment[idx] = None;
        }
    }
    result
}

/// Returns false on a conflict. Variables fixed here are pushed to `trail`.
fn propagate(cnf: &Cnf, assignment: &mut [Option<bool>], trail: &mut Vec<usize>) -> bool {
    loop {
        let mut changed = false;
        for clause in &cnf.clauses {
            let mut open = None;
            let mut open_count = 0;
            let mut satisfied = false;
            for &lit in clause {
                match value(assignment, lit) {
                    Some(true) => {
                        satisfied = true;
                        break;
                    }
                    Some(false) => {}
                    None => {
                        open_count += 1;
                        open = Some(lit);
                    }
                }
            }
            if satisfied {
                continue;
            }
            match (open_count, open) {
                (0, _) => return false,
                (1, Some(lit)) => {
                    let idx = lit.unsigned_abs() as usize - 1;
                    assignment[idx] = Some(lit > 0);
                    trail.push(idx);
                    changed = true;
                }
                _ => {}
            }
        }
        if !changed {
            return true;
        }
    }
}

fn branch_literal(cnf: &Cnf, assignment: &[Option<bool>]) -> Option<i32> {
    let mut best: Option<(usize, i32)> = None;
    for clause in &cnf.clauses {
        if clause.iter().any(|&l| value(assignment, l) == Some(true)) {
            continue;
        }
        let open: Vec<i32> = clause.iter().copied().filter(|&l| value(assignment, l).is_none()).collect();
        if let Some(&first) = open.first() {
            if best.is_none_or(|(len, _)| open.len() < len) {
                best = Some((open.len(), first));
            }
        }
    }
    best.map(|(_, lit)| lit)
}
