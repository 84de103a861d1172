//! Topological subgraph (subdivision) detection.
//!
//! A subdivision of a pattern inside a host maps pattern vertices to
//! distinct branch vertices and pattern edges to internally disjoint host
//! paths. The finder backtracks over branch images in a most-connected-first
//! order, routing each pattern edge by simple-path search as soon as both
//! endpoints are placed. The search is exhaustive, so "absent" is a proof;
//! running out of budget is reported separately.

use crate::graph::Graph;

/// A verified embedding of a pattern subdivision into a host graph.
#[derive(Clone, Debug)]
pub struct SubdivisionMapping {
    pub pattern: Graph,
    /// `branch[p]` is the host vertex carrying pattern vertex `p`.
    pub branch: Vec<usize>,
    /// For each pattern edge `(a, b)` with `a < b`, a host path from
    /// `branch[a]` to `branch[b]`, endpoints included.
    pub paths: Vec<((usize, usize), Vec<usize>)>,
}

/// Outcome of [`find_subdivision`]: a mapping, a proof of absence, or an
/// inconclusive budget exhaustion.
#[derive(Clone, Debug)]
pub enum SubdivisionSearch {
    Found(SubdivisionMapping),
    Absent,
    BudgetExhausted,
}

/// Checks every invariant of a claimed subdivision mapping.
pub fn verify_subdivision(host: &Graph, mapping: &SubdivisionMapping) -> Result<(), String> {
    let pat = &mapping.pattern;
    if mapping.branch.len() != pat.order() {
        return Err("branch map has the wrong arity".into());
    }
    let mut seen = vec![false; host.order()];
    for &h in &mapping.branch {
        if h >= host.order() {
            return Err(format!("branch image {h} out of range"));
        }
        if seen[h] {
            return Err(format!("branch image {h} used twice"));
        }
        seen[h] = true;
    }
    let expected: Vec<(usize, usize)> = pat.edges();
    let got: Vec<(usize, usize)> = mapping.paths.iter().map(|(e, _)| *e).collect();
    if got != expected {
        return Err("paths do not cover exactly the pattern edges".into());
    }
    let is_branch: Vec<bool> = {
        let mut b = vec![false; host.order()];
        for &h in &mapping.branch {
            b[h] = true;
        }
        b
    };
    let mut internal_used = vec![false; host.order()];
    for ((a, b), path) in &mapping.paths {
        if path.len() < 2 {
            return Err(format!("path for ({a},{b}) too short"));
        }
        if path[0] != mapping.branch[*a] || *path.last().unwrap() != mapping.branch[*b] {
            return Err(format!("path for ({a},{b}) has wrong endpoints"));
        }
        for w in path.windows(2) {
            if !host.has_edge(w[0], w[1]) {
                return Err(format!("missing host edge {}-{}", w[0], w[1]));
            }
        }
        let mut in_path = vec![false; host.order()];
        for &v in path.iter() {
            if in_path[v] {
                return Err(format!("path for ({a},{b}) revisits vertex {v}"));
            }
            in_path[v] = true;
        }
        for &v in &path[1..path.len() - 1] {
            if is_branch[v] {
                return Err(format!("interior vertex {v} is a branch image"));
            }
            if internal_used[v] {
                return Err(format!("interior vertex {v} shared between paths"));
            }
            internal_used[v] = true;
        }
    }
    Ok(())
}

struct Finder<'a> {
    host: &'a Graph,
    pattern: &'a Graph,
    /// Pattern vertices in placement order.
    order: Vec<usize>,
    branch: Vec<usize>,
    placed: Vec<bool>,
    /// Host vertices consumed by branch images or path interiors.
    used: Vec<bool>,
    paths: Vec<((usize, usize), Vec<usize>)>,
    budget: u64,
    used_budget: u64,
}

enum Step {
    Found,
    Exhausted,
    OutOfBudget,
}

impl<'a> Finder<'a> {
    fn tick(&mut self) -> bool {
        self.used_budget += 1;
        self.used_budget <= self.budget
    }

    fn place(&mut self, k: usize) -> Step {
        if !self.tick() {
            return Step::OutOfBudget;
        }
        if k == self.order.len() {
            return Step::Found;
        }
        let p = self.order[k];
        let need: Vec<usize> = self
            .pattern
            .neighbors(p)
            .filter(|&q| self.placed[q])
            .collect();
        for h in 0..self.host.order() {
            if self.used[h] || self.host.degree(h) < self.pattern.degree(p) {
                continue;
            }
            self.branch[p] = h;
            self.placed[p] = true;
            self.used[h] = true;
            let base_paths = self.paths.len();
            match self.route_all(p, &need, 0) {
                Step::Found => match self.place(k + 1) {
                    Step::Found => return Step::Found,
                    Step::OutOfBudget => return Step::OutOfBudget,
                    Step::Exhausted => {}
                },
                Step::OutOfBudget => return Step::OutOfBudget,
                Step::Exhausted => {}
            }
            self.unwind_paths(base_paths);
            self.used[h] = false;
            self.placed[p] = false;
        }
        Step::Exhausted
    }

    fn unwind_paths(&mut self, base: usize) {
        while self.paths.len() > base {
            let (_, path) = self.paths.pop().unwrap();
            for &v in &path[1..path.len() - 1] {
                self.used[v] = false;
            }
        }
    }

    /// Routes all edges from the just-placed vertex `p` to its already
    /// placed neighbors `need[i..]`, with backtracking across the edges.
    fn route_all(&mut self, p: usize, need: &[usize], i: usize) -> Step {
        if i == need.len() {
            return Step::Found;
        }
        let q = need[i];
        let s = self.branch[p];
        let t = self.branch[q];
        let mut path = vec![s];
        let mut on_path = vec![false; self.host.order()];
        on_path[s] = true;
        self.extend_path(p, need, i, t, &mut path, &mut on_path)
    }

    #[allow(clippy::too_many_arguments)]
    fn extend_path(
        &mut self,
        p: usize,
        need: &[usize],
        i: usize,
        t: usize,
        path: &mut Vec<usize>,
        on_path: &mut Vec<bool>,
    ) -> Step {
        if !self.tick() {
            return Step::OutOfBudget;
        }
        let cur = *path.last().unwrap();
        // Direct arrival first biases toward short paths.
        let mut nexts: Vec<usize> = Vec::new();
        if self.host.has_edge(cur, t) {
            nexts.push(t);
        }
        for w in self.host.neighbors(cur) {
            if w != t && !self.used[w] && !on_path[w] {
                nexts.push(w);
            }
        }
        for w in nexts {
            if w == t {
                // Complete this path, mark interiors, move to the next edge.
                let q = need[i];
                let (a, b) = (p.min(q), p.max(q));
                let full: Vec<usize> = if a == p {
                    let mut f = path.clone();
                    f.push(t);
                    f
                } else {
                    let mut f = path.clone();
                    f.push(t);
                    f.reverse();
                    f
                };
                for &v in &path[1..] {
                    self.used[v] = true;
                }
                self.paths.push(((a, b), full));
                match self.route_all(p, need, i + 1) {
                    Step::Found => return Step::Found,
                    Step::OutOfBudget => return Step::OutOfBudget,
                    Step::Exhausted => {
                        self.paths.pop();
                        for &v in &path[1..] {
                            self.used[v] = false;
                        }
                    }
                }
            } else {
                path.push(w);
                on_path[w] = true;
                match self.extend_path(p, need, i, t, path, on_path) {
                    Step::Found => return Step::Found,
                    Step::OutOfBudget => return Step::OutOfBudget,
                    Step::Exhausted => {
                        on_path[w] = false;
                        path.pop();
                    }
                }
            }
        }
        Step::Exhausted
    }
}

/// Searches for a subdivision of `pattern` inside `host`, exhaustively up
/// to `budget` node expansions.
pub fn find_subdivision(host: &Graph, pattern: &Graph, budget: u64) -> SubdivisionSearch {
    let pn = pattern.order();
    if pn > host.order() || pattern.size() > host.size() {
        return SubdivisionSearch::Absent;
    }
    // Most-connected-first placement order: repeatedly take the vertex with
    // the most placed neighbors, breaking ties by degree then index.
    let mut order = Vec::with_capacity(pn);
    let mut placed = vec![false; pn];
    for _ in 0..pn {
        let v = (0..pn)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let anchored = pattern.neighbors(v).filter(|&w| placed[w]).count();
                (anchored, pattern.degree(v), std::cmp::Reverse(v))
            })
            .unwrap();
        placed[v] = true;
        order.push(v);
    }
    let mut finder = Finder {
        host,
        pattern,
        order,
        branch: vec![usize::MAX; pn],
        placed: vec![false; pn],
        used: vec![false; host.order()],
        paths: Vec::new(),
        budget,
        used_budget: 0,
    };
    match finder.place(0) {
        Step::Found => {
            let mut paths = finder.paths.clone();
            paths.sort_by_key(|(e, _)| *e);
            let mapping = SubdivisionMapping {
                pattern: pattern.clone(),
                branch: finder.branch.clone(),
                paths,
            };
            debug_assert!(verify_subdivision(host, &mapping).is_ok());
            SubdivisionSearch::Found(mapping)
        }
        Step::Exhausted => SubdivisionSearch::Absent,
        Step::OutOfBudget => SubdivisionSearch::BudgetExhausted,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_bipartite, complete_graph, cycle_graph, total_graph};
    use crate::ring::{build_ring, parse_ring_expression};

    fn ring_graph(expr: &str) -> Graph {
        total_graph(&build_ring(&parse_ring_expression(expr).unwrap()).unwrap())
    }

    #[test]
    fn k5_in_itself_is_the_identity_shape() {
        let k5 = complete_graph(5);
        match find_subdivision(&k5, &k5, 1_000_000) {
            SubdivisionSearch::Found(m) => {
                verify_subdivision(&k5, &m).unwrap();
                // All paths are single edges.
                assert!(m.paths.iter().all(|(_, p)| p.len() == 2));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn k33_is_provably_absent_from_c4() {
        match find_subdivision(&cycle_graph(4), &complete_bipartite(3, 3), 1_000_000) {
            SubdivisionSearch::Absent => {}
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn k5_subdivision_in_the_z2xz4_total_graph() {
        let host = ring_graph("Z2xZ4");
        match find_subdivision(&host, &complete_graph(5), 10_000_000) {
            SubdivisionSearch::Found(m) => verify_subdivision(&host, &m).unwrap(),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn k33_subdivision_in_the_z3xz3_total_graph() {
        let host = ring_graph("Z3xZ3");
        match find_subdivision(&host, &complete_bipartite(3, 3), 10_000_000) {
            SubdivisionSearch::Found(m) => verify_subdivision(&host, &m).unwrap(),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn k54_subdivision_in_the_z3xf4_total_graph() {
        let host = ring_graph("Z3xF4");
        match find_subdivision(&host, &complete_bipartite(5, 4), 50_000_000) {
            SubdivisionSearch::Found(m) => verify_subdivision(&host, &m).unwrap(),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn budget_exhaustion_is_distinguished_from_absence() {
        let host = ring_graph("Z3xF4");
        match find_subdivision(&host, &complete_bipartite(5, 4), 5) {
            SubdivisionSearch::BudgetExhausted => {}
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn verifier_rejects_tampered_mappings() {
        let k5 = complete_graph(5);
        let m = match find_subdivision(&k5, &k5, 1_000_000) {
            SubdivisionSearch::Found(m) => m,
            other => panic!("{other:?}"),
        };
        let mut bad = m.clone();
        bad.branch[0] = bad.branch[1];
        assert!(verify_subdivision(&k5, &bad).is_err());
        let mut bad = m;
        bad.paths[0].1 = vec![0, 3];
        assert!(verify_subdivision(&k5, &bad).is_err());
    }
}
