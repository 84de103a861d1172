//! Simple undirected labeled graphs.
//!
//! Graphs are immutable after construction: constructors return new graphs,
//! and everything downstream (isomorphism, embedding search) reads them
//! concurrently without locks. Adjacency is stored as sorted neighbor sets;
//! the graphs in this crate stay small (at most a few dozen vertices), so
//! clarity wins over bit tricks.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use thiserror::Error;

use crate::ring::FiniteRing;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("induced subgraph of the empty vertex set")]
    EmptySubset,
    #[error("graph file, line {line}: {message}")]
    MalformedLine { line: usize, message: String },
}

/// A simple undirected graph with string vertex labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<String>,
    adj: Vec<BTreeSet<usize>>,
}

impl Graph {
    /// An edgeless graph with `n` vertices labeled `0..n`.
    pub fn empty(n: usize) -> Self {
        Graph {
            labels: (0..n).map(|i| i.to_string()).collect(),
            adj: vec![BTreeSet::new(); n],
        }
    }

    pub fn with_labels(labels: Vec<String>) -> Self {
        let n = labels.len();
        Graph {
            labels,
            adj: vec![BTreeSet::new(); n],
        }
    }

    /// Builds from an edge list; panics on loops or out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub(crate) fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v, "no loops in a simple graph");
        assert!(u < self.order() && v < self.order(), "edge endpoint out of range");
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn size(&self) -> usize {
        self.adj.iter().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().copied()
    }

    pub fn neighbor_set(&self, v: usize) -> &BTreeSet<usize> {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(&v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Edges as sorted `(u, v)` pairs with `u < v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.size());
        for u in 0..self.order() {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.order()).map(|v| self.degree(v)).collect();
        d.sort_unstable();
        d
    }

    pub fn min_degree(&self) -> usize {
        (0..self.order()).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    /// Vertex sets of the connected components, in order of least vertex.
    pub fn component_sets(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut comps = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut stack = vec![s];
            let mut comp = Vec::new();
            seen[s] = true;
            while let Some(u) = stack.pop() {
                comp.push(u);
                for &v in &self.adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        stack.push(v);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    /// Connected components as separate graphs (with inherited labels),
    /// paired with the original vertex ids.
    pub fn connected_components(&self) -> Vec<(Graph, Vec<usize>)> {
        self.component_sets()
            .into_iter()
            .map(|vs| (self.induced_by_ids(&vs), vs))
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        self.order() <= 1 || self.component_sets().len() == 1
    }

    fn induced_by_ids(&self, vs: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.order()];
        for (i, &v) in vs.iter().enumerate() {
            index[v] = i;
        }
        let mut g = Graph::with_labels(vs.iter().map(|&v| self.labels[v].clone()).collect());
        for &v in vs {
            for &w in &self.adj[v] {
                if v < w && index[w] != usize::MAX {
                    g.add_edge(index[v], index[w]);
                }
            }
        }
        g
    }

    /// Subgraph induced by a non-empty vertex subset.
    pub fn induced_subgraph(&self, subset: &[usize]) -> Result<Graph, GraphError> {
        if subset.is_empty() {
            return Err(GraphError::EmptySubset);
        }
        let mut vs: Vec<usize> = subset.to_vec();
        vs.sort_unstable();
        vs.dedup();
        Ok(self.induced_by_ids(&vs))
    }

    /// Length of a shortest cycle, if any.
    pub fn girth(&self) -> Option<usize> {
        let n = self.order();
        let mut best: Option<usize> = None;
        for root in 0..n {
            // BFS from root; a non-tree edge closing at depths d1, d2 gives a
            // cycle through root of length d1 + d2 + 1.
            let mut dist = vec![usize::MAX; n];
            let mut parent = vec![usize::MAX; n];
            dist[root] = 0;
            let mut queue = std::collections::VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                for &v in &self.adj[u] {
                    if dist[v] == usize::MAX {
                        dist[v] = dist[u] + 1;
                        parent[v] = u;
                        queue.push_back(v);
                    } else if parent[u] != v {
                        let cycle = dist[u] + dist[v] + 1;
                        if best.map_or(true, |b| cycle < b) {
                            best = Some(cycle);
                        }
                    }
                }
            }
        }
        best
    }

    /// Serializes as an edge list with label comments; bit-exact for fixed
    /// labels.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# vertices: {}", self.order());
        for (i, l) in self.labels.iter().enumerate() {
            let _ = writeln!(out, "# {i}: {l}");
        }
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    /// Parses the edge-list format written by [`Graph::to_edge_list`].
    /// Plain `u v` lines with `#` comments; an optional `# vertices: n`
    /// header pins the vertex count (isolated vertices survive round trips).
    pub fn from_edge_list(text: &str) -> Result<Graph, GraphError> {
        let mut n: Option<usize> = None;
        let mut labels: Vec<(usize, String)> = Vec::new();
        let mut edges: Vec<(usize, usize)> = Vec::new();
        let mut max_seen = 0usize;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix('#') {
                let rest = rest.trim();
                if let Some(count) = rest.strip_prefix("vertices:") {
                    n = Some(count.trim().parse().map_err(|_| GraphError::MalformedLine {
                        line: lineno + 1,
                        message: format!("bad vertex count '{}'", count.trim()),
                    })?);
                } else if let Some((idx, label)) = rest.split_once(':') {
                    if let Ok(i) = idx.trim().parse::<usize>() {
                        labels.push((i, label.trim().to_string()));
                    }
                }
                continue;
            }
            let mut parts = line.split_whitespace();
            let (u, v) = match (parts.next(), parts.next(), parts.next()) {
                (Some(u), Some(v), None) => (u, v),
                _ => {
                    return Err(GraphError::MalformedLine {
                        line: lineno + 1,
                        message: format!("expected 'u v', got '{line}'"),
                    })
                }
            };
            let parse = |s: &str| -> Result<usize, GraphError> {
                s.parse().map_err(|_| GraphError::MalformedLine {
                    line: lineno + 1,
                    message: format!("bad vertex id '{s}'"),
                })
            };
            let (u, v) = (parse(u)?, parse(v)?);
            if u == v {
                return Err(GraphError::MalformedLine {
                    line: lineno + 1,
                    message: "loops are not allowed".into(),
                });
            }
            max_seen = max_seen.max(u + 1).max(v + 1);
            edges.push((u, v));
        }
        let n = n.unwrap_or(max_seen).max(max_seen);
        let mut g = Graph::empty(n);
        for (i, l) in labels {
            if i < n {
                g.labels[i] = l;
            }
        }
        for (u, v) in edges {
            g.add_edge(u, v);
        }
        Ok(g)
    }

    /// DOT export with quoted labels, deterministic order.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph G {\n");
        for (i, l) in self.labels.iter().enumerate() {
            let _ = writeln!(out, "  {i} [label=\"{}\"];", l.replace('"', "\\\""));
        }
        for (u, v) in self.edges() {
            let _ = writeln!(out, "  {u} -- {v};");
        }
        out.push_str("}\n");
        out
    }
}

/// The total graph of a finite commutative ring: every ring element is a
/// vertex and distinct `x`, `y` are adjacent exactly when `x + y` is a
/// zero-divisor.
pub fn total_graph(ring: &FiniteRing) -> Graph {
    let n = ring.order();
    let z = ring.zero_divisors();
    let mut g = Graph::with_labels(ring.element_names().to_vec());
    for x in 0..n {
        for y in x + 1..n {
            if z.contains(ring.add(x, y)) {
                g.add_edge(x, y);
            }
        }
    }
    g
}

/// `K_n`.
pub fn complete_graph(n: usize) -> Graph {
    assert!(n >= 1, "complete graph needs at least one vertex");
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            g.add_edge(u, v);
        }
    }
    g
}

/// `K_{m,n}`; vertices `0..m` on one side, `m..m+n` on the other.
pub fn complete_bipartite(m: usize, n: usize) -> Graph {
    assert!(m >= 1 && n >= 1, "parts must be non-empty");
    let mut g = Graph::empty(m + n);
    for u in 0..m {
        for v in 0..n {
            g.add_edge(u, m + v);
        }
    }
    g
}

/// Complete multipartite graph with the given part sizes.
pub fn complete_multipartite(parts: &[usize]) -> Graph {
    assert!(parts.iter().all(|&p| p >= 1), "parts must be non-empty");
    let n: usize = parts.iter().sum();
    let mut part_of = Vec::with_capacity(n);
    for (i, &p) in parts.iter().enumerate() {
        part_of.extend(std::iter::repeat(i).take(p));
    }
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if part_of[u] != part_of[v] {
                g.add_edge(u, v);
            }
        }
    }
    g
}

/// The cycle `C_n`.
pub fn cycle_graph(n: usize) -> Graph {
    assert!(n >= 3, "a cycle needs at least three vertices");
    let mut g = Graph::empty(n);
    for u in 0..n {
        g.add_edge(u, (u + 1) % n);
    }
    g
}

/// Cartesian product: `(x, y) ~ (x', y')` iff one coordinate is equal and
/// the other pair is adjacent in its factor.
pub fn cartesian_product(g1: &Graph, g2: &Graph) -> Graph {
    let (n1, n2) = (g1.order(), g2.order());
    let labels = (0..n1)
        .flat_map(|x| (0..n2).map(move |y| (x, y)))
        .map(|(x, y)| format!("({},{})", g1.label(x), g2.label(y)))
        .collect();
    let mut g = Graph::with_labels(labels);
    let id = |x: usize, y: usize| x * n2 + y;
    for x in 0..n1 {
        for y in 0..n2 {
            for &y2 in &g2.adj[y] {
                if y < y2 {
                    g.add_edge(id(x, y), id(x, y2));
                }
            }
            for &x2 in &g1.adj[x] {
                if x < x2 {
                    g.add_edge(id(x, y), id(x2, y));
                }
            }
        }
    }
    g
}

/// Disjoint union of `k` copies of `g`.
pub fn disjoint_union(k: usize, g: &Graph) -> Graph {
    assert!(k >= 1);
    let n = g.order();
    let labels = (0..k)
        .flat_map(|c| g.labels.iter().map(move |l| format!("{l}#{c}")))
        .collect();
    let mut out = Graph::with_labels(labels);
    for c in 0..k {
        for (u, v) in g.edges() {
            out.add_edge(c * n + u, c * n + v);
        }
    }
    out
}

/// Disjoint union of two different graphs.
pub fn graph_union(g1: &Graph, g2: &Graph) -> Graph {
    let n1 = g1.order();
    let mut labels = g1.labels.clone();
    labels.extend(g2.labels.iter().map(|l| format!("{l}'")));
    let mut out = Graph::with_labels(labels);
    for (u, v) in g1.edges() {
        out.add_edge(u, v);
    }
    for (u, v) in g2.edges() {
        out.add_edge(n1 + u, n1 + v);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{build_ring, parse_ring_expression, RingSpec};

    fn ring(expr: &str) -> FiniteRing {
        build_ring(&parse_ring_expression(expr).unwrap()).unwrap()
    }

    #[test]
    fn total_graph_of_z4_is_two_disjoint_edges() {
        let g = total_graph(&ring("Z4"));
        assert_eq!(g.order(), 4);
        assert_eq!(g.edges(), vec![(0, 2), (1, 3)]);
    }

    #[test]
    fn total_graph_of_z2xz2_is_the_four_cycle() {
        let g = total_graph(&ring("Z2xZ2"));
        assert_eq!(g.order(), 4);
        assert_eq!(g.size(), 4);
        assert!(g.degree_sequence().iter().all(|&d| d == 2));
        assert!(g.is_connected());
    }

    #[test]
    fn total_graph_of_f4_quotient_is_four_k4s() {
        let g = total_graph(&ring("F4[x]/(x^2)"));
        assert_eq!(g.order(), 16);
        let comps = g.connected_components();
        assert_eq!(comps.len(), 4);
        for (c, _) in comps {
            assert_eq!(c.order(), 4);
            assert_eq!(c.size(), 6);
        }
    }

    #[test]
    fn total_graph_min_degree_of_z9() {
        // Brute-force scan: K_3 on the zero-divisors plus K_{3,3} on units.
        let g = total_graph(&ring("Z9"));
        assert_eq!(g.min_degree(), 2);
        let mut degs = g.degree_sequence();
        degs.sort_unstable();
        assert_eq!(degs, vec![2, 2, 2, 3, 3, 3, 3, 3, 3]);
    }

    #[test]
    fn standard_graph_sizes() {
        assert_eq!(complete_graph(4).size(), 6);
        let b = complete_bipartite(3, 3);
        assert_eq!(b.size(), 9);
        assert_eq!(complete_multipartite(&[2, 2, 2, 2]).order(), 8);
        // C(8,2) - 4 within-part non-edges = 24.
        assert_eq!(complete_multipartite(&[2, 2, 2, 2]).size(), 24);
    }

    #[test]
    fn cartesian_product_shapes() {
        let prism = cartesian_product(&complete_graph(2), &complete_graph(3));
        assert_eq!(prism.order(), 6);
        assert!(prism.degree_sequence().iter().all(|&d| d == 3));
        for q in [3usize, 4, 5, 7] {
            let g = cartesian_product(&complete_graph(2), &complete_graph(q));
            assert_eq!(g.order(), 2 * q);
            assert_eq!(g.size(), q * (q - 1) + q);
        }
        // K_1 x G has the shape of G.
        let g = cartesian_product(&complete_graph(1), &cycle_graph(5));
        assert_eq!(g.order(), 5);
        assert_eq!(g.size(), 5);
    }

    #[test]
    fn disjoint_union_and_components() {
        let g = disjoint_union(2, &complete_graph(4));
        assert_eq!(g.order(), 8);
        assert_eq!(g.size(), 12);
        let comps = g.connected_components();
        assert_eq!(comps.len(), 2);
    }

    #[test]
    fn induced_subgraph_semantics() {
        let g = total_graph(&ring("Z3xZ3"));
        // Rows (1,*) and (2,*): all nine cross pairs are adjacent, so the
        // induced subgraph contains K_{3,3} between the rows.
        let row1: Vec<usize> = (0..9).filter(|v| g.label(*v).starts_with("(1,")).collect();
        let row2: Vec<usize> = (0..9).filter(|v| g.label(*v).starts_with("(2,")).collect();
        for &u in &row1 {
            for &v in &row2 {
                assert!(g.has_edge(u, v));
            }
        }
        let mut subset = row1.clone();
        subset.extend(&row2);
        let sub = g.induced_subgraph(&subset).unwrap();
        assert_eq!(sub.order(), 6);
        assert!(sub.size() >= 9);
        assert!(matches!(
            g.induced_subgraph(&[]),
            Err(GraphError::EmptySubset)
        ));
    }

    #[test]
    fn girth_values() {
        assert_eq!(complete_graph(4).girth(), Some(3));
        assert_eq!(complete_bipartite(3, 3).girth(), Some(4));
        assert_eq!(cycle_graph(7).girth(), Some(7));
        assert_eq!(Graph::empty(3).girth(), None);
        let tree = Graph::from_edges(4, &[(0, 1), (1, 2), (1, 3)]);
        assert_eq!(tree.girth(), None);
    }

    #[test]
    fn edge_list_round_trip() {
        let g = total_graph(&ring("Z2xZ4"));
        let text = g.to_edge_list();
        let back = Graph::from_edge_list(&text).unwrap();
        assert_eq!(g, back);
        // Isolated vertices survive via the header.
        let f9 = total_graph(&ring("F9"));
        let back = Graph::from_edge_list(&f9.to_edge_list()).unwrap();
        assert_eq!(back.order(), 9);
        assert_eq!(back, f9);
    }

    #[test]
    fn edge_list_errors_carry_line_numbers() {
        let err = Graph::from_edge_list("0 1\n2\n").unwrap_err();
        match err {
            GraphError::MalformedLine { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn dot_export_mentions_every_vertex_and_edge() {
        let g = cycle_graph(4);
        let dot = g.to_dot();
        assert_eq!(dot.matches(" -- ").count(), 4);
        assert_eq!(dot.matches("label=").count(), 4);
    }

    #[test]
    fn total_graph_edge_count_matches_degree_lemma_for_z8() {
        let r = build_ring(&RingSpec::modular(8)).unwrap();
        let g = total_graph(&r);
        // 2 is a zero-divisor, so the graph is (|Z|-1)-regular.
        assert!(g.degree_sequence().iter().all(|&d| d == 3));
    }
}
