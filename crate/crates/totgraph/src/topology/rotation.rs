//! Rotation systems and face tracing.
//!
//! A rotation system fixes a cyclic order of neighbors at every vertex and
//! thereby a cellular embedding in an orientable surface. Walking each
//! directed edge by the rule "leave `v` along the successor of the arriving
//! edge in `v`'s cyclic order" partitions the `2E` directed edges into face
//! walks; Euler's formula `V - E + F = 2 - 2g` then reads off the genus.

use std::fmt::Write as _;

use super::TopologyError;
use crate::graph::Graph;

/// Cyclic neighbor order at every vertex of a graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RotationSystem {
    order: Vec<Vec<usize>>,
}

impl RotationSystem {
    pub fn new(order: Vec<Vec<usize>>) -> Self {
        RotationSystem { order }
    }

    /// The rotation listing each adjacency set in ascending order; any
    /// rotation embeds the graph in *some* surface, so this doubles as a
    /// cheap upper-bound certificate.
    pub fn default_for(g: &Graph) -> Self {
        RotationSystem {
            order: (0..g.order()).map(|v| g.neighbors(v).collect()).collect(),
        }
    }

    pub fn order_at(&self, v: usize) -> &[usize] {
        &self.order[v]
    }

    pub fn vertex_count(&self) -> usize {
        self.order.len()
    }

    /// Checks that every vertex's list is a permutation of its neighbors.
    pub fn validate(&self, g: &Graph) -> Result<(), TopologyError> {
        if self.order.len() != g.order() {
            return Err(TopologyError::MalformedRotation(format!(
                "{} vertices in rotation, {} in graph",
                self.order.len(),
                g.order()
            )));
        }
        for v in 0..g.order() {
            let mut listed: Vec<usize> = self.order[v].clone();
            listed.sort_unstable();
            let mut expected: Vec<usize> = g.neighbors(v).collect();
            expected.sort_unstable();
            if listed != expected {
                return Err(TopologyError::MalformedRotation(format!(
                    "vertex {v}: rotation is not a permutation of its neighbors"
                )));
            }
            let mut dedup = listed.clone();
            dedup.dedup();
            if dedup.len() != listed.len() {
                return Err(TopologyError::MalformedRotation(format!(
                    "vertex {v}: repeated neighbor in rotation"
                )));
            }
        }
        Ok(())
    }

    /// Face walks as sequences of directed edges `(tail, head)`.
    ///
    /// Every directed edge lies in exactly one walk. Isolated vertices
    /// contribute no walks here; genus computations account for them.
    pub fn trace_faces(&self) -> Vec<Vec<(usize, usize)>> {
        let n = self.order.len();
        let mut pos = vec![std::collections::HashMap::new(); n];
        for v in 0..n {
            for (i, &w) in self.order[v].iter().enumerate() {
                pos[v].insert(w, i);
            }
        }
        let mut visited: Vec<Vec<bool>> = self.order.iter().map(|l| vec![false; l.len()]).collect();
        let mut faces = Vec::new();
        for sv in 0..n {
            for si in 0..self.order[sv].len() {
                if visited[sv][si] {
                    continue;
                }
                let mut walk = Vec::new();
                let (mut v, mut i) = (sv, si);
                loop {
                    visited[v][i] = true;
                    let head = self.order[v][i];
                    walk.push((v, head));
                    let j = pos[head][&v];
                    let next = (j + 1) % self.order[head].len();
                    v = head;
                    i = next;
                    if (v, i) == (sv, si) {
                        break;
                    }
                }
                faces.push(walk);
            }
        }
        faces
    }

    /// One line per vertex: `v: n1 n2 ... nk` in cyclic order.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        for (v, nbrs) in self.order.iter().enumerate() {
            let list: Vec<String> = nbrs.iter().map(|w| w.to_string()).collect();
            let _ = writeln!(out, "{v}: {}", list.join(" "));
        }
        out
    }

    /// Parses the line format written by [`RotationSystem::serialize`];
    /// `#` comments and blank lines are ignored.
    pub fn parse(text: &str) -> Result<Self, TopologyError> {
        let mut entries: Vec<(usize, Vec<usize>)> = Vec::new();
        for raw in text.lines() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (v, rest) = line.split_once(':').ok_or_else(|| {
                TopologyError::MalformedRotation(format!("missing ':' in line '{line}'"))
            })?;
            let v: usize = v.trim().parse().map_err(|_| {
                TopologyError::MalformedRotation(format!("bad vertex id '{}'", v.trim()))
            })?;
            let nbrs: Result<Vec<usize>, _> = rest
                .split_whitespace()
                .map(|t| {
                    t.parse::<usize>().map_err(|_| {
                        TopologyError::MalformedRotation(format!("bad neighbor '{t}'"))
                    })
                })
                .collect();
            entries.push((v, nbrs?));
        }
        let n = entries.iter().map(|(v, _)| v + 1).max().unwrap_or(0);
        let mut order = vec![Vec::new(); n];
        for (v, nbrs) in entries {
            order[v] = nbrs;
        }
        Ok(RotationSystem { order })
    }

    /// Restricts to a vertex subset (for per-component verification).
    /// `ids` maps new indices to old ones; neighbors must stay inside.
    pub fn restrict(&self, ids: &[usize]) -> RotationSystem {
        let mut index = std::collections::HashMap::new();
        for (i, &v) in ids.iter().enumerate() {
            index.insert(v, i);
        }
        RotationSystem {
            order: ids
                .iter()
                .map(|&v| self.order[v].iter().map(|w| index[w]).collect())
                .collect(),
        }
    }
}

/// Genus of a connected graph under a rotation system, by face tracing and
/// Euler's formula.
pub fn verify_embedding(g: &Graph, rho: &RotationSystem) -> Result<usize, TopologyError> {
    if !g.is_connected() {
        return Err(TopologyError::DisconnectedInput);
    }
    rho.validate(g)?;
    let v = g.order();
    let e = g.size();
    let f = if e == 0 { 1 } else { rho.trace_faces().len() };
    let chi = 2i64 - v as i64 + e as i64 - f as i64;
    if chi < 0 || chi % 2 != 0 {
        return Err(TopologyError::MalformedRotation(format!(
            "face trace gives Euler characteristic {}, impossible for an orientable surface",
            2 - chi
        )));
    }
    Ok((chi / 2) as usize)
}

/// Genus of an arbitrary graph under a rotation system: verifies each
/// connected component separately and adds the genera.
pub fn verify_embedding_by_component(
    g: &Graph,
    rho: &RotationSystem,
) -> Result<usize, TopologyError> {
    rho.validate(g)?;
    let mut total = 0;
    for (comp, ids) in g.connected_components() {
        total += verify_embedding(&comp, &rho.restrict(&ids))?;
    }
    Ok(total)
}
