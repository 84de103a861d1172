//! Small-graph isomorphism with certificates.
//!
//! Color refinement (degree, then iterated neighborhood multisets) prunes
//! the search; exact backtracking over the refined classes finishes it, so
//! the answer is complete, not heuristic. Every positive answer returns a
//! vertex bijection that callers can re-check with [`verify_certificate`].

use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use crate::graph::Graph;

/// Documented size cap: refinement plus backtracking stays comfortable well
/// past the ring sweep's largest total graphs (64 vertices).
pub const ISO_SIZE_CAP: usize = 64;

#[derive(Debug, Error)]
pub enum IsoError {
    #[error("graph has {0} vertices, beyond the isomorphism cap of {ISO_SIZE_CAP}")]
    SizeCapExceeded(usize),
}

/// A vertex bijection witnessing isomorphism: `map[v]` in the second graph
/// corresponds to `v` in the first.
#[derive(Clone, Debug)]
pub struct IsoCertificate {
    pub map: Vec<usize>,
}

impl IsoCertificate {
    /// The inverse bijection (second graph onto the first).
    pub fn inverted(&self) -> IsoCertificate {
        let mut inv = vec![0; self.map.len()];
        for (v, &w) in self.map.iter().enumerate() {
            inv[w] = v;
        }
        IsoCertificate { map: inv }
    }
}

/// Checks that a claimed bijection maps edges onto edges and non-edges onto
/// non-edges.
pub fn verify_certificate(g1: &Graph, g2: &Graph, cert: &IsoCertificate) -> bool {
    let n = g1.order();
    if g2.order() != n || cert.map.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &w in &cert.map {
        if w >= n || seen[w] {
            return false;
        }
        seen[w] = true;
    }
    for u in 0..n {
        for v in u + 1..n {
            if g1.has_edge(u, v) != g2.has_edge(cert.map[u], cert.map[v]) {
                return false;
            }
        }
    }
    true
}

/// Decides isomorphism, returning a certificate when the graphs match.
pub fn is_isomorphic(g1: &Graph, g2: &Graph) -> Result<Option<IsoCertificate>, IsoError> {
    let n = g1.order();
    if n > ISO_SIZE_CAP || g2.order() > ISO_SIZE_CAP {
        return Err(IsoError::SizeCapExceeded(n.max(g2.order())));
    }
    if g2.order() != n || g1.size() != g2.size() || g1.degree_sequence() != g2.degree_sequence() {
        return Ok(None);
    }

    // Match connected components between the graphs, grouped by a cheap
    // invariant key; within a group, backtrack over pairings with memoized
    // per-pair isomorphism tests.
    let comps1 = g1.connected_components();
    let comps2 = g2.connected_components();
    if comps1.len() != comps2.len() {
        return Ok(None);
    }
    let key = |g: &Graph| (g.order(), g.size(), g.degree_sequence());
    let mut groups: BTreeMap<_, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
    for (i, (c, _)) in comps1.iter().enumerate() {
        groups.entry(key(c)).or_default().0.push(i);
    }
    for (j, (c, _)) in comps2.iter().enumerate() {
        groups.entry(key(c)).or_default().1.push(j);
    }
    for (left, right) in groups.values() {
        if left.len() != right.len() {
            return Ok(None);
        }
    }

    let mut pair_cache: HashMap<(usize, usize), Option<Vec<usize>>> = HashMap::new();
    let mut assignment: Vec<(usize, usize, Vec<usize>)> = Vec::new();
    for (left, right) in groups.values() {
        let mut used = vec![false; right.len()];
        let mut partial: Vec<(usize, usize, Vec<usize>)> = Vec::new();
        if !match_group(
            &comps1,
            &comps2,
            left,
            right,
            0,
            &mut used,
            &mut partial,
            &mut pair_cache,
        ) {
            return Ok(None);
        }
        assignment.extend(partial);
    }

    let mut map = vec![usize::MAX; n];
    for (i, j, comp_map) in assignment {
        let (_, ref ids1) = comps1[i];
        let (_, ref ids2) = comps2[j];
        for (local, &orig) in ids1.iter().enumerate() {
            map[orig] = ids2[comp_map[local]];
        }
    }
    debug_assert!(map.iter().all(|&w| w != usize::MAX));
    Ok(Some(IsoCertificate { map }))
}

#[allow(clippy::too_many_arguments)]
fn match_group(
    comps1: &[(Graph, Vec<usize>)],
    comps2: &[(Graph, Vec<usize>)],
    left: &[usize],
    right: &[usize],
    k: usize,
    used: &mut [bool],
    partial: &mut Vec<(usize, usize, Vec<usize>)>,
    cache: &mut HashMap<(usize, usize), Option<Vec<usize>>>,
) -> bool {
    if k == left.len() {
        return true;
    }
    let i = left[k];
    for (r, &j) in right.iter().enumerate() {
        if used[r] {
            continue;
        }
        let entry = cache
            .entry((i, j))
            .or_insert_with(|| connected_iso(&comps1[i].0, &comps2[j].0));
        if let Some(m) = entry.clone() {
            used[r] = true;
            partial.push((i, j, m));
            if match_group(comps1, comps2, left, right, k + 1, used, partial, cache) {
                return true;
            }
            partial.pop();
            used[r] = false;
        }
    }
    false
}

/// Isomorphism between two connected graphs of equal order.
fn connected_iso(g1: &Graph, g2: &Graph) -> Option<Vec<usize>> {
    let n = g1.order();
    if g2.order() != n || g1.size() != g2.size() {
        return None;
    }
    let (c1, c2) = refine_pair(g1, g2)?;
    let mut map = vec![usize::MAX; n];
    let mut rmap = vec![usize::MAX; n];
    if extend(g1, g2, &c1, &c2, &mut map, &mut rmap, 0) {
        Some(map)
    } else {
        None
    }
}

/// Joint color refinement. Both graphs share the signature-to-color table so
/// colors are comparable across them; diverging histograms end the search.
fn refine_pair(g1: &Graph, g2: &Graph) -> Option<(Vec<usize>, Vec<usize>)> {
    let mut c1: Vec<usize> = (0..g1.order()).map(|v| g1.degree(v)).collect();
    let mut c2: Vec<usize> = (0..g2.order()).map(|v| g2.degree(v)).collect();
    loop {
        let sig = |g: &Graph, c: &[usize], v: usize| {
            let mut ns: Vec<usize> = g.neighbors(v).map(|w| c[w]).collect();
            ns.sort_unstable();
            (c[v], ns)
        };
        let mut table: BTreeMap<(usize, Vec<usize>), usize> = BTreeMap::new();
        let sigs1: Vec<_> = (0..g1.order()).map(|v| sig(g1, &c1, v)).collect();
        let sigs2: Vec<_> = (0..g2.order()).map(|v| sig(g2, &c2, v)).collect();
        for s in sigs1.iter().chain(sigs2.iter()) {
            let next = table.len();
            table.entry(s.clone()).or_insert(next);
        }
        let n1: Vec<usize> = sigs1.iter().map(|s| table[s]).collect();
        let n2: Vec<usize> = sigs2.iter().map(|s| table[s]).collect();
        let mut h1 = vec![0usize; table.len()];
        let mut h2 = vec![0usize; table.len()];
        for &c in &n1 {
            h1[c] += 1;
        }
        for &c in &n2 {
            h2[c] += 1;
        }
        if h1 != h2 {
            return None;
        }
        if n1 == c1 && n2 == c2 {
            return Some((c1, c2));
        }
        c1 = n1;
        c2 = n2;
    }
}

fn extend(
    g1: &Graph,
    g2: &Graph,
    c1: &[usize],
    c2: &[usize],
    map: &mut [usize],
    rmap: &mut [usize],
    depth: usize,
) -> bool {
    let n = g1.order();
    if depth == n {
        return true;
    }
    // Most-constrained next vertex: most already-mapped neighbors, then
    // smallest color class, then index. Deterministic.
    let v = (0..n)
        .filter(|&v| map[v] == usize::MAX)
        .min_by_key(|&v| {
            let mapped = g1.neighbors(v).filter(|&w| map[w] != usize::MAX).count();
            let class = c1.iter().filter(|&&c| c == c1[v]).count();
            (usize::MAX - mapped, class, v)
        })
        .unwrap();
    for w in 0..n {
        if rmap[w] != usize::MAX || c2[w] != c1[v] {
            continue;
        }
        let consistent = (0..n).all(|u| {
            map[u] == usize::MAX || g1.has_edge(v, u) == g2.has_edge(w, map[u])
        });
        if !consistent {
            continue;
        }
        map[v] = w;
        rmap[w] = v;
        if extend(g1, g2, c1, c2, map, rmap, depth + 1) {
            return true;
        }
        map[v] = usize::MAX;
        rmap[w] = usize::MAX;
    }
    false
}
