//! Graph generators: named families, random trees, and exhaustive
//! enumeration of small unlabelled trees.

use std::collections::BTreeSet;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::graph::Graph;

/// Environment variable that overrides the default seed used by tests and
/// benchmarks that draw random graphs or states.
pub const SEED_ENV: &str = "MATCHGRAPH_SEED";
pub const DEFAULT_SEED: u64 = 0x5eed_2024;

pub fn seed_from_env() -> u64 {
    std::env::var(SEED_ENV)
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_SEED)
}

pub fn seeded_rng() -> StdRng {
    StdRng::seed_from_u64(seed_from_env())
}

/// Star with a centre `0` and `leaves` leaves `1..=leaves`.
pub fn star(leaves: usize) -> Graph {
    Graph::new(leaves + 1, (1..=leaves).map(|v| (0, v))).expect("star is valid")
}

/// Complete binary tree with `levels` levels (`2^levels - 1` vertices),
/// heap-indexed: the children of `v` are `2v + 1` and `2v + 2`.
pub fn complete_binary_tree(levels: u32) -> Graph {
    let n = (1usize << levels) - 1;
    Graph::new(n, (1..n).map(|v| ((v - 1) / 2, v))).expect("binary tree is valid")
}

/// `legs` paths of `leg_len` vertices hanging off a common centre `0`.
pub fn spider(legs: usize, leg_len: usize) -> Graph {
    let mut edges = Vec::new();
    for leg in 0..legs {
        let base = 1 + leg * leg_len;
        edges.push((0, base));
        for k in 1..leg_len {
            edges.push((base + k - 1, base + k));
        }
    }
    Graph::new(1 + legs * leg_len, edges).expect("spider is valid")
}

/// A path `0..spine` with one extra vertex attached to spine vertex `at`.
pub fn path_with_pendant(spine: usize, at: usize) -> Graph {
    let mut edges: Vec<_> = (1..spine).map(|v| (v - 1, v)).collect();
    edges.push((at, spine));
    Graph::new(spine + 1, edges).expect("pendant path is valid")
}

/// A path `0..spine` where every spine vertex carries `per_vertex` leaves.
pub fn caterpillar(spine: usize, per_vertex: usize) -> Graph {
    let mut edges: Vec<_> = (1..spine).map(|v| (v - 1, v)).collect();
    let mut next = spine;
    for s in 0..spine {
        for _ in 0..per_vertex {
            edges.push((s, next));
            next += 1;
        }
    }
    Graph::new(next, edges).expect("caterpillar is valid")
}

pub fn complete_graph(n: usize) -> Graph {
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    Graph::new(n, edges).expect("complete graph is valid")
}

/// `rows x cols` grid, vertex `r * cols + c`.
pub fn grid(rows: usize, cols: usize) -> Graph {
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            let v = r * cols + c;
            if c + 1 < cols {
                edges.push((v, v + 1));
            }
            if r + 1 < rows {
                edges.push((v, v + cols));
            }
        }
    }
    Graph::new(rows * cols, edges).expect("grid is valid")
}

/// Uniformly random labelled tree on `n` vertices via a Prüfer sequence.
pub fn random_tree<R: Rng>(n: usize, rng: &mut R) -> Graph {
    if n <= 2 {
        return Graph::path(n.max(1));
    }
    let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &s in &seq {
        degree[s] += 1;
    }
    let mut leaves: BTreeSet<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &s in &seq {
        let leaf = *leaves.iter().next().unwrap();
        leaves.remove(&leaf);
        edges.push((leaf, s));
        degree[s] -= 1;
        if degree[s] == 1 {
            leaves.insert(s);
        }
    }
    let rest: Vec<usize> = leaves.into_iter().collect();
    edges.push((rest[0], rest[1]));
    Graph::new(n, edges).expect("Prüfer decoding gives a tree")
}

/// Random connected graph: a random spanning tree plus `extra` random edges.
pub fn random_connected<R: Rng>(n: usize, extra: usize, rng: &mut R) -> Graph {
    let tree = random_tree(n, rng);
    let mut edges: BTreeSet<(usize, usize)> = tree.edges().iter().copied().collect();
    let max_edges = n * (n - 1) / 2;
    let target = (edges.len() + extra).min(max_edges);
    while edges.len() < target {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u != v {
            edges.insert((u.min(v), u.max(v)));
        }
    }
    Graph::new(n, edges).expect("random graph is valid")
}

fn centers(t: &Graph) -> Vec<usize> {
    let n = t.n();
    if n <= 2 {
        return (0..n).collect();
    }
    let mut degree: Vec<usize> = (0..n).map(|v| t.degree(v)).collect();
    let mut layer: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for &v in &layer {
            for &w in t.neighbors(v) {
                if degree[w] > 1 {
                    degree[w] -= 1;
                    if degree[w] == 1 {
                        next.push(w);
                    }
                }
            }
            degree[v] = 0;
        }
        layer = next;
    }
    layer.sort_unstable();
    layer
}

fn rooted_code(t: &Graph, v: usize, parent: usize) -> String {
    let mut children: Vec<String> = t
        .neighbors(v)
        .iter()
        .filter(|&&w| w != parent)
        .map(|&w| rooted_code(t, w, v))
        .collect();
    children.sort();
    format!("({})", children.concat())
}

/// Isomorphism-invariant string for a tree.
pub fn canonical_form(t: &Graph) -> String {
    centers(t)
        .into_iter()
        .map(|c| rooted_code(t, c, usize::MAX))
        .min()
        .unwrap_or_default()
}

/// One representative of every unlabelled tree on `n` vertices.
pub fn all_trees(n: usize) -> Vec<Graph> {
    let mut level = vec![Graph::path(1)];
    for size in 2..=n {
        let mut seen = BTreeSet::new();
        let mut next = Vec::new();
        for t in &level {
            for v in 0..t.n() {
                let mut edges = t.edges().to_vec();
                edges.push((v, size - 1));
                let grown = Graph::new(size, edges).expect("leaf addition is valid");
                if seen.insert(canonical_form(&grown)) {
                    next.push(grown);
                }
            }
        }
        level = next;
    }
    level
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unlabelled_tree_counts() {
        let expected = [1, 1, 1, 2, 3, 6, 11, 23, 47, 106];
        for (i, &count) in expected.iter().enumerate() {
            let trees = all_trees(i + 1);
            assert_eq!(trees.len(), count, "n = {}", i + 1);
            assert!(trees.iter().all(Graph::is_tree));
        }
    }

    #[test]
    fn canonical_form_ignores_labels() {
        let a = Graph::new(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let b = Graph::new(4, [(2, 0), (0, 3), (3, 1)]).unwrap();
        assert_eq!(canonical_form(&a), canonical_form(&b));
        assert_ne!(canonical_form(&a), canonical_form(&star(3)));
    }

    #[test]
    fn family_shapes() {
        let bt = complete_binary_tree(4);
        assert_eq!(bt.n(), 15);
        assert_eq!(bt.leaves().len(), 8);
        assert!(bt.is_tree());
        assert_eq!(star(7).degree(0), 7);
        assert_eq!(spider(3, 4).n(), 13);
        assert_eq!(caterpillar(5, 2).n(), 15);
        assert_eq!(grid(3, 4).edges().len(), 17);
        let mut rng = StdRng::seed_from_u64(7);
        for n in 1..40 {
            assert!(random_tree(n, &mut rng).is_tree());
            assert!(random_connected(n, 5, &mut rng).is_connected());
        }
    }
}
