//! Interaction graphs and the tree structures that drive compilation.
//!
//! A [`Graph`] is a simple undirected graph on vertices `0..n`. Paths and
//! cycles are the classically simulable cases; every other connected graph
//! contains a spanning tree with a branching point, and the compiler works
//! entirely inside that tree. The longest path and the leaf set of the tree
//! decide which compilation strategy gets used: one of them always has more
//! than `√n` vertices.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph has no vertices")]
    Empty,
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("graph is not connected")]
    Disconnected,
    #[error("no vertex of degree three or more (graph is a path or a cycle)")]
    NoBranchVertex,
    #[error("graph is not a tree")]
    NotATree,
    #[error("tree is a path")]
    IsAPath,
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Undirected simple graph on vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    // normalized as (min, max), sorted
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Build a graph, rejecting loops, parallel edges and out-of-range
    /// endpoints. Connectivity is not required here; see [`classify`].
    pub fn new<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if !set.insert((u.min(v), u.max(v))) {
                return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
            }
        }
        let edges: Vec<_> = set.into_iter().collect();
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Self { n, edges, adj })
    }

    /// The path `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Self {
        Self::new(n, (1..n).map(|v| (v - 1, v))).expect("path graph is valid")
    }

    /// The cycle `0 - 1 - ... - (n-1) - 0`. Needs `n >= 3`.
    pub fn cycle(n: usize) -> Result<Self, GraphError> {
        if n < 3 {
            return Err(GraphError::Parse {
                line: 0,
                msg: format!("a simple cycle needs at least 3 vertices, got {n}"),
            });
        }
        Self::new(n, (0..n).map(|v| (v, (v + 1) % n)))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn is_connected(&self) -> bool {
        self.bfs(0).0.iter().all(Option::is_some)
    }

    pub fn is_tree(&self) -> bool {
        self.edges.len() + 1 == self.n && self.is_connected()
    }

    /// Degree-one vertices in ascending order.
    pub fn leaves(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| self.degree(v) == 1).collect()
    }

    /// Breadth-first distances and parents from `src`.
    pub fn bfs(&self, src: usize) -> (Vec<Option<usize>>, Vec<Option<usize>>) {
        let mut dist = vec![None; self.n];
        let mut parent = vec![None; self.n];
        let mut queue = VecDeque::from([src]);
        dist[src] = Some(0);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap();
            for &w in &self.adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    parent[w] = Some(u);
                    queue.push_back(w);
                }
            }
        }
        (dist, parent)
    }

    /// Vertex sequence of the shortest path from `a` to `b` (unique in a tree).
    /// Returns `None` if `b` is unreachable.
    pub fn shortest_path(&self, a: usize, b: usize) -> Option<Vec<usize>> {
        let (_, parent) = self.bfs(b);
        if a != b && parent[a].is_none() {
            return None;
        }
        let mut path = vec![a];
        let mut cur = a;
        while cur != b {
            cur = parent[cur]?;
            path.push(cur);
        }
        Some(path)
    }

    /// Parse the plain-text graph format: a header line `n <count>` followed
    /// by one `u v` edge per line. `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self, GraphError> {
        let mut n = None;
        let mut edges = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let fields: Vec<&str> = content.split_whitespace().collect();
            let err = |msg: &str| GraphError::Parse {
                line,
                msg: msg.to_string(),
            };
            match n {
                None => {
                    if fields.len() != 2 || fields[0] != "n" {
                        return Err(err("expected header `n <count>`"));
                    }
                    n = Some(
                        fields[1]
                            .parse::<usize>()
                            .map_err(|_| err("vertex count is not a non-negative integer"))?,
                    );
                }
                Some(count) => {
                    if fields.len() != 2 {
                        return Err(err("expected an edge `u v`"));
                    }
                    let parse = |s: &str| {
                        s.parse::<usize>()
                            .map_err(|_| err("vertex index is not a non-negative integer"))
                    };
                    let (u, v) = (parse(fields[0])?, parse(fields[1])?);
                    for w in [u, v] {
                        if w >= count {
                            return Err(err(&format!("vertex {w} out of range for n = {count}")));
                        }
                    }
                    if u == v {
                        return Err(err(&format!("self-loop at vertex {u}")));
                    }
                    let key = (u.min(v), u.max(v));
                    if edges.contains(&key) {
                        return Err(err(&format!("duplicate edge {}-{}", key.0, key.1)));
                    }
                    edges.push(key);
                }
            }
        }
        let n = n.ok_or(GraphError::Parse {
            line: 0,
            msg: "missing header `n <count>`".into(),
        })?;
        Self::new(n, edges)
    }

    /// Serialize to the plain-text format accepted by [`Graph::parse`].
    pub fn to_text(&self) -> String {
        let mut out = format!("n {}\n", self.n);
        for &(u, v) in &self.edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GraphClass {
    Path,
    Cycle,
    Other,
}

impl GraphClass {
    pub fn as_str(self) -> &'static str {
        match self {
            GraphClass::Path => "path",
            GraphClass::Cycle => "cycle",
            GraphClass::Other => "other",
        }
    }

    /// Paths and cycles admit efficient classical simulation.
    pub fn is_simulable(self) -> bool {
        !matches!(self, GraphClass::Other)
    }
}

/// Path, cycle, or neither. A single vertex and a single edge are paths.
pub fn classify(g: &Graph) -> Result<GraphClass, GraphError> {
    if !g.is_connected() {
        return Err(GraphError::Disconnected);
    }
    let max_deg = (0..g.n()).map(|v| g.degree(v)).max().unwrap_or(0);
    if max_deg <= 2 {
        if g.edges().len() + 1 == g.n() {
            return Ok(GraphClass::Path);
        }
        if g.edges().len() == g.n() {
            return Ok(GraphClass::Cycle);
        }
    }
    Ok(GraphClass::Other)
}

/// Spanning tree that keeps every edge at the lowest-index vertex of degree
/// at least three, grown from there by breadth-first search.
pub fn spanning_tree_with_branch(g: &Graph) -> Result<Graph, GraphError> {
    if !g.is_connected() {
        return Err(GraphError::Disconnected);
    }
    let root = (0..g.n())
        .find(|&v| g.degree(v) >= 3)
        .ok_or(GraphError::NoBranchVertex)?;
    let (_, parent) = g.bfs(root);
    let edges = (0..g.n()).filter_map(|v| parent[v].map(|p| (p, v)));
    Graph::new(g.n(), edges)
}

fn farthest(dist: &[Option<usize>]) -> usize {
    let mut best = 0;
    for (v, d) in dist.iter().enumerate() {
        if d.unwrap_or(0) > dist[best].unwrap_or(0) {
            best = v;
        }
    }
    best
}

/// A longest path in a tree, found by double breadth-first search.
///
/// The returned sequence starts at the smallest-index vertex among those
/// farthest from vertex 0 and ends at the smallest-index vertex farthest from
/// that start. Its length in *vertices* is the `p` of the leaf/path dichotomy.
pub fn longest_path(t: &Graph) -> Result<Vec<usize>, GraphError> {
    if !t.is_tree() {
        return Err(GraphError::NotATree);
    }
    let start = farthest(&t.bfs(0).0);
    let end = farthest(&t.bfs(start).0);
    Ok(t.shortest_path(start, end).expect("tree is connected"))
}

/// Summary of a spanning tree used for strategy selection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeAnalysis {
    pub tree: Graph,
    pub longest_path: Vec<usize>,
    pub leaves: Vec<usize>,
    pub branch_points: Vec<usize>,
}

impl TreeAnalysis {
    pub fn new(tree: Graph) -> Result<Self, GraphError> {
        let longest_path = longest_path(&tree)?;
        let leaves = tree.leaves();
        let branch_points = (0..tree.n()).filter(|&v| tree.degree(v) >= 3).collect();
        Ok(Self {
            tree,
            longest_path,
            leaves,
            branch_points,
        })
    }

    /// Number of vertices on the longest path.
    pub fn p(&self) -> usize {
        self.longest_path.len()
    }

    /// Number of leaves.
    pub fn l(&self) -> usize {
        self.leaves.len()
    }

    pub fn is_path(&self) -> bool {
        self.branch_points.is_empty()
    }
}

/// Partition of a non-path tree produced by repeatedly deleting the strip
/// between a leaf and its nearest branching point, then the remaining path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StripDecomposition {
    pub n: usize,
    pub leaves: usize,
    pub longest_path: usize,
    /// Leaf strips in deletion order; there are `leaves - 2` of them.
    pub strips: Vec<Vec<usize>>,
    /// The path left after all leaf strips are gone.
    pub final_path: Vec<usize>,
}

impl StripDecomposition {
    /// Every strip in deletion order, the final path last.
    pub fn all(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.strips.iter().chain(std::iter::once(&self.final_path))
    }

    /// `(l - 2)(p - 1) + p`, the vertex budget the deletion process certifies.
    pub fn bound(&self) -> usize {
        (self.leaves - 2) * (self.longest_path - 1) + self.longest_path
    }

    /// Checks the strips partition the vertex set, respect their size limits,
    /// and that `n <= (l - 2)(p - 1) + p`.
    pub fn certifies(&self) -> bool {
        let mut seen = vec![false; self.n];
        for strip in self.all() {
            for &v in strip {
                if v >= self.n || seen[v] {
                    return false;
                }
                seen[v] = true;
            }
        }
        seen.iter().all(|&s| s)
            && self.strips.len() + 2 == self.leaves
            && self.strips.iter().all(|s| s.len() < self.longest_path)
            && self.final_path.len() <= self.longest_path
            && self.n <= self.bound()
    }
}

pub fn strip_decomposition(t: &Graph) -> Result<StripDecomposition, GraphError> {
    let analysis = TreeAnalysis::new(t.clone())?;
    if analysis.is_path() {
        return Err(GraphError::IsAPath);
    }
    let n = t.n();
    let mut alive = vec![true; n];
    let mut degree: Vec<usize> = (0..n).map(|v| t.degree(v)).collect();
    let live_neighbors =
        |v: usize, alive: &[bool]| -> Vec<usize> { t.neighbors(v).iter().copied().filter(|&w| alive[w]).collect() };
    let mut strips = Vec::new();
    loop {
        let leaves: Vec<usize> = (0..n).filter(|&v| alive[v] && degree[v] == 1).collect();
        if leaves.len() <= 2 {
            break;
        }
        let mut strip = vec![leaves[0]];
        let mut prev = leaves[0];
        let mut cur = live_neighbors(prev, &alive)[0];
        while degree[cur] == 2 {
            strip.push(cur);
            let next = live_neighbors(cur, &alive)
                .into_iter()
                .find(|&w| w != prev)
                .expect("degree-two vertex has a second neighbor");
            prev = cur;
            cur = next;
        }
        // `cur` is the branching point; it loses one neighbor.
        degree[cur] -= 1;
        for &v in &strip {
            alive[v] = false;
        }
        strips.push(strip);
    }
    let remaining: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
    let start = remaining
        .iter()
        .copied()
        .find(|&v| degree[v] <= 1)
        .expect("remaining tree is a path");
    let mut final_path = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    loop {
        let next = live_neighbors(cur, &alive).into_iter().find(|&w| w != prev);
        match next {
            Some(w) => {
                final_path.push(w);
                prev = cur;
                cur = w;
            }
            None => break,
        }
    }
    Ok(StripDecomposition {
        n,
        leaves: analysis.l(),
        longest_path: analysis.p(),
        strips,
        final_path,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::new(n, edges.iter().copied()).unwrap()
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(&Graph::path(5)).unwrap(), GraphClass::Path);
        assert_eq!(classify(&Graph::cycle(5).unwrap()).unwrap(), GraphClass::Cycle);
        let fig2 = g(5, &[(0, 1), (1, 2), (2, 3), (1, 4)]);
        assert_eq!(classify(&fig2).unwrap(), GraphClass::Other);
        assert_eq!(classify(&Graph::path(1)).unwrap(), GraphClass::Path);
        assert_eq!(classify(&Graph::path(2)).unwrap(), GraphClass::Path);
    }

    #[test]
    fn classify_rejects_disconnected() {
        let two_edges = g(4, &[(0, 1), (2, 3)]);
        assert_eq!(classify(&two_edges), Err(GraphError::Disconnected));
        // a triangle plus an isolated vertex has all degrees <= 2 but is not a cycle
        let tri = g(4, &[(0, 1), (1, 2), (2, 0)]);
        assert_eq!(classify(&tri), Err(GraphError::Disconnected));
    }

    #[test]
    fn constructor_rejects_bad_edges() {
        assert_eq!(Graph::new(3, [(1, 1)]), Err(GraphError::SelfLoop(1)));
        assert_eq!(Graph::new(3, [(0, 1), (1, 0)]), Err(GraphError::DuplicateEdge(0, 1)));
        assert_eq!(
            Graph::new(3, [(0, 3)]),
            Err(GraphError::VertexOutOfRange { vertex: 3, n: 3 })
        );
    }

    #[test]
    fn spanning_tree_keeps_branch_edges() {
        let tri_pendant = g(4, &[(0, 1), (1, 2), (2, 0), (0, 3)]);
        let t = spanning_tree_with_branch(&tri_pendant).unwrap();
        assert!(t.is_tree());
        for e in [(0, 1), (0, 2), (0, 3)] {
            assert!(t.has_edge(e.0, e.1));
        }
        let k4 = g(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        let star = spanning_tree_with_branch(&k4).unwrap();
        assert!(star.is_tree());
        assert_eq!(star.degree(0), 3);

        let tree = g(6, &[(0, 1), (1, 2), (1, 3), (3, 4), (4, 5)]);
        assert_eq!(spanning_tree_with_branch(&tree).unwrap(), tree);

        assert_eq!(
            spanning_tree_with_branch(&Graph::cycle(6).unwrap()),
            Err(GraphError::NoBranchVertex)
        );
    }

    #[test]
    fn longest_path_on_star_and_errors() {
        let star = g(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]);
        let p = longest_path(&star).unwrap();
        assert_eq!(p.len(), 3);
        assert_eq!(p[1], 0);
        assert_eq!(longest_path(&Graph::cycle(4).unwrap()), Err(GraphError::NotATree));
        assert_eq!(longest_path(&Graph::path(1)).unwrap(), vec![0]);
    }

    #[test]
    fn strip_decomposition_of_star() {
        let star = g(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]);
        let d = strip_decomposition(&star).unwrap();
        assert_eq!(d.strips, vec![vec![1], vec![2]]);
        assert_eq!(d.final_path.len(), 3);
        assert_eq!(d.bound(), 7);
        assert!(d.certifies());
        assert_eq!(strip_decomposition(&Graph::path(4)), Err(GraphError::IsAPath));
    }

    #[test]
    fn parse_round_trip_and_errors() {
        let text = "# demo\nn 5\n0 1\n1 2 # spine\n2 3\n\n1 4\n";
        let graph = Graph::parse(text).unwrap();
        assert_eq!(graph.edges().len(), 4);
        assert_eq!(Graph::parse(&graph.to_text()).unwrap(), graph);

        for bad in [
            "n 3\n0 0\n",
            "n 3\n0 1\n1 0\n",
            "n 3\n0 3\n",
            "0 1\n",
            "n x\n",
            "n 3\n0\n",
        ] {
            assert!(
                matches!(Graph::parse(bad), Err(GraphError::Parse { .. })),
                "{bad:?} should fail"
            );
        }
    }
}
