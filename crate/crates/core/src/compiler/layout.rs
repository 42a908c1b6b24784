//! Placement of logical qubits on the spanning tree and the choice between
//! routing along the longest path or among the leaves.

use serde::Serialize;

use super::{CompileError, Mode};
use crate::graph::{classify, spanning_tree_with_branch, Graph, GraphClass, TreeAnalysis};
use crate::oracle::{CodeSpace, Encoding};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    PathBranch,
    LeafRouting,
    XyPathBranch,
    XyLeafRouting,
}

impl Strategy {
    pub fn as_str(self) -> &'static str {
        match self {
            Strategy::PathBranch => "path-branch",
            Strategy::LeafRouting => "leaf-routing",
            Strategy::XyPathBranch => "xy-path-branch",
            Strategy::XyLeafRouting => "xy-leaf-routing",
        }
    }

    pub fn is_path(self) -> bool {
        matches!(self, Strategy::PathBranch | Strategy::XyPathBranch)
    }
}

/// Logical gate alphabet realised by the XY compiler. Set `B` is set `A`
/// conjugated by `P = diag(1, i)` on every logical qubit, i.e. every logical
/// `X` becomes `Y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum GateSet {
    A,
    B,
}

/// Occupant of a stretch of the longest path.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Block {
    /// Two adjacent sites holding logical qubit `l`.
    Pair(usize),
    /// One site in `|0>`.
    Single,
}

impl Block {
    pub fn size(self) -> usize {
        match self {
            Block::Pair(_) => 2,
            Block::Single => 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PathGeometry {
    /// Longest path, oriented so the gadget sits at increasing indices.
    pub path: Vec<usize>,
    /// Index along `path` of the branching vertex.
    pub branch: usize,
    /// Off-path neighbour of the branching vertex, held at `|0>`.
    pub alpha: usize,
    /// Arrangement between logical gates.
    pub home: Vec<Block>,
}

impl PathGeometry {
    pub fn site_of(&self, l: usize) -> Option<usize> {
        let mut site = 0;
        for b in &self.home {
            if *b == Block::Pair(l) {
                return Some(site);
            }
            site += b.size();
        }
        None
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LeafGeometry {
    /// Star centre when the whole tree is a star.
    pub star_center: Option<usize>,
    /// Five vertices `[s1, s2, s3, s4, s5]` with `s2` adjacent to `s1`, `s3`
    /// and `s5`, and `s3` adjacent to `s4`, kept free of data (XY mode on
    /// non-star trees only).
    pub reserved: Option<[usize; 5]>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Geometry {
    Path(PathGeometry),
    Leaves(LeafGeometry),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Layout {
    pub strategy: Strategy,
    pub mode: Mode,
    pub encoding: Encoding,
    pub graph: Graph,
    pub tree: Graph,
    pub analysis: TreeAnalysis,
    /// `pairs[l] = (u, v)`: with odd encoding `|1>_L` has `u` excited.
    pub pairs: Vec<(usize, usize)>,
    /// Logical qubits this layout can host.
    pub capacity: usize,
    pub gate_set: Option<GateSet>,
    /// Power of `P` each logical qubit is conjugated by (0 or 3).
    pub phase_ledger: Vec<u8>,
    pub geometry: Geometry,
}

impl Layout {
    pub fn code_space(&self) -> CodeSpace {
        CodeSpace::new(self.graph.n(), self.pairs.clone(), self.encoding).expect("layout pairs are disjoint")
    }

    pub fn m(&self) -> usize {
        self.pairs.len()
    }

    /// Vertices not holding data: all `|0>` and usable for routing.
    pub fn ancillas(&self) -> Vec<usize> {
        let mut used = vec![false; self.graph.n()];
        for &(u, v) in &self.pairs {
            used[u] = true;
            used[v] = true;
        }
        (0..self.graph.n()).filter(|&v| !used[v]).collect()
    }

    pub fn is_data(&self, v: usize) -> bool {
        self.pairs.iter().any(|&(a, b)| a == v || b == v)
    }

    /// Restrict to the first `m` logical qubits.
    pub fn with_logical(&self, m: usize) -> Result<Layout, CompileError> {
        if m > self.capacity {
            return Err(CompileError::CapacityExceeded {
                requested: m,
                capacity: self.capacity,
            });
        }
        let mut out = self.clone();
        out.pairs.truncate(m);
        out.phase_ledger.truncate(m);
        if let Geometry::Path(pg) = &mut out.geometry {
            pg.home = home_arrangement(pg.path.len(), m);
            out.pairs = (0..m).map(|l| (pg.path[2 * l], pg.path[2 * l + 1])).collect();
        }
        Ok(out)
    }
}

fn home_arrangement(p: usize, pairs: usize) -> Vec<Block> {
    let mut home: Vec<Block> = (0..pairs).map(Block::Pair).collect();
    home.extend(std::iter::repeat_n(Block::Single, p - 2 * pairs));
    home
}

/// Split of the `b - 1` sites before the gadget into `x` pairs and `y`
/// singles. The matchgate gadget needs one spare single of its own.
pub(crate) fn prefix_split(b: usize, pairs: usize, singles: usize, mode: Mode) -> Option<(usize, usize)> {
    if b < 1 || pairs < 2 {
        return None;
    }
    let spare = match mode {
        Mode::Matchgate => 1,
        Mode::Xy => 0,
    };
    let free_singles = singles.checked_sub(spare)?;
    let max_x = (pairs - 2).min((b - 1) / 2);
    (0..=max_x)
        .rev()
        .map(|x| (x, b - 1 - 2 * x))
        .find(|&(_, y)| y <= free_singles)
}

fn gadget_fits(p: usize, b: usize, pairs: usize, mode: Mode) -> bool {
    let reach = match mode {
        Mode::Matchgate => 3,
        Mode::Xy => 2,
    };
    if b < 1 || b + reach > p - 1 || 2 * pairs > p {
        return false;
    }
    prefix_split(b, pairs, p - 2 * pairs, mode).is_some()
}

fn path_capacity(p: usize, b: usize, mode: Mode) -> usize {
    let max_pairs = match mode {
        Mode::Matchgate => (p - 1) / 2,
        Mode::Xy => p / 2,
    };
    (2..=max_pairs)
        .rev()
        .find(|&pairs| gadget_fits(p, b, pairs, mode))
        .unwrap_or(0)
}

fn best_path_geometry(a: &TreeAnalysis, mode: Mode) -> Option<(usize, PathGeometry)> {
    let t = &a.tree;
    let forward = a.longest_path.clone();
    let mut reversed = forward.clone();
    reversed.reverse();
    let mut best: Option<(usize, PathGeometry)> = None;
    for path in [forward, reversed] {
        let p = path.len();
        let on_path = {
            let mut v = vec![false; t.n()];
            for &x in &path {
                v[x] = true;
            }
            v
        };
        for b in 1..p.saturating_sub(1) {
            let alpha = match t.neighbors(path[b]).iter().find(|&&w| !on_path[w]) {
                Some(&w) => w,
                None => continue,
            };
            let cap = path_capacity(p, b, mode);
            if cap >= 2 && best.as_ref().is_none_or(|(c, _)| cap > *c) {
                best = Some((
                    cap,
                    PathGeometry {
                        path: path.clone(),
                        branch: b,
                        alpha,
                        home: home_arrangement(p, cap),
                    },
                ));
            }
        }
    }
    best
}

/// Parity of the distance from vertex 0.
pub(crate) fn colours(t: &Graph) -> Vec<bool> {
    t.bfs(0)
        .0
        .iter()
        .map(|d| d.expect("tree is connected") % 2 == 1)
        .collect()
}

/// All embeddings `[s1, s2, s3, s4, s5]` of the five-vertex branch gadget
/// whose vertices satisfy `allowed`.
pub(crate) fn gadget_embeddings(t: &Graph, allowed: &dyn Fn(usize) -> bool) -> Vec<[usize; 5]> {
    let mut out = Vec::new();
    for s2 in (0..t.n()).filter(|&v| allowed(v) && t.degree(v) >= 3) {
        let nb2: Vec<usize> = t.neighbors(s2).iter().copied().filter(|&w| allowed(w)).collect();
        for &s3 in &nb2 {
            for &s4 in t.neighbors(s3).iter().filter(|&&w| w != s2 && allowed(w)) {
                for &s1 in nb2.iter().filter(|&&w| w != s3) {
                    for &s5 in nb2.iter().filter(|&&w| w != s3 && w != s1) {
                        out.push([s1, s2, s3, s4, s5]);
                    }
                }
            }
        }
    }
    out
}

fn is_star(t: &Graph) -> Option<usize> {
    let n = t.n();
    (0..n).find(|&v| t.degree(v) == n - 1 && n >= 4)
}

fn leaf_layout_parts(a: &TreeAnalysis, mode: Mode) -> (Vec<(usize, usize)>, Option<GateSet>, Vec<u8>, LeafGeometry) {
    let t = &a.tree;
    let star = is_star(t);
    match mode {
        Mode::Matchgate => {
            let pairs = a.leaves.chunks_exact(2).map(|c| (c[0], c[1])).collect();
            let geometry = LeafGeometry {
                star_center: star,
                reserved: None,
            };
            (pairs, None, Vec::new(), geometry)
        }
        Mode::Xy if star.is_some() => {
            let pairs: Vec<_> = a.leaves.chunks_exact(2).map(|c| (c[0], c[1])).collect();
            let ledger = vec![3; pairs.len()];
            let geometry = LeafGeometry {
                star_center: star,
                reserved: None,
            };
            (pairs, Some(GateSet::B), ledger, geometry)
        }
        Mode::Xy => {
            let is_leaf = |v: usize| t.degree(v) == 1;
            let reserved = gadget_embeddings(t, &|_| true)
                .into_iter()
                .min_by_key(|e| (e.iter().filter(|&&v| is_leaf(v)).count(), *e))
                .expect("a non-star tree with a branching vertex contains the gadget");
            let free: Vec<usize> = a.leaves.iter().copied().filter(|v| !reserved.contains(v)).collect();
            let colour = colours(t);
            let (mut same, mut differ) = (Vec::new(), Vec::new());
            for c in free.chunks_exact(2) {
                if colour[c[0]] == colour[c[1]] {
                    same.push((c[0], c[1]));
                } else {
                    differ.push((c[0], c[1]));
                }
            }
            let (pairs, set) = if same.len() > differ.len() {
                (same, GateSet::B)
            } else {
                (differ, GateSet::A)
            };
            let ledger = vec![if set == GateSet::B { 3 } else { 0 }; pairs.len()];
            let geometry = LeafGeometry {
                star_center: None,
                reserved: Some(reserved),
            };
            (pairs, Some(set), ledger, geometry)
        }
    }
}

fn prepare(g: &Graph) -> Result<(Graph, TreeAnalysis), CompileError> {
    match classify(g)? {
        GraphClass::Other => {}
        class => return Err(CompileError::SimulableGraph(class)),
    }
    let tree = spanning_tree_with_branch(g)?;
    let analysis = TreeAnalysis::new(tree.clone())?;
    Ok((tree, analysis))
}

fn encoding_for(mode: Mode) -> Encoding {
    match mode {
        Mode::Matchgate => Encoding::EvenParity,
        Mode::Xy => Encoding::OddParity,
    }
}

fn build_path_layout(
    g: &Graph,
    tree: Graph,
    analysis: TreeAnalysis,
    mode: Mode,
    cap: usize,
    geometry: PathGeometry,
) -> Layout {
    let pairs = (0..cap)
        .map(|k| (geometry.path[2 * k], geometry.path[2 * k + 1]))
        .collect();
    Layout {
        strategy: match mode {
            Mode::Matchgate => Strategy::PathBranch,
            Mode::Xy => Strategy::XyPathBranch,
        },
        mode,
        encoding: encoding_for(mode),
        graph: g.clone(),
        tree,
        analysis,
        pairs,
        capacity: cap,
        gate_set: (mode == Mode::Xy).then_some(GateSet::A),
        phase_ledger: vec![0; if mode == Mode::Xy { cap } else { 0 }],
        geometry: Geometry::Path(geometry),
    }
}

fn build_leaf_layout(g: &Graph, tree: Graph, analysis: TreeAnalysis, mode: Mode) -> Layout {
    let (pairs, gate_set, phase_ledger, geometry) = leaf_layout_parts(&analysis, mode);
    Layout {
        strategy: match mode {
            Mode::Matchgate => Strategy::LeafRouting,
            Mode::Xy => Strategy::XyLeafRouting,
        },
        mode,
        encoding: encoding_for(mode),
        graph: g.clone(),
        tree,
        analysis,
        capacity: pairs.len(),
        pairs,
        gate_set,
        phase_ledger,
        geometry: Geometry::Leaves(geometry),
    }
}

/// Path layout regardless of the size rule, if the branch gadget fits.
pub fn path_layout(g: &Graph, mode: Mode) -> Result<Option<Layout>, CompileError> {
    let (tree, analysis) = prepare(g)?;
    Ok(best_path_geometry(&analysis, mode)
        .map(|(cap, geometry)| build_path_layout(g, tree, analysis, mode, cap, geometry)))
}

/// Leaf layout regardless of the size rule.
pub fn leaf_layout(g: &Graph, mode: Mode) -> Result<Layout, CompileError> {
    let (tree, analysis) = prepare(g)?;
    Ok(build_leaf_layout(g, tree, analysis, mode))
}

/// Pick the strategy for a graph and lay out as many logical qubits as it
/// supports. Fails on paths and cycles, which need no compilation.
///
/// The longest path is used when it has more than `√n` vertices and the
/// branch gadget fits, unless the leaves also exceed `√n` and hold more
/// logical qubits.
pub fn choose_strategy(g: &Graph, mode: Mode) -> Result<Layout, CompileError> {
    let (tree, analysis) = prepare(g)?;
    let sqrt_n = (g.n() as f64).sqrt();
    let (p, l) = (analysis.p() as f64, analysis.l() as f64);
    let path = best_path_geometry(&analysis, mode);
    let leaf_cap = leaf_layout_parts(&analysis, mode).0.len();
    let use_path = match &path {
        Some((cap, _)) if p > sqrt_n => !(l > sqrt_n && leaf_cap > *cap),
        Some((cap, _)) => leaf_cap == 0 && *cap > 0,
        None => false,
    };
    Ok(match path {
        Some((cap, geometry)) if use_path => build_path_layout(g, tree, analysis, mode, cap, geometry),
        _ => build_leaf_layout(g, tree, analysis, mode),
    })
}
