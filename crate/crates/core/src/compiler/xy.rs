//! Compilation when only the XY interaction is available.
//!
//! Logical qubits use the odd-parity code. Carrying a state through a `|0>`
//! vertex with `i-SWAP` multiplies the excited half by `i`, i.e. applies `P`
//! to the logical qubit; alternating `i-SWAP` and `i-SWAP†` keeps the net
//! power at `-1`, `0` or `+1` depending on the number of hops. Any `P` picked
//! up on the way in is undone on the way out, so a gate `G` applied in between
//! is realised as `P^k G P^-k`.

use std::collections::{HashMap, VecDeque};

use super::layout::{gadget_embeddings, Geometry, Layout};
use super::leaf::tree_path;
use super::path_router::undo;
use super::CompileError;
use crate::graph::Graph;
use crate::matchgate::Matchgate;

/// Configurations explored by the fallback pebble search before giving up.
pub const PEBBLE_STATE_CAP: usize = 2_000_000;

/// `exp(i a X_1 Z_3)` on logical pairs `(s1, s2)` and `(s3, s4)` with `s5` a
/// `|0>` neighbour of `s2`, in time order.
pub(crate) fn branch_gadget(slots: [usize; 5], a: f64) -> Vec<Matchgate> {
    let [s1, s2, s3, s4, s5] = slots;
    vec![
        Matchgate::iswap_dagger(s2, s5),
        Matchgate::iswap_dagger(s2, s3),
        Matchgate::iswap_dagger(s3, s4),
        Matchgate::iswap(s2, s5),
        Matchgate::xy(a, s1, s2),
        Matchgate::iswap_dagger(s2, s5),
        Matchgate::iswap(s3, s4),
        Matchgate::iswap(s2, s3),
        Matchgate::iswap(s2, s5),
    ]
}

/// `exp(i a Y_i Z_j)` on a star: pair `i` on leaves `(u_i, v_i)`, pair `j`
/// with first half on leaf `u_j`, and the centre `c` at `|0>`.
pub(crate) fn star_gadget(c: usize, u_i: usize, v_i: usize, u_j: usize, a: f64) -> Vec<Matchgate> {
    vec![
        Matchgate::iswap_dagger(c, u_j),
        Matchgate::iswap(c, v_i),
        Matchgate::xy(a, u_i, c),
        Matchgate::iswap_dagger(c, v_i),
        Matchgate::iswap(c, u_j),
    ]
}

/// Signs for `k` hops summing to `e`: alternating, starting with `e` (or `+`
/// when `e = 0`).
fn alternating(k: usize, e: i32) -> Vec<i32> {
    let start = if e == 0 { 1 } else { e };
    (0..k).map(|t| if t % 2 == 0 { start } else { -start }).collect()
}

// Net P powers for the two halves of a pair given their hop counts.
fn pair_powers(k_u: usize, k_v: usize) -> (i32, i32) {
    match (k_u % 2, k_v % 2) {
        (1, 0) => (-1, 0),
        (0, 1) => (0, 1),
        (1, 1) => (1, 1),
        _ => (0, 0),
    }
}

/// A sequence of single hops `(pebble, from, to)` and the gadget slots the
/// four pebbles end in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PebblePlan {
    pub moves: Vec<(usize, usize, usize)>,
    pub slots: [usize; 5],
}

fn slot_is_open(t: &Graph, blocked: &[bool], pos: &[usize; 4], s2: usize, s1: usize, s3: usize) -> Option<usize> {
    t.neighbors(s2)
        .iter()
        .copied()
        .find(|&w| w != s1 && w != s3 && !blocked[w] && !pos.contains(&w))
}

fn sequential_plan(t: &Graph, blocked: &[bool], homes: [usize; 4]) -> Option<PebblePlan> {
    let allowed = |v: usize| !blocked[v];
    let dist: Vec<Vec<Option<usize>>> = homes.iter().map(|&h| t.bfs(h).0).collect();
    let mut embeddings = gadget_embeddings(t, &allowed);
    let cost = |e: &[usize; 5]| -> usize { (0..4).map(|p| dist[p][e[p]].unwrap_or(usize::MAX / 8)).sum() };
    embeddings.sort_by_key(|e| (cost(e), *e));
    let orders = permutations4();
    for e in embeddings {
        for order in &orders {
            let mut pos = homes;
            let mut moves = Vec::new();
            let mut ok = true;
            for &p in order {
                let path = t.shortest_path(pos[p], e[p]).expect("tree is connected");
                for w in path.windows(2) {
                    let to = w[1];
                    if blocked[to] || pos.contains(&to) {
                        ok = false;
                        break;
                    }
                    moves.push((p, w[0], to));
                    pos[p] = to;
                }
                if !ok {
                    break;
                }
            }
            if ok && !blocked[e[4]] && !pos.contains(&e[4]) {
                return Some(PebblePlan { moves, slots: e });
            }
        }
    }
    None
}

fn permutations4() -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    if (0..4).all(|x| p.contains(&x)) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

/// Breadth-first search over pebble configurations; finds a plan whenever
/// one exists within the state cap.
pub(crate) fn search_plan(t: &Graph, blocked: &[bool], homes: [usize; 4]) -> Option<PebblePlan> {
    let goal = |pos: &[usize; 4]| -> Option<[usize; 5]> {
        let [s1, s2, s3, s4] = *pos;
        if t.has_edge(s1, s2) && t.has_edge(s2, s3) && t.has_edge(s3, s4) {
            slot_is_open(t, blocked, pos, s2, s1, s3).map(|s5| [s1, s2, s3, s4, s5])
        } else {
            None
        }
    };
    let mut parent: HashMap<[usize; 4], ([usize; 4], (usize, usize, usize))> = HashMap::new();
    let mut queue = VecDeque::from([homes]);
    parent.insert(homes, (homes, (usize::MAX, 0, 0)));
    while let Some(pos) = queue.pop_front() {
        if let Some(slots) = goal(&pos) {
            let mut moves = Vec::new();
            let mut cur = pos;
            while cur != homes {
                let (prev, mv) = parent[&cur];
                moves.push(mv);
                cur = prev;
            }
            moves.reverse();
            return Some(PebblePlan { moves, slots });
        }
        if parent.len() > PEBBLE_STATE_CAP {
            return None;
        }
        for p in 0..4 {
            for &w in t.neighbors(pos[p]) {
                if blocked[w] || pos.contains(&w) {
                    continue;
                }
                let mut next = pos;
                next[p] = w;
                if let std::collections::hash_map::Entry::Vacant(e) = parent.entry(next) {
                    e.insert((pos, (p, pos[p], w)));
                    queue.push_back(next);
                }
            }
        }
    }
    None
}

pub fn plan_pebbles(t: &Graph, blocked: &[bool], homes: [usize; 4]) -> Result<PebblePlan, CompileError> {
    sequential_plan(t, blocked, homes)
        .or_else(|| search_plan(t, blocked, homes))
        .ok_or(CompileError::RoutingFailed)
}

/// `i-SWAP^±1` hops for a plan, with signs chosen per pebble so that each
/// pair ends with a net `P` power from [`pair_powers`].
fn signed_hops(plan: &PebblePlan) -> Vec<Matchgate> {
    let mut counts = [0usize; 4];
    for &(p, _, _) in &plan.moves {
        counts[p] += 1;
    }
    let (e0, e1) = pair_powers(counts[0], counts[1]);
    let (e2, e3) = pair_powers(counts[2], counts[3]);
    let powers = [e0, e1, e2, e3];
    let signs: Vec<Vec<i32>> = (0..4).map(|p| alternating(counts[p], powers[p])).collect();
    let mut used = [0usize; 4];
    plan.moves
        .iter()
        .map(|&(p, from, to)| {
            let s = signs[p][used[p]];
            used[p] += 1;
            Matchgate::iswap_power(s, from, to)
        })
        .collect()
}

fn blocked_except(layout: &Layout, free: &[usize]) -> Vec<bool> {
    let mut blocked = vec![false; layout.graph.n()];
    for (l, &(u, v)) in layout.pairs.iter().enumerate() {
        if !free.contains(&l) {
            blocked[u] = true;
            blocked[v] = true;
        }
    }
    blocked
}

fn star_center(layout: &Layout) -> Option<usize> {
    match &layout.geometry {
        Geometry::Leaves(lg) => lg.star_center,
        _ => None,
    }
}

/// `exp(i a X)` (set A) or `exp(i a Y)` (set B) on leaf pair `l`.
pub(crate) fn compile_xrot_leaf(layout: &Layout, l: usize, a: f64) -> Result<Vec<Matchgate>, CompileError> {
    let (u, v) = layout.pairs[l];
    if let Some(c) = star_center(layout) {
        return Ok(vec![
            Matchgate::iswap(c, v),
            Matchgate::xy(a, u, c),
            Matchgate::iswap_dagger(c, v),
        ]);
    }
    let path = tree_path(layout, u, v);
    let hops = path.len() - 2;
    if let Some(&busy) = path[1..path.len() - 1].iter().find(|&&w| layout.is_data(w)) {
        return Err(CompileError::PathNotClear(busy));
    }
    let e = if hops % 2 == 1 { -1 } else { 0 };
    let carry: Vec<Matchgate> = alternating(hops, e)
        .into_iter()
        .enumerate()
        .map(|(t, s)| Matchgate::iswap_power(s, path[t], path[t + 1]))
        .collect();
    let mut out = carry.clone();
    out.push(Matchgate::xy(a, path[hops], v));
    out.extend(undo(&carry));
    Ok(out)
}

/// `exp(i a X_i Z_j)` (set A) or `exp(i a Y_i Z_j)` (set B) between leaf pairs.
pub(crate) fn compile_xz_leaf(layout: &Layout, i: usize, j: usize, a: f64) -> Result<Vec<Matchgate>, CompileError> {
    let (ui, vi) = layout.pairs[i];
    let (uj, _) = layout.pairs[j];
    if let Some(c) = star_center(layout) {
        return Ok(star_gadget(c, ui, vi, uj, a));
    }
    let (uj, vj) = layout.pairs[j];
    let blocked = blocked_except(layout, &[i, j]);
    let plan = plan_pebbles(&layout.tree, &blocked, [ui, vi, uj, vj])?;
    let carry = signed_hops(&plan);
    let mut out = carry.clone();
    out.extend(branch_gadget(plan.slots, a));
    out.extend(undo(&carry));
    Ok(out)
}
