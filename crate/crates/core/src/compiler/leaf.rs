//! Logical gates between pairs of leaves, routed through the `|0>` interior
//! of the tree with `f-SWAP`.

use super::layout::Layout;
use super::path_router::undo;
use super::CompileError;
use crate::matchgate::{Matchgate, Unitary2};

/// Vertex sequence from `from` to `to` in the layout's tree.
pub(crate) fn tree_path(layout: &Layout, from: usize, to: usize) -> Vec<usize> {
    layout.tree.shortest_path(from, to).expect("spanning tree is connected")
}

/// `f-SWAP` chain carrying the state of `from` to `to` along the tree. Every
/// vertex after `from` must be a `|0>` ancilla.
pub fn route_through_ancillas(layout: &Layout, from: usize, to: usize) -> Result<Vec<Matchgate>, CompileError> {
    let path = tree_path(layout, from, to);
    if let Some(&busy) = path[1..].iter().find(|&&v| layout.is_data(v)) {
        return Err(CompileError::PathNotClear(busy));
    }
    Ok(path.windows(2).map(|w| Matchgate::fswap(w[0], w[1])).collect())
}

// f-SWAP between the modes on two data vertices: carry one next to the other,
// swap, and carry the result back. Costs 2d - 1 gates at distance d.
fn effective_fswap(layout: &Layout, p: usize, q: usize) -> Result<Vec<Matchgate>, CompileError> {
    let path = tree_path(layout, p, q);
    let near = path[path.len() - 2];
    let carry = if near == p {
        Vec::new()
    } else {
        route_through_ancillas(layout, p, near)?
    };
    let mut out = carry.clone();
    out.push(Matchgate::fswap(near, q));
    out.extend(undo(&carry));
    Ok(out)
}

fn distance(layout: &Layout, a: usize, b: usize) -> usize {
    tree_path(layout, a, b).len() - 1
}

/// Logical CZ between leaf pairs `i` and `j`.
///
/// With `1`, `3` the two halves of one pair and `2` one half of the other,
/// the effective transpositions `(12)(23)(13)(23)` restore every mode to its
/// vertex while picking up the sign pattern of `CZ · Z_1`; a `Z` on vertex `1`
/// removes the extra factor. Among the eight role assignments the cheapest
/// one is used.
pub fn compile_cz_leaf(layout: &Layout, i: usize, j: usize) -> Result<Vec<Matchgate>, CompileError> {
    let mut best: Option<(usize, [usize; 3])> = None;
    for (p, q) in [(i, j), (j, i)] {
        let (pa, pb) = layout.pairs[p];
        let (qa, qb) = layout.pairs[q];
        for (one, three) in [(pa, pb), (pb, pa)] {
            for two in [qa, qb] {
                let cost = |x, y| 2 * distance(layout, x, y) - 1;
                let total = cost(one, two) + 2 * cost(two, three) + cost(one, three);
                if best.is_none_or(|(c, _)| total < c) {
                    best = Some((total, [one, two, three]));
                }
            }
        }
    }
    let [one, two, three] = best.expect("eight candidates").1;
    let mut out = Vec::new();
    for (x, y) in [(one, two), (two, three), (one, three), (two, three)] {
        out.extend(effective_fswap(layout, x, y)?);
    }
    let w = layout.tree.neighbors(one)[0];
    out.push(Matchgate::both(Unitary2::z(), (one, w)));
    Ok(out)
}

/// `G(U, U)` after carrying one half of the pair next to the other.
pub(crate) fn compile_single_leaf(layout: &Layout, l: usize, u: Unitary2) -> Result<Vec<Matchgate>, CompileError> {
    let (a, b) = layout.pairs[l];
    let path = tree_path(layout, a, b);
    let near = path[path.len() - 2];
    let carry = if near == a {
        Vec::new()
    } else {
        route_through_ancillas(layout, a, near)?
    };
    let mut out = carry.clone();
    out.push(Matchgate::both(u, (near, b)));
    out.extend(undo(&carry));
    Ok(out)
}
