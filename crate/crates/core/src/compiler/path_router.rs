//! Moving encoded pairs along the longest path and the gadgets that act at
//! its branching vertex.
//!
//! A pair hops over a `|0>` site with two swaps, and two pairs exchange
//! places with four. With `f-SWAP` the hops are exact; with `i-SWAP` every hop
//! of an odd-parity pair contributes the same phase to both logical states,
//! so it is global.

use super::layout::{prefix_split, Block, Layout, PathGeometry};
use super::{CompileError, Mode};
use crate::matchgate::{Matchgate, Unitary2};

pub(crate) struct PathRouter<'a> {
    path: &'a [usize],
    blocks: Vec<Block>,
    mode: Mode,
}

impl<'a> PathRouter<'a> {
    pub(crate) fn new(geometry: &'a PathGeometry, mode: Mode) -> Self {
        Self {
            path: &geometry.path,
            blocks: geometry.home.clone(),
            mode,
        }
    }

    fn hop(&self, s: usize, t: usize) -> Matchgate {
        let (u, v) = (self.path[s], self.path[t]);
        match self.mode {
            Mode::Matchgate => Matchgate::fswap(u, v),
            Mode::Xy => Matchgate::iswap(u, v),
        }
    }

    fn site_of_block(&self, idx: usize) -> usize {
        self.blocks[..idx].iter().map(|b| b.size()).sum()
    }

    // exchange blocks idx and idx + 1
    fn swap_adjacent(&mut self, idx: usize, out: &mut Vec<Matchgate>) {
        let s = self.site_of_block(idx);
        match (self.blocks[idx], self.blocks[idx + 1]) {
            (Block::Single, Block::Single) => {}
            (Block::Pair(_), Block::Single) => {
                out.push(self.hop(s + 1, s + 2));
                out.push(self.hop(s, s + 1));
            }
            (Block::Single, Block::Pair(_)) => {
                out.push(self.hop(s, s + 1));
                out.push(self.hop(s + 1, s + 2));
            }
            (Block::Pair(_), Block::Pair(_)) => {
                out.push(self.hop(s + 1, s + 2));
                out.push(self.hop(s, s + 1));
                out.push(self.hop(s + 2, s + 3));
                out.push(self.hop(s + 1, s + 2));
            }
        }
        self.blocks.swap(idx, idx + 1);
    }

    /// Adjacent exchanges that turn the current arrangement into `target`.
    pub(crate) fn arrange(&mut self, target: &[Block]) -> Result<Vec<Matchgate>, CompileError> {
        if target.len() != self.blocks.len() {
            return Err(CompileError::BlockedRoute);
        }
        let mut out = Vec::new();
        for t in 0..target.len() {
            let j = (t..self.blocks.len())
                .find(|&j| self.blocks[j] == target[t])
                .ok_or(CompileError::BlockedRoute)?;
            for k in (t..j).rev() {
                self.swap_adjacent(k, &mut out);
            }
        }
        Ok(out)
    }
}

/// The inverse of a gate sequence: reversed, each gate inverted.
pub(crate) fn undo(gates: &[Matchgate]) -> Vec<Matchgate> {
    gates.iter().rev().map(Matchgate::inverse).collect()
}

fn path_geometry(layout: &Layout) -> Result<&PathGeometry, CompileError> {
    match &layout.geometry {
        super::layout::Geometry::Path(pg) => Ok(pg),
        _ => Err(CompileError::WrongStrategy),
    }
}

/// Gates moving logical qubit `l` so its pair starts at path site `dest`,
/// all other blocks keeping their relative order.
pub fn route_logical(layout: &Layout, l: usize, dest: usize) -> Result<Vec<Matchgate>, CompileError> {
    let pg = path_geometry(layout)?;
    let mut rest: Vec<Block> = pg.home.iter().copied().filter(|&b| b != Block::Pair(l)).collect();
    if rest.len() == pg.home.len() {
        return Err(CompileError::LogicalOutOfRange {
            qubit: l,
            m: layout.m(),
        });
    }
    let mut site = 0;
    let mut at = None;
    for (idx, b) in rest.iter().enumerate() {
        if site == dest {
            at = Some(idx);
            break;
        }
        site += b.size();
    }
    if at.is_none() && site == dest {
        at = Some(rest.len());
    }
    let at = at.ok_or(CompileError::BlockedRoute)?;
    rest.insert(at, Block::Pair(l));
    PathRouter::new(pg, layout.mode).arrange(&rest)
}

// Arrangement with `b - 1` sites of other blocks, then the gadget blocks.
fn gadget_target(pg: &PathGeometry, i: usize, j: usize, mode: Mode) -> Result<Vec<Block>, CompileError> {
    let others: Vec<Block> = pg
        .home
        .iter()
        .copied()
        .filter(|&b| b != Block::Pair(i) && b != Block::Pair(j))
        .collect();
    let pairs = pg.home.iter().filter(|b| matches!(b, Block::Pair(_))).count();
    let singles = pg.home.len() - pairs;
    let (x, y) = prefix_split(pg.branch, pairs, singles, mode).ok_or(CompileError::BlockedRoute)?;
    let (mut take_pairs, mut take_singles) = (x, y);
    let mut prefix = Vec::new();
    let mut rest = Vec::new();
    for b in others {
        match b {
            Block::Pair(_) if take_pairs > 0 => {
                take_pairs -= 1;
                prefix.push(b);
            }
            Block::Single if take_singles > 0 => {
                take_singles -= 1;
                prefix.push(b);
            }
            _ => rest.push(b),
        }
    }
    if mode == Mode::Matchgate {
        // β, the spare |0> just before the branching vertex
        let k = rest
            .iter()
            .position(|&b| b == Block::Single)
            .ok_or(CompileError::BlockedRoute)?;
        rest.remove(k);
        prefix.push(Block::Single);
    }
    prefix.push(Block::Pair(i));
    prefix.push(Block::Pair(j));
    prefix.extend(rest);
    Ok(prefix)
}

/// Logical CZ between `i` and `j` on a path layout: bring both pairs next to
/// the branching vertex, exchange the order of two qubits through the `|0>`
/// ancillas on either side, and route back.
pub fn compile_cz_branch(layout: &Layout, i: usize, j: usize) -> Result<Vec<Matchgate>, CompileError> {
    let pg = path_geometry(layout)?;
    if layout.is_data(pg.alpha) {
        return Err(CompileError::AncillaDirty(pg.alpha));
    }
    let target = gadget_target(pg, i, j, Mode::Matchgate)?;
    let route = PathRouter::new(pg, Mode::Matchgate).arrange(&target)?;
    let b = pg.branch;
    let v = |k: usize| pg.path[k];
    let (beta, s1, s2, s3, s4, alpha) = (v(b - 1), v(b), v(b + 1), v(b + 2), v(b + 3), pg.alpha);
    let fs = Matchgate::fswap;
    let gadget = [
        fs(s2, s3),
        fs(s3, s4),
        fs(alpha, s1),
        fs(s1, s2),
        fs(beta, s1),
        fs(alpha, s1),
        fs(s1, s2),
        fs(beta, s1),
        fs(s1, s2),
        fs(s3, s4),
        fs(s2, s3),
    ];
    let mut out = route.clone();
    out.extend(gadget);
    out.extend(undo(&route));
    Ok(out)
}

/// `exp(i a X_i Z_j)` on an XY path layout.
pub(crate) fn compile_xz_branch(layout: &Layout, i: usize, j: usize, a: f64) -> Result<Vec<Matchgate>, CompileError> {
    let pg = path_geometry(layout)?;
    if layout.is_data(pg.alpha) {
        return Err(CompileError::AncillaDirty(pg.alpha));
    }
    let target = gadget_target(pg, i, j, Mode::Xy)?;
    let route = PathRouter::new(pg, Mode::Xy).arrange(&target)?;
    let b = pg.branch;
    let slots = [pg.path[b - 1], pg.path[b], pg.path[b + 1], pg.path[b + 2], pg.alpha];
    let mut out = route.clone();
    out.extend(super::xy::branch_gadget(slots, a));
    out.extend(undo(&route));
    Ok(out)
}

/// `G(U, U)` on the pair's home edge.
pub(crate) fn compile_single_path(layout: &Layout, l: usize, u: Unitary2) -> Result<Vec<Matchgate>, CompileError> {
    let (a, b) = layout.pairs[l];
    Ok(vec![Matchgate::both(u, (a, b))])
}

/// `exp(i a/2 (XX + YY))` on the pair's home edge.
pub(crate) fn compile_xrot_path(layout: &Layout, l: usize, a: f64) -> Result<Vec<Matchgate>, CompileError> {
    let (u, v) = layout.pairs[l];
    Ok(vec![Matchgate::xy(a, u, v)])
}
