//! Exact cycle structure of a dressed map `f = p·c·q`.
//!
//! Conjugating by `p` gives `g = p⁻¹·f·p = c·r` with `r = q·p`, and `f`, `g` have the same
//! cycle type. Only the cycles of `c` that meet the finite set `R = supp(r)` can change.
//! Cut each such cycle at its `R` points into *segments*: a segment starts at a point of
//! `R` and runs along `c` up to (not including) the next point of `R` on the same cycle,
//! or forever after the last one on an infinite cycle. What precedes the first `R` point
//! of an infinite cycle is its *head*: positions `0..first` on a forward cycle (possibly
//! empty) or everything before `first` on an open cycle.
//!
//! Inside a piece `g` agrees with `c`. The last point `z` of the piece ending just before
//! `y ∈ R` satisfies `(z)c = y`, hence `(z)g = (y)r`, the start of another segment. So
//! every piece has one successor except the infinite segments, and every segment has one
//! predecessor while heads have none. Following successors from a head therefore never
//! revisits a piece and stops at an infinite segment: an infinite cycle of `g`, forward
//! when it starts at a forward head, open when it starts at an open one. The segments
//! left over form closed loops, i.e. finite cycles whose length is the sum of the segment
//! lengths. Everything is a walk over at most `|R|` segments plus one head per touched
//! cycle, so the analysis always terminates; no orbit is ever traced point by point.

use std::collections::{BTreeMap, HashMap};

use crate::cycletype::{CycleType, ExtNat};

use super::{Base, Coord, CycleKind, Dressed, FinitaryPerm};

#[derive(Clone, Debug)]
struct Piece {
    kind: CycleKind,
    copy: u64,
    /// Position on the base cycle where the piece starts; for an open head, the first `R`
    /// position after it.
    anchor: i64,
    /// `None` for infinite pieces (open heads and final segments).
    len: Option<u64>,
    next: Option<usize>,
    is_head: bool,
    owner: usize,
    offset: i64,
}

#[derive(Clone, Debug)]
struct NewCycle {
    kind: CycleKind,
    /// Index among the new cycles of the same kind.
    rank: u64,
    /// Pieces in order of increasing offset, excluding empty heads and the open head.
    pieces: Vec<usize>,
    back: Option<usize>,
}

#[derive(Clone, Debug)]
struct Touched {
    positions: Vec<i64>,
    segments: Vec<usize>,
    head: Option<usize>,
}

/// Cycle decomposition of a dressed map, with coordinates for every point.
///
/// Coordinates number the cycles of each kind as follows: first the cycles rebuilt from
/// touched base cycles, in construction order, then the untouched base cycles in their
/// base order.
#[derive(Clone, Debug)]
pub(crate) struct Analysis {
    p: FinitaryPerm,
    base: Base,
    touched: BTreeMap<(CycleKind, u64), Touched>,
    touched_copies: BTreeMap<CycleKind, Vec<u64>>,
    pieces: Vec<Piece>,
    cycles: Vec<NewCycle>,
    by_kind: BTreeMap<CycleKind, Vec<usize>>,
    ty: CycleType,
}

fn add_count(ty: &mut CycleType, kind: CycleKind, delta: i64) {
    let shift = |v: ExtNat| {
        if delta >= 0 {
            v + ExtNat::Fin(delta as u64)
        } else {
            v.checked_sub(delta.unsigned_abs()).expect("removed more cycles than the base type has")
        }
    };
    match kind {
        CycleKind::Forward => *ty = CycleType::new(ty.open(), shift(ty.fwd()), ty.counts().clone()),
        CycleKind::Open => *ty = CycleType::new(shift(ty.open()), ty.fwd(), ty.counts().clone()),
        CycleKind::Finite(n) => {
            let v = shift(ty.count(n));
            ty.set_count(n, v);
        }
    }
}

impl Analysis {
    pub(crate) fn new(map: &Dressed) -> Analysis {
        let r = map.q.then(&map.p);
        let base = map.base.clone();

        let mut grouped: BTreeMap<(CycleKind, u64), Vec<(i64, u64)>> = BTreeMap::new();
        for y in r.support() {
            let at = base.locate(y);
            grouped.entry((at.kind, at.copy)).or_default().push((at.pos, y));
        }

        let mut pieces: Vec<Piece> = Vec::new();
        let mut touched = BTreeMap::new();
        let mut touched_copies: BTreeMap<CycleKind, Vec<u64>> = BTreeMap::new();
        let mut segment_at: HashMap<u64, usize> = HashMap::new();
        let new_piece = |pieces: &mut Vec<Piece>, kind, copy, anchor, len, is_head| {
            pieces.push(Piece { kind, copy, anchor, len, next: None, is_head, owner: usize::MAX, offset: 0 });
            pieces.len() - 1
        };
        for (&(kind, copy), points) in grouped.iter_mut() {
            points.sort_unstable();
            touched_copies.entry(kind).or_default().push(copy);
            let positions: Vec<i64> = points.iter().map(|&(pos, _)| pos).collect();
            let head = match kind {
                CycleKind::Forward => Some(new_piece(&mut pieces, kind, copy, 0, Some(positions[0] as u64), true)),
                CycleKind::Open => Some(new_piece(&mut pieces, kind, copy, positions[0], None, true)),
                CycleKind::Finite(_) => None,
            };
            let mut segments = Vec::with_capacity(points.len());
            for (i, &(pos, y)) in points.iter().enumerate() {
                let len = match (positions.get(i + 1), kind) {
                    (Some(&next), _) => Some((next - pos) as u64),
                    (None, CycleKind::Finite(n)) => Some((n as i64 - pos + positions[0]) as u64),
                    (None, _) => None,
                };
                let id = new_piece(&mut pieces, kind, copy, pos, len, false);
                segment_at.insert(y, id);
                segments.push(id);
            }
            touched.insert((kind, copy), Touched { positions, segments, head });
        }

        // Link the piece ending just before each R point y to the segment starting at (y)r.
        for (&(kind, copy), t) in &touched {
            let points = &grouped[&(kind, copy)];
            for (i, &(_, y)) in points.iter().enumerate() {
                let pred = if i > 0 {
                    t.segments[i - 1]
                } else {
                    match kind {
                        CycleKind::Finite(_) => *t.segments.last().expect("touched cycle has a segment"),
                        _ => t.head.expect("infinite touched cycle has a head"),
                    }
                };
                pieces[pred].next = Some(segment_at[&r.apply(y)]);
            }
        }

        let mut cycles: Vec<NewCycle> = Vec::new();
        let mut by_kind: BTreeMap<CycleKind, Vec<usize>> = BTreeMap::new();
        let mut push_cycle = |cycles: &mut Vec<NewCycle>, kind: CycleKind, pieces: Vec<usize>, back: Option<usize>| {
            let ranks = by_kind.entry(kind).or_default();
            ranks.push(cycles.len());
            cycles.push(NewCycle { kind, rank: ranks.len() as u64 - 1, pieces, back });
        };

        // Chains from heads: infinite cycles.
        let heads: Vec<usize> = touched.values().filter_map(|t| t.head).collect();
        for h in heads {
            let owner = cycles.len();
            let (kind, back, mut offset) = if pieces[h].kind == CycleKind::Open {
                (CycleKind::Open, Some(h), 0i64)
            } else {
                (CycleKind::Forward, None, pieces[h].len.expect("forward head is finite") as i64)
            };
            let mut chain = Vec::new();
            pieces[h].owner = owner;
            if kind == CycleKind::Forward && pieces[h].len != Some(0) {
                chain.push(h);
            }
            let mut cur = pieces[h].next;
            let mut guard = 0usize;
            while let Some(id) = cur {
                guard += 1;
                assert!(guard <= pieces.len(), "segment chain revisited a piece");
                let piece = &mut pieces[id];
                piece.owner = owner;
                piece.offset = offset;
                chain.push(id);
                match piece.len {
                    Some(len) => offset += len as i64,
                    None => break,
                }
                cur = piece.next;
            }
            push_cycle(&mut cycles, kind, chain, back);
        }

        // Remaining segments close up into finite cycles.
        for start in 0..pieces.len() {
            if pieces[start].is_head || pieces[start].owner != usize::MAX {
                continue;
            }
            let owner = cycles.len();
            let mut chain = Vec::new();
            let mut offset = 0i64;
            let mut cur = start;
            loop {
                let piece = &mut pieces[cur];
                piece.owner = owner;
                piece.offset = offset;
                chain.push(cur);
                offset += piece.len.expect("closed loops consist of finite segments") as i64;
                cur = piece.next.expect("finite segment has a successor");
                if cur == start {
                    break;
                }
            }
            push_cycle(&mut cycles, CycleKind::Finite(offset as u64), chain, None);
        }

        let mut ty = base.cycle_type();
        for &(kind, _) in touched.keys() {
            add_count(&mut ty, kind, -1);
        }
        for c in &cycles {
            add_count(&mut ty, c.kind, 1);
        }

        Analysis { p: map.p.clone(), base, touched, touched_copies, pieces, cycles, by_kind, ty }
    }

    pub(crate) fn cycle_type(&self) -> &CycleType {
        &self.ty
    }

    fn new_count(&self, kind: CycleKind) -> u64 {
        self.by_kind.get(&kind).map_or(0, |v| v.len() as u64)
    }

    /// Coordinates of a point of `g = c·r`.
    fn coord_g(&self, x: u64) -> Coord {
        let at = self.base.locate(x);
        let Some(t) = self.touched.get(&(at.kind, at.copy)) else {
            let below = self.touched_copies.get(&at.kind).map_or(0, |v| v.partition_point(|&c| c < at.copy));
            return Coord::new(at.kind, self.new_count(at.kind) + at.copy - below as u64, at.pos);
        };
        let i = t.positions.partition_point(|&q| q <= at.pos);
        let (piece, delta) = if i > 0 {
            let id = t.segments[i - 1];
            (id, at.pos - self.pieces[id].anchor)
        } else {
            match at.kind {
                CycleKind::Finite(n) => {
                    let id = *t.segments.last().expect("touched cycle has a segment");
                    (id, at.pos + n as i64 - self.pieces[id].anchor)
                }
                _ => {
                    let id = t.head.expect("infinite touched cycle has a head");
                    (id, at.pos - self.pieces[id].anchor)
                }
            }
        };
        let piece = &self.pieces[piece];
        let cycle = &self.cycles[piece.owner];
        Coord::new(cycle.kind, cycle.rank, piece.offset + delta)
    }

    /// The point of `g = c·r` with the given coordinates.
    fn point_g(&self, at: Coord) -> u64 {
        let fresh = self.new_count(at.kind);
        if at.copy >= fresh {
            // The (copy - fresh)-th untouched base cycle of this kind.
            let mut copy = at.copy - fresh;
            if let Some(skip) = self.touched_copies.get(&at.kind) {
                for &c in skip {
                    if c <= copy {
                        copy += 1;
                    } else {
                        break;
                    }
                }
            }
            return self.base.point(Coord::new(at.kind, copy, at.pos));
        }
        let cycle = &self.cycles[self.by_kind[&at.kind][at.copy as usize]];
        let pos = at.kind.wrap(at.pos);
        let id = match cycle.back {
            Some(back) if pos < 0 => back,
            _ => {
                let i = cycle.pieces.partition_point(|&id| self.pieces[id].offset <= pos);
                cycle.pieces[i.checked_sub(1).expect("position precedes the cycle")]
            }
        };
        let piece = &self.pieces[id];
        let base_pos = piece.kind.wrap(piece.anchor + (pos - piece.offset));
        self.base.point(Coord::new(piece.kind, piece.copy, base_pos))
    }

    /// Coordinates of a point under the dressed map itself.
    pub(crate) fn coord(&self, x: u64) -> Coord {
        self.coord_g(self.p.apply(x))
    }

    pub(crate) fn point(&self, at: Coord) -> u64 {
        self.p.apply_inv(self.point_g(at))
    }
}
