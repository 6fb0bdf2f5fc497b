//! The correspondence between d-dimer covers of a snake graph and submodules
//! of the induced module: symmetric differences, snake multigraphs, loopy
//! strings and the face function.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::cc::SweepReport;
use crate::error::{Error, Result};
use crate::repr::{is_submodule, submodule_lattice, Quiver, SubmoduleRank};
use crate::snake::{Cover, Dir, SnakeGraph};

/// Sub-multigraph of a snake graph with per-edge multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnakeMultigraph {
    pub graph: SnakeGraph,
    pub mult: Vec<u32>,
}

/// Direct or inverse arrow of a string.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Arrow {
    Direct,
    Inverse,
}

impl Arrow {
    fn flip(self) -> Arrow {
        match self {
            Arrow::Direct => Arrow::Inverse,
            Arrow::Inverse => Arrow::Direct,
        }
    }
}

/// Arrows of the abstract string of a snake graph: the first arrow is direct
/// when the second tile lies East, zig-zags keep the arrow and straight
/// pieces reverse it.
pub fn string_arrows(dirs: &[Dir]) -> Vec<Arrow> {
    let mut out: Vec<Arrow> = Vec::with_capacity(dirs.len());
    for (i, &d) in dirs.iter().enumerate() {
        let a = match i {
            0 if d == Dir::East => Arrow::Direct,
            0 => Arrow::Inverse,
            _ if dirs[i - 1] != d => out[i - 1],
            _ => out[i - 1].flip(),
        };
        out.push(a);
    }
    out
}

/// Tile directions realising a string; inverse of [`string_arrows`].
pub fn dirs_of_arrows(arrows: &[Arrow]) -> Vec<Dir> {
    let mut out: Vec<Dir> = Vec::with_capacity(arrows.len());
    for (i, &a) in arrows.iter().enumerate() {
        let d = match i {
            0 if a == Arrow::Direct => Dir::East,
            0 => Dir::North,
            _ => {
                let other = match out[i - 1] {
                    Dir::East => Dir::North,
                    Dir::North => Dir::East,
                };
                if a == arrows[i - 1] {
                    other
                } else {
                    out[i - 1]
                }
            }
        };
        out.push(d);
    }
    out
}

/// Quiver on the face labels read off the string of the snake graph.
pub fn string_quiver(g: &SnakeGraph) -> Quiver {
    let faces = g.faces();
    let mut arrows: Vec<(usize, usize)> = string_arrows(g.dirs())
        .iter()
        .enumerate()
        .map(|(i, a)| match a {
            Arrow::Direct => (faces[i], faces[i + 1]),
            Arrow::Inverse => (faces[i + 1], faces[i]),
        })
        .collect();
    arrows.sort();
    Quiver {
        n: g.nvars(),
        arrows,
    }
}

/// Edge-wise `max − min` of two double dimer covers.
pub fn symmetric_difference(g: &SnakeGraph, d: &Cover, d0: &Cover) -> Result<SnakeMultigraph> {
    if d.mult.len() != g.edges().len() || d0.mult.len() != g.edges().len() || d.d != d0.d {
        return Err(Error::MismatchedGraphs);
    }
    Ok(SnakeMultigraph {
        graph: g.clone(),
        mult: d.mult.iter().zip(&d0.mult).map(|(a, b)| a.abs_diff(*b)).collect(),
    })
}

impl SnakeMultigraph {
    pub fn empty(g: &SnakeGraph) -> SnakeMultigraph {
        SnakeMultigraph {
            graph: g.clone(),
            mult: vec![0; g.edges().len()],
        }
    }

    /// Tiles carrying at least one outer edge of the snake graph.
    pub fn present(&self) -> Vec<bool> {
        (0..self.graph.len())
            .map(|t| self.graph.outer_edges(t).iter().any(|&e| self.mult[e] > 0))
            .collect()
    }

    /// Edges of a tile not shared with another present tile.
    fn boundary_edges(&self, tile: usize, present: &[bool]) -> Vec<usize> {
        self.graph
            .tile_edges(tile)
            .into_iter()
            .filter(|&e| {
                self.graph.edges()[e]
                    .tiles
                    .iter()
                    .all(|&(t, _)| t == tile || !present[t])
            })
            .collect()
    }

    /// Adds a single copy of every missing edge of each present tile.
    pub fn completion(&self) -> SnakeMultigraph {
        let mut out = self.clone();
        for (t, p) in self.present().into_iter().enumerate() {
            if p {
                for e in self.graph.tile_edges(t) {
                    if out.mult[e] == 0 {
                        out.mult[e] = 1;
                    }
                }
            }
        }
        out
    }

    /// Common multiplicity of each tile's boundary edges, or `None` when
    /// they disagree.
    pub fn tile_values(&self) -> Option<Vec<u32>> {
        let present = self.present();
        (0..self.graph.len())
            .map(|t| {
                if !present[t] {
                    return Some(0);
                }
                let ms: BTreeSet<u32> = self
                    .boundary_edges(t, &present)
                    .iter()
                    .map(|&e| self.mult[e])
                    .collect();
                (ms.len() == 1).then(|| *ms.iter().next().unwrap())
            })
            .collect()
    }

    /// Every tile has its boundary edges all single or all double.
    pub fn is_good(&self) -> bool {
        self.tile_values()
            .is_some_and(|v| v.iter().all(|&h| h <= 2))
    }

    /// Maximal runs of consecutive present tiles.
    pub fn components(&self) -> Vec<(usize, usize)> {
        let present = self.present();
        let mut out = Vec::new();
        let mut t = 0;
        while t < present.len() {
            if present[t] {
                let start = t;
                while t + 1 < present.len() && present[t + 1] {
                    t += 1;
                }
                out.push((start, t));
            }
            t += 1;
        }
        out
    }

    /// Doubles propagate along direct arrows and back along inverse ones.
    pub fn is_optimal(&self) -> bool {
        let Some(h) = self.tile_values() else {
            return false;
        };
        if h.iter().any(|&x| x > 2) {
            return false;
        }
        let arrows = string_arrows(self.graph.dirs());
        let present = self.present();
        arrows.iter().enumerate().all(|(i, a)| {
            if !(present[i] && present[i + 1]) {
                return true;
            }
            match a {
                Arrow::Direct => h[i] < 2 || h[i + 1] == 2,
                Arrow::Inverse => h[i + 1] < 2 || h[i] == 2,
            }
        })
    }

    /// Splits off one copy of each edge on the boundary of the region
    /// covered by present tiles; returns that layer and the remainder.
    pub fn decompose(&self) -> (SnakeMultigraph, SnakeMultigraph) {
        let present = self.present();
        let mut layer = SnakeMultigraph::empty(&self.graph);
        let mut rest = self.clone();
        for (e, edge) in self.graph.edges().iter().enumerate() {
            let inside = edge.tiles.iter().filter(|&&(t, _)| present[t]).count();
            if inside == 1 && self.mult[e] > 0 {
                layer.mult[e] = 1;
                rest.mult[e] -= 1;
            }
        }
        (layer, rest)
    }

    /// Restriction to the tiles `first..=last` as a standalone multigraph.
    pub fn component(&self, (first, last): (usize, usize)) -> SnakeMultigraph {
        let faces = &self.graph.faces()[first..=last];
        let dirs = &self.graph.dirs()[first..last];
        let sub = SnakeGraph::from_shape(faces, dirs);
        let mut mult = vec![0; sub.edges().len()];
        for t in 0..sub.len() {
            for (k, &e) in sub.tile_edges(t).iter().enumerate() {
                mult[e] = self.mult[self.graph.tile_edges(first + t)[k]];
            }
        }
        SnakeMultigraph { graph: sub, mult }
    }
}

/// `h_i` summed over tiles with face `i`: 2 for tiles with a double boundary
/// edge, 1 for tiles whose boundary edges are all single.
pub fn face_function(h: &SnakeMultigraph) -> Vec<u32> {
    let present = h.present();
    let mut out = vec![0; h.graph.nvars()];
    for (t, tile) in h.graph.tiles().iter().enumerate() {
        if present[t] {
            let double = h.boundary_edges(t, &present).iter().any(|&e| h.mult[e] >= 2);
            out[tile.face - 1] += if double { 2 } else { 1 };
        }
    }
    out
}

/// Labeled word over direct and inverse arrows with optional loops.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct LoopyString {
    pub labels: Vec<usize>,
    pub arrows: Vec<Arrow>,
    pub loops: Vec<bool>,
}

impl fmt::Display for LoopyString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.labels.iter().enumerate() {
            if i > 0 {
                f.write_str(match self.arrows[i - 1] {
                    Arrow::Direct => "→",
                    Arrow::Inverse => "←",
                })?;
            }
            write!(f, "{l}")?;
            if self.loops[i] {
                f.write_str("↻")?;
            }
        }
        Ok(())
    }
}

/// Loopy string of a connected good multigraph covering all its tiles.
pub fn loopy_string_of(h: &SnakeMultigraph) -> Result<LoopyString> {
    if !h.is_good() {
        return Err(Error::NotGood);
    }
    if h.present().iter().any(|p| !p) {
        return Err(Error::Disconnected);
    }
    let values = h.tile_values().unwrap();
    Ok(LoopyString {
        labels: h.graph.faces(),
        arrows: string_arrows(h.graph.dirs()),
        loops: values.iter().map(|&v| v == 2).collect(),
    })
}

/// Snake multigraph of a loopy string: shared edges single, the other edges
/// doubled on looped tiles.
pub fn multigraph_of_loopy(w: &LoopyString) -> Result<SnakeMultigraph> {
    if w.labels.is_empty() || w.arrows.len() + 1 != w.labels.len() || w.loops.len() != w.labels.len()
    {
        return Err(Error::Input("malformed loopy string".into()));
    }
    let g = SnakeGraph::from_shape(&w.labels, &dirs_of_arrows(&w.arrows));
    let mut mult = vec![1; g.edges().len()];
    for (e, edge) in g.edges().iter().enumerate() {
        if edge.is_outer() && w.loops[edge.tiles[0].0] {
            mult[e] = 2;
        }
    }
    Ok(SnakeMultigraph { graph: g, mult })
}

/// Per-tile height: the multiplicity an outer edge carries away from the
/// minimal cover.
pub fn tile_heights(g: &SnakeGraph, c: &Cover) -> Result<Vec<u32>> {
    if !g.is_valid(c) {
        return Err(Error::MalformedCover("not a cover of this snake graph".into()));
    }
    (0..g.len())
        .map(|t| {
            let hs: BTreeSet<u32> = g
                .outer_edges(t)
                .iter()
                .map(|&e| if g.in_dmin(e) { c.d - c.mult[e] } else { c.mult[e] })
                .collect();
            if hs.len() == 1 {
                Ok(*hs.iter().next().unwrap())
            } else {
                Err(Error::MalformedCover(format!("tile {t} has no single height")))
            }
        })
        .collect()
}

/// Cover with the given per-tile heights.
pub fn cover_of_heights(g: &SnakeGraph, d: u32, h: &[u32]) -> Result<Cover> {
    if h.len() != g.len() || h.iter().any(|&x| x > d) {
        return Err(Error::InvalidRankVector(format!("{h:?}")));
    }
    let mult = g
        .edges()
        .iter()
        .enumerate()
        .map(|(e, edge)| match edge.tiles.as_slice() {
            [(t, _)] if g.in_dmin(e) => d - h[*t],
            [(t, _)] => h[*t],
            [(a, _), (b, _)] => h[*a].abs_diff(h[*b]),
            _ => unreachable!("edges lie on one or two tiles"),
        })
        .collect();
    let c = Cover { d, mult };
    if g.is_valid(&c) {
        Ok(c)
    } else {
        Err(Error::InvalidRankVector(format!("{h:?}")))
    }
}

fn distinct_faces(g: &SnakeGraph) -> Result<Vec<usize>> {
    let faces = g.faces();
    let set: BTreeSet<usize> = faces.iter().copied().collect();
    if set.len() == faces.len() {
        Ok(faces)
    } else {
        Err(Error::Input("face labels repeat along the snake".into()))
    }
}

/// Rank vector of the submodule attached to a double dimer cover.
pub fn submodule_of_cover(g: &SnakeGraph, c: &Cover) -> Result<SubmoduleRank> {
    if c.d != 2 {
        return Err(Error::MalformedCover("expected a double dimer cover".into()));
    }
    if !g.is_valid(c) {
        return Err(Error::MalformedCover("not a cover of this snake graph".into()));
    }
    let s = symmetric_difference(g, c, &g.min_cover(2))?;
    Ok(SubmoduleRank {
        rank: face_function(&s.completion()),
    })
}

/// Double dimer cover of a submodule rank vector indexed by face label.
pub fn cover_of_submodule(g: &SnakeGraph, n: &SubmoduleRank, d: u32) -> Result<Cover> {
    let faces = distinct_faces(g)?;
    if n.rank.len() != g.nvars() {
        return Err(Error::InvalidRankVector(format!("length {} != {}", n.rank.len(), g.nvars())));
    }
    let on: BTreeSet<usize> = faces.iter().copied().collect();
    if n.rank.iter().enumerate().any(|(i, &r)| r > 0 && !on.contains(&(i + 1))) {
        return Err(Error::InvalidRankVector("rank outside the support".into()));
    }
    let h: Vec<u32> = faces.iter().map(|&f| n.rank[f - 1]).collect();
    cover_of_heights(g, d, &h)
}

/// Rank vector of any d-dimer cover, read off the tile heights.
pub fn rank_of_cover(g: &SnakeGraph, c: &Cover) -> Result<SubmoduleRank> {
    let faces = distinct_faces(g)?;
    let h = tile_heights(g, c)?;
    let mut rank = vec![0; g.nvars()];
    for (f, x) in faces.iter().zip(h) {
        rank[f - 1] = x;
    }
    Ok(SubmoduleRank { rank })
}

/// Outcome of comparing the cover lattice with the submodule lattice.
#[derive(Debug, Clone, Serialize)]
pub struct LatticeReport {
    pub tiles: usize,
    pub d: u32,
    pub covers: usize,
    pub submodules: usize,
    pub pass: bool,
    pub counterexample: Option<String>,
}

/// Checks that covers and submodules correspond bijectively, with twists
/// matching single tops at the twisted face.
pub fn verify_lattice_isomorphism(g: &SnakeGraph, d: u32) -> Result<LatticeReport> {
    let faces = distinct_faces(g)?;
    let (lo, hi) = (faces[0], *faces.last().unwrap());
    let sorted: Vec<usize> = (lo.min(hi)..=lo.max(hi)).collect();
    let mut have = faces.clone();
    have.sort();
    if have != sorted {
        return Err(Error::Input("faces are not a consecutive interval".into()));
    }
    let quiver = string_quiver(g);
    let support = (lo.min(hi), lo.max(hi));
    let lattice = g.enumerate_covers(d);
    let (subs, sub_edges) = submodule_lattice(&quiver, support, d);
    let mut report = LatticeReport {
        tiles: g.len(),
        d,
        covers: lattice.nodes.len(),
        submodules: subs.len(),
        pass: false,
        counterexample: None,
    };
    let fail = |mut r: LatticeReport, why: String| {
        r.counterexample = Some(why);
        Ok(r)
    };
    let mut image = Vec::with_capacity(lattice.nodes.len());
    for (c, &level) in lattice.nodes.iter().zip(&lattice.levels) {
        let n = rank_of_cover(g, c)?;
        if d == 2 {
            let via = submodule_of_cover(g, c)?;
            if via != n {
                return fail(report, format!("{:?}: face function {:?} vs heights {:?}", g.encode(c), via.rank, n.rank));
            }
            let s = symmetric_difference(g, c, &g.min_cover(2))?.completion();
            if !s.is_optimal() {
                return fail(report, format!("{:?}: completion not optimal", g.encode(c)));
            }
        }
        if !is_submodule(&quiver, support, d, &n) {
            return fail(report, format!("{:?} ↦ {:?} is not a submodule", g.encode(c), n.rank));
        }
        if n.rank.iter().sum::<u32>() != level {
            return fail(report, format!("{:?}: level {level} vs total rank", g.encode(c)));
        }
        if &cover_of_submodule(g, &n, d)? != c {
            return fail(report, format!("{:?} does not round trip", g.encode(c)));
        }
        image.push(n);
    }
    let distinct: BTreeSet<&SubmoduleRank> = image.iter().collect();
    if distinct.len() != image.len() || image.len() != subs.len() {
        return fail(report, "maps are not bijective".into());
    }
    let pos: HashMap<&SubmoduleRank, usize> = subs.iter().enumerate().map(|(i, n)| (n, i)).collect();
    let mut mapped: Vec<(usize, usize, usize)> = lattice
        .edges
        .iter()
        .map(|&(a, b, face)| (pos[&image[a]], pos[&image[b]], face))
        .collect();
    mapped.sort();
    let mut expected = sub_edges.clone();
    expected.sort();
    if mapped != expected {
        return fail(report, format!("edges differ: twists {mapped:?} vs tops {expected:?}"));
    }
    report.pass = true;
    Ok(report)
}

/// Cover and rank vector pairs, ordered as the cover lattice.
pub fn bijection(g: &SnakeGraph, d: u32) -> Result<Vec<(Cover, SubmoduleRank)>> {
    g.enumerate_covers(d)
        .nodes
        .into_iter()
        .map(|c| {
            let n = rank_of_cover(g, &c)?;
            Ok((c, n))
        })
        .collect()
}

/// Every snake shape with `tiles` tiles, faces labelled `1..=tiles`.
pub fn all_shapes(tiles: usize) -> Vec<SnakeGraph> {
    if tiles == 0 {
        return Vec::new();
    }
    let faces: Vec<usize> = (1..=tiles).collect();
    (0..1u32 << (tiles - 1))
        .map(|mask| {
            let dirs: Vec<Dir> = (0..tiles - 1)
                .map(|i| if mask >> i & 1 == 1 { Dir::North } else { Dir::East })
                .collect();
            SnakeGraph::from_shape(&faces, &dirs)
        })
        .collect()
}

/// Lattice isomorphism on each graph for each `d`.
pub fn lattice_sweep(graphs: &[SnakeGraph], ds: &[u32]) -> Result<SweepReport> {
    let reports: Vec<Result<SweepReport>> = graphs
        .par_iter()
        .map(|g| {
            let mut rep = SweepReport::default();
            for &d in ds {
                let r = verify_lattice_isomorphism(g, d)?;
                let case = || format!("faces={:?} dirs={:?} d={d}", g.faces(), g.dirs());
                rep.record(
                    case,
                    "lattice",
                    r.pass,
                    r.counterexample.unwrap_or_default(),
                    format!("covers={} submodules={}", r.covers, r.submodules),
                );
            }
            Ok(rep)
        })
        .collect();
    let mut total = SweepReport::default();
    for r in reports {
        total = total.merge(r?);
    }
    Ok(total)
}
