//! Snake graphs, d-dimer covers, their twist lattices and expansion formulas.

use std::collections::{BTreeSet, HashMap, VecDeque};

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polygon::{ccw_offset, is_boundary, Crossing, EdgeLabel, OrientedTriangulation, Vertex};
use crate::superring::{HalfMonomial, SuperExpr};

/// Position of a tile relative to its predecessor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Dir {
    East,
    North,
}

/// Side of a tile; the discriminant indexes [`SnakeGraph::tile_edges`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    W = 0,
    S = 1,
    E = 2,
    N = 3,
}

impl Side {
    pub const ALL: [Side; 4] = [Side::W, Side::S, Side::E, Side::N];

    pub fn letter(self) -> char {
        ['W', 'S', 'E', 'N'][self as usize]
    }
}

/// Edge label inside a snake graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SnakeLabel {
    Arc(usize),
    Boundary(Vertex, Vertex),
    /// Abstract snakes carry no polygon data.
    Free,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tile {
    pub face: usize,
    pub origin: (i32, i32),
    /// Polygon vertices at SW, SE, NE, NW.
    pub corners: Option<[Vertex; 4]>,
    pub theta_bl: usize,
    pub theta_tr: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnakeEdge {
    pub ends: [(i32, i32); 2],
    pub label: SnakeLabel,
    pub tiles: Vec<(usize, Side)>,
}

impl SnakeEdge {
    /// On the outer boundary of the snake graph.
    pub fn is_outer(&self) -> bool {
        self.tiles.len() == 1
    }

    pub fn weight_var(&self) -> Option<usize> {
        match self.label {
            SnakeLabel::Arc(i) => Some(i),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnakeGraph {
    tiles: Vec<Tile>,
    dirs: Vec<Dir>,
    edges: Vec<SnakeEdge>,
    tile_edges: Vec<[usize; 4]>,
    vertices: Vec<(i32, i32)>,
    vertex_edges: Vec<Vec<usize>>,
    dmin: Vec<bool>,
    nvars: usize,
}

/// Multiset of edges covering each vertex exactly `d` times.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cover {
    pub d: u32,
    pub mult: Vec<u32>,
}

/// Rotation of one copy of a tile's edge pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Twist {
    /// N + S become W + E.
    ToVertical,
    /// W + E become N + S.
    ToHorizontal,
}

/// A single-edge cycle of a double dimer cover.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cycle {
    pub first_tile: usize,
    pub last_tile: usize,
    pub theta_bl: usize,
    pub theta_tr: usize,
}

/// Covers reachable from the minimum by twists, graded by twist distance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverLattice {
    pub d: u32,
    pub nodes: Vec<Cover>,
    pub levels: Vec<u32>,
    /// `(lower, upper, face label of the twisted tile)`.
    pub edges: Vec<(usize, usize, usize)>,
    pub bottom: usize,
    pub top: usize,
}

impl SnakeGraph {
    fn assemble(
        faces: &[usize],
        dirs: &[Dir],
        corners: Option<Vec<[Vertex; 4]>>,
        thetas: Vec<(usize, usize)>,
        label: impl Fn(Vertex, Vertex) -> SnakeLabel,
        nvars: usize,
    ) -> SnakeGraph {
        let mut origin = (0i32, 0i32);
        let mut tiles = Vec::with_capacity(faces.len());
        for (i, &face) in faces.iter().enumerate() {
            if i > 0 {
                match dirs[i - 1] {
                    Dir::East => origin.0 += 1,
                    Dir::North => origin.1 += 1,
                }
            }
            tiles.push(Tile {
                face,
                origin,
                corners: corners.as_ref().map(|c| c[i]),
                theta_bl: thetas[i].0,
                theta_tr: thetas[i].1,
            });
        }
        let mut edges: Vec<SnakeEdge> = Vec::new();
        let mut index: HashMap<[(i32, i32); 2], usize> = HashMap::new();
        let mut tile_edges = Vec::with_capacity(tiles.len());
        for (ti, tile) in tiles.iter().enumerate() {
            let (x, y) = tile.origin;
            let pts = [(x, y), (x + 1, y), (x + 1, y + 1), (x, y + 1)];
            // corner indices of each side, W S E N
            let sides = [(0usize, 3usize), (0, 1), (1, 2), (3, 2)];
            let mut ids = [0usize; 4];
            for (si, &(a, b)) in sides.iter().enumerate() {
                let key = [pts[a], pts[b]];
                let lab = match &tile.corners {
                    Some(c) => label(c[a], c[b]),
                    None => SnakeLabel::Free,
                };
                let id = *index.entry(key).or_insert_with(|| {
                    edges.push(SnakeEdge {
                        ends: key,
                        label: lab,
                        tiles: Vec::new(),
                    });
                    edges.len() - 1
                });
                debug_assert_eq!(edges[id].label, lab);
                edges[id].tiles.push((ti, Side::ALL[si]));
                ids[si] = id;
            }
            tile_edges.push(ids);
        }
        let mut vset = BTreeSet::new();
        for e in &edges {
            vset.insert(e.ends[0]);
            vset.insert(e.ends[1]);
        }
        let vertices: Vec<(i32, i32)> = vset.into_iter().collect();
        let mut vertex_edges = vec![Vec::new(); vertices.len()];
        for (ei, e) in edges.iter().enumerate() {
            for p in e.ends {
                let vi = vertices.binary_search(&p).unwrap();
                vertex_edges[vi].push(ei);
            }
        }
        let mut g = SnakeGraph {
            tiles,
            dirs: dirs.to_vec(),
            edges,
            tile_edges,
            vertices,
            vertex_edges,
            dmin: Vec::new(),
            nvars,
        };
        g.dmin = g.boundary_matching();
        g
    }

    /// Snake graph of a bare shape; face labels index the even variables.
    pub fn from_shape(faces: &[usize], dirs: &[Dir]) -> SnakeGraph {
        assert_eq!(dirs.len() + 1, faces.len(), "one direction per glued tile");
        let thetas = (0..faces.len()).map(|i| (i + 1, i + 2)).collect();
        let nvars = faces.iter().copied().max().unwrap_or(0);
        Self::assemble(faces, dirs, None, thetas, |_, _| SnakeLabel::Free, nvars)
    }

    /// Boundary cover through the West edge of the first tile.
    fn boundary_matching(&self) -> Vec<bool> {
        let mut inside = vec![false; self.edges.len()];
        let start = self.tile_edges[0][Side::W as usize];
        let mut seen = vec![false; self.edges.len()];
        let mut cur = start;
        let mut at = self.edges[start].ends[1];
        let mut take = true;
        loop {
            seen[cur] = true;
            inside[cur] = take;
            take = !take;
            let vi = self.vertex_index(at);
            let next = self.vertex_edges[vi]
                .iter()
                .copied()
                .find(|&e| e != cur && self.edges[e].is_outer());
            let next = next.expect("outer boundary is a cycle");
            if seen[next] {
                break;
            }
            let e = &self.edges[next];
            at = if e.ends[0] == at { e.ends[1] } else { e.ends[0] };
            cur = next;
        }
        inside
    }

    fn vertex_index(&self, p: (i32, i32)) -> usize {
        self.vertices.binary_search(&p).expect("known vertex")
    }

    pub fn tiles(&self) -> &[Tile] {
        &self.tiles
    }

    pub fn len(&self) -> usize {
        self.tiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tiles.is_empty()
    }

    pub fn dirs(&self) -> &[Dir] {
        &self.dirs
    }

    pub fn edges(&self) -> &[SnakeEdge] {
        &self.edges
    }

    /// Edge ids of a tile in W, S, E, N order.
    pub fn tile_edges(&self, tile: usize) -> [usize; 4] {
        self.tile_edges[tile]
    }

    pub fn edge(&self, tile: usize, side: Side) -> usize {
        self.tile_edges[tile][side as usize]
    }

    pub fn vertices(&self) -> &[(i32, i32)] {
        &self.vertices
    }

    pub fn vertex_edges(&self, vi: usize) -> &[usize] {
        &self.vertex_edges[vi]
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn faces(&self) -> Vec<usize> {
        self.tiles.iter().map(|t| t.face).collect()
    }

    /// Edges of the minimal boundary cover.
    pub fn in_dmin(&self, e: usize) -> bool {
        self.dmin[e]
    }

    /// Outer edges belonging to a tile.
    pub fn outer_edges(&self, tile: usize) -> Vec<usize> {
        self.tile_edges[tile]
            .iter()
            .copied()
            .filter(|&e| self.edges[e].is_outer())
            .collect()
    }

    /// Interior edge shared by tiles `i` and `i + 1`.
    pub fn interior_edge(&self, i: usize) -> usize {
        match self.dirs[i] {
            Dir::East => self.edge(i, Side::E),
            Dir::North => self.edge(i, Side::N),
        }
    }

    pub fn is_valid(&self, c: &Cover) -> bool {
        c.mult.len() == self.edges.len()
            && self
                .vertex_edges
                .iter()
                .all(|es| es.iter().map(|&e| c.mult[e]).sum::<u32>() == c.d)
    }

    pub fn min_cover(&self, d: u32) -> Cover {
        Cover {
            d,
            mult: self.dmin.iter().map(|&b| if b { d } else { 0 }).collect(),
        }
    }

    pub fn max_cover(&self, d: u32) -> Cover {
        Cover {
            d,
            mult: self
                .edges
                .iter()
                .zip(&self.dmin)
                .map(|(e, &b)| if e.is_outer() && !b { d } else { 0 })
                .collect(),
        }
    }

    pub fn twist(&self, c: &Cover, tile: usize, how: Twist) -> Result<Cover> {
        let [w, s, e, n] = self.tile_edges[tile];
        let (from, to) = match how {
            Twist::ToVertical => ([n, s], [w, e]),
            Twist::ToHorizontal => ([w, e], [n, s]),
        };
        if from.iter().any(|&x| c.mult[x] == 0) {
            return Err(Error::NotTwistable(tile));
        }
        let mut out = c.clone();
        for x in from {
            out.mult[x] -= 1;
        }
        for x in to {
            out.mult[x] += 1;
        }
        Ok(out)
    }

    /// Breadth-first closure of the minimal cover under twists.
    pub fn enumerate_covers(&self, d: u32) -> CoverLattice {
        let start = self.min_cover(d);
        let mut level: HashMap<Cover, u32> = HashMap::new();
        level.insert(start.clone(), 0);
        let mut queue = VecDeque::from([start]);
        let mut links: Vec<(Cover, Cover, usize)> = Vec::new();
        while let Some(c) = queue.pop_front() {
            let l = level[&c];
            for tile in 0..self.tiles.len() {
                for how in [Twist::ToVertical, Twist::ToHorizontal] {
                    let Ok(next) = self.twist(&c, tile, how) else {
                        continue;
                    };
                    match level.get(&next) {
                        None => {
                            level.insert(next.clone(), l + 1);
                            queue.push_back(next.clone());
                            links.push((c.clone(), next, tile));
                        }
                        Some(&m) if m == l + 1 => links.push((c.clone(), next, tile)),
                        Some(&m) => debug_assert!(m + 1 == l || m == l + 1, "twist graph is graded"),
                    }
                }
            }
        }
        let mut nodes: Vec<(u32, Cover)> = level.into_iter().map(|(c, l)| (l, c)).collect();
        nodes.sort();
        let pos: HashMap<&Cover, usize> =
            nodes.iter().enumerate().map(|(i, (_, c))| (c, i)).collect();
        let mut edges: Vec<(usize, usize, usize)> = links
            .iter()
            .map(|(a, b, t)| (pos[a], pos[b], self.tiles[*t].face))
            .collect();
        edges.sort();
        edges.dedup();
        let top_cover = self.max_cover(d);
        let top = pos[&top_cover];
        let bottom = pos[&self.min_cover(d)];
        CoverLattice {
            d,
            levels: nodes.iter().map(|(l, _)| *l).collect(),
            nodes: nodes.into_iter().map(|(_, c)| c).collect(),
            edges,
            bottom,
            top,
        }
    }

    /// Sorted `(tile, side, multiplicity)` triples, each edge under its first tile.
    pub fn encode(&self, c: &Cover) -> Vec<(usize, char, u32)> {
        let mut out: Vec<(usize, char, u32)> = self
            .edges
            .iter()
            .enumerate()
            .filter(|(i, _)| c.mult[*i] > 0)
            .map(|(i, e)| (e.tiles[0].0, e.tiles[0].1.letter(), c.mult[i]))
            .collect();
        out.sort();
        out
    }

    /// Product of face variables.
    pub fn cross_weight(&self) -> HalfMonomial {
        let mut m = HalfMonomial::one(self.nvars);
        for t in &self.tiles {
            m.exp2[t.face - 1] += 2;
        }
        m
    }

    /// `Π x_e^{m(e)}`; boundary segments weigh 1.
    pub fn weight(&self, c: &Cover) -> HalfMonomial {
        self.even_weight(c, 2)
    }

    fn even_weight(&self, c: &Cover, scale: i32) -> HalfMonomial {
        let mut m = HalfMonomial::one(self.nvars);
        for (e, &k) in self.edges.iter().zip(&c.mult) {
            if let Some(i) = e.weight_var() {
                m.exp2[i - 1] += scale * k as i32;
            }
        }
        m
    }

    /// Cycles of single edges in a double dimer cover, ordered along the snake.
    pub fn cycles_of(&self, c: &Cover) -> Result<Vec<Cycle>> {
        if c.d != 2 || !self.is_valid(c) {
            return Err(Error::MalformedCover("not a double dimer cover".into()));
        }
        let single: Vec<usize> = (0..self.edges.len()).filter(|&e| c.mult[e] == 1).collect();
        let mut deg = vec![0usize; self.vertices.len()];
        for &e in &single {
            for p in self.edges[e].ends {
                deg[self.vertex_index(p)] += 1;
            }
        }
        if deg.iter().any(|&k| k != 0 && k != 2) {
            return Err(Error::MalformedCover("single edges do not form cycles".into()));
        }
        let mut used = vec![false; self.edges.len()];
        let mut cycles = Vec::new();
        for &e0 in &single {
            if used[e0] {
                continue;
            }
            let mut polygon = vec![self.edges[e0].ends[0]];
            let mut cur = e0;
            let mut at = self.edges[e0].ends[1];
            used[e0] = true;
            while at != polygon[0] {
                polygon.push(at);
                let vi = self.vertex_index(at);
                let next = self.vertex_edges[vi]
                    .iter()
                    .copied()
                    .find(|&e| e != cur && c.mult[e] == 1)
                    .ok_or_else(|| Error::MalformedCover("open path of single edges".into()))?;
                used[next] = true;
                let ends = self.edges[next].ends;
                at = if ends[0] == at { ends[1] } else { ends[0] };
                cur = next;
            }
            let enclosed: Vec<usize> = (0..self.tiles.len())
                .filter(|&t| {
                    let (x, y) = self.tiles[t].origin;
                    encloses(&polygon, (2 * x + 1, 2 * y + 1))
                })
                .collect();
            let (Some(&first), Some(&last)) = (enclosed.first(), enclosed.last()) else {
                return Err(Error::MalformedCover("cycle encloses no tile".into()));
            };
            if last - first + 1 != enclosed.len() {
                return Err(Error::MalformedCover("enclosed tiles are not contiguous".into()));
            }
            cycles.push(Cycle {
                first_tile: first,
                last_tile: last,
                theta_bl: self.tiles[first].theta_bl,
                theta_tr: self.tiles[last].theta_tr,
            });
        }
        cycles.sort_by_key(|c| c.first_tile);
        Ok(cycles)
    }

    /// Weight of a double dimer cover in the super ring of `ot`.
    pub fn wt2(&self, c: &Cover, alg: &std::sync::Arc<crate::superring::Algebra>) -> Result<SuperExpr> {
        let mono = self.even_weight(c, 1);
        let mut w = SuperExpr::monomial(alg, BigInt::one(), mono);
        for cy in self.cycles_of(c)? {
            w = w.mul(&SuperExpr::theta_pair(alg, cy.theta_bl, cy.theta_tr)?)?;
        }
        Ok(w)
    }
}

/// Point-in-polygon for a lattice polygon; the query point is given doubled.
fn encloses(polygon: &[(i32, i32)], (px, py): (i32, i32)) -> bool {
    let mut inside = false;
    for i in 0..polygon.len() {
        let (a, b) = (polygon[i], polygon[(i + 1) % polygon.len()]);
        let (ax, ay, bx, by) = (2 * a.0, 2 * a.1, 2 * b.0, 2 * b.1);
        if (ay > py) != (by > py) && ax == bx && ax > px {
            inside = !inside;
        }
    }
    inside
}

/// Snake graph of the diagonal `(p, q)`, tiles ordered by increasing arc label.
pub fn build_snake(ot: &OrientedTriangulation, p: Vertex, q: Vertex) -> Result<SnakeGraph> {
    let c = ot.crossing_increasing(p, q)?;
    Ok(snake_of_crossing(ot, &c))
}

pub fn snake_of_crossing(ot: &OrientedTriangulation, c: &Crossing) -> SnakeGraph {
    let v = ot.vertices();
    let d = c.arcs.len();
    let mut corners: Vec<[Vertex; 4]> = Vec::with_capacity(d);
    let mut dirs = Vec::with_capacity(d.saturating_sub(1));
    let (a, b) = ot.arc(c.arcs[0]);
    let (se, nw) = if ccw_offset(v, c.start, a) > ccw_offset(v, c.start, b) {
        (a, b)
    } else {
        (b, a)
    };
    let ne = ot.apex(c.triangles[1], a, b);
    corners.push([c.start, se, ne, nw]);
    for i in 1..d {
        let [_, se, _, nw] = corners[i - 1];
        let (x, y) = ot.arc(c.arcs[i]);
        let hinge = if x == se || x == nw { x } else { y };
        let far = if hinge == x { y } else { x };
        let (sw, se2, nw2, dir) = if hinge == nw {
            (se, hinge, far, Dir::East)
        } else {
            (nw, far, hinge, Dir::North)
        };
        let ne2 = ot.apex(c.triangles[i + 1], x, y);
        corners.push([sw, se2, ne2, nw2]);
        dirs.push(dir);
    }
    let faces = c.arcs.clone();
    let thetas = (0..d).map(|i| (c.triangles[i], c.triangles[i + 1])).collect();
    let label = |x: Vertex, y: Vertex| match ot.label_of(x, y) {
        Some(EdgeLabel::Arc(i)) => SnakeLabel::Arc(i),
        Some(EdgeLabel::Boundary(a, b)) => SnakeLabel::Boundary(a, b),
        None => unreachable!("tile sides are edges of the triangulation"),
    };
    SnakeGraph::assemble(&faces, &dirs, Some(corners), thetas, label, ot.n())
}

enum Special {
    Boundary,
    InT(usize),
}

fn special(ot: &OrientedTriangulation, p: Vertex, q: Vertex) -> Result<Option<Special>> {
    let v = ot.vertices();
    if p >= v || q >= v {
        return Err(Error::OutOfRangeVertex { vertex: p.max(q), v });
    }
    if p == q {
        return Err(Error::BoundaryArc(p, q));
    }
    if is_boundary(v, p, q) {
        return Ok(Some(Special::Boundary));
    }
    Ok(ot.arc_label(p, q).map(Special::InT))
}

/// `(1/cross) Σ_P wt(P)` over perfect matchings.
pub fn classical_expansion(ot: &OrientedTriangulation, p: Vertex, q: Vertex) -> Result<SuperExpr> {
    let alg = ot.algebra();
    match special(ot, p, q)? {
        Some(Special::Boundary) => return Ok(SuperExpr::one(alg)),
        Some(Special::InT(i)) => return Ok(SuperExpr::var(alg, i)),
        None => {}
    }
    let g = build_snake(ot, p, q)?;
    let lattice = g.enumerate_covers(1);
    let mut sum = SuperExpr::zero(alg);
    for c in &lattice.nodes {
        sum = sum.add(&SuperExpr::monomial(alg, BigInt::one(), g.weight(c)))?;
    }
    Ok(sum.div_monomial(&g.cross_weight()))
}

/// `(1/cross) Σ_D wt₂(D)` over double dimer covers.
pub fn super_lambda_dimer(ot: &OrientedTriangulation, p: Vertex, q: Vertex) -> Result<SuperExpr> {
    let alg = ot.algebra();
    match special(ot, p, q)? {
        Some(Special::Boundary) => return Ok(SuperExpr::one(alg)),
        Some(Special::InT(i)) => return Ok(SuperExpr::var(alg, i)),
        None => {}
    }
    let g = build_snake(ot, p, q)?;
    let lattice = g.enumerate_covers(2);
    let mut sum = SuperExpr::zero(alg);
    for c in &lattice.nodes {
        sum = sum.add(&g.wt2(c, alg)?)?;
    }
    Ok(sum.div_monomial(&g.cross_weight()))
}

pub fn cross_weight(ot: &OrientedTriangulation, p: Vertex, q: Vertex) -> Result<HalfMonomial> {
    Ok(build_snake(ot, p, q)?.cross_weight())
}
