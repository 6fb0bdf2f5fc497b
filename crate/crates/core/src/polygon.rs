//! Triangulated polygons without internal triangles.
//!
//! Vertices are `0..v` counterclockwise. Internal arcs are labelled `1..=n`
//! in the order the longest arc crosses them from its source `s`, and
//! triangles carry ids `1..=n+1` by proximity to `s` (triangle id `k+1`
//! lies between arcs `k` and `k+1`).

use std::collections::{BTreeSet, VecDeque};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::superring::Algebra;

pub type Vertex = usize;

/// Counterclockwise offset from `a` to `b`.
pub fn ccw_offset(v: usize, a: Vertex, b: Vertex) -> usize {
    (b + v - a) % v
}

/// `x` lies strictly inside the counterclockwise walk from `a` to `b`.
pub fn strictly_between(v: usize, a: Vertex, b: Vertex, x: Vertex) -> bool {
    let d = ccw_offset(v, a, x);
    d > 0 && d < ccw_offset(v, a, b)
}

pub fn is_boundary(v: usize, p: Vertex, q: Vertex) -> bool {
    let d = ccw_offset(v, p, q);
    d == 1 || d == v - 1
}

/// Two chords cross in their interiors.
pub fn crosses(v: usize, (a, b): (Vertex, Vertex), (c, d): (Vertex, Vertex)) -> bool {
    if a == c || a == d || b == c || b == d {
        return false;
    }
    strictly_between(v, a, b, c) != strictly_between(v, a, b, d)
}

fn norm(p: Vertex, q: Vertex) -> (Vertex, Vertex) {
    (p.min(q), p.max(q))
}

/// What a vertex pair is with respect to a triangulation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EdgeLabel {
    Arc(usize),
    Boundary(Vertex, Vertex),
}

/// Arcs crossed by a diagonal together with the triangles it traverses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Crossing {
    pub start: Vertex,
    pub end: Vertex,
    /// Arc labels in crossing order.
    pub arcs: Vec<usize>,
    /// Triangle ids, one more than `arcs`.
    pub triangles: Vec<usize>,
}

/// A validated triangulation with arcs labelled along its longest arc.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangulation {
    v: usize,
    arcs: Vec<(Vertex, Vertex)>,
    triangles: Vec<[Vertex; 3]>,
    s: Vertex,
    t: Vertex,
}

/// Default orientation, fan centres and θ order on top of a triangulation.
#[derive(Debug, Clone)]
pub struct OrientedTriangulation {
    base: Triangulation,
    dir: Vec<(Vertex, Vertex)>,
    centres: Vec<Vertex>,
    order: ThetaOrder,
    algebra: Arc<Algebra>,
}

/// Positive order on θ variables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaOrder {
    /// θ ids from largest to smallest.
    pub order: Vec<usize>,
}

impl ThetaOrder {
    /// Rank of θ_id, 1 = largest.
    pub fn rank(&self, id: usize) -> usize {
        self.order.iter().position(|&x| x == id).expect("known θ id") + 1
    }
}

fn triangles_of(v: usize, arcs: &[(Vertex, Vertex)]) -> Vec<[Vertex; 3]> {
    let mut adj = vec![vec![false; v]; v];
    let sides = (0..v).map(|i| (i, (i + 1) % v));
    for (p, q) in sides.chain(arcs.iter().copied()) {
        adj[p][q] = true;
        adj[q][p] = true;
    }
    let mut out = Vec::new();
    for a in 0..v {
        for b in a + 1..v {
            if !adj[a][b] {
                continue;
            }
            out.extend((b + 1..v).filter(|&c| adj[a][c] && adj[b][c]).map(|c| [a, b, c]));
        }
    }
    out
}

fn ear_apex(v: usize, tri: &[Vertex; 3]) -> Option<Vertex> {
    tri.iter().copied().find(|&x| {
        let others: Vec<_> = tri.iter().filter(|&&y| y != x).collect();
        others.iter().all(|&&y| is_boundary(v, x, y))
    })
}

/// Checks an arc set and labels it along the longest arc.
///
/// `gamma` fixes the source and target of the longest arc; by default the
/// source is the smaller of the two ear apexes.
pub fn validate(
    v: usize,
    arcs: &[(Vertex, Vertex)],
    gamma: Option<(Vertex, Vertex)>,
) -> Result<Triangulation> {
    if v < 4 {
        return Err(Error::TooFewVertices(v));
    }
    let mut seen = BTreeSet::new();
    for &(p, q) in arcs {
        for x in [p, q] {
            if x >= v {
                return Err(Error::OutOfRangeVertex { vertex: x, v });
            }
        }
        if p == q || is_boundary(v, p, q) {
            return Err(Error::BoundaryArc(p, q));
        }
        if !seen.insert(norm(p, q)) {
            return Err(Error::DuplicateArc(p, q));
        }
    }
    let list: Vec<_> = seen.iter().copied().collect();
    for (i, &a) in list.iter().enumerate() {
        for &b in &list[i + 1..] {
            if crosses(v, a, b) {
                return Err(Error::CrossingArcs(a.0, a.1, b.0, b.1));
            }
        }
    }
    if list.len() != v - 3 {
        return Err(Error::NotMaximal {
            expected: v - 3,
            found: list.len(),
        });
    }
    let triangles = triangles_of(v, &list);
    for tri in &triangles {
        let has_boundary = (0..3).any(|i| is_boundary(v, tri[i], tri[(i + 1) % 3]));
        if !has_boundary {
            return Err(Error::InternalTriangle(*tri));
        }
    }
    let apexes: Vec<Vertex> = triangles.iter().filter_map(|t| ear_apex(v, t)).collect();
    debug_assert_eq!(apexes.len(), 2);
    let (s, t) = match gamma {
        None => (apexes[0].min(apexes[1]), apexes[0].max(apexes[1])),
        Some((s, t)) => {
            for x in [s, t] {
                if x >= v {
                    return Err(Error::OutOfRangeVertex { vertex: x, v });
                }
            }
            if norm(s, t) != norm(apexes[0], apexes[1]) {
                return Err(Error::NotLongestArc(s, t));
            }
            (s, t)
        }
    };
    let provisional = Triangulation {
        v,
        arcs: list,
        triangles,
        s,
        t,
    };
    let walk = provisional.walk(s, t)?;
    let arcs = walk.0.iter().map(|&i| provisional.arcs[i]).collect();
    let triangles = walk.1.iter().map(|&i| provisional.triangles[i]).collect();
    Ok(Triangulation {
        v,
        arcs,
        triangles,
        s,
        t,
    })
}

impl Triangulation {
    pub fn vertices(&self) -> usize {
        self.v
    }

    /// Number of internal arcs.
    pub fn n(&self) -> usize {
        self.arcs.len()
    }

    /// Endpoints of arc `label`, smaller first.
    pub fn arc(&self, label: usize) -> (Vertex, Vertex) {
        self.arcs[label - 1]
    }

    pub fn arcs(&self) -> &[(Vertex, Vertex)] {
        &self.arcs
    }

    /// Triangle with id `id` (1-based), vertices sorted.
    pub fn triangle(&self, id: usize) -> [Vertex; 3] {
        self.triangles[id - 1]
    }

    pub fn triangles(&self) -> &[[Vertex; 3]] {
        &self.triangles
    }

    pub fn gamma(&self) -> (Vertex, Vertex) {
        (self.s, self.t)
    }

    pub fn label_of(&self, p: Vertex, q: Vertex) -> Option<EdgeLabel> {
        if p >= self.v || q >= self.v || p == q {
            return None;
        }
        if is_boundary(self.v, p, q) {
            return Some(EdgeLabel::Boundary(p.min(q), p.max(q)));
        }
        self.arcs
            .iter()
            .position(|&a| a == norm(p, q))
            .map(|i| EdgeLabel::Arc(i + 1))
    }

    pub fn arc_label(&self, p: Vertex, q: Vertex) -> Option<usize> {
        match self.label_of(p, q) {
            Some(EdgeLabel::Arc(i)) => Some(i),
            _ => None,
        }
    }

    /// Id of the triangle containing the boundary segment `(u, u+1)`.
    pub fn triangle_on_boundary(&self, u: Vertex) -> usize {
        let w = (u + 1) % self.v;
        self.triangles
            .iter()
            .position(|t| t.contains(&u) && t.contains(&w))
            .expect("every boundary segment lies in a triangle")
            + 1
    }

    /// Triangle ids adjacent to an edge.
    pub fn triangles_on(&self, p: Vertex, q: Vertex) -> Vec<usize> {
        self.triangles
            .iter()
            .enumerate()
            .filter(|(_, t)| t.contains(&p) && t.contains(&q))
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// Vertex of triangle `id` not on edge `(p, q)`.
    pub fn apex(&self, id: usize, p: Vertex, q: Vertex) -> Vertex {
        *self
            .triangle(id)
            .iter()
            .find(|&&x| x != p && x != q)
            .expect("triangle has a third vertex")
    }

    /// Dual-tree walk; indices into the internal arc and triangle lists.
    fn walk(&self, start: Vertex, end: Vertex) -> Result<(Vec<usize>, Vec<usize>)> {
        let v = self.v;
        if start >= v || end >= v {
            return Err(Error::OutOfRangeVertex {
                vertex: start.max(end),
                v,
            });
        }
        if start == end || is_boundary(v, start, end) {
            return Err(Error::BoundaryArc(start, end));
        }
        if self.arcs.contains(&norm(start, end)) {
            return Err(Error::ArcInTriangulation(start, end));
        }
        let gamma = (start, end);
        let crossed = |a: Vertex, b: Vertex| crosses(v, gamma, (a, b));
        let first = self
            .triangles
            .iter()
            .position(|t| {
                t.contains(&start) && {
                    let o: Vec<_> = t.iter().filter(|&&x| x != start).collect();
                    crossed(*o[0], *o[1])
                }
            })
            .expect("a diagonal leaves its start through some triangle");
        let mut tris = vec![first];
        let mut arcs = Vec::new();
        let mut prev: Option<(Vertex, Vertex)> = None;
        loop {
            let t = self.triangles[*tris.last().unwrap()];
            let next_edge = [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])]
                .into_iter()
                .find(|&e| Some(e) != prev && crossed(e.0, e.1));
            let Some(e) = next_edge else { break };
            let ai = self
                .arcs
                .iter()
                .position(|&a| a == e)
                .expect("crossed edges are internal arcs");
            arcs.push(ai);
            let nt = self
                .triangles
                .iter()
                .enumerate()
                .position(|(j, tt)| {
                    j != *tris.last().unwrap() && tt.contains(&e.0) && tt.contains(&e.1)
                })
                .expect("an internal arc borders two triangles");
            tris.push(nt);
            prev = Some(e);
        }
        Ok((arcs, tris))
    }

    /// Arcs crossed by the diagonal from `start` to `end`, in order.
    pub fn crossed_arcs(&self, start: Vertex, end: Vertex) -> Result<Crossing> {
        let (a, t) = self.walk(start, end)?;
        Ok(Crossing {
            start,
            end,
            arcs: a.iter().map(|i| i + 1).collect(),
            triangles: t.iter().map(|i| i + 1).collect(),
        })
    }

    /// Crossing oriented so that labels increase.
    pub fn crossing_increasing(&self, p: Vertex, q: Vertex) -> Result<Crossing> {
        let c = self.crossed_arcs(p, q)?;
        let reversed = if c.arcs.len() > 1 {
            c.arcs[0] > c.arcs[1]
        } else {
            c.arcs.len() == 1 && c.triangles[0] > c.triangles[1]
        };
        if reversed {
            self.crossed_arcs(q, p)
        } else {
            Ok(c)
        }
    }

    /// First and last triangles met by a diagonal, or the two triangles
    /// bordering an arc of the triangulation.
    pub fn first_last_triangles(&self, p: Vertex, q: Vertex) -> Result<(usize, usize)> {
        match self.crossed_arcs(p, q) {
            Ok(c) => Ok((c.triangles[0], *c.triangles.last().unwrap())),
            Err(Error::ArcInTriangulation(..)) => {
                let ts = self.triangles_on(p, q);
                Ok((ts[0], ts[1]))
            }
            Err(e) => Err(e),
        }
    }

    /// Shared vertex of arcs `i` and `i + 1`.
    fn hinge(&self, i: usize) -> Vertex {
        let (a, b) = self.arc(i);
        let (c, d) = self.arc(i + 1);
        if a == c || a == d {
            a
        } else {
            debug_assert!(b == c || b == d);
            b
        }
    }

    /// Fan centres `c_1..c_N` ordered from `s` to `t`.
    pub fn fan_decomposition(&self) -> Vec<Vertex> {
        let n = self.n();
        if n == 1 {
            return vec![(self.s + self.v - 1) % self.v];
        }
        let mut centres: Vec<Vertex> = Vec::new();
        for i in 1..n {
            let h = self.hinge(i);
            if centres.last() != Some(&h) {
                centres.push(h);
            }
        }
        centres
    }

    /// Direction of every arc, indexed by label - 1.
    pub fn default_orientation(&self) -> Vec<(Vertex, Vertex)> {
        let n = self.n();
        let other = |i: usize, x: Vertex| {
            let (a, b) = self.arc(i);
            if a == x {
                b
            } else {
                a
            }
        };
        if n == 1 {
            let c = self.fan_decomposition()[0];
            return vec![(c, other(1, c))];
        }
        let hinges: Vec<Vertex> = (1..n).map(|i| self.hinge(i)).collect();
        let mut dir = Vec::with_capacity(n);
        dir.push((hinges[0], other(1, hinges[0])));
        for i in 2..n {
            let (prev, next) = (hinges[i - 2], hinges[i - 1]);
            if prev == next {
                dir.push((next, other(i, next)));
            } else {
                dir.push((prev, next));
            }
        }
        let last = hinges[n - 2];
        dir.push((last, other(n, last)));
        dir
    }

    /// Positive order from the boundary-edge description.
    pub fn positive_order(&self) -> ThetaOrder {
        let v = self.v;
        let n = self.n();
        let x = (self.s + v - 1) % v;
        let j = ccw_offset(v, self.s, self.t);
        let at = |k: usize| (x + k) % v;
        let mut primed = vec![self.triangle_on_boundary(at(1))];
        for i in 2..=n + 1 {
            let edge_start = if i <= j { at(i) } else { at(i + 1) };
            primed.push(self.triangle_on_boundary(edge_start));
        }
        debug_assert_eq!(primed[0], 1);
        let e1 = self.arc(1);
        let across = self
            .triangles_on(e1.0, e1.1)
            .into_iter()
            .find(|&id| id != 1)
            .expect("arc 1 borders two triangles");
        let third = self.apex(across, e1.0, e1.1);
        let mut order: Vec<usize> = primed[1..].to_vec();
        if third == at(3) {
            order.insert(0, 1);
        } else {
            order.push(1);
        }
        ThetaOrder { order }
    }

    /// Positive order from the step-by-step rule along the longest arc.
    pub fn positive_order_inductive(&self) -> ThetaOrder {
        let v = self.v;
        let n = self.n();
        let dir = self.default_orientation();
        let mut order: VecDeque<usize> = VecDeque::from([n + 1]);
        for i in (1..=n).rev() {
            let (p, q) = dir[i - 1];
            let w = self.apex(i, p, q);
            if strictly_between(v, p, q, w) {
                order.push_front(i);
            } else {
                order.push_back(i);
            }
        }
        ThetaOrder {
            order: order.into_iter().collect(),
        }
    }

    /// Adjacency quiver as arrows `(source, target)` between arc labels.
    pub fn quiver(&self) -> Vec<(usize, usize)> {
        let v = self.v;
        let mut arrows = Vec::new();
        for tri in &self.triangles {
            let sides = [(tri[0], tri[1]), (tri[0], tri[2]), (tri[1], tri[2])];
            let labels: Vec<(usize, (Vertex, Vertex))> = sides
                .iter()
                .filter_map(|&(p, q)| self.arc_label(p, q).map(|l| (l, (p, q))))
                .collect();
            for a in 0..labels.len() {
                for b in a + 1..labels.len() {
                    let (i, (p, q)) = labels[a];
                    let (j, (r, s)) = labels[b];
                    let c = [p, q].into_iter().find(|x| *x == r || *x == s).unwrap();
                    let oi = if p == c { q } else { p };
                    let oj = if r == c { s } else { r };
                    if ccw_offset(v, c, oj) < ccw_offset(v, c, oi) {
                        arrows.push((i, j));
                    } else {
                        arrows.push((j, i));
                    }
                }
            }
        }
        arrows.sort();
        arrows
    }

    pub fn orient(self) -> OrientedTriangulation {
        let dir = self.default_orientation();
        let centres = self.fan_decomposition();
        let order = self.positive_order();
        let algebra = Algebra::new(self.n(), &order.order).expect("order is a permutation");
        OrientedTriangulation {
            base: self,
            dir,
            centres,
            order,
            algebra,
        }
    }
}

impl OrientedTriangulation {
    pub fn base(&self) -> &Triangulation {
        &self.base
    }

    pub fn direction(&self, label: usize) -> (Vertex, Vertex) {
        self.dir[label - 1]
    }

    pub fn directions(&self) -> &[(Vertex, Vertex)] {
        &self.dir
    }

    pub fn fan_centres(&self) -> &[Vertex] {
        &self.centres
    }

    pub fn theta_order(&self) -> &ThetaOrder {
        &self.order
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }
}

impl std::ops::Deref for OrientedTriangulation {
    type Target = Triangulation;
    fn deref(&self) -> &Triangulation {
        &self.base
    }
}

/// Every internal diagonal of a `v`-gon.
pub fn all_diagonals(v: usize) -> Vec<(Vertex, Vertex)> {
    let mut out = Vec::new();
    for p in 0..v {
        for q in p + 2..v {
            if !is_boundary(v, p, q) {
                out.push((p, q));
            }
        }
    }
    out
}

fn triangulate(lo: Vertex, hi: Vertex) -> Vec<Vec<(Vertex, Vertex)>> {
    if hi - lo < 2 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for k in lo + 1..hi {
        let left = triangulate(lo, k);
        let right = triangulate(k, hi);
        for l in &left {
            for r in &right {
                let mut arcs = l.clone();
                arcs.extend_from_slice(r);
                if k - lo > 1 {
                    arcs.push((lo, k));
                }
                if hi - k > 1 {
                    arcs.push((k, hi));
                }
                out.push(arcs);
            }
        }
    }
    out
}

/// Every triangulation of a `v`-gon, internal triangles included.
pub fn all_arc_sets(v: usize) -> Vec<Vec<(Vertex, Vertex)>> {
    let mut sets: Vec<Vec<(Vertex, Vertex)>> = triangulate(0, v - 1)
        .into_iter()
        .map(|mut a| {
            a.sort();
            a
        })
        .collect();
    sets.sort();
    sets
}

/// Every triangulation of a `v`-gon without internal triangles.
pub fn all_triangulations(v: usize) -> Vec<Triangulation> {
    all_arc_sets(v)
        .into_iter()
        .filter_map(|a| validate(v, &a, None).ok())
        .collect()
}
