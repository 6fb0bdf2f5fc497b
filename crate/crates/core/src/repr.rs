//! String modules over the type A algebra of a triangulation, their induced
//! modules over `Λ ⊗ K[ε]/(ε^d)`, and the invariants consumed by the cluster
//! character.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::polygon::{OrientedTriangulation, Vertex};
use crate::snake::build_snake;
use crate::superring::{HalfMonomial, SuperExpr};

/// Quiver on vertices `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quiver {
    pub n: usize,
    pub arrows: Vec<(usize, usize)>,
}

impl Quiver {
    pub fn of(ot: &OrientedTriangulation) -> Quiver {
        Quiver {
            n: ot.n(),
            arrows: ot.quiver(),
        }
    }

    /// Number of arrows `i → j`.
    pub fn count(&self, i: usize, j: usize) -> i64 {
        self.arrows.iter().filter(|&&a| a == (i, j)).count() as i64
    }

    /// Arrow indices of a directed path, if one exists.
    fn path(&self, from: usize, to: usize) -> Option<Vec<usize>> {
        if from == to {
            return Some(Vec::new());
        }
        for (k, &(s, t)) in self.arrows.iter().enumerate() {
            if s == from {
                if let Some(mut rest) = self.path(t, to) {
                    rest.insert(0, k);
                    return Some(rest);
                }
            }
        }
        None
    }
}

/// Indecomposable module supported on an interval of arc labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StringModule {
    pub support: (usize, usize),
    pub arc: (Vertex, Vertex),
}

impl StringModule {
    pub fn dim_vector(&self, n: usize) -> Vec<u32> {
        (1..=n)
            .map(|i| u32::from(self.support.0 <= i && i <= self.support.1))
            .collect()
    }
}

/// Submodule of an induced module, encoded by its rank at each vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SubmoduleRank {
    pub rank: Vec<u32>,
}

pub fn module_of_arc(ot: &OrientedTriangulation, p: Vertex, q: Vertex) -> Result<StringModule> {
    let c = ot.crossing_increasing(p, q)?;
    Ok(StringModule {
        support: (c.arcs[0], *c.arcs.last().unwrap()),
        arc: (c.start, c.end),
    })
}

/// The diagonal crossing exactly the arcs `a..=b`.
pub fn arc_of_interval(ot: &OrientedTriangulation, a: usize, b: usize) -> (Vertex, Vertex) {
    let (p, q) = ot.arc(a);
    let (r, s) = ot.arc(b);
    (ot.apex(a, p, q), ot.apex(b + 1, r, s))
}

/// Rank vectors in `0..=d` on the support, monotone along arrows.
pub fn submodules(q: &Quiver, support: (usize, usize), d: u32) -> Vec<SubmoduleRank> {
    let (a, b) = support;
    let mut out = Vec::new();
    let mut rank = vec![0u32; q.n];
    fn go(
        q: &Quiver,
        a: usize,
        i: usize,
        b: usize,
        d: u32,
        rank: &mut Vec<u32>,
        out: &mut Vec<SubmoduleRank>,
    ) {
        if i > b {
            out.push(SubmoduleRank { rank: rank.clone() });
            return;
        }
        for r in 0..=d {
            rank[i - 1] = r;
            if i == a || is_monotone_upto(q, rank, i) {
                go(q, a, i + 1, b, d, rank, out);
            }
        }
        rank[i - 1] = 0;
    }
    if a >= 1 && a <= b && b <= q.n {
        go(q, a, a, b, d, &mut rank, &mut out);
    }
    out.sort();
    out
}

fn is_monotone_upto(q: &Quiver, rank: &[u32], i: usize) -> bool {
    q.arrows.iter().all(|&(s, t)| {
        let relevant = (s == i && t == i - 1) || (t == i && s == i - 1);
        !relevant || rank[s - 1] <= rank[t - 1]
    })
}

/// Whether a rank vector is a submodule of the induced module on `support`.
pub fn is_submodule(q: &Quiver, support: (usize, usize), d: u32, n: &SubmoduleRank) -> bool {
    n.rank.len() == q.n
        && n.rank.iter().enumerate().all(|(i, &r)| {
            let v = i + 1;
            r <= d && (r == 0 || (support.0 <= v && v <= support.1))
        })
        && q.arrows.iter().all(|&(s, t)| {
            let inside = |x: usize| support.0 <= x && x <= support.1;
            !(inside(s) && inside(t)) || n.rank[s - 1] <= n.rank[t - 1]
        })
}

/// Submodule inclusion lattice: nodes by total rank, edges add one top.
pub fn submodule_lattice(
    q: &Quiver,
    support: (usize, usize),
    d: u32,
) -> (Vec<SubmoduleRank>, Vec<(usize, usize, usize)>) {
    let mut nodes = submodules(q, support, d);
    nodes.sort_by_key(|n| (n.rank.iter().sum::<u32>(), n.rank.clone()));
    let pos: HashMap<&SubmoduleRank, usize> = nodes.iter().enumerate().map(|(i, n)| (n, i)).collect();
    let mut edges = Vec::new();
    for (i, n) in nodes.iter().enumerate() {
        for v in 0..q.n {
            let mut up = n.clone();
            up.rank[v] += 1;
            if let Some(&j) = pos.get(&up) {
                edges.push((i, j, v + 1));
            }
        }
    }
    edges.sort();
    (nodes, edges)
}

/// Summands of `F(N)`: maximal intervals where the rank is exactly 1.
pub fn f_of(ot: &OrientedTriangulation, n: &SubmoduleRank) -> Vec<StringModule> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < n.rank.len() {
        if n.rank[i] == 1 {
            let start = i;
            while i + 1 < n.rank.len() && n.rank[i + 1] == 1 {
                i += 1;
            }
            let (a, b) = (start + 1, i + 1);
            out.push(StringModule {
                support: (a, b),
                arc: arc_of_interval(ot, a, b),
            });
        }
        i += 1;
    }
    out
}

/// `θ_Δ θ_Δ'` for the first and last triangles of the module's arc.
pub fn mu_of_module(ot: &OrientedTriangulation, m: &StringModule) -> Result<SuperExpr> {
    let (a, b) = ot.first_last_triangles(m.arc.0, m.arc.1)?;
    SuperExpr::theta_pair(ot.algebra(), a, b)
}

pub fn mu_of_submodule(ot: &OrientedTriangulation, n: &SubmoduleRank) -> Result<SuperExpr> {
    let mut mu = SuperExpr::one(ot.algebra());
    for m in f_of(ot, n) {
        mu = mu.mul(&mu_of_module(ot, &m)?)?;
    }
    Ok(mu)
}

/// `X^{ind}` read off the minimal perfect matching.
pub fn index_monomial(ot: &OrientedTriangulation, p: Vertex, q: Vertex) -> Result<HalfMonomial> {
    let g = build_snake(ot, p, q)?;
    Ok(g.weight(&g.min_cover(1)).div(&g.cross_weight()))
}

/// `⟨S_i, ⊕ S_j^{e_j}⟩ = Σ_j e_j (a(j,i) − a(i,j))`.
pub fn bilinear(q: &Quiver, i: usize, e: &[u32]) -> i64 {
    e.iter()
        .enumerate()
        .map(|(j, &ej)| ej as i64 * (q.count(j + 1, i) - q.count(i, j + 1)))
        .sum()
}

/// Euler characteristic of the quiver Grassmannian of an induced module.
pub fn grassmannian_chi(q: &Quiver, support: (usize, usize), e: &[u32]) -> u32 {
    let n = SubmoduleRank { rank: e.to_vec() };
    u32::from(is_submodule(q, support, 2, &n))
}

/// A representation: a matrix `dim[t] × dim[s]` for every arrow.
#[derive(Debug, Clone)]
struct Rep {
    dims: Vec<usize>,
    maps: Vec<Matrix>,
}

impl Rep {
    fn string(q: &Quiver, support: (usize, usize)) -> Rep {
        let inside = |x: usize| support.0 <= x && x <= support.1;
        let dims = (1..=q.n).map(|i| usize::from(inside(i))).collect();
        let maps = q
            .arrows
            .iter()
            .map(|&(s, t)| {
                let (ds, dt) = (usize::from(inside(s)), usize::from(inside(t)));
                if ds == 1 && dt == 1 {
                    linalg::identity(1)
                } else {
                    linalg::zeros(dt, ds)
                }
            })
            .collect();
        Rep { dims, maps }
    }

    fn along(&self, q: &Quiver, path: &[usize], from: usize) -> Matrix {
        let mut m = linalg::identity(self.dims[from - 1]);
        let mut cur = from;
        for &k in path {
            let (_, t) = q.arrows[k];
            m = linalg::mul(&self.maps[k], &m, self.dims[cur - 1], self.dims[from - 1]);
            cur = t;
        }
        m
    }
}

/// Socle of a representation at vertex `u`, as column vectors.
fn socle(q: &Quiver, r: &Rep, u: usize) -> Vec<Vec<u64>> {
    let mut stacked: Matrix = Vec::new();
    for (k, &(s, _)) in q.arrows.iter().enumerate() {
        if s == u {
            stacked.extend(r.maps[k].iter().cloned());
        }
    }
    linalg::kernel(&stacked, r.dims[u - 1])
}

/// Rows `f` with `f_i · b_j = δ_ij` for the basis vectors `b_j`.
fn dual_functionals(basis: &[Vec<u64>], dim: usize) -> Matrix {
    let k = basis.len();
    let mut work = basis.to_vec();
    let pivots = linalg::rref(&mut work, dim);
    // [Aᵀ | I] with A[i][j] = b_i[pivot_j]
    let mut aug: Matrix = (0..k)
        .map(|j| {
            let mut row: Vec<u64> = (0..k).map(|i| basis[i][pivots[j]]).collect();
            row.extend((0..k).map(|i| u64::from(i == j)));
            row
        })
        .collect();
    linalg::rref(&mut aug, k);
    let mut f = linalg::zeros(k, dim);
    for (i, row) in f.iter_mut().enumerate() {
        for (j, &c) in pivots.iter().enumerate() {
            row[c] = aug[i][k + j];
        }
    }
    f
}

/// `[I¹] − [I⁰]` from the minimal injective copresentation over a prime field.
pub fn index_oracle(q: &Quiver, support: (usize, usize)) -> Vec<i64> {
    let m = Rep::string(q, support);
    let n = q.n;
    let soc: Vec<Vec<Vec<u64>>> = (1..=n).map(|u| socle(q, &m, u)).collect();
    let paths: Vec<Vec<Option<Vec<usize>>>> = (1..=n)
        .map(|u| (1..=n).map(|v| q.path(u, v)).collect())
        .collect();
    // coordinates of I⁰ at u: (v, k) with a path u ⇝ v
    let coords: Vec<Vec<(usize, usize)>> = (1..=n)
        .map(|u| {
            let mut c = Vec::new();
            for v in 1..=n {
                if paths[u - 1][v - 1].is_some() {
                    for k in 0..soc[v - 1].len() {
                        c.push((v, k));
                    }
                }
            }
            c
        })
        .collect();
    let functionals: Vec<Matrix> = (1..=n)
        .map(|v| dual_functionals(&soc[v - 1], m.dims[v - 1]))
        .collect();
    let phi: Vec<Matrix> = (1..=n)
        .map(|u| {
            coords[u - 1]
                .iter()
                .map(|&(v, k)| {
                    let path = paths[u - 1][v - 1].as_ref().unwrap();
                    let mp = m.along(q, path, u);
                    let f = vec![functionals[v - 1][k].clone()];
                    linalg::mul(&f, &mp, m.dims[v - 1], m.dims[u - 1]).remove(0)
                })
                .collect()
        })
        .collect();
    let i0_map = |a: usize| -> Matrix {
        let (s, t) = q.arrows[a];
        coords[t - 1]
            .iter()
            .map(|ct| {
                coords[s - 1]
                    .iter()
                    .map(|cs| u64::from(cs == ct))
                    .collect()
            })
            .collect()
    };
    let mut ind = vec![0i64; n];
    for u in 1..=n {
        let du = coords[u - 1].len();
        let mut stacked: Matrix = Vec::new();
        for (a, &(s, t)) in q.arrows.iter().enumerate() {
            if s != u {
                continue;
            }
            let dw = coords[t - 1].len();
            let im_t = linalg::transpose(&phi[t - 1], dw, m.dims[t - 1]);
            let left_null = linalg::kernel(&im_t, dw);
            let qa = linalg::mul(&left_null, &i0_map(a), dw, du);
            stacked.extend(qa);
        }
        let preimage = linalg::kernel(&stacked, du).len();
        let image = linalg::rank(&phi[u - 1], m.dims[u - 1]);
        let soc_c = preimage - image;
        ind[u - 1] = soc_c as i64 - soc[u - 1].len() as i64;
    }
    ind
}

/// Exponents of an index monomial as integers.
pub fn integer_exponents(m: &HalfMonomial) -> Result<Vec<i64>> {
    m.exp2
        .iter()
        .map(|&e| {
            if e % 2 == 0 {
                Ok(e as i64 / 2)
            } else {
                Err(Error::NonRepresentableRoot(m.exp2.clone()))
            }
        })
        .collect()
}

/// `X^{ind}` as a super expression.
pub fn index_expr(ot: &OrientedTriangulation, p: Vertex, q: Vertex) -> Result<SuperExpr> {
    Ok(SuperExpr::monomial(
        ot.algebra(),
        BigInt::one(),
        index_monomial(ot, p, q)?,
    ))
}
