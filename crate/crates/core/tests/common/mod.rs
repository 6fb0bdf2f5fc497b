#![allow(dead_code)]

use std::sync::Arc;

use num_bigint::BigInt;
use superlambda::polygon::validate;
use superlambda::{Algebra, Dir, HalfMonomial, OrientedTriangulation, SnakeGraph, SuperExpr};

/// Pentagon with arcs (1,4), (1,3).
pub fn pentagon() -> OrientedTriangulation {
    validate(5, &[(1, 4), (1, 3)], None).unwrap().orient()
}

/// Octagon whose longest arc (2,7) crosses every arc.
pub fn octagon() -> OrientedTriangulation {
    validate(8, &[(1, 3), (1, 4), (1, 5), (0, 5), (0, 6)], Some((2, 7)))
        .unwrap()
        .orient()
}

pub fn square() -> OrientedTriangulation {
    validate(4, &[(0, 2)], None).unwrap().orient()
}

/// `c · Π x_i^{exp2_i / 2}` built directly.
pub fn mono(alg: &Arc<Algebra>, c: i64, exp2: &[i32]) -> SuperExpr {
    SuperExpr::monomial(alg, BigInt::from(c), HalfMonomial::from_exp2(exp2.to_vec()))
}

/// Product of θ variables in the listed order.
pub fn thetas(alg: &Arc<Algebra>, ids: &[usize]) -> SuperExpr {
    ids.iter().fold(SuperExpr::one(alg), |acc, &i| {
        acc.mul(&SuperExpr::theta(alg, i).unwrap()).unwrap()
    })
}

pub fn sum(parts: &[SuperExpr]) -> SuperExpr {
    let mut it = parts.iter();
    let first = it.next().unwrap().clone();
    it.fold(first, |acc, p| acc.add(p).unwrap())
}

pub fn dirs_of_mask(tiles: usize, mask: u32) -> Vec<Dir> {
    (0..tiles.saturating_sub(1))
        .map(|i| if mask >> i & 1 == 1 { Dir::North } else { Dir::East })
        .collect()
}

/// Every edge multiplicity vector whose degree is `d` at each vertex,
/// found by backtracking over edges without using twists.
pub fn brute_force_covers(g: &SnakeGraph, d: u32) -> Vec<Vec<u32>> {
    let ne = g.edges().len();
    let nv = g.vertices().len();
    // last edge index touching each vertex
    let mut last = vec![0; nv];
    for (vi, le) in last.iter_mut().enumerate() {
        for &e in g.vertex_edges(vi) {
            *le = (*le).max(e);
        }
    }
    let incident: Vec<Vec<usize>> = (0..ne)
        .map(|e| (0..nv).filter(|&vi| g.vertex_edges(vi).contains(&e)).collect())
        .collect();
    let mut out = Vec::new();
    let mut mult = vec![0u32; ne];
    let mut deg = vec![0u32; nv];
    fn go(
        e: usize,
        d: u32,
        incident: &[Vec<usize>],
        last: &[usize],
        mult: &mut Vec<u32>,
        deg: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if e == mult.len() {
            out.push(mult.clone());
            return;
        }
        for m in 0..=d {
            if incident[e].iter().any(|&v| deg[v] + m > d) {
                break;
            }
            for &v in &incident[e] {
                deg[v] += m;
            }
            mult[e] = m;
            if incident[e].iter().all(|&v| last[v] != e || deg[v] == d) {
                go(e + 1, d, incident, last, mult, deg, out);
            }
            for &v in &incident[e] {
                deg[v] -= m;
            }
        }
        mult[e] = 0;
    }
    go(0, d, &incident, &last, &mut mult, &mut deg, &mut out);
    out.sort();
    out
}

/// Rank vectors in `0..=d` over `1..=k`, monotone along the given arrows.
pub fn brute_force_submodules(k: usize, arrows: &[(usize, usize)], d: u32) -> usize {
    let mut count = 0;
    let total = (d as usize + 1).pow(k as u32);
    for code in 0..total {
        let mut r = vec![0u32; k];
        let mut c = code;
        for x in r.iter_mut() {
            *x = (c % (d as usize + 1)) as u32;
            c /= d as usize + 1;
        }
        if arrows.iter().all(|&(s, t)| r[s - 1] <= r[t - 1]) {
            count += 1;
        }
    }
    count
}
