//! Fixtures shared by the benchmarks.

use superlambda::polygon::{validate, OrientedTriangulation};

/// Zig-zag triangulation of a `v`-gon; its longest arc crosses every arc.
pub fn zigzag(v: usize) -> OrientedTriangulation {
    let (mut lo, mut hi) = (1, v - 1);
    let mut arcs = Vec::with_capacity(v - 3);
    while arcs.len() < v - 3 {
        arcs.push((lo, hi));
        if arcs.len() % 2 == 1 {
            hi -= 1;
        } else {
            lo += 1;
        }
    }
    validate(v, &arcs, None).expect("zig-zag is valid").orient()
}
