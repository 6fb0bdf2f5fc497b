//! Dense linear algebra over a prime field.

pub const P: u64 = 1_000_000_007;

pub type Matrix = Vec<Vec<u64>>;

fn pow(mut b: u64, mut e: u64) -> u64 {
    let mut r = 1;
    b %= P;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % P;
        }
        b = b * b % P;
        e >>= 1;
    }
    r
}

fn inv(a: u64) -> u64 {
    pow(a, P - 2)
}

pub fn zeros(rows: usize, cols: usize) -> Matrix {
    vec![vec![0; cols]; rows]
}

pub fn identity(n: usize) -> Matrix {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1;
    }
    m
}

/// `a` is `r × k`, `b` is `k × c`; `k` is passed for empty shapes.
pub fn mul(a: &Matrix, b: &Matrix, k: usize, c: usize) -> Matrix {
    let mut out = zeros(a.len(), c);
    for (i, row) in a.iter().enumerate() {
        for (j, cell) in out[i].iter_mut().enumerate() {
            let mut s = 0;
            for t in 0..k {
                s = (s + row[t] * b[t][j]) % P;
            }
            *cell = s;
        }
    }
    out
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref(m: &mut Matrix, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, p);
        let iv = inv(m[r][c]);
        for x in m[r].iter_mut() {
            *x = *x * iv % P;
        }
        let pivot = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let f = row[c];
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x = (*x + P - f * y % P) % P;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    pivots
}

pub fn rank(m: &Matrix, cols: usize) -> usize {
    let mut w = m.clone();
    rref(&mut w, cols).len()
}

/// Basis of `{x : m x = 0}` as column vectors.
pub fn kernel(m: &Matrix, cols: usize) -> Vec<Vec<u64>> {
    let mut w = m.clone();
    let pivots = rref(&mut w, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![0; cols];
            x[f] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                x[pc] = (P - w[r][f]) % P;
            }
            x
        })
        .collect()
}

pub fn transpose(m: &Matrix, rows: usize, cols: usize) -> Matrix {
    let mut t = zeros(cols, rows);
    for i in 0..rows {
        for j in 0..cols {
            t[j][i] = m[i][j];
        }
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_of_projection() {
        let m = vec![vec![1, 0, 0], vec![0, 1, 0]];
        assert_eq!(kernel(&m, 3), vec![vec![0, 0, 1]]);
        assert_eq!(rank(&m, 3), 2);
    }

    #[test]
    fn inverse_mod_p() {
        assert_eq!(3 * inv(3) % P, 1);
    }
}
