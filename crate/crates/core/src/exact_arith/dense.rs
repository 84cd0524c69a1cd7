//! Dense exact matrices over ℚ(i).

use super::gaussian::GR;

pub type Mat = Vec<Vec<GR>>;

pub fn zeros(r: usize, c: usize) -> Mat {
    vec![vec![GR::zero(); c]; r]
}

pub fn identity(n: usize) -> Mat {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = GR::one();
    }
    m
}

pub fn ncols(m: &Mat, default: usize) -> usize {
    m.first().map_or(default, |r| r.len())
}

pub fn matmul(a: &Mat, b: &Mat, inner: usize, cols: usize) -> Mat {
    let mut out = zeros(a.len(), cols);
    for (i, row) in a.iter().enumerate() {
        for (k, x) in row.iter().enumerate().take(inner) {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b[k].iter().enumerate() {
                if !y.is_zero() {
                    out[i][j] += &(x * y);
                }
            }
        }
    }
    out
}

pub fn transpose(m: &Mat, cols: usize) -> Mat {
    let mut t = zeros(cols, m.len());
    for (i, row) in m.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            t[j][i] = x.clone();
        }
    }
    t
}

pub fn is_zero(m: &Mat) -> bool {
    m.iter().all(|r| r.iter().all(|x| x.is_zero()))
}

/// Reduced row echelon form; returns the pivot column of each nonzero row.
pub fn rref(m: &mut Mat) -> Vec<usize> {
    let rows = m.len();
    let cols = ncols(m, 0);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &(&f * y);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &Mat) -> usize {
    let mut w = m.clone();
    rref(&mut w).len()
}

/// Basis of the right kernel `{x : m x = 0}` in RREF order (one vector per
/// free column, ascending).
pub fn kernel(m: &Mat, cols: usize) -> Vec<Vec<GR>> {
    let mut w = m.clone();
    let pivots = rref(&mut w);
    let mut out = Vec::new();
    for f in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![GR::zero(); cols];
        v[f] = GR::one();
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = -&w[r][f];
        }
        out.push(v);
    }
    out
}

/// Columns of `m` as vectors.
pub fn columns(m: &Mat, cols: usize) -> Vec<Vec<GR>> {
    (0..cols).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

/// Matrix whose columns are `vs` (each of length `n`).
pub fn from_columns(vs: &[Vec<GR>], n: usize) -> Mat {
    let mut m = zeros(n, vs.len());
    for (j, v) in vs.iter().enumerate() {
        for i in 0..n {
            m[i][j] = v[i].clone();
        }
    }
    m
}

pub fn inverse(m: &Mat) -> Option<Mat> {
    let n = m.len();
    let mut aug: Mat = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { GR::one() } else { GR::zero() }));
            row
        })
        .collect();
    let piv = rref(&mut aug);
    if piv.len() < n || piv[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Greedily extends `vs` by vectors from `pool` that increase the rank;
/// returns the indices of the accepted pool vectors.
pub fn extend_basis(vs: &[Vec<GR>], pool: &[Vec<GR>], n: usize) -> Vec<usize> {
    let mut cur: Vec<Vec<GR>> = vs.to_vec();
    let mut r = rank(&cur_or_empty(&cur, n));
    let mut taken = Vec::new();
    for (i, p) in pool.iter().enumerate() {
        cur.push(p.clone());
        let r2 = rank(&cur);
        if r2 > r {
            r = r2;
            taken.push(i);
        } else {
            cur.pop();
        }
    }
    taken
}

fn cur_or_empty(v: &[Vec<GR>], n: usize) -> Mat {
    if v.is_empty() {
        vec![vec![GR::zero(); n]]
    } else {
        v.to_vec()
    }
}

pub fn apply(m: &Mat, v: &[GR]) -> Vec<GR> {
    m.iter()
        .map(|row| {
            let mut acc = GR::zero();
            for (x, y) in row.iter().zip(v) {
                if !x.is_zero() && !y.is_zero() {
                    acc += &(x * y);
                }
            }
            acc
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_and_inverse() {
        let m: Mat = vec![vec![GR::int(1), GR::int(2), GR::int(3)], vec![GR::int(2), GR::int(4), GR::int(6)]];
        assert_eq!(rank(&m), 1);
        let k = kernel(&m, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(apply(&m, v).iter().all(|x| x.is_zero()));
        }
        let a: Mat = vec![vec![GR::int(1), GR::i()], vec![GR::int(0), GR::int(2)]];
        let inv = inverse(&a).unwrap();
        assert_eq!(matmul(&a, &inv, 2, 2), identity(2));
    }
}
