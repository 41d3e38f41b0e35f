//! Determinant and adjugate of small polynomial matrices by cofactor
//! expansion. Sizes above 3 are refused by the callers.

use crate::algebra::MultiPoly;

pub type PolyMatrix = Vec<Vec<MultiPoly>>;

fn minor(mat: &PolyMatrix, row: usize, col: usize) -> PolyMatrix {
    mat.iter()
        .enumerate()
        .filter(|(i, _)| *i != row)
        .map(|(_, r)| {
            r.iter()
                .enumerate()
                .filter(|(j, _)| *j != col)
                .map(|(_, v)| v.clone())
                .collect()
        })
        .collect()
}

pub fn determinant(mat: &PolyMatrix, n_vars: usize) -> MultiPoly {
    match mat.len() {
        0 => MultiPoly::one(n_vars),
        1 => mat[0][0].clone(),
        2 => &mat[0][0] * &mat[1][1] - &mat[0][1] * &mat[1][0],
        size => {
            let mut det = MultiPoly::zero(n_vars);
            for j in 0..size {
                if mat[0][j].is_zero() {
                    continue;
                }
                let term = &mat[0][j] * &determinant(&minor(mat, 0, j), n_vars);
                det = if j % 2 == 0 { det + term } else { det - term };
            }
            det
        }
    }
}

/// `adj` with `mat · adj = adj · mat = det(mat) · I`.
pub fn adjugate(mat: &PolyMatrix, n_vars: usize) -> PolyMatrix {
    let size = mat.len();
    if size == 1 {
        return vec![vec![MultiPoly::one(n_vars)]];
    }
    (0..size)
        .map(|i| {
            (0..size)
                .map(|j| {
                    let c = determinant(&minor(mat, j, i), n_vars);
                    if (i + j) % 2 == 0 {
                        c
                    } else {
                        -c
                    }
                })
                .collect()
        })
        .collect()
}

pub fn mat_mul(a: &PolyMatrix, b: &PolyMatrix, n_vars: usize) -> PolyMatrix {
    let rows = a.len();
    let inner = b.len();
    let cols = b.first().map(Vec::len).unwrap_or(0);
    (0..rows)
        .map(|i| {
            (0..cols)
                .map(|j| {
                    (0..inner).fold(MultiPoly::zero(n_vars), |acc, k| acc + &a[i][k] * &b[k][j])
                })
                .collect()
        })
        .collect()
}
