//! Gaussian elimination over a [`Field`] on raw element indices.

use crate::field::Field;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(field: &Field, rows: &mut [Vec<u32>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..cols {
        if top == rows.len() {
            break;
        }
        let Some(sel) = (top..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(top, sel);
        let inv = field.inv(rows[top][col]).expect("pivot is nonzero");
        for c in rows[top].iter_mut() {
            *c = field.mul(*c, inv);
        }
        let pivot_row = rows[top].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == top || row[col] == 0 {
                continue;
            }
            let factor = row[col];
            for (c, &p) in row.iter_mut().zip(&pivot_row) {
                *c = field.sub(*c, field.mul(factor, p));
            }
        }
        pivots.push(col);
        top += 1;
    }
    pivots
}

pub fn rank(field: &Field, rows: &[Vec<u32>], cols: usize) -> usize {
    let mut m = rows.to_vec();
    rref(field, &mut m, cols).len()
}

/// Basis of `{x : rows * x = 0}`, one vector per free column.
pub fn nullspace(field: &Field, rows: &[Vec<u32>], cols: usize) -> Vec<Vec<u32>> {
    let mut m = rows.to_vec();
    let pivots = rref(field, &mut m, cols);
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0u32; cols];
        v[free] = 1;
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = field.neg(m[row][free]);
        }
        basis.push(v);
    }
    basis
}

pub fn dot(field: &Field, a: &[u32], b: &[u32]) -> u32 {
    a.iter().zip(b).fold(0, |acc, (&x, &y)| field.add(acc, field.mul(x, y)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    #[test]
    fn nullspace_is_annihilated() {
        let f = make_field(5, 1).unwrap();
        let rows = vec![vec![1, 2, 3, 4], vec![2, 4, 1, 3]];
        let ns = nullspace(&f, &rows, 4);
        assert_eq!(ns.len(), 4 - rank(&f, &rows, 4));
        for v in &ns {
            for r in &rows {
                assert_eq!(dot(&f, r, v), 0);
            }
        }
    }

    #[test]
    fn full_rank_has_trivial_nullspace() {
        let f = make_field(7, 1).unwrap();
        let rows = vec![vec![1, 0], vec![0, 3]];
        assert!(nullspace(&f, &rows, 2).is_empty());
        assert!(nullspace(&f, &[], 3).len() == 3);
    }
}
