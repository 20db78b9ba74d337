//! Exact Gaussian elimination over `Q(q)`.

use std::collections::{BTreeMap, BTreeSet};

use super::ScalarQ;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn row_reduce(rows: &mut [Vec<ScalarQ>]) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        // Prefer the simplest pivot to limit coefficient growth.
        let Some(p) = (r..rows.len())
            .filter(|&i| !rows[i][col].is_zero())
            .min_by_key(|&i| weight(&rows[i][col]))
        else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].inv().expect("nonzero pivot");
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x = &*x - &(&f * p);
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    pivots
}

fn weight(s: &ScalarQ) -> usize {
    s.numerator().len() + s.denominator().len()
}

pub fn rank(rows: &[Vec<ScalarQ>]) -> usize {
    let mut m = rows.to_vec();
    row_reduce(&mut m).len()
}

/// Solves `A x = b`; free variables are set to zero. `None` when inconsistent.
pub fn solve(a: &[Vec<ScalarQ>], b: &[ScalarQ]) -> Option<Vec<ScalarQ>> {
    let n = a.first().map_or(0, |r| r.len());
    let mut aug: Vec<Vec<ScalarQ>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = row_reduce(&mut aug);
    if pivots.last() == Some(&n) {
        return None;
    }
    let mut x = vec![ScalarQ::zero(); n];
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = aug[i][n].clone();
    }
    Some(x)
}

/// Finds scalars with `target = Σ c_i shapes[i]`, comparing sparse
/// coordinate maps. Free directions are set to zero.
pub fn fit_combination<K: Ord + Clone>(
    target: &BTreeMap<K, ScalarQ>,
    shapes: &[BTreeMap<K, ScalarQ>],
) -> Option<Vec<ScalarQ>> {
    let keys: BTreeSet<K> = target
        .keys()
        .chain(shapes.iter().flat_map(|s| s.keys()))
        .cloned()
        .collect();
    let a: Vec<Vec<ScalarQ>> = keys
        .iter()
        .map(|k| {
            shapes
                .iter()
                .map(|s| s.get(k).cloned().unwrap_or_default())
                .collect()
        })
        .collect();
    let b: Vec<ScalarQ> = keys
        .iter()
        .map(|k| target.get(k).cloned().unwrap_or_default())
        .collect();
    if shapes.is_empty() {
        return b.iter().all(|x| x.is_zero()).then(Vec::new);
    }
    solve(&a, &b)
}
