use num_traits::Zero;

use crate::rational::Rational;

/// Exact rank by Gaussian elimination over the rationals.
pub fn rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let ncols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i].get(col).is_some_and(|x| !x.is_zero())) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r][col].clone();
        let prow = rows[r].clone();
        for row in rows.iter_mut().skip(r + 1) {
            let f = match row.get(col) {
                Some(x) if !x.is_zero() => x / &pivot,
                _ => continue,
            };
            for (j, v) in prow.iter().enumerate().skip(col) {
                row[j] -= &f * v;
            }
        }
        r += 1;
    }
    r
}
