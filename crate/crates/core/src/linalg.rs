//! Dense linear algebra over the rationals, for small systems.

use crate::rational::Rat;

pub type Matrix = Vec<Vec<Rat>>;

/// Row-reduce in place; returns the pivot columns.
pub fn rref(m: &mut Matrix) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].inv();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for k in 0..cols {
                    let t = &m[r][k] * &f;
                    m[i][k] = &m[i][k] - &t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &Matrix) -> usize {
    let mut c = m.clone();
    rref(&mut c).len()
}

pub fn inverse(m: &Matrix) -> Option<Matrix> {
    let n = m.len();
    let mut aug: Matrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
            r
        })
        .collect();
    let piv = rref(&mut aug);
    if piv.len() < n || piv[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Unique solution of a square system, if any.
pub fn solve(a: &Matrix, b: &[Rat]) -> Option<Vec<Rat>> {
    let inv = inverse(a)?;
    Some(
        inv.iter()
            .map(|row| row.iter().zip(b).fold(Rat::zero(), |acc, (x, y)| &acc + &(x * y)))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|&x| Rat::from_int(x)).collect()).collect()
    }

    #[test]
    fn inverse_and_rank() {
        let a = m(&[&[1, 1], &[1, -1]]);
        let inv = inverse(&a).unwrap();
        assert_eq!(inv[0][0], Rat::new(1, 2));
        assert_eq!(inv[1][1], Rat::new(-1, 2));
        assert_eq!(rank(&m(&[&[1, 2, 3], &[2, 4, 6]])), 1);
        assert!(inverse(&m(&[&[1, 2], &[2, 4]])).is_none());
        let x = solve(&a, &[Rat::from_int(3), Rat::from_int(1)]).unwrap();
        assert_eq!(x, vec![Rat::from_int(2), Rat::from_int(1)]);
    }
}
