//! Minimal exact Gaussian elimination, shared by the subdivision probes
//! and the polar enumeration.

use crate::rational::Rational;
use num_traits::Zero;

/// Solves the square system `a · x = b` exactly. Returns `None` when the
/// matrix is singular (the system may then be inconsistent or
/// underdetermined; callers treat both alike).
pub(crate) fn solve_square(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.len();
    debug_assert!(a.iter().all(|row| row.len() == n));
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let p = m[col][col].clone();
        for x in &mut m[col] {
            if !x.is_zero() {
                *x /= &p;
            }
        }
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone();
            for c in col..=n {
                if !m[col][c].is_zero() {
                    let delta = &factor * &m[col][c];
                    m[r][c] -= delta;
                }
            }
        }
    }
    Some(m.into_iter().map(|mut row| row.pop().unwrap()).collect())
}

/// Rank of an arbitrary rational matrix.
pub(crate) fn rank(rows: &[Vec<Rational>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let cols = rows[0].len();
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let p = m[rank][col].clone();
        for x in &mut m[rank] {
            if !x.is_zero() {
                *x /= &p;
            }
        }
        for r in 0..m.len() {
            if r == rank || m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone();
            for c in col..cols {
                if !m[rank][c].is_zero() {
                    let delta = &factor * &m[rank][c];
                    m[r][c] -= delta;
                }
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn solves_small_system() {
        let a = vec![
            vec![int(1), int(1)],
            vec![int(1), int(-1)],
        ];
        let b = vec![int(3), int(1)];
        assert_eq!(solve_square(&a, &b).unwrap(), vec![int(2), int(1)]);
    }

    #[test]
    fn detects_singular() {
        let a = vec![
            vec![int(1), int(2)],
            vec![int(2), int(4)],
        ];
        assert!(solve_square(&a, &vec![int(1), int(2)]).is_none());
    }

    #[test]
    fn rank_of_rectangular() {
        let rows = vec![
            vec![int(1), int(0), int(2)],
            vec![int(0), int(1), rat(1, 2)],
            vec![int(1), int(1), rat(5, 2)],
        ];
        assert_eq!(rank(&rows), 2);
        assert_eq!(rank(&[]), 0);
    }
}
