//! Dense Gaussian elimination over exact rationals.

use num_traits::Zero;

use crate::rational::Rational;

/// Row rank of a dense rational matrix.
pub fn rank(matrix: &[Vec<Rational>]) -> usize {
    if matrix.is_empty() {
        return 0;
    }
    let ncols = matrix[0].len();
    let mut rows: Vec<Vec<Rational>> = matrix.to_vec();
    let mut rank = 0;
    for col in 0..ncols {
        let pivot = (rank..rows.len()).find(|&r| !rows[r][col].is_zero());
        let Some(pivot) = pivot else { continue };
        rows.swap(rank, pivot);
        let inv = rows[rank][col].clone();
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let factor = &rows[r][col] / &inv;
                for c in col..ncols {
                    let delta = &factor * &rows[rank][c];
                    rows[r][c] = &rows[r][c] - delta;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome {
    /// Exactly one solution.
    Unique(Vec<Rational>),
    /// Consistent but with free variables.
    Underdetermined,
    Inconsistent,
}

/// Solve `rows · x = rhs` exactly. The system may be rectangular; the
/// outcome distinguishes the unique, underdetermined and inconsistent cases.
pub fn solve_system(rows: &[Vec<Rational>], rhs: &[Rational]) -> SolveOutcome {
    assert_eq!(rows.len(), rhs.len(), "system shape mismatch");
    let ncols = rows.first().map_or(0, Vec::len);
    let mut a: Vec<Vec<Rational>> = rows.to_vec();
    let mut b: Vec<Rational> = rhs.to_vec();
    let nrows = a.len();

    let mut pivot_col_of_row: Vec<usize> = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let pivot = (row..nrows).find(|&r| !a[r][col].is_zero());
        let Some(pivot) = pivot else { continue };
        a.swap(row, pivot);
        b.swap(row, pivot);
        let inv = a[row][col].clone();
        for r in 0..nrows {
            if r != row && !a[r][col].is_zero() {
                let factor = &a[r][col] / &inv;
                for c in col..ncols {
                    let delta = &factor * &a[row][c];
                    a[r][c] = &a[r][c] - delta;
                }
                let delta = &factor * &b[row];
                b[r] = &b[r] - delta;
            }
        }
        pivot_col_of_row.push(col);
        row += 1;
        if row == nrows {
            break;
        }
    }

    for r in row..nrows {
        if !b[r].is_zero() {
            return SolveOutcome::Inconsistent;
        }
    }
    if pivot_col_of_row.len() < ncols {
        return SolveOutcome::Underdetermined;
    }

    let mut x = vec![Rational::zero(); ncols];
    for (r, &col) in pivot_col_of_row.iter().enumerate() {
        x[col] = &b[r] / &a[r][col];
    }
    SolveOutcome::Unique(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio};

    fn m(entries: &[&[i64]]) -> Vec<Vec<Rational>> {
        entries
            .iter()
            .map(|row| row.iter().map(|&v| rat(v)).collect())
            .collect()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&m(&[&[1, 0], &[0, 1]])), 2);
        assert_eq!(rank(&m(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank(&m(&[&[0, 0], &[0, 0]])), 0);
        assert_eq!(rank(&m(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]])), 2);
    }

    #[test]
    fn solve_unique() {
        // x + y = 3, x - y = 1  =>  (2, 1)
        let out = solve_system(&m(&[&[1, 1], &[1, -1]]), &[rat(3), rat(1)]);
        assert_eq!(out, SolveOutcome::Unique(vec![rat(2), rat(1)]));
    }

    #[test]
    fn solve_overdetermined_consistent() {
        let out = solve_system(&m(&[&[1, 0], &[0, 1], &[1, 1]]), &[rat(1), rat(2), rat(3)]);
        assert_eq!(out, SolveOutcome::Unique(vec![rat(1), rat(2)]));
    }

    #[test]
    fn solve_inconsistent_and_underdetermined() {
        let out = solve_system(&m(&[&[1, 1], &[1, 1]]), &[rat(1), rat(2)]);
        assert_eq!(out, SolveOutcome::Inconsistent);
        let out = solve_system(&m(&[&[1, 1]]), &[rat(1)]);
        assert_eq!(out, SolveOutcome::Underdetermined);
    }

    #[test]
    fn solve_rational_entries() {
        let rows = vec![vec![ratio(1, 2), ratio(1, 3)], vec![rat(1), rat(-1)]];
        let out = solve_system(&rows, &[rat(1), rat(0)]);
        let expected = ratio(6, 5);
        assert_eq!(out, SolveOutcome::Unique(vec![expected.clone(), expected]));
    }
}
