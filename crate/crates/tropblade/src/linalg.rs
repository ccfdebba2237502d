//! Exact rational Gaussian elimination, shared by the basis-change and
//! linearity-space solvers.

use num_traits::Zero;

use crate::Rat;

/// Outcome of solving `A x = b` exactly.
pub(crate) enum Solve {
    /// No solution.
    Inconsistent,
    /// A solution; `unique` is false when free columns remained (they are
    /// set to zero).
    Solution { x: Vec<Rat>, unique: bool },
}

/// Row-reduces the augmented system and back-substitutes. `a` is row-major
/// with `rows x cols`, `b` has `rows` entries.
pub(crate) fn solve_exact(a: &[Vec<Rat>], b: &[Rat]) -> Solve {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut m: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; cols];
    let mut rank = 0usize;
    for col in 0..cols {
        let Some(pr) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pr);
        let inv = m[rank][col].clone();
        for c in col..=cols {
            let v = m[rank][c].clone() / inv.clone();
            m[rank][c] = v;
        }
        for r in 0..rows {
            if r != rank && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..=cols {
                    let v = m[r][c].clone() - f.clone() * m[rank][c].clone();
                    m[r][c] = v;
                }
            }
        }
        pivot_of_col[col] = Some(rank);
        rank += 1;
    }
    for r in rank..rows {
        if !m[r][cols].is_zero() {
            return Solve::Inconsistent;
        }
    }
    let mut x = vec![Rat::zero(); cols];
    let mut unique = true;
    for col in 0..cols {
        match pivot_of_col[col] {
            Some(r) => x[col] = m[r][cols].clone(),
            None => unique = false,
        }
    }
    Solve::Solution { x, unique }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    #[test]
    fn solves_a_unique_system() {
        let a = vec![
            vec![rat(2), rat(1)],
            vec![rat(1), rat(-1)],
        ];
        let b = vec![rat(5), rat(1)];
        match solve_exact(&a, &b) {
            Solve::Solution { x, unique } => {
                assert!(unique);
                assert_eq!(x, vec![rat(2), rat(1)]);
            }
            Solve::Inconsistent => panic!("consistent system"),
        }
    }

    #[test]
    fn flags_inconsistency() {
        let a = vec![vec![rat(1), rat(1)], vec![rat(2), rat(2)]];
        let b = vec![rat(1), rat(3)];
        assert!(matches!(solve_exact(&a, &b), Solve::Inconsistent));
    }

    #[test]
    fn flags_free_columns() {
        let a = vec![vec![rat(1), rat(1)]];
        let b = vec![rat(3)];
        match solve_exact(&a, &b) {
            Solve::Solution { x, unique } => {
                assert!(!unique);
                assert_eq!(x[0], rat(3));
            }
            Solve::Inconsistent => panic!("consistent system"),
        }
    }
}
