//! Exact Gaussian elimination over ℚ with right-hand sides in any ℚ-algebra.

use alloc::vec::Vec;


use super::ring::Coeff;
use super::Rational;
use crate::error::{Error, Result};

/// `matrix · x = rhs` with a rational matrix and a right-hand side in `R`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearSystem<R> {
    matrix: Vec<Vec<Rational>>,
    rhs: Vec<R>,
    cols: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Solution<R> {
    Unique(Vec<R>),
    /// `particular + Σ t_i kernel[i]`; `free` lists the free column indices.
    Family { particular: Vec<R>, free: Vec<usize>, kernel: Vec<Vec<Rational>> },
    /// `row_combination · matrix = 0` while `row_combination · rhs = residual ≠ 0`.
    Inconsistent { row_combination: Vec<Rational>, residual: R },
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolveOutcome<R> {
    pub rank: usize,
    pub solution: Solution<R>,
}

impl<R> SolveOutcome<R> {
    pub fn is_consistent(&self) -> bool {
        !matches!(self.solution, Solution::Inconsistent { .. })
    }

    pub fn unique(self) -> Option<Vec<R>> {
        match self.solution {
            Solution::Unique(x) => Some(x),
            _ => None,
        }
    }
}

impl<R: Coeff> LinearSystem<R> {
    pub fn new(matrix: Vec<Vec<Rational>>, rhs: Vec<R>, cols: usize) -> Result<Self> {
        if matrix.len() != rhs.len() {
            return Err(Error::InvalidArgument(alloc::format!(
                "{} rows but {} right-hand entries",
                matrix.len(),
                rhs.len()
            )));
        }
        if let Some(r) = matrix.iter().find(|r| r.len() != cols) {
            return Err(Error::InvalidArgument(alloc::format!(
                "row of length {} in a system with {} columns",
                r.len(),
                cols
            )));
        }
        Ok(LinearSystem { matrix, rhs, cols })
    }

    pub fn rows(&self) -> usize {
        self.matrix.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn matrix(&self) -> &[Vec<Rational>] {
        &self.matrix
    }

    pub fn rhs(&self) -> &[R] {
        &self.rhs
    }
}

/// Reduced row echelon solve. Consistency of a zero row is decided with
/// [`Coeff::vanishes`], so truncated right-hand sides compare to known precision.
pub fn solve_exact<R: Coeff>(sys: &LinearSystem<R>) -> SolveOutcome<R> {
    let rows = sys.rows();
    let cols = sys.cols;
    let mut a: Vec<Vec<Rational>> = sys.matrix.clone();
    let mut b: Vec<R> = sys.rhs.clone();
    // Row operations are mirrored on an identity block to produce witnesses.
    let mut track: Vec<Vec<Rational>> = (0..rows)
        .map(|i| (0..rows).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
        .collect();

    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        b.swap(r, p);
        track.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for x in track[r].iter_mut() {
            *x *= &inv;
        }
        b[r] = b[r].scale(&inv);
        for i in 0..rows {
            if i == r || a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone();
            for j in 0..cols {
                if !a[r][j].is_zero() {
                    let d = &a[r][j] * &f;
                    a[i][j] -= d;
                }
            }
            for j in 0..rows {
                if !track[r][j].is_zero() {
                    let d = &track[r][j] * &f;
                    track[i][j] -= d;
                }
            }
            let d = b[r].scale(&f);
            b[i] = b[i].minus(&d);
        }
        pivots.push(c);
        r += 1;
    }
    let rank = pivots.len();

    for i in rank..rows {
        if !b[i].vanishes() {
            return SolveOutcome {
                rank,
                solution: Solution::Inconsistent {
                    row_combination: track[i].clone(),
                    residual: b[i].clone(),
                },
            };
        }
    }

    let mut particular = alloc::vec![R::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        particular[c] = b[i].clone();
    }
    if rank == cols {
        return SolveOutcome { rank, solution: Solution::Unique(particular) };
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let kernel = free
        .iter()
        .map(|&f| {
            let mut v = alloc::vec![Rational::zero(); cols];
            v[f] = Rational::one();
            for (i, &c) in pivots.iter().enumerate() {
                v[c] = -a[i][f].clone();
            }
            v
        })
        .collect();
    SolveOutcome { rank, solution: Solution::Family { particular, free, kernel } }
}
