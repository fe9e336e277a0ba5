//! Vertex-community interaction matrix and entropy edge weights.
//!
//! Row `j` belongs to border vertex `bv[j]`, column `i` to target community
//! `C_i`. The same storage first holds neighbor counts `f_i`, then the weight
//! `ω(C_i)` of any directed edge from `bv[j]` into `C_i`, then that weight
//! divided by the global maximum.
//!
//! For a row with counts `f`, `T = Σ f_l`, `X = Σ f_l·log f_l` and
//! `Y_i = T − f_i`, the entropy of the distribution with column `i` removed is
//!
//! ```text
//! H_i = −(1/Y_i)·(X − T·log Y_i − f_i·log(f_i / Y_i))
//! ```
//!
//! so `X` and `T` are computed once per row and shared by every column.
//! Logarithms are base 2.

use rayon::prelude::*;

use crate::border::BorderIndex;
use crate::graph::{CommunityAssignment, TargetSet, UndirectedGraph, NO_COLUMN};
use crate::parallel::CHUNK;

/// Which values the matrix cells currently hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixPhase {
    Counts,
    Weights,
    Normalized,
}

#[derive(Debug, Clone, PartialEq)]
pub struct InteractionMatrix {
    rows: usize,
    cols: usize,
    cells: Vec<f64>,
    totals: Vec<f64>,
    omega_max: f64,
    phase: MatrixPhase,
}

impl InteractionMatrix {
    /// Wraps a row-major count table; totals are the row sums.
    pub fn from_counts(rows: usize, cols: usize, cells: Vec<f64>) -> Self {
        assert_eq!(cells.len(), rows * cols, "count table has wrong shape");
        let totals = if cols == 0 {
            vec![0.0; rows]
        } else {
            cells.chunks(cols).map(|r| r.iter().sum()).collect()
        };
        Self {
            rows,
            cols,
            cells,
            totals,
            omega_max: 0.0,
            phase: MatrixPhase::Counts,
        }
    }

    /// Wraps an unnormalized weight table, ready for [`normalize_weights`].
    pub fn from_weights(rows: usize, cols: usize, cells: Vec<f64>) -> Self {
        let mut m = Self::from_counts(rows, cols, cells);
        m.phase = MatrixPhase::Weights;
        m
    }

    /// Wraps weights that are already normalized by `omega_max`.
    pub fn from_normalized(rows: usize, cols: usize, cells: Vec<f64>, omega_max: f64) -> Self {
        let mut m = Self::from_counts(rows, cols, cells);
        m.omega_max = omega_max;
        m.phase = MatrixPhase::Normalized;
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn phase(&self) -> MatrixPhase {
        self.phase
    }

    #[inline]
    pub fn cell(&self, row: usize, col: usize) -> f64 {
        self.cells[row * self.cols + col]
    }

    #[inline]
    pub fn row(&self, row: usize) -> &[f64] {
        &self.cells[row * self.cols..(row + 1) * self.cols]
    }

    pub fn cells(&self) -> &[f64] {
        &self.cells
    }

    /// Per-row count of neighbors inside targeted communities.
    pub fn totals(&self) -> &[f64] {
        &self.totals
    }

    /// Maximum unnormalized weight; 0 until normalization has run.
    pub fn omega_max(&self) -> f64 {
        self.omega_max
    }
}

/// Counts, for every border vertex, its neighbors in each target community.
/// Neighbors outside the target set are ignored.
pub fn count_neighbor_communities(
    graph: &UndirectedGraph,
    communities: &CommunityAssignment,
    targets: &TargetSet,
    border: &BorderIndex,
) -> InteractionMatrix {
    let cols = targets.len();
    let rows = border.len();
    let columns = targets.vertex_columns(communities);
    let mut cells = vec![0.0f64; rows * cols];
    let mut totals = vec![0.0f64; rows];
    if cols > 0 {
        cells
            .par_chunks_mut(cols)
            .zip(totals.par_iter_mut())
            .enumerate()
            .with_min_len(CHUNK / 4)
            .for_each(|(j, (row, total))| {
                let u = border.global(j as u32);
                let mut counted = 0u64;
                for &x in graph.neighbors(u) {
                    let col = columns[x as usize];
                    if col != NO_COLUMN {
                        row[col as usize] += 1.0;
                        counted += 1;
                    }
                }
                *total = counted as f64;
            });
    }
    InteractionMatrix {
        rows,
        cols,
        cells,
        totals,
        omega_max: 0.0,
        phase: MatrixPhase::Counts,
    }
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn f_log_f(f: f64) -> f64 {
    if f > 0.0 {
        f * f.log2()
    } else {
        0.0
    }
}

/// Shared per-row quantities of the closed-form entropy.
#[derive(Debug, Clone, Copy)]
struct RowEntropy {
    // X carried as an unevaluated sum hi + lo
    x_hi: f64,
    x_lo: f64,
    total: f64,
    observed: usize,
}

impl RowEntropy {
    fn new(counts: &[f64], total: f64) -> Self {
        let (mut x_hi, mut x_lo, mut observed) = (0.0, 0.0, 0);
        for &f in counts {
            if f > 0.0 {
                let (s, e) = two_sum(x_hi, f_log_f(f));
                x_hi = s;
                x_lo += e;
                observed += 1;
            }
        }
        Self {
            x_hi,
            x_lo,
            total,
            observed,
        }
    }

    /// `H_i` for the column holding count `f_i`. `X − T·log Y − f_i·log(f_i/Y)`
    /// equals `(X − f_i·log f_i) − Y·log Y`; the latter form subtracts the
    /// same rounded `f_i·log f_i` that went into `X`, so the large terms cancel
    /// exactly.
    #[inline]
    fn entropy_without(&self, f_i: f64) -> f64 {
        let y = self.total - f_i;
        let remaining = self.observed - usize::from(f_i > 0.0);
        // one remaining community has zero entropy; the closed form would
        // leave rounding residue there
        if y <= 0.0 || remaining < 2 {
            return 0.0;
        }
        let rest = (self.x_hi - f_log_f(f_i)) + self.x_lo;
        ((y * y.log2() - rest) / y).max(0.0)
    }
}

/// Entropy of the count vector with each column removed in turn, via the
/// shared-term closed form. Columns whose removal leaves at most one
/// nonzero count get exactly 0.
pub fn closed_form_entropies(counts: &[f64]) -> Vec<f64> {
    let total = counts.iter().sum();
    let row = RowEntropy::new(counts, total);
    counts.iter().map(|&f| row.entropy_without(f)).collect()
}

fn weigh_row(row: &mut [f64], total: f64) {
    let entropy = RowEntropy::new(row, total);
    if entropy.observed < 2 {
        row.fill(0.0);
        return;
    }
    let diversity = (entropy.observed - 1) as f64;
    for cell in row.iter_mut() {
        *cell = entropy.entropy_without(*cell) * diversity;
    }
}

/// Replaces counts with unnormalized weights `H_i · (L_all − 1)`, where
/// `L_all` is the number of target communities observed in the row. Rows
/// observing fewer than two communities become all-zero.
pub fn compute_weights(mut matrix: InteractionMatrix) -> InteractionMatrix {
    assert_eq!(matrix.phase, MatrixPhase::Counts, "weights need a count matrix");
    let cols = matrix.cols;
    if cols > 0 {
        matrix
            .cells
            .par_chunks_mut(cols)
            .zip(matrix.totals.par_iter())
            .with_min_len(CHUNK / 4)
            .for_each(|(row, &total)| weigh_row(row, total));
    }
    matrix.phase = MatrixPhase::Weights;
    matrix
}

/// Divides every cell by the largest cell. An all-zero matrix is left as is
/// with `omega_max = 0`.
pub fn normalize_weights(mut matrix: InteractionMatrix) -> InteractionMatrix {
    assert_eq!(
        matrix.phase,
        MatrixPhase::Weights,
        "normalization needs a weight matrix"
    );
    let omega_max = matrix
        .cells
        .par_chunks(CHUNK)
        .map(|c| c.iter().copied().fold(0.0f64, f64::max))
        .reduce(|| 0.0, f64::max);
    if omega_max > 0.0 {
        matrix
            .cells
            .par_chunks_mut(CHUNK)
            .for_each(|c| c.iter_mut().for_each(|x| *x /= omega_max));
    }
    matrix.omega_max = omega_max;
    matrix.phase = MatrixPhase::Normalized;
    matrix
}
