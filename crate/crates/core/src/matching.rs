//! Maximum-weight bipartite matching with unmatched vertices allowed.
//!
//! Negative edges are never used. Among all optimal matchings the one
//! returned is the lexicographically smallest assignment vector, reading
//! rows in order and ranking "unmatched" after every column.

use std::fmt;

/// Dense row-major weight matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl WeightMatrix {
    pub fn new(rows: usize, cols: usize, fill: i64) -> Self {
        WeightMatrix {
            rows,
            cols,
            data: vec![fill; rows * cols],
        }
    }

    /// Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<i64>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged weight matrix");
        WeightMatrix {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, w: i64) {
        self.data[r * self.cols + c] = w;
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        if self.cols == 0 {
            return vec![Vec::new(); self.rows];
        }
        self.data.chunks(self.cols).map(<[i64]>::to_vec).collect()
    }
}

impl fmt::Display for WeightMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.to_rows() {
            let cells: Vec<String> = row.iter().map(|w| format!("{w:>3}")).collect();
            writeln!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Matching {
    /// `(row, col)` pairs sorted by row.
    pub pairs: Vec<(usize, usize)>,
    pub total: i64,
}

/// Optimal value of the assignment problem on the given rows and columns,
/// with negative entries treated as "leave unmatched".
fn best_total(m: &WeightMatrix, rows: &[usize], cols: &[usize]) -> i64 {
    let n = rows.len().max(cols.len());
    if n == 0 {
        return 0;
    }
    let profit = |i: usize, j: usize| -> i64 {
        if i < rows.len() && j < cols.len() {
            m.get(rows[i], cols[j]).max(0)
        } else {
            0
        }
    };
    // Minimizing -profit with the classic potential-based Hungarian method,
    // 1-based with a virtual column 0.
    let inf = i64::MAX / 4;
    let mut u = vec![0i64; n + 1];
    let mut v = vec![0i64; n + 1];
    let mut p = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0;
        let mut minv = vec![inf; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta = inf;
            let mut j1 = 0;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let cur = -profit(i0 - 1, j - 1) - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    (1..=n).map(|j| if p[j] > 0 { profit(p[j] - 1, j - 1) } else { 0 }).sum()
}

/// Maximum-weight matching with deterministic tie-breaking.
///
/// The optimum comes from a Hungarian solve. Rows are then fixed one at a
/// time to the smallest column that still admits an optimal completion,
/// each probe being a fresh solve of the remaining subproblem. That makes
/// the worst case `O(R·C·n³)` rather than cubic.
pub fn max_weight_matching(m: &WeightMatrix) -> Matching {
    let mut free_rows: Vec<usize> = (0..m.rows()).collect();
    let mut free_cols: Vec<usize> = (0..m.cols()).collect();
    let target = best_total(m, &free_rows, &free_cols);
    let mut fixed = 0i64;
    let mut pairs = Vec::new();
    for r in 0..m.rows() {
        free_rows.retain(|&x| x != r);
        let remaining = target - fixed;
        let mut chosen = None;
        for (pos, &c) in free_cols.iter().enumerate() {
            let w = m.get(r, c);
            if w < 0 {
                continue;
            }
            let mut rest = free_cols.clone();
            rest.remove(pos);
            if w + best_total(m, &free_rows, &rest) == remaining {
                chosen = Some((pos, c, w));
                break;
            }
        }
        // With no column fitting, leaving the row unmatched is optimal.
        if let Some((pos, c, w)) = chosen {
            free_cols.remove(pos);
            fixed += w;
            pairs.push((r, c));
        }
    }
    debug_assert_eq!(fixed, target);
    Matching {
        pairs,
        total: fixed,
    }
}
