use alloc::vec::Vec;

use super::ModMatrix;

/// Compressed sparse rows with small integer entries. Columns within a row
/// are strictly increasing and no stored entry is zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    row_start: Vec<usize>,
    entries: Vec<(u32, i64)>,
}

impl SparseMatrix {
    /// Duplicate `(row, col)` entries are summed; zeros are dropped.
    pub fn from_triplets(rows: usize, cols: usize, mut triplets: Vec<(u32, u32, i64)>) -> Self {
        triplets.sort_unstable_by_key(|&(r, c, _)| (r, c));
        let mut row_start = Vec::with_capacity(rows + 1);
        let mut entries: Vec<(u32, i64)> = Vec::with_capacity(triplets.len());
        row_start.push(0);
        let mut current = 0usize;
        let mut last: Option<(u32, u32)> = None;
        for (r, c, v) in triplets {
            debug_assert!((r as usize) < rows && (c as usize) < cols);
            if last == Some((r, c)) {
                entries.last_mut().expect("entry").1 += v;
                continue;
            }
            if let Some((_, _)) = last {
                if entries.last().is_some_and(|e| e.1 == 0) {
                    entries.pop();
                }
            }
            while current < r as usize {
                row_start.push(entries.len());
                current += 1;
            }
            entries.push((c, v));
            last = Some((r, c));
        }
        if entries.last().is_some_and(|e| e.1 == 0) {
            entries.pop();
        }
        while row_start.len() <= rows {
            row_start.push(entries.len());
        }
        SparseMatrix { rows, cols, row_start, entries }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, row_start: alloc::vec![0; rows + 1], entries: Vec::new() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn row(&self, r: usize) -> &[(u32, i64)] {
        &self.entries[self.row_start[r]..self.row_start[r + 1]]
    }

    /// Entries reduced into `[0, p)`, zeros dropped.
    pub fn reduce_mod(&self, p: u32) -> Self {
        let p = i64::from(p);
        let mut row_start = Vec::with_capacity(self.rows + 1);
        let mut entries = Vec::with_capacity(self.entries.len());
        row_start.push(0);
        for r in 0..self.rows {
            for &(c, v) in self.row(r) {
                let v = v.rem_euclid(p);
                if v != 0 {
                    entries.push((c, v));
                }
            }
            row_start.push(entries.len());
        }
        SparseMatrix { rows: self.rows, cols: self.cols, row_start, entries }
    }

    pub fn mul_vec(&self, x: &[i64]) -> Vec<i64> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows).map(|r| self.row(r).iter().map(|&(c, v)| v * x[c as usize]).sum()).collect()
    }

    pub fn to_mod_matrix(&self, p: u32) -> ModMatrix {
        let mut m = ModMatrix::zeros(p, self.rows, self.cols);
        for r in 0..self.rows {
            for &(c, v) in self.row(r) {
                m.set(r, c as usize, v.rem_euclid(i64::from(p)) as u32);
            }
        }
        m
    }
}
