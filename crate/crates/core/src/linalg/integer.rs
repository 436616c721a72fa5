use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense matrix of arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries((0..self.rows).map(|r| self.row(r))).finish()
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged rows");
            data.extend(row.iter().map(|&v| BigInt::from(v)));
        }
        IntMatrix { rows: rows.len(), cols, data }
    }

    pub fn from_big_rows(rows: Vec<Vec<BigInt>>, cols: usize) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let n = rows.len();
        for row in rows {
            assert_eq!(row.len(), cols, "ragged rows");
            data.extend(row);
        }
        IntMatrix { rows: n, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        out.data[r * other.cols + c] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        (0..self.rows).map(|r| super::dot(self.row(r), v)).collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for k in 0..self.cols {
                self.data.swap(a * self.cols + k, b * self.cols + k);
            }
        }
    }

    /// `row[target] -= q * row[source]`.
    fn sub_row_multiple(&mut self, target: usize, source: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        let cols = self.cols;
        for k in 0..cols {
            let s = &self.data[source * cols + k];
            if !s.is_zero() {
                let d = q * s;
                self.data[target * cols + k] -= d;
            }
        }
    }

    fn negate_row(&mut self, r: usize) {
        for k in 0..self.cols {
            let v = &mut self.data[r * self.cols + k];
            *v = -core::mem::take(v);
        }
    }
}

/// Row-style Hermite normal form `U · M = H`.
#[derive(Clone, Debug)]
pub struct Hnf {
    pub h: IntMatrix,
    pub u: IntMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl Hnf {
    /// Rows of `U` past the rank: a basis of the integer left kernel of `M`.
    pub fn left_kernel(&self) -> Vec<Vec<BigInt>> {
        (self.rank..self.u.rows()).map(|r| self.u.row(r).to_vec()).collect()
    }
}

/// Hermite normal form by column-wise Euclidean elimination.
///
/// For each column, the remaining rows are reduced against the entry of
/// smallest absolute value until one nonzero survives; it becomes a positive
/// pivot and the entries above it are reduced into `[0, pivot)`.
pub fn hnf(m: &IntMatrix) -> Hnf {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.rows);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..h.cols {
        if r == h.rows {
            break;
        }
        loop {
            let best = (r..h.rows)
                .filter(|&i| !h.get(i, c).is_zero())
                .min_by(|&a, &b| h.get(a, c).abs().cmp(&h.get(b, c).abs()));
            let Some(best) = best else { break };
            h.swap_rows(r, best);
            u.swap_rows(r, best);
            let mut clean = true;
            for i in r + 1..h.rows {
                if h.get(i, c).is_zero() {
                    continue;
                }
                let q = h.get(i, c) / h.get(r, c);
                h.sub_row_multiple(i, r, &q);
                u.sub_row_multiple(i, r, &q);
                if !h.get(i, c).is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if h.get(r, c).is_zero() {
            continue;
        }
        if h.get(r, c).is_negative() {
            h.negate_row(r);
            u.negate_row(r);
        }
        for i in 0..r {
            let q = h.get(i, c).div_floor(h.get(r, c));
            h.sub_row_multiple(i, r, &q);
            u.sub_row_multiple(i, r, &q);
        }
        pivots.push(c);
        r += 1;
    }
    Hnf { h, u, rank: r, pivots }
}

type IntRow = Vec<(u32, BigInt)>;

/// Incrementally maintained Hermite normal form of the row lattice of all
/// rows added so far.
///
/// Invariant after every call: each stored row has a positive leading entry
/// in its own column, and every entry above a pivot lies in `[0, pivot)`.
/// Rows are stored sparsely; with mostly unit pivots they stay short.
#[derive(Clone, Debug)]
pub struct HnfReducer {
    cols: usize,
    by_pivot: Vec<Option<IntRow>>,
    rank: usize,
    acc: Vec<BigInt>,
}

impl HnfReducer {
    pub fn new(cols: usize) -> Self {
        HnfReducer { cols, by_pivot: vec![None; cols], rank: 0, acc: vec![BigInt::zero(); cols] }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    fn pivot_value(&self, c: usize) -> Option<&BigInt> {
        self.by_pivot[c].as_ref().map(|row| &row[0].1)
    }

    fn to_dense(&self, row: &IntRow) -> Vec<BigInt> {
        let mut d = vec![BigInt::zero(); self.cols];
        for (k, v) in row {
            d[*k as usize] = v.clone();
        }
        d
    }

    fn to_sparse(dense: &[BigInt]) -> IntRow {
        dense
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(k, v)| (k as u32, v.clone()))
            .collect()
    }

    /// Reduces the entries of `v` in pivot columns after `from` into range.
    fn reduce_tail(&self, v: &mut [BigInt], from: usize) {
        for c in from + 1..self.cols {
            if v[c].is_zero() {
                continue;
            }
            if let Some(row) = &self.by_pivot[c] {
                let q = v[c].div_floor(&row[0].1);
                if !q.is_zero() {
                    for (k, x) in row {
                        v[*k as usize] -= &q * x;
                    }
                }
            }
        }
    }

    /// Stores dense row `v` with leading column `c` (entry positive) and
    /// restores the invariant for the rows above it.
    fn install(&mut self, c: usize, mut v: Vec<BigInt>) {
        debug_assert!(v[c].is_positive() && v[..c].iter().all(Zero::is_zero));
        self.reduce_tail(&mut v, c);
        let pivot = v[c].clone();
        let new_row = Self::to_sparse(&v);
        self.by_pivot[c] = Some(new_row);
        for above in 0..c {
            let Some(row) = &self.by_pivot[above] else { continue };
            let Ok(pos) = row.binary_search_by_key(&(c as u32), |e| e.0) else { continue };
            let q = row[pos].1.div_floor(&pivot);
            if q.is_zero() {
                continue;
            }
            let mut dense = self.to_dense(row);
            for (k, x) in &v.iter().enumerate().filter(|(_, x)| !x.is_zero()).collect::<Vec<_>>() {
                dense[*k] -= &q * *x;
            }
            self.reduce_tail(&mut dense, c);
            self.by_pivot[above] = Some(Self::to_sparse(&dense));
        }
    }

    /// Adds one integer row. Returns true if the rank increased.
    pub fn add_row(&mut self, row: &[(u32, i64)]) -> bool {
        let Some(lo) = row.iter().map(|e| e.0 as usize).min() else {
            return false;
        };
        let mut acc = core::mem::take(&mut self.acc);
        for &(k, v) in row {
            acc[k as usize] += v;
        }
        let mut grew = false;
        let mut c = lo;
        while c < self.cols {
            if acc[c].is_zero() {
                c += 1;
                continue;
            }
            let Some(p) = self.pivot_value(c).cloned() else {
                if acc[c].is_negative() {
                    for x in acc.iter_mut() {
                        *x = -core::mem::take(x);
                    }
                }
                let fresh = core::mem::replace(&mut acc, vec![BigInt::zero(); self.cols]);
                self.install(c, fresh);
                self.rank += 1;
                grew = true;
                break;
            };
            let q = acc[c].div_floor(&p);
            if !q.is_zero() {
                for (k, x) in self.by_pivot[c].as_ref().expect("pivot row") {
                    acc[*k as usize] -= &q * x;
                }
            }
            if !acc[c].is_zero() {
                // unimodular 2×2 combination of the pivot row and acc
                let a = acc[c].clone();
                let eg = p.extended_gcd(&a);
                let (g, s, t) = (eg.gcd, eg.x, eg.y);
                let old = self.to_dense(self.by_pivot[c].as_ref().expect("pivot row"));
                let ap = &a / &g;
                let pp = &p / &g;
                let mut merged = vec![BigInt::zero(); self.cols];
                for k in c..self.cols {
                    merged[k] = &s * &old[k] + &t * &acc[k];
                    acc[k] = &ap * &old[k] - &pp * &acc[k];
                }
                debug_assert!(acc[c].is_zero());
                if merged[c].is_negative() {
                    for x in merged.iter_mut() {
                        *x = -core::mem::take(x);
                    }
                }
                self.install(c, merged);
            }
            c += 1;
        }
        for x in acc.iter_mut() {
            x.set_zero();
        }
        self.acc = acc;
        grew
    }

    /// Appends every row and returns the rank afterwards.
    pub fn absorb<'a, I>(&mut self, rows: I) -> usize
    where
        I: IntoIterator<Item = &'a [(u32, i64)]>,
    {
        for row in rows {
            self.add_row(row);
        }
        self.rank
    }

    pub fn pivots(&self) -> Vec<usize> {
        (0..self.cols).filter(|&c| self.by_pivot[c].is_some()).collect()
    }

    /// The current Hermite form, `rank × cols`, rows ordered by pivot.
    pub fn matrix(&self) -> IntMatrix {
        let rows: Vec<Vec<BigInt>> = self.by_pivot.iter().flatten().map(|r| self.to_dense(r)).collect();
        IntMatrix::from_big_rows(rows, self.cols)
    }
}
