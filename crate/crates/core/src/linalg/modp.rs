use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

/// Dense matrix over `Z/p`, entries kept in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModMatrix {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl ModMatrix {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> Self {
        ModMatrix { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = ModMatrix::zeros(p, n, n);
        for i in 0..n {
            m.set(i, i, 1 % p);
        }
        m
    }

    /// Rows of signed integers, reduced mod `p`.
    pub fn from_rows(p: u32, rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = ModMatrix::zeros(p, rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged rows");
            for (c, &v) in row.iter().enumerate() {
                m.set(r, c, v.rem_euclid(i64::from(p)) as u32);
            }
        }
        m
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        debug_assert!(v < self.p);
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        let p = u64::from(self.p);
        (0..self.rows)
            .map(|r| (self.row(r).iter().zip(v).map(|(&a, &b)| u64::from(a) * u64::from(b) % p).sum::<u64>() % p) as u32)
            .collect()
    }
}

/// `a^{-1} mod p` for `p` prime and `a ≢ 0`.
pub fn inv_mod(a: u32, p: u32) -> u32 {
    let (mut t, mut new_t) = (0i64, 1i64);
    let (mut r, mut new_r) = (i64::from(p), i64::from(a % p));
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    assert_eq!(r, 1, "{a} is not invertible mod {p}");
    t.rem_euclid(i64::from(p)) as u32
}

/// Reduced row echelon form with its rank and pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub rank: usize,
    pub matrix: ModMatrix,
    pub pivots: Vec<usize>,
}

/// Gauss–Jordan elimination over `Z/p`. For each column in turn, the pivot
/// is the first row (top-down, among rows not yet used) with a nonzero entry.
/// Zero rows are dropped from the returned matrix.
pub fn rref_mod(m: &ModMatrix) -> Rref {
    let p = m.p;
    let p64 = u64::from(p);
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        let Some(pr) = (r..a.rows).find(|&i| a.get(i, c) != 0) else {
            continue;
        };
        if pr != r {
            for k in 0..a.cols {
                a.data.swap(pr * a.cols + k, r * a.cols + k);
            }
        }
        let inv = u64::from(inv_mod(a.get(r, c), p));
        for k in c..a.cols {
            let v = u64::from(a.get(r, k)) * inv % p64;
            a.set(r, k, v as u32);
        }
        for i in 0..a.rows {
            let f = a.get(i, c);
            if i == r || f == 0 {
                continue;
            }
            let f = p64 - u64::from(f);
            for k in c..a.cols {
                let pivot_entry = a.get(r, k);
                if pivot_entry != 0 {
                    let v = (u64::from(a.get(i, k)) + f * u64::from(pivot_entry)) % p64;
                    a.set(i, k, v as u32);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.data.truncate(r * a.cols);
    a.rows = r;
    Rref { rank: r, matrix: a, pivots }
}

/// One basis vector per free column, in increasing column order: the free
/// variable is 1, the other free variables 0, pivot variables solved for.
pub fn nullspace_mod(rref: &Rref) -> Vec<Vec<u32>> {
    let m = &rref.matrix;
    let p = m.p;
    let mut is_pivot = vec![false; m.cols];
    for &c in &rref.pivots {
        is_pivot[c] = true;
    }
    (0..m.cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![0u32; m.cols];
            v[f] = 1 % p;
            for (r, &c) in rref.pivots.iter().enumerate() {
                let x = m.get(r, f);
                v[c] = (p - x) % p;
            }
            v
        })
        .collect()
}

/// The representative of `x mod p` in `(-p/2, p/2]`.
pub fn symmetric_lift(x: u32, p: u32) -> i64 {
    let x = x % p;
    if x > p / 2 {
        i64::from(x) - i64::from(p)
    } else {
        i64::from(x)
    }
}

pub fn symmetric_lift_vec(v: &[u32], p: u32) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(symmetric_lift(x, p))).collect()
}

/// Incrementally maintained reduced row echelon form over `Z/p`.
///
/// Rows are stored sparsely and kept fully reduced: every stored row has a
/// leading 1 and zeros in every other pivot column. Reducing an incoming row
/// therefore touches only the pivot rows of the pivot columns it starts with,
/// with no cascade.
#[derive(Clone, Debug)]
pub struct ModRowReducer {
    p: u32,
    cols: usize,
    rows: Vec<Vec<(u32, u32)>>,
    pivot_row: Vec<Option<usize>>,
    scratch: Vec<u32>,
    marked: Vec<bool>,
    touched: Vec<u32>,
}

impl ModRowReducer {
    pub fn new(p: u32, cols: usize) -> Self {
        ModRowReducer {
            p,
            cols,
            rows: Vec::new(),
            pivot_row: vec![None; cols],
            scratch: vec![0; cols],
            marked: vec![false; cols],
            touched: Vec::new(),
        }
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn load(&mut self, c: usize, v: u32) {
        if v == 0 {
            return;
        }
        if !self.marked[c] {
            self.marked[c] = true;
            self.touched.push(c as u32);
        }
        self.scratch[c] = ((u64::from(self.scratch[c]) + u64::from(v)) % u64::from(self.p)) as u32;
    }

    /// Adds one row (entries may be any integers; they are reduced mod p).
    /// Returns true if the rank increased.
    pub fn add_row(&mut self, row: &[(u32, i64)]) -> bool {
        let p = self.p;
        let p64 = u64::from(p);
        for &(c, v) in row {
            self.load(c as usize, v.rem_euclid(i64::from(p)) as u32);
        }
        let initial = self.touched.len();
        for t in 0..initial {
            let c = self.touched[t] as usize;
            let f = self.scratch[c];
            if f == 0 {
                continue;
            }
            if let Some(r) = self.pivot_row[c] {
                let neg = p - f;
                for idx in 0..self.rows[r].len() {
                    let (k, x) = self.rows[r][idx];
                    let add = (u64::from(neg) * u64::from(x) % p64) as u32;
                    self.load(k as usize, add);
                }
                debug_assert_eq!(self.scratch[c], 0);
            }
        }
        let mut new_row: Vec<(u32, u32)> = self
            .touched
            .iter()
            .filter_map(|&c| {
                let v = self.scratch[c as usize];
                (v != 0).then_some((c, v))
            })
            .collect();
        for &c in &self.touched {
            self.scratch[c as usize] = 0;
            self.marked[c as usize] = false;
        }
        self.touched.clear();
        if new_row.is_empty() {
            return false;
        }
        new_row.sort_unstable_by_key(|e| e.0);
        let lead = new_row[0].0 as usize;
        let inv = u64::from(inv_mod(new_row[0].1, p));
        for e in new_row.iter_mut() {
            e.1 = (u64::from(e.1) * inv % p64) as u32;
        }
        // clear the new pivot column from existing rows
        for row in self.rows.iter_mut() {
            if let Ok(pos) = row.binary_search_by_key(&(lead as u32), |e| e.0) {
                let f = p - row[pos].1;
                *row = axpy_mod(row, f, &new_row, p);
            }
        }
        self.pivot_row[lead] = Some(self.rows.len());
        self.rows.push(new_row);
        true
    }

    /// Appends every row of `rows` and returns the rank afterwards.
    pub fn absorb<'a, I>(&mut self, rows: I) -> usize
    where
        I: IntoIterator<Item = &'a [(u32, i64)]>,
    {
        for row in rows {
            self.add_row(row);
        }
        self.rank()
    }

    pub fn pivots(&self) -> Vec<usize> {
        (0..self.cols).filter(|&c| self.pivot_row[c].is_some()).collect()
    }

    /// Snapshot as a dense [`Rref`], rows ordered by pivot column.
    pub fn to_rref(&self) -> Rref {
        let pivots = self.pivots();
        let mut m = ModMatrix::zeros(self.p, pivots.len(), self.cols);
        for (r, &c) in pivots.iter().enumerate() {
            let row = &self.rows[self.pivot_row[c].expect("pivot")];
            for &(k, v) in row {
                m.set(r, k as usize, v);
            }
        }
        Rref { rank: pivots.len(), matrix: m, pivots }
    }

    /// Nullspace basis, same convention as [`nullspace_mod`], computed from
    /// the sparse rows directly.
    pub fn nullspace(&self) -> Vec<Vec<u32>> {
        let p = self.p;
        let free: Vec<usize> = (0..self.cols).filter(|&c| self.pivot_row[c].is_none()).collect();
        let mut basis: Vec<Vec<u32>> = free
            .iter()
            .map(|&f| {
                let mut v = vec![0u32; self.cols];
                v[f] = 1 % p;
                v
            })
            .collect();
        let slot: hashbrown::HashMap<usize, usize> = free.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        for row in &self.rows {
            let lead = row[0].0 as usize;
            for &(k, x) in &row[1..] {
                if let Some(&i) = slot.get(&(k as usize)) {
                    basis[i][lead] = (p - x) % p;
                }
            }
        }
        basis
    }
}

/// `a + f·b` over `Z/p` for sorted sparse rows.
fn axpy_mod(a: &[(u32, u32)], f: u32, b: &[(u32, u32)], p: u32) -> Vec<(u32, u32)> {
    let p64 = u64::from(p);
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i]);
            i += 1;
        } else if take_b {
            let v = (u64::from(f) * u64::from(b[j].1) % p64) as u32;
            if v != 0 {
                out.push((b[j].0, v));
            }
            j += 1;
        } else {
            let v = ((u64::from(a[i].1) + u64::from(f) * u64::from(b[j].1)) % p64) as u32;
            if v != 0 {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn identity_rref() {
        let r = rref_mod(&ModMatrix::identity(101, 5));
        assert_eq!(r.rank, 5);
        assert_eq!(r.pivots, vec![0, 1, 2, 3, 4]);
        assert!(nullspace_mod(&r).is_empty());
    }

    #[test]
    fn single_relation_nullspace() {
        let r = rref_mod(&ModMatrix::from_rows(101, &[vec![1, 1]]));
        assert_eq!(nullspace_mod(&r), vec![vec![100, 1]]);
    }

    #[test]
    fn zero_matrix_nullspace_is_unit_vectors() {
        let r = rref_mod(&ModMatrix::zeros(101, 2, 3));
        assert_eq!(r.rank, 0);
        assert_eq!(nullspace_mod(&r), vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
    }

    #[test]
    fn lifts() {
        assert_eq!(symmetric_lift(91, 101), -10);
        assert_eq!(symmetric_lift(1, 101), 1);
        assert_eq!(symmetric_lift(0, 101), 0);
        assert_eq!(symmetric_lift(50, 101), 50);
        assert_eq!(symmetric_lift(51, 101), -50);
    }

    #[test]
    fn inverses() {
        for a in 1..101 {
            assert_eq!(a * inv_mod(a, 101) % 101, 1);
        }
    }

    #[test]
    fn empty_row_leaves_state_alone() {
        let mut red = ModRowReducer::new(7, 3);
        red.add_row(&[(0, 1), (2, 3)]);
        let before = red.to_rref();
        assert!(!red.add_row(&[]));
        assert!(!red.add_row(&[(0, 7)]));
        assert_eq!(red.to_rref(), before);
    }

    fn matrix_strategy() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1usize..8, 1usize..9).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-3i64..4, c), r))
    }

    proptest! {
        #[test]
        fn incremental_matches_batch(rows in matrix_strategy()) {
            let p = 7;
            let m = ModMatrix::from_rows(p, &rows);
            let batch = rref_mod(&m);
            let mut red = ModRowReducer::new(p, m.cols());
            for row in &rows {
                let sparse: Vec<(u32, i64)> = row.iter().enumerate().filter(|e| *e.1 != 0).map(|(c, &v)| (c as u32, v)).collect();
                red.add_row(&sparse);
            }
            prop_assert_eq!(red.to_rref(), batch.clone());
            prop_assert_eq!(red.nullspace(), nullspace_mod(&batch));
        }

        #[test]
        fn rref_is_idempotent_and_kernel_is_kernel(rows in matrix_strategy()) {
            let m = ModMatrix::from_rows(5, &rows);
            let r = rref_mod(&m);
            let again = rref_mod(&r.matrix);
            prop_assert_eq!(&again.matrix, &r.matrix);
            for v in nullspace_mod(&r) {
                prop_assert!(m.mul_vec(&v).iter().all(|&x| x == 0));
            }
            prop_assert_eq!(r.rank + nullspace_mod(&r).len(), m.cols());
        }
    }
}
