//! Exponent arrays and the monomial bases of the weight spaces.
//!
//! A monomial `prod x_ijk^e_ijk` in the 27 coordinates of a 3×3×3 array is
//! stored as its exponent array. Cells are addressed 0-based internally as
//! `9*i + 3*j + k`; the flattened order is lexicographic in `(i, j, k)`, and
//! the derived `Ord` on the flattened bytes is the total order on monomials.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{invalid, Error, Result};
use crate::lie::{self, OperatorId};

/// Number of coordinates of a 3×3×3 array.
pub const CELLS: usize = 27;

#[inline]
pub const fn cell(i: usize, j: usize, k: usize) -> usize {
    9 * i + 3 * j + k
}

#[inline]
pub const fn coords(c: usize) -> [usize; 3] {
    [c / 9, (c / 3) % 3, c % 3]
}

/// Exponents of a monomial in the 27 variables `x_ijk`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ExponentArray([u8; CELLS]);

impl ExponentArray {
    pub const ZERO: ExponentArray = ExponentArray([0; CELLS]);

    pub const fn from_bytes(bytes: [u8; CELLS]) -> Self {
        ExponentArray(bytes)
    }

    /// Builds an array from its flattening. Entries must lie in `0..=255`.
    pub fn unflatten(list: &[i64]) -> Result<Self> {
        if list.len() != CELLS {
            return Err(invalid!("expected {CELLS} exponents, got {}", list.len()));
        }
        let mut out = [0u8; CELLS];
        for (slot, &e) in out.iter_mut().zip(list) {
            *slot = u8::try_from(e).map_err(|_| invalid!("exponent {e} out of range"))?;
        }
        Ok(ExponentArray(out))
    }

    pub fn flatten(&self) -> [u8; CELLS] {
        self.0
    }

    pub fn as_bytes(&self) -> &[u8; CELLS] {
        &self.0
    }

    /// Single-variable monomial `x_ijk^power` (0-based subscripts).
    pub fn single(i: usize, j: usize, k: usize, power: u8) -> Self {
        let mut e = ExponentArray::ZERO;
        e.0[cell(i, j, k)] = power;
        e
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize) -> u8 {
        self.0[cell(i, j, k)]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, k: usize, value: u8) {
        self.0[cell(i, j, k)] = value;
    }

    #[inline]
    pub fn at(&self, c: usize) -> u8 {
        self.0[c]
    }

    #[inline]
    pub(crate) fn at_mut(&mut self, c: usize) -> &mut u8 {
        &mut self.0[c]
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| u32::from(e)).sum()
    }

    /// Sums of the three parallel slices orthogonal to `direction`.
    pub fn slice_sums(&self, direction: usize) -> [u32; 3] {
        let mut sums = [0u32; 3];
        for (c, &e) in self.0.iter().enumerate() {
            sums[coords(c)[direction]] += u32::from(e);
        }
        sums
    }

    pub fn weight(&self) -> Weight {
        let mut w = [0i32; 6];
        for direction in 0..3 {
            let s = self.slice_sums(direction).map(|v| v as i32);
            w[2 * direction] = s[0] - s[1];
            w[2 * direction + 1] = s[1] - s[2];
        }
        Weight(w)
    }

    /// True iff all nine slice sums are equal, i.e. the weight is zero.
    pub fn is_equal_parallel_slice(&self) -> bool {
        self.weight() == Weight::ZERO
    }

    /// Exchanges subscript positions `a` and `b`, e.g. `e'_ijk = e_jik` for
    /// `(a, b) = (0, 1)`.
    pub fn swap_directions(&self, a: usize, b: usize) -> Self {
        let mut out = ExponentArray::ZERO;
        for (c, &e) in self.0.iter().enumerate() {
            let mut t = coords(c);
            t.swap(a, b);
            out.0[cell(t[0], t[1], t[2])] = e;
        }
        out
    }

    /// The `3 × 9` matrix form: row `i`, then three blocks by `k`, each
    /// listing `j`.
    pub fn matrix_form(&self) -> [[u8; 9]; 3] {
        let mut rows = [[0u8; 9]; 3];
        for (c, &e) in self.0.iter().enumerate() {
            let [i, j, k] = coords(c);
            rows[i][3 * k + j] = e;
        }
        rows
    }

    /// Inverse of [`matrix_form`](Self::matrix_form).
    pub fn from_matrix_form(rows: &[[u8; 9]; 3]) -> Self {
        let mut e = ExponentArray::ZERO;
        for (c, slot) in e.0.iter_mut().enumerate() {
            let [i, j, k] = coords(c);
            *slot = rows[i][3 * k + j];
        }
        e
    }
}

impl fmt::Debug for ExponentArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "E[{self}]")
    }
}

/// Monomial text form: 27 space-separated integers in flatten order.
impl fmt::Display for ExponentArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (c, e) in self.0.iter().enumerate() {
            if c > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

impl FromStr for ExponentArray {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let list = s
            .split_whitespace()
            .map(|tok| tok.parse::<i64>().map_err(|_| invalid!("bad exponent {tok:?}")))
            .collect::<Result<Vec<_>>>()?;
        ExponentArray::unflatten(&list)
    }
}

/// Eigenvalues `(w11, w12, w21, w22, w31, w32)` of a monomial under the six
/// Cartan elements.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Weight(pub [i32; 6]);

impl Weight {
    pub const ZERO: Weight = Weight([0; 6]);

    /// The weight reached from zero by one application of `op`: `2, -1` or
    /// `-1, 2` in the slot pair of its direction.
    pub fn raised(op: OperatorId) -> Weight {
        let mut w = [0i32; 6];
        let base = 2 * op.direction();
        if op.root() == 0 {
            w[base] = 2;
            w[base + 1] = -1;
        } else {
            w[base] = -1;
            w[base + 1] = 2;
        }
        Weight(w)
    }
}

/// Compositions of `total` into `parts` non-negative parts, in increasing
/// lexicographic order.
fn compositions(total: u8, parts: usize) -> Vec<Vec<u8>> {
    fn rec(left: u8, parts: usize, prefix: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if parts == 1 {
            prefix.push(left);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in 0..=left {
            prefix.push(first);
            rec(left - first, parts - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(total, parts, &mut Vec::with_capacity(parts), &mut out);
    out
}

/// Weight-zero monomials of degree `n`, in increasing order.
///
/// Slices `i = 1, 2` run over compositions of `n/3`; the third slice is then a
/// 3×3 table with forced row and column sums, enumerated so the output comes
/// out sorted. Empty unless `3 | n`.
pub fn generate_weight_zero(n: u32) -> Vec<ExponentArray> {
    if n % 3 != 0 {
        return Vec::new();
    }
    let Ok(s) = u8::try_from(n / 3) else {
        return Vec::new();
    };
    let slices = compositions(s, 9);
    let mut out = Vec::new();
    for first in &slices {
        for second in &slices {
            let mut row_left = [s; 3];
            let mut col_left = [s; 3];
            let mut ok = true;
            for j in 0..3 {
                for k in 0..3 {
                    let v = first[3 * j + k] + second[3 * j + k];
                    match (row_left[j].checked_sub(v), col_left[k].checked_sub(v)) {
                        (Some(r), Some(c)) => {
                            row_left[j] = r;
                            col_left[k] = c;
                        }
                        _ => ok = false,
                    }
                }
            }
            if !ok {
                continue;
            }
            let mut base = [0u8; CELLS];
            base[..9].copy_from_slice(first);
            base[9..18].copy_from_slice(second);
            for third in contingency_tables(row_left, col_left) {
                base[18..].copy_from_slice(&third);
                out.push(ExponentArray(base));
            }
        }
    }
    out
}

/// All non-negative 3×3 tables (row-major) with the given margins, in
/// increasing lexicographic order. Margins must have equal totals.
fn contingency_tables(rows: [u8; 3], cols: [u8; 3]) -> Vec<[u8; 9]> {
    let mut out = Vec::new();
    for a00 in 0..=rows[0].min(cols[0]) {
        for a01 in 0..=(rows[0] - a00).min(cols[1]) {
            let a02 = rows[0] - a00 - a01;
            if a02 > cols[2] {
                continue;
            }
            for a10 in 0..=rows[1].min(cols[0] - a00) {
                for a11 in 0..=(rows[1] - a10).min(cols[1] - a01) {
                    let a12 = rows[1] - a10 - a11;
                    if a12 > cols[2] - a02 {
                        continue;
                    }
                    let a20 = cols[0] - a00 - a10;
                    let a21 = cols[1] - a01 - a11;
                    let a22 = cols[2] - a02 - a12;
                    if a20 + a21 + a22 != rows[2] {
                        continue;
                    }
                    out.push([a00, a01, a02, a10, a11, a12, a20, a21, a22]);
                }
            }
        }
    }
    out
}

/// All arrays of weight `Weight::raised(op)` reachable by one raising step
/// from `weight_zero`, sorted and deduplicated. Directions 2 and 3 are
/// obtained from direction 1 by exchanging subscripts.
pub fn generate_higher_weight(weight_zero: &[ExponentArray], op: OperatorId) -> Vec<ExponentArray> {
    let first = OperatorId::new(0, op.root()).expect("valid root");
    let mut out: Vec<ExponentArray> = Vec::with_capacity(weight_zero.len() * 2);
    for e in weight_zero {
        out.extend(lie::apply_raising(first, e).into_iter().map(|(_, img)| img));
    }
    if op.direction() != 0 {
        for e in out.iter_mut() {
            *e = e.swap_directions(0, op.direction());
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Convenience for `generate_higher_weight(&generate_weight_zero(n), op)`
/// with an `(l, m)` pair validated first (1-based).
pub fn generate_higher_weight_for(n: u32, l: usize, m: usize) -> Result<Vec<ExponentArray>> {
    let op = OperatorId::from_one_based(l, m)?;
    Ok(generate_higher_weight(&generate_weight_zero(n), op))
}

/// 0-based position of `e` in the sorted `basis`.
pub fn monomial_index(e: &ExponentArray, basis: &[ExponentArray]) -> Result<usize> {
    basis
        .binary_search(e)
        .map_err(|_| Error::NotFound(alloc::format!("monomial [{e}] absent from basis")))
}

/// Weight-zero basis of degree `n` plus the six higher-weight bases.
#[derive(Clone, Debug)]
pub struct DegreeBasis {
    pub degree: u32,
    pub weight_zero: Vec<ExponentArray>,
    higher: [Vec<ExponentArray>; 6],
}

impl DegreeBasis {
    pub fn new(degree: u32) -> Self {
        let weight_zero = generate_weight_zero(degree);
        let higher = OperatorId::ALL.map(|op| generate_higher_weight(&weight_zero, op));
        DegreeBasis { degree, weight_zero, higher }
    }

    pub fn higher(&self, op: OperatorId) -> &[ExponentArray] {
        &self.higher[op.index()]
    }
}
