//! The raising operators `T(l,m)` of `sl3 ⊕ sl3 ⊕ sl3` on polynomials in the
//! 27 coordinates, and the sparse matrices they induce between weight spaces.
//!
//! `T(l,m)` maps `x_ijk` with subscript `l` equal to `m+1` to the same variable
//! with that subscript lowered to `m`, and acts on monomials as a derivation.
//! A polynomial is invariant iff all six raising operators kill it.

use alloc::vec::Vec;
use core::fmt;

use arrayvec::ArrayVec;
use num_bigint::BigInt;

use crate::error::{invalid, Error, Result};
use crate::linalg::SparseMatrix;
use crate::monomial::{cell, monomial_index, DegreeBasis, ExponentArray};
use crate::poly::Polynomial;

/// One of the six simple raising operators. Stored 0-based: `direction` is
/// the subscript position it acts on, `root` the simple root index.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct OperatorId {
    direction: u8,
    root: u8,
}

impl OperatorId {
    /// `T(1,1), T(1,2), T(2,1), T(2,2), T(3,1), T(3,2)`.
    pub const ALL: [OperatorId; 6] = [
        OperatorId { direction: 0, root: 0 },
        OperatorId { direction: 0, root: 1 },
        OperatorId { direction: 1, root: 0 },
        OperatorId { direction: 1, root: 1 },
        OperatorId { direction: 2, root: 0 },
        OperatorId { direction: 2, root: 1 },
    ];

    pub fn new(direction: usize, root: usize) -> Result<Self> {
        if direction >= 3 || root >= 2 {
            return Err(invalid!("no raising operator for direction {direction}, root {root} (0-based)"));
        }
        Ok(OperatorId { direction: direction as u8, root: root as u8 })
    }

    /// `(l, m)` with `l ∈ {1,2,3}`, `m ∈ {1,2}`.
    pub fn from_one_based(l: usize, m: usize) -> Result<Self> {
        if !(1..=3).contains(&l) || !(1..=2).contains(&m) {
            return Err(invalid!("no raising operator T({l},{m})"));
        }
        OperatorId::new(l - 1, m - 1)
    }

    pub fn direction(self) -> usize {
        self.direction as usize
    }

    pub fn root(self) -> usize {
        self.root as usize
    }

    /// Position in [`OperatorId::ALL`].
    pub fn index(self) -> usize {
        2 * self.direction() + self.root()
    }

    /// `(source, target)` cells: subscript `direction` moves from `root+1`
    /// down to `root`, the other two subscripts range over `3 × 3`.
    pub fn cell_pairs(self) -> [(usize, usize); 9] {
        let mut pairs = [(0, 0); 9];
        let (d, m) = (self.direction(), self.root());
        for a in 0..3 {
            for b in 0..3 {
                let place = |level: usize| {
                    let mut t = [a, b, 0];
                    t.copy_within(d..2, d + 1);
                    t[d] = level;
                    cell(t[0], t[1], t[2])
                };
                pairs[3 * a + b] = (place(m + 1), place(m));
            }
        }
        pairs
    }
}

impl fmt::Display for OperatorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T({},{})", self.direction + 1, self.root + 1)
    }
}

/// Image of a monomial: at most nine `(multiplicity, monomial)` terms.
pub type RaisingImages = ArrayVec<(u8, ExponentArray), 9>;

/// `T(l,m)` applied to the monomial with exponents `e`. Each raisable
/// variable contributes its exponent as coefficient.
pub fn apply_raising(op: OperatorId, e: &ExponentArray) -> RaisingImages {
    let mut out = RaisingImages::new();
    for (src, dst) in op.cell_pairs() {
        let mult = e.at(src);
        if mult > 0 {
            let mut img = *e;
            *img.at_mut(src) -= 1;
            *img.at_mut(dst) += 1;
            out.push((mult, img));
        }
    }
    out
}

/// Linear extension of [`apply_raising`] to polynomials, over `Z`.
pub fn apply_raising_poly(op: OperatorId, p: &Polynomial) -> Polynomial {
    let mut acc = hashbrown::HashMap::<ExponentArray, BigInt>::new();
    for (e, c) in p.terms() {
        for (mult, img) in apply_raising(op, e) {
            *acc.entry(img).or_default() += c * BigInt::from(mult);
        }
    }
    Polynomial::from_terms(acc)
}

/// Matrix of one raising operator from a weight-zero domain to its
/// higher-weight basis. Rows follow `DegreeBasis::higher(op)`; columns follow
/// the domain (monomials or orbit sums).
#[derive(Clone, Debug)]
pub struct OperatorMatrix {
    pub op: OperatorId,
    pub degree: u32,
    pub modulus: Option<u32>,
    pub matrix: SparseMatrix,
}

impl OperatorMatrix {
    /// Contiguous row blocks of at most `block_size` rows, in order.
    pub fn blocks(&self, block_size: usize) -> impl Iterator<Item = RowBlock<'_>> + '_ {
        let block_size = block_size.max(1);
        let count = self.matrix.rows().div_ceil(block_size);
        (0..count).map(move |index| {
            let start = index * block_size;
            let end = (start + block_size).min(self.matrix.rows());
            RowBlock { op: self.op, index, start, matrix: &self.matrix, end }
        })
    }

    /// `row col value` triplets, one per line, for debugging.
    pub fn triplets(&self) -> alloc::string::String {
        use core::fmt::Write;
        let mut out = alloc::string::String::new();
        for r in 0..self.matrix.rows() {
            for &(c, v) in self.matrix.row(r) {
                let _ = writeln!(out, "{r} {c} {v}");
            }
        }
        out
    }
}

/// A run of consecutive rows of an [`OperatorMatrix`].
#[derive(Clone, Copy, Debug)]
pub struct RowBlock<'a> {
    pub op: OperatorId,
    pub index: usize,
    pub start: usize,
    end: usize,
    matrix: &'a SparseMatrix,
}

impl<'a> RowBlock<'a> {
    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.end == self.start
    }

    pub fn cols(&self) -> usize {
        self.matrix.cols()
    }

    pub fn rows(&self) -> impl Iterator<Item = &'a [(u32, i64)]> + 'a {
        let m = self.matrix;
        (self.start..self.end).map(move |r| m.row(r))
    }

    pub fn is_zero(&self) -> bool {
        self.rows().all(|r| r.is_empty())
    }
}

fn assemble<'c, I, T>(basis: &DegreeBasis, op: OperatorId, columns: I, modulus: Option<u32>) -> Result<OperatorMatrix>
where
    I: IntoIterator<Item = T>,
    T: IntoIterator<Item = (&'c ExponentArray, i64)>,
{
    if let Some(p) = modulus {
        if p < 3 || p % 2 == 0 {
            return Err(invalid!("modulus {p} must be an odd prime"));
        }
    }
    let rows = basis.higher(op);
    let mut triplets: Vec<(u32, u32, i64)> = Vec::new();
    let mut ncols = 0usize;
    for (col, terms) in columns.into_iter().enumerate() {
        ncols = col + 1;
        for (e, coeff) in terms {
            for (mult, img) in apply_raising(op, e) {
                let r = monomial_index(&img, rows).map_err(|err| match err {
                    Error::NotFound(msg) => Error::NotFound(alloc::format!("{op}: {msg}")),
                    other => other,
                })?;
                triplets.push((r as u32, col as u32, coeff * i64::from(mult)));
            }
        }
    }
    let mut matrix = SparseMatrix::from_triplets(rows.len(), ncols, triplets);
    if let Some(p) = modulus {
        matrix = matrix.reduce_mod(p);
    }
    Ok(OperatorMatrix { op, degree: basis.degree, modulus, matrix })
}

/// Matrix of `op` on the full weight-zero monomial basis.
pub fn build_operator_matrix(basis: &DegreeBasis, op: OperatorId, modulus: Option<u32>) -> Result<OperatorMatrix> {
    assemble(basis, op, basis.weight_zero.iter().map(|e| core::iter::once((e, 1i64))), modulus)
}

/// Matrix of `op` restricted to the span of the given weight-zero
/// polynomials (typically orbit sums), one column each.
pub fn build_restricted_matrix(
    basis: &DegreeBasis,
    op: OperatorId,
    columns: &[Vec<(ExponentArray, i64)>],
    modulus: Option<u32>,
) -> Result<OperatorMatrix> {
    assemble(basis, op, columns.iter().map(|col| col.iter().map(|(e, c)| (e, *c))), modulus)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::Weight;
    use alloc::vec;

    #[test]
    fn single_variable_images() {
        let t11 = OperatorId::from_one_based(1, 1).unwrap();
        let e = ExponentArray::single(1, 0, 2, 1);
        let imgs = apply_raising(t11, &e);
        assert_eq!(imgs.as_slice(), &[(1, ExponentArray::single(0, 0, 2, 1))]);

        let e = ExponentArray::single(1, 0, 0, 2);
        let imgs = apply_raising(t11, &e);
        let mut expect = ExponentArray::ZERO;
        expect.set(1, 0, 0, 1);
        expect.set(0, 0, 0, 1);
        assert_eq!(imgs.as_slice(), &[(2, expect)]);

        let top = ExponentArray::single(0, 1, 1, 3);
        assert!(apply_raising(t11, &top).is_empty());
    }

    #[test]
    fn cell_pairs_move_one_subscript() {
        for op in OperatorId::ALL {
            for (src, dst) in op.cell_pairs() {
                let s = crate::monomial::coords(src);
                let d = crate::monomial::coords(dst);
                for t in 0..3 {
                    if t == op.direction() {
                        assert_eq!((s[t], d[t]), (op.root() + 1, op.root()));
                    } else {
                        assert_eq!(s[t], d[t]);
                    }
                }
            }
        }
    }

    #[test]
    fn images_have_raised_weight() {
        let basis = DegreeBasis::new(6);
        for op in OperatorId::ALL {
            for e in &basis.weight_zero {
                for (_, img) in apply_raising(op, e) {
                    assert_eq!(img.weight(), Weight::raised(op));
                    assert_eq!(img.degree(), 6);
                }
            }
        }
    }

    #[test]
    fn operator_matrix_shape_and_column_sums() {
        let basis = DegreeBasis::new(6);
        for op in OperatorId::ALL {
            let m = build_operator_matrix(&basis, op, None).unwrap();
            assert_eq!((m.matrix.rows(), m.matrix.cols()), (792, 1152));
            let mut col_sums = vec![0i64; 1152];
            for r in 0..m.matrix.rows() {
                for &(c, v) in m.matrix.row(r) {
                    col_sums[c as usize] += v;
                }
            }
            for (c, e) in basis.weight_zero.iter().enumerate() {
                let expect: i64 = op.cell_pairs().iter().map(|&(s, _)| i64::from(e.at(s))).sum();
                assert_eq!(col_sums[c], expect);
            }
        }
    }

    #[test]
    fn blocks_cover_rows() {
        let basis = DegreeBasis::new(6);
        let m = build_operator_matrix(&basis, OperatorId::ALL[3], Some(101)).unwrap();
        let blocks: Vec<_> = m.blocks(100).collect();
        assert_eq!(blocks.len(), 8);
        assert_eq!(blocks.iter().map(|b| b.len()).sum::<usize>(), 792);
        assert_eq!(blocks[7].len(), 92);
    }

    #[test]
    fn rejects_even_modulus() {
        let basis = DegreeBasis::new(3);
        assert!(build_operator_matrix(&basis, OperatorId::ALL[0], Some(100)).is_err());
    }

    #[test]
    fn directions_commute() {
        let basis = DegreeBasis::new(6);
        for e in basis.weight_zero.iter().step_by(17) {
            let p = Polynomial::monomial(*e, 1);
            for a in OperatorId::ALL {
                for b in OperatorId::ALL {
                    if a.direction() == b.direction() {
                        continue;
                    }
                    let ab = apply_raising_poly(a, &apply_raising_poly(b, &p));
                    let ba = apply_raising_poly(b, &apply_raising_poly(a, &p));
                    assert_eq!(ab, ba);
                }
            }
        }
    }

    #[test]
    fn poly_action_matches_monomial_action() {
        let e = ExponentArray::single(2, 1, 1, 4);
        let op = OperatorId::from_one_based(1, 2).unwrap();
        let p = apply_raising_poly(op, &Polynomial::monomial(e, 1));
        let imgs = apply_raising(op, &e);
        assert_eq!(p.len(), imgs.len());
        for (m, img) in imgs {
            assert_eq!(p.coefficient(&img), BigInt::from(m));
        }
    }
}
