//! Sparse integer polynomials in the 27 coordinates, exact evaluation on
//! integer arrays, and the `SL3(Z)^3` action used for invariance testing.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{invalid, Result};
use crate::monomial::{cell, ExponentArray, CELLS};

/// Map from monomial to nonzero integer coefficient, ordered by monomial.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Polynomial {
    terms: BTreeMap<ExponentArray, BigInt>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn monomial(e: ExponentArray, coeff: i64) -> Self {
        Polynomial::from_terms([(e, BigInt::from(coeff))])
    }

    /// Sums duplicate monomials and drops zero coefficients.
    pub fn from_terms<I: IntoIterator<Item = (ExponentArray, BigInt)>>(terms: I) -> Self {
        let mut map = BTreeMap::new();
        for (e, c) in terms {
            *map.entry(e).or_insert_with(BigInt::zero) += c;
        }
        map.retain(|_, c: &mut BigInt| !c.is_zero());
        Polynomial { terms: map }
    }

    pub fn terms(&self) -> impl ExactSizeIterator<Item = (&ExponentArray, &BigInt)> + '_ {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, e: &ExponentArray) -> BigInt {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    /// Common degree of all terms, or `None` if empty or inhomogeneous.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degrees = self.terms.keys().map(ExponentArray::degree);
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    pub fn scale(&self, k: &BigInt) -> Polynomial {
        if k.is_zero() {
            return Polynomial::zero();
        }
        Polynomial { terms: self.terms.iter().map(|(e, c)| (*e, c * k)).collect() }
    }

    fn combine(&self, other: &Polynomial, sign: i32) -> Polynomial {
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            let slot = terms.entry(*e).or_insert_with(BigInt::zero);
            if sign > 0 {
                *slot += c;
            } else {
                *slot -= c;
            }
            if slot.is_zero() {
                terms.remove(e);
            }
        }
        Polynomial { terms }
    }

    /// Exact product, collected through a hash map.
    pub fn multiply(&self, other: &Polynomial) -> Polynomial {
        let mut acc: hashbrown::HashMap<ExponentArray, BigInt> =
            hashbrown::HashMap::with_capacity(self.len().saturating_mul(other.len()).min(1 << 22));
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let mut e = *ea;
                for c in 0..CELLS {
                    *e.at_mut(c) = e.at(c).checked_add(eb.at(c)).expect("exponent overflow");
                }
                *acc.entry(e).or_default() += ca * cb;
            }
        }
        Polynomial::from_terms(acc)
    }

    /// Exact value at the integer array `x`.
    pub fn evaluate(&self, x: &Array333) -> BigInt {
        let max_exp = self.terms.keys().flat_map(|e| e.as_bytes().iter().copied()).max().unwrap_or(0) as usize;
        let powers: Vec<Vec<BigInt>> = x
            .entries
            .iter()
            .map(|v| {
                let mut row = Vec::with_capacity(max_exp + 1);
                row.push(BigInt::one());
                for k in 1..=max_exp {
                    let next = &row[k - 1] * v;
                    row.push(next);
                }
                row
            })
            .collect();
        let mut total = BigInt::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (cell, &k) in e.as_bytes().iter().enumerate() {
                if k > 0 {
                    term *= &powers[cell][k as usize];
                }
            }
            total += term;
        }
        total
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.combine(rhs, 1)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.combine(rhs, -1)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.multiply(rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

/// An integer 3×3×3 array, entries addressed `[i][j][k]` (0-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Array333 {
    entries: [BigInt; CELLS],
}

impl Default for Array333 {
    fn default() -> Self {
        Array333 { entries: core::array::from_fn(|_| BigInt::zero()) }
    }
}

impl Array333 {
    pub fn zero() -> Self {
        Array333::default()
    }

    pub fn from_nested(x: [[[i64; 3]; 3]; 3]) -> Self {
        let mut out = Array333::zero();
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    out.entries[cell(i, j, k)] = BigInt::from(x[i][j][k]);
                }
            }
        }
        out
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &BigInt {
        &self.entries[cell(i, j, k)]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, v: BigInt) {
        self.entries[cell(i, j, k)] = v;
    }

    pub fn scaled(&self, k: i64) -> Self {
        Array333 { entries: core::array::from_fn(|c| &self.entries[c] * k) }
    }

    /// Uniform entries in `[-bound, bound]`.
    pub fn random<R: Rng>(rng: &mut R, bound: i64) -> Self {
        Array333 { entries: core::array::from_fn(|_| BigInt::from(rng.gen_range(-bound..=bound))) }
    }
}

pub type Matrix3 = [[i64; 3]; 3];

pub const IDENTITY3: Matrix3 = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];

pub fn det3(m: &Matrix3) -> i128 {
    let e = |i: usize, j: usize| i128::from(m[i][j]);
    e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1)) - e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0))
        + e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0))
}

pub fn matmul3(a: &Matrix3, b: &Matrix3) -> Matrix3 {
    let mut out = [[0i64; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = (0..3).map(|k| a[i][k].checked_mul(b[k][j]).expect("overflow")).sum();
        }
    }
    out
}

/// A triple `(A, B, C)` of integer matrices of determinant 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GroupAction {
    mats: [Matrix3; 3],
}

impl GroupAction {
    pub fn new(a: Matrix3, b: Matrix3, c: Matrix3) -> Result<Self> {
        for (name, m) in [("A", &a), ("B", &b), ("C", &c)] {
            let d = det3(m);
            if d != 1 {
                return Err(invalid!("det({name}) = {d}, expected 1"));
            }
        }
        Ok(GroupAction { mats: [a, b, c] })
    }

    /// Like [`GroupAction::new`] without the determinant check, for
    /// experiments with `GL3` elements such as slice swaps.
    pub fn new_unchecked(a: Matrix3, b: Matrix3, c: Matrix3) -> Self {
        GroupAction { mats: [a, b, c] }
    }

    pub fn identity() -> Self {
        GroupAction { mats: [IDENTITY3; 3] }
    }

    pub fn matrices(&self) -> &[Matrix3; 3] {
        &self.mats
    }

    /// The action "first `self`, then `next`": transforming by the result
    /// equals transforming by `self` and then by `next`.
    pub fn then(&self, next: &GroupAction) -> GroupAction {
        GroupAction { mats: core::array::from_fn(|d| matmul3(&self.mats[d], &next.mats[d])) }
    }
}

/// Array transform dual to the coordinate action
/// `x_ijk -> sum a_pi b_qj c_rk x_pqr`:
/// `evaluate(f, transform(X, g)) == evaluate(g · f, X)`.
pub fn transform(x: &Array333, g: &GroupAction) -> Array333 {
    let [a, b, c] = &g.mats;
    let mut cur = x.clone();
    // contract one direction at a time: y_ijk = sum_p a_pi x_pjk, etc.
    for (d, m) in [a, b, c].into_iter().enumerate() {
        let mut next = Array333::zero();
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    let t = [i, j, k];
                    let mut acc = BigInt::zero();
                    for s in 0..3 {
                        let coef = m[s][t[d]];
                        if coef != 0 {
                            let mut src = t;
                            src[d] = s;
                            acc += cur.get(src[0], src[1], src[2]) * coef;
                        }
                    }
                    next.set(i, j, k, acc);
                }
            }
        }
        cur = next;
    }
    cur
}

/// Product of 3 to 6 random transvections `I + t E_ij`, `i != j`,
/// `1 <= |t| <= 3`.
pub fn random_sl3<R: Rng>(rng: &mut R) -> Matrix3 {
    let count = rng.gen_range(3..=6);
    transvection_product(rng, count)
}

pub fn transvection_product<R: Rng>(rng: &mut R, count: usize) -> Matrix3 {
    let mut m = IDENTITY3;
    for _ in 0..count {
        let i = rng.gen_range(0..3);
        let j = (i + rng.gen_range(1..3)) % 3;
        let mut t = rng.gen_range(1..=3);
        if rng.gen_bool(0.5) {
            t = -t;
        }
        let mut e = IDENTITY3;
        e[i][j] = t;
        m = matmul3(&m, &e);
    }
    m
}

pub fn random_sl3_seeded(seed: u64) -> Matrix3 {
    random_sl3(&mut ChaCha8Rng::seed_from_u64(seed))
}

pub fn random_group_action<R: Rng>(rng: &mut R) -> GroupAction {
    GroupAction { mats: [random_sl3(rng), random_sl3(rng), random_sl3(rng)] }
}

/// Outcome of [`invariance_test`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvarianceReport {
    pub passed: usize,
    pub failed: usize,
    pub first_counterexample: Option<(Array333, GroupAction)>,
}

impl InvarianceReport {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

/// Entry bound for random test arrays.
pub const TEST_ENTRY_BOUND: i64 = 9;

/// One randomized trial: a random array with entries in `[-9, 9]` and a
/// random transvection triple, deterministic in `(seed, trial)`.
pub fn invariance_trial(seed: u64, trial: u64) -> (Array333, GroupAction) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    let x = Array333::random(&mut rng, TEST_ENTRY_BOUND);
    let g = random_group_action(&mut rng);
    (x, g)
}

/// Checks `f(X) == f(transform(X, g))` on `trials` random pairs.
pub fn invariance_test(p: &Polynomial, trials: usize, seed: u64) -> InvarianceReport {
    let mut report = InvarianceReport { passed: 0, failed: 0, first_counterexample: None };
    for trial in 0..trials as u64 {
        let (x, g) = invariance_trial(seed, trial);
        if p.evaluate(&x) == p.evaluate(&transform(&x, &g)) {
            report.passed += 1;
        } else {
            report.failed += 1;
            if report.first_counterexample.is_none() {
                report.first_counterexample = Some((x, g));
            }
        }
    }
    report
}
