use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::dot;
use crate::error::{invalid, Result};

/// A reduced basis of a rank-2 integer lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeBasis2 {
    pub b1: Vec<BigInt>,
    pub b2: Vec<BigInt>,
}

impl LatticeBasis2 {
    /// `|b1| <= |b2|` and `|2 <b1,b2>| <= |b1|^2`.
    pub fn is_lagrange_reduced(&self) -> bool {
        let n1 = dot(&self.b1, &self.b1);
        let n2 = dot(&self.b2, &self.b2);
        let d: BigInt = dot(&self.b1, &self.b2) * 2;
        n1 <= n2 && num_traits::Signed::abs(&d) <= n1
    }

    pub fn gram_determinant(&self) -> BigInt {
        gram_det(&self.b1, &self.b2)
    }
}

fn gram_det(a: &[BigInt], b: &[BigInt]) -> BigInt {
    let ab = dot(a, b);
    dot(a, a) * dot(b, b) - &ab * &ab
}

/// Nearest integer to `n / d` for `d > 0`, halves rounded up.
fn round_div(n: &BigInt, d: &BigInt) -> BigInt {
    let num: BigInt = n * 2 + d;
    num.div_floor(&(d * 2))
}

/// Gauss–Lagrange reduction: returns a shortest nonzero vector of the
/// lattice and a shortest vector independent of it.
pub fn gauss_lagrange(b1: &[BigInt], b2: &[BigInt]) -> Result<LatticeBasis2> {
    if b1.len() != b2.len() {
        return Err(invalid!("vectors of length {} and {}", b1.len(), b2.len()));
    }
    if gram_det(b1, b2).is_zero() {
        return Err(invalid!("lattice generators are linearly dependent"));
    }
    let mut a = b1.to_vec();
    let mut b = b2.to_vec();
    if dot(&a, &a) > dot(&b, &b) {
        core::mem::swap(&mut a, &mut b);
    }
    loop {
        let na = dot(&a, &a);
        let mu = round_div(&dot(&a, &b), &na);
        if !mu.is_zero() {
            for (y, x) in b.iter_mut().zip(&a) {
                *y -= &mu * x;
            }
        }
        if dot(&b, &b) < na {
            core::mem::swap(&mut a, &mut b);
        } else {
            break;
        }
    }
    Ok(LatticeBasis2 { b1: a, b2: b })
}
