//! The symmetry group `G = (S3 × S3 × S3) ⋊ S3` of order 1296, acting on
//! exponent arrays by permuting parallel slices and the three directions.
//!
//! Convention: an element is `(σ1, σ2, σ3; δ)` and acts by
//! `(g·E)[t1][t2][t3] = E[σ1(t_δ(1))][σ2(t_δ(2))][σ3(t_δ(3))]`.
//! Orbits and orbit sums do not depend on this choice (using `g⁻¹` instead
//! produces the same orbits and, since `ε(g⁻¹) = ε(g)`, the same signs).

use alloc::vec::Vec;
use core::fmt;

use hashbrown::HashMap;
use num_bigint::BigInt;

use crate::error::{invalid, Result};
use crate::monomial::{cell, coords, generate_weight_zero, ExponentArray, CELLS};
use crate::poly::Polynomial;

/// Order of the group.
pub const GROUP_ORDER: usize = 1296;

type Perm3 = [u8; 3];

const PERMS: [Perm3; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

fn perm_sign(p: &Perm3) -> i8 {
    let inversions = (p[0] > p[1]) as u8 + (p[0] > p[2]) as u8 + (p[1] > p[2]) as u8;
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// One element of `G`: a slice permutation per direction and a permutation
/// of the directions.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct GroupElement {
    slices: [Perm3; 3],
    directions: Perm3,
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let one = |p: &Perm3| [p[0] + 1, p[1] + 1, p[2] + 1];
        write!(
            f,
            "(α={:?}, β={:?}, γ={:?}; δ={:?})",
            one(&self.slices[0]),
            one(&self.slices[1]),
            one(&self.slices[2]),
            one(&self.directions)
        )
    }
}

impl GroupElement {
    pub const IDENTITY: GroupElement = GroupElement { slices: [[0, 1, 2]; 3], directions: [0, 1, 2] };

    /// Builds an element from 0-based permutations of `{0, 1, 2}`.
    pub fn new(alpha: [u8; 3], beta: [u8; 3], gamma: [u8; 3], delta: [u8; 3]) -> Result<Self> {
        for p in [&alpha, &beta, &gamma, &delta] {
            if !PERMS.contains(p) {
                return Err(invalid!("{p:?} is not a permutation of 0..3"));
            }
        }
        Ok(GroupElement { slices: [alpha, beta, gamma], directions: delta })
    }

    /// All 1296 elements in a fixed order; the identity comes first.
    pub fn all() -> Vec<GroupElement> {
        let mut out = Vec::with_capacity(GROUP_ORDER);
        for d in PERMS {
            for a in PERMS {
                for b in PERMS {
                    for c in PERMS {
                        out.push(GroupElement { slices: [a, b, c], directions: d });
                    }
                }
            }
        }
        out
    }

    pub fn slices(&self) -> [[u8; 3]; 3] {
        self.slices
    }

    pub fn directions(&self) -> [u8; 3] {
        self.directions
    }

    /// `ε(g)`: the product of the signs of the four permutations.
    pub fn sign(&self) -> i8 {
        self.slices.iter().chain(core::iter::once(&self.directions)).map(perm_sign).product()
    }

    /// `map[t]` is the source cell read when writing target cell `t`.
    pub fn cell_map(&self) -> [u8; CELLS] {
        let mut map = [0u8; CELLS];
        for (t, slot) in map.iter_mut().enumerate() {
            let tc = coords(t);
            let s: [usize; 3] =
                core::array::from_fn(|d| usize::from(self.slices[d][tc[usize::from(self.directions[d])]]));
            *slot = cell(s[0], s[1], s[2]) as u8;
        }
        map
    }

    /// Recovers the element inducing a given cell map.
    fn from_cell_map(map: &[u8; CELLS]) -> GroupElement {
        let src = |t: [usize; 3]| coords(usize::from(map[cell(t[0], t[1], t[2])]));
        let base = src([0, 0, 0]);
        let mut directions = [0u8; 3];
        for e in 0..3 {
            let mut t = [0usize; 3];
            t[e] = 1;
            let moved = src(t);
            let d = (0..3).find(|&d| moved[d] != base[d]).expect("cell map of a group element");
            directions[d] = e as u8;
        }
        let mut slices = [[0u8; 3]; 3];
        for (d, perm) in slices.iter_mut().enumerate() {
            for v in 0..3 {
                let mut t = [0usize; 3];
                t[usize::from(directions[d])] = v;
                perm[v] = src(t)[d] as u8;
            }
        }
        GroupElement { slices, directions }
    }

    /// The element `g·h`, with `act(g·h, E) = act(g, act(h, E))`.
    pub fn compose(&self, h: &GroupElement) -> GroupElement {
        let (mg, mh) = (self.cell_map(), h.cell_map());
        let map: [u8; CELLS] = core::array::from_fn(|t| mh[usize::from(mg[t])]);
        GroupElement::from_cell_map(&map)
    }

    pub fn inverse(&self) -> GroupElement {
        let m = self.cell_map();
        let mut inv = [0u8; CELLS];
        for (t, &s) in m.iter().enumerate() {
            inv[usize::from(s)] = t as u8;
        }
        GroupElement::from_cell_map(&inv)
    }

    pub fn act(&self, e: &ExponentArray) -> ExponentArray {
        act_with_map(&self.cell_map(), e)
    }
}

#[inline]
fn act_with_map(map: &[u8; CELLS], e: &ExponentArray) -> ExponentArray {
    let src = e.as_bytes();
    ExponentArray::from_bytes(core::array::from_fn(|t| src[usize::from(map[t])]))
}

/// The group with its cell maps precomputed, for repeated orbit work.
#[derive(Clone)]
pub struct SymmetryGroup {
    elements: Vec<GroupElement>,
    maps: Vec<[u8; CELLS]>,
    signs: Vec<i8>,
}

impl Default for SymmetryGroup {
    fn default() -> Self {
        Self::new()
    }
}

impl SymmetryGroup {
    pub fn new() -> Self {
        let elements = GroupElement::all();
        let maps = elements.iter().map(GroupElement::cell_map).collect();
        let signs = elements.iter().map(GroupElement::sign).collect();
        SymmetryGroup { elements, maps, signs }
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    /// All `(ε(g), g·E)` in group order, with repetitions.
    pub fn images<'a>(&'a self, e: &'a ExponentArray) -> impl Iterator<Item = (i8, ExponentArray)> + 'a {
        self.maps.iter().zip(&self.signs).map(move |(m, &s)| (s, act_with_map(m, e)))
    }

    /// Elements fixing `e`.
    pub fn stabilizer(&self, e: &ExponentArray) -> Vec<GroupElement> {
        self.maps.iter().zip(&self.elements).filter(|(m, _)| act_with_map(m, e) == *e).map(|(_, g)| *g).collect()
    }

    /// The orbit of a weight-zero array.
    pub fn orbit(&self, e: &ExponentArray) -> Result<Orbit> {
        if !e.is_equal_parallel_slice() {
            return Err(invalid!("orbits are only formed for weight-zero arrays, got {e}"));
        }
        let mut signs: HashMap<ExponentArray, i8> = HashMap::with_capacity(GROUP_ORDER);
        let mut odd_stabilizer = false;
        for (s, img) in self.images(e) {
            match signs.get(&img) {
                Some(&prev) => odd_stabilizer |= prev != s,
                None => {
                    signs.insert(img, s);
                }
            }
        }
        let mut members: Vec<(ExponentArray, i8)> = signs.into_iter().collect();
        members.sort_unstable();
        // Re-sign relative to the minimal member.
        let flip = members[0].1;
        let alternating_signs =
            if odd_stabilizer { None } else { Some(members.iter().map(|&(_, s)| s * flip).collect()) };
        Ok(Orbit {
            min_rep: members[0].0,
            size: members.len(),
            elements: members.into_iter().map(|(m, _)| m).collect(),
            alternating_signs,
        })
    }
}

/// A `G`-orbit of weight-zero exponent arrays.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    pub min_rep: ExponentArray,
    pub size: usize,
    /// Members in increasing order; `elements[0] == min_rep`.
    pub elements: Vec<ExponentArray>,
    /// `ε`-signs of the members relative to `min_rep`, or `None` when some
    /// odd element stabilizes the orbit (the alternating sum vanishes).
    alternating_signs: Option<Vec<i8>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrbitSumKind {
    Symmetric,
    Alternating,
}

impl fmt::Display for OrbitSumKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrbitSumKind::Symmetric => "symmetric",
            OrbitSumKind::Alternating => "alternating",
        })
    }
}

impl Orbit {
    pub fn stabilizer_order(&self) -> usize {
        GROUP_ORDER / self.size
    }

    /// True iff the alternating orbit sum is identically zero.
    pub fn alternating_vanishes(&self) -> bool {
        self.alternating_signs.is_none()
    }

    /// Terms of the orbit sum of the given kind, in increasing monomial
    /// order; empty for a vanishing alternating sum.
    pub fn sum_terms(&self, kind: OrbitSumKind) -> Vec<(ExponentArray, i64)> {
        match kind {
            OrbitSumKind::Symmetric => self.elements.iter().map(|&e| (e, 1)).collect(),
            OrbitSumKind::Alternating => match &self.alternating_signs {
                Some(signs) => self.elements.iter().zip(signs).map(|(&e, &s)| (e, i64::from(s))).collect(),
                None => Vec::new(),
            },
        }
    }

    pub fn sum(&self, kind: OrbitSumKind) -> Polynomial {
        Polynomial::from_terms(self.sum_terms(kind).into_iter().map(|(e, c)| (e, BigInt::from(c))))
    }

    /// Sign of member `e` in the alternating sum, `None` if `e` is not a
    /// member or the sum vanishes.
    pub fn alternating_sign(&self, e: &ExponentArray) -> Option<i8> {
        let i = self.elements.binary_search(e).ok()?;
        self.alternating_signs.as_ref().map(|s| s[i])
    }
}

pub fn orbit(e: &ExponentArray) -> Result<Orbit> {
    SymmetryGroup::new().orbit(e)
}

pub fn symmetric_orbit_sum(e: &ExponentArray) -> Result<Polynomial> {
    Ok(orbit(e)?.sum(OrbitSumKind::Symmetric))
}

pub fn alternating_orbit_sum(e: &ExponentArray) -> Result<Polynomial> {
    Ok(orbit(e)?.sum(OrbitSumKind::Alternating))
}

/// Orbits partitioning the weight-zero monomials of degree `n`, sorted by
/// minimal representative.
pub fn orbit_decomposition(n: u32) -> Vec<Orbit> {
    orbit_decomposition_of(&generate_weight_zero(n))
}

/// Orbit decomposition of a sorted weight-zero basis: sweep in order and
/// expand each monomial not seen yet. The first unseen member of an orbit is
/// its minimum, so the output is sorted by `min_rep`.
pub fn orbit_decomposition_of(basis: &[ExponentArray]) -> Vec<Orbit> {
    let group = SymmetryGroup::new();
    let mut seen = alloc::vec![false; basis.len()];
    let mut out = Vec::new();
    for (i, e) in basis.iter().enumerate() {
        if seen[i] {
            continue;
        }
        let o = group.orbit(e).expect("basis is weight zero");
        for m in &o.elements {
            let idx = basis.binary_search(m).expect("orbit stays in the weight-zero basis");
            seen[idx] = true;
        }
        out.push(o);
    }
    out
}
