//! End-to-end computation of the fundamental invariants.
//!
//! * `I6`: kernel of the six raising operators on all 1152 weight-zero
//!   monomials, mod p, lifted to symmetric representatives.
//! * `I9`: kernel on the span of the alternating orbit sums (or, as a
//!   fidelity check, on all 22620 monomials).
//! * `I12`, `I'12`: kernel on the span of the 359 symmetric orbit sums, over
//!   `Z` by incremental Hermite reduction, then a reduced lattice basis.
//!
//! Every record is checked over `Z` before it is returned.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use hashbrown::HashSet;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{invalid, pipeline_failure, Result};
use crate::lie::{apply_raising_poly, build_operator_matrix, build_restricted_matrix, OperatorId, OperatorMatrix};
use crate::linalg::{gauss_lagrange, hnf, inv_mod, symmetric_lift, HnfReducer, IntMatrix, ModRowReducer};
use crate::monomial::{monomial_index, DegreeBasis, ExponentArray};
use crate::poly::Polynomial;
use crate::symmetry::{orbit_decomposition_of, Orbit, OrbitSumKind};

/// Rows per block when streaming the degree-12 restricted operators.
pub const BLOCK_ROWS: usize = 639;

/// Orbit sums that can carry a degree-`n` invariant. Every invariant is a
/// polynomial in `I6`, `I9`, `I12`; the odd powers of `I9` (alternating) occur
/// exactly when `n / 3` is odd.
pub fn invariant_kind(n: u32) -> OrbitSumKind {
    if (n / 3) % 2 == 1 {
        OrbitSumKind::Alternating
    } else {
        OrbitSumKind::Symmetric
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Restrict to the span of orbit sums of the matching kind.
    OrbitFast,
    /// Use every weight-zero monomial as a column.
    FullBasis,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::OrbitFast => "orbit-fast",
            Mode::FullBasis => "full-basis",
        })
    }
}

/// Pipeline parameters and an optional progress sink.
#[derive(Clone, Copy)]
pub struct Config<'a> {
    pub prime: u32,
    pub progress: Option<&'a (dyn Fn(&str) + Sync)>,
}

impl Default for Config<'_> {
    fn default() -> Self {
        Config { prime: crate::DEFAULT_PRIME, progress: None }
    }
}

impl<'a> Config<'a> {
    pub fn with_prime(prime: u32) -> Self {
        Config { prime, progress: None }
    }

    fn note(&self, msg: impl FnOnce() -> String) {
        if let Some(f) = self.progress {
            f(&msg());
        }
    }

    fn check_prime(&self) -> Result<()> {
        let p = self.prime;
        if p < 13 || p % 2 == 0 || (3..).step_by(2).take_while(|d| d * d <= p).any(|d| p % d == 0) {
            return Err(invalid!("working prime must be an odd prime above 12, got {p}"));
        }
        Ok(())
    }
}

/// One row of an orbit table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitCoefficient {
    pub coefficient: BigInt,
    pub min_rep: ExponentArray,
    pub size: usize,
    pub kind: OrbitSumKind,
}

/// Provenance of a record.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RecordMeta {
    pub modulus: Option<u32>,
    pub mode: Option<Mode>,
    /// Human-readable statement of the normalization applied.
    pub normalization: String,
    /// Rank after each operator pass, in `OperatorId::ALL` order.
    pub ranks: Vec<usize>,
    pub nullspace_dimension: usize,
}

/// A computed invariant: its orbit coefficients (one per orbit of the
/// decomposition, zeros included) and its expansion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantRecord {
    pub name: String,
    pub degree: u32,
    pub orbit_table: Vec<OrbitCoefficient>,
    pub expanded: Polynomial,
    pub meta: RecordMeta,
}

impl InvariantRecord {
    /// Builds a record from per-orbit coefficients, expanding it.
    pub fn from_orbits(name: &str, degree: u32, orbits: &[Orbit], coefficients: &[BigInt], meta: RecordMeta) -> Self {
        let kind = invariant_kind(degree);
        let orbit_table: Vec<OrbitCoefficient> = orbits
            .iter()
            .zip(coefficients)
            .map(|(o, c)| OrbitCoefficient { coefficient: c.clone(), min_rep: o.min_rep, size: o.size, kind })
            .collect();
        let expanded = expand(orbits, coefficients, kind);
        InvariantRecord { name: name.into(), degree, orbit_table, expanded, meta }
    }

    /// Orbit rows with nonzero coefficient.
    pub fn nonzero_rows(&self) -> impl Iterator<Item = &OrbitCoefficient> + '_ {
        self.orbit_table.iter().filter(|r| !r.coefficient.is_zero())
    }

    pub fn coefficients(&self) -> Vec<BigInt> {
        self.orbit_table.iter().map(|r| r.coefficient.clone()).collect()
    }

    pub fn term_count(&self) -> usize {
        self.expanded.len()
    }
}

/// `Σ coefficient × orbit sum`.
pub fn expand(orbits: &[Orbit], coefficients: &[BigInt], kind: OrbitSumKind) -> Polynomial {
    let mut terms = Vec::new();
    for (o, c) in orbits.iter().zip(coefficients) {
        if c.is_zero() {
            continue;
        }
        terms.extend(o.sum_terms(kind).into_iter().map(|(e, s)| (e, c * s)));
    }
    Polynomial::from_terms(terms)
}

/// Re-expands an orbit table using freshly computed orbits of its
/// representatives.
pub fn expand_table(rows: &[OrbitCoefficient]) -> Result<Polynomial> {
    let group = crate::symmetry::SymmetryGroup::new();
    let mut terms = Vec::new();
    for r in rows {
        let o = group.orbit(&r.min_rep)?;
        if o.min_rep != r.min_rep {
            return Err(invalid!("{} is not the minimal member of its orbit", r.min_rep));
        }
        if o.size != r.size {
            return Err(invalid!("orbit of {} has size {}, table says {}", r.min_rep, o.size, r.size));
        }
        if r.kind == OrbitSumKind::Alternating && o.alternating_vanishes() && !r.coefficient.is_zero() {
            return Err(invalid!("alternating orbit sum of {} vanishes", r.min_rep));
        }
        terms.extend(o.sum_terms(r.kind).into_iter().map(|(e, s)| (e, &r.coefficient * s)));
    }
    Ok(Polynomial::from_terms(terms))
}

/// Result of applying the six raising operators over `Z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnnihilationReport {
    /// Number of terms of each image, in `OperatorId::ALL` order.
    pub image_terms: [usize; 6],
}

impl AnnihilationReport {
    pub fn passed(&self) -> bool {
        self.image_terms.iter().all(|&n| n == 0)
    }

    pub fn failing_operators(&self) -> Vec<OperatorId> {
        OperatorId::ALL.iter().zip(&self.image_terms).filter(|(_, &n)| n != 0).map(|(op, _)| *op).collect()
    }
}

pub fn verify_annihilation(p: &Polynomial) -> AnnihilationReport {
    let mut image_terms = [0; 6];
    for op in OperatorId::ALL {
        image_terms[op.index()] = apply_raising_poly(op, p).len();
    }
    AnnihilationReport { image_terms }
}

fn ensure_annihilated(name: &str, p: &Polynomial) -> Result<()> {
    let report = verify_annihilation(p);
    if report.passed() {
        Ok(())
    } else {
        Err(pipeline_failure!("{name} is not annihilated by {:?}", report.failing_operators()))
    }
}

/// Feeds the rows of the six operator matrices into a mod-p reducer,
/// recording the rank after each operator.
fn reduce_mod_p<F>(p: u32, cols: usize, mut matrix_for: F) -> Result<(ModRowReducer, Vec<usize>)>
where
    F: FnMut(OperatorId) -> Result<OperatorMatrix>,
{
    let mut reducer = ModRowReducer::new(p, cols);
    let mut ranks = Vec::with_capacity(6);
    for op in OperatorId::ALL {
        let m = matrix_for(op)?;
        for r in 0..m.matrix.rows() {
            reducer.add_row(m.matrix.row(r));
        }
        ranks.push(reducer.rank());
    }
    Ok((reducer, ranks))
}

/// Scales a mod-p vector so that entry `pin` is 1 and lifts it.
fn pin_and_lift(v: &[u32], pin: usize, p: u32) -> Result<Vec<BigInt>> {
    let x = v[pin];
    if x == 0 {
        return Err(pipeline_failure!("nullspace vector vanishes at the normalization coordinate"));
    }
    let inv = u64::from(inv_mod(x, p));
    Ok(v.iter().map(|&a| BigInt::from(symmetric_lift((u64::from(a) * inv % u64::from(p)) as u32, p))).collect())
}

fn single_kernel_vector(mut kernel: Vec<Vec<u32>>, what: &str) -> Result<Vec<u32>> {
    if kernel.len() != 1 {
        return Err(pipeline_failure!("{what}: nullspace has dimension {}, expected 1", kernel.len()));
    }
    Ok(kernel.pop().expect("one vector"))
}

/// `x133^2 x222^2 x311^2` (1-based subscripts): the `I6` normalization pin.
pub fn i6_pin() -> ExponentArray {
    let mut e = ExponentArray::ZERO;
    e.set(0, 2, 2, 2);
    e.set(1, 1, 1, 2);
    e.set(2, 0, 0, 2);
    e
}

/// `x123 x132 x133 x213 x221 x232 x311^2 x322`: the `I9` normalization pin.
pub fn i9_pin() -> ExponentArray {
    let mut e = ExponentArray::ZERO;
    for (i, j, k) in [(0, 1, 2), (0, 2, 1), (0, 2, 2), (1, 0, 2), (1, 1, 0), (1, 2, 1), (2, 1, 1)] {
        e.set(i, j, k, 1);
    }
    e.set(2, 0, 0, 2);
    e
}

/// The degree-6 invariant from the full 1152-column system.
pub fn compute_i6(config: &Config<'_>) -> Result<InvariantRecord> {
    config.check_prime()?;
    let p = config.prime;
    let basis = DegreeBasis::new(6);
    let (reducer, ranks) = reduce_mod_p(p, basis.weight_zero.len(), |op| build_operator_matrix(&basis, op, Some(p)))?;
    config.note(|| format!("degree 6: rank {} after six operators", reducer.rank()));
    let v = single_kernel_vector(reducer.nullspace(), "degree 6")?;
    let pin = i6_pin();
    let lifted = pin_and_lift(&v, monomial_index(&pin, &basis.weight_zero)?, p)?;

    let orbits = orbit_decomposition_of(&basis.weight_zero);
    let mut coefficients = Vec::with_capacity(orbits.len());
    for o in &orbits {
        let c = &lifted[monomial_index(&o.min_rep, &basis.weight_zero)?];
        for m in &o.elements {
            if &lifted[monomial_index(m, &basis.weight_zero)?] != c {
                return Err(pipeline_failure!("degree-6 kernel vector is not constant on the orbit of {}", o.min_rep));
            }
        }
        coefficients.push(c.clone());
    }
    let meta = RecordMeta {
        modulus: Some(p),
        mode: Some(Mode::FullBasis),
        normalization: format!("coefficient +1 on the orbit of {pin}"),
        ranks,
        nullspace_dimension: 1,
    };
    let record = InvariantRecord::from_orbits("I6", 6, &orbits, &coefficients, meta);
    check_lift(&record.expanded, &basis.weight_zero, &lifted)?;
    ensure_annihilated("I6", &record.expanded)?;
    Ok(record)
}

/// The expansion must agree with the lifted vector coordinate by coordinate.
fn check_lift(expanded: &Polynomial, basis: &[ExponentArray], lifted: &[BigInt]) -> Result<()> {
    for (e, c) in basis.iter().zip(lifted) {
        if &expanded.coefficient(e) != c {
            return Err(pipeline_failure!("expansion disagrees with the lifted kernel vector at {e}"));
        }
    }
    Ok(())
}

/// Makes the first nonzero entry positive.
fn positive_lead(v: &mut [BigInt]) {
    if v.iter().find(|x| !x.is_zero()).is_some_and(Signed::is_negative) {
        for x in v.iter_mut() {
            *x = -core::mem::take(x);
        }
    }
}

/// Orbit-sum columns for the restricted system, skipping vanishing sums.
/// Returns the columns and, for each, its orbit index.
fn orbit_columns(orbits: &[Orbit], kind: OrbitSumKind) -> (Vec<Vec<(ExponentArray, i64)>>, Vec<usize>) {
    let mut columns = Vec::new();
    let mut which = Vec::new();
    for (i, o) in orbits.iter().enumerate() {
        let terms = o.sum_terms(kind);
        if !terms.is_empty() {
            columns.push(terms);
            which.push(i);
        }
    }
    (columns, which)
}

/// The degree-9 invariant.
pub fn compute_i9(mode: Mode, config: &Config<'_>) -> Result<InvariantRecord> {
    config.check_prime()?;
    let p = config.prime;
    let basis = DegreeBasis::new(9);
    let orbits = orbit_decomposition_of(&basis.weight_zero);
    config.note(|| format!("degree 9: {} orbits", orbits.len()));
    let kind = OrbitSumKind::Alternating;
    let (mut coefficients, ranks) = match mode {
        Mode::OrbitFast => {
            let (columns, which) = orbit_columns(&orbits, kind);
            let (reducer, ranks) =
                reduce_mod_p(p, columns.len(), |op| build_restricted_matrix(&basis, op, &columns, Some(p)))?;
            let v = single_kernel_vector(reducer.nullspace(), "degree 9 restricted")?;
            let pin = v.iter().position(|&x| x != 0).ok_or_else(|| pipeline_failure!("zero kernel vector"))?;
            let lifted = pin_and_lift(&v, pin, p)?;
            let mut coefficients = vec![BigInt::zero(); orbits.len()];
            for (c, &i) in lifted.into_iter().zip(&which) {
                coefficients[i] = c;
            }
            (coefficients, ranks)
        }
        Mode::FullBasis => {
            let (reducer, ranks) = reduce_mod_p(p, basis.weight_zero.len(), |op| {
                let m = build_operator_matrix(&basis, op, Some(p));
                config.note(|| format!("degree 9 full basis: operator {op} assembled"));
                m
            })?;
            let v = single_kernel_vector(reducer.nullspace(), "degree 9 full basis")?;
            let pin = v.iter().position(|&x| x != 0).ok_or_else(|| pipeline_failure!("zero kernel vector"))?;
            let lifted = pin_and_lift(&v, pin, p)?;
            // Read the coefficient of each orbit off its minimal member; the
            // expansion check below confirms the rest.
            let mut coefficients = Vec::with_capacity(orbits.len());
            for o in &orbits {
                coefficients.push(lifted[monomial_index(&o.min_rep, &basis.weight_zero)?].clone());
            }
            let expanded = expand(&orbits, &coefficients, kind);
            check_lift(&expanded, &basis.weight_zero, &lifted)?;
            (coefficients, ranks)
        }
    };
    let pin = i9_pin();
    let at_pin = expand(&orbits, &coefficients, kind).coefficient(&pin);
    if at_pin.abs() != BigInt::one() {
        return Err(pipeline_failure!("degree 9: coefficient {at_pin} at the normalization monomial"));
    }
    if at_pin.is_negative() {
        coefficients.iter_mut().for_each(|c| *c = -core::mem::take(c));
    }
    config.note(|| format!("degree 9: ranks {ranks:?}"));
    let meta = RecordMeta {
        modulus: Some(p),
        mode: Some(mode),
        normalization: format!("coefficient +1 on {pin}; alternating sums signed +1 on minimal members"),
        ranks,
        nullspace_dimension: 1,
    };
    let record = InvariantRecord::from_orbits("I9", 9, &orbits, &coefficients, meta);
    ensure_annihilated("I9", &record.expanded)?;
    Ok(record)
}

/// Everything observed while computing the degree-12 pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Degree12Report {
    /// Rank of the restricted system mod p after each operator.
    pub modular_ranks: Vec<usize>,
    pub modular_nullity: usize,
    /// Rank over `Z` after each operator.
    pub integer_ranks: Vec<usize>,
    /// Blocks streamed per operator.
    pub blocks_per_operator: usize,
    /// Rows actually reduced over `Z` (exact duplicates are skipped).
    pub distinct_rows: usize,
    pub orbit_count: usize,
}

/// `I12` and `I'12`, plus the data observed along the way.
#[derive(Clone, Debug)]
pub struct Degree12Pair {
    pub i12: InvariantRecord,
    pub i12_prime: InvariantRecord,
    pub report: Degree12Report,
}

/// The degree-12 invariants on the span of the 359 symmetric orbit sums.
///
/// For each operator the restricted matrix is assembled once over `Z`. Its
/// reduction mod p serves as a cheap rank oracle; the same rows are then
/// streamed in blocks through an incremental Hermite reduction. The
/// integer kernel of the final matrix comes from the Hermite form of its
/// transpose and is reduced with Gauss–Lagrange.
pub fn compute_i12_pair(config: &Config<'_>) -> Result<Degree12Pair> {
    config.check_prime()?;
    let p = config.prime;
    let basis = DegreeBasis::new(12);
    config.note(|| format!("degree 12: {} weight-zero monomials", basis.weight_zero.len()));
    let orbits = orbit_decomposition_of(&basis.weight_zero);
    config.note(|| format!("degree 12: {} orbits", orbits.len()));
    let (columns, _) = orbit_columns(&orbits, OrbitSumKind::Symmetric);
    let cols = columns.len();

    let mut modular = ModRowReducer::new(p, cols);
    let mut integer = HnfReducer::new(cols);
    let mut seen: HashSet<Vec<(u32, i64)>> = HashSet::new();
    let mut modular_ranks = Vec::new();
    let mut integer_ranks = Vec::new();
    let mut blocks_per_operator = 0;
    for op in OperatorId::ALL {
        let m = build_restricted_matrix(&basis, op, &columns, None)?;
        for r in 0..m.matrix.rows() {
            modular.add_row(m.matrix.row(r));
        }
        modular_ranks.push(modular.rank());
        blocks_per_operator = 0;
        for block in m.blocks(BLOCK_ROWS) {
            blocks_per_operator += 1;
            for row in block.rows() {
                if row.is_empty() || !seen.insert(row.to_vec()) {
                    continue;
                }
                integer.add_row(row);
            }
        }
        integer_ranks.push(integer.rank());
        config.note(|| {
            format!(
                "degree 12: {op} rank mod {p} = {}, over Z = {}, {} distinct rows so far",
                modular.rank(),
                integer.rank(),
                seen.len()
            )
        });
    }
    let modular_nullity = cols - modular.rank();
    let rank = integer.rank();
    if rank + 2 != cols {
        return Err(pipeline_failure!("degree 12: integer rank {rank}, expected {}", cols - 2));
    }

    let m = integer.matrix();
    let h = hnf(&m.transpose());
    let kernel = h.left_kernel();
    if kernel.len() != 2 {
        return Err(pipeline_failure!("degree 12: integer nullspace has dimension {}", kernel.len()));
    }
    for v in &kernel {
        if m.mul_vec(v).iter().any(|x| !x.is_zero()) {
            return Err(pipeline_failure!("degree 12: Hermite transform row is not in the kernel"));
        }
    }
    let reduced = gauss_lagrange(&kernel[0], &kernel[1])?;
    let (mut a, mut b) = (reduced.b1, reduced.b2);
    positive_lead(&mut a);
    positive_lead(&mut b);

    let report = Degree12Report {
        modular_ranks,
        modular_nullity,
        integer_ranks: integer_ranks.clone(),
        blocks_per_operator,
        distinct_rows: seen.len(),
        orbit_count: orbits.len(),
    };
    let meta = |what: &str| RecordMeta {
        modulus: None,
        mode: Some(Mode::OrbitFast),
        normalization: format!("{what}; first nonzero orbit coefficient +1"),
        ranks: integer_ranks.clone(),
        nullspace_dimension: 2,
    };
    let i12 = InvariantRecord::from_orbits("I12", 12, &orbits, &a, meta("shorter Gauss-Lagrange vector"));
    let i12_prime = InvariantRecord::from_orbits("I'12", 12, &orbits, &b, meta("longer Gauss-Lagrange vector"));
    ensure_annihilated("I12", &i12.expanded)?;
    ensure_annihilated("I'12", &i12_prime.expanded)?;
    Ok(Degree12Pair { i12, i12_prime, report })
}

/// `I6^2 = a·I12 + b·I'12` with the residual of that identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationReport {
    pub a: BigInt,
    pub b: BigInt,
    pub residual: Polynomial,
    pub square_terms: usize,
}

impl RelationReport {
    pub fn holds(&self) -> bool {
        self.residual.is_zero()
    }
}

impl fmt::Display for RelationReport {
    /// Rendered solved for `I6^2`, e.g. `I6^2 = I'12 - 21*I12`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::from("I6^2 = ");
        for (c, name) in [(&self.b, "I'12"), (&self.a, "I12")] {
            if c.is_zero() {
                continue;
            }
            let sign = match (out.len() == 7, c.is_negative()) {
                (true, false) => "",
                (true, true) => "-",
                (false, false) => " + ",
                (false, true) => " - ",
            };
            out.push_str(sign);
            if !c.abs().is_one() {
                out.push_str(&format!("{}*", c.abs()));
            }
            out.push_str(name);
        }
        if out.len() == 7 {
            out.push('0');
        }
        f.write_str(&out)
    }
}

/// Expresses `I6^2` in terms of `I12` and `I'12` and checks the identity on
/// the full expansion.
pub fn verify_relation(i6: &InvariantRecord, i12: &InvariantRecord, i12_prime: &InvariantRecord) -> Result<RelationReport> {
    let square = i6.expanded.multiply(&i6.expanded);
    let x: Vec<BigInt> = i12.orbit_table.iter().map(|r| i12.expanded.coefficient(&r.min_rep)).collect();
    let y: Vec<BigInt> = i12.orbit_table.iter().map(|r| i12_prime.expanded.coefficient(&r.min_rep)).collect();
    let s: Vec<BigInt> = i12.orbit_table.iter().map(|r| square.coefficient(&r.min_rep)).collect();
    // find two orbits with an invertible 2×2 system
    let n = x.len();
    let mut solved = None;
    'search: for i in 0..n {
        for j in i + 1..n {
            let det = &x[i] * &y[j] - &x[j] * &y[i];
            if det.is_zero() {
                continue;
            }
            let a_num = &s[i] * &y[j] - &s[j] * &y[i];
            let b_num = &x[i] * &s[j] - &x[j] * &s[i];
            if !a_num.is_multiple_of(&det) || !b_num.is_multiple_of(&det) {
                return Err(pipeline_failure!("I6^2 is not an integer combination of I12 and I'12"));
            }
            solved = Some((a_num / &det, b_num / det));
            break 'search;
        }
    }
    let (a, b) = solved.ok_or_else(|| pipeline_failure!("I12 and I'12 are proportional on every orbit pair"))?;
    let combo = &i12.expanded.scale(&a) + &i12_prime.expanded.scale(&b);
    let residual = &square - &combo;
    Ok(RelationReport { a, b, square_terms: square.len(), residual })
}

/// Dimension of the kernel of the six raising operators in degree `n` mod
/// `prime`: on all weight-zero monomials (`FullBasis`, `n <= 9`), or on the
/// span of the orbit sums of kind [`invariant_kind`] (`OrbitFast`).
pub fn nullspace_dimension(n: u32, mode: Mode, config: &Config<'_>) -> Result<usize> {
    config.check_prime()?;
    let p = config.prime;
    if n % 3 != 0 {
        return Ok(0);
    }
    let basis = DegreeBasis::new(n);
    let (reducer, _) = match mode {
        Mode::FullBasis => {
            if n > 9 {
                return Err(invalid!("full-basis mode is limited to degree 9, got {n}"));
            }
            reduce_mod_p(p, basis.weight_zero.len(), |op| build_operator_matrix(&basis, op, Some(p)))?
        }
        Mode::OrbitFast => {
            let orbits = orbit_decomposition_of(&basis.weight_zero);
            let (columns, _) = orbit_columns(&orbits, invariant_kind(n));
            reduce_mod_p(p, columns.len(), |op| build_restricted_matrix(&basis, op, &columns, Some(p)))?
        }
    };
    Ok(reducer.cols() - reducer.rank())
}

/// Integer kernel of a dense integer matrix via the Hermite form of its
/// transpose.
pub fn integer_kernel(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    hnf(&m.transpose()).left_kernel()
}

/// Orbit coefficients as a map from minimal representative, zeros dropped.
pub fn coefficient_map(record: &InvariantRecord) -> BTreeMap<ExponentArray, BigInt> {
    record.nonzero_rows().map(|r| (r.min_rep, r.coefficient.clone())).collect()
}

/// True iff the coefficient vector has gcd 1.
pub fn is_primitive(coefficients: &[BigInt]) -> bool {
    coefficients.iter().fold(BigInt::zero(), |g, c| g.gcd(c)).is_one()
}
