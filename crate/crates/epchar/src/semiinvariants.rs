//! Poincaré series of the eigencomponents of a cyclic rotation action.
//!
//! Let `V = ⊕_k V_k` be a graded vector space with finite-dimensional
//! pieces and let the cyclic group of order `r` act on `V^⊗r` by the
//! rotation `v_1⊗…⊗v_r ↦ v_r⊗v_1⊗…⊗v_{r−1}`. The tensor power splits
//! into eigencomponents indexed by `n` mod `r` (eigenvalue = `n`-th power
//! of a fixed primitive `r`-th root of unity, which is never materialized:
//! `n` enters only through Ramanujan sums). This module computes the
//! graded dimensions of those components two independent ways: a closed
//! formula built from Ramanujan sums and Möbius-filtered rotation-order
//! generating functions, and a brute-force orbit count over index tuples
//! that serves as an oracle for the formula.

use crate::numbers::{divisors, moebius, ramanujan_sum};
use crate::series::{
    series_add, series_pow, series_scale, series_substitute_power, TruncatedSeries,
};
use crate::util::rat;
use crate::Rational;
use num::{BigInt, Signed, Zero};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemiInvariantsError {
    /// The closed formula produced a non-integer coefficient; this cannot
    /// happen for valid inputs and signals an implementation bug.
    #[error("NonIntegerResult: coefficient of X^{k} is not an integer")]
    NonIntegerResult { k: usize },
    /// `order_gen` requires `d | r`.
    #[error("NotADivisor: {d} does not divide {r}")]
    NotADivisor { d: u64, r: u64 },
    /// The brute-force oracle refuses enumerations past its budget.
    #[error(
        "EnumerationTooLarge: enumerating {basis}^{r} index tuples exceeds the \
         built-in budget of 10^7"
    )]
    EnumerationTooLarge { basis: usize, r: u64 },
}

/// Graded dimensions `dims[k] = dim V_k` of a nonnegatively graded vector
/// space with finitely many named degrees (all higher pieces are zero).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedDims {
    dims: Vec<u64>,
}

impl GradedDims {
    pub fn new(dims: Vec<u64>) -> Self {
        Self { dims }
    }

    pub fn dims(&self) -> &[u64] {
        &self.dims
    }

    /// The Poincaré series `Σ_k dim V_k · X^k`, padded or truncated to the
    /// requested cutoff.
    pub fn poincare_series(&self, cutoff: usize) -> TruncatedSeries {
        let coeffs = (0..=cutoff)
            .map(|k| {
                self.dims
                    .get(k)
                    .map_or_else(Rational::zero, |&d| Rational::from_integer(BigInt::from(d)))
            })
            .collect();
        TruncatedSeries::from_coeffs(coeffs)
    }
}

/// The rotation-order generating functions `g_{r,d}` of an `r`-fold tensor
/// power, one per divisor `d` of `r`: the coefficient of `X^k` in
/// `g_{r,d}` counts degree-`k` index tuples whose rotation orbit has size
/// exactly `d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitProfile {
    r: u64,
    by_order: BTreeMap<u64, TruncatedSeries>,
}

impl OrbitProfile {
    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn by_order(&self) -> &BTreeMap<u64, TruncatedSeries> {
        &self.by_order
    }

    pub fn series_for(&self, d: u64) -> Option<&TruncatedSeries> {
        self.by_order.get(&d)
    }
}

/// Poincaré series of the eigencomponent `n` of the rotation action on the
/// `r`-th tensor power of a space with Poincaré series `P`:
/// `(1/r)·Σ_{d|r} c_d(n)·(P(X^d))^{r/d}` with `c_d` the Ramanujan sums.
///
/// `P` must have nonnegative integer coefficients. The result always does;
/// a non-integer value signals a bug and is reported, never truncated.
pub fn tensor_component_series(
    p: &TruncatedSeries,
    r: u64,
    n: i64,
) -> Result<TruncatedSeries, SemiInvariantsError> {
    assert!(r >= 1, "tensor power r must be positive");
    assert!(
        p.has_nonneg_integer_coeffs(),
        "Poincaré series must have nonnegative integer coefficients"
    );
    let mut acc = TruncatedSeries::zero(p.cutoff());
    for d in divisors(r) {
        let c = ramanujan_sum(d, n);
        if c == 0 {
            continue;
        }
        let term = series_pow(&series_substitute_power(p, d), r / d);
        acc = series_add(&acc, &series_scale(&term, &rat(c)));
    }
    let inv_r = Rational::new(1.into(), BigInt::from(r));
    let scaled = series_scale(&acc, &inv_r);
    for (k, q) in scaled.coeffs().iter().enumerate() {
        if !q.is_integer() {
            return Err(SemiInvariantsError::NonIntegerResult { k });
        }
        assert!(
            !q.is_negative(),
            "component dimension at X^{k} must be nonnegative, got {q}"
        );
    }
    Ok(scaled)
}

/// Generating function `g_{d,d} = Σ_{e|d} μ(e)·(P(X^e))^{d/e}` counting
/// tuples of exact rotation order `d` inside the `d`-th tensor power
/// (Möbius inclusion–exclusion over the sub-periods).
pub fn order_gen_primitive(p: &TruncatedSeries, d: u64) -> TruncatedSeries {
    assert!(d >= 1, "order d must be positive");
    assert!(
        p.has_nonneg_integer_coeffs(),
        "Poincaré series must have nonnegative integer coefficients"
    );
    let mut acc = TruncatedSeries::zero(p.cutoff());
    for e in divisors(d) {
        let mu = moebius(e);
        if mu == 0 {
            continue;
        }
        let term = series_pow(&series_substitute_power(p, e), d / e);
        acc = series_add(&acc, &series_scale(&term, &rat(mu)));
    }
    acc
}

/// Generating function `g_{r,d} = g_{d,d}(X^{r/d})` counting order-`d`
/// tuples inside the `r`-th tensor power (`d | r`): an order-`d` tuple is
/// an order-`d` tuple of length `d` repeated `r/d` times, which multiplies
/// every degree by `r/d`.
pub fn order_gen(
    p: &TruncatedSeries,
    r: u64,
    d: u64,
) -> Result<TruncatedSeries, SemiInvariantsError> {
    assert!(r >= 1, "tensor power r must be positive");
    if d == 0 || r % d != 0 {
        return Err(SemiInvariantsError::NotADivisor { d, r });
    }
    Ok(series_substitute_power(&order_gen_primitive(p, d), r / d))
}

const ENUMERATION_BUDGET: u64 = 10_000_000;
#[cfg(feature = "parallel")]
const PARALLEL_MIN_TUPLES: u64 = 4096;
#[cfg(feature = "parallel")]
const CHUNK: u64 = 16_384;

/// Everything the tuple scans need: the degree of each flattened basis
/// vector, the tuple count, and the sorted divisors of `r`.
struct EnumerationPlan {
    degrees: Vec<usize>,
    r: usize,
    total: u64,
    divs: Vec<u64>,
}

fn make_plan(
    v: &GradedDims,
    r: u64,
    kmax: usize,
) -> Result<EnumerationPlan, SemiInvariantsError> {
    assert!(r >= 1, "tensor power r must be positive");
    let mut degrees = Vec::new();
    for (k, &d) in v.dims.iter().enumerate().take(kmax + 1) {
        for _ in 0..d {
            degrees.push(k);
        }
    }
    let b = degrees.len() as u64;
    let too_large = Err(SemiInvariantsError::EnumerationTooLarge {
        basis: degrees.len(),
        r,
    });
    let total = if b <= 1 {
        b
    } else {
        match u32::try_from(r).ok().and_then(|e| b.checked_pow(e)) {
            Some(t) => t,
            None => return too_large,
        }
    };
    if total > ENUMERATION_BUDGET || r > ENUMERATION_BUDGET {
        return too_large;
    }
    Ok(EnumerationPlan {
        degrees,
        r: r as usize,
        total,
        divs: divisors(r),
    })
}

/// Smallest divisor `p` of `r` with the tuple invariant under rotation by
/// `p`; this is the size of its rotation orbit.
fn orbit_size(tuple: &[u32], divs: &[u64]) -> u64 {
    let r = tuple.len();
    for &p in divs {
        let p = p as usize;
        if (0..r).all(|j| tuple[j] == tuple[(j + p) % r]) {
            return p as u64;
        }
    }
    unreachable!("rotation by r itself always fixes the tuple");
}

/// True when the tuple is the lexicographic minimum of its rotation orbit,
/// i.e. the canonical orbit representative.
fn is_canonical(tuple: &[u32]) -> bool {
    let r = tuple.len();
    for s in 1..r {
        for j in 0..r {
            let rotated = tuple[(j + s) % r];
            match rotated.cmp(&tuple[j]) {
                std::cmp::Ordering::Less => return false,
                std::cmp::Ordering::Greater => break,
                std::cmp::Ordering::Equal => {}
            }
        }
    }
    true
}

/// Runs `visit(tuple, degree)` for every index tuple in the linear-index
/// range whose total degree is at most `kmax`.
fn scan_tuples(
    plan: &EnumerationPlan,
    kmax: usize,
    lo: u64,
    hi: u64,
    mut visit: impl FnMut(&[u32], usize),
) {
    let b = plan.degrees.len() as u64;
    let mut tuple = vec![0u32; plan.r];
    for t in lo..hi {
        let mut x = t;
        let mut degree = 0usize;
        let mut fits = true;
        for slot in tuple.iter_mut() {
            let digit = (x % b) as u32;
            x /= b;
            *slot = digit;
            degree += plan.degrees[digit as usize];
            if degree > kmax {
                fits = false;
                break;
            }
        }
        if fits {
            visit(&tuple, degree);
        }
    }
}

fn component_scan(
    plan: &EnumerationPlan,
    required: u64,
    kmax: usize,
    lo: u64,
    hi: u64,
) -> Vec<u64> {
    let mut counts = vec![0u64; kmax + 1];
    scan_tuples(plan, kmax, lo, hi, |tuple, degree| {
        if is_canonical(tuple) && orbit_size(tuple, &plan.divs) % required == 0 {
            counts[degree] += 1;
        }
    });
    counts
}

fn order_scan(plan: &EnumerationPlan, kmax: usize, lo: u64, hi: u64) -> Vec<Vec<u64>> {
    let mut counts = vec![vec![0u64; kmax + 1]; plan.divs.len()];
    scan_tuples(plan, kmax, lo, hi, |tuple, degree| {
        let ord = orbit_size(tuple, &plan.divs);
        let slot = plan.divs.binary_search(&ord).expect("orbit size divides r");
        counts[slot][degree] += 1;
    });
    counts
}

#[cfg(feature = "parallel")]
fn chunk_bounds(total: u64) -> impl rayon::iter::ParallelIterator<Item = (u64, u64)> {
    use rayon::prelude::*;
    (0..total.div_ceil(CHUNK))
        .into_par_iter()
        .map(move |c| (c * CHUNK, ((c + 1) * CHUNK).min(total)))
}

fn add_counts(mut a: Vec<u64>, b: Vec<u64>) -> Vec<u64> {
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
    a
}

fn counts_to_series(counts: &[u64]) -> TruncatedSeries {
    TruncatedSeries::from_coeffs(
        counts
            .iter()
            .map(|&c| Rational::from_integer(BigInt::from(c)))
            .collect(),
    )
}

fn component_required(r: u64, n: i64) -> u64 {
    r / num::integer::gcd(r, n.unsigned_abs())
}

/// Brute-force oracle for [`tensor_component_series`]: enumerates every
/// index tuple over a basis of `V_{≤kmax}`, partitions them into rotation
/// orbits via canonical representatives, and counts per degree the orbits
/// whose size is a multiple of `r/gcd(r,n)` — exactly the orbits that
/// contribute a basis vector to eigencomponent `n`.
pub fn brute_force_component(
    v: &GradedDims,
    r: u64,
    n: i64,
    kmax: usize,
) -> Result<TruncatedSeries, SemiInvariantsError> {
    let plan = make_plan(v, r, kmax)?;
    let required = component_required(r, n);
    #[cfg(feature = "parallel")]
    let counts = if plan.total >= PARALLEL_MIN_TUPLES {
        use rayon::prelude::*;
        chunk_bounds(plan.total)
            .map(|(lo, hi)| component_scan(&plan, required, kmax, lo, hi))
            .reduce(|| vec![0u64; kmax + 1], add_counts)
    } else {
        component_scan(&plan, required, kmax, 0, plan.total)
    };
    #[cfg(not(feature = "parallel"))]
    let counts = component_scan(&plan, required, kmax, 0, plan.total);
    Ok(counts_to_series(&counts))
}

/// Single-threaded twin of [`brute_force_component`] (same algorithm, no
/// work splitting); kept callable so the two can be compared directly.
pub fn brute_force_component_seq(
    v: &GradedDims,
    r: u64,
    n: i64,
    kmax: usize,
) -> Result<TruncatedSeries, SemiInvariantsError> {
    let plan = make_plan(v, r, kmax)?;
    let required = component_required(r, n);
    let counts = component_scan(&plan, required, kmax, 0, plan.total);
    Ok(counts_to_series(&counts))
}

fn order_counts_to_profile(
    r: u64,
    divs: &[u64],
    counts: Vec<Vec<u64>>,
) -> OrbitProfile {
    let by_order = divs
        .iter()
        .zip(counts)
        .map(|(&d, row)| (d, counts_to_series(&row)))
        .collect();
    OrbitProfile { r, by_order }
}

/// Brute-force tally of rotation orders: the `d` entry of the returned
/// profile counts, per degree, the index tuples whose orbit has size
/// exactly `d` (tuples, not orbits — these are the `g_{r,d}`).
pub fn brute_force_order_counts(
    v: &GradedDims,
    r: u64,
    kmax: usize,
) -> Result<OrbitProfile, SemiInvariantsError> {
    let plan = make_plan(v, r, kmax)?;
    #[cfg(feature = "parallel")]
    let counts = if plan.total >= PARALLEL_MIN_TUPLES {
        use rayon::prelude::*;
        let zero = || vec![vec![0u64; kmax + 1]; plan.divs.len()];
        chunk_bounds(plan.total)
            .map(|(lo, hi)| order_scan(&plan, kmax, lo, hi))
            .reduce(zero, |a, b| {
                a.into_iter().zip(b).map(|(x, y)| add_counts(x, y)).collect()
            })
    } else {
        order_scan(&plan, kmax, 0, plan.total)
    };
    #[cfg(not(feature = "parallel"))]
    let counts = order_scan(&plan, kmax, 0, plan.total);
    Ok(order_counts_to_profile(r, &plan.divs, counts))
}

/// Single-threaded twin of [`brute_force_order_counts`].
pub fn brute_force_order_counts_seq(
    v: &GradedDims,
    r: u64,
    kmax: usize,
) -> Result<OrbitProfile, SemiInvariantsError> {
    let plan = make_plan(v, r, kmax)?;
    let counts = order_scan(&plan, kmax, 0, plan.total);
    Ok(order_counts_to_profile(r, &plan.divs, counts))
}
