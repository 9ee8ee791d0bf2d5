//! Brute-force searches and decomposition checks that rely only on ring and
//! matrix arithmetic.

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::decompose::{Certificate, Guarantee, PotentDecomposition};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::rings::{Ring, RingValue};

/// Default budget for [`exhaustive_decomposition_search`], in ring multiplications.
pub const DEFAULT_SEARCH_BUDGET: u64 = 100_000_000;

/// Largest number of matrices [`sweep`] will enumerate.
pub const SWEEP_LIMIT: u64 = 50_000_000;

/// Number of `n x n` matrices over `ring`, if it fits in a `u64`.
pub fn matrix_count(ring: &Ring, n: usize) -> Option<u64> {
    let size = ring.size()?;
    (0..n * n).try_fold(1u64, |acc, _| acc.checked_mul(size))
}

/// The matrix with enumeration index `idx`: entry `(0,0)` is the most
/// significant digit and entries follow row-major order.
pub fn matrix_at(ring: &Ring, n: usize, mut idx: u64) -> Matrix {
    let size = ring.size().expect("enumerable ring");
    let mut entries = vec![ring.zero(); n * n];
    for slot in entries.iter_mut().rev() {
        *slot = ring.elem_at(idx % size);
        idx /= size;
    }
    Matrix::new(ring, n, entries).expect("square entries")
}

/// All `n x n` matrices in enumeration order.
pub fn all_matrices(ring: &Ring, n: usize) -> Result<impl Iterator<Item = Matrix> + '_> {
    let total = matrix_count(ring, n)
        .ok_or_else(|| Error::Unsupported(format!("M_{n}({ring}) is too large to enumerate")))?;
    Ok((0..total).map(move |i| matrix_at(ring, n, i)))
}

#[derive(Clone, Debug)]
pub struct SearchReport {
    pub ring: Ring,
    pub a: Matrix,
    pub max_nil_index: u32,
    /// First `(P, N)` in enumeration order with `P` potent and `N^m = 0`.
    pub found: Option<(Matrix, Matrix)>,
    /// Nilpotent candidates `N` (with `N^m = 0`) examined.
    pub search_size: u64,
}

/// Potency test that charges its multiplications to `spent`. Brent's cycle
/// search on `x -> x a`, then a tail-length check.
fn charged_potent(a: &Matrix, spent: &mut u64, budget: u64) -> Option<bool> {
    let cost = a.mul_cost();
    let mut power = 1u64;
    let mut lambda = 1u64;
    let mut tortoise = a.clone();
    let mut hare = a * a;
    *spent += cost;
    while tortoise != hare {
        if power == lambda {
            tortoise = hare.clone();
            power *= 2;
            lambda = 0;
        }
        hare = &hare * a;
        lambda += 1;
        *spent += cost;
        if *spent > budget {
            return None;
        }
    }
    let mut back = a.clone();
    for _ in 0..lambda {
        back = &back * a;
    }
    *spent += lambda * cost;
    Some(back == *a)
}

/// Looks for `A = P + N` with `P` potent and `N^m = 0` by enumerating every `N`.
pub fn exhaustive_decomposition_search(
    a: &Matrix,
    max_nil_index: u32,
    budget: u64,
) -> Result<SearchReport> {
    let ring = a.ring().clone();
    let n = a.dim();
    let m = max_nil_index.max(1);
    let total = matrix_count(&ring, n).ok_or(Error::BudgetExceeded {
        budget,
        examined: 0,
    })?;
    let cost = a.mul_cost().max(1);
    let mut spent = 0u64;
    let mut search_size = 0u64;
    for idx in 0..total {
        let cand = matrix_at(&ring, n, idx);
        let mut pw = cand.clone();
        for _ in 1..m {
            if pw.is_zero() {
                break;
            }
            pw = &pw * &cand;
            spent += cost;
        }
        if spent > budget {
            return Err(Error::BudgetExceeded {
                budget,
                examined: idx,
            });
        }
        if !pw.is_zero() {
            continue;
        }
        search_size += 1;
        let p = a - &cand;
        match charged_potent(&p, &mut spent, budget) {
            None => {
                return Err(Error::BudgetExceeded {
                    budget,
                    examined: idx,
                })
            }
            Some(true) => {
                return Ok(SearchReport {
                    ring,
                    a: a.clone(),
                    max_nil_index: m,
                    found: Some((p, cand)),
                    search_size,
                })
            }
            Some(false) => {}
        }
    }
    Ok(SearchReport {
        ring,
        a: a.clone(),
        max_nil_index: m,
        found: None,
        search_size,
    })
}

/// Step limit for the potency walk inside [`verify_decomposition`].
const VERIFY_POTENCY_LIMIT: u64 = 1 << 22;

/// Rechecks a claimed decomposition from the raw matrices.
///
/// Records `sum`, `potent` (with the least exponent), `claimed_exponent` when
/// one is supplied, and `square_zero` or `square_in_ideal`.
pub fn verify_decomposition(
    a: &Matrix,
    p: &Matrix,
    n: &Matrix,
    guarantee: Guarantee,
    exponent: Option<&BigUint>,
) -> Result<Certificate> {
    for (name, m) in [("P", p), ("N", n)] {
        if m.dim() != a.dim() || m.ring() != a.ring() {
            return Err(Error::ShapeMismatch(format!(
                "{name} is {}x{} over {}, A is {}x{} over {}",
                m.dim(),
                m.dim(),
                m.ring(),
                a.dim(),
                a.dim(),
                a.ring()
            )));
        }
    }
    let mut cert = Certificate::default();
    cert.record("sum", p + n == *a);
    let minimal = crate::rings::potency(p, VERIFY_POTENCY_LIMIT).ok().flatten();
    cert.minimal_exponent = minimal;
    cert.record("potent", minimal.is_some());
    if let Some(e) = exponent {
        cert.record("claimed_exponent", *e >= BigUint::from(2u32) && p.pow(e) == *p);
    }
    let square = n * n;
    match guarantee {
        Guarantee::SquareZero => cert.record("square_zero", square.is_zero()),
        Guarantee::SquareInIdeal { generator } => cert.record(
            "square_in_ideal",
            generator > 0
                && square
                    .entries()
                    .iter()
                    .all(|e| e.coeffs().iter().all(|c| c % generator == 0)),
        ),
    }
    Ok(cert)
}

/// Totals from [`sweep`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepSummary {
    pub ring: Ring,
    pub n: usize,
    pub total: u64,
    /// Matrices for which the decomposer returned a result.
    pub decomposed: u64,
    /// Results rejected by [`verify_decomposition`].
    pub certificate_failures: u64,
    /// Lowest enumeration index that was not decomposed or failed verification.
    pub first_failure: Option<u64>,
}

impl SweepSummary {
    pub fn clean(&self) -> bool {
        self.certificate_failures == 0 && self.decomposed == self.total
    }
}

fn check_one<D>(ring: &Ring, n: usize, idx: u64, decomposer: &D) -> (u64, u64)
where
    D: Fn(&Matrix) -> Result<PotentDecomposition>,
{
    let a = matrix_at(ring, n, idx);
    match decomposer(&a) {
        Err(_) => (0, 0),
        Ok(d) => {
            let ok = verify_decomposition(&a, &d.potent, &d.nilpotent, d.guarantee, Some(&d.exponent))
                .map(|c| c.passed())
                .unwrap_or(false);
            (1, u64::from(!ok))
        }
    }
}

/// Runs `decomposer` on every `n x n` matrix over `ring` and verifies each
/// result. `jobs > 1` spreads the work over a thread pool.
pub fn sweep<D>(ring: &Ring, n: usize, decomposer: D, jobs: usize) -> Result<SweepSummary>
where
    D: Fn(&Matrix) -> Result<PotentDecomposition> + Sync,
{
    let total = matrix_count(ring, n)
        .filter(|&t| t <= SWEEP_LIMIT)
        .ok_or(Error::BudgetExceeded {
            budget: SWEEP_LIMIT,
            examined: 0,
        })?;
    let results: Vec<(u64, u64)> = if jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::Unsupported(e.to_string()))?;
        pool.install(|| {
            (0..total)
                .into_par_iter()
                .map(|i| check_one(ring, n, i, &decomposer))
                .collect()
        })
    } else {
        (0..total).map(|i| check_one(ring, n, i, &decomposer)).collect()
    };
    let first_failure = results
        .iter()
        .position(|&(d, f)| d == 0 || f == 1)
        .map(|i| i as u64);
    Ok(SweepSummary {
        ring: ring.clone(),
        n,
        total,
        decomposed: results.iter().map(|r| r.0).sum(),
        certificate_failures: results.iter().map(|r| r.1).sum(),
        first_failure,
    })
}
