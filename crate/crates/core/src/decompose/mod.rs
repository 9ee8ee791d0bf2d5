//! Potent plus square-zero decompositions.
//!
//! The pipeline runs bottom-up: over a finite field the primary rational
//! canonical form splits `A` block by block ([`decompose_over_field`]); over
//! a local ring with square-zero radical the field decomposition of the
//! reduction is lifted ([`decompose_local`]); over `Z/p^r` the lift is taken
//! from `Z/p^2` by the potent-lifting construction ([`decompose_zpr`]); and
//! `Z/m` is split into prime-power components ([`decompose_crt`]).

mod field;
mod lift;
mod local;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::rings::{potency, RingSpec};

pub use field::{decompose_over_field, FieldDecomposition, FiveIdentities};
pub use lift::{
    corner_partner, lift_idempotent, lift_potent, lift_potent_exponent, lift_square_zero,
    lift_square_zero_with, PotentLift,
};
pub use local::{decompose_crt, decompose_local, decompose_zpr};

/// What the decomposition promises about `N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Guarantee {
    /// `N^2 = 0`.
    SquareZero,
    /// Every entry of `N^2` is divisible by `generator` (a product of `p^2` terms).
    SquareInIdeal { generator: u64 },
}

impl fmt::Display for Guarantee {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Guarantee::SquareZero => f.write_str("square-zero"),
            Guarantee::SquareInIdeal { .. } => f.write_str("square-in-p2"),
        }
    }
}

/// Named identities checked while building a decomposition.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Certificate {
    pub checks: BTreeMap<String, bool>,
    /// Least `s >= 2` with `P^s = P`, when the power walk finished in budget.
    pub minimal_exponent: Option<u64>,
}

impl Certificate {
    pub fn record(&mut self, name: impl Into<String>, ok: bool) {
        self.checks.insert(name.into(), ok);
    }

    pub fn passed(&self) -> bool {
        self.checks.values().all(|&ok| ok)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|(_, &ok)| !ok)
            .map(|(k, _)| k.as_str())
            .collect()
    }

    fn absorb(&mut self, prefix: &str, other: &Certificate) {
        for (k, &v) in &other.checks {
            self.checks.insert(format!("{prefix}.{k}"), v);
        }
    }
}

#[derive(Clone, Debug)]
pub struct PotentDecomposition {
    pub matrix: Matrix,
    pub potent: Matrix,
    pub nilpotent: Matrix,
    /// `potent^exponent = potent`.
    pub exponent: BigUint,
    pub guarantee: Guarantee,
    pub certificate: Certificate,
}

/// Step budget for the minimal-exponent walk recorded in certificates.
const MINIMAL_EXPONENT_LIMIT: u64 = 1 << 16;

impl PotentDecomposition {
    fn finish(
        matrix: &Matrix,
        potent: Matrix,
        nilpotent: Matrix,
        exponent: BigUint,
        guarantee: Guarantee,
        mut certificate: Certificate,
    ) -> PotentDecomposition {
        certificate.record("sum", &potent + &nilpotent == *matrix);
        certificate.record("potent_exponent", potent.pow(&exponent) == potent);
        let square = &nilpotent * &nilpotent;
        match guarantee {
            Guarantee::SquareZero => certificate.record("square_zero", square.is_zero()),
            Guarantee::SquareInIdeal { generator } => certificate.record(
                "square_in_ideal",
                square.entries().iter().all(|e| e.coeffs()[0] % generator == 0),
            ),
        }
        certificate.minimal_exponent = potency(&potent, MINIMAL_EXPONENT_LIMIT).ok().flatten();
        PotentDecomposition {
            matrix: matrix.clone(),
            potent,
            nilpotent,
            exponent,
            guarantee,
            certificate,
        }
    }
}

use crate::rings::RingValue;

/// Decomposes over any supported ring: finite fields, `Z/p^2`,
/// `F_p[t]/(t^2)` and `Z/m`.
pub fn decompose(a: &Matrix) -> Result<PotentDecomposition> {
    let ring = a.ring();
    if let RingSpec::IntegersMod { .. } = ring.spec() {
        return decompose_crt(a);
    }
    if ring.is_field() || ring.local_sq_zero().is_some() {
        return decompose_local(a);
    }
    Err(Error::Unsupported(format!("no decomposition algorithm over {ring}")))
}
