use num_bigint::BigUint;
use num_traits::One;

use crate::canonical::{primary_rcf, BlockClass, PrimaryRcf};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::rings::RingValue;

/// `A = P + N` over a finite field with `P^k = P`, `N^2 = 0` and `E = P^(k-1)`.
#[derive(Clone, Debug)]
pub struct FieldDecomposition {
    pub potent: Matrix,
    pub nilpotent: Matrix,
    /// `k = 1 + ∏ (k_i - 1)` over the non-zero blocks.
    pub exponent: BigUint,
    pub idempotent: Matrix,
    pub rcf: PrimaryRcf,
    /// Multiplicative order `k_i - 1` of each non-zero block's potent part.
    pub block_orders: Vec<u64>,
    /// Block-level parts before conjugation by `Q`.
    pub block_potent: Matrix,
    pub block_nilpotent: Matrix,
}

/// The five identities tying `P`, `N`, `E` and `A` together.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FiveIdentities {
    pub sum: bool,
    pub potent: bool,
    pub square_zero: bool,
    pub idempotent: bool,
    /// `EN = NE = N`.
    pub corner_n: bool,
    /// `EP = PE = P`.
    pub corner_p: bool,
}

impl FiveIdentities {
    pub fn all(&self) -> bool {
        self.sum
            && self.potent
            && self.square_zero
            && self.idempotent
            && self.corner_n
            && self.corner_p
    }
}

impl FieldDecomposition {
    pub fn check(&self, a: &Matrix) -> FiveIdentities {
        let (p, n, e) = (&self.potent, &self.nilpotent, &self.idempotent);
        let k_minus_1 = &self.exponent - 1u32;
        FiveIdentities {
            sum: p + n == *a,
            potent: p.pow(&self.exponent) == *p,
            square_zero: (n * n).is_zero(),
            idempotent: p.pow(&k_minus_1) == *e && e * e == *e,
            corner_n: e * n == *n && n * e == *n,
            corner_p: e * p == *p && p * e == *p,
        }
    }
}

/// Field decomposition from the primary rational canonical form.
///
/// Invertible companion blocks keep `N_i = 0`. A block of `x^s`, `s >= 2`,
/// becomes the cyclic permutation `C + e_(1,s)` plus `-e_(1,s)`. The `x`
/// blocks stay zero.
pub fn decompose_over_field(a: &Matrix) -> Result<FieldDecomposition> {
    let f = a.ring();
    if !f.is_field() {
        return Err(Error::NotAField(f.to_string()));
    }
    let rcf = primary_rcf(a)?;
    let mut p_blocks = Vec::with_capacity(rcf.blocks.len());
    let mut n_blocks = Vec::with_capacity(rcf.blocks.len());
    let mut block_orders = Vec::new();
    for (block, div) in rcf.blocks.iter().zip(rcf.divisors.iter()) {
        let d = block.dim();
        let (pb, nb) = match div.class() {
            BlockClass::Invertible => (block.clone(), Matrix::zero(f, d)),
            BlockClass::NilpotentJordan => {
                let corner = Matrix::unit(f, d, 0, d - 1);
                (block + &corner, -&corner)
            }
            BlockClass::Zero => (Matrix::zero(f, d), Matrix::zero(f, d)),
        };
        if div.class() != BlockClass::Zero {
            block_orders.push(pb.order_of_invertible()?);
        }
        p_blocks.push(pb);
        n_blocks.push(nb);
    }
    let order_product: BigUint = block_orders.iter().map(|&o| BigUint::from(o)).product();
    let exponent = order_product.clone() + BigUint::one();
    let block_potent = Matrix::block_diagonal(f, &p_blocks);
    let block_nilpotent = Matrix::block_diagonal(f, &n_blocks);
    let block_idempotent = block_potent.pow(&order_product);
    let qinv = rcf.q.inverse()?;
    let conj = |m: &Matrix| &(&rcf.q * m) * &qinv;
    Ok(FieldDecomposition {
        potent: conj(&block_potent),
        nilpotent: conj(&block_nilpotent),
        idempotent: conj(&block_idempotent),
        exponent,
        rcf,
        block_orders,
        block_potent,
        block_nilpotent,
    })
}
