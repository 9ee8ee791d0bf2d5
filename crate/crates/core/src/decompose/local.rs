use num_bigint::BigUint;

use super::field::decompose_over_field;
use super::lift::{
    combine_exponents, lift_idempotent, lift_potent, lift_potent_exponent, lift_square_zero_with,
};
use super::{Certificate, Guarantee, PotentDecomposition};
use crate::canonical::BlockClass;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::rings::{factor_integer, residue_and_lift, Reduction, RingSpec, RingValue};

/// Largest power checked by the expansion identity on every step.
const EXPANSION_STEPS: u64 = 64;

/// Decomposition over a finite field or a local ring whose maximal ideal
/// squares to zero, with `N^2 = 0`.
pub fn decompose_local(a: &Matrix) -> Result<PotentDecomposition> {
    let ring = a.ring();
    if ring.is_field() {
        let fd = decompose_over_field(a)?;
        let mut cert = Certificate::default();
        let ids = fd.check(a);
        cert.record("idempotent", ids.idempotent);
        cert.record("corner_n", ids.corner_n);
        cert.record("corner_p", ids.corner_p);
        return Ok(PotentDecomposition::finish(
            a,
            fd.potent,
            fd.nilpotent,
            fd.exponent,
            Guarantee::SquareZero,
            cert,
        ));
    }
    let red = residue_and_lift(ring)?;
    let abar = red.reduce_value(a);
    let fd = decompose_over_field(&abar)?;
    let mut cert = Certificate::default();

    let e = lift_idempotent(&red.lift_value(&fd.idempotent), &red)?;
    cert.record("idempotent_lift", red.reduce_value(&e) == fd.idempotent);

    let representative = signed_representative(&fd, &red)?;
    let n0 = lift_square_zero_with(&fd.nilpotent, &e, &representative, &red)?;
    cert.record("square_zero_lift", red.reduce_value(&n0) == fd.nilpotent);

    let p0 = &(&e * &(&red.lift_value(&abar) - &n0)) * &e;
    cert.record("corner_potent", red.reduce_value(&p0) == fd.potent);
    let p = lift_potent_exponent(&p0, &e, &fd.exponent, &red)?;
    cert.record("lift_potent_exponent", true);

    let v = &(a - &p0) - &n0;
    let id = Matrix::identity(ring, a.dim());
    let co = &id - &e;
    let g = &p0 + &(&(&e * &v) * &e);
    let x = &(&co * &v) * &e;
    let y = &(&e * &v) * &co;
    let potent = &(&g + &x) + &y;
    let nilpotent = &n0 + &(&(&co * &v) * &co);
    let exponent = (&fd.exponent - 1u32) * p + 1u32;
    cert.record(
        "corrected_potent_exponent",
        potent.pow(&exponent) == potent,
    );
    cert.record("expansion_identity", expansion_identity(&g, &x, &y, &exponent));
    Ok(PotentDecomposition::finish(
        a,
        potent,
        nilpotent,
        exponent,
        Guarantee::SquareZero,
        cert,
    ))
}

/// `Q N' Q^-1` computed over the local ring, with `-1` at each nilpotent
/// block corner, so the lift of `N` keeps its sign.
fn signed_representative(
    fd: &super::FieldDecomposition,
    red: &Reduction,
) -> Result<Matrix> {
    let ring = red.source();
    let n = fd.nilpotent.dim();
    let mut blocks = Matrix::zero(ring, n);
    let minus_one = ring.from_i64(-1);
    for ((block, div), off) in fd
        .rcf
        .blocks
        .iter()
        .zip(fd.rcf.divisors.iter())
        .zip(fd.rcf.offsets())
    {
        if div.class() == BlockClass::NilpotentJordan {
            blocks.set(off, off + block.dim() - 1, minus_one.clone());
        }
    }
    let q = red.lift_value(&fd.rcf.q);
    let qinv = q.inverse()?;
    Ok(&(&q * &blocks) * &qinv)
}

/// `(G + X + Y)^s = G^s + X G^(s-1) + G^(s-1) Y` for `s` up to
/// `min(exponent, 64)` and at `s = exponent`.
fn expansion_identity(g: &Matrix, x: &Matrix, y: &Matrix, exponent: &BigUint) -> bool {
    let sum = &(g + x) + y;
    let mut lhs = sum.clone();
    let mut g_prev = g.one_like();
    let mut g_pow = g.clone();
    let last = exponent.to_u64_digits().first().copied().unwrap_or(0);
    let bound = if exponent.bits() > 64 {
        EXPANSION_STEPS
    } else {
        last.min(EXPANSION_STEPS)
    };
    let check = |lhs: &Matrix, gp: &Matrix, gs: &Matrix| {
        *lhs == &(gs + &(x * gp)) + &(gp * y)
    };
    for _ in 1..=bound {
        if !check(&lhs, &g_prev, &g_pow) {
            return false;
        }
        lhs = &lhs * &sum;
        g_prev = g_pow.clone();
        g_pow = &g_pow * g;
    }
    let e1 = exponent - 1u32;
    check(&sum.pow(exponent), &g.pow(&e1), &g.pow(exponent))
}

fn prime_power(ring_modulus: u64) -> Result<(u64, u32)> {
    match factor_integer(ring_modulus).as_slice() {
        [(p, r)] => Ok((*p, *r)),
        _ => Err(Error::Unsupported(format!(
            "{ring_modulus} is not a prime power"
        ))),
    }
}

/// Decomposition over `Z/p^r`: the `Z/p^2` decomposition of the reduction,
/// with the potent part lifted. `N^2` lands in `p^2 M_n(Z/p^r)`.
pub fn decompose_zpr(a: &Matrix) -> Result<PotentDecomposition> {
    let ring = a.ring();
    let RingSpec::IntegersMod { m } = ring.spec() else {
        return Err(Error::Unsupported(format!("{ring} is not Z/p^r")));
    };
    let (p, r) = prime_power(*m)?;
    if r <= 2 {
        return decompose_local(a);
    }
    let red = Reduction::integers(ring, p * p)?;
    let low = decompose_local(&red.reduce_value(a))?;
    let index = r.div_ceil(2);
    let lifted = lift_potent(&red.lift_value(&low.potent), &low.exponent, index, &red)?;
    let mut cert = Certificate::default();
    cert.absorb("residue", &low.certificate);
    cert.record("potent_lift_idempotent", true);
    cert.record(
        "potent_lift_reduction",
        red.reduce_value(&lifted.value) == low.potent,
    );
    let potent = lifted.value;
    let nilpotent = a - &potent;
    Ok(PotentDecomposition::finish(
        a,
        potent,
        nilpotent,
        BigUint::from(lifted.exponent),
        Guarantee::SquareInIdeal { generator: p * p },
        cert,
    ))
}

/// Decomposition over `Z/m` through its prime-power components.
pub fn decompose_crt(a: &Matrix) -> Result<PotentDecomposition> {
    let ring = a.ring();
    let RingSpec::IntegersMod { m } = ring.spec() else {
        return Err(Error::Unsupported(format!("{ring} is not Z/m")));
    };
    let factors = factor_integer(*m);
    if factors.len() == 1 {
        return if factors[0].1 <= 2 {
            decompose_local(a)
        } else {
            decompose_zpr(a)
        };
    }
    let parts = a
        .split_crt()?
        .iter()
        .zip(&factors)
        .map(|(c, &(_, r))| if r <= 2 { decompose_local(c) } else { decompose_zpr(c) })
        .collect::<Result<Vec<_>>>()?;
    let potent = Matrix::join_crt(ring, &parts.iter().map(|d| d.potent.clone()).collect::<Vec<_>>())?;
    let nilpotent =
        Matrix::join_crt(ring, &parts.iter().map(|d| d.nilpotent.clone()).collect::<Vec<_>>())?;
    let exponent = combine_exponents(parts.iter().map(|d| &d.exponent));
    let guarantee = if factors.iter().all(|&(_, r)| r <= 2) {
        Guarantee::SquareZero
    } else {
        let generator = factors
            .iter()
            .map(|&(p, r)| if r <= 2 { p.pow(r) } else { p * p })
            .product();
        Guarantee::SquareInIdeal { generator }
    };
    let mut cert = Certificate::default();
    for (d, &(p, r)) in parts.iter().zip(&factors) {
        cert.absorb(&format!("Z/{}", p.pow(r)), &d.certificate);
    }
    Ok(PotentDecomposition::finish(a, potent, nilpotent, exponent, guarantee, cert))
}
