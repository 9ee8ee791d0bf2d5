//! Lifting idempotents, square-zero matrices and potent elements along a
//! surjection whose kernel is nilpotent.

use num_bigint::BigUint;
use num_traits::One;

use crate::canonical::square_zero_partner;
use crate::error::{Error, Result};
use crate::matrix::{Matrix, Vector};
use crate::rings::{binomial, potency, Reduction, RingValue, DEFAULT_POTENCY_LIMIT};

const IDEMPOTENT_STEPS: usize = 64;

/// Lifts an idempotent modulo a nilpotent ideal by iterating `e <- 3e^2 - 2e^3`.
pub fn lift_idempotent<V: RingValue>(e0: &V, red: &Reduction) -> Result<V> {
    let r = red.reduce_value(e0);
    if r.times(&r) != r {
        return Err(Error::NotIdempotentModIdeal);
    }
    let mut e = e0.clone();
    for _ in 0..IDEMPOTENT_STEPS {
        let e2 = e.times(&e);
        if e2 == e {
            return Ok(e);
        }
        let e3 = e2.times(&e);
        e = e2.scaled_int(3).minus(&e3.scaled_int(2));
    }
    Err(Error::IterationLimit(IDEMPOTENT_STEPS as u64))
}

/// A partner `b` of a square-zero `n0` inside the corner of the idempotent
/// `ebar`: `n0 b n0 = n0`, `b n0 b = b`, `b^2 = 0` and `ebar b ebar = b`.
pub fn corner_partner(n0: &Matrix, ebar: &Matrix) -> Result<Matrix> {
    let f = n0.ring();
    let n = n0.dim();
    if n0.is_zero() {
        return Ok(Matrix::zero(f, n));
    }
    let (kernel, image) = ebar.kernel_and_image_basis()?;
    let r = image.len();
    let cols: Vec<Vector> = image.into_iter().chain(kernel).collect();
    let w = Matrix::from_columns(f, &cols)?;
    let winv = w.inverse()?;
    let inner = (&(&winv * n0) * &w).submatrix(0, 0, r);
    let partner = square_zero_partner(&inner)?;
    let mut blocks = vec![partner];
    if r < n {
        blocks.push(Matrix::zero(f, n - r));
    }
    let padded = Matrix::block_diagonal(f, &blocks);
    Ok(&(&w * &padded) * &winv)
}

/// Lifts a square-zero residue matrix `n0` lying in the corner of
/// `reduce(E)` to `N` with `N^2 = 0`, `reduce(N) = n0` and `ENE = N`.
pub fn lift_square_zero(n0: &Matrix, e: &Matrix, red: &Reduction) -> Result<Matrix> {
    let representative = red.lift_value(n0);
    lift_square_zero_with(n0, e, &representative, red)
}

/// [`lift_square_zero`] starting from a chosen preimage of `n0`.
pub fn lift_square_zero_with(
    n0: &Matrix,
    e: &Matrix,
    representative: &Matrix,
    red: &Reduction,
) -> Result<Matrix> {
    if !(n0 * n0).is_zero() {
        return Err(Error::NotSquareZero);
    }
    let ebar = red.reduce_value(e);
    if &(&ebar * n0) * &ebar != *n0 {
        return Err(Error::CornerMismatch);
    }
    if red.reduce_value(representative) != *n0 {
        return Err(Error::RingMismatch("representative does not reduce to n0".into()));
    }
    if n0.is_zero() {
        return Ok(e.zero_like());
    }
    // Everything below happens inside the corner ring E S E with unit E.
    let b = corner_partner(n0, &ebar)?;
    let ebar_small = n0 * &b;
    let pre = &(e * &red.lift_value(&ebar_small)) * e;
    let small = lift_idempotent(&pre, red)?;
    let a = &(e * representative) * e;
    let n = &(&small * &a) * &(e - &small);
    let ok = (&n * &n).is_zero() && red.reduce_value(&n) == *n0 && &(e * &n) * e == n;
    if !ok {
        return Err(Error::LiftIdentityFailed("square-zero lift".into()));
    }
    Ok(n)
}

/// Residue characteristic `p` with `P^((k-1)p) = E` and `P^((k-1)p+1) = P`,
/// given `P = EPE` and `reduce(P)^(k-1) = reduce(E)`.
pub fn lift_potent_exponent(
    p_mat: &Matrix,
    e: &Matrix,
    k: &BigUint,
    red: &Reduction,
) -> Result<u64> {
    if e * e != *e {
        return Err(Error::LiftIdentityFailed("E is not idempotent".into()));
    }
    if &(e * p_mat) * e != *p_mat {
        return Err(Error::LiftIdentityFailed("P is not in the corner of E".into()));
    }
    let k_minus_1 = k - 1u32;
    if red.reduce_value(p_mat).pow(&k_minus_1) != red.reduce_value(e) {
        return Err(Error::LiftIdentityFailed("reduced power is not reduce(E)".into()));
    }
    let p = red.target().characteristic();
    let cycle = k_minus_1 * p;
    let power = p_mat.pow(&cycle);
    if power != *e {
        return Err(Error::LiftIdentityFailed(format!("P^((k-1)*{p}) differs from E")));
    }
    if &power * p_mat != *p_mat {
        return Err(Error::LiftIdentityFailed(format!("P^((k-1)*{p}+1) differs from P")));
    }
    Ok(p)
}

/// Output of [`lift_potent`].
#[derive(Clone, Debug)]
pub struct PotentLift<V> {
    /// `B = E a0`.
    pub value: V,
    pub idempotent: V,
    /// The auxiliary sum `T`.
    pub t_sum: V,
    /// Least `s >= 2` with `B^s = B`.
    pub exponent: u64,
}

/// Lifts `a0`, whose reduction is `t`-potent, to a potent `B` with the same
/// reduction, for a kernel ideal `I` with `I^index = 0`.
pub fn lift_potent<V: RingValue>(
    a0: &V,
    t: &BigUint,
    index: u32,
    red: &Reduction,
) -> Result<PotentLift<V>> {
    let r0 = red.reduce_value(a0);
    if *t < BigUint::from(2u32) || r0.pow(t) != r0 {
        return Err(Error::NotPotentModIdeal(t.to_string()));
    }
    let n = index.max(1);
    let ring = a0.ring().clone();
    let t1 = t - 1u32;
    let step = a0.pow(&t1);
    let mut t_sum = a0.zero_like();
    let mut power = a0.one_like();
    for k in 1..=n {
        let c = ring.from_biguint(&binomial(n as u64, k as u64));
        let term = power.scaled(&c);
        // (-1)^(2n - k + 1) is +1 for odd k.
        t_sum = if k % 2 == 1 {
            t_sum.plus(&term)
        } else {
            t_sum.minus(&term)
        };
        power = power.times(&step);
    }
    let nb = BigUint::from(n);
    let lhs = a0.pow(&nb);
    let rhs = a0.pow(&(&nb + &t1)).times(&t_sum);
    if lhs != rhs {
        return Err(Error::LiftIdentityFailed("A^n = A^(n+t-1) T".into()));
    }
    let e = a0.pow(&(&nb * &t1)).times(&t_sum.pow(&nb));
    if e.times(&e) != e {
        return Err(Error::LiftIdentityFailed("E is not idempotent".into()));
    }
    if e.times(a0) != a0.times(&e) {
        return Err(Error::LiftIdentityFailed("E does not commute with A".into()));
    }
    let value = e.times(a0);
    if red.reduce_value(&value) != r0 {
        return Err(Error::LiftIdentityFailed("lift changes the reduction".into()));
    }
    let exponent = potency(&value, DEFAULT_POTENCY_LIMIT)?
        .ok_or_else(|| Error::LiftIdentityFailed("lifted value is not potent".into()))?;
    Ok(PotentLift {
        value,
        idempotent: e,
        t_sum,
        exponent,
    })
}

/// `1 + lcm(e_i - 1)`, an exponent that works for every `e_i` at once.
pub(crate) fn combine_exponents<'a>(exps: impl IntoIterator<Item = &'a BigUint>) -> BigUint {
    use num_integer::Integer;
    let l = exps
        .into_iter()
        .map(|e| e - 1u32)
        .fold(BigUint::one(), |acc, x| acc.lcm(&x));
    l + 1u32
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::{residue_and_lift, Ring, RingElement};

    fn z(m: u64) -> Ring {
        Ring::integers_mod(m).unwrap()
    }

    #[test]
    fn idempotent_lift_of_three_in_z4() {
        let r = z(4);
        let red = residue_and_lift(&r).unwrap();
        let e = lift_idempotent(&RingElement::new(&r, 3), &red).unwrap();
        assert_eq!(e, RingElement::new(&r, 1));
    }

    #[test]
    fn idempotent_lift_of_matrix() {
        let r = z(4);
        let red = residue_and_lift(&r).unwrap();
        let e0 = Matrix::from_ints(&r, &[[3, 2], [2, 0]]);
        let e = lift_idempotent(&e0, &red).unwrap();
        assert_eq!(&e * &e, e);
        assert_eq!(red.reduce_value(&e), red.reduce_value(&e0));
    }

    #[test]
    fn idempotent_lift_rejects_non_idempotent() {
        let r = z(9);
        let red = residue_and_lift(&r).unwrap();
        assert_eq!(
            lift_idempotent(&RingElement::new(&r, 2), &red),
            Err(Error::NotIdempotentModIdeal)
        );
    }

    #[test]
    fn square_zero_lift_over_z4() {
        let r = z(4);
        let red = residue_and_lift(&r).unwrap();
        let f2 = red.target().clone();
        let n0 = Matrix::from_ints(&f2, &[[0, 1], [0, 0]]);
        let n = lift_square_zero(&n0, &Matrix::identity(&r, 2), &red).unwrap();
        assert!((&n * &n).is_zero());
        assert_eq!(red.reduce_value(&n), n0);
    }

    #[test]
    fn square_zero_lift_errors() {
        let r = z(4);
        let red = residue_and_lift(&r).unwrap();
        let f2 = red.target().clone();
        let not_sq = Matrix::from_ints(&f2, &[[1, 1], [0, 0]]);
        assert_eq!(
            lift_square_zero(&not_sq, &Matrix::identity(&r, 2), &red),
            Err(Error::NotSquareZero)
        );
        let n0 = Matrix::from_ints(&f2, &[[0, 1], [0, 0]]);
        let e = Matrix::from_ints(&r, &[[1, 0], [0, 0]]);
        assert_eq!(lift_square_zero(&n0, &e, &red), Err(Error::CornerMismatch));
        let zero = Matrix::zero(&f2, 2);
        assert!(lift_square_zero(&zero, &e, &red).unwrap().is_zero());
    }

    #[test]
    fn potent_exponent_examples() {
        let r = z(4);
        let red = residue_and_lift(&r).unwrap();
        let one = Matrix::identity(&r, 1);
        let three = Matrix::from_ints(&r, &[[3]]);
        let two = BigUint::from(2u32);
        assert_eq!(lift_potent_exponent(&one, &one, &two, &red), Ok(2));
        assert_eq!(lift_potent_exponent(&three, &one, &two, &red), Ok(2));
    }

    #[test]
    fn potent_lift_of_three_in_z4() {
        let r = z(4);
        let red = residue_and_lift(&r).unwrap();
        let out = lift_potent(&RingElement::new(&r, 3), &BigUint::from(2u32), 2, &red).unwrap();
        assert_eq!(out.t_sum, RingElement::new(&r, 3));
        assert_eq!(out.idempotent, RingElement::new(&r, 1));
        assert_eq!(out.value, RingElement::new(&r, 3));
        assert_eq!(out.exponent, 3);
    }

    #[test]
    fn potent_lift_of_five_in_z8() {
        let r = z(8);
        let red = Reduction::integers(&r, 4).unwrap();
        let out = lift_potent(&RingElement::new(&r, 5), &BigUint::from(2u32), 2, &red).unwrap();
        assert_eq!(out.value.rep().coeffs()[0] % 4, 1);
        assert!(crate::rings::is_potent(&out.value).is_some());
    }

    #[test]
    fn potent_lift_rejects_non_potent_residue() {
        let r = z(8);
        let red = Reduction::integers(&r, 4).unwrap();
        assert!(matches!(
            lift_potent(&RingElement::new(&r, 2), &BigUint::from(2u32), 2, &red),
            Err(Error::NotPotentModIdeal(_))
        ));
    }

    #[test]
    fn exponent_combination() {
        let exps = [BigUint::from(3u32), BigUint::from(5u32)];
        assert_eq!(combine_exponents(&exps), BigUint::from(5u32));
    }
}
