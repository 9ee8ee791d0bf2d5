//! Finite commutative rings and their elements.
//!
//! Every supported ring is presented as `Z/m[x]/(f)` for a monic `f`:
//! `Z/m` itself uses `f = x`, a Galois field uses an irreducible `f` over a
//! prime modulus and the dual numbers `F_p[t]/(t^2)` use `f = t^2`. Elements
//! are coefficient vectors of fixed length `deg f`, fully reduced, so equality
//! and hashing are structural.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use smallvec::{smallvec, SmallVec};

use crate::error::{Error, Result};
use crate::poly::{self, Poly};

#[inline]
pub(crate) fn addm(a: u64, b: u64, m: u64) -> u64 {
    let s = a as u128 + b as u128;
    (s % m as u128) as u64
}

#[inline]
pub(crate) fn subm(a: u64, b: u64, m: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        m - (b - a)
    }
}

#[inline]
pub(crate) fn mulm(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Trial-division factorization, primes in increasing order.
pub fn factor_integer(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            let mut r = 0;
            while n % d == 0 {
                n /= d;
                r += 1;
            }
            out.push((d, r));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Canonical representative of a ring element: coefficients of degree below
/// `deg f`, each reduced modulo `m`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Elem(pub(crate) SmallVec<[u64; 2]>);

impl Elem {
    pub fn coeffs(&self) -> &[u64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() == 1 {
            write!(f, "{}", self.0[0])
        } else {
            write!(f, "{:?}", self.0.as_slice())
        }
    }
}

/// Enumeration order: the highest-degree coefficient is most significant.
impl Ord for Elem {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.iter().rev().cmp(other.0.iter().rev())
    }
}

impl PartialOrd for Elem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RingSpec {
    IntegersMod { m: u64 },
    PrimeField { p: u64 },
    /// `modulus` is monic irreducible of degree `k`, coefficients lowest first.
    GaloisField { p: u64, k: u32, modulus: Vec<u64> },
    QuotientRing { m: u64, modulus: Vec<u64> },
    /// `F_p[t]/(t^2)`.
    DualNumbers { p: u64 },
}

struct RingData {
    spec: RingSpec,
    m: u64,
    modulus: Vec<u64>,
    field: bool,
    local: bool,
    size: Option<u64>,
    var: char,
    name: String,
}

#[derive(Clone)]
pub struct Ring(Arc<RingData>);

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.spec == other.0.spec
    }
}

impl Eq for Ring {}

impl Hash for Ring {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.spec.hash(state)
    }
}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ring({})", self.0.name)
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.name)
    }
}

/// Dense polynomial text, highest degree first: `x^3+2x+1`.
pub fn format_coeffs(coeffs: &[u64], var: char) -> String {
    let mut terms = Vec::new();
    for (i, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let term = match (i, c) {
            (0, c) => c.to_string(),
            (1, 1) => var.to_string(),
            (1, c) => format!("{c}{var}"),
            (i, 1) => format!("{var}^{i}"),
            (i, c) => format!("{c}{var}^{i}"),
        };
        terms.push(term);
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join("+")
    }
}

fn checked_size(m: u64, d: usize) -> Option<u64> {
    let mut s = 1u64;
    for _ in 0..d {
        s = s.checked_mul(m)?;
    }
    Some(s)
}

impl Ring {
    fn build(spec: RingSpec, m: u64, modulus: Vec<u64>, var: char, name: String) -> Ring {
        let d = modulus.len() - 1;
        let (field, local) = match &spec {
            RingSpec::IntegersMod { m } => {
                let f = factor_integer(*m);
                (f.len() == 1 && f[0].1 == 1, f.len() == 1)
            }
            RingSpec::PrimeField { .. } | RingSpec::GaloisField { .. } => (true, true),
            RingSpec::DualNumbers { .. } => (false, true),
            RingSpec::QuotientRing { m, modulus } => quotient_structure(*m, modulus),
        };
        Ring(Arc::new(RingData {
            spec,
            m,
            size: checked_size(m, d),
            modulus,
            field,
            local,
            var,
            name,
        }))
    }

    pub fn integers_mod(m: u64) -> Result<Ring> {
        if m < 2 {
            return Err(Error::InvalidRing(format!("modulus {m} must be at least 2")));
        }
        Ok(Ring::build(
            RingSpec::IntegersMod { m },
            m,
            vec![0, 1],
            'x',
            format!("Z/{m}"),
        ))
    }

    pub fn prime_field(p: u64) -> Result<Ring> {
        if !is_prime(p) {
            return Err(Error::InvalidRing(format!("{p} is not prime")));
        }
        Ok(Ring::build(
            RingSpec::PrimeField { p },
            p,
            vec![0, 1],
            'x',
            format!("GF({p})"),
        ))
    }

    /// `GF(p^k)` with the smallest monic irreducible modulus of degree `k`
    /// in enumeration order.
    pub fn galois_field(p: u64, k: u32) -> Result<Ring> {
        if k == 0 {
            return Err(Error::InvalidRing("extension degree must be at least 1".into()));
        }
        let base = Ring::prime_field(p)?;
        let modulus = poly::smallest_irreducible(&base, k as usize);
        let coeffs: Vec<u64> = modulus.coeffs().iter().map(|c| c.0[0]).collect();
        let name = format!("GF({p}^{k})");
        Ok(Ring::build(
            RingSpec::GaloisField {
                p,
                k,
                modulus: coeffs.clone(),
            },
            p,
            coeffs,
            'x',
            name,
        ))
    }

    pub fn galois_field_with_modulus(p: u64, modulus: &[u64]) -> Result<Ring> {
        let base = Ring::prime_field(p)?;
        let f = Poly::from_u64s(&base, modulus);
        let k = f
            .degree()
            .filter(|&d| d >= 1)
            .ok_or_else(|| Error::InvalidRing("Galois modulus must be non-constant".into()))?;
        if !f.is_monic() {
            return Err(Error::InvalidRing("Galois modulus must be monic".into()));
        }
        if !poly::is_irreducible(&f)? {
            return Err(Error::InvalidRing(format!(
                "{} is reducible over GF({p})",
                f
            )));
        }
        let coeffs: Vec<u64> = f.coeffs().iter().map(|c| c.0[0]).collect();
        let default = poly::smallest_irreducible(&base, k);
        let name = if default == f {
            format!("GF({p}^{k})")
        } else {
            format!("GF({p}^{k};{})", format_coeffs(&coeffs, 'x'))
        };
        Ok(Ring::build(
            RingSpec::GaloisField {
                p,
                k: k as u32,
                modulus: coeffs.clone(),
            },
            p,
            coeffs,
            'x',
            name,
        ))
    }

    /// `Z/m[x]/(f)` for monic `f` of degree at least one.
    pub fn quotient(m: u64, modulus: &[u64]) -> Result<Ring> {
        if m < 2 {
            return Err(Error::InvalidRing(format!("modulus {m} must be at least 2")));
        }
        let mut coeffs: Vec<u64> = modulus.iter().map(|c| c % m).collect();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        if coeffs.len() < 2 {
            return Err(Error::InvalidRing("quotient modulus must be non-constant".into()));
        }
        if *coeffs.last().unwrap() != 1 {
            return Err(Error::InvalidRing("quotient modulus must be monic".into()));
        }
        let name = format!("Z/{m}[x]/({})", format_coeffs(&coeffs, 'x'));
        Ok(Ring::build(
            RingSpec::QuotientRing {
                m,
                modulus: coeffs.clone(),
            },
            m,
            coeffs,
            'x',
            name,
        ))
    }

    /// `F_p[t]/(t^2)`.
    pub fn dual_numbers(p: u64) -> Result<Ring> {
        if !is_prime(p) {
            return Err(Error::InvalidRing(format!("{p} is not prime")));
        }
        Ok(Ring::build(
            RingSpec::DualNumbers { p },
            p,
            vec![0, 0, 1],
            't',
            format!("F{p}[t]/(t^2)"),
        ))
    }

    pub fn spec(&self) -> &RingSpec {
        &self.0.spec
    }

    /// The integer modulus `m`, which is the characteristic.
    pub fn characteristic(&self) -> u64 {
        self.0.m
    }

    /// Degree of the presenting polynomial, i.e. the length of an element rep.
    pub fn degree(&self) -> usize {
        self.0.modulus.len() - 1
    }

    pub fn modulus_coeffs(&self) -> &[u64] {
        &self.0.modulus
    }

    pub fn variable(&self) -> char {
        self.0.var
    }

    pub fn is_field(&self) -> bool {
        self.0.field
    }

    pub fn is_local(&self) -> bool {
        self.0.local
    }

    /// Number of elements, when it fits in a `u64`.
    pub fn size(&self) -> Option<u64> {
        self.0.size
    }

    pub fn zero(&self) -> Elem {
        Elem(smallvec![0; self.degree()])
    }

    pub fn one(&self) -> Elem {
        let mut e = self.zero();
        e.0[0] = 1 % self.0.m;
        e
    }

    pub fn from_u64(&self, v: u64) -> Elem {
        let mut e = self.zero();
        e.0[0] = v % self.0.m;
        e
    }

    pub fn from_i64(&self, v: i64) -> Elem {
        let m = self.0.m as i128;
        self.from_u64((v as i128).rem_euclid(m) as u64)
    }

    pub fn from_biguint(&self, v: &BigUint) -> Elem {
        let r = v % BigUint::from(self.0.m);
        self.from_u64(r.to_u64().expect("residue fits"))
    }

    /// Reduces an arbitrary coefficient vector (lowest degree first).
    pub fn from_coeffs(&self, coeffs: &[i64]) -> Elem {
        let m = self.0.m as i128;
        let v: Vec<u64> = coeffs
            .iter()
            .map(|&c| (c as i128).rem_euclid(m) as u64)
            .collect();
        self.reduce_coeffs(v)
    }

    pub(crate) fn reduce_coeffs(&self, mut v: Vec<u64>) -> Elem {
        let m = self.0.m;
        let d = self.degree();
        for c in v.iter_mut() {
            *c %= m;
        }
        let f = &self.0.modulus;
        if v.len() > d {
            for i in (d..v.len()).rev() {
                let c = v[i];
                if c != 0 {
                    for j in 0..d {
                        v[i - d + j] = subm(v[i - d + j], mulm(c, f[j], m), m);
                    }
                    v[i] = 0;
                }
            }
        }
        v.resize(d, 0);
        Elem(SmallVec::from_vec(v))
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        let m = self.0.m;
        Elem(a.0.iter().zip(&b.0).map(|(&x, &y)| addm(x, y, m)).collect())
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        let m = self.0.m;
        Elem(a.0.iter().zip(&b.0).map(|(&x, &y)| subm(x, y, m)).collect())
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        let m = self.0.m;
        Elem(a.0.iter().map(|&x| subm(0, x, m)).collect())
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        let m = self.0.m;
        let d = self.degree();
        if d == 1 {
            return Elem(smallvec![mulm(a.0[0], b.0[0], m)]);
        }
        let mut prod = vec![0u64; 2 * d - 1];
        for (i, &x) in a.0.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.0.iter().enumerate() {
                prod[i + j] = addm(prod[i + j], mulm(x, y, m), m);
            }
        }
        self.reduce_coeffs(prod)
    }

    pub fn pow(&self, a: &Elem, e: &BigUint) -> Elem {
        let mut acc = self.one();
        for i in (0..e.bits()).rev() {
            acc = self.mul(&acc, &acc);
            if e.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    pub fn pow_u64(&self, a: &Elem, e: u64) -> Elem {
        self.pow(a, &BigUint::from(e))
    }

    /// Multiplicative inverse, if `a` is a unit.
    pub fn inv(&self, a: &Elem) -> Option<Elem> {
        if a.is_zero() {
            return None;
        }
        let m = self.0.m;
        if self.degree() == 1 {
            let g = (a.0[0] as i128).extended_gcd(&(m as i128));
            if g.gcd != 1 {
                return None;
            }
            return Some(self.from_u64(g.x.rem_euclid(m as i128) as u64));
        }
        if self.is_field() {
            let q = BigUint::from(m).pow(self.degree() as u32);
            return Some(self.pow(a, &(q - 2u32)));
        }
        // Small non-field rings: walk the powers of `a` until 1 shows up.
        let one = self.one();
        let cap = self.size().unwrap_or(u64::MAX).min(1 << 24);
        let mut x = a.clone();
        let mut prev = one.clone();
        for _ in 0..cap {
            if x == one {
                return Some(prev);
            }
            if x.is_zero() {
                return None;
            }
            prev = x.clone();
            x = self.mul(&x, a);
            if x == *a {
                return None;
            }
        }
        None
    }

    pub fn is_unit(&self, a: &Elem) -> bool {
        self.inv(a).is_some()
    }

    /// Element with enumeration index `idx` (coefficient `i` is digit `i` base `m`).
    pub fn elem_at(&self, mut idx: u64) -> Elem {
        let m = self.0.m;
        let mut e = self.zero();
        for c in e.0.iter_mut() {
            *c = idx % m;
            idx /= m;
        }
        e
    }

    /// All elements in enumeration order. Panics if the ring size overflows `u64`.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        let n = self.size().expect("ring too large to enumerate");
        (0..n).map(move |i| self.elem_at(i))
    }

    pub fn format_elem(&self, a: &Elem) -> String {
        if self.degree() == 1 {
            a.0[0].to_string()
        } else {
            format_coeffs(&a.0, self.0.var)
        }
    }

    pub fn element(&self, rep: Elem) -> RingElement {
        assert_eq!(rep.0.len(), self.degree(), "representative length");
        RingElement {
            ring: self.clone(),
            rep,
        }
    }

    /// The square-zero local refinement, for `Z/p^2` and `F_p[t]/(t^2)`.
    pub fn local_sq_zero(&self) -> Option<LocalSqZero> {
        let m = self.0.m;
        match &self.0.spec {
            RingSpec::IntegersMod { .. } => {
                let f = factor_integer(m);
                if f.len() == 1 && f[0].1 == 2 {
                    let p = f[0].0;
                    Some(LocalSqZero {
                        p,
                        uniformizer: self.from_u64(p),
                        residue: Ring::prime_field(p).ok()?,
                    })
                } else {
                    None
                }
            }
            RingSpec::DualNumbers { p } => Some(LocalSqZero {
                p: *p,
                uniformizer: self.from_coeffs(&[0, 1]),
                residue: Ring::prime_field(*p).ok()?,
            }),
            RingSpec::QuotientRing { m, modulus } if is_prime(*m) && modulus == &[0, 0, 1] => {
                Some(LocalSqZero {
                    p: *m,
                    uniformizer: self.from_coeffs(&[0, 1]),
                    residue: Ring::prime_field(*m).ok()?,
                })
            }
            _ => None,
        }
    }
}

/// Locality and field-ness of `Z/m[x]/(f)`.
fn quotient_structure(m: u64, modulus: &[u64]) -> (bool, bool) {
    let f = factor_integer(m);
    if f.len() != 1 {
        return (false, false);
    }
    let (p, r) = f[0];
    let base = Ring::prime_field(p).expect("prime");
    let g = Poly::from_u64s(&base, modulus);
    match poly::factor(&g) {
        Ok(fac) => {
            let local = fac.factors.len() == 1;
            (local && r == 1 && fac.factors[0].1 == 1, local)
        }
        Err(_) => (false, false),
    }
}

/// A local ring whose maximal ideal `(π)` squares to zero.
#[derive(Clone, Debug)]
pub struct LocalSqZero {
    /// Residue characteristic.
    pub p: u64,
    /// Generator `π` of the maximal ideal.
    pub uniformizer: Elem,
    pub residue: Ring,
}

/// A value in a finite ring together with its ring.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RingElement {
    ring: Ring,
    rep: Elem,
}

impl RingElement {
    pub fn new(ring: &Ring, v: i64) -> Self {
        ring.element(ring.from_i64(v))
    }

    pub fn rep(&self) -> &Elem {
        &self.rep
    }

    pub fn inverse(&self) -> Option<RingElement> {
        self.ring.inv(&self.rep).map(|r| self.ring.element(r))
    }
}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}", self.ring.format_elem(&self.rep), self.ring)
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.ring.format_elem(&self.rep))
    }
}

macro_rules! elem_binop {
    ($tr:ident, $method:ident, $op:ident) => {
        impl $tr<&RingElement> for &RingElement {
            type Output = RingElement;
            fn $method(self, rhs: &RingElement) -> RingElement {
                assert_eq!(self.ring, rhs.ring, "ring mismatch");
                RingElement {
                    ring: self.ring.clone(),
                    rep: self.ring.$op(&self.rep, &rhs.rep),
                }
            }
        }
        impl $tr<RingElement> for RingElement {
            type Output = RingElement;
            fn $method(self, rhs: RingElement) -> RingElement {
                (&self).$method(&rhs)
            }
        }
    };
}

elem_binop!(Add, add, add);
elem_binop!(Sub, sub, sub);
elem_binop!(Mul, mul, mul);

impl Neg for &RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        RingElement {
            ring: self.ring.clone(),
            rep: self.ring.neg(&self.rep),
        }
    }
}

/// Arithmetic shared by ring elements and square matrices, so the lifting
/// constructions can run on either.
pub trait RingValue: Clone + Eq + Hash + fmt::Debug {
    fn ring(&self) -> &Ring;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    /// Multiplies every entry by the scalar `c`.
    fn scaled(&self, c: &Elem) -> Self;
    /// Applies `f` entry-wise, producing a value over `target`.
    fn map_entries(&self, target: &Ring, f: &dyn Fn(&Elem) -> Elem) -> Self;
    fn is_zero(&self) -> bool;
    /// Ring multiplications spent by one call to [`RingValue::times`].
    fn mul_cost(&self) -> u64 {
        1
    }

    fn pow(&self, e: &BigUint) -> Self {
        let mut acc = self.one_like();
        for i in (0..e.bits()).rev() {
            acc = acc.times(&acc);
            if e.bit(i) {
                acc = acc.times(self);
            }
        }
        acc
    }

    fn pow_u64(&self, e: u64) -> Self {
        self.pow(&BigUint::from(e))
    }

    fn scaled_int(&self, c: i64) -> Self {
        let c = self.ring().from_i64(c);
        self.scaled(&c)
    }
}

impl RingValue for RingElement {
    fn ring(&self) -> &Ring {
        &self.ring
    }
    fn zero_like(&self) -> Self {
        self.ring.element(self.ring.zero())
    }
    fn one_like(&self) -> Self {
        self.ring.element(self.ring.one())
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn scaled(&self, c: &Elem) -> Self {
        self.ring.element(self.ring.mul(&self.rep, c))
    }
    fn map_entries(&self, target: &Ring, f: &dyn Fn(&Elem) -> Elem) -> Self {
        target.element(f(&self.rep))
    }
    fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }
}

/// `a^e` by square-and-multiply.
pub fn elem_pow(a: &RingElement, e: &BigUint) -> RingElement {
    a.pow(e)
}

/// Default step limit for [`potency`] when the caller does not give one.
pub const DEFAULT_POTENCY_LIMIT: u64 = 1 << 22;

/// Smallest `k >= 2` with `a^k = a`, or `None` if the powers of `a` never
/// return to `a`. Brent's cycle detection on `x -> x*a` starting at `a`:
/// `a` is potent exactly when it lies on the cycle (tail length zero), and
/// then `k - 1` is the cycle length.
pub fn potency<V: RingValue>(a: &V, limit: u64) -> Result<Option<u64>> {
    let mut steps = 0u64;
    let mut power = 1u64;
    let mut lambda = 1u64;
    let mut tortoise = a.clone();
    let mut hare = a.times(a);
    while tortoise != hare {
        if power == lambda {
            tortoise = hare.clone();
            power *= 2;
            lambda = 0;
        }
        hare = hare.times(a);
        lambda += 1;
        steps += 1;
        if steps > limit {
            return Err(Error::IterationLimit(limit));
        }
    }
    // Tail length is zero iff a^(1+lambda) = a.
    let back = a.pow_u64(1 + lambda);
    Ok((back == *a).then_some(1 + lambda))
}

/// [`potency`] with [`DEFAULT_POTENCY_LIMIT`]; a limit overrun reads as absent.
pub fn is_potent<V: RingValue>(a: &V) -> Option<u64> {
    potency(a, DEFAULT_POTENCY_LIMIT).ok().flatten()
}

/// Chinese-remainder splitting `Z/m ≅ ∏ Z/p_i^r_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrtSplit {
    pub m: u64,
    pub factors: Vec<(u64, u32)>,
}

impl CrtSplit {
    pub fn component_moduli(&self) -> Vec<u64> {
        self.factors.iter().map(|&(p, r)| p.pow(r)).collect()
    }

    pub fn forward(&self, a: u64) -> Vec<u64> {
        self.component_moduli().into_iter().map(|q| a % q).collect()
    }

    pub fn backward(&self, residues: &[u64]) -> u64 {
        let m = self.m;
        let mut acc = 0u64;
        for (&q, &r) in self.component_moduli().iter().zip(residues) {
            let cofactor = m / q;
            let inv = (cofactor as i128 % q as i128).extended_gcd(&(q as i128)).x;
            let inv = inv.rem_euclid(q as i128) as u64;
            let term = mulm(mulm(r % q, inv, m), cofactor, m);
            acc = addm(acc, term, m);
        }
        acc
    }
}

pub fn crt_split(m: u64) -> Result<CrtSplit> {
    if m < 2 {
        return Err(Error::InvalidRing(format!("modulus {m} must be at least 2")));
    }
    Ok(CrtSplit {
        m,
        factors: factor_integer(m),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum ReductionKind {
    /// `Z/m[x]/(f) -> Z/m'[x]/(f)` with `m' | m`.
    Modulus,
    /// `F_p[t]/(t^2) -> F_p`, keep the constant term.
    ConstantTerm,
}

/// A surjective ring map onto a quotient together with its canonical section.
#[derive(Clone, Debug)]
pub struct Reduction {
    source: Ring,
    target: Ring,
    kind: ReductionKind,
}

impl Reduction {
    pub fn source(&self) -> &Ring {
        &self.source
    }

    pub fn target(&self) -> &Ring {
        &self.target
    }

    /// `Z/p^r -> Z/p^s` for `s <= r`.
    pub fn integers(source: &Ring, target_modulus: u64) -> Result<Reduction> {
        let m = source.characteristic();
        if source.degree() != 1 || m % target_modulus != 0 {
            return Err(Error::RingMismatch(format!(
                "cannot reduce {source} modulo {target_modulus}"
            )));
        }
        let target = if is_prime(target_modulus) {
            Ring::prime_field(target_modulus)?
        } else {
            Ring::integers_mod(target_modulus)?
        };
        Ok(Reduction {
            source: source.clone(),
            target,
            kind: ReductionKind::Modulus,
        })
    }

    pub fn reduce(&self, a: &Elem) -> Elem {
        match self.kind {
            ReductionKind::Modulus => self
                .target
                .reduce_coeffs(a.0.iter().copied().collect()),
            ReductionKind::ConstantTerm => self.target.from_u64(a.0[0]),
        }
    }

    /// Canonical section: the least nonnegative representative.
    pub fn lift(&self, a: &Elem) -> Elem {
        match self.kind {
            ReductionKind::Modulus => self.source.reduce_coeffs(a.0.iter().copied().collect()),
            ReductionKind::ConstantTerm => self.source.from_u64(a.0[0]),
        }
    }

    pub fn reduce_value<V: RingValue>(&self, v: &V) -> V {
        v.map_entries(&self.target, &|e| self.reduce(e))
    }

    pub fn lift_value<V: RingValue>(&self, v: &V) -> V {
        v.map_entries(&self.source, &|e| self.lift(e))
    }
}

/// Reduction onto the residue field of a square-zero local ring, with its section.
pub fn residue_and_lift(ring: &Ring) -> Result<Reduction> {
    let local = ring.local_sq_zero().ok_or_else(|| {
        Error::Unsupported(format!("{ring} is not Z/p^2 or F_p[t]/(t^2)"))
    })?;
    let kind = match ring.spec() {
        RingSpec::IntegersMod { .. } => ReductionKind::Modulus,
        _ => ReductionKind::ConstantTerm,
    };
    Ok(Reduction {
        source: ring.clone(),
        target: local.residue,
        kind,
    })
}

/// `n choose k` as a big integer.
pub(crate) fn binomial(n: u64, k: u64) -> BigUint {
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(m: u64) -> Ring {
        Ring::integers_mod(m).unwrap()
    }

    #[test]
    fn pow_examples() {
        let z4 = z(4);
        let a = RingElement::new(&z4, 7);
        assert_eq!(elem_pow(&a, &BigUint::from(0u32)), RingElement::new(&z4, 1));
        let three = RingElement::new(&z4, 3);
        assert_eq!(elem_pow(&three, &BigUint::from(3u32)), three);
        let z8 = z(8);
        let two = RingElement::new(&z8, 2);
        assert_eq!(elem_pow(&two, &BigUint::from(2u32)), RingElement::new(&z8, 4));
    }

    #[test]
    fn potency_examples() {
        let z4 = z(4);
        assert_eq!(is_potent(&RingElement::new(&z4, 1)), Some(2));
        assert_eq!(is_potent(&RingElement::new(&z4, 3)), Some(3));
        assert_eq!(is_potent(&RingElement::new(&z4, 0)), Some(2));
        assert_eq!(is_potent(&RingElement::new(&z(8), 6)), None);
        assert_eq!(is_potent(&RingElement::new(&z(8), 2)), None);
    }

    #[test]
    fn potency_is_minimal() {
        for m in [4u64, 8, 9, 12, 30] {
            let r = z(m);
            for a in r.elements() {
                let a = r.element(a);
                let brute = (2..=m + 1).find(|&k| a.pow_u64(k) == a);
                assert_eq!(is_potent(&a), brute, "{a:?}");
            }
        }
    }

    #[test]
    fn crt_examples() {
        let s = crt_split(12).unwrap();
        assert_eq!(s.factors, vec![(2, 2), (3, 1)]);
        assert_eq!(crt_split(4).unwrap().factors, vec![(2, 2)]);
        assert_eq!(s.forward(7), vec![3, 1]);
        assert_eq!(s.backward(&[3, 1]), 7);
    }

    #[test]
    fn crt_round_trip_exhaustive() {
        for m in 2..=1000u64 {
            let s = crt_split(m).unwrap();
            assert_eq!(s.factors.iter().map(|&(p, r)| p.pow(r)).product::<u64>(), m);
            for a in 0..m {
                assert_eq!(s.backward(&s.forward(a)), a, "m={m} a={a}");
            }
        }
    }

    #[test]
    fn residue_maps() {
        let z4 = z(4);
        let red = residue_and_lift(&z4).unwrap();
        assert_eq!(red.reduce(&z4.from_u64(3)), red.target().from_u64(1));
        assert_eq!(red.lift(&red.target().from_u64(1)), z4.from_u64(1));

        let d3 = Ring::dual_numbers(3).unwrap();
        let red = residue_and_lift(&d3).unwrap();
        let a = d3.from_coeffs(&[1, 2]);
        assert_eq!(red.reduce(&a), red.target().from_u64(1));
        assert!(residue_and_lift(&z(8)).is_err());
    }

    #[test]
    fn local_sq_zero_invariants() {
        for ring in [z(4), z(9), z(25), Ring::dual_numbers(2).unwrap(), Ring::dual_numbers(5).unwrap()] {
            let l = ring.local_sq_zero().unwrap();
            assert!(ring.mul(&l.uniformizer, &l.uniformizer).is_zero());
            assert_eq!(ring.size(), Some(l.p * l.p));
            let red = residue_and_lift(&ring).unwrap();
            for x in red.target().elements() {
                assert_eq!(red.reduce(&red.lift(&x)), x);
            }
        }
    }

    #[test]
    fn inverses() {
        let z9 = z(9);
        for a in z9.elements() {
            match z9.inv(&a) {
                Some(b) => assert_eq!(z9.mul(&a, &b), z9.one()),
                None => assert_eq!(a.0[0] % 3, 0),
            }
        }
        let gf9 = Ring::galois_field(3, 2).unwrap();
        for a in gf9.elements().skip(1) {
            let b = gf9.inv(&a).unwrap();
            assert_eq!(gf9.mul(&a, &b), gf9.one());
        }
        let d = Ring::dual_numbers(3).unwrap();
        for a in d.elements() {
            match d.inv(&a) {
                Some(b) => assert_eq!(d.mul(&a, &b), d.one()),
                None => assert_eq!(a.0[0], 0),
            }
        }
    }

    #[test]
    fn ring_structure_flags() {
        assert!(z(7).is_field());
        assert!(!z(9).is_field() && z(9).is_local());
        assert!(!z(12).is_local());
        let remark = Ring::quotient(4, &[1, 3, 2, 3, 2, 3, 1]).unwrap();
        assert!(remark.is_local() && !remark.is_field());
        assert_eq!(remark.size(), Some(4096));
        assert!(Ring::galois_field(2, 3).unwrap().is_field());
    }

    #[test]
    fn galois_default_modulus_is_smallest() {
        let gf8 = Ring::galois_field(2, 3).unwrap();
        assert_eq!(gf8.modulus_coeffs(), &[1, 1, 0, 1]);
        let gf4 = Ring::galois_field(2, 2).unwrap();
        assert_eq!(gf4.modulus_coeffs(), &[1, 1, 1]);
        assert_eq!(gf4.to_string(), "GF(2^2)");
        let other = Ring::galois_field_with_modulus(2, &[1, 0, 1, 1]).unwrap();
        assert_eq!(other.to_string(), "GF(2^3;x^3+x^2+1)");
        assert!(Ring::galois_field_with_modulus(2, &[1, 0, 1]).is_err());
    }
}
