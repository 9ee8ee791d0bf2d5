//! Dense univariate polynomials over a finite field, with exact factoring.
//!
//! Factoring runs squarefree decomposition, then distinct-degree splitting,
//! then trial division of each equal-degree part by monic candidates in
//! enumeration order. Every target field here is tiny, so the enumeration is
//! cheap and its output easy to check by hand.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::rings::{format_coeffs, Elem, Ring};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: Ring,
    coeffs: Vec<Elem>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({} over {})", self, self.field)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.degree() == 1 {
            let c: Vec<u64> = self.coeffs.iter().map(|e| e.coeffs()[0]).collect();
            return f.write_str(&format_coeffs(&c, 'x'));
        }
        // Coefficients in a proper extension are written in `a`, bracketed when they are sums.
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = format_coeffs(c.coeffs(), 'a');
            let cs = if cs == "1" && i > 0 {
                String::new()
            } else if cs.contains('+') {
                format!("({cs})")
            } else {
                cs
            };
            terms.push(match i {
                0 => cs,
                1 => format!("{cs}x"),
                _ => format!("{cs}x^{i}"),
            });
        }
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join("+"))
        }
    }
}

/// Polynomials compare by degree first, then coefficient-wise from the top.
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Poly {
    pub fn new(field: &Ring, mut coeffs: Vec<Elem>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn from_u64s(field: &Ring, coeffs: &[u64]) -> Poly {
        Poly::new(field, coeffs.iter().map(|&c| field.from_u64(c)).collect())
    }

    pub fn from_i64s(field: &Ring, coeffs: &[i64]) -> Poly {
        Poly::new(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn zero(field: &Ring) -> Poly {
        Poly::new(field, Vec::new())
    }

    pub fn one(field: &Ring) -> Poly {
        Poly::new(field, vec![field.one()])
    }

    pub fn x(field: &Ring) -> Poly {
        Poly::new(field, vec![field.zero(), field.one()])
    }

    pub fn constant(field: &Ring, c: Elem) -> Poly {
        Poly::new(field, vec![c])
    }

    pub fn monomial(field: &Ring, c: Elem, deg: usize) -> Poly {
        let mut v = vec![field.zero(); deg + 1];
        v[deg] = c;
        Poly::new(field, v)
    }

    pub fn field(&self) -> &Ring {
        &self.field
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == self.field.one()
    }

    pub fn leading(&self) -> Option<&Elem> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Some(&self.field.one())
    }

    /// `(lead, self / lead)`; panics on zero.
    pub fn into_monic(&self) -> (Elem, Poly) {
        let lead = self.leading().expect("zero polynomial has no leading coefficient").clone();
        let inv = self.field.inv(&lead).expect("field coefficient");
        (lead, self.scale(&inv))
    }

    pub fn monic(&self) -> Poly {
        self.into_monic().1
    }

    pub fn scale(&self, c: &Elem) -> Poly {
        Poly::new(
            &self.field,
            self.coeffs.iter().map(|a| self.field.mul(a, c)).collect(),
        )
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let v = (0..n)
            .map(|i| self.field.add(&self.coeff(i), &o.coeff(i)))
            .collect();
        Poly::new(&self.field, v)
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let v = (0..n)
            .map(|i| self.field.sub(&self.coeff(i), &o.coeff(i)))
            .collect();
        Poly::new(&self.field, v)
    }

    pub fn neg(&self) -> Poly {
        Poly::new(
            &self.field,
            self.coeffs.iter().map(|a| self.field.neg(a)).collect(),
        )
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero(&self.field);
        }
        let f = &self.field;
        let mut v = vec![f.zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] = f.add(&v[i + j], &f.mul(a, b));
            }
        }
        Poly::new(f, v)
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(&self.field);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let f = &self.field;
        let dd = d.degree().expect("division by zero polynomial");
        let inv = f.inv(d.leading().unwrap()).expect("field coefficient");
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Poly::zero(f), self.clone());
        }
        let mut q = vec![f.zero(); r.len() - dd];
        for i in (dd..r.len()).rev() {
            let c = f.mul(&r[i], &inv);
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                let k = i - dd + j;
                r[k] = f.sub(&r[k], &f.mul(&c, dc));
            }
            q[i - dd] = c;
        }
        r.truncate(dd);
        (Poly::new(f, q), Poly::new(f, r))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.div_rem(d).1
    }

    /// Exact quotient; panics if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Poly {
        let (q, r) = self.div_rem(d);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn divides(&self, other: &Poly) -> bool {
        other.rem(self).is_zero()
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, o: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    pub fn derivative(&self) -> Poly {
        let f = &self.field;
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| f.mul(c, &f.from_u64(i as u64)))
            .collect();
        Poly::new(f, v)
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, e: &BigUint, m: &Poly) -> Poly {
        let mut acc = Poly::one(&self.field).rem(m);
        let base = self.rem(m);
        for i in (0..e.bits()).rev() {
            acc = acc.mul(&acc).rem(m);
            if e.bit(i) {
                acc = acc.mul(&base).rem(m);
            }
        }
        acc
    }

    pub fn eval(&self, x: &Elem) -> Elem {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
    }

    fn field_order(&self) -> BigUint {
        BigUint::from(self.field.characteristic()).pow(self.field.degree() as u32)
    }

    /// For `f = g(x^p)`, returns `g` with every coefficient replaced by its p-th root.
    fn pth_root(&self) -> Poly {
        let f = &self.field;
        let p = f.characteristic() as usize;
        // c^(q/p) is the p-th root of c in F_q.
        let e = self.field_order() / BigUint::from(p as u64);
        let v = self
            .coeffs
            .iter()
            .step_by(p)
            .map(|c| f.pow(c, &e))
            .collect();
        Poly::new(f, v)
    }
}

/// All monic polynomials of degree `d` in enumeration order.
pub fn monic_polys(field: &Ring, d: usize) -> impl Iterator<Item = Poly> + '_ {
    let q = field.size().expect("enumerable field");
    let total = q.checked_pow(d as u32).expect("too many candidates");
    (0..total).map(move |mut idx| {
        let mut v = Vec::with_capacity(d + 1);
        for _ in 0..d {
            v.push(field.elem_at(idx % q));
            idx /= q;
        }
        v.push(field.one());
        Poly::new(field, v)
    })
}

/// The first monic irreducible of degree `d` in enumeration order.
pub fn smallest_irreducible(field: &Ring, d: usize) -> Poly {
    monic_polys(field, d)
        .find(|f| is_irreducible(f).unwrap_or(false))
        .expect("irreducibles exist in every degree")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: Elem,
    /// Monic irreducible factors with multiplicities, sorted by degree then coefficients.
    pub factors: Vec<(Poly, u32)>,
}

impl Factorization {
    pub fn product(&self, field: &Ring) -> Poly {
        self.factors
            .iter()
            .fold(Poly::constant(field, self.unit.clone()), |acc, (g, e)| {
                acc.mul(&g.pow(*e))
            })
    }
}

fn squarefree(f: &Poly) -> Vec<(Poly, u32)> {
    let mut out = Vec::new();
    let fp = f.derivative();
    let mut c = f.gcd(&fp);
    let mut w = f.div_exact(&c);
    let mut i = 1u32;
    while !w.is_one() {
        let y = w.gcd(&c);
        let fac = w.div_exact(&y);
        if !fac.is_one() {
            out.push((fac, i));
        }
        w = y;
        c = c.div_exact(&w);
        i += 1;
    }
    if !c.is_one() {
        let p = f.field().characteristic() as u32;
        for (g, j) in squarefree(&c.pth_root()) {
            out.push((g, j * p));
        }
    }
    out
}

/// Splits a squarefree monic `f` into products of same-degree irreducibles.
fn distinct_degree(f: &Poly) -> Vec<(Poly, usize)> {
    let field = f.field();
    let q = f.field_order();
    let x = Poly::x(field);
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = x.clone();
    let mut d = 1usize;
    while rest.degree().unwrap_or(0) >= 2 * d {
        h = h.pow_mod(&q, &rest);
        let g = rest.gcd(&h.sub(&x));
        if !g.is_one() {
            rest = rest.div_exact(&g);
            h = h.rem(&rest);
            out.push((g, d));
        }
        d += 1;
    }
    if let Some(deg) = rest.degree().filter(|&k| k >= 1) {
        out.push((rest, deg));
    }
    out
}

/// Splits a product of distinct monic irreducibles of degree `d`.
fn equal_degree(f: &Poly, d: usize) -> Vec<Poly> {
    if f.degree() == Some(d) {
        return vec![f.clone()];
    }
    let mut out = Vec::new();
    let mut rest = f.clone();
    for g in monic_polys(f.field(), d) {
        if rest.degree() == Some(d) {
            break;
        }
        if g.divides(&rest) {
            rest = rest.div_exact(&g);
            out.push(g);
        }
    }
    out.push(rest);
    out
}

/// Complete factorization into monic irreducibles.
pub fn factor(f: &Poly) -> Result<Factorization> {
    if !f.field().is_field() {
        return Err(Error::NotAField(f.field().to_string()));
    }
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (unit, monic) = f.into_monic();
    let mut acc: BTreeMap<Poly, u32> = BTreeMap::new();
    if monic.degree() > Some(0) {
        for (part, mult) in squarefree(&monic) {
            for (same, d) in distinct_degree(&part) {
                for g in equal_degree(&same, d) {
                    *acc.entry(g).or_insert(0) += mult;
                }
            }
        }
    }
    Ok(Factorization {
        unit,
        factors: acc.into_iter().collect(),
    })
}

pub fn is_irreducible(f: &Poly) -> Result<bool> {
    match f.degree() {
        None | Some(0) => Err(Error::ConstantPolynomial),
        Some(deg) => {
            let fac = factor(f)?;
            Ok(fac.factors.len() == 1
                && fac.factors[0].1 == 1
                && fac.factors[0].0.degree() == Some(deg))
        }
    }
}

pub fn poly_factor(f: &Poly) -> Result<Factorization> {
    factor(f)
}
