//! Primary rational canonical form over a finite field, with the similarity
//! transform, plus the canonical frame of a square-zero matrix.
//!
//! Invariant factors come from the Smith form of `xI - A` over `F[x]`. The row
//! transforms are accumulated as their inverse `U^-1`; column `i` of `U^-1`,
//! evaluated at `A`, generates the cyclic summand `F[x]/(d_i)`. Each summand
//! is then split into primary parts: for `d = q * h` with `q = p^e` coprime to
//! `h`, the vector `h(A) w` generates the `q`-primary component.

use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::{rank_of, rref, Matrix, Vector};
use crate::poly::{self, Poly};
use crate::rings::Ring;

/// Which case of the field decomposition a block falls under.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BlockClass {
    /// `q(0) != 0`: the companion block is invertible.
    Invertible,
    /// `q = x^s` with `s >= 2`: a nilpotent Jordan block.
    NilpotentJordan,
    /// `q = x`: a 1x1 zero block.
    Zero,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementaryDivisor {
    pub prime: Poly,
    pub exponent: u32,
}

impl ElementaryDivisor {
    pub fn power(&self) -> Poly {
        self.prime.pow(self.exponent)
    }

    pub fn degree(&self) -> usize {
        self.prime.degree().unwrap_or(0) * self.exponent as usize
    }

    pub fn class(&self) -> BlockClass {
        if self.prime != Poly::x(self.prime.field()) {
            BlockClass::Invertible
        } else if self.exponent >= 2 {
            BlockClass::NilpotentJordan
        } else {
            BlockClass::Zero
        }
    }
}

impl fmt::Display for ElementaryDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.power())
    }
}

/// Elementary divisors in block order: invertible blocks, then `x^s` with
/// `s >= 2`, then the `x` blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementaryDivisors(pub Vec<ElementaryDivisor>);

impl ElementaryDivisors {
    pub fn iter(&self) -> std::slice::Iter<'_, ElementaryDivisor> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn powers(&self) -> Vec<Poly> {
        self.0.iter().map(ElementaryDivisor::power).collect()
    }
}

#[derive(Clone, Debug)]
pub struct PrimaryRcf {
    /// `Q^-1 A Q` is the block diagonal of `blocks`.
    pub q: Matrix,
    pub blocks: Vec<Matrix>,
    pub divisors: ElementaryDivisors,
}

impl PrimaryRcf {
    pub fn block_diagonal(&self) -> Matrix {
        Matrix::block_diagonal(self.q.ring(), &self.blocks)
    }

    /// Starting row/column of each block.
    pub fn offsets(&self) -> Vec<usize> {
        self.blocks
            .iter()
            .scan(0, |off, b| {
                let o = *off;
                *off += b.dim();
                Some(o)
            })
            .collect()
    }
}

fn require_field(a: &Matrix) -> Result<()> {
    if a.ring().is_field() {
        Ok(())
    } else {
        Err(Error::NotAField(a.ring().to_string()))
    }
}

/// Smith form of `xI - A`: the diagonal and the accumulated `U^-1`.
fn smith_of_characteristic_matrix(a: &Matrix) -> (Vec<Poly>, Vec<Vec<Poly>>) {
    let f = a.ring();
    let n = a.dim();
    let mut m: Vec<Vec<Poly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = Poly::constant(f, f.neg(a.get(i, j)));
                    if i == j {
                        c.add(&Poly::x(f))
                    } else {
                        c
                    }
                })
                .collect()
        })
        .collect();
    let mut uinv: Vec<Vec<Poly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Poly::one(f) } else { Poly::zero(f) })
                .collect()
        })
        .collect();

    for t in 0..n {
        loop {
            let pivot = (t..n)
                .flat_map(|i| (t..n).map(move |j| (i, j)))
                .filter(|&(i, j)| !m[i][j].is_zero())
                .min_by_key(|&(i, j)| m[i][j].degree());
            let Some((pi, pj)) = pivot else { break };
            if pi != t {
                m.swap(pi, t);
                for row in uinv.iter_mut() {
                    row.swap(pi, t);
                }
            }
            if pj != t {
                for row in m.iter_mut() {
                    row.swap(pj, t);
                }
            }
            let mut clean = true;
            for i in t + 1..n {
                if m[i][t].is_zero() {
                    continue;
                }
                let (q, r) = m[i][t].div_rem(&m[t][t]);
                for j in t..n {
                    let v = m[i][j].sub(&q.mul(&m[t][j]));
                    m[i][j] = v;
                }
                for row in uinv.iter_mut() {
                    let v = row[t].add(&q.mul(&row[i]));
                    row[t] = v;
                }
                clean &= r.is_zero();
            }
            for j in t + 1..n {
                if m[t][j].is_zero() {
                    continue;
                }
                let (q, r) = m[t][j].div_rem(&m[t][t]);
                for row in m.iter_mut().skip(t) {
                    let v = row[j].sub(&q.mul(&row[t]));
                    row[j] = v;
                }
                clean &= r.is_zero();
            }
            if !clean {
                continue;
            }
            let bad = (t + 1..n)
                .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !m[t][t].divides(&m[i][j]));
            if let Some((i, _)) = bad {
                for j in t..n {
                    let v = m[t][j].add(&m[i][j]);
                    m[t][j] = v;
                }
                for row in uinv.iter_mut() {
                    let v = row[i].sub(&row[t]);
                    row[i] = v;
                }
                continue;
            }
            break;
        }
        if !m[t][t].is_zero() {
            let (lead, monic) = m[t][t].into_monic();
            m[t][t] = monic;
            for row in uinv.iter_mut() {
                row[t] = row[t].scale(&lead);
            }
        }
    }
    let diag = (0..n).map(|i| m[i][i].clone()).collect();
    (diag, uinv)
}

/// Monic invariant factors `f_1 | f_2 | ...` of `A`, constants dropped.
pub fn invariant_factors(a: &Matrix) -> Result<Vec<Poly>> {
    require_field(a)?;
    let (diag, _) = smith_of_characteristic_matrix(a);
    Ok(diag.into_iter().filter(|d| d.degree() > Some(0)).collect())
}

fn block_order_key(d: &ElementaryDivisor) -> (BlockClass, std::cmp::Reverse<usize>, Poly) {
    (d.class(), std::cmp::Reverse(d.degree()), d.power())
}

/// Primary rational canonical form with transform `Q`.
///
/// A matrix that is already block diagonal in companion blocks of prime-power
/// polynomials, with the block classes in order, is returned unchanged with
/// `Q = Id`. Otherwise blocks are sorted by class, then by decreasing degree,
/// then by polynomial order.
pub fn primary_rcf(a: &Matrix) -> Result<PrimaryRcf> {
    require_field(a)?;
    if let Some(rcf) = recognize_primary_rcf(a) {
        return Ok(rcf);
    }
    let f = a.ring();
    let n = a.dim();
    let (diag, uinv) = smith_of_characteristic_matrix(a);

    let mut parts: Vec<(ElementaryDivisor, Vector)> = Vec::new();
    for (i, d) in diag.iter().enumerate() {
        if d.degree() == Some(0) {
            continue;
        }
        // w = sum_j (U^-1)_{j,i}(A) e_j
        let mut w = vec![f.zero(); n];
        for (j, row) in uinv.iter().enumerate() {
            let mut e = vec![f.zero(); n];
            e[j] = f.one();
            let v = a.apply_poly(&row[i], &e);
            for (x, y) in w.iter_mut().zip(v) {
                *x = f.add(x, &y);
            }
        }
        for (prime, exponent) in poly::factor(d)?.factors {
            let ed = ElementaryDivisor { prime, exponent };
            let h = d.div_exact(&ed.power());
            parts.push((ed.clone(), a.apply_poly(&h, &w)));
        }
    }
    parts.sort_by(|x, y| block_order_key(&x.0).cmp(&block_order_key(&y.0)));

    let mut cols = Vec::with_capacity(n);
    let mut blocks = Vec::new();
    let mut divisors = Vec::new();
    for (ed, g) in parts {
        let mut v = g;
        for _ in 0..ed.degree() {
            let next = a.mul_vec(&v);
            cols.push(v);
            v = next;
        }
        blocks.push(Matrix::companion(&ed.power())?);
        divisors.push(ed);
    }
    let q = Matrix::from_columns(f, &cols)?;
    let rcf = PrimaryRcf {
        q,
        blocks,
        divisors: ElementaryDivisors(divisors),
    };
    let qinv = rcf.q.inverse()?;
    if &(&qinv * a) * &rcf.q != rcf.block_diagonal() {
        return Err(Error::LiftIdentityFailed(
            "similarity transform does not reproduce the canonical form".into(),
        ));
    }
    Ok(rcf)
}

/// Reads off the primary form of a matrix that is already in it.
pub fn recognize_primary_rcf(a: &Matrix) -> Option<PrimaryRcf> {
    let f = a.ring();
    let n = a.dim();
    if n == 0 {
        return None;
    }
    let mut ends = Vec::new();
    for i in 0..n {
        if i + 1 == n || a.get(i + 1, i).is_zero() {
            ends.push(i + 1);
        }
    }
    let mut blocks = Vec::new();
    let mut divisors = Vec::new();
    let mut start = 0;
    for &end in &ends {
        let d = end - start;
        let mut coeffs = Vec::with_capacity(d + 1);
        for i in 0..d {
            coeffs.push(f.neg(a.get(start + i, end - 1)));
        }
        coeffs.push(f.one());
        let power = Poly::new(f, coeffs);
        let block = Matrix::companion(&power).ok()?;
        if a.submatrix(start, start, d) != block {
            return None;
        }
        let fac = poly::factor(&power).ok()?;
        if fac.factors.len() != 1 {
            return None;
        }
        let (prime, exponent) = fac.factors[0].clone();
        blocks.push(block);
        divisors.push(ElementaryDivisor { prime, exponent });
        start = end;
    }
    let candidate = PrimaryRcf {
        q: Matrix::identity(f, n),
        blocks,
        divisors: ElementaryDivisors(divisors),
    };
    let ordered = candidate
        .divisors
        .0
        .windows(2)
        .all(|w| w[0].class() <= w[1].class());
    (ordered && candidate.block_diagonal() == *a).then_some(candidate)
}

/// `S` with `S^-1 A S = [[0, I_r, 0], [0, 0, 0], [0, 0, 0]]` for a square-zero `A`.
///
/// Columns of `S`: the pivot columns `A e_j` (an image basis), then the
/// standard vectors `e_j` mapping onto them, then kernel vectors completing
/// the image basis to a kernel basis.
pub fn square_zero_frame(a: &Matrix) -> Result<(Matrix, usize)> {
    require_field(a)?;
    if !(a * a).is_zero() {
        return Err(Error::NotSquareZero);
    }
    let f = a.ring();
    let n = a.dim();
    let (_, pivots) = rref(f, a.rows());
    let (kernel, _) = a.kernel_and_image_basis()?;
    let r = pivots.len();
    let image: Vec<Vector> = pivots.iter().map(|&j| a.column(j)).collect();
    let preimages: Vec<Vector> = pivots
        .iter()
        .map(|&j| {
            let mut e = vec![f.zero(); n];
            e[j] = f.one();
            e
        })
        .collect();
    let mut ker_basis = image.clone();
    for v in kernel {
        let mut trial = ker_basis.clone();
        trial.push(v.clone());
        if rank_of(f, &trial) == trial.len() {
            ker_basis.push(v);
        }
    }
    let mut cols = image;
    cols.extend(preimages);
    cols.extend(ker_basis.into_iter().skip(r));
    let s = Matrix::from_columns(f, &cols)?;
    Ok((s, r))
}

/// The regular partner `B = S [[0,0,0],[I_r,0,0],[0,0,0]] S^-1` of a square-zero
/// `A`: `ABA = A`, `BAB = B`, `B^2 = 0`.
pub fn square_zero_partner(a: &Matrix) -> Result<Matrix> {
    let (s, r) = square_zero_frame(a)?;
    let f = a.ring();
    let mut j = Matrix::zero(f, a.dim());
    for i in 0..r {
        j.set(r + i, i, f.one());
    }
    Ok(&(&s * &j) * &s.inverse()?)
}

/// Block pattern `[[0, I_r, 0], ...]` that `square_zero_frame` targets.
pub fn square_zero_pattern(ring: &Ring, n: usize, r: usize) -> Matrix {
    let mut m = Matrix::zero(ring, n);
    for i in 0..r {
        m.set(i, r + i, ring.one());
    }
    m
}

impl PrimaryRcf {
    /// Checks `Q^-1 A Q` against the block diagonal.
    pub fn reproduces(&self, a: &Matrix) -> bool {
        match self.q.inverse() {
            Ok(qinv) => &(&qinv * a) * &self.q == self.block_diagonal(),
            Err(_) => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::Ring;

    fn gf(p: u64) -> Ring {
        Ring::prime_field(p).unwrap()
    }

    /// det(xI - A) by cofactor expansion.
    fn charpoly_laplace(a: &Matrix) -> Poly {
        let f = a.ring();
        let n = a.dim();
        let m: Vec<Vec<Poly>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let c = Poly::constant(f, f.neg(a.get(i, j)));
                        if i == j {
                            c.add(&Poly::x(f))
                        } else {
                            c
                        }
                    })
                    .collect()
            })
            .collect();
        fn det(m: &[Vec<Poly>], f: &Ring) -> Poly {
            if m.len() == 1 {
                return m[0][0].clone();
            }
            let mut acc = Poly::zero(f);
            for j in 0..m.len() {
                let minor: Vec<Vec<Poly>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, p)| p.clone()).collect())
                    .collect();
                let t = m[0][j].mul(&det(&minor, f));
                acc = if j % 2 == 0 { acc.add(&t) } else { acc.sub(&t) };
            }
            acc
        }
        det(&m, f)
    }

    #[test]
    fn companion_charpoly() {
        let f3 = gf(3);
        for d in 1..=4 {
            for p in poly::monic_polys(&f3, d).step_by(7) {
                assert_eq!(charpoly_laplace(&Matrix::companion(&p).unwrap()), p);
            }
        }
    }

    #[test]
    fn invariant_factor_examples() {
        let f2 = gf(2);
        let c = Matrix::companion(&Poly::from_u64s(&f2, &[0, 0, 1])).unwrap();
        assert_eq!(invariant_factors(&c).unwrap(), vec![Poly::from_u64s(&f2, &[0, 0, 1])]);
        assert_eq!(
            invariant_factors(&Matrix::zero(&f2, 2)).unwrap(),
            vec![Poly::x(&f2), Poly::x(&f2)]
        );
        let f3 = gf(3);
        let d = Matrix::from_ints(&f3, &[[1, 0], [0, 2]]);
        assert_eq!(invariant_factors(&d).unwrap(), vec![Poly::from_u64s(&f3, &[2, 0, 1])]);
    }

    #[test]
    fn identity_is_recognized() {
        let f3 = gf(3);
        let rcf = primary_rcf(&Matrix::identity(&f3, 3)).unwrap();
        assert!(rcf.q.is_identity());
        assert_eq!(rcf.divisors.powers(), vec![Poly::from_u64s(&f3, &[2, 1]); 3]);
    }

    #[test]
    fn general_route_reproduces() {
        let f3 = gf(3);
        let a = Matrix::from_ints(&f3, &[[1, 2, 0, 1], [0, 1, 1, 0], [2, 0, 0, 1], [1, 1, 1, 1]]);
        let rcf = primary_rcf(&a).unwrap();
        assert!(rcf.reproduces(&a));
        let product = rcf.divisors.powers().iter().fold(Poly::one(&f3), |acc, p| acc.mul(p));
        assert_eq!(product, charpoly_laplace(&a));
    }

    #[test]
    fn frame_examples() {
        let f2 = gf(2);
        let (s, r) = square_zero_frame(&Matrix::zero(&f2, 3)).unwrap();
        assert!(s.is_identity());
        assert_eq!(r, 0);
        let (s, r) = square_zero_frame(&Matrix::from_ints(&f2, &[[0, 1], [0, 0]])).unwrap();
        assert!(s.is_identity());
        assert_eq!(r, 1);
        let f3 = gf(3);
        let a = Matrix::from_ints(&f3, &[[1, 1], [2, 2]]);
        let (s, r) = square_zero_frame(&a).unwrap();
        assert_eq!(r, 1);
        assert_eq!(&(&s.inverse().unwrap() * &a) * &s, square_zero_pattern(&f3, 2, 1));
        let b = square_zero_partner(&a).unwrap();
        assert_eq!(&(&a * &b) * &a, a);
        assert_eq!(&(&b * &a) * &b, b);
        assert!((&b * &b).is_zero());
        assert_eq!(
            square_zero_frame(&Matrix::identity(&f3, 2)).unwrap_err(),
            Error::NotSquareZero
        );
    }
}
