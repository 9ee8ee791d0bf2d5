//! Dense square matrices over a supported ring.

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rings::{crt_split, Elem, Ring, RingSpec, RingValue};

/// Default step cap for [`Matrix::order_of_invertible`].
pub const DEFAULT_ORDER_CAP: u64 = 1_000_000;

pub type Vector = Vec<Elem>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    ring: Ring,
    n: usize,
    entries: Vec<Elem>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.n, self.n, self.ring)?;
        write!(f, "{self}")
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.entries.iter().map(|e| self.ring.format_elem(e)).collect();
        let w = cells.iter().map(|c| c.len()).max().unwrap_or(1);
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n)
                .map(|j| format!("{:>w$}", cells[i * self.n + j]))
                .collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn new(ring: &Ring, n: usize, entries: Vec<Elem>) -> Result<Matrix> {
        if entries.len() != n * n {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {n}x{n} matrix",
                entries.len()
            )));
        }
        Ok(Matrix {
            ring: ring.clone(),
            n,
            entries,
        })
    }

    pub fn zero(ring: &Ring, n: usize) -> Matrix {
        Matrix {
            ring: ring.clone(),
            n,
            entries: vec![ring.zero(); n * n],
        }
    }

    pub fn identity(ring: &Ring, n: usize) -> Matrix {
        let mut m = Matrix::zero(ring, n);
        for i in 0..n {
            m.entries[i * n + i] = ring.one();
        }
        m
    }

    /// Matrix unit with a one at `(i, j)`, zero-based.
    pub fn unit(ring: &Ring, n: usize, i: usize, j: usize) -> Matrix {
        let mut m = Matrix::zero(ring, n);
        m.set(i, j, ring.one());
        m
    }

    pub fn from_rows(ring: &Ring, rows: Vec<Vec<Elem>>) -> Result<Matrix> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::ShapeMismatch("rows must form a square matrix".into()));
        }
        Matrix::new(ring, n, rows.into_iter().flatten().collect())
    }

    /// Convenience constructor from integer rows; panics if not square.
    pub fn from_ints<R: AsRef<[i64]>>(ring: &Ring, rows: &[R]) -> Matrix {
        let rows = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|&v| ring.from_i64(v)).collect())
            .collect();
        Matrix::from_rows(ring, rows).expect("square integer matrix")
    }

    pub fn from_columns(ring: &Ring, cols: &[Vector]) -> Result<Matrix> {
        let n = cols.len();
        if cols.iter().any(|c| c.len() != n) {
            return Err(Error::ShapeMismatch("columns must form a square matrix".into()));
        }
        let mut m = Matrix::zero(ring, n);
        for (j, c) in cols.iter().enumerate() {
            for (i, v) in c.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        Ok(m)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Elem {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        self.entries[i * self.n + j] = v;
    }

    pub fn entries(&self) -> &[Elem] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<Elem>> {
        self.entries.chunks(self.n.max(1)).map(|r| r.to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.n).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Elem::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        *self == Matrix::identity(&self.ring, self.n)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zero(&self.ring, self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    fn check_compatible(&self, o: &Matrix) {
        assert_eq!(self.ring, o.ring, "matrices over different rings");
        assert_eq!(self.n, o.n, "matrix dimension mismatch");
    }

    pub fn mul_vec(&self, v: &[Elem]) -> Vector {
        let r = &self.ring;
        (0..self.n)
            .map(|i| {
                (0..self.n).fold(r.zero(), |acc, j| r.add(&acc, &r.mul(self.get(i, j), &v[j])))
            })
            .collect()
    }

    /// Square block starting at `(r0, c0)`.
    pub fn submatrix(&self, r0: usize, c0: usize, size: usize) -> Matrix {
        let mut s = Matrix::zero(&self.ring, size);
        for i in 0..size {
            for j in 0..size {
                s.set(i, j, self.get(r0 + i, c0 + j).clone());
            }
        }
        s
    }

    pub fn block_diagonal(ring: &Ring, blocks: &[Matrix]) -> Matrix {
        let n = blocks.iter().map(|b| b.n).sum();
        let mut m = Matrix::zero(ring, n);
        let mut off = 0;
        for b in blocks {
            for i in 0..b.n {
                for j in 0..b.n {
                    m.set(off + i, off + j, b.get(i, j).clone());
                }
            }
            off += b.n;
        }
        m
    }

    /// Companion matrix of a monic `f`: ones on the subdiagonal, `-f_0..-f_{d-1}`
    /// down the last column.
    pub fn companion(f: &Poly) -> Result<Matrix> {
        let d = f.degree().filter(|&d| d >= 1).ok_or(Error::ConstantPolynomial)?;
        if !f.is_monic() {
            return Err(Error::InvalidRing(format!("companion of non-monic {f}")));
        }
        let r = f.field();
        let mut c = Matrix::zero(r, d);
        for i in 1..d {
            c.set(i, i - 1, r.one());
        }
        for i in 0..d {
            c.set(i, d - 1, r.neg(&f.coeff(i)));
        }
        Ok(c)
    }

    /// `f(A)` by Horner's rule.
    pub fn eval_poly(&self, f: &Poly) -> Matrix {
        let mut acc = Matrix::zero(&self.ring, self.n);
        for c in f.coeffs().iter().rev() {
            acc = &acc * self;
            for i in 0..self.n {
                let v = self.ring.add(acc.get(i, i), c);
                acc.set(i, i, v);
            }
        }
        acc
    }

    /// `f(A) v` without forming `f(A)`.
    pub fn apply_poly(&self, f: &Poly, v: &[Elem]) -> Vector {
        let r = &self.ring;
        let mut acc = vec![r.zero(); self.n];
        for c in f.coeffs().iter().rev() {
            acc = self.mul_vec(&acc);
            for (a, x) in acc.iter_mut().zip(v) {
                *a = r.add(a, &r.mul(c, x));
            }
        }
        acc
    }

    /// Inverse by Gauss-Jordan elimination on unit pivots. Exact over fields and
    /// local rings; `Z/m` for composite non-prime-power `m` goes through CRT.
    pub fn inverse(&self) -> Result<Matrix> {
        if let RingSpec::IntegersMod { m } = self.ring.spec() {
            let split = crt_split(*m)?;
            if split.factors.len() > 1 {
                return self.inverse_by_crt();
            }
        }
        let local = self.ring.is_local();
        match gauss_jordan_inverse(self) {
            Some(inv) => Ok(inv),
            None if local => Err(Error::NotInvertible),
            None => Err(Error::Unsupported(format!(
                "inversion over non-local ring {}",
                self.ring
            ))),
        }
    }

    fn inverse_by_crt(&self) -> Result<Matrix> {
        let inverses = self
            .split_crt()?
            .iter()
            .map(Matrix::inverse)
            .collect::<Result<Vec<_>>>()?;
        Matrix::join_crt(&self.ring, &inverses)
    }

    /// Components over `Z/p_i^r_i` of a matrix over `Z/m`.
    pub fn split_crt(&self) -> Result<Vec<Matrix>> {
        let RingSpec::IntegersMod { m } = self.ring.spec() else {
            return Err(Error::Unsupported(format!("CRT split of {}", self.ring)));
        };
        let split = crt_split(*m)?;
        split
            .component_moduli()
            .into_iter()
            .map(|q| {
                let ring = Ring::integers_mod(q)?;
                Ok(self.map_entries(&ring, &|e| ring.from_u64(e.coeffs()[0])))
            })
            .collect()
    }

    /// Inverse of [`Matrix::split_crt`].
    pub fn join_crt(ring: &Ring, parts: &[Matrix]) -> Result<Matrix> {
        let RingSpec::IntegersMod { m } = ring.spec() else {
            return Err(Error::Unsupported(format!("CRT join into {ring}")));
        };
        let split = crt_split(*m)?;
        let n = parts.first().map_or(0, Matrix::dim);
        if parts.len() != split.factors.len() || parts.iter().any(|p| p.dim() != n) {
            return Err(Error::ShapeMismatch("CRT components do not match".into()));
        }
        let entries = (0..n * n)
            .map(|idx| {
                let residues: Vec<u64> = parts.iter().map(|p| p.entries[idx].coeffs()[0]).collect();
                ring.from_u64(split.backward(&residues))
            })
            .collect();
        Matrix::new(ring, n, entries)
    }

    pub fn is_invertible(&self) -> bool {
        self.inverse().is_ok()
    }

    /// Least `d >= 1` with `A^d = Id`.
    pub fn order_of_invertible(&self) -> Result<u64> {
        self.order_of_invertible_with_cap(DEFAULT_ORDER_CAP)
    }

    pub fn order_of_invertible_with_cap(&self, cap: u64) -> Result<u64> {
        self.inverse()?;
        let mut x = self.clone();
        for d in 1..=cap {
            if x.is_identity() {
                return Ok(d);
            }
            x = &x * self;
        }
        Err(Error::IterationLimit(cap))
    }

    fn require_field(&self) -> Result<()> {
        if self.ring.is_field() {
            Ok(())
        } else {
            Err(Error::NotAField(self.ring.to_string()))
        }
    }

    pub fn rank(&self) -> Result<usize> {
        self.require_field()?;
        Ok(rref(&self.ring, self.rows()).1.len())
    }

    /// Kernel basis (standard null-space vectors, one per free column) and image
    /// basis (the pivot columns of `A`).
    pub fn kernel_and_image_basis(&self) -> Result<(Vec<Vector>, Vec<Vector>)> {
        self.require_field()?;
        let r = &self.ring;
        let (red, pivots) = rref(r, self.rows());
        let mut kernel = Vec::new();
        for free in (0..self.n).filter(|c| !pivots.contains(c)) {
            let mut v = vec![r.zero(); self.n];
            v[free] = r.one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = r.neg(&red[row][free]);
            }
            kernel.push(v);
        }
        let image = pivots.iter().map(|&c| self.column(c)).collect();
        Ok((kernel, image))
    }
}

/// Reduced row echelon form over a field; returns the rows and pivot columns.
pub(crate) fn rref(r: &Ring, mut rows: Vec<Vector>) -> (Vec<Vector>, Vec<usize>) {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == nrows {
            break;
        }
        let Some(p) = (row..nrows).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(row, p);
        let inv = r.inv(&rows[row][col]).expect("field pivot");
        for x in rows[row].iter_mut() {
            *x = r.mul(x, &inv);
        }
        for i in 0..nrows {
            if i != row && !rows[i][col].is_zero() {
                let f = rows[i][col].clone();
                for j in 0..ncols {
                    let v = r.sub(&rows[i][j], &r.mul(&f, &rows[row][j]));
                    rows[i][j] = v;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    (rows, pivots)
}

/// Linear independence of vectors over a field.
pub(crate) fn rank_of(r: &Ring, vecs: &[Vector]) -> usize {
    if vecs.is_empty() {
        return 0;
    }
    rref(r, vecs.to_vec()).1.len()
}

fn gauss_jordan_inverse(a: &Matrix) -> Option<Matrix> {
    let r = &a.ring;
    let n = a.n;
    let mut m = a.rows();
    let mut inv = Matrix::identity(r, n).rows();
    for col in 0..n {
        let (p, pinv) = (col..n).find_map(|i| r.inv(&m[i][col]).map(|u| (i, u)))?;
        m.swap(col, p);
        inv.swap(col, p);
        for j in 0..n {
            m[col][j] = r.mul(&m[col][j], &pinv);
            inv[col][j] = r.mul(&inv[col][j], &pinv);
        }
        for i in 0..n {
            if i != col && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for j in 0..n {
                    m[i][j] = r.sub(&m[i][j], &r.mul(&f, &m[col][j]));
                    inv[i][j] = r.sub(&inv[i][j], &r.mul(&f, &inv[col][j]));
                }
            }
        }
    }
    let out = Matrix::from_rows(r, inv).ok()?;
    debug_assert!((&out * a).is_identity() && (a * &out).is_identity());
    Some(out)
}

impl Add<&Matrix> for &Matrix {
    type Output = Matrix;
    fn add(self, o: &Matrix) -> Matrix {
        self.check_compatible(o);
        let r = &self.ring;
        Matrix {
            ring: r.clone(),
            n: self.n,
            entries: self.entries.iter().zip(&o.entries).map(|(a, b)| r.add(a, b)).collect(),
        }
    }
}

impl Sub<&Matrix> for &Matrix {
    type Output = Matrix;
    fn sub(self, o: &Matrix) -> Matrix {
        self.check_compatible(o);
        let r = &self.ring;
        Matrix {
            ring: r.clone(),
            n: self.n,
            entries: self.entries.iter().zip(&o.entries).map(|(a, b)| r.sub(a, b)).collect(),
        }
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        let r = &self.ring;
        Matrix {
            ring: r.clone(),
            n: self.n,
            entries: self.entries.iter().map(|a| r.neg(a)).collect(),
        }
    }
}

impl Mul<&Matrix> for &Matrix {
    type Output = Matrix;
    fn mul(self, o: &Matrix) -> Matrix {
        self.check_compatible(o);
        let r = &self.ring;
        let n = self.n;
        let mut out = vec![r.zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = &self.entries[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let idx = i * n + j;
                    out[idx] = r.add(&out[idx], &r.mul(a, &o.entries[k * n + j]));
                }
            }
        }
        Matrix {
            ring: r.clone(),
            n,
            entries: out,
        }
    }
}

macro_rules! owned_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<Matrix> for Matrix {
            type Output = Matrix;
            fn $method(self, o: Matrix) -> Matrix {
                (&self).$method(&o)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl RingValue for Matrix {
    fn ring(&self) -> &Ring {
        &self.ring
    }
    fn zero_like(&self) -> Self {
        Matrix::zero(&self.ring, self.n)
    }
    fn one_like(&self) -> Self {
        Matrix::identity(&self.ring, self.n)
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
        Matrix {
            ring: self.ring.clone(),
            n: self.n,
            entries: self.entries.iter().map(|a| self.ring.mul(a, c)).collect(),
        }
    }
    fn map_entries(&self, target: &Ring, f: &dyn Fn(&Elem) -> Elem) -> Self {
        Matrix {
            ring: target.clone(),
            n: self.n,
            entries: self.entries.iter().map(f).collect(),
        }
    }
    fn is_zero(&self) -> bool {
        Matrix::is_zero(self)
    }
    fn mul_cost(&self) -> u64 {
        (self.n as u64).pow(3)
    }
}
