#![allow(dead_code)]

use potentsq::matrix::Matrix;
use potentsq::rings::Ring;
use rand::Rng;

pub fn random_matrix<R: Rng>(ring: &Ring, n: usize, rng: &mut R) -> Matrix {
    let size = ring.size().expect("finite ring");
    let entries = (0..n * n).map(|_| ring.elem_at(rng.gen_range(0..size))).collect();
    Matrix::new(ring, n, entries).unwrap()
}

pub fn random_invertible<R: Rng>(ring: &Ring, n: usize, rng: &mut R) -> Matrix {
    loop {
        let m = random_matrix(ring, n, rng);
        if m.is_invertible() {
            return m;
        }
    }
}

/// `W diag(1,..,1,0,..,0) W^-1` with `r` ones.
pub fn random_idempotent<R: Rng>(ring: &Ring, n: usize, rng: &mut R) -> Matrix {
    let r = rng.gen_range(0..=n);
    let mut d = Matrix::zero(ring, n);
    for i in 0..r {
        d.set(i, i, ring.one());
    }
    let w = random_invertible(ring, n, rng);
    &(&w * &d) * &w.inverse().unwrap()
}

/// The 8x8 matrix over `Z/4` from the worked example with `B = 0`.
pub fn worked_example(ring: &Ring) -> Matrix {
    Matrix::from_ints(
        ring,
        &[
            [0, 0, 1, 0, 0, 0, 0, 0],
            [1, 0, 0, 0, 0, 0, 0, 0],
            [0, 1, 1, 0, 0, 0, 0, 0],
            [0, 0, 0, 0, 0, 0, 0, 0],
            [0, 0, 0, 1, 0, 0, 0, 0],
            [0, 0, 0, 0, 1, 0, 0, 0],
            [0, 0, 0, 0, 0, 0, 0, 0],
            [0, 0, 0, 0, 0, 0, 0, 0],
        ],
    )
}
