//! Lifting idempotents, square-zero matrices and potent elements from a
//! residue ring.

use num_bigint::BigUint;
use potentsq::decompose::{lift_idempotent, lift_potent, lift_square_zero};
use potentsq::matrix::Matrix;
use potentsq::parse::parse_ring;
use potentsq::rings::{residue_and_lift, Reduction, RingElement};

fn main() -> potentsq::Result<()> {
    let z4 = parse_ring("Z/4")?;
    let red = residue_and_lift(&z4)?;
    let e0 = Matrix::from_ints(&z4, &[[3, 2], [2, 0]]);
    let e = lift_idempotent(&e0, &red)?;
    println!("idempotent lift of\n{e0}is\n{e}");

    let n0 = Matrix::from_ints(red.target(), &[[0, 1], [0, 0]]);
    let n = lift_square_zero(&n0, &Matrix::identity(&z4, 2), &red)?;
    println!("square-zero lift of\n{n0}is\n{n}");

    let z8 = parse_ring("Z/8")?;
    let mod4 = Reduction::integers(&z8, 4)?;
    let out = lift_potent(&RingElement::new(&z8, 5), &BigUint::from(2u32), 2, &mod4)?;
    println!(
        "5 in Z/8 is 2-potent mod 4; T = {}, E = {}, lift {} with {}^{} = {}",
        out.t_sum, out.idempotent, out.value, out.value, out.exponent, out.value
    );
    Ok(())
}
