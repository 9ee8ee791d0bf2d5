//! Companion matrices, inverses, and multiplicative orders.

use potentsq::matrix::Matrix;
use potentsq::parse::parse_ring;
use potentsq::poly::Poly;

fn main() -> potentsq::Result<()> {
    let f2 = parse_ring("GF(2)")?;
    for coeffs in [[1u64, 0, 1, 1], [1, 1, 0, 1], [0, 0, 0, 1]] {
        let f = Poly::from_u64s(&f2, &coeffs);
        let c = Matrix::companion(&f)?;
        match c.order_of_invertible() {
            Ok(k) => println!("companion of {f} has order {k}:\n{c}"),
            Err(e) => println!("companion of {f}: {e}\n{c}"),
        }
    }

    let z4 = parse_ring("Z/4")?;
    let a = Matrix::from_ints(&z4, &[[3, 2], [1, 1]]);
    println!("over {z4}, inverse of\n{a}is\n{}", a.inverse()?);

    let z6 = parse_ring("Z/6")?;
    let b = Matrix::from_ints(&z6, &[[1, 3], [2, 1]]);
    println!("over {z6} (through CRT), inverse of\n{b}is\n{}", b.inverse()?);
    Ok(())
}
