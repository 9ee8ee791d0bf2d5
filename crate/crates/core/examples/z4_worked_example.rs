//! The 8x8 matrix over Z/4 with elementary divisors x^3+x^2+1, x^3, x, x.

use potentsq::decompose::decompose;
use potentsq::matrix::Matrix;
use potentsq::parse::parse_ring;
use potentsq::rings::RingValue;

fn main() -> potentsq::Result<()> {
    let z4 = parse_ring("Z/4")?;
    let a = Matrix::from_ints(
        &z4,
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
    );
    let d = decompose(&a)?;
    println!("P =\n{}N =\n{}", d.potent, d.nilpotent);
    println!("P^42 =\n{}", d.potent.pow_u64(42));
    println!("exponent {}, P^43 = P: {}", d.exponent, d.potent.pow_u64(43) == d.potent);
    for (name, ok) in &d.certificate.checks {
        println!("  {name}: {ok}");
    }
    Ok(())
}
