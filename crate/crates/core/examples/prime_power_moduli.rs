//! Decompositions over Z/p^r and composite Z/m.

use potentsq::decompose::{decompose, decompose_zpr, Guarantee};
use potentsq::matrix::Matrix;
use potentsq::parse::parse_ring;

fn main() -> potentsq::Result<()> {
    let z8 = parse_ring("Z/8")?;
    let a = Matrix::from_ints(&z8, &[[2, 5], [4, 6]]);
    let d = decompose_zpr(&a)?;
    let sq = &d.nilpotent * &d.nilpotent;
    println!("over {z8}: P =\n{}N =\n{}N^2 =\n{}guarantee {}", d.potent, d.nilpotent, sq, d.guarantee);

    let z72 = parse_ring("Z/72")?;
    let b = Matrix::from_ints(&z72, &[[6, 1], [0, 30]]);
    let d = decompose(&b)?;
    if let Guarantee::SquareInIdeal { generator } = d.guarantee {
        println!("over {z72}: entries of N^2 are multiples of {generator}");
    }
    println!("P =\n{}N =\n{}exponent {}, certificate passed: {}", d.potent, d.nilpotent, d.exponent, d.certificate.passed());
    Ok(())
}
