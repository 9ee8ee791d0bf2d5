//! Potent plus square-zero decomposition over a finite field.

use potentsq::decompose::decompose_over_field;
use potentsq::matrix::Matrix;
use potentsq::parse::parse_ring;

fn main() -> potentsq::Result<()> {
    let f2 = parse_ring("GF(2)")?;
    let a = Matrix::from_ints(
        &f2,
        &[[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 0], [1, 0, 0, 1]],
    );
    let d = decompose_over_field(&a)?;
    let divisors: Vec<String> = d.rcf.divisors.iter().map(|e| e.to_string()).collect();
    println!("A =\n{a}elementary divisors: {}", divisors.join(", "));
    println!("block orders {:?}, k = {}", d.block_orders, d.exponent);
    println!("P =\n{}N =\n{}E = P^(k-1) =\n{}", d.potent, d.nilpotent, d.idempotent);
    let ids = d.check(&a);
    println!("identities: {ids:?}");
    assert!(ids.all());
    Ok(())
}
