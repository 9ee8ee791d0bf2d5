//! Elementary divisors and the primary rational canonical form over a field.

use potentsq::canonical::{invariant_factors, primary_rcf};
use potentsq::matrix::Matrix;
use potentsq::parse::parse_ring;

fn main() -> potentsq::Result<()> {
    let f3 = parse_ring("GF(3)")?;
    let a = Matrix::from_ints(
        &f3,
        &[[1, 2, 0, 1], [0, 1, 1, 0], [2, 0, 0, 1], [1, 1, 2, 2]],
    );
    let factors: Vec<String> = invariant_factors(&a)?.iter().map(|f| f.to_string()).collect();
    println!("A =\n{a}invariant factors: {}", factors.join(", "));

    let r = primary_rcf(&a)?;
    for d in r.divisors.iter() {
        println!("elementary divisor {d} ({:?})", d.class());
    }
    println!("Q =\n{}Q^-1 A Q =\n{}", r.q, r.block_diagonal());
    assert!(r.reproduces(&a));
    Ok(())
}
