//! Factoring polynomials over prime and extension fields.

use potentsq::parse::{parse_poly_coeffs, parse_ring};
use potentsq::poly::{factor, is_irreducible, smallest_irreducible, Poly};

fn main() -> potentsq::Result<()> {
    let f3 = parse_ring("GF(3)")?;
    let f = Poly::from_u64s(&f3, &parse_poly_coeffs("(x^2+1)^3 (x+2)^6 * 2", 3, 'x')?);
    let fac = factor(&f)?;
    println!("{f} over {f3}:");
    for (g, e) in &fac.factors {
        println!("  ({g})^{e}");
    }
    println!("  unit {}", f3.format_elem(&fac.unit));

    let f2 = parse_ring("GF(2)")?;
    for d in 1..=4 {
        println!("smallest irreducible of degree {d} over GF(2): {}", smallest_irreducible(&f2, d));
    }

    let gf4 = parse_ring("GF(2^2)")?;
    let g = Poly::new(&gf4, vec![gf4.one(), gf4.one(), gf4.one()]);
    println!("{g} over {gf4} irreducible: {}", is_irreducible(&g)?);
    for (h, e) in factor(&g)?.factors {
        println!("  ({h})^{e}");
    }
    Ok(())
}
