//! Arithmetic in the supported finite rings, potency, and the CRT split of Z/m.

use potentsq::parse::{parse_element, parse_ring};
use potentsq::rings::{crt_split, is_potent, RingElement};

fn main() -> potentsq::Result<()> {
    for spec in ["Z/12", "GF(2^3)", "Z/4[x]/((x^2+x+1)^3)", "F3[t]/(t^2)"] {
        let ring = parse_ring(spec)?;
        println!(
            "{ring}: {} elements, field: {}, local: {}",
            ring.size().map_or("many".into(), |s| s.to_string()),
            ring.is_field(),
            ring.is_local()
        );
    }

    let gf8 = parse_ring("GF(2^3)")?;
    let a = gf8.element(parse_element(&gf8, "x^2+1")?);
    let b = gf8.element(parse_element(&gf8, "x")?);
    println!("in {gf8}: ({a})({b}) = {}, ({a})^-1 = {}", &a * &b, a.inverse().unwrap());

    let z12 = parse_ring("Z/12")?;
    for v in 0..12 {
        let x = RingElement::new(&z12, v);
        match is_potent(&x) {
            Some(k) => println!("{v} in Z/12 is potent: {v}^{k} = {v}"),
            None => println!("{v} in Z/12 is not potent"),
        }
    }

    let split = crt_split(360)?;
    println!("Z/360 splits over moduli {:?}; 77 -> {:?}", split.component_moduli(), split.forward(77));
    Ok(())
}
