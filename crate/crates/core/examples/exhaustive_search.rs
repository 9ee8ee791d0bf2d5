//! Brute-force searches for potent plus nilpotent splittings.

use potentsq::matrix::Matrix;
use potentsq::oracle::{exhaustive_decomposition_search, DEFAULT_SEARCH_BUDGET};
use potentsq::parse::{parse_element, parse_ring};

fn main() -> potentsq::Result<()> {
    let z8 = parse_ring("Z/8")?;
    let two = Matrix::from_ints(&z8, &[[2]]);
    for m in [2, 3] {
        let r = exhaustive_decomposition_search(&two, m, DEFAULT_SEARCH_BUDGET)?;
        println!(
            "2 in Z/8 with N^{m} = 0: {} ({} candidates)",
            r.found.as_ref().map_or("none".into(), |(p, n)| {
                format!("P = {}, N = {}", z8.format_elem(p.get(0, 0)), z8.format_elem(n.get(0, 0)))
            }),
            r.search_size
        );
    }

    let q = parse_ring("Z/4[x]/((x^2+x+1)^3)")?;
    let a = Matrix::new(&q, 1, vec![parse_element(&q, "x^2+x+1")?])?;
    let r = exhaustive_decomposition_search(&a, 2, DEFAULT_SEARCH_BUDGET)?;
    println!(
        "x^2+x+1 in {q}: found {}, {} square-zero candidates",
        r.found.is_some(),
        r.search_size
    );
    Ok(())
}
