//! Decomposing and independently verifying every small matrix over a ring.

use potentsq::decompose::decompose;
use potentsq::oracle::sweep;
use potentsq::parse::parse_ring;

fn main() -> potentsq::Result<()> {
    let jobs = std::thread::available_parallelism().map_or(1, |n| n.get());
    for (spec, n) in [("Z/4", 2), ("GF(3)", 2), ("F2[t]/(t^2)", 2), ("Z/12", 1), ("Z/8", 2)] {
        let ring = parse_ring(spec)?;
        let s = sweep(&ring, n, decompose, jobs)?;
        println!(
            "{ring}, n = {n}: {} matrices, {} decomposed, {} certificate failures",
            s.total, s.decomposed, s.certificate_failures
        );
    }
    Ok(())
}
