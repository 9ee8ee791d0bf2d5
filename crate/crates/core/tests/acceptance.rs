//! Acceptance suite. Runs every criterion, prints one line per criterion and
//! exits non-zero if any fails.

mod common;

use std::time::{Duration, Instant};

use num_bigint::BigUint;
use potentsq::canonical::{primary_rcf, square_zero_frame, square_zero_partner, square_zero_pattern};
use potentsq::decompose::{
    decompose, decompose_local, decompose_over_field, decompose_zpr, lift_idempotent, lift_potent,
    Guarantee,
};
use potentsq::matrix::Matrix;
use potentsq::oracle::{
    all_matrices, exhaustive_decomposition_search, sweep, verify_decomposition,
    DEFAULT_SEARCH_BUDGET,
};
use potentsq::parse::{parse_element, parse_ring};
use potentsq::poly::Poly;
use potentsq::rings::{is_potent, residue_and_lift, Reduction, Ring, RingValue};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{random_idempotent, random_matrix, worked_example};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn criterion_1() -> Outcome {
    let z4 = Ring::integers_mod(4).unwrap();
    let a = worked_example(&z4);
    let start = Instant::now();
    let d = ok(decompose_local(&a))?;
    let elapsed = start.elapsed();

    // Displayed matrices, 1-based position (4,6) is the boxed entry.
    let mut n_hat = Matrix::zero(&z4, 8);
    n_hat.set(3, 5, z4.from_u64(3));
    let mut p_hat = a.clone();
    p_hat.set(3, 5, z4.one());
    let mut e = Matrix::zero(&z4, 8);
    for i in 0..6 {
        e.set(i, i, z4.one());
    }
    ensure(d.nilpotent == n_hat, format!("N differs from 3e(4,6):\n{}", d.nilpotent))?;
    ensure(d.potent == p_hat, format!("P differs from A + e(4,6):\n{}", d.potent))?;
    ensure(p_hat.pow_u64(42) == e, "P^42 is not diag(1,1,1,1,1,1,0,0)")?;
    ensure(d.potent.pow_u64(43) == d.potent, "P^43 != P")?;
    ensure((&d.nilpotent * &d.nilpotent).is_zero(), "N^2 != 0")?;
    ensure(&d.potent + &d.nilpotent == a, "A != P + N")?;
    ensure(d.exponent == BigUint::from(43u32), format!("exponent {}", d.exponent))?;
    ensure(d.certificate.passed(), format!("certificate {:?}", d.certificate.failures()))?;
    ensure(elapsed < Duration::from_secs(1), format!("took {elapsed:?}"))?;

    // The label e(4,7) printed under the braces does not fit the displayed entries.
    let mut p_label = a.clone();
    p_label.set(3, 6, z4.one());
    let label_consistent = p_label.pow_u64(42) == e;
    ensure(!label_consistent, "literal e(4,7) unexpectedly consistent")?;

    // The same holds for arbitrary B in the 2-adic part.
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..25 {
        let b = random_matrix(&z4, 8, &mut rng).scaled_int(2);
        let ab = &a + &b;
        let d = ok(decompose_local(&ab))?;
        ensure(d.certificate.passed(), "certificate failed for A + 2B")?;
        ensure(d.potent.pow_u64(43) == d.potent, "P^43 != P for A + 2B")?;
        ensure(d.exponent == BigUint::from(43u32), "exponent differs for A + 2B")?;
    }
    Ok(format!(
        "N = 3e(4,6) as displayed, P^42 = diag(1^6,0,0), P^43 = P, N^2 = 0 in {elapsed:?}; \
         the label e(4,7) gives P^42 != E; 25 random 2B perturbations pass"
    ))
}

fn criterion_2() -> Outcome {
    let f2 = Ring::prime_field(2).unwrap();
    let z4 = Ring::integers_mod(4).unwrap();
    let red = residue_and_lift(&z4).unwrap();
    let abar = red.reduce_value(&worked_example(&z4));
    let r = ok(primary_rcf(&abar))?;
    let expected = vec![
        Poly::from_u64s(&f2, &[1, 0, 1, 1]),
        Poly::from_u64s(&f2, &[0, 0, 0, 1]),
        Poly::from_u64s(&f2, &[0, 1]),
        Poly::from_u64s(&f2, &[0, 1]),
    ];
    ensure(r.divisors.powers() == expected, format!("divisors {:?}", r.divisors.powers()))?;
    let fd = ok(decompose_over_field(&abar))?;
    ensure(fd.block_orders == vec![7, 3], format!("block orders {:?}", fd.block_orders))?;
    ensure(fd.exponent == BigUint::from(22u32), format!("k = {}", fd.exponent))?;
    Ok("divisors x^3+x^2+1, x^3, x, x; block orders 7, 3; (k-1) p = 7*3*2 = 42".into())
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let cases = [("Z/4", 2, 256), ("GF(2)", 2, 16), ("GF(3)", 2, 81), ("F2[t]/(t^2)", 1, 4), ("F2[t]/(t^2)", 2, 256)];
    let mut parts = Vec::new();
    for (spec, n, count) in cases {
        let ring = parse_ring(spec).unwrap();
        let s = ok(sweep(&ring, n, decompose, 1))?;
        ensure(s.total == count, format!("{spec} n={n}: total {}", s.total))?;
        ensure(s.clean(), format!("{spec} n={n}: {s:?}"))?;
        for a in ok(all_matrices(&ring, n))? {
            let d = ok(decompose(&a))?;
            ensure(d.certificate.passed(), format!("{spec}: certificate fails on\n{a}"))?;
        }
        parts.push(format!("{spec} n={n}: {count}"));
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), format!("took {elapsed:?}"))?;
    Ok(format!("{} with zero failures in {elapsed:?}", parts.join(", ")))
}

fn square_zero_count(ring: &Ring) -> u64 {
    ring.elements()
        .filter(|x| ring.mul(x, x).is_zero())
        .count() as u64
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let z8 = Ring::integers_mod(8).unwrap();
    let r = ok(exhaustive_decomposition_search(
        &Matrix::from_ints(&z8, &[[2]]),
        2,
        DEFAULT_SEARCH_BUDGET,
    ))?;
    ensure(r.found.is_none(), "2 in Z/8 decomposed")?;
    ensure(r.search_size == square_zero_count(&z8), format!("Z/8 search size {}", r.search_size))?;

    let q = parse_ring("Z/4[x]/((x^2+x+1)^3)").unwrap();
    let a = Matrix::new(&q, 1, vec![parse_element(&q, "x^2+x+1").unwrap()]).unwrap();
    let r2 = ok(exhaustive_decomposition_search(&a, 2, DEFAULT_SEARCH_BUDGET))?;
    let count = square_zero_count(&q);
    ensure(r2.found.is_none(), "x^2+x+1 decomposed")?;
    ensure(r2.search_size == count, format!("quotient search size {} vs {count}", r2.search_size))?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), format!("took {elapsed:?}"))?;
    Ok(format!(
        "2 in Z/8: none of {} square-zero candidates; x^2+x+1 in {q}: none of {count}; {elapsed:?}",
        r.search_size
    ))
}

fn zpr_ok(a: &Matrix) -> Result<(), String> {
    let d = ok(decompose_zpr(a))?;
    let n = a - &d.potent;
    let sq = &n * &n;
    ensure(is_potent(&d.potent).is_some(), format!("P not potent for\n{a}"))?;
    ensure(
        sq.entries().iter().all(|e| e.coeffs()[0] % 4 == 0),
        format!("(A-P)^2 not divisible by 4 for\n{a}"),
    )?;
    ensure(d.guarantee == Guarantee::SquareInIdeal { generator: 4 }, "guarantee")?;
    ensure(d.certificate.passed(), format!("certificate {:?}", d.certificate.failures()))
}

fn criterion_5() -> Outcome {
    let z8 = Ring::integers_mod(8).unwrap();
    let mut singles = 0;
    for a in ok(all_matrices(&z8, 1))? {
        zpr_ok(&a)?;
        singles += 1;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..10_000 {
        zpr_ok(&random_matrix(&z8, 2, &mut rng))?;
    }
    Ok(format!("all {singles} 1x1 and 10000 sampled 2x2 over Z/8"))
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    // (a) idempotent lifting.
    for spec in ["Z/4", "Z/9", "F3[t]/(t^2)"] {
        let ring = parse_ring(spec).unwrap();
        let red = residue_and_lift(&ring).unwrap();
        let pi = ring.local_sq_zero().unwrap().uniformizer;
        for _ in 0..1000 {
            let n = rng.gen_range(1..=4);
            let e_bar = random_idempotent(red.target(), n, &mut rng);
            let noise = random_matrix(&ring, n, &mut rng).scaled(&pi);
            let e0 = &red.lift_value(&e_bar) + &noise;
            let e = ok(lift_idempotent(&e0, &red))?;
            ensure(&e * &e == e, format!("{spec}: not idempotent"))?;
            ensure(red.reduce_value(&e) == e_bar, format!("{spec}: wrong reduction"))?;
        }
    }
    // (b) potent lifting modulo p^2.
    for (m, p, r) in [(8u64, 2u64, 3u32), (16, 2, 4), (27, 3, 3)] {
        let ring = Ring::integers_mod(m).unwrap();
        let red = Reduction::integers(&ring, p * p).unwrap();
        let low = red.target().clone();
        for _ in 0..1000 {
            let n = rng.gen_range(1..=3);
            let d = ok(decompose_local(&random_matrix(&low, n, &mut rng)))?;
            let noise = random_matrix(&ring, n, &mut rng).scaled_int((p * p) as i64);
            let a0 = &red.lift_value(&d.potent) + &noise;
            let out = ok(lift_potent(&a0, &d.exponent, r.div_ceil(2), &red))?;
            ensure(is_potent(&out.value).is_some(), format!("Z/{m}: not potent"))?;
            ensure(red.reduce_value(&out.value) == d.potent, format!("Z/{m}: wrong reduction"))?;
        }
    }
    // (c) square-zero frames over F_2.
    let f2 = Ring::prime_field(2).unwrap();
    let mut frames = 0;
    for n in [2, 3] {
        for a in ok(all_matrices(&f2, n))? {
            if !(&a * &a).is_zero() {
                continue;
            }
            let b = ok(square_zero_partner(&a))?;
            ensure(&(&a * &b) * &a == a, format!("ABA != A for\n{a}"))?;
            ensure(&(&b * &a) * &b == b, format!("BAB != B for\n{a}"))?;
            ensure((&b * &b).is_zero(), format!("B^2 != 0 for\n{a}"))?;
            let (s, r) = ok(square_zero_frame(&a))?;
            let conj = &(&ok(s.inverse())? * &a) * &s;
            ensure(conj == square_zero_pattern(&f2, n, r), "frame pattern")?;
            frames += 1;
        }
    }
    Ok(format!(
        "3000 idempotent lifts, 3000 potent lifts, {frames} square-zero frames over GF(2)"
    ))
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for spec in ["GF(2)", "GF(3)", "GF(2^2)"] {
        let f = parse_ring(spec).unwrap();
        for _ in 0..1000 {
            let n = rng.gen_range(1..=5);
            let a = random_matrix(&f, n, &mut rng);
            let d = ok(decompose_over_field(&a))?;
            let cert = ok(verify_decomposition(
                &a,
                &d.potent,
                &d.nilpotent,
                Guarantee::SquareZero,
                Some(&d.exponent),
            ))?;
            ensure(cert.passed(), format!("{spec}: oracle rejects\n{a}"))?;
            let (p, nn, e) = (&d.potent, &d.nilpotent, &d.idempotent);
            ensure(p.pow(&(&d.exponent - 1u32)) == *e, "E != P^(k-1)")?;
            ensure(e * e == *e, "E^2 != E")?;
            ensure(e * nn == *nn && nn * e == *nn, "EN = NE = N fails")?;
            ensure(e * p == *p && p * e == *p, "EP = PE = P fails")?;
        }
    }
    Ok("1000 random matrices each over GF(2), GF(3), GF(2^2) with n <= 5".into())
}

fn criterion_8() -> Outcome {
    let z8 = Ring::integers_mod(8).unwrap();
    let mut table = Vec::new();
    for a in ok(all_matrices(&z8, 1))? {
        let r = ok(exhaustive_decomposition_search(&a, 3, DEFAULT_SEARCH_BUDGET))?;
        let (p, n) = r.found.ok_or_else(|| format!("{a} has no index-3 splitting"))?;
        table.push(format!("{}={}+{}", a.get(0, 0).coeffs()[0], p.get(0, 0).coeffs()[0], n.get(0, 0).coeffs()[0]));
    }
    Ok(format!("Z/8, index <= 3: {}", table.join(" ")))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("worked example over Z/4", criterion_1),
        ("elementary divisors of the example", criterion_2),
        ("exhaustive small rings", criterion_3),
        ("negative controls", criterion_4),
        ("Z/8 prime-power corollary", criterion_5),
        ("lifting properties", criterion_6),
        ("five identities over fields", criterion_7),
        ("index-3 evidence over Z/8", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {} PASS [{name}] ({:.2?}): {detail}", i + 1, start.elapsed()),
            Err(detail) => {
                failed += 1;
                println!("criterion {} FAIL [{name}]: {detail}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
