//! End-to-end acceptance run: one PASS/FAIL line per criterion.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use fbct_core::algebra::{cubic_discriminant, quartic_pattern_bruteforce, quartic_pattern_char2};
use fbct_core::closed_forms::{carlitz_kloosterman, direct_kloosterman, vanishing_count_formula};
use fbct_core::flats::vanishing_flats;
use fbct_core::spectra::{classify, fbct_spectrum, fbct_table, FillMethod};
use fbct_core::{verify, Elem, Field, FunctionUnderTest, Params, TheoremId, TheoremVerdict};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn check(id: TheoremId, params: Params) -> Result<TheoremVerdict, String> {
    let v = verify(id, &params).map_err(|e| format!("{id} {params:?}: {e}"))?;
    if v.passed {
        Ok(v)
    } else {
        Err(format!(
            "{id} p={} n={} k={:?} t={:?}: {}; notes {:?}",
            params.p,
            params.n,
            params.k,
            params.t,
            serde_json::to_string(&v.first_mismatch).unwrap(),
            v.notes
        ))
    }
}

fn within(limit: Duration, start: Instant, what: &str) -> Result<(), String> {
    let took = start.elapsed();
    if took > limit {
        Err(format!("{what} took {took:.1?}, limit {limit:?}"))
    } else {
        Ok(())
    }
}

fn inverse_lemmas() -> Outcome {
    for (id, n) in [(TheoremId::L1, 4), (TheoremId::L1, 6), (TheoremId::L2, 5), (TheoremId::L2, 7)] {
        let start = Instant::now();
        check(id, Params::new(2, n))?;
        within(Duration::from_secs(1), start, &format!("{id} n={n}"))?;
    }
    Ok("L1 n=4,6 and L2 n=5,7 match every cell".into())
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

fn t1_fields() -> Outcome {
    let mut fields = Vec::new();
    for p in (3..=1331u64).filter(|&p| is_prime(p)) {
        let mut q = p;
        let mut n = 1;
        while q <= 1331 {
            if q % 3 == 2 {
                fields.push((p, n));
            }
            q *= p;
            n += 1;
        }
    }
    for &(p, n) in &fields {
        let start = Instant::now();
        check(TheoremId::T1, Params::new(p, n))?;
        if (p as u128).pow(n) == 1331 {
            within(Duration::from_secs(30), start, "q=1331")?;
        }
    }
    Ok(format!("{} fields with q = 2 mod 3, q <= 1331, all nontrivial cells 1", fields.len()))
}

fn t2_spectrum() -> Outcome {
    let mut seen = Vec::new();
    let mut failures = Vec::new();
    for (p, k, n) in [(5, 1, 2), (7, 1, 2), (11, 1, 1)] {
        match check(TheoremId::T2, Params::new(p, n).with_k(k)) {
            Ok(v) => seen.push(v.notes.join("; ")),
            Err(e) => failures.push(e),
        }
    }
    if failures.is_empty() {
        Ok(seen.join(" | "))
    } else {
        Err(failures.join(" | "))
    }
}

fn t3_quartic() -> Outcome {
    for (p, n) in [(5, 2), (7, 2), (7, 3)] {
        check(TheoremId::T3, Params::new(p, n))?;
    }
    Ok("X^4 over GF(25), GF(49), GF(343): cells and nabla = 2".into())
}

fn t4_ternary() -> Outcome {
    for n in [3, 5] {
        let start = Instant::now();
        check(TheoremId::T4, Params::new(3, n))?;
        within(Duration::from_secs(10), start, &format!("n={n}"))?;
    }
    Ok("p=3, n=3,5: cells and nabla = 3".into())
}

fn mersenne_sweep() -> Outcome {
    let start = Instant::now();
    let mut cells = 0;
    for n in 4..=8 {
        cells += check(TheoremId::Thmt, Params::new(2, n))?.cells_checked;
    }
    within(Duration::from_secs(120), start, "sweep")?;
    Ok(format!("n=4..8, all t: {cells} cells, beta <= delta"))
}

fn corollary_betas() -> Outcome {
    for m in [3, 4, 5] {
        check(TheoremId::CF1, Params::new(2, 2 * m))?;
    }
    for n in [7, 9, 11] {
        check(TheoremId::CF2, Params::new(2, n))?;
    }
    for n in [7, 9] {
        check(TheoremId::CF3, Params::new(2, n))?;
    }
    Ok("F1 m=3,4,5; F2 n=7,9,11; F3 n=7,9".into())
}

fn vanishing_closed_forms() -> Outcome {
    let start = Instant::now();
    for (n, expected) in [(6, 84), (8, 1785)] {
        let field = Field::new(2, n).unwrap();
        let f = FunctionUnderTest::monomial(&field, (1 << (n / 2)) - 1);
        let counted = vanishing_flats(&f, false).map_err(|e| e.to_string())?.vanishing_count;
        let formula = vanishing_count_formula(TheoremId::CF1Vb, n, None).map_err(|e| e.to_string())?;
        if counted != expected || formula != expected as i64 {
            return Err(format!("F1 n={n}: counted {counted}, formula {formula}, expected {expected}"));
        }
    }
    let mut counts = Vec::new();
    for n in [7, 9, 11] {
        for id in [TheoremId::CF2Vb, TheoremId::CF3Vb] {
            let v = check(id, Params::new(2, n))?;
            counts.push(format!("{id} n={n}: {}", v.notes.last().cloned().unwrap_or_default()));
        }
    }
    for n in 1..=16 {
        let field = Field::new(2, n).unwrap();
        let direct = direct_kloosterman(&field).unwrap();
        let closed = carlitz_kloosterman(n).unwrap();
        if direct != closed {
            return Err(format!("K(1) over GF(2^{n}): direct {direct}, closed form {closed}"));
        }
    }
    within(Duration::from_secs(240), start, "vanishing counts")?;
    Ok(format!("F1 84, 1785; K(1) agrees for n <= 16; {}", counts.join("; ")))
}

fn prop_identity() -> Outcome {
    let v4 = check(TheoremId::PropVb, Params::new(2, 4).with_seed(2024))?;
    let v5 = check(TheoremId::PropVb, Params::new(2, 5))?;
    Ok(format!("GF(16): {}; GF(32): {}", v4.notes.join(""), v5.notes.join("")))
}

fn inverse_plus_trace() -> Outcome {
    let mut notes = Vec::new();
    for n in [4, 6, 8] {
        let v = check(TheoremId::T6, Params::new(2, n))?;
        notes.push(format!("n={n}: {}", v.notes.join("; ")));
    }
    Ok(notes.join(" | "))
}

fn gamma_family() -> Outcome {
    let mut notes = Vec::new();
    for n in [4, 5, 6] {
        let v = check(TheoremId::T7, Params::new(2, n))?;
        notes.push(format!("n={n}: {}", v.notes.join("")));
    }
    Ok(notes.join("; "))
}

fn horner_cubic(f: &Field, c: [Elem; 3], x: Elem) -> Elem {
    let [c2, c1, c0] = c;
    [c2, c1, c0].into_iter().fold(Elem::ONE, |acc, ci| f.add(f.mul(acc, x), ci))
}

fn algebra_oracles() -> Outcome {
    let mut cubics = 0;
    for (p, n) in [(5, 1), (7, 1), (3, 2)] {
        let f = Field::new(p, n).unwrap();
        for c2 in f.elements() {
            for c1 in f.elements() {
                for c0 in f.elements() {
                    let roots = f.elements().filter(|&x| horner_cubic(&f, [c2, c1, c0], x).is_zero()).count();
                    let disc = cubic_discriminant(&f, c2, c1, c0);
                    cubics += 1;
                    if disc.is_zero() {
                        continue;
                    }
                    let non_square = f.eta(disc).unwrap() == -1;
                    if (roots == 1) != non_square {
                        return Err(format!("GF({p}^{n}) X^3+{c2:?}X^2+{c1:?}X+{c0:?}: {roots} roots, eta(disc) = -1: {non_square}"));
                    }
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0xF1A7);
    for n in [2, 4, 6, 8] {
        let f = Field::new(2, n).unwrap();
        let q = f.q();
        for _ in 0..10_000 {
            let a2 = f.from_index(rng.gen_range(0..q)).unwrap();
            let a1 = f.from_index(rng.gen_range(1..q)).unwrap();
            let a0 = f.from_index(rng.gen_range(1..q)).unwrap();
            let fast = quartic_pattern_char2(&f, a2, a1, a0).unwrap().pattern;
            let slow = quartic_pattern_bruteforce(&f, a2, a1, a0).unwrap();
            if fast != slow {
                return Err(format!("GF(2^{n}) ({a2:?},{a1:?},{a0:?}): {fast:?} vs {slow:?}"));
            }
        }
    }
    Ok(format!("{cubics} monic cubics; 40000 quartics"))
}

fn classification() -> Outcome {
    let f27 = Field::new(3, 3).unwrap();
    let sq = FunctionUnderTest::monomial(&f27, 2);
    if !classify(&sq).is_pn {
        return Err("X^2 over GF(27) is not PN".into());
    }
    let table = fbct_table(&sq, FillMethod::EntryWise).unwrap();
    let q = f27.q() as usize;
    for a in f27.nonzero_elements() {
        for b in f27.nonzero_elements() {
            let v = table[a.index() as usize * q + b.index() as usize];
            if v != 0 {
                return Err(format!("X^2 over GF(27): FB({a:?},{b:?}) = {v}"));
            }
        }
    }
    let f32 = Field::new(2, 5).unwrap();
    let cube = FunctionUnderTest::monomial(&f32, 3);
    if !classify(&cube).is_apn || fbct_spectrum(&cube, false).uniformity != 0 {
        return Err("X^3 over GF(32) is not APN with zero FBCT".into());
    }
    let v = check(TheoremId::ApnIffFbct0, Params::new(2, 5))?;
    Ok(format!("X^2 PN over GF(27); X^3 APN over GF(32); {}", v.notes.join("")))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 13] = [
        ("inverse map over GF(2^n)", inverse_lemmas),
        ("X^((2q-1)/3) has all cells 1", t1_fields),
        ("X^((p^k+1)/2) value set and maximum", t2_spectrum),
        ("X^4 in odd characteristic", t3_quartic),
        ("X^((3^n-1)/2+2) over GF(3^n)", t4_ternary),
        ("X^(2^t-1) row classification", mersenne_sweep),
        ("Feistel boomerang uniformity of F1/F2/F3", corollary_betas),
        ("vanishing-flat closed forms", vanishing_closed_forms),
        ("FBCT sum equals 24 #VB", prop_identity),
        ("X^-1 + Tr(X^2/(X+1))", inverse_plus_trace),
        ("1/(X + g Tr(X^(2^t+1)))", gamma_family),
        ("cubic and quartic root oracles", algebra_oracles),
        ("PN/APN sanity", classification),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS [{:>2}] {name} ({took:.2?}): {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL [{:>2}] {name} ({took:.2?}): {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
