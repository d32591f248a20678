use super::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn gf(p: u64, n: u32) -> Field {
    Field::new(p, n).unwrap()
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[test]
fn cubic_x3_minus_x() {
    let f = gf(5, 1);
    let c = cubic_roots_odd(&f, Elem::ZERO, f.from_int(-1), Elem::ZERO).unwrap();
    assert_eq!(c.roots, vec![Elem(0), Elem(1), Elem(4)]);
    assert_eq!(c.disc_eta, 1);
    assert!(c.dickson_holds());
    assert_eq!(cubic_roots_odd(&gf(2, 3), Elem::ZERO, Elem::ONE, Elem::ONE), Err(Error::NeedsOddCharacteristic));
}

#[test]
fn discriminant_matches_root_product() {
    // For a split cubic, disc = prod (r_i - r_j)^2.
    let f = gf(7, 2);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..200 {
        let r: Vec<Elem> = (0..3).map(|_| Elem(rng.gen_range(0..f.q()))).collect();
        let c2 = f.neg(f.add(f.add(r[0], r[1]), r[2]));
        let c1 = f.add(f.add(f.mul(r[0], r[1]), f.mul(r[0], r[2])), f.mul(r[1], r[2]));
        let c0 = f.neg(f.mul(f.mul(r[0], r[1]), r[2]));
        let vdm = f.mul(f.mul(f.sub(r[0], r[1]), f.sub(r[0], r[2])), f.sub(r[1], r[2]));
        assert_eq!(cubic_discriminant(&f, c2, c1, c0), f.square(vdm));
    }
}

#[test]
fn depressed_cubic_with_one_root() {
    // Z^3 + A Z + A, A = 27(u^2 - 1)/4 with u^2 != 1, has exactly one root when q = 2 mod 3.
    for (p, n) in [(5, 1), (11, 1), (5, 3), (17, 1)] {
        let f = gf(p, n);
        let k = f.mul(f.from_int(27), f.inv(f.from_int(4)));
        for u in f.elements() {
            let u2 = f.square(u);
            // u = a/b with ab != 0; u = 0 makes the discriminant vanish.
            if u2 == Elem::ONE || u.is_zero() {
                continue;
            }
            let a = f.mul(k, f.sub(u2, Elem::ONE));
            let c = cubic_roots_odd(&f, Elem::ZERO, a, a).unwrap();
            assert_eq!(c.roots.len(), 1, "GF({p}^{n}) u={u:?}");
            assert_eq!(c.disc_eta, -1);
        }
    }
}

#[test]
fn rootless_cubic_over_gf7() {
    let f = gf(7, 1);
    let mut found = false;
    for c2 in f.elements() {
        for c1 in f.elements() {
            for c0 in f.elements() {
                let c = cubic_roots_odd(&f, c2, c1, c0).unwrap();
                assert!(c.dickson_holds());
                if c.roots.is_empty() {
                    assert_eq!(c.disc_eta, 1);
                    found = true;
                }
            }
        }
    }
    assert!(found);
}

#[test]
fn gf4_quartic_splits_into_quadratics() {
    let f = gf(2, 2);
    let qa = quartic_pattern_char2(&f, Elem::ZERO, Elem::ONE, Elem::ONE).unwrap();
    assert_eq!(qa.cubic_roots.len(), 3);
    let mut traces: Vec<u32> = qa.w_values.iter().map(|&w| f.trace(w)).collect();
    traces.sort_unstable();
    assert_eq!(traces, vec![0, 1, 1]);
    assert_eq!(qa.pattern, QuarticPattern::TwoQuadratics);
    assert_eq!(quartic_pattern_bruteforce(&f, Elem::ZERO, Elem::ONE, Elem::ONE).unwrap(), qa.pattern);
}

#[test]
fn companion_cubic_of_b_cubed_quartic() {
    let f = gf(2, 6);
    let w = f.cube_roots_of_unity()[1];
    for b in f.nonzero_elements() {
        let b3 = f.pow(b, 3);
        let qa = quartic_pattern_char2(&f, Elem::ZERO, b3, b3).unwrap();
        let mut expect = vec![b, f.mul(b, w), f.mul(b, f.square(w))];
        expect.sort_unstable();
        assert_eq!(qa.cubic_roots, expect);
    }
}

#[test]
fn quartic_errors() {
    let f = gf(2, 4);
    assert!(quartic_pattern_char2(&f, Elem::ONE, Elem::ZERO, Elem::ONE).is_err());
    assert!(quartic_pattern_char2(&f, Elem::ONE, Elem::ONE, Elem::ZERO).is_err());
    assert_eq!(
        quartic_pattern_char2(&gf(3, 2), Elem::ONE, Elem::ONE, Elem::ONE),
        Err(Error::NeedsCharTwo)
    );
}

/// Pattern by dividing out every monic linear and quadratic factor.
fn pattern_by_division(f: &Field, a2: Elem, a1: Elem, a0: Elem) -> QuarticPattern {
    let quartic = FieldPoly::new(f, vec![a0, a1, a2, Elem::ZERO, Elem::ONE]);
    let roots = f.elements().filter(|&x| quartic.eval(x).is_zero()).count();
    let mut irreducible_quadratic_factor = false;
    for c1 in f.elements() {
        for c0 in f.elements() {
            if f.solve_quadratic(Elem::ONE, c1, c0).unwrap().is_empty() {
                let d = FieldPoly::new(f, vec![c0, c1, Elem::ONE]);
                if quartic.rem(&d).degree().is_none() {
                    irreducible_quadratic_factor = true;
                }
            }
        }
    }
    match (roots, irreducible_quadratic_factor) {
        (4, _) => QuarticPattern::Linear4,
        (2, true) => QuarticPattern::TwoLinearQuadratic,
        (1, false) => QuarticPattern::LinearCubic,
        (0, true) => QuarticPattern::TwoQuadratics,
        (0, false) => QuarticPattern::Irreducible,
        other => panic!("impossible factorization {other:?}"),
    }
}

#[test]
fn lemma_matches_division_oracle() {
    for n in [2, 4] {
        let f = gf(2, n);
        let mut seen = std::collections::HashSet::new();
        for a2 in f.elements() {
            for a1 in f.nonzero_elements() {
                for a0 in f.nonzero_elements() {
                    let p = quartic_pattern_char2(&f, a2, a1, a0).unwrap().pattern;
                    assert_eq!(p, pattern_by_division(&f, a2, a1, a0));
                    assert_eq!(p, quartic_pattern_bruteforce(&f, a2, a1, a0).unwrap());
                    seen.insert(p);
                }
            }
        }
        if n == 4 {
            assert_eq!(seen.len(), 5);
        }
    }
}

#[test]
fn resolvent_roots_match_scan() {
    let f = gf(2, 6);
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..2000 {
        let a2 = Elem(rng.gen_range(0..64));
        let a1 = Elem(rng.gen_range(1..64));
        let a0 = Elem(rng.gen_range(1..64));
        let quartic = FieldPoly::new(&f, vec![a0, a1, a2, Elem::ZERO, Elem::ONE]);
        let scan: Vec<Elem> = f.elements().filter(|&x| quartic.eval(x).is_zero()).collect();
        assert_eq!(quartic_roots_char2(&f, a2, a1, a0).unwrap(), scan);
        let p = quartic_pattern_char2(&f, a2, a1, a0).unwrap().pattern;
        assert_eq!(p.root_count(), scan.len());
        assert_eq!(p.degrees().iter().sum::<u32>(), 4);
    }
}

#[test]
fn kernel_dims() {
    for n in 3..=8u32 {
        let f = gf(2, n);
        for t in 1..n {
            assert_eq!(linearized_kernel_dim(&f, t, Elem::ONE).unwrap(), gcd(t - 1, n), "n={n} t={t}");
            assert_eq!(linearized_kernel_dim(&f, t, Elem::ZERO).unwrap(), gcd(t, n));
        }
    }
    let f = gf(2, 6);
    for t in 2..=5 {
        for b in f.elements().skip(2) {
            let r = linearized_kernel_dim(&f, t, b).unwrap();
            assert!(r >= 1 && r <= t.min(6 - t + 1), "t={t} b={b:?} r={r}");
        }
    }
    assert!(linearized_kernel_dim(&f, 0, Elem::ONE).is_err());
    assert!(linearized_kernel_dim(&f, 6, Elem::ONE).is_err());
}

#[test]
fn kernel_dim_matches_root_count() {
    let f = gf(2, 5);
    for t in 1..5 {
        for b in f.elements() {
            let b1 = f.add(b, Elem::ONE);
            let roots = f
                .elements()
                .filter(|&x| {
                    let v = f.add(f.add(f.pow(x, 1 << t), f.mul(b, f.square(x))), f.mul(b1, x));
                    v.is_zero()
                })
                .count();
            assert_eq!(1usize << linearized_kernel_dim(&f, t, b).unwrap(), roots);
        }
    }
}

#[test]
fn poly_helpers() {
    let f = gf(3, 1);
    let x = FieldPoly::x(&f);
    let one = FieldPoly::new(&f, vec![Elem::ONE]);
    // (x+1)(x+2) = x^2 + 2 over GF(3)
    let prod = x.add(&one).mul(&x.add(&one).add(&one));
    assert_eq!(prod.coeffs(), &[Elem(2), Elem(0), Elem(1)]);
    assert_eq!(prod.gcd(&x.add(&one)).coeffs(), &[Elem(1), Elem(1)]);
    assert_eq!(prod.rem(&x).coeffs(), &[Elem(2)]);
    assert_eq!(FieldPoly::new(&f, vec![Elem(0), Elem(0)]).degree(), None);
}
