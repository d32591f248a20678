use super::*;
use crate::function::FunctionUnderTest as Fut;
use crate::gf2::gaussian_binomial;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn gf(n: u32) -> Field {
    Field::new(2, n).unwrap()
}

/// Brute force over all 4-subsets; independent of the triple enumeration.
fn vanishing_by_subsets(f: &Fut) -> u64 {
    let q = f.field().q();
    let v = f.values();
    let mut count = 0;
    for a in 0..q {
        for b in a + 1..q {
            for c in b + 1..q {
                for d in c + 1..q {
                    if a ^ b ^ c ^ d == 0
                        && v[a as usize].index() ^ v[b as usize].index() ^ v[c as usize].index() ^ v[d as usize].index() == 0
                    {
                        count += 1;
                    }
                }
            }
        }
    }
    count
}

#[test]
fn two_flat_totals() {
    assert_eq!(count_two_flats(2).unwrap(), 1);
    assert_eq!(count_two_flats(3).unwrap(), 14);
    assert_eq!(count_two_flats(4).unwrap(), 140);
    assert!(count_two_flats(1).is_err());
    // A 2-flat is a coset of a 2-dim subspace: [n 2] * 2^(n-2).
    for n in 2..=10 {
        assert_eq!(count_two_flats(n).unwrap(), gaussian_binomial(n, 2) << (n - 2));
    }
}

#[test]
fn vanishing_examples() {
    let f = gf(4);
    assert_eq!(vanishing_flats(&Fut::monomial(&f, 3), false).unwrap().vanishing_count, 0);
    assert_eq!(vanishing_flats(&Fut::monomial(&f, 1), false).unwrap().vanishing_count, 140);
    let f1 = Fut::monomial(&gf(6), 7);
    assert_eq!(vanishing_flats(&f1, false).unwrap().vanishing_count, 84);
    assert_eq!(
        vanishing_flats(&Fut::monomial(&Field::new(3, 2).unwrap(), 2), false).unwrap_err(),
        Error::NeedsCharTwo
    );
}

#[test]
fn enumeration_matches_subset_scan() {
    let f = gf(5);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for g in [Fut::monomial(&f, 7), Fut::random_table(&f, &mut rng), Fut::monomial(&f, 1)] {
        assert_eq!(vanishing_flats(&g, false).unwrap().vanishing_count, vanishing_by_subsets(&g));
    }
}

#[test]
fn listing_blocks_are_valid() {
    let f = gf(5);
    let g = Fut::random_table(&f, &mut ChaCha8Rng::seed_from_u64(3));
    let r = vanishing_flats(&g, true).unwrap();
    assert!(r.vanishing_count > 0);
    let list = r.listing.as_ref().unwrap();
    assert_eq!(list.len() as u64, r.vanishing_count);
    for blk in list {
        assert!(blk.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(blk.iter().fold(0, |acc, e| acc ^ e.index()), 0);
        assert_eq!(blk.iter().fold(0, |acc, &e| acc ^ g.eval(e).index()), 0);
    }
    let mut out = Vec::new();
    r.write_listing(&f, &mut out).unwrap();
    let text = String::from_utf8(out).unwrap();
    assert_eq!(text.lines().count() as u64, r.vanishing_count);
    assert_eq!(text.lines().next().unwrap().split('|').count(), 4);
}

#[test]
fn prop_identity_examples() {
    let f = gf(4);
    let id = check_prop_identity(&Fut::monomial(&f, 1)).unwrap();
    assert_eq!((id.fbct_sum, id.vanishing_count, id.holds), (3360, 140, true));
    let cube = check_prop_identity(&Fut::monomial(&f, 3)).unwrap();
    assert_eq!((cube.fbct_sum, cube.vanishing_count, cube.holds), (0, 0, true));
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..20 {
        assert!(check_prop_identity(&Fut::random_table(&f, &mut rng)).unwrap().holds);
    }
}

#[test]
fn prop_identity_all_monomials() {
    for n in [4, 5] {
        let f = gf(n);
        for d in 0..f.q() as i128 - 1 {
            assert!(check_prop_identity(&Fut::monomial(&f, d)).unwrap().holds, "n={n} d={d}");
        }
    }
}

#[test]
fn subspace_counts_are_gaussian_binomials() {
    for n in 1..=6 {
        for k in 0..=n {
            let bases = subspace_bases(n, k);
            assert_eq!(bases.len() as u128, gaussian_binomial(n, k), "n={n} k={k}");
            // Distinct spans.
            let mut spans: Vec<Vec<u32>> = bases
                .iter()
                .map(|b| {
                    let mut s = span_of(b);
                    s.sort_unstable();
                    s
                })
                .collect();
            spans.sort();
            spans.dedup();
            assert_eq!(spans.len(), bases.len());
        }
    }
}

#[test]
fn sum_freedom() {
    let f = gf(5);
    for k in 2..=5 {
        assert!(!is_kth_sum_free(&Fut::monomial(&f, 1), k).unwrap().sum_free);
        let constant = Fut::table(&f, vec![Elem(9); 32]).unwrap();
        let r = is_kth_sum_free(&constant, k).unwrap();
        assert!(!r.sum_free);
        let w = r.witness.unwrap();
        assert_eq!(w.points().len(), 1 << k);
    }
    assert!(is_kth_sum_free(&Fut::monomial(&f, 3), 1).is_err());
    assert!(is_kth_sum_free(&Fut::monomial(&f, 3), 6).is_err());
    // Second-order sum-freedom is the absence of vanishing flats.
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let g4 = gf(4);
    let mut cases = vec![Fut::monomial(&f, 3), Fut::monomial(&f, 7), Fut::monomial(&g4, 14)];
    cases.extend((0..5).map(|_| Fut::random_table(&g4, &mut rng)));
    for g in cases {
        let vb = vanishing_flats(&g, false).unwrap().vanishing_count;
        assert_eq!(is_kth_sum_free(&g, 2).unwrap().sum_free, vb == 0);
    }
}

#[test]
fn full_sweep_counts_every_flat() {
    // APN cube over GF(2^5) is second-order sum-free, so every 2-flat is visited.
    let f = gf(5);
    let r = is_kth_sum_free(&Fut::monomial(&f, 3), 2).unwrap();
    assert!(r.sum_free);
    assert_eq!(r.flats_checked as u128, count_two_flats(5).unwrap());
}
