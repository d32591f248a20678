//! Dense polynomials over Z_p used for modulus validation and selection.

fn inv_mod(a: u64, p: u64) -> u64 {
    // p is prime, so a^(p-2) is the inverse.
    let (mut base, mut e, mut acc) = (a % p, p - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

fn trim(v: &mut Vec<u64>) {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
}

/// Remainder of `a` modulo `b` over Z_p (little-endian, `b` nonzero).
pub(crate) fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut r);
    trim(&mut b);
    let db = b.len() - 1;
    let lead_inv = inv_mod(b[db], p);
    while r.len() > db {
        let dr = r.len() - 1;
        let c = r[dr] * lead_inv % p;
        if c != 0 {
            for (i, &bi) in b.iter().enumerate() {
                let k = dr - db + i;
                r[k] = (r[k] + (p - c) * bi % p) % p;
            }
        }
        r.pop();
    }
    if r.is_empty() {
        r.push(0);
    }
    trim(&mut r);
    r
}

/// Irreducibility of a monic polynomial over Z_p by trial division with
/// every monic polynomial of degree `1..=deg/2`.
pub fn is_irreducible(m: &[u32], p: u32) -> bool {
    let n = m.len().saturating_sub(1);
    if n == 0 {
        return false;
    }
    let p = p as u64;
    let f: Vec<u64> = m.iter().map(|&c| c as u64).collect();
    for deg in 1..=n / 2 {
        let count = p.pow(deg as u32);
        let mut d = vec![0u64; deg + 1];
        d[deg] = 1;
        for v in 0..count {
            let mut t = v;
            for c in d.iter_mut().take(deg) {
                *c = t % p;
                t /= p;
            }
            let r = rem(&f, &d, p);
            if r.iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// The monic irreducible of degree `n` whose lower coefficients have the
/// smallest value `sum c_i p^i`.
pub(crate) fn smallest_irreducible(p: u32, n: u32) -> Vec<u32> {
    let count = (p as u64).pow(n);
    for v in 0..count {
        let mut t = v;
        let mut m: Vec<u32> = (0..n)
            .map(|_| {
                let c = (t % p as u64) as u32;
                t /= p as u64;
                c
            })
            .collect();
        m.push(1);
        if is_irreducible(&m, p) {
            return m;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}
