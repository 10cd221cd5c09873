//! Arithmetic mod a prime, prime search, square roots, and dense polynomial
//! arithmetic over F_l, including root extraction for split polynomials.

use rand::Rng;

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

pub fn inv_mod(a: u64, m: u64) -> u64 {
    pow_mod(a, m - 2, m)
}

/// Deterministic Miller-Rabin for u64.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let d = n - 1;
    let s = d.trailing_zeros();
    let d = d >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Smallest prime l with l = 1 mod exponent and l > 2*order.
pub fn table_modulus(order: u64, exponent: u64) -> u64 {
    let mut k = ((2 * order) / exponent).max(1);
    loop {
        let cand = k * exponent + 1;
        if cand > 2 * order && is_prime(cand) {
            return cand;
        }
        k += 1;
    }
}

/// Smallest primitive root mod the prime l.
pub fn primitive_root(l: u64) -> u64 {
    let factors = factorize(l - 1);
    'cand: for g in 2..l {
        for (p, _) in &factors {
            if pow_mod(g, (l - 1) / p, l) == 1 {
                continue 'cand;
            }
        }
        return g;
    }
    unreachable!("every prime has a primitive root")
}

/// Tonelli-Shanks square root mod an odd prime; None for non-residues.
pub fn sqrt_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if pow_mod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(pow_mod(a, (p + 1) / 4, p));
    }
    // write p-1 = q * 2^s
    let s = (p - 1).trailing_zeros();
    let q = (p - 1) >> s;
    let mut z = 2;
    while pow_mod(z, (p - 1) / 2, p) == 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, (q + 1) / 2, p);
    while t != 1 {
        let mut i = 0;
        let mut tt = t;
        while tt != 1 {
            tt = mul_mod(tt, tt, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r)
}

// ---- dense polynomials over F_l, coefficients ascending ----

pub fn poly_trim(f: &mut Vec<u64>) {
    while f.last() == Some(&0) {
        f.pop();
    }
}

pub fn poly_mul(a: &[u64], b: &[u64], l: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mul_mod(x, y, l)) % l;
        }
    }
    poly_trim(&mut out);
    out
}

/// Remainder of a mod b (b nonzero).
pub fn poly_rem(a: &[u64], b: &[u64], l: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = inv_mod(b[db], l);
    while r.len() > db {
        let coeff = mul_mod(*r.last().unwrap(), lead_inv, l);
        let shift = r.len() - 1 - db;
        for i in 0..=db {
            let sub = mul_mod(coeff, b[i], l);
            r[shift + i] = (r[shift + i] + l - sub) % l;
        }
        poly_trim(&mut r);
        if r.is_empty() {
            break;
        }
    }
    r
}

pub fn poly_gcd(a: &[u64], b: &[u64], l: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    poly_trim(&mut x);
    poly_trim(&mut y);
    while !y.is_empty() {
        let r = poly_rem(&x, &y, l);
        x = y;
        y = r;
    }
    if let Some(&lead) = x.last() {
        let inv = inv_mod(lead, l);
        for c in x.iter_mut() {
            *c = mul_mod(*c, inv, l);
        }
    }
    x
}

fn poly_derivative(f: &[u64], l: u64) -> Vec<u64> {
    let mut out: Vec<u64> = f
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| mul_mod(i as u64, c, l))
        .collect();
    poly_trim(&mut out);
    out
}

/// (base^exp) mod f, all mod l.
fn poly_pow_mod(base: &[u64], mut exp: u64, f: &[u64], l: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = poly_rem(base, f, l);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = poly_rem(&poly_mul(&acc, &b, l), f, l);
        }
        b = poly_rem(&poly_mul(&b, &b, l), f, l);
        exp >>= 1;
    }
    acc
}

/// Distinct roots in F_l of a polynomial all of whose roots lie in F_l.
pub fn poly_roots(f: &[u64], l: u64, rng: &mut impl Rng) -> Vec<u64> {
    let mut f = f.to_vec();
    poly_trim(&mut f);
    assert!(!f.is_empty(), "zero polynomial");
    // squarefree part
    let deriv = poly_derivative(&f, l);
    if !deriv.is_empty() {
        let g = poly_gcd(&f, &deriv, l);
        if g.len() > 1 {
            f = poly_div_exact(&f, &g, l);
        }
    }
    // keep only linear factors: gcd(x^l - x, f)
    let xl = poly_pow_mod(&[0, 1], l, &f, l);
    let mut xl_minus_x = xl;
    while xl_minus_x.len() < 2 {
        xl_minus_x.push(0);
    }
    xl_minus_x[1] = (xl_minus_x[1] + l - 1) % l;
    poly_trim(&mut xl_minus_x);
    let split = if xl_minus_x.is_empty() {
        f.clone()
    } else {
        poly_gcd(&xl_minus_x, &f, l)
    };
    let mut roots = Vec::new();
    split_roots(&split, l, rng, &mut roots);
    roots.sort_unstable();
    roots
}

fn poly_div_exact(a: &[u64], b: &[u64], l: u64) -> Vec<u64> {
    // long division, remainder assumed zero
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = inv_mod(b[db], l);
    let mut q = vec![0u64; r.len().saturating_sub(db)];
    while r.len() > db {
        let coeff = mul_mod(*r.last().unwrap(), lead_inv, l);
        let shift = r.len() - 1 - db;
        q[shift] = coeff;
        for i in 0..=db {
            let sub = mul_mod(coeff, b[i], l);
            r[shift + i] = (r[shift + i] + l - sub) % l;
        }
        poly_trim(&mut r);
        if r.is_empty() {
            break;
        }
    }
    poly_trim(&mut q);
    q
}

/// Equal-degree-1 splitting of a squarefree product of linear factors.
fn split_roots(f: &[u64], l: u64, rng: &mut impl Rng, out: &mut Vec<u64>) {
    let mut f = f.to_vec();
    poly_trim(&mut f);
    if f.len() <= 1 {
        return;
    }
    if f.len() == 2 {
        // c0 + c1 x = 0  =>  x = -c0/c1
        let root = mul_mod(l - f[0] % l, inv_mod(f[1], l), l) % l;
        out.push(root);
        return;
    }
    loop {
        let delta = rng.gen_range(0..l);
        // gcd((x+delta)^((l-1)/2) - 1, f)
        let shifted = [delta, 1];
        let mut h = poly_pow_mod(&shifted, (l - 1) / 2, &f, l);
        if h.is_empty() {
            h = vec![0];
        }
        h[0] = (h[0] + l - 1) % l;
        poly_trim(&mut h);
        if h.is_empty() {
            continue;
        }
        let g = poly_gcd(&h, &f, l);
        if g.len() > 1 && g.len() < f.len() {
            let other = poly_div_exact(&f, &g, l);
            split_roots(&g, l, rng, out);
            split_roots(&other, l, rng, out);
            return;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn primes_and_modulus() {
        assert!(is_prime(2));
        assert!(is_prime(97));
        assert!(!is_prime(91));
        // smallest prime = 1 mod 12 above 2*24 = 48 is 61
        assert_eq!(table_modulus(24, 12), 61);
        assert_eq!(table_modulus(8, 4), 17);
    }

    #[test]
    fn primitive_roots() {
        let l = 61;
        let g = primitive_root(l);
        let mut seen = std::collections::HashSet::new();
        let mut x = 1u64;
        for _ in 0..60 {
            x = mul_mod(x, g, l);
            seen.insert(x);
        }
        assert_eq!(seen.len(), 60);
    }

    #[test]
    fn square_roots() {
        for p in [13u64, 17, 97, 241] {
            for a in 0..p {
                let sq = mul_mod(a, a, p);
                let r = sqrt_mod(sq, p).unwrap();
                assert_eq!(mul_mod(r, r, p), sq);
            }
        }
    }

    #[test]
    fn roots_of_split_polynomial() {
        let l = 97;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        // (x-3)(x-5)(x-10)^2
        let f = poly_mul(
            &poly_mul(&[l - 3, 1], &[l - 5, 1], l),
            &poly_mul(&[l - 10, 1], &[l - 10, 1], l),
            l,
        );
        let roots = poly_roots(&f, l, &mut rng);
        assert_eq!(roots, vec![3, 5, 10]);
    }
}
