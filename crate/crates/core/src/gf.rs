//! Small finite fields GF(p^m) with explicit arithmetic tables.
//!
//! Only used as an action domain (the affine wreath construction needs
//! GF(4)); matrix entry domains stay prime fields.

use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct SmallField {
    pub p: u64,
    pub m: u32,
    pub q: u64,
    add: Vec<u16>,
    mul: Vec<u16>,
}

impl SmallField {
    pub fn new(p: u64, m: u32) -> Result<Self> {
        if !crate::modp::is_prime(p) {
            return Err(Error::BadArgument(format!("{p} is not prime")));
        }
        let q = p.pow(m);
        if q > 4096 {
            return Err(Error::BadArgument(format!("field size {q} too large")));
        }
        if m == 1 {
            let q = p;
            let mut add = vec![0u16; (q * q) as usize];
            let mut mul = vec![0u16; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    add[(a * q + b) as usize] = ((a + b) % q) as u16;
                    mul[(a * q + b) as usize] = ((a * b) % q) as u16;
                }
            }
            return Ok(SmallField { p, m, q, add, mul });
        }
        // elements are polynomials over GF(p) modulo a monic irreducible of degree m,
        // encoded little-endian base p
        let modpoly = find_irreducible(p, m)?;
        let q = p.pow(m);
        let decode = |x: u64| -> Vec<u64> {
            let mut v = vec![0u64; m as usize];
            let mut x = x;
            for c in v.iter_mut() {
                *c = x % p;
                x /= p;
            }
            v
        };
        let encode = |v: &[u64]| -> u64 {
            v.iter().rev().fold(0u64, |acc, &c| acc * p + c)
        };
        let mut add = vec![0u16; (q * q) as usize];
        let mut mul = vec![0u16; (q * q) as usize];
        for a in 0..q {
            for b in 0..q {
                let va = decode(a);
                let vb = decode(b);
                let sum: Vec<u64> = va.iter().zip(&vb).map(|(x, y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = encode(&sum) as u16;
                // polynomial product reduced mod modpoly
                let mut prod = vec![0u64; 2 * m as usize];
                for (i, &x) in va.iter().enumerate() {
                    for (j, &y) in vb.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                for i in (m as usize..prod.len()).rev() {
                    let c = prod[i];
                    if c == 0 {
                        continue;
                    }
                    prod[i] = 0;
                    for (j, &mc) in modpoly.iter().enumerate().take(m as usize) {
                        let idx = i - m as usize + j;
                        prod[idx] = (prod[idx] + c * (p - mc)) % p;
                    }
                }
                mul[(a * q + b) as usize] = encode(&prod[..m as usize]) as u16;
            }
        }
        Ok(SmallField { p, m, q, add, mul })
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        self.add[(a * self.q + b) as usize] as u64
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.mul[(a * self.q + b) as usize] as u64
    }

    pub fn pow(&self, a: u64, e: u64) -> u64 {
        let mut r = 1;
        for _ in 0..e {
            r = self.mul(r, a);
        }
        r
    }

    /// Smallest multiplicative generator.
    pub fn primitive_element(&self) -> u64 {
        'outer: for a in 1..self.q {
            for e in 1..self.q - 1 {
                if self.pow(a, e) == 1 {
                    continue 'outer;
                }
            }
            if self.pow(a, self.q - 1) == 1 {
                return a;
            }
        }
        1 // q = 2
    }

    /// An additive basis: 1, t, t^2, ... (encodings p^i).
    pub fn additive_basis(&self) -> Vec<u64> {
        (0..self.m).map(|i| self.p.pow(i)).collect()
    }
}

/// Coefficients (little-endian, length m, leading coefficient 1 implied) of a
/// monic irreducible polynomial of degree m over GF(p), found by search.
fn find_irreducible(p: u64, m: u32) -> Result<Vec<u64>> {
    let total = p.pow(m);
    'cand: for code in 0..total {
        let mut coeffs = vec![0u64; m as usize];
        let mut x = code;
        for c in coeffs.iter_mut() {
            *c = x % p;
            x /= p;
        }
        if coeffs[0] == 0 {
            continue; // divisible by x
        }
        // irreducible iff no root for m <= 3 is not sufficient in general,
        // but a degree-m poly with no factor of degree <= m/2 is irreducible;
        // for the small m used here (m <= 3) root-freeness plus, for m = 3,
        // root-freeness alone suffices (a reducible cubic has a linear factor).
        if m <= 3 {
            for r in 0..p {
                let mut val = 1u64; // leading coeff
                for &c in coeffs.iter().rev() {
                    val = (val * r + c) % p;
                }
                if val == 0 {
                    continue 'cand;
                }
            }
            return Ok(coeffs);
        }
        return Err(Error::BadArgument(format!(
            "irreducible search not implemented for degree {m}"
        )));
    }
    Err(Error::BadArgument(format!(
        "no irreducible polynomial of degree {m} over GF({p})"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf4_tables() {
        let f = SmallField::new(2, 2).unwrap();
        assert_eq!(f.q, 4);
        // x + x = 0
        for a in 0..4 {
            assert_eq!(f.add(a, a), 0);
        }
        // multiplicative group is cyclic of order 3
        let g = f.primitive_element();
        assert_eq!(f.pow(g, 3), 1);
        assert_ne!(f.pow(g, 1), 1);
        assert_ne!(f.pow(g, 2), 1);
    }

    #[test]
    fn prime_field() {
        let f = SmallField::new(5, 1).unwrap();
        assert_eq!(f.mul(3, 4), 2);
        assert_eq!(f.add(3, 4), 2);
        assert_eq!(f.primitive_element(), 2);
    }
}
