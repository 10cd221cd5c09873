//! Permutations of {0, ..., degree-1} stored as image tables.
//!
//! Products compose left to right: `(a * b)` maps `x` to `b(a(x))`, so that
//! sending a group element to its right action is a homomorphism.

use std::fmt;
use std::ops::Mul;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Box<[u16]>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u16).collect(),
        }
    }

    /// Builds a permutation from an image table, checking bijectivity.
    pub fn from_images(images: Vec<u16>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if (x as usize) >= n || seen[x as usize] {
                return Err(Error::BadArgument(format!(
                    "image table {:?} is not a bijection on 0..{n}",
                    images
                )));
            }
            seen[x as usize] = true;
        }
        Ok(Permutation {
            images: images.into_boxed_slice(),
        })
    }

    /// Builds from disjoint-cycle notation on `degree` points.
    pub fn from_cycles(degree: usize, cycles: &[&[u16]]) -> Result<Self> {
        let mut images: Vec<u16> = (0..degree as u16).collect();
        for cyc in cycles {
            for i in 0..cyc.len() {
                let from = cyc[i] as usize;
                let to = cyc[(i + 1) % cyc.len()];
                if from >= degree || (to as usize) >= degree {
                    return Err(Error::BadArgument(format!(
                        "cycle point out of range for degree {degree}"
                    )));
                }
                images[from] = to;
            }
        }
        Self::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: u16) -> u16 {
        self.images[point as usize]
    }

    pub fn images(&self) -> &[u16] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u16; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u16;
        }
        Permutation {
            images: inv.into_boxed_slice(),
        }
    }

    /// `g^-1 * self * g`.
    pub fn conjugated_by(&self, g: &Permutation) -> Self {
        // (g^-1 * self * g)(x) = g(self(g^-1(x))); build directly.
        let mut out = vec![0u16; self.images.len()];
        for x in 0..self.images.len() {
            let gx = g.images[x] as usize;
            out[gx] = g.images[self.images[x] as usize];
        }
        Permutation {
            images: out.into_boxed_slice(),
        }
    }

    /// `a^-1 b^-1 a b`.
    pub fn commutator(a: &Permutation, b: &Permutation) -> Self {
        &(&a.inverse() * &b.inverse()) * &(a * b)
    }

    /// Multiplicative order (lcm of cycle lengths).
    pub fn order(&self) -> u64 {
        let mut seen = vec![false; self.images.len()];
        let mut ord = 1u64;
        for start in 0..self.images.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                p = self.images[p] as usize;
                len += 1;
            }
            ord = lcm(ord, len);
        }
        ord
    }

    /// Sorted multiset of cycle lengths (a conjugation invariant).
    pub fn cycle_type(&self) -> Vec<u16> {
        let mut seen = vec![false; self.images.len()];
        let mut cycles = Vec::new();
        for start in 0..self.images.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0u16;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                p = self.images[p] as usize;
                len += 1;
            }
            cycles.push(len);
        }
        cycles.sort_unstable();
        cycles
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Permutation::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

impl Mul for &Permutation {
    type Output = Permutation;

    /// Apply `self` first, then `rhs`.
    fn mul(self, rhs: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), rhs.degree());
        let images = self
            .images
            .iter()
            .map(|&x| rhs.images[x as usize])
            .collect();
        Permutation { images }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Permutation {
    /// Disjoint cycle notation, identity printed as "()".
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.images.len()];
        let mut wrote = false;
        for start in 0..self.images.len() {
            if seen[start] || self.images[start] as usize == start {
                seen[start] = true;
                continue;
            }
            write!(f, "(")?;
            let mut p = start;
            let mut first = true;
            while !seen[p] {
                seen[p] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{}", p)?;
                first = false;
                p = self.images[p] as usize;
            }
            write!(f, ")")?;
            wrote = true;
        }
        if !wrote {
            write!(f, "()")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn perm(images: &[u16]) -> Permutation {
        Permutation::from_images(images.to_vec()).unwrap()
    }

    #[test]
    fn identity_fixes_everything() {
        let e = Permutation::identity(4);
        assert!(e.is_identity());
        assert_eq!(e.order(), 1);
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
        assert!(Permutation::from_images(vec![0, 3]).is_err());
    }

    #[test]
    fn composition_order() {
        // a = (0 1), b = (1 2); a*b applies a first.
        let a = perm(&[1, 0, 2]);
        let b = perm(&[0, 2, 1]);
        let ab = &a * &b;
        assert_eq!(ab.apply(0), 2); // 0 -a-> 1 -b-> 2
    }

    #[test]
    fn conjugation_matches_definition() {
        let a = perm(&[1, 2, 0, 3]);
        let g = perm(&[3, 1, 0, 2]);
        let direct = &(&g.inverse() * &a) * &g;
        assert_eq!(a.conjugated_by(&g), direct);
    }

    #[test]
    fn order_of_cycle_products() {
        // (0 1 2)(3 4): order 6
        let p = Permutation::from_cycles(5, &[&[0, 1, 2], &[3, 4]]).unwrap();
        assert_eq!(p.order(), 6);
        assert_eq!(p.cycle_type(), vec![2, 3]);
    }

    proptest! {
        #[test]
        fn inverse_and_associativity(seed in 0u64..10_000) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let deg = 8usize;
            let mut make = || {
                let mut v: Vec<u16> = (0..deg as u16).collect();
                for i in (1..deg).rev() {
                    let j = rng.gen_range(0..=i);
                    v.swap(i, j);
                }
                Permutation::from_images(v).unwrap()
            };
            let a = make();
            let b = make();
            let c = make();
            prop_assert!((&a * &a.inverse()).is_identity());
            prop_assert_eq!(&(&(&a * &b) * &c), &(&a * &(&b * &c)));
            prop_assert_eq!((&a * &b).inverse(), &b.inverse() * &a.inverse());
        }
    }
}
