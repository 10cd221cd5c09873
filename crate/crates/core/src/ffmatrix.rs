//! Square matrices over prime fields GF(q), q prime, acting on row vectors,
//! and their conversion to permutation groups on (nonzero) vectors.
//!
//! Row-vector convention: a matrix M sends v to v*M, so matrix-to-permutation
//! conversion is a homomorphism under the left-to-right product on
//! permutations.

use crate::error::{Error, Result};
use crate::group::{Bounds, PermGroup};
use crate::perm::Permutation;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FFMatrix {
    pub q: u64,
    pub n: usize,
    /// Row-major entries reduced mod q.
    pub entries: Vec<u64>,
}

impl FFMatrix {
    pub fn new(q: u64, n: usize, entries: Vec<u64>) -> Result<Self> {
        if !crate::modp::is_prime(q) {
            return Err(Error::BadArgument(format!(
                "matrix field size {q} must be prime"
            )));
        }
        if entries.len() != n * n {
            return Err(Error::BadArgument(format!(
                "expected {} entries, got {}",
                n * n,
                entries.len()
            )));
        }
        Ok(FFMatrix {
            q,
            n,
            entries: entries.into_iter().map(|e| e % q).collect(),
        })
    }

    pub fn from_rows(q: u64, rows: &[&[u64]]) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for r in rows {
            if r.len() != n {
                return Err(Error::BadArgument("non-square row list".into()));
            }
            entries.extend_from_slice(r);
        }
        Self::new(q, n, entries)
    }

    pub fn identity(q: u64, n: usize) -> Self {
        let mut entries = vec![0; n * n];
        for i in 0..n {
            entries[i * n + i] = 1;
        }
        FFMatrix { q, n, entries }
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.n + j]
    }

    pub fn mul(&self, other: &FFMatrix) -> FFMatrix {
        debug_assert_eq!(self.q, other.q);
        debug_assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = vec![0u64; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.at(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] = (out[i * n + j] + a * other.at(k, j)) % self.q;
                }
            }
        }
        FFMatrix {
            q: self.q,
            n,
            entries: out,
        }
    }

    pub fn det(&self) -> u64 {
        let n = self.n;
        let q = self.q;
        let mut m = self.entries.clone();
        let mut det = 1u64;
        for col in 0..n {
            let pivot = (col..n).find(|&r| m[r * n + col] != 0);
            let pivot = match pivot {
                Some(p) => p,
                None => return 0,
            };
            if pivot != col {
                for j in 0..n {
                    m.swap(pivot * n + j, col * n + j);
                }
                det = (q - det) % q;
            }
            let inv = crate::modp::inv_mod(m[col * n + col], q);
            det = det * m[col * n + col] % q;
            for r in (col + 1)..n {
                let factor = m[r * n + col] * inv % q;
                if factor == 0 {
                    continue;
                }
                for j in col..n {
                    let sub = factor * m[col * n + j] % q;
                    m[r * n + j] = (m[r * n + j] + q - sub) % q;
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Result<FFMatrix> {
        let n = self.n;
        let q = self.q;
        let mut m = self.entries.clone();
        let mut inv = FFMatrix::identity(q, n).entries;
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| m[r * n + col] != 0)
                .ok_or_else(|| Error::BadArgument("singular matrix".into()))?;
            if pivot != col {
                for j in 0..n {
                    m.swap(pivot * n + j, col * n + j);
                    inv.swap(pivot * n + j, col * n + j);
                }
            }
            let pinv = crate::modp::inv_mod(m[col * n + col], q);
            for j in 0..n {
                m[col * n + j] = m[col * n + j] * pinv % q;
                inv[col * n + j] = inv[col * n + j] * pinv % q;
            }
            for r in 0..n {
                if r == col || m[r * n + col] == 0 {
                    continue;
                }
                let factor = m[r * n + col];
                for j in 0..n {
                    let sub_m = factor * m[col * n + j] % q;
                    let sub_i = factor * inv[col * n + j] % q;
                    m[r * n + j] = (m[r * n + j] + q - sub_m) % q;
                    inv[r * n + j] = (inv[r * n + j] + q - sub_i) % q;
                }
            }
        }
        Ok(FFMatrix {
            q,
            n,
            entries: inv,
        })
    }

    /// v * M for a row vector.
    pub fn apply_row(&self, v: &[u64]) -> Vec<u64> {
        let n = self.n;
        (0..n)
            .map(|j| {
                v.iter()
                    .enumerate()
                    .fold(0u64, |acc, (i, &vi)| (acc + vi * self.at(i, j)) % self.q)
            })
            .collect()
    }
}

/// The standard symplectic form on GF(q)^n (n even), pairing coordinates
/// (0,1), (2,3), ...: <u, v> = sum u_{2i} v_{2i+1} - u_{2i+1} v_{2i}.
pub fn symplectic_form(q: u64, u: &[u64], v: &[u64]) -> u64 {
    let mut acc = 0u64;
    for i in (0..u.len()).step_by(2) {
        acc = (acc + u[i] * v[i + 1] % q + (q - u[i + 1] * v[i] % q)) % q;
    }
    acc
}

/// Checks <uM, vM> = <u, v> on all standard basis pairs; returns the first
/// violated pair on failure.
pub fn check_symplectic(m: &FFMatrix) -> Result<()> {
    let n = m.n;
    let q = m.q;
    for i in 0..n {
        for j in 0..n {
            let mut u = vec![0u64; n];
            let mut v = vec![0u64; n];
            u[i] = 1;
            v[j] = 1;
            let lhs = symplectic_form(q, &m.apply_row(&u), &m.apply_row(&v));
            let rhs = symplectic_form(q, &u, &v);
            if lhs != rhs {
                return Err(Error::NotSymplectic { u, v });
            }
        }
    }
    Ok(())
}

/// Vector <-> index encodings, little-endian base q.
pub fn vector_index(q: u64, v: &[u64]) -> usize {
    v.iter().rev().fold(0u64, |acc, &c| acc * q + c) as usize
}

pub fn index_vector(q: u64, n: usize, mut idx: usize) -> Vec<u64> {
    let mut v = vec![0u64; n];
    for c in v.iter_mut() {
        *c = (idx as u64) % q;
        idx /= q as usize;
    }
    v
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ActionDomain {
    Vectors,
    NonzeroVectors,
}

/// The permutation induced by M on the chosen vector domain.
pub fn matrix_permutation(m: &FFMatrix, domain: ActionDomain) -> Result<Permutation> {
    let q = m.q;
    let n = m.n;
    let total = (q as usize).pow(n as u32);
    let offset = match domain {
        ActionDomain::Vectors => 0,
        ActionDomain::NonzeroVectors => 1,
    };
    if m.det() == 0 {
        return Err(Error::BadArgument("singular matrix has no action".into()));
    }
    let images = (offset..total)
        .map(|idx| {
            let v = index_vector(q, n, idx);
            (vector_index(q, &m.apply_row(&v)) - offset) as u16
        })
        .collect();
    Permutation::from_images(images)
}

/// The permutation group generated by matrices acting on (nonzero) vectors.
pub fn matrix_group(mats: &[FFMatrix], domain: ActionDomain, bounds: &Bounds) -> Result<PermGroup> {
    if mats.is_empty() {
        return Err(Error::BadArgument("no matrix generators".into()));
    }
    let degree = {
        let total = (mats[0].q as usize).pow(mats[0].n as u32);
        match domain {
            ActionDomain::Vectors => total,
            ActionDomain::NonzeroVectors => total - 1,
        }
    };
    let gens = mats
        .iter()
        .map(|m| matrix_permutation(m, domain))
        .collect::<Result<Vec<_>>>()?;
    PermGroup::from_generators_bounded(degree, gens, bounds)
}
