//! Exact irreducible character tables by the Dixon-Burnside modular method.
//!
//! Class multiplication coefficient matrices are diagonalized simultaneously
//! over F_l, where l = 1 mod exp(G) and l > 2|G|, by iterative eigenspace
//! splitting on seeded random combinations. Character values live in F_l;
//! degrees and root-of-unity multiplicities are recovered as exact integers
//! (unique below l/2), and a complex lift is derived from the multiplicity
//! vectors via the power maps. All equality decisions are made on exact
//! integers, never on floats.

use std::sync::atomic::{AtomicU64, Ordering};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::conjugacy::ConjugacyData;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::modp::{inv_mod, mul_mod, pow_mod, sqrt_mod, table_modulus};

static TABLE_COUNTER: AtomicU64 = AtomicU64::new(1);

pub const DEFAULT_SEED: u64 = 0x0001_7A6E;

#[derive(Clone, Debug)]
pub struct CharacterTable {
    pub id: u64,
    pub group_order: u64,
    pub num_classes: usize,
    pub class_sizes: Vec<u64>,
    pub inverse_class: Vec<u32>,
    pub exponent: u64,
    pub modulus: u64,
    /// A fixed primitive exponent-th root of unity mod `modulus`; the complex
    /// lift sends it to exp(2 pi i / exponent).
    pub root: u64,
    pub degrees: Vec<u64>,
    /// Rows (sorted by degree, then by value vector) of values in F_l.
    pub values: Vec<Vec<u64>>,
    /// Complex lift of `values`, same layout.
    pub complex: Vec<Vec<Complex64>>,
    pub rep_orders: Vec<u64>,
    /// For each class c: class of rep_c^t for t = 0..rep_orders[c].
    pub power_classes: Vec<Vec<u32>>,
}

impl CharacterTable {
    pub fn build(group: &PermGroup, classes: &ConjugacyData, seed: u64) -> Result<Self> {
        let modulus = table_modulus(group.order(), classes.exponent);
        let root = pow_mod(
            crate::modp::primitive_root(modulus),
            (modulus - 1) / classes.exponent,
            modulus,
        );
        Self::build_at(group, classes, seed, modulus, root, classes.exponent)
    }

    /// Builds at a caller-supplied modulus (used for subgroup tables that
    /// must share the parent's field). `ambient_root` must be a primitive
    /// `ambient_exponent`-th root of unity mod `modulus`, and the subgroup
    /// exponent must divide `ambient_exponent`.
    pub fn build_at(
        group: &PermGroup,
        classes: &ConjugacyData,
        seed: u64,
        modulus: u64,
        ambient_root: u64,
        ambient_exponent: u64,
    ) -> Result<Self> {
        let order = group.order();
        let exponent = classes.exponent;
        if ambient_exponent % exponent != 0 || (modulus - 1) % exponent != 0 {
            return Err(Error::TableConstruction(format!(
                "exponent {exponent} incompatible with modulus {modulus}"
            )));
        }
        if modulus <= 2 * order {
            return Err(Error::TableConstruction(format!(
                "modulus {modulus} too small for group order {order}"
            )));
        }
        let root = pow_mod(ambient_root, ambient_exponent / exponent, modulus);
        let k = classes.num_classes();
        let e = group.enumeration()?;

        // flat class-multiplication matrices: a[i][j*k + l] with
        // a_{ijl} = #{ x in C_i : x^-1 z_l in C_j }
        let inverses: Vec<u32> = e
            .list
            .iter()
            .map(|x| e.index_of(&x.inverse()).expect("member"))
            .collect();
        let mut mats: Vec<Vec<u32>> = vec![vec![0u32; k * k]; k];
        for l_idx in 0..k {
            let z = &classes.reps[l_idx];
            for x_idx in 0..e.len() {
                let i = classes.class_of_index[x_idx] as usize;
                let y = &e.list[inverses[x_idx] as usize] * z;
                let j = classes.class_of_index
                    [e.index_of(&y).expect("product of members") as usize]
                    as usize;
                mats[i][j * k + l_idx] += 1;
            }
        }

        // split the class-function space into common eigenlines
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut subspaces: Vec<Rref> = vec![Rref::full(k, modulus)];
        let mut lines: Vec<Vec<u64>> = Vec::new();
        let mut attempts = 0;
        while !subspaces.is_empty() {
            attempts += 1;
            if attempts > 200 {
                return Err(Error::TableConstruction(
                    "eigenspace splitting did not converge".into(),
                ));
            }
            let coeffs: Vec<u64> = (0..k).map(|_| rng.gen_range(0..modulus)).collect();
            let mut m = vec![0u64; k * k];
            for (i, a) in mats.iter().enumerate() {
                let c = coeffs[i];
                if c == 0 {
                    continue;
                }
                for (pos, &val) in a.iter().enumerate() {
                    if val != 0 {
                        m[pos] = (m[pos] + mul_mod(c, val as u64, modulus)) % modulus;
                    }
                }
            }
            let mut next = Vec::new();
            for sub in subspaces {
                for piece in sub.split_by(&m, modulus, &mut rng)? {
                    if piece.dim() == 1 {
                        lines.push(piece.rows.into_iter().next().unwrap());
                    } else {
                        next.push(piece);
                    }
                }
            }
            subspaces = next;
        }
        if lines.len() != k {
            return Err(Error::TableConstruction(format!(
                "found {} eigenlines, expected {k}",
                lines.len()
            )));
        }

        // normalize to central characters and recover degrees and values
        let order_mod = order % modulus;
        let sqrt_bound = (order as f64).sqrt() as u64 + 1;
        let mut rows: Vec<(u64, Vec<u64>)> = Vec::new();
        for line in lines {
            if line[0] == 0 {
                return Err(Error::TableConstruction(
                    "eigenline vanishes at the identity class".into(),
                ));
            }
            let scale = inv_mod(line[0], modulus);
            let omega: Vec<u64> = line.iter().map(|&v| mul_mod(v, scale, modulus)).collect();
            let mut s = 0u64;
            for c in 0..k {
                let term = mul_mod(omega[c], omega[classes.inverse_class[c] as usize], modulus);
                s = (s + mul_mod(term, inv_mod(classes.sizes[c] % modulus, modulus), modulus))
                    % modulus;
            }
            let d2 = mul_mod(order_mod, inv_mod(s, modulus), modulus);
            let d_mod = sqrt_mod(d2, modulus).ok_or_else(|| {
                Error::TableConstruction("degree squared is not a square mod l".into())
            })?;
            let degree = if d_mod <= sqrt_bound {
                d_mod
            } else {
                modulus - d_mod
            };
            if degree == 0 || degree > sqrt_bound || order % degree != 0 {
                return Err(Error::TableConstruction(format!(
                    "recovered degree {degree} is not a divisor of {order} below sqrt"
                )));
            }
            let values: Vec<u64> = (0..k)
                .map(|c| {
                    mul_mod(
                        mul_mod(degree, omega[c], modulus),
                        inv_mod(classes.sizes[c] % modulus, modulus),
                        modulus,
                    )
                })
                .collect();
            rows.push((degree, values));
        }
        rows.sort();
        let degrees: Vec<u64> = rows.iter().map(|(d, _)| *d).collect();
        let values: Vec<Vec<u64>> = rows.into_iter().map(|(_, v)| v).collect();

        if degrees.iter().map(|d| d * d).sum::<u64>() != order {
            return Err(Error::TableConstruction(
                "degree squares do not sum to the group order".into(),
            ));
        }
        if !values[0].iter().all(|&v| v == 1) {
            return Err(Error::TableConstruction(
                "first row is not the principal character".into(),
            ));
        }

        let power_classes: Vec<Vec<u32>> = (0..k)
            .map(|c| {
                let o = classes.rep_orders[c];
                let mut pw = group.identity();
                let mut out = Vec::with_capacity(o as usize);
                for _ in 0..o {
                    out.push(classes.class_of(group, &pw).expect("member"));
                    pw = &pw * &classes.reps[c];
                }
                out
            })
            .collect();

        let mut table = CharacterTable {
            id: TABLE_COUNTER.fetch_add(1, Ordering::Relaxed),
            group_order: order,
            num_classes: k,
            class_sizes: classes.sizes.clone(),
            inverse_class: classes.inverse_class.clone(),
            exponent,
            modulus,
            root,
            degrees,
            values,
            complex: Vec::new(),
            rep_orders: classes.rep_orders.clone(),
            power_classes,
        };
        table.check_orthogonality()?;
        table.complex = (0..k)
            .map(|_| Vec::new())
            .collect::<Vec<_>>();
        let mut complex = Vec::with_capacity(table.values.len());
        for r in 0..table.values.len() {
            let mut row = Vec::with_capacity(k);
            for c in 0..k {
                let mults = table.root_multiplicities(&table.values[r], c)?;
                let o = table.rep_orders[c];
                let mut v = Complex64::new(0.0, 0.0);
                for (j, &mj) in mults.iter().enumerate() {
                    if mj > 0 {
                        let ang = 2.0 * std::f64::consts::PI * j as f64 / o as f64;
                        v += Complex64::new(ang.cos(), ang.sin()) * mj as f64;
                    }
                }
                row.push(v);
            }
            complex.push(row);
        }
        table.complex = complex;
        Ok(table)
    }

    /// Exact multiplicities (m_0, ..., m_{o-1}) with f(rep_c) = sum m_j zeta_o^j,
    /// recovered from the values of the character f at the power classes.
    /// f must be a genuine character (sums of at most l/2 roots per value).
    pub fn root_multiplicities(&self, f: &[u64], class: usize) -> Result<Vec<u64>> {
        let l = self.modulus;
        let o = self.rep_orders[class];
        let zeta = pow_mod(self.root, self.exponent / o, l);
        let zeta_inv = inv_mod(zeta, l);
        let o_inv = inv_mod(o % l, l);
        let mut out = Vec::with_capacity(o as usize);
        for j in 0..o {
            let mut acc = 0u64;
            let mut w = 1u64; // zeta^{-jt}
            let step = pow_mod(zeta_inv, j, l);
            for t in 0..o {
                let val = f[self.power_classes[class][t as usize] as usize];
                acc = (acc + mul_mod(val, w, l)) % l;
                w = mul_mod(w, step, l);
            }
            let m = mul_mod(acc, o_inv, l);
            if m > l / 2 {
                return Err(Error::NotACharacter { row: class });
            }
            out.push(m);
        }
        Ok(out)
    }

    fn check_orthogonality(&self) -> Result<()> {
        let l = self.modulus;
        let k = self.num_classes;
        let order_mod = self.group_order % l;
        // first orthogonality: sum_c |C| chi_r(c) chi_s(c^-1) = delta |G|
        for r in 0..k {
            for s in 0..k {
                let mut acc = 0u64;
                for c in 0..k {
                    let term = mul_mod(
                        self.values[r][c],
                        self.values[s][self.inverse_class[c] as usize],
                        l,
                    );
                    acc = (acc + mul_mod(self.class_sizes[c] % l, term, l)) % l;
                }
                let expected = if r == s { order_mod } else { 0 };
                if acc != expected {
                    return Err(Error::TableConstruction(format!(
                        "first orthogonality fails for rows {r}, {s}"
                    )));
                }
            }
        }
        // second orthogonality: sum_r chi_r(c) chi_r(d^-1) = delta |C_G(c)|
        for c in 0..k {
            for d in 0..k {
                let mut acc = 0u64;
                for r in 0..k {
                    acc = (acc
                        + mul_mod(
                            self.values[r][c],
                            self.values[r][self.inverse_class[d] as usize],
                            l,
                        ))
                        % l;
                }
                let expected = if c == d {
                    mul_mod(
                        order_mod,
                        inv_mod(self.class_sizes[c] % l, l),
                        l,
                    )
                } else {
                    0
                };
                if acc != expected {
                    return Err(Error::TableConstruction(format!(
                        "second orthogonality fails for columns {c}, {d}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn degree_set(&self) -> Vec<u64> {
        let mut d = self.degrees.clone();
        d.sort_unstable();
        d.dedup();
        d
    }
}

/// A subspace of F_l^k held as a reduced-row-echelon basis.
struct Rref {
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
    modulus: u64,
}

impl Rref {
    fn full(k: usize, modulus: u64) -> Self {
        let rows = (0..k)
            .map(|i| {
                let mut r = vec![0u64; k];
                r[i] = 1;
                r
            })
            .collect();
        Rref {
            rows,
            pivots: (0..k).collect(),
            modulus,
        }
    }

    fn from_rows(mut rows: Vec<Vec<u64>>, modulus: u64) -> Self {
        // gaussian elimination to RREF
        let k = rows[0].len();
        let mut pivots = Vec::new();
        let mut rank = 0usize;
        for col in 0..k {
            let pivot = (rank..rows.len()).find(|&r| rows[r][col] != 0);
            let Some(p) = pivot else { continue };
            rows.swap(rank, p);
            let inv = inv_mod(rows[rank][col], modulus);
            for v in rows[rank].iter_mut() {
                *v = mul_mod(*v, inv, modulus);
            }
            for r in 0..rows.len() {
                if r != rank && rows[r][col] != 0 {
                    let f = rows[r][col];
                    let source = rows[rank].clone();
                    for (v, s) in rows[r].iter_mut().zip(&source) {
                        *v = (*v + modulus - mul_mod(f, *s, modulus)) % modulus;
                    }
                }
            }
            pivots.push(col);
            rank += 1;
            if rank == rows.len() {
                break;
            }
        }
        rows.truncate(rank);
        Rref {
            rows,
            pivots,
            modulus,
        }
    }

    fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Splits this M-invariant subspace into the eigenspaces of M restricted
    /// to it. Returns a single piece (itself) if M acts as a scalar here.
    fn split_by(
        self,
        m: &[u64],
        modulus: u64,
        rng: &mut ChaCha8Rng,
    ) -> Result<Vec<Rref>> {
        let d = self.dim();
        if d == 1 {
            return Ok(vec![self]);
        }
        let k = self.rows[0].len();
        // images of basis rows under M (columns convention: (Mv)[j] = sum M[j][l] v[l])
        let mut images: Vec<Vec<u64>> = Vec::with_capacity(d);
        for b in &self.rows {
            let mut w = vec![0u64; k];
            for j in 0..k {
                let mut acc = 0u64;
                for (l_idx, &bv) in b.iter().enumerate() {
                    if bv != 0 {
                        acc = (acc + mul_mod(m[j * k + l_idx], bv, modulus)) % modulus;
                    }
                }
                w[j] = acc;
            }
            images.push(w);
        }
        // coordinates of each image in the basis: C[r][s]
        let mut cmat = vec![0u64; d * d];
        for (r, w) in images.iter().enumerate() {
            let mut w = w.clone();
            for (s, &p) in self.pivots.iter().enumerate() {
                let coeff = w[p];
                cmat[r * d + s] = coeff;
                if coeff != 0 {
                    for (wv, bv) in w.iter_mut().zip(&self.rows[s]) {
                        *wv = (*wv + modulus - mul_mod(coeff, *bv, modulus)) % modulus;
                    }
                }
            }
            if w.iter().any(|&v| v != 0) {
                return Err(Error::TableConstruction(
                    "subspace is not invariant under the class algebra".into(),
                ));
            }
        }
        // act on coordinates with D = C^T
        let mut dmat = vec![0u64; d * d];
        for r in 0..d {
            for s in 0..d {
                dmat[r * d + s] = cmat[s * d + r];
            }
        }
        let charpoly = hessenberg_charpoly(&dmat, d, modulus);
        let roots = crate::modp::poly_roots(&charpoly, modulus, rng);
        if roots.len() <= 1 {
            return Ok(vec![self]);
        }
        let mut pieces = Vec::new();
        let mut covered = 0usize;
        for lam in roots {
            // nullspace of D - lam I
            let mut shifted = dmat.clone();
            for i in 0..d {
                shifted[i * d + i] = (shifted[i * d + i] + modulus - lam % modulus) % modulus;
            }
            let null = nullspace(&shifted, d, modulus);
            if null.is_empty() {
                continue;
            }
            covered += null.len();
            // back to k-space
            let vectors: Vec<Vec<u64>> = null
                .iter()
                .map(|coords| {
                    let mut v = vec![0u64; k];
                    for (r, &x) in coords.iter().enumerate() {
                        if x != 0 {
                            for (vv, bv) in v.iter_mut().zip(&self.rows[r]) {
                                *vv = (*vv + mul_mod(x, *bv, modulus)) % modulus;
                            }
                        }
                    }
                    v
                })
                .collect();
            pieces.push(Rref::from_rows(vectors, modulus));
        }
        if covered != d {
            return Err(Error::TableConstruction(
                "restricted class operator is not diagonalizable".into(),
            ));
        }
        Ok(pieces)
    }
}

/// Characteristic polynomial of a d x d matrix over F_l via Hessenberg
/// reduction, coefficients ascending.
fn hessenberg_charpoly(mat: &[u64], d: usize, l: u64) -> Vec<u64> {
    let mut h = mat.to_vec();
    // similarity reduction to upper Hessenberg form
    for col in 0..d.saturating_sub(2) {
        let pivot = ((col + 1)..d).find(|&r| h[r * d + col] != 0);
        let Some(p) = pivot else { continue };
        if p != col + 1 {
            for j in 0..d {
                h.swap(p * d + j, (col + 1) * d + j);
            }
            for i in 0..d {
                h.swap(i * d + p, i * d + col + 1);
            }
        }
        let inv = inv_mod(h[(col + 1) * d + col], l);
        for r in (col + 2)..d {
            let factor = mul_mod(h[r * d + col], inv, l);
            if factor == 0 {
                continue;
            }
            // row r -= factor * row col+1
            for j in 0..d {
                let sub = mul_mod(factor, h[(col + 1) * d + j], l);
                h[r * d + j] = (h[r * d + j] + l - sub) % l;
            }
            // col col+1 += factor * col r
            for i in 0..d {
                let add = mul_mod(factor, h[i * d + r], l);
                h[i * d + col + 1] = (h[i * d + col + 1] + add) % l;
            }
        }
    }
    // p_m(x) = (x - h[m-1][m-1]) p_{m-1}(x)
    //        - sum_i h[i][m-1] (prod_{j=i+1..m-1} h[j][j-1]) p_i(x)
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for m in 1..=d {
        let hm = h[(m - 1) * d + (m - 1)];
        let prev = &polys[m - 1];
        let mut poly = vec![0u64; prev.len() + 1];
        for (i, &c) in prev.iter().enumerate() {
            poly[i + 1] = (poly[i + 1] + c) % l;
            poly[i] = (poly[i] + l - mul_mod(hm, c, l)) % l;
        }
        let mut subdiag = 1u64;
        for i in (0..m.saturating_sub(1)).rev() {
            subdiag = mul_mod(subdiag, h[(i + 1) * d + i], l);
            let coeff = mul_mod(h[i * d + (m - 1)], subdiag, l);
            if coeff == 0 {
                continue;
            }
            for (j, &c) in polys[i].iter().enumerate() {
                poly[j] = (poly[j] + l - mul_mod(coeff, c, l)) % l;
            }
        }
        polys.push(poly);
    }
    polys.pop().unwrap()
}

/// Basis of the nullspace of a d x d matrix over F_l.
fn nullspace(mat: &[u64], d: usize, l: u64) -> Vec<Vec<u64>> {
    let mut m = mat.to_vec();
    let mut pivot_cols = Vec::new();
    let mut rank = 0usize;
    for col in 0..d {
        let pivot = (rank..d).find(|&r| m[r * d + col] != 0);
        let Some(p) = pivot else { continue };
        for j in 0..d {
            m.swap(rank * d + j, p * d + j);
        }
        let inv = inv_mod(m[rank * d + col], l);
        for j in 0..d {
            m[rank * d + j] = mul_mod(m[rank * d + j], inv, l);
        }
        for r in 0..d {
            if r != rank && m[r * d + col] != 0 {
                let f = m[r * d + col];
                for j in 0..d {
                    let sub = mul_mod(f, m[rank * d + j], l);
                    m[r * d + j] = (m[r * d + j] + l - sub) % l;
                }
            }
        }
        pivot_cols.push(col);
        rank += 1;
        if rank == d {
            break;
        }
    }
    let mut basis = Vec::new();
    for free in 0..d {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![0u64; d];
        v[free] = 1;
        for (r, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = (l - m[r * d + free]) % l;
        }
        basis.push(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::named_group;

    fn table_of(name: &str) -> CharacterTable {
        let g = named_group(name).unwrap();
        let c = ConjugacyData::compute(&g).unwrap();
        CharacterTable::build(&g, &c, DEFAULT_SEED).unwrap()
    }

    #[test]
    fn c2_table() {
        let t = table_of("C2");
        assert_eq!(t.degrees, vec![1, 1]);
        // complex lift [[1,1],[1,-1]]
        assert!((t.complex[0][0].re - 1.0).abs() < 1e-12);
        assert!((t.complex[1][1].re + 1.0).abs() < 1e-12);
        assert!(t.complex[1][1].im.abs() < 1e-12);
    }

    #[test]
    fn sl23_degrees() {
        let t = table_of("SL(2,3)");
        assert_eq!(t.degrees, vec![1, 1, 1, 2, 2, 2, 3]);
    }

    #[test]
    fn q8_degrees() {
        let t = table_of("Q8");
        assert_eq!(t.degrees, vec![1, 1, 1, 1, 2]);
    }

    #[test]
    fn degree_sets() {
        assert_eq!(table_of("C6").degree_set(), vec![1]);
        assert_eq!(table_of("SL(2,3)").degree_set(), vec![1, 2, 3]);
        let tilde = table_of("~GL(2,3)");
        assert_eq!(tilde.degree_set(), vec![1, 2, 3, 4]);
        assert_eq!(
            tilde.degrees.iter().map(|d| d * d).sum::<u64>(),
            48
        );
    }

    #[test]
    fn tables_are_deterministic_across_seeds() {
        let g = named_group("S4").unwrap();
        let c = ConjugacyData::compute(&g).unwrap();
        let t1 = CharacterTable::build(&g, &c, 1).unwrap();
        let t2 = CharacterTable::build(&g, &c, 999).unwrap();
        assert_eq!(t1.values, t2.values);
        assert_eq!(t1.degrees, t2.degrees);
    }

    #[test]
    fn multiplicity_vectors_are_exact() {
        let t = table_of("C3");
        // the two non-principal linear characters take values zeta, zeta^2
        for r in 1..3 {
            for c in 1..3 {
                let m = t.root_multiplicities(&t.values[r], c).unwrap();
                assert_eq!(m.iter().sum::<u64>(), 1);
                assert_eq!(m[0], 0);
            }
        }
    }
}
