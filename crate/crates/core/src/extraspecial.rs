//! Extraspecial groups of odd exponent p in the coordinate model, the lift of
//! symplectic matrices to automorphisms, and semidirect products with
//! symplectic matrix groups.
//!
//! Elements are pairs (v, z) with v in GF(p)^(2n), z in GF(p), multiplied by
//!     (u, z)(v, w) = (u + v, z + w + f(u, v)),   f(u, v) = 2^-1 <u, v>,
//! where <,> is the standard symplectic form. The commutator of two elements
//! is (0, <u, v>), the center is v = 0, and every element has order p.

use crate::error::{Error, Result};
use crate::ffmatrix::{check_symplectic, symplectic_form, FFMatrix};
use crate::group::{Bounds, PermGroup};
use crate::perm::Permutation;

#[derive(Clone, Debug)]
pub struct ExtraspecialGroup {
    pub p: u64,
    pub n: usize,
    /// Regular action on the p^(2n+1) coordinate points.
    pub carrier: PermGroup,
    inv2: u64,
}

impl ExtraspecialGroup {
    pub fn new(p: u64, n: usize) -> Result<Self> {
        Self::new_bounded(p, n, &Bounds::default())
    }

    pub fn new_bounded(p: u64, n: usize, bounds: &Bounds) -> Result<Self> {
        if p == 2 {
            return Err(Error::BadArgument(
                "exponent-p coordinate model needs odd p; use the Q8*D8 central product for 2^5"
                    .into(),
            ));
        }
        if !crate::modp::is_prime(p) {
            return Err(Error::BadArgument(format!("{p} is not prime")));
        }
        let order = p.pow(2 * n as u32 + 1);
        if order > bounds.enumeration {
            return Err(Error::GroupTooLarge {
                order: order as u128,
                bound: bounds.enumeration,
            });
        }
        let inv2 = crate::modp::inv_mod(2 % p, p);
        let dim = 2 * n + 1;
        let degree = order as usize;
        let mut gens = Vec::new();
        for basis in 0..dim {
            let mut coords = vec![0u64; dim];
            coords[basis] = 1;
            gens.push(translation_perm(p, n, inv2, degree, &coords));
        }
        let carrier = PermGroup::from_generators_bounded(degree, gens, bounds)?;
        debug_assert_eq!(carrier.order(), order);
        Ok(ExtraspecialGroup {
            p,
            n,
            carrier,
            inv2,
        })
    }

    pub fn order(&self) -> u64 {
        self.p.pow(2 * self.n as u32 + 1)
    }

    /// f(u, v) = 2^-1 <u, v>.
    pub fn twisted_form(&self, u: &[u64], v: &[u64]) -> u64 {
        crate::modp::mul_mod(self.inv2, symplectic_form(self.p, u, v), self.p)
    }

    /// Coordinates (v, z) of a carrier point.
    pub fn coords_of(&self, point: usize) -> (Vec<u64>, u64) {
        let all = crate::ffmatrix::index_vector(self.p, 2 * self.n + 1, point);
        let z = all[2 * self.n];
        (all[..2 * self.n].to_vec(), z)
    }

    pub fn point_of(&self, v: &[u64], z: u64) -> usize {
        let mut all = v.to_vec();
        all.push(z % self.p);
        crate::ffmatrix::vector_index(self.p, &all)
    }

    /// The right-translation permutation by the element with coordinates (v, z).
    pub fn translation(&self, v: &[u64], z: u64) -> Permutation {
        let mut coords = v.to_vec();
        coords.push(z % self.p);
        translation_perm(self.p, self.n, self.inv2, self.order() as usize, &coords)
    }

    /// The group element (as a carrier member) with coordinates (v, z).
    pub fn element(&self, v: &[u64], z: u64) -> Permutation {
        self.translation(v, z)
    }

    /// The automorphism (v, z) -> (vM, z) for symplectic M, as a permutation
    /// of the carrier points. Rejects non-symplectic input with the violated
    /// basis pair.
    pub fn winter_lift(&self, m: &FFMatrix) -> Result<Permutation> {
        if m.q != self.p || m.n != 2 * self.n {
            return Err(Error::BadArgument(format!(
                "matrix over GF({}) of size {} does not act on GF({})^{}",
                m.q,
                m.n,
                self.p,
                2 * self.n
            )));
        }
        check_symplectic(m)?;
        Ok(self.lift_unchecked(m))
    }

    fn lift_unchecked(&self, m: &FFMatrix) -> Permutation {
        let degree = self.order() as usize;
        let images = (0..degree)
            .map(|pt| {
                let (v, z) = self.coords_of(pt);
                self.point_of(&m.apply_row(&v), z) as u16
            })
            .collect();
        Permutation::from_images(images).expect("lift is a bijection")
    }
}

fn translation_perm(p: u64, n: usize, inv2: u64, degree: usize, coords: &[u64]) -> Permutation {
    let dim = 2 * n + 1;
    let gv = &coords[..2 * n];
    let gz = coords[2 * n];
    let images = (0..degree)
        .map(|pt| {
            let all = crate::ffmatrix::index_vector(p, dim, pt);
            let (v, z) = (&all[..2 * n], all[2 * n]);
            // (v, z) * (gv, gz) = (v + gv, z + gz + f(v, gv))
            let f = crate::modp::mul_mod(inv2, symplectic_form(p, v, gv), p);
            let mut out: Vec<u64> = v.iter().zip(gv).map(|(a, b)| (a + b) % p).collect();
            out.push((z + gz + f) % p);
            crate::ffmatrix::vector_index(p, &out) as u16
        })
        .collect();
    Permutation::from_images(images).expect("translation is a bijection")
}

/// A semidirect product H x| E with E extraspecial and H a symplectic matrix
/// group, realized faithfully on the disjoint union of E's coordinate points
/// and the nonzero vectors of GF(p)^(2n).
pub struct SemidirectExtraspecial {
    pub group: PermGroup,
    /// The image of E inside `group` (same degree).
    pub e_subgroup: PermGroup,
    /// The image of Z(E) inside `group`.
    pub z_subgroup: PermGroup,
    pub p: u64,
    pub n: usize,
}

pub fn semidirect_extraspecial(
    p: u64,
    n: usize,
    h_mats: &[FFMatrix],
    bounds: &Bounds,
) -> Result<SemidirectExtraspecial> {
    let es = ExtraspecialGroup::new_bounded(p, n, bounds)?;
    for m in h_mats {
        if m.q != p || m.n != 2 * n {
            return Err(Error::BadArgument(
                "H generators must be 2n x 2n over GF(p)".into(),
            ));
        }
        check_symplectic(m)?;
    }
    let e_points = es.order() as usize;
    let v_points = (p.pow(2 * n as u32) - 1) as usize;
    let degree = e_points + v_points;
    let dim = 2 * n;

    let widen = |inner: &Permutation, vec_part: Option<&FFMatrix>| -> Permutation {
        let mut images: Vec<u16> = Vec::with_capacity(degree);
        for pt in 0..e_points {
            images.push(inner.apply(pt as u16));
        }
        match vec_part {
            None => {
                for pt in 0..v_points {
                    images.push((e_points + pt) as u16);
                }
            }
            Some(m) => {
                for pt in 0..v_points {
                    let v = crate::ffmatrix::index_vector(p, dim, pt + 1);
                    let w = crate::ffmatrix::vector_index(p, &m.apply_row(&v)) - 1;
                    images.push((e_points + w) as u16);
                }
            }
        }
        Permutation::from_images(images).expect("widened bijection")
    };

    let mut gens = Vec::new();
    let mut e_gens = Vec::new();
    for basis in 0..(dim + 1) {
        let mut coords = vec![0u64; dim + 1];
        coords[basis] = 1;
        let t = translation_perm(p, n, crate::modp::inv_mod(2 % p, p), e_points, &coords);
        let widened = widen(&t, None);
        e_gens.push(widened.clone());
        gens.push(widened);
    }
    for m in h_mats {
        gens.push(widen(&es.lift_unchecked(m), Some(m)));
    }
    let group = PermGroup::from_generators_bounded(degree, gens, bounds)?;
    let e_subgroup = PermGroup::from_generators_bounded(degree, e_gens.clone(), bounds)?;
    let z_gen = {
        let mut coords = vec![0u64; dim + 1];
        coords[dim] = 1;
        let t = translation_perm(p, n, crate::modp::inv_mod(2 % p, p), e_points, &coords);
        widen(&t, None)
    };
    let z_subgroup = PermGroup::from_generators_bounded(degree, vec![z_gen], bounds)?;
    Ok(SemidirectExtraspecial {
        group,
        e_subgroup,
        z_subgroup,
        p,
        n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::center;
    use rand::{Rng, SeedableRng};

    #[test]
    fn extraspecial_orders_and_structure() {
        for (p, n, order) in [(3u64, 1usize, 27u64), (5, 1, 125), (3, 2, 243)] {
            let e = ExtraspecialGroup::new(p, n).unwrap();
            assert_eq!(e.carrier.order(), order);
            // exponent p
            assert_eq!(e.carrier.exponent().unwrap(), p);
            // center of order p
            let z = center(&e.carrier).unwrap();
            assert_eq!(z.order(), p);
        }
    }

    #[test]
    fn p_equal_two_rejected() {
        assert!(ExtraspecialGroup::new(2, 1).is_err());
    }

    #[test]
    fn commutator_realizes_symplectic_form() {
        // exhaustively: [x, y] = (0, <u, v>) for all coordinate pairs, p^3 <= 243
        for (p, n) in [(3u64, 1usize), (3, 2)] {
            let e = ExtraspecialGroup::new(p, n).unwrap();
            let dim = 2 * n;
            let vecs = (p as usize).pow(dim as u32);
            for ui in 0..vecs {
                let u = crate::ffmatrix::index_vector(p, dim, ui);
                for vi in 0..vecs {
                    let v = crate::ffmatrix::index_vector(p, dim, vi);
                    let x = e.element(&u, 0);
                    let y = e.element(&v, 0);
                    let c = Permutation::commutator(&x, &y);
                    let expected = e.element(&vec![0; dim], symplectic_form(p, &u, &v));
                    assert_eq!(c, expected);
                }
            }
        }
    }

    #[test]
    fn winter_lift_identity_and_negation() {
        let e = ExtraspecialGroup::new(3, 1).unwrap();
        let id = FFMatrix::identity(3, 2);
        assert!(e.winter_lift(&id).unwrap().is_identity());
        // -I inverts E/Z pointwise and fixes Z
        let neg = FFMatrix::from_rows(3, &[&[2, 0], &[0, 2]]).unwrap();
        let lift = e.winter_lift(&neg).unwrap();
        for pt in 0..27 {
            let (v, z) = e.coords_of(pt);
            let nv: Vec<u64> = v.iter().map(|&c| (3 - c) % 3).collect();
            assert_eq!(lift.apply(pt as u16), e.point_of(&nv, z) as u16);
        }
    }

    #[test]
    fn winter_lift_rejects_non_symplectic() {
        let e = ExtraspecialGroup::new(3, 1).unwrap();
        let bad = FFMatrix::from_rows(3, &[&[2, 0], &[0, 1]]).unwrap();
        assert!(matches!(
            e.winter_lift(&bad),
            Err(Error::NotSymplectic { .. })
        ));
    }

    #[test]
    fn winter_lift_is_multiplicative_on_random_symplectic_pairs() {
        // Sp(2,3) = SL(2,3): sample 100 random pairs from the 24 matrices
        let e = ExtraspecialGroup::new(3, 1).unwrap();
        let mut sl23 = Vec::new();
        for a in 0..3u64 {
            for b in 0..3u64 {
                for c in 0..3u64 {
                    for d in 0..3u64 {
                        let m = FFMatrix::from_rows(3, &[&[a, b], &[c, d]]).unwrap();
                        if m.det() == 1 {
                            sl23.push(m);
                        }
                    }
                }
            }
        }
        assert_eq!(sl23.len(), 24);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(20240515);
        for _ in 0..100 {
            let m1 = &sl23[rng.gen_range(0..24)];
            let m2 = &sl23[rng.gen_range(0..24)];
            let lhs = &e.winter_lift(m1).unwrap() * &e.winter_lift(m2).unwrap();
            let rhs = e.winter_lift(&m1.mul(m2)).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn winter_lift_injective_on_generators_and_fixes_center() {
        let e = ExtraspecialGroup::new(3, 1).unwrap();
        let gens = [
            FFMatrix::from_rows(3, &[&[1, 1], &[0, 1]]).unwrap(),
            FFMatrix::from_rows(3, &[&[1, 0], &[1, 1]]).unwrap(),
        ];
        let lifts: Vec<Permutation> = gens.iter().map(|m| e.winter_lift(m).unwrap()).collect();
        assert_ne!(lifts[0], lifts[1]);
        for lift in &lifts {
            for z in 0..3 {
                let pt = e.point_of(&[0, 0], z);
                assert_eq!(lift.apply(pt as u16), pt as u16);
            }
        }
    }

    #[test]
    fn semidirect_orders() {
        // E(27) x| Q8 has order 216 and |G : Z(G)| = 72
        let q8 = crate::builders::q8_matrices(3).unwrap();
        let sd = semidirect_extraspecial(3, 1, &q8, &Bounds::default()).unwrap();
        assert_eq!(sd.group.order(), 216);
        let z = center(&sd.group).unwrap();
        assert_eq!(sd.group.order() / z.order(), 72);
        assert_eq!(sd.e_subgroup.order(), 27);
        assert_eq!(sd.z_subgroup.order(), 3);
    }
}
