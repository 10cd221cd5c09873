//! Structural subgroup machinery: centralizers, normal closures, derived and
//! lower central series, Sylow subgroups and p-cores, the Fitting chain,
//! quotient groups as coset actions, minimal normal subgroups over a given
//! normal subgroup, and the (small-order) normal subgroup lattice.
//!
//! Everything here requires the ambient group to be enumerated and returns
//! subgroups as independent `PermGroup`s of the same degree.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::group::{Bounds, PermGroup};
use crate::perm::Permutation;

/// Elements of `group` commuting with every permutation in `with`.
pub fn centralizer(group: &PermGroup, with: &[Permutation]) -> Result<PermGroup> {
    let e = group.enumeration()?;
    let elems: Vec<Permutation> = e
        .list
        .iter()
        .filter(|g| with.iter().all(|s| (*g * s) == (s * *g)))
        .cloned()
        .collect();
    PermGroup::from_elements(group.degree(), &elems)
}

pub fn center(group: &PermGroup) -> Result<PermGroup> {
    centralizer(group, group.generators())
}

/// Elements of `group` normalizing the subgroup `h`.
pub fn normalizer(group: &PermGroup, h: &PermGroup) -> Result<PermGroup> {
    let e = group.enumeration()?;
    let elems: Vec<Permutation> = e
        .list
        .iter()
        .filter(|g| h.generators().iter().all(|s| h.contains(&s.conjugated_by(g))))
        .cloned()
        .collect();
    PermGroup::from_elements(group.degree(), &elems)
}

pub fn is_normal(group: &PermGroup, n: &PermGroup) -> bool {
    n.is_subgroup_of(group)
        && group
            .generators()
            .iter()
            .all(|g| n.generators().iter().all(|s| n.contains(&s.conjugated_by(g))))
}

/// Smallest normal subgroup of `group` containing `seeds`.
pub fn normal_closure(group: &PermGroup, seeds: &[Permutation]) -> Result<PermGroup> {
    for (i, s) in seeds.iter().enumerate() {
        if !group.contains(s) {
            return Err(Error::NotSubgroup { index: i });
        }
    }
    let degree = group.degree();
    let mut gens: Vec<Permutation> = seeds
        .iter()
        .filter(|s| !s.is_identity())
        .cloned()
        .collect();
    gens.dedup();
    let mut closure = subgroup_closure(degree, &gens);
    let mut queue: Vec<Permutation> = gens.clone();
    while let Some(s) = queue.pop() {
        for g in group.generators() {
            let c = s.conjugated_by(g);
            if !closure.contains_key(&c) {
                gens.push(c.clone());
                queue.push(c);
                closure = subgroup_closure(degree, &gens);
            }
        }
    }
    let elems: Vec<Permutation> = {
        let mut v: Vec<Permutation> = closure.into_keys().collect();
        v.sort_unstable();
        v
    };
    PermGroup::from_elements(degree, &elems)
}

fn subgroup_closure(degree: usize, gens: &[Permutation]) -> HashMap<Permutation, ()> {
    let mut known: HashMap<Permutation, ()> = HashMap::new();
    let id = Permutation::identity(degree);
    known.insert(id.clone(), ());
    let mut queue = vec![id];
    while let Some(g) = queue.pop() {
        for s in gens {
            let h = &g * s;
            if !known.contains_key(&h) {
                known.insert(h.clone(), ());
                queue.push(h);
            }
        }
    }
    known
}

/// Derived subgroup [G, G].
pub fn derived_subgroup(group: &PermGroup) -> Result<PermGroup> {
    let gens = group.generators();
    let mut comms = Vec::new();
    for a in gens {
        for b in gens {
            let c = Permutation::commutator(a, b);
            if !c.is_identity() {
                comms.push(c);
            }
        }
    }
    if comms.is_empty() {
        return Ok(PermGroup::trivial(group.degree()));
    }
    normal_closure(group, &comms)
}

/// The derived series G > G' > G'' > ... down to the point of stabilization.
pub fn derived_series(group: &PermGroup) -> Result<Vec<PermGroup>> {
    let mut series = vec![group.clone()];
    loop {
        let last = series.last().unwrap();
        let next = derived_subgroup(last)?;
        if next.order() == last.order() {
            break;
        }
        let done = next.is_trivial();
        series.push(next);
        if done {
            break;
        }
    }
    Ok(series)
}

/// Length of the derived series; errors on non-solvable input.
pub fn derived_length(group: &PermGroup) -> Result<u32> {
    let series = derived_series(group)?;
    let last = series.last().unwrap();
    if !last.is_trivial() {
        return Err(Error::NotSolvable {
            stable_order: last.order(),
        });
    }
    Ok(series.len() as u32 - 1)
}

pub fn is_solvable(group: &PermGroup) -> Result<bool> {
    let series = derived_series(group)?;
    Ok(series.last().unwrap().is_trivial())
}

/// [A, B] for normal B: the normal closure of generator commutators.
fn commutator_subgroup(group: &PermGroup, a: &PermGroup, b: &PermGroup) -> Result<PermGroup> {
    let mut comms = Vec::new();
    for x in a.generators() {
        for y in b.generators() {
            let c = Permutation::commutator(x, y);
            if !c.is_identity() {
                comms.push(c);
            }
        }
    }
    if comms.is_empty() {
        return Ok(PermGroup::trivial(group.degree()));
    }
    normal_closure(group, &comms)
}

/// True iff the lower central series reaches the trivial group.
pub fn is_nilpotent(group: &PermGroup) -> Result<bool> {
    let mut current = group.clone();
    loop {
        let next = commutator_subgroup(group, group, &current)?;
        if next.is_trivial() {
            return Ok(true);
        }
        if next.order() == current.order() {
            return Ok(false);
        }
        current = next;
    }
}

fn p_part(mut n: u64, p: u64) -> u64 {
    let mut part = 1;
    while n % p == 0 {
        part *= p;
        n /= p;
    }
    part
}

pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut primes = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            primes.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        primes.push(n);
    }
    primes
}

/// One Sylow p-subgroup, grown by repeated normalizer extension.
pub fn sylow_subgroup(group: &PermGroup, p: u64) -> Result<PermGroup> {
    let target = p_part(group.order(), p);
    let e = group.enumeration()?;
    let mut sub = PermGroup::trivial(group.degree());
    while sub.order() < target {
        let mut extended = false;
        for (idx, g) in e.list.iter().enumerate() {
            let o = e.orders[idx];
            if o == 1 || !is_prime_power(o, p) || sub.contains(g) {
                continue;
            }
            // g must normalize the current subgroup
            if !sub
                .generators()
                .iter()
                .all(|s| sub.contains(&s.conjugated_by(g)))
            {
                continue;
            }
            let mut gens = sub.generators().to_vec();
            gens.push(g.clone());
            let bigger = PermGroup::from_generators_bounded(
                group.degree(),
                gens,
                &Bounds::default(),
            )?;
            sub = bigger;
            extended = true;
            break;
        }
        if !extended {
            return Err(Error::SearchFailure(format!(
                "sylow {p}-subgroup extension stalled at order {}",
                sub.order()
            )));
        }
    }
    Ok(sub)
}

fn is_prime_power(mut n: u64, p: u64) -> bool {
    while n % p == 0 {
        n /= p;
    }
    n == 1
}

/// O_p(G): the intersection of all Sylow p-subgroups, computed as the union
/// of conjugacy classes contained in a single Sylow p-subgroup.
pub fn p_core(group: &PermGroup, classes: &crate::conjugacy::ConjugacyData, p: u64) -> Result<PermGroup> {
    let sylow = sylow_subgroup(group, p)?;
    let e = group.enumeration()?;
    let k = classes.num_classes();
    let mut class_inside = vec![true; k];
    for (idx, g) in e.list.iter().enumerate() {
        if !sylow.contains(g) {
            class_inside[classes.class_of_index[idx] as usize] = false;
        }
    }
    let elems: Vec<Permutation> = e
        .list
        .iter()
        .enumerate()
        .filter(|(idx, _)| class_inside[classes.class_of_index[*idx] as usize])
        .map(|(_, g)| g.clone())
        .collect();
    PermGroup::from_elements(group.degree(), &elems)
}

/// Fitting subgroup: the join of the p-cores over primes dividing |G|.
pub fn fitting_subgroup(
    group: &PermGroup,
    classes: &crate::conjugacy::ConjugacyData,
) -> Result<PermGroup> {
    let mut gens: Vec<Permutation> = Vec::new();
    for p in prime_divisors(group.order()) {
        let core = p_core(group, classes, p)?;
        gens.extend(core.generators().iter().cloned());
    }
    if gens.is_empty() {
        return Ok(PermGroup::trivial(group.degree()));
    }
    PermGroup::from_generators_bounded(group.degree(), gens, &Bounds::default())
}

/// A quotient group realized as the action on right cosets of a normal
/// subgroup, together with the projection data.
pub struct Quotient {
    pub group: PermGroup,
    /// Parent element index -> coset point.
    pub coset_of: Vec<u16>,
    /// Coset point -> representative parent element index.
    pub reps: Vec<u32>,
}

impl Quotient {
    /// Image of a parent element under the projection.
    pub fn project(&self, parent: &PermGroup, g: &Permutation) -> Permutation {
        let e = parent.elements().expect("parent is enumerated");
        let images: Vec<u16> = self
            .reps
            .iter()
            .map(|&r| {
                let moved = &e.list[r as usize] * g;
                self.coset_of[e.index_of(&moved).expect("member") as usize]
            })
            .collect();
        Permutation::from_images(images).expect("projection is a permutation")
    }
}

/// G/N as a faithful permutation group on the |G:N| cosets of N.
pub fn quotient_group(group: &PermGroup, n: &PermGroup) -> Result<Quotient> {
    if !is_normal(group, n) {
        return Err(Error::NotNormal);
    }
    let e = group.enumeration()?;
    let ne = n.enumeration()?;
    let total = e.len();
    let mut coset_of = vec![u16::MAX; total];
    let mut reps: Vec<u32> = Vec::new();
    for idx in 0..total {
        if coset_of[idx] != u16::MAX {
            continue;
        }
        let c = reps.len() as u16;
        reps.push(idx as u32);
        for m in &ne.list {
            let member = m * &e.list[idx];
            let j = e.index_of(&member).expect("coset member");
            coset_of[j as usize] = c;
        }
    }
    debug_assert_eq!(reps.len() as u64, group.order() / n.order());
    let quotient_stub = Quotient {
        group: PermGroup::trivial(reps.len()),
        coset_of,
        reps,
    };
    let proj_gens: Vec<Permutation> = group
        .generators()
        .iter()
        .map(|g| quotient_stub.project(group, g))
        .collect();
    let all_trivial = proj_gens.iter().all(|p| p.is_identity());
    let qgroup = if all_trivial {
        PermGroup::trivial(quotient_stub.reps.len())
    } else {
        PermGroup::from_generators_bounded(
            quotient_stub.reps.len(),
            proj_gens,
            &Bounds::default(),
        )?
    };
    if qgroup.order() != group.order() / n.order() {
        return Err(Error::TableConstruction(format!(
            "coset action has order {} but |G:N| = {}",
            qgroup.order(),
            group.order() / n.order()
        )));
    }
    Ok(Quotient {
        group: qgroup,
        coset_of: quotient_stub.coset_of,
        reps: quotient_stub.reps,
    })
}

/// (F(G), F2(G)) where F2 is the preimage of F(G/F(G)).
pub fn fitting_chain(
    group: &PermGroup,
    classes: &crate::conjugacy::ConjugacyData,
) -> Result<(PermGroup, PermGroup)> {
    if !is_solvable(group)? {
        return Err(Error::NotSolvable {
            stable_order: derived_series(group)?.last().unwrap().order(),
        });
    }
    let f = fitting_subgroup(group, classes)?;
    if f.order() == group.order() {
        return Ok((f.clone(), f));
    }
    let q = quotient_group(group, &f)?;
    let q_classes = crate::conjugacy::ConjugacyData::compute(&q.group)?;
    let fq = fitting_subgroup(&q.group, &q_classes)?;
    let e = group.enumeration()?;
    let elems: Vec<Permutation> = e
        .list
        .iter()
        .filter(|g| fq.contains(&q.project(group, g)))
        .cloned()
        .collect();
    let f2 = PermGroup::from_elements(group.degree(), &elems)?;
    Ok((f, f2))
}

/// All subgroups E with Z < E normal in G and E/Z a chief factor (that is,
/// minimal normal in G/Z), found by scanning normal closures of elements of
/// prime order modulo Z.
pub fn minimal_normals_above(group: &PermGroup, z: &PermGroup) -> Result<Vec<PermGroup>> {
    if !is_normal(group, z) {
        return Err(Error::NotNormal);
    }
    if z.order() == group.order() {
        return Err(Error::BadArgument("Z must be a proper subgroup".into()));
    }
    let classes = crate::conjugacy::ConjugacyData::compute(group)?;
    let mut candidates: Vec<PermGroup> = Vec::new();
    for rep in &classes.reps {
        if z.contains(rep) {
            continue;
        }
        // order of rep modulo Z
        let mut t = 1u64;
        let mut pw = rep.clone();
        while !z.contains(&pw) {
            pw = &pw * rep;
            t += 1;
        }
        if !is_prime(t) {
            continue;
        }
        let mut seeds: Vec<Permutation> = z.generators().to_vec();
        seeds.push(rep.clone());
        let cand = normal_closure(group, &seeds)?;
        if !candidates.iter().any(|c| same_subgroup(c, &cand)) {
            candidates.push(cand);
        }
    }
    // keep the minimal ones
    let mut minimal: Vec<PermGroup> = Vec::new();
    'outer: for (i, c) in candidates.iter().enumerate() {
        for (j, d) in candidates.iter().enumerate() {
            if i != j && d.order() > z.order() && d.order() < c.order() && d.is_subgroup_of(c) {
                continue 'outer;
            }
        }
        minimal.push(c.clone());
    }
    Ok(minimal)
}

/// The chief factor E over Z with deterministic tie-break: smallest order,
/// then lexicographically least sorted element list.
pub fn minimal_normal_above(group: &PermGroup, z: &PermGroup) -> Result<PermGroup> {
    let mut minimal = minimal_normals_above(group, z)?;
    if minimal.is_empty() {
        return Err(Error::SearchFailure(
            "no chief factor found above the given subgroup".into(),
        ));
    }
    minimal.sort_by_cached_key(|g| {
        let mut elems: Vec<Permutation> = g.enumeration().unwrap().list.clone();
        elems.sort_unstable();
        (g.order(), elems)
    });
    Ok(minimal.remove(0))
}

pub fn same_subgroup(a: &PermGroup, b: &PermGroup) -> bool {
    a.order() == b.order()
        && a.degree() == b.degree()
        && a.generators().iter().all(|g| b.contains(g))
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// All normal subgroups, as the join-closure of class normal closures.
/// Exact for any enumerated group; intended for orders up to a few thousand.
pub fn normal_subgroups(group: &PermGroup) -> Result<Vec<PermGroup>> {
    let classes = crate::conjugacy::ConjugacyData::compute(group)?;
    let mut found: Vec<PermGroup> = vec![PermGroup::trivial(group.degree())];
    let push_unique = |v: &mut Vec<PermGroup>, g: PermGroup| -> bool {
        if v.iter().any(|h| same_subgroup(h, &g)) {
            false
        } else {
            v.push(g);
            true
        }
    };
    for rep in classes.reps.iter().skip(1) {
        let ncl = normal_closure(group, std::slice::from_ref(rep))?;
        push_unique(&mut found, ncl);
    }
    loop {
        let mut added = false;
        let snapshot = found.len();
        for i in 0..snapshot {
            for j in (i + 1)..snapshot {
                if found[i].order() == group.order() || found[j].order() == group.order() {
                    continue;
                }
                let mut gens = found[i].generators().to_vec();
                gens.extend(found[j].generators().iter().cloned());
                if gens.is_empty() {
                    continue;
                }
                let join =
                    PermGroup::from_generators_bounded(group.degree(), gens, &Bounds::default())?;
                if push_unique(&mut found, join) {
                    added = true;
                }
            }
        }
        if !added {
            break;
        }
    }
    found.sort_by_key(|g| g.order());
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::named_group;
    use crate::conjugacy::ConjugacyData;

    #[test]
    fn center_of_q8_has_order_two() {
        let q8 = named_group("Q8").unwrap();
        assert_eq!(center(&q8).unwrap().order(), 2);
    }

    #[test]
    fn center_of_abelian_group_is_whole() {
        let c6 = named_group("C6").unwrap();
        assert_eq!(center(&c6).unwrap().order(), 6);
    }

    #[test]
    fn normal_closure_examples() {
        let s4 = named_group("S4").unwrap();
        // trivial seed
        let t = normal_closure(&s4, &[s4.identity()]).unwrap();
        assert_eq!(t.order(), 1);
        // a 3-cycle generates A4 as normal closure
        let e = s4.enumeration().unwrap();
        let three_cycle = e
            .list
            .iter()
            .find(|p| p.order() == 3)
            .unwrap()
            .clone();
        let a4 = normal_closure(&s4, &[three_cycle]).unwrap();
        assert_eq!(a4.order(), 12);
        // Q8: an element of order 4 generates its cyclic subgroup (normal)
        let q8 = named_group("Q8").unwrap();
        let x = q8
            .enumeration()
            .unwrap()
            .list
            .iter()
            .find(|p| p.order() == 4)
            .unwrap()
            .clone();
        let c4 = normal_closure(&q8, &[x]).unwrap();
        assert_eq!(c4.order(), 4);
        assert!(c4.is_abelian());
    }

    #[test]
    fn seed_outside_group_rejected() {
        let q8 = named_group("Q8").unwrap();
        let alien = Permutation::from_cycles(q8.degree(), &[&[0, 1]]).unwrap();
        if q8.contains(&alien) {
            panic!("unexpected member");
        }
        assert!(matches!(
            normal_closure(&q8, &[alien]),
            Err(Error::NotSubgroup { .. })
        ));
    }

    #[test]
    fn derived_lengths() {
        assert_eq!(derived_length(&named_group("C4").unwrap()).unwrap(), 1);
        assert_eq!(derived_length(&named_group("SL(2,3)").unwrap()).unwrap(), 3);
        assert_eq!(derived_length(&named_group("S4").unwrap()).unwrap(), 3);
        // derived series of SL(2,3): SL(2,3) > Q8 > Z2 > 1
        let series = derived_series(&named_group("SL(2,3)").unwrap()).unwrap();
        let orders: Vec<u64> = series.iter().map(|g| g.order()).collect();
        assert_eq!(orders, vec![24, 8, 2, 1]);
    }

    #[test]
    fn nilpotency() {
        assert!(is_nilpotent(&named_group("Q8").unwrap()).unwrap());
        assert!(is_nilpotent(&named_group("D16").unwrap()).unwrap());
        assert!(!is_nilpotent(&named_group("S3").unwrap()).unwrap());
    }

    #[test]
    fn fitting_of_s4_is_klein() {
        let s4 = named_group("S4").unwrap();
        let classes = ConjugacyData::compute(&s4).unwrap();
        let f = fitting_subgroup(&s4, &classes).unwrap();
        assert_eq!(f.order(), 4);
        assert!(is_nilpotent(&f).unwrap());
    }

    #[test]
    fn fitting_of_nilpotent_group_is_itself() {
        let q8 = named_group("Q8").unwrap();
        let classes = ConjugacyData::compute(&q8).unwrap();
        let f = fitting_subgroup(&q8, &classes).unwrap();
        assert_eq!(f.order(), 8);
    }

    #[test]
    fn quotient_basic() {
        let s4 = named_group("S4").unwrap();
        // G/G is trivial
        let q = quotient_group(&s4, &s4).unwrap();
        assert_eq!(q.group.order(), 1);
        // S4 / V4 = S3
        let classes = ConjugacyData::compute(&s4).unwrap();
        let v4 = fitting_subgroup(&s4, &classes).unwrap();
        let q = quotient_group(&s4, &v4).unwrap();
        assert_eq!(q.group.order(), 6);
        assert!(!q.group.is_abelian());
        // projection is a homomorphism on generator pairs
        for a in s4.generators() {
            for b in s4.generators() {
                let lhs = q.project(&s4, &(a * b));
                let rhs = &q.project(&s4, a) * &q.project(&s4, b);
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn quotient_of_non_normal_rejected() {
        let s4 = named_group("S4").unwrap();
        let e = s4.enumeration().unwrap();
        let transposition = e.list.iter().find(|p| p.order() == 2 && p.cycle_type() == vec![1, 1, 2]).unwrap();
        let sub = PermGroup::from_generators(vec![transposition.clone()]).unwrap();
        assert!(matches!(quotient_group(&s4, &sub), Err(Error::NotNormal)));
    }

    #[test]
    fn minimal_normal_above_center_of_q8() {
        let q8 = named_group("Q8").unwrap();
        let z = center(&q8).unwrap();
        let e = minimal_normal_above(&q8, &z).unwrap();
        assert_eq!(e.order(), 4);
        let all = minimal_normals_above(&q8, &z).unwrap();
        assert_eq!(all.len(), 3); // the three cyclic subgroups of order 4
    }

    #[test]
    fn minimal_normal_above_trivial_in_elementary_abelian() {
        // C3 x C3: any subgroup of order 3 is normal and minimal
        let a = Permutation::from_cycles(6, &[&[0, 1, 2]]).unwrap();
        let b = Permutation::from_cycles(6, &[&[3, 4, 5]]).unwrap();
        let g = PermGroup::from_generators(vec![a, b]).unwrap();
        let e = minimal_normal_above(&g, &PermGroup::trivial(6)).unwrap();
        assert_eq!(e.order(), 3);
    }

    #[test]
    fn normal_subgroup_lattice_of_s4() {
        let s4 = named_group("S4").unwrap();
        let normals = normal_subgroups(&s4).unwrap();
        let orders: Vec<u64> = normals.iter().map(|n| n.order()).collect();
        assert_eq!(orders, vec![1, 4, 12, 24]);
    }
}
