//! Finite permutation groups given by generators.
//!
//! Two complementary representations are kept: a Schreier-Sims stabilizer
//! chain (exact order and membership for any group up to the hard bound) and,
//! for groups up to the enumeration bound, the full element list in BFS order
//! with an index map and generator words. The two are cross-checked at
//! construction time.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::perm::{lcm, Permutation};

pub const DEFAULT_ENUM_BOUND: u64 = 200_000;
pub const HARD_ORDER_BOUND: u64 = 10_000_000;

#[derive(Clone, Debug)]
pub struct Bounds {
    pub enumeration: u64,
    pub hard: u64,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            enumeration: DEFAULT_ENUM_BOUND,
            hard: HARD_ORDER_BOUND,
        }
    }
}

/// Full element list of an enumerated group, in BFS discovery order.
#[derive(Clone, Debug)]
pub struct Enumeration {
    pub list: Vec<Permutation>,
    index: HashMap<Permutation, u32>,
    /// (parent element index, generator index); the identity has parent -1.
    pub words: Vec<(i64, u32)>,
    /// Element orders, parallel to `list`.
    pub orders: Vec<u64>,
}

impl Enumeration {
    pub fn index_of(&self, g: &Permutation) -> Option<u32> {
        self.index.get(g).copied()
    }

    pub fn len(&self) -> usize {
        self.list.len()
    }

    pub fn is_empty(&self) -> bool {
        self.list.is_empty()
    }

    /// Generator word for an element, as generator indices applied left to right.
    pub fn word(&self, mut idx: u32) -> Vec<u32> {
        let mut out = Vec::new();
        while self.words[idx as usize].0 >= 0 {
            let (p, g) = self.words[idx as usize];
            out.push(g);
            idx = p as u32;
        }
        out.reverse();
        out
    }

    /// Exponent of the group: lcm of element orders.
    pub fn exponent(&self) -> u64 {
        self.orders.iter().copied().fold(1, lcm)
    }
}

#[derive(Clone, Debug)]
struct StabLevel {
    base_point: u16,
    gens: Vec<Permutation>,
    /// transversal[p] = u with u(base_point) = p, for p in the basic orbit.
    transversal: Vec<Option<Permutation>>,
    orbit: Vec<u16>,
}

impl StabLevel {
    fn new(base_point: u16, degree: usize) -> Self {
        let mut transversal = vec![None; degree];
        transversal[base_point as usize] = Some(Permutation::identity(degree));
        StabLevel {
            base_point,
            gens: Vec::new(),
            transversal,
            orbit: vec![base_point],
        }
    }

    fn recompute_orbit(&mut self, degree: usize) {
        self.transversal = vec![None; degree];
        self.transversal[self.base_point as usize] = Some(Permutation::identity(degree));
        self.orbit = vec![self.base_point];
        let mut i = 0;
        while i < self.orbit.len() {
            let p = self.orbit[i];
            let u = self.transversal[p as usize].clone().unwrap();
            for s in &self.gens {
                let q = s.apply(p);
                if self.transversal[q as usize].is_none() {
                    self.transversal[q as usize] = Some(&u * s);
                    self.orbit.push(q);
                }
            }
            i += 1;
        }
    }
}

#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    levels: Vec<StabLevel>,
}

impl StabChain {
    fn build(degree: usize, gens: &[Permutation]) -> Self {
        let mut chain = StabChain {
            degree,
            levels: Vec::new(),
        };
        for g in gens {
            if !g.is_identity() {
                chain.insert_generator(g.clone());
            }
        }
        chain.schreier_sims();
        chain
    }

    fn first_moved(g: &Permutation) -> u16 {
        g.images()
            .iter()
            .enumerate()
            .find(|(i, &x)| *i != x as usize)
            .map(|(i, _)| i as u16)
            .expect("identity has no moved point")
    }

    /// Adds a generator at the highest level whose base prefix it stabilizes.
    fn insert_generator(&mut self, g: Permutation) {
        let mut level = 0;
        while level < self.levels.len() {
            if g.apply(self.levels[level].base_point) != self.levels[level].base_point {
                break;
            }
            level += 1;
        }
        if level == self.levels.len() {
            let b = Self::first_moved(&g);
            self.levels.push(StabLevel::new(b, self.degree));
        }
        for l in 0..=level {
            if l >= self.levels.len() {
                break;
            }
            self.levels[l].gens.push(g.clone());
            self.levels[l].recompute_orbit(self.degree);
        }
    }

    /// Sifts `g` through levels `from..`; returns the residue and the level at
    /// which sifting stopped (levels.len() on success).
    fn strip(&self, mut g: Permutation, from: usize) -> (Permutation, usize) {
        for (i, lvl) in self.levels.iter().enumerate().skip(from) {
            let p = g.apply(lvl.base_point);
            match &lvl.transversal[p as usize] {
                None => return (g, i),
                Some(u) => g = &g * &u.inverse(),
            }
        }
        (g, self.levels.len())
    }

    fn schreier_sims(&mut self) {
        if self.levels.is_empty() {
            return;
        }
        let mut i = self.levels.len() as i64 - 1;
        'outer: while i >= 0 {
            let li = i as usize;
            // Test all Schreier generators of level li.
            for oi in 0..self.levels[li].orbit.len() {
                let p = self.levels[li].orbit[oi];
                let u_p = self.levels[li].transversal[p as usize].clone().unwrap();
                for si in 0..self.levels[li].gens.len() {
                    let s = self.levels[li].gens[si].clone();
                    let q = s.apply(p);
                    let u_q = self.levels[li].transversal[q as usize].clone().unwrap();
                    let schreier = &(&u_p * &s) * &u_q.inverse();
                    if schreier.is_identity() {
                        continue;
                    }
                    let (residue, j) = self.strip(schreier, li + 1);
                    if residue.is_identity() {
                        continue;
                    }
                    // Install the residue as a generator of levels li+1..=j.
                    if j == self.levels.len() {
                        let b = Self::first_moved(&residue);
                        self.levels.push(StabLevel::new(b, self.degree));
                    }
                    let j_eff = j.min(self.levels.len() - 1);
                    for l in (li + 1)..=j_eff {
                        self.levels[l].gens.push(residue.clone());
                        self.levels[l].recompute_orbit(self.degree);
                    }
                    i = j_eff as i64;
                    continue 'outer;
                }
            }
            i -= 1;
        }
    }

    pub fn order(&self) -> u128 {
        self.levels
            .iter()
            .map(|l| l.orbit.len() as u128)
            .product()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (residue, _) = self.strip(g.clone(), 0);
        residue.is_identity()
    }

    pub fn base(&self) -> Vec<u16> {
        self.levels.iter().map(|l| l.base_point).collect()
    }
}

#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    gens: Vec<Permutation>,
    chain: StabChain,
    order: u64,
    elements: Option<Enumeration>,
}

impl PermGroup {
    pub fn trivial(degree: usize) -> Self {
        Self::from_generators_bounded(degree, vec![], &Bounds::default())
            .expect("trivial group construction cannot fail")
    }

    pub fn from_generators(gens: Vec<Permutation>) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::BadArgument(
                "empty generator list; use PermGroup::trivial(degree)".into(),
            ));
        }
        let degree = gens[0].degree();
        Self::from_generators_bounded(degree, gens, &Bounds::default())
    }

    pub fn from_generators_bounded(
        degree: usize,
        gens: Vec<Permutation>,
        bounds: &Bounds,
    ) -> Result<Self> {
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    got: g.degree(),
                });
            }
        }
        let mut clean: Vec<Permutation> = Vec::new();
        for g in gens {
            if !g.is_identity() && !clean.contains(&g) {
                clean.push(g);
            }
        }
        let chain = StabChain::build(degree, &clean);
        let order_big = chain.order();
        if order_big > bounds.hard as u128 {
            return Err(Error::GroupTooLarge {
                order: order_big,
                bound: bounds.hard,
            });
        }
        let order = order_big as u64;
        let elements = if order <= bounds.enumeration {
            let enumeration = enumerate(degree, &clean, order)?;
            if enumeration.list.len() as u64 != order {
                return Err(Error::TableConstruction(format!(
                    "enumeration found {} elements but the stabilizer chain reports order {}",
                    enumeration.list.len(),
                    order
                )));
            }
            Some(enumeration)
        } else {
            None
        };
        Ok(PermGroup {
            degree,
            gens: clean,
            chain,
            order,
            elements,
        })
    }

    /// Builds a subgroup from a full element set (must be closed; this is
    /// checked by the enumeration cross-check). Generators are chosen greedily
    /// from the given order.
    pub fn from_elements(degree: usize, elems: &[Permutation]) -> Result<Self> {
        let mut gens: Vec<Permutation> = Vec::new();
        let mut known: HashMap<Permutation, ()> = HashMap::new();
        known.insert(Permutation::identity(degree), ());
        for e in elems {
            if known.contains_key(e) {
                continue;
            }
            gens.push(e.clone());
            // re-close
            known.clear();
            known.insert(Permutation::identity(degree), ());
            let mut queue = vec![Permutation::identity(degree)];
            while let Some(g) = queue.pop() {
                for s in &gens {
                    let h = &g * s;
                    if !known.contains_key(&h) {
                        known.insert(h.clone(), ());
                        queue.push(h);
                    }
                }
            }
        }
        if known.len() != elems.len() {
            return Err(Error::BadArgument(format!(
                "element set of size {} is not closed (closure has {})",
                elems.len(),
                known.len()
            )));
        }
        let bounds = Bounds {
            enumeration: elems.len() as u64,
            hard: HARD_ORDER_BOUND,
        };
        if gens.is_empty() {
            return Ok(Self::trivial(degree));
        }
        Self::from_generators_bounded(degree, gens, &bounds)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.gens
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn chain(&self) -> &StabChain {
        &self.chain
    }

    pub fn elements(&self) -> Option<&Enumeration> {
        self.elements.as_ref()
    }

    pub fn enumeration(&self) -> Result<&Enumeration> {
        self.elements.as_ref().ok_or(Error::EnumerationRequired {
            order: self.order,
            bound: DEFAULT_ENUM_BOUND,
        })
    }

    /// Membership via the element index when enumerated, else via the chain.
    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        match &self.elements {
            Some(e) => e.index_of(g).is_some(),
            None => self.chain.contains(g),
        }
    }

    /// Membership decided by the stabilizer chain alone.
    pub fn contains_via_chain(&self, g: &Permutation) -> bool {
        self.chain.contains(g)
    }

    pub fn is_subgroup_of(&self, ambient: &PermGroup) -> bool {
        self.degree == ambient.degree() && self.gens.iter().all(|g| ambient.contains(g))
    }

    /// Exponent (lcm of element orders); requires enumeration.
    pub fn exponent(&self) -> Result<u64> {
        Ok(self.enumeration()?.exponent())
    }

    pub fn is_abelian(&self) -> bool {
        for (i, a) in self.gens.iter().enumerate() {
            for b in &self.gens[i + 1..] {
                if (a * b) != (b * a) {
                    return false;
                }
            }
        }
        true
    }
}

fn enumerate(degree: usize, gens: &[Permutation], order_hint: u64) -> Result<Enumeration> {
    let id = Permutation::identity(degree);
    let mut list = vec![id.clone()];
    let mut index: HashMap<Permutation, u32> = HashMap::with_capacity(order_hint as usize);
    index.insert(id, 0);
    let mut words: Vec<(i64, u32)> = vec![(-1, 0)];
    let mut head = 0usize;
    while head < list.len() {
        let g = list[head].clone();
        for (gi, s) in gens.iter().enumerate() {
            let h = &g * s;
            if !index.contains_key(&h) {
                index.insert(h.clone(), list.len() as u32);
                words.push((head as i64, gi as u32));
                list.push(h);
            }
        }
        head += 1;
    }
    let orders = list.iter().map(|p| p.order()).collect();
    Ok(Enumeration {
        list,
        index,
        words,
        orders,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;
    use rand::{Rng, SeedableRng};

    fn cycle(degree: usize, cycles: &[&[u16]]) -> Permutation {
        Permutation::from_cycles(degree, cycles).unwrap()
    }

    #[test]
    fn trivial_group_from_identity_generator() {
        let g = PermGroup::from_generators(vec![Permutation::identity(4)]).unwrap();
        assert_eq!(g.order(), 1);
        assert!(g.is_trivial());
    }

    #[test]
    fn symmetric_group_s4() {
        let g = PermGroup::from_generators(vec![
            cycle(4, &[&[0, 1, 2, 3]]),
            cycle(4, &[&[0, 1]]),
        ])
        .unwrap();
        assert_eq!(g.order(), 24);
        let e = g.elements().unwrap();
        assert_eq!(e.len(), 24);
        assert!(e.exponent() == 12);
    }

    #[test]
    fn membership_via_chain_and_random_non_member() {
        let g = PermGroup::from_generators(vec![
            cycle(5, &[&[0, 1, 2, 3, 4]]),
            cycle(5, &[&[1, 2, 4, 3]]),
        ])
        .unwrap();
        assert_eq!(g.order(), 20); // AGL(1,5)
        for e in &g.enumeration().unwrap().list {
            assert!(g.contains_via_chain(e));
        }
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let mut found_non_member = false;
        for _ in 0..50 {
            let mut v: Vec<u16> = (0..5).collect();
            for i in (1..5).rev() {
                let j = rng.gen_range(0..=i);
                v.swap(i, j);
            }
            let p = Permutation::from_images(v).unwrap();
            if !g.contains(&p) {
                assert!(!g.contains_via_chain(&p));
                found_non_member = true;
            }
        }
        assert!(found_non_member);
    }

    #[test]
    fn degree_mismatch_rejected() {
        let a = cycle(4, &[&[0, 1]]);
        let b = cycle(5, &[&[0, 1]]);
        match PermGroup::from_generators(vec![a, b]) {
            Err(Error::DegreeMismatch { .. }) => {}
            other => panic!("expected degree mismatch, got {:?}", other.map(|g| g.order())),
        }
    }

    #[test]
    fn words_reconstruct_elements() {
        let gens = vec![cycle(4, &[&[0, 1, 2, 3]]), cycle(4, &[&[0, 1]])];
        let g = PermGroup::from_generators(gens.clone()).unwrap();
        let e = g.enumeration().unwrap();
        for idx in 0..e.len() {
            let word = e.word(idx as u32);
            let mut p = Permutation::identity(4);
            for wi in word {
                p = &p * &gens[wi as usize];
            }
            assert_eq!(p, e.list[idx]);
        }
    }

    #[test]
    fn from_elements_round_trip() {
        let g = PermGroup::from_generators(vec![cycle(6, &[&[0, 1, 2, 3, 4, 5]])]).unwrap();
        let elems: Vec<_> = g.enumeration().unwrap().list.clone();
        let h = PermGroup::from_elements(6, &elems).unwrap();
        assert_eq!(h.order(), 6);
    }
}
