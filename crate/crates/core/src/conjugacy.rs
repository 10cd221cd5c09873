//! Conjugacy classes of an enumerated group, with power maps.
//!
//! Classes are computed as conjugation orbits over the full element list, by
//! breadth-first search along the generators. Class 0 is always the identity
//! class.

use crate::error::Result;
use crate::group::PermGroup;
use crate::perm::{lcm, Permutation};

#[derive(Clone, Debug)]
pub struct ConjugacyData {
    pub reps: Vec<Permutation>,
    pub sizes: Vec<u64>,
    /// Element index (in the group's enumeration order) -> class index.
    pub class_of_index: Vec<u32>,
    pub inverse_class: Vec<u32>,
    /// For each divisor k of the exponent, ascending: class index of rep^k.
    pub power_maps: Vec<(u64, Vec<u32>)>,
    pub exponent: u64,
    /// Orders of the class representatives.
    pub rep_orders: Vec<u64>,
}

impl ConjugacyData {
    pub fn compute(group: &PermGroup) -> Result<Self> {
        let enumeration = group.enumeration()?;
        let n = enumeration.len();
        let gens = group.generators();
        let gen_invs: Vec<Permutation> = gens.iter().map(|g| g.inverse()).collect();

        let mut class_of_index = vec![u32::MAX; n];
        let mut reps = Vec::new();
        let mut sizes = Vec::new();
        for start in 0..n {
            if class_of_index[start] != u32::MAX {
                continue;
            }
            let cid = reps.len() as u32;
            reps.push(enumeration.list[start].clone());
            class_of_index[start] = cid;
            let mut stack = vec![start as u32];
            let mut size = 0u64;
            while let Some(i) = stack.pop() {
                size += 1;
                let x = &enumeration.list[i as usize];
                for (gi, g) in gens.iter().enumerate() {
                    let y = &(&gen_invs[gi] * x) * g;
                    let j = enumeration
                        .index_of(&y)
                        .expect("conjugate of a member must be a member");
                    if class_of_index[j as usize] == u32::MAX {
                        class_of_index[j as usize] = cid;
                        stack.push(j);
                    }
                }
            }
            sizes.push(size);
        }

        let k = reps.len();
        let exponent = enumeration.exponent();

        let class_of = |p: &Permutation| -> u32 {
            class_of_index[enumeration.index_of(p).expect("member") as usize]
        };

        let inverse_class = (0..k).map(|c| class_of(&reps[c].inverse())).collect();

        let mut divisors: Vec<u64> = (1..=exponent).filter(|d| exponent % d == 0).collect();
        divisors.sort_unstable();
        let power_maps = divisors
            .into_iter()
            .map(|d| {
                let map = (0..k).map(|c| class_of(&reps[c].pow(d))).collect();
                (d, map)
            })
            .collect();

        let rep_orders = reps.iter().map(|r| r.order()).collect();

        Ok(ConjugacyData {
            reps,
            sizes,
            class_of_index,
            inverse_class,
            power_maps,
            exponent,
            rep_orders,
        })
    }

    pub fn num_classes(&self) -> usize {
        self.reps.len()
    }

    /// Class of an arbitrary member element.
    pub fn class_of(&self, group: &PermGroup, g: &Permutation) -> Option<u32> {
        let e = group.elements()?;
        e.index_of(g)
            .map(|i| self.class_of_index[i as usize])
    }

    /// Class index of rep(class)^e for arbitrary e (reduced mod the rep order).
    pub fn power_class(&self, group: &PermGroup, class: u32, e: u64) -> u32 {
        let o = self.rep_orders[class as usize];
        let e = e % o;
        if e == 0 {
            return 0;
        }
        if let Some((_, map)) = self.power_maps.iter().find(|(d, _)| *d == e) {
            return map[class as usize];
        }
        self.class_of(group, &self.reps[class as usize].pow(e))
            .expect("power of a member is a member")
    }

    /// Order of the center: number of singleton classes.
    pub fn center_order(&self) -> u64 {
        self.sizes.iter().filter(|&&s| s == 1).count() as u64
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::named_group;

    #[test]
    fn trivial_group_has_one_class() {
        let g = PermGroup::trivial(3);
        let c = ConjugacyData::compute(&g).unwrap();
        assert_eq!(c.num_classes(), 1);
        assert_eq!(c.sizes, vec![1]);
    }

    #[test]
    fn q8_has_five_classes() {
        let g = named_group("Q8").unwrap();
        let c = ConjugacyData::compute(&g).unwrap();
        assert_eq!(c.num_classes(), 5);
        let mut sizes = c.sizes.clone();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 1, 2, 2, 2]);
        assert_eq!(c.exponent, 4);
    }

    #[test]
    fn sl23_has_seven_classes() {
        let g = named_group("SL(2,3)").unwrap();
        let c = ConjugacyData::compute(&g).unwrap();
        assert_eq!(c.num_classes(), 7);
        assert_eq!(c.sizes.iter().sum::<u64>(), 24);
    }

    #[test]
    fn class_invariants() {
        let g = named_group("S4").unwrap();
        let c = ConjugacyData::compute(&g).unwrap();
        assert_eq!(c.sizes.iter().sum::<u64>(), g.order());
        // class 0 is the identity class of size 1
        assert!(c.reps[0].is_identity());
        assert_eq!(c.sizes[0], 1);
        // class_of(rep_i) = i and inverse-class consistency
        for (i, r) in c.reps.iter().enumerate() {
            assert_eq!(c.class_of(&g, r), Some(i as u32));
            assert_eq!(
                c.class_of(&g, &r.inverse()),
                Some(c.inverse_class[i])
            );
        }
    }

    #[test]
    fn power_maps_consistency() {
        let g = named_group("SL(2,3)").unwrap();
        let c = ConjugacyData::compute(&g).unwrap();
        let e = g.enumeration().unwrap();
        // spot check on every element and every divisor of the exponent
        for (idx, x) in e.list.iter().enumerate() {
            let cx = c.class_of_index[idx];
            for (d, map) in &c.power_maps {
                let expected = c.class_of(&g, &x.pow(*d)).unwrap();
                assert_eq!(map[cx as usize], expected);
            }
        }
    }
}
