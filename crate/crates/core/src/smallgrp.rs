//! Multiplication-table representation of small groups, with exact
//! isomorphism testing by generator-image backtracking and exact
//! automorphism counting. Intended for orders up to a few hundred.

use std::collections::HashMap;

use crate::error::Result;
use crate::group::PermGroup;

#[derive(Clone, Debug)]
pub struct SmallTable {
    pub n: usize,
    mul: Vec<u16>,
    pub inv: Vec<u16>,
    pub elt_order: Vec<u16>,
    pub class_of: Vec<u16>,
    pub class_sizes: Vec<u32>,
    gen_indices: Vec<u16>,
}

impl SmallTable {
    pub fn from_group(group: &PermGroup) -> Result<Self> {
        let e = group.enumeration()?;
        let n = e.len();
        let mut mul = vec![0u16; n * n];
        for i in 0..n {
            for j in 0..n {
                let p = &e.list[i] * &e.list[j];
                mul[i * n + j] = e.index_of(&p).expect("closed") as u16;
            }
        }
        let mut inv = vec![0u16; n];
        for i in 0..n {
            for j in 0..n {
                if mul[i * n + j] == 0 {
                    inv[i] = j as u16;
                    break;
                }
            }
        }
        let elt_order = e.orders.iter().map(|&o| o as u16).collect::<Vec<_>>();
        // conjugacy classes over the table
        let gen_indices: Vec<u16> = group
            .generators()
            .iter()
            .map(|g| e.index_of(g).expect("generator") as u16)
            .collect();
        let mut class_of = vec![u16::MAX; n];
        let mut class_sizes = Vec::new();
        for start in 0..n {
            if class_of[start] != u16::MAX {
                continue;
            }
            let cid = class_sizes.len() as u16;
            class_of[start] = cid;
            let mut stack = vec![start as u16];
            let mut size = 0u32;
            while let Some(x) = stack.pop() {
                size += 1;
                for &g in &gen_indices {
                    let y = mul[mul[inv[g as usize] as usize * n + x as usize] as usize * n
                        + g as usize];
                    if class_of[y as usize] == u16::MAX {
                        class_of[y as usize] = cid;
                        stack.push(y);
                    }
                }
            }
            class_sizes.push(size);
        }
        Ok(SmallTable {
            n,
            mul,
            inv,
            elt_order,
            class_of,
            class_sizes,
            gen_indices,
        })
    }

    #[inline]
    pub fn mul(&self, a: u16, b: u16) -> u16 {
        self.mul[a as usize * self.n + b as usize]
    }

    /// (order, sorted class sizes, element order histogram, center order).
    pub fn fingerprint(&self) -> (usize, Vec<u32>, Vec<(u16, u32)>, u32) {
        let mut sizes = self.class_sizes.clone();
        sizes.sort_unstable();
        let mut hist: HashMap<u16, u32> = HashMap::new();
        for &o in &self.elt_order {
            *hist.entry(o).or_insert(0) += 1;
        }
        let mut hist: Vec<(u16, u32)> = hist.into_iter().collect();
        hist.sort_unstable();
        let center = self.class_sizes.iter().filter(|&&s| s == 1).count() as u32;
        (self.n, sizes, hist, center)
    }

    /// A small generating sequence: greedy, smallest element index first.
    fn generating_sequence(&self) -> Vec<u16> {
        let mut gens: Vec<u16> = Vec::new();
        let mut in_sub = vec![false; self.n];
        in_sub[0] = true;
        let mut sub_size = 1usize;
        while sub_size < self.n {
            let next = (0..self.n as u16).find(|&i| !in_sub[i as usize]).unwrap();
            gens.push(next);
            // close
            let mut stack: Vec<u16> = (0..self.n as u16).filter(|&i| in_sub[i as usize]).collect();
            in_sub[next as usize] = true;
            stack.push(next);
            while let Some(x) = stack.pop() {
                for &g in &gens {
                    for y in [self.mul(x, g), self.mul(g, x)] {
                        if !in_sub[y as usize] {
                            in_sub[y as usize] = true;
                            stack.push(y);
                        }
                    }
                }
            }
            sub_size = in_sub.iter().filter(|&&b| b).count();
        }
        gens
    }

    /// Per-element invariant used to prune candidate images.
    fn invariant(&self, x: u16) -> (u16, u32) {
        (
            self.elt_order[x as usize],
            self.class_sizes[self.class_of[x as usize] as usize],
        )
    }
}

/// Extends the partial map phi (defined and consistent on the closed prefix
/// `domain`) by gen -> img and recloses. Returns false on any homomorphism
/// conflict; only products involving new elements are rechecked.
fn extend_map(
    a: &SmallTable,
    b: &SmallTable,
    phi: &mut Vec<i32>,
    domain: &mut Vec<u16>,
    used: &mut Vec<bool>,
    gen: u16,
    img: u16,
) -> bool {
    if phi[gen as usize] >= 0 {
        return phi[gen as usize] == img as i32;
    }
    if used[img as usize] {
        return false;
    }
    let mut head = domain.len();
    phi[gen as usize] = img as i32;
    used[img as usize] = true;
    domain.push(gen);
    while head < domain.len() {
        let x = domain[head];
        head += 1;
        let fx = phi[x as usize] as u16;
        let mut yi = 0;
        while yi < domain.len() {
            let y = domain[yi];
            yi += 1;
            let fy = phi[y as usize] as u16;
            for (z, fz) in [
                (a.mul(x, y), b.mul(fx, fy)),
                (a.mul(y, x), b.mul(fy, fx)),
            ] {
                let cur = phi[z as usize];
                if cur >= 0 {
                    if cur != fz as i32 {
                        return false;
                    }
                } else {
                    if used[fz as usize] {
                        return false;
                    }
                    phi[z as usize] = fz as i32;
                    used[fz as usize] = true;
                    domain.push(z);
                }
            }
        }
    }
    true
}

struct MapState {
    phi: Vec<i32>,
    domain: Vec<u16>,
    used: Vec<bool>,
}

impl MapState {
    fn identity_seed(a: &SmallTable, b: &SmallTable) -> Self {
        let mut phi = vec![-1i32; a.n];
        phi[0] = 0;
        let mut used = vec![false; b.n];
        used[0] = true;
        MapState {
            phi,
            domain: vec![0],
            used,
        }
    }

    fn try_extend(&self, a: &SmallTable, b: &SmallTable, gen: u16, img: u16) -> Option<MapState> {
        let mut next = MapState {
            phi: self.phi.clone(),
            domain: self.domain.clone(),
            used: self.used.clone(),
        };
        if extend_map(a, b, &mut next.phi, &mut next.domain, &mut next.used, gen, img) {
            Some(next)
        } else {
            None
        }
    }
}

/// Is there any completion of `state` mapping gens[level..] somewhere?
fn completes(a: &SmallTable, b: &SmallTable, gens: &[u16], level: usize, state: &MapState) -> bool {
    if level == gens.len() {
        return state.domain.len() == a.n;
    }
    let gen = gens[level];
    if state.phi[gen as usize] >= 0 {
        return completes(a, b, gens, level + 1, state);
    }
    let inv = a.invariant(gen);
    for img in 0..b.n as u16 {
        if b.invariant(img) != inv {
            continue;
        }
        if let Some(next) = state.try_extend(a, b, gen, img) {
            if completes(a, b, gens, level + 1, &next) {
                return true;
            }
        }
    }
    false
}

pub fn tables_isomorphic(a: &SmallTable, b: &SmallTable) -> bool {
    if a.fingerprint() != b.fingerprint() {
        return false;
    }
    let gens = a.generating_sequence();
    let state = MapState::identity_seed(a, b);
    completes(a, b, &gens, 0, &state)
}

pub fn is_isomorphic(a: &PermGroup, b: &PermGroup) -> Result<bool> {
    if a.order() != b.order() {
        return Ok(false);
    }
    let ta = SmallTable::from_group(a)?;
    let tb = SmallTable::from_group(b)?;
    Ok(tables_isomorphic(&ta, &tb))
}

/// Exact |Aut(G)| via orbit-stabilizer along a generating sequence:
/// |Aut| = prod over levels of #{images of gens[i] extendable to an
/// automorphism fixing gens[..i] pointwise}.
pub fn automorphism_count(g: &PermGroup) -> Result<u64> {
    let t = SmallTable::from_group(g)?;
    let gens = t.generating_sequence();
    let mut total = 1u64;
    let mut state = MapState::identity_seed(&t, &t);
    for level in 0..gens.len() {
        let gen = gens[level];
        if state.phi[gen as usize] >= 0 {
            continue;
        }
        let inv = t.invariant(gen);
        let mut orbit = 0u64;
        for img in 0..t.n as u16 {
            if t.invariant(img) != inv {
                continue;
            }
            if let Some(next) = state.try_extend(&t, &t, gen, img) {
                if completes(&t, &t, &gens, level + 1, &next) {
                    orbit += 1;
                }
            }
        }
        total *= orbit;
        // pin this generator to itself and continue into the stabilizer
        state = state
            .try_extend(&t, &t, gen, gen)
            .expect("identity map always extends");
    }
    Ok(total)
}
