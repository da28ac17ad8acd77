//! Free-boson Fock spaces, written directly against `[α(m), α(n)] = κ m δ_{m+n,0}`.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::linalg::{binomial, q, Scalar};

/// Weakly decreasing positive parts.
pub type Partition = Vec<u32>;

/// A finite combination of partition monomials.
pub type FockState = BTreeMap<Partition, Scalar>;

/// Partitions of `n` into parts `≥ min_part`, in reverse lexicographic order.
pub fn partitions(n: u32, min_part: u32) -> Vec<Partition> {
    fn go(n: u32, max: u32, min: u32, prefix: &mut Partition, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for p in (min..=max.min(n)).rev() {
            prefix.push(p);
            go(n - p, p, min, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, min_part.max(1), &mut Vec::new(), &mut out);
    out
}

pub fn size(p: &[u32]) -> u32 {
    p.iter().sum()
}

pub(crate) fn add_term(s: &mut FockState, key: Partition, c: Scalar) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match s.entry(key) {
        Entry::Vacant(e) => {
            e.insert(c);
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

/// A Fock module over the rank-one Heisenberg algebra: `α(0)` acts by
/// `momentum`, and the bracket is scaled by `kappa`.
#[derive(Clone, Debug)]
pub struct Fock {
    pub kappa: Scalar,
    pub momentum: Scalar,
}

impl Fock {
    pub fn new(kappa: Scalar, momentum: Scalar) -> Self {
        Fock { kappa, momentum }
    }

    /// `α(j)` applied to a monomial.
    pub fn alpha(&self, j: i32, p: &[u32]) -> FockState {
        let mut out = FockState::new();
        match j {
            j if j < 0 => {
                let mut np = p.to_vec();
                let part = (-j) as u32;
                let pos = np.iter().position(|&x| x < part).unwrap_or(np.len());
                np.insert(pos, part);
                out.insert(np, q(1));
            }
            0 => {
                if !self.momentum.is_zero() {
                    out.insert(p.to_vec(), self.momentum.clone());
                }
            }
            j => {
                let part = j as u32;
                let mult = p.iter().filter(|&&x| x == part).count();
                if mult > 0 {
                    let mut np = p.to_vec();
                    let pos = np.iter().position(|&x| x == part).expect("present");
                    np.remove(pos);
                    out.insert(np, &self.kappa * q(j as i64) * q(mult as i64));
                }
            }
        }
        out
    }

    pub fn alpha_state(&self, j: i32, s: &FockState) -> FockState {
        let mut out = FockState::new();
        for (p, c) in s {
            for (np, d) in self.alpha(j, p) {
                add_term(&mut out, np, c * d);
            }
        }
        out
    }

    /// `a(m)b` where `a = α(-n_1)…α(-n_k)𝟙` is a Heisenberg state and `b` a
    /// monomial of this module, via the normal-ordered product
    /// `Y(a, z) = :∂^{(n_1-1)}α(z) … ∂^{(n_k-1)}α(z):`.
    pub fn mode(&self, a: &[u32], m: i32, b: &[u32]) -> FockState {
        let mut out = FockState::new();
        if a.is_empty() {
            if m == -1 {
                out.insert(b.to_vec(), q(1));
            }
            return out;
        }
        let target = m + 1 - size(a) as i32;
        let budget = size(b) as i32;
        let mut choice = vec![0i32; a.len()];
        self.enumerate(a, 0, target, budget, budget - target, &mut choice, b, &mut out);
        out
    }

    /// Chooses `j_i` slot by slot: positive indices may remove at most `pos`
    /// weight in total, negative ones may add at most `neg`.
    #[allow(clippy::too_many_arguments)]
    fn enumerate(
        &self,
        a: &[u32],
        slot: usize,
        remaining: i32,
        pos: i32,
        neg: i32,
        choice: &mut Vec<i32>,
        b: &[u32],
        out: &mut FockState,
    ) {
        let n = a[slot] as i32;
        if slot + 1 == a.len() {
            let j = remaining;
            if (j > 0 && j > pos) || (j < 0 && (-j > neg || j > -n)) {
                return;
            }
            choice[slot] = j;
            self.accumulate(a, choice, b, out);
            return;
        }
        for j in -neg..=pos {
            if j < 0 && j > -n {
                continue;
            }
            choice[slot] = j;
            let (p2, n2) = if j > 0 { (pos - j, neg) } else { (pos, neg + j) };
            self.enumerate(a, slot + 1, remaining - j, p2, n2, choice, b, out);
        }
    }

    fn accumulate(&self, a: &[u32], js: &[i32], b: &[u32], out: &mut FockState) {
        let mut coeff = q(1);
        for (&n, &j) in a.iter().zip(js) {
            coeff *= binomial(-(j as i64) - 1, n as i64 - 1);
            if coeff.is_zero() {
                return;
            }
        }
        let mut order: Vec<i32> = js.to_vec();
        // rightmost first: annihilators, then zero modes, then creators
        order.sort_by_key(|&j| std::cmp::Reverse(j));
        let mut state = FockState::new();
        state.insert(b.to_vec(), coeff);
        for j in order {
            state = self.alpha_state(j, &state);
            if state.is_empty() {
                return;
            }
        }
        for (p, c) in state {
            add_term(out, p, c);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_order() {
        assert_eq!(partitions(2, 1), vec![vec![2], vec![1, 1]]);
        assert_eq!(
            partitions(4, 1),
            vec![vec![4], vec![3, 1], vec![2, 2], vec![2, 1, 1], vec![1, 1, 1, 1]]
        );
        assert_eq!(partitions(6, 2), vec![vec![6], vec![4, 2], vec![3, 3], vec![2, 2, 2]]);
        let counts: Vec<usize> = (0..7).map(|n| partitions(n, 1).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11]);
    }

    #[test]
    fn heisenberg_brackets() {
        let f = Fock::new(q(1), q(0));
        // α(-1)𝟙 mode 1 on α(-1)𝟙 is 𝟙
        assert_eq!(f.mode(&[1], 1, &[1]), FockState::from([(vec![], q(1))]));
        // α(-1)𝟙 mode -1 on α(-1)𝟙 is α(-1)²𝟙
        assert_eq!(f.mode(&[1], -1, &[1]), FockState::from([(vec![1, 1], q(1))]));
        // (α(-1)²𝟙)(3) α(-1)²𝟙 = α(1)α(1)α(-1)²𝟙
        let l2 = f.mode(&[1, 1], 3, &[1, 1]);
        assert_eq!(l2, FockState::from([(vec![], q(2))]));
    }
}
