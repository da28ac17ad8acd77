//! The Virasoro vacuum module `V_c`, written directly against
//! `[L(m), L(n)] = (m-n)L(m+n) + δ_{m+n,0}(m³-m)c/12` and `L(n)𝟙 = 0` for `n ≥ -1`.

use std::cell::RefCell;
use std::collections::HashMap;

use num_traits::Zero;

use super::fock::{add_term, partitions, size, FockState, Partition};
use crate::linalg::{binomial, q, Matrix, Scalar};

/// PBW monomials `L(-λ_1)…L(-λ_k)𝟙` with `λ_1 ≥ … ≥ λ_k ≥ 2`.
pub struct VirasoroModule {
    c: Scalar,
    l_memo: RefCell<HashMap<(i32, Partition), FockState>>,
    mode_memo: RefCell<HashMap<(Partition, i32, Partition), FockState>>,
}

impl VirasoroModule {
    pub fn new(c: Scalar) -> Self {
        VirasoroModule {
            c,
            l_memo: RefCell::new(HashMap::new()),
            mode_memo: RefCell::new(HashMap::new()),
        }
    }

    pub fn central_charge(&self) -> &Scalar {
        &self.c
    }

    /// Basis of weight `n`, reverse lexicographic.
    pub fn basis(&self, n: u32) -> Vec<Partition> {
        partitions(n, 2)
    }

    /// `L(n)` applied to a PBW monomial, re-expressed in the PBW basis.
    pub fn apply_l(&self, n: i32, mono: &[u32]) -> FockState {
        let key = (n, mono.to_vec());
        if let Some(r) = self.l_memo.borrow().get(&key) {
            return r.clone();
        }
        let mut out = FockState::new();
        match mono.split_first() {
            None => {
                if n <= -2 {
                    out.insert(vec![(-n) as u32], q(1));
                }
            }
            Some((&first, rest)) => {
                let m = -(first as i32);
                if n <= m {
                    let mut np = vec![(-n) as u32];
                    np.extend_from_slice(mono);
                    out.insert(np, q(1));
                } else {
                    // L(n)L(m)R = L(m)L(n)R + (n - m)L(n + m)R + δ_{n+m,0}(n³ - n)c/12 R
                    let inner = self.apply_l(n, rest);
                    for (p, c) in &inner {
                        for (pp, d) in self.apply_l(m, p) {
                            add_term(&mut out, pp, c * d);
                        }
                    }
                    let coeff = q((n - m) as i64);
                    for (p, c) in self.apply_l(n + m, rest) {
                        add_term(&mut out, p, c * &coeff);
                    }
                    if n + m == 0 {
                        let n3 = (n as i64).pow(3) - n as i64;
                        add_term(&mut out, rest.to_vec(), &self.c * q(n3) / q(12));
                    }
                }
            }
        }
        self.l_memo.borrow_mut().insert(key, out.clone());
        out
    }

    fn apply_l_state(&self, n: i32, s: &FockState) -> FockState {
        let mut out = FockState::new();
        for (p, c) in s {
            for (pp, d) in self.apply_l(n, p) {
                add_term(&mut out, pp, c * d);
            }
        }
        out
    }

    /// `u(k)w` for PBW monomials, from the iterate formula with `u = ω(1-λ_1)v`:
    /// `(ω(p)v)(k)w = Σ_i (-1)^i C(p,i) [ω(p-i)v(k+i)w - (-1)^p v(p+k-i)ω(i)w]`.
    pub fn mode(&self, u: &[u32], k: i32, w: &[u32]) -> FockState {
        let key = (u.to_vec(), k, w.to_vec());
        if let Some(r) = self.mode_memo.borrow().get(&key) {
            return r.clone();
        }
        let mut out = FockState::new();
        match u.split_first() {
            None => {
                if k == -1 {
                    out.insert(w.to_vec(), q(1));
                }
            }
            Some((&first, rest)) if rest.is_empty() && first == 2 => {
                out = self.apply_l(k - 1, w);
            }
            Some((&first, rest)) => {
                let p = 1 - first as i32;
                let wv = size(rest) as i32;
                let ww = size(w) as i32;
                let top = (wv + ww - k - 1).max(ww + 1).max(0);
                let sign_p = if p.rem_euclid(2) == 0 { q(1) } else { q(-1) };
                for i in 0..=top {
                    let c = binomial(p as i64, i as i64);
                    let c = if i % 2 == 0 { c } else { -c };
                    if c.is_zero() {
                        continue;
                    }
                    for (x, a) in self.mode(rest, k + i, w) {
                        for (y, b) in self.apply_l(p - i - 1, &x) {
                            add_term(&mut out, y, &c * &a * b);
                        }
                    }
                    for (x, a) in self.apply_l(i - 1, w) {
                        for (y, b) in self.mode(rest, p + k - i, &x) {
                            add_term(&mut out, y, -(&c * &sign_p * &a * b));
                        }
                    }
                }
            }
        }
        self.mode_memo.borrow_mut().insert(key, out.clone());
        out
    }

    /// Gram matrix of the weight-`n` basis for the form with `L(n)† = L(-n)`, `⟨𝟙,𝟙⟩ = 1`.
    pub fn gram_matrix(&self, n: u32) -> Matrix {
        let basis = self.basis(n);
        let d = basis.len();
        let mut g = Matrix::zeros(d, d);
        for (i, lam) in basis.iter().enumerate() {
            for (j, mu) in basis.iter().enumerate() {
                let mut s = FockState::new();
                s.insert(mu.clone(), q(1));
                for &part in lam {
                    s = self.apply_l_state(part as i32, &s);
                }
                let x = s.get(&Vec::new()).cloned().unwrap_or_else(Scalar::zero);
                g.set(i, j, x);
            }
        }
        g
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{frac, kernel};

    #[test]
    fn level_two_gram() {
        let v = VirasoroModule::new(frac(1, 2));
        assert_eq!(v.gram_matrix(2), Matrix::from_rows(1, &[vec![frac(1, 4)]]));
        assert_eq!(v.gram_matrix(0), Matrix::identity(1));
        let v0 = VirasoroModule::new(q(0));
        assert_eq!(kernel(&v0.gram_matrix(2)).dim(), 1);
    }

    #[test]
    fn omega_modes() {
        let v = VirasoroModule::new(frac(1, 2));
        // L(2)ω = c/2 𝟙
        assert_eq!(v.mode(&[2], 3, &[2]), FockState::from([(vec![], frac(1, 4))]));
        // L(0)ω = 2ω
        assert_eq!(v.mode(&[2], 1, &[2]), FockState::from([(vec![2], q(2))]));
    }

    #[test]
    fn level_six_kernel_at_ising_charge() {
        let v = VirasoroModule::new(frac(1, 2));
        let dims: Vec<usize> = (0..=6).map(|n| kernel(&v.gram_matrix(n)).dim()).collect();
        assert_eq!(dims, vec![0, 0, 0, 0, 0, 0, 1]);
    }
}
