//! Structure constants cross-checked against computations that do not share
//! code with the builders.

use semilocal::builders::{build_heisenberg, build_lattice_upper, build_virasoro, gram_matrix};
use semilocal::linalg::{frac, kernel, q, unit_vec, zero_vec, Matrix, Scalar, Vector};
use semilocal::voa::{TruncatedVoa, WeightedIndex};

fn state(v: &TruncatedVoa, w: i32, i: usize) -> Vector {
    unit_vec(v.total_dim(), v.layout().global(WeightedIndex::new(w, i)).unwrap())
}

/// `(a(-1)b)(k)w = Σ_{i≥0} a(-1-i)b(k+i)w + b(k-1-i)a(i)w`.
fn normal_ordered(v: &TruncatedVoa, a: &[Scalar], b: &[Scalar], k: i32, w: &[Scalar]) -> Vector {
    let span = v.n_max() - v.n_min() + 2;
    let mut out = zero_vec(v.total_dim());
    for i in 0..=span {
        let t1 = v.apply(a, -1 - i, &v.apply(b, k + i, w));
        let t2 = v.apply(b, k - 1 - i, &v.apply(a, i, w));
        for (o, (x, y)) in out.iter_mut().zip(t1.iter().zip(&t2)) {
            *o += x + y;
        }
    }
    out
}

#[test]
fn heisenberg_square_modes_follow_from_alpha_modes() {
    // α(-1)²𝟙 = (α(-1)𝟙)(-1)α(-1)𝟙; its modes must be the normal-ordered square
    // of the α modes wherever no intermediate state leaves the window.
    let v = build_heisenberg(4).unwrap();
    let alpha = state(&v, 1, 0);
    let sq = state(&v, 2, 1);
    assert_eq!(v.apply(&alpha, -1, &alpha), sq);
    let n = v.total_dim();
    let mut compared = 0;
    for g in 0..n {
        let wg = v.layout().weight_of(g);
        for k in v.layout().mode_range(2, wg) {
            // intermediate weights wg - (k + i) stay below wg + 1 - k
            if wg - k > v.n_max() || wg + 1 > v.n_max() {
                continue;
            }
            let w = unit_vec(n, g);
            assert_eq!(
                v.apply(&sq, k, &w),
                normal_ordered(&v, &alpha, &alpha, k, &w),
                "k={k} on {g}"
            );
            compared += 1;
        }
    }
    assert!(compared > 10);
}

#[test]
fn heisenberg_bracket_on_basis() {
    let v = build_heisenberg(4).unwrap();
    let alpha = state(&v, 1, 0);
    let n = v.total_dim();
    for g in 0..n {
        let w = unit_vec(n, g);
        for m in -2..=2i32 {
            for k in -2..=2i32 {
                let wg = v.layout().weight_of(g);
                if wg - m > v.n_max() || wg - k > v.n_max() || wg - m - k > v.n_max() || wg - m - k < 0 {
                    continue;
                }
                let lhs: Vector = v
                    .apply(&alpha, m, &v.apply(&alpha, k, &w))
                    .iter()
                    .zip(v.apply(&alpha, k, &v.apply(&alpha, m, &w)).iter())
                    .map(|(x, y)| x - y)
                    .collect();
                let expect = if m + k == 0 {
                    w.iter().map(|x| x * q(m as i64)).collect()
                } else {
                    zero_vec(n)
                };
                assert_eq!(lhs, expect, "[α({m}), α({k})] on {g}");
            }
        }
    }
}

#[test]
fn virasoro_gram_matches_closed_forms() {
    // ⟨L(-2)𝟙, L(-2)𝟙⟩ = c/2, ⟨L(-3)𝟙, L(-3)𝟙⟩ = 2c, and at level 4 the
    // determinant is c²(5c+22)/2.
    let c = frac(3, 7);
    assert_eq!(gram_matrix(&c, 2).unwrap(), Matrix::from_rows(1, &[vec![&c / q(2)]]));
    assert_eq!(gram_matrix(&c, 3).unwrap(), Matrix::from_rows(1, &[vec![&c * q(2)]]));
    let g = gram_matrix(&c, 4).unwrap();
    let det = g.get(0, 0) * g.get(1, 1) - g.get(0, 1) * g.get(1, 0);
    assert_eq!(det, &c * &c * (q(5) * &c + q(22)) / q(2));
    assert_eq!(kernel(&gram_matrix(&frac(-22, 5), 4).unwrap()).dim(), 1);
}

#[test]
fn virasoro_modes_of_omega_are_the_bracket() {
    let c = frac(1, 2);
    let v = build_virasoro(&c, 6).unwrap();
    let omega = v.omega_vector().clone();
    assert_eq!(
        v.apply(&omega, 3, &omega),
        v.vacuum_vector().iter().map(|x| x * &c / q(2)).collect::<Vector>()
    );
    assert_eq!(
        v.apply(&omega, 1, &omega),
        omega.iter().map(|x| x * q(2)).collect::<Vector>()
    );
    assert_eq!(v.apply(&omega, 0, &omega), state(&v, 3, 0));
}

#[test]
fn lattice_sector_one_has_momentum_two() {
    let u = build_lattice_upper(2).unwrap();
    let alpha = state(&u, 1, 0);
    let e = state(&u, 1, 1);
    assert_eq!(u.apply(&alpha, 0, &e), e.iter().map(|x| x * q(2)).collect::<Vector>());
    // conformal weight ½⟨α,α⟩ = 1
    assert_eq!(u.virasoro(0, &e), e);
    // e^α(k)e^α vanishes in U
    for k in -2..=1 {
        assert!(u.apply(&e, k, &e).iter().all(|x| *x == q(0)));
    }
}
