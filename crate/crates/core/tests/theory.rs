mod common;

use semilocal::builders::{build_heisenberg, build_virasoro, build_virasoro_simple};
use semilocal::center::block_decompose;
use semilocal::classify::{classify, semilocal_decomposition, Status};
use semilocal::linalg::{frac, is_zero_vec, unit_vec};
use semilocal::power_assoc::{check_idempotents_central, check_mode_commutation, DEFAULT_SAMPLES, DEFAULT_SEED};
use semilocal::radicals::{
    check_center_radical_identity, nilpotency_status, quotient_voa, radical_lower_bound, window_ideal_closure,
    NilpotencyVerdict, WindowIdeal,
};

#[test]
fn center_radical_identity_on_fixtures() {
    let mut fixtures = vec![
        common::commutative("u3"),
        common::commutative("dual"),
        common::semidirect(),
    ];
    fixtures.extend((2..=4).map(|n| build_heisenberg(n).unwrap()));
    fixtures.push(build_virasoro(&frac(1, 2), 6).unwrap());
    fixtures.push(build_virasoro_simple(&frac(1, 2), 6).unwrap());
    for v in fixtures {
        let r = check_center_radical_identity(&v).unwrap();
        assert!(r.passed(), "{}: {r:?}", v.name());
        assert!(r.exact, "{}", v.name());
    }
}

#[test]
fn u3_center_radical_is_nilpotent_of_index_two() {
    let r = check_center_radical_identity(&common::commutative("u3")).unwrap();
    assert_eq!(r.center_nilradical.len(), 1);
    assert_eq!(r.assoc_index, 2);
    assert_eq!(r.closure_status.verdict, NilpotencyVerdict::NilpotentWithinWindow(2));
}

#[test]
fn idempotents_are_central_across_corpus() {
    let mut found = 0;
    for v in common::corpus() {
        let r = check_idempotents_central(&v, DEFAULT_SAMPLES, DEFAULT_SEED).unwrap();
        assert!(r.passed(), "{}", v.name());
        assert!(r.exact, "{}", v.name());
        for e in &r.idempotents {
            assert!(is_zero_vec(&v.virasoro(-1, e)), "{}", v.name());
        }
        found += r.idempotents.len();
    }
    assert!(found >= 10);
}

#[test]
fn mode_commutation_on_weight_zero() {
    for v in common::corpus() {
        let t = check_mode_commutation(&v).unwrap();
        assert_eq!(t.failed, 0, "{}", v.name());
    }
}

#[test]
fn block_decomposition_reconstructs() {
    for v in common::corpus() {
        let d = block_decompose(&v).unwrap();
        assert!(d.reconstructs(&v), "{}", v.name());
        let mut sum = vec![0; v.dims().len()];
        for b in &d.blocks {
            for (s, x) in sum.iter_mut().zip(b.dims()) {
                *s += x;
            }
            let r = classify(b, DEFAULT_SAMPLES, DEFAULT_SEED).unwrap();
            assert_eq!(r.block_count, 1, "block of {}", v.name());
        }
        assert_eq!(sum, v.dims(), "{}", v.name());
    }
}

#[test]
fn block_counts() {
    let two = ["QxQ", "Q[x]/(x^2-x)", "Q[u]/(u^3-u^2)", "M(1)@2+M(1)@2"];
    for v in common::corpus() {
        let r = classify(&v, DEFAULT_SAMPLES, DEFAULT_SEED).unwrap();
        let expect = if two.contains(&v.name()) { 2 } else { 1 };
        assert_eq!(r.block_count, expect, "{}", v.name());
    }
}

#[test]
fn classification_agrees_exactly_on_corpus() {
    for v in common::corpus() {
        let r = classify(&v, DEFAULT_SAMPLES, DEFAULT_SEED).unwrap();
        assert!(r.agreement_applies && r.four_way_agreement, "{}", v.name());
        assert_eq!(r.status, Status::Ok, "{}", v.name());
        for b in &r.blocks {
            assert!(b.local.is_exact() && b.indecomposable.is_exact() && b.z_local.is_exact());
            assert!(b.v0plus_verdict().unwrap().is_exact(), "{}", b.name);
        }
        assert!(r.semilocal);
    }
}

#[test]
fn semilocal_decomposition_blocks_are_local() {
    let blocks = semilocal_decomposition(&common::commutative("u3"), DEFAULT_SAMPLES, DEFAULT_SEED).unwrap();
    assert_eq!(blocks.len(), 2);
    let mut dims: Vec<usize> = blocks.iter().map(|(b, _)| b.total_dim()).collect();
    dims.sort();
    assert_eq!(dims, [1, 2]);
    assert!(blocks.iter().all(|(_, r)| r.local.value == Some(true)));
}

#[test]
fn semidirect_module_squares_to_zero() {
    let w = common::semidirect();
    let l = w.layout();
    // M occupies the second half of each weight space
    let gens: Vec<_> = w
        .layout()
        .weights()
        .flat_map(|k| {
            let r = l.range(k);
            let half = r.len() / 2;
            r.skip(half).map(|g| unit_vec(w.total_dim(), g)).collect::<Vec<_>>()
        })
        .collect();
    let m = window_ideal_closure(&w, &gens);
    assert_eq!(m.dims(), [1, 1, 2]);
    for a in m.basis() {
        for b in m.basis() {
            for k in l.stored_modes(l.weight_of(a.iter().position(|x| *x != frac(0, 1)).unwrap())) {
                assert!(is_zero_vec(&w.apply(&a, k, &b)));
            }
        }
    }
    assert_eq!(
        nilpotency_status(&w, &m).verdict,
        NilpotencyVerdict::NilpotentWithinWindow(2)
    );
    let lb = radical_lower_bound(&w).unwrap();
    assert!(m.is_subideal_of(&lb.ideal));
    let r = classify(&w, DEFAULT_SAMPLES, DEFAULT_SEED).unwrap();
    assert_eq!((r.block_count, r.local), (1, Some(true)));
}

#[test]
fn virasoro_null_vector_generates_the_maximal_ideal() {
    let half = frac(1, 2);
    let v = build_virasoro(&half, 6).unwrap();
    let l = v.layout();
    let g = semilocal::builders::gram_matrix(&half, 6).unwrap();
    let null = semilocal::linalg::kernel(&g).basis()[0].clone();
    let ideal: WindowIdeal = window_ideal_closure(&v, &[l.embed(6, &null)]);
    assert_eq!(ideal.dims(), [0, 0, 0, 0, 0, 0, 1]);
    let (quot, _) = quotient_voa(&v, &ideal).unwrap();
    assert_eq!(quot.dims(), build_virasoro_simple(&half, 6).unwrap().dims());
}
