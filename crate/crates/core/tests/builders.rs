mod common;

use semilocal::axioms::verify_axioms;
use semilocal::builders::{
    build_direct_sum, build_heisenberg, build_lattice_upper, build_virasoro, build_virasoro_simple,
    commutative_fixture, gram_matrix, non_functoriality_report,
};
use semilocal::center::center;
use semilocal::format::{parse_voa, serialize_voa};
use semilocal::linalg::{frac, kernel, q};
use semilocal::Error;

fn partition_count(n: usize, min_part: usize) -> usize {
    // p(n) with all parts ≥ min_part, by the standard coin-change recurrence
    let mut ways = vec![0usize; n + 1];
    ways[0] = 1;
    for part in min_part.max(1)..=n {
        for total in part..=n {
            ways[total] += ways[total - part];
        }
    }
    ways[n]
}

#[test]
fn heisenberg_dims_are_partition_numbers() {
    for n in 2..=6 {
        let v = build_heisenberg(n).unwrap();
        let expect: Vec<usize> = (0..=n as usize).map(|k| partition_count(k, 1)).collect();
        assert_eq!(v.dims(), expect.as_slice());
    }
    assert_eq!(build_heisenberg(4).unwrap().dims(), &[1, 1, 2, 3, 5]);
}

#[test]
fn virasoro_dims_use_parts_at_least_two() {
    let v = build_virasoro(&frac(1, 2), 6).unwrap();
    assert_eq!(v.dims(), &[1, 0, 1, 1, 2, 2, 4]);
    let expect: Vec<usize> = (0..=6).map(|k| partition_count(k, 2)).collect();
    assert_eq!(v.dims(), expect.as_slice());
    assert_eq!(
        build_virasoro_simple(&frac(1, 2), 6).unwrap().dims(),
        &[1, 0, 1, 1, 2, 2, 3]
    );
}

#[test]
fn gram_kernels_at_half() {
    let dims: Vec<usize> = (0..=6)
        .map(|n| kernel(&gram_matrix(&frac(1, 2), n).unwrap()).dim())
        .collect();
    assert_eq!(dims, [0, 0, 0, 0, 0, 0, 1]);
    // generic charge has no null vectors at these levels
    for n in 0..=6 {
        assert_eq!(kernel(&gram_matrix(&frac(3, 7), n).unwrap()).dim(), 0);
    }
}

#[test]
fn central_charges() {
    assert_eq!(build_heisenberg(2).unwrap().central_charge(), &q(1));
    assert_eq!(build_lattice_upper(2).unwrap().central_charge(), &q(1));
    assert_eq!(build_virasoro(&frac(-2, 5), 4).unwrap().central_charge(), &frac(-2, 5));
    assert_eq!(common::commutative("u3").central_charge(), &q(0));
}

#[test]
fn commutative_fixtures_are_their_own_center() {
    for key in common::COMMUTATIVE {
        let v = common::commutative(key);
        assert_eq!(center(&v).unwrap().dim(), v.total_dim(), "{key}");
    }
    assert!(commutative_fixture("nope").is_err());
}

#[test]
fn out_of_range_levels_are_rejected() {
    assert!(matches!(build_heisenberg(7), Err(Error::Input(_))));
    assert!(matches!(build_virasoro(&q(1), 9), Err(Error::Input(_))));
    assert!(matches!(build_lattice_upper(4), Err(Error::Refused(_))));
    assert!(matches!(build_lattice_upper(1), Err(Error::Input(_))));
}

#[test]
fn direct_sum_needs_matching_windows_and_charges() {
    let h2 = build_heisenberg(2).unwrap();
    let h3 = build_heisenberg(3).unwrap();
    assert!(matches!(build_direct_sum(&h2, &h3), Err(Error::Input(_))));
    let vir = build_virasoro(&frac(1, 2), 2).unwrap();
    assert!(matches!(build_direct_sum(&h2, &vir), Err(Error::Input(_))));
    let pair = common::heisenberg_pair();
    assert_eq!(pair.dims(), &[2, 2, 4]);
    assert_eq!(pair.central_charge(), &q(1));
}

#[test]
fn every_fixture_passes_the_axioms() {
    for v in common::corpus() {
        let r = verify_axioms(&v);
        assert!(r.is_clean(), "{}: {:?}", v.name(), r.failures.first());
        assert!(r.total().exact > 0);
    }
}

#[test]
fn commutative_fixtures_skip_nothing() {
    for key in common::COMMUTATIVE {
        assert_eq!(verify_axioms(&common::commutative(key)).total().skipped, 0, "{key}");
    }
}

#[test]
fn corrupted_coefficient_is_detected() {
    let text = serialize_voa(&build_heisenberg(2).unwrap());
    // α(1)α(-1)𝟙 = 𝟙 becomes 2·𝟙, breaking the commutator formula
    let bad = text.replace("p 1 0 1 1 0 -> 0 1\n", "p 1 0 1 1 0 -> 0 2\n");
    assert_ne!(bad, text);
    let v = parse_voa(&bad).unwrap();
    assert!(!verify_axioms(&v).is_clean());
}

#[test]
fn lattice_radical_is_the_momentum_sector() {
    let r = non_functoriality_report(2).unwrap();
    assert_eq!(r.lower_bound_dims, [0, 1, 1]);
    assert!(r.lower_bound_is_sector_one);
    assert_eq!(r.heisenberg_lower_bound_dims, [0, 0, 0]);
    assert_eq!(r.quotient_dims, r.heisenberg_dims);
    assert!(r.demonstrates());
}
