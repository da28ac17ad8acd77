#![allow(dead_code)]

use semilocal::builders::{
    build_commutative_voa, build_direct_sum, build_heisenberg, build_lattice_upper, build_semidirect, build_virasoro,
    build_virasoro_simple, commutative_fixture, ModuleData,
};
use semilocal::linalg::frac;
use semilocal::voa::TruncatedVoa;

pub const COMMUTATIVE: [&str; 5] = ["q", "qxq", "dual", "idem", "u3"];

pub fn commutative(key: &str) -> TruncatedVoa {
    let (name, a) = commutative_fixture(key).unwrap();
    build_commutative_voa(&name, &a).unwrap()
}

pub fn semidirect() -> TruncatedVoa {
    let h = build_heisenberg(2).unwrap();
    let m = ModuleData::adjoint(&h);
    build_semidirect(&h, &m).unwrap()
}

pub fn heisenberg_pair() -> TruncatedVoa {
    let h = build_heisenberg(2).unwrap();
    build_direct_sum(&h, &h).unwrap()
}

/// The full fixture corpus, in a fixed order.
pub fn corpus() -> Vec<TruncatedVoa> {
    let half = frac(1, 2);
    let mut out = vec![
        build_heisenberg(4).unwrap(),
        build_virasoro(&half, 6).unwrap(),
        build_virasoro_simple(&half, 6).unwrap(),
        build_lattice_upper(2).unwrap(),
        semidirect(),
    ];
    out.extend(COMMUTATIVE.iter().map(|k| commutative(k)));
    out.push(heisenberg_pair());
    out
}
