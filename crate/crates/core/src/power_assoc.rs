//! The weight-zero algebra `V_0` under the `-1` product and its
//! symmetrization `a*b = ½(a(-1)b + b(-1)a)`.

use std::collections::BTreeSet;

use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{eval_poly, minimal_polynomial, StructureTable};
use crate::axioms::Tally;
use crate::error::{Error, Result};
use crate::linalg::{add, fmt_vector, is_zero_vec, q, scaled, sub, unit_vec, zero_vec, Scalar, Subspace, Vector};
use crate::poly::Poly;
use crate::radicals::random_vector;
use crate::voa::TruncatedVoa;

pub const DEFAULT_SAMPLES: usize = 64;
pub const DEFAULT_SEED: u64 = 0x5eed;

/// `V_0` with both products.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerAssocAlgebra {
    unit: Vector,
    raw: StructureTable,
    sym: StructureTable,
}

impl PowerAssocAlgebra {
    pub fn new(unit: Vector, raw: StructureTable) -> Result<Self> {
        if unit.len() != raw.dim() {
            return Err(Error::DimensionMismatch {
                expected: raw.dim(),
                got: unit.len(),
            });
        }
        if !raw.is_unit(&unit) {
            return Err(Error::Input(format!("{} is not a two-sided unit", fmt_vector(&unit))));
        }
        let sym = raw.symmetrized();
        Ok(PowerAssocAlgebra { unit, raw, sym })
    }

    pub fn dim(&self) -> usize {
        self.raw.dim()
    }

    pub fn unit(&self) -> &Vector {
        &self.unit
    }

    pub fn raw(&self) -> &StructureTable {
        &self.raw
    }

    pub fn sym(&self) -> &StructureTable {
        &self.sym
    }

    /// The same algebra with the raw product replaced by the symmetrized one.
    pub fn plus(&self) -> PowerAssocAlgebra {
        PowerAssocAlgebra {
            unit: self.unit.clone(),
            raw: self.sym.clone(),
            sym: self.sym.clone(),
        }
    }
}

/// Refuses algebras with states below weight `-1`.
pub fn require_truncation(v: &TruncatedVoa) -> Result<()> {
    let l = v.layout();
    match l.weights().find(|&w| w <= -2 && l.dim(w) > 0) {
        Some(w) => Err(Error::Precondition(format!(
            "V_{w} has dimension {}; the weight-zero analysis needs V_n = 0 for n <= -2",
            l.dim(w)
        ))),
        None => Ok(()),
    }
}

pub fn extract_v0(v: &TruncatedVoa) -> Result<PowerAssocAlgebra> {
    require_truncation(v)?;
    let l = v.layout();
    let d = l.dim(0);
    let base = l.range(0).start;
    let raw = StructureTable::from_fn(d, |i, j| {
        let out = v.apply_basis(base + i, -1, &unit_vec(l.total(), base + j));
        l.slice(&out, 0)
    });
    let unit = l.slice(&v.vacuum_vector(), 0);
    PowerAssocAlgebra::new(unit, raw)
}

/// Which defining identity failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PowerIdentity {
    /// `a·a² = a²·a`
    Cubic,
    /// `a·(a·a²) = a²·a²`
    Quartic,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerAssocFailure {
    pub identity: PowerIdentity,
    pub basis_tuple: Vec<usize>,
    /// An element on which the one-variable identity fails.
    pub witness: Vector,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerAssocReport {
    pub cubic_instances: usize,
    pub quartic_instances: usize,
    pub failure: Option<PowerAssocFailure>,
}

impl PowerAssocReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

fn cubic(t: &StructureTable, a: &[Scalar]) -> Vector {
    let a2 = t.mul(a, a);
    sub(&t.mul(a, &a2), &t.mul(&a2, a))
}

fn quartic(t: &StructureTable, a: &[Scalar]) -> Vector {
    let a2 = t.mul(a, a);
    sub(&t.mul(a, &t.mul(a, &a2)), &t.mul(&a2, &a2))
}

fn permutations(xs: &[usize]) -> Vec<Vec<usize>> {
    if xs.len() <= 1 {
        return vec![xs.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..xs.len() {
        let mut rest = xs.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// Full linearization of `x1(x2x3) - (x1x2)x3` summed over orderings.
fn linearized_cubic(t: &StructureTable, idx: &[usize]) -> Vector {
    let n = t.dim();
    let e = |i: usize| unit_vec(n, i);
    let mut acc = zero_vec(n);
    for p in permutations(idx) {
        let left = t.mul(&e(p[0]), t.basis_product(p[1], p[2]));
        let right = t.mul(t.basis_product(p[0], p[1]), &e(p[2]));
        acc = add(&acc, &sub(&left, &right));
    }
    acc
}

/// Full linearization of `x1(x2(x3x4)) - (x1x2)(x3x4)`.
fn linearized_quartic(t: &StructureTable, idx: &[usize]) -> Vector {
    let n = t.dim();
    let e = |i: usize| unit_vec(n, i);
    let mut acc = zero_vec(n);
    for p in permutations(idx) {
        let inner = t.mul(&e(p[1]), t.basis_product(p[2], p[3]));
        let left = t.mul(&e(p[0]), &inner);
        let right = t.mul(t.basis_product(p[0], p[1]), t.basis_product(p[2], p[3]));
        acc = add(&acc, &sub(&left, &right));
    }
    acc
}

/// Searches the grid `{0..=degree}^m` on the involved basis vectors; a
/// nonzero polynomial of that degree cannot vanish on all of it.
fn witness(t: &StructureTable, idx: &[usize], identity: PowerIdentity) -> Vector {
    let n = t.dim();
    let support: Vec<usize> = idx.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    let degree = idx.len() as i64;
    let m = support.len();
    let mut digits = vec![0i64; m];
    loop {
        let mut a = zero_vec(n);
        for (d, &i) in digits.iter().zip(&support) {
            a[i] = q(*d);
        }
        let defect = match identity {
            PowerIdentity::Cubic => cubic(t, &a),
            PowerIdentity::Quartic => quartic(t, &a),
        };
        if !is_zero_vec(&defect) {
            return a;
        }
        let mut pos = 0;
        loop {
            if pos == m {
                unreachable!("linearization nonzero but no witness on the grid");
            }
            digits[pos] += 1;
            if digits[pos] <= degree {
                break;
            }
            digits[pos] = 0;
            pos += 1;
        }
    }
}

fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(n, k, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, k, 0, &mut Vec::new(), &mut out);
    out
}

/// Checks `a·a² = a²·a` and `a·(a·a²) = a²·a²` for every `a` via their full
/// linearizations on basis multisets.
pub fn check_power_associative(a: &PowerAssocAlgebra) -> PowerAssocReport {
    let t = a.raw();
    let n = a.dim();
    let mut report = PowerAssocReport {
        cubic_instances: 0,
        quartic_instances: 0,
        failure: None,
    };
    for idx in multisets(n, 3) {
        report.cubic_instances += 1;
        if !is_zero_vec(&linearized_cubic(t, &idx)) {
            report.failure = Some(PowerAssocFailure {
                identity: PowerIdentity::Cubic,
                witness: witness(t, &idx, PowerIdentity::Cubic),
                basis_tuple: idx,
            });
            return report;
        }
    }
    for idx in multisets(n, 4) {
        report.quartic_instances += 1;
        if !is_zero_vec(&linearized_quartic(t, &idx)) {
            report.failure = Some(PowerAssocFailure {
                identity: PowerIdentity::Quartic,
                witness: witness(t, &idx, PowerIdentity::Quartic),
                basis_tuple: idx,
            });
            return report;
        }
    }
    report
}

/// The one-variable identities on a single element.
pub fn power_identities_hold_at(a: &PowerAssocAlgebra, x: &[Scalar]) -> bool {
    is_zero_vec(&cubic(a.raw(), x)) && is_zero_vec(&quartic(a.raw(), x))
}

/// Checks `[a(m), b(n)] + [b(m), a(n)] = 0` and `a(n)b + b(n)a = 0` (`n ≥ 0`)
/// for weight-zero basis states.
pub fn check_mode_commutation(v: &TruncatedVoa) -> Result<Tally> {
    require_truncation(v)?;
    let l = v.layout();
    let n = l.total();
    let top = l.n_max();
    let whole = v.window_is_whole();
    let zero_states: Vec<usize> = l.range(0).collect();
    let mut tally = Tally::default();
    let mut first_failure = None;
    fn record(tally: &mut Tally, first: &mut Option<String>, ok: bool, what: &dyn Fn() -> String) {
        tally.exact += 1;
        if !ok {
            tally.failed += 1;
            if first.is_none() {
                *first = Some(what());
            }
        }
    }
    for (ai, &a) in zero_states.iter().enumerate() {
        for &b in &zero_states[ai..] {
            for k in 0..=(-l.n_min()).max(0) {
                if !l.in_window(-k - 1) {
                    continue;
                }
                let s = add(
                    &v.apply_basis(a, k, &unit_vec(n, b)),
                    &v.apply_basis(b, k, &unit_vec(n, a)),
                );
                record(&mut tally, &mut first_failure, is_zero_vec(&s), &|| {
                    format!("a(n)b + b(n)a at n={k}")
                });
            }
            for c in 0..n {
                let wc = l.weight_of(c);
                let ec = unit_vec(n, c);
                for m in l.stored_modes(0) {
                    for nn in l.stored_modes(0) {
                        let wf = wc - m - nn - 2;
                        if !l.in_window(wf) {
                            continue;
                        }
                        let worst = (wc - m - 1).max(wc - nn - 1);
                        if worst > top && !whole {
                            tally.skipped += 1;
                            continue;
                        }
                        let comm = |x: usize, y: usize| {
                            sub(
                                &v.apply_basis(x, m, &v.apply_basis(y, nn, &ec)),
                                &v.apply_basis(y, nn, &v.apply_basis(x, m, &ec)),
                            )
                        };
                        let s = add(&comm(a, b), &comm(b, a));
                        record(&mut tally, &mut first_failure, is_zero_vec(&s), &|| {
                            format!(
                                "[a(m),b(n)] + [b(m),a(n)] with a={} b={} m={m} n={nn} on {}",
                                l.weighted(a),
                                l.weighted(b),
                                l.weighted(c)
                            )
                        });
                    }
                }
            }
        }
    }
    if let Some(f) = first_failure {
        return Err(Error::TheoremViolation(format!(
            "weight-zero modes fail to commute ({} of {} exact instances): {f}",
            tally.failed, tally.exact
        )));
    }
    Ok(tally)
}

/// The unital subalgebra generated by one element under the symmetrized product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementAnalysis {
    pub element: Vector,
    pub minimal_polynomial: Poly,
    pub nilpotent: bool,
    /// The idempotent of `⟨a⟩` complementary to its nilpotent part.
    pub extracted_idempotent: Option<Vector>,
    /// One idempotent per rational root of the minimal polynomial.
    pub spectral_idempotents: Vec<Vector>,
}

/// Idempotent of `Q[t]/(f)` that is `1` modulo `g` and `0` modulo `f/g`.
fn crt_idempotent(f: &Poly, g: &Poly) -> Poly {
    let (h, _) = f.div_rem(g);
    let (d, _s, t) = g.ext_gcd(&h);
    debug_assert_eq!(d, Poly::one());
    t.mul(&h).rem(f)
}

pub fn element_subalgebra(a: &PowerAssocAlgebra, x: &[Scalar]) -> Result<ElementAnalysis> {
    if !power_identities_hold_at(a, x) {
        return Err(Error::Precondition(format!(
            "powers of {} are ambiguous: the power identities fail there",
            fmt_vector(x)
        )));
    }
    let t = a.sym();
    let (p, _) = minimal_polynomial(t, a.unit(), x);
    let (roots, _) = p.split_rational();
    let zero_mult = roots.iter().find(|(r, _)| r.is_zero()).map(|(_, k)| *k).unwrap_or(0);
    let deg = p.degree().unwrap_or(0);
    let nilpotent = zero_mult == deg;
    let extracted_idempotent = if nilpotent {
        None
    } else if zero_mult == 0 {
        Some(a.unit().clone())
    } else {
        let (g, _) = p.div_rem(&Poly::monomial(zero_mult));
        Some(eval_poly(t, a.unit(), &crt_idempotent(&p, &g), x))
    };
    let spectral_idempotents = if roots.len() == 1 && roots[0].1 == deg {
        vec![a.unit().clone()]
    } else {
        roots
            .iter()
            .map(|(r, k)| {
                let g = Poly::linear(r).pow(*k);
                eval_poly(t, a.unit(), &crt_idempotent(&p, &g), x)
            })
            .collect()
    };
    Ok(ElementAnalysis {
        element: x.to_vec(),
        minimal_polynomial: p,
        nilpotent,
        extracted_idempotent,
        spectral_idempotents,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    Exact,
    Sampled,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PaLocality {
    /// An idempotent other than `0` and the unit.
    NotLocal {
        witness: Vector,
    },
    /// A codimension-one nil ideal.
    LocalCertified {
        nil_ideal: Subspace,
        provenance: Provenance,
    },
    Inconclusive {
        reason: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PaCertificate {
    pub verdict: PaLocality,
    pub seed: u64,
    pub samples: usize,
}

impl PaCertificate {
    pub fn is_local(&self) -> Option<bool> {
        match self.verdict {
            PaLocality::NotLocal { .. } => Some(false),
            PaLocality::LocalCertified { .. } => Some(true),
            PaLocality::Inconclusive { .. } => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(
            self.verdict,
            PaLocality::NotLocal { .. }
                | PaLocality::LocalCertified {
                    provenance: Provenance::Exact,
                    ..
                }
        )
    }
}

/// Basis, pairwise sums, then seeded random elements.
fn search_elements(n: usize, samples: usize, seed: u64) -> Vec<Vector> {
    let mut out: Vec<Vector> = (0..n).map(|i| unit_vec(n, i)).collect();
    for i in 0..n {
        for j in i + 1..n {
            out.push(add(&unit_vec(n, i), &unit_vec(n, j)));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    out.extend((0..samples).map(|_| random_vector(&mut rng, n)));
    out
}

/// Every idempotent found in single-generated subalgebras of the search set.
pub fn discover_idempotents(a: &PowerAssocAlgebra, samples: usize, seed: u64) -> Result<Vec<Vector>> {
    let mut found = BTreeSet::new();
    for x in search_elements(a.dim(), samples, seed) {
        let an = element_subalgebra(a, &x)?;
        found.extend(an.spectral_idempotents);
        found.extend(an.extracted_idempotent);
    }
    Ok(found.into_iter().collect())
}

/// Whether the subspace is a nilpotent algebra: some power, under every
/// bracketing, vanishes.
fn is_nilpotent_subalgebra(t: &StructureTable, s: &Subspace) -> bool {
    let n = t.dim();
    let mut powers: Vec<Subspace> = vec![s.clone()];
    for _ in 0..=n {
        let k = powers.len();
        let mut next = Subspace::zero(n);
        for i in 0..k {
            let j = k - 1 - i;
            for x in powers[i].basis() {
                for y in powers[j].basis() {
                    next.insert(&t.mul(x, y));
                }
            }
        }
        if next.is_zero() {
            return true;
        }
        powers.push(next);
    }
    false
}

/// Locality of a power-associative algebra: a nontrivial idempotent is a
/// witness against it; a codimension-one nil ideal certifies it.
pub fn pa_local_certificate(a: &PowerAssocAlgebra, samples: usize, seed: u64) -> PaCertificate {
    let cert = |verdict| PaCertificate { verdict, seed, samples };
    let n = a.dim();
    let t = a.sym();
    if n == 1 {
        return cert(PaLocality::LocalCertified {
            nil_ideal: Subspace::zero(1),
            provenance: Provenance::Exact,
        });
    }
    let candidates = search_elements(n, samples, seed);
    let mut analyses = Vec::with_capacity(candidates.len());
    for x in &candidates {
        match element_subalgebra(a, x) {
            Ok(an) => analyses.push(an),
            Err(e) => return cert(PaLocality::Inconclusive { reason: e.to_string() }),
        }
    }
    for an in &analyses {
        for e in an.spectral_idempotents.iter().chain(&an.extracted_idempotent) {
            if !is_zero_vec(e) && e != a.unit() {
                return cert(PaLocality::NotLocal { witness: e.clone() });
            }
        }
    }
    // each basis vector must be a scalar plus a nilpotent
    let mut nil_ideal = Subspace::zero(n);
    for an in analyses.iter().take(n) {
        let (roots, rest) = an.minimal_polynomial.split_rational();
        if roots.len() != 1 || rest.degree().unwrap_or(0) > 0 {
            return cert(PaLocality::Inconclusive {
                reason: format!(
                    "{} has minimal polynomial {}, not a power of a linear factor",
                    fmt_vector(&an.element),
                    an.minimal_polynomial
                ),
            });
        }
        nil_ideal.insert(&sub(&an.element, &scaled(&roots[0].0, a.unit())));
    }
    if nil_ideal.dim() + 1 != n || nil_ideal.contains(a.unit()) {
        return cert(PaLocality::Inconclusive {
            reason: format!("candidate nil ideal has dimension {} in {n}", nil_ideal.dim()),
        });
    }
    for x in nil_ideal.basis() {
        for i in 0..n {
            if !nil_ideal.contains(&t.mul(&unit_vec(n, i), x)) {
                return cert(PaLocality::Inconclusive {
                    reason: "candidate nil ideal is not closed under multiplication".into(),
                });
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9);
    let dim_n = nil_ideal.dim();
    let mut probes: Vec<Vector> = nil_ideal.basis().to_vec();
    probes.extend((0..samples).map(|_| {
        let c = random_vector(&mut rng, dim_n);
        nil_ideal
            .basis()
            .iter()
            .zip(&c)
            .fold(zero_vec(n), |acc, (b, ci)| add(&acc, &scaled(ci, b)))
    }));
    for x in &probes {
        match element_subalgebra(a, x) {
            Ok(an) if an.nilpotent => {}
            Ok(_) => {
                return cert(PaLocality::Inconclusive {
                    reason: format!("{} lies in the candidate ideal but is not nilpotent", fmt_vector(x)),
                })
            }
            Err(e) => return cert(PaLocality::Inconclusive { reason: e.to_string() }),
        }
    }
    let provenance = if is_nilpotent_subalgebra(t, &nil_ideal) {
        Provenance::Exact
    } else {
        Provenance::Sampled
    };
    cert(PaLocality::LocalCertified { nil_ideal, provenance })
}

/// One step of the replayed computation for an involutorial unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainStep {
    pub label: &'static str,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvolutionChain {
    pub unit: Vector,
    pub steps: Vec<ChainStep>,
}

impl InvolutionChain {
    pub fn passed(&self) -> bool {
        self.steps.iter().all(|s| s.holds)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdempotentCentrality {
    pub seed: u64,
    pub samples: usize,
    /// Discovered idempotents as global weight-zero states.
    pub idempotents: Vec<Vector>,
    /// Whether each is also idempotent for the raw `-1` product.
    pub raw_idempotent: Vec<bool>,
    pub chains: Vec<InvolutionChain>,
    pub exact: bool,
}

impl IdempotentCentrality {
    pub fn passed(&self) -> bool {
        self.raw_idempotent.iter().all(|&b| b) && self.chains.iter().all(InvolutionChain::passed)
    }
}

/// For `u(-1)u = 𝟙`:
/// `L(-1)(u(-1)u) = 0`, `L(-1)(u(-1)u) = u(-2)u + u(-1)u(-2)𝟙`,
/// `u(-1)u(-2)𝟙 = u(-2)u`, `u(-1)u(-2)u = u(-2)𝟙`, `u(-2)𝟙 = L(-1)u`, hence `L(-1)u = 0`.
fn involution_chain(v: &TruncatedVoa, u: &[Scalar]) -> InvolutionChain {
    let vac = v.vacuum_vector();
    let lm1 = |x: &[Scalar]| v.virasoro(-1, x);
    let uu = v.apply(u, -1, u);
    let u2_vac = v.apply(u, -2, &vac);
    let u2_u = v.apply(u, -2, u);
    let lu = lm1(u);
    let step = |label, holds| ChainStep { label, holds };
    let steps = vec![
        step("u(-1)u = 1", uu == vac),
        step("L(-1)(u(-1)u) = 0", is_zero_vec(&lm1(&uu))),
        step(
            "L(-1)(u(-1)u) = u(-2)u + u(-1)L(-1)u",
            lm1(&uu) == add(&u2_u, &v.apply(u, -1, &lu)),
        ),
        step("L(-1)u = u(-2)1", lu == u2_vac),
        step("u(-1)u(-2)1 = u(-2)u", v.apply(u, -1, &u2_vac) == u2_u),
        step("u(-1)u(-2)u = u(-2)1", v.apply(u, -1, &u2_u) == u2_vac),
        step("L(-1)u = 0", is_zero_vec(&lu)),
    ];
    InvolutionChain {
        unit: u.to_vec(),
        steps,
    }
}

/// Every idempotent found in `V_0` is central: `L(-1)e = 0`, checked through
/// the involutorial unit `2e - 𝟙`.
pub fn check_idempotents_central(v: &TruncatedVoa, samples: usize, seed: u64) -> Result<IdempotentCentrality> {
    let a = extract_v0(v)?;
    let l = v.layout();
    let found = discover_idempotents(&a, samples, seed)?;
    let exact = v.window_is_whole() || l.n_max() >= 1;
    let vac = v.vacuum_vector();
    let mut report = IdempotentCentrality {
        seed,
        samples,
        idempotents: Vec::new(),
        raw_idempotent: Vec::new(),
        chains: Vec::new(),
        exact,
    };
    for e in found.into_iter().filter(|e| !is_zero_vec(e)) {
        report.raw_idempotent.push(a.raw().mul(&e, &e) == e);
        let g = l.embed(0, &e);
        let u = sub(&scaled(&q(2), &g), &vac);
        report.chains.push(involution_chain(v, &u));
        report.idempotents.push(g);
    }
    if exact && !report.passed() {
        let bad = report
            .chains
            .iter()
            .find(|c| !c.passed())
            .map(|c| {
                let s = c.steps.iter().find(|s| !s.holds).expect("failing step");
                format!("involutorial unit {}: {}", fmt_vector(&c.unit), s.label)
            })
            .unwrap_or_else(|| "idempotent of V_0+ is not idempotent in V_0".into());
        return Err(Error::TheoremViolation(format!("idempotent centrality: {bad}")));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::CommAssocAlgebra;
    use crate::linalg::frac;

    fn from_comm(c: &CommAssocAlgebra) -> PowerAssocAlgebra {
        PowerAssocAlgebra::new(c.unit().clone(), c.table().clone()).unwrap()
    }

    #[test]
    fn non_power_associative_witness() {
        // 1, a, b with a∘a = b, a∘b = 0, b∘a = a
        let v = |xs: [i64; 3]| xs.iter().map(|&x| q(x)).collect::<Vector>();
        let t = StructureTable::from_fn(3, |i, j| match (i, j) {
            (0, k) | (k, 0) => unit_vec(3, k),
            (1, 1) => v([0, 0, 1]),
            (1, 2) => v([0, 0, 0]),
            (2, 1) => v([0, 1, 0]),
            _ => v([0, 0, 0]),
        });
        let a = PowerAssocAlgebra::new(unit_vec(3, 0), t).unwrap();
        let r = check_power_associative(&a);
        let f = r.failure.expect("fails");
        assert_eq!(f.identity, PowerIdentity::Cubic);
        assert!(!power_identities_hold_at(&a, &f.witness));
    }

    #[test]
    fn element_analysis_in_truncated_polynomials() {
        let c = CommAssocAlgebra::truncated_polynomial(&Poly::from_i64(&[0, 0, -1, 1])).unwrap();
        let a = from_comm(&c);
        let an = element_subalgebra(&a, &unit_vec(3, 1)).unwrap();
        assert_eq!(an.minimal_polynomial, Poly::from_i64(&[0, 0, -1, 1]));
        assert!(!an.nilpotent);
        assert_eq!(an.extracted_idempotent, Some(unit_vec(3, 2)));

        let d = from_comm(&CommAssocAlgebra::truncated_polynomial(&Poly::from_i64(&[0, 0, 1])).unwrap());
        let an = element_subalgebra(&d, &unit_vec(2, 1)).unwrap();
        assert_eq!(an.minimal_polynomial, Poly::from_i64(&[0, 0, 1]));
        assert!(an.nilpotent);
        assert_eq!(an.extracted_idempotent, None);

        let an = element_subalgebra(&d, &unit_vec(2, 0)).unwrap();
        assert_eq!(an.minimal_polynomial, Poly::from_i64(&[-1, 1]));
        assert_eq!(an.extracted_idempotent, Some(unit_vec(2, 0)));
    }

    #[test]
    fn locality_certificates() {
        let d = from_comm(&CommAssocAlgebra::truncated_polynomial(&Poly::from_i64(&[0, 0, 1])).unwrap());
        let c = pa_local_certificate(&d, 8, 1);
        assert_eq!(
            c.verdict,
            PaLocality::LocalCertified {
                nil_ideal: Subspace::span(2, &[unit_vec(2, 1)]),
                provenance: Provenance::Exact
            }
        );
        let s = from_comm(&CommAssocAlgebra::truncated_polynomial(&Poly::from_i64(&[-1, 0, 1])).unwrap());
        match pa_local_certificate(&s, 8, 1).verdict {
            PaLocality::NotLocal { witness } => {
                assert_eq!(s.raw().mul(&witness, &witness), witness);
                assert!(witness == vec![frac(1, 2), frac(1, 2)] || witness == vec![frac(1, 2), frac(-1, 2)]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn crt_idempotent_is_idempotent() {
        let f = Poly::from_i64(&[0, 0, -1, 1]);
        let e = crt_idempotent(&f, &Poly::from_i64(&[-1, 1]));
        assert_eq!(e.mul(&e).rem(&f), e);
        assert_eq!(e, Poly::from_i64(&[0, 0, 1]));
    }
}
