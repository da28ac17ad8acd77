//! Window-level verification of the vertex operator algebra axioms.
//!
//! Every identity instance is evaluated by exact rational arithmetic. An
//! instance whose defining sum needs a state above the window's top weight is
//! not evaluated; it is counted as skipped together with the offending weight.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{add, axpy, binomial, factorial, q, scaled, unit_vec, zero_vec, Scalar, Vector};
use crate::voa::{GradedVector, TruncatedVoa};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AxiomCheck {
    WeightRule,
    Vacuum,
    Creation,
    SkewSymmetry,
    Commutator,
    Translation,
    Virasoro,
}

impl AxiomCheck {
    pub const ALL: [AxiomCheck; 7] = [
        AxiomCheck::WeightRule,
        AxiomCheck::Vacuum,
        AxiomCheck::Creation,
        AxiomCheck::SkewSymmetry,
        AxiomCheck::Commutator,
        AxiomCheck::Translation,
        AxiomCheck::Virasoro,
    ];

    pub fn label(self) -> &'static str {
        match self {
            AxiomCheck::WeightRule => "weight_rule",
            AxiomCheck::Vacuum => "vacuum",
            AxiomCheck::Creation => "creation",
            AxiomCheck::SkewSymmetry => "skew_symmetry",
            AxiomCheck::Commutator => "commutator",
            AxiomCheck::Translation => "translation",
            AxiomCheck::Virasoro => "virasoro",
        }
    }
}

/// How a single identity instance was settled.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckOutcome {
    /// Verified (or refuted) by literal rational equality.
    Exact,
    /// Not evaluated: an intermediate state of this weight lies outside the window.
    Skipped { weight: i32 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomFailure {
    pub check: AxiomCheck,
    /// Human-readable instance label, e.g. `a=(1,0) m=1 b=(1,0) n=-1 c=(0,0)`.
    pub instance: String,
    pub lhs: GradedVector,
    pub rhs: GradedVector,
}

impl fmt::Display for AxiomFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} at {}: lhs = {}, rhs = {}",
            self.check.label(),
            self.instance,
            self.lhs,
            self.rhs
        )
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Tally {
    pub exact: usize,
    pub skipped: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub tallies: BTreeMap<AxiomCheck, Tally>,
    /// Sorted by check then instance label.
    pub failures: Vec<AxiomFailure>,
}

impl AxiomReport {
    pub fn is_clean(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn total(&self) -> Tally {
        self.tallies.values().fold(Tally::default(), |acc, t| Tally {
            exact: acc.exact + t.exact,
            skipped: acc.skipped + t.skipped,
            failed: acc.failed + t.failed,
        })
    }

    pub fn into_result(self) -> Result<Self> {
        match self.failures.first() {
            None => Ok(self),
            Some(f) => Err(Error::AxiomViolation(format!(
                "{} failing instance(s); first: {f}",
                self.failures.len()
            ))),
        }
    }
}

struct Instance {
    check: AxiomCheck,
    outcome: CheckOutcome,
    failure: Option<AxiomFailure>,
}

struct Ctx<'a> {
    v: &'a TruncatedVoa,
    n: usize,
    /// nothing lives outside the window, so no instance needs skipping
    whole: bool,
}

impl<'a> Ctx<'a> {
    fn top(&self) -> i32 {
        self.v.n_max()
    }

    fn w(&self, g: usize) -> i32 {
        self.v.layout().weight_of(g)
    }

    fn name(&self, g: usize) -> String {
        self.v.layout().weighted(g).to_string()
    }

    fn e(&self, g: usize) -> Vector {
        unit_vec(self.n, g)
    }

    fn compare(&self, check: AxiomCheck, instance: impl FnOnce() -> String, lhs: Vector, rhs: Vector) -> Instance {
        let failure = (lhs != rhs).then(|| AxiomFailure {
            check,
            instance: instance(),
            lhs: self.v.layout().to_graded(&lhs),
            rhs: self.v.layout().to_graded(&rhs),
        });
        Instance {
            check,
            outcome: CheckOutcome::Exact,
            failure,
        }
    }

    fn skipped(check: AxiomCheck, weight: i32) -> Instance {
        Instance {
            check,
            outcome: CheckOutcome::Skipped { weight },
            failure: None,
        }
    }

    fn l_minus_one(&self, x: &[Scalar]) -> Vector {
        self.v.virasoro(-1, x)
    }
}

/// Runs every axiom family on every basis instance of the window.
pub fn verify_axioms(v: &TruncatedVoa) -> AxiomReport {
    let ctx = Ctx {
        v,
        n: v.total_dim(),
        whole: v.window_is_whole(),
    };
    let mut instances = Vec::new();
    instances.extend(weight_rule(&ctx));
    instances.extend(vacuum(&ctx));
    instances.extend(creation(&ctx));
    instances.extend(skew_symmetry(&ctx));
    instances.extend(commutator(&ctx));
    instances.extend(translation(&ctx));
    instances.extend(virasoro_relations(&ctx));

    let mut tallies: BTreeMap<AxiomCheck, Tally> = AxiomCheck::ALL.iter().map(|&c| (c, Tally::default())).collect();
    let mut failures = Vec::new();
    for inst in instances {
        let t = tallies.get_mut(&inst.check).expect("all checks tallied");
        match inst.outcome {
            CheckOutcome::Skipped { .. } => t.skipped += 1,
            CheckOutcome::Exact => {
                t.exact += 1;
                if let Some(f) = inst.failure {
                    t.failed += 1;
                    failures.push(f);
                }
            }
        }
    }
    failures.sort_by(|a, b| (a.check, &a.instance).cmp(&(b.check, &b.instance)));
    AxiomReport { tallies, failures }
}

fn weight_rule(ctx: &Ctx) -> Vec<Instance> {
    ctx.v
        .products()
        .map(|(key, out)| {
            let w = key.a.weight + key.b.weight - key.k - 1;
            let ok = out.iter().all(|(c, _)| c.weight == w);
            Instance {
                check: AxiomCheck::WeightRule,
                outcome: CheckOutcome::Exact,
                failure: (!ok).then(|| AxiomFailure {
                    check: AxiomCheck::WeightRule,
                    instance: format!("a={} k={} b={}", key.a, key.k, key.b),
                    lhs: out.clone(),
                    rhs: GradedVector::zero(),
                }),
            }
        })
        .collect()
}

fn vacuum(ctx: &Ctx) -> Vec<Instance> {
    let one = ctx.v.vacuum_global();
    let mut out = Vec::new();
    for b in 0..ctx.n {
        let wb = ctx.w(b);
        for k in ctx.v.layout().mode_range(0, wb) {
            let lhs = ctx.v.apply_basis(one, k, &ctx.e(b));
            let rhs = if k == -1 { ctx.e(b) } else { zero_vec(ctx.n) };
            out.push(ctx.compare(AxiomCheck::Vacuum, || format!("k={k} b={}", ctx.name(b)), lhs, rhs));
        }
    }
    out
}

fn creation(ctx: &Ctx) -> Vec<Instance> {
    let one = ctx.e(ctx.v.vacuum_global());
    let mut out = Vec::new();
    for a in 0..ctx.n {
        let wa = ctx.w(a);
        for k in ctx.v.layout().mode_range(wa, 0) {
            if k != -1 && k < 0 {
                continue;
            }
            let lhs = ctx.v.apply_basis(a, k, &one);
            let rhs = if k == -1 { ctx.e(a) } else { zero_vec(ctx.n) };
            out.push(ctx.compare(AxiomCheck::Creation, || format!("a={} k={k}", ctx.name(a)), lhs, rhs));
        }
    }
    out
}

/// `b(k)a = Σ_{j≥0} (-1)^{k+j+1} L(-1)^j/j! a(k+j)b`.
fn skew_symmetry(ctx: &Ctx) -> Vec<Instance> {
    let l = ctx.v.layout();
    (0..ctx.n)
        .into_par_iter()
        .flat_map_iter(|a| {
            let mut out = Vec::new();
            let wa = ctx.w(a);
            for b in 0..ctx.n {
                let wb = ctx.w(b);
                let ea = ctx.e(a);
                for k in l.mode_range(wa, wb) {
                    let w = wa + wb - k - 1;
                    let lhs = ctx.v.apply_basis(b, k, &ea);
                    let mut rhs = zero_vec(ctx.n);
                    for j in 0..=(w - l.n_min()) {
                        let mut term = ctx.v.apply_basis(a, k + j, &ctx.e(b));
                        for _ in 0..j {
                            term = ctx.l_minus_one(&term);
                        }
                        let sign = if (k + j + 1).rem_euclid(2) == 0 { 1 } else { -1 };
                        let c = Scalar::new(BigInt::from(sign), factorial(j as u32));
                        axpy(&mut rhs, &c, &term);
                    }
                    out.push(ctx.compare(
                        AxiomCheck::SkewSymmetry,
                        || format!("b={} k={k} a={}", ctx.name(b), ctx.name(a)),
                        lhs,
                        rhs,
                    ));
                }
            }
            out
        })
        .collect()
}

/// `[a(m), b(n)]c = Σ_{j≥0} C(m,j) (a(j)b)(m+n-j) c`.
fn commutator(ctx: &Ctx) -> Vec<Instance> {
    let l = ctx.v.layout();
    let top = ctx.top();
    (0..ctx.n)
        .into_par_iter()
        .flat_map_iter(|a| {
            let mut out = Vec::new();
            let wa = ctx.w(a);
            for b in 0..ctx.n {
                let wb = ctx.w(b);
                // a(j)b for j ≥ 0, down to the bottom of the window
                let max_j = wa + wb - 1 - l.n_min();
                let ajb: Vec<Vector> = (0..=max_j.max(-1))
                    .map(|j| ctx.v.apply_basis(a, j, &ctx.e(b)))
                    .collect();
                let ab_top = wa + wb - 1;
                for c in 0..ctx.n {
                    let wc = ctx.w(c);
                    let ec = ctx.e(c);
                    for m in l.stored_modes(wa) {
                        for n in l.stored_modes(wb) {
                            let wf = wa + wb + wc - m - n - 2;
                            if !l.in_window(wf) {
                                continue;
                            }
                            let wbc = wb + wc - n - 1;
                            let wac = wa + wc - m - 1;
                            let worst = wbc.max(wac).max(if max_j >= 0 { ab_top } else { i32::MIN });
                            if worst > top && !ctx.whole {
                                out.push(Ctx::skipped(AxiomCheck::Commutator, worst));
                                continue;
                            }
                            let bc = ctx.v.apply_basis(b, n, &ec);
                            let ac = ctx.v.apply_basis(a, m, &ec);
                            let lhs = crate::linalg::sub(&ctx.v.apply_basis(a, m, &bc), &ctx.v.apply_basis(b, n, &ac));
                            let mut rhs = zero_vec(ctx.n);
                            for (j, v) in ajb.iter().enumerate() {
                                let coef = binomial(m as i64, j as i64);
                                if coef.is_zero() {
                                    continue;
                                }
                                let t = ctx.v.apply(v, m + n - j as i32, &ec);
                                axpy(&mut rhs, &coef, &t);
                            }
                            out.push(ctx.compare(
                                AxiomCheck::Commutator,
                                || format!("a={} m={m} b={} n={n} c={}", ctx.name(a), ctx.name(b), ctx.name(c)),
                                lhs,
                                rhs,
                            ));
                        }
                    }
                }
            }
            out
        })
        .collect()
}

/// `(L(-1)a)(n) = -n a(n-1)`.
fn translation(ctx: &Ctx) -> Vec<Instance> {
    let l = ctx.v.layout();
    let mut out = Vec::new();
    for a in 0..ctx.n {
        let wa = ctx.w(a);
        let la = ctx.l_minus_one(&ctx.e(a));
        for b in 0..ctx.n {
            let wb = ctx.w(b);
            for n in l.mode_range(wa + 1, wb) {
                if wa + 1 > ctx.top() && !ctx.whole {
                    out.push(Ctx::skipped(AxiomCheck::Translation, wa + 1));
                    continue;
                }
                let lhs = ctx.v.apply(&la, n, &ctx.e(b));
                let rhs = scaled(&q(-(n as i64)), &ctx.v.apply_basis(a, n - 1, &ctx.e(b)));
                out.push(ctx.compare(
                    AxiomCheck::Translation,
                    || format!("a={} n={n} b={}", ctx.name(a), ctx.name(b)),
                    lhs,
                    rhs,
                ));
            }
        }
    }
    out
}

/// `[L(m), L(n)] = (m-n)L(m+n) + δ_{m+n,0} (m³-m)c/12`.
fn virasoro_relations(ctx: &Ctx) -> Vec<Instance> {
    let l = ctx.v.layout();
    let span = l.n_max() - l.n_min();
    let c12 = ctx.v.central_charge() / q(12);
    (0..ctx.n)
        .into_par_iter()
        .flat_map_iter(|v| {
            let mut out = Vec::new();
            let wv = ctx.w(v);
            let ev = ctx.e(v);
            for m in -span..=span {
                for n in -span..=span {
                    if !l.in_window(wv - m - n) {
                        continue;
                    }
                    let worst = (wv - n).max(wv - m);
                    if worst > ctx.top() && !ctx.whole {
                        out.push(Ctx::skipped(AxiomCheck::Virasoro, worst));
                        continue;
                    }
                    let lhs = crate::linalg::sub(
                        &ctx.v.virasoro(m, &ctx.v.virasoro(n, &ev)),
                        &ctx.v.virasoro(n, &ctx.v.virasoro(m, &ev)),
                    );
                    let mut rhs = scaled(&q((m - n) as i64), &ctx.v.virasoro(m + n, &ev));
                    if m + n == 0 {
                        let mm = m as i64;
                        let central = &c12 * q(mm * mm * mm - mm);
                        rhs = add(&rhs, &scaled(&central, &ev));
                    }
                    out.push(ctx.compare(
                        AxiomCheck::Virasoro,
                        || format!("m={m} n={n} v={}", ctx.name(v)),
                        lhs,
                        rhs,
                    ));
                }
            }
            out
        })
        .collect()
}
