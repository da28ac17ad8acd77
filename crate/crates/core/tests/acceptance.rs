//! One line per acceptance criterion; exits nonzero if any fails.

mod common;

use std::path::PathBuf;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use semilocal::algebra::CommAssocAlgebra;
use semilocal::axioms::verify_axioms;
use semilocal::builders::{
    build_heisenberg, build_virasoro, build_virasoro_simple, gram_matrix, non_functoriality_report,
};
use semilocal::center::{block_decompose, lift_idempotent};
use semilocal::classify::{classify, Status};
use semilocal::cli::build_named;
use semilocal::format::serialize_voa;
use semilocal::linalg::{add, frac, is_zero_vec, kernel, q, sub, unit_vec, zero_vec};
use semilocal::poly::Poly;
use semilocal::power_assoc::{check_idempotents_central, DEFAULT_SAMPLES, DEFAULT_SEED};
use semilocal::radicals::{
    check_center_radical_identity, nilpotency_status, nilradical_assoc, quotient_voa, radical_lower_bound,
    window_ideal_closure, NilpotencyVerdict,
};
use semilocal::voa::TruncatedVoa;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn axiom_suite(corpus: &[TruncatedVoa]) -> Outcome {
    let start = Instant::now();
    let mut exact = 0;
    for v in corpus {
        let r = verify_axioms(v);
        ensure(r.is_clean(), || format!("{}: {}", v.name(), r.failures[0]))?;
        exact += r.total().exact;
    }
    let took = start.elapsed();
    ensure(took < Duration::from_secs(300), || format!("took {took:?}"))?;
    Ok(format!(
        "{} fixtures, {exact} exact instances, {took:.1?}",
        corpus.len()
    ))
}

fn four_way_agreement(corpus: &[TruncatedVoa]) -> Outcome {
    let mut blocks = 0;
    for v in corpus {
        let r = classify(v, DEFAULT_SAMPLES, DEFAULT_SEED).map_err(|e| format!("{}: {e}", v.name()))?;
        ensure(r.agreement_applies, || {
            format!("{}: agreement not applicable", v.name())
        })?;
        ensure(r.four_way_agreement && r.status == Status::Ok, || {
            format!("{}: {:?}", v.name(), r.caveats)
        })?;
        for b in &r.blocks {
            let d = b.v0plus_verdict().ok_or("missing (d)")?;
            let all = [&b.local, &b.indecomposable, &b.z_local, &d];
            ensure(all.iter().all(|x| x.is_exact()), || {
                format!("{}: sampled verdict", b.name)
            })?;
            ensure(all.iter().all(|x| x.value == b.indecomposable.value), || {
                format!("{}: disagreement", b.name)
            })?;
            blocks += 1;
        }
    }
    Ok(format!("{blocks} blocks, all four predicates exact and equal"))
}

fn center_radical_identity() -> Outcome {
    let half = frac(1, 2);
    let mut fixtures = vec![common::commutative("u3"), common::semidirect()];
    fixtures.extend((2..=4).map(|n| build_heisenberg(n).unwrap()));
    fixtures.push(build_virasoro(&half, 6).unwrap());
    fixtures.push(build_virasoro_simple(&half, 6).unwrap());
    for v in &fixtures {
        let r = check_center_radical_identity(v).map_err(|e| format!("{}: {e}", v.name()))?;
        ensure(r.passed() && r.exact, || format!("{}: {r:?}", v.name()))?;
    }
    Ok(format!("{} fixtures", fixtures.len()))
}

fn idempotents_central(corpus: &[TruncatedVoa]) -> Outcome {
    let (mut idems, mut chains) = (0, 0);
    for v in corpus {
        let r =
            check_idempotents_central(v, DEFAULT_SAMPLES, DEFAULT_SEED).map_err(|e| format!("{}: {e}", v.name()))?;
        ensure(r.passed() && r.exact, || format!("{}: {r:?}", v.name()))?;
        for e in &r.idempotents {
            ensure(is_zero_vec(&v.virasoro(-1, e)), || format!("{}: L(-1)e != 0", v.name()))?;
        }
        idems += r.idempotents.len();
        chains += r.chains.len();
    }
    Ok(format!("{idems} idempotents, {chains} involution chains"))
}

fn block_reconstruction(corpus: &[TruncatedVoa]) -> Outcome {
    let mut blocks = 0;
    for v in corpus {
        let d = block_decompose(v).map_err(|e| format!("{}: {e}", v.name()))?;
        ensure(d.reconstructs(v), || format!("{}: projections", v.name()))?;
        let mut sum = vec![0; v.dims().len()];
        for b in &d.blocks {
            sum.iter_mut().zip(b.dims()).for_each(|(s, x)| *s += x);
            let r = classify(b, DEFAULT_SAMPLES, DEFAULT_SEED).map_err(|e| e.to_string())?;
            ensure(r.block_count == 1, || format!("block {} splits", b.name()))?;
        }
        ensure(sum == v.dims(), || format!("{}: dims {sum:?}", v.name()))?;
        blocks += d.len();
    }
    Ok(format!("{blocks} blocks over {} fixtures", corpus.len()))
}

fn virasoro_radical() -> Outcome {
    let start = Instant::now();
    let half = frac(1, 2);
    let kernels: Vec<usize> = (0..=6)
        .map(|n| gram_matrix(&half, n).map(|g| kernel(&g).dim()))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    ensure(kernels == [0, 0, 0, 0, 0, 0, 1], || format!("kernels {kernels:?}"))?;
    let v = build_virasoro(&half, 6).unwrap();
    let null = kernel(&gram_matrix(&half, 6).unwrap()).basis()[0].clone();
    let ideal = window_ideal_closure(&v, &[v.layout().embed(6, &null)]);
    ensure(ideal.dims() == [0, 0, 0, 0, 0, 0, 1], || {
        format!("closure {:?}", ideal.dims())
    })?;
    let (quot, _) = quotient_voa(&v, &ideal).map_err(|e| e.to_string())?;
    let simple = build_virasoro_simple(&half, 6).unwrap();
    ensure(
        quot.dims() == [1, 0, 1, 1, 2, 2, 3] && quot.dims() == simple.dims(),
        || format!("quotient {:?}", quot.dims()),
    )?;
    Ok(format!(
        "kernels {kernels:?}, quotient {:?}, {:.1?}",
        quot.dims(),
        start.elapsed()
    ))
}

fn semidirect_example() -> Outcome {
    let w = common::semidirect();
    let l = w.layout();
    let gens: Vec<_> = l
        .weights()
        .flat_map(|k| {
            let r = l.range(k);
            let half = r.len() / 2;
            r.skip(half).map(|g| unit_vec(w.total_dim(), g)).collect::<Vec<_>>()
        })
        .collect();
    let m = window_ideal_closure(&w, &gens);
    ensure(m.dims() == [1, 1, 2], || format!("M dims {:?}", m.dims()))?;
    for a in &gens {
        for b in &gens {
            for k in -3..=3 {
                ensure(is_zero_vec(&w.apply(a, k, b)), || "M(k)M != 0".into())?;
            }
        }
    }
    let status = nilpotency_status(&w, &m);
    ensure(status.verdict == NilpotencyVerdict::NilpotentWithinWindow(2), || {
        format!("{status:?}")
    })?;
    let lb = radical_lower_bound(&w).map_err(|e| e.to_string())?;
    ensure(m.is_subideal_of(&lb.ideal), || format!("J_lb {:?}", lb.ideal.dims()))?;
    let r = classify(&w, DEFAULT_SAMPLES, DEFAULT_SEED).map_err(|e| e.to_string())?;
    ensure(r.block_count == 1 && r.local == Some(true), || {
        format!("{} blocks, local {:?}", r.block_count, r.local)
    })?;
    Ok(format!("M^2 = 0, nilpotent(2), J_lb {:?}, local", lb.ideal.dims()))
}

fn non_functoriality() -> Outcome {
    let r = non_functoriality_report(2).map_err(|e| e.to_string())?;
    ensure(r.lower_bound_dims == r.sector_one_dims && r.demonstrates(), || {
        format!("{r:?}")
    })?;
    Ok(format!(
        "J_lb(U) {:?} = sector one, Heisenberg side {:?}",
        r.lower_bound_dims, r.heisenberg_lower_bound_dims
    ))
}

fn idempotent_lifting() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    let mut trials = 0;
    let mut worst = 0;
    for k in 0..=6usize {
        for m in 0..=6 - k {
            if k + m == 0 {
                continue;
            }
            let f = Poly::monomial(k).mul(&Poly::linear(&q(1)).pow(m));
            let a = CommAssocAlgebra::truncated_polynomial(&f).map_err(|e| e.to_string())?;
            let d = a.dim();
            let nil = nilradical_assoc(&a).map_err(|e| e.to_string())?;
            // the nilradical is (u(u-1)), and (u(u-1))^t = 0 exactly when t >= max(k, m)
            let index = k.max(m);
            let bound = (usize::BITS - (index - 1).leading_zeros()) as usize + 1;
            let mut bases = vec![a.unit().clone(), zero_vec(d)];
            if k > 0 && m > 0 {
                let u = unit_vec(d, 1);
                bases.push(sub(a.unit(), &u));
                bases.push(u);
            }
            for base in &bases {
                for _ in 0..8 {
                    let mut e0 = base.clone();
                    for b in nil.basis() {
                        let c = frac(rng.gen_range(-3..=3), rng.gen_range(1..=3));
                        e0 = add(&e0, &b.iter().map(|x| x * &c).collect::<Vec<_>>());
                    }
                    let (e, it) = lift_idempotent(&a, &e0).map_err(|e| e.to_string())?;
                    ensure(a.mul(&e, &e) == e, || "not idempotent".into())?;
                    ensure(nil.contains(&sub(&e, &e0)), || "left the coset".into())?;
                    ensure(it <= bound, || format!("k={k} m={m}: {it} > {bound}"))?;
                    worst = worst.max(it);
                    trials += 1;
                }
            }
        }
    }
    Ok(format!("{trials} trials, at most {worst} iterations"))
}

fn golden_regeneration() -> Outcome {
    let files = [
        ("heisenberg_n2.voa", "heisenberg", 2),
        ("heisenberg_n4.voa", "heisenberg", 4),
        ("virasoro_half_n6.voa", "virasoro", 6),
        ("virasoro_simple_half_n6.voa", "virasoro-simple", 6),
    ];
    let mut bytes = 0;
    for (file, name, level) in files {
        let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "golden", file].iter().collect();
        let shipped = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
        let v = build_named(name, level, &frac(1, 2)).map_err(|e| e.to_string())?;
        ensure(serialize_voa(&v) == shipped, || format!("{file} differs"))?;
        bytes += shipped.len();
    }
    Ok(format!("{} files, {bytes} bytes identical", files.len()))
}

fn main() {
    let corpus = common::corpus();
    let criteria: Vec<Criterion> = vec![
        ("axiom suite", Box::new(|| axiom_suite(&corpus))),
        ("four-way locality agreement", Box::new(|| four_way_agreement(&corpus))),
        ("center/radical identity", Box::new(center_radical_identity)),
        ("idempotents are central", Box::new(|| idempotents_central(&corpus))),
        ("block reconstruction", Box::new(|| block_reconstruction(&corpus))),
        ("Virasoro radical detection", Box::new(virasoro_radical)),
        ("semidirect square-zero ideal", Box::new(semidirect_example)),
        ("radical non-functoriality", Box::new(non_functoriality)),
        ("idempotent lifting", Box::new(idempotent_lifting)),
        ("golden regeneration", Box::new(golden_regeneration)),
    ];
    let mut failed = 0;
    for (i, (label, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS {:>2} {label}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {label}: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
