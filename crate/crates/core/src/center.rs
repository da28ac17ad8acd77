//! The center `Z(V) = ker L(-1) ∩ V_0`, its idempotents, and the block decomposition.

use num_traits::Zero;

use crate::algebra::{minimal_polynomial, CommAssocAlgebra, StructureTable};
use crate::axioms::{verify_axioms, CheckOutcome, Tally};
use crate::error::{Error, Result};
use crate::linalg::{
    add, axpy, fmt_vector, is_zero_vec, kernel, q, scaled, sub, unit_vec, zero_vec, CoordinateSolver, Matrix, Scalar,
    Subspace, Vector,
};
use crate::poly::Poly;
use crate::radicals::{nilradical_assoc, window_ideal_closure, WindowIdeal};
use crate::voa::{TruncatedVoa, WeightedIndex};

/// `Z(V)` with its inclusion into the window and its algebra structure.
#[derive(Clone, Debug)]
pub struct CenterSubalgebra {
    /// Basis of `Z(V)` as global weight-0 states.
    pub inclusion: Vec<Vector>,
    /// The `(-1)` product in the coordinates of `inclusion`.
    pub algebra: CommAssocAlgebra,
    /// Exact unless `L(-1) V_0` leaves the window.
    pub outcome: CheckOutcome,
}

impl CenterSubalgebra {
    pub fn dim(&self) -> usize {
        self.inclusion.len()
    }

    /// Global state with the given center coordinates.
    pub fn embed(&self, coords: &[Scalar]) -> Vector {
        let n = self.inclusion.first().map_or(0, Vec::len);
        let mut out = zero_vec(n);
        for (c, b) in coords.iter().zip(&self.inclusion) {
            if !c.is_zero() {
                axpy(&mut out, c, b);
            }
        }
        out
    }
}

/// Computes `Z(V)` and checks that its states have constant vertex operators.
pub fn center(v: &TruncatedVoa) -> Result<CenterSubalgebra> {
    let l = v.layout();
    let n = l.total();
    let d0 = l.dim(0);
    let d1 = l.dim(1);
    let outcome = if v.n_max() >= 1 || v.omega().is_zero() {
        CheckOutcome::Exact
    } else {
        CheckOutcome::Skipped { weight: 1 }
    };
    let mut m = Matrix::zeros(d1, d0);
    for (j, g) in l.range(0).enumerate() {
        let image = l.slice(&v.virasoro(-1, &unit_vec(n, g)), 1);
        for (i, x) in image.into_iter().enumerate() {
            m.set(i, j, x);
        }
    }
    let inclusion: Vec<Vector> = kernel(&m).basis().iter().map(|b| l.embed(0, b)).collect();

    for z in &inclusion {
        for b in 0..n {
            let wb = l.weight_of(b);
            for k in l.mode_range(0, wb) {
                if k == -1 {
                    continue;
                }
                let out = v.apply(z, k, &unit_vec(n, b));
                if !is_zero_vec(&out) {
                    return Err(Error::Integrity(format!(
                        "central state {} has nonzero mode {k} on {}",
                        fmt_vector(z),
                        l.weighted(b)
                    )));
                }
            }
        }
        for m in -1..=(-l.n_min()) {
            if !is_zero_vec(&v.virasoro(m, z)) {
                return Err(Error::Integrity(format!(
                    "central state {} is not annihilated by L({m})",
                    fmt_vector(z)
                )));
            }
        }
    }

    let solver = CoordinateSolver::new(n, &inclusion)?;
    let coords = |x: &[Scalar]| {
        solver
            .solve(x)
            .ok_or_else(|| Error::Integrity(format!("product {} leaves the center", fmt_vector(x))))
    };
    let dim = inclusion.len();
    let mut table = vec![vec![Vec::new(); dim]; dim];
    for i in 0..dim {
        for j in 0..dim {
            table[i][j] = coords(&v.apply(&inclusion[i], -1, &inclusion[j]))?;
        }
    }
    let unit = coords(&v.vacuum_vector())?;
    let algebra = CommAssocAlgebra::new(unit, StructureTable::new(dim, table)?)
        .map_err(|e| Error::Integrity(format!("center algebra: {e}")))?;
    Ok(CenterSubalgebra {
        inclusion,
        algebra,
        outcome,
    })
}

/// `Ann(z) = ker z(-1)` for a central state `z`.
pub fn annihilator(v: &TruncatedVoa, z: &[Scalar]) -> Result<WindowIdeal> {
    require_central(v, z)?;
    let m = v.vector_mode_matrix(z, -1);
    let gens: Vec<Vector> = kernel(&m).basis().to_vec();
    let ideal = window_ideal_closure(v, &gens);
    if ideal.total_dim() != gens.len() {
        return Err(Error::Integrity(format!(
            "annihilator of {} is not closed under the modes",
            fmt_vector(z)
        )));
    }
    let summary = commutes_with_modes(v, z);
    if summary.failed > 0 {
        return Err(Error::Integrity(format!(
            "{} does not commute with every mode ({} failures)",
            fmt_vector(z),
            summary.failed
        )));
    }
    Ok(ideal)
}

fn require_central(v: &TruncatedVoa, z: &[Scalar]) -> Result<()> {
    let l = v.layout();
    let weight_zero = l.homogeneous_parts(z).iter().all(|(w, _)| *w == 0);
    if z.len() != l.total() {
        return Err(Error::DimensionMismatch {
            expected: l.total(),
            got: z.len(),
        });
    }
    if !weight_zero || !is_zero_vec(&l.slice(&v.virasoro(-1, z), 1)) {
        return Err(Error::Precondition(format!("{} is not central", fmt_vector(z))));
    }
    Ok(())
}

/// `[z(-1), u(k)] = 0` on every basis state, over every stored mode.
fn commutes_with_modes(v: &TruncatedVoa, z: &[Scalar]) -> Tally {
    let l = v.layout();
    let n = l.total();
    let zm = v.vector_mode_matrix(z, -1);
    let mut tally = Tally::default();
    for u in 0..n {
        let wu = l.weight_of(u);
        for c in 0..n {
            let ec = unit_vec(n, c);
            let zc = zm.mul_vec(&ec);
            for k in l.mode_range(wu, l.weight_of(c)) {
                let lhs = zm.mul_vec(&v.apply_basis(u, k, &ec));
                let rhs = v.apply_basis(u, k, &zc);
                tally.exact += 1;
                if lhs != rhs {
                    tally.failed += 1;
                }
            }
        }
    }
    tally
}

/// Checks that `φ_a = a(-1)` is a `V`-endomorphism and that `a ↦ φ_a` is multiplicative.
pub fn endo_check(v: &TruncatedVoa, a: &[Scalar]) -> Result<Tally> {
    require_central(v, a)?;
    let mut tally = commutes_with_modes(v, a);
    let z = center(v)?;
    let am = v.vector_mode_matrix(a, -1);
    for b in &z.inclusion {
        let ab = v.apply(a, -1, b);
        let lhs = v.vector_mode_matrix(&ab, -1);
        let rhs = am.mul(&v.vector_mode_matrix(b, -1));
        tally.exact += 1;
        if lhs != rhs {
            tally.failed += 1;
        }
    }
    if tally.failed > 0 {
        return Err(Error::Integrity(format!(
            "{} fails the endomorphism check on {} of {} instance(s)",
            fmt_vector(a),
            tally.failed,
            tally.exact
        )));
    }
    Ok(tally)
}

/// Iterates `e ← 3e² - 2e³` until `e² = e`. Returns the idempotent and the
/// number of iterations.
pub fn lift_idempotent(a: &CommAssocAlgebra, e0: &[Scalar]) -> Result<(Vector, usize)> {
    let dim = a.dim().max(1);
    let cap = (usize::BITS - (dim - 1).leading_zeros()) as usize + 2;
    let mut e = e0.to_vec();
    for it in 0..=cap {
        let e2 = a.mul(&e, &e);
        if e2 == e {
            return Ok((e, it));
        }
        let e3 = a.mul(&e2, &e);
        e = sub(&scaled(&q(3), &e2), &scaled(&q(2), &e3));
    }
    Err(Error::Integrity(format!(
        "idempotent lifting from {} did not converge in {cap} iterations",
        fmt_vector(e0)
    )))
}

/// The complete set of primitive idempotents, sorted by coordinates.
pub fn primitive_idempotents(a: &CommAssocAlgebra) -> Result<Vec<Vector>> {
    let rad = nilradical_assoc(a)?;
    let (b, keep) = a.quotient(&rad)?;
    let m = b.dim();
    let mut idem = vec![b.unit().clone()];
    for i in 0..m {
        let x = unit_vec(m, i);
        let (p, _) = minimal_polynomial(b.table(), b.unit(), &x);
        let (roots, rest) = p.split_rational();
        if rest.degree().unwrap_or(0) > 0 {
            return Err(Error::UnsplittableOverRationals {
                factor: rest.to_string(),
            });
        }
        if roots.len() < 2 {
            continue;
        }
        let spectral: Vec<Vector> = roots
            .iter()
            .map(|(r, _)| {
                let mut num = Poly::one();
                let mut den = q(1);
                for (s, _) in &roots {
                    if s != r {
                        num = num.mul(&Poly::linear(s));
                        den *= r - s;
                    }
                }
                b.eval(&num.scale(&den.recip()), &x)
            })
            .collect();
        let mut refined = Vec::new();
        for e in &idem {
            for f in &spectral {
                let ef = b.mul(e, f);
                if !is_zero_vec(&ef) {
                    refined.push(ef);
                }
            }
        }
        idem = refined;
    }
    if idem.len() != m {
        return Err(Error::Integrity(format!(
            "semisimple quotient of dimension {m} produced {} idempotents",
            idem.len()
        )));
    }
    let mut out = Vec::with_capacity(m);
    for e in idem {
        let mut e0 = zero_vec(a.dim());
        for (c, &col) in e.iter().zip(&keep) {
            e0[col] = c.clone();
        }
        out.push(lift_idempotent(a, &e0)?.0);
    }
    out.sort();
    let total = out.iter().fold(zero_vec(a.dim()), |acc, e| add(&acc, e));
    if &total != a.unit() {
        return Err(Error::Integrity("primitive idempotents do not sum to the unit".into()));
    }
    Ok(out)
}

/// `V = V^1 ⊕ … ⊕ V^n` along the primitive idempotents of `Z(V)`.
#[derive(Clone, Debug)]
pub struct BlockDecomposition {
    /// Primitive idempotents as global weight-0 states, in block order.
    pub idempotents: Vec<Vector>,
    pub blocks: Vec<TruncatedVoa>,
    /// For each block, its basis as host states (`[block][weight][i]`).
    pub embeddings: Vec<Vec<Vec<Vector>>>,
}

impl BlockDecomposition {
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// The operator `φ_{e_i} = e_i(-1)` on the host window.
    pub fn projection(&self, host: &TruncatedVoa, i: usize) -> Matrix {
        host.vector_mode_matrix(&self.idempotents[i], -1)
    }

    /// Checks `Σ φ_{e_i} = id` and `φ_{e_i} φ_{e_j} = δ_{ij} φ_{e_i}`.
    pub fn reconstructs(&self, host: &TruncatedVoa) -> bool {
        let n = host.total_dim();
        let ps: Vec<Matrix> = (0..self.len()).map(|i| self.projection(host, i)).collect();
        let mut sum = Matrix::zeros(n, n);
        for p in &ps {
            for (&(i, j), x) in p.nonzeros() {
                sum.set(i, j, sum.get(i, j) + x);
            }
        }
        if sum != Matrix::identity(n) {
            return false;
        }
        for (i, pi) in ps.iter().enumerate() {
            for (j, pj) in ps.iter().enumerate() {
                let prod = pi.mul(pj);
                let ok = if i == j { &prod == pi } else { prod.is_zero() };
                if !ok {
                    return false;
                }
            }
        }
        true
    }
}

/// Splits `V` into blocks, one per primitive idempotent of `Z(V)`.
pub fn block_decompose(v: &TruncatedVoa) -> Result<BlockDecomposition> {
    let z = center(v)?;
    let prim = primitive_idempotents(&z.algebra)?;
    let l = v.layout();
    let n = l.total();
    if prim.len() == 1 {
        let embedding = l
            .weights()
            .map(|w| l.range(w).map(|g| unit_vec(n, g)).collect())
            .collect();
        return Ok(BlockDecomposition {
            idempotents: vec![v.vacuum_vector()],
            blocks: vec![v.clone()],
            embeddings: vec![embedding],
        });
    }
    let mut parts: Vec<(Vector, Vec<Vec<Vector>>)> = Vec::new();
    for c in &prim {
        let e = z.embed(c);
        let em = v.vector_mode_matrix(&e, -1);
        let mut basis = Vec::new();
        for w in l.weights() {
            let images: Vec<Vector> = l.range(w).map(|g| em.mul_vec(&unit_vec(n, g))).collect();
            let image = Subspace::span(n, &images);
            let mut reps = Vec::new();
            if w == 0 {
                let mut seen = Subspace::span(n, std::slice::from_ref(&e));
                reps.push(e.clone());
                for b in image.basis() {
                    if seen.insert(b) {
                        reps.push(b.clone());
                    }
                }
            } else {
                reps.extend(image.basis().iter().cloned());
            }
            basis.push(reps);
        }
        parts.push((e, basis));
    }
    parts.sort_by(|(ea, ba), (eb, bb)| {
        let da: usize = ba.iter().map(Vec::len).sum();
        let db: usize = bb.iter().map(Vec::len).sum();
        db.cmp(&da).then_with(|| ea.cmp(eb))
    });
    let mut out = BlockDecomposition {
        idempotents: Vec::new(),
        blocks: Vec::new(),
        embeddings: Vec::new(),
    };
    let mut dims = vec![0; l.dims().len()];
    for (i, (e, basis)) in parts.into_iter().enumerate() {
        let omega = v.apply(&e, -1, v.omega_vector());
        let block = v.induced(
            format!("{}[{}]", v.name(), i + 1),
            &basis,
            None,
            WeightedIndex::new(0, 0),
            &omega,
        )?;
        let report = verify_axioms(&block);
        if !report.is_clean() {
            return Err(Error::Integrity(format!(
                "block {} fails the axioms: {}",
                i + 1,
                report.failures[0]
            )));
        }
        for (d, b) in dims.iter_mut().zip(block.dims()) {
            *d += b;
        }
        out.idempotents.push(e);
        out.blocks.push(block);
        out.embeddings.push(basis);
    }
    if dims != l.dims() {
        return Err(Error::Integrity(format!(
            "block dimensions {dims:?} do not add up to {:?}",
            l.dims()
        )));
    }
    Ok(out)
}

/// Whether `Z(V)` has a single primitive idempotent; the idempotents are the witness.
pub fn is_indecomposable(v: &TruncatedVoa) -> Result<(bool, Vec<Vector>)> {
    let z = center(v)?;
    let prim = primitive_idempotents(&z.algebra)?;
    let global: Vec<Vector> = prim.iter().map(|c| z.embed(c)).collect();
    Ok((global.len() == 1, global))
}
