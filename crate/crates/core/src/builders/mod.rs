//! Stock algebras with exact structure constants.

pub mod fock;
pub mod virasoro;

use num_traits::Zero;

use crate::algebra::CommAssocAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{axpy, fmt_scalar, kernel, q, unit_vec, zero_vec, Matrix, Scalar, Subspace, Vector};
use crate::radicals::{quotient_voa, radical_lower_bound, WindowIdeal};
use crate::voa::{Layout, TruncatedVoa, VoaHeader, WeightedIndex};

use fock::{partitions, Fock, FockState, Partition};
use virasoro::VirasoroModule;

pub const MAX_HEISENBERG_LEVEL: i32 = 6;
pub const MAX_VIRASORO_LEVEL: i32 = 8;
pub const MAX_LATTICE_LEVEL: i32 = 3;

fn check_level(what: &str, n: i32, lo: i32, hi: i32) -> Result<()> {
    if !(lo..=hi).contains(&n) {
        return Err(Error::Input(format!("{what} level must lie in [{lo}, {hi}], got {n}")));
    }
    Ok(())
}

/// Dense vector from a Fock combination, given the position of each monomial.
fn dense(total: usize, lookup: impl Fn(&Partition) -> Option<usize>, s: &FockState) -> Result<Vector> {
    let mut out = zero_vec(total);
    for (p, c) in s {
        let g = lookup(p).ok_or_else(|| Error::Integrity(format!("monomial {p:?} has no basis slot")))?;
        out[g] += c;
    }
    Ok(out)
}

/// The algebra `A` placed in weight 0 with `a(-1)b = ab` and every other mode zero.
pub fn build_commutative_voa(name: &str, a: &CommAssocAlgebra) -> Result<TruncatedVoa> {
    let n = a.dim();
    let unit = a.unit();
    // put the unit first when it is not already a basis vector
    let (basis, vacuum) = match (0..n).find(|&i| unit == &unit_vec(n, i)) {
        Some(i) => ((0..n).map(|j| unit_vec(n, j)).collect::<Vec<_>>(), i),
        None => {
            let lead = unit.iter().position(|x| !x.is_zero()).expect("nonzero unit");
            let mut b = vec![unit.clone()];
            b.extend((0..n).filter(|&j| j != lead).map(|j| unit_vec(n, j)));
            (b, 0)
        }
    };
    let solver = crate::linalg::CoordinateSolver::new(n, &basis)?;
    let layout = Layout::new(0, 0, vec![n])?;
    let header = VoaHeader {
        name: name.to_string(),
        layout,
        vacuum: WeightedIndex::new(0, vacuum),
        omega: zero_vec(n),
        central_charge: q(0),
    };
    TruncatedVoa::from_fn(header, |i, k, j| {
        debug_assert_eq!(k, -1);
        let prod = a.mul(&basis[i], &basis[j]);
        solver
            .solve(&prod)
            .ok_or_else(|| Error::Integrity("product outside the algebra".into()))
    })
}

/// Named commutative fixtures.
pub fn commutative_fixture(name: &str) -> Result<(String, CommAssocAlgebra)> {
    use crate::poly::Poly;
    let (label, f) = match name {
        "q" => ("Q", Poly::from_i64(&[-1, 1])),
        "qxq" => ("QxQ", Poly::from_i64(&[-1, 0, 1])),
        "dual" => ("Q[x]/(x^2)", Poly::from_i64(&[0, 0, 1])),
        "idem" => ("Q[x]/(x^2-x)", Poly::from_i64(&[0, -1, 1])),
        "u3" => ("Q[u]/(u^3-u^2)", Poly::from_i64(&[0, 0, -1, 1])),
        other => return Err(Error::Input(format!("unknown commutative fixture '{other}'"))),
    };
    let a = if name == "q" {
        CommAssocAlgebra::split(1)?
    } else {
        CommAssocAlgebra::truncated_polynomial(&f)?
    };
    Ok((label.to_string(), a))
}

fn fock_layout(sectors: &[Vec<Vec<Partition>>]) -> (Vec<usize>, Vec<(usize, Partition)>) {
    // sectors[s][w] lists the monomials of sector s at weight w
    let levels = sectors[0].len();
    let mut dims = Vec::new();
    let mut states = Vec::new();
    for w in 0..levels {
        let mut d = 0;
        for (s, sector) in sectors.iter().enumerate() {
            for p in &sector[w] {
                states.push((s, p.clone()));
                d += 1;
            }
        }
        dims.push(d);
    }
    (dims, states)
}

/// The rank-one Heisenberg algebra `M(1)` on weights `0..=n`, with
/// `[α(m), α(n)] = m δ_{m+n,0}` and `ω = ½α(-1)²𝟙`.
pub fn build_heisenberg(n: i32) -> Result<TruncatedVoa> {
    check_level("heisenberg", n, 2, MAX_HEISENBERG_LEVEL)?;
    heisenberg_with(n, q(1), "M(1)")
}

fn heisenberg_with(n: i32, kappa: Scalar, name: &str) -> Result<TruncatedVoa> {
    let sector: Vec<Vec<Partition>> = (0..=n as u32).map(|w| partitions(w, 1)).collect();
    let (dims, states) = fock_layout(&[sector]);
    let index = |p: &Partition| states.iter().position(|(_, s)| s == p);
    let total = states.len();
    let layout = Layout::new(0, n, dims)?;
    let mut omega = zero_vec(total);
    omega[index(&vec![1, 1]).expect("weight 2 present")] = q(1) / (q(2) * &kappa);
    let header = VoaHeader {
        name: format!("{name}@{n}"),
        layout,
        vacuum: WeightedIndex::new(0, 0),
        omega,
        central_charge: q(1),
    };
    let fock = Fock::new(kappa, q(0));
    TruncatedVoa::from_fn(header, |a, k, b| {
        let out = fock.mode(&states[a].1, k, &states[b].1);
        dense(total, index, &out)
    })
}

/// The Virasoro vacuum module `V_c` on weights `0..=n` (no quotient).
pub fn build_virasoro(c: &Scalar, n: i32) -> Result<TruncatedVoa> {
    check_level("virasoro", n, 2, MAX_VIRASORO_LEVEL)?;
    let module = VirasoroModule::new(c.clone());
    let states: Vec<Partition> = (0..=n as u32).flat_map(|w| module.basis(w)).collect();
    let dims: Vec<usize> = (0..=n as u32).map(|w| module.basis(w).len()).collect();
    let index = |p: &Partition| states.iter().position(|s| s == p);
    let total = states.len();
    let mut omega = zero_vec(total);
    omega[index(&vec![2]).expect("weight 2 present")] = q(1);
    let header = VoaHeader {
        name: format!("Vir(c={})@{n}", fmt_scalar(c)),
        layout: Layout::new(0, n, dims)?,
        vacuum: WeightedIndex::new(0, 0),
        omega,
        central_charge: c.clone(),
    };
    TruncatedVoa::from_fn(header, |a, k, b| {
        let out = module.mode(&states[a], k, &states[b]);
        dense(total, index, &out)
    })
}

/// Gram matrix of the level-`n` PBW basis of `V_c`.
pub fn gram_matrix(c: &Scalar, level: i32) -> Result<Matrix> {
    check_level("gram", level, 0, MAX_VIRASORO_LEVEL)?;
    Ok(VirasoroModule::new(c.clone()).gram_matrix(level as u32))
}

/// `L_c = V_c / (Gram radical)` on weights `0..=n`.
pub fn build_virasoro_simple(c: &Scalar, n: i32) -> Result<TruncatedVoa> {
    let v = build_virasoro(c, n)?;
    let module = VirasoroModule::new(c.clone());
    let parts: Vec<Subspace> = (0..=n).map(|w| kernel(&module.gram_matrix(w as u32))).collect();
    let ideal = WindowIdeal::from_parts(&v, parts);
    let (quot, _) = quotient_voa(&v, &ideal)?;
    Ok(quot.with_name(format!("L(c={})@{n}", fmt_scalar(c))))
}

/// A graded module over `V` on the same window, given by its dimensions and
/// the action `a(k)m` of basis states of `V` on basis states of `M`.
pub struct ModuleData<'a> {
    pub dims: Vec<usize>,
    #[allow(clippy::type_complexity)]
    pub action: Box<dyn Fn(usize, i32, usize) -> Vector + 'a>,
}

impl<'a> ModuleData<'a> {
    /// `V` acting on itself.
    pub fn adjoint(v: &'a TruncatedVoa) -> Self {
        let n = v.total_dim();
        ModuleData {
            dims: v.dims().to_vec(),
            action: Box::new(move |a, k, m| v.apply_basis(a, k, &unit_vec(n, m))),
        }
    }
}

/// `W = V ⊕ M` with `M` a square-zero ideal; `M`-on-`V` modes come from skew-symmetry.
pub fn build_semidirect(v: &TruncatedVoa, m: &ModuleData<'_>) -> Result<TruncatedVoa> {
    let lv = v.layout();
    if m.dims.len() != lv.dims().len() {
        return Err(Error::Input("module must live on the same window".into()));
    }
    let lm = Layout::new(lv.n_min(), lv.n_max(), m.dims.clone())?;
    let dims: Vec<usize> = lv.dims().iter().zip(&m.dims).map(|(a, b)| a + b).collect();
    let lw = Layout::new(lv.n_min(), lv.n_max(), dims)?;
    // global index in W of a V state and of an M state
    let from_v = |g: usize| {
        let wi = lv.weighted(g);
        lw.global(wi).expect("V state in W")
    };
    let from_m = |g: usize| {
        let wi = lm.weighted(g);
        lw.global(WeightedIndex::new(wi.weight, lv.dim(wi.weight) + wi.index))
            .expect("M state in W")
    };
    // which summand a W state belongs to
    let split = |g: usize| -> (bool, usize) {
        let wi = lw.weighted(g);
        let dv = lv.dim(wi.weight);
        if wi.index < dv {
            (true, lv.global(WeightedIndex::new(wi.weight, wi.index)).expect("V"))
        } else {
            (
                false,
                lm.global(WeightedIndex::new(wi.weight, wi.index - dv)).expect("M"),
            )
        }
    };
    let push_v = |x: &Vector| -> Vector {
        let mut out = zero_vec(lw.total());
        for (g, c) in x.iter().enumerate() {
            if !c.is_zero() {
                out[from_v(g)] = c.clone();
            }
        }
        out
    };
    let push_m = |x: &Vector| -> Vector {
        let mut out = zero_vec(lw.total());
        for (g, c) in x.iter().enumerate() {
            if !c.is_zero() {
                out[from_m(g)] = c.clone();
            }
        }
        out
    };
    let act_vec = |a: &Vector, k: i32, x: &Vector| -> Vector {
        let mut out = zero_vec(lm.total());
        for (ai, ca) in a.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (xi, cx) in x.iter().enumerate() {
                if cx.is_zero() {
                    continue;
                }
                let y = (m.action)(ai, k, xi);
                axpy(&mut out, &(ca * cx), &y);
            }
        }
        out
    };
    let omega_v = v.omega_vector().clone();
    let l_minus_one = |x: &Vector| act_vec(&omega_v, 0, x);
    let header = VoaHeader {
        name: format!("{}+M", v.name()),
        layout: lw.clone(),
        vacuum: v.vacuum(),
        omega: push_v(&omega_v),
        central_charge: v.central_charge().clone(),
    };
    TruncatedVoa::from_fn(header, |a, k, b| {
        let (av, ai) = split(a);
        let (bv, bi) = split(b);
        Ok(match (av, bv) {
            (true, true) => push_v(&v.apply_basis(ai, k, &unit_vec(lv.total(), bi))),
            (true, false) => push_m(&(m.action)(ai, k, bi)),
            (false, true) => {
                // m(k)a = Σ_j (-1)^{k+j+1} L(-1)^j/j! a(k+j)m
                let wa = lv.weight_of(bi);
                let wm = lm.weight_of(ai);
                let w_out = wa + wm - k - 1;
                let mut acc = zero_vec(lm.total());
                let mut fact = q(1);
                for j in 0..=(w_out - lv.n_min()) {
                    if j > 0 {
                        fact *= q(j as i64);
                    }
                    let mut term = (m.action)(bi, k + j, ai);
                    for _ in 0..j {
                        term = l_minus_one(&term);
                    }
                    let sign = if (k + j + 1).rem_euclid(2) == 0 { q(1) } else { q(-1) };
                    axpy(&mut acc, &(sign / &fact), &term);
                }
                push_m(&acc)
            }
            (false, false) => zero_vec(lw.total()),
        })
    })
}

/// The sub-VOA `U = M(1) ⊕ M(1)e^α` of the rank-one `A_1` lattice VOA on
/// weights `0..=n`, with `⟨α,α⟩ = 2` and `ω = ¼α(-1)²𝟙`.
pub fn build_lattice_upper(n: i32) -> Result<TruncatedVoa> {
    if n > MAX_LATTICE_LEVEL {
        return Err(Error::Refused(format!(
            "lattice level {n} > {MAX_LATTICE_LEVEL} needs sector products that stay in the window"
        )));
    }
    check_level("lattice", n, 2, MAX_LATTICE_LEVEL)?;
    let kappa = q(2);
    let zero_sector: Vec<Vec<Partition>> = (0..=n as u32).map(|w| partitions(w, 1)).collect();
    let one_sector: Vec<Vec<Partition>> = (0..=n as u32)
        .map(|w| if w == 0 { Vec::new() } else { partitions(w - 1, 1) })
        .collect();
    let (dims, states) = fock_layout(&[zero_sector, one_sector]);
    let total = states.len();
    let index = |sector: usize| {
        let states = &states;
        move |p: &Partition| states.iter().position(|(s, x)| *s == sector && x == p)
    };
    let m1 = Fock::new(kappa.clone(), q(0));
    let e_alpha = Fock::new(kappa.clone(), q(2));
    let mut omega = zero_vec(total);
    omega[index(0)(&vec![1, 1]).expect("weight 2 present")] = q(1) / q(4);
    let header = VoaHeader {
        name: format!("U@{n}"),
        layout: Layout::new(0, n, dims)?,
        vacuum: WeightedIndex::new(0, 0),
        omega,
        central_charge: q(1),
    };
    let omega_state: Partition = vec![1, 1];
    let quarter = q(1) / q(4);
    let l_minus_one = |s: &FockState| -> FockState {
        let mut out = FockState::new();
        for (p, c) in s {
            for (pp, d) in e_alpha.mode(&omega_state, 0, p) {
                fock::add_term(&mut out, pp, c * d * &quarter);
            }
        }
        out
    };
    let layout = header.layout.clone();
    TruncatedVoa::from_fn(header, |a, k, b| {
        let (sa, pa) = &states[a];
        let (sb, pb) = &states[b];
        match (sa, sb) {
            (0, 0) => dense(total, index(0), &m1.mode(pa, k, pb)),
            (0, 1) => dense(total, index(1), &e_alpha.mode(pa, k, pb)),
            (1, 0) => {
                // skew-symmetry: x(k)u = Σ_j (-1)^{k+j+1} L(-1)^j/j! u(k+j)x
                let w_out = layout.weight_of(a) + layout.weight_of(b) - k - 1;
                let mut acc = FockState::new();
                let mut fact = q(1);
                for j in 0..=w_out {
                    if j > 0 {
                        fact *= q(j as i64);
                    }
                    let mut term = e_alpha.mode(pb, k + j, pa);
                    for _ in 0..j {
                        term = l_minus_one(&term);
                    }
                    let sign = if (k + j + 1).rem_euclid(2) == 0 { q(1) } else { q(-1) };
                    for (p, c) in term {
                        fock::add_term(&mut acc, p, c * &sign / &fact);
                    }
                }
                dense(total, index(1), &acc)
            }
            _ => Ok(zero_vec(total)),
        }
    })
}

/// `V_1 ⊕ V_2` with vacuum `𝟙_1 + 𝟙_2` and conformal vector `ω_1 + ω_2`.
pub fn build_direct_sum(v1: &TruncatedVoa, v2: &TruncatedVoa) -> Result<TruncatedVoa> {
    if v1.central_charge() != v2.central_charge() {
        return Err(Error::Input(format!(
            "central charges differ: {} and {}",
            fmt_scalar(v1.central_charge()),
            fmt_scalar(v2.central_charge())
        )));
    }
    if (v1.n_min(), v1.n_max()) != (v2.n_min(), v2.n_max()) {
        return Err(Error::Input("summands must share one window".into()));
    }
    let (l1, l2) = (v1.layout(), v2.layout());
    let dims: Vec<usize> = l1.dims().iter().zip(l2.dims()).map(|(a, b)| a + b).collect();
    let lw = Layout::new(l1.n_min(), l1.n_max(), dims)?;
    let into = |which: usize, g: usize| -> usize {
        if which == 0 {
            lw.global(l1.weighted(g)).expect("first summand")
        } else {
            let wi = l2.weighted(g);
            lw.global(WeightedIndex::new(wi.weight, l1.dim(wi.weight) + wi.index))
                .expect("second summand")
        }
    };
    let split = |g: usize| -> (usize, usize) {
        let wi = lw.weighted(g);
        let d1 = l1.dim(wi.weight);
        if wi.index < d1 {
            (0, l1.global(wi).expect("first"))
        } else {
            (
                1,
                l2.global(WeightedIndex::new(wi.weight, wi.index - d1)).expect("second"),
            )
        }
    };
    let push = |which: usize, x: &Vector| {
        let mut out = zero_vec(lw.total());
        for (g, c) in x.iter().enumerate() {
            if !c.is_zero() {
                out[into(which, g)] = c.clone();
            }
        }
        out
    };
    let mut omega = push(0, v1.omega_vector());
    axpy(&mut omega, &q(1), &push(1, v2.omega_vector()));
    let header = VoaHeader {
        name: format!("{}+{}", v1.name(), v2.name()),
        layout: lw.clone(),
        vacuum: l1.weighted(v1.vacuum_global()),
        omega,
        central_charge: v1.central_charge().clone(),
    };
    let raw = TruncatedVoa::from_fn(header, |a, k, b| {
        let (sa, ga) = split(a);
        let (sb, gb) = split(b);
        if sa != sb {
            return Ok(zero_vec(lw.total()));
        }
        let v = if sa == 0 { v1 } else { v2 };
        Ok(push(sa, &v.apply_basis(ga, k, &unit_vec(v.total_dim(), gb))))
    })?;
    // weight 0: 𝟙_1 + 𝟙_2 first, then the rest of V_1's weight 0, then V_2's
    let one1 = into(0, v1.vacuum_global());
    let one2 = into(1, v2.vacuum_global());
    let mut basis = Vec::new();
    for w in lw.weights() {
        let mut reps = Vec::new();
        if w == 0 {
            let mut vac = unit_vec(lw.total(), one1);
            vac[one2] = q(1);
            reps.push(vac);
            reps.extend(lw.range(0).filter(|&g| g != one1).map(|g| unit_vec(lw.total(), g)));
        } else {
            reps.extend(lw.range(w).map(|g| unit_vec(lw.total(), g)));
        }
        basis.push(reps);
    }
    raw.change_basis(raw.name().to_string(), &basis, WeightedIndex::new(0, 0))
}

/// Evidence that the Jacobson radical is not carried along inclusions: in
/// `U`, the radical lower bound is the whole `e^α` sector, while the
/// Heisenberg sub-VOA and the quotient `U/J` have zero lower bound.
#[derive(Clone, Debug)]
pub struct NonFunctorialityReport {
    pub level: i32,
    pub u_dims: Vec<usize>,
    pub sector_one_dims: Vec<usize>,
    pub lower_bound_dims: Vec<usize>,
    pub lower_bound_is_sector_one: bool,
    pub heisenberg_lower_bound_dims: Vec<usize>,
    pub quotient_dims: Vec<usize>,
    pub quotient_lower_bound_dims: Vec<usize>,
    pub heisenberg_dims: Vec<usize>,
}

impl NonFunctorialityReport {
    pub fn demonstrates(&self) -> bool {
        let zero = |d: &[usize]| d.iter().all(|&x| x == 0);
        self.lower_bound_is_sector_one
            && !zero(&self.lower_bound_dims)
            && zero(&self.heisenberg_lower_bound_dims)
            && zero(&self.quotient_lower_bound_dims)
            && self.quotient_dims == self.heisenberg_dims
    }
}

pub fn non_functoriality_report(n: i32) -> Result<NonFunctorialityReport> {
    let u = build_lattice_upper(n)?;
    let l = u.layout();
    let total = l.total();
    let sector_one: Vec<usize> = (0..=n as u32)
        .map(|w| if w == 0 { 0 } else { partitions(w - 1, 1).len() })
        .collect();
    // sector-one states sit after the Heisenberg states at each weight
    let mut sector_parts = Vec::new();
    let mut heis_basis = Vec::new();
    for w in l.weights() {
        let d = l.dim(w);
        let s1 = sector_one[w as usize];
        let vecs: Vec<Vector> = (d - s1..d).map(|i| unit_vec(d, i)).collect();
        sector_parts.push(Subspace::span(d, &vecs));
        heis_basis.push(l.range(w).take(d - s1).map(|g| unit_vec(total, g)).collect::<Vec<_>>());
    }
    let lb = radical_lower_bound(&u)?;
    let sector = WindowIdeal::from_parts(&u, sector_parts);
    let heis = u.induced(
        "M(1) in U",
        &heis_basis,
        None,
        WeightedIndex::new(0, 0),
        u.omega_vector(),
    )?;
    let heis_lb = radical_lower_bound(&heis)?;
    let (quot, _) = quotient_voa(&u, &lb.ideal)?;
    let quot_lb = radical_lower_bound(&quot)?;
    Ok(NonFunctorialityReport {
        level: n,
        u_dims: l.dims().to_vec(),
        sector_one_dims: sector.dims(),
        lower_bound_dims: lb.ideal.dims(),
        lower_bound_is_sector_one: lb.ideal == sector,
        heisenberg_lower_bound_dims: heis_lb.ideal.dims(),
        quotient_dims: quot.dims().to_vec(),
        quotient_lower_bound_dims: quot_lb.ideal.dims(),
        heisenberg_dims: build_heisenberg(n)?.dims().to_vec(),
    })
}
