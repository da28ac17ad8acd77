//! Weight-truncated vertex operator algebras given by structure constants.
//!
//! A [`TruncatedVoa`] stores a graded basis on the weights `n_min..=n_max`, and
//! for every pair of basis states `a`, `b` and every mode index `k` whose output
//! weight `wt(a) + wt(b) - k - 1` lies in the window, the state `a(k)b`.
//! Products that would land outside the window are not stored and read as
//! zero. Weights below `n_min` are taken to be genuinely empty.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::RangeInclusive;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{fmt_scalar, is_zero_vec, zero_vec, CoordinateSolver, Matrix, Scalar, Subspace, Vector};

/// A basis state: its weight and its position inside that weight space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeightedIndex {
    pub weight: i32,
    pub index: usize,
}

impl WeightedIndex {
    pub fn new(weight: i32, index: usize) -> Self {
        WeightedIndex { weight, index }
    }
}

impl fmt::Display for WeightedIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.weight, self.index)
    }
}

/// Sparse state: basis state to coefficient, no stored zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GradedVector {
    components: BTreeMap<WeightedIndex, Scalar>,
}

impl GradedVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(w: WeightedIndex) -> Self {
        let mut v = Self::zero();
        v.set(w, Scalar::one());
        v
    }

    pub fn from_components<I: IntoIterator<Item = (WeightedIndex, Scalar)>>(it: I) -> Self {
        let mut v = Self::zero();
        for (w, x) in it {
            v.add_to(w, &x);
        }
        v
    }

    pub fn get(&self, w: &WeightedIndex) -> Scalar {
        self.components.get(w).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn set(&mut self, w: WeightedIndex, x: Scalar) {
        if x.is_zero() {
            self.components.remove(&w);
        } else {
            self.components.insert(w, x);
        }
    }

    pub fn add_to(&mut self, w: WeightedIndex, x: &Scalar) {
        let cur = self.get(&w);
        self.set(w, cur + x);
    }

    pub fn iter(&self) -> impl Iterator<Item = (&WeightedIndex, &Scalar)> {
        self.components.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// The common weight of all components, if there is exactly one.
    pub fn homogeneous_weight(&self) -> Option<i32> {
        let mut ws = self.components.keys().map(|w| w.weight);
        let first = ws.next()?;
        ws.all(|w| w == first).then_some(first)
    }
}

impl fmt::Display for GradedVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .components
            .iter()
            .map(|(w, x)| format!("{}*{}", fmt_scalar(x), w))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Key of a stored mode product `a(k)b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ModeKey {
    pub a: WeightedIndex,
    pub k: i32,
    pub b: WeightedIndex,
}

/// Global numbering of the graded basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Layout {
    n_min: i32,
    n_max: i32,
    dims: Vec<usize>,
    offsets: Vec<usize>,
    total: usize,
    owners: Vec<WeightedIndex>,
}

impl Layout {
    pub fn new(n_min: i32, n_max: i32, dims: Vec<usize>) -> Result<Self> {
        if n_min > 0 || n_max < 0 {
            return Err(Error::Input(format!("window [{n_min}, {n_max}] must contain weight 0")));
        }
        let expected = (n_max - n_min + 1) as usize;
        if dims.len() != expected {
            return Err(Error::Input(format!(
                "window [{n_min}, {n_max}] needs {expected} dimensions, got {}",
                dims.len()
            )));
        }
        let mut offsets = Vec::with_capacity(dims.len());
        let mut owners = Vec::new();
        let mut total = 0;
        for (i, &d) in dims.iter().enumerate() {
            offsets.push(total);
            owners.extend((0..d).map(|j| WeightedIndex::new(n_min + i as i32, j)));
            total += d;
        }
        Ok(Layout {
            n_min,
            n_max,
            dims,
            offsets,
            total,
            owners,
        })
    }

    pub fn n_min(&self) -> i32 {
        self.n_min
    }

    pub fn n_max(&self) -> i32 {
        self.n_max
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn total(&self) -> usize {
        self.total
    }

    pub fn in_window(&self, w: i32) -> bool {
        (self.n_min..=self.n_max).contains(&w)
    }

    pub fn weights(&self) -> RangeInclusive<i32> {
        self.n_min..=self.n_max
    }

    pub fn dim(&self, w: i32) -> usize {
        if self.in_window(w) {
            self.dims[(w - self.n_min) as usize]
        } else {
            0
        }
    }

    /// Global index range of the weight-`w` basis.
    pub fn range(&self, w: i32) -> std::ops::Range<usize> {
        if !self.in_window(w) {
            return 0..0;
        }
        let i = (w - self.n_min) as usize;
        self.offsets[i]..self.offsets[i] + self.dims[i]
    }

    pub fn global(&self, w: WeightedIndex) -> Option<usize> {
        (self.in_window(w.weight) && w.index < self.dim(w.weight))
            .then(|| self.offsets[(w.weight - self.n_min) as usize] + w.index)
    }

    pub fn weighted(&self, g: usize) -> WeightedIndex {
        self.owners[g]
    }

    pub fn weight_of(&self, g: usize) -> i32 {
        self.weighted(g).weight
    }

    /// Mode indices `k` for which `a(k)x` lands in the window, with `wt(a) = wa`, `wt(x) = wx`.
    pub fn mode_range(&self, wa: i32, wx: i32) -> RangeInclusive<i32> {
        (wa + wx - 1 - self.n_max)..=(wa + wx - 1 - self.n_min)
    }

    /// Every mode index `k` that is stored for some product with left factor of weight `wa`.
    pub fn stored_modes(&self, wa: i32) -> RangeInclusive<i32> {
        (wa + self.n_min - 1 - self.n_max)..=(wa + self.n_max - 1 - self.n_min)
    }

    pub fn to_graded(&self, v: &[Scalar]) -> GradedVector {
        GradedVector::from_components(
            v.iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(g, x)| (self.weighted(g), x.clone())),
        )
    }

    pub fn to_dense(&self, v: &GradedVector) -> Result<Vector> {
        let mut out = zero_vec(self.total);
        for (w, x) in v.iter() {
            let g = self
                .global(*w)
                .ok_or_else(|| Error::Input(format!("state {w} outside the window")))?;
            out[g] = x.clone();
        }
        Ok(out)
    }

    /// Splits a dense vector into its nonzero homogeneous components.
    pub fn homogeneous_parts(&self, v: &[Scalar]) -> Vec<(i32, Vector)> {
        let mut parts = Vec::new();
        for w in self.weights() {
            let r = self.range(w);
            if r.clone().any(|g| !v[g].is_zero()) {
                let mut p = zero_vec(self.total);
                for g in r {
                    p[g] = v[g].clone();
                }
                parts.push((w, p));
            }
        }
        parts
    }

    /// Restriction of a dense vector to the coordinates of weight `w`.
    pub fn slice(&self, v: &[Scalar], w: i32) -> Vector {
        v[self.range(w)].to_vec()
    }

    /// Embeds weight-`w` local coordinates into a dense global vector.
    pub fn embed(&self, w: i32, local: &[Scalar]) -> Vector {
        let mut out = zero_vec(self.total);
        for (g, x) in self.range(w).zip(local) {
            out[g] = x.clone();
        }
        out
    }
}

type SparseEntry = Vec<(usize, Scalar)>;

/// The full data needed to assemble a [`TruncatedVoa`].
#[derive(Clone, Debug)]
pub struct VoaData {
    pub name: String,
    pub n_min: i32,
    pub n_max: i32,
    pub dims: Vec<usize>,
    pub vacuum: WeightedIndex,
    pub omega: GradedVector,
    pub central_charge: Scalar,
    pub products: Vec<(ModeKey, GradedVector)>,
}

#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedVoa {
    name: String,
    layout: Layout,
    vacuum: WeightedIndex,
    omega: GradedVector,
    omega_dense: Vector,
    central_charge: Scalar,
    /// `(a, k, b) -> a(k)b`, global indices, zero products omitted.
    modes: BTreeMap<(usize, i32, usize), SparseEntry>,
}

impl fmt::Debug for TruncatedVoa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TruncatedVoa")
            .field("name", &self.name)
            .field("window", &(self.layout.n_min, self.layout.n_max))
            .field("dims", &self.layout.dims)
            .field("central_charge", &fmt_scalar(&self.central_charge))
            .field("products", &self.modes.len())
            .finish()
    }
}

/// Header fields shared by every way of building a [`TruncatedVoa`].
#[derive(Clone, Debug)]
pub struct VoaHeader {
    pub name: String,
    pub layout: Layout,
    pub vacuum: WeightedIndex,
    pub omega: Vector,
    pub central_charge: Scalar,
}

impl TruncatedVoa {
    pub fn new(data: VoaData) -> Result<Self> {
        let layout = Layout::new(data.n_min, data.n_max, data.dims)?;
        let omega = layout.to_dense(&data.omega)?;
        let header = VoaHeader {
            name: data.name,
            layout,
            vacuum: data.vacuum,
            omega,
            central_charge: data.central_charge,
        };
        let mut voa = Self::empty(header)?;
        for (key, out) in data.products {
            voa.insert_product(key, &out)?;
        }
        Ok(voa)
    }

    fn empty(h: VoaHeader) -> Result<Self> {
        let layout = h.layout;
        if h.vacuum.weight != 0 || layout.global(h.vacuum).is_none() {
            return Err(Error::Input(format!(
                "vacuum {} must be a basis state of weight 0",
                h.vacuum
            )));
        }
        if h.omega.len() != layout.total() {
            return Err(Error::DimensionMismatch {
                expected: layout.total(),
                got: h.omega.len(),
            });
        }
        let omega = layout.to_graded(&h.omega);
        if let Some(w) = omega.homogeneous_weight() {
            if w != 2 {
                return Err(Error::Input(format!(
                    "conformal vector must have weight 2, found weight {w}"
                )));
            }
        } else if !omega.is_zero() {
            return Err(Error::Input("conformal vector is not homogeneous".into()));
        }
        Ok(TruncatedVoa {
            name: h.name,
            layout,
            vacuum: h.vacuum,
            omega,
            omega_dense: h.omega,
            central_charge: h.central_charge,
            modes: BTreeMap::new(),
        })
    }

    fn insert_product(&mut self, key: ModeKey, out: &GradedVector) -> Result<()> {
        let entry = format!("{}({}){}", key.a, key.k, key.b);
        let bad = |message: String| Error::Input(format!("product {entry}: {message}"));
        let a = self
            .layout
            .global(key.a)
            .ok_or_else(|| bad(format!("state {} outside the basis", key.a)))?;
        let b = self
            .layout
            .global(key.b)
            .ok_or_else(|| bad(format!("state {} outside the basis", key.b)))?;
        let w = key.a.weight + key.b.weight - key.k - 1;
        if !self.layout.in_window(w) {
            return Err(bad(format!("output weight {w} outside the window")));
        }
        let mut sparse = Vec::new();
        for (c, x) in out.iter() {
            if c.weight != w {
                return Err(bad(format!(
                    "component {c} violates the weight rule (expected weight {w})"
                )));
            }
            let g = self
                .layout
                .global(*c)
                .ok_or_else(|| bad(format!("output state {c} outside the basis")))?;
            sparse.push((g, x.clone()));
        }
        if sparse.is_empty() {
            return Ok(());
        }
        if self.modes.insert((a, key.k, b), sparse).is_some() {
            return Err(bad("duplicate product entry".into()));
        }
        Ok(())
    }

    /// Builds a VOA by evaluating `f(a, k, b)` (dense output) for every product
    /// whose output weight lies in the window.
    pub fn from_fn<F>(header: VoaHeader, mut f: F) -> Result<Self>
    where
        F: FnMut(usize, i32, usize) -> Result<Vector>,
    {
        let mut voa = Self::empty(header)?;
        let l = voa.layout.clone();
        for a in 0..l.total() {
            let wa = l.weight_of(a);
            for b in 0..l.total() {
                let wb = l.weight_of(b);
                for k in l.mode_range(wa, wb) {
                    let out = f(a, k, b)?;
                    let w = wa + wb - k - 1;
                    let mut sparse = Vec::new();
                    for (g, x) in out.iter().enumerate() {
                        if x.is_zero() {
                            continue;
                        }
                        if l.weight_of(g) != w {
                            return Err(Error::Integrity(format!(
                                "product {}({}){} has a component of weight {} (expected {w})",
                                l.weighted(a),
                                k,
                                l.weighted(b),
                                l.weight_of(g)
                            )));
                        }
                        sparse.push((g, x.clone()));
                    }
                    if !sparse.is_empty() {
                        voa.modes.insert((a, k, b), sparse);
                    }
                }
            }
        }
        Ok(voa)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn layout(&self) -> &Layout {
        &self.layout
    }

    pub fn n_min(&self) -> i32 {
        self.layout.n_min
    }

    pub fn n_max(&self) -> i32 {
        self.layout.n_max
    }

    pub fn dims(&self) -> &[usize] {
        &self.layout.dims
    }

    pub fn total_dim(&self) -> usize {
        self.layout.total
    }

    pub fn vacuum(&self) -> WeightedIndex {
        self.vacuum
    }

    pub fn vacuum_global(&self) -> usize {
        self.layout
            .global(self.vacuum)
            .expect("vacuum validated at construction")
    }

    pub fn vacuum_vector(&self) -> Vector {
        crate::linalg::unit_vec(self.total_dim(), self.vacuum_global())
    }

    pub fn omega(&self) -> &GradedVector {
        &self.omega
    }

    pub fn omega_vector(&self) -> &Vector {
        &self.omega_dense
    }

    pub fn central_charge(&self) -> &Scalar {
        &self.central_charge
    }

    pub fn header(&self) -> VoaHeader {
        VoaHeader {
            name: self.name.clone(),
            layout: self.layout.clone(),
            vacuum: self.vacuum,
            omega: self.omega_dense.clone(),
            central_charge: self.central_charge.clone(),
        }
    }

    /// All stored nonzero products in canonical order.
    pub fn products(&self) -> impl Iterator<Item = (ModeKey, GradedVector)> + '_ {
        self.modes.iter().map(move |(&(a, k, b), out)| {
            let key = ModeKey {
                a: self.layout.weighted(a),
                k,
                b: self.layout.weighted(b),
            };
            let v = GradedVector::from_components(out.iter().map(|(g, x)| (self.layout.weighted(*g), x.clone())));
            (key, v)
        })
    }

    pub fn product_count(&self) -> usize {
        self.modes.len()
    }

    /// `a(k)b` for basis states, as a sparse list of `(global index, coefficient)`.
    pub fn basis_product(&self, a: usize, k: i32, b: usize) -> &[(usize, Scalar)] {
        self.modes.get(&(a, k, b)).map_or(&[], Vec::as_slice)
    }

    /// `a(k)x` for a basis state `a` and a dense vector `x`.
    pub fn apply_basis(&self, a: usize, k: i32, x: &[Scalar]) -> Vector {
        let mut out = zero_vec(self.total_dim());
        for (b, xb) in x.iter().enumerate() {
            if xb.is_zero() {
                continue;
            }
            for (g, c) in self.basis_product(a, k, b) {
                out[*g] += xb * c;
            }
        }
        out
    }

    /// `a(k)x` for dense vectors, extended bilinearly.
    pub fn apply(&self, a: &[Scalar], k: i32, x: &[Scalar]) -> Vector {
        let mut out = zero_vec(self.total_dim());
        for (ai, ca) in a.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (b, xb) in x.iter().enumerate() {
                if xb.is_zero() {
                    continue;
                }
                let entry = self.basis_product(ai, k, b);
                if entry.is_empty() {
                    continue;
                }
                let f = ca * xb;
                for (g, c) in entry {
                    out[*g] += &f * c;
                }
            }
        }
        out
    }

    /// Bilinear extension of the mode table; out-of-window outputs are dropped.
    pub fn mode_apply(&self, a: &GradedVector, k: i32, b: &GradedVector) -> Result<GradedVector> {
        let a = self.layout.to_dense(a)?;
        let b = self.layout.to_dense(b)?;
        Ok(self.layout.to_graded(&self.apply(&a, k, &b)))
    }

    /// `L(n)x = ω(n+1)x`.
    pub fn virasoro(&self, n: i32, x: &[Scalar]) -> Vector {
        self.apply(&self.omega_dense, n + 1, x)
    }

    pub fn virasoro_op(&self, n: i32, v: &GradedVector) -> Result<GradedVector> {
        let x = self.layout.to_dense(v)?;
        Ok(self.layout.to_graded(&self.virasoro(n, &x)))
    }

    /// Matrix of the operator `a(k)` on the whole window, `a` a basis state.
    pub fn mode_matrix(&self, a: usize, k: i32) -> Matrix {
        let n = self.total_dim();
        let mut m = Matrix::zeros(n, n);
        for b in 0..n {
            for (g, c) in self.basis_product(a, k, b) {
                m.set(*g, b, c.clone());
            }
        }
        m
    }

    /// Matrix of `v(k)` for an arbitrary state `v`.
    pub fn vector_mode_matrix(&self, v: &[Scalar], k: i32) -> Matrix {
        let n = self.total_dim();
        let mut cols = Vec::with_capacity(n);
        for b in 0..n {
            cols.push(self.apply(v, k, &crate::linalg::unit_vec(n, b)));
        }
        Matrix::from_rows(n, &cols).transpose()
    }

    /// Iterator over `(a, k)` for every basis state `a` and every mode index that
    /// can move a weight-`w` state to a weight inside the window.
    pub fn modes_on_weight(&self, w: i32) -> Vec<(usize, i32, i32)> {
        let mut out = Vec::new();
        for a in 0..self.total_dim() {
            let wa = self.layout.weight_of(a);
            for k in self.layout.mode_range(wa, w) {
                out.push((a, k, wa + w - k - 1));
            }
        }
        out
    }

    /// Whether the window is provably the whole algebra: with `ω = 0` every
    /// state has weight 0 and every state is central.
    pub fn window_is_whole(&self) -> bool {
        self.omega.is_zero()
            && self
                .dims()
                .iter()
                .enumerate()
                .all(|(i, &d)| d == 0 || self.n_min() + i as i32 == 0)
    }

    /// The algebra induced on a graded family of states.
    ///
    /// `basis[w - n_min]` lists host states of weight `w`; with `modulo` set the
    /// result is the quotient by that ideal (the listed states then span a
    /// complement), otherwise the listed states must span a subalgebra. The
    /// vacuum is the state at `vacuum` in the new numbering and `omega` is given
    /// in host coordinates.
    pub fn induced(
        &self,
        name: impl Into<String>,
        basis: &[Vec<Vector>],
        modulo: Option<&[Subspace]>,
        vacuum: WeightedIndex,
        omega: &[Scalar],
    ) -> Result<TruncatedVoa> {
        let l = &self.layout;
        let weights: Vec<i32> = l.weights().collect();
        if basis.len() != weights.len() {
            return Err(Error::Input("induced basis must list every weight".into()));
        }
        let dims: Vec<usize> = basis.iter().map(Vec::len).collect();
        let new_layout = Layout::new(l.n_min, l.n_max, dims)?;
        let mut solvers = Vec::new();
        for (i, &w) in weights.iter().enumerate() {
            let mut local: Vec<Vector> = basis[i].iter().map(|v| l.slice(v, w)).collect();
            if let Some(m) = modulo {
                local.extend(m[i].basis().iter().map(|v| l.slice(v, w)));
            }
            solvers.push(CoordinateSolver::new(l.dim(w), &local)?);
        }
        let to_new = |v: &[Scalar]| -> Result<Vector> {
            let mut out = zero_vec(new_layout.total());
            for (i, &w) in weights.iter().enumerate() {
                let s = l.slice(v, w);
                if is_zero_vec(&s) {
                    continue;
                }
                let coords = solvers[i].solve(&s).ok_or_else(|| {
                    Error::Integrity(format!("induced structure is not closed: weight {w} component escapes"))
                })?;
                for (j, g) in new_layout.range(w).enumerate() {
                    out[g] = coords[j].clone();
                }
            }
            Ok(out)
        };
        let host_of: Vec<Vector> = weights
            .iter()
            .enumerate()
            .flat_map(|(i, _)| basis[i].iter().cloned())
            .collect();
        let header = VoaHeader {
            name: name.into(),
            layout: new_layout.clone(),
            vacuum,
            omega: to_new(omega)?,
            central_charge: self.central_charge.clone(),
        };
        Self::from_fn(header, |a, k, b| {
            let prod = self.apply(&host_of[a], k, &host_of[b]);
            to_new(&prod)
        })
    }

    /// The same algebra written in a new basis (`basis[w - n_min]` spans weight `w`).
    pub fn change_basis(
        &self,
        name: impl Into<String>,
        basis: &[Vec<Vector>],
        vacuum: WeightedIndex,
    ) -> Result<TruncatedVoa> {
        let omega = self.omega_dense.clone();
        self.induced(name, basis, None, vacuum, &omega)
    }
}
