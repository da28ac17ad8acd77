//! Finite-dimensional algebras given by structure constants.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{axpy, fmt_vector, unit_vec, zero_vec, CoordinateSolver, Matrix, Scalar, Subspace, Vector};
use crate::poly::Poly;

/// A bilinear product on `Q^dim`, stored as `table[i][j] = b_i · b_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureTable {
    dim: usize,
    table: Vec<Vec<Vector>>,
}

impl StructureTable {
    pub fn new(dim: usize, table: Vec<Vec<Vector>>) -> Result<Self> {
        if table.len() != dim || table.iter().any(|row| row.len() != dim) {
            return Err(Error::Input(format!("structure table must be {dim}x{dim}")));
        }
        for row in &table {
            for v in row {
                if v.len() != dim {
                    return Err(Error::DimensionMismatch {
                        expected: dim,
                        got: v.len(),
                    });
                }
            }
        }
        Ok(StructureTable { dim, table })
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Vector) -> Self {
        let table = (0..dim).map(|i| (0..dim).map(|j| f(i, j)).collect()).collect();
        StructureTable { dim, table }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &Vector {
        &self.table[i][j]
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let mut out = zero_vec(self.dim);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                axpy(&mut out, &(xi * yj), &self.table[i][j]);
            }
        }
        out
    }

    /// Matrix of `y ↦ x·y`.
    pub fn left_mult(&self, x: &[Scalar]) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim).map(|j| self.mul(x, &unit_vec(self.dim, j))).collect();
        Matrix::from_rows(self.dim, &cols).transpose()
    }

    /// `½(x·y + y·x)`.
    pub fn symmetrized(&self) -> StructureTable {
        let half = Scalar::new(1.into(), 2.into());
        StructureTable::from_fn(self.dim, |i, j| {
            let mut v = self.table[i][j].clone();
            axpy(&mut v, &Scalar::from_integer(1.into()), &self.table[j][i]);
            v.iter().map(|x| x * &half).collect()
        })
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| (i + 1..self.dim).all(|j| self.table[i][j] == self.table[j][i]))
    }

    /// First basis triple on which associativity fails.
    pub fn associativity_failure(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim;
        for i in 0..n {
            for j in 0..n {
                let ij = &self.table[i][j];
                for k in 0..n {
                    let left = self.mul(ij, &unit_vec(n, k));
                    let right = self.mul(&unit_vec(n, i), &self.table[j][k]);
                    if left != right {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    pub fn is_unit(&self, u: &[Scalar]) -> bool {
        (0..self.dim).all(|i| {
            let e = unit_vec(self.dim, i);
            self.mul(u, &e) == e && self.mul(&e, u) == e
        })
    }
}

/// A commutative associative unital algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommAssocAlgebra {
    unit: Vector,
    table: StructureTable,
}

impl CommAssocAlgebra {
    pub fn new(unit: Vector, table: StructureTable) -> Result<Self> {
        if unit.len() != table.dim() {
            return Err(Error::DimensionMismatch {
                expected: table.dim(),
                got: unit.len(),
            });
        }
        if !table.is_commutative() {
            return Err(Error::Input("algebra is not commutative".into()));
        }
        if let Some((i, j, k)) = table.associativity_failure() {
            return Err(Error::Input(format!(
                "algebra is not associative on basis triple ({i}, {j}, {k})"
            )));
        }
        if !table.is_unit(&unit) {
            return Err(Error::Input(format!("{} is not a two-sided unit", fmt_vector(&unit))));
        }
        Ok(CommAssocAlgebra { unit, table })
    }

    /// `Q[t]/(f)` in the basis `1, t, …, t^{deg f - 1}`.
    pub fn truncated_polynomial(f: &Poly) -> Result<Self> {
        let d = match f.degree() {
            Some(d) if d >= 1 => d,
            _ => return Err(Error::Input("modulus must have positive degree".into())),
        };
        let table = StructureTable::from_fn(d, |i, j| {
            let r = Poly::monomial(i + j).rem(f);
            (0..d).map(|k| r.coeff(k)).collect()
        });
        CommAssocAlgebra::new(unit_vec(d, 0), table)
    }

    /// `Q^n` with componentwise product.
    pub fn split(n: usize) -> Result<Self> {
        let table = StructureTable::from_fn(n, |i, j| if i == j { unit_vec(n, i) } else { zero_vec(n) });
        let unit = vec![Scalar::from_integer(1.into()); n];
        CommAssocAlgebra::new(unit, table)
    }

    pub fn dim(&self) -> usize {
        self.table.dim()
    }

    pub fn unit(&self) -> &Vector {
        &self.unit
    }

    pub fn table(&self) -> &StructureTable {
        &self.table
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        self.table.mul(x, y)
    }

    pub fn pow(&self, x: &[Scalar], k: usize) -> Vector {
        (0..k).fold(self.unit.clone(), |acc, _| self.mul(&acc, x))
    }

    /// `p(x)`, evaluated by Horner's rule.
    pub fn eval(&self, p: &Poly, x: &[Scalar]) -> Vector {
        eval_poly(&self.table, &self.unit, p, x)
    }

    /// Gram matrix of the trace form `T(x, y) = tr(L_{xy})`.
    pub fn trace_form(&self) -> Matrix {
        let n = self.dim();
        let traces: Vec<Scalar> = (0..n)
            .map(|k| {
                let m = self.table.left_mult(&unit_vec(n, k));
                (0..n).fold(Scalar::zero(), |acc, i| acc + m.get(i, i))
            })
            .collect();
        let mut g = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let prod = self.table.basis_product(i, j);
                let t = prod.iter().zip(&traces).fold(Scalar::zero(), |acc, (c, t)| acc + c * t);
                g.set(i, j, t);
            }
        }
        g
    }

    /// The quotient by an ideal, on the complement spanned by the unit vectors
    /// at the ideal's non-pivot coordinates. Returns those coordinates too.
    pub fn quotient(&self, ideal: &Subspace) -> Result<(CommAssocAlgebra, Vec<usize>)> {
        let keep = nonpivots(ideal);
        let m = keep.len();
        let project = |v: &[Scalar]| -> Vector {
            let r = ideal.reduce(v);
            keep.iter().map(|&c| r[c].clone()).collect()
        };
        let table = StructureTable::from_fn(m, |i, j| project(self.table.basis_product(keep[i], keep[j])));
        let unit = project(&self.unit);
        Ok((CommAssocAlgebra::new(unit, table)?, keep))
    }

    /// The subalgebra on a basis of states closed under the product.
    pub fn subalgebra(&self, basis: &[Vector], unit: &[Scalar]) -> Result<CommAssocAlgebra> {
        let solver = CoordinateSolver::new(self.dim(), basis)?;
        let coords = |v: &[Scalar]| {
            solver
                .solve(v)
                .ok_or_else(|| Error::Input("subspace is not closed under the product".into()))
        };
        let m = basis.len();
        let mut table = vec![vec![Vec::new(); m]; m];
        for i in 0..m {
            for j in 0..m {
                table[i][j] = coords(&self.mul(&basis[i], &basis[j]))?;
            }
        }
        CommAssocAlgebra::new(coords(unit)?, StructureTable::new(m, table)?)
    }
}

pub(crate) fn nonpivots(s: &Subspace) -> Vec<usize> {
    (0..s.ambient_dim()).filter(|c| !s.pivots().contains(c)).collect()
}

pub fn eval_poly(table: &StructureTable, unit: &[Scalar], p: &Poly, x: &[Scalar]) -> Vector {
    let mut acc = zero_vec(table.dim());
    for c in p.coeffs().iter().rev() {
        acc = table.mul(&acc, x);
        axpy(&mut acc, c, unit);
    }
    acc
}

/// Minimal polynomial of `x` in the unital algebra generated by `x`, together
/// with the powers `1, x, …, x^{d-1}` that span it. Powers are formed as
/// `x^{k+1} = x · x^k`.
pub fn minimal_polynomial(table: &StructureTable, unit: &[Scalar], x: &[Scalar]) -> (Poly, Vec<Vector>) {
    let n = table.dim();
    let mut powers = vec![unit.to_vec()];
    loop {
        let next = table.mul(x, powers.last().expect("nonempty"));
        let solver = CoordinateSolver::new(n, &powers).expect("powers stay independent");
        if let Some(c) = solver.solve(&next) {
            let mut coeffs: Vec<Scalar> = c.into_iter().map(|v| -v).collect();
            coeffs.push(Scalar::from_integer(1.into()));
            return (Poly::new(coeffs), powers);
        }
        powers.push(next);
    }
}
