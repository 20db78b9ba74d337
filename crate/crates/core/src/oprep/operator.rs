use std::collections::HashMap;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use nalgebra_sparse::{CooMatrix, CscMatrix};
use num_complex::Complex64;

use super::lattice::{InteriorMask, Layout, Site};

/// Sparse operator on a truncated lattice.
///
/// `reach` bounds how far any operator word composing this operator moves a
/// vector (in `n` and in `k`); it adds under products and is what interior
/// masks are sized from.
#[derive(Clone, Debug)]
pub struct LatticeOperator {
    layout: Arc<Layout>,
    mat: CscMatrix<Complex64>,
    reach: [usize; 2],
}

impl LatticeOperator {
    pub fn zero(layout: &Arc<Layout>) -> Self {
        let d = layout.dim();
        Self {
            layout: layout.clone(),
            mat: CscMatrix::zeros(d, d),
            reach: [0, 0],
        }
    }

    pub fn identity(layout: &Arc<Layout>) -> Self {
        Self {
            layout: layout.clone(),
            mat: CscMatrix::identity(layout.dim()),
            reach: [0, 0],
        }
    }

    /// Maps each source site to weighted target sites; targets outside the
    /// window are dropped.
    pub fn from_fn<F>(layout: &Arc<Layout>, reach: [usize; 2], f: F) -> Self
    where
        F: Fn(Site) -> Vec<(Site, Complex64)>,
    {
        let d = layout.dim();
        let mut coo = CooMatrix::new(d, d);
        for j in 0..d {
            for (t, v) in f(layout.site(j)) {
                if v == Complex64::new(0.0, 0.0) {
                    continue;
                }
                if let Some(i) = layout.index(t) {
                    coo.push(i, j, v);
                }
            }
        }
        Self {
            layout: layout.clone(),
            mat: CscMatrix::from(&coo),
            reach,
        }
    }

    pub fn layout(&self) -> &Arc<Layout> {
        &self.layout
    }

    pub fn matrix(&self) -> &CscMatrix<Complex64> {
        &self.mat
    }

    pub fn reach(&self) -> [usize; 2] {
        self.reach
    }

    pub fn with_reach(mut self, reach: [usize; 2]) -> Self {
        self.reach = reach;
        self
    }

    pub fn nnz(&self) -> usize {
        self.mat.nnz()
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            layout: self.layout.clone(),
            mat: &self.mat * c,
            reach: self.reach,
        }
    }

    pub fn scale_re(&self, c: f64) -> Self {
        self.scale(Complex64::new(c, 0.0))
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut t = self.mat.transpose();
        for v in t.values_mut() {
            *v = v.conj();
        }
        Self {
            layout: self.layout.clone(),
            mat: t,
            reach: self.reach,
        }
    }

    /// Nonzero entries of column `j`.
    pub fn column(&self, j: usize) -> impl Iterator<Item = (usize, Complex64)> + '_ {
        let off = self.mat.col_offsets();
        let (lo, hi) = (off[j], off[j + 1]);
        self.mat.row_indices()[lo..hi]
            .iter()
            .copied()
            .zip(self.mat.values()[lo..hi].iter().copied())
            .filter(|(_, v)| v.norm() != 0.0)
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.mat
            .get_entry(i, j)
            .map(|e| e.into_value())
            .unwrap_or_default()
    }

    /// Applies the operator to a sparse vector.
    pub fn apply(&self, v: &[(usize, Complex64)]) -> Vec<(usize, Complex64)> {
        let mut acc: HashMap<usize, Complex64> = HashMap::new();
        for &(j, x) in v {
            for (i, a) in self.column(j) {
                *acc.entry(i).or_default() += a * x;
            }
        }
        let mut out: Vec<_> = acc.into_iter().collect();
        out.sort_by_key(|e| e.0);
        out
    }

    /// `(max |Δn|, max |Δk|)` over the nonzero entries.
    pub fn support_radius(&self) -> [usize; 2] {
        let mut r = [0usize, 0usize];
        for (i, j, v) in self.mat.triplet_iter() {
            if v.norm() == 0.0 {
                continue;
            }
            if let (Site::H { n: n1, k: k1, .. }, Site::H { n: n2, k: k2, .. }) =
                (self.layout.site(i), self.layout.site(j))
            {
                r[0] = r[0].max(n1.abs_diff(n2));
                r[1] = r[1].max(k1.abs_diff(k2) as usize);
            }
        }
        r
    }

    /// Largest column norm over the masked sources.
    pub fn max_column_norm(&self, mask: &InteriorMask) -> f64 {
        mask.indices(&self.layout)
            .into_iter()
            .map(|j| self.column(j).map(|(_, v)| v.norm_sqr()).sum::<f64>().sqrt())
            .fold(0.0, f64::max)
    }
}

impl Mul for &LatticeOperator {
    type Output = LatticeOperator;
    fn mul(self, rhs: &LatticeOperator) -> LatticeOperator {
        LatticeOperator {
            layout: self.layout.clone(),
            mat: &self.mat * &rhs.mat,
            reach: [self.reach[0] + rhs.reach[0], self.reach[1] + rhs.reach[1]],
        }
    }
}

impl Add for &LatticeOperator {
    type Output = LatticeOperator;
    fn add(self, rhs: &LatticeOperator) -> LatticeOperator {
        LatticeOperator {
            layout: self.layout.clone(),
            mat: &self.mat + &rhs.mat,
            reach: [self.reach[0].max(rhs.reach[0]), self.reach[1].max(rhs.reach[1])],
        }
    }
}

impl Sub for &LatticeOperator {
    type Output = LatticeOperator;
    fn sub(self, rhs: &LatticeOperator) -> LatticeOperator {
        LatticeOperator {
            layout: self.layout.clone(),
            mat: &self.mat - &rhs.mat,
            reach: [self.reach[0].max(rhs.reach[0]), self.reach[1].max(rhs.reach[1])],
        }
    }
}

impl Neg for &LatticeOperator {
    type Output = LatticeOperator;
    fn neg(self) -> LatticeOperator {
        self.scale_re(-1.0)
    }
}

/// Residual of an operator identity `Σ c_i X_i = 0` on masked sources.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Residual {
    /// `max_j ‖Σ c_i X_i e_j‖`.
    pub absolute: f64,
    /// `max_j ‖Σ c_i X_i e_j‖ / max(1, Σ |c_i| ‖X_i e_j‖)`.
    pub scaled: f64,
}

/// A formal sum `Σ c_i X_i`, kept term by term so that residuals can be
/// measured against the size of the cancelling terms.
#[derive(Clone, Debug, Default)]
pub struct OpSum {
    pub terms: Vec<(Complex64, LatticeOperator)>,
}

impl OpSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(op: LatticeOperator) -> Self {
        Self {
            terms: vec![(Complex64::new(1.0, 0.0), op)],
        }
    }

    pub fn push(&mut self, c: Complex64, op: LatticeOperator) {
        self.terms.push((c, op));
    }

    pub fn push_re(&mut self, c: f64, op: LatticeOperator) {
        self.push(Complex64::new(c, 0.0), op);
    }

    pub fn extend_scaled(&mut self, c: Complex64, other: &OpSum) {
        for (ci, op) in &other.terms {
            self.terms.push((c * ci, op.clone()));
        }
    }

    pub fn scale(&self, c: Complex64) -> OpSum {
        OpSum {
            terms: self.terms.iter().map(|(ci, op)| (c * ci, op.clone())).collect(),
        }
    }

    /// `self · rhs`, distributing over the terms.
    pub fn mul_op(&self, rhs: &LatticeOperator) -> OpSum {
        OpSum {
            terms: self.terms.iter().map(|(c, op)| (*c, op * rhs)).collect(),
        }
    }

    /// `lhs · self`.
    pub fn left_mul_op(&self, lhs: &LatticeOperator) -> OpSum {
        OpSum {
            terms: self.terms.iter().map(|(c, op)| (*c, lhs * op)).collect(),
        }
    }

    pub fn reach(&self) -> [usize; 2] {
        self.terms.iter().fold([0, 0], |r, (_, op)| {
            [r[0].max(op.reach[0]), r[1].max(op.reach[1])]
        })
    }

    /// The summed operator, or `None` for an empty sum.
    pub fn total(&self) -> Option<LatticeOperator> {
        let mut it = self.terms.iter();
        let (c, first) = it.next()?;
        let mut acc = first.scale(*c);
        for (c, op) in it {
            acc = &acc + &op.scale(*c);
        }
        Some(acc)
    }

    pub fn residual(&self, mask: &InteriorMask) -> Residual {
        let Some((_, first)) = self.terms.first() else {
            return Residual::default();
        };
        let layout = first.layout.clone();
        let mut out = Residual::default();
        for j in mask.indices(&layout) {
            let mut acc: HashMap<usize, Complex64> = HashMap::new();
            let mut size = 0.0;
            for (c, op) in &self.terms {
                let mut col = 0.0;
                for (i, v) in op.column(j) {
                    *acc.entry(i).or_default() += c * v;
                    col += v.norm_sqr();
                }
                size += c.norm() * col.sqrt();
            }
            let r = acc.values().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
            out.absolute = out.absolute.max(r);
            out.scaled = out.scaled.max(r / size.max(1.0));
        }
        out
    }
}
