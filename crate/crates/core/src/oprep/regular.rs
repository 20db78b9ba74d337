use num_complex::Complex64;
use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fodc::{make_calculus, CalculusId};
use crate::suq2::AlgebraElement;

use super::checks::form_images;
use super::fspec::{build_f, FSpec, RSpec, TSpec, Variant};
use super::lattice::{LatticeWindow, Site};
use super::operator::LatticeOperator;
use super::rep::{build_rep, Representation, WChoice};

/// Margin kept between the Haar vector's support and the window edges.
const HAAR_MARGIN: usize = 3;

/// The direct sum of copies of the standard representation with the scaled
/// operators `T`, `R′` and the truncated Haar vector.
#[derive(Debug)]
pub struct RegularRep {
    pub rep: Representation,
    pub f: LatticeOperator,
    pub spec: FSpec,
    pub alpha: f64,
    pub beta: f64,
    /// Unit vector `∝ Σ_n q^n e_{n0n}` over the retained levels.
    pub haar: Vec<(usize, Complex64)>,
    /// Levels kept in the Haar vector.
    pub haar_levels: usize,
    /// Norm of the truncated vector with the printed prefactor `(1-q²)^{-1/2}`.
    pub printed_norm: f64,
}

/// `T e_{nkl} = α(1+q²)^{1/2} q^k e_{n,k-1,l-1}`,
/// `R′ e_{nkl} = βq²(1+q²+q⁴)^{1/2} q^{2k} e_{nkl}`, `R″ = 0`.
pub fn regular_spec(q: f64, alpha: f64, beta: f64) -> FSpec {
    let q2 = q * q;
    FSpec {
        variant: Variant::Standard,
        t: TSpec::ShiftQk {
            scale: alpha * (1.0 + q2).sqrt(),
            copy_shift: true,
        },
        r_prime: RSpec::DiagPow {
            scale: beta * q2 * (1.0 + q2 + q2 * q2).sqrt(),
            base: q2,
        },
        r_double: vec![],
    }
}

/// Builds the regular representation on `n < n_max`, `k ∈ [k_min, k_max]`,
/// `l ∈ [-3, n_max + 2]`; the Haar vector keeps levels `n < n_max - 3`.
pub fn regular_rep(
    q_value: &BigRational,
    n_max: usize,
    k_min: i64,
    k_max: i64,
    alpha: f64,
    beta: f64,
) -> Result<RegularRep> {
    if n_max <= HAAR_MARGIN {
        return Err(Error::Window(format!(
            "regular representation needs n_max > {HAAR_MARGIN}, got {n_max}"
        )));
    }
    let m = HAAR_MARGIN as i64;
    if k_min > -m || k_max < m {
        return Err(Error::Window(format!(
            "regular representation needs k range covering [-{m}, {m}], got [{k_min}, {k_max}]"
        )));
    }
    let window = LatticeWindow::new(n_max, k_min, k_max, q_value.clone())?
        .with_copies(-m, n_max as i64 - 1 + m)?;
    let rep = build_rep(&window, WChoice::BilateralShift, None)?;
    let spec = regular_spec(rep.q, alpha, beta);
    let f = build_f(&rep, &spec)?;
    let q = rep.q;
    let levels = n_max - HAAR_MARGIN;
    let raw: Vec<(usize, f64)> = (0..levels)
        .map(|n| {
            let i = rep
                .layout
                .index(Site::H { n, k: 0, l: n as i64 })
                .expect("haar support inside window");
            (i, q.powi(n as i32))
        })
        .collect();
    let norm = raw.iter().map(|(_, v)| v * v).sum::<f64>().sqrt();
    let printed_norm = norm / (1.0 - q * q).sqrt();
    let haar = raw.into_iter().map(|(i, v)| (i, Complex64::new(v / norm, 0.0))).collect();
    Ok(RegularRep {
        rep,
        f,
        spec,
        alpha,
        beta,
        haar,
        haar_levels: levels,
        printed_norm,
    })
}

/// `⟨x, y⟩`, linear in the first argument.
fn inner(x: &[(usize, Complex64)], y: &[(usize, Complex64)]) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    let (mut i, mut j) = (0, 0);
    while i < x.len() && j < y.len() {
        match x[i].0.cmp(&y[j].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                acc += x[i].1 * y[j].1.conj();
                i += 1;
                j += 1;
            }
        }
    }
    acc
}

/// Gram matrix of the 3D invariant forms with its diagonal compared to
/// `λ²q²α²`, `λ²q²β²`, `λ²q²α²`.
#[derive(Clone, Debug, Serialize)]
pub struct GramReport {
    pub alpha: f64,
    pub beta: f64,
    /// Row-major `[re, im]` entries.
    pub entries: [[[f64; 2]; 3]; 3],
    pub max_off_diagonal: f64,
    pub max_imag_diagonal: f64,
    /// `⟨ω_j, ω_j⟩ / (α², β², α²)`.
    pub diagonal_constants: [f64; 3],
}

impl RegularRep {
    pub fn norm(&self) -> f64 {
        inner(&self.haar, &self.haar).re.sqrt()
    }

    /// `h(x) = ⟨π(x)φ_h, φ_h⟩`.
    pub fn h(&self, x: &AlgebraElement) -> Result<Complex64> {
        let v = self.rep.represent(x)?.apply(&self.haar);
        Ok(inner(&v, &self.haar))
    }

    /// `⟨ρ(ω_k)φ_h, ρ(ω_l)φ_h⟩` with `ρ(ω_j)` the image of the 3D basis form.
    pub fn gram(&self) -> Result<GramReport> {
        let calc = make_calculus(CalculusId::ThreeD);
        let vecs: Vec<Vec<(usize, Complex64)>> = form_images(&self.rep, &self.f, &calc)?
            .iter()
            .map(|s| s.total().expect("nonempty").apply(&self.haar))
            .collect();
        let mut entries = [[[0.0; 2]; 3]; 3];
        let mut off = 0.0f64;
        let mut imag = 0.0f64;
        let mut diag = [0.0; 3];
        for k in 0..3 {
            for l in 0..3 {
                let g = inner(&vecs[k], &vecs[l]);
                entries[k][l] = [g.re, g.im];
                if k == l {
                    diag[k] = g.re;
                    imag = imag.max(g.im.abs());
                } else {
                    off = off.max(g.norm());
                }
            }
        }
        let a2 = self.alpha * self.alpha;
        let b2 = self.beta * self.beta;
        Ok(GramReport {
            alpha: self.alpha,
            beta: self.beta,
            entries,
            max_off_diagonal: off,
            max_imag_diagonal: imag,
            diagonal_constants: [diag[0] / a2, diag[1] / b2, diag[2] / a2],
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qscalar::parse_rational;

    #[test]
    fn haar_and_gram_constants() {
        let reg = regular_rep(&parse_rational("1/2").unwrap(), 20, -6, 6, 1.0, 1.0).unwrap();
        assert!((reg.norm() - 1.0).abs() < 1e-14);
        assert!((reg.printed_norm - 4.0 / 3.0).abs() < 1e-9);
        assert!((reg.h(&AlgebraElement::one()).unwrap().re - 1.0).abs() < 1e-14);
        let g = reg.gram().unwrap();
        assert!(g.max_off_diagonal < 1e-12);
        // λ²q² at q = 1/2
        assert!((g.diagonal_constants[0] - 9.0 / 16.0).abs() < 1e-10);
        assert!((g.diagonal_constants[0] - g.diagonal_constants[2]).abs() < 1e-12);
    }
}
