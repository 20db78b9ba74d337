use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::suq2::{AlgebraElement, Gen, Monomial};

use super::fspec::FSpec;
use super::lattice::{LatticeWindow, Layout, Site};
use super::operator::LatticeOperator;

/// The unitary `w` on `H₀`.
#[derive(Clone, Debug, PartialEq)]
pub enum WChoice {
    /// `w e_k = e_{k-1}`.
    BilateralShift,
    /// `w e_k = e^{iθ} e_{k-1}`.
    PhasedShift { theta: f64 },
    /// `w = 1`; unitary, but incompatible with nonzero `T`.
    Identity,
}

impl WChoice {
    /// `(Δk, phase)` of `w`.
    fn action(&self) -> (i64, Complex64) {
        match self {
            WChoice::BilateralShift => (-1, Complex64::new(1.0, 0.0)),
            WChoice::PhasedShift { theta } => (-1, Complex64::from_polar(1.0, *theta)),
            WChoice::Identity => (0, Complex64::new(1.0, 0.0)),
        }
    }

    /// Offset `s` with `w^n R w^{*n} e_k = R e_{k+s n}` for `w`-covariant recipes.
    pub(crate) fn level_offset(&self) -> i64 {
        -self.action().0
    }
}

/// A finite `v`-sector: `v = diag(e^{iθ_j})`, `Q = diag(q_j)`.
#[derive(Clone, Debug, PartialEq)]
pub struct VSector {
    pub phases: Vec<f64>,
    pub q_diag: Vec<f64>,
}

#[derive(Clone, Debug)]
pub struct RepConfig {
    pub window: LatticeWindow,
    pub w_choice: WChoice,
    pub v_sector: Option<VSector>,
    pub f_spec: FSpec,
}

/// A truncated `*`-representation with its generator operators.
#[derive(Debug)]
pub struct Representation {
    pub layout: Arc<Layout>,
    pub q: f64,
    pub w_choice: WChoice,
    pub v_sector: Option<VSector>,
    pub w: LatticeOperator,
    gens: [LatticeOperator; 4],
    b_inv: Option<LatticeOperator>,
    c_inv: Option<LatticeOperator>,
    cache: Mutex<HashMap<Monomial, LatticeOperator>>,
}

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// `λ_n = (1 - q^{2n})^{1/2}`.
pub fn lambda_n(q: f64, n: usize) -> f64 {
    (1.0 - q.powi(2 * n as i32)).sqrt()
}

/// Builds `π` on the window: `π(a)η_n = λ_nη_{n-1}`, `π(d)η_n = λ_{n+1}η_{n+1}`,
/// `π(c)η_n = q^n wη_n`, `π(b) = -qπ(c)^*`, and `π(a) = v`, `π(d) = v^*`,
/// `π(b) = π(c) = 0` on the `v`-sector.
pub fn build_rep(window: &LatticeWindow, w_choice: WChoice, v_sector: Option<VSector>) -> Result<Representation> {
    window.validate()?;
    if let Some(v) = &v_sector {
        if v.phases.len() != v.q_diag.len() || v.phases.is_empty() {
            return Err(Error::Config("v-sector phases and Q diagonal must have equal nonzero length".into()));
        }
    }
    let g_dim = v_sector.as_ref().map_or(0, |v| v.phases.len());
    let layout = Arc::new(Layout::new(window.clone(), g_dim));
    let q = window.q();
    let (dk, ph) = w_choice.action();
    let kr = dk.unsigned_abs() as usize;
    let phases: Vec<Complex64> = v_sector
        .as_ref()
        .map(|v| v.phases.iter().map(|t| Complex64::from_polar(1.0, *t)).collect())
        .unwrap_or_default();

    let w = LatticeOperator::from_fn(&layout, [0, kr], |s| match s {
        Site::H { n, k, l } => vec![(Site::H { n, k: k + dk, l }, ph)],
        Site::G(_) => vec![],
    });
    let a = LatticeOperator::from_fn(&layout, [1, 0], |s| match s {
        Site::H { n: 0, .. } => vec![],
        Site::H { n, k, l } => vec![(Site::H { n: n - 1, k, l }, re(lambda_n(q, n)))],
        Site::G(i) => vec![(Site::G(i), phases[i])],
    });
    let d = LatticeOperator::from_fn(&layout, [1, 0], |s| match s {
        Site::H { n, k, l } => vec![(Site::H { n: n + 1, k, l }, re(lambda_n(q, n + 1)))],
        Site::G(i) => vec![(Site::G(i), phases[i].conj())],
    });
    let c = LatticeOperator::from_fn(&layout, [0, kr], |s| match s {
        Site::H { n, k, l } => vec![(Site::H { n, k: k + dk, l }, ph * q.powi(n as i32))],
        Site::G(_) => vec![],
    });
    let b = LatticeOperator::from_fn(&layout, [0, kr], |s| match s {
        Site::H { n, k, l } => vec![(Site::H { n, k: k - dk, l }, -ph.conj() * q.powi(n as i32 + 1))],
        Site::G(_) => vec![],
    });
    let invertible = g_dim == 0;
    let c_inv = invertible.then(|| {
        LatticeOperator::from_fn(&layout, [0, kr], |s| match s {
            Site::H { n, k, l } => vec![(Site::H { n, k: k - dk, l }, ph.conj() * q.powi(-(n as i32)))],
            Site::G(_) => vec![],
        })
    });
    let b_inv = invertible.then(|| {
        LatticeOperator::from_fn(&layout, [0, kr], |s| match s {
            Site::H { n, k, l } => vec![(Site::H { n, k: k + dk, l }, -ph * q.powi(-(n as i32) - 1))],
            Site::G(_) => vec![],
        })
    });
    Ok(Representation {
        layout,
        q,
        w_choice,
        v_sector,
        w,
        gens: [a, b, c, d],
        b_inv,
        c_inv,
        cache: Mutex::new(HashMap::new()),
    })
}

impl Representation {
    pub fn window(&self) -> &LatticeWindow {
        &self.layout.window
    }

    pub fn gen(&self, g: Gen) -> &LatticeOperator {
        &self.gens[g.index()]
    }

    pub fn identity(&self) -> LatticeOperator {
        LatticeOperator::identity(&self.layout)
    }

    /// Operator diagonal in the lattice: `e_{nkl} ↦ f(n, k) e_{nkl}`, zero on `G`.
    pub fn diag_h(&self, f: impl Fn(usize, i64) -> Complex64) -> LatticeOperator {
        LatticeOperator::from_fn(&self.layout, [0, 0], |s| match s {
            Site::H { n, k, .. } => vec![(s, f(n, k))],
            Site::G(_) => vec![],
        })
    }

    fn inverse(&self, g: Gen) -> Result<&LatticeOperator> {
        let op = match g {
            Gen::B => self.b_inv.as_ref(),
            Gen::C => self.c_inv.as_ref(),
            _ => None,
        };
        op.ok_or_else(|| {
            Error::LocalizationMode(format!(
                "pi({}) is not invertible on this representation",
                g.symbol()
            ))
        })
    }

    /// `π` of a PBW monomial, memoized.
    pub fn monomial(&self, m: &Monomial) -> Result<LatticeOperator> {
        if let Some(op) = self.cache.lock().expect("cache lock").get(m) {
            return Ok(op.clone());
        }
        let mut acc = self.identity();
        for l in m.letters() {
            let f = if l.inverse { self.inverse(l.gen)? } else { self.gen(l.gen) };
            acc = &acc * f;
        }
        self.cache.lock().expect("cache lock").insert(*m, acc.clone());
        Ok(acc)
    }

    /// `π(x)` for an element, localized or not.
    pub fn represent(&self, x: &AlgebraElement) -> Result<LatticeOperator> {
        let mut acc: Option<LatticeOperator> = None;
        for (m, c) in x.terms() {
            let coeff = c.evaluate_f64(&self.window().q_value)?;
            let op = self.monomial(m)?.scale(re(coeff));
            acc = Some(match acc {
                None => op,
                Some(a) => &a + &op,
            });
        }
        Ok(acc.unwrap_or_else(|| LatticeOperator::zero(&self.layout)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oprep::lattice::interior_mask;
    use crate::oprep::operator::OpSum;
    use crate::qscalar::parse_rational;

    fn rep() -> Representation {
        let w = LatticeWindow::new(12, -14, 14, parse_rational("1/2").unwrap()).unwrap();
        build_rep(&w, WChoice::BilateralShift, None).unwrap()
    }

    fn el(s: &str) -> AlgebraElement {
        s.parse().unwrap()
    }

    #[test]
    fn generator_actions() {
        let r = rep();
        let l = &r.layout;
        let e = |n, k| l.index(Site::H { n, k, l: 0 }).unwrap();
        let a = r.gen(Gen::A);
        assert!((a.entry(e(1, 0), e(2, 0)).re - (1.0f64 - 0.0625).sqrt()).abs() < 1e-15);
        assert_eq!(r.gen(Gen::C).entry(e(2, -1), e(2, 0)).re, 0.25);
        let bc = r.represent(&el("b*c")).unwrap();
        assert_eq!(bc.entry(e(3, 2), e(3, 2)).re, -(0.5f64).powi(7));
    }

    #[test]
    fn determinant_is_identity_on_interior() {
        let r = rep();
        let x = r.represent(&el("a*d - q*b*c")).unwrap();
        let mut s = OpSum::single(x);
        s.push_re(-1.0, r.identity());
        let m = interior_mask(r.window(), [1, 1]).unwrap();
        assert!(s.residual(&m).absolute < 1e-14);
        assert_eq!(r.represent(&el("b^2")).unwrap().support_radius(), [0, 2]);
    }

    #[test]
    fn localized_inverses() {
        let r = rep();
        let x = r.represent(&el("b^-1*b")).unwrap();
        assert_eq!(x.support_radius(), [0, 0]);
        let m = interior_mask(r.window(), [0, 1]).unwrap();
        let mut s = OpSum::single(&r.represent(&el("b")).unwrap() * &r.represent(&el("b^-1")).unwrap());
        s.push_re(-1.0, r.identity());
        assert!(s.residual(&m).absolute < 1e-12);
    }
}
