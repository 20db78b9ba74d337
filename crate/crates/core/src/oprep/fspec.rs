use num_complex::Complex64;

use crate::error::{Error, Result};

use super::lattice::{interior_mask, Site};
use super::operator::{LatticeOperator, OpSum, Residual};
use super::rep::{lambda_n, Representation};

type LevelFn = Box<dyn Fn(usize) -> f64>;

/// Scaled interior residual a recipe may leave in its defining conditions.
pub const CONDITION_TOL: f64 = 1e-12;

/// Recipe for `T` on `H₀`, acting on `k` (and on the copy index when set).
#[derive(Clone, Debug, PartialEq)]
pub enum TSpec {
    Zero,
    /// `T e_k = s q^k e_{k-1}`; with `copy_shift` also `l ↦ l - 1`.
    ShiftQk { scale: f64, copy_shift: bool },
    /// `T = s·1`.
    Identity { scale: f64 },
    /// `T e_k = s (-1)^k e_k`.
    SignDiag { scale: f64 },
}

impl TSpec {
    fn k_reach(&self) -> usize {
        matches!(self, TSpec::ShiftQk { .. }) as usize
    }

    /// `(target (Δk, Δl), coefficient)` of `T e_k`, `None` for `T = 0`.
    fn action(&self, q: f64, k: i64) -> Option<((i64, i64), f64)> {
        match *self {
            TSpec::Zero => None,
            TSpec::ShiftQk { scale, copy_shift } => {
                Some(((-1, -(copy_shift as i64)), scale * q.powi(k as i32)))
            }
            TSpec::Identity { scale } => Some(((0, 0), scale)),
            TSpec::SignDiag { scale } => Some(((0, 0), if k.rem_euclid(2) == 0 { scale } else { -scale })),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            TSpec::Zero => "T=0".into(),
            TSpec::ShiftQk { scale, .. } => format!("T=shift*{scale}q^k"),
            TSpec::Identity { scale } => format!("T={scale}*1"),
            TSpec::SignDiag { scale } => format!("T={scale}*(-1)^k"),
        }
    }
}

/// Recipe for the `w`-covariant part of `R`.
#[derive(Clone, Debug, PartialEq)]
pub enum RSpec {
    Zero,
    /// `R e_k = s·base^k e_k`.
    DiagPow { scale: f64, base: f64 },
}

impl RSpec {
    fn value(&self, k: i64) -> f64 {
        match *self {
            RSpec::Zero => 0.0,
            RSpec::DiagPow { scale, base } => scale * base.powi(k as i32),
        }
    }
}

/// Which family of operators `F` the recipe belongs to.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Variant {
    Standard,
    Signed { epsilon: i32 },
    Disk,
}

impl Variant {
    pub fn name(&self) -> String {
        match self {
            Variant::Standard => "standard".into(),
            Variant::Signed { epsilon } => format!("signed eps={epsilon:+}"),
            Variant::Disk => "disk".into(),
        }
    }
}

/// Materializable description of `F`.
#[derive(Clone, Debug, PartialEq)]
pub struct FSpec {
    pub variant: Variant,
    pub t: TSpec,
    pub r_prime: RSpec,
    /// `R″ e_k = Σ_r α_r e_{k-r}` as `(r, α_r)`.
    pub r_double: Vec<(i64, f64)>,
}

impl FSpec {
    /// `T e_{nk} = q^k e_{n,k-1}`, `R′ = diag q^{2k}`, `R″` from `alpha`.
    pub fn standard(q: f64, alpha: &[(i64, f64)]) -> Self {
        Self {
            variant: Variant::Standard,
            t: TSpec::ShiftQk { scale: 1.0, copy_shift: false },
            r_prime: RSpec::DiagPow { scale: 1.0, base: q * q },
            r_double: alpha.to_vec(),
        }
    }

    /// `T = 1` (`ε = +1`) or `(-1)^k` (`ε = -1`), `R = diag (εq)^{-k}`.
    pub fn signed(q: f64, epsilon: i32) -> Self {
        let eps = epsilon as f64;
        Self {
            variant: Variant::Signed { epsilon },
            t: if epsilon > 0 { TSpec::Identity { scale: 1.0 } } else { TSpec::SignDiag { scale: 1.0 } },
            r_prime: RSpec::DiagPow { scale: 1.0, base: 1.0 / (eps * q) },
            r_double: vec![],
        }
    }

    pub fn disk() -> Self {
        Self {
            variant: Variant::Disk,
            t: TSpec::ShiftQk { scale: 1.0, copy_shift: false },
            r_prime: RSpec::Zero,
            r_double: vec![],
        }
    }

    fn conv_reach(&self) -> usize {
        self.r_double.iter().map(|(r, _)| r.unsigned_abs() as usize).max().unwrap_or(0)
    }

    pub fn describe(&self) -> String {
        let r = match &self.r_prime {
            RSpec::Zero => "R'=0".to_string(),
            RSpec::DiagPow { scale, base } => format!("R'={scale}*{base}^k"),
        };
        let conv: Vec<String> = self.r_double.iter().map(|(r, a)| format!("{r}:{a}")).collect();
        format!("{} {} {r} R''=[{}]", self.variant.name(), self.t.describe(), conv.join(","))
    }
}

/// The operators a spec materializes to on a representation.
#[derive(Clone, Debug)]
pub struct Materialized {
    pub t: LatticeOperator,
    pub r_prime: LatticeOperator,
    pub r_double: LatticeOperator,
    pub q_block: Option<LatticeOperator>,
}

impl Materialized {
    pub fn r(&self) -> LatticeOperator {
        &self.r_prime + &self.r_double
    }
}

/// `T`, `R′`, `R″` (level 0) and `Q` as lattice operators.
pub fn materialize(rep: &Representation, spec: &FSpec) -> Materialized {
    let q = rep.q;
    let layout = &rep.layout;
    let t = LatticeOperator::from_fn(layout, [0, spec.t.k_reach()], |s| match s {
        Site::H { n, k, l } => spec
            .t
            .action(q, k)
            .map(|((dk, dl), v)| vec![(Site::H { n, k: k + dk, l: l + dl }, Complex64::new(v, 0.0))])
            .unwrap_or_default(),
        Site::G(_) => vec![],
    });
    let r_prime = rep.diag_h(|_, k| Complex64::new(spec.r_prime.value(k), 0.0));
    let r_double = LatticeOperator::from_fn(layout, [0, spec.conv_reach()], |s| match s {
        Site::H { n, k, l } => spec
            .r_double
            .iter()
            .map(|&(r, a)| (Site::H { n, k: k - r, l }, Complex64::new(a, 0.0)))
            .collect(),
        Site::G(_) => vec![],
    });
    let q_block = rep.v_sector.as_ref().map(|v| {
        LatticeOperator::from_fn(layout, [0, 0], |s| match s {
            Site::G(i) => vec![(s, Complex64::new(v.q_diag[i], 0.0))],
            Site::H { .. } => vec![],
        })
    });
    Materialized { t, r_prime, r_double, q_block }
}

/// One defining condition of a spec with its interior residual.
#[derive(Clone, Debug)]
pub struct ConditionCheck {
    pub condition: String,
    pub residual: Residual,
    pub mask_radius: [usize; 2],
}

fn measure(rep: &Representation, name: &str, sum: OpSum) -> Result<ConditionCheck> {
    let radius = sum.reach();
    let mask = interior_mask(rep.window(), radius)?;
    Ok(ConditionCheck {
        condition: name.to_string(),
        residual: sum.residual(&mask),
        mask_radius: radius,
    })
}

/// `w X w^*` with reach tracked.
fn conj_w(rep: &Representation, x: &LatticeOperator, times: usize) -> LatticeOperator {
    let mut out = x.clone();
    let wa = rep.w.adjoint();
    for _ in 0..times {
        out = &(&rep.w * &out) * &wa;
    }
    out
}

/// Evaluates the conditions a spec must satisfy for its variant.
pub fn spec_conditions(rep: &Representation, spec: &FSpec, m: &Materialized) -> Result<Vec<ConditionCheck>> {
    let q = rep.q;
    let mut out = Vec::new();
    let (t_factor, r_mid) = match spec.variant {
        Variant::Standard | Variant::Disk => (q, q * q),
        Variant::Signed { epsilon } => (epsilon as f64, epsilon as f64 / q),
    };
    let t_name = match spec.variant {
        Variant::Signed { .. } => "w T w* = eps T",
        _ => "w T w* = q T",
    };
    let mut s = OpSum::single(conj_w(rep, &m.t, 1));
    s.push_re(-t_factor, m.t.clone());
    out.push(measure(rep, t_name, s)?);

    match spec.variant {
        Variant::Disk => {
            let s = OpSum::single(m.r());
            out.push(measure(rep, "R = 0", s)?);
        }
        _ => {
            let r = m.r();
            let mut s = OpSum::single(conj_w(rep, &r, 2));
            s.push_re(r_mid, r.clone());
            s.push_re(-(1.0 + r_mid), conj_w(rep, &r, 1));
            let name = match spec.variant {
                Variant::Signed { .. } => "w^2 R w*^2 + eps q^-1 R = (1 + eps q^-1) w R w*",
                _ => "w^2 R w*^2 + q^2 R = (1 + q^2) w R w*",
            };
            out.push(measure(rep, name, s)?);
            let mut s = OpSum::single(conj_w(rep, &m.r_double, 1));
            s.push_re(-1.0, m.r_double.clone());
            out.push(measure(rep, "w R'' w* = R''", s)?);
            if let (Some(qb), Some(v)) = (&m.q_block, &rep.v_sector) {
                let vop = LatticeOperator::from_fn(&rep.layout, [0, 0], |st| match st {
                    Site::G(i) => vec![(st, Complex64::from_polar(1.0, v.phases[i]))],
                    Site::H { .. } => vec![],
                });
                let va = vop.adjoint();
                let v1 = &(&vop * qb) * &va;
                let v2 = &(&vop * &v1) * &va;
                let mut s = OpSum::single(v2);
                s.push_re(r_mid, qb.clone());
                s.push_re(-(1.0 + r_mid), v1);
                out.push(measure(rep, "v^2 Q v*^2 + q^2 Q = (1 + q^2) v Q v*", s)?);
            }
        }
    }
    Ok(out)
}

/// `F` for a spec, refusing recipes that violate their conditions.
pub fn build_f(rep: &Representation, spec: &FSpec) -> Result<LatticeOperator> {
    let m = materialize(rep, spec);
    for c in spec_conditions(rep, spec, &m)? {
        if c.residual.scaled.is_nan() || c.residual.scaled >= CONDITION_TOL {
            return Err(Error::SpecViolation {
                condition: c.condition,
                residual: c.residual.scaled,
                tolerance: CONDITION_TOL,
            });
        }
    }
    Ok(assemble_f(rep, spec, &m))
}

/// `F` without the condition checks; for controls that are not admissible.
pub fn assemble_f(rep: &Representation, spec: &FSpec, m: &Materialized) -> LatticeOperator {
    let q = rep.q;
    let s = rep.w_choice.level_offset();
    let (up, down): (LevelFn, LevelFn) = match spec.variant {
        Variant::Signed { epsilon } => {
            let eq = epsilon as f64 * q;
            (Box::new(move |n| eq.powi(1 - n as i32)), Box::new(move |n| eq.powi(-(n as i32))))
        }
        _ => (Box::new(|_| 1.0), Box::new(|_| 1.0)),
    };
    let t = &m.t;
    let ta = t.adjoint();
    let r_double = &m.r_double;
    let layout = &rep.layout;
    let reach = [1, t.reach()[1].max(r_double.reach()[1])];
    LatticeOperator::from_fn(layout, reach, |site| match site {
        Site::G(_) => match &m.q_block {
            Some(qb) => qb.column(layout.index(site).unwrap_or(0)).map(|(i, v)| (layout.site(i), v)).collect(),
            None => vec![],
        },
        Site::H { n, k, l } => {
            let mut out = Vec::new();
            let shifted = |op: &LatticeOperator, n_src: usize, scale: f64, out: &mut Vec<(Site, Complex64)>, n_dst: usize| {
                if let Some(j) = layout.index(Site::H { n: n_src, k, l }) {
                    for (i, v) in op.column(j) {
                        if let Site::H { k: ki, l: li, .. } = layout.site(i) {
                            out.push((Site::H { n: n_dst, k: ki, l: li }, v * scale));
                        }
                    }
                }
            };
            if n > 0 {
                shifted(t, n, up(n) * lambda_n(q, n), &mut out, n - 1);
            }
            shifted(&ta, n, down(n + 1) * lambda_n(q, n + 1), &mut out, n + 1);
            // w^n R w*^n e_k picks up the recipe at k + s n.
            let kk = k + s * n as i64;
            let rp = spec.r_prime.value(kk);
            if rp != 0.0 {
                out.push((site, Complex64::new(rp, 0.0)));
            }
            shifted(r_double, n, 1.0, &mut out, n);
            out
        }
    })
}

/// `R = R′ + R″` with `wR′w^* = q²R′` and `wR″w^* = R″`.
#[derive(Clone, Debug)]
pub struct RSplit {
    pub r_prime: LatticeOperator,
    pub r_double: LatticeOperator,
    pub checks: Vec<ConditionCheck>,
}

/// Splits a solution of `w²Rw^{*2} + q²R = (1+q²)wRw^*` into its two
/// `w`-eigencomponents and verifies the split, including the level law
/// `w^n R w^{*n} = q^{2n} R′ + R″` for `n = 1, 2`.
pub fn decompose_r(rep: &Representation, r: &LatticeOperator) -> Result<RSplit> {
    let q2 = rep.q * rep.q;
    let wr = conj_w(rep, r, 1);
    let mut s = OpSum::single(conj_w(rep, r, 2));
    s.push_re(q2, r.clone());
    s.push_re(-(1.0 + q2), wr.clone());
    let cond = measure(rep, "w^2 R w*^2 + q^2 R = (1 + q^2) w R w*", s)?;
    if cond.residual.scaled.is_nan() || cond.residual.scaled >= CONDITION_TOL {
        return Err(Error::SpecViolation {
            condition: cond.condition,
            residual: cond.residual.scaled,
            tolerance: CONDITION_TOL,
        });
    }
    let c = 1.0 / (q2 - 1.0);
    let r_prime = (&wr - r).scale_re(c).with_reach(r.reach());
    let r_double = (&r.scale_re(q2) - &wr).scale_re(c).with_reach(r.reach());
    let mut checks = vec![cond];
    let mut s = OpSum::single(conj_w(rep, &r_prime, 1));
    s.push_re(-q2, r_prime.clone());
    checks.push(measure(rep, "w R' w* = q^2 R'", s)?);
    let mut s = OpSum::single(conj_w(rep, &r_double, 1));
    s.push_re(-1.0, r_double.clone());
    checks.push(measure(rep, "w R'' w* = R''", s)?);
    for n in 1..=2 {
        let mut s = OpSum::single(conj_w(rep, r, n));
        s.push_re(-q2.powi(n as i32), r_prime.clone());
        s.push_re(-1.0, r_double.clone());
        checks.push(measure(rep, &format!("w^{n} R w*^{n} = q^{} R' + R''", 2 * n), s)?);
    }
    Ok(RSplit { r_prime, r_double, checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oprep::lattice::LatticeWindow;
    use crate::oprep::rep::{build_rep, WChoice};
    use crate::qscalar::parse_rational;

    fn rep(w: WChoice) -> Representation {
        let win = LatticeWindow::new(12, -14, 14, parse_rational("1/2").unwrap()).unwrap();
        build_rep(&win, w, None).unwrap()
    }

    #[test]
    fn standard_f_entries() {
        let r = rep(WChoice::BilateralShift);
        let f = build_f(&r, &FSpec::standard(0.5, &[])).unwrap();
        let e = |n, k| r.layout.index(Site::H { n, k, l: 0 }).unwrap();
        let q: f64 = 0.5;
        assert!((f.entry(e(2, 1), e(2, 1)).re - q.powi(6)).abs() < 1e-15);
        assert!((f.entry(e(1, 0), e(2, 1)).re - lambda_n(q, 2) * q).abs() < 1e-15);
        assert!((f.entry(e(3, 2), e(2, 1)).re - lambda_n(q, 3) * q * q).abs() < 1e-15);
    }

    #[test]
    fn refusals() {
        let r = rep(WChoice::Identity);
        match build_f(&r, &FSpec::standard(0.5, &[])) {
            Err(Error::SpecViolation { condition, .. }) => assert_eq!(condition, "w T w* = q T"),
            other => panic!("{other:?}"),
        }
        let r = rep(WChoice::BilateralShift);
        let literal = FSpec {
            t: TSpec::Identity { scale: 1.0 },
            r_prime: RSpec::DiagPow { scale: 1.0, base: 0.5 },
            ..FSpec::signed(0.5, -1)
        };
        assert!(matches!(build_f(&r, &literal), Err(Error::SpecViolation { .. })));
        assert!(build_f(&r, &FSpec::signed(0.5, 1)).is_ok());
        assert!(build_f(&r, &FSpec::signed(0.5, -1)).is_ok());
        let bad_disk = FSpec { r_prime: RSpec::DiagPow { scale: 1.0, base: 0.25 }, ..FSpec::disk() };
        assert!(matches!(build_f(&r, &bad_disk), Err(Error::SpecViolation { .. })));
    }

    #[test]
    fn r_split() {
        let r = rep(WChoice::BilateralShift);
        let m = materialize(&r, &FSpec::standard(0.5, &[(-1, 0.3), (1, 0.3)]));
        let split = decompose_r(&r, &m.r()).unwrap();
        assert!(split.checks.iter().all(|c| c.residual.scaled < 1e-14));
        let mut s = OpSum::single(split.r_prime.clone());
        s.push_re(-1.0, m.r_prime.clone());
        let mask = interior_mask(r.window(), [0, 2]).unwrap();
        assert!(s.residual(&mask).absolute < 1e-9);
        let mut s = OpSum::single(split.r_double);
        s.push_re(-1.0, m.r_double.clone());
        assert!(s.residual(&mask).absolute < 1e-9);
    }
}
