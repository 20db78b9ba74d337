use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use qcalc_core::oprep::DEFAULT_TOL;
use qcalc_core::qscalar::parse_rational;
use qcalc_core::CalculusId;

/// Fully resolved run parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct Settings {
    pub q: String,
    /// `None` lets each suite pick its own level count.
    pub n_max: Option<usize>,
    pub k_min: i64,
    pub k_max: i64,
    pub alpha: f64,
    pub beta: f64,
    /// `(r, α_r)` of the `R″` convolution.
    pub alpha_r: Vec<(i64, f64)>,
    pub epsilon: Option<i32>,
    pub tol: f64,
    pub calculus: Option<CalculusId>,
    pub degree: u32,
}

impl Default for Settings {
    fn default() -> Self {
        Self {
            q: "1/2".into(),
            n_max: None,
            k_min: -14,
            k_max: 14,
            alpha: 1.0,
            beta: 1.0,
            alpha_r: Vec::new(),
            epsilon: None,
            tol: DEFAULT_TOL,
            calculus: None,
            degree: 4,
        }
    }
}

/// Parses `a,b,c` as `α_{-1}, α_0, α_1`; the list is centred on `r = 0`.
pub fn parse_alpha_r(s: &str) -> Result<Vec<(i64, f64)>> {
    let vals: Vec<f64> = s
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<f64>().with_context(|| format!("alpha_r entry `{t}` is not a number")))
        .collect::<Result<_>>()?;
    if vals.is_empty() {
        return Ok(Vec::new());
    }
    if vals.len().is_multiple_of(2) {
        bail!("alpha_r needs an odd number of entries centred on r = 0, got {}", vals.len());
    }
    let h = (vals.len() / 2) as i64;
    Ok(vals
        .into_iter()
        .enumerate()
        .map(|(i, v)| (i as i64 - h, v))
        .filter(|(_, v)| *v != 0.0)
        .collect())
}

pub fn parse_epsilon(s: &str) -> Result<i32> {
    match s.trim() {
        "+1" | "1" | "+" => Ok(1),
        "-1" | "-" => Ok(-1),
        other => bail!("epsilon must be +1 or -1, got `{other}`"),
    }
}

impl Settings {
    /// Applies one `key = value` pair; keys accept `-` or `_`.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let v = value.trim();
        let num = |what: &str| format!("{what} must be a number, got `{v}`");
        match key.trim().replace('-', "_").as_str() {
            "q" => self.q = v.to_string(),
            "n_max" => self.n_max = Some(v.parse().with_context(|| num("n_max"))?),
            "k_min" => self.k_min = v.parse().with_context(|| num("k_min"))?,
            "k_max" => self.k_max = v.parse().with_context(|| num("k_max"))?,
            "alpha" => self.alpha = v.parse().with_context(|| num("alpha"))?,
            "beta" => self.beta = v.parse().with_context(|| num("beta"))?,
            "alpha_r" => self.alpha_r = parse_alpha_r(v)?,
            "epsilon" => self.epsilon = Some(parse_epsilon(v)?),
            "tol" | "tolerance" => self.tol = v.parse().with_context(|| num("tol"))?,
            "calculus" => self.calculus = parse_calculus(v)?,
            "degree" => self.degree = v.parse().with_context(|| num("degree"))?,
            other => bail!("unknown configuration key `{other}`"),
        }
        Ok(())
    }

    /// Reads a flat `key = value` file; `#` starts a comment.
    pub fn load(&mut self, path: &Path) -> Result<()> {
        let text = fs::read_to_string(path).with_context(|| format!("cannot read config {}", path.display()))?;
        for (no, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((k, v)) = line.split_once('=') else {
                bail!("{}:{}: expected `key = value`, got `{line}`", path.display(), no + 1);
            };
            self.set(k, v).with_context(|| format!("{}:{}", path.display(), no + 1))?;
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        qcalc_core::qscalar::check_q(&parse_rational(&self.q)?)?;
        if self.tol.is_nan() || self.tol <= 0.0 {
            bail!("tolerance must be positive, got {}", self.tol);
        }
        if self.k_min > self.k_max {
            bail!("k_min {} exceeds k_max {}", self.k_min, self.k_max);
        }
        Ok(())
    }
}

/// `all` selects every calculus.
pub fn parse_calculus(s: &str) -> Result<Option<CalculusId>> {
    if s.trim().eq_ignore_ascii_case("all") {
        return Ok(None);
    }
    Ok(Some(s.parse::<CalculusId>()?))
}
