use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::qscalar::{check_q, fmt_rational, rational_to_f64};

/// Truncation of `l²(N₀ × Z)` (or `l²(N₀ × Z × Z)` with copies) to a finite
/// box of levels `n`, shifts `k` and copy indices `l`.
#[derive(Clone, Debug, PartialEq)]
pub struct LatticeWindow {
    pub n_max: usize,
    pub k_min: i64,
    pub k_max: i64,
    /// Inclusive copy range; `None` for a single copy.
    pub copies: Option<(i64, i64)>,
    pub q_value: BigRational,
}

impl LatticeWindow {
    pub fn new(n_max: usize, k_min: i64, k_max: i64, q_value: BigRational) -> Result<Self> {
        let w = Self {
            n_max,
            k_min,
            k_max,
            copies: None,
            q_value,
        };
        w.validate()?;
        Ok(w)
    }

    pub fn with_copies(mut self, l_min: i64, l_max: i64) -> Result<Self> {
        self.copies = Some((l_min, l_max));
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        check_q(&self.q_value)?;
        if self.n_max == 0 {
            return Err(Error::Window("n_max must be positive".into()));
        }
        if !(self.k_min < 0 && 0 < self.k_max) {
            return Err(Error::Window(format!(
                "need k_min < 0 < k_max, got [{}, {}]",
                self.k_min, self.k_max
            )));
        }
        if let Some((lo, hi)) = self.copies {
            if lo > hi {
                return Err(Error::Window(format!("empty copy range [{lo}, {hi}]")));
            }
        }
        Ok(())
    }

    pub fn q(&self) -> f64 {
        rational_to_f64(&self.q_value)
    }

    pub fn k_len(&self) -> usize {
        (self.k_max - self.k_min + 1) as usize
    }

    pub fn l_range(&self) -> (i64, i64) {
        self.copies.unwrap_or((0, 0))
    }

    pub fn l_len(&self) -> usize {
        let (lo, hi) = self.l_range();
        (hi - lo + 1) as usize
    }

    pub fn describe(&self) -> String {
        let mut s = format!(
            "q={} n<{} k in [{}, {}]",
            fmt_rational(&self.q_value),
            self.n_max,
            self.k_min,
            self.k_max
        );
        if let Some((lo, hi)) = self.copies {
            s.push_str(&format!(" l in [{lo}, {hi}]"));
        }
        s
    }
}

/// A basis vector: either in the finite `v`-sector or `e_{nkl}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Site {
    G(usize),
    H { n: usize, k: i64, l: i64 },
}

/// Index map of the Hilbert space `G ⊕ H` restricted to a window.
#[derive(Clone, Debug, PartialEq)]
pub struct Layout {
    pub window: LatticeWindow,
    pub g_dim: usize,
}

impl Layout {
    pub fn new(window: LatticeWindow, g_dim: usize) -> Self {
        Self { window, g_dim }
    }

    pub fn dim(&self) -> usize {
        self.g_dim + self.window.n_max * self.window.k_len() * self.window.l_len()
    }

    pub fn index(&self, site: Site) -> Option<usize> {
        let w = &self.window;
        match site {
            Site::G(i) => (i < self.g_dim).then_some(i),
            Site::H { n, k, l } => {
                let (lo, hi) = w.l_range();
                if n >= w.n_max || k < w.k_min || k > w.k_max || l < lo || l > hi {
                    return None;
                }
                let kk = (k - w.k_min) as usize;
                let ll = (l - lo) as usize;
                Some(self.g_dim + (ll * w.n_max + n) * w.k_len() + kk)
            }
        }
    }

    pub fn site(&self, idx: usize) -> Site {
        if idx < self.g_dim {
            return Site::G(idx);
        }
        let w = &self.window;
        let r = idx - self.g_dim;
        let kk = r % w.k_len();
        let rest = r / w.k_len();
        let n = rest % w.n_max;
        let ll = rest / w.n_max;
        Site::H {
            n,
            k: w.k_min + kk as i64,
            l: w.l_range().0 + ll as i64,
        }
    }

    pub fn sites(&self) -> impl Iterator<Item = Site> + '_ {
        (0..self.dim()).map(|i| self.site(i))
    }
}

/// Source vectors at lattice distance at least `radius` from every
/// truncated boundary. `n = 0` is a genuine boundary and needs no margin.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InteriorMask {
    pub radius: [usize; 2],
    pub n_hi: usize,
    pub k_lo: i64,
    pub k_hi: i64,
    pub l_lo: i64,
    pub l_hi: i64,
}

impl InteriorMask {
    pub fn contains(&self, site: Site) -> bool {
        match site {
            Site::G(_) => true,
            Site::H { n, k, l } => {
                n <= self.n_hi
                    && (self.k_lo..=self.k_hi).contains(&k)
                    && (self.l_lo..=self.l_hi).contains(&l)
            }
        }
    }

    /// Indices of the masked source vectors.
    pub fn indices(&self, layout: &Layout) -> Vec<usize> {
        (0..layout.dim())
            .filter(|&i| self.contains(layout.site(i)))
            .collect()
    }
}

/// Builds the interior mask for an identity whose longest operator word
/// moves at most `radius = [Δn, Δk]`.
pub fn interior_mask(window: &LatticeWindow, radius: [usize; 2]) -> Result<InteriorMask> {
    let [rn, rk] = radius;
    let empty = || {
        Error::Window(format!(
            "interior mask of radius ({rn}, {rk}) is empty for {}; enlarge the window",
            window.describe()
        ))
    };
    if rn >= window.n_max {
        return Err(empty());
    }
    let rk = rk as i64;
    let (k_lo, k_hi) = (window.k_min + rk, window.k_max - rk);
    if k_lo > k_hi {
        return Err(empty());
    }
    let (l_lo, l_hi) = match window.copies {
        // Copy shifts never exceed the k-shift of the same word.
        Some((lo, hi)) => (lo + rk, hi - rk),
        None => (0, 0),
    };
    if l_lo > l_hi {
        return Err(empty());
    }
    Ok(InteriorMask {
        radius,
        n_hi: window.n_max - 1 - rn,
        k_lo,
        k_hi,
        l_lo,
        l_hi,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qscalar::parse_rational;

    fn win() -> LatticeWindow {
        LatticeWindow::new(12, -14, 14, parse_rational("1/2").unwrap()).unwrap()
    }

    #[test]
    fn index_round_trip() {
        let l = Layout::new(win().with_copies(-2, 3).unwrap(), 2);
        for i in 0..l.dim() {
            assert_eq!(l.index(l.site(i)), Some(i));
        }
        assert_eq!(l.index(Site::H { n: 12, k: 0, l: 0 }), None);
    }

    #[test]
    fn masks() {
        let m = interior_mask(&win(), [6, 6]).unwrap();
        assert_eq!((m.n_hi, m.k_lo, m.k_hi), (5, -8, 8));
        assert!(matches!(interior_mask(&win(), [0, 15]), Err(Error::Window(_))));
        assert!(LatticeWindow::new(4, 0, 3, parse_rational("1/2").unwrap()).is_err());
    }
}
