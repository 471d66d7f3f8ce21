//! Truncated formal Laurent series with exact rational coefficients.
//!
//! Every series tracks which coefficients are guaranteed correct. A value
//! stores a coefficient window `[lo, hi]` plus a knowledge side:
//!
//! * `Above`  — every exponent above `hi` is exactly zero, everything below
//!   `lo` is unknown. Cauchy-transform shapes (`G`, `H`, `F`, subordination
//!   and theta series) live here.
//! * `Below`  — every exponent below `lo` is exactly zero, everything above
//!   `hi` is unknown. `R`/`K`-transform shapes live here.
//! * `Exact`  — a Laurent polynomial, fully known.
//!
//! Arithmetic propagates the guaranteed-correct window through every
//! operation; composition and division consume order. Reading outside the
//! window raises an order error instead of silently returning garbage.
//! This bookkeeping is the main correctness hazard in series code, so it is
//! centralized here and nothing else in the crate touches coefficients
//! directly.

mod transforms;

pub use transforms::{
    cauchy_from_moments, cumulants_from_z_series, h_coeffs_combinatorial, h_series_combinatorial,
    h_transform_analytic, h_transform_quotient_form, inf_cauchy_from_moments, k_from_moments,
    markov_krein_inverse, moments_from_cauchy, moments_from_k, subordination_add, theta,
    theta_compose_atomic, z_series_from_cumulants, z_series_pole, CauchySeriesJson, ZSeriesJson,
};

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{q_pow, Q};

/// Which side of the coefficient window is exactly zero.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Know {
    Exact,
    /// Zero above the window; unknown below.
    Above,
    /// Zero below the window; unknown above.
    Below,
}

/// A truncated formal Laurent series in `z`.
#[derive(Clone, Debug)]
pub struct Series {
    lo: i64,
    coeffs: Vec<Q>,
    know: Know,
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.iter() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})z^{}", crate::scalar::format_q(c), k)?;
        }
        if first {
            write!(f, "0")?;
        }
        match self.know {
            Know::Exact => Ok(()),
            Know::Above => write!(f, " + O(z^{})", self.lo - 1),
            Know::Below => write!(f, " + O(z^{})", self.hi() + 1),
        }
    }
}

impl Series {
    /// The exact zero series.
    pub fn zero() -> Series {
        Series {
            lo: 0,
            coeffs: vec![Q::zero()],
            know: Know::Exact,
        }
    }

    /// The exact monomial `c * z^k`.
    pub fn monomial(k: i64, c: Q) -> Series {
        Series {
            lo: k,
            coeffs: vec![c],
            know: Know::Exact,
        }
    }

    /// The exact constant `c`.
    pub fn constant(c: Q) -> Series {
        Series::monomial(0, c)
    }

    /// Builds from a window of coefficients; `coeffs[i]` is the coefficient
    /// of `z^{lo+i}`.
    pub fn from_window(lo: i64, coeffs: Vec<Q>, know: Know) -> Series {
        assert!(!coeffs.is_empty(), "series window must be non-empty");
        Series { lo, coeffs, know }
    }

    pub fn know(&self) -> Know {
        self.know
    }

    /// Lowest stored exponent.
    pub fn lo(&self) -> i64 {
        self.lo
    }

    /// Highest stored exponent.
    pub fn hi(&self) -> i64 {
        self.lo + self.coeffs.len() as i64 - 1
    }

    /// Is the coefficient of `z^k` determined?
    pub fn is_known(&self, k: i64) -> bool {
        match self.know {
            Know::Exact => true,
            Know::Above => k >= self.lo,
            Know::Below => k <= self.hi(),
        }
    }

    /// Coefficient of `z^k`; errors when `k` lies in the unknown region.
    pub fn coeff(&self, k: i64) -> Result<Q> {
        if !self.is_known(k) {
            return Err(Error::Order(format!(
                "coefficient of z^{k} is beyond the guaranteed window [{}..{}] ({:?})",
                self.lo,
                self.hi(),
                self.know
            )));
        }
        if k < self.lo || k > self.hi() {
            return Ok(Q::zero());
        }
        Ok(self.coeffs[(k - self.lo) as usize].clone())
    }

    fn at(&self, k: i64) -> Option<&Q> {
        static ZERO: std::sync::OnceLock<Q> = std::sync::OnceLock::new();
        if k >= self.lo && k <= self.hi() {
            return Some(&self.coeffs[(k - self.lo) as usize]);
        }
        if self.is_known(k) {
            return Some(ZERO.get_or_init(Q::zero));
        }
        None
    }

    /// Iterates stored `(exponent, coefficient)` pairs, ascending.
    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (i64, &Q)> {
        let lo = self.lo;
        self.coeffs.iter().enumerate().map(move |(i, c)| (lo + i as i64, c))
    }

    /// Drops zero coefficients on the exact side(s) of the window.
    pub fn trimmed(mut self) -> Series {
        let trim_top = matches!(self.know, Know::Exact | Know::Above);
        let trim_bot = matches!(self.know, Know::Exact | Know::Below);
        if trim_top {
            while self.coeffs.len() > 1 && self.coeffs.last().unwrap().is_zero() {
                self.coeffs.pop();
            }
        }
        if trim_bot {
            let skip = self
                .coeffs
                .iter()
                .take_while(|c| c.is_zero())
                .count()
                .min(self.coeffs.len() - 1);
            if skip > 0 {
                self.coeffs.drain(..skip);
                self.lo += skip as i64;
            }
        }
        self
    }

    fn is_exact_zero(&self) -> bool {
        self.know == Know::Exact && self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Turns an exact value into a one-sided truncated one with the given
    /// knowledge frontier, padding the window with explicit zeros. A value
    /// already truncated on that side is returned unchanged; crossing sides
    /// is a programming error.
    pub fn weaken(mut self, know: Know, frontier: i64) -> Series {
        match (self.know, know) {
            (_, Know::Exact) => self,
            (Know::Above, Know::Above) | (Know::Below, Know::Below) => self,
            (Know::Exact, Know::Above) => {
                while self.lo > frontier {
                    self.coeffs.insert(0, Q::zero());
                    self.lo -= 1;
                }
                self.know = Know::Above;
                self
            }
            (Know::Exact, Know::Below) => {
                while self.hi() < frontier {
                    self.coeffs.push(Q::zero());
                }
                self.know = Know::Below;
                self
            }
            _ => panic!("cannot weaken across truncation sides"),
        }
    }

    pub fn neg(&self) -> Series {
        Series {
            lo: self.lo,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            know: self.know,
        }
    }

    pub fn scale(&self, c: &Q) -> Series {
        if c.is_zero() {
            return Series::zero();
        }
        Series {
            lo: self.lo,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
            know: self.know,
        }
    }

    /// Multiplies by `z^delta`.
    pub fn shift_exponents(&self, delta: i64) -> Series {
        Series {
            lo: self.lo + delta,
            coeffs: self.coeffs.clone(),
            know: self.know,
        }
    }

    /// Substitutes `z -> t z`: `c_k -> t^k c_k`.
    pub fn scale_argument(&self, t: &Q) -> Result<Series> {
        if t.is_zero() {
            return Err(Error::Singular("argument scaling by zero".into()));
        }
        let coeffs = self
            .iter()
            .map(|(k, c)| Ok(c * q_pow(t, k)?))
            .collect::<Result<Vec<_>>>()?;
        Ok(Series {
            lo: self.lo,
            coeffs,
            know: self.know,
        })
    }

    pub fn add(&self, other: &Series) -> Result<Series> {
        use Know::*;
        let know = match (self.know, other.know) {
            (Exact, k) | (k, Exact) => k,
            (Above, Above) => Above,
            (Below, Below) => Below,
            (Above, Below) | (Below, Above) => {
                return Err(Error::Order(
                    "sum of series truncated on opposite sides".into(),
                ))
            }
        };
        // knowledge interval of the sum
        let lo = match know {
            Exact | Below => self.lo.min(other.lo),
            Above => {
                let mut m = i64::MIN;
                if self.know == Above {
                    m = m.max(self.lo);
                }
                if other.know == Above {
                    m = m.max(other.lo);
                }
                m
            }
        };
        let hi = match know {
            Exact => self.hi().max(other.hi()),
            Above => self.hi().max(other.hi()),
            Below => {
                let mut m = i64::MAX;
                if self.know == Below {
                    m = m.min(self.hi());
                }
                if other.know == Below {
                    m = m.min(other.hi());
                }
                m
            }
        };
        if lo > hi {
            return Err(Error::Order("sum has an empty guaranteed window".into()));
        }
        let coeffs = (lo..=hi)
            .map(|k| {
                let a = self.at(k).expect("window chosen inside knowledge");
                let b = other.at(k).expect("window chosen inside knowledge");
                a + b
            })
            .collect();
        Ok(Series { lo, coeffs, know })
    }

    pub fn sub(&self, other: &Series) -> Result<Series> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Series) -> Result<Series> {
        use Know::*;
        let a = self.clone().trimmed();
        let b = other.clone().trimmed();
        if a.is_exact_zero() || b.is_exact_zero() {
            return Ok(Series::zero());
        }
        // support bounds: None = unbounded on that side
        let supp_hi = |s: &Series| match s.know {
            Below => None,
            _ => Some(s.hi()),
        };
        let supp_lo = |s: &Series| match s.know {
            Above => None,
            _ => Some(s.lo),
        };
        if (supp_lo(&a).is_none() && supp_hi(&b).is_none())
            || (supp_lo(&b).is_none() && supp_hi(&a).is_none())
        {
            return Err(Error::Order(
                "product of series truncated on opposite sides".into(),
            ));
        }
        let know = match (a.know, b.know) {
            (Exact, Exact) => Exact,
            (Above, _) | (_, Above) => Above,
            (Below, _) | (_, Below) => Below,
        };
        let (lo, hi) = match know {
            Exact => (a.lo + b.lo, a.hi() + b.hi()),
            Above => {
                let hi = a.hi() + b.hi();
                let mut lo = i64::MIN;
                if a.know == Above {
                    lo = lo.max(a.lo + b.hi());
                }
                if b.know == Above {
                    lo = lo.max(b.lo + a.hi());
                }
                (lo, hi)
            }
            Below => {
                let lo = a.lo + b.lo;
                let mut hi = i64::MAX;
                if a.know == Below {
                    hi = hi.min(a.hi() + b.lo);
                }
                if b.know == Below {
                    hi = hi.min(b.hi() + a.lo);
                }
                (lo, hi)
            }
        };
        if lo > hi {
            return Err(Error::Order("product has an empty guaranteed window".into()));
        }
        let mut coeffs = vec![Q::zero(); (hi - lo + 1) as usize];
        for (i, ca) in a.iter() {
            if ca.is_zero() {
                continue;
            }
            for (j, cb) in b.iter() {
                let k = i + j;
                if k < lo || k > hi || cb.is_zero() {
                    continue;
                }
                coeffs[(k - lo) as usize] += ca * cb;
            }
        }
        Ok(Series { lo, coeffs, know })
    }

    /// Multiplicative inverse. The leading term is read off the exact side;
    /// a leading exponent `m != 0` costs `2|m|` orders of precision.
    pub fn recip(&self) -> Result<Series> {
        let s = self.clone().trimmed();
        match s.know {
            Know::Below => recip_directed(&s, false),
            Know::Above => recip_directed(&s, true),
            Know::Exact => {
                if s.coeffs.len() == 1 {
                    let c = &s.coeffs[0];
                    if c.is_zero() {
                        return Err(Error::Singular("reciprocal of zero".into()));
                    }
                    return Ok(Series::monomial(-s.lo, c.recip()));
                }
                Err(Error::Order(
                    "reciprocal of an exact Laurent polynomial is an infinite series; \
                     weaken it to a truncated side first"
                        .into(),
                ))
            }
        }
    }

    pub fn div(&self, other: &Series) -> Result<Series> {
        self.mul(&other.recip()?)
    }

    /// Formal derivative `d/dz`.
    pub fn derivative(&self) -> Series {
        let coeffs = self
            .iter()
            .map(|(k, c)| c * crate::scalar::q_int(k))
            .collect();
        Series {
            lo: self.lo - 1,
            coeffs,
            know: self.know,
        }
    }

    /// Integer power.
    pub fn pow(&self, e: i64) -> Result<Series> {
        if e == 0 {
            return Ok(Series::constant(Q::one()));
        }
        let base = if e < 0 { self.recip()? } else { self.clone() };
        let mut acc = base.clone();
        for _ in 1..e.abs() {
            acc = acc.mul(&base)?;
        }
        Ok(acc)
    }

    /// Leading exponent read off the exact side (after trimming).
    pub fn leading_exponent(&self) -> Result<i64> {
        let s = self.clone().trimmed();
        let found = match s.know {
            Know::Below | Know::Exact => s.iter().find(|(_, c)| !c.is_zero()).map(|(k, _)| k),
            Know::Above => s.iter().rev().find(|(_, c)| !c.is_zero()).map(|(k, _)| k),
        };
        found.ok_or_else(|| Error::Singular("leading exponent of (known-)zero series".into()))
    }

    /// Composition `self(inner(z))` for inner series with leading exponent
    /// `+1` or `-1`. The guaranteed window is propagated through every term
    /// and shrunk for the truncated tail of the outer series.
    pub fn compose(&self, inner: &Series) -> Result<Series> {
        let outer = self.clone().trimmed();
        let inner = inner.clone().trimmed();
        let e = inner.leading_exponent()?;
        if e != 1 && e != -1 {
            return Err(Error::Order(format!(
                "composition requires inner leading exponent ±1, got {e}"
            )));
        }
        if outer.know == Know::Below && e == 1 {
            return Err(Error::Order(
                "cannot compose a series truncated above with an argument that grows like z"
                    .into(),
            ));
        }
        let (k0, k1) = (outer.lo, outer.hi());
        let mut acc = Series::zero();
        let mut power: Option<Series> = None; // inner^k, built incrementally
        for k in k0..=k1 {
            let c = outer.coeff(k)?;
            let p = match &power {
                None => {
                    let p = inner.pow(k)?;
                    power = Some(p.clone());
                    p
                }
                Some(prev) => {
                    let p = prev.mul(&inner)?;
                    power = Some(p.clone());
                    p
                }
            };
            if c.is_zero() {
                continue;
            }
            acc = acc.add(&p.scale(&c))?;
        }
        // cut for the unknown tail of the outer series
        if outer.know != Know::Exact {
            let ku = if outer.know == Know::Above { k0 - 1 } else { k1 + 1 };
            let p0 = e * ku;
            let cut_lo = (outer.know == Know::Above && e == 1)
                || (outer.know == Know::Below && e == -1);
            acc = match acc.know {
                Know::Exact => {
                    // all evaluated terms were constants; keep only what the
                    // unevaluated tail cannot pollute
                    if cut_lo {
                        let new_lo = p0 + 1;
                        let hi = acc.hi().max(new_lo);
                        let coeffs = (new_lo..=hi).map(|k| acc.coeff(k).unwrap()).collect();
                        Series {
                            lo: new_lo,
                            coeffs,
                            know: Know::Above,
                        }
                    } else {
                        let new_hi = p0 - 1;
                        let lo = acc.lo().min(new_hi);
                        let coeffs = (lo..=new_hi).map(|k| acc.coeff(k).unwrap()).collect();
                        Series {
                            lo,
                            coeffs,
                            know: Know::Below,
                        }
                    }
                }
                Know::Above => {
                    if p0 + 1 > acc.hi() {
                        return Err(Error::Order("composition lost the whole window".into()));
                    }
                    if p0 + 1 > acc.lo {
                        let drop = (p0 + 1 - acc.lo) as usize;
                        let mut a = acc;
                        a.coeffs.drain(..drop);
                        a.lo = p0 + 1;
                        a
                    } else {
                        acc
                    }
                }
                Know::Below => {
                    if p0 - 1 < acc.lo {
                        return Err(Error::Order("composition lost the whole window".into()));
                    }
                    if p0 - 1 < acc.hi() {
                        let keep = (p0 - 1 - acc.lo + 1) as usize;
                        let mut a = acc;
                        a.coeffs.truncate(keep);
                        a
                    } else {
                        acc
                    }
                }
            };
        }
        Ok(acc)
    }

    /// Do two series agree on every exponent in `range` (erroring if either
    /// is unknown somewhere in it)?
    pub fn agrees_on(&self, other: &Series, range: std::ops::RangeInclusive<i64>) -> Result<bool> {
        for k in range {
            if self.coeff(k)? != other.coeff(k)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn recip_directed(s: &Series, above: bool) -> Result<Series> {
    // leading coefficient from the exact side
    let lead = if above {
        s.iter().rev().find(|(_, c)| !c.is_zero())
    } else {
        s.iter().find(|(_, c)| !c.is_zero())
    };
    let (m, c) = match lead {
        Some((k, c)) => (k, c.clone()),
        None => {
            return Err(Error::Singular(
                "reciprocal of a series that is zero to its known order".into(),
            ))
        }
    };
    // relative coefficients t_j = a_{m ± j}/c, t_0 = 1
    let width = if above { m - s.lo } else { s.hi() - m } as usize;
    let mut t = Vec::with_capacity(width + 1);
    for j in 0..=width as i64 {
        let k = if above { m - j } else { m + j };
        t.push(s.coeff(k)? / &c);
    }
    // invert 1 + t_1 x + t_2 x^2 + ...
    let mut inv = vec![Q::one()];
    for j in 1..=width {
        let mut acc = Q::zero();
        for i in 1..=j {
            acc += &t[i] * &inv[j - i];
        }
        inv.push(-acc);
    }
    // absolute exponents: -m -+ j
    let coeffs: Vec<Q> = inv.into_iter().map(|v| v / &c).collect();
    if above {
        // exponents -m, -m-1, ..., -m-width  => window [-m-width, -m]
        Ok(Series {
            lo: -m - width as i64,
            coeffs: coeffs.into_iter().rev().collect(),
            know: Know::Above,
        })
    } else {
        Ok(Series {
            lo: -m,
            coeffs,
            know: Know::Below,
        })
    }
}
