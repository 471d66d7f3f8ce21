//! The transform zoo: Cauchy/K/R series, the H-transform in both its
//! combinatorial and analytic forms, Markov-Krein inversion, theta, and
//! additive subordination — all as truncated formal series.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{Know, Series};
use crate::combinat::enum_annular;
use crate::error::{Error, Result};
use crate::scalar::{format_q, parse_q, q_int, q_ratio, Q};

/// `G = 1/z + sum m_n z^{-n-1}` from `m[n-1] = m_n`; window `[-N-1, -1]`.
pub fn cauchy_from_moments(m: &[Q]) -> Series {
    let n = m.len() as i64;
    let mut coeffs: Vec<Q> = m.iter().rev().cloned().collect();
    coeffs.push(Q::one());
    Series::from_window(-n - 1, coeffs, Know::Above)
}

/// `g = sum m'_n z^{-n-1}` (no `1/z` term) for infinitesimal moments.
pub fn inf_cauchy_from_moments(mprime: &[Q]) -> Series {
    let n = mprime.len() as i64;
    let mut coeffs: Vec<Q> = mprime.iter().rev().cloned().collect();
    coeffs.push(Q::zero());
    Series::from_window(-n - 1, coeffs, Know::Above)
}

/// Reads `m_1 .. m_order` back out of a Cauchy-type series.
pub fn moments_from_cauchy(g: &Series, order: usize) -> Result<Vec<Q>> {
    (1..=order as i64).map(|n| g.coeff(-n - 1)).collect()
}

/// `R = sum r_n z^{n-1}` from `r[n-1] = r_n`; window `[0, N-1]`.
pub fn z_series_from_cumulants(r: &[Q]) -> Series {
    Series::from_window(0, r.to_vec(), Know::Below)
}

/// `K = 1/z + sum r_n z^{n-1}`; window `[-1, N-1]`.
pub fn z_series_pole(r: &[Q]) -> Series {
    let mut coeffs = vec![Q::one()];
    coeffs.extend(r.iter().cloned());
    Series::from_window(-1, coeffs, Know::Below)
}

/// Reads `r_1 .. r_order` out of an `R`- or `K`-type series.
pub fn cumulants_from_z_series(s: &Series, order: usize) -> Result<Vec<Q>> {
    (1..=order as i64).map(|n| s.coeff(n - 1)).collect()
}

/// Free cumulants from moments through the functional relation
/// `K(G(z)) = z`, peeled off order by order. The non-crossing lattice route
/// lives in `freeprob`; the two must agree exactly.
pub fn k_from_moments(m: &[Q]) -> Result<Series> {
    let order = m.len();
    let g = cauchy_from_moments(m);
    let f = g.recip()?;
    // K(G) = z  <=>  sum_{n>=1} r_n G^{n-1} = z - 1/G
    let mut residual = Series::monomial(1, Q::one()).sub(&f)?;
    let mut power = Series::constant(Q::one());
    let mut r = Vec::with_capacity(order);
    for n in 1..=order as i64 {
        let rn = residual.coeff(-(n - 1))?;
        residual = residual.sub(&power.scale(&rn))?;
        r.push(rn);
        power = power.mul(&g)?;
    }
    Ok(z_series_pole(&r))
}

/// Moments from a `K`-type series through `G(K(z)) = z`.
pub fn moments_from_k(k: &Series, order: usize) -> Result<Vec<Q>> {
    let f = k.recip()?; // power series starting at z
    let mut residual = Series::monomial(1, Q::one()).sub(&f)?;
    let k_inv = k.recip()?;
    let mut power = k_inv.pow(2)?;
    let mut m = Vec::with_capacity(order);
    for n in 1..=order as i64 {
        let mn = residual.coeff(n + 1)?;
        residual = residual.sub(&power.scale(&mn))?;
        m.push(mn);
        power = power.mul(&k_inv)?;
    }
    Ok(m)
}

/// Analytic H-transform `H = -F''/(2F')` with `F = 1/G`.
pub fn h_transform_analytic(g: &Series) -> Result<Series> {
    let f = g.recip()?;
    let fp = f.derivative();
    let fpp = fp.derivative();
    fpp.neg().mul(&fp.recip()?)?.mul(&Series::constant(q_ratio(1, 2)))
}

/// The equivalent quotient form `H = G'/G - G''/(2G')`.
pub fn h_transform_quotient_form(g: &Series) -> Result<Series> {
    let gp = g.derivative();
    let gpp = gp.derivative();
    let first = gp.mul(&g.recip()?)?;
    let second = gpp.mul(&gp.recip()?)?.scale(&q_ratio(1, 2));
    first.sub(&second)
}

/// Exact combinatorial H-coefficients
/// `h_n = (n/2) sum_{t+s=n} sum_{sigma in S_NC(t,s)} r_sigma / (t s)`;
/// returns `h_1 .. h_order` (with `h_1 = 0`).
pub fn h_coeffs_combinatorial(r: &[Q], order: usize) -> Result<Vec<Q>> {
    if order > r.len() {
        return Err(Error::Order(format!(
            "need {order} cumulants, have {}",
            r.len()
        )));
    }
    let mut out = vec![Q::zero()];
    for n in 2..=order {
        let mut acc = Q::zero();
        for t in 1..n {
            let s = n - t;
            let mut annular = Q::zero();
            for sigma in enum_annular(t, s)?.iter() {
                let mut prod = Q::one();
                for len in sigma.cycle_lengths() {
                    prod *= &r[len - 1];
                }
                annular += prod;
            }
            acc += annular / q_int((t * s) as i64);
        }
        out.push(acc * q_ratio(n as i64, 2));
    }
    Ok(out)
}

/// H-series from cumulants via the annular sums.
pub fn h_series_combinatorial(r: &[Q], order: usize) -> Result<Series> {
    let h = h_coeffs_combinatorial(r, order)?;
    Ok(inf_cauchy_from_moments(&h))
}

/// Inverse Markov-Krein transform at series level: `-G'/G`.
pub fn markov_krein_inverse(g: &Series) -> Result<Series> {
    g.derivative().neg().mul(&g.recip()?)
}

/// `theta = G/(G - 1/z)`; requires `m_1 != 0`, grows like `z/m_1`.
pub fn theta(g: &Series) -> Result<Series> {
    let m1 = g.coeff(-2)?;
    if m1.is_zero() {
        return Err(Error::Singular(
            "theta transform needs m_1 != 0 (law distinct from delta_0)".into(),
        ));
    }
    let den = g.sub(&Series::monomial(-1, Q::one()))?;
    g.mul(&den.recip()?)
}

/// `sum_k w_k / (theta(z) - a_k)` for an atomic outer law
/// `nu' = sum w_k delta_{a_k}`. Composition of a general truncated series
/// into theta is deliberately not offered; the atomic case covers every use.
pub fn theta_compose_atomic(atoms: &[(Q, Q)], theta: &Series) -> Result<Series> {
    let mut acc = Series::zero();
    for (weight, atom) in atoms {
        let shifted = theta.sub(&Series::constant(atom.clone()))?;
        acc = acc.add(&shifted.recip()?.scale(weight))?;
    }
    Ok(acc)
}

/// Additive subordination data: `omega_1 = K_mu(G_conv)`, `omega_2 = K_nu(G_conv)`.
pub struct Subordination {
    pub omega1: Series,
    pub omega2: Series,
    /// `G_{mu boxplus nu}`.
    pub g_conv: Series,
    /// moments of `mu boxplus nu`
    pub m_conv: Vec<Q>,
}

/// Subordination for free additive convolution, built from moment sequences.
pub fn subordination_add(m_mu: &[Q], m_nu: &[Q]) -> Result<Subordination> {
    let order = m_mu.len().min(m_nu.len());
    let k_mu = k_from_moments(&m_mu[..order])?;
    let k_nu = k_from_moments(&m_nu[..order])?;
    let r_mu = cumulants_from_z_series(&k_mu, order)?;
    let r_nu = cumulants_from_z_series(&k_nu, order)?;
    let r_sum: Vec<Q> = r_mu.iter().zip(&r_nu).map(|(a, b)| a + b).collect();
    let m_conv = moments_from_k(&z_series_pole(&r_sum), order)?;
    let g_conv = cauchy_from_moments(&m_conv);
    let omega1 = k_mu.compose(&g_conv)?;
    let omega2 = k_nu.compose(&g_conv)?;
    Ok(Subordination {
        omega1,
        omega2,
        g_conv,
        m_conv,
    })
}

/// JSON form of a Cauchy-type (Laurent) series: `coeffs[i]` is the
/// coefficient of `z^{-i-1}`, `top` the coefficient of `z`, `const` the
/// constant term; `top`/`const` are omitted when zero.
#[derive(Serialize, Deserialize)]
pub struct CauchySeriesJson {
    pub order: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub top: Option<String>,
    #[serde(rename = "const", skip_serializing_if = "Option::is_none", default)]
    pub r#const: Option<String>,
    pub coeffs: Vec<String>,
}

impl CauchySeriesJson {
    pub fn from_series(s: &Series, order: usize) -> Result<Self> {
        let top = s.coeff(1)?;
        let cst = s.coeff(0)?;
        let coeffs = (1..=order as i64 + 1)
            .map(|i| Ok(format_q(&s.coeff(-i)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(CauchySeriesJson {
            order,
            top: (!top.is_zero()).then(|| format_q(&top)),
            r#const: (!cst.is_zero()).then(|| format_q(&cst)),
            coeffs,
        })
    }

    pub fn to_series(&self) -> Result<Series> {
        if self.coeffs.len() != self.order + 1 {
            return Err(Error::Parse(format!(
                "series order {} needs {} coefficients, got {}",
                self.order,
                self.order + 1,
                self.coeffs.len()
            )));
        }
        let mut coeffs = Vec::with_capacity(self.order + 3);
        for c in self.coeffs.iter().rev() {
            coeffs.push(parse_q(c)?);
        }
        coeffs.push(match &self.r#const {
            Some(c) => parse_q(c)?,
            None => Q::zero(),
        });
        coeffs.push(match &self.top {
            Some(c) => parse_q(c)?,
            None => Q::zero(),
        });
        Ok(Series::from_window(
            -(self.order as i64) - 1,
            coeffs,
            Know::Above,
        ))
    }
}

/// JSON form of an `R`/`K`-type series: `coeffs[i]` is `r_{i+1}`, the
/// coefficient of `z^i`; `pole` is the coefficient of `1/z`, omitted when zero.
#[derive(Serialize, Deserialize)]
pub struct ZSeriesJson {
    pub order: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub pole: Option<String>,
    pub coeffs: Vec<String>,
}

impl ZSeriesJson {
    pub fn from_series(s: &Series, order: usize) -> Result<Self> {
        let pole = s.coeff(-1)?;
        let coeffs = (0..order as i64)
            .map(|i| Ok(format_q(&s.coeff(i)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(ZSeriesJson {
            order,
            pole: (!pole.is_zero()).then(|| format_q(&pole)),
            coeffs,
        })
    }

    pub fn to_series(&self) -> Result<Series> {
        if self.coeffs.len() != self.order {
            return Err(Error::Parse(format!(
                "z-series order {} needs {} coefficients, got {}",
                self.order,
                self.order,
                self.coeffs.len()
            )));
        }
        let mut coeffs = vec![match &self.pole {
            Some(c) => parse_q(c)?,
            None => Q::zero(),
        }];
        for c in &self.coeffs {
            coeffs.push(parse_q(c)?);
        }
        Ok(Series::from_window(-1, coeffs, Know::Below))
    }
}
