//! Deterministic generators for the polynomial families whose `1/d`
//! behavior has closed-form answers, plus the principal-minor flow built
//! from repeated differentiation.

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::combinat::catalan;
use crate::error::{Error, Result};
use crate::finconv::derivative_poly;
use crate::freeprob::free_cumulants_from_moments;
use crate::infin::{moments_from_atilde_prefix, richardson_pair, Family, FluctMeta};
use crate::poly::MonicPoly;
use crate::scalar::{binomial, falling, q_int, q_pow, Q};
use crate::series::{markov_krein_inverse, moments_from_cauchy};

/// Hermite-type polynomials: the unique degree-`d` family with finite-free
/// cumulants exactly `(0, 1, 0, ..., 0)`; concretely the probabilists'
/// Hermite polynomials with roots shrunk by `1/sqrt(d)`, which keeps every
/// normalized coefficient rational: `a~_{2j} = (-1)^j (2j-1)!!/d^j`.
/// Limit: standard semicircle, zero cumulant fluctuations by construction.
pub fn hermite() -> Family {
    let atilde = |d: u64, m: usize| -> Result<Vec<Q>> {
        (0..=m)
            .map(|k| {
                if k % 2 == 1 {
                    return Ok(Q::zero());
                }
                let j = (k / 2) as u64;
                let mut odd_fact = Q::one();
                for i in 1..=j {
                    odd_fact *= q_int(2 * i as i64 - 1);
                }
                let v = odd_fact / q_pow(&q_int(d as i64), j as i64)?;
                Ok(if j.is_multiple_of(2) { v } else { -v })
            })
            .collect()
    };
    Family::new(
        "hermite",
        2,
        Arc::new(move |d| MonicPoly::new(atilde(d, d as usize)?)),
        Arc::new(atilde),
        Arc::new(move |order| {
            let mut k = vec![Q::zero(); order];
            if order >= 2 {
                k[1] = Q::one();
            }
            Ok(k)
        }),
        FluctMeta::ZeroRhat,
    )
}

/// Laguerre polynomials of parameter 1: `a~_i = (d)_i / d^i`, finite-free
/// cumulants exactly 1. Limit: Marchenko-Pastur of parameter 1.
pub fn laguerre() -> Family {
    let atilde = |d: u64, m: usize| -> Result<Vec<Q>> {
        (0..=m)
            .map(|i| Ok(falling(d, i as u64) / q_pow(&q_int(d as i64), i as i64)?))
            .collect()
    };
    Family::new(
        "laguerre",
        1,
        Arc::new(move |d| MonicPoly::new(atilde(d, d as usize)?)),
        Arc::new(atilde),
        Arc::new(|order| Ok(vec![Q::one(); order])),
        FluctMeta::ZeroRhat,
    )
}

/// The `⊠_d`-inverse of the Laguerre family: `a~_i = d^i / (d)_i`, so that
/// `p_d ⊠_d L_d = (x-1)^d`. Moments are exactly `(1, 0, 0, ...)`; the free
/// cumulants of the limit alternate as signed Catalan numbers.
pub fn laguerre_inverse() -> Family {
    let atilde = |d: u64, m: usize| -> Result<Vec<Q>> {
        (0..=m)
            .map(|i| {
                let f = falling(d, i as u64);
                if f.is_zero() {
                    return Err(Error::Invalid("prefix order exceeds degree".into()));
                }
                Ok(q_pow(&q_int(d as i64), i as i64)? / f)
            })
            .collect()
    };
    Family::new(
        "laguerre-inverse",
        1,
        Arc::new(move |d| MonicPoly::new(atilde(d, d as usize)?)),
        Arc::new(atilde),
        Arc::new(|order| {
            Ok((1..=order)
                .map(|n| {
                    let c = q_int(catalan(n as u64 - 1));
                    if n % 2 == 0 {
                        -c
                    } else {
                        c
                    }
                })
                .collect())
        }),
        FluctMeta::ZeroMprime,
    )
}

/// `(x-1)^i (x+1)^i` for even degree `d = 2i`: the symmetric Bernoulli
/// fixture with exactly constant moments (zero infinitesimal moments).
pub fn bernoulli_pair() -> Family {
    let atilde = |d: u64, m: usize| -> Result<Vec<Q>> {
        if !d.is_multiple_of(2) {
            return Err(Error::Invalid(format!(
                "bernoulli family needs even degree, got {d}"
            )));
        }
        let i = d / 2;
        (0..=m)
            .map(|k| {
                if k % 2 == 1 {
                    return Ok(Q::zero());
                }
                let v = binomial(i, k as u64 / 2) / binomial(d, k as u64);
                Ok(if (k / 2) % 2 == 0 { v } else { -v })
            })
            .collect()
    };
    Family::new(
        "bernoulli",
        2,
        Arc::new(move |d| MonicPoly::new(atilde(d, d as usize)?)),
        Arc::new(atilde),
        Arc::new(|order| {
            let m: Vec<Q> = (1..=order)
                .map(|n| if n % 2 == 0 { Q::one() } else { Q::zero() })
                .collect();
            free_cumulants_from_moments(&m)
        }),
        FluctMeta::ZeroMprime,
    )
}

/// `(x-alpha)^{d-s} (x-alpha_1) ... (x-alpha_s)`: a finite perturbation of a
/// Dirac point mass. `Delta_n(d)` is exactly constant in `d` and the
/// fluctuations are `rhat_n = sum_k (alpha_k - alpha)^n`.
pub fn dirac_perturbation(alpha: Q, deviations: Vec<Q>) -> Family {
    let s = deviations.len();
    // elementary symmetric functions of the deviation roots
    let mut e_dev = vec![Q::one()];
    for r in &deviations {
        e_dev.push(Q::zero());
        for k in (1..e_dev.len()).rev() {
            let add = &e_dev[k - 1] * r;
            e_dev[k] += add;
        }
    }
    let alpha_for_atilde = alpha.clone();
    let e_for_atilde = e_dev;
    let atilde = move |d: u64, m: usize| -> Result<Vec<Q>> {
        // e_k of (d-s copies of alpha) + deviations
        let alpha = &alpha_for_atilde;
        let e_dev = &e_for_atilde;
        (0..=m)
            .map(|k| {
                let mut acc = Q::zero();
                for j in 0..=k.min(e_dev.len() - 1) {
                    acc += &e_dev[j]
                        * binomial(d - s as u64, (k - j) as u64)
                        * q_pow(alpha, (k - j) as i64)?;
                }
                Ok(acc / binomial(d, k as u64))
            })
            .collect()
    };
    let alpha_for_gen = alpha.clone();
    let dev_for_gen = deviations.clone();
    let alpha_for_rhat = alpha.clone();
    let name = format!(
        "dirac-perturbation(alpha={}, s={s})",
        crate::scalar::format_q(&alpha)
    );
    Family::new(
        name,
        (s as u64).max(1),
        Arc::new(move |d| {
            let mut roots = vec![alpha_for_gen.clone(); d as usize - dev_for_gen.len()];
            roots.extend(dev_for_gen.iter().cloned());
            MonicPoly::from_roots(&roots)
        }),
        Arc::new(atilde),
        Arc::new(move |order| {
            let mut r = vec![Q::zero(); order];
            r[0] = alpha.clone();
            Ok(r)
        }),
        FluctMeta::Rhat(Arc::new(move |order| {
            (1..=order)
                .map(|n| {
                    let mut acc = Q::zero();
                    for a in &deviations {
                        acc += q_pow(&(a - &alpha_for_rhat), n as i64)?;
                    }
                    Ok(acc)
                })
                .collect()
        })),
    )
}

/// Looks a family up by its CLI name. Perturbation families are spelled
/// `dirac:<alpha>:<a1,a2,...>`.
pub fn by_name(name: &str) -> Result<Family> {
    match name {
        "hermite" => Ok(hermite()),
        "laguerre" => Ok(laguerre()),
        "laguerre-inverse" | "laguerre_inverse" => Ok(laguerre_inverse()),
        "bernoulli" => Ok(bernoulli_pair()),
        other => {
            if let Some(rest) = other.strip_prefix("dirac:") {
                let (alpha, roots) = rest.split_once(':').ok_or_else(|| {
                    Error::Parse("dirac family syntax: dirac:<alpha>:<a1,a2,...>".into())
                })?;
                let alpha = crate::scalar::parse_q(alpha)?;
                let devs = roots
                    .split(',')
                    .map(crate::scalar::parse_q)
                    .collect::<Result<Vec<_>>>()?;
                if devs.is_empty() {
                    return Err(Error::Parse("dirac family needs deviation roots".into()));
                }
                return Ok(dirac_perturbation(alpha, devs));
            }
            Err(Error::Parse(format!("unknown family {other:?}")))
        }
    }
}

/// Names accepted by [`by_name`] without parameters.
pub const FAMILY_NAMES: [&str; 4] = ["hermite", "laguerre", "laguerre-inverse", "bernoulli"];

/// The fluctuation flow `tau_d = d mu - (d-s) mu_{p_d^{(s)}}` built from
/// `s`-fold differentiation of a family.
pub struct PrincipalMinorFlow {
    parent: Family,
    s: usize,
    /// Differentiated family, reindexed so its degree-`d` member is
    /// `p_{d+s}^{(s)}/(d+s)_s`.
    pub derived: Family,
}

/// Derives the flow. The spectral identity
/// `d G_mu - (d-s) G_{p^{(s)}} = d (G_mu - G_{p ⊠ x^s(x-1)^{d-s}}) + s/z`
/// makes `tau_d` converge to `s delta-mass at the Markov-Krein side` minus
/// the infinitesimal part: `G_tau = -G_{mu'} - s G'_mu/G_mu`.
pub fn principal_minor_flow(parent: &Family, s: usize) -> Result<PrincipalMinorFlow> {
    let p_gen = parent.clone();
    let p_prefix = parent.clone();
    let p_limit = parent.clone();
    let p_fluct = parent.clone();
    let derived = Family::new(
        format!("{}^({s})", parent.name),
        parent.min_degree.max(1),
        Arc::new(move |d| derivative_poly(&p_gen.generate(d + s as u64)?, s)),
        // monic-normalized differentiation truncates the a~ vector
        Arc::new(move |d, m| p_prefix.atilde_prefix(d + s as u64, m)),
        Arc::new(move |order| Ok(p_limit.limit_law(order)?.cumulants().to_vec())),
        FluctMeta::Rhat(Arc::new(move |order| {
            // t = 1, alpha = -s in the differentiation fluctuation rule
            let base = p_fluct.meta_fluct_law(order)?;
            let r = base.base.cumulants();
            Ok((1..=order)
                .map(|n| {
                    &base.rhat()[n - 1]
                        - q_int(s as i64) * q_int(n as i64 - 1) * &r[n - 1]
                })
                .collect())
        })),
    );
    Ok(PrincipalMinorFlow {
        parent: parent.clone(),
        s,
        derived,
    })
}

impl PrincipalMinorFlow {
    /// Exact `m_1..m_order` of `tau_d = d mu - (d-s) mu_{p_d^{(s)}}`.
    pub fn tau_moments_at(&self, d: u64, order: usize) -> Result<Vec<Q>> {
        if (self.s as u64) >= d {
            return Err(Error::Invalid(format!(
                "cannot differentiate degree {d} polynomials {} times",
                self.s
            )));
        }
        let limit = self.parent.limit_law(order)?;
        let atilde = self.parent.atilde_prefix(d, order)?;
        let deriv_m = moments_from_atilde_prefix(d - self.s as u64, &atilde, order)?;
        let d_q = q_int(d as i64);
        let j_q = q_int((d - self.s as u64) as i64);
        Ok((1..=order)
            .map(|n| &d_q * &limit.moments()[n - 1] - &j_q * &deriv_m[n - 1])
            .collect())
    }

    /// The limit of `tau_d`: coefficients of `-G_{mu'} - s G'_mu/G_mu`.
    pub fn tau_limit(&self, order: usize) -> Result<Vec<Q>> {
        let inf = self.parent.meta_inf_law(order)?;
        let mk = markov_krein_inverse(&inf.base.cauchy())?;
        let mk_m = moments_from_cauchy(&mk, order)?;
        let s_q = q_int(self.s as i64);
        Ok((1..=order)
            .map(|n| -&inf.mprime()[n - 1] + &s_q * &mk_m[n - 1])
            .collect())
    }

    /// Richardson-extrapolates the tau ladder and returns
    /// `(estimate, predicted)` per moment index.
    pub fn tau_ladder_check(&self, ladder: &[u64], order: usize) -> Result<Vec<(Q, Q)>> {
        if ladder.len() < 2 || !ladder.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::Invalid("ladder must be increasing, length >= 2".into()));
        }
        let predicted = self.tau_limit(order)?;
        let lo = self.tau_moments_at(ladder[ladder.len() - 2], order)?;
        let hi = self.tau_moments_at(ladder[ladder.len() - 1], order)?;
        Ok((1..=order)
            .map(|n| {
                let est = richardson_pair(
                    ladder[ladder.len() - 2],
                    &lo[n - 1],
                    ladder[ladder.len() - 1],
                    &hi[n - 1],
                );
                (est, predicted[n - 1].clone())
            })
            .collect())
    }
}
