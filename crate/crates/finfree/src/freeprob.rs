//! Limiting-object calculus: laws given by moments and free cumulants kept
//! in lockstep, free additive/multiplicative convolution, and the
//! infinitesimal pairs with their convolutions.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::combinat::{mobius_nc_to_top, nc_cached, SetPartition};
use crate::error::{Error, Result};
use crate::scalar::{q_pow, Q};
use crate::series::{cauchy_from_moments, inf_cauchy_from_moments, Series};

/// Orders above this make the non-crossing sums (and the annular sums
/// downstream) unreasonable.
pub const MAX_LAW_ORDER: usize = 10;

/// A compactly-determined law truncated at order `N`: moments and free
/// cumulants are stored together and always consistent under the
/// non-crossing moment-cumulant formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Law {
    m: Vec<Q>,
    r: Vec<Q>,
}

/// Product of `vals[size-1]` over the blocks of `pi`.
fn partition_product(vals: &[Q], pi: &SetPartition) -> Q {
    let mut acc = Q::one();
    for b in pi.blocks() {
        acc *= &vals[b.len() - 1];
    }
    acc
}

/// Product over all blocks except the one at `skip`.
fn partition_product_skipping(vals: &[Q], pi: &SetPartition, skip: usize) -> Q {
    let mut acc = Q::one();
    for (i, b) in pi.blocks().iter().enumerate() {
        if i != skip {
            acc *= &vals[b.len() - 1];
        }
    }
    acc
}

/// `m_n = sum_{pi in NC(n)} r_pi`.
pub fn moments_from_free_cumulants(r: &[Q]) -> Result<Vec<Q>> {
    (1..=r.len())
        .map(|n| {
            let mut acc = Q::zero();
            for pi in nc_cached(n)?.iter() {
                acc += partition_product(r, pi);
            }
            Ok(acc)
        })
        .collect()
}

/// `r_n = sum_{pi in NC(n)} m_pi Möb_NC(pi, 1_n)`.
pub fn free_cumulants_from_moments(m: &[Q]) -> Result<Vec<Q>> {
    (1..=m.len())
        .map(|n| {
            let mut acc = Q::zero();
            for pi in nc_cached(n)?.iter() {
                let mob = mobius_nc_to_top(pi)?;
                acc += partition_product(m, pi) * Q::from_integer(mob.into());
            }
            Ok(acc)
        })
        .collect()
}

impl Law {
    pub fn from_moments(m: Vec<Q>) -> Result<Law> {
        check_order(m.len())?;
        let r = free_cumulants_from_moments(&m)?;
        Ok(Law { m, r })
    }

    pub fn from_cumulants(r: Vec<Q>) -> Result<Law> {
        check_order(r.len())?;
        let m = moments_from_free_cumulants(&r)?;
        Ok(Law { m, r })
    }

    /// `delta_alpha`: the single free cumulant `r_1 = alpha`.
    pub fn dirac(alpha: &Q, order: usize) -> Result<Law> {
        let mut r = vec![Q::zero(); order];
        r[0] = alpha.clone();
        Law::from_cumulants(r)
    }

    /// Standard semicircle: `r_2 = 1`, all other cumulants zero.
    pub fn semicircle(order: usize) -> Result<Law> {
        check_order(order)?;
        if order < 2 {
            return Err(Error::Invalid("semicircle needs order >= 2".into()));
        }
        let mut r = vec![Q::zero(); order];
        r[1] = Q::one();
        Law::from_cumulants(r)
    }

    /// Marchenko-Pastur of parameter 1: every free cumulant equals 1.
    pub fn marchenko_pastur(order: usize) -> Result<Law> {
        Law::from_cumulants(vec![Q::one(); order])
    }

    pub fn order(&self) -> usize {
        self.m.len()
    }

    pub fn moments(&self) -> &[Q] {
        &self.m
    }

    pub fn cumulants(&self) -> &[Q] {
        &self.r
    }

    /// Truncated Cauchy transform `G`.
    pub fn cauchy(&self) -> Series {
        cauchy_from_moments(&self.m)
    }

    /// Truncated `K = 1/z + R`.
    pub fn k_series(&self) -> Series {
        crate::series::z_series_pole(&self.r)
    }

    /// Shortens to order `order`.
    pub fn truncated(&self, order: usize) -> Result<Law> {
        if order > self.order() {
            return Err(Error::Order(format!(
                "law of order {} cannot provide order {order}",
                self.order()
            )));
        }
        Ok(Law {
            m: self.m[..order].to_vec(),
            r: self.r[..order].to_vec(),
        })
    }
}

fn check_order(order: usize) -> Result<()> {
    if order == 0 || order > MAX_LAW_ORDER {
        return Err(Error::SizeLimit(format!(
            "law order must be 1..={MAX_LAW_ORDER}, got {order}"
        )));
    }
    Ok(())
}

fn check_same_order(a: usize, b: usize) -> Result<usize> {
    if a != b {
        return Err(Error::Order(format!("law orders differ: {a} vs {b}")));
    }
    Ok(a)
}

/// Free additive convolution: cumulants add.
pub fn boxplus(mu: &Law, nu: &Law) -> Result<Law> {
    check_same_order(mu.order(), nu.order())?;
    let r = mu.r.iter().zip(&nu.r).map(|(a, b)| a + b).collect();
    Law::from_cumulants(r)
}

/// Free multiplicative convolution:
/// `r_n(mu ⊠ nu) = sum_{pi in NC(n)} r_pi(mu) r_{Kr(pi)}(nu)`.
pub fn boxtimes(mu: &Law, nu: &Law) -> Result<Law> {
    let order = check_same_order(mu.order(), nu.order())?;
    let mut r = Vec::with_capacity(order);
    for n in 1..=order {
        let mut acc = Q::zero();
        for pi in nc_cached(n)?.iter() {
            let kr = pi.kreweras()?;
            acc += partition_product(&mu.r, pi) * partition_product(&nu.r, &kr);
        }
        r.push(acc);
    }
    Law::from_cumulants(r)
}

/// An infinitesimal law `(mu, mu')`: base law plus the infinitesimal moment
/// and cumulant sequences, consistent under the infinitesimal
/// moment-cumulant formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InfLaw {
    pub base: Law,
    mprime: Vec<Q>,
    rprime: Vec<Q>,
}

/// `m'_n = sum_{pi in NC(n)} sum_{V in pi} r'_{|V|} r_{pi \ V}`.
pub fn inf_moments_from_inf_cumulants(base: &Law, rprime: &[Q]) -> Result<Vec<Q>> {
    let order = check_same_order(base.order(), rprime.len())?;
    (1..=order)
        .map(|n| {
            let mut acc = Q::zero();
            for pi in nc_cached(n)?.iter() {
                for v in 0..pi.block_count() {
                    let size = pi.blocks()[v].len();
                    acc += &rprime[size - 1]
                        * partition_product_skipping(base.cumulants(), pi, v);
                }
            }
            Ok(acc)
        })
        .collect()
}

/// `r'_n = sum_{pi in NC(n)} sum_{V in pi} m'_{|V|} m_{pi \ V} Möb_NC(pi, 1_n)`.
pub fn inf_cumulants_from_inf_moments(base: &Law, mprime: &[Q]) -> Result<Vec<Q>> {
    let order = check_same_order(base.order(), mprime.len())?;
    (1..=order)
        .map(|n| {
            let mut acc = Q::zero();
            for pi in nc_cached(n)?.iter() {
                let mob = Q::from_integer(mobius_nc_to_top(pi)?.into());
                let mut inner = Q::zero();
                for v in 0..pi.block_count() {
                    let size = pi.blocks()[v].len();
                    inner += &mprime[size - 1]
                        * partition_product_skipping(base.moments(), pi, v);
                }
                acc += mob * inner;
            }
            Ok(acc)
        })
        .collect()
}

impl InfLaw {
    /// Completes the pair from infinitesimal cumulants.
    pub fn from_rprime(base: Law, rprime: Vec<Q>) -> Result<InfLaw> {
        let mprime = inf_moments_from_inf_cumulants(&base, &rprime)?;
        Ok(InfLaw {
            base,
            mprime,
            rprime,
        })
    }

    /// Completes the pair from infinitesimal moments.
    pub fn from_mprime(base: Law, mprime: Vec<Q>) -> Result<InfLaw> {
        let rprime = inf_cumulants_from_inf_moments(&base, &mprime)?;
        Ok(InfLaw {
            base,
            mprime,
            rprime,
        })
    }

    /// The trivial infinitesimal part.
    pub fn zero_prime(base: Law) -> InfLaw {
        let order = base.order();
        InfLaw {
            base,
            mprime: vec![Q::zero(); order],
            rprime: vec![Q::zero(); order],
        }
    }

    pub fn order(&self) -> usize {
        self.base.order()
    }

    pub fn mprime(&self) -> &[Q] {
        &self.mprime
    }

    pub fn rprime(&self) -> &[Q] {
        &self.rprime
    }

    /// `G_{mu'}` as a truncated series.
    pub fn inf_cauchy(&self) -> Series {
        inf_cauchy_from_moments(&self.mprime)
    }

    /// `R^inf` as a truncated series.
    pub fn inf_r_series(&self) -> Series {
        crate::series::z_series_from_cumulants(&self.rprime)
    }
}

/// Infinitesimal free additive convolution `(mu,mu') ⊞_B (nu,nu')`:
/// infinitesimal cumulants add over the convolved base.
pub fn boxplus_b(a: &InfLaw, b: &InfLaw) -> Result<InfLaw> {
    check_same_order(a.order(), b.order())?;
    let base = boxplus(&a.base, &b.base)?;
    let rprime = a
        .rprime
        .iter()
        .zip(&b.rprime)
        .map(|(x, y)| x + y)
        .collect();
    InfLaw::from_rprime(base, rprime)
}

/// Infinitesimal free multiplicative convolution `(mu,mu') ⊠_B (nu,nu')`.
///
/// Both defining routes are evaluated: the infinitesimal-cumulant sum and
/// the infinitesimal-moment sum. They must produce the same pair; the
/// agreement is asserted on every call.
pub fn boxtimes_b(a: &InfLaw, b: &InfLaw) -> Result<InfLaw> {
    let order = check_same_order(a.order(), b.order())?;
    let base = boxtimes(&a.base, &b.base)?;

    let mut rprime = Vec::with_capacity(order);
    let mut mprime = Vec::with_capacity(order);
    for n in 1..=order {
        let mut racc = Q::zero();
        let mut macc = Q::zero();
        for pi in nc_cached(n)?.iter() {
            let kr = pi.kreweras()?;
            let r_pi_a = partition_product(a.base.cumulants(), pi);
            let m_pi_a = partition_product(a.base.moments(), pi);
            let r_kr_b = partition_product(b.base.cumulants(), &kr);
            for v in 0..pi.block_count() {
                let size = pi.blocks()[v].len();
                racc += &a.rprime[size - 1]
                    * partition_product_skipping(a.base.cumulants(), pi, v)
                    * &r_kr_b;
                macc += &a.mprime[size - 1]
                    * partition_product_skipping(a.base.moments(), pi, v)
                    * &r_kr_b;
            }
            for w in 0..kr.block_count() {
                let size = kr.blocks()[w].len();
                let tail = &b.rprime[size - 1]
                    * partition_product_skipping(b.base.cumulants(), &kr, w);
                racc += &r_pi_a * &tail;
                macc += &m_pi_a * &tail;
            }
        }
        rprime.push(racc);
        mprime.push(macc);
    }

    let out = InfLaw::from_rprime(base, rprime)?;
    assert_eq!(
        out.mprime, mprime,
        "infinitesimal multiplicative convolution routes disagree; internal error"
    );
    Ok(out)
}

/// JSON schema for an infinitesimal law:
/// `{"order": N, "moments": [...], "inf_moments": [...]}`.
#[derive(Serialize, Deserialize)]
pub struct InfLawJson {
    pub order: usize,
    #[serde(with = "crate::scalar::q_vec_serde")]
    pub moments: Vec<Q>,
    #[serde(with = "crate::scalar::q_vec_serde")]
    pub inf_moments: Vec<Q>,
}

impl InfLawJson {
    pub fn from_inf_law(law: &InfLaw) -> Self {
        InfLawJson {
            order: law.order(),
            moments: law.base.moments().to_vec(),
            inf_moments: law.mprime().to_vec(),
        }
    }

    pub fn to_inf_law(&self) -> Result<InfLaw> {
        if self.moments.len() != self.order || self.inf_moments.len() != self.order {
            return Err(Error::Parse(format!(
                "inf-law of order {} needs {} moments and inf_moments",
                self.order, self.order
            )));
        }
        InfLaw::from_mprime(Law::from_moments(self.moments.clone())?, self.inf_moments.clone())
    }
}

/// `m_n(delta_alpha-type atom list)`: helper for building atomic laws.
pub fn atomic_moments(atoms: &[(Q, Q)], order: usize) -> Result<Vec<Q>> {
    (1..=order)
        .map(|n| {
            let mut acc = Q::zero();
            for (w, a) in atoms {
                acc += w * q_pow(a, n as i64)?;
            }
            Ok(acc)
        })
        .collect()
}
