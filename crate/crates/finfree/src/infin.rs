//! The order-`1/d` calculus: cumulant fluctuations, the dictionary between
//! fluctuations and infinitesimal moments, the additive and multiplicative
//! fluctuation formulas, the subordination identity, repeated
//! differentiation, and the exact Richardson ladder.
//!
//! Every formula that has both a combinatorial-sum form and a
//! functional-series form is evaluated through both and the agreement is
//! asserted on each call, turning the equivalences into built-in
//! self-checks.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::combinat::{enum_annular, kreweras_annular, nc_cached};
use crate::error::{Error, Result};
use crate::freeprob::{boxplus, boxtimes, boxplus_b, InfLaw, Law};
use crate::poly::MonicPoly;
use crate::scalar::{format_q, q_int, q_pow, q_ratio, Q};
use crate::series::{
    h_coeffs_combinatorial, h_transform_analytic, inf_cauchy_from_moments, moments_from_cauchy,
    subordination_add, z_series_from_cumulants, Series,
};

/// A law together with its finite-free cumulant fluctuations `rhat_1..rhat_N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FluctLaw {
    pub base: Law,
    rhat: Vec<Q>,
}

impl FluctLaw {
    pub fn new(base: Law, rhat: Vec<Q>) -> Result<FluctLaw> {
        if rhat.len() != base.order() {
            return Err(Error::Order(format!(
                "fluctuation sequence length {} does not match law order {}",
                rhat.len(),
                base.order()
            )));
        }
        Ok(FluctLaw { base, rhat })
    }

    pub fn zero_fluctuations(base: Law) -> FluctLaw {
        let order = base.order();
        FluctLaw {
            base,
            rhat: vec![Q::zero(); order],
        }
    }

    pub fn order(&self) -> usize {
        self.base.order()
    }

    pub fn rhat(&self) -> &[Q] {
        &self.rhat
    }

    /// `Rhat` as a truncated series.
    pub fn rhat_series(&self) -> Series {
        z_series_from_cumulants(&self.rhat)
    }

    /// The infinitesimal law determined by the fluctuations.
    pub fn to_inf_law(&self) -> Result<InfLaw> {
        let mprime = inf_moments_from_fluctuations(&self.base, &self.rhat)?;
        InfLaw::from_mprime(self.base.clone(), mprime)
    }

    /// Recovers the fluctuations from an infinitesimal law.
    pub fn from_inf_law(inf: &InfLaw) -> Result<FluctLaw> {
        let rhat = fluctuations_from_inf_moments(&inf.base, inf.mprime())?;
        FluctLaw::new(inf.base.clone(), rhat)
    }
}

/// `m'_n = sum_{NC(n)} sum_{V} rhat_{|V|} r_{pi\V}  -  h_n`, evaluated both
/// combinatorially and as `G_{mu'} = -(Rhat ∘ G) G' - H`.
pub fn inf_moments_from_fluctuations(base: &Law, rhat: &[Q]) -> Result<Vec<Q>> {
    let order = base.order();
    if rhat.len() != order {
        return Err(Error::Order("fluctuation length != law order".into()));
    }
    let h = h_coeffs_combinatorial(base.cumulants(), order)?;
    let mut comb = Vec::with_capacity(order);
    for n in 1..=order {
        let mut acc = Q::zero();
        for pi in nc_cached(n)?.iter() {
            for v in 0..pi.block_count() {
                let size = pi.blocks()[v].len();
                let mut term = rhat[size - 1].clone();
                for (i, b) in pi.blocks().iter().enumerate() {
                    if i != v {
                        term *= &base.cumulants()[b.len() - 1];
                    }
                }
                acc += term;
            }
        }
        comb.push(acc - &h[n - 1]);
    }

    // series route
    let g = base.cauchy();
    let series = z_series_from_cumulants(rhat)
        .compose(&g)?
        .mul(&g.derivative())?
        .neg()
        .sub(&h_transform_analytic(&g)?)?;
    let via_series = moments_from_cauchy(&series, order)?;
    assert_eq!(
        comb, via_series,
        "fluctuation-to-moment routes disagree; internal error"
    );
    Ok(comb)
}

/// Inverse dictionary:
/// `rhat_n = sum_{NC(n)} Möb_NC(pi,1_n) sum_V (m'_{|V|} + h_{|V|}) m_{pi\V}`,
/// also evaluated as `Rhat = -((G_{mu'} + H) ∘ K) K'`.
pub fn fluctuations_from_inf_moments(base: &Law, mprime: &[Q]) -> Result<Vec<Q>> {
    let order = base.order();
    if mprime.len() != order {
        return Err(Error::Order("moment length != law order".into()));
    }
    let h = h_coeffs_combinatorial(base.cumulants(), order)?;
    let shifted: Vec<Q> = mprime.iter().zip(&h).map(|(m, hh)| m + hh).collect();
    let comb = crate::freeprob::inf_cumulants_from_inf_moments(base, &shifted)?;

    let g = base.cauchy();
    let k = base.k_series();
    let series = inf_cauchy_from_moments(mprime)
        .add(&h_transform_analytic(&g)?)?
        .compose(&k)?
        .mul(&k.derivative())?
        .neg();
    let via_series = crate::series::cumulants_from_z_series(&series, order)?;
    assert_eq!(
        comb, via_series,
        "moment-to-fluctuation routes disagree; internal error"
    );
    Ok(comb)
}

/// `Rhat = R^inf - (H∘K)·K' = R^inf - K''/(2K') - 1/z`; both closed forms
/// are computed and compared.
pub fn rhat_from_rinf(base: &Law, rprime: &[Q]) -> Result<Vec<Q>> {
    let order = base.order();
    if rprime.len() != order {
        return Err(Error::Order("r' length != law order".into()));
    }
    let k = base.k_series();
    let g = base.cauchy();
    let rinf = z_series_from_cumulants(rprime);

    let via_h = rinf.sub(
        &h_transform_analytic(&g)?
            .compose(&k)?
            .mul(&k.derivative())?,
    )?;
    let kp = k.derivative();
    let kpp = kp.derivative();
    let via_k = rinf
        .sub(&kpp.mul(&kp.recip()?)?.scale(&q_ratio(1, 2)))?
        .sub(&Series::monomial(-1, Q::one()))?;
    let a = crate::series::cumulants_from_z_series(&via_h, order)?;
    let b = crate::series::cumulants_from_z_series(&via_k, order)?;
    assert_eq!(a, b, "Rhat closed forms disagree; internal error");
    Ok(a)
}

/// Inverse of [`rhat_from_rinf`]: `R^inf = Rhat + K''/(2K') + 1/z`.
pub fn rinf_from_rhat(base: &Law, rhat: &[Q]) -> Result<Vec<Q>> {
    let order = base.order();
    if rhat.len() != order {
        return Err(Error::Order("rhat length != law order".into()));
    }
    let k = base.k_series();
    let kp = k.derivative();
    let kpp = kp.derivative();
    let rinf = z_series_from_cumulants(rhat)
        .add(&kpp.mul(&kp.recip()?)?.scale(&q_ratio(1, 2)))?
        .add(&Series::monomial(-1, Q::one()))?;
    crate::series::cumulants_from_z_series(&rinf, order)
}

/// Additive fluctuation formula: fluctuations add over `mu ⊞ nu`.
pub fn additive_convolve_fluct(a: &FluctLaw, b: &FluctLaw) -> Result<(FluctLaw, InfLaw)> {
    if a.order() != b.order() {
        return Err(Error::Order("fluctuation law orders differ".into()));
    }
    let base = boxplus(&a.base, &b.base)?;
    let rhat: Vec<Q> = a.rhat.iter().zip(&b.rhat).map(|(x, y)| x + y).collect();
    let fluct = FluctLaw::new(base, rhat)?;
    let inf = fluct.to_inf_law()?;
    Ok((fluct, inf))
}

/// Multiplicative fluctuation formula over `mu ⊠ nu`:
/// the non-crossing/Kreweras double sum minus the annular Kreweras sum,
/// with the infinitesimal moments computed through the moment-form sum and
/// cross-checked against the fluctuation dictionary.
pub fn multiplicative_convolve_fluct(a: &FluctLaw, b: &FluctLaw) -> Result<(FluctLaw, InfLaw)> {
    let order = a.order();
    if order != b.order() {
        return Err(Error::Order("fluctuation law orders differ".into()));
    }
    let base = boxtimes(&a.base, &b.base)?;
    let a_mprime = inf_moments_from_fluctuations(&a.base, &a.rhat)?;

    let mut rhat = Vec::with_capacity(order);
    let mut mprime = Vec::with_capacity(order);
    for n in 1..=order {
        let mut racc = Q::zero();
        let mut macc = Q::zero();
        for pi in nc_cached(n)?.iter() {
            let kr = pi.kreweras()?;
            let r_pi_a = block_product(a.base.cumulants(), pi.blocks());
            let m_pi_a = block_product(a.base.moments(), pi.blocks());
            let r_kr_b = block_product(b.base.cumulants(), kr.blocks());
            for v in 0..pi.block_count() {
                let size = pi.blocks()[v].len();
                racc += &a.rhat[size - 1]
                    * block_product_skipping(a.base.cumulants(), pi.blocks(), v)
                    * &r_kr_b;
                macc += &a_mprime[size - 1]
                    * block_product_skipping(a.base.moments(), pi.blocks(), v)
                    * &r_kr_b;
            }
            for w in 0..kr.block_count() {
                let size = kr.blocks()[w].len();
                let tail = &b.rhat[size - 1]
                    * block_product_skipping(b.base.cumulants(), kr.blocks(), w);
                racc += &r_pi_a * &tail;
                macc += &m_pi_a * &tail;
            }
        }
        let ann_r = annular_kreweras_sum(a.base.cumulants(), b.base.cumulants(), n)?;
        let ann_m = annular_kreweras_sum(a.base.moments(), b.base.cumulants(), n)?;
        let half_n = q_ratio(n as i64, 2);
        rhat.push(racc - &half_n * ann_r);
        mprime.push(macc - &half_n * ann_m);
    }

    let fluct = FluctLaw::new(base, rhat)?;
    let inf = fluct.to_inf_law()?;
    assert_eq!(
        inf.mprime(),
        &mprime[..],
        "multiplicative moment formula disagrees with the fluctuation dictionary; internal error"
    );
    Ok((fluct, inf))
}

/// `sum_{t+s=n} sum_{sigma in S_NC(t,s)} u_sigma v_{Kr_{t,s}(sigma)} / (t s)`.
fn annular_kreweras_sum(u: &[Q], v: &[Q], n: usize) -> Result<Q> {
    if n < 2 {
        return Ok(Q::zero());
    }
    let mut acc = Q::zero();
    for t in 1..n {
        let s = n - t;
        let mut inner = Q::zero();
        for sigma in enum_annular(t, s)?.iter() {
            let mut prod = Q::one();
            for len in sigma.cycle_lengths() {
                prod *= &u[len - 1];
            }
            for len in kreweras_annular(sigma, t, s)?.cycle_lengths() {
                prod *= &v[len - 1];
            }
            inner += prod;
        }
        acc += inner / q_int((t * s) as i64);
    }
    Ok(acc)
}

fn block_product(vals: &[Q], blocks: &[Vec<usize>]) -> Q {
    let mut acc = Q::one();
    for b in blocks {
        acc *= &vals[b.len() - 1];
    }
    acc
}

fn block_product_skipping(vals: &[Q], blocks: &[Vec<usize>], skip: usize) -> Q {
    let mut acc = Q::one();
    for (i, b) in blocks.iter().enumerate() {
        if i != skip {
            acc *= &vals[b.len() - 1];
        }
    }
    acc
}

/// Evaluates both sides of the subordination identity
/// `G_{rho'} = G_{gamma'} + H_{mu⊞nu} + w1''/(2w1') + w2''/(2w2')`
/// and returns the coefficientwise residual together with a flag telling
/// whether it vanishes on the whole guaranteed window.
pub fn subordination_identity_check(a: &InfLaw, b: &InfLaw) -> Result<(bool, Series)> {
    let order = a.order().min(b.order());
    // left side: infinitesimal law of the finite-free convolution
    let fa = FluctLaw::from_inf_law(a)?;
    let fb = FluctLaw::from_inf_law(b)?;
    let (_, rho) = additive_convolve_fluct(&fa, &fb)?;
    let lhs = rho.inf_cauchy();

    // right side
    let gamma = boxplus_b(a, b)?;
    let sub = subordination_add(a.base.moments(), b.base.moments())?;
    let h = h_transform_analytic(&sub.g_conv)?;
    let half = |w: &Series| -> Result<Series> {
        let wp = w.derivative();
        Ok(wp.derivative().mul(&wp.recip()?)?.scale(&q_ratio(1, 2)))
    };
    let rhs = gamma
        .inf_cauchy()
        .add(&h)?
        .add(&half(&sub.omega1)?)?
        .add(&half(&sub.omega2)?)?;

    let residual = lhs.sub(&rhs)?;
    let mut ok = true;
    for n in 1..=order as i64 {
        if !residual.coeff(-n - 1)?.is_zero() {
            ok = false;
        }
    }
    Ok((ok, residual))
}

/// Repeated differentiation: the infinitesimal law of
/// `q = p^{(d - j)}` along `j/d = t + alpha/d + o(1/d)`.
///
/// Base `nu = Dil_t mu^{⊞ 1/t}` (`r_n(nu) = t^{n-1} r_n(mu)`). Fluctuations
/// are measured against the differentiated polynomial's own degree `j`;
/// converting the `1/d` expansion of `kappa_n^{(j)}` into a `1/j` expansion
/// costs a factor `t`:
///
/// `rhat_n(q) = alpha (n-1) t^{n-1} r_n(mu) + t^n rhat_n(p)`.
///
/// The infinitesimal moments are then
/// `G_{nu'} = -alpha (G_nu + G'_nu/G_nu) - t Rhat_p(t G_nu) G'_nu - H_nu`,
/// evaluated and cross-checked against the dictionary on every call. The
/// convention is pinned by exact differentiation ladders of the Bernoulli
/// family in the acceptance suite.
pub fn repeated_differentiation(
    a: &FluctLaw,
    t: &Q,
    alpha: &Q,
) -> Result<(FluctLaw, InfLaw)> {
    if t.is_zero() {
        return Err(Error::Invalid("differentiation ratio t must be nonzero".into()));
    }
    let order = a.order();
    let r_mu = a.base.cumulants();
    let r_nu: Vec<Q> = (1..=order)
        .map(|n| Ok(&r_mu[n - 1] * q_pow(t, n as i64 - 1)?))
        .collect::<Result<_>>()?;
    let nu = Law::from_cumulants(r_nu)?;
    let rhat_q: Vec<Q> = (1..=order)
        .map(|n| {
            let drift = alpha * q_int(n as i64 - 1) * q_pow(t, n as i64 - 1)? * &r_mu[n - 1];
            Ok(drift + q_pow(t, n as i64)? * &a.rhat[n - 1])
        })
        .collect::<Result<_>>()?;

    let fluct = FluctLaw::new(nu.clone(), rhat_q)?;
    let inf = fluct.to_inf_law()?;

    let g = nu.cauchy();
    let gp = g.derivative();
    let drift = g.add(&gp.mul(&g.recip()?)?)?.scale(&(-alpha.clone()));
    // Rhat_p(t G_nu): rescale the argument, then substitute G
    let rhat_of_tg = a.rhat_series().scale_argument(t)?.compose(&g)?;
    let formula = drift
        .sub(&rhat_of_tg.mul(&gp)?.scale(t))?
        .sub(&h_transform_analytic(&g)?)?;
    let via_formula = moments_from_cauchy(&formula, order)?;
    assert_eq!(
        inf.mprime(),
        &via_formula[..],
        "repeated differentiation routes disagree; internal error"
    );
    Ok((fluct, inf))
}

/// How a ladder compares finite-`d` data against the limit.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum LadderMode {
    /// `Delta_n(d) = d (m_n(p_d) - m_n(mu))`, predicted by `m'_n`.
    Moments,
    /// `Delta_n(d) = d (kappa_n(p_d) - r_n(mu))`, predicted by `rhat_n`.
    Cumulants,
}

/// Exact fluctuation ladder for one moment (or cumulant) index.
#[derive(Clone, Debug, Serialize)]
pub struct LadderReport {
    pub n: usize,
    /// `(d, exact Delta_n(d))` along the ladder.
    pub ladder: Vec<(u64, String)>,
    /// Two-point Richardson estimate from the last ladder pair.
    pub richardson: String,
    /// Theorem-predicted limit.
    pub predicted: String,
    pub abs_error: String,
    #[serde(skip)]
    pub richardson_value: Q,
    #[serde(skip)]
    pub predicted_value: Q,
    #[serde(skip)]
    pub abs_error_value: Q,
}

/// Two-point Richardson step `(d2 D2 - d1 D1)/(d2 - d1)`, cancelling the
/// `1/d` term of `Delta(d) = L + c/d + o(1/d)`.
pub fn richardson_pair(d1: u64, delta1: &Q, d2: u64, delta2: &Q) -> Q {
    let (q1, q2) = (q_int(d1 as i64), q_int(d2 as i64));
    (&q2 * delta2 - &q1 * delta1) / (q2 - q1)
}

/// A deterministic polynomial family with known limiting data: enough to
/// evaluate exact finite-`d` prefixes at ladder scale and the predicted
/// infinitesimal limit. Generators are pure, so ladder rungs can be
/// evaluated independently.
/// Shared generator closure: degree to full polynomial.
pub type GeneratorFn = std::sync::Arc<dyn Fn(u64) -> Result<MonicPoly> + Send + Sync>;
/// Shared prefix closure: (degree, order) to `a~_0 .. a~_order`.
pub type PrefixFn = std::sync::Arc<dyn Fn(u64, usize) -> Result<Vec<Q>> + Send + Sync>;
/// Shared sequence closure: order to the first `order` terms.
pub type SequenceFn = std::sync::Arc<dyn Fn(usize) -> Result<Vec<Q>> + Send + Sync>;

#[derive(Clone)]
pub struct Family {
    pub name: String,
    pub min_degree: u64,
    generator: GeneratorFn,
    atilde_prefix: PrefixFn,
    limit_cumulants: SequenceFn,
    fluct: FluctMeta,
}

/// What is known about a family's `1/d` fluctuations.
#[derive(Clone)]
pub enum FluctMeta {
    /// Finite-free cumulants are exactly the limit cumulants (`rhat = 0`).
    ZeroRhat,
    /// Moments are exactly the limit moments (`m' = 0`).
    ZeroMprime,
    /// Closed-form fluctuations.
    Rhat(SequenceFn),
}

impl Family {
    pub fn new(
        name: impl Into<String>,
        min_degree: u64,
        generator: GeneratorFn,
        atilde_prefix: PrefixFn,
        limit_cumulants: SequenceFn,
        fluct: FluctMeta,
    ) -> Family {
        Family {
            name: name.into(),
            min_degree,
            generator,
            atilde_prefix,
            limit_cumulants,
            fluct,
        }
    }

    pub fn generate(&self, d: u64) -> Result<MonicPoly> {
        if d < self.min_degree {
            return Err(Error::Invalid(format!(
                "family {} needs degree >= {}, got {d}",
                self.name, self.min_degree
            )));
        }
        (self.generator)(d)
    }

    /// Normalized coefficients `a~_0 .. a~_order` without building the whole
    /// polynomial; what ladder evaluation at large `d` runs on.
    pub fn atilde_prefix(&self, d: u64, order: usize) -> Result<Vec<Q>> {
        if d < self.min_degree {
            return Err(Error::Invalid(format!(
                "family {} needs degree >= {}, got {d}",
                self.name, self.min_degree
            )));
        }
        if order as u64 > d {
            return Err(Error::Invalid("prefix order exceeds degree".into()));
        }
        (self.atilde_prefix)(d, order)
    }

    /// Exact `m_1 .. m_order` of the degree-`d` member.
    pub fn moments_prefix(&self, d: u64, order: usize) -> Result<Vec<Q>> {
        let atilde = self.atilde_prefix(d, order)?;
        moments_from_atilde_prefix(d, &atilde, order)
    }

    /// Exact `kappa_1 .. kappa_order` of the degree-`d` member.
    pub fn cumulants_prefix(&self, d: u64, order: usize) -> Result<Vec<Q>> {
        let atilde = self.atilde_prefix(d, order)?;
        crate::poly::finite_cumulants_from_atilde_prefix(d, &atilde, order)
    }

    pub fn limit_law(&self, order: usize) -> Result<Law> {
        Law::from_cumulants((self.limit_cumulants)(order)?)
    }

    /// The limiting fluctuation law promised by the family's construction.
    pub fn meta_fluct_law(&self, order: usize) -> Result<FluctLaw> {
        let base = self.limit_law(order)?;
        match &self.fluct {
            FluctMeta::ZeroRhat => Ok(FluctLaw::zero_fluctuations(base)),
            FluctMeta::ZeroMprime => {
                let rhat = fluctuations_from_inf_moments(&base, &vec![Q::zero(); order])?;
                FluctLaw::new(base, rhat)
            }
            FluctMeta::Rhat(f) => FluctLaw::new(base, f(order)?),
        }
    }

    pub fn meta_inf_law(&self, order: usize) -> Result<InfLaw> {
        match &self.fluct {
            FluctMeta::ZeroMprime => Ok(InfLaw::from_mprime(
                self.limit_law(order)?,
                vec![Q::zero(); order],
            )?),
            _ => self.meta_fluct_law(order)?.to_inf_law(),
        }
    }
}

/// Exact moments from a normalized-coefficient prefix via Newton's
/// identities (valid for `order <= d`).
pub fn moments_from_atilde_prefix(d: u64, atilde: &[Q], order: usize) -> Result<Vec<Q>> {
    if atilde.len() < order + 1 || order as u64 > d {
        return Err(Error::Invalid("insufficient coefficient prefix".into()));
    }
    let c: Vec<Q> = atilde
        .iter()
        .take(order + 1)
        .enumerate()
        .map(|(k, a)| {
            let v = crate::scalar::binomial(d, k as u64) * a;
            if k % 2 == 0 {
                v
            } else {
                -v
            }
        })
        .collect();
    let d_q = q_int(d as i64);
    let mut power_sums: Vec<Q> = vec![d_q.clone()];
    for k in 1..=order {
        let mut acc = q_int(k as i64) * &c[k];
        for i in 1..k {
            acc += &c[i] * &power_sums[k - i];
        }
        power_sums.push(-acc);
    }
    Ok(power_sums[1..].iter().map(|p| p / &d_q).collect())
}

/// Runs the exact ladder for `n = 1..=n_max` and applies two-point
/// Richardson extrapolation to the last rung pair.
pub fn extrapolate_family(
    family: &Family,
    n_max: usize,
    ladder: &[u64],
    mode: LadderMode,
) -> Result<Vec<LadderReport>> {
    if ladder.len() < 2 {
        return Err(Error::Invalid("ladder needs at least two degrees".into()));
    }
    if !ladder.windows(2).all(|w| w[0] < w[1]) {
        return Err(Error::Invalid("ladder must be strictly increasing".into()));
    }
    if ladder[0] < n_max as u64 {
        return Err(Error::Invalid(
            "every ladder degree must be at least the moment order".into(),
        ));
    }
    let limit = family.limit_law(n_max)?;
    let predicted_all: Vec<Q> = match mode {
        LadderMode::Moments => family.meta_inf_law(n_max)?.mprime().to_vec(),
        LadderMode::Cumulants => family.meta_fluct_law(n_max)?.rhat().to_vec(),
    };
    let limit_seq: &[Q] = match mode {
        LadderMode::Moments => limit.moments(),
        LadderMode::Cumulants => limit.cumulants(),
    };

    // evaluate each rung once for all n
    let mut rung_values: Vec<Vec<Q>> = Vec::with_capacity(ladder.len());
    for &d in ladder {
        let vals = match mode {
            LadderMode::Moments => family.moments_prefix(d, n_max)?,
            LadderMode::Cumulants => family.cumulants_prefix(d, n_max)?,
        };
        rung_values.push(vals);
    }

    let mut out = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let deltas: Vec<(u64, Q)> = ladder
            .iter()
            .zip(&rung_values)
            .map(|(&d, vals)| {
                let delta = q_int(d as i64) * (&vals[n - 1] - &limit_seq[n - 1]);
                (d, delta)
            })
            .collect();
        let (d1, delta1) = &deltas[deltas.len() - 2];
        let (d2, delta2) = &deltas[deltas.len() - 1];
        let richardson = richardson_pair(*d1, delta1, *d2, delta2);
        let predicted = predicted_all[n - 1].clone();
        let abs_error = (&richardson - &predicted).abs();
        out.push(LadderReport {
            n,
            ladder: deltas
                .iter()
                .map(|(d, q)| (*d, format_q(q)))
                .collect(),
            richardson: format_q(&richardson),
            predicted: format_q(&predicted),
            abs_error: format_q(&abs_error),
            richardson_value: richardson,
            predicted_value: predicted,
            abs_error_value: abs_error,
        });
    }
    Ok(out)
}
