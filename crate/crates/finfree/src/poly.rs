//! Monic polynomials through their normalized coefficients, exact moments,
//! and finite-free cumulants.
//!
//! A degree-`d` monic polynomial is stored as the vector `atilde[0..=d]`
//! with `atilde[0] = 1`; the ordinary coefficient of `x^{d-k}` is
//! `(-1)^k binom(d,k) atilde[k]`. Roots are never extracted: convolution
//! outputs generally have irrational roots while every formula used here
//! consumes the normalized coefficients, moments, or cumulants.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{binomial, factorial, q_int, q_pow, Q};

/// Moment sequence `m_1 .. m_N` (`m_0 = 1` implicit), exact rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentSeq(pub Vec<Q>);

/// Cumulant sequence `r_1 .. r_N` (finite-free or free depending on context).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CumulantSeq(pub Vec<Q>);

impl MomentSeq {
    pub fn order(&self) -> usize {
        self.0.len()
    }
    /// `m_n`, 1-based.
    pub fn get(&self, n: usize) -> &Q {
        &self.0[n - 1]
    }
}

impl CumulantSeq {
    pub fn order(&self) -> usize {
        self.0.len()
    }
    /// `r_n` (or `kappa_n`), 1-based.
    pub fn get(&self, n: usize) -> &Q {
        &self.0[n - 1]
    }
}

/// Monic real polynomial in normalized-coefficient form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonicPoly {
    atilde: Vec<Q>,
}

impl MonicPoly {
    /// From normalized coefficients; `atilde[0]` must be 1 and length >= 2.
    pub fn new(atilde: Vec<Q>) -> Result<Self> {
        if atilde.len() < 2 {
            return Err(Error::Invalid("degree must be at least 1".into()));
        }
        if !atilde[0].is_one() {
            return Err(Error::Invalid("normalized coefficient a~_0 must be 1".into()));
        }
        Ok(MonicPoly { atilde })
    }

    pub fn degree(&self) -> usize {
        self.atilde.len() - 1
    }

    pub fn atilde(&self) -> &[Q] {
        &self.atilde
    }

    /// `x^d`.
    pub fn power(d: usize) -> Self {
        let mut atilde = vec![Q::zero(); d + 1];
        atilde[0] = Q::one();
        MonicPoly { atilde }
    }

    /// `(x - alpha)^d`, so `atilde[k] = alpha^k`.
    pub fn point_mass(d: usize, alpha: &Q) -> Self {
        let mut atilde = Vec::with_capacity(d + 1);
        let mut acc = Q::one();
        for _ in 0..=d {
            atilde.push(acc.clone());
            acc *= alpha;
        }
        MonicPoly { atilde }
    }

    /// Expands `prod (x - root)` exactly; `atilde[k] = e_k(roots)/binom(d,k)`.
    pub fn from_roots(roots: &[Q]) -> Result<Self> {
        if roots.is_empty() {
            return Err(Error::Invalid("root list must be non-empty".into()));
        }
        let d = roots.len();
        let mut e = vec![Q::zero(); d + 1];
        e[0] = Q::one();
        for (i, r) in roots.iter().enumerate() {
            for k in (1..=i + 1).rev() {
                let add = &e[k - 1] * r;
                e[k] += add;
            }
        }
        let atilde = e
            .into_iter()
            .enumerate()
            .map(|(k, ek)| ek / binomial(d as u64, k as u64))
            .collect();
        Ok(MonicPoly { atilde })
    }

    /// Ordinary coefficients `[1, c_1, ..., c_d]` with `c_k` the coefficient
    /// of `x^{d-k}`.
    pub fn ordinary_coeffs(&self) -> Vec<Q> {
        let d = self.degree();
        self.atilde
            .iter()
            .enumerate()
            .map(|(k, a)| {
                let c = binomial(d as u64, k as u64) * a;
                if k % 2 == 0 {
                    c
                } else {
                    -c
                }
            })
            .collect()
    }

    /// Rebuilds from ordinary coefficients `[1, c_1, ..., c_d]`.
    pub fn from_ordinary_coeffs(coeffs: &[Q]) -> Result<Self> {
        if coeffs.len() < 2 || !coeffs[0].is_one() {
            return Err(Error::Invalid("ordinary coefficients must start with 1".into()));
        }
        let d = coeffs.len() - 1;
        let atilde = coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| {
                let b = binomial(d as u64, k as u64);
                let v = c / b;
                Ok(if k % 2 == 0 { v } else { -v })
            })
            .collect::<Result<Vec<_>>>()?;
        MonicPoly::new(atilde)
    }

    /// Exact root-distribution moments `m_1 .. m_N` by Newton's identities on
    /// the ordinary coefficients; no root extraction.
    pub fn moments(&self, order: usize) -> MomentSeq {
        let d = self.degree();
        let c = self.ordinary_coeffs();
        let mut power_sums: Vec<Q> = Vec::with_capacity(order + 1);
        power_sums.push(q_int(d as i64)); // p_0 = d
        for k in 1..=order {
            let mut acc = Q::zero();
            for i in 1..k.min(d + 1) {
                acc += &c[i] * &power_sums[k - i];
            }
            if k <= d {
                acc += q_int(k as i64) * &c[k];
            }
            power_sums.push(-acc);
        }
        MomentSeq(
            power_sums[1..]
                .iter()
                .map(|p| p / q_int(d as i64))
                .collect(),
        )
    }
}

/// Finite-free cumulants from normalized coefficients:
/// `kappa_n = (-d)^{n-1}/(n-1)! * sum_{pi in P(n)} Möb(pi, 1_n) a~_pi`.
pub fn finite_cumulants_from_coeffs(p: &MonicPoly, order: usize) -> Result<CumulantSeq> {
    let d = p.degree();
    if order > d {
        return Err(Error::Invalid(format!(
            "cumulant order {order} exceeds degree {d}"
        )));
    }
    let mut out = Vec::with_capacity(order);
    for n in 1..=order {
        out.push(kappa_n_from_atilde(d as u64, &p.atilde[1..], n)?);
    }
    Ok(CumulantSeq(out))
}

/// Finite-free cumulants `kappa_1 .. kappa_order` from the normalized
/// coefficient prefix `a~_0 .. a~_m` (`m >= order`), without the rest of the
/// polynomial. What ladder evaluation at large degree runs on.
pub fn finite_cumulants_from_atilde_prefix(
    d: u64,
    atilde: &[Q],
    order: usize,
) -> Result<Vec<Q>> {
    if atilde.len() < order + 1 {
        return Err(Error::Invalid("insufficient coefficient prefix".into()));
    }
    if order as u64 > d {
        return Err(Error::Invalid(format!(
            "cumulant order {order} exceeds degree {d}"
        )));
    }
    (1..=order)
        .map(|n| kappa_n_from_atilde(d, &atilde[1..], n))
        .collect()
}

fn kappa_n_from_atilde(d: u64, atilde_tail: &[Q], n: usize) -> Result<Q> {
    let mut acc = Q::zero();
    crate::lattice::for_each_partition_shape(n, |sizes, mob_top| {
        let mut prod = Q::from_integer(mob_top.into());
        for &s in sizes {
            prod *= &atilde_tail[s as usize - 1];
        }
        acc += prod;
    })?;
    let minus_d = q_int(-(d as i64));
    Ok(acc * q_pow(&minus_d, n as i64 - 1)? / factorial(n as u64 - 1))
}

/// Finite-free cumulants straight from moments, exactly.
///
/// Moments are inverted to ordinary coefficients by Newton's identities and
/// fed to the cumulant Möbius sum. The inversion brings in falling-factorial
/// denominators `(d)_k`, so the result is a genuine rational function of `d`
/// rather than a Laurent polynomial; it agrees with the coefficient route to
/// the last bit.
pub fn finite_cumulants_from_moments(m: &MomentSeq, d: u64, order: usize) -> Result<CumulantSeq> {
    if order as u64 > d {
        return Err(Error::Invalid(format!(
            "cumulant order {order} exceeds degree {d}"
        )));
    }
    if m.order() < order {
        return Err(Error::Invalid(format!(
            "need {order} moments, have {}",
            m.order()
        )));
    }
    // power sums -> ordinary coefficients (valid while k <= d)
    let d_q = q_int(d as i64);
    let power_sums: Vec<Q> = m.0[..order].iter().map(|x| x * &d_q).collect();
    let mut c: Vec<Q> = vec![Q::one()];
    for k in 1..=order {
        let mut acc = power_sums[k - 1].clone();
        for i in 1..k {
            acc += &c[i] * &power_sums[k - i - 1];
        }
        c.push(-acc / q_int(k as i64));
    }
    // ordinary coefficient prefix -> normalized prefix -> cumulants
    let atilde_tail: Vec<Q> = c[1..]
        .iter()
        .enumerate()
        .map(|(i, ck)| {
            let k = i + 1;
            let v = ck / binomial(d, k as u64);
            if k % 2 == 0 {
                v
            } else {
                -v
            }
        })
        .collect();
    let mut out = Vec::with_capacity(order);
    for n in 1..=order {
        out.push(kappa_n_from_atilde(d, &atilde_tail, n)?);
    }
    Ok(CumulantSeq(out))
}

/// Normalized-coefficient prefix `a~_0 .. a~_m` from the cumulant prefix
/// `kappa_1 .. kappa_m`, by the triangular inversion of the
/// cumulant-coefficient formula. Needs `m <= d` but not the whole polynomial.
pub fn atilde_prefix_from_cumulants(d: u64, kappa: &[Q]) -> Result<Vec<Q>> {
    if kappa.len() as u64 > d {
        return Err(Error::Invalid("more cumulants than the degree".into()));
    }
    let mut atilde = vec![Q::one()];
    let minus_d = q_int(-(d as i64));
    for n in 1..=kappa.len() {
        // kappa_n = (-d)^{n-1}/(n-1)! [ a~_n + sum_{pi != 1_n} Möb(pi,1_n) a~_pi ]
        let mut rest = Q::zero();
        crate::lattice::for_each_partition_shape(n, |sizes, mob_top| {
            if sizes.len() == 1 {
                return;
            }
            let mut prod = Q::from_integer(mob_top.into());
            for &s in sizes {
                prod *= &atilde[s as usize];
            }
            rest += prod;
        })?;
        let scaled = &kappa[n - 1] * factorial(n as u64 - 1) / q_pow(&minus_d, n as i64 - 1)?;
        atilde.push(scaled - rest);
    }
    Ok(atilde)
}

/// The unique degree-`d` monic polynomial with the given `d` finite-free
/// cumulants. Real-rootedness of the output is not guaranteed or checked.
pub fn poly_from_finite_cumulants(d: u64, kappa: &CumulantSeq) -> Result<MonicPoly> {
    if kappa.order() as u64 != d {
        return Err(Error::Invalid(format!(
            "need exactly {d} cumulants, got {}",
            kappa.order()
        )));
    }
    MonicPoly::new(atilde_prefix_from_cumulants(d, &kappa.0)?)
}

/// JSON schema: `{"degree": d, "atilde": ["1", "p/q", ...]}`.
#[derive(Serialize, Deserialize)]
struct PolyJson {
    degree: usize,
    #[serde(with = "crate::scalar::q_vec_serde")]
    atilde: Vec<Q>,
}

impl Serialize for MonicPoly {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        PolyJson {
            degree: self.degree(),
            atilde: self.atilde.clone(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for MonicPoly {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = PolyJson::deserialize(de)?;
        if raw.atilde.len() != raw.degree + 1 {
            return Err(D::Error::custom(format!(
                "atilde length {} does not match degree {}",
                raw.atilde.len(),
                raw.degree
            )));
        }
        MonicPoly::new(raw.atilde).map_err(|e| D::Error::custom(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q_ratio;
    use proptest::prelude::*;

    fn qs(vals: &[i64]) -> Vec<Q> {
        vals.iter().map(|&v| q_int(v)).collect()
    }

    #[test]
    fn from_roots_examples() {
        let p = MonicPoly::from_roots(&qs(&[5])).unwrap();
        assert_eq!(p.atilde(), &qs(&[1, 5]));

        let p = MonicPoly::from_roots(&qs(&[1, -1])).unwrap();
        assert_eq!(p.atilde(), &qs(&[1, 0, -1]));

        let alpha = q_ratio(3, 2);
        let p = MonicPoly::from_roots(&vec![alpha.clone(); 5]).unwrap();
        for k in 0..=5 {
            assert_eq!(p.atilde()[k], q_pow(&alpha, k as i64).unwrap());
        }
        assert!(MonicPoly::from_roots(&[]).is_err());
    }

    #[test]
    fn ordinary_round_trip() {
        let p = MonicPoly::from_roots(&qs(&[2, -3, 7, 0])).unwrap();
        let q = MonicPoly::from_ordinary_coeffs(&p.ordinary_coeffs()).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn moments_examples() {
        // point mass
        let p = MonicPoly::point_mass(6, &q_int(2));
        let m = p.moments(5);
        for n in 1..=5 {
            assert_eq!(*m.get(n), q_pow(&q_int(2), n as i64).unwrap());
        }
        // x^2 - 1
        let p = MonicPoly::from_roots(&qs(&[1, -1])).unwrap();
        let m = p.moments(4);
        assert_eq!(m.0, vec![q_int(0), q_int(1), q_int(0), q_int(1)]);
    }

    #[test]
    fn moments_match_power_sums_beyond_degree() {
        let roots = [q_ratio(1, 2), q_int(-2), q_ratio(5, 3)];
        let p = MonicPoly::from_roots(&roots).unwrap();
        let m = p.moments(8);
        for n in 1..=8 {
            let direct: Q = roots.iter().map(|r| q_pow(r, n as i64).unwrap()).sum();
            assert_eq!(*m.get(n), direct / q_int(3), "n={n}");
        }
    }

    #[test]
    fn cumulants_point_mass_and_quadratic() {
        for d in 4..=8 {
            let p = MonicPoly::point_mass(d, &q_ratio(7, 3));
            let k = finite_cumulants_from_coeffs(&p, d).unwrap();
            assert_eq!(*k.get(1), q_ratio(7, 3));
            for n in 2..=d {
                assert!(k.get(n).is_zero(), "d={d} n={n}");
            }
        }
        let p = MonicPoly::from_roots(&qs(&[1, -1])).unwrap();
        let k = finite_cumulants_from_coeffs(&p, 2).unwrap();
        assert_eq!(k.0, vec![q_int(0), q_int(2)]);
    }

    #[test]
    fn cumulant_truncation_error() {
        let p = MonicPoly::from_roots(&qs(&[1, 2])).unwrap();
        assert!(finite_cumulants_from_coeffs(&p, 3).is_err());
    }

    #[test]
    fn moment_route_equals_coefficient_route() {
        let polys = [
            MonicPoly::from_roots(&qs(&[1, -1])).unwrap(),
            MonicPoly::from_roots(&qs(&[0, 2, 5, -1, 3])).unwrap(),
            MonicPoly::from_roots(&[q_ratio(1, 2), q_ratio(-3, 2), q_int(1), q_int(4)]).unwrap(),
        ];
        for p in &polys {
            let d = p.degree();
            let via_coeffs = finite_cumulants_from_coeffs(p, d).unwrap();
            let via_moments = finite_cumulants_from_moments(&p.moments(d), d as u64, d).unwrap();
            assert_eq!(via_coeffs, via_moments, "poly {:?}", p.atilde());
        }
    }

    #[test]
    fn cumulant_inverse_examples() {
        // kappa = (alpha, 0, ..., 0) -> (x - alpha)^d
        let mut kappa = vec![Q::zero(); 6];
        kappa[0] = q_ratio(-4, 3);
        let p = poly_from_finite_cumulants(6, &CumulantSeq(kappa)).unwrap();
        assert_eq!(p, MonicPoly::point_mass(6, &q_ratio(-4, 3)));
    }

    #[test]
    fn translation_covariance() {
        // shifting all roots by c moves kappa_1 by c and fixes kappa_{n>=2}
        let roots = qs(&[0, 1, 3, -2, 5]);
        let shifted: Vec<Q> = roots.iter().map(|r| r + q_ratio(7, 2)).collect();
        let k0 = finite_cumulants_from_coeffs(&MonicPoly::from_roots(&roots).unwrap(), 5).unwrap();
        let k1 =
            finite_cumulants_from_coeffs(&MonicPoly::from_roots(&shifted).unwrap(), 5).unwrap();
        assert_eq!(k1.0[0], &k0.0[0] + q_ratio(7, 2));
        assert_eq!(k1.0[1..], k0.0[1..]);
    }

    #[test]
    fn json_round_trip() {
        let p = MonicPoly::from_roots(&[q_ratio(1, 3), q_int(-2), q_ratio(7, 5)]).unwrap();
        let text = serde_json::to_string(&p).unwrap();
        let back: MonicPoly = serde_json::from_str(&text).unwrap();
        assert_eq!(p, back);
        assert_eq!(text, serde_json::to_string(&back).unwrap(), "bit-exact");
        assert!(serde_json::from_str::<MonicPoly>(r#"{"degree":2,"atilde":["1","2"]}"#).is_err());
        assert!(
            serde_json::from_str::<MonicPoly>(r#"{"degree":1,"atilde":["2","1"]}"#).is_err()
        );
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn prop_cumulant_round_trip(raw in proptest::collection::vec(-6i64..=6, 2..=8)) {
            let roots = qs(&raw);
            let p = MonicPoly::from_roots(&roots).unwrap();
            let d = p.degree();
            let kappa = finite_cumulants_from_coeffs(&p, d).unwrap();
            let back = poly_from_finite_cumulants(d as u64, &kappa).unwrap();
            prop_assert_eq!(p.clone(), back);
            let via_m = finite_cumulants_from_moments(&p.moments(d), d as u64, d).unwrap();
            prop_assert_eq!(kappa, via_m);
        }
    }
}
