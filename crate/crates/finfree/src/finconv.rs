//! Finite-free additive and multiplicative convolution of monic polynomials,
//! rescaled differentiation, and the exact product-cumulant expansion.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::lattice::weighted_join_sum;
use crate::poly::{CumulantSeq, MonicPoly};
use crate::scalar::{binomial, q_pow, Q};

/// Additive convolution: `a~_k(p ⊞ q) = sum_i binom(k,i) a~_i(p) a~_{k-i}(q)`.
pub fn boxplus_d(p: &MonicPoly, q: &MonicPoly) -> Result<MonicPoly> {
    let d = check_equal_degrees(p, q)?;
    let (pa, qa) = (p.atilde(), q.atilde());
    let mut atilde = Vec::with_capacity(d + 1);
    for k in 0..=d {
        let mut acc = Q::zero();
        for i in 0..=k {
            acc += binomial(k as u64, i as u64) * &pa[i] * &qa[k - i];
        }
        atilde.push(acc);
    }
    MonicPoly::new(atilde)
}

/// Multiplicative convolution: `a~_k(p ⊠ q) = a~_k(p) a~_k(q)`.
pub fn boxtimes_d(p: &MonicPoly, q: &MonicPoly) -> Result<MonicPoly> {
    let _ = check_equal_degrees(p, q)?;
    let atilde = p
        .atilde()
        .iter()
        .zip(q.atilde())
        .map(|(a, b)| a * b)
        .collect();
    MonicPoly::new(atilde)
}

fn check_equal_degrees(p: &MonicPoly, q: &MonicPoly) -> Result<usize> {
    if p.degree() != q.degree() {
        return Err(Error::Dimension(format!(
            "convolution of degrees {} and {}",
            p.degree(),
            q.degree()
        )));
    }
    Ok(p.degree())
}

/// The exact double-partition expansion of `kappa_n(p ⊠_d q)` in terms of the
/// separate cumulant sequences. Test oracle for [`boxtimes_d`]:
///
/// `kappa_n = (-1)^{n-1}/(n-1)! sum_{pi v theta = 1_n}
///            d^{|pi|+|theta|-n-1} Möb(0,pi) Möb(0,theta) kappa_pi(p) kappa_theta(q)`.
pub fn kappa_product_expansion(
    d: u64,
    kappa_p: &CumulantSeq,
    kappa_q: &CumulantSeq,
    n: usize,
) -> Result<Q> {
    if n as u64 > d {
        return Err(Error::Invalid(format!("order {n} exceeds degree {d}")));
    }
    if kappa_p.order() < n || kappa_q.order() < n {
        return Err(Error::Invalid("cumulant sequences shorter than n".into()));
    }
    weighted_join_sum(n, d, &kappa_p.0, &kappa_q.0)
}

/// The monic degree-`(d-s)` polynomial `p^{(s)} / (d)_s`.
///
/// Two routes are computed: direct differentiation of the ordinary
/// coefficients, and `p ⊠_d x^s (x-1)^{d-s}` with the `x^s` factor removed.
/// They must agree exactly; the agreement doubles as a built-in oracle.
pub fn derivative_poly(p: &MonicPoly, s: usize) -> Result<MonicPoly> {
    let d = p.degree();
    if s >= d {
        return Err(Error::Invalid(format!(
            "cannot take {s} derivatives of degree {d} and stay a polynomial"
        )));
    }
    if s == 0 {
        return Ok(p.clone());
    }

    // direct route on ordinary coefficients
    let c = p.ordinary_coeffs();
    let mut coeffs = Vec::with_capacity(d - s + 1);
    let norm = crate::scalar::falling(d as u64, s as u64);
    for k in 0..=d - s {
        // d^s/dx^s of c_k x^{d-k} contributes c_k (d-k)_s x^{d-s-k}
        coeffs.push(&c[k] * crate::scalar::falling((d - k) as u64, s as u64) / &norm);
    }
    let direct = MonicPoly::from_ordinary_coeffs(&coeffs)?;

    // multiplicative route: q_d = x^s (x-1)^{d-s}, then strip x^s
    let q = kernel_poly(d, s)?;
    let prod = boxtimes_d(p, &q)?;
    let pc = prod.ordinary_coeffs();
    // x^s * (degree d-s monic) has the low s ordinary coefficients zero
    debug_assert!(pc[d - s + 1..].iter().all(|v| v.is_zero()));
    let via_boxtimes = MonicPoly::from_ordinary_coeffs(&pc[..=d - s])?;

    assert_eq!(
        direct, via_boxtimes,
        "differentiation routes disagree; internal error"
    );
    Ok(direct)
}

/// `x^s (x-1)^{d-s}` as a degree-`d` monic polynomial.
fn kernel_poly(d: usize, s: usize) -> Result<MonicPoly> {
    let mut atilde = Vec::with_capacity(d + 1);
    for k in 0..=d {
        atilde.push(binomial((d - s) as u64, k as u64) / binomial(d as u64, k as u64));
    }
    MonicPoly::new(atilde)
}

/// Scales every root by `t`: `a~_k -> t^k a~_k`.
pub fn dilate(p: &MonicPoly, t: &Q) -> Result<MonicPoly> {
    if t.is_zero() {
        return Err(Error::Invalid("dilation by zero".into()));
    }
    let atilde = p
        .atilde()
        .iter()
        .enumerate()
        .map(|(k, a)| Ok(a * q_pow(t, k as i64)?))
        .collect::<Result<Vec<_>>>()?;
    MonicPoly::new(atilde)
}

/// Shifts every root by `c`; the binomial re-expansion coincides with
/// `p ⊞_d (x-c)^d`.
pub fn shift(p: &MonicPoly, c: &Q) -> Result<MonicPoly> {
    boxplus_d(p, &MonicPoly::point_mass(p.degree(), c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{finite_cumulants_from_coeffs, MonicPoly};
    use crate::scalar::{q_int, q_ratio};

    fn qs(vals: &[i64]) -> Vec<Q> {
        vals.iter().map(|&v| q_int(v)).collect()
    }

    #[test]
    fn boxplus_identity_and_point_masses() {
        let p = MonicPoly::from_roots(&qs(&[2, -1, 3])).unwrap();
        assert_eq!(boxplus_d(&p, &MonicPoly::power(3)).unwrap(), p);

        // (x-1)^2 boxplus (x+1)^2 = x^2
        let a = MonicPoly::from_roots(&qs(&[1, 1])).unwrap();
        let b = MonicPoly::from_roots(&qs(&[-1, -1])).unwrap();
        assert_eq!(boxplus_d(&a, &b).unwrap(), MonicPoly::power(2));

        assert!(boxplus_d(&p, &MonicPoly::power(4)).is_err());
    }

    #[test]
    fn boxtimes_identities() {
        let p = MonicPoly::from_roots(&qs(&[2, -1, 3, 5])).unwrap();
        let one = MonicPoly::point_mass(4, &q_int(1));
        assert_eq!(boxtimes_d(&p, &one).unwrap(), p);
        assert_eq!(
            boxtimes_d(&MonicPoly::power(4), &p).unwrap(),
            MonicPoly::power(4)
        );

        // (x^2-1) boxtimes (x^2-1) has a~ = [1, 0, 1]
        let b = MonicPoly::from_roots(&qs(&[1, -1])).unwrap();
        let sq = boxtimes_d(&b, &b).unwrap();
        assert_eq!(sq.atilde(), &qs(&[1, 0, 1]));
    }

    #[test]
    fn convolutions_commute_and_associate() {
        let p = MonicPoly::from_roots(&qs(&[1, 2, -3, 0, 4])).unwrap();
        let q = MonicPoly::from_roots(&[q_ratio(1, 2), q_int(3), q_int(-1), q_int(2), q_int(1)])
            .unwrap();
        let r = MonicPoly::from_roots(&qs(&[-2, -2, 1, 5, 3])).unwrap();
        for op in [boxplus_d, boxtimes_d] {
            assert_eq!(op(&p, &q).unwrap(), op(&q, &p).unwrap());
            assert_eq!(
                op(&op(&p, &q).unwrap(), &r).unwrap(),
                op(&p, &op(&q, &r).unwrap()).unwrap()
            );
        }
    }

    #[test]
    fn cumulants_linearize_boxplus() {
        let p = MonicPoly::from_roots(&qs(&[1, 4, -2, 7, 0, 3])).unwrap();
        let q = MonicPoly::from_roots(&qs(&[-1, -1, 2, 2, 5, -4])).unwrap();
        let conv = boxplus_d(&p, &q).unwrap();
        let (kp, kq, kc) = (
            finite_cumulants_from_coeffs(&p, 6).unwrap(),
            finite_cumulants_from_coeffs(&q, 6).unwrap(),
            finite_cumulants_from_coeffs(&conv, 6).unwrap(),
        );
        for n in 1..=6 {
            assert_eq!(*kc.get(n), kp.get(n) + kq.get(n), "n={n}");
        }
    }

    #[test]
    fn product_expansion_small_cases() {
        // q = (x-1)^d is the identity: expansion returns kappa_n(p)
        let p = MonicPoly::from_roots(&qs(&[2, -1, 3, 1, 0])).unwrap();
        let one = MonicPoly::point_mass(5, &q_int(1));
        let kp = finite_cumulants_from_coeffs(&p, 5).unwrap();
        let k1 = finite_cumulants_from_coeffs(&one, 5).unwrap();
        for n in 1..=5 {
            assert_eq!(
                kappa_product_expansion(5, &kp, &k1, n).unwrap(),
                *kp.get(n),
                "n={n}"
            );
        }
        // p = q = (x-alpha)^d at n = 1 gives alpha^2
        let alpha = q_ratio(3, 4);
        let pm = MonicPoly::point_mass(4, &alpha);
        let km = finite_cumulants_from_coeffs(&pm, 4).unwrap();
        assert_eq!(
            kappa_product_expansion(4, &km, &km, 1).unwrap(),
            &alpha * &alpha
        );
    }

    #[test]
    fn product_expansion_matches_boxtimes() {
        let p = MonicPoly::from_roots(&qs(&[1, 2, -1, 3, -2, 1])).unwrap();
        let q = MonicPoly::from_roots(&qs(&[2, 2, 1, -1, 4, 0])).unwrap();
        let kp = finite_cumulants_from_coeffs(&p, 6).unwrap();
        let kq = finite_cumulants_from_coeffs(&q, 6).unwrap();
        let kprod = finite_cumulants_from_coeffs(&boxtimes_d(&p, &q).unwrap(), 6).unwrap();
        for n in 1..=6 {
            assert_eq!(
                kappa_product_expansion(6, &kp, &kq, n).unwrap(),
                *kprod.get(n),
                "n={n}"
            );
        }
    }

    #[test]
    fn derivative_examples() {
        let p = MonicPoly::from_roots(&qs(&[1, -1])).unwrap();
        assert_eq!(derivative_poly(&p, 0).unwrap(), p);
        // (x^2-1)'/2 = x
        assert_eq!(derivative_poly(&p, 1).unwrap(), MonicPoly::power(1));
        assert!(derivative_poly(&p, 2).is_err());
    }

    #[test]
    fn derivative_cumulant_scaling() {
        // kappa_n of the rescaled derivative shrinks by ((d-s)/d)^{n-1}
        let p = MonicPoly::from_roots(&qs(&[1, 2, 3, 4, 5, 6, 7, 8])).unwrap();
        let d = 8usize;
        for s in 1..=4 {
            let q = derivative_poly(&p, s).unwrap();
            assert_eq!(q.degree(), d - s);
            let kp = finite_cumulants_from_coeffs(&p, d - s).unwrap();
            let kq = finite_cumulants_from_coeffs(&q, d - s).unwrap();
            let ratio = q_ratio((d - s) as i64, d as i64);
            for n in 1..=d - s {
                assert_eq!(
                    *kq.get(n),
                    kp.get(n) * q_pow(&ratio, n as i64 - 1).unwrap(),
                    "s={s} n={n}"
                );
            }
        }
    }

    #[test]
    fn dilate_and_shift() {
        let p = MonicPoly::from_roots(&qs(&[1, -1])).unwrap();
        assert_eq!(dilate(&p, &q_int(1)).unwrap(), p);
        assert_eq!(
            dilate(&p, &q_int(2)).unwrap(),
            MonicPoly::from_roots(&qs(&[2, -2])).unwrap()
        );
        assert!(dilate(&p, &q_int(0)).is_err());
        assert_eq!(
            shift(&MonicPoly::power(5), &q_ratio(5, 2)).unwrap(),
            MonicPoly::point_mass(5, &q_ratio(5, 2))
        );
        // shift agrees with root-level shifting
        let roots = qs(&[0, 3, -2, 1]);
        let moved: Vec<Q> = roots.iter().map(|r| r + q_ratio(1, 3)).collect();
        assert_eq!(
            shift(&MonicPoly::from_roots(&roots).unwrap(), &q_ratio(1, 3)).unwrap(),
            MonicPoly::from_roots(&moved).unwrap()
        );
    }
}
