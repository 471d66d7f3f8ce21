use finfree::families::bernoulli_pair;
use finfree::infin::inf_moments_from_fluctuations;
use finfree::scalar::{format_q, q_pow, q_ratio, Q};
use finfree::series::{h_transform_analytic, moments_from_cauchy, z_series_from_cumulants};
use finfree::freeprob::Law;
use num_traits::One;

fn main() {
    let order = 8;
    let fluct = bernoulli_pair().meta_fluct_law(order).unwrap();
    let t = q_ratio(1, 2);

    // nu = Dil_t mu^{boxplus 1/t}
    let r_nu: Vec<Q> = (1..=order)
        .map(|n| &fluct.base.cumulants()[n - 1] * q_pow(&t, n as i64 - 1).unwrap())
        .collect();
    let nu = Law::from_cumulants(r_nu).unwrap();
    println!("nu moments: {:?}", nu.moments().iter().map(format_q).collect::<Vec<_>>());

    // dictionary route
    let rhat_q: Vec<Q> = (1..=order)
        .map(|n| q_pow(&t, n as i64 - 1).unwrap() * &fluct.rhat()[n - 1])
        .collect();
    println!("rhat_q: {:?}", rhat_q.iter().map(format_q).collect::<Vec<_>>());
    let dict = inf_moments_from_fluctuations(&nu, &rhat_q).unwrap();
    println!("dict m': {:?}", dict.iter().map(format_q).collect::<Vec<_>>());

    // formula route
    let g = nu.cauchy();
    let gp = g.derivative();
    let scaled_rhat = z_series_from_cumulants(fluct.rhat()).scale_argument(&t).unwrap();
    let formula = scaled_rhat
        .compose(&g.scale(&t)).unwrap()
        .mul(&gp).unwrap()
        .neg()
        .sub(&h_transform_analytic(&g).unwrap()).unwrap();
    let via = moments_from_cauchy(&formula, order).unwrap();
    println!("formula m': {:?}", via.iter().map(format_q).collect::<Vec<_>>());
    let _ = Q::one();
}
