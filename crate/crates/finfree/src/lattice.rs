//! Shared machinery for the double sums over pairs of set partitions with
//! full join, used by the cumulant-moment and product-cumulant formulas.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::combinat::{for_each_partition, mobius_partition_to_top, SetPartition};
use crate::error::{Error, Result};
use crate::scalar::{factorial, q_pow, Q};

/// The double partition sums are over `P(n)^2`; P(8) = 4140 keeps them exact
/// and affordable, P(9) does not.
pub const MAX_DOUBLE_SUM_N: usize = 8;

pub(crate) struct PartMeta {
    pub rgs: Vec<u8>,
    pub sizes: Vec<u8>,
    pub blocks: usize,
    /// Möb(0_n, pi) on the partition lattice.
    pub mob0: i64,
    /// Möb(pi, 1_n) on the partition lattice.
    pub mob_top: i64,
}

/// Cached metadata for every partition of `[n]`, RGS order.
pub(crate) fn partition_meta(n: usize) -> Result<Arc<Vec<PartMeta>>> {
    if n == 0 || n > MAX_DOUBLE_SUM_N {
        return Err(Error::SizeLimit(format!(
            "partition double sums support 1..={MAX_DOUBLE_SUM_N}, got {n}"
        )));
    }
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Vec<PartMeta>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap();
    if let Some(v) = guard.get(&n) {
        return Ok(Arc::clone(v));
    }
    let mut metas = Vec::new();
    for_each_partition(n, |p| metas.push(meta_of(p)))?;
    let v = Arc::new(metas);
    guard.insert(n, Arc::clone(&v));
    Ok(v)
}

/// Visits every partition of `[n]` as `(block_sizes, Möb(pi, 1_n))`, using
/// the cached metadata for small `n` and streaming beyond the double-sum cap.
pub(crate) fn for_each_partition_shape(
    n: usize,
    mut f: impl FnMut(&[u8], i64),
) -> Result<()> {
    if n <= MAX_DOUBLE_SUM_N {
        for m in partition_meta(n)?.iter() {
            f(&m.sizes, m.mob_top);
        }
        return Ok(());
    }
    for_each_partition(n, |p| {
        let sizes: Vec<u8> = p.blocks().iter().map(|b| b.len() as u8).collect();
        f(&sizes, mobius_partition_to_top(p));
    })
}

fn meta_of(p: &SetPartition) -> PartMeta {
    let sizes: Vec<u8> = p.blocks().iter().map(|b| b.len() as u8).collect();
    let mut mob0 = 1i64;
    for &s in &sizes {
        let mut f = 1i64;
        for i in 1..s as i64 {
            f *= i;
        }
        mob0 *= if s % 2 == 0 { -f } else { f };
    }
    PartMeta {
        rgs: p.rgs().iter().map(|&b| b as u8).collect(),
        sizes,
        blocks: p.block_count(),
        mob0,
        mob_top: mobius_partition_to_top(p),
    }
}

/// Do the partitions encoded by two RGS vectors join to `1_n`?
pub(crate) fn join_is_full(a: &[u8], b: &[u8]) -> bool {
    let n = a.len();
    let mut parent: [u8; 16] = [0; 16];
    for (i, p) in parent.iter_mut().enumerate().take(n) {
        *p = i as u8;
    }
    fn find(parent: &mut [u8; 16], mut x: u8) -> u8 {
        while parent[x as usize] != x {
            parent[x as usize] = parent[parent[x as usize] as usize];
            x = parent[x as usize];
        }
        x
    }
    // first occurrence of each block id links later members to it
    for rgs in [a, b] {
        let mut firsts: [u8; 16] = [u8::MAX; 16];
        for i in 0..n {
            let blk = rgs[i] as usize;
            if firsts[blk] == u8::MAX {
                firsts[blk] = i as u8;
            } else {
                let (ra, rb) = (find(&mut parent, firsts[blk]), find(&mut parent, i as u8));
                if ra != rb {
                    parent[ra.max(rb) as usize] = ra.min(rb);
                }
            }
        }
    }
    (0..n as u8).all(|i| find(&mut parent, i) == 0)
}

fn product_by_sizes(values: &[Q], sizes: &[u8]) -> Q {
    let mut acc = Q::one();
    for &s in sizes {
        acc *= &values[s as usize - 1];
    }
    acc
}

/// `(-1)^{n-1}/(n-1)! * sum over pi, theta in P(n), pi v theta = 1_n` of
/// `d^{|pi|+|theta|-n-1} Möb(0,pi) Möb(0,theta) a_pi b_theta`.
///
/// `a[k-1]` and `b[k-1]` hold the sequence values `a_k`, `b_k` for k <= n.
pub(crate) fn weighted_join_sum(n: usize, d: u64, a: &[Q], b: &[Q]) -> Result<Q> {
    let metas = partition_meta(n)?;
    let a_prods: Vec<Q> = metas.iter().map(|m| product_by_sizes(a, &m.sizes)).collect();
    let b_prods: Vec<Q> = metas.iter().map(|m| product_by_sizes(b, &m.sizes)).collect();
    let d_q = Q::from_integer(BigInt::from(d));
    // bucket by |pi|+|theta| to apply each power of d once
    let mut buckets: Vec<Q> = vec![Q::zero(); 2 * n];
    for (i, mi) in metas.iter().enumerate() {
        if a_prods[i].is_zero() {
            continue;
        }
        for (j, mj) in metas.iter().enumerate() {
            if b_prods[j].is_zero() {
                continue;
            }
            if join_is_full(&mi.rgs, &mj.rgs) {
                let mob = mi.mob0 * mj.mob0;
                buckets[mi.blocks + mj.blocks - 2] +=
                    Q::from_integer(BigInt::from(mob)) * &a_prods[i] * &b_prods[j];
            }
        }
    }
    let mut total = Q::zero();
    for (idx, v) in buckets.into_iter().enumerate() {
        if !v.is_zero() {
            total += v * q_pow(&d_q, idx as i64 + 2 - n as i64 - 1)?;
        }
    }
    let sign = if n % 2 == 1 { Q::one() } else { -Q::one() };
    Ok(total * sign / factorial(n as u64 - 1))
}
