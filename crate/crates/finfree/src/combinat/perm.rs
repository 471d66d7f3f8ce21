//! Permutations of `[n]` and annular non-crossing permutations.
//!
//! Products use the convention `(a b)(k) = a(b(k))`: the right factor acts
//! first. This is the one choice that reproduces the standard Kreweras
//! complement `Kr(pi) = pi^{-1} gamma_n` on non-crossing partitions, and it
//! is fixed here once for the whole crate.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::combinat::partition::SetPartition;
use crate::error::{Error, Result};

/// Largest `t + s` for brute-force annular enumeration over `S_{t+s}`.
pub const MAX_ANNULAR_N: usize = 10;

/// A permutation of `[n]`, stored by images (`images[i-1] = sigma(i)`).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<usize>,
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        let mut wrote = false;
        for c in &cycles {
            if c.len() == 1 {
                continue;
            }
            wrote = true;
            write!(f, "(")?;
            for (i, e) in c.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{e}")?;
            }
            write!(f, ")")?;
        }
        if !wrote {
            write!(f, "id")?;
        }
        Ok(())
    }
}

impl Perm {
    /// Validates an image vector as a bijection of `[n]`.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &v in &images {
            if v == 0 || v > n || seen[v] {
                return Err(Error::Invalid("images are not a bijection of [n]".into()));
            }
            seen[v] = true;
        }
        Ok(Perm { images })
    }

    pub fn identity(n: usize) -> Self {
        Perm {
            images: (1..=n).collect(),
        }
    }

    /// The long cycle `gamma_n = (1, 2, ..., n)`.
    pub fn cycle_gamma(n: usize) -> Self {
        Perm {
            images: (1..=n).map(|i| i % n + 1).collect(),
        }
    }

    /// The annulus permutation `gamma_{t,s} = (1..t)(t+1..t+s)`.
    pub fn gamma_annular(t: usize, s: usize) -> Self {
        let mut images = Vec::with_capacity(t + s);
        for i in 1..=t {
            images.push(if i == t { 1 } else { i + 1 });
        }
        for i in t + 1..=t + s {
            images.push(if i == t + s { t + 1 } else { i + 1 });
        }
        Perm { images }
    }

    /// Builds from disjoint cycles (each cycle maps `c[i] -> c[i+1]`, wrapping).
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images = vec![0usize; n];
        for c in cycles {
            for (i, &e) in c.iter().enumerate() {
                if e == 0 || e > n || images[e - 1] != 0 {
                    return Err(Error::Invalid("bad cycle list".into()));
                }
                images[e - 1] = c[(i + 1) % c.len()];
            }
        }
        if images.contains(&0) {
            return Err(Error::Invalid("cycles do not cover [n]".into()));
        }
        Ok(Perm { images })
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, k: usize) -> usize {
        self.images[k - 1]
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0usize; self.n()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v - 1] = i + 1;
        }
        Perm { images }
    }

    /// Product `self * other` with `(self * other)(k) = self(other(k))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.n(), other.n(), "composition of mismatched sizes");
        Perm {
            images: (1..=self.n()).map(|k| self.apply(other.apply(k))).collect(),
        }
    }

    /// Cycles listed by minimum element, each starting at its minimum.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n + 1];
        let mut out = Vec::new();
        for start in 1..=n {
            if seen[start] {
                continue;
            }
            let mut c = vec![start];
            seen[start] = true;
            let mut cur = self.apply(start);
            while cur != start {
                seen[cur] = true;
                c.push(cur);
                cur = self.apply(cur);
            }
            out.push(c);
        }
        out
    }

    /// Number of cycles including fixed points, written `|sigma|`.
    pub fn cycle_count(&self) -> usize {
        self.cycles().len()
    }

    /// Cycle lengths, by cycle minimum.
    pub fn cycle_lengths(&self) -> Vec<usize> {
        self.cycles().into_iter().map(|c| c.len()).collect()
    }

    /// Forgets the cycle order: the partition whose blocks are the cycles.
    pub fn cycle_partition(&self) -> SetPartition {
        SetPartition::new(self.n(), self.cycles()).expect("cycles partition [n]")
    }
}

/// Kreweras complement on the `(t,s)`-annulus: `Kr_{t,s}(sigma) = sigma^{-1} gamma_{t,s}`.
pub fn kreweras_annular(sigma: &Perm, t: usize, s: usize) -> Result<Perm> {
    if sigma.n() != t + s {
        return Err(Error::Dimension(format!(
            "permutation of [{}] on a ({t},{s})-annulus",
            sigma.n()
        )));
    }
    Ok(sigma.inverse().compose(&Perm::gamma_annular(t, s)))
}

/// The annular non-crossing permutations `S_NC(t, s)`, memoized per `(t, s)`.
///
/// Brute force over `S_{t+s}` in lexicographic image order, keeping the
/// permutations that join with `gamma_{t,s}` to the full partition and
/// satisfy `|sigma| + |sigma^{-1} gamma_{t,s}| = t + s`.
pub fn enum_annular(t: usize, s: usize) -> Result<Arc<Vec<Perm>>> {
    if t == 0 || s == 0 || t + s > MAX_ANNULAR_N {
        return Err(Error::SizeLimit(format!(
            "annular enumeration needs t,s >= 1 and t+s <= {MAX_ANNULAR_N}, got ({t},{s})"
        )));
    }
    type AnnularCache = Mutex<HashMap<(usize, usize), Arc<Vec<Perm>>>>;
    static CACHE: OnceLock<AnnularCache> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().unwrap().get(&(t, s)) {
        return Ok(Arc::clone(v));
    }

    let n = t + s;
    let gamma = Perm::gamma_annular(t, s);
    let mut out = Vec::new();
    let mut images: Vec<usize> = (1..=n).collect();
    loop {
        let sigma = Perm {
            images: images.clone(),
        };
        if is_annular_noncrossing(&sigma, &gamma, t, n) {
            out.push(sigma);
        }
        if !next_permutation(&mut images) {
            break;
        }
    }
    let v = Arc::new(out);
    cache.lock().unwrap().insert((t, s), Arc::clone(&v));
    Ok(v)
}

fn is_annular_noncrossing(sigma: &Perm, gamma: &Perm, t: usize, n: usize) -> bool {
    // transitivity of <sigma, gamma_{t,s}>: some cycle of sigma crosses circles
    let crosses = (1..=t).any(|k| sigma.apply(k) > t);
    if !crosses {
        return false;
    }
    let kr = sigma.inverse().compose(gamma);
    sigma.cycle_count() + kr.cycle_count() == n
}

fn next_permutation(v: &mut [usize]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_convention() {
        // (1,2) then gamma_3, per (a b)(k) = a(b(k))
        let pi = Perm::from_cycles(3, &[vec![1, 2], vec![3]]).unwrap();
        let prod = pi.inverse().compose(&Perm::cycle_gamma(3));
        assert_eq!(prod.cycles(), vec![vec![1], vec![2, 3]]);
    }

    #[test]
    fn cycles_by_minimum() {
        let p = Perm::new(vec![4, 2, 5, 1, 3]).unwrap();
        assert_eq!(p.cycles(), vec![vec![1, 4], vec![2], vec![3, 5]]);
        assert_eq!(p.cycle_count(), 3);
        assert_eq!(p.inverse().compose(&p), Perm::identity(5));
    }

    #[test]
    fn annular_1_1() {
        let a = enum_annular(1, 1).unwrap();
        assert_eq!(a.len(), 1);
        assert_eq!(a[0].cycles(), vec![vec![1, 2]]);
        // Kr_{1,1}((1,2)) = (1,2)
        assert_eq!(kreweras_annular(&a[0], 1, 1).unwrap(), a[0]);
    }

    #[test]
    fn annular_2_1() {
        let a = enum_annular(2, 1).unwrap();
        assert_eq!(a.len(), 4);
        let expected: Vec<Perm> = [
            vec![vec![1, 3], vec![2]],
            vec![vec![2, 3], vec![1]],
            vec![vec![1, 2, 3]],
            vec![vec![1, 3, 2]],
        ]
        .iter()
        .map(|c| Perm::from_cycles(3, c).unwrap())
        .collect();
        for e in &expected {
            assert!(a.contains(e), "missing {e}");
        }
        // Kr_{2,1}((1,3)) = (1,2,3)
        let sigma = Perm::from_cycles(3, &[vec![1, 3], vec![2]]).unwrap();
        assert_eq!(
            kreweras_annular(&sigma, 2, 1).unwrap(),
            Perm::from_cycles(3, &[vec![1, 2, 3]]).unwrap()
        );
    }

    #[test]
    fn annular_cycle_identity_and_transitivity() {
        for (t, s) in [(2, 2), (1, 3), (3, 2)] {
            let n = t + s;
            for sigma in enum_annular(t, s).unwrap().iter() {
                let kr = kreweras_annular(sigma, t, s).unwrap();
                assert_eq!(sigma.cycle_count() + kr.cycle_count(), n);
                assert!((1..=t).any(|k| sigma.apply(k) > t));
            }
        }
    }

    #[test]
    fn annular_symmetry_in_t_s() {
        for (t, s) in [(1, 2), (1, 3), (2, 3), (1, 4), (2, 4), (3, 4), (1, 5)] {
            assert_eq!(
                enum_annular(t, s).unwrap().len(),
                enum_annular(s, t).unwrap().len(),
                "({t},{s})"
            );
        }
    }

    #[test]
    fn annular_size_limit() {
        assert!(enum_annular(0, 3).is_err());
        assert!(enum_annular(6, 5).is_err());
    }

    #[test]
    fn cache_is_safe_for_concurrent_readers() {
        let handles: Vec<_> = (0..8)
            .map(|i| {
                std::thread::spawn(move || {
                    let (t, s) = (1 + i % 3, 1 + (i + 1) % 3);
                    enum_annular(t, s).unwrap().len()
                })
            })
            .collect();
        for h in handles {
            h.join().unwrap();
        }
    }
}
