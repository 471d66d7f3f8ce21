//! Set partitions of `[n] = {1, ..., n}`, the non-crossing lattice, Möbius
//! functions, and Kreweras complementation.
//!
//! Partitions are kept in canonical form: blocks ordered by their minimum
//! element, elements ascending inside each block. The partial order used
//! everywhere is reversed refinement (`pi <= theta` iff every block of `pi`
//! is contained in a block of `theta`).

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::combinat::perm::Perm;
use crate::error::{Error, Result};

/// Hard cap for full-partition enumeration (Bell numbers grow fast).
pub const MAX_PARTITION_N: usize = 12;
/// Hard cap for non-crossing enumeration (Catalan numbers).
pub const MAX_NC_N: usize = 14;

/// A partition of `{1, ..., n}` into disjoint non-empty blocks, canonical form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl fmt::Debug for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.blocks {
            write!(f, "{{")?;
            for (i, e) in b.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{e}")?;
            }
            write!(f, "}}")?;
        }
        Ok(())
    }
}

impl SetPartition {
    /// Validates and canonicalizes a block list.
    pub fn new(n: usize, mut blocks: Vec<Vec<usize>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid("ground set must be non-empty".into()));
        }
        let mut seen = vec![false; n + 1];
        let mut count = 0usize;
        for b in &mut blocks {
            if b.is_empty() {
                return Err(Error::Invalid("empty block".into()));
            }
            b.sort_unstable();
            for &e in b.iter() {
                if e == 0 || e > n {
                    return Err(Error::Invalid(format!("element {e} outside 1..={n}")));
                }
                if seen[e] {
                    return Err(Error::Invalid(format!("element {e} repeated")));
                }
                seen[e] = true;
                count += 1;
            }
        }
        if count != n {
            return Err(Error::Invalid("blocks do not cover the ground set".into()));
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        Ok(SetPartition { n, blocks })
    }

    /// Builds from a restricted growth string (`rgs[i]` = block id of `i+1`).
    pub fn from_rgs(rgs: &[usize]) -> Self {
        let n = rgs.len();
        let k = rgs.iter().copied().max().map_or(0, |m| m + 1);
        let mut blocks = vec![Vec::new(); k];
        for (i, &b) in rgs.iter().enumerate() {
            blocks[b].push(i + 1);
        }
        SetPartition { n, blocks }
    }

    /// The restricted growth string; block ids follow first appearance.
    pub fn rgs(&self) -> Vec<usize> {
        let mut out = vec![0usize; self.n];
        for (bi, b) in self.blocks.iter().enumerate() {
            for &e in b {
                out[e - 1] = bi;
            }
        }
        out
    }

    /// Discrete partition `0_n` (all singletons).
    pub fn discrete(n: usize) -> Self {
        SetPartition {
            n,
            blocks: (1..=n).map(|e| vec![e]).collect(),
        }
    }

    /// Full partition `1_n` (one block).
    pub fn full(n: usize) -> Self {
        SetPartition {
            n,
            blocks: vec![(1..=n).collect()],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// Number of blocks, written `|pi|`.
    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// Sizes of the blocks in canonical order.
    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.len()).collect()
    }

    /// Reversed refinement order: `self <= other`.
    pub fn refines(&self, other: &SetPartition) -> bool {
        if self.n != other.n {
            return false;
        }
        let other_of = other.rgs();
        self.blocks.iter().all(|b| {
            let target = other_of[b[0] - 1];
            b.iter().all(|&e| other_of[e - 1] == target)
        })
    }

    /// Join (supremum) in the partition lattice, via connected components.
    pub fn join(&self, other: &SetPartition) -> Result<SetPartition> {
        if self.n != other.n {
            return Err(Error::Dimension(format!(
                "join of partitions of [{}] and [{}]",
                self.n, other.n
            )));
        }
        let mut uf = UnionFind::new(self.n);
        for p in [self, other] {
            for b in &p.blocks {
                for w in b.windows(2) {
                    uf.union(w[0] - 1, w[1] - 1);
                }
            }
        }
        Ok(uf.into_partition())
    }

    /// Crossing test straight from the defining quadruple condition.
    pub fn is_noncrossing(&self) -> bool {
        let rgs = self.rgs();
        let n = self.n;
        for a in 0..n {
            for b in a + 1..n {
                if rgs[b] == rgs[a] {
                    continue;
                }
                for c in b + 1..n {
                    if rgs[c] != rgs[a] {
                        continue;
                    }
                    for d in c + 1..n {
                        if rgs[d] == rgs[b] {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// The permutation whose cycles are the blocks, elements in increasing order.
    pub fn to_perm(&self) -> Perm {
        Perm::from_cycles(self.n, &self.blocks).expect("canonical blocks form valid cycles")
    }

    /// Kreweras complement: the cycle partition of `pi^{-1} gamma_n`.
    pub fn kreweras(&self) -> Result<SetPartition> {
        if !self.is_noncrossing() {
            return Err(Error::NotNonCrossing(self.to_string()));
        }
        let p = self.to_perm().inverse().compose(&Perm::cycle_gamma(self.n));
        Ok(p.cycle_partition())
    }

    /// Inverse Kreweras complement: the `pi` with `Kr(pi) = self`.
    pub fn kreweras_inverse(&self) -> Result<SetPartition> {
        if !self.is_noncrossing() {
            return Err(Error::NotNonCrossing(self.to_string()));
        }
        // Kr(pi) = pi^{-1} gamma as permutations, so pi = gamma Kr(pi)^{-1}.
        let p = Perm::cycle_gamma(self.n).compose(&self.to_perm().inverse());
        Ok(p.cycle_partition())
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut c = x;
        while self.parent[c] != r {
            let next = self.parent[c];
            self.parent[c] = r;
            c = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }

    fn into_partition(mut self) -> SetPartition {
        let n = self.parent.len();
        let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
        for e in 0..n {
            let r = self.find(e);
            groups.entry(r).or_default().push(e + 1);
        }
        let mut blocks: Vec<Vec<usize>> = groups.into_values().collect();
        blocks.sort_unstable_by_key(|b| b[0]);
        SetPartition { n, blocks }
    }
}

/// Streams every partition of `[n]` in restricted-growth-string order.
pub fn for_each_partition(n: usize, mut f: impl FnMut(&SetPartition)) -> Result<()> {
    if n == 0 || n > MAX_PARTITION_N {
        return Err(Error::SizeLimit(format!(
            "partition enumeration supports 1..={MAX_PARTITION_N}, got {n}"
        )));
    }
    let mut rgs = vec![0usize; n];
    loop {
        f(&SetPartition::from_rgs(&rgs));
        // lexicographic successor among restricted growth strings
        let mut i = n;
        loop {
            if i == 1 {
                return Ok(());
            }
            i -= 1;
            let cap = rgs[..i].iter().copied().max().unwrap() + 1;
            if rgs[i] < cap {
                rgs[i] += 1;
                for e in rgs[i + 1..].iter_mut() {
                    *e = 0;
                }
                break;
            }
        }
    }
}

/// Every partition of `[n]`, RGS order.
pub fn enum_partitions(n: usize) -> Result<Vec<SetPartition>> {
    let mut out = Vec::new();
    for_each_partition(n, |p| out.push(p.clone()))?;
    Ok(out)
}

/// Streams the non-crossing partitions of `[n]` in a fixed deterministic order.
///
/// Recursive first-block decomposition: the block of the least element is
/// chosen, the leftover elements split into independent gaps.
pub fn for_each_noncrossing(n: usize, mut f: impl FnMut(&SetPartition)) -> Result<()> {
    if n == 0 || n > MAX_NC_N {
        return Err(Error::SizeLimit(format!(
            "non-crossing enumeration supports 1..={MAX_NC_N}, got {n}"
        )));
    }
    let mut work: Vec<Vec<usize>> = vec![(1..=n).collect()];
    let mut acc: Vec<Vec<usize>> = Vec::new();
    rec_nc(&mut work, &mut acc, n, &mut f);
    Ok(())
}

fn rec_nc(
    work: &mut Vec<Vec<usize>>,
    acc: &mut Vec<Vec<usize>>,
    n: usize,
    f: &mut impl FnMut(&SetPartition),
) {
    let elems = match work.pop() {
        None => {
            let p = SetPartition::new(n, acc.clone()).expect("recursion builds valid blocks");
            f(&p);
            return;
        }
        Some(e) => e,
    };
    let first = elems[0];
    let rest = &elems[1..];
    let m = rest.len();
    for mask in 0..(1usize << m) {
        let mut block = vec![first];
        let mut gaps: Vec<Vec<usize>> = Vec::new();
        let mut cur: Vec<usize> = Vec::new();
        for (i, &e) in rest.iter().enumerate() {
            if mask & (1 << i) != 0 {
                block.push(e);
                if !cur.is_empty() {
                    gaps.push(std::mem::take(&mut cur));
                }
            } else {
                cur.push(e);
            }
        }
        if !cur.is_empty() {
            gaps.push(cur);
        }
        let depth = work.len();
        work.extend(gaps);
        acc.push(block);
        rec_nc(work, acc, n, f);
        acc.pop();
        work.truncate(depth);
    }
    work.push(elems);
}

/// Every non-crossing partition of `[n]`.
pub fn enum_noncrossing(n: usize) -> Result<Vec<SetPartition>> {
    let mut out = Vec::new();
    for_each_noncrossing(n, |p| out.push(p.clone()))?;
    Ok(out)
}

/// Cached `NC(n)` for the moment/cumulant sums (small n only).
pub fn nc_cached(n: usize) -> Result<Arc<Vec<SetPartition>>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Vec<SetPartition>>>>> = OnceLock::new();
    if n > 12 {
        return Err(Error::SizeLimit(format!("NC cache supports n <= 12, got {n}")));
    }
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap();
    if let Some(v) = guard.get(&n) {
        return Ok(Arc::clone(v));
    }
    let v = Arc::new(enum_noncrossing(n)?);
    guard.insert(n, Arc::clone(&v));
    Ok(v)
}

/// Möbius function of the full partition lattice `P(n)`.
///
/// Uses the interval isomorphism: inside each block of `theta`, the blocks of
/// `pi` merge freely, so the interval factors into full-lattice intervals.
pub fn mobius_partition(pi: &SetPartition, theta: &SetPartition) -> Result<i64> {
    if pi.n != theta.n {
        return Err(Error::Dimension("Möbius of mismatched ground sets".into()));
    }
    if !pi.refines(theta) {
        return Err(Error::NotComparable(format!("{pi} !<= {theta}")));
    }
    let theta_of = theta.rgs();
    let mut counts = vec![0u64; theta.block_count()];
    for b in &pi.blocks {
        counts[theta_of[b[0] - 1]] += 1;
    }
    Ok(counts.iter().map(|&k| mobius_zero_one(k)).product())
}

/// `Möb(0_k, 1_k) = (-1)^{k-1} (k-1)!`.
fn mobius_zero_one(k: u64) -> i64 {
    let mut f = 1i64;
    for i in 1..k {
        f *= i as i64;
    }
    if k.is_multiple_of(2) {
        -f
    } else {
        f
    }
}

/// `k`-th Catalan number as i64 (valid through k = 30).
pub fn catalan(k: u64) -> i64 {
    let mut c: i128 = 1;
    for i in 0..k as i128 {
        c = c * 2 * (2 * i + 1) / (i + 2);
    }
    c as i64
}

/// Möbius function of the non-crossing lattice `NC(n)`.
///
/// The bottom intervals `[0_n, pi]` use the Catalan closed form; general
/// intervals fall back to the defining recursion with memoization.
pub fn mobius_nc(pi: &SetPartition, theta: &SetPartition) -> Result<i64> {
    if pi.n != theta.n {
        return Err(Error::Dimension("Möbius of mismatched ground sets".into()));
    }
    if !pi.is_noncrossing() || !theta.is_noncrossing() {
        return Err(Error::NotNonCrossing(format!("{pi} or {theta}")));
    }
    if !pi.refines(theta) {
        return Err(Error::NotComparable(format!("{pi} !<= {theta}")));
    }
    if pi.block_count() == pi.n {
        // Möb_NC(0_n, theta) = (-1)^{n - |theta|} prod C_{|V|-1}
        let mut sign = if (pi.n - theta.block_count()).is_multiple_of(2) { 1 } else { -1 };
        for b in &theta.blocks {
            sign *= catalan(b.len() as u64 - 1);
        }
        return Ok(sign);
    }

    static CACHE: OnceLock<Mutex<HashMap<(SetPartition, SetPartition), i64>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(&v) = cache.lock().unwrap().get(&(pi.clone(), theta.clone())) {
        return Ok(v);
    }
    if pi.n > 10 {
        return Err(Error::SizeLimit(format!(
            "general NC Möbius recursion supports n <= 10, got {}",
            pi.n
        )));
    }

    // One bottom-up pass over the interval [pi, theta] resolves every
    // Möb(sigma, theta) for sigma in the interval at once.
    let mut interval: Vec<SetPartition> = Vec::new();
    for_each_noncrossing(pi.n, |s| {
        if pi.refines(s) && s.refines(theta) {
            interval.push(s.clone());
        }
    })?;
    // coarser partitions (fewer blocks) first
    interval.sort_by_key(|s| (s.block_count(), s.clone()));
    let mut values: HashMap<SetPartition, i64> = HashMap::new();
    for s in &interval {
        let v = if s == theta {
            1
        } else {
            let mut acc = 0i64;
            for t in &interval {
                if t != s && s.refines(t) {
                    acc += values[t];
                }
            }
            -acc
        };
        values.insert(s.clone(), v);
    }
    let mut guard = cache.lock().unwrap();
    for (s, v) in &values {
        guard.insert((s.clone(), theta.clone()), *v);
    }
    Ok(values[pi])
}

/// `Möb_NC(pi, 1_n)` via the Kreweras complement product form.
///
/// Fast path for the lattice sums; validated against [`mobius_nc`] in tests.
pub fn mobius_nc_to_top(pi: &SetPartition) -> Result<i64> {
    let kr = pi.kreweras()?;
    let mut out = 1i64;
    for b in kr.blocks() {
        let k = b.len() as u64;
        let c = catalan(k - 1);
        out *= if k.is_multiple_of(2) { -c } else { c };
    }
    Ok(out)
}

/// `Möb(pi, 1_n)` on the full partition lattice: `(-1)^{|pi|-1} (|pi|-1)!`.
pub fn mobius_partition_to_top(pi: &SetPartition) -> i64 {
    mobius_zero_one(pi.block_count() as u64)
}

/// The distinct cyclic-interval partitions of `[n]`: the image of
/// `S -> Kr^{-1}(S ∪ 0_{[n]\S})` over non-empty subsets `S`, deduplicated.
pub fn enum_cyclic_intervals(n: usize) -> Result<Vec<SetPartition>> {
    let mut all: Vec<SetPartition> = cyclic_interval_images(n)?
        .into_iter()
        .map(|(_, p)| p)
        .collect();
    all.sort();
    all.dedup();
    Ok(all)
}

/// The raw image of the defining bijection, one partition per non-empty
/// subset `S` (ordered by subset bitmask). The full partition `1_n` appears
/// `n` times, once per singleton `S`; the multiplicities matter in the
/// moment formulas that sum over subsets.
pub fn cyclic_interval_images(n: usize) -> Result<Vec<(usize, SetPartition)>> {
    if n == 0 || n > MAX_PARTITION_N {
        return Err(Error::SizeLimit(format!(
            "cyclic interval enumeration supports 1..={MAX_PARTITION_N}, got {n}"
        )));
    }
    let mut out = Vec::with_capacity((1usize << n) - 1);
    for mask in 1usize..(1 << n) {
        let s: Vec<usize> = (1..=n).filter(|e| mask & (1 << (e - 1)) != 0).collect();
        let size = s.len();
        let mut blocks = vec![s];
        for e in 1..=n {
            if mask & (1 << (e - 1)) == 0 {
                blocks.push(vec![e]);
            }
        }
        let marked = SetPartition::new(n, blocks)?;
        out.push((size, marked.kreweras_inverse()?));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(n: usize, blocks: &[&[usize]]) -> SetPartition {
        SetPartition::new(n, blocks.iter().map(|b| b.to_vec()).collect()).unwrap()
    }

    #[test]
    fn enumeration_counts_match_bell_recurrence() {
        // Bell numbers from the Bell-triangle recurrence, independent of the enumerator.
        let mut bell = vec![1u64];
        let mut row = vec![1u64];
        for _ in 1..11 {
            let mut next = vec![*row.last().unwrap()];
            for &x in &row {
                next.push(next.last().unwrap() + x);
            }
            bell.push(next[0]);
            row = next;
        }
        assert_eq!(enum_partitions(1).unwrap().len(), 1);
        assert_eq!(enum_partitions(3).unwrap().len(), 5);
        assert_eq!(enum_partitions(8).unwrap().len(), 4140);
        for n in 1..=10 {
            assert_eq!(enum_partitions(n).unwrap().len() as u64, bell[n]);
        }
        assert!(enum_partitions(0).is_err());
        assert!(enum_partitions(13).is_err());
    }

    #[test]
    fn rgs_order_is_lexicographic_and_unique() {
        let all = enum_partitions(4).unwrap();
        let rgs: Vec<Vec<usize>> = all.iter().map(|p| p.rgs()).collect();
        let mut sorted = rgs.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(rgs, sorted);
    }

    #[test]
    fn noncrossing_counts_match_catalan_recurrence() {
        // Catalan via the convolution recurrence.
        let mut cat = [1u64; 13];
        for n in 1..=12 {
            cat[n] = (0..n).map(|k| cat[k] * cat[n - 1 - k]).sum();
        }
        assert_eq!(enum_noncrossing(3).unwrap().len(), 5);
        assert_eq!(enum_noncrossing(4).unwrap().len(), 14);
        assert_eq!(enum_noncrossing(6).unwrap().len(), 132);
        for n in 1..=10 {
            assert_eq!(enum_noncrossing(n).unwrap().len() as u64, cat[n]);
        }
    }

    #[test]
    fn noncrossing_enum_agrees_with_filter() {
        for n in 1..=7 {
            let mut filtered: Vec<SetPartition> = enum_partitions(n)
                .unwrap()
                .into_iter()
                .filter(|p| p.is_noncrossing())
                .collect();
            filtered.sort();
            let mut direct = enum_noncrossing(n).unwrap();
            direct.sort();
            assert_eq!(filtered, direct);
        }
    }

    #[test]
    fn crossing_detection() {
        assert!(!sp(4, &[&[1, 3], &[2, 4]]).is_noncrossing());
        assert!(sp(4, &[&[1, 4], &[2, 3]]).is_noncrossing());
        for n in 1..=10 {
            assert!(SetPartition::full(n).is_noncrossing());
        }
    }

    #[test]
    fn algebraic_noncrossing_characterization() {
        // |pi| + |pi^{-1} gamma_n| = n + 1 iff non-crossing.
        for n in 1..=7 {
            for p in enum_partitions(n).unwrap() {
                let kr_cycles = p
                    .to_perm()
                    .inverse()
                    .compose(&Perm::cycle_gamma(n))
                    .cycle_count();
                let algebraic = p.block_count() + kr_cycles == n + 1;
                assert_eq!(algebraic, p.is_noncrossing(), "n={n} pi={p}");
            }
        }
    }

    #[test]
    fn join_examples() {
        let p = sp(3, &[&[1, 2], &[3]]);
        let q = sp(3, &[&[1], &[2, 3]]);
        assert_eq!(p.join(&q).unwrap(), SetPartition::full(3));
        assert_eq!(p.join(&SetPartition::discrete(3)).unwrap(), p);
        assert_eq!(p.join(&p).unwrap(), p);
        assert!(p.join(&SetPartition::discrete(4)).is_err());
    }

    #[test]
    fn mobius_partition_values() {
        let one3 = SetPartition::full(3);
        assert_eq!(mobius_partition(&one3, &one3).unwrap(), 1);
        assert_eq!(mobius_partition(&SetPartition::discrete(3), &one3).unwrap(), 2);
        assert_eq!(mobius_partition(&sp(3, &[&[1, 2], &[3]]), &one3).unwrap(), -1);
        assert!(mobius_partition(&one3, &SetPartition::discrete(3)).is_err());
    }

    #[test]
    fn mobius_partition_defining_relation() {
        // sum_{pi <= sigma <= theta} Möb(sigma, theta) = [pi == theta], exhaustive n <= 6
        for n in 1..=6 {
            let all = enum_partitions(n).unwrap();
            for pi in &all {
                for theta in &all {
                    if !pi.refines(theta) {
                        continue;
                    }
                    let total: i64 = all
                        .iter()
                        .filter(|s| pi.refines(s) && s.refines(theta))
                        .map(|s| mobius_partition(s, theta).unwrap())
                        .sum();
                    assert_eq!(total, i64::from(pi == theta), "pi={pi} theta={theta}");
                }
            }
        }
    }

    #[test]
    fn mobius_nc_values() {
        assert_eq!(
            mobius_nc(&SetPartition::discrete(2), &SetPartition::full(2)).unwrap(),
            -1
        );
        assert_eq!(
            mobius_nc(&SetPartition::discrete(4), &SetPartition::full(4)).unwrap(),
            -5
        );
        assert_eq!(
            mobius_nc(&SetPartition::discrete(3), &SetPartition::full(3)).unwrap(),
            2
        );
        let crossing = sp(4, &[&[1, 3], &[2, 4]]);
        assert!(mobius_nc(&crossing, &SetPartition::full(4)).is_err());
    }

    #[test]
    fn mobius_nc_defining_relation_and_closed_forms() {
        for n in 1..=6 {
            let all = enum_noncrossing(n).unwrap();
            for pi in &all {
                for theta in &all {
                    if !pi.refines(theta) {
                        continue;
                    }
                    let total: i64 = all
                        .iter()
                        .filter(|s| pi.refines(s) && s.refines(theta))
                        .map(|s| mobius_nc(s, theta).unwrap())
                        .sum();
                    assert_eq!(total, i64::from(pi == theta));
                }
            }
            // product form for [pi, 1_n] against the recursion
            let top = SetPartition::full(n);
            for pi in &all {
                assert_eq!(mobius_nc_to_top(pi).unwrap(), mobius_nc(pi, &top).unwrap());
            }
        }
    }

    #[test]
    fn kreweras_examples_and_bijectivity() {
        assert_eq!(
            SetPartition::discrete(5).kreweras().unwrap(),
            SetPartition::full(5)
        );
        assert_eq!(
            SetPartition::full(5).kreweras().unwrap(),
            SetPartition::discrete(5)
        );
        assert_eq!(
            sp(3, &[&[1, 2], &[3]]).kreweras().unwrap(),
            sp(3, &[&[1], &[2, 3]])
        );
        assert!(sp(4, &[&[1, 3], &[2, 4]]).kreweras().is_err());

        for n in 1..=8 {
            let all = enum_noncrossing(n).unwrap();
            let mut images = Vec::new();
            for p in &all {
                let kr = p.kreweras().unwrap();
                assert!(kr.is_noncrossing());
                assert_eq!(p.block_count() + kr.block_count(), n + 1, "pi={p}");
                assert_eq!(kr.kreweras_inverse().unwrap(), *p);
                images.push(kr);
            }
            images.sort();
            images.dedup();
            assert_eq!(images.len(), all.len(), "Kr injective on NC({n})");
        }
    }

    #[test]
    fn cyclic_intervals() {
        assert_eq!(enum_cyclic_intervals(1).unwrap(), vec![SetPartition::full(1)]);
        let ci2 = enum_cyclic_intervals(2).unwrap();
        assert_eq!(ci2.len(), 2);
        assert!(ci2.contains(&SetPartition::full(2)));
        assert!(ci2.contains(&SetPartition::discrete(2)));
        // every block is a cyclic interval of [n]
        for n in 1..=8 {
            let ci = enum_cyclic_intervals(n).unwrap();
            for p in &ci {
                for b in p.blocks() {
                    assert!(is_cyclic_interval(n, b), "n={n} pi={p}");
                }
            }
            // distinct count: 2^n - n (one uncut partition plus binom(n,k) cut sets, k >= 2)
            assert_eq!(ci.len(), (1usize << n) - n);
            // multiplicity: |S| equals the block count of the image
            for (s_len, p) in cyclic_interval_images(n).unwrap() {
                assert_eq!(s_len, p.block_count());
            }
        }
    }

    fn is_cyclic_interval(n: usize, b: &[usize]) -> bool {
        if b.len() == n {
            return true;
        }
        // some rotation of the sorted block must be contiguous mod n
        (0..n).any(|start| {
            let run: Vec<usize> = (0..b.len()).map(|i| (start + i) % n + 1).collect();
            let mut sorted = run.clone();
            sorted.sort_unstable();
            sorted == b
        })
    }
}
