//! Tuples of a fixed length with entries from a set and a fixed sum.

/// All `(u_1, ..., u_b)` with every `u_i` in `domain` and `Σ u_i = total`,
/// visited in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositionSpace {
    total: u32,
    parts: u32,
    domain: Vec<u32>,
}

impl CompositionSpace {
    pub fn new(total: u32, parts: u32, domain: impl IntoIterator<Item = u32>) -> Self {
        let mut domain: Vec<u32> = domain.into_iter().collect();
        domain.sort_unstable();
        domain.dedup();
        Self { total, parts, domain }
    }

    /// Entries in `{0, ..., total}`.
    pub fn weak(total: u32, parts: u32) -> Self {
        Self::new(total, parts, 0..=total)
    }

    /// Entries in `{0, ..., max}`.
    pub fn bounded(total: u32, parts: u32, max: u32) -> Self {
        Self::new(total, parts, 0..=max)
    }

    pub fn total(&self) -> u32 {
        self.total
    }

    pub fn parts(&self) -> u32 {
        self.parts
    }

    pub fn domain(&self) -> &[u32] {
        &self.domain
    }

    /// Number of tuples, by dynamic programming over the parts.
    pub fn count(&self) -> u128 {
        let t = self.total as usize;
        let mut ways = vec![0u128; t + 1];
        ways[0] = 1;
        for _ in 0..self.parts {
            let mut next = vec![0u128; t + 1];
            for (s, &w) in ways.iter().enumerate() {
                if w == 0 {
                    continue;
                }
                for &d in &self.domain {
                    let d = d as usize;
                    if s + d > t {
                        break;
                    }
                    next[s + d] += w;
                }
            }
            ways = next;
        }
        ways[t]
    }

    pub fn for_each<F: FnMut(&[u32])>(&self, mut f: F) {
        let mut buf = Vec::with_capacity(self.parts as usize);
        self.walk(&mut buf, self.total, self.parts, &mut f);
    }

    /// Tuples whose first entry is `first`.
    pub fn for_each_with_first<F: FnMut(&[u32])>(&self, first: u32, mut f: F) {
        if self.parts == 0 || first > self.total || self.domain.binary_search(&first).is_err() {
            return;
        }
        let mut buf = Vec::with_capacity(self.parts as usize);
        buf.push(first);
        self.walk(&mut buf, self.total - first, self.parts - 1, &mut f);
    }

    pub fn to_vec(&self) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        self.for_each(|t| out.push(t.to_vec()));
        out
    }

    fn walk<F: FnMut(&[u32])>(&self, buf: &mut Vec<u32>, remaining: u32, slots: u32, f: &mut F) {
        if slots == 0 {
            if remaining == 0 {
                f(buf);
            }
            return;
        }
        let max = *self.domain.last().unwrap_or(&0) as u64;
        for &d in &self.domain {
            if d > remaining {
                break;
            }
            // the other slots cannot absorb what is left
            if (remaining - d) as u64 > max * (slots - 1) as u64 {
                continue;
            }
            buf.push(d);
            self.walk(buf, remaining - d, slots - 1, f);
            buf.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use statrs::function::factorial::binomial;

    #[test]
    fn weak_compositions_match_stars_and_bars() {
        for total in 0..9u32 {
            for parts in 1..6u32 {
                let s = CompositionSpace::weak(total, parts);
                let v = s.to_vec();
                assert_eq!(v.len() as u128, s.count());
                let want = binomial((total + parts - 1) as u64, (parts - 1) as u64);
                assert_eq!(v.len() as f64, want, "total={total} parts={parts}");
                for t in &v {
                    assert_eq!(t.len(), parts as usize);
                    assert_eq!(t.iter().sum::<u32>(), total);
                }
                let mut sorted = v.clone();
                sorted.sort();
                sorted.dedup();
                assert_eq!(sorted, v, "lexicographic and distinct");
            }
        }
    }

    /// Direct recursion `N(a, b) = Σ_{s ∈ S, s ≤ a} N(a - s, b - 1)`.
    fn direct(a: u32, b: u32, s: &[u32]) -> u128 {
        if b == 0 {
            return u128::from(a == 0);
        }
        s.iter().filter(|&&d| d <= a).map(|&d| direct(a - d, b - 1, s)).sum()
    }

    #[test]
    fn bounded_and_sparse_domains() {
        for a in 0..10u32 {
            for b in 1..6u32 {
                let q = CompositionSpace::bounded(a, b, 2);
                assert_eq!(q.to_vec().len() as u128, direct(a, b, &[0, 1, 2]));
                assert_eq!(q.count(), direct(a, b, &[0, 1, 2]));
                let odd = CompositionSpace::new(a, b, [1, 3, 5]);
                assert_eq!(odd.to_vec().len() as u128, direct(a, b, &[1, 3, 5]));
                assert!(odd.to_vec().iter().all(|t| t.iter().all(|x| x % 2 == 1)));
            }
        }
        assert_eq!(CompositionSpace::bounded(7, 3, 2).count(), 0);
    }

    #[test]
    fn first_entry_chunks_partition_the_space() {
        let s = CompositionSpace::weak(6, 4);
        let mut chunked = Vec::new();
        for first in 0..=6 {
            s.for_each_with_first(first, |t| {
                assert_eq!(t[0], first);
                chunked.push(t.to_vec());
            });
        }
        assert_eq!(chunked, s.to_vec());
    }
}
