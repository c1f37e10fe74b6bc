//! Suffix array with LCP, used to enumerate distinct factors exactly.
//!
//! Suffixes sharing a length-`n` prefix form one contiguous run in the
//! sorted order, so the distinct length-`n` factors are exactly the
//! suffixes of length `>= n` whose LCP with their predecessor is `< n`.

use crate::word::Letter;

#[derive(Debug, Clone)]
pub struct FactorIndex<'a> {
    text: &'a [Letter],
    sa: Vec<u32>,
    lcp: Vec<u32>,
}

impl<'a> FactorIndex<'a> {
    pub fn new(text: &'a [Letter]) -> Self {
        let sa = suffix_array(text);
        let lcp = kasai(text, &sa);
        Self { text, sa, lcp }
    }

    pub fn text(&self) -> &'a [Letter] {
        self.text
    }

    /// Number of distinct factors of length `n` (1 for `n = 0`).
    pub fn count(&self, n: usize) -> u64 {
        if n == 0 {
            return 1;
        }
        self.starts(n).count() as u64
    }

    /// One start position per distinct length-`n` factor, in lexicographic
    /// order of the factors.
    pub fn starts(&self, n: usize) -> impl Iterator<Item = usize> + '_ {
        let len = self.text.len();
        self.sa
            .iter()
            .zip(&self.lcp)
            .filter(move |&(&s, &l)| n > 0 && len - s as usize >= n && (l as usize) < n)
            .map(|(&s, _)| s as usize)
    }

    /// Distinct length-`n` factors as slices of the text, lexicographic.
    pub fn factors(&self, n: usize) -> impl Iterator<Item = &'a [Letter]> + '_ {
        let text = self.text;
        self.starts(n).map(move |s| &text[s..s + n])
    }

    /// For each start position, the rank of the length-`n` factor found there
    /// among all distinct length-`n` factors (lexicographic), or `None` when
    /// fewer than `n` letters remain.
    pub fn classes(&self, n: usize) -> Vec<Option<u32>> {
        let len = self.text.len();
        let mut classes = vec![None; len];
        let mut class: Option<u32> = None;
        for (&s, &l) in self.sa.iter().zip(&self.lcp) {
            if len - (s as usize) < n {
                continue;
            }
            if (l as usize) < n || class.is_none() {
                class = Some(class.map_or(0, |c| c + 1));
            }
            classes[s as usize] = class;
        }
        classes
    }

    /// `counts[n]` for every `n` in `0..=max_n`, in one pass.
    pub fn counts_up_to(&self, max_n: usize) -> Vec<u64> {
        let len = self.text.len();
        let mut diff = vec![0i64; max_n + 2];
        for (&s, &l) in self.sa.iter().zip(&self.lcp) {
            let lo = l as usize + 1;
            let hi = (len - s as usize).min(max_n);
            if lo <= hi {
                diff[lo] += 1;
                diff[hi + 1] -= 1;
            }
        }
        let mut counts = Vec::with_capacity(max_n + 1);
        let mut acc = 0i64;
        for (n, d) in diff.iter().take(max_n + 1).enumerate() {
            acc += d;
            counts.push(if n == 0 { 1 } else { acc as u64 });
        }
        counts
    }
}

/// Prefix doubling with a two-key sort per round.
fn suffix_array(text: &[Letter]) -> Vec<u32> {
    let n = text.len();
    let mut sa: Vec<u32> = (0..n as u32).collect();
    if n <= 1 {
        return sa;
    }
    let mut rank: Vec<u32> = text.iter().map(|&c| u32::from(c)).collect();
    let mut next = vec![0u32; n];
    let mut k = 1;
    loop {
        let key = |i: u32| {
            let i = i as usize;
            let second = if i + k < n { rank[i + k] + 1 } else { 0 };
            (rank[i], second)
        };
        sa.sort_unstable_by_key(|&i| key(i));
        next[sa[0] as usize] = 0;
        for w in 1..n {
            let bump = u32::from(key(sa[w - 1]) != key(sa[w]));
            next[sa[w] as usize] = next[sa[w - 1] as usize] + bump;
        }
        std::mem::swap(&mut rank, &mut next);
        if rank[sa[n - 1] as usize] as usize == n - 1 || k >= n {
            break;
        }
        k *= 2;
    }
    sa
}

/// `lcp[i]` = longest common prefix of suffixes `sa[i - 1]` and `sa[i]`; `lcp[0] = 0`.
fn kasai(text: &[Letter], sa: &[u32]) -> Vec<u32> {
    let n = text.len();
    let mut rank = vec![0usize; n];
    for (i, &s) in sa.iter().enumerate() {
        rank[s as usize] = i;
    }
    let mut lcp = vec![0u32; n];
    let mut h = 0usize;
    for i in 0..n {
        if rank[i] > 0 {
            let j = sa[rank[i] - 1] as usize;
            while i + h < n && j + h < n && text[i + h] == text[j + h] {
                h += 1;
            }
            lcp[rank[i]] = h as u32;
            h = h.saturating_sub(1);
        } else {
            h = 0;
        }
    }
    lcp
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::*;

    fn naive(text: &[Letter], n: usize) -> Vec<Vec<Letter>> {
        let set: BTreeSet<&[Letter]> = text.windows(n).collect();
        set.into_iter().map(<[Letter]>::to_vec).collect()
    }

    #[test]
    fn banana() {
        let text: Vec<Letter> = b"banana".iter().map(|c| c - b'a').collect();
        let idx = FactorIndex::new(&text);
        assert_eq!(idx.sa, [5, 3, 1, 0, 4, 2]);
        assert_eq!(idx.lcp, [0, 1, 3, 0, 0, 2]);
    }

    #[test]
    fn matches_naive_enumeration() {
        let mut state = 12345u64;
        for len in [0usize, 1, 2, 7, 40, 333] {
            for q in [1u8, 2, 3] {
                let text: Vec<Letter> = (0..len)
                    .map(|_| {
                        state = state.wrapping_mul(6364136223846793005).wrapping_add(1);
                        ((state >> 33) % u64::from(q)) as Letter
                    })
                    .collect();
                let idx = FactorIndex::new(&text);
                let counts = idx.counts_up_to(len + 1);
                for n in 1..=len + 1 {
                    let expected = naive(&text, n);
                    let got: Vec<Vec<Letter>> = idx.factors(n).map(<[Letter]>::to_vec).collect();
                    assert_eq!(got, expected, "len={len} q={q} n={n}");
                    assert_eq!(counts[n], expected.len() as u64);
                    assert_eq!(idx.count(n), expected.len() as u64);
                    for (pos, class) in idx.classes(n).into_iter().enumerate() {
                        match class {
                            Some(c) => assert_eq!(expected[c as usize], &text[pos..pos + n]),
                            None => assert!(pos + n > len),
                        }
                    }
                }
            }
        }
    }
}
