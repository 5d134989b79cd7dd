//! Permutations in one-line notation.
//!
//! Values are 1-indexed (`σ(i) = entries[i-1]`), storage is 0-indexed, and the
//! empty permutation is a first-class value. All operations are pure; a
//! [`Permutation`] is immutable after construction.

use alloc::borrow::ToOwned;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

/// A permutation of `{1, …, n}` in one-line notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    entries: Vec<u32>,
}

/// Patterns are plain permutations used on the matching side of containment.
pub type Pattern = Permutation;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PermError {
    /// The entry list is not a bijection of `{1, …, n}`.
    NotBijection,
    /// Unparseable text form.
    Parse(String),
}

impl fmt::Display for PermError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PermError::NotBijection => write!(f, "entries are not a bijection of {{1,…,n}}"),
            PermError::Parse(s) => write!(f, "invalid permutation string: {s}"),
        }
    }
}

impl core::error::Error for PermError {}

impl Permutation {
    /// Validates that `entries` is a bijection of `{1, …, n}`.
    pub fn new(entries: Vec<u32>) -> Result<Self, PermError> {
        let n = entries.len();
        let mut seen = alloc::vec![false; n];
        for &v in &entries {
            if v == 0 || v as usize > n || seen[v as usize - 1] {
                return Err(PermError::NotBijection);
            }
            seen[v as usize - 1] = true;
        }
        Ok(Permutation { entries })
    }

    /// The empty permutation `∅`.
    pub fn empty() -> Self {
        Permutation {
            entries: Vec::new(),
        }
    }

    /// `1 2 ⋯ n`.
    pub fn identity(n: usize) -> Self {
        Permutation {
            entries: (1..=n as u32).collect(),
        }
    }

    /// `n (n−1) ⋯ 1`.
    pub fn decreasing(n: usize) -> Self {
        Permutation {
            entries: (1..=n as u32).rev().collect(),
        }
    }

    /// `k 1 2 ⋯ (k−1)` — the pattern family of the `G_k` generating functions.
    pub fn k_then_rising(k: usize) -> Self {
        let mut entries = Vec::with_capacity(k);
        entries.push(k as u32);
        entries.extend(1..k as u32);
        Permutation { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// One-line entries, 1-indexed values in 0-indexed storage.
    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = alloc::vec![0u32; self.len()];
        for (i, &v) in self.entries.iter().enumerate() {
            inv[v as usize - 1] = i as u32 + 1;
        }
        Permutation { entries: inv }
    }

    /// True iff `σ∘σ = id`, i.e. `σ(σ(i)) = i` for all `i`.
    pub fn is_involution(&self) -> bool {
        self.entries
            .iter()
            .enumerate()
            .all(|(i, &v)| self.entries[v as usize - 1] == i as u32 + 1)
    }

    /// Pattern containment: does some subsequence of `self` order-match `pat`?
    ///
    /// Backtracking over pattern slots left to right, with the value window
    /// implied by the already-matched slots propagated as a prune. The empty
    /// pattern is contained in everything.
    pub fn contains(&self, pat: &Pattern) -> bool {
        let k = pat.len();
        if k == 0 {
            return true;
        }
        if k > self.len() {
            return false;
        }
        let mut chosen: Vec<u32> = Vec::with_capacity(k);
        self.search(pat.entries(), 0, &mut chosen)
    }

    /// `!self.contains(pat)`.
    pub fn avoids(&self, pat: &Pattern) -> bool {
        !self.contains(pat)
    }

    fn search(&self, pat: &[u32], start: usize, chosen: &mut Vec<u32>) -> bool {
        let j = chosen.len();
        if j == pat.len() {
            return true;
        }
        // Window for the value at pattern slot j, from slots already fixed.
        let mut lo = 0u32;
        let mut hi = u32::MAX;
        for (s, &c) in chosen.iter().enumerate() {
            if pat[s] < pat[j] {
                lo = lo.max(c);
            } else {
                hi = hi.min(c);
            }
        }
        let last = self.len() - (pat.len() - j);
        for i in start..=last {
            let v = self.entries[i];
            if v > lo && v < hi {
                chosen.push(v);
                if self.search(pat, i + 1, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }

    /// Length of the longest strictly increasing subsequence, patience style.
    ///
    /// `tails[c]` holds the least possible final value of an increasing
    /// subsequence of length `c+1`; it stays sorted, so binary search gives
    /// O(n log n). `lis(∅) = 0`.
    pub fn lis(&self) -> usize {
        let mut tails: Vec<u32> = Vec::new();
        for &v in &self.entries {
            match tails.binary_search(&v) {
                // Values are distinct, so v is never already present.
                Ok(_) => unreachable!(),
                Err(pos) => {
                    if pos == tails.len() {
                        tails.push(v);
                    } else {
                        tails[pos] = v;
                    }
                }
            }
        }
        tails.len()
    }

    /// Direct sum `self ⊕ other`: `other` shifted above `self`.
    pub fn direct_sum(&self, other: &Permutation) -> Permutation {
        let k = self.len() as u32;
        let entries = self
            .entries
            .iter()
            .copied()
            .chain(other.entries.iter().map(|&v| v + k))
            .collect();
        Permutation { entries }
    }

    /// Skew sum `self ⊖ other`: `self` shifted above `other`.
    pub fn skew_sum(&self, other: &Permutation) -> Permutation {
        let m = other.len() as u32;
        let entries = self
            .entries
            .iter()
            .map(|&v| v + m)
            .chain(other.entries.iter().copied())
            .collect();
        Permutation { entries }
    }

    /// The unique maximal decomposition into nonempty ⊕-irreducibles.
    ///
    /// A split happens after position `i` exactly when the prefix occupies the
    /// value set `{1, …, i+1}`, i.e. when the running maximum equals `i+1`.
    pub fn irreducible_components(&self) -> Vec<Permutation> {
        let mut comps = Vec::new();
        let mut start = 0usize;
        let mut max = 0u32;
        for (i, &v) in self.entries.iter().enumerate() {
            max = max.max(v);
            if max as usize == i + 1 {
                let base = start as u32;
                comps.push(Permutation {
                    entries: self.entries[start..=i].iter().map(|&v| v - base).collect(),
                });
                start = i + 1;
            }
        }
        comps
    }

    /// The bar operator: the block-stripping map used by the family
    /// recurrences.
    ///
    /// Cases, in order: `∅ ↦ ∅` and `1 ↦ ∅`; `1⊖σ⊖1 ↦ σ`; `1⊖σ ↦ σ` when σ
    /// does not end with 1; `σ⊖1 ↦ σ` when the input does not begin with its
    /// maximum; otherwise the input itself. For `m ≥ 2` the four guards
    /// partition on (begins with m) × (ends with 1), so exactly one fires.
    pub fn bar(&self) -> Permutation {
        let m = self.len();
        if m <= 1 {
            return Permutation::empty();
        }
        let begins_max = self.entries[0] as usize == m;
        let ends_one = self.entries[m - 1] == 1;
        let entries = match (begins_max, ends_one) {
            (true, true) => self.entries[1..m - 1].iter().map(|&v| v - 1).collect(),
            (true, false) => self.entries[1..].to_vec(),
            (false, true) => self.entries[..m - 1].iter().map(|&v| v - 1).collect(),
            (false, false) => self.entries.clone(),
        };
        Permutation { entries }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

/// Compact digit string for n ≤ 9 ("3412"), comma-separated otherwise.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len() <= 9 {
            for &v in &self.entries {
                write!(f, "{v}")?;
            }
        } else {
            for (i, &v) in self.entries.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{v}")?;
            }
        }
        Ok(())
    }
}

/// Accepts both serialized forms; the empty string parses to `∅`.
impl FromStr for Permutation {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, PermError> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Permutation::empty());
        }
        let entries: Vec<u32> = if s.contains(',') {
            s.split(',')
                .map(|t| {
                    t.trim()
                        .parse::<u32>()
                        .map_err(|_| PermError::Parse(s.to_owned()))
                })
                .collect::<Result<_, _>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .filter(|&d| d > 0)
                        .ok_or_else(|| PermError::Parse(s.to_owned()))
                })
                .collect::<Result<_, _>>()?
        };
        Permutation::new(entries).map_err(|_| PermError::Parse(s.to_owned()))
    }
}
