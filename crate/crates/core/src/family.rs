//! Ground sets, subsets and set families.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::{Error, Result};

/// An ordered finite universe of named elements.
///
/// Element order fixes bit positions: the element at index `i` is bit `i` of
/// every [`Subset`] over this ground set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundSet {
    names: Vec<String>,
    index: BTreeMap<String, usize>,
}

impl GroundSet {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut out = GroundSet {
            names: Vec::new(),
            index: BTreeMap::new(),
        };
        for name in names {
            let name = name.into();
            if out.index.contains_key(&name) {
                return Err(Error::DuplicateElement(name));
            }
            out.index.insert(name.clone(), out.names.len());
            out.names.push(name);
        }
        Ok(out)
    }

    /// Ground set whose elements are named `0`, `1`, ..., `m-1`.
    pub fn indexed(m: usize) -> Self {
        GroundSet::new((0..m).map(|i| i.to_string())).expect("indices are distinct")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    /// Builds a subset from element names.
    pub fn subset<I, S>(&self, names: I) -> Result<Subset>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut s = Subset::empty(self.len());
        for name in names {
            let name = name.as_ref();
            let i = self
                .position(name)
                .ok_or_else(|| Error::UnknownElement(name.to_string()))?;
            s.insert(i);
        }
        Ok(s)
    }

    pub fn full(&self) -> Subset {
        Subset::full(self.len())
    }

    pub fn element_names<'a>(&'a self, s: &'a Subset) -> impl Iterator<Item = &'a str> + 'a {
        s.iter().map(move |i| self.name(i))
    }
}

const WORD: usize = 64;

fn words_for(m: usize) -> usize {
    m.div_ceil(WORD)
}

/// A subset of a universe `{0, .., m-1}`, stored as a little-endian bitmask.
///
/// Ordering compares the bitmasks as unsigned integers, so `{0}` < `{1}` <
/// `{0,1}` < `{2}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subset {
    m: usize,
    words: Vec<u64>,
}

impl Subset {
    pub fn empty(m: usize) -> Self {
        Subset {
            m,
            words: vec![0; words_for(m)],
        }
    }

    pub fn full(m: usize) -> Self {
        let mut s = Subset::empty(m);
        for w in s.words.iter_mut() {
            *w = u64::MAX;
        }
        s.trim();
        s
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(m: usize, items: I) -> Self {
        let mut s = Subset::empty(m);
        for i in items {
            s.insert(i);
        }
        s
    }

    /// Subset of a universe of at most 64 elements from a raw mask.
    ///
    /// Bits at positions `>= m` are dropped.
    pub fn from_mask(m: usize, mask: u64) -> Self {
        assert!(m <= WORD, "from_mask needs a universe of at most 64 elements");
        let mut s = Subset::empty(m);
        if let Some(w) = s.words.first_mut() {
            *w = mask;
        }
        s.trim();
        s
    }

    /// Contiguous index range `[lo, hi)`.
    pub fn range(m: usize, lo: usize, hi: usize) -> Self {
        Subset::from_indices(m, lo..hi.min(m))
    }

    fn trim(&mut self) {
        let rem = self.m % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    /// Size of the universe this subset lives in.
    pub fn universe(&self) -> usize {
        self.m
    }

    pub fn as_u64(&self) -> Option<u64> {
        match self.words.len() {
            0 => Some(0),
            1 => Some(self.words[0]),
            _ => None,
        }
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.m && self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        assert!(i < self.m, "index {i} outside universe of {}", self.m);
        self.words[i / WORD] |= 1 << (i % WORD);
    }

    pub fn remove(&mut self, i: usize) {
        if i < self.m {
            self.words[i / WORD] &= !(1 << (i % WORD));
        }
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// `|self ∩ other|` without allocating.
    pub fn intersection_len(&self, other: &Subset) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    fn zip_with(&self, other: &Subset, f: impl Fn(u64, u64) -> u64) -> Subset {
        debug_assert_eq!(self.m, other.m);
        Subset {
            m: self.m,
            words: self.words.iter().zip(&other.words).map(|(&a, &b)| f(a, b)).collect(),
        }
    }

    pub fn intersection(&self, other: &Subset) -> Subset {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn union(&self, other: &Subset) -> Subset {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn difference(&self, other: &Subset) -> Subset {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn is_subset(&self, other: &Subset) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_strict_subset(&self, other: &Subset) -> bool {
        self.is_subset(other) && self != other
    }

    /// Element indices in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            core::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * WORD + b)
            })
        })
    }
}

impl Ord for Subset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.m
            .cmp(&other.m)
            .then_with(|| self.words.iter().rev().cmp(other.words.iter().rev()))
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A deduplicated family of subsets of one ground set.
///
/// Members are kept sorted in bitmask order, which fixes iteration order and
/// every tie-break that depends on it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetFamily {
    ground: Arc<GroundSet>,
    sets: Vec<Subset>,
    profile: BTreeMap<usize, usize>,
}

impl SetFamily {
    /// Collapses duplicates and computes the cardinality profile.
    pub fn new(ground: Arc<GroundSet>, sets: Vec<Subset>) -> Result<Self> {
        let m = ground.len();
        if let Some(bad) = sets.iter().find(|s| s.universe() != m) {
            return Err(Error::UniverseMismatch {
                expected: m,
                found: bad.universe(),
            });
        }
        Ok(Self::from_parts(ground, sets))
    }

    /// Builds a family from element-name lists.
    pub fn from_names<S: AsRef<str>>(ground: Arc<GroundSet>, sets: &[Vec<S>]) -> Result<Self> {
        let subsets = sets
            .iter()
            .map(|s| ground.subset(s.iter().map(AsRef::as_ref)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_parts(ground, subsets))
    }

    pub(crate) fn from_parts(ground: Arc<GroundSet>, mut sets: Vec<Subset>) -> Self {
        sets.sort_unstable();
        sets.dedup();
        let mut profile = BTreeMap::new();
        for s in &sets {
            *profile.entry(s.len()).or_insert(0) += 1;
        }
        SetFamily {
            ground,
            sets,
            profile,
        }
    }

    pub fn ground(&self) -> &Arc<GroundSet> {
        &self.ground
    }

    pub fn ground_size(&self) -> usize {
        self.ground.len()
    }

    pub fn sets(&self) -> &[Subset] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn contains(&self, s: &Subset) -> bool {
        self.sets.binary_search(s).is_ok()
    }

    /// Number of members per cardinality; cardinalities with no member are absent.
    pub fn profile(&self) -> &BTreeMap<usize, usize> {
        &self.profile
    }

    pub fn count_of_size(&self, j: usize) -> usize {
        self.profile.get(&j).copied().unwrap_or(0)
    }

    pub fn max_cardinality(&self) -> usize {
        self.profile.keys().next_back().copied().unwrap_or(0)
    }

    /// Union of all members.
    pub fn union_of_members(&self) -> Subset {
        let mut u = Subset::empty(self.ground_size());
        for s in &self.sets {
            u = u.union(s);
        }
        u
    }

    /// The members of cardinality `j`, as a family over the same ground set.
    pub fn slice(&self, j: usize) -> SetFamily {
        let sets = self.sets.iter().filter(|s| s.len() == j).cloned().collect();
        Self::from_parts(self.ground.clone(), sets)
    }

    /// Members as raw masks; `None` when the ground set exceeds 64 elements.
    pub fn masks(&self) -> Option<Vec<u64>> {
        if self.ground_size() > WORD {
            return None;
        }
        Some(self.sets.iter().map(|s| s.as_u64().unwrap_or(0)).collect())
    }

    /// `true` iff every cardinality `j >= 1` has at most `(j+1)^(d-1)` members.
    ///
    /// Cardinality zero is not constrained.
    pub fn is_d_bounded(&self, d: u32) -> bool {
        assert!(d >= 1, "d-boundedness is defined for d >= 1");
        self.profile
            .iter()
            .filter(|(&j, _)| j >= 1)
            .all(|(&j, &count)| (count as u64) <= ceiling(j, d))
    }

    /// Smallest `d` for which the family is d-bounded, with the cardinality
    /// that rules out `d - 1`.
    pub fn min_boundedness(&self) -> BoundednessReport {
        BoundednessReport::from_profile(&self.profile)
    }

    /// `{ h ∩ other : h ∈ self }`.
    pub fn restrict(&self, other: &Subset) -> SetFamily {
        let sets = self.sets.iter().map(|s| s.intersection(other)).collect();
        Self::from_parts(self.ground.clone(), sets)
    }

    /// `{ h \ other : h ∈ self }`.
    pub fn subtract(&self, other: &Subset) -> SetFamily {
        let sets = self.sets.iter().map(|s| s.difference(other)).collect();
        Self::from_parts(self.ground.clone(), sets)
    }

    /// `true` iff the members can be listed so that each strictly contains the
    /// previous one.
    pub fn is_chain(&self) -> bool {
        let mut by_size: Vec<&Subset> = self.sets.iter().collect();
        by_size.sort_by_key(|s| s.len());
        by_size.windows(2).all(|w| w[0].is_strict_subset(w[1]))
    }
}

/// `(j+1)^(d-1)`, saturating at `u64::MAX`.
pub fn ceiling(j: usize, d: u32) -> u64 {
    (j as u64 + 1).saturating_pow(d - 1)
}

/// Smallest `e` with `(j+1)^e >= count`.
fn exponent_needed(j: usize, count: usize) -> u32 {
    let base = j as u64 + 1;
    let mut e = 0;
    let mut power = 1u64;
    while power < count as u64 {
        power = power.saturating_mul(base);
        e += 1;
    }
    e
}

/// Smallest `d >= 1` such that every `(j, count)` pair with `j >= 1` obeys
/// `count <= (j+1)^(d-1)`, and the first cardinality that forces it.
pub(crate) fn min_d_of(counts: impl Iterator<Item = (usize, usize)>) -> (u32, Option<usize>) {
    let mut min_d = 1;
    let mut violating_j = None;
    for (j, count) in counts.filter(|&(j, _)| j >= 1) {
        let d = exponent_needed(j, count) + 1;
        if d > min_d {
            min_d = d;
            violating_j = Some(j);
        }
    }
    (min_d, violating_j)
}

/// One cardinality of a [`BoundednessReport`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CardinalityCount {
    pub j: usize,
    pub count: usize,
    /// `(j+1)^(min_d-1)`.
    pub ceiling: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundednessReport {
    pub per_j: Vec<CardinalityCount>,
    pub min_d: u32,
    /// A cardinality whose count exceeds `(j+1)^(min_d-2)`; `None` when `min_d == 1`.
    pub violating_j: Option<usize>,
}

impl BoundednessReport {
    fn from_profile(profile: &BTreeMap<usize, usize>) -> Self {
        let (min_d, violating_j) = min_d_of(profile.iter().map(|(&j, &c)| (j, c)));
        let per_j = profile
            .iter()
            .filter(|(&j, _)| j >= 1)
            .map(|(&j, &count)| CardinalityCount {
                j,
                count,
                ceiling: ceiling(j, min_d),
            })
            .collect();
        BoundednessReport {
            per_j,
            min_d,
            violating_j,
        }
    }
}
