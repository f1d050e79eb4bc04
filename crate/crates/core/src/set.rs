//! Ground sets of labels and bit-set subsets over them.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use smallvec::SmallVec;

use crate::error::{domain, LciError, Result};

/// Subset of a ground set, stored as a bit set over ground indices.
///
/// The word vector is kept without trailing zero words so that derived
/// equality and hashing coincide with set equality. `Ord` is the canonical
/// element order used everywhere: cardinality first, then the ascending
/// index sequence compared lexicographically.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct IndexSet {
    words: SmallVec<[u64; 2]>,
}

impl IndexSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn singleton(i: usize) -> Self {
        let mut s = Self::new();
        s.insert(i);
        s
    }

    /// The set `{0, 1, ..., n-1}`.
    pub fn full(n: usize) -> Self {
        (0..n).collect()
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    pub fn insert(&mut self, i: usize) {
        let (w, b) = (i / 64, i % 64);
        if self.words.len() <= w {
            self.words.resize(w + 1, 0);
        }
        self.words[w] |= 1 << b;
    }

    pub fn remove(&mut self, i: usize) {
        let (w, b) = (i / 64, i % 64);
        if w < self.words.len() {
            self.words[w] &= !(1 << b);
            self.trim();
        }
    }

    pub fn contains(&self, i: usize) -> bool {
        let (w, b) = (i / 64, i % 64);
        self.words.get(w).is_some_and(|x| x & (1 << b) != 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn union(&self, other: &Self) -> Self {
        let (long, short) = if self.words.len() >= other.words.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut words = long.words.clone();
        for (w, s) in words.iter_mut().zip(short.words.iter()) {
            *w |= s;
        }
        IndexSet { words }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let mut out = IndexSet {
            words: self
                .words
                .iter()
                .zip(other.words.iter())
                .map(|(a, b)| a & b)
                .collect(),
        };
        out.trim();
        out
    }

    pub fn difference(&self, other: &Self) -> Self {
        let mut out = IndexSet {
            words: self
                .words
                .iter()
                .enumerate()
                .map(|(k, a)| a & !other.words.get(k).copied().unwrap_or(0))
                .collect(),
        };
        out.trim();
        out
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.words.len() <= other.words.len()
            && self
                .words
                .iter()
                .zip(other.words.iter())
                .all(|(a, b)| a & !b == 0)
    }

    pub fn is_proper_subset(&self, other: &Self) -> bool {
        self != other && self.is_subset(other)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & b == 0)
    }

    /// Members in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(k * 64 + b)
                }
            })
        })
    }

    pub fn max_index(&self) -> Option<usize> {
        let k = self.words.len().checked_sub(1)?;
        Some(k * 64 + 63 - self.words[k].leading_zeros() as usize)
    }
}

impl FromIterator<usize> for IndexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = IndexSet::new();
        for i in iter {
            s.insert(i);
        }
        s
    }
}

impl Ord for IndexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.iter().cmp(other.iter()))
    }
}

impl PartialOrd for IndexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Ordered sequence of distinct element labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroundSet {
    labels: Vec<String>,
    index: HashMap<String, usize>,
}

impl GroundSet {
    pub fn new<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if l.is_empty() {
                return Err(domain("empty label in ground set"));
            }
            if index.insert(l.clone(), i).is_some() {
                return Err(domain(format!("duplicate label '{l}' in ground set")));
            }
        }
        Ok(GroundSet { labels, index })
    }

    /// Ground set `1, 2, ..., n`.
    pub fn numbered(n: usize) -> Self {
        Self::new((1..=n).map(|i| i.to_string())).expect("distinct labels")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn full(&self) -> IndexSet {
        IndexSet::full(self.len())
    }

    /// True when every label is a single character, so sets can be written
    /// as concatenated labels (`123`).
    pub fn compact(&self) -> bool {
        self.labels.iter().all(|l| l.chars().count() == 1)
    }

    pub fn set<S: AsRef<str>>(&self, labels: impl IntoIterator<Item = S>) -> Result<IndexSet> {
        labels
            .into_iter()
            .map(|l| {
                let l = l.as_ref();
                self.index_of(l)
                    .ok_or_else(|| domain(format!("label '{l}' is not in the ground set")))
            })
            .collect()
    }

    /// Parse a set written as `123` (compact ground sets only), `1,2,3`,
    /// `{1,2,3}`, or `{}` for the empty set.
    pub fn parse_set(&self, text: &str) -> Result<IndexSet> {
        let t = text.trim();
        let t = t
            .strip_prefix('{')
            .and_then(|x| x.strip_suffix('}'))
            .unwrap_or(t)
            .trim();
        if t.is_empty() || t == "∅" {
            return Ok(IndexSet::new());
        }
        if t.contains(',') || t.contains(char::is_whitespace) {
            let parts = t.split(|c: char| c == ',' || c.is_whitespace()).filter(|p| !p.is_empty());
            return self.set(parts);
        }
        if self.index_of(t).is_some() {
            return self.set([t]);
        }
        if self.compact() {
            return self.set(t.chars().map(|c| c.to_string()));
        }
        Err(LciError::Format(format!("cannot parse '{text}' as a set of labels")))
    }

    pub fn labels_of(&self, set: &IndexSet) -> Vec<&str> {
        set.iter().map(|i| self.label(i)).collect()
    }

    /// Render a set as concatenated labels when the ground set is compact,
    /// otherwise comma separated; the empty set renders as `{}`.
    pub fn render(&self, set: &IndexSet) -> String {
        if set.is_empty() {
            return "{}".to_string();
        }
        let sep = if self.compact() { "" } else { "," };
        self.labels_of(set).join(sep)
    }

    /// Like [`render`](Self::render) but without the `{}` marker for the
    /// empty set.
    pub fn render_bare(&self, set: &IndexSet) -> String {
        if set.is_empty() {
            String::new()
        } else {
            self.render(set)
        }
    }

    pub fn check_subset(&self, set: &IndexSet) -> Result<()> {
        match set.max_index() {
            Some(m) if m >= self.len() => Err(domain(format!(
                "set refers to element {m} outside a ground set of size {}",
                self.len()
            ))),
            _ => Ok(()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn set(xs: &[usize]) -> IndexSet {
        xs.iter().copied().collect()
    }

    #[test]
    fn basic_ops() {
        let a = set(&[1, 2, 70]);
        let b = set(&[2, 3]);
        assert_eq!(a.union(&b), set(&[1, 2, 3, 70]));
        assert_eq!(a.intersection(&b), set(&[2]));
        assert_eq!(a.difference(&b), set(&[1, 70]));
        assert_eq!(set(&[70]).difference(&set(&[70])), IndexSet::new());
        assert!(set(&[2]).is_subset(&a));
        assert!(!a.is_subset(&b));
        assert_eq!(a.len(), 3);
        assert_eq!(a.max_index(), Some(70));
        assert_eq!(a.iter().collect::<Vec<_>>(), vec![1, 2, 70]);
    }

    #[test]
    fn canonical_order() {
        let mut v = vec![set(&[2, 3, 4]), set(&[3]), set(&[]), set(&[3, 4]), set(&[2, 3]), set(&[1, 2, 3])];
        v.sort();
        assert_eq!(v, vec![set(&[]), set(&[3]), set(&[2, 3]), set(&[3, 4]), set(&[1, 2, 3]), set(&[2, 3, 4])]);
    }

    #[test]
    fn ground_parse_and_render() {
        let g = GroundSet::numbered(5);
        let s = g.parse_set("123").unwrap();
        assert_eq!(g.render(&s), "123");
        assert_eq!(g.parse_set("{}").unwrap(), IndexSet::new());
        assert_eq!(g.parse_set("3,4").unwrap(), g.parse_set("34").unwrap());
        assert!(g.parse_set("6").is_err());

        let t = GroundSet::new(["11", "21", "12"]).unwrap();
        let s = t.parse_set("11,12").unwrap();
        assert_eq!(t.render(&s), "11,12");
        assert_eq!(t.parse_set("21").unwrap(), IndexSet::singleton(1));
        assert!(GroundSet::new(["a", "a"]).is_err());
    }

    proptest! {
        #[test]
        fn set_algebra_matches_btreeset(a in proptest::collection::btree_set(0usize..150, 0..20),
                                        b in proptest::collection::btree_set(0usize..150, 0..20)) {
            let sa: IndexSet = a.iter().copied().collect();
            let sb: IndexSet = b.iter().copied().collect();
            let u: Vec<usize> = a.union(&b).copied().collect();
            let i: Vec<usize> = a.intersection(&b).copied().collect();
            let d: Vec<usize> = a.difference(&b).copied().collect();
            prop_assert_eq!(sa.union(&sb).iter().collect::<Vec<_>>(), u);
            prop_assert_eq!(sa.intersection(&sb).iter().collect::<Vec<_>>(), i.clone());
            prop_assert_eq!(sa.difference(&sb).iter().collect::<Vec<_>>(), d);
            prop_assert_eq!(sa.is_subset(&sb), a.is_subset(&b));
            prop_assert_eq!(sa.is_disjoint(&sb), i.is_empty());
            prop_assert_eq!(sa == sb, a == b);
        }
    }
}
