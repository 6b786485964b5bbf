use std::fmt;

use crate::StateId;

/// A set of NFA states in canonical form: strictly ascending, no duplicates.
///
/// The canonical form doubles as the identity of a DFA state and as the key
/// of the closure memo tables.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subset(Vec<StateId>);

impl Subset {
    pub fn empty() -> Self {
        Subset(Vec::new())
    }

    pub fn singleton(state: StateId) -> Self {
        Subset(vec![state])
    }

    /// Wraps a vector the caller has already sorted and deduplicated.
    pub(crate) fn from_sorted_unchecked(members: Vec<StateId>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        Subset(members)
    }

    /// Sorts and deduplicates `members` in place and wraps the result.
    pub fn from_vec(mut members: Vec<StateId>) -> Self {
        members.sort_unstable();
        members.dedup();
        Subset(members)
    }

    pub fn as_slice(&self) -> &[StateId] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<StateId> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, state: StateId) -> bool {
        self.0.binary_search(&state).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = StateId> + '_ {
        self.0.iter().copied()
    }

    pub fn is_subset_of(&self, other: &Subset) -> bool {
        let mut rest = other.0.iter();
        self.0.iter().all(|x| rest.by_ref().any(|y| y == x))
    }

    pub fn union(&self, other: &Subset) -> Subset {
        let mut out = Vec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            let (a, b) = (self.0[i], other.0[j]);
            if a < b {
                out.push(a);
                i += 1;
            } else if b < a {
                out.push(b);
                j += 1;
            } else {
                out.push(a);
                i += 1;
                j += 1;
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Subset(out)
    }
}

impl FromIterator<StateId> for Subset {
    fn from_iter<I: IntoIterator<Item = StateId>>(iter: I) -> Self {
        Subset::from_vec(iter.into_iter().collect())
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{s}")?;
        }
        f.write_str("}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonicalises_input() {
        let s: Subset = [4, 1, 4, 2].into_iter().collect();
        assert_eq!(s.as_slice(), &[1, 2, 4]);
        assert!(s.contains(2));
        assert!(!s.contains(3));
        assert_eq!(s.to_string(), "{1,2,4}");
    }

    #[test]
    fn subset_and_union() {
        let a = Subset::from_vec(vec![1, 3]);
        let b = Subset::from_vec(vec![0, 1, 2, 3]);
        assert!(a.is_subset_of(&b));
        assert!(!b.is_subset_of(&a));
        assert!(Subset::empty().is_subset_of(&a));
        assert_eq!(a.union(&Subset::from_vec(vec![2, 5])).as_slice(), &[1, 2, 3, 5]);
    }
}
