//! ∧-strings, their reduction to canonical valuations, and the lexicographic
//! order on valuations.
//!
//! A [`WedgeString`] is any nonempty nondecreasing sequence of grades. Two
//! strings are indistinguishable when both start at the bottom grade, or when
//! one extends the other by a run of top grades. A [`Valuation`] is the
//! shortest representative of its class: either a singleton, or a string whose
//! first grade is above bottom and whose last grade is below top. Only
//! canonical valuations are stored, so structural equality is the same thing
//! as indistinguishability.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scale::{Grade, Scale};

/// A nonempty nondecreasing string of grades, before reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WedgeString {
    scale: Scale,
    elems: Vec<usize>,
}

impl WedgeString {
    /// Wraps an already sorted rank sequence.
    pub fn new(scale: &Scale, elems: Vec<usize>) -> Result<Self> {
        check_ranks(scale, &elems)?;
        if let Some(i) = elems.windows(2).position(|w| w[0] > w[1]) {
            return Err(Error::NotSorted(i + 1));
        }
        Ok(WedgeString {
            scale: scale.clone(),
            elems,
        })
    }

    /// Sorts an arbitrary rank sequence into a ∧-string (multiset preserved).
    pub fn sort(scale: &Scale, raw: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut elems: Vec<usize> = raw.into_iter().collect();
        check_ranks(scale, &elems)?;
        elems.sort_unstable();
        Ok(WedgeString {
            scale: scale.clone(),
            elems,
        })
    }

    /// Sorts grades that must all come from one scale.
    pub fn sort_grades(raw: &[Grade]) -> Result<Self> {
        let first = raw.first().ok_or(Error::EmptyString)?;
        let scale = first.scale();
        for g in raw {
            scale.check_owns(g)?;
        }
        Self::sort(scale, raw.iter().map(Grade::rank))
    }

    pub fn scale(&self) -> &Scale {
        &self.scale
    }

    pub fn ranks(&self) -> &[usize] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Shortest indistinguishable string: `(0)` if the string starts at the
    /// bottom, otherwise the string without its trailing run of top grades
    /// (or `(I)` if nothing else is left).
    pub fn reduce(&self) -> Valuation {
        Valuation {
            scale: self.scale.clone(),
            elems: reduce_ranks(&self.elems, self.scale.top_rank()),
        }
    }

    /// Indistinguishability of two ∧-strings on the same scale.
    pub fn indistinguishable(&self, other: &WedgeString) -> Result<bool> {
        self.scale.check_same(&other.scale)?;
        Ok(indistinguishable_ranks(
            &self.elems,
            &other.elems,
            self.scale.top_rank(),
        ))
    }
}

fn check_ranks(scale: &Scale, elems: &[usize]) -> Result<()> {
    if elems.is_empty() {
        return Err(Error::EmptyString);
    }
    if let Some(&r) = elems.iter().find(|&&r| r >= scale.size()) {
        return Err(Error::GradeNotInScale {
            scale: scale.name().to_string(),
            rank: r,
            size: scale.size(),
        });
    }
    Ok(())
}

pub(crate) fn reduce_ranks(sorted: &[usize], top: usize) -> Vec<usize> {
    debug_assert!(!sorted.is_empty());
    if sorted[0] == 0 {
        return vec![0];
    }
    let keep = sorted.iter().rposition(|&r| r != top).map_or(0, |i| i + 1);
    if keep == 0 {
        vec![top]
    } else {
        sorted[..keep].to_vec()
    }
}

pub(crate) fn indistinguishable_ranks(f: &[usize], g: &[usize], top: usize) -> bool {
    if f[0] == 0 && g[0] == 0 {
        return true;
    }
    let n = f.len().min(g.len());
    if f[..n] != g[..n] {
        return false;
    }
    match f.len().cmp(&g.len()) {
        Ordering::Equal => true,
        Ordering::Greater => f[n] == top,
        Ordering::Less => g[n] == top,
    }
}

/// Lexicographic order on rank strings: the first differing grade decides,
/// and if one string extends the other the longer one is smaller.
pub(crate) fn compare_ranks(f: &[usize], g: &[usize]) -> Ordering {
    for (a, b) in f.iter().zip(g) {
        match a.cmp(b) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    g.len().cmp(&f.len())
}

/// A canonical ∧-valuation.
#[derive(Clone)]
pub struct Valuation {
    scale: Scale,
    elems: Vec<usize>,
}

impl Valuation {
    /// `(0)`, the least valuation.
    pub fn bottom(scale: &Scale) -> Self {
        Valuation {
            scale: scale.clone(),
            elems: vec![0],
        }
    }

    /// `(I)`, the greatest valuation.
    pub fn top(scale: &Scale) -> Self {
        Valuation {
            scale: scale.clone(),
            elems: vec![scale.top_rank()],
        }
    }

    pub fn singleton(grade: &Grade) -> Self {
        Valuation {
            scale: grade.scale().clone(),
            elems: vec![grade.rank()],
        }
    }

    pub(crate) fn singleton_rank(scale: &Scale, rank: usize) -> Self {
        debug_assert!(rank < scale.size());
        Valuation {
            scale: scale.clone(),
            elems: vec![rank],
        }
    }

    /// Sort then reduce an arbitrary nonempty rank sequence.
    pub fn from_grades(scale: &Scale, ranks: impl IntoIterator<Item = usize>) -> Result<Self> {
        let v = WedgeString::sort(scale, ranks)?.reduce();
        v.check_cap()?;
        Ok(v)
    }

    /// Like [`Valuation::from_grades`] with grade labels.
    pub fn from_labels<S: AsRef<str>>(scale: &Scale, labels: &[S]) -> Result<Self> {
        let ranks = labels
            .iter()
            .map(|l| scale.rank_of_checked(l.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Self::from_grades(scale, ranks)
    }

    /// Accepts `elems` only if it is already canonical.
    pub fn from_canonical(scale: &Scale, elems: Vec<usize>) -> Result<Self> {
        let w = WedgeString::new(scale, elems)?;
        let v = w.reduce();
        if v.elems != w.elems {
            return Err(Error::NotCanonical(format_labels(scale, &w.elems)));
        }
        v.check_cap()?;
        Ok(v)
    }

    /// Builds a valuation without checking canonical form. Only meant for
    /// fault-injection in the law checker; every public operation assumes
    /// canonical input.
    #[doc(hidden)]
    pub fn new_unchecked(scale: &Scale, elems: Vec<usize>) -> Self {
        Valuation {
            scale: scale.clone(),
            elems,
        }
    }

    pub(crate) fn from_reduced(scale: &Scale, elems: Vec<usize>) -> Result<Self> {
        let v = Valuation {
            scale: scale.clone(),
            elems,
        };
        v.check_cap()?;
        Ok(v)
    }

    fn check_cap(&self) -> Result<()> {
        let cap = self.scale.max_len();
        if self.elems.len() > cap {
            return Err(Error::LengthCapExceeded {
                len: self.elems.len(),
                cap,
            });
        }
        Ok(())
    }

    pub fn scale(&self) -> &Scale {
        &self.scale
    }

    pub fn ranks(&self) -> &[usize] {
        &self.elems
    }

    pub fn grades(&self) -> impl Iterator<Item = Grade> + '_ {
        self.elems
            .iter()
            .map(move |&r| self.scale.grade(r).expect("rank in scale"))
    }

    pub fn labels(&self) -> Vec<&str> {
        self.elems.iter().map(|&r| self.scale.label(r)).collect()
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn first_rank(&self) -> usize {
        self.elems[0]
    }

    pub fn is_bottom(&self) -> bool {
        self.elems == [0]
    }

    pub fn is_top(&self) -> bool {
        self.elems == [self.scale.top_rank()]
    }

    /// Compares two valuations of the same scale.
    pub fn try_cmp(&self, other: &Valuation) -> Result<Ordering> {
        self.scale.check_same(&other.scale)?;
        Ok(compare_ranks(&self.elems, &other.elems))
    }

    /// Compares with `other`, which the caller guarantees is on the same scale.
    pub(crate) fn cmp_same(&self, other: &Valuation) -> Ordering {
        debug_assert!(self.scale == other.scale);
        compare_ranks(&self.elems, &other.elems)
    }

    pub fn as_wedge_string(&self) -> WedgeString {
        WedgeString {
            scale: self.scale.clone(),
            elems: self.elems.clone(),
        }
    }

    /// Parses the textual form `(A, B, ...)`. A bare label is accepted as a
    /// singleton. The result is sorted and reduced.
    pub fn parse_text(scale: &Scale, text: &str) -> Result<Self> {
        let t = text.trim();
        let inner = match t.strip_prefix('(') {
            Some(rest) => rest
                .strip_suffix(')')
                .ok_or_else(|| Error::NotCanonical(text.to_string()))?,
            None => t,
        };
        let labels: Vec<&str> = inner.split(',').map(str::trim).collect();
        if labels.iter().any(|l| l.is_empty()) {
            return Err(Error::EmptyString);
        }
        Self::from_labels(scale, &labels)
    }

    /// Rebuilds a valuation from its JSON label array.
    pub fn from_json_labels(scale: &Scale, labels: &[String]) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::EmptyString);
        }
        let ranks = labels
            .iter()
            .map(|l| scale.rank_of_checked(l))
            .collect::<Result<Vec<_>>>()?;
        Self::from_canonical(scale, ranks)
    }
}

pub(crate) fn format_labels(scale: &Scale, ranks: &[usize]) -> String {
    let mut s = String::from("(");
    for (i, &r) in ranks.iter().enumerate() {
        if i > 0 {
            s.push_str(", ");
        }
        s.push_str(scale.label(r));
    }
    s.push(')');
    s
}

impl PartialEq for Valuation {
    fn eq(&self, other: &Self) -> bool {
        self.elems == other.elems && self.scale == other.scale
    }
}

impl Eq for Valuation {}

impl Hash for Valuation {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.scale.hash(state);
        self.elems.hash(state);
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_labels(&self.scale, &self.elems))
    }
}

impl fmt::Debug for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:?}", self.scale.name(), self.elems)
    }
}

impl Serialize for Valuation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.labels())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l7() -> Scale {
        Scale::numeric(7).unwrap()
    }

    fn v(s: &Scale, r: &[usize]) -> Valuation {
        Valuation::from_canonical(s, r.to_vec()).unwrap()
    }

    fn w(s: &Scale, r: &[usize]) -> WedgeString {
        WedgeString::new(s, r.to_vec()).unwrap()
    }

    #[test]
    fn sorting() {
        let s = l7();
        assert_eq!(
            WedgeString::sort(&s, [5, 3, 4]).unwrap().ranks(),
            &[3, 4, 5]
        );
        assert_eq!(WedgeString::sort(&s, [4]).unwrap().ranks(), &[4]);
        assert_eq!(
            WedgeString::sort(&s, [6, 4, 5]).unwrap().ranks(),
            &[4, 5, 6]
        );
        assert_eq!(WedgeString::sort(&s, []).unwrap_err(), Error::EmptyString);
        let other = Scale::numeric(3).unwrap();
        let mixed = [s.grade(1).unwrap(), other.grade(1).unwrap()];
        assert!(matches!(
            WedgeString::sort_grades(&mixed),
            Err(Error::ScaleMismatch { .. })
        ));
    }

    #[test]
    fn reduction() {
        let s = l7();
        assert_eq!(w(&s, &[0, 3, 5]).reduce().ranks(), &[0]);
        assert_eq!(w(&s, &[4, 5, 6]).reduce().ranks(), &[4, 5]);
        assert_eq!(w(&s, &[6, 6]).reduce().ranks(), &[6]);
        assert_eq!(w(&s, &[2, 6, 6, 6]).reduce().ranks(), &[2]);
    }

    #[test]
    fn unsorted_wedge_string_rejected() {
        assert_eq!(
            WedgeString::new(&l7(), vec![3, 2]).unwrap_err(),
            Error::NotSorted(1)
        );
    }

    #[test]
    fn indistinguishability() {
        let s = l7();
        assert!(w(&s, &[0]).indistinguishable(&w(&s, &[0, 5])).unwrap());
        assert!(w(&s, &[4, 6]).indistinguishable(&w(&s, &[4])).unwrap());
        assert!(!w(&s, &[4, 5]).indistinguishable(&w(&s, &[4])).unwrap());
        assert!(w(&s, &[3]).indistinguishable(&w(&s, &[3, 6, 6])).unwrap());
        let other = Scale::numeric(4).unwrap();
        assert!(w(&s, &[1]).indistinguishable(&w(&other, &[1])).is_err());
    }

    #[test]
    fn comparison() {
        let s = l7();
        assert_eq!(
            v(&s, &[4, 5, 5]).try_cmp(&v(&s, &[4, 4, 5])).unwrap(),
            Ordering::Greater
        );
        assert_eq!(
            v(&s, &[4, 5]).try_cmp(&v(&s, &[4])).unwrap(),
            Ordering::Less
        );
        assert_eq!(v(&s, &[3]).try_cmp(&v(&s, &[3])).unwrap(), Ordering::Equal);
        let other = Scale::numeric(4).unwrap();
        assert!(v(&s, &[1]).try_cmp(&v(&other, &[1])).is_err());
        // equality across scales is just false
        assert_ne!(v(&s, &[1]), v(&other, &[1]));
    }

    #[test]
    fn bounds() {
        let s = l7();
        let (lo, hi) = (Valuation::bottom(&s), Valuation::top(&s));
        assert_eq!(lo.ranks(), &[0]);
        assert_eq!(hi.ranks(), &[6]);
        assert_eq!(lo.try_cmp(&hi).unwrap(), Ordering::Less);
        assert_eq!(v(&s, &[4, 5]).try_cmp(&hi).unwrap(), Ordering::Less);
    }

    #[test]
    fn from_grades_examples() {
        let s = l7();
        assert_eq!(
            Valuation::from_grades(&s, [6, 4, 5]).unwrap().ranks(),
            &[4, 5]
        );
        assert_eq!(Valuation::from_grades(&s, [0, 6]).unwrap().ranks(), &[0]);
        assert_eq!(Valuation::from_grades(&s, [6, 6, 6]).unwrap().ranks(), &[6]);
        assert_eq!(
            Valuation::from_grades(&s, []).unwrap_err(),
            Error::EmptyString
        );
    }

    #[test]
    fn canonical_check() {
        let s = l7();
        assert!(Valuation::from_canonical(&s, vec![4, 6]).is_err());
        assert!(Valuation::from_canonical(&s, vec![0, 3]).is_err());
        assert!(Valuation::from_canonical(&s, vec![3, 5]).is_ok());
    }

    #[test]
    fn length_cap() {
        let s = l7().with_max_len(3);
        assert_eq!(
            Valuation::from_grades(&s, [1, 1, 1, 1]).unwrap_err(),
            Error::LengthCapExceeded { len: 4, cap: 3 }
        );
        assert!(Valuation::from_grades(&s, [1, 1, 1, 6, 6]).is_ok());
    }

    #[test]
    fn text_and_json_forms() {
        let s = Scale::new(
            "pv",
            [
                "MINIMAL",
                "VERY-SMALL",
                "SMALL",
                "AVERAGE",
                "LARGE",
                "VERY-LARGE",
                "MAXIMAL",
            ],
        )
        .unwrap();
        let x = Valuation::parse_text(&s, "(LARGE, VERY-LARGE)").unwrap();
        assert_eq!(x.to_string(), "(LARGE, VERY-LARGE)");
        assert_eq!(
            serde_json::to_string(&x).unwrap(),
            r#"["LARGE","VERY-LARGE"]"#
        );
        let labels: Vec<String> = serde_json::from_str(r#"["LARGE","VERY-LARGE"]"#).unwrap();
        assert_eq!(Valuation::from_json_labels(&s, &labels).unwrap(), x);
        assert_eq!(
            Valuation::parse_text(&s, "LARGE").unwrap().to_string(),
            "(LARGE)"
        );
        assert!(Valuation::parse_text(&s, "(HUGE)").is_err());
        assert!(Valuation::parse_text(&s, "(LARGE,)").is_err());
    }
}
