//! Finite linearly ordered plausibility scales.
//!
//! A [`Scale`] is a list of grade labels ordered by position, from the bottom
//! grade `0` to the top grade `I`, together with a negation map. All algebra in
//! this crate works on integer ranks; labels only matter at the edges (parsing,
//! printing, serialisation).

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Default cap on the length of a canonical valuation.
pub const DEFAULT_MAX_LEN: usize = 4096;

#[derive(Debug, PartialEq, Eq)]
struct ScaleData {
    name: String,
    labels: Vec<String>,
    negation: Vec<usize>,
    weak: bool,
    involutive: bool,
    max_len: usize,
}

/// Shared handle to an immutable scale. Cloning is cheap.
#[derive(Clone)]
pub struct Scale(Arc<ScaleData>);

impl Scale {
    /// Builds a scale from labels listed bottom to top, with the reflection
    /// negation `rank -> (m - 1) - rank`.
    pub fn new<S: Into<String>>(
        name: impl Into<String>,
        labels: impl IntoIterator<Item = S>,
    ) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.len() < 2 {
            return Err(Error::TooFewGrades(labels.len()));
        }
        let mut seen = HashSet::with_capacity(labels.len());
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        let m = labels.len();
        let negation = (0..m).map(|r| m - 1 - r).collect();
        Ok(Scale(Arc::new(ScaleData {
            name: name.into(),
            labels,
            negation,
            weak: true,
            involutive: true,
            max_len: DEFAULT_MAX_LEN,
        })))
    }

    /// Scale of `size` grades labelled `0`, `1`, ... named `L<size>`.
    pub fn numeric(size: usize) -> Result<Self> {
        Scale::new(format!("L{size}"), (0..size).map(|r| r.to_string()))
    }

    /// Returns a copy of this scale with a custom negation. `images[r]` is the
    /// rank of the negation of the grade of rank `r`.
    ///
    /// The table must be antitone and swap bottom and top. Whether it is weak
    /// (`f'' >= f`) and involutive (`f'' = f`) is recorded on the result.
    pub fn with_negation(&self, images: &[usize]) -> Result<Self> {
        let m = self.size();
        if images.len() != m {
            return Err(Error::NegationNotTotal {
                expected: m,
                found: images.len(),
            });
        }
        for &img in images {
            if img >= m {
                return Err(self.not_in_scale(img));
            }
        }
        if images[0] != m - 1 {
            return Err(Error::NegationBoundary(format!(
                "{}' = {}, expected {}",
                self.label(0),
                self.label(images[0]),
                self.label(m - 1)
            )));
        }
        if images[m - 1] != 0 {
            return Err(Error::NegationBoundary(format!(
                "{}' = {}, expected {}",
                self.label(m - 1),
                self.label(images[m - 1]),
                self.label(0)
            )));
        }
        for lo in 0..m {
            for hi in lo + 1..m {
                if images[hi] > images[lo] {
                    return Err(Error::NegationNotAntitone {
                        lo: self.label(lo).to_string(),
                        hi: self.label(hi).to_string(),
                        lo_image: self.label(images[lo]).to_string(),
                        hi_image: self.label(images[hi]).to_string(),
                    });
                }
            }
        }
        let weak = (0..m).all(|r| images[images[r]] >= r);
        let involutive = (0..m).all(|r| images[images[r]] == r);
        let d = &self.0;
        Ok(Scale(Arc::new(ScaleData {
            name: d.name.clone(),
            labels: d.labels.clone(),
            negation: images.to_vec(),
            weak,
            involutive,
            max_len: d.max_len,
        })))
    }

    /// Same as [`Scale::with_negation`] but keyed by labels.
    pub fn with_negation_labels<A: AsRef<str>, B: AsRef<str>>(
        &self,
        pairs: impl IntoIterator<Item = (A, B)>,
    ) -> Result<Self> {
        let mut images = vec![None; self.size()];
        for (from, to) in pairs {
            let f = self.rank_of_checked(from.as_ref())?;
            let t = self.rank_of_checked(to.as_ref())?;
            images[f] = Some(t);
        }
        let found = images.iter().filter(|i| i.is_some()).count();
        let images: Option<Vec<usize>> = images.into_iter().collect();
        match images {
            Some(images) => self.with_negation(&images),
            None => Err(Error::NegationNotTotal {
                expected: self.size(),
                found,
            }),
        }
    }

    /// Returns a copy with a different valuation length cap.
    pub fn with_max_len(&self, max_len: usize) -> Self {
        let d = &self.0;
        Scale(Arc::new(ScaleData {
            name: d.name.clone(),
            labels: d.labels.clone(),
            negation: d.negation.clone(),
            weak: d.weak,
            involutive: d.involutive,
            max_len: max_len.max(1),
        }))
    }

    pub fn name(&self) -> &str {
        &self.0.name
    }

    /// Number of grades `m`.
    pub fn size(&self) -> usize {
        self.0.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.0.labels
    }

    /// Label of the grade of `rank`. Panics if `rank` is out of range.
    pub fn label(&self, rank: usize) -> &str {
        &self.0.labels[rank]
    }

    pub fn rank_of(&self, label: &str) -> Option<usize> {
        self.0.labels.iter().position(|l| l == label)
    }

    pub(crate) fn rank_of_checked(&self, label: &str) -> Result<usize> {
        self.rank_of(label).ok_or_else(|| Error::UnknownGrade {
            scale: self.name().to_string(),
            label: label.to_string(),
        })
    }

    pub fn top_rank(&self) -> usize {
        self.size() - 1
    }

    pub fn grade(&self, rank: usize) -> Result<Grade> {
        if rank >= self.size() {
            return Err(self.not_in_scale(rank));
        }
        Ok(Grade {
            scale: self.clone(),
            rank,
        })
    }

    pub fn grade_by_label(&self, label: &str) -> Result<Grade> {
        let rank = self.rank_of_checked(label)?;
        self.grade(rank)
    }

    pub fn bottom_grade(&self) -> Grade {
        Grade {
            scale: self.clone(),
            rank: 0,
        }
    }

    pub fn top_grade(&self) -> Grade {
        Grade {
            scale: self.clone(),
            rank: self.top_rank(),
        }
    }

    pub fn grades(&self) -> impl Iterator<Item = Grade> + '_ {
        (0..self.size()).map(move |rank| Grade {
            scale: self.clone(),
            rank,
        })
    }

    /// Negation of a grade of this scale.
    pub fn negate(&self, g: &Grade) -> Result<Grade> {
        self.check_owns(g)?;
        Ok(Grade {
            scale: self.clone(),
            rank: self.negate_rank(g.rank),
        })
    }

    /// Negation on ranks. Panics if `rank` is out of range.
    pub fn negate_rank(&self, rank: usize) -> usize {
        self.0.negation[rank]
    }

    pub fn negation_table(&self) -> &[usize] {
        &self.0.negation
    }

    /// True when the negation is the rank reflection.
    pub fn has_default_negation(&self) -> bool {
        let m = self.size();
        self.0
            .negation
            .iter()
            .enumerate()
            .all(|(r, &n)| n == m - 1 - r)
    }

    pub fn is_weak(&self) -> bool {
        self.0.weak
    }

    pub fn is_involutive(&self) -> bool {
        self.0.involutive
    }

    pub fn max_len(&self) -> usize {
        self.0.max_len
    }

    pub(crate) fn check_owns(&self, g: &Grade) -> Result<()> {
        if &g.scale != self {
            return Err(Error::ScaleMismatch {
                left: self.name().to_string(),
                right: g.scale.name().to_string(),
            });
        }
        Ok(())
    }

    pub(crate) fn check_same(&self, other: &Scale) -> Result<()> {
        if self != other {
            return Err(Error::ScaleMismatch {
                left: self.name().to_string(),
                right: other.name().to_string(),
            });
        }
        Ok(())
    }

    fn not_in_scale(&self, rank: usize) -> Error {
        Error::GradeNotInScale {
            scale: self.name().to_string(),
            rank,
            size: self.size(),
        }
    }
}

impl PartialEq for Scale {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Scale {}

impl Hash for Scale {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.name.hash(state);
        self.0.labels.hash(state);
    }
}

impl fmt::Debug for Scale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Scale")
            .field("name", &self.0.name)
            .field("labels", &self.0.labels)
            .field("negation", &self.0.negation)
            .finish()
    }
}

#[derive(Serialize, Deserialize)]
struct ScaleJson {
    name: String,
    grades: Vec<String>,
    negation: Vec<String>,
}

impl Serialize for Scale {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        ScaleJson {
            name: self.name().to_string(),
            grades: self.labels().to_vec(),
            negation: self
                .negation_table()
                .iter()
                .map(|&r| self.label(r).to_string())
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Scale {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = ScaleJson::deserialize(deserializer)?;
        let scale = Scale::new(raw.name, raw.grades).map_err(D::Error::custom)?;
        let images = raw
            .negation
            .iter()
            .map(|l| scale.rank_of_checked(l))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        scale.with_negation(&images).map_err(D::Error::custom)
    }
}

/// One grade of a scale.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Grade {
    scale: Scale,
    rank: usize,
}

impl Grade {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn label(&self) -> &str {
        self.scale.label(self.rank)
    }

    pub fn scale(&self) -> &Scale {
        &self.scale
    }

    /// Orders two grades of the same scale; grades of different scales are
    /// incomparable.
    pub fn try_cmp(&self, other: &Grade) -> Result<Ordering> {
        self.scale.check_same(&other.scale)?;
        Ok(self.rank.cmp(&other.rank))
    }
}

impl fmt::Display for Grade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}
