//! Finite unions of intervals kept in a canonical form.
//!
//! Canonical means: components are sorted, pairwise disjoint, and no two can
//! be merged into one interval (adjacent components may share an endpoint
//! value only when both sides exclude it). Because the canonical form of a
//! set of reals is unique, structural equality of two `IntervalSet`s is
//! equality of the sets they denote, and `==` is used throughout the crate as
//! the exact set-equality test.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::rational::Rational;

#[derive(Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(into = "Vec<Interval>", from = "Vec<Interval>")]
pub struct IntervalSet {
    components: Vec<Interval>,
}

impl IntervalSet {
    pub fn empty() -> Self {
        IntervalSet {
            components: Vec::new(),
        }
    }

    /// Builds the canonical form of an arbitrary union of intervals.
    pub fn new(components: Vec<Interval>) -> Self {
        let mut set = IntervalSet { components };
        set.normalize();
        set
    }

    pub fn components(&self) -> &[Interval] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Total length (1-dimensional measure); endpoint flags do not matter.
    pub fn measure(&self) -> Rational {
        self.components
            .iter()
            .fold(Rational::zero(), |acc, iv| acc + iv.length())
    }

    /// Smallest single interval containing the whole set, if nonempty.
    pub fn hull(&self) -> Option<Interval> {
        let first = self.components.first()?;
        let last = self.components.last()?;
        Some(
            Interval::new(
                first.lo.clone(),
                first.lo_closed,
                last.hi.clone(),
                last.hi_closed,
            )
            .expect("hull endpoints are ordered"),
        )
    }

    pub fn contains_point(&self, x: &Rational) -> bool {
        self.find_component(x).is_some()
    }

    /// The component containing `x`, if any. Binary search on the sorted
    /// component list; in canonical form at most the last component whose
    /// lower endpoint does not exceed `x` can contain it.
    pub fn find_component(&self, x: &Rational) -> Option<&Interval> {
        let idx = self.components.partition_point(|iv| iv.lo <= *x);
        let candidate = self.components.get(idx.checked_sub(1)?)?;
        candidate.contains(x).then_some(candidate)
    }

    pub fn union(&self, other: &IntervalSet) -> IntervalSet {
        let mut components = Vec::with_capacity(self.components.len() + other.components.len());
        components.extend_from_slice(&self.components);
        components.extend_from_slice(&other.components);
        IntervalSet::new(components)
    }

    pub fn intersect(&self, other: &IntervalSet) -> IntervalSet {
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.components.len() && j < other.components.len() {
            let a = &self.components[i];
            let b = &other.components[j];

            // Lower boundary: the later start; on a value tie the point is in
            // the intersection only if both sides include it.
            let (lo, lo_closed) = match a.lo.cmp(&b.lo) {
                Ordering::Greater => (a.lo.clone(), a.lo_closed),
                Ordering::Less => (b.lo.clone(), b.lo_closed),
                Ordering::Equal => (a.lo.clone(), a.lo_closed && b.lo_closed),
            };
            // Upper boundary: the earlier end, same tie rule.
            let (hi, hi_closed) = match a.hi.cmp(&b.hi) {
                Ordering::Less => (a.hi.clone(), a.hi_closed),
                Ordering::Greater => (b.hi.clone(), b.hi_closed),
                Ordering::Equal => (a.hi.clone(), a.hi_closed && b.hi_closed),
            };

            if lo < hi || (lo == hi && lo_closed && hi_closed) {
                out.push(Interval {
                    lo,
                    lo_closed,
                    hi,
                    hi_closed,
                });
            }

            // Advance whichever component ends first (an open end at a value
            // ends before a closed end at the same value).
            match end_cmp(a, b) {
                Ordering::Less => i += 1,
                Ordering::Greater => j += 1,
                Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            }
        }
        IntervalSet::new(out)
    }

    /// Whether every point of `self` lies in `other`.
    pub fn is_subset_of(&self, other: &IntervalSet) -> bool {
        self.intersect(other) == *self
    }

    /// Image under `x -> scale * x + shift`; errors on `scale == 0` because
    /// the image would collapse to a point regardless of the input.
    pub fn affine(&self, scale: &Rational, shift: &Rational) -> Result<IntervalSet> {
        if scale.is_zero() {
            return Err(Error::ZeroScale);
        }
        let map = |x: &Rational| scale * x + shift;
        let mut components: Vec<Interval> = self
            .components
            .iter()
            .map(|iv| {
                if scale.is_negative() {
                    Interval {
                        lo: map(&iv.hi),
                        lo_closed: iv.hi_closed,
                        hi: map(&iv.lo),
                        hi_closed: iv.lo_closed,
                    }
                } else {
                    Interval {
                        lo: map(&iv.lo),
                        lo_closed: iv.lo_closed,
                        hi: map(&iv.hi),
                        hi_closed: iv.hi_closed,
                    }
                }
            })
            .collect();
        if scale.is_negative() {
            components.reverse();
        }
        // An affine bijection preserves ordering, disjointness, and the gap
        // structure, so the mapped components are already canonical.
        Ok(IntervalSet { components })
    }

    /// Sort components and merge every overlapping or joinable adjacent pair.
    /// Two intervals meeting at a shared endpoint value merge exactly when at
    /// least one of them includes that point.
    fn normalize(&mut self) {
        if self.components.len() <= 1 {
            return;
        }
        self.components.sort_by(|a, b| {
            a.lo.cmp(&b.lo)
                .then_with(|| b.lo_closed.cmp(&a.lo_closed))
                .then_with(|| a.hi.cmp(&b.hi))
                .then_with(|| a.hi_closed.cmp(&b.hi_closed))
        });
        let mut merged: Vec<Interval> = Vec::with_capacity(self.components.len());
        for next in self.components.drain(..) {
            match merged.last_mut() {
                Some(cur)
                    if next.lo < cur.hi
                        || (next.lo == cur.hi && (next.lo_closed || cur.hi_closed)) =>
                {
                    match next.hi.cmp(&cur.hi) {
                        Ordering::Greater => {
                            cur.hi = next.hi;
                            cur.hi_closed = next.hi_closed;
                        }
                        Ordering::Equal => cur.hi_closed |= next.hi_closed,
                        Ordering::Less => {}
                    }
                }
                _ => merged.push(next),
            }
        }
        self.components = merged;
    }
}

/// Ordering of two intervals by where they stop covering the line: first by
/// upper endpoint value, and at a tie an open end precedes a closed one.
fn end_cmp(a: &Interval, b: &Interval) -> Ordering {
    a.hi.cmp(&b.hi).then_with(|| a.hi_closed.cmp(&b.hi_closed))
}

impl From<Interval> for IntervalSet {
    fn from(iv: Interval) -> Self {
        IntervalSet {
            components: vec![iv],
        }
    }
}

impl From<Vec<Interval>> for IntervalSet {
    fn from(components: Vec<Interval>) -> Self {
        IntervalSet::new(components)
    }
}

impl From<IntervalSet> for Vec<Interval> {
    fn from(set: IntervalSet) -> Self {
        set.components
    }
}

impl FromIterator<Interval> for IntervalSet {
    fn from_iter<T: IntoIterator<Item = Interval>>(iter: T) -> Self {
        IntervalSet::new(iter.into_iter().collect())
    }
}

impl fmt::Display for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return write!(f, "∅");
        }
        for (i, iv) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, " ∪ ")?;
            }
            write!(f, "{iv}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
