//! A single interval with independently open or closed endpoints.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// A nonempty interval `lo..hi` where each endpoint is separately marked
/// closed (included) or open (excluded). A degenerate interval (`lo == hi`)
/// is only valid with both endpoints closed, and denotes a single point.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "IntervalRecord")]
pub struct Interval {
    pub(crate) lo: Rational,
    pub(crate) lo_closed: bool,
    pub(crate) hi: Rational,
    pub(crate) hi_closed: bool,
}

impl Interval {
    pub fn new(lo: Rational, lo_closed: bool, hi: Rational, hi_closed: bool) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidInterval(format!(
                "lower endpoint {lo} exceeds upper endpoint {hi}"
            )));
        }
        if lo == hi && !(lo_closed && hi_closed) {
            return Err(Error::InvalidInterval(format!(
                "degenerate interval at {lo} must be closed on both sides"
            )));
        }
        Ok(Interval {
            lo,
            lo_closed,
            hi,
            hi_closed,
        })
    }

    /// `[lo, hi]`. Panics if `lo > hi`.
    pub fn closed(lo: Rational, hi: Rational) -> Self {
        Interval::new(lo, true, hi, true).expect("closed interval endpoints out of order")
    }

    /// `(lo, hi)`. Panics unless `lo < hi`.
    pub fn open(lo: Rational, hi: Rational) -> Self {
        Interval::new(lo, false, hi, false).expect("open interval requires lo < hi")
    }

    /// `[lo, hi)`. Panics unless `lo < hi`.
    pub fn closed_open(lo: Rational, hi: Rational) -> Self {
        Interval::new(lo, true, hi, false).expect("half-open interval requires lo < hi")
    }

    /// `(lo, hi]`. Panics unless `lo < hi`.
    pub fn open_closed(lo: Rational, hi: Rational) -> Self {
        Interval::new(lo, false, hi, true).expect("half-open interval requires lo < hi")
    }

    /// The single point `{x}`.
    pub fn point(x: Rational) -> Self {
        Interval {
            lo: x.clone(),
            lo_closed: true,
            hi: x,
            hi_closed: true,
        }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn lo_closed(&self) -> bool {
        self.lo_closed
    }

    pub fn hi_closed(&self) -> bool {
        self.hi_closed
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn length(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi).half()
    }

    pub fn contains(&self, x: &Rational) -> bool {
        let above = if self.lo_closed {
            x >= &self.lo
        } else {
            x > &self.lo
        };
        let below = if self.hi_closed {
            x <= &self.hi
        } else {
            x < &self.hi
        };
        above && below
    }

    /// The same interval with both endpoints included.
    pub fn closure(&self) -> Self {
        Interval {
            lo: self.lo.clone(),
            lo_closed: true,
            hi: self.hi.clone(),
            hi_closed: true,
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_point() {
            return write!(f, "{{{}}}", self.lo);
        }
        let open = if self.lo_closed { '[' } else { '(' };
        let close = if self.hi_closed { ']' } else { ')' };
        write!(f, "{}{}, {}{}", open, self.lo, self.hi, close)
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Wire form of [`Interval`]; deserialization re-validates the invariants.
#[derive(Deserialize)]
struct IntervalRecord {
    lo: Rational,
    lo_closed: bool,
    hi: Rational,
    hi_closed: bool,
}

impl TryFrom<IntervalRecord> for Interval {
    type Error = Error;

    fn try_from(r: IntervalRecord) -> Result<Self> {
        Interval::new(r.lo, r.lo_closed, r.hi, r.hi_closed)
    }
}
