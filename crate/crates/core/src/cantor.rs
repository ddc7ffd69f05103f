//! Stages of the ternary Cantor construction, the associated open partition
//! of `(0, 1)`, and an exact membership test for the limit set.
//!
//! Stage 1 keeps the outer thirds of `[0, 1]`; each later stage applies
//! `x -> x/3` and `x -> x/3 + 2/3` to the previous one. The limit set is the
//! intersection of all stages; a rational belongs to it exactly when some
//! ternary expansion of the number avoids the digit 1.

use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::rational::Rational;
use crate::set::IntervalSet;
use crate::ternary::TernaryDigits;
use crate::Caps;

/// One stage of the construction: `2^level` closed components, each of
/// length `3^-level`.
#[derive(Clone, Debug)]
pub struct CantorStage {
    level: u32,
    set: Arc<IntervalSet>,
}

impl CantorStage {
    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn set(&self) -> &IntervalSet {
        &self.set
    }

    pub fn measure(&self) -> Rational {
        self.set.measure()
    }
}

/// Stages up to this level are memoized; deeper stages are rebuilt per call
/// so that one aggressive query cannot pin hundreds of megabytes.
const CACHE_LIMIT: u32 = 14;

fn cache() -> &'static Mutex<Vec<Arc<IntervalSet>>> {
    static CACHE: OnceLock<Mutex<Vec<Arc<IntervalSet>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(Vec::new()))
}

fn first_stage() -> IntervalSet {
    IntervalSet::new(vec![
        Interval::closed(Rational::zero(), Rational::new(1, 3)),
        Interval::closed(Rational::new(2, 3), Rational::one()),
    ])
}

fn next_stage(prev: &IntervalSet) -> IntervalSet {
    let third = Rational::new(1, 3);
    let left = prev
        .affine(&third, &Rational::zero())
        .expect("scale 1/3 is nonzero");
    let right = prev
        .affine(&third, &Rational::new(2, 3))
        .expect("scale 1/3 is nonzero");
    left.union(&right)
}

pub fn stage(level: u32) -> Result<CantorStage> {
    stage_with_caps(level, &Caps::default())
}

pub fn stage_with_caps(level: u32, caps: &Caps) -> Result<CantorStage> {
    if level < 1 {
        return Err(Error::InvalidLevel(level));
    }
    if level > caps.stage {
        return Err(Error::ResourceCap {
            requested: level,
            cap: caps.stage,
        });
    }
    let cached_levels = level.min(CACHE_LIMIT) as usize;
    let mut guard = cache().lock().expect("stage cache lock poisoned");
    while guard.len() < cached_levels {
        let next = match guard.last() {
            Some(prev) => next_stage(prev),
            None => first_stage(),
        };
        guard.push(Arc::new(next));
    }
    let mut set = Arc::clone(&guard[cached_levels - 1]);
    drop(guard);
    for _ in cached_levels as u32..level {
        set = Arc::new(next_stage(&set));
    }
    Ok(CantorStage { level, set })
}

/// Open cell number `index` (1-based) of the uniform width-`3^-level`
/// partition of `(0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartitionCell {
    level: u32,
    index: u64,
    cell: Interval,
}

impl PartitionCell {
    pub fn new(level: u32, index: u64) -> Result<Self> {
        Self::new_with_caps(level, index, &Caps::default())
    }

    pub fn new_with_caps(level: u32, index: u64, caps: &Caps) -> Result<Self> {
        let total = cell_count_with_caps(level, caps)?;
        if index < 1 || index > total {
            return Err(Error::InvalidArgument(format!(
                "cell index {index} out of range 1..={total} at level {level}"
            )));
        }
        let denom = BigInt::from(3).pow(level);
        let cell = Interval::open(
            Rational::new(BigInt::from(index - 1), denom.clone()),
            Rational::new(BigInt::from(index), denom),
        );
        Ok(PartitionCell { level, index, cell })
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn index(&self) -> u64 {
        self.index
    }

    /// The open interval `((index-1)/3^level, index/3^level)`.
    pub fn interval(&self) -> &Interval {
        &self.cell
    }
}

/// Number of cells (`3^level`) after validating level and caps.
fn cell_count_with_caps(level: u32, caps: &Caps) -> Result<u64> {
    if level < 1 {
        return Err(Error::InvalidLevel(level));
    }
    if level > caps.stage {
        return Err(Error::ResourceCap {
            requested: level,
            cap: caps.stage,
        });
    }
    3u64.checked_pow(level)
        .ok_or_else(|| Error::InvalidArgument(format!("3^{level} overflows the cell index type")))
}

pub fn partition(level: u32) -> Result<Vec<PartitionCell>> {
    partition_with_caps(level, &Caps::default())
}

pub fn partition_with_caps(level: u32, caps: &Caps) -> Result<Vec<PartitionCell>> {
    let total = cell_count_with_caps(level, caps)?;
    (1..=total)
        .map(|index| PartitionCell::new_with_caps(level, index, caps))
        .collect()
}

/// Exact membership of `x` in the limit set (the intersection of all
/// stages). Errors unless `0 <= x <= 1`.
///
/// A rational is a member exactly when its ternary expansion avoids the
/// digit 1, where triadic rationals may use either of their two expansions
/// (so `1/3 = 0.1 = 0.0(2)` is a member via the second form).
pub fn in_limit_set(x: &Rational) -> Result<bool> {
    let digits = TernaryDigits::from_rational(x)?;
    if digits.avoids_digit_one() {
        return Ok(true);
    }
    Ok(digits
        .alternate_terminating_form()
        .is_some_and(|alt| alt.avoids_digit_one()))
}

pub fn stage_interval_of(x: &Rational, level: u32) -> Result<Interval> {
    stage_interval_of_with_caps(x, level, &Caps::default())
}

/// The unique component of `stage(level)` containing `x`; errors if `x` is
/// not in the limit set.
pub fn stage_interval_of_with_caps(x: &Rational, level: u32, caps: &Caps) -> Result<Interval> {
    let st = stage_with_caps(level, caps)?;
    if !in_limit_set(x)? {
        return Err(Error::NotInLimitSet { value: x.clone() });
    }
    Ok(st
        .set()
        .find_component(x)
        .cloned()
        .expect("limit-set members lie in every stage"))
}
