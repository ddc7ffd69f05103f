//! Exact midpoint sets of interval unions.
//!
//! The midpoint set of `A` is `{(x + y)/2 : x, y ∈ A, x ≠ y}`. For a finite
//! union of intervals it is again a finite union of intervals and can be
//! computed exactly, one component pair at a time:
//!
//! * a nondegenerate component `I` paired with itself contributes the open
//!   hull `(lo, hi)` — the endpoints would need `x = y`, which is excluded;
//! * a single-point component paired with itself contributes nothing;
//! * two distinct components contribute the interval from `(lo_I + lo_J)/2`
//!   to `(hi_I + hi_J)/2`, each endpoint included only when both source
//!   endpoints are.
//!
//! On top of that primitive this module provides: a grid-based brute-force
//! oracle, an executable form of the affine-equivariance identity
//! `M(c1·A + c2) = c1·M(A) + c2`, cell-midpoint certificates showing how the
//! removed middle cells of each Cantor stage are recovered as midpoints of
//! surviving cells, a faster self-similar evaluation for stage midpoint
//! sets, and a per-level verification report.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
#[cfg(feature = "parallel")]
use rayon::prelude::*;
use serde::Serialize;

use crate::cantor::{stage_with_caps, PartitionCell};
use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::rational::Rational;
use crate::set::IntervalSet;
use crate::Caps;

/// Which evaluation strategy computes a stage midpoint set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// Direct evaluation over all component pairs; cost grows with the
    /// square of the component count (4^level for stages).
    Pairwise,
    /// Evaluation through the stage recursion: midpoints of a stage are the
    /// two scaled copies of the previous midpoint set plus the scaled
    /// cross-copy pair-sum set. Linear in the level.
    SelfSimilar,
}

#[cfg(feature = "parallel")]
const PARALLEL_THRESHOLD: usize = 64;

/// Exact midpoint set of `a`. Empty and single-point inputs give the empty
/// set. With the `parallel` feature enabled, inputs with many components are
/// evaluated row-parallel; the result is identical to the sequential path
/// because canonical normalization is order-independent.
pub fn midpoint_set(a: &IntervalSet) -> IntervalSet {
    #[cfg(feature = "parallel")]
    {
        let comps = a.components();
        if comps.len() >= PARALLEL_THRESHOLD {
            return (0..comps.len())
                .into_par_iter()
                .map(|i| row_set(comps, i))
                .reduce(IntervalSet::empty, |x, y| x.union(&y));
        }
    }
    midpoint_set_sequential(a)
}

/// Single-threaded midpoint-set evaluation; always available, used as the
/// baseline the parallel path must reproduce exactly.
pub fn midpoint_set_sequential(a: &IntervalSet) -> IntervalSet {
    let comps = a.components();
    let mut acc = IntervalSet::empty();
    for i in 0..comps.len() {
        acc = acc.union(&row_set(comps, i));
    }
    acc
}

/// Contributions of component `i`: its diagonal plus its pairs with every
/// later component. Rows partition the unordered component pairs, so the
/// union of all row sets is the full midpoint set.
fn row_set(comps: &[Interval], i: usize) -> IntervalSet {
    let mut out = Vec::with_capacity(comps.len() - i);
    out.extend(diagonal_contribution(&comps[i]));
    for j in (i + 1)..comps.len() {
        out.push(cross_contribution(&comps[i], &comps[j]));
    }
    IntervalSet::new(out)
}

fn diagonal_contribution(iv: &Interval) -> Option<Interval> {
    if iv.is_point() {
        None
    } else {
        Some(Interval::open(iv.lo().clone(), iv.hi().clone()))
    }
}

fn cross_contribution(a: &Interval, b: &Interval) -> Interval {
    Interval::new(
        (a.lo() + b.lo()).half(),
        a.lo_closed() && b.lo_closed(),
        (a.hi() + b.hi()).half(),
        a.hi_closed() && b.hi_closed(),
    )
    .expect("pair contribution endpoints are ordered")
}

/// Full pair-sum set `{x + y : x, y ∈ a}` (equal pairs allowed). Feeds the
/// self-similar midpoint recursion, where the cross term between the two
/// scaled stage copies is a scaled translate of this set.
fn pair_sum_set(a: &IntervalSet) -> IntervalSet {
    let comps = a.components();
    let mut out = Vec::with_capacity(comps.len() * (comps.len() + 1) / 2);
    for i in 0..comps.len() {
        for j in i..comps.len() {
            let (x, y) = (&comps[i], &comps[j]);
            out.push(
                Interval::new(
                    x.lo() + y.lo(),
                    x.lo_closed() && y.lo_closed(),
                    x.hi() + y.hi(),
                    x.hi_closed() && y.hi_closed(),
                )
                .expect("sum contribution endpoints are ordered"),
            );
        }
    }
    IntervalSet::new(out)
}

/// Midpoint set of the level-`level` stage, by the chosen method.
pub fn stage_midpoints(level: u32, method: Method) -> Result<IntervalSet> {
    stage_midpoints_with_caps(level, method, &Caps::default())
}

pub fn stage_midpoints_with_caps(level: u32, method: Method, caps: &Caps) -> Result<IntervalSet> {
    if level < 1 {
        return Err(Error::InvalidLevel(level));
    }
    match method {
        Method::Pairwise => {
            if level > caps.pairwise {
                return Err(Error::ResourceCap {
                    requested: level,
                    cap: caps.pairwise,
                });
            }
            let st = stage_with_caps(level, caps)?;
            Ok(midpoint_set(st.set()))
        }
        Method::SelfSimilar => {
            if level > caps.stage {
                return Err(Error::ResourceCap {
                    requested: level,
                    cap: caps.stage,
                });
            }
            let base = stage_with_caps(1, caps)?;
            let third = Rational::new(1, 3);
            let zero = Rational::zero();
            let two_thirds = Rational::new(2, 3);
            // A stage is two one-third copies of the previous stage, the
            // second shifted by 2/3; its midpoint set splits into the two
            // copies' own midpoints plus all cross-copy midpoints, and the
            // cross term is (previous pair-sum set)/6 + 1/3. The pair-sum
            // set satisfies the analogous three-part recursion.
            let mut mid = midpoint_set(base.set());
            let mut sums = pair_sum_set(base.set());
            let scale = |set: &IntervalSet, c1: &Rational, c2: &Rational| {
                set.affine(c1, c2).expect("scale factor is nonzero")
            };
            for _ in 1..level {
                let mid_next = scale(&mid, &third, &zero)
                    .union(&scale(&mid, &third, &two_thirds))
                    .union(&scale(&sums, &Rational::new(1, 6), &third));
                sums = scale(&sums, &third, &zero)
                    .union(&scale(&sums, &third, &two_thirds))
                    .union(&scale(&sums, &third, &Rational::new(4, 3)));
                mid = mid_next;
            }
            Ok(mid)
        }
    }
}

/// Finite midpoint sample: all midpoints of distinct grid points
/// `k/grid_denominator` that lie in `a`. Sound by construction — every
/// returned point belongs to the exact midpoint set — and used as an
/// independent oracle in tests.
pub fn midpoint_set_bruteforce(
    a: &IntervalSet,
    grid_denominator: u64,
) -> Result<BTreeSet<Rational>> {
    if grid_denominator < 1 {
        return Err(Error::InvalidArgument(
            "grid denominator must be at least 1".into(),
        ));
    }
    let d = Rational::from_integer(grid_denominator as i64);
    let mut points: Vec<Rational> = Vec::new();
    for comp in a.components() {
        let mut k = (comp.lo() * &d).ceil_int();
        let end = (comp.hi() * &d).floor_int();
        while k <= end {
            let candidate = Rational::new(k.clone(), BigInt::from(grid_denominator));
            if comp.contains(&candidate) {
                points.push(candidate);
            }
            k += 1;
        }
    }
    let mut midpoints = BTreeSet::new();
    for (i, x) in points.iter().enumerate() {
        for y in &points[i + 1..] {
            midpoints.insert((x + y).half());
        }
    }
    Ok(midpoints)
}

/// Checks the affine-equivariance identity
/// `midpoint_set(c1·t + c2) = c1·midpoint_set(t) + c2` on a concrete input.
pub fn check_scaling_lemma(t: &IntervalSet, c1: &Rational, c2: &Rational) -> Result<bool> {
    let lhs = midpoint_set(&t.affine(c1, c2)?);
    let rhs = midpoint_set(t).affine(c1, c2)?;
    Ok(lhs == rhs)
}

pub fn check_partition_lemma(level: u32, m: u64, n: u64) -> Result<bool> {
    check_partition_lemma_with_caps(level, m, n, &Caps::default())
}

/// Checks that the open cell with index `(m + n)/2` is contained in the
/// midpoint set of cells `m` and `n` of the same level. This holds for every
/// distinct equal-parity pair of cell indices; callers use it to validate
/// certificates and to sweep all pairs at small levels.
pub fn check_partition_lemma_with_caps(level: u32, m: u64, n: u64, caps: &Caps) -> Result<bool> {
    if m == n {
        return Err(Error::InvalidCellIndices {
            level,
            m,
            n,
            reason: "cell indices must be distinct",
        });
    }
    if !(m + n).is_multiple_of(2) {
        return Err(Error::InvalidCellIndices {
            level,
            m,
            n,
            reason: "cell indices must have equal parity",
        });
    }
    let cell = |index: u64| -> Result<Interval> {
        Ok(PartitionCell::new_with_caps(level, index, caps)?
            .interval()
            .clone())
    };
    let target: IntervalSet = cell((m + n) / 2)?.into();
    let sources = IntervalSet::new(vec![cell(m)?, cell(n)?]);
    Ok(target.is_subset_of(&midpoint_set(&sources)))
}

/// Proof that the closed level-`level` cell with index `target` consists of
/// midpoints of the closed cells `left` and `right`, both of which survive
/// inside the stage of the same level.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MidpointCertificate {
    pub level: u32,
    #[serde(rename = "s")]
    pub target: u64,
    #[serde(rename = "m")]
    pub left: u64,
    #[serde(rename = "n")]
    pub right: u64,
}

impl MidpointCertificate {
    /// The closed cell this certificate covers.
    pub fn certified_interval(&self) -> Interval {
        closed_cell(self.level, self.target)
    }

    /// The closed source cells whose midpoints cover the target.
    pub fn source_intervals(&self) -> (Interval, Interval) {
        (
            closed_cell(self.level, self.left),
            closed_cell(self.level, self.right),
        )
    }

    pub fn validate(&self) -> Result<()> {
        self.validate_with_caps(&Caps::default())
    }

    /// Re-derives every claim the certificate makes: index arithmetic, both
    /// source cells surviving in the stage, and the target cell being
    /// contained in the sources' midpoint set.
    pub fn validate_with_caps(&self, caps: &Caps) -> Result<()> {
        if self.level < 1 {
            return Err(Error::InvalidLevel(self.level));
        }
        let total = 3u64.checked_pow(self.level).ok_or_else(|| {
            Error::InvalidArgument("certificate level overflows cell indices".into())
        })?;
        let bad = |reason: &'static str| Error::InvalidCellIndices {
            level: self.level,
            m: self.left,
            n: self.right,
            reason,
        };
        if self.left < 1 || self.left > total || self.right < 1 || self.right > total {
            return Err(bad("source cell index out of range"));
        }
        if self.left == self.right {
            return Err(bad("source cells must be distinct"));
        }
        if self.left + self.right != 2 * self.target {
            return Err(bad("target is not the midpoint of the source indices"));
        }
        if !check_partition_lemma_with_caps(self.level, self.left, self.right, caps)? {
            return Err(Error::InvalidArgument(format!(
                "cell {} is not covered by midpoints of cells {} and {} at level {}",
                self.target, self.left, self.right, self.level
            )));
        }
        let stage_set = stage_with_caps(self.level, caps)?;
        let (left, right) = self.source_intervals();
        let sources = IntervalSet::new(vec![left.clone(), right.clone()]);
        if !sources.is_subset_of(stage_set.set()) {
            return Err(Error::InvalidArgument(format!(
                "source cells {} and {} do not survive in the stage at level {}",
                self.left, self.right, self.level
            )));
        }
        let target: IntervalSet = self.certified_interval().into();
        if !target.is_subset_of(&midpoint_set(&sources)) {
            return Err(Error::InvalidArgument(format!(
                "closed cell {} is not covered by midpoints of closed cells {} and {}",
                self.target, self.left, self.right
            )));
        }
        Ok(())
    }
}

fn closed_cell(level: u32, index: u64) -> Interval {
    let denom = BigInt::from(3).pow(level);
    Interval::closed(
        Rational::new(BigInt::from(index) - 1, denom.clone()),
        Rational::new(BigInt::from(index), denom),
    )
}

pub fn build_certificates(level: u32) -> Result<Vec<MidpointCertificate>> {
    build_certificates_with_caps(level, &Caps::default())
}

/// Certificates for every middle-third cell of the given level — the cells
/// removed between the two scaled stage copies. Level 1 is the single
/// certificate (target 2 from cells 1 and 3); each deeper level refines a
/// level-up certificate into thirds, producing the three child certificates
/// `(3s−2 ← 3m−2, 3n−2)`, `(3s−1 ← 3m−2, 3n)`, `(3s ← 3m, 3n)`. The result
/// is ordered by target index and deterministic.
pub fn build_certificates_with_caps(level: u32, caps: &Caps) -> Result<Vec<MidpointCertificate>> {
    if level < 1 {
        return Err(Error::InvalidLevel(level));
    }
    if level > caps.stage {
        return Err(Error::ResourceCap {
            requested: level,
            cap: caps.stage,
        });
    }
    let mut certs = vec![MidpointCertificate {
        level: 1,
        target: 2,
        left: 1,
        right: 3,
    }];
    for l in 2..=level {
        certs = certs
            .iter()
            .flat_map(|c| {
                [
                    (3 * c.target - 2, 3 * c.left - 2, 3 * c.right - 2),
                    (3 * c.target - 1, 3 * c.left - 2, 3 * c.right),
                    (3 * c.target, 3 * c.left, 3 * c.right),
                ]
                .map(|(target, left, right)| MidpointCertificate {
                    level: l,
                    target,
                    left,
                    right,
                })
            })
            .collect();
    }
    Ok(certs)
}

pub fn certified_coverage(level: u32) -> Result<IntervalSet> {
    certified_coverage_with_caps(level, &Caps::default())
}

/// The region of `(0, 1)` witnessed as stage midpoints purely by
/// certificates: two scaled copies of the previous level's coverage plus
/// this level's certified closed cells. Equals `(0, 1)` at every level,
/// which is the constructive half of the midpoint-set claim.
pub fn certified_coverage_with_caps(level: u32, caps: &Caps) -> Result<IntervalSet> {
    if level < 1 {
        return Err(Error::InvalidLevel(level));
    }
    let third = Rational::new(1, 3);
    // Level-0 base: the "stage" is all of [0, 1], whose midpoint set is the
    // open unit interval.
    let mut coverage = midpoint_set(&Interval::closed(Rational::zero(), Rational::one()).into());
    for l in 1..=level {
        let certified: IntervalSet = build_certificates_with_caps(l, caps)?
            .iter()
            .map(MidpointCertificate::certified_interval)
            .collect();
        coverage = coverage
            .affine(&third, &Rational::zero())
            .expect("scale factor is nonzero")
            .union(
                &coverage
                    .affine(&third, &Rational::new(2, 3))
                    .expect("scale factor is nonzero"),
            )
            .union(&certified);
    }
    Ok(coverage)
}

/// Outcome of checking one stage's midpoint set against the open unit
/// interval.
#[derive(Clone, Debug)]
pub struct LevelCheck {
    pub level: u32,
    pub passed: bool,
    pub stage_components: usize,
    /// Contributions before coalescing: one per unordered component pair
    /// plus one per component diagonal.
    pub pair_count: u64,
    pub midpoint_components: usize,
    pub measure: Rational,
    pub elapsed: Duration,
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub max_level: u32,
    pub all_passed: bool,
    pub levels: Vec<LevelCheck>,
}

pub fn verify_midpoint_claims(max_level: u32) -> Result<VerificationReport> {
    verify_midpoint_claims_with_caps(max_level, &Caps::default())
}

/// Computes the pairwise midpoint set of every stage up to `max_level` and
/// records whether each equals the open unit interval exactly, along with
/// size and timing statistics.
pub fn verify_midpoint_claims_with_caps(max_level: u32, caps: &Caps) -> Result<VerificationReport> {
    if max_level < 1 {
        return Err(Error::InvalidLevel(max_level));
    }
    let open_unit: IntervalSet = Interval::open(Rational::zero(), Rational::one()).into();
    let mut levels = Vec::with_capacity(max_level as usize);
    for level in 1..=max_level {
        let start = Instant::now();
        let st = stage_with_caps(level, caps)?;
        let mids = stage_midpoints_with_caps(level, Method::Pairwise, caps)?;
        let k = st.set().len() as u64;
        levels.push(LevelCheck {
            level,
            passed: mids == open_unit,
            stage_components: st.set().len(),
            pair_count: k * (k - 1) / 2 + k,
            midpoint_components: mids.len(),
            measure: mids.measure(),
            elapsed: start.elapsed(),
        });
    }
    Ok(VerificationReport {
        max_level,
        all_passed: levels.iter().all(|l| l.passed),
        levels,
    })
}
