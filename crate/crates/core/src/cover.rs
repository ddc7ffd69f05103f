//! Point-pair "spheres" inside the Cantor construction, centered at
//! arbitrary targets, and the end-to-end coverage report.
//!
//! A sphere in one dimension is the two-point set `{z − r, z + r}`. The
//! punchline this module makes checkable: the centers form the full-measure
//! set `(0, 1)` while both sphere points can be kept inside a stage of
//! measure `(2/3)^level` — a set as small as desired. Each assignment is
//! produced from a witness chain and is either *exact* (both points are
//! limit-set members) or a finite-depth certificate (both points lie in the
//! deepest searched stage, with the residual bound recorded).

use num_bigint::BigInt;
#[cfg(feature = "parallel")]
use rayon::prelude::*;
use serde::Serialize;

use crate::cantor::{in_limit_set, stage_with_caps};
use crate::error::{Error, Result};
use crate::midpoint::{stage_midpoints_with_caps, Method};
use crate::rational::Rational;
use crate::witness::{find_witness_with_caps, WitnessChain};
use crate::Caps;

/// A positive-radius two-point sphere `{center − radius, center + radius}`
/// together with the evidence that both points lie in the construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SphereAssignment {
    center: Rational,
    radius: Rational,
    /// Depth of the witness chain backing this assignment; for non-exact
    /// assignments both sphere points lie in the stage of this level.
    certified_at_level: u32,
    /// Whether both sphere points are exact limit-set members.
    exact: bool,
    /// Worst-case corner residual of the chain, attached to finite-depth
    /// certificates; `None` for exact assignments.
    residual_bound: Option<Rational>,
    chain: WitnessChain,
}

impl SphereAssignment {
    pub fn center(&self) -> &Rational {
        &self.center
    }

    pub fn radius(&self) -> &Rational {
        &self.radius
    }

    pub fn certified_at_level(&self) -> u32 {
        self.certified_at_level
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    pub fn residual_bound(&self) -> Option<&Rational> {
        self.residual_bound.as_ref()
    }

    pub fn chain(&self) -> &WitnessChain {
        &self.chain
    }

    /// The two sphere points `(center − radius, center + radius)`.
    pub fn endpoints(&self) -> (Rational, Rational) {
        (&self.center - &self.radius, &self.center + &self.radius)
    }
}

pub fn assign_sphere(z: &Rational, max_depth: u32) -> Result<SphereAssignment> {
    assign_sphere_with_caps(z, max_depth, &Caps::default())
}

/// Builds a sphere centered at `z` from a depth-`max_depth` witness chain.
///
/// The deepest pair's endpoint representatives are tried first: if some
/// component endpoint `c` gives a partner `2z − c` that is itself a
/// limit-set member, the assignment is exact with radius `|z − c|`.
/// Otherwise the chain must have separated (`X ≠ Y`), and the assignment is
/// the finite-depth certificate with radius half the distance between the
/// component midpoints — both sphere points then lie inside the deepest
/// stage. An unseparated chain admits no positive radius and is reported as
/// an error.
pub fn assign_sphere_with_caps(
    z: &Rational,
    max_depth: u32,
    caps: &Caps,
) -> Result<SphereAssignment> {
    let chain = find_witness_with_caps(z, max_depth, caps)?;
    let pair = chain.last_pair();

    let corners = [
        pair.x().lo().clone(),
        pair.x().hi().clone(),
        pair.y().lo().clone(),
        pair.y().hi().clone(),
    ];
    for corner in corners {
        let partner = &(z + z) - &corner;
        if corner == *z || partner.is_negative() || partner > Rational::one() {
            continue;
        }
        if in_limit_set(&corner)? && in_limit_set(&partner)? {
            return Ok(SphereAssignment {
                center: z.clone(),
                radius: (z - &corner).abs(),
                certified_at_level: chain.depth(),
                exact: true,
                residual_bound: None,
                chain,
            });
        }
    }

    if !chain.is_separated() {
        return Err(Error::SeparationNotCertified {
            center: z.clone(),
            depth: max_depth,
        });
    }
    // With X strictly left of Y, half the midpoint-to-midpoint distance is a
    // positive radius whose sphere points land inside X and Y respectively:
    // feasibility pins z − r within [lo X, hi X] and z + r within Y.
    let radius = (pair.y().midpoint() - pair.x().midpoint()).half();
    Ok(SphereAssignment {
        center: z.clone(),
        radius,
        certified_at_level: chain.depth(),
        exact: false,
        residual_bound: Some(chain.midpoint_residual()),
        chain,
    })
}

/// Sphere assignments for every interior grid point, with the measure
/// comparison that makes the construction striking: the center set has
/// measure 1, the stage containing all sphere points has measure
/// `(2/3)^stage_level`.
#[derive(Clone, Debug, Serialize)]
pub struct CoverReport {
    pub grid_denominator: u64,
    pub sample_count: usize,
    pub stage_level: u32,
    pub max_depth: u32,
    #[serde(rename = "measure_S")]
    pub measure_s: Rational,
    #[serde(rename = "measure_B_stage")]
    pub measure_b_stage: Rational,
    pub assignments: Vec<SphereAssignment>,
}

pub fn cover_report(
    grid_denominator: u64,
    stage_level: u32,
    max_depth: u32,
) -> Result<CoverReport> {
    cover_report_with_caps(grid_denominator, stage_level, max_depth, &Caps::default())
}

/// Assigns a sphere to every `z = k/grid_denominator` with
/// `0 < k < grid_denominator` and checks each sphere's points against the
/// level-`stage_level` stage. Assignments are computed independently (in
/// parallel when enabled) and reported in increasing center order.
pub fn cover_report_with_caps(
    grid_denominator: u64,
    stage_level: u32,
    max_depth: u32,
    caps: &Caps,
) -> Result<CoverReport> {
    if grid_denominator < 2 {
        return Err(Error::InvalidArgument(
            "grid denominator must be at least 2".into(),
        ));
    }
    if stage_level < 1 {
        return Err(Error::InvalidLevel(stage_level));
    }
    if max_depth < stage_level {
        return Err(Error::InvalidArgument(format!(
            "witness depth {max_depth} must be at least the stage level {stage_level}"
        )));
    }
    let stage_set = stage_with_caps(stage_level, caps)?;

    let sample = |k: u64| Rational::new(BigInt::from(k), BigInt::from(grid_denominator));
    let assign = |k: u64| assign_sphere_with_caps(&sample(k), max_depth, caps);

    #[cfg(feature = "parallel")]
    let assignments: Result<Vec<SphereAssignment>> =
        (1..grid_denominator).into_par_iter().map(assign).collect();
    #[cfg(not(feature = "parallel"))]
    let assignments: Result<Vec<SphereAssignment>> = (1..grid_denominator).map(assign).collect();
    let assignments = assignments?;

    for a in &assignments {
        let (lo, hi) = a.endpoints();
        if !stage_set.set().contains_point(&lo) || !stage_set.set().contains_point(&hi) {
            return Err(Error::InvalidArgument(format!(
                "sphere for center {} leaves the stage at level {stage_level}",
                a.center()
            )));
        }
    }

    // The center set is the stage midpoint set, computed rather than
    // assumed; its measure is exactly 1.
    let measure_s = stage_midpoints_with_caps(stage_level, Method::SelfSimilar, caps)?.measure();
    Ok(CoverReport {
        grid_denominator,
        sample_count: assignments.len(),
        stage_level,
        max_depth,
        measure_s,
        measure_b_stage: stage_set.measure(),
        assignments,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cantor::stage;

    fn rat(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn half_gets_the_symmetric_exact_sphere() {
        let sphere = assign_sphere(&rat("1/2"), 8).unwrap();
        assert!(sphere.is_exact());
        assert_eq!(sphere.radius(), &rat("1/2"));
        assert_eq!(sphere.endpoints(), (rat("0"), rat("1")));
        assert_eq!(sphere.residual_bound(), None);
    }

    #[test]
    fn one_third_pairs_zero_with_two_thirds() {
        let sphere = assign_sphere(&rat("1/3"), 8).unwrap();
        assert!(sphere.is_exact());
        assert_eq!(sphere.radius(), &rat("1/3"));
        assert_eq!(sphere.endpoints(), (rat("0"), rat("2/3")));
    }

    #[test]
    fn two_ninths_pairs_one_ninth_with_one_third() {
        let sphere = assign_sphere(&rat("2/9"), 8).unwrap();
        assert!(sphere.is_exact());
        assert_eq!(sphere.radius(), &rat("1/9"));
        assert_eq!(sphere.endpoints(), (rat("1/9"), rat("1/3")));
    }

    #[test]
    fn quarter_has_no_positive_radius_sphere() {
        // 1/4 is a limit-set member that is the midpoint of no distinct
        // member pair; its chain never separates, and inventing a radius
        // would be wrong. The error reports the searched depth.
        let err = assign_sphere(&rat("1/4"), 12).unwrap_err();
        match err {
            Error::SeparationNotCertified { center, depth } => {
                assert_eq!(center, rat("1/4"));
                assert_eq!(depth, 12);
            }
            other => panic!("unexpected error: {other}"),
        }
    }

    #[test]
    fn separated_chains_always_yield_a_sound_sphere() {
        let st10 = stage(10).unwrap();
        for z in ["5/12", "17/100", "3/7", "721/729"] {
            let sphere = assign_sphere(&rat(z), 10).unwrap();
            assert!(sphere.radius() > &Rational::zero());
            let (lo, hi) = sphere.endpoints();
            assert_eq!(&(&lo + &hi).half(), sphere.center());
            if sphere.is_exact() {
                assert!(in_limit_set(&lo).unwrap() && in_limit_set(&hi).unwrap());
            } else {
                assert!(sphere.residual_bound().unwrap() <= &Rational::new(1, 3).pow(10));
            }
            // Exact members lie in every stage; certificate points lie in
            // the depth-10 stage by construction.
            assert!(st10.set().contains_point(&lo));
            assert!(st10.set().contains_point(&hi));
        }
    }

    #[test]
    fn small_cover_report_end_to_end() {
        let report = cover_report(9, 3, 6).unwrap();
        assert_eq!(report.sample_count, 8);
        assert_eq!(report.measure_s, Rational::one());
        assert_eq!(report.measure_b_stage, rat("8/27"));
        let centers: Vec<&Rational> = report.assignments.iter().map(|a| a.center()).collect();
        let expected: Vec<Rational> = (1..9).map(|k| Rational::new(k, 9)).collect();
        assert_eq!(centers, expected.iter().collect::<Vec<_>>());
    }

    #[test]
    fn minimal_grid_has_the_single_exact_sample() {
        let report = cover_report(2, 1, 4).unwrap();
        assert_eq!(report.sample_count, 1);
        let only = &report.assignments[0];
        assert_eq!(only.center(), &rat("1/2"));
        assert!(only.is_exact());
        assert_eq!(only.radius(), &rat("1/2"));
    }

    #[test]
    fn report_validation() {
        assert!(cover_report(1, 1, 4).is_err());
        assert!(matches!(cover_report(9, 0, 4), Err(Error::InvalidLevel(0))));
        assert!(cover_report(9, 5, 4).is_err());
    }

    #[test]
    fn report_serialization_keys() {
        let report = cover_report(3, 1, 3).unwrap();
        let json = serde_json::to_value(&report).unwrap();
        assert_eq!(json["measure_S"], "1/1");
        assert_eq!(json["measure_B_stage"], "2/3");
        assert_eq!(json["grid_denominator"], 3);
        assert_eq!(json["assignments"][0]["center"], "1/3");
        assert_eq!(json["assignments"][0]["exact"], true);
        assert_eq!(json["assignments"][0]["chain"]["z"], "1/3");
    }
}
