//! Exact rational interval-set algebra and the midpoint-set geometry of the
//! ternary Cantor construction.
//!
//! Everything is computed with arbitrary-precision rational arithmetic over
//! canonical interval unions with per-endpoint inclusivity — set equality is
//! structural equality, and no result depends on floating point.
//!
//! The centerpiece is a family of checkable facts about the classic
//! middle-thirds construction on `[0, 1]`:
//!
//! * every stage `C_i` (measure `(2/3)^i`) has midpoint set exactly the open
//!   unit interval `(0, 1)` ([`midpoint::stage_midpoints`],
//!   [`midpoint::verify_midpoint_claims`]), computed both pairwise and via
//!   the stage self-similarity, with cell-level certificates
//!   ([`midpoint::build_certificates`]) that witness the claim
//!   constructively;
//! * for any target `z ∈ (0, 1)`, a deterministic search produces a nested
//!   chain of stage-component pairs localizing points `x, y` of the limit
//!   set with `(x + y)/2 = z` ([`witness::find_witness`]);
//! * combining the two, every center in a full-measure set carries a
//!   two-point sphere `{z − r, z + r}` lying inside an arbitrarily small
//!   stage ([`cover::assign_sphere`], [`cover::cover_report`]) — a
//!   measure-zero set containing a sphere centered at every point of a
//!   measure-one set.
//!
//! The `parallel` feature (on by default) evaluates large midpoint
//! computations and cover reports with rayon; results are bit-identical to
//! the sequential path because all reductions end in a canonical form.

pub mod cantor;
pub mod cover;
mod error;
pub mod interval;
pub mod midpoint;
pub mod rational;
pub mod set;
pub mod ternary;
pub mod witness;

pub use error::{Error, Result};
pub use interval::Interval;
pub use rational::Rational;
pub use set::IntervalSet;

/// Resource limits for the exponentially sized computations.
///
/// Stages have `2^level` components, and the pairwise midpoint computation
/// touches a pair of each — the separate, lower pairwise cap reflects that
/// quadratic blowup. Operations exceeding a cap return
/// [`Error::ResourceCap`] instead of attempting the computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Highest stage level (and witness-chain depth) allowed.
    pub stage: u32,
    /// Highest level for full pairwise midpoint evaluation.
    pub pairwise: u32,
}

impl Caps {
    pub const DEFAULT_STAGE: u32 = 14;
    pub const DEFAULT_PAIRWISE: u32 = 12;

    /// The same cap for every kind of computation.
    pub fn uniform(cap: u32) -> Self {
        Caps {
            stage: cap,
            pairwise: cap,
        }
    }
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            stage: Self::DEFAULT_STAGE,
            pairwise: Self::DEFAULT_PAIRWISE,
        }
    }
}
