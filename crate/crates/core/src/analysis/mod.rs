//! Numerical verification: spirallikeness margins, boundary traces, jump
//! and sector detection, maximum modulus and growth exponents.

mod growth;
mod margin;
mod sector;
mod trace;

pub use growth::{
    decade_schedule, growth_exponent, hansen_ratio, max_modulus, GrowthReport, GrowthRow,
    MaxModulus, DEFAULT_COARSE,
};
pub use margin::{goodman_check, spirallikeness_margin, PolarGrid};
pub use sector::{detect_maximal_sector, SectorReport, SectorSample, CERTIFICATION_RADIUS};
pub use trace::{
    beta_trace, default_gap_threshold, estimate_max_jump, BetaTrace, JumpEstimate, JumpLadder,
    Refinement,
};
