//! Reading the primitive braid off a sampled choreography and checking it
//! against the predicted braid type.

mod crossings;
mod verify;

pub use crossings::{
    default_epsilon, extract_braid, extract_crossings, CrossingEvent, Extraction, IM_GAP_THRESHOLD,
    SIMULTANEITY_THRESHOLD, TIME_TOL,
};
pub use verify::{expected_primitive, verify_braid_type, VerificationReport, GROWTH_AGREEMENT_TOL};
