//! Exact stretch-factor polynomials, certified root isolation, and the
//! extremal survey.

mod perron;
mod polynomial;
mod roots;
mod stretch;

pub use perron::perron_root;
pub use polynomial::IntPolynomial;
pub use roots::{
    cauchy_bound_exponent, compare_largest_roots, largest_real_root, RootEnclosure, SturmSequence, MIN_ENCLOSURE_WIDTH,
};
pub use stretch::{
    classify, compare_stretch, extremal_survey, extremal_survey_capped, f_poly, four_strand_minimal_factor,
    predicted_extremes, r_poly, stretch_factor, Classification, StretchReport, Survey,
};
