//! Exact laboratory for tournament densities.
//!
//! Small tournaments ([`Tournament`], at most [`MAX_H`] vertices) are
//! enumerated up to isomorphism, their bias polynomials and minimum feedback
//! arc sets are computed in exact arithmetic, and large constructed
//! tournaments ([`BigTournament`]) are measured for sub-tournament densities.
//!
//! Polynomial code is generic over [`Scalar`]; the aliases below fix the
//! scalar for the common cases.

pub mod bias;
pub mod big;
pub mod canon;
pub mod catalog;
pub mod density;
pub mod error;
pub mod fas;
pub mod poly;
pub mod real;
pub mod rng;
pub mod scalar;
pub mod tournament;

pub use bias::{
    bias_polynomial, classify, classify_catalog, density_poly_p, forward_histogram, in_bias_subset, in_f,
    typical_density, BiasPolynomial, ClassificationRecord, DensityPolynomialP, ForwardHistogram,
};
pub use big::{build_blowup, build_tnp, build_transversal, BigTournament, Provenance, Seed};
pub use canon::{aut_size, canonical_form, canonize, contains_subtournament, CanonicalForm};
pub use catalog::{enumerate, load_or_enumerate, CacheOutcome, TournamentCatalog};
pub use density::{
    census_exact, census_montecarlo, density_exact, density_montecarlo, dominance_report, DensityReport, Estimate, Mode,
};
pub use error::{Error, Result};
pub use fas::{fas_dominance_condition, in_a, min_fas, FasResult, Verdict};
pub use poly::Polynomial;
pub use scalar::{Field, Scalar};
pub use tournament::{pair_count, Tournament};

/// Largest supported pattern size.
pub const MAX_H: usize = 10;

/// Exact rational scalar.
pub type Rational = num_rational::BigRational;

/// Polynomial with exact rational coefficients.
pub type ExactPoly = Polynomial<Rational>;
/// Polynomial with `f64` coefficients, for plotting and quick estimates.
pub type FloatPoly = Polynomial<f64>;
/// Integer polynomial used for exact accumulation before normalisation.
pub type IntPoly = Polynomial<i128>;

pub type ExactBias = BiasPolynomial<Rational>;
pub type FloatBias = BiasPolynomial<f64>;
pub type ExactDensityPoly = DensityPolynomialP<Rational>;
