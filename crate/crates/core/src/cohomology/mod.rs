//! Certified linear algebra on the bigraded cohomology action.

pub mod degrees;
pub mod hodge;
pub mod kunneth;
pub mod rate;
pub mod refined;
pub mod roots;
pub mod spectral;

pub use degrees::{
    certificate_from_profile, degree_profile, entropy, gap_certificate, DegreeProfile, GapCertificate,
    DEFAULT_DELTA0_MARGIN,
};
pub use hodge::{invert_action, product_action, HodgeAction};
pub use kunneth::{kunneth_action, KunnethAction, KunnethBlock};
pub use rate::{projector_convergence_rate, RateReport};
pub use refined::{find_parity_pair, refined_delta_threshold};
pub use spectral::{
    check_multiplicity_one, check_surface_spectrum, check_unique_dominant, spectral_radius, Dominance,
    MultiplicityBranch, MultiplicityCheck, SpectralRadius, Spectrum, ZeroRadius,
};
