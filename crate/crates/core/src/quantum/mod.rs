//! Quantum CMS systems: Dunkl operators, Jack polynomials, Baker–Akhiezer functions and
//! S-matrices.

mod ba;
mod dunkl;
mod jack;
mod smatrix;

pub use ba::{ba_antisymmetrize, ba_function, ba_operator, permutations_with_sign, AntisymmetrizationWitness, BAElement, BA_GUARD};
pub use dunkl::{
    check_commutativity, check_equivariance, check_invariance, dunkl_apply, dunkl_laplacian, gauged_integral_apply,
    monomials_up_to, restricted_laplacian_apply, IdentityReport,
};
pub use jack::{
    jack_eigen_check, jack_eigen_residual_at, jack_polynomial, quasimomentum_energy, sample_points, trig_cms_apply,
    trig_cms_on_monomial, JackEigenReport, JackPolynomial, LaurentPoly, FD_STEP, WALL_MARGIN,
};
pub use smatrix::{hyperbolic_two_body_smatrix, rational_smatrix_phase, rational_smatrix_sign};
