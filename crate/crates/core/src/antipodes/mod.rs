//! Antipodes of `C(A, H)`, the canonical maps they invert, the right
//! coproduct, and the group of twists relating different antipodes.

pub mod antipode;
pub mod canonical;
pub mod decompose;
pub mod right_coproduct;
pub mod twist;

pub use antipode::{antipode_flip, antipode_s, verify_antipode, verify_flip_consistency, AntipodeMap};
pub use canonical::{beta, beta_tilde, lambda, lambda_inv, verify_beta_lambda};
pub use decompose::{decompose, Gen};
pub use right_coproduct::{right_coproduct, verify_right_coprod_lemma};
pub use twist::{
    act, convolve, is_twist, params_from_twist, twist_from_antipodes, twist_from_params, twisted_antipode,
    verify_bohm_theorem, verify_twists, Functional, TwistParams,
};
