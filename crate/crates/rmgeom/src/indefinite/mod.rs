//! Curves in spaces with indefinite or degenerate metrics.

pub mod isotropic;
pub mod lorentz;

pub use isotropic::{iso_apparatus, iso_sphere_classify, IsoClass, IsoFrameData};
pub use lorentz::{
    causal_character, lorentz_cross, lorentz_rm_frame, lorentz_sphere_membership, null_frame,
    reparametrize_causal, CausalCharacter, LorentzRMData, LorentzSphere,
};
