//! Active noise control: signals, acoustic paths, the adaptive controller and
//! the attenuation figure of merit.

pub mod controller;
pub mod metrics;
pub mod path;
pub mod signal;

pub use controller::{
    anc_run, AncConfig, AncController, AncResult, Algorithm, PlantEstimate, StepOutput,
    DEFAULT_SAMPLE_RATE_HZ,
};
pub use metrics::{attenuation_db, ATTENUATION_CAP_DB};
pub use path::{convolve_path, FirPath};
pub use signal::{generate_broadband, generate_tone, invert_phase, SampleBuffer};
