//! Symbol error probabilities over two-wave with diffuse power (TWDP) fading.
//!
//! * [`exact`] — exact average symbol error probabilities as specular-index series;
//! * [`asymptotic`] — high-SNR closed forms;
//! * [`oracle`] — independent quadrature of the MGF-form integrals;
//! * [`sim`] — Monte-Carlo modem;
//! * [`channel`] — the channel model (envelope PDF, SNR MGF, gain sampler);
//! * [`specfun`] — Gauss ₂F₁, Appell F₁, modified Bessel functions.

pub mod asymptotic;
pub mod channel;
pub mod error;
pub mod exact;
pub mod oracle;
pub mod quad;
pub mod scheme;
pub mod series;
pub mod sim;
pub mod specfun;
pub mod units;

pub use asymptotic::asep_asymptotic;
pub use channel::TwdpParams;
pub use error::{Error, Result};
pub use exact::{asep_exact, AsepResult};
pub use oracle::asep_quadrature;
pub use quad::QuadConfig;
pub use scheme::ModulationScheme;
pub use series::SeriesConfig;
pub use sim::{run_ser, SimConfig, SimEstimate};
pub use specfun::EvalConfig;
pub use units::{db_to_linear, linear_to_db};
