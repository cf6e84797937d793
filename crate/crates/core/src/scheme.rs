//! Modulation schemes and their decision-distance geometry.

use std::fmt;

use crate::error::{Error, Result};

/// Supported modulations. Coherent schemes are special cases of rectangular QAM
/// with `M_I × M_Q` levels and quadrature/in-phase decision-distance ratio `β`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ModulationScheme {
    Rqam { m_i: u32, m_q: u32, beta: f64 },
    Sqam { m: u32 },
    Ask { m: u32 },
    Qpsk,
    Bpsk,
    Dpsk { m: u32 },
}

impl ModulationScheme {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::domain("ModulationScheme", msg));
        match *self {
            ModulationScheme::Rqam { m_i, m_q, beta } => {
                if m_i == 0 || m_q == 0 || (m_i as u64) * (m_q as u64) < 2 {
                    return bad(format!("RQAM needs M_I, M_Q >= 1 and M_I·M_Q >= 2, got {m_i}×{m_q}"));
                }
                if !(beta > 0.0 && beta.is_finite()) {
                    return bad(format!("RQAM β must be finite and > 0, got {beta}"));
                }
            }
            ModulationScheme::Sqam { m } => {
                let r = m.isqrt();
                if m < 4 || r * r != m {
                    return bad(format!("SQAM order must be a perfect square >= 4, got {m}"));
                }
            }
            ModulationScheme::Ask { m } | ModulationScheme::Dpsk { m } => {
                if m < 2 {
                    return bad(format!("modulation order must be >= 2, got {m}"));
                }
            }
            ModulationScheme::Qpsk | ModulationScheme::Bpsk => {}
        }
        Ok(())
    }

    /// Number of constellation points.
    pub fn order(&self) -> u32 {
        match *self {
            ModulationScheme::Rqam { m_i, m_q, .. } => m_i * m_q,
            ModulationScheme::Sqam { m } | ModulationScheme::Ask { m } | ModulationScheme::Dpsk { m } => m,
            ModulationScheme::Qpsk => 4,
            ModulationScheme::Bpsk => 2,
        }
    }

    /// `(M_I, M_Q, β)` of the equivalent rectangular QAM, `None` for DPSK.
    pub fn rqam_shape(&self) -> Option<(u32, u32, f64)> {
        match *self {
            ModulationScheme::Rqam { m_i, m_q, beta } => Some((m_i, m_q, beta)),
            ModulationScheme::Sqam { m } => {
                let r = m.isqrt();
                Some((r, r, 1.0))
            }
            ModulationScheme::Ask { m } => Some((m, 1, 1.0)),
            ModulationScheme::Qpsk => Some((2, 2, 1.0)),
            ModulationScheme::Bpsk => Some((2, 1, 1.0)),
            ModulationScheme::Dpsk { .. } => None,
        }
    }
}

impl fmt::Display for ModulationScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ModulationScheme::Rqam { m_i, m_q, beta } => write!(f, "{m_i}x{m_q}-RQAM(beta={beta})"),
            ModulationScheme::Sqam { m } => write!(f, "{m}-SQAM"),
            ModulationScheme::Ask { m } => write!(f, "{m}-ASK"),
            ModulationScheme::Qpsk => write!(f, "QPSK"),
            ModulationScheme::Bpsk => write!(f, "BPSK"),
            ModulationScheme::Dpsk { m } => write!(f, "{m}-DPSK"),
        }
    }
}

/// Decision-distance constants of an `M_I × M_Q` rectangular QAM with unit average energy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RqamConstants {
    /// `(2/π)(M_I−1)/M_I`
    pub a_i: f64,
    /// `(2/π)(M_Q−1)/M_Q`
    pub a_q: f64,
    /// `√(6/((M_I²−1) + β²(M_Q²−1)))`
    pub amp_i: f64,
    /// `β·A_I`
    pub amp_q: f64,
}

impl RqamConstants {
    pub fn new(m_i: u32, m_q: u32, beta: f64) -> Result<Self> {
        ModulationScheme::Rqam { m_i, m_q, beta }.validate()?;
        let (mi, mq) = (m_i as f64, m_q as f64);
        let amp_i = (6.0 / ((mi * mi - 1.0) + beta * beta * (mq * mq - 1.0))).sqrt();
        Ok(RqamConstants {
            a_i: std::f64::consts::FRAC_2_PI * (mi - 1.0) / mi,
            a_q: std::f64::consts::FRAC_2_PI * (mq - 1.0) / mq,
            amp_i,
            amp_q: beta * amp_i,
        })
    }

    /// `(M_I−1)/M_I`
    pub fn p(&self) -> f64 {
        self.a_i * std::f64::consts::FRAC_PI_2
    }

    /// `(M_Q−1)/M_Q`
    pub fn q(&self) -> f64 {
        self.a_q * std::f64::consts::FRAC_PI_2
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(ModulationScheme::Rqam { m_i: 1, m_q: 1, beta: 1.0 }.validate().is_err());
        assert!(ModulationScheme::Rqam { m_i: 4, m_q: 2, beta: 0.0 }.validate().is_err());
        assert!(ModulationScheme::Rqam { m_i: 2, m_q: 1, beta: 1.0 }.validate().is_ok());
        assert!(ModulationScheme::Sqam { m: 8 }.validate().is_err());
        assert!(ModulationScheme::Sqam { m: 1 }.validate().is_err());
        assert!(ModulationScheme::Sqam { m: 64 }.validate().is_ok());
        assert!(ModulationScheme::Ask { m: 1 }.validate().is_err());
        assert!(ModulationScheme::Dpsk { m: 2 }.validate().is_ok());
    }

    #[test]
    fn special_case_geometry() {
        let c = RqamConstants::new(2, 1, 1.0).unwrap();
        assert!((c.amp_i - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(c.a_q, 0.0);
        let c = RqamConstants::new(2, 2, 1.0).unwrap();
        assert!((c.amp_i - 1.0).abs() < 1e-15 && (c.amp_q - 1.0).abs() < 1e-15);
        let c = RqamConstants::new(4, 2, 1.0).unwrap();
        assert!((c.amp_i - (6.0f64 / 18.0).sqrt()).abs() < 1e-15);
        assert!((c.p() - 0.75).abs() < 1e-15 && (c.q() - 0.5).abs() < 1e-15);
        assert_eq!(ModulationScheme::Sqam { m: 16 }.rqam_shape(), Some((4, 4, 1.0)));
        assert_eq!(ModulationScheme::Dpsk { m: 8 }.order(), 8);
        assert_eq!(ModulationScheme::Rqam { m_i: 4, m_q: 2, beta: 1.0 }.order(), 8);
    }
}
