//! Decibel conversions.

/// `10^{dB/10}`.
pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// `10·log₁₀(x)`.
pub fn linear_to_db(x: f64) -> f64 {
    10.0 * x.log10()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn known_points() {
        assert_eq!(db_to_linear(0.0), 1.0);
        assert_eq!(db_to_linear(10.0), 10.0);
        assert_eq!(db_to_linear(30.0), 1000.0);
        assert_eq!(linear_to_db(100.0), 20.0);
    }

    proptest! {
        #[test]
        fn round_trip(db in -50.0f64..80.0) {
            prop_assert!((linear_to_db(db_to_linear(db)) - db).abs() <= 1e-12 * db.abs().max(1.0));
        }
    }
}
