//! Physical dimensions of a standard 3x3 cube, in centimeters.

/// Edge length of the whole cube.
pub const EDGE_LENGTH_CM: f64 = 5.7;

/// Edge length of one sub-cube.
pub const SUBCUBE_LENGTH_CM: f64 = 1.9;

/// Positioning error beyond which a grasp under- or over-constrains the
/// cube: half a sub-cube.
pub const FAILURE_THRESHOLD_CM: f64 = SUBCUBE_LENGTH_CM / 2.0;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn threshold_is_half_a_subcube() {
        assert_eq!(FAILURE_THRESHOLD_CM, 0.95);
        assert_eq!(FAILURE_THRESHOLD_CM * 2.0, SUBCUBE_LENGTH_CM);
        assert!((SUBCUBE_LENGTH_CM * 3.0 - EDGE_LENGTH_CM).abs() < 1e-12);
    }
}
