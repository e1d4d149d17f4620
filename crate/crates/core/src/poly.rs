//! Polynomials shared by the model, all in Horner form.

/// `P(z) = 3z - 4.5z² + 1.5z³`, the cubic part of the reduced vector field.
#[inline]
pub(crate) fn cubic(z: f64) -> f64 {
    z * (3.0 + z * (-4.5 + 1.5 * z))
}

/// `P'(z) = 3 - 9z + 4.5z²`, also the weight of the Melnikov integrand.
#[inline]
pub(crate) fn cubic_prime(z: f64) -> f64 {
    3.0 + z * (-9.0 + 4.5 * z)
}

/// Potential `V(z) = -1.5z² + 1.5z³ - 0.375z⁴ - Gz` with `V' = -(P + G)`.
#[inline]
pub(crate) fn potential(z: f64, g: f64) -> f64 {
    z * (-g + z * (-1.5 + z * (1.5 - 0.375 * z)))
}
