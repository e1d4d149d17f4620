//! Traveling-wave reduction of the perturbed long wave equation.
//!
//! With `u = φ(ξ)`, `ξ = x - ct`, the scaled amplitude `z = φ/c` and phase
//! `ζ = cξ`, the traveling-wave ODE becomes the singularly perturbed system
//!
//! ```text
//!   z' = y,   y' = w,   εc w' = -P(z) + w - (ε/c) y - G,     P(z) = 3z - 4.5z² + 1.5z³
//! ```
//!
//! whose first-order slow manifold carries the planar flow
//!
//! ```text
//!   z' = y,   y' = P(z) + G + ε c y (P'(z) + 1/c²).
//! ```
//!
//! `O(ε²)` terms are dropped throughout.

use crate::error::{Error, Result};
use crate::poly::{cubic, cubic_prime, potential};

/// Model parameters.
///
/// The integration constant `G` is derived from the saddle abscissa `κ` when
/// the parameters are built with [`Params::new`]. [`Params::from_g`] sets `G`
/// directly and leaves `κ` unset.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Params {
    c: f64,
    eps: f64,
    kappa: Option<f64>,
    g: f64,
}

impl Params {
    pub fn new(c: f64, eps: f64, kappa: f64) -> Result<Self> {
        check_c_eps(c, eps)?;
        if !kappa.is_finite() {
            return Err(Error::InvalidParameter(format!("kappa must be finite, got {kappa}")));
        }
        Ok(Self { c, eps, kappa: Some(kappa), g: kappa_to_g(kappa) })
    }

    pub fn from_g(c: f64, eps: f64, g: f64) -> Result<Self> {
        check_c_eps(c, eps)?;
        if !g.is_finite() {
            return Err(Error::InvalidParameter(format!("G must be finite, got {g}")));
        }
        Ok(Self { c, eps, kappa: None, g })
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn kappa(&self) -> Option<f64> {
        self.kappa
    }

    pub fn g(&self) -> f64 {
        self.g
    }

    pub fn with_c(self, c: f64) -> Result<Self> {
        check_c_eps(c, self.eps)?;
        Ok(Self { c, ..self })
    }

    pub fn with_eps(self, eps: f64) -> Result<Self> {
        check_c_eps(self.c, eps)?;
        Ok(Self { eps, ..self })
    }
}

fn check_c_eps(c: f64, eps: f64) -> Result<()> {
    if !(c.is_finite() && c > 0.0) {
        return Err(Error::InvalidParameter(format!("wave speed must be positive, got {c}")));
    }
    if !(eps.is_finite() && eps >= 0.0) {
        return Err(Error::InvalidParameter(format!("eps must be non-negative, got {eps}")));
    }
    Ok(())
}

/// A state `(z, y)` of the reduced planar system.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PhasePoint {
    pub z: f64,
    pub y: f64,
}

impl PhasePoint {
    pub const fn new(z: f64, y: f64) -> Self {
        Self { z, y }
    }

    pub fn is_finite(&self) -> bool {
        self.z.is_finite() && self.y.is_finite()
    }
}

/// A state `(z, y, w)` of the three-dimensional slow/fast system.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SlowPoint {
    pub z: f64,
    pub y: f64,
    pub w: f64,
}

impl SlowPoint {
    pub const fn new(z: f64, y: f64, w: f64) -> Self {
        Self { z, y, w }
    }

    pub fn phase(&self) -> PhasePoint {
        PhasePoint::new(self.z, self.y)
    }
}

/// One sample of the physical fields `(u, v)` at `(x, t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalWaveSample {
    pub x: f64,
    pub t: f64,
    pub u: f64,
    pub v: f64,
}

/// `G = -(3κ - 4.5κ² + 1.5κ³)`, the integration constant that puts a
/// saddle at `(κ, 0)`.
pub fn kappa_to_g(kappa: f64) -> f64 {
    -cubic(kappa)
}

/// Real roots of `1.5κ³ - 4.5κ² + 3κ + G = 0`, ascending and deduplicated.
pub fn g_to_kappa_roots(g: f64) -> Vec<f64> {
    crate::bifurcation::cubic_roots(g)
}

/// Right-hand side of the first-order reduced planar system.
pub fn reduced_rhs(p: PhasePoint, params: &Params) -> (f64, f64) {
    let c = params.c;
    let damping = params.eps * c * p.y * (cubic_prime(p.z) + 1.0 / (c * c));
    (p.y, cubic(p.z) + params.g + damping)
}

/// Right-hand side of the 3D slow system in the slow phase `ζ`.
pub fn slow_rhs(p: SlowPoint, params: &Params) -> Result<(f64, f64, f64)> {
    if params.eps == 0.0 {
        return Err(Error::SingularLimit);
    }
    let fast = layer_drive(p, params);
    Ok((p.y, p.w, fast / (params.eps * params.c)))
}

/// Right-hand side of the fast system in `η = ζ/ε`; the layer system at `ε = 0`.
pub fn fast_rhs(p: SlowPoint, params: &Params) -> (f64, f64, f64) {
    let fast = layer_drive(p, params);
    (params.eps * p.y, params.eps * p.w, fast / params.c)
}

fn layer_drive(p: SlowPoint, params: &Params) -> f64 {
    -cubic(p.z) + p.w - params.eps / params.c * p.y - params.g
}

/// Critical manifold `w = P(z) + G`.
pub fn critical_manifold_w(z: f64, g: f64) -> f64 {
    cubic(z) + g
}

/// First-order slow manifold `w = P(z) + G + ε c y (P'(z) + 1/c²)`.
pub fn slow_manifold_w(p: PhasePoint, params: &Params) -> f64 {
    let base = critical_manifold_w(p.z, params.g);
    if params.eps == 0.0 {
        return base;
    }
    let c = params.c;
    base + params.eps * (c * p.y * (cubic_prime(p.z) + 1.0 / (c * c)))
}

/// Eigenvalues of the layer linearization: two zeros along the manifold and
/// the transverse eigenvalue `1/c`.
pub fn layer_eigenvalues(c: f64) -> [f64; 3] {
    [0.0, 0.0, 1.0 / c]
}

/// First integral of the unperturbed planar system with saddle at `κ`.
pub fn first_integral(p: PhasePoint, kappa: f64) -> f64 {
    energy(p, kappa_to_g(kappa))
}

/// First integral written in terms of `G`: `H = y²/2 + V(z)`.
pub fn energy(p: PhasePoint, g: f64) -> f64 {
    0.5 * p.y * p.y + potential(p.z, g)
}

/// Energy of the homoclinic level set through the saddle `(κ, 0)`.
pub fn homoclinic_level(kappa: f64) -> f64 {
    kappa * kappa * (1.5 + kappa * (-3.0 + 1.125 * kappa))
}

/// Physical fields at `(x, t)` for a scaled profile `ζ ↦ z(ζ)`.
pub fn physical_wave<F>(z_profile: F, params: &Params, x: f64, t: f64) -> PhysicalWaveSample
where
    F: Fn(f64) -> f64,
{
    let c = params.c;
    let xi = x - c * t;
    let u = c * z_profile(c * xi);
    PhysicalWaveSample { x, t, u, v: c * u - 0.5 * u * u }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn params(c: f64, eps: f64, kappa: f64) -> Params {
        Params::new(c, eps, kappa).unwrap()
    }

    #[test]
    fn g_vanishes_at_equilibria_of_heteroclinic_loop() {
        assert_eq!(kappa_to_g(0.0), 0.0);
        assert_eq!(kappa_to_g(1.0), 0.0);
        assert_eq!(kappa_to_g(2.0), 0.0);
    }

    #[test]
    fn g_matches_factored_form() {
        for k in [-1.3, 0.3, 0.7, 1.7, 2.4] {
            let factored = -1.5 * k * (k - 1.0) * (k - 2.0);
            assert!((kappa_to_g(k) - factored).abs() < 1e-14);
        }
    }

    #[test]
    fn rejects_bad_speed_and_eps() {
        assert!(Params::new(0.0, 0.0, 1.7).is_err());
        assert!(Params::new(-1.0, 0.0, 1.7).is_err());
        assert!(Params::new(1.0, -0.1, 1.7).is_err());
        assert!(Params::from_g(1.0, f64::NAN, 0.0).is_err());
        assert!(Params::new(1.0, 0.0, f64::INFINITY).is_err());
    }

    #[test]
    fn reduced_rhs_examples() {
        for eps in [0.0, 0.01, 0.5] {
            let p = params(1.3, eps, 1.7);
            assert_eq!(reduced_rhs(PhasePoint::new(1.7, 0.0), &p), (0.0, 0.0));
        }
        let p = params(1.0, 0.0, 0.0);
        assert_eq!(reduced_rhs(PhasePoint::new(0.0, 0.0), &p), (0.0, 0.0));
        let (dz, dy) = reduced_rhs(PhasePoint::new(1.0, 1.0), &p);
        assert_eq!(dz, 1.0);
        assert!(dy.abs() < 1e-15);
    }

    #[test]
    fn slow_rhs_refuses_singular_limit() {
        let p = params(1.0, 0.0, 1.7);
        assert_eq!(slow_rhs(SlowPoint::default(), &p), Err(Error::SingularLimit));
    }

    #[test]
    fn slow_rhs_examples() {
        let k = 1.7;
        let p = params(1.0, 0.01, k);
        let on = SlowPoint::new(k, 0.0, critical_manifold_w(k, p.g()));
        assert_eq!(slow_rhs(on, &p).unwrap().2, 0.0);

        let p = params(0.8, 0.05, 0.3);
        let (_, _, dw) = slow_rhs(SlowPoint::new(0.0, 0.0, p.g()), &p).unwrap();
        assert_eq!(dw, 0.0);

        let p = Params::from_g(1.0, 0.01, 0.0).unwrap();
        let (_, _, dw) = slow_rhs(SlowPoint::new(1.0, 0.0, 0.0), &p).unwrap();
        assert!(dw.abs() < 1e-12);
    }

    #[test]
    fn fast_rhs_examples() {
        let p = params(1.0, 0.0, 1.7);
        let (a, b, _) = fast_rhs(SlowPoint::new(0.4, -2.0, 3.0), &p);
        assert_eq!((a, b), (0.0, 0.0));
        let z = 0.9;
        let on = SlowPoint::new(z, 0.7, critical_manifold_w(z, p.g()));
        assert_eq!(fast_rhs(on, &p), (0.0, 0.0, 0.0));

        let p = Params::from_g(1.0, 1.0, 0.0).unwrap();
        let (a, b, c) = fast_rhs(SlowPoint::new(1.0, 1.0, 1.0), &p);
        assert_eq!((a, b), (1.0, 1.0));
        assert!(c.abs() < 1e-15);
    }

    #[test]
    fn critical_manifold_examples() {
        assert_eq!(critical_manifold_w(0.0, 0.0), 0.0);
        assert_eq!(critical_manifold_w(2.0, 0.0), 0.0);
        for k in [0.1, 0.3, 1.6, 1.9] {
            assert_eq!(critical_manifold_w(k, kappa_to_g(k)), 0.0);
        }
    }

    #[test]
    fn slow_manifold_examples() {
        let p = Params::from_g(1.0, 0.01, 0.0).unwrap();
        let w = slow_manifold_w(PhasePoint::new(1.0, 1.0), &p);
        assert!((w - (-0.005)).abs() < 1e-15);

        let p = params(1.4, 0.03, 1.7);
        for z in [-0.5, 0.5, 1.5] {
            assert_eq!(slow_manifold_w(PhasePoint::new(z, 0.0), &p), critical_manifold_w(z, p.g()));
        }
    }

    #[test]
    fn layer_eigenvalue_examples() {
        assert_eq!(layer_eigenvalues(1.0), [0.0, 0.0, 1.0]);
        assert_eq!(layer_eigenvalues(2.0), [0.0, 0.0, 0.5]);
        let cs = 15f64.sqrt() / 3.0;
        assert!((layer_eigenvalues(cs)[2] - 3.0 / 15f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn first_integral_examples() {
        assert_eq!(first_integral(PhasePoint::new(0.0, 0.0), 1.3), 0.0);
        assert_eq!(first_integral(PhasePoint::new(2.0, 0.0), 0.0), 0.0);
        for k in [0.3, 1.0, 1.7] {
            let at_saddle = first_integral(PhasePoint::new(k, 0.0), k);
            let expected = 9.0 / 8.0 * k.powi(4) - 3.0 * k.powi(3) + 1.5 * k * k;
            assert!((at_saddle - expected).abs() < 1e-14);
        }
    }

    #[test]
    fn homoclinic_level_examples() {
        assert_eq!(homoclinic_level(0.0), 0.0);
        assert!(homoclinic_level(2.0).abs() < 1e-14);
        // 9/8·1.7⁴ - 3·1.7³ + 1.5·1.7²
        assert!((homoclinic_level(1.7) - (-1.007_887_5)).abs() < 1e-12);
    }

    #[test]
    fn physical_wave_examples() {
        let p = params(1.0, 0.0, 1.7);
        let s = physical_wave(|_| 0.0, &p, 0.3, 1.1);
        assert_eq!((s.u, s.v), (0.0, 0.0));
        let k = 1.7;
        let s = physical_wave(|_| k, &p, -2.0, 5.0);
        assert_eq!(s.u, k);
        assert!((s.v - (k - k * k / 2.0)).abs() < 1e-15);
    }

    #[test]
    fn energy_is_conserved_along_unperturbed_field() {
        // dH/dζ = H_z·y + H_y·y' must vanish identically at ε = 0.
        let k = 1.7;
        let p = params(1.2, 0.0, k);
        for &(z, y) in &[(0.3, 0.2), (1.5, -0.4), (-0.7, 1.1)] {
            let h = 1e-6;
            let hz = (first_integral(PhasePoint::new(z + h, y), k)
                - first_integral(PhasePoint::new(z - h, y), k))
                / (2.0 * h);
            let (dz, dy) = reduced_rhs(PhasePoint::new(z, y), &p);
            assert!((hz * dz + y * dy).abs() < 1e-8);
        }
    }

    proptest! {
        #[test]
        fn mirror_conjugacy(z in -1.0f64..3.0, y in -2.0f64..2.0, k in 0.0f64..2.0) {
            let p = params(1.0, 0.0, k);
            let q = params(1.0, 0.0, 2.0 - k);
            let (dz, dy) = reduced_rhs(PhasePoint::new(z, y), &p);
            let (mz, my) = reduced_rhs(PhasePoint::new(2.0 - z, -y), &q);
            prop_assert!((mz - (-dz)).abs() <= 1e-12);
            prop_assert!((my - (-dy)).abs() <= 1e-12);
        }

        #[test]
        fn slow_manifold_reduces_to_critical_at_zero_eps(z in -3.0f64..3.0, y in -3.0f64..3.0, k in 0.0f64..2.0, c in 0.1f64..5.0) {
            let p = params(c, 0.0, k);
            prop_assert_eq!(slow_manifold_w(PhasePoint::new(z, y), &p), critical_manifold_w(z, p.g()));
        }

        #[test]
        fn saddle_persists(k in -1.0f64..3.0, c in 0.1f64..5.0, eps in 0.0f64..0.5) {
            let p = params(c, eps, k);
            prop_assert_eq!(reduced_rhs(PhasePoint::new(k, 0.0), &p), (0.0, 0.0));
        }

        #[test]
        fn g_roots_round_trip(g in -3.0f64..3.0) {
            for r in g_to_kappa_roots(g) {
                prop_assert!((kappa_to_g(r) - g).abs() <= 1e-12 * g.abs().max(1.0));
            }
        }
    }
}
