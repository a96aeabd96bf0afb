//! Closed-form response of the passive plant to a sinusoidal road, used as an
//! independent reference for the integrator. Shares no code with the crate's
//! right-hand side: the state matrices are assembled here from the equations
//! of motion directly.

#![allow(dead_code)]

use nalgebra::{Matrix4, Vector2, Vector4};
use num_complex::Complex64;

pub struct PassiveSineOracle {
    a: Matrix4<f64>,
    /// Complex amplitude of the forced response, `x_p(t) = Re(X e^{iωt})`.
    forced: Vector4<Complex64>,
    omega: f64,
    /// `x0 − x_p(0)`.
    transient0: Vector4<f64>,
}

impl PassiveSineOracle {
    /// Passive plant with masses/stiffnesses/dampings, zero initial state,
    /// road `r = amp·sin(2πf t)`.
    #[allow(clippy::too_many_arguments)]
    pub fn new(m_s: f64, m_u: f64, k_s: f64, k_u: f64, c_s: f64, c_u: f64, amp: f64, freq: f64) -> Self {
        #[rustfmt::skip]
        let a = Matrix4::new(
            0.0,          1.0,          0.0,                  0.0,
            -k_s / m_s,   -c_s / m_s,   k_s / m_s,            c_s / m_s,
            0.0,          0.0,          0.0,                  1.0,
            k_s / m_u,    c_s / m_u,    -(k_s + k_u) / m_u,   -(c_s + c_u) / m_u,
        );
        let omega = 2.0 * std::f64::consts::PI * freq;
        // u = [r, ṙ] = Re(û e^{iωt}), û = [−i·amp, amp·ω]
        let u_hat = Vector2::new(Complex64::new(0.0, -amp), Complex64::new(amp * omega, 0.0));
        let b_u = Vector4::new(
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            (u_hat[0] * k_u + u_hat[1] * c_u) / m_u,
        );
        let ac: Matrix4<Complex64> = a.map(|v| Complex64::new(v, 0.0));
        let lhs = Matrix4::<Complex64>::identity() * Complex64::new(0.0, omega) - ac;
        let forced = lhs.lu().solve(&b_u).expect("iωI − A is regular for a damped plant");
        let xp0 = forced.map(|c| c.re);
        Self {
            a,
            forced,
            omega,
            transient0: -xp0,
        }
    }

    pub fn reference_vehicle(amp: f64, freq: f64) -> Self {
        Self::new(2500.0, 320.0, 80000.0, 500000.0, 320.0, 15020.0, amp, freq)
    }

    /// Full state `[z_s, ż_s, z_u, ż_u]` at time `t`.
    pub fn state(&self, t: f64) -> Vector4<f64> {
        let phase = Complex64::new(0.0, self.omega * t).exp();
        let xp = self.forced.map(|c| (c * phase).re);
        (self.a * t).exp() * self.transient0 + xp
    }
}
