//! Diagonal Ricci curvature of the ansatz metric.
//!
//! The metric g = dt² + f²(t)(ω¹)² + h²(t)((ω²)² + (ω³)²) has diagonal
//! Ricci tensor in the orthonormal frame {e₀ = ∂t, e₁ = X₁/f,
//! e₂ = X₂/h, e₃ = X₃/h}. Two independent evaluations are provided: the
//! closed formulas
//!
//! ```text
//! Ric₀₀ = -f″/f - 2h″/h
//! Ric₁₁ = -f″/f - 2f′h′/(fh) + 2f²/h⁴
//! Ric₂₂ = -h″/h - f′h′/(fh) - (h′/h)² + 4/h² - 2f²/h⁴   (= Ric₃₃)
//! ```
//!
//! and a frame/Koszul oracle that rebuilds the same quantities from the
//! bracket structure constants alone, with t-derivatives of connection
//! coefficients taken by finite differences. Agreement of the two is the
//! main internal consistency check of the library.

use crate::error::{Error, Result};
use crate::families::ModelParams;

/// One point of a profile: scales, their t-derivatives, and coordinates.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct ProfileSample {
    /// Arc length along the t-lines.
    pub t: f64,
    /// Substituted coordinate s = e^r (positive where populated).
    pub s: f64,
    pub f: f64,
    pub h: f64,
    pub df_dt: f64,
    pub dh_dt: f64,
    pub d2f_dt2: f64,
    pub d2h_dt2: f64,
}

impl ProfileSample {
    fn validate(&self) -> Result<()> {
        let fields: [(&'static str, f64); 8] = [
            ("t", self.t),
            ("s", self.s),
            ("f", self.f),
            ("h", self.h),
            ("df_dt", self.df_dt),
            ("dh_dt", self.dh_dt),
            ("d2f_dt2", self.d2f_dt2),
            ("d2h_dt2", self.d2h_dt2),
        ];
        for (name, v) in fields {
            if !v.is_finite() {
                return Err(Error::InvalidSample(name));
            }
        }
        if self.f <= 0.0 || self.h <= 0.0 {
            return Err(Error::InvalidSample("f, h must be positive"));
        }
        Ok(())
    }
}

/// The three distinct diagonal Ricci components; `ric22` stands for both
/// Ric₂₂ and Ric₃₃, equal because the ansatz treats X₂ and X₃ identically.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct RicciDiag {
    pub ric00: f64,
    pub ric11: f64,
    pub ric22: f64,
}

impl RicciDiag {
    pub fn max_abs_residual(&self, lambda: f64) -> f64 {
        (self.ric00 - lambda)
            .abs()
            .max((self.ric11 - lambda).abs())
            .max((self.ric22 - lambda).abs())
    }
}

/// Closed-form diagonal Ricci tensor from a profile sample.
pub fn ricci_diag(sample: &ProfileSample) -> Result<RicciDiag> {
    sample.validate()?;
    let ProfileSample { f, h, df_dt: fp, dh_dt: hp, d2f_dt2: fpp, d2h_dt2: hpp, .. } = *sample;
    let ric00 = -fpp / f - 2.0 * hpp / h;
    let ric11 = -fpp / f - 2.0 * fp * hp / (f * h) + 2.0 * f * f / h.powi(4);
    let ric22 = -hpp / h - fp * hp / (f * h) - (hp / h).powi(2) + 4.0 / (h * h)
        - 2.0 * f * f / h.powi(4);
    Ok(RicciDiag { ric00, ric11, ric22 })
}

/// State on which the frame structure constants depend.
#[derive(Debug, Clone, Copy)]
struct FrameState {
    f: f64,
    h: f64,
    fp: f64,
    hp: f64,
}

/// Bracket structure constants of the orthonormal frame, as a table
/// c[i][j][k] with [e_i, e_j] = Σ_k c[i][j][k] e_k.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FrameAlgebra;

impl FrameAlgebra {
    /// The standard frame of the Hopf-split ansatz.
    pub fn standard() -> Self {
        FrameAlgebra
    }

    /// Full antisymmetric table at given scales and first derivatives.
    pub fn structure_constants(&self, f: f64, h: f64, fp: f64, hp: f64) -> [[[f64; 4]; 4]; 4] {
        self.table(FrameState { f, h, fp, hp })
    }

    fn table(&self, st: FrameState) -> [[[f64; 4]; 4]; 4] {
        let FrameState { f, h, fp, hp } = st;
        let mut c = [[[0.0f64; 4]; 4]; 4];
        // [e0, e1] = -(f'/f) e1; [e0, e2] = -(h'/h) e2; likewise e3.
        c[0][1][1] = -fp / f;
        c[0][2][2] = -hp / h;
        c[0][3][3] = -hp / h;
        // Rescaled Berger brackets.
        c[1][2][3] = -2.0 / f;
        c[1][3][2] = 2.0 / f;
        c[2][3][1] = -2.0 * f / (h * h);
        for i in 0..4 {
            for j in 0..i {
                for k in 0..4 {
                    c[i][j][k] = -c[j][i][k];
                }
            }
        }
        c
    }
}

/// Connection coefficients Γ_{ijk} = ⟨∇_{e_i} e_j, e_k⟩ from the Koszul
/// formula specialized to an orthonormal frame.
fn gamma_table(alg: &FrameAlgebra, st: FrameState) -> [[[f64; 4]; 4]; 4] {
    let c = alg.table(st);
    let mut g = [[[0.0f64; 4]; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                g[i][j][k] = 0.5 * (c[i][j][k] - c[i][k][j] - c[j][k][i]);
            }
        }
    }
    g
}

/// Independent Ricci evaluation from the frame algebra alone.
///
/// Connection coefficients come from the Koszul formula; their t-derivatives
/// are assembled by the chain rule through (f, h, f′, h′) with 5-point
/// central finite-difference partials of step `fd_step`.
pub fn koszul_ricci_oracle(
    alg: &FrameAlgebra,
    sample: &ProfileSample,
    fd_step: f64,
) -> Result<RicciDiag> {
    sample.validate()?;
    if !(fd_step > 0.0) {
        return Err(Error::Usage(format!("fd_step = {fd_step} must be positive")));
    }
    let st = FrameState { f: sample.f, h: sample.h, fp: sample.df_dt, hp: sample.dh_dt };
    if st.f - 2.0 * fd_step <= 0.0 || st.h - 2.0 * fd_step <= 0.0 {
        return Err(Error::StencilOutOfDomain { f: st.f, h: st.h, step: fd_step });
    }

    let c = alg.table(st);
    let gamma = gamma_table(alg, st);

    // dΓ/dt = Γ_f f' + Γ_h h' + Γ_{f'} f'' + Γ_{h'} h''.
    let partial = |bump: &dyn Fn(FrameState, f64) -> FrameState| {
        let eval = |k: f64| gamma_table(alg, bump(st, k * fd_step));
        let (p2, p1, m1, m2) = (eval(2.0), eval(1.0), eval(-1.0), eval(-2.0));
        let mut out = [[[0.0f64; 4]; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    out[i][j][k] = (-p2[i][j][k] + 8.0 * p1[i][j][k] - 8.0 * m1[i][j][k]
                        + m2[i][j][k])
                        / (12.0 * fd_step);
                }
            }
        }
        out
    };
    let d_f = partial(&|s, d| FrameState { f: s.f + d, ..s });
    let d_h = partial(&|s, d| FrameState { h: s.h + d, ..s });
    let d_fp = partial(&|s, d| FrameState { fp: s.fp + d, ..s });
    let d_hp = partial(&|s, d| FrameState { hp: s.hp + d, ..s });

    let mut dgamma = [[[0.0f64; 4]; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                dgamma[i][j][k] = d_f[i][j][k] * sample.df_dt
                    + d_h[i][j][k] * sample.dh_dt
                    + d_fp[i][j][k] * sample.d2f_dt2
                    + d_hp[i][j][k] * sample.d2h_dt2;
            }
        }
    }

    // ⟨R(e_i,e_j)e_k, e_l⟩ with frame functions constant along e_1..e_3.
    let riemann = |i: usize, j: usize, k: usize, l: usize| {
        let de_i = if i == 0 { dgamma[j][k][l] } else { 0.0 };
        let de_j = if j == 0 { dgamma[i][k][l] } else { 0.0 };
        let mut quad = 0.0;
        for m in 0..4 {
            quad += gamma[j][k][m] * gamma[i][m][l] - gamma[i][k][m] * gamma[j][m][l];
            quad -= c[i][j][m] * gamma[m][k][l];
        }
        de_i - de_j + quad
    };

    let ric = |j: usize| (0..4).map(|i| riemann(i, j, j, i)).sum::<f64>();
    Ok(RicciDiag { ric00: ric(0), ric11: ric(1), ric22: ric(2) })
}

/// Max over samples of the worst diagonal deviation |Ric_ii - lambda|.
pub fn einstein_residual(params: &ModelParams, samples: &[ProfileSample]) -> Result<f64> {
    if samples.is_empty() {
        return Err(Error::EmptySamples);
    }
    let mut worst = 0.0f64;
    for s in samples {
        worst = worst.max(ricci_diag(s)?.max_abs_residual(params.lambda));
    }
    Ok(worst)
}

/// The two derived scalars of the reduction:
/// B4 = h″/h − f′h′/(fh) + f²/h⁴ and
/// B5 = −2f′h′/(fh) − (h′/h)² − f²/h⁴ + 4/h² − λ.
///
/// Both are linear combinations of the diagonal Einstein residuals
/// B_i = Ric_ii − λ: B4 = (B2 − B1)/2 and B5 = (B2 − B1 + 2·B3)/2,
/// identically in the profile.
pub fn b4_b5_residuals(sample: &ProfileSample, params: &ModelParams) -> Result<(f64, f64)> {
    sample.validate()?;
    let ProfileSample { f, h, df_dt: fp, dh_dt: hp, d2h_dt2: hpp, .. } = *sample;
    let b4 = hpp / h - fp * hp / (f * h) + f * f / h.powi(4);
    let b5 = -2.0 * fp * hp / (f * h) - (hp / h).powi(2) - f * f / h.powi(4) + 4.0 / (h * h)
        - params.lambda;
    Ok((b4, b5))
}
