//! Endpoint analysis: collapse orders, orbifold integers, and the
//! root-prescription formulas.
//!
//! At an endpoint of a positivity interval the metric either blows up
//! (f → ∞ at finite t: incomplete), runs forever (infinite end), or
//! collapses (f → 0). A collapse is round when both scales vanish with
//! |derivative| 1, and a bolt when only the fiber collapses; the collapse
//! order n = |df/dt| must be an integer for an (orbifold-)smooth closure,
//! with n = 1 the smooth case and n ≥ 2 a ℤₙ orbifold point.

use crate::error::{Error, Result};
use crate::families::{positivity_intervals, ModelParams, SEndpoint, SInterval, REGIME_BAND};
use crate::reparam::{t_of_s, ArcLength};

/// Acceptance window around an integer for the collapse order.
pub const ORDER_TOL: f64 = 1e-6;

/// What happens to the metric at one endpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum EndpointKind {
    /// f, h → 0 with |f′| = |h′| = 1: a smooth point (origin of polar
    /// coordinates). The sign convention treats h′ = -1 ends (s → ∞)
    /// as round by orientation symmetry.
    RoundCollapse,
    /// f → 0, h > 0, |f′| = 1: smooth fiber collapse over a 2-sphere.
    BoltCollapse,
    /// f → 0, h > 0, |f′| = n ≥ 2: complete but only orbifold-smooth.
    OrbifoldCollapse,
    /// t diverges approaching the endpoint.
    InfiniteEnd,
    /// f → ∞ at finite t: the metric is incomplete.
    IncompleteBlowup,
    /// f → 0 with non-integer |f′|: a cone angle defect, not smoothable.
    ConicalSingularity,
}

/// Full report for one endpoint of a positivity interval.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct EndpointReport {
    pub s_location: SEndpoint,
    /// Arc length from the interval's t-origin (the left endpoint when its
    /// own arc length is finite, otherwise an interior anchor).
    pub t_value: ArcLength,
    pub kind: EndpointKind,
    /// Integer collapse order when the endpoint is a (round/bolt/orbifold)
    /// collapse.
    pub n: Option<i32>,
    /// Raw |df/dt| at a fiber collapse, integer or not.
    pub collapse_order: Option<f64>,
}

impl EndpointReport {
    /// Whether the metric extends completely through this endpoint.
    pub fn is_complete_end(&self) -> bool {
        matches!(
            self.kind,
            EndpointKind::RoundCollapse
                | EndpointKind::BoltCollapse
                | EndpointKind::OrbifoldCollapse
                | EndpointKind::InfiniteEnd
        )
    }

    /// Whether this endpoint is smooth (no orbifold or cone point).
    pub fn is_smooth_end(&self) -> bool {
        matches!(
            self.kind,
            EndpointKind::RoundCollapse | EndpointKind::BoltCollapse | EndpointKind::InfiniteEnd
        )
    }
}

/// df/dt at a fiber-collapse point z (a root of G(s²) for a = ±1, or of
/// the radicand cubic for a = 0):
///
/// a = ±1: [(24+3C-8aλ)(2z⁶+3az⁴) + 48z² + a(24-3C-8aλ)] / (24z²);
/// a = 0:  φ′(z)/(2z) with φ = (-λ/6)s⁴ + s² + C s⁻².
pub fn df_dt_at_root(a: i8, c: f64, lambda: f64, z: f64) -> Result<f64> {
    if !(z > 0.0) || !z.is_finite() {
        return Err(Error::InvalidRoot { z });
    }
    if a == 0 {
        return Ok(-lambda * z * z / 3.0 + 1.0 - c / z.powi(4));
    }
    let af = f64::from(a);
    let g4 = 24.0 + 3.0 * c - 8.0 * af * lambda;
    let g0 = 24.0 - 3.0 * c - 8.0 * af * lambda;
    let z2 = z * z;
    Ok((g4 * (2.0 * z2.powi(3) + 3.0 * af * z2 * z2) + 48.0 * z2 + af * g0) / (24.0 * z2))
}

/// The (C, lambda) making z a root of G with prescribed collapse order n:
///
/// λ = [(2+n)z⁴ + 4az² + (2-n)] / (2z²), then
/// C = [(24-8aλ)(z⁸+2az⁶+2az²+1) + 48z⁴] / [-3(z⁸+2az⁶-2az²-1)].
///
/// For a = -1 the admissible ranges are z² ≥ 1/3 when n = 1 and z² ≤ 3
/// when n = -1.
pub fn c_lambda_from_root(a: i8, z: f64, n: i32) -> Result<(f64, f64)> {
    if a == 0 {
        return Err(Error::BranchUsage { a });
    }
    if !(z > 0.0) || !z.is_finite() {
        return Err(Error::InvalidRoot { z });
    }
    if (z - 1.0).abs() <= 1e-12 {
        return Err(Error::DegenerateRoot);
    }
    if a == -1 {
        if n == 1 && z * z < 1.0 / 3.0 - 1e-12 {
            return Err(Error::ConstraintViolation(
                "z^2 >= 1/3 is required when n = 1 and a = -1".into(),
            ));
        }
        if n == -1 && z * z > 3.0 + 1e-12 {
            return Err(Error::ConstraintViolation(
                "z^2 <= 3 is required when n = -1 and a = -1".into(),
            ));
        }
    }
    let lambda = lambda_from_root(a, z, n);
    let c = c_from_root_lambda(a, z, lambda)?;
    Ok((c, lambda))
}

/// λ of the prescription formula alone.
pub fn lambda_from_root(a: i8, z: f64, n: i32) -> f64 {
    let af = f64::from(a);
    let nf = f64::from(n);
    let z2 = z * z;
    ((2.0 + nf) * z2 * z2 + 4.0 * af * z2 + (2.0 - nf)) / (2.0 * z2)
}

/// C from a root and an Einstein constant (the G(z²) = 0 condition).
pub(crate) fn c_from_root_lambda(a: i8, z: f64, lambda: f64) -> Result<f64> {
    if (z - 1.0).abs() <= 1e-12 {
        return Err(Error::DegenerateRoot);
    }
    let af = f64::from(a);
    let z2 = z * z;
    let z4 = z2 * z2;
    let z6 = z4 * z2;
    let z8 = z4 * z4;
    let num = (24.0 - 8.0 * af * lambda) * (z8 + 2.0 * af * z6 + 2.0 * af * z2 + 1.0) + 48.0 * z4;
    let den = -3.0 * (z8 + 2.0 * af * z6 - 2.0 * af * z2 - 1.0);
    Ok(num / den)
}

/// The partner root where df/dt = -n for the same λ: z₂ = √((2+n)/(2-n))·z₁.
///
/// With λ prescribed by [`df_dt_at_root`] = n at z₁, the equation
/// "df/dt = -n at z" is quadratic in z²; its positive solutions are 1/z₁
/// (which forces C = 0) and this one. The pairing satisfies
/// λ(z₂, -n) = λ(z₁, n) identically.
pub fn paired_root(z1: f64, n: i32) -> Result<f64> {
    if !(z1 > 0.0) {
        return Err(Error::InvalidRoot { z: z1 });
    }
    if (2 - n) * (2 + n) <= 0 {
        return Err(Error::Usage(format!("paired root needs (2-n)(2+n) > 0, got n = {n}")));
    }
    Ok(((2.0 + f64::from(n)) / (2.0 - f64::from(n))).sqrt() * z1)
}

/// The obstruction C₁ - C₂ to a smooth two-root closure: the C prescribed
/// by the root condition at z₁ (slope n) minus the C the same λ prescribes
/// at the partner root z₂ = √((2+n)/(2-n))·z₁ (slope -n). A smooth two-root
/// metric needs both to hold with one C, so a nonzero value rules it out;
/// the difference vanishes only when n = 0 (a double root). Hence two-root
/// metrics close up smoothly only when z₁ = 1 or C = 0.
pub fn two_root_obstruction(a: i8, z1: f64, n: i32) -> Result<f64> {
    if a == 0 {
        return Err(Error::BranchUsage { a });
    }
    if !(z1 > 0.0) || !z1.is_finite() {
        return Err(Error::InvalidRoot { z: z1 });
    }
    if n == 0 {
        return Ok(0.0);
    }
    let z2 = paired_root(z1, n)?;
    let lambda = lambda_from_root(a, z1, n);
    let c1 = c_from_root_lambda(a, z1, lambda)?;
    let c2 = c_from_root_lambda(a, z2, lambda)?;
    Ok(c1 - c2)
}

fn regime_band(params: &ModelParams) -> f64 {
    REGIME_BAND * (24.0 + 3.0 * params.c.abs() + 8.0 * params.lambda.abs()).max(1.0)
}

fn classify_endpoint(params: &ModelParams, endpoint: &SEndpoint) -> Result<EndpointReport> {
    let band = regime_band(params);
    let (kind, n, order) = match endpoint {
        SEndpoint::PoleOne => (EndpointKind::InfiniteEnd, None, None),
        SEndpoint::Zero => {
            let g0 = if params.a == 0 { 3.0 * params.c } else { params.g0() };
            if g0 > band {
                (EndpointKind::IncompleteBlowup, None, None)
            } else {
                (EndpointKind::RoundCollapse, Some(1), Some(1.0))
            }
        }
        SEndpoint::Infinity => {
            if params.a == 0 {
                (EndpointKind::InfiniteEnd, None, None)
            } else if params.g4() > band {
                (EndpointKind::IncompleteBlowup, None, None)
            } else {
                // 24+3C-8aλ = 0: df/dt and dh/dt tend to -1.
                (EndpointKind::RoundCollapse, Some(1), Some(1.0))
            }
        }
        SEndpoint::Root { s: z, multiplicity } => {
            if *multiplicity >= 2 {
                (EndpointKind::InfiniteEnd, None, None)
            } else {
                let d = df_dt_at_root(params.a, params.c, params.lambda, *z)?;
                let order = d.abs();
                let rounded = order.round();
                if rounded >= 1.0 && (order - rounded).abs() <= ORDER_TOL {
                    let n = rounded as i32;
                    let kind = if n == 1 {
                        EndpointKind::BoltCollapse
                    } else {
                        EndpointKind::OrbifoldCollapse
                    };
                    (kind, Some(n), Some(order))
                } else {
                    (EndpointKind::ConicalSingularity, None, Some(order))
                }
            }
        }
    };
    Ok(EndpointReport { s_location: *endpoint, t_value: ArcLength::Infinite, kind, n, collapse_order: order })
}

/// Classify both endpoints of a maximal positivity interval and attach
/// arc-length coordinates (t = 0 at the left endpoint when finite, else at
/// the interval's interior anchor).
pub fn endpoint_analysis(params: &ModelParams, interval: &SInterval) -> Result<Vec<EndpointReport>> {
    let mut left = classify_endpoint(params, &interval.lo)?;
    let mut right = classify_endpoint(params, &interval.hi)?;

    let anchor = interval.midpoint();
    let left_len = if left.kind == EndpointKind::InfiniteEnd {
        ArcLength::Infinite
    } else {
        t_of_s(params, interval.lo.value(), anchor)?
    };
    left.t_value = match left_len {
        ArcLength::Finite { .. } => ArcLength::Finite { value: 0.0, error: 0.0 },
        ArcLength::Infinite => ArcLength::Infinite,
    };
    right.t_value = if right.kind == EndpointKind::InfiniteEnd {
        ArcLength::Infinite
    } else {
        let start = if left_len.is_finite() { interval.lo.value() } else { anchor };
        let hi = interval.hi.value();
        t_of_s(params, start, if hi.is_finite() { hi } else { f64::INFINITY })?
    };
    Ok(vec![left, right])
}

/// Convenience: endpoint reports for every maximal positivity interval.
pub fn analyze_all_intervals(
    params: &ModelParams,
) -> Result<Vec<(SInterval, Vec<EndpointReport>)>> {
    positivity_intervals(params)?
        .into_iter()
        .map(|iv| endpoint_analysis(params, &iv).map(|r| (iv, r)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{g_poly, named_solution, page_roots, SolutionName};
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    #[test]
    fn page_collapse_orders() {
        let (z1, z2, lambda) = page_roots();
        assert_relative_eq!(df_dt_at_root(1, 0.0, lambda, z1).unwrap(), 1.0, max_relative = 1e-9);
        assert_relative_eq!(df_dt_at_root(1, 0.0, lambda, z2).unwrap(), -1.0, max_relative = 1e-9);
        assert!(matches!(df_dt_at_root(1, 0.0, lambda, -1.0), Err(Error::InvalidRoot { .. })));
    }

    #[test]
    fn root_prescription_reference_point() {
        // a = -1, z² = 1/3, n = 1 gives λ = 0 and C = 10.
        let z = (1.0f64 / 3.0).sqrt();
        let (c, lambda) = c_lambda_from_root(-1, z, 1).unwrap();
        assert_abs_diff_eq!(lambda, 0.0, epsilon = 1e-13);
        assert_relative_eq!(c, 10.0, max_relative = 1e-12);
        // a = -1, z² = 3, n = -1 gives λ = 0.
        let z = 3.0f64.sqrt();
        let (_, lambda) = c_lambda_from_root(-1, z, -1).unwrap();
        assert_abs_diff_eq!(lambda, 0.0, epsilon = 1e-13);
    }

    #[test]
    fn root_prescription_round_trip() {
        for (a, z, n) in [(1i8, 0.6, 1), (1, 0.8, 3), (-1, 0.7, 1), (-1, 0.8, 2), (-1, 1.4, -1)] {
            let (c, lambda) = c_lambda_from_root(a, z, n).unwrap();
            let g = g_poly(&ModelParams::new(a, c, lambda)).unwrap();
            assert_abs_diff_eq!(g.eval(z * z) / g.scale(), 0.0, epsilon = 1e-12);
            assert_relative_eq!(
                df_dt_at_root(a, c, lambda, z).unwrap(),
                f64::from(n),
                max_relative = 1e-10
            );
        }
    }

    #[test]
    fn root_prescription_constraints() {
        assert!(matches!(c_lambda_from_root(-1, 0.5, 1), Err(Error::ConstraintViolation(_))));
        assert!(matches!(c_lambda_from_root(-1, 1.8, -1), Err(Error::ConstraintViolation(_))));
        assert!(matches!(c_lambda_from_root(1, 1.0, 1), Err(Error::DegenerateRoot)));
        assert!(matches!(c_lambda_from_root(0, 0.5, 1), Err(Error::BranchUsage { .. })));
    }

    #[test]
    fn obstruction_matches_direct_difference() {
        assert_abs_diff_eq!(two_root_obstruction(1, 0.37, 0).unwrap(), 0.0, epsilon = 1e-15);
        for (a, z1, n) in [(1i8, 0.5, 1), (1, 0.73, 1), (-1, 0.62, 1), (-1, 0.8, -1)] {
            let lambda = lambda_from_root(a, z1, n);
            let z2 = paired_root(z1, n).unwrap();
            // The pairing preserves λ with the opposite slope prescription.
            assert_relative_eq!(lambda_from_root(a, z2, -n), lambda, max_relative = 1e-12);
            // With C fixed by z₁, the slope at z₁ is n but the partner
            // condition fails by exactly the obstruction.
            let c1 = c_from_root_lambda(a, z1, lambda).unwrap();
            let c2 = c_from_root_lambda(a, z2, lambda).unwrap();
            assert_relative_eq!(
                df_dt_at_root(a, c1, lambda, z1).unwrap(),
                f64::from(n),
                max_relative = 1e-10
            );
            assert_relative_eq!(
                df_dt_at_root(a, c2, lambda, z2).unwrap(),
                -f64::from(n),
                max_relative = 1e-10
            );
            let obs = two_root_obstruction(a, z1, n).unwrap();
            assert_relative_eq!(obs, c1 - c2, max_relative = 1e-12);
            assert!(obs.abs() > 1e-6, "obstruction must not vanish for n != 0");
        }
    }

    #[test]
    fn sphere_endpoints_round_with_length_pi() {
        let fam = named_solution(SolutionName::Sphere4).unwrap();
        let reports = endpoint_analysis(&fam.params, &fam.s_interval).unwrap();
        assert_eq!(reports[0].kind, EndpointKind::RoundCollapse);
        assert_eq!(reports[1].kind, EndpointKind::RoundCollapse);
        match reports[1].t_value {
            ArcLength::Finite { value, .. } => {
                assert_relative_eq!(value, std::f64::consts::PI, max_relative = 1e-8)
            }
            ArcLength::Infinite => panic!("expected finite interval"),
        }
    }

    #[test]
    fn blowup_and_infinite_ends() {
        // a = 0, λ = 0, C > 0: f → ∞ as s → 0, incomplete.
        let p = ModelParams::new(0, 1.0, 0.0);
        let ivs = positivity_intervals(&p).unwrap();
        let reports = endpoint_analysis(&p, &ivs[0]).unwrap();
        assert_eq!(reports[0].kind, EndpointKind::IncompleteBlowup);
        assert_eq!(reports[1].kind, EndpointKind::InfiniteEnd);
        // a = -1, C = 0, λ = -3 on (0, 1): round collapse then infinite end.
        let p = ModelParams::new(-1, 0.0, -3.0);
        let ivs = positivity_intervals(&p).unwrap();
        let reports = endpoint_analysis(&p, &ivs[0]).unwrap();
        assert_eq!(reports[0].kind, EndpointKind::RoundCollapse);
        assert_eq!(reports[1].kind, EndpointKind::InfiniteEnd);
        assert_eq!(reports[1].t_value, ArcLength::Infinite);
    }

    #[test]
    fn eguchi_hanson_is_an_orbifold_bolt() {
        let fam = named_solution(SolutionName::EguchiHanson(1.0)).unwrap();
        let reports = endpoint_analysis(&fam.params, &fam.s_interval).unwrap();
        assert_eq!(reports[0].kind, EndpointKind::OrbifoldCollapse);
        assert_eq!(reports[0].n, Some(2));
        assert_eq!(reports[1].kind, EndpointKind::InfiniteEnd);
    }

    #[test]
    fn orbifold_family_orders() {
        for n in 3..=6 {
            let fam = named_solution(SolutionName::OrbifoldA0(n)).unwrap();
            let reports = endpoint_analysis(&fam.params, &fam.s_interval).unwrap();
            assert_eq!(reports[0].kind, EndpointKind::OrbifoldCollapse);
            assert_eq!(reports[0].n, Some(n as i32));
        }
    }
}
