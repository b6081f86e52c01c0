//! Coordinate changes and arc-length quadrature.
//!
//! The metric is most naturally written in s = e^r, but geometry happens in
//! the arc-length coordinate t with dt/ds = 1/(ds/dt). This module computes
//! t(s) by adaptive Gauss–Kronrod quadrature, removing the integrable
//! (s - z)^{-1/2} singularity at simple roots of G by the substitution
//! u² = s - z, and detects non-integrable endpoints (double roots, the
//! s = 1 pole at a = -1, the a = 0 infinite end) analytically rather than
//! by numeric overflow. It also produces the sampled profiles consumed by
//! the curvature module.

use crate::curvature::ProfileSample;
use crate::error::{Error, Result};
use crate::families::{profile_jets, ModelParams, SEndpoint, SInterval};
use crate::smoothness::{endpoint_analysis, EndpointReport};

/// Default absolute quadrature tolerance.
pub const DEFAULT_QUAD_TOL: f64 = 1e-10;

/// An arc length that may be analytically infinite.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub enum ArcLength {
    /// Finite value with the quadrature error estimate.
    Finite { value: f64, error: f64 },
    /// The endpoint pole is non-integrable.
    Infinite,
}

impl ArcLength {
    pub fn is_finite(&self) -> bool {
        matches!(self, ArcLength::Finite { .. })
    }

    /// The finite value, or f64::INFINITY.
    pub fn value(&self) -> f64 {
        match self {
            ArcLength::Finite { value, .. } => *value,
            ArcLength::Infinite => f64::INFINITY,
        }
    }
}

// 15-point Kronrod nodes (positive half) and weights, with the embedded
// 7-point Gauss weights.
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// One Gauss–Kronrod 15/7 panel: (kronrod, |kronrod - gauss|).
fn gk15_panel(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let hw = 0.5 * (b - a);
    let mut kron = WGK[7] * f(c);
    let mut gauss = WG[3] * f(c);
    for i in 0..7 {
        let dx = hw * XGK[i];
        let pair = f(c - dx) + f(c + dx);
        kron += WGK[i] * pair;
        if i % 2 == 1 {
            gauss += WG[i / 2] * pair;
        }
    }
    (kron * hw, (kron - gauss).abs() * hw)
}

/// Adaptive bisection around the GK15 panel until the error estimate meets
/// the absolute tolerance. Returns (value, error estimate).
fn adaptive_gk(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64, depth: u32) -> (f64, f64) {
    let (v, e) = gk15_panel(f, a, b);
    if e <= tol || depth >= 48 || (b - a).abs() <= f64::EPSILON * (a.abs() + b.abs()) {
        return (v, e);
    }
    let c = 0.5 * (a + b);
    let (v1, e1) = adaptive_gk(f, a, c, 0.5 * tol, depth + 1);
    let (v2, e2) = adaptive_gk(f, c, b, 0.5 * tol, depth + 1);
    (v1 + v2, e1 + e2)
}

/// dt/ds at an interior point, or None just outside the domain (roundoff
/// next to a root).
fn dt_ds(params: &ModelParams, s: f64) -> Option<f64> {
    match profile_jets(params, s) {
        Ok(p) if p.v.v > 0.0 && p.v.v.is_finite() => Some(1.0 / p.v.v),
        _ => None,
    }
}

/// Slope K of ds/dt ≈ K·u near a simple root z of f², with u = √|s - z|.
///
/// For a = ±1, √G ≈ √(|G′(z²)|·2z)·u near the root; for a = 0 the same
/// expansion applies to the radicand cubic.
fn root_slope(params: &ModelParams, z: f64) -> f64 {
    if params.a == 0 {
        // v = f/s with f ≈ √(|φ′(z)|)·u.
        let phi_p = (-2.0 * params.lambda / 3.0) * z.powi(3) + 2.0 * z
            - 2.0 * params.c / z.powi(3);
        phi_p.abs().sqrt() / z
    } else {
        let g = crate::families::g_poly(params).expect("a = ±1");
        let gp = g.deriv_eval(z * z).abs();
        let xa = (z * z + f64::from(params.a)).abs();
        xa * (gp * 2.0 * z).sqrt() / (8.0 * 3.0f64.sqrt() * z * z)
    }
}

/// Integrand after the u² = |s - z| substitution at a simple root:
/// 2u·dt/ds(z ± u²), with the analytic limit 2/K at u → 0.
fn root_integrand(params: ModelParams, z: f64, sign: f64) -> impl Fn(f64) -> f64 {
    let k = root_slope(&params, z);
    move |u: f64| match dt_ds(&params, z + sign * u * u) {
        Some(i) => 2.0 * u * i,
        None => 2.0 / k,
    }
}

/// Arc length between s0 and s1 with the default tolerance. `s0 = 0` and
/// `s1 = ∞` address the endpoint limits of the containing interval.
pub fn t_of_s(params: &ModelParams, s0: f64, s1: f64) -> Result<ArcLength> {
    t_of_s_with_tol(params, s0, s1, DEFAULT_QUAD_TOL)
}

/// Arc length between s0 and s1 with a caller-chosen absolute tolerance.
pub fn t_of_s_with_tol(params: &ModelParams, s0: f64, s1: f64, tol: f64) -> Result<ArcLength> {
    if !(tol > 0.0) {
        return Err(Error::Usage(format!("tol = {tol} must be positive")));
    }
    if !(s0 >= 0.0) || !(s1 > s0) {
        return Err(Error::Usage(format!("need 0 <= s0 < s1, got ({s0}, {s1})")));
    }
    let interval = containing_interval(params, s0, s1)?;
    let lo_v = interval.lo.value();
    let hi_v = interval.hi.value();
    let eps = |x: f64| 1e-9 * x.abs().max(1.0);

    let lo_touch = s0 <= lo_v + eps(lo_v);
    let hi_touch = if s1.is_infinite() { hi_v.is_infinite() } else { s1 >= hi_v - eps(hi_v) };

    // Analytic divergence at a touched endpoint.
    if lo_touch {
        match interval.lo {
            SEndpoint::PoleOne => return Ok(ArcLength::Infinite),
            SEndpoint::Root { multiplicity, .. } if multiplicity >= 2 => {
                return Ok(ArcLength::Infinite)
            }
            _ => {}
        }
    }
    if hi_touch {
        match interval.hi {
            SEndpoint::PoleOne => return Ok(ArcLength::Infinite),
            SEndpoint::Root { multiplicity, .. } if multiplicity >= 2 => {
                return Ok(ArcLength::Infinite)
            }
            SEndpoint::Infinity if params.a == 0 => return Ok(ArcLength::Infinite),
            _ => {}
        }
    }

    // Interior split point between the two (possibly singular) halves.
    let left_edge = s0.max(lo_v);
    let anchor = if s1.is_finite() {
        0.5 * (left_edge + s1)
    } else {
        2.0 * left_edge.max(0.5) + 1.0
    };

    let f_direct = {
        let p = *params;
        move |s: f64| dt_ds(&p, s).unwrap_or(0.0)
    };

    let mut total = 0.0;
    let mut err = 0.0;

    // Left half: [s0, anchor].
    if lo_touch {
        match interval.lo {
            SEndpoint::Root { s: z, .. } => {
                let g = root_integrand(*params, z, 1.0);
                let (v, e) = adaptive_gk(&g, 0.0, (anchor - z).sqrt(), 0.5 * tol, 0);
                total += v;
                err += e;
            }
            // s -> 0 end: integrand is bounded; integrate directly from 0
            // (Gauss–Kronrod nodes are interior).
            _ => {
                let (v, e) = adaptive_gk(&f_direct, lo_v.max(0.0), anchor, 0.5 * tol, 0);
                total += v;
                err += e;
            }
        }
    } else {
        let (v, e) = adaptive_gk(&f_direct, s0, anchor, 0.5 * tol, 0);
        total += v;
        err += e;
    }

    // Right half: [anchor, s1].
    if hi_touch {
        match interval.hi {
            SEndpoint::Root { s: z, .. } => {
                let g = root_integrand(*params, z, -1.0);
                let (v, e) = adaptive_gk(&g, 0.0, (z - anchor).sqrt(), 0.5 * tol, 0);
                total += v;
                err += e;
            }
            SEndpoint::Infinity => {
                // v = 1/s substitution: ∫ I(s) ds = ∫ I(1/v)/v² dv; the
                // transformed integrand is bounded at v -> 0 for a = ±1.
                let p = *params;
                let g = move |v: f64| dt_ds(&p, 1.0 / v).map_or(0.0, |i| i / (v * v));
                let (v, e) = adaptive_gk(&g, 0.0, 1.0 / anchor, 0.5 * tol, 0);
                total += v;
                err += e;
            }
            _ => unreachable!("divergent endpoints handled above"),
        }
    } else {
        let (v, e) = adaptive_gk(&f_direct, anchor, s1, 0.5 * tol, 0);
        total += v;
        err += e;
    }

    Ok(ArcLength::Finite { value: total, error: err })
}

/// The maximal positivity interval containing (s0, s1), or an
/// invalid-interval error if the range straddles a root or the pole.
fn containing_interval(params: &ModelParams, s0: f64, s1: f64) -> Result<SInterval> {
    let intervals = crate::families::positivity_intervals(params)?;
    let eps = |x: f64| 1e-9 * x.abs().max(1.0);
    for iv in &intervals {
        let lo_v = iv.lo.value();
        let hi_v = iv.hi.value();
        let lo_ok = s0 >= lo_v - eps(lo_v);
        let hi_ok = if s1.is_infinite() { hi_v.is_infinite() } else { s1 <= hi_v + eps(hi_v) };
        if lo_ok && hi_ok && s0 < hi_v && (s1 > lo_v) {
            return Ok(*iv);
        }
    }
    Err(Error::InvalidInterval {
        lo: s0,
        hi: s1,
        reason: "range is not contained in a single positivity interval of f".into(),
    })
}

/// A sampled profile over one positivity interval, ready for curvature
/// evaluation.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct ProfileGrid {
    pub samples: Vec<ProfileSample>,
    pub params: ModelParams,
    pub endpoint_reports: [EndpointReport; 2],
}

/// Conditioning cap on f/h² at an open-end node. The f²/h⁴ curvature terms
/// carry an absolute roundoff floor of ~ε·2·(f/h²)², so capping f/h² at
/// 1e3 keeps that floor near 1e-9 in the Einstein residual. Only the
/// f-blowup ends (C ≠ 0 as s → 0, or g₄ > 0 as s → ∞) ever exceed it.
const ZERO_END_COND_CAP: f64 = 1e3;

/// Smallest probe s ≥ `start` (doubling, up to `max`) where the f/h²
/// conditioning stays below the cap.
fn zero_end_floor(params: &ModelParams, start: f64, max: f64) -> f64 {
    let mut s = start;
    while s < max {
        if let Ok(j) = profile_jets(params, s) {
            if j.f.v / (j.h.v * j.h.v) <= ZERO_END_COND_CAP {
                return s;
            }
        }
        s *= 2.0;
    }
    s.min(max)
}

/// Largest probe s ≤ `start` (halving, down to `min`) where the f/h²
/// conditioning stays below the cap; guards the a = ±1 blowup ends where
/// h ~ 1/s while f grows.
fn infinity_end_cap(params: &ModelParams, start: f64, min: f64) -> f64 {
    let mut s = start;
    while s > min {
        if let Ok(j) = profile_jets(params, s) {
            if j.f.v / (j.h.v * j.h.v) <= ZERO_END_COND_CAP {
                return s;
            }
        }
        s *= 0.5;
    }
    s.max(min)
}

/// Interior s-nodes clustered toward the interval's endpoints:
/// square-root spacing at collapse points, geometric spacing toward 0/∞.
fn s_nodes(params: &ModelParams, interval: &SInterval, count: usize) -> Vec<f64> {
    let lo = interval.lo.value();
    let hi = interval.hi.value();
    let us = (0..count).map(|i| (i as f64 + 0.5) / count as f64);
    match (lo == 0.0, hi.is_infinite()) {
        (true, true) => {
            let s_lo = zero_end_floor(params, 1e-3, 10.0);
            let e0 = s_lo.log10();
            let e1 = infinity_end_cap(params, 1e3, 4.0 * s_lo).log10();
            us.map(|u| 10f64.powf(e0 + (e1 - e0) * u)).collect()
        }
        (_, false) => {
            // Quadratic (√-uniform) clustering at root/pole ends, where t
            // has a square-root profile; only linear clustering at a s → 0
            // end, where t is regular and extreme proximity just loses
            // precision in the 4/h² curvature terms.
            let zero_lo = matches!(interval.lo, SEndpoint::Zero);
            let lo = if zero_lo {
                zero_end_floor(params, 1e-3 * hi, 0.25 * hi) - 1e-3 * hi
            } else {
                lo
            };
            us.map(|u| {
                let w = (std::f64::consts::FRAC_PI_2 * u).sin();
                let m = if zero_lo { w } else { w * w };
                lo + (hi - lo) * m
            })
            .collect()
        }
        (false, true) => {
            // Quadratic clustering at the finite end; harmonic growth to
            // infinity, which keeps the h ~ 1/s collapse at a round s → ∞
            // end representable without catastrophic cancellation.
            let scale = lo.max(1.0);
            us.map(|u| {
                let x = std::f64::consts::FRAC_PI_2 * u;
                lo + scale * x.tan() * x.sin()
            })
            .collect()
        }
    }
}

/// Sample a profile on `count` interior nodes of one positivity interval.
///
/// Derivatives are exact: jets in s are converted through the chain rule
/// with v = ds/dt (df/dt = f_s·v, d²f/dt² = (f_ss·v + f_s·v_s)·v). The t
/// column accumulates panel-by-panel quadrature, anchored at t = 0 on the
/// left endpoint when its arc length is finite, else at the first node.
pub fn sample_profile(
    params: &ModelParams,
    interval: &SInterval,
    count: usize,
) -> Result<ProfileGrid> {
    if count < 3 {
        return Err(Error::Usage(format!("count = {count} must be at least 3")));
    }
    let reports = endpoint_analysis(params, interval)?;
    let nodes = s_nodes(params, interval, count);

    let f_direct = {
        let p = *params;
        move |s: f64| dt_ds(&p, s).unwrap_or(0.0)
    };

    // t-offset of the first node.
    let mut t = match t_of_s_with_tol(params, interval.lo.value(), nodes[0], DEFAULT_QUAD_TOL) {
        Ok(ArcLength::Finite { value, .. }) => value,
        _ => 0.0,
    };

    let mut samples = Vec::with_capacity(count);
    let mut prev_s: Option<f64> = None;
    for &s in &nodes {
        if let Some(ps) = prev_s {
            let (dt, _) = adaptive_gk(&f_direct, ps, s, DEFAULT_QUAD_TOL, 0);
            t += dt;
        }
        let jets = profile_jets(params, s)?;
        let v = jets.v;
        samples.push(ProfileSample {
            t,
            s,
            f: jets.f.v,
            h: jets.h.v,
            df_dt: jets.f.d1 * v.v,
            dh_dt: jets.h.d1 * v.v,
            d2f_dt2: (jets.f.d2 * v.v + jets.f.d1 * v.d1) * v.v,
            d2h_dt2: (jets.h.d2 * v.v + jets.h.d1 * v.d1) * v.v,
        });
        prev_s = Some(s);
    }

    Ok(ProfileGrid {
        samples,
        params: *params,
        endpoint_reports: [reports[0].clone(), reports[1].clone()],
    })
}
