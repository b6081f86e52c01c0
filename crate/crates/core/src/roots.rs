//! Positive-root analysis of the endpoint polynomial G.
//!
//! Roots of G(x), x = s², are the candidate endpoints of the metric's
//! positivity interval, and their multiplicities decide whether the
//! corresponding t-value is finite. Isolation works by recursive
//! subdivision at critical points (roots of the derivative), which is
//! robust near double roots where Newton alone stalls.

use serde::Serialize;

use crate::error::{Error, Result};

/// Default relative tolerance for root refinement.
pub const TOL_ROOT: f64 = 1e-12;
/// Relative scale below which the derivative is considered to vanish at a
/// root, signalling multiplicity >= 2. Double precision limits accuracy
/// near double roots to about sqrt(machine epsilon).
pub const TOL_MULT: f64 = 1e-6;

/// The quartic G(x) = g4 x^4 + g3 x^3 + 48 x^2 + g1 x + g0 controlling the
/// a = ±1 metric, stored low-degree first.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GPoly {
    pub coeffs: [f64; 5],
}

impl GPoly {
    pub fn new(coeffs: [f64; 5]) -> Self {
        GPoly { coeffs }
    }

    pub fn eval(&self, x: f64) -> f64 {
        poly_eval(&self.coeffs, x)
    }

    pub fn deriv_eval(&self, x: f64) -> f64 {
        poly_eval(&deriv(&self.coeffs), x)
    }

    /// Magnitude scale used for relative tolerances: max |g_i|.
    pub fn scale(&self) -> f64 {
        self.coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()))
    }

    /// G(0) = g0; a zero here flags the s -> 0 collapse regime.
    pub fn vanishes_at_origin(&self) -> bool {
        self.coeffs[0].abs() <= TOL_ROOT * self.scale().max(1.0)
    }
}

/// Positive real roots of G with multiplicities, plus the Descartes bound
/// that certifies the count.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RootSet {
    /// Sorted (x, multiplicity) pairs with x > 0.
    pub roots: Vec<(f64, u32)>,
    pub descartes_bound: u32,
    /// True when G(0) = 0. The origin is an endpoint limit, not a root
    /// in s > 0, so it is reported out of band.
    pub zero_root: bool,
}

impl RootSet {
    pub fn count_with_multiplicity(&self) -> u32 {
        self.roots.iter().map(|&(_, m)| m).sum()
    }
}

/// Number of sign changes in the nonzero coefficient sequence; an upper
/// bound for the positive-root count, counted with multiplicity.
pub fn descartes_bound(poly: &GPoly) -> Result<u32> {
    if poly.coeffs.iter().all(|&c| c == 0.0) {
        return Err(Error::ZeroPolynomial);
    }
    let mut changes = 0u32;
    let mut last = 0.0f64;
    for &c in &poly.coeffs {
        if c != 0.0 {
            if last != 0.0 && c.signum() != last.signum() {
                changes += 1;
            }
            last = c;
        }
    }
    Ok(changes)
}

/// All positive real roots of G with multiplicities.
pub fn positive_roots(poly: &GPoly, tol_root: f64) -> Result<RootSet> {
    if tol_root <= 0.0 {
        return Err(Error::Usage("tol_root must be positive".into()));
    }
    let bound = descartes_bound(poly)?;
    let hi = 1.0 + cauchy_bound(&poly.coeffs).max(1.0);
    let roots = real_roots_in(&poly.coeffs, 0.0, hi, tol_root);
    Ok(RootSet {
        roots,
        descartes_bound: bound,
        zero_root: poly.vanishes_at_origin(),
    })
}

/// The C >= 0 at which G acquires a double positive root, for fixed lambda.
///
/// For a = 1 this is the boundary between the zero-root and two-root
/// regions of the C-lambda plane (needs lambda >= 4 or lambda = 3); for
/// a = -1 the boundary between one and three roots (lambda > 0).
///
/// Eliminating C from G(x₀) = G′(x₀) = 0 shows the double root satisfies
/// x₀² + (2 - a·lambda)·a·x₀ + 1 = 0, so with w = 2x₀ the boundary is
/// C₀ = 8(3-λ)(8-w³)/(24+3w³) at w = (λ-2) + √(λ²-4λ) for a = 1, and
/// C₀ = 8(λ+3)(8+w³)/(24-3w³) at w = (λ+2) - √(λ²+4λ) for a = -1.
pub fn boundary_c0(a: i8, lambda: f64) -> Result<f64> {
    match a {
        1 => {
            if lambda == 3.0 {
                // G = 48x² exactly at C = 0: degenerate double root at the origin.
                return Ok(0.0);
            }
            let radicand = lambda * lambda - 4.0 * lambda;
            if radicand < 0.0 {
                return Err(Error::NoBoundary { lambda, radicand });
            }
            let w = lambda - 2.0 + radicand.sqrt();
            let w3 = w * w * w;
            Ok(8.0 * (3.0 - lambda) * (8.0 - w3) / (24.0 + 3.0 * w3))
        }
        -1 => {
            if lambda == -3.0 {
                return Ok(0.0);
            }
            let radicand = lambda * lambda + 4.0 * lambda;
            if radicand < 0.0 {
                return Err(Error::NoBoundary { lambda, radicand });
            }
            let w = lambda + 2.0 - radicand.sqrt();
            let w3 = w * w * w;
            Ok(8.0 * (lambda + 3.0) * (8.0 + w3) / (24.0 - 3.0 * w3))
        }
        a => Err(Error::BranchUsage { a }),
    }
}

// --- generic small-degree machinery ---------------------------------------

pub(crate) fn poly_eval(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

pub(crate) fn deriv(coeffs: &[f64]) -> Vec<f64> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| i as f64 * c)
        .collect()
}

fn trim(coeffs: &[f64]) -> &[f64] {
    let mut n = coeffs.len();
    while n > 0 && coeffs[n - 1] == 0.0 {
        n -= 1;
    }
    &coeffs[..n]
}

/// Cauchy bound on the magnitude of real roots.
pub(crate) fn cauchy_bound(coeffs: &[f64]) -> f64 {
    let c = trim(coeffs);
    if c.len() < 2 {
        return 0.0;
    }
    let lead = c[c.len() - 1].abs();
    1.0 + c[..c.len() - 1].iter().fold(0.0f64, |m, &q| m.max(q.abs())) / lead
}

/// Real roots of an arbitrary low-degree polynomial on the open interval
/// (lo, hi), found by subdividing at critical points so each piece is
/// monotone. Reports (root, multiplicity) sorted by root.
pub(crate) fn real_roots_in(coeffs: &[f64], lo: f64, hi: f64, tol: f64) -> Vec<(f64, u32)> {
    let c = trim(coeffs);
    let scale = c.iter().fold(0.0f64, |m, &q| m.max(q.abs())).max(1.0);
    let deg = c.len().saturating_sub(1);
    if deg == 0 {
        return Vec::new();
    }
    if deg == 1 {
        let r = -c[0] / c[1];
        return if r > lo && r < hi { vec![(r, 1)] } else { Vec::new() };
    }

    let dcoeffs = deriv(c);
    let crits = real_roots_in(&dcoeffs, lo, hi, tol);

    // Breakpoints: lo, critical points, hi.
    let mut breaks = Vec::with_capacity(crits.len() + 2);
    breaks.push(lo);
    breaks.extend(crits.iter().map(|&(x, _)| x));
    breaks.push(hi);

    let touch_tol = |x: f64| TOL_MULT * scale * (1.0 + x.abs().powi(deg as i32));
    let root_tol = |x: f64| tol * scale * (1.0 + x.abs().powi(deg as i32));

    let mut found: Vec<(f64, u32)> = Vec::new();
    // Even-multiplicity roots sit at critical points where p itself vanishes.
    for &(x, dm) in &crits {
        if poly_eval(c, x).abs() <= touch_tol(x) {
            found.push((x, dm + 1));
        }
    }
    // Simple sign-change roots on monotone pieces.
    for w in breaks.windows(2) {
        let (a, b) = (w[0], w[1]);
        if b - a <= 0.0 {
            continue;
        }
        // Sample just inside to avoid endpoint roots already counted.
        let ea = a + (b - a) * 1e-9;
        let eb = b - (b - a) * 1e-9;
        let (pa, pb) = (poly_eval(c, ea), poly_eval(c, eb));
        if pa == 0.0 || pb == 0.0 || pa.signum() != pb.signum() {
            let r = bisect_newton(c, ea, eb, tol);
            // Skip refinements that collapse onto an already-recorded touch
            // root; sqrt(TOL_MULT) matches the cluster width a double root
            // can smear over in double precision.
            let dedup = TOL_MULT.sqrt() * (1.0 + r.abs());
            if poly_eval(c, r).abs() <= root_tol(r)
                && !found.iter().any(|&(x, _)| (x - r).abs() <= dedup)
            {
                found.push((r, 1));
            }
        }
    }
    found.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    found
}

/// Bisection with Newton polish on a bracketing interval.
fn bisect_newton(coeffs: &[f64], mut a: f64, mut b: f64, tol: f64) -> f64 {
    let dcoeffs = deriv(coeffs);
    let (mut pa, _pb) = (poly_eval(coeffs, a), poly_eval(coeffs, b));
    if pa == 0.0 {
        return a;
    }
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        let pm = poly_eval(coeffs, mid);
        if pm == 0.0 || (b - a) < tol * mid.abs().max(1.0) {
            break;
        }
        if pm.signum() == pa.signum() {
            a = mid;
            pa = pm;
        } else {
            b = mid;
        }
    }
    // Newton polish inside the final bracket.
    let mut x = 0.5 * (a + b);
    for _ in 0..8 {
        let p = poly_eval(coeffs, x);
        let d = poly_eval(&dcoeffs, x);
        if d == 0.0 {
            break;
        }
        let step = p / d;
        let next = x - step;
        if next >= a && next <= b {
            x = next;
        } else {
            break;
        }
        if step.abs() <= f64::EPSILON * x.abs().max(1.0) {
            break;
        }
    }
    x
}
