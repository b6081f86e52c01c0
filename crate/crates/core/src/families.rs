//! Closed-form and quadrature-defined Einstein solution families.
//!
//! Every candidate metric is selected by the triple (a, C, lambda): the
//! branch constant a in {-1, 0, +1} fixes the base scale h(r), C is the
//! integration constant of the fiber equation, and lambda is the Einstein
//! constant. For a = 0 the fiber scale f has an explicit formula; for
//! a = ±1 the metric is driven by the quartic G(x) with x = s².

use serde::Serialize;

use crate::error::{Error, Result};
use crate::jet::Jet;
use crate::roots::{self, GPoly, RootSet};
use crate::smoothness;

/// Pinned Einstein constant of the Page metric (a = 1, C = 0), the value
/// of (3 z1^4 + 4 z1^2 + 1) / (2 z1^2) at the smaller root z1.
pub const PAGE_LAMBDA: f64 = 3.732817481191785;

/// Tolerance band for deciding regime-boundary equalities such as
/// 24 - 3C - 8a*lambda = 0.
pub const REGIME_BAND: f64 = 1e-9;

/// The parameter triple selecting a candidate solution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModelParams {
    /// Branch constant, restricted to {-1, 0, +1} by the rescaling argument.
    pub a: i8,
    /// Integration constant of the fiber equation.
    pub c: f64,
    /// Einstein constant.
    pub lambda: f64,
}

impl ModelParams {
    pub fn new(a: i8, c: f64, lambda: f64) -> Self {
        assert!(matches!(a, -1 | 0 | 1), "branch constant must be -1, 0, or +1");
        ModelParams { a, c, lambda }
    }

    /// Quartic coefficient 24 + 3C - 8a*lambda (controls s -> infinity).
    pub fn g4(&self) -> f64 {
        24.0 + 3.0 * self.c - 8.0 * f64::from(self.a) * self.lambda
    }

    /// Constant coefficient 24 - 3C - 8a*lambda = G(0) (controls s -> 0).
    pub fn g0(&self) -> f64 {
        24.0 - 3.0 * self.c - 8.0 * f64::from(self.a) * self.lambda
    }

    /// D = (-C)^(1/4), the Eguchi-Hanson scale (§3.5 convention). Present
    /// only for a = 0, C < 0.
    pub fn eguchi_hanson_d(&self) -> Option<f64> {
        (self.a == 0 && self.c < 0.0).then(|| (-self.c).powf(0.25))
    }

    /// D = -C, the orbifold-family convention (§3.7). Present only for
    /// a = 0, C < 0.
    pub fn orbifold_d(&self) -> Option<f64> {
        (self.a == 0 && self.c < 0.0).then(|| -self.c)
    }

    /// For a = 0, rescale (C, lambda) by the homothety so that
    /// |lambda| is 6 or 0. Verdicts are invariant under this map.
    pub fn normalized_a0(&self) -> Self {
        if self.a != 0 || self.lambda == 0.0 {
            return *self;
        }
        // t -> kt, (f, h) -> (kf, kh) sends lambda -> lambda/k^2, C -> C k^4.
        let k2 = self.lambda.abs() / 6.0;
        ModelParams {
            a: 0,
            c: self.c * k2 * k2,
            lambda: 6.0 * self.lambda.signum(),
        }
    }

    /// For a = ±1, flip the sign of C via the s <-> 1/s symmetry so that
    /// C >= 0. Returns the flipped parameters and whether a flip happened.
    pub fn normalized_c_sign(&self) -> (Self, bool) {
        if self.a != 0 && self.c < 0.0 {
            (ModelParams { c: -self.c, ..*self }, true)
        } else {
            (*self, false)
        }
    }
}

/// Base scale h as a function of r: e^r, sech r, or csch r.
pub fn eval_h(a: i8, r: f64) -> Result<f64> {
    match a {
        0 => Ok(r.exp()),
        1 => Ok(1.0 / r.cosh()),
        -1 => {
            if r <= 0.0 {
                Err(Error::HBranchDomain { r })
            } else {
                Ok(1.0 / r.sinh())
            }
        }
        a => Err(Error::BranchUsage { a }),
    }
}

/// Fiber scale for a = 0: f = sqrt((-lambda/6) e^{4r} + e^{2r} + C e^{-2r}).
pub fn eval_f_a0(r: f64, c: f64, lambda: f64) -> Result<f64> {
    let s2 = (2.0 * r).exp();
    let radicand = (-lambda / 6.0) * s2 * s2 + s2 + c / s2;
    // Clamp roundoff dips at the vanishing locus so endpoint evaluations
    // return 0 instead of rejecting the sample.
    let scale = (lambda.abs() / 6.0) * s2 * s2 + s2 + c.abs() / s2;
    if radicand < -1e-12 * scale {
        Err(Error::OutsideDomain { s: r.exp() })
    } else {
        Ok(radicand.max(0.0).sqrt())
    }
}

/// The endpoint quartic G(x) = (24+3C-8a*lambda)(x^4+2ax^3) + 48x^2
/// + (24-3C-8a*lambda)(2ax+1), valid for a = ±1.
pub fn g_poly(params: &ModelParams) -> Result<GPoly> {
    if params.a == 0 {
        return Err(Error::BranchUsage { a: 0 });
    }
    let a = f64::from(params.a);
    let g4 = params.g4();
    let g0 = params.g0();
    Ok(GPoly::new([g0, 2.0 * a * g0, 48.0, 2.0 * a * g4, g4]))
}

/// Radicand of f² for a = 0, as a cubic in x = s²:
/// p(x) = (-lambda/6) x^3 + x^2 + C, with f² = p(x)/x.
pub fn a0_radicand_poly(params: &ModelParams) -> Vec<f64> {
    vec![params.c, 0.0, 1.0, -params.lambda / 6.0]
}

/// Metric data (f, h, dt/ds) at one s for a = ±1.
pub fn metric_components(params: &ModelParams, s: f64) -> Result<(f64, f64, f64)> {
    let p = profile_jets(params, s)?;
    Ok((p.f.v, p.h.v, 1.0 / p.v.v))
}

/// Profile values and their first two s-derivatives at one point.
#[derive(Debug, Clone, Copy)]
pub struct ProfileJets {
    pub s: f64,
    /// Fiber scale f and d/ds, d²/ds².
    pub f: Jet,
    /// Base scale h and derivatives.
    pub h: Jet,
    /// ds/dt and derivatives (positive on the interior).
    pub v: Jet,
}

/// Evaluate f, h, ds/dt as jets in s at an interior point.
pub fn profile_jets(params: &ModelParams, s: f64) -> Result<ProfileJets> {
    if !(s > 0.0) || !s.is_finite() {
        return Err(Error::Usage(format!("s = {s} must be positive and finite")));
    }
    let sj = Jet::variable(s);
    match params.a {
        0 => {
            let x = sj * sj;
            let phi = x * x * (-params.lambda / 6.0) + x + Jet::constant(params.c) / x;
            if phi.v <= 0.0 {
                return Err(Error::OutsideDomain { s });
            }
            let f = phi.sqrt();
            let v = f / sj; // dr/dt = f/h² with h = s gives ds/dt = f/s
            Ok(ProfileJets { s, f, h: sj, v })
        }
        a_int => {
            let a = f64::from(a_int);
            if a_int == -1 && (s - 1.0).abs() < f64::EPSILON * 4.0 {
                return Err(Error::PoleAtOne);
            }
            let x = sj * sj;
            let xa = x + a;
            let g = g_jet(params, x);
            if g.v <= 0.0 {
                return Err(Error::OutsideDomain { s });
            }
            let xa_abs = xa.abs();
            let f = (g / ((x * xa * xa) * 12.0)).sqrt();
            let h = sj * 2.0 / xa_abs;
            // dt/ds = 8 sqrt(3) s² / (|s²+a| sqrt(G)), so:
            let v = xa_abs * g.sqrt() / (sj * sj * (8.0 * 3.0f64.sqrt()));
            Ok(ProfileJets { s, f, h, v })
        }
    }
}

fn g_jet(params: &ModelParams, x: Jet) -> Jet {
    let p = g_poly(params).expect("a = ±1 checked by caller");
    let c = p.coeffs;
    ((((x * c[4] + c[3]) * x + c[2]) * x + c[1]) * x) + c[0]
}

// --- interval structure -----------------------------------------------------

/// A symbolic endpoint of a maximal positivity interval in s.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum SEndpoint {
    /// s -> 0.
    Zero,
    /// s -> 1 with a = -1 (pole of h; t diverges there).
    PoleOne,
    /// s -> infinity.
    Infinity,
    /// A positive root of G(s²) (or of the a = 0 radicand), in s.
    Root { s: f64, multiplicity: u32 },
}

impl SEndpoint {
    pub fn value(&self) -> f64 {
        match self {
            SEndpoint::Zero => 0.0,
            SEndpoint::PoleOne => 1.0,
            SEndpoint::Infinity => f64::INFINITY,
            SEndpoint::Root { s, .. } => *s,
        }
    }
}

/// A maximal open interval in s on which f > 0 and h > 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SInterval {
    pub lo: SEndpoint,
    pub hi: SEndpoint,
}

impl SInterval {
    pub fn contains(&self, s: f64) -> bool {
        s > self.lo.value() && s < self.hi.value()
    }

    /// A representative interior point, geometric-mean flavored for
    /// half-open intervals.
    pub fn midpoint(&self) -> f64 {
        let lo = self.lo.value();
        let hi = self.hi.value();
        if hi.is_infinite() {
            (lo.max(0.5) * 2.0).max(lo + 1.0)
        } else {
            0.5 * (lo + hi)
        }
    }
}

/// All maximal positivity intervals of f in s > 0, split at the s = 1
/// pole when a = -1.
pub fn positivity_intervals(params: &ModelParams) -> Result<Vec<SInterval>> {
    let (x_roots, eval): (Vec<(f64, u32)>, Box<dyn Fn(f64) -> f64>) = if params.a == 0 {
        let p = a0_radicand_poly(params);
        let hi = 1.0 + roots::cauchy_bound(&p).max(1.0);
        let rts = roots::real_roots_in(&p, 0.0, hi, roots::TOL_ROOT);
        let pc = p.clone();
        (rts, Box::new(move |x| roots::poly_eval(&pc, x)))
    } else {
        let g = g_poly(params)?;
        let rs: RootSet = roots::positive_roots(&g, roots::TOL_ROOT)?;
        (rs.roots, Box::new(move |x| g.eval(x)))
    };

    // Sign of f² on each gap between consecutive boundary points in x.
    let mut bounds = vec![0.0];
    bounds.extend(x_roots.iter().map(|&(x, _)| x));
    bounds.push(f64::INFINITY);

    let mut intervals = Vec::new();
    for (i, w) in bounds.windows(2).enumerate() {
        let (xa, xb) = (w[0], w[1]);
        let probe = if xb.is_infinite() { 2.0 * xa.max(1.0) + 1.0 } else { 0.5 * (xa + xb) };
        if eval(probe) <= 0.0 {
            continue;
        }
        let lo = if i == 0 {
            SEndpoint::Zero
        } else {
            let (x, m) = x_roots[i - 1];
            SEndpoint::Root { s: x.sqrt(), multiplicity: m }
        };
        let hi = if xb.is_infinite() {
            SEndpoint::Infinity
        } else {
            let (x, m) = x_roots[i];
            SEndpoint::Root { s: x.sqrt(), multiplicity: m }
        };
        let iv = SInterval { lo, hi };
        if params.a == -1 && iv.contains(1.0) {
            intervals.push(SInterval { lo: iv.lo, hi: SEndpoint::PoleOne });
            intervals.push(SInterval { lo: SEndpoint::PoleOne, hi: iv.hi });
        } else {
            intervals.push(iv);
        }
    }
    Ok(intervals)
}

// --- named solutions ---------------------------------------------------------

/// Explicit t-parameterizations where the paper gives them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ClosedForm {
    /// f = h = t (Euclidean R^4 in polar coordinates).
    Polar,
    /// f = sin t cos t, h = sin t on t in (0, pi/2).
    FubiniStudy,
    /// f = sinh t cosh t, h = sinh t.
    ComplexHyperbolic,
    /// f = h = sin t on t in (0, pi).
    Sphere,
    /// f = h = sinh t.
    Hyperbolic,
}

impl ClosedForm {
    /// (f, h) at geodesic coordinate t.
    pub fn eval(&self, t: f64) -> (f64, f64) {
        match self {
            ClosedForm::Polar => (t, t),
            ClosedForm::FubiniStudy => (t.sin() * t.cos(), t.sin()),
            ClosedForm::ComplexHyperbolic => (t.sinh() * t.cosh(), t.sinh()),
            ClosedForm::Sphere => (t.sin(), t.sin()),
            ClosedForm::Hyperbolic => (t.sinh(), t.sinh()),
        }
    }
}

/// Selector for the named solutions of the classification.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SolutionName {
    Flat,
    FubiniStudy,
    ComplexHyperbolic,
    /// Ricci-flat metric on TS² with bolt scale D > 0.
    EguchiHanson(f64),
    Sphere4,
    Page,
    RealHyperbolic,
    /// The a = 0, lambda = -6 orbifold family, n >= 3.
    OrbifoldA0(i64),
    /// One-root a = 1 family built from a prescribed root and collapse order.
    FamilyA1Z { z: f64, n: i32 },
    /// One-root a = -1 family (§6.1-6.3 machinery).
    FamilyAm1Z { z: f64, n: i32 },
    /// The complete smooth a = -1 family with C = (24 + 8 lambda)/3 (§6.4).
    FamilyC24 { lambda: f64 },
}

/// A fully populated solution family.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolutionFamily {
    pub params: ModelParams,
    pub s_interval: SInterval,
    pub closed_form: Option<ClosedForm>,
    pub label: Option<String>,
    /// Paper subsection identifier, e.g. "3.5" or "5.3".
    pub case_id: String,
}

/// Construct one of the named solutions.
pub fn named_solution(name: SolutionName) -> Result<SolutionFamily> {
    match name {
        SolutionName::Flat => Ok(SolutionFamily {
            params: ModelParams::new(0, 0.0, 0.0),
            s_interval: SInterval { lo: SEndpoint::Zero, hi: SEndpoint::Infinity },
            closed_form: Some(ClosedForm::Polar),
            label: Some("R^4".into()),
            case_id: "3.1".into(),
        }),
        SolutionName::FubiniStudy => Ok(SolutionFamily {
            params: ModelParams::new(0, 0.0, 6.0),
            s_interval: SInterval {
                lo: SEndpoint::Zero,
                hi: SEndpoint::Root { s: 1.0, multiplicity: 1 },
            },
            closed_form: Some(ClosedForm::FubiniStudy),
            label: Some("CP^2".into()),
            case_id: "3.2".into(),
        }),
        SolutionName::ComplexHyperbolic => Ok(SolutionFamily {
            params: ModelParams::new(0, 0.0, -6.0),
            s_interval: SInterval { lo: SEndpoint::Zero, hi: SEndpoint::Infinity },
            closed_form: Some(ClosedForm::ComplexHyperbolic),
            label: Some("CH^2".into()),
            case_id: "3.3".into(),
        }),
        SolutionName::EguchiHanson(d) => {
            if !(d > 0.0) {
                return Err(Error::Usage(format!("Eguchi-Hanson scale D = {d} must be positive")));
            }
            Ok(SolutionFamily {
                params: ModelParams::new(0, -d.powi(4), 0.0),
                s_interval: SInterval {
                    lo: SEndpoint::Root { s: d, multiplicity: 1 },
                    hi: SEndpoint::Infinity,
                },
                closed_form: None,
                label: Some("TS^2 (Eguchi-Hanson)".into()),
                case_id: "3.5".into(),
            })
        }
        SolutionName::Sphere4 => Ok(SolutionFamily {
            params: ModelParams::new(1, 0.0, 3.0),
            s_interval: SInterval { lo: SEndpoint::Zero, hi: SEndpoint::Infinity },
            closed_form: Some(ClosedForm::Sphere),
            label: Some("S^4".into()),
            case_id: "5.2".into(),
        }),
        SolutionName::Page => {
            let (z1, z2, lambda) = page_roots();
            Ok(SolutionFamily {
                params: ModelParams::new(1, 0.0, lambda),
                s_interval: SInterval {
                    lo: SEndpoint::Root { s: z1, multiplicity: 1 },
                    hi: SEndpoint::Root { s: z2, multiplicity: 1 },
                },
                closed_form: None,
                label: Some("CP^2 # CP^2-bar (Page)".into()),
                case_id: "5.3".into(),
            })
        }
        SolutionName::RealHyperbolic => Ok(SolutionFamily {
            params: ModelParams::new(-1, 0.0, -3.0),
            s_interval: SInterval { lo: SEndpoint::Zero, hi: SEndpoint::PoleOne },
            closed_form: Some(ClosedForm::Hyperbolic),
            label: Some("H^4".into()),
            case_id: "6.4".into(),
        }),
        SolutionName::OrbifoldA0(n) => {
            let d = orbifold_d(n)?;
            let z = ((n as f64 - 2.0) / 3.0).sqrt();
            Ok(SolutionFamily {
                params: ModelParams::new(0, -d, -6.0),
                s_interval: SInterval {
                    lo: SEndpoint::Root { s: z, multiplicity: 1 },
                    hi: SEndpoint::Infinity,
                },
                closed_form: None,
                label: Some(format!("I x S^3 / Z_{n}")),
                case_id: "3.7".into(),
            })
        }
        SolutionName::FamilyA1Z { z, n } => family_from_root(1, z, n),
        SolutionName::FamilyAm1Z { z, n } => family_from_root(-1, z, n),
        SolutionName::FamilyC24 { lambda } => {
            let c = (24.0 + 8.0 * lambda) / 3.0;
            let params = ModelParams::new(-1, c, lambda);
            Ok(SolutionFamily {
                params,
                s_interval: SInterval { lo: SEndpoint::Zero, hi: SEndpoint::PoleOne },
                closed_form: (lambda == -3.0).then_some(ClosedForm::Hyperbolic),
                label: (lambda == -3.0).then(|| "H^4".to_string()),
                case_id: paper_case_id(&params),
            })
        }
    }
}

fn family_from_root(a: i8, z: f64, n: i32) -> Result<SolutionFamily> {
    let (c, lambda) = smoothness::c_lambda_from_root(a, z, n)?;
    let params = ModelParams::new(a, c, lambda);
    let interval = positivity_intervals(&params)?
        .into_iter()
        .find(|iv| endpoint_is_root(&iv.lo, z) || endpoint_is_root(&iv.hi, z))
        .ok_or(Error::OutsideDomain { s: z })?;
    Ok(SolutionFamily {
        params,
        s_interval: interval,
        closed_form: None,
        label: None,
        case_id: paper_case_id(&params),
    })
}

fn endpoint_is_root(e: &SEndpoint, z: f64) -> bool {
    matches!(e, SEndpoint::Root { s, .. } if (s - z).abs() <= 1e-7 * z.max(1.0))
}

/// Roots and Einstein constant of the Page metric: z1 < 1 < z2 in s, with
/// z1 z2 = 1, df/dt = +1 at z1 and -1 at z2, and G(z1²) = G(z2²) = 0 for
/// (a, C) = (1, 0).
///
/// The cubic-formula closed form evaluates the root of G in x = s²; z2 is
/// its square root.
pub fn page_roots() -> (f64, f64, f64) {
    let x2 = page_g_root_closed_form();
    let z2 = x2.sqrt();
    let z1 = 1.0 / z2;
    let z1sq = z1 * z1;
    let lambda = (3.0 * z1sq * z1sq + 4.0 * z1sq + 1.0) / (2.0 * z1sq);
    (z1, z2, lambda)
}

/// The larger root of the Page quartic G(x), x = s², from the general
/// cubic formula: ½ sqrt(y) + ½ sqrt(-y + 8/sqrt(y)) with
/// y = 2 (cbrt(1+sqrt 2) + cbrt(1-sqrt 2)).
pub fn page_g_root_closed_form() -> f64 {
    let r = 2.0f64.sqrt();
    let y = 2.0 * ((1.0 + r).cbrt() + (1.0 - r).cbrt());
    0.5 * y.sqrt() + 0.5 * (-y + 8.0 / y.sqrt()).sqrt()
}

/// D(n) = (n-2)²/9 + (n-2)³/27 for the a = 0, lambda = -6 orbifold family;
/// the fiber root z satisfies 3z² = n - 2.
pub fn orbifold_d(n: i64) -> Result<f64> {
    if n < 3 {
        return Err(Error::InvalidOrbifoldOrder { n });
    }
    let m = n as f64 - 2.0;
    Ok(m * m / 9.0 + m * m * m / 27.0)
}

/// Whether 6(4-n)² - (4-n)³ equals 6(4+n)² - (4+n)³ — the §3.9 matching
/// condition, which fails for every n in {1, 2, 3}.
pub fn nonexistence_39_check(n: i64) -> bool {
    let side = |m: i64| 6 * m * m - m * m * m;
    side(4 - n) == side(4 + n)
}

/// Paper subsection for a normalized parameter triple (a = 0: |lambda| in
/// {0, 6}; a = ±1: C >= 0).
pub fn paper_case_id(params: &ModelParams) -> String {
    let band = REGIME_BAND;
    match params.a {
        0 => {
            let p = params.normalized_a0();
            match (
                if p.lambda > band { 1 } else if p.lambda < -band { -1 } else { 0 },
                if p.c > band { 1 } else if p.c < -band { -1 } else { 0 },
            ) {
                (0, 0) => "3.1",
                (1, 0) => "3.2",
                (-1, 0) => "3.3",
                (0, 1) => "3.4",
                (0, -1) => "3.5",
                (-1, 1) => "3.6",
                (-1, -1) => "3.7",
                (1, 1) => "3.8",
                (1, -1) => "3.9",
                _ => unreachable!(),
            }
            .into()
        }
        1 => {
            let g4 = params.g4();
            if g4 > band {
                "5.1"
            } else if g4.abs() <= band {
                "5.2"
            } else {
                "5.3"
            }
            .into()
        }
        _ => {
            let d_minus = 24.0 - 3.0 * params.c + 8.0 * params.lambda;
            let d_plus = 24.0 + 3.0 * params.c + 8.0 * params.lambda;
            if params.lambda <= 0.0 {
                if d_minus.abs() <= band {
                    "6.4"
                } else if d_plus < -band {
                    "6.1"
                } else if d_plus.abs() <= band {
                    "6.2"
                } else if d_minus < 0.0 {
                    "6.3"
                } else {
                    "6.5"
                }
            } else if d_minus.abs() <= band {
                "6.7"
            } else if d_minus < 0.0 {
                "6.6"
            } else {
                "6.8"
            }
            .into()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    #[test]
    fn h_branches() {
        assert_relative_eq!(eval_h(0, 0.0).unwrap(), 1.0);
        assert_relative_eq!(eval_h(1, 0.0).unwrap(), 1.0);
        // csch(ln 2) = 2s/(s²-1) at s = 2, i.e. 4/3.
        assert_relative_eq!(eval_h(-1, 2.0f64.ln()).unwrap(), 4.0 / 3.0, max_relative = 1e-14);
        assert!(matches!(eval_h(-1, 0.0), Err(Error::HBranchDomain { .. })));
        // 2s/(s²+a) form agrees for a = ±1.
        for (a, r) in [(1i8, 0.7f64), (-1, 0.9)] {
            let s = r.exp();
            let expect = 2.0 * s / (s * s + f64::from(a));
            assert_relative_eq!(eval_h(a, r).unwrap(), expect, max_relative = 1e-13);
        }
    }

    #[test]
    fn f_a0_formula() {
        assert_relative_eq!(eval_f_a0(0.0, 0.0, 0.0).unwrap(), 1.0);
        // C = 0, lambda = 6: f = s sqrt(1 - s²).
        let r = -0.4f64;
        let s = r.exp();
        assert_relative_eq!(
            eval_f_a0(r, 0.0, 6.0).unwrap(),
            s * (1.0 - s * s).sqrt(),
            max_relative = 1e-14
        );
        // Eguchi-Hanson boundary: f vanishes at s = D.
        let d = 1.3f64;
        assert_abs_diff_eq!(eval_f_a0(d.ln(), -d.powi(4), 0.0).unwrap(), 0.0, epsilon = 1e-7);
        assert!(eval_f_a0(d.ln() - 0.5, -d.powi(4), 0.0).is_err());
    }

    #[test]
    fn g_poly_coefficients() {
        let p = g_poly(&ModelParams::new(1, 0.0, 0.0)).unwrap();
        assert_eq!(p.coeffs, [24.0, 48.0, 48.0, 48.0, 24.0]);
        let p = g_poly(&ModelParams::new(1, 0.0, 3.0)).unwrap();
        assert_eq!(p.coeffs, [0.0, 0.0, 48.0, 0.0, 0.0]);
        // a=-1 with 24 - 3C + 8 lambda = 0: constant term vanishes.
        let lambda = -1.0;
        let c = (24.0 + 8.0 * lambda) / 3.0;
        let p = g_poly(&ModelParams::new(-1, c, lambda)).unwrap();
        assert_abs_diff_eq!(p.coeffs[0], 0.0, epsilon = 1e-12);
        assert!(g_poly(&ModelParams::new(0, 0.0, 0.0)).is_err());
    }

    #[test]
    fn sphere_metric_components() {
        // a=1, C=0, lambda=3: f = h = sin t with s = tan(t/2).
        let p = ModelParams::new(1, 0.0, 3.0);
        let (f, h, _) = metric_components(&p, 1.0).unwrap();
        assert_relative_eq!(f, 1.0, max_relative = 1e-14);
        assert_relative_eq!(h, 1.0, max_relative = 1e-14);
        let s = (std::f64::consts::PI / 8.0).tan();
        let (f, h, dt_ds) = metric_components(&p, s).unwrap();
        let expect = (std::f64::consts::PI / 4.0).sin();
        assert_relative_eq!(f, expect, max_relative = 1e-14);
        assert_relative_eq!(h, expect, max_relative = 1e-14);
        assert_relative_eq!(dt_ds, 2.0 / (s * s + 1.0), max_relative = 1e-14);
    }

    #[test]
    fn hyperbolic_metric_components() {
        // a=-1, C=0, lambda=-3: f = h = sinh t with s = tanh(t/2).
        let p = ModelParams::new(-1, 0.0, -3.0);
        let s = (0.5f64).tanh();
        let (f, h, _) = metric_components(&p, s).unwrap();
        assert_relative_eq!(f, 1.0f64.sinh(), max_relative = 1e-13);
        assert_relative_eq!(h, 1.0f64.sinh(), max_relative = 1e-13);
        assert!(matches!(metric_components(&p, 1.0), Err(Error::PoleAtOne)));
    }

    #[test]
    fn page_root_values() {
        let (z1, z2, lambda) = page_roots();
        assert_relative_eq!(z1 * z2, 1.0, max_relative = 1e-14);
        // Closed-form root of G in x = s²: 1.7844 to 4 s.f.
        assert_relative_eq!(page_g_root_closed_form(), 1.7843579810326168, max_relative = 1e-13);
        assert_relative_eq!(lambda, PAGE_LAMBDA, max_relative = 1e-13);
        // Both squares are roots of G.
        let g = g_poly(&ModelParams::new(1, 0.0, lambda)).unwrap();
        let scale = g.scale();
        assert_abs_diff_eq!(g.eval(z1 * z1) / scale, 0.0, epsilon = 1e-13);
        assert_abs_diff_eq!(g.eval(z2 * z2) / scale, 0.0, epsilon = 1e-13);
    }

    #[test]
    fn orbifold_d_values() {
        assert_relative_eq!(orbifold_d(3).unwrap(), 4.0 / 27.0, max_relative = 1e-15);
        assert_relative_eq!(orbifold_d(4).unwrap(), 20.0 / 27.0, max_relative = 1e-15);
        assert_relative_eq!(orbifold_d(5).unwrap(), 2.0, max_relative = 1e-15);
        assert!(matches!(orbifold_d(2), Err(Error::InvalidOrbifoldOrder { n: 2 })));
        // z² = (n-2)/3 satisfies z⁴ + z⁶ = D.
        for n in 3..=6 {
            let z2 = (n as f64 - 2.0) / 3.0;
            assert_relative_eq!(
                z2 * z2 + z2 * z2 * z2,
                orbifold_d(n).unwrap(),
                max_relative = 1e-14
            );
        }
    }

    #[test]
    fn nonexistence_arithmetic() {
        for n in 1..=3 {
            assert!(!nonexistence_39_check(n));
        }
        // The two sides do agree in the degenerate n = 0 sense.
        assert!(nonexistence_39_check(0));
    }

    #[test]
    fn positivity_interval_shapes() {
        // Sphere: single interval (0, infinity).
        let iv = positivity_intervals(&ModelParams::new(1, 0.0, 3.0)).unwrap();
        assert_eq!(iv, vec![SInterval { lo: SEndpoint::Zero, hi: SEndpoint::Infinity }]);
        // Hyperbolic a=-1: split at the pole.
        let iv = positivity_intervals(&ModelParams::new(-1, 0.0, -3.0)).unwrap();
        assert_eq!(iv.len(), 2);
        assert_eq!(iv[0].hi, SEndpoint::PoleOne);
        assert_eq!(iv[1].lo, SEndpoint::PoleOne);
        // Eguchi-Hanson: (D, infinity).
        let iv = positivity_intervals(&ModelParams::new(0, -16.0, 0.0)).unwrap();
        assert_eq!(iv.len(), 1);
        match iv[0].lo {
            SEndpoint::Root { s, multiplicity: 1 } => assert_relative_eq!(s, 2.0, max_relative = 1e-10),
            ref e => panic!("unexpected endpoint {e:?}"),
        }
        // Page: (z1, z2).
        let (z1, z2, lambda) = page_roots();
        let iv = positivity_intervals(&ModelParams::new(1, 0.0, lambda)).unwrap();
        assert_eq!(iv.len(), 1);
        assert!(endpoint_is_root(&iv[0].lo, z1) && endpoint_is_root(&iv[0].hi, z2));
    }

    #[test]
    fn case_ids() {
        assert_eq!(paper_case_id(&ModelParams::new(0, 0.0, 0.0)), "3.1");
        assert_eq!(paper_case_id(&ModelParams::new(0, -1.0, -6.0)), "3.7");
        assert_eq!(paper_case_id(&ModelParams::new(1, 0.0, 3.0)), "5.2");
        assert_eq!(paper_case_id(&ModelParams::new(1, 0.0, PAGE_LAMBDA)), "5.3");
        assert_eq!(paper_case_id(&ModelParams::new(-1, 0.0, -3.0)), "6.4");
        assert_eq!(paper_case_id(&ModelParams::new(-1, 0.0, -4.0)), "6.1");
        assert_eq!(paper_case_id(&ModelParams::new(-1, 1.0, -2.0)), "6.5");
    }

    #[test]
    fn a0_normalization() {
        let p = ModelParams::new(0, 2.0, 24.0).normalized_a0();
        assert_relative_eq!(p.lambda, 6.0);
        assert_relative_eq!(p.c, 2.0 * 16.0);
        let q = ModelParams::new(0, 5.0, 0.0).normalized_a0();
        assert_eq!(q, ModelParams::new(0, 5.0, 0.0));
    }
}
