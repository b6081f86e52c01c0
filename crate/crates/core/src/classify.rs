//! The full taxonomy: parameters in, verdicts out.
//!
//! A classification record is produced per maximal positivity interval.
//! Verdicts (complete / smooth / orbifold order) are derived entirely from
//! the endpoint analysis and the smoothness obstructions — never from a
//! case lookup table — so the published case table can serve as an
//! independent test oracle.

use rayon::prelude::*;

use crate::error::Result;
use crate::families::{
    orbifold_d, paper_case_id, positivity_intervals, ModelParams, SEndpoint, SInterval,
    PAGE_LAMBDA,
};
use crate::smoothness::{endpoint_analysis, EndpointKind, EndpointReport};

/// Absolute tolerance for matching named-solution parameters.
const LABEL_TOL: f64 = 1e-9;

/// Verdict for one maximal positivity interval.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct ClassificationRecord {
    /// Case tag of the parameter regime (e.g. "3.5", "6.4").
    pub case_id: String,
    /// Normalized parameters actually classified.
    pub params: ModelParams,
    pub s_interval: SInterval,
    pub complete: bool,
    pub smooth: bool,
    /// Largest orbifold order among the endpoints, when the metric is
    /// complete but not smooth.
    pub orbifold_n: Option<i32>,
    pub manifold_label: Option<String>,
    pub notes: String,
    pub endpoints: Vec<EndpointReport>,
}

/// Classify one parameter triple; one record per positivity interval.
pub fn classify_case(params: &ModelParams) -> Result<Vec<ClassificationRecord>> {
    let mut notes: Vec<String> = Vec::new();
    let normalized = if params.a == 0 {
        let p = params.normalized_a0();
        if p != *params {
            notes.push("lambda rescaled to |lambda| = 6 by homothety (C scaled by (|lambda|/6)^2)".into());
        }
        p
    } else {
        let (p, flipped) = params.normalized_c_sign();
        if flipped {
            notes.push("C < 0 mapped to C >= 0 via the s <-> 1/s symmetry".into());
        }
        p
    };

    let case_id = paper_case_id(&normalized);
    let label = manifold_label(&normalized);
    let mut records = Vec::new();
    for interval in positivity_intervals(&normalized)? {
        let endpoints = endpoint_analysis(&normalized, &interval)?;
        let complete = endpoints.iter().all(EndpointReport::is_complete_end);
        let smooth = complete && endpoints.iter().all(EndpointReport::is_smooth_end);
        let orbifold_n = if complete && !smooth {
            endpoints
                .iter()
                .filter(|e| e.kind == EndpointKind::OrbifoldCollapse)
                .filter_map(|e| e.n)
                .max()
        } else {
            None
        };

        let mut interval_notes = notes.clone();
        if label.as_deref().map(|l| l.contains("Eguchi-Hanson")) == Some(true) {
            interval_notes
                .push("smooth as a metric on TS^2 after the Z_2 quotient at the bolt".into());
        }
        if orbifold_n.is_some() && normalized.a == 0 {
            interval_notes.push(
                "domain is s in (z, infinity) with the orbifold point at the bolt s = z".into(),
            );
        }
        if endpoints.iter().any(|e| {
            e.kind == EndpointKind::RoundCollapse && e.s_location == SEndpoint::Infinity
        }) {
            interval_notes.push("df/dt and dh/dt tend to -1 at the s -> infinity collapse".into());
        }

        records.push(ClassificationRecord {
            case_id: case_id.clone(),
            params: normalized,
            s_interval: interval,
            complete,
            smooth,
            orbifold_n,
            manifold_label: label.clone(),
            notes: interval_notes.join("; "),
            endpoints,
        });
    }
    Ok(records)
}

fn near(x: f64, y: f64) -> bool {
    (x - y).abs() <= LABEL_TOL * y.abs().max(1.0)
}

/// Name of the matching closed-form solution, if the (normalized)
/// parameters hit one within tolerance.
fn manifold_label(p: &ModelParams) -> Option<String> {
    match p.a {
        0 => {
            if near(p.c, 0.0) {
                if near(p.lambda, 0.0) {
                    return Some("R^4".into());
                }
                if near(p.lambda, 6.0) {
                    return Some("CP^2".into());
                }
                if near(p.lambda, -6.0) {
                    return Some("CH^2".into());
                }
            }
            if p.c < -LABEL_TOL && near(p.lambda, 0.0) {
                return Some("TS^2 (Eguchi-Hanson)".into());
            }
            if p.c < -LABEL_TOL && near(p.lambda, -6.0) {
                for n in 3..=400 {
                    if near(-p.c, orbifold_d(n).expect("n >= 3")) {
                        return Some(format!("I x S^3 / Z_{n}"));
                    }
                }
            }
            None
        }
        1 => {
            if near(p.c, 0.0) {
                if near(p.lambda, 3.0) {
                    return Some("S^4".into());
                }
                if near(p.lambda, PAGE_LAMBDA) {
                    return Some("CP^2 # CP^2-bar (Page)".into());
                }
            }
            None
        }
        _ => {
            if near(p.c, 0.0) && near(p.lambda, -3.0) {
                Some("H^4".into())
            } else {
                None
            }
        }
    }
}

/// A finite rectangular grid over (a, C, lambda).
#[derive(Debug, Clone, PartialEq)]
pub struct SweepGrid {
    pub a_values: Vec<i8>,
    pub c_values: Vec<f64>,
    pub lambda_values: Vec<f64>,
}

impl SweepGrid {
    fn points(&self) -> Vec<ModelParams> {
        let mut a = self.a_values.clone();
        a.sort_unstable();
        a.dedup();
        let mut c = self.c_values.clone();
        c.sort_by(|x, y| x.partial_cmp(y).unwrap());
        c.dedup();
        let mut l = self.lambda_values.clone();
        l.sort_by(|x, y| x.partial_cmp(y).unwrap());
        l.dedup();
        let mut out = Vec::with_capacity(a.len() * c.len() * l.len());
        for &av in &a {
            for &cv in &c {
                for &lv in &l {
                    out.push(ModelParams::new(av, cv, lv));
                }
            }
        }
        out
    }
}

/// Classify every grid point in deterministic (a, C, lambda) order.
///
/// Points are independent and evaluated in parallel; the environment
/// variable `EINSTEIN_CYL_THREADS` caps the worker count.
pub fn sweep(grid: &SweepGrid) -> Result<Vec<ClassificationRecord>> {
    let points = grid.points();
    let run = || -> Vec<Result<Vec<ClassificationRecord>>> {
        points.par_iter().map(classify_case).collect()
    };
    let results = match thread_cap() {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| crate::error::Error::Usage(format!("thread pool: {e}")))?
            .install(run),
        None => run(),
    };
    let mut records = Vec::new();
    for r in results {
        records.extend(r?);
    }
    Ok(records)
}

fn thread_cap() -> Option<usize> {
    std::env::var("EINSTEIN_CYL_THREADS").ok()?.parse::<usize>().ok().filter(|&n| n > 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::smoothness::c_lambda_from_root;

    #[test]
    fn sphere_is_smooth_and_labeled() {
        let recs = classify_case(&ModelParams::new(1, 0.0, 3.0)).unwrap();
        assert_eq!(recs.len(), 1);
        assert!(recs[0].complete && recs[0].smooth);
        assert_eq!(recs[0].manifold_label.as_deref(), Some("S^4"));
        assert_eq!(recs[0].case_id, "5.2");
    }

    #[test]
    fn hyperbolic_has_two_labeled_intervals() {
        let recs = classify_case(&ModelParams::new(-1, 0.0, -3.0)).unwrap();
        assert_eq!(recs.len(), 2);
        for r in &recs {
            assert!(r.complete && r.smooth);
            assert_eq!(r.manifold_label.as_deref(), Some("H^4"));
            assert_eq!(r.case_id, "6.4");
        }
    }

    #[test]
    fn eguchi_hanson_is_complete_orbifold() {
        let recs = classify_case(&ModelParams::new(0, -16.0, 0.0)).unwrap();
        assert_eq!(recs.len(), 1);
        let r = &recs[0];
        assert!(r.complete && !r.smooth);
        assert_eq!(r.orbifold_n, Some(2));
        assert_eq!(r.manifold_label.as_deref(), Some("TS^2 (Eguchi-Hanson)"));
        assert!(r.notes.contains("TS^2"));
    }

    #[test]
    fn family_c24_contains_complete_smooth_interval() {
        for lambda in [-3.0, -2.0, -1.0, 0.0] {
            let c = (24.0 + 8.0 * lambda) / 3.0;
            let recs = classify_case(&ModelParams::new(-1, c, lambda)).unwrap();
            assert!(
                recs.iter().any(|r| r.complete && r.smooth),
                "no smooth complete record at lambda = {lambda}"
            );
        }
    }

    #[test]
    fn incomplete_regimes() {
        // a = 1, λ = 0: f blows up at s -> infinity.
        for r in classify_case(&ModelParams::new(1, 0.0, 0.0)).unwrap() {
            assert!(!r.complete);
            assert_eq!(r.case_id, "5.1");
        }
        // a = -1, λ = -2, C = 1: both intervals incomplete.
        let recs = classify_case(&ModelParams::new(-1, 1.0, -2.0)).unwrap();
        assert_eq!(recs.len(), 2);
        for r in &recs {
            assert!(!r.complete);
            assert_eq!(r.case_id, "6.5");
        }
    }

    #[test]
    fn family_from_prescribed_root_is_complete() {
        let (c, lambda) = c_lambda_from_root(-1, 0.8, 2).unwrap();
        let recs = classify_case(&ModelParams::new(-1, c, lambda)).unwrap();
        let r = recs.iter().find(|r| r.complete).expect("a complete interval");
        assert!(!r.smooth);
        assert_eq!(r.orbifold_n, Some(2));
    }

    #[test]
    fn rescaling_invariance_at_a0() {
        // Same verdicts for (C, λ) and the homothety-scaled pair.
        let k2 = 4.0;
        let base = classify_case(&ModelParams::new(0, -2.0, -6.0)).unwrap();
        // Homothety t -> kt sends (C, λ) to (C k⁴, λ / k²).
        let scaled = classify_case(&ModelParams::new(0, -2.0 * k2 * k2, -6.0 / k2)).unwrap();
        assert_eq!(base.len(), scaled.len());
        for (b, s) in base.iter().zip(&scaled) {
            assert_eq!((b.complete, b.smooth, b.orbifold_n), (s.complete, s.smooth, s.orbifold_n));
            assert_eq!(b.case_id, s.case_id);
        }
    }

    #[test]
    fn sweep_order_is_deterministic() {
        let grid = SweepGrid {
            a_values: vec![1, 0],
            c_values: vec![1.0, 0.0],
            lambda_values: vec![3.0, 0.0],
        };
        let r1 = sweep(&grid).unwrap();
        let r2 = sweep(&grid).unwrap();
        assert_eq!(r1, r2);
        // Sorted (a, C, λ): the first point is (0, 0, 0), flat space.
        assert_eq!(r1[0].manifold_label.as_deref(), Some("R^4"));
    }

    #[test]
    fn orbifold_sweep_matches_orders() {
        for n in [3i64, 4, 5] {
            let d = orbifold_d(n).unwrap();
            let recs = classify_case(&ModelParams::new(0, -d, -6.0)).unwrap();
            assert_eq!(recs.len(), 1);
            assert!(recs[0].complete);
            assert_eq!(recs[0].orbifold_n, Some(n as i32));
            assert_eq!(recs[0].case_id, "3.7");
        }
    }
}
