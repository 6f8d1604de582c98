//! Validation of candidate theorems against experiment data.
//!
//! A theorem `c₀ + c₁ dS + Σ cᵢ fᵢ = 0` is integrated along each path segment,
//! which drops `c₀` and leaves `ΔS = Σ c'ᵢ ∫ fᵢ` with `c'ᵢ = −cᵢ / c₁`. One
//! equation per segment gives a linear system for the primed constants.

pub mod lstsq;
pub mod quadrature;

use std::fmt;

use num_traits::Float;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::enumerate::{SingletonTheorem, Term, TheoremCandidate};
use crate::experiment::{ExperimentError, ExperimentRecord, GasSpec, PathSegment, Trajectory};
use crate::forms::{find_potential, Coefficient, Constants, FormError, OneForm, Potential, ScalarField};

pub use quadrature::{adaptive_simpson, adaptive_simpson_scaled};

/// Relative tolerance of the pullback quadrature.
pub const QUADRATURE_REL_TOL: f64 = 1e-10;
pub const DEFAULT_TOL_REL: f64 = 1e-6;
pub const DEFAULT_MAX_CONDITION: f64 = 1e8;

#[derive(Debug, Error)]
pub enum ValidateError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("pullback integral is not finite on segment {0}")]
    NonFinite(usize),
    #[error("no path segments to validate against")]
    NoSegments,
    #[error("segment {0} has fewer than two records")]
    SingleRecordSegment(usize),
    #[error("segment {0}: records do not match the path endpoints")]
    SegmentMismatch(usize),
    #[error("path has {path} segments but the records have {records}")]
    SegmentCount { path: usize, records: usize },
    #[error(transparent)]
    Experiment(#[from] ExperimentError),
    #[error(transparent)]
    Form(#[from] FormError),
}

fn check_positive<T: Float>(p: T, v: T, segment: usize) -> Result<(), ValidateError> {
    if p > T::zero() && v > T::zero() {
        Ok(())
    } else {
        Err(ValidateError::Domain(format!("segment {segment} leaves the quadrant p > 0, V > 0")))
    }
}

/// `∫ f` along one analytic segment: the pullback `A(x(s)) p'(s) + B(x(s)) V'(s)`
/// integrated over `s ∈ [0, 1]`.
pub fn pullback_segment<C, T>(f: &OneForm<C>, seg: &PathSegment<T>, constants: &Constants<T>, id: usize) -> Result<T, ValidateError>
where
    C: Coefficient,
    T: Float,
{
    check_positive(seg.start.p, seg.start.v, id)?;
    check_positive(seg.end.p, seg.end.v, id)?;
    if seg.start == seg.end || f.is_zero() {
        return Ok(T::zero());
    }
    let integrand = |s: T| {
        let x = seg.point_at(s);
        let (dp, dv) = seg.velocity_at(s);
        let (a, b) = f.evaluate(x.p, x.v, constants);
        // skip the zero velocity component so 1/p terms on an isobaric leg stay finite
        let mut acc = T::zero();
        if dp != T::zero() {
            acc = acc + a * dp;
        }
        if dv != T::zero() {
            acc = acc + b * dv;
        }
        acc
    };
    let size = |s: T| {
        let x = seg.point_at(s);
        let (dp, dv) = seg.velocity_at(s);
        let (a, b) = f.evaluate(x.p, x.v, constants);
        let mut acc = T::zero();
        if dp != T::zero() {
            acc = acc + (a * dp).abs();
        }
        if dv != T::zero() {
            acc = acc + (b * dv).abs();
        }
        acc
    };
    let value = adaptive_simpson_scaled(integrand, size, T::zero(), T::one(), T::from(QUADRATURE_REL_TOL).unwrap());
    if value.is_finite() {
        Ok(value)
    } else {
        Err(ValidateError::NonFinite(id))
    }
}

/// Line integral of `f` along the whole trajectory.
pub fn pullback_integral<C, T>(f: &OneForm<C>, traj: &Trajectory<T>, gas: &GasSpec<T>) -> Result<T, ValidateError>
where
    C: Coefficient,
    T: Float,
{
    let constants = gas.constants();
    traj.segments()
        .iter()
        .enumerate()
        .try_fold(T::zero(), |acc, (k, seg)| Ok(acc + pullback_segment(f, seg, &constants, k)?))
}

/// Trapezoid rule on the piecewise-linear interpolant of sampled states. Used
/// when only records are available; its error is `O(h²)` in the sample spacing.
pub fn pullback_sampled<C, T>(f: &OneForm<C>, records: &[ExperimentRecord<T>], constants: &Constants<T>, id: usize) -> Result<T, ValidateError>
where
    C: Coefficient,
    T: Float,
{
    let half = T::from(0.5).unwrap();
    let mut acc = T::zero();
    let mut prev: Option<(T, T, T, T)> = None;
    for r in records {
        check_positive(r.p, r.v, id)?;
        let (a, b) = f.evaluate(r.p, r.v, constants);
        if let Some((p0, v0, a0, b0)) = prev {
            if r.p != p0 {
                acc = acc + half * (a0 + a) * (r.p - p0);
            }
            if r.v != v0 {
                acc = acc + half * (b0 + b) * (r.v - v0);
            }
        }
        prev = Some((r.p, r.v, a, b));
    }
    if acc.is_finite() {
        Ok(acc)
    } else {
        Err(ValidateError::NonFinite(id))
    }
}

/// Observed entropy change and one pullback integral per form for a segment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SegmentIntegrals<T> {
    pub segment_id: usize,
    pub delta_s: T,
    pub integrals: Vec<T>,
}

fn close<T: Float>(a: T, b: T) -> bool {
    (a - b).abs() <= T::from(1e-9).unwrap().max(T::epsilon() * T::from(16.0).unwrap()) * a.abs().max(b.abs())
}

/// Per-segment `ΔS` and pullback integrals.
///
/// With `path`, each segment is integrated on its analytic parameterization
/// and the records only supply `ΔS`; the record endpoints must match the
/// path's. Without it the trapezoid fallback runs on the records.
pub fn segment_integrals<C, T>(
    forms: &[OneForm<C>],
    segments: &[Vec<ExperimentRecord<T>>],
    gas: &GasSpec<T>,
    path: Option<&Trajectory<T>>,
) -> Result<Vec<SegmentIntegrals<T>>, ValidateError>
where
    C: Coefficient,
    T: Float,
{
    if segments.is_empty() {
        return Err(ValidateError::NoSegments);
    }
    if let Some(path) = path {
        if path.segments().len() != segments.len() {
            return Err(ValidateError::SegmentCount {
                path: path.segments().len(),
                records: segments.len(),
            });
        }
    }
    let constants = gas.constants();
    segments
        .iter()
        .enumerate()
        .map(|(k, recs)| {
            if recs.len() < 2 {
                return Err(ValidateError::SingleRecordSegment(k));
            }
            let (first, last) = (recs[0], recs[recs.len() - 1]);
            let integrals = match path {
                Some(path) => {
                    let seg = &path.segments()[k];
                    let matches = close(first.p, seg.start.p)
                        && close(first.v, seg.start.v)
                        && close(last.p, seg.end.p)
                        && close(last.v, seg.end.v);
                    if !matches {
                        return Err(ValidateError::SegmentMismatch(k));
                    }
                    forms
                        .iter()
                        .map(|f| pullback_segment(f, seg, &constants, k))
                        .collect::<Result<Vec<_>, _>>()?
                }
                None => forms
                    .iter()
                    .map(|f| pullback_sampled(f, recs, &constants, k))
                    .collect::<Result<Vec<_>, _>>()?,
            };
            Ok(SegmentIntegrals {
                segment_id: k,
                delta_s: last.s - first.s,
                integrals,
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Valid,
    Invalid,
    Underdetermined,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitOptions<T> {
    pub tol_rel: T,
    pub max_condition: T,
}

impl<T: Float> Default for FitOptions<T> {
    fn default() -> Self {
        FitOptions {
            tol_rel: T::from(DEFAULT_TOL_REL).unwrap(),
            max_condition: T::from(DEFAULT_MAX_CONDITION).unwrap(),
        }
    }
}

/// Fitted primed constants and diagnostics.
///
/// `Valid` needs full column rank, an acceptable condition number, a
/// relative residual within tolerance and a nonzero left-hand side. Full-rank
/// fits of an all-zero `ΔS` only admit the trivial solution and are `Invalid`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitReport<T> {
    pub coefficients: Vec<T>,
    pub residual_rel: T,
    pub rank: usize,
    /// `None` when the system is rank-deficient (infinite condition number).
    pub condition: Option<T>,
    pub verdict: Verdict,
    /// More segments than unknowns; solved in the least-squares sense.
    pub overdetermined: bool,
}

/// Least-squares solve of `M c = ΔS`, where row `i` holds the integrals of segment `i`.
pub fn fit_theorem<T: Float>(si: &[SegmentIntegrals<T>], opts: &FitOptions<T>) -> FitReport<T> {
    let unknowns = si.first().map_or(0, |s| s.integrals.len());
    let rows: Vec<Vec<T>> = si.iter().map(|s| s.integrals.clone()).collect();
    let rhs: Vec<T> = si.iter().map(|s| s.delta_s).collect();
    let fit = lstsq::solve(&rows, unknowns, &rhs);
    let rhs_norm = rhs.iter().fold(T::zero(), |acc, y| acc + *y * *y).sqrt();
    let residual_rel = if rhs_norm > T::zero() {
        fit.residual_norm / rhs_norm
    } else {
        fit.residual_norm
    };
    let verdict = if unknowns == 0 {
        Verdict::Invalid
    } else if fit.rank < unknowns {
        Verdict::Underdetermined
    } else if rhs_norm == T::zero()
        || fit.condition > opts.max_condition
        || !(residual_rel <= opts.tol_rel)
    {
        Verdict::Invalid
    } else {
        Verdict::Valid
    };
    FitReport {
        coefficients: fit.solution,
        residual_rel,
        rank: fit.rank,
        condition: fit.condition.is_finite().then_some(fit.condition),
        verdict,
        overdetermined: si.len() > unknowns,
    }
}

/// Data a candidate is validated against.
pub struct Evidence<'a, T> {
    pub segments: &'a [Vec<ExperimentRecord<T>>],
    pub gas: &'a GasSpec<T>,
    pub path: Option<&'a Trajectory<T>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Discovery<T> {
    pub candidate: TheoremCandidate,
    pub rendered: String,
    /// Labels of the fitted terms, in coefficient order.
    pub labels: Vec<String>,
    pub report: FitReport<T>,
}

/// Fits every candidate and ranks the results: `Valid` fits first by
/// complexity then residual, then all others in candidate order.
///
/// A candidate containing the observed `dS` fits `ΔS` against its forms; one
/// without it fits the homogeneous system, which can only yield the trivial
/// solution or an underdetermined one.
pub fn discover<C, T>(
    evidence: &Evidence<'_, T>,
    set: &[SingletonTheorem<C>],
    candidates: &[TheoremCandidate],
    opts: &FitOptions<T>,
) -> Result<Vec<Discovery<T>>, ValidateError>
where
    C: Coefficient,
    T: Float,
{
    if candidates.is_empty() {
        return Ok(Vec::new());
    }
    let form_index: Vec<Option<usize>> = set
        .iter()
        .scan(0usize, |next, s| {
            Some(match s.term {
                Term::Form(_) => {
                    *next += 1;
                    Some(*next - 1)
                }
                Term::Observed(_) => None,
            })
        })
        .collect();
    let forms: Vec<OneForm<C>> = set
        .iter()
        .filter_map(|s| match &s.term {
            Term::Form(f) => Some(f.clone()),
            Term::Observed(_) => None,
        })
        .collect();
    let table = segment_integrals(&forms, evidence.segments, evidence.gas, evidence.path)?;

    let mut results = Vec::with_capacity(candidates.len());
    for cand in candidates {
        let observed = cand.members.iter().any(|&i| form_index[i].is_none());
        let columns: Vec<usize> = cand.members.iter().filter_map(|&i| form_index[i]).collect();
        let labels = cand
            .members
            .iter()
            .filter(|&&i| form_index[i].is_some())
            .map(|&i| set[i].label.clone())
            .collect();
        let system: Vec<SegmentIntegrals<T>> = table
            .iter()
            .map(|row| SegmentIntegrals {
                segment_id: row.segment_id,
                delta_s: if observed { row.delta_s } else { T::zero() },
                integrals: columns.iter().map(|&j| row.integrals[j]).collect(),
            })
            .collect();
        results.push(Discovery {
            candidate: cand.clone(),
            rendered: cand.render(set),
            labels,
            report: fit_theorem(&system, opts),
        });
    }
    let (mut valid, rest): (Vec<_>, Vec<_>) = results
        .into_iter()
        .enumerate()
        .partition(|(_, d)| d.report.verdict == Verdict::Valid);
    valid.sort_by(|(ia, a), (ib, b)| {
        a.candidate
            .total_complexity
            .cmp(&b.candidate.total_complexity)
            .then_with(|| a.report.residual_rel.partial_cmp(&b.report.residual_rel).unwrap_or(std::cmp::Ordering::Equal))
            .then_with(|| ia.cmp(ib))
    });
    Ok(valid.into_iter().chain(rest).map(|(_, d)| d).collect())
}

/// Potential whose differential is `Σ c'ᵢ fᵢ` for the fitted forms of a
/// discovery, with `nR` and `c_v` substituted numerically.
pub fn discovered_potential<C, T>(
    discovery: &Discovery<T>,
    set: &[SingletonTheorem<C>],
    gas: &GasSpec<T>,
) -> Result<Potential<T>, ValidateError>
where
    C: Coefficient,
    T: Float + Coefficient,
{
    let constants = gas.constants();
    let forms = discovery.candidate.members.iter().filter_map(|&i| match &set[i].term {
        Term::Form(f) => Some(f),
        Term::Observed(_) => None,
    });
    let mut total = Potential::zero();
    for (f, c) in forms.zip(&discovery.report.coefficients) {
        let g = find_potential(f)?.substitute_constants(&constants);
        total = total + g.scaled(&ScalarField::constant(*c))?;
    }
    Ok(total)
}

/// Symbolic reading of a fitted constant as `nR`, `c_v` or `c_v + nR`
/// within `rel_tol`, closest match first.
pub fn identify_constant<C, T>(value: T, gas: &GasSpec<T>, rel_tol: T) -> Option<ScalarField<C>>
where
    C: Coefficient,
    T: Float,
{
    let options = [
        (gas.nr(), ScalarField::nr()),
        (gas.cv(), ScalarField::cv()),
        (gas.cv() + gas.nr(), ScalarField::cv() + ScalarField::nr()),
    ];
    options
        .into_iter()
        .map(|(target, field)| ((value - target).abs() / target.abs(), field))
        .filter(|(err, _)| *err <= rel_tol)
        .min_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(std::cmp::Ordering::Equal))
        .map(|(_, field)| field)
}

/// Symbolic potential of a discovery when every fitted constant is
/// identified by [`identify_constant`].
pub fn symbolic_potential<C, T>(
    discovery: &Discovery<T>,
    set: &[SingletonTheorem<C>],
    gas: &GasSpec<T>,
    rel_tol: T,
) -> Result<Option<Potential<C>>, ValidateError>
where
    C: Coefficient,
    T: Float,
{
    let forms = discovery.candidate.members.iter().filter_map(|&i| match &set[i].term {
        Term::Form(f) => Some(f),
        Term::Observed(_) => None,
    });
    let mut total = Potential::zero();
    for (f, c) in forms.zip(&discovery.report.coefficients) {
        let Some(factor) = identify_constant::<C, T>(*c, gas, rel_tol) else {
            return Ok(None);
        };
        total = total + find_potential(f)?.scaled(&factor)?;
    }
    Ok(Some(total))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::{entropy_theorem_set, theorem_candidates};
    use crate::experiment::{make_path, run_experiment, split_segments, PathKind, State};
    use crate::forms::parse_one_form;
    use crate::Rational;

    fn gas() -> GasSpec<f64> {
        GasSpec::new(1.0, 8.3145, 12.47175, 0.0).unwrap()
    }

    const A: State<f64> = State { p: 10000.0, v: 0.0224 };
    const B: State<f64> = State { p: 20000.0, v: 0.0224 };
    const C: State<f64> = State { p: 20000.0, v: 0.0448 };
    const D: State<f64> = State { p: 10000.0, v: 0.0448 };

    fn form(s: &str) -> OneForm<Rational> {
        parse_one_form(s).unwrap()
    }

    fn reference_path(samples: usize) -> Trajectory<f64> {
        make_path(&[A, B, C], &[PathKind::Isochoric, PathKind::Isobaric], samples).unwrap()
    }

    #[test]
    fn pullback_examples() {
        let ab = make_path(&[A, B], &[PathKind::Isochoric], 2).unwrap();
        let v = pullback_integral(&OneForm::<Rational>::dlog_p(), &ab, &gas()).unwrap();
        assert!((v - std::f64::consts::LN_2).abs() < 1e-9);
        let v = pullback_integral(&OneForm::<Rational>::dlog_v(), &ab, &gas()).unwrap();
        assert_eq!(v, 0.0);
    }

    /// Left Riemann sum with 10⁶ steps per leg, independent of the adaptive rule.
    fn riemann_work(points: &[State<f64>]) -> f64 {
        let n = 1_000_000;
        let mut acc = 0.0;
        for w in points.windows(2) {
            let (a, b) = (w[0], w[1]);
            for i in 0..n {
                let s0 = i as f64 / n as f64;
                let s1 = (i + 1) as f64 / n as f64;
                let p = a.p + (b.p - a.p) * (s0 + s1) / 2.0;
                acc += p * (b.v - a.v) * (s1 - s0);
            }
        }
        acc
    }

    #[test]
    fn work_around_rectangle_is_signed_area() {
        let kinds = [PathKind::Isochoric, PathKind::Isobaric, PathKind::Isochoric, PathKind::Isobaric];
        let loop_path = make_path(&[A, B, C, D, A], &kinds, 2).unwrap();
        let w = pullback_integral(&OneForm::<Rational>::work(), &loop_path, &gas()).unwrap();
        let oracle = riemann_work(&[A, B, C, D, A]);
        let area = (B.p - A.p) * (C.v - B.v);
        assert!((oracle - area).abs() <= 1e-8 * area);
        assert!((w - oracle).abs() <= 1e-8 * area, "{w} vs {oracle}");
    }

    #[test]
    fn isothermal_matches_potential() {
        let end = State::new(5000.0, 0.0448);
        let traj = make_path(&[A, end], &[PathKind::Isothermal], 2).unwrap();
        let f = form("V dp + p dV");
        let v = pullback_integral(&f, &traj, &gas()).unwrap();
        assert!(v.abs() < 1e-10 * A.p * A.v);
        let f = form("c_v*p^-1 dp + (c_v + nR)*V^-1 dV");
        let g = find_potential(&f).unwrap();
        let k = gas().constants();
        let expected = g.evaluate(end.p, end.v, &k) - g.evaluate(A.p, A.v, &k);
        let v = pullback_integral(&f, &traj, &gas()).unwrap();
        assert!((v - expected).abs() < 1e-8 * expected.abs());
    }

    #[test]
    fn nonpositive_states_are_domain_errors() {
        let seg = PathSegment {
            kind: PathKind::Linear,
            start: State::new(-1.0, 1.0),
            end: State::new(1.0, 1.0),
            samples: 2,
        };
        let traj = Trajectory::new(vec![seg]).unwrap();
        assert!(matches!(
            pullback_integral(&OneForm::<Rational>::dlog_p(), &traj, &gas()),
            Err(ValidateError::Domain(_))
        ));
    }

    fn reference_integrals(samples: usize, analytic: bool) -> Vec<SegmentIntegrals<f64>> {
        let traj = reference_path(samples);
        let recs = run_experiment(&gas(), &traj).unwrap();
        let forms = [OneForm::<Rational>::dlog_p(), OneForm::dlog_v()];
        segment_integrals(&forms, &split_segments(&recs), &gas(), analytic.then_some(&traj)).unwrap()
    }

    #[test]
    fn reference_segment_integrals() {
        let si = reference_integrals(101, true);
        let ln2 = std::f64::consts::LN_2;
        assert_eq!(si.len(), 2);
        assert!((si[0].delta_s - 8.644758).abs() < 1e-6);
        assert!((si[1].delta_s - 14.407931).abs() < 1e-6);
        assert!((si[0].integrals[0] - ln2).abs() < 1e-6 && si[0].integrals[1].abs() < 1e-6);
        assert!(si[1].integrals[0].abs() < 1e-6 && (si[1].integrals[1] - ln2).abs() < 1e-6);
    }

    #[test]
    fn sampled_fallback_is_close() {
        let exact = reference_integrals(2001, true);
        let sampled = reference_integrals(2001, false);
        for (e, s) in exact.iter().zip(&sampled) {
            assert_eq!(e.delta_s, s.delta_s);
            for (a, b) in e.integrals.iter().zip(&s.integrals) {
                assert!((a - b).abs() < 1e-7);
            }
        }
    }

    #[test]
    fn segment_integral_errors() {
        let recs = run_experiment(&gas(), &reference_path(3)).unwrap();
        let mut segs = split_segments(&recs);
        let forms = [OneForm::<Rational>::dlog_p()];
        let only_delta_s = segment_integrals::<Rational, f64>(&[], &segs, &gas(), None).unwrap();
        assert!(only_delta_s.iter().all(|s| s.integrals.is_empty()));
        assert!(matches!(
            segment_integrals::<Rational, f64>(&forms, &[], &gas(), None),
            Err(ValidateError::NoSegments)
        ));
        segs[1].truncate(1);
        assert!(matches!(
            segment_integrals(&forms, &segs, &gas(), None),
            Err(ValidateError::SingleRecordSegment(1))
        ));
        let other = make_path(&[A, D, C], &[PathKind::Isobaric, PathKind::Isochoric], 3).unwrap();
        let segs = split_segments(&recs);
        assert!(matches!(
            segment_integrals(&forms, &segs, &gas(), Some(&other)),
            Err(ValidateError::SegmentMismatch(0))
        ));
        let short = make_path(&[A, B], &[PathKind::Isochoric], 3).unwrap();
        assert!(matches!(
            segment_integrals(&forms, &segs, &gas(), Some(&short)),
            Err(ValidateError::SegmentCount { .. })
        ));
    }

    #[test]
    fn fit_recovers_reference_constants() {
        let report = fit_theorem(&reference_integrals(101, true), &FitOptions::default());
        assert_eq!(report.verdict, Verdict::Valid);
        assert!((report.coefficients[0] - 12.47175).abs() < 1e-4);
        assert!((report.coefficients[1] - 20.78625).abs() < 1e-4);
        assert!(!report.overdetermined);
        assert_eq!(report.rank, 2);
    }

    #[test]
    fn fit_inconsistent_and_underdetermined() {
        let si = reference_integrals(2, true);
        let only_p: Vec<_> = si
            .iter()
            .map(|s| SegmentIntegrals { integrals: vec![s.integrals[0]], ..s.clone() })
            .collect();
        let report = fit_theorem(&only_p, &FitOptions::default());
        assert_eq!(report.verdict, Verdict::Invalid);
        assert!(report.overdetermined);
        let report = fit_theorem(&si[..1], &FitOptions::default());
        assert_eq!(report.verdict, Verdict::Underdetermined);
        assert_eq!(report.rank, 1);
        assert_eq!(report.condition, None);
    }

    #[test]
    fn zero_data_is_never_valid() {
        let si = vec![
            SegmentIntegrals { segment_id: 0, delta_s: 0.0, integrals: vec![1.0, 0.0] },
            SegmentIntegrals { segment_id: 1, delta_s: 0.0, integrals: vec![0.0, 1.0] },
        ];
        let report = fit_theorem(&si, &FitOptions::default());
        assert_eq!(report.verdict, Verdict::Invalid);
        assert_eq!(report.coefficients, vec![0.0, 0.0]);

        // closed loop as a single segment: every closed form integrates to zero
        let kinds = [PathKind::Isochoric, PathKind::Isobaric, PathKind::Isochoric, PathKind::Isobaric];
        let loop_path = make_path(&[A, B, C, D, A], &kinds, 2).unwrap();
        let forms = [OneForm::<Rational>::dlog_p(), OneForm::dlog_v()];
        let k = gas().constants();
        let row: Vec<f64> = forms
            .iter()
            .map(|f| loop_path.segments().iter().enumerate().map(|(i, s)| pullback_segment(f, s, &k, i).unwrap()).sum())
            .collect();
        let si = vec![SegmentIntegrals { segment_id: 0, delta_s: 0.0, integrals: row }];
        let report = fit_theorem(&si, &FitOptions::default());
        assert_eq!(report.verdict, Verdict::Underdetermined);
    }

    #[test]
    fn ill_conditioned_is_invalid() {
        let si = vec![
            SegmentIntegrals { segment_id: 0, delta_s: 1.0, integrals: vec![1.0, 0.0] },
            SegmentIntegrals { segment_id: 1, delta_s: 1e-7, integrals: vec![0.0, 1e-7] },
        ];
        let strict = FitOptions { tol_rel: 1e-6, max_condition: 1e6 };
        assert_eq!(fit_theorem(&si, &strict).verdict, Verdict::Invalid);
        assert_eq!(fit_theorem(&si, &FitOptions::default()).verdict, Verdict::Valid);
    }

    fn evidence_parts(samples: usize) -> (Trajectory<f64>, Vec<Vec<ExperimentRecord<f64>>>) {
        let traj = reference_path(samples);
        let recs = run_experiment(&gas(), &traj).unwrap();
        (traj.clone(), split_segments(&recs))
    }

    #[test]
    fn discover_ranks_entropy_theorem_first() {
        let (traj, segs) = evidence_parts(101);
        let g = gas();
        let evidence = Evidence { segments: &segs, gas: &g, path: Some(&traj) };
        let set = entropy_theorem_set::<Rational>();
        let cands = theorem_candidates(&set, 3);
        let ranked = discover(&evidence, &set, &cands, &FitOptions::default()).unwrap();
        assert_eq!(ranked.len(), cands.len());
        let best = &ranked[0];
        assert_eq!(best.report.verdict, Verdict::Valid);
        assert_eq!(best.candidate.members, vec![0, 1, 2]);
        assert_eq!(best.labels, vec!["p^-1 dp", "V^-1 dV"]);
        assert!((best.report.coefficients[0] - g.cv()).abs() < 1e-4);
        assert!((best.report.coefficients[1] - (g.cv() + g.nr())).abs() < 1e-4);
        assert_eq!(ranked.iter().filter(|d| d.report.verdict == Verdict::Valid).count(), 1);

        let numeric = discovered_potential(best, &set, &g).unwrap();
        assert!(numeric.poly().is_zero());
        let lp = numeric.log_p().coefficient(&Default::default()).copied().unwrap();
        let lv = numeric.log_v().coefficient(&Default::default()).copied().unwrap();
        assert!((lp - g.cv()).abs() < 1e-4 * g.cv());
        assert!((lv - g.cv() - g.nr()).abs() < 1e-4 * (g.cv() + g.nr()));

        let symbolic = symbolic_potential(best, &set, &g, 1e-3).unwrap().unwrap();
        assert_eq!(symbolic.to_string(), "c_v*ln(p) + (c_v + nR)*ln(V)");
    }

    #[test]
    fn discover_is_deterministic_and_handles_empty() {
        let (traj, segs) = evidence_parts(21);
        let g = gas();
        let evidence = Evidence { segments: &segs, gas: &g, path: Some(&traj) };
        let set = entropy_theorem_set::<Rational>();
        assert!(discover(&evidence, &set, &[], &FitOptions::default()).unwrap().is_empty());
        let cands = theorem_candidates(&set, 3);
        let a = discover(&evidence, &set, &cands, &FitOptions::default()).unwrap();
        let b = discover(&evidence, &set, &cands, &FitOptions::default()).unwrap();
        assert_eq!(a, b);
        // homogeneous candidate {dp/p, dV/V}: only the trivial solution
        let homog = a.iter().find(|d| d.candidate.members == vec![1, 2]).unwrap();
        assert_eq!(homog.report.verdict, Verdict::Invalid);
    }

    #[test]
    fn identify_constants() {
        let g = gas();
        let f = |x: f64| identify_constant::<Rational, f64>(x, &g, 1e-3).map(|s| s.to_string());
        assert_eq!(f(12.4718).as_deref(), Some("c_v"));
        assert_eq!(f(8.3145).as_deref(), Some("nR"));
        assert_eq!(f(20.786).as_deref(), Some("c_v + nR"));
        assert_eq!(f(3.0), None);
    }
}
