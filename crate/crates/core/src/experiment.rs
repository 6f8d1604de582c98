//! The virtual experiment: an ideal gas driven along a piecewise path in the
//! `(p, V)` plane, reporting its entropy at every sample.

use std::fmt::{Display, LowerExp};
use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;
use std::str::FromStr;

use num_traits::Float;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::forms::Constants;

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("inconsistent path segment {segment}: {message}")]
    InconsistentKind { segment: usize, message: String },
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error("parse error on line {line}: {message}")]
    Parse { line: u64, message: String },
    #[error("validation error on line {line}: {message}")]
    Validation { line: u64, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Ideal-gas sample. `r` and `c_v_molar` are per mole; `a` is the entropy
/// offset in J/K, which cancels from every difference.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound(deserialize = "T: Deserialize<'de> + num_traits::Zero"))]
pub struct GasSpec<T> {
    #[serde(rename = "n")]
    pub n_moles: T,
    #[serde(rename = "R")]
    pub r: T,
    #[serde(rename = "cv")]
    pub c_v_molar: T,
    #[serde(default = "zero")]
    pub a: T,
}

fn zero<T: num_traits::Zero>() -> T {
    T::zero()
}

impl<T: Float> GasSpec<T> {
    pub fn new(n_moles: T, r: T, c_v_molar: T, a: T) -> Result<Self, ExperimentError> {
        let gas = GasSpec {
            n_moles,
            r,
            c_v_molar,
            a,
        };
        gas.check()?;
        Ok(gas)
    }

    /// One mole of monatomic gas, `R = 8.3145`, `c_v = 3R/2`.
    pub fn monatomic_mole() -> Self {
        let r = T::from(8.3145).unwrap();
        GasSpec {
            n_moles: T::one(),
            r,
            c_v_molar: r * T::from(1.5).unwrap(),
            a: T::zero(),
        }
    }

    pub fn check(&self) -> Result<(), ExperimentError> {
        for (name, value) in [("n", self.n_moles), ("R", self.r), ("cv", self.c_v_molar)] {
            if !(value > T::zero()) || !value.is_finite() {
                return Err(ExperimentError::Domain(format!("gas parameter {name} must be positive")));
            }
        }
        if !self.a.is_finite() {
            return Err(ExperimentError::Domain("entropy offset must be finite".into()));
        }
        Ok(())
    }

    /// `nR`.
    pub fn nr(&self) -> T {
        self.n_moles * self.r
    }

    /// Heat capacity of the whole sample, `n · c_v`.
    pub fn cv(&self) -> T {
        self.n_moles * self.c_v_molar
    }

    /// Numeric values of the symbols `nR` and `c_v`.
    pub fn constants(&self) -> Constants<T> {
        Constants {
            nr: self.nr(),
            cv: self.cv(),
        }
    }
}

/// `S = n c_v ln(pV / nR) + nR ln V + a`.
pub fn entropy<T: Float>(gas: &GasSpec<T>, p: T, v: T) -> Result<T, ExperimentError> {
    if !(p > T::zero() && v > T::zero()) {
        return Err(ExperimentError::Domain(format!(
            "entropy needs p > 0 and V > 0, got p = {:?}, V = {:?}",
            p.to_f64(),
            v.to_f64()
        )));
    }
    Ok(gas.cv() * (p * v / gas.nr()).ln() + gas.nr() * v.ln() + gas.a)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PathKind {
    Isochoric,
    Isobaric,
    Linear,
    Isothermal,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct State<T> {
    pub p: T,
    pub v: T,
}

impl<T> State<T> {
    pub fn new(p: T, v: T) -> Self {
        State { p, v }
    }
}

fn approx_eq<T: Float>(a: T, b: T) -> bool {
    let tol = T::from(1e-12).unwrap().max(T::epsilon() * T::from(4.0).unwrap());
    (a - b).abs() <= tol * a.abs().max(b.abs())
}

/// One leg of a path, parameterized by `s ∈ [0, 1]`.
///
/// Isochoric, isobaric and linear legs interpolate linearly in the varying
/// coordinates; isothermal legs interpolate `V` linearly and keep `pV` fixed.
#[derive(Debug, Clone, PartialEq)]
pub struct PathSegment<T> {
    pub kind: PathKind,
    pub start: State<T>,
    pub end: State<T>,
    pub samples: usize,
}

impl<T: Float> PathSegment<T> {
    pub fn new(kind: PathKind, start: State<T>, end: State<T>, samples: usize) -> Result<Self, ExperimentError> {
        Self::build(0, kind, start, end, samples)
    }

    fn build(index: usize, kind: PathKind, start: State<T>, end: State<T>, samples: usize) -> Result<Self, ExperimentError> {
        for s in [start, end] {
            if !(s.p > T::zero() && s.v > T::zero()) || !s.p.is_finite() || !s.v.is_finite() {
                return Err(ExperimentError::Domain(format!(
                    "segment {index}: states need finite p > 0 and V > 0"
                )));
            }
        }
        if samples < 2 {
            return Err(ExperimentError::InvalidPath("each segment needs at least 2 samples".into()));
        }
        let inconsistent = |message: &str| ExperimentError::InconsistentKind {
            segment: index,
            message: message.to_string(),
        };
        match kind {
            PathKind::Isochoric if !approx_eq(start.v, end.v) => {
                return Err(inconsistent("isochoric leg changes V"))
            }
            PathKind::Isobaric if !approx_eq(start.p, end.p) => {
                return Err(inconsistent("isobaric leg changes p"))
            }
            PathKind::Isothermal if !approx_eq(start.p * start.v, end.p * end.v) => {
                return Err(inconsistent("isothermal leg changes pV"))
            }
            _ => {}
        }
        Ok(PathSegment {
            kind,
            start,
            end,
            samples,
        })
    }

    /// State at `s`; exact at both ends.
    pub fn point_at(&self, s: T) -> State<T> {
        if s <= T::zero() {
            return self.start;
        }
        if s >= T::one() {
            return self.end;
        }
        let lerp = |a: T, b: T| a + (b - a) * s;
        match self.kind {
            PathKind::Isochoric => State::new(lerp(self.start.p, self.end.p), self.start.v),
            PathKind::Isobaric => State::new(self.start.p, lerp(self.start.v, self.end.v)),
            PathKind::Linear => State::new(lerp(self.start.p, self.end.p), lerp(self.start.v, self.end.v)),
            PathKind::Isothermal => {
                let v = lerp(self.start.v, self.end.v);
                State::new(self.start.p * self.start.v / v, v)
            }
        }
    }

    /// `(dp/ds, dV/ds)` at `s`.
    pub fn velocity_at(&self, s: T) -> (T, T) {
        let dp = self.end.p - self.start.p;
        let dv = self.end.v - self.start.v;
        match self.kind {
            PathKind::Isochoric => (dp, T::zero()),
            PathKind::Isobaric => (T::zero(), dv),
            PathKind::Linear => (dp, dv),
            PathKind::Isothermal => {
                let v = self.start.v + dv * s;
                (-self.start.p * self.start.v * dv / (v * v), dv)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample<T> {
    pub t: T,
    pub p: T,
    pub v: T,
}

/// Piecewise path. Segment `k` covers `t ∈ [k, k + 1]`; shared endpoints are
/// sampled once.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory<T> {
    segments: Vec<PathSegment<T>>,
}

impl<T: Float> Trajectory<T> {
    pub fn new(segments: Vec<PathSegment<T>>) -> Result<Self, ExperimentError> {
        if segments.is_empty() {
            return Err(ExperimentError::InvalidPath("trajectory needs at least one segment".into()));
        }
        for (k, pair) in segments.windows(2).enumerate() {
            if pair[0].end != pair[1].start {
                return Err(ExperimentError::InvalidPath(format!(
                    "segments {k} and {} do not share an endpoint",
                    k + 1
                )));
            }
        }
        Ok(Trajectory { segments })
    }

    pub fn segments(&self) -> &[PathSegment<T>] {
        &self.segments
    }

    pub fn start(&self) -> State<T> {
        self.segments[0].start
    }

    pub fn end(&self) -> State<T> {
        self.segments[self.segments.len() - 1].end
    }

    pub fn samples(&self) -> Vec<Sample<T>> {
        let mut out = Vec::new();
        for (k, seg) in self.segments.iter().enumerate() {
            let offset = T::from(k).unwrap();
            let last = seg.samples - 1;
            let denom = T::from(last).unwrap();
            let first = if k == 0 { 0 } else { 1 };
            for j in first..=last {
                let s = if j == last { T::one() } else { T::from(j).unwrap() / denom };
                let state = seg.point_at(s);
                out.push(Sample {
                    t: offset + s,
                    p: state.p,
                    v: state.v,
                });
            }
        }
        out
    }
}

/// Builds a trajectory through `points`, one segment per consecutive pair.
pub fn make_path<T: Float>(
    points: &[State<T>],
    kinds: &[PathKind],
    samples_per_segment: usize,
) -> Result<Trajectory<T>, ExperimentError> {
    if points.len() < 2 {
        return Err(ExperimentError::InvalidPath("a path needs at least 2 points".into()));
    }
    if kinds.len() != points.len() - 1 {
        return Err(ExperimentError::InvalidPath(format!(
            "{} points need {} segment kinds, got {}",
            points.len(),
            points.len() - 1,
            kinds.len()
        )));
    }
    let segments = points
        .windows(2)
        .zip(kinds)
        .enumerate()
        .map(|(i, (pair, kind))| PathSegment::build(i, *kind, pair[0], pair[1], samples_per_segment))
        .collect::<Result<Vec<_>, _>>()?;
    Trajectory::new(segments)
}

/// Path description as it appears in run configs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PathSpec<T> {
    pub points: Vec<[T; 2]>,
    pub kinds: Vec<PathKind>,
    pub samples: usize,
}

impl<T: Float> PathSpec<T> {
    pub fn build(&self) -> Result<Trajectory<T>, ExperimentError> {
        let points: Vec<_> = self.points.iter().map(|[p, v]| State::new(*p, *v)).collect();
        make_path(&points, &self.kinds, self.samples)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExperimentRecord<T> {
    pub t: T,
    pub p: T,
    pub v: T,
    pub s: T,
}

pub fn run_experiment<T: Float>(gas: &GasSpec<T>, traj: &Trajectory<T>) -> Result<Vec<ExperimentRecord<T>>, ExperimentError> {
    gas.check()?;
    traj.samples()
        .into_iter()
        .map(|x| {
            Ok(ExperimentRecord {
                t: x.t,
                p: x.p,
                v: x.v,
                s: entropy(gas, x.p, x.v)?,
            })
        })
        .collect()
}

/// Splits records into segments: segment `k` holds every record with
/// `k ≤ t ≤ k + 1`, so a record at an integer `t` closes one segment and
/// opens the next.
pub fn split_segments<T: Float>(records: &[ExperimentRecord<T>]) -> Vec<Vec<ExperimentRecord<T>>> {
    let Some(first) = records.first() else {
        return Vec::new();
    };
    let last = records[records.len() - 1].t;
    let mut out = Vec::new();
    let mut k = first.t.floor();
    while k < last || (k == last && out.is_empty()) {
        let hi = k + T::one();
        let seg: Vec<_> = records.iter().copied().filter(|r| r.t >= k && r.t <= hi).collect();
        if !seg.is_empty() {
            out.push(seg);
        }
        k = hi;
    }
    out
}

pub const CSV_HEADER: [&str; 4] = ["t", "p", "V", "S"];

fn csv_error(e: csv::Error) -> ExperimentError {
    let line = e.position().map_or(0, |p| p.line());
    match e.into_kind() {
        csv::ErrorKind::Io(io) => ExperimentError::Io(io),
        kind => ExperimentError::Parse {
            line,
            message: format!("{kind:?}"),
        },
    }
}

/// Writes `t,p,V,S` rows with 17 significant digits, enough to round-trip `f64`.
pub fn write_records_to<T, W>(writer: W, records: &[ExperimentRecord<T>]) -> Result<(), ExperimentError>
where
    T: Float + LowerExp,
    W: Write,
{
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(CSV_HEADER).map_err(csv_error)?;
    for r in records {
        w.write_record([r.t, r.p, r.v, r.s].iter().map(|x| format!("{x:.16e}")))
            .map_err(csv_error)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_records<T: Float + LowerExp>(path: impl AsRef<Path>, records: &[ExperimentRecord<T>]) -> Result<(), ExperimentError> {
    write_records_to(File::create(path)?, records)
}

/// Reads `t,p,V,S` rows, checking strictly increasing `t` and positive `p`, `V`.
pub fn read_records_from<T, R>(reader: R) -> Result<Vec<ExperimentRecord<T>>, ExperimentError>
where
    T: Float + FromStr,
    <T as FromStr>::Err: Display,
    R: Read,
{
    let mut rdr = csv::ReaderBuilder::new().has_headers(true).trim(csv::Trim::All).from_reader(reader);
    let header = rdr.headers().map_err(csv_error)?.clone();
    if header.iter().ne(CSV_HEADER) {
        return Err(ExperimentError::Parse {
            line: 1,
            message: format!("expected header `t,p,V,S`, found `{}`", header.iter().collect::<Vec<_>>().join(",")),
        });
    }
    let mut out: Vec<ExperimentRecord<T>> = Vec::new();
    for row in rdr.records() {
        let row = row.map_err(csv_error)?;
        let line = row.position().map_or(0, |p| p.line());
        let mut values = [T::zero(); 4];
        for (slot, (name, field)) in values.iter_mut().zip(CSV_HEADER.iter().zip(row.iter())) {
            *slot = field.parse::<T>().map_err(|e| ExperimentError::Parse {
                line,
                message: format!("column {name}: {e}"),
            })?;
        }
        let [t, p, v, s] = values;
        let invalid = |message: String| ExperimentError::Validation { line, message };
        if !values.iter().all(|x| x.is_finite()) {
            return Err(invalid("non-finite value".into()));
        }
        if !(p > T::zero()) || !(v > T::zero()) {
            return Err(invalid("p and V must be positive".into()));
        }
        if let Some(prev) = out.last() {
            if !(t > prev.t) {
                return Err(invalid("t is not strictly increasing".into()));
            }
        }
        out.push(ExperimentRecord { t, p, v, s });
    }
    Ok(out)
}

pub fn read_records<T>(path: impl AsRef<Path>) -> Result<Vec<ExperimentRecord<T>>, ExperimentError>
where
    T: Float + FromStr,
    <T as FromStr>::Err: Display,
{
    read_records_from(File::open(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gas() -> GasSpec<f64> {
        GasSpec::new(1.0, 8.3145, 12.47175, 0.0).unwrap()
    }

    const A: State<f64> = State { p: 10000.0, v: 0.0224 };
    const B: State<f64> = State { p: 20000.0, v: 0.0224 };
    const C: State<f64> = State { p: 20000.0, v: 0.0448 };
    const D: State<f64> = State { p: 10000.0, v: 0.0448 };

    #[test]
    fn entropy_differences() {
        let g = gas();
        let ab = entropy(&g, B.p, B.v).unwrap() - entropy(&g, A.p, A.v).unwrap();
        let bc = entropy(&g, C.p, C.v).unwrap() - entropy(&g, B.p, B.v).unwrap();
        assert!((ab - 8.644758).abs() < 1e-5, "{ab}");
        assert!((bc - 14.407931).abs() < 1e-5, "{bc}");
        let same = entropy(&g, 123.0, 4.5).unwrap() - entropy(&g, 123.0, 4.5).unwrap();
        assert_eq!(same, 0.0);
    }

    #[test]
    fn entropy_domain() {
        assert!(matches!(entropy(&gas(), 0.0, 1.0), Err(ExperimentError::Domain(_))));
        assert!(matches!(entropy(&gas(), 1.0, -1.0), Err(ExperimentError::Domain(_))));
        assert!(GasSpec::new(1.0, -8.0, 12.0, 0.0).is_err());
    }

    #[test]
    fn monatomic_default_matches_explicit() {
        let g = GasSpec::<f64>::monatomic_mole();
        assert_eq!(g.r, 8.3145);
        assert!((g.c_v_molar - 12.47175).abs() < 1e-12);
    }

    #[test]
    fn isochoric_samples_hold_volume() {
        let traj = make_path(&[A, B], &[PathKind::Isochoric], 11).unwrap();
        let samples = traj.samples();
        assert_eq!(samples.len(), 11);
        assert!(samples.iter().all(|s| s.v == 0.0224));
        assert_eq!(samples[0].p, A.p);
        assert_eq!(samples[10].p, B.p);
        assert!(samples.windows(2).all(|w| w[1].t > w[0].t));
    }

    #[test]
    fn zero_length_segment_is_constant() {
        for kind in [PathKind::Isochoric, PathKind::Isobaric, PathKind::Linear, PathKind::Isothermal] {
            let traj = make_path(&[A, A], &[kind], 5).unwrap();
            assert!(traj.samples().iter().all(|s| s.p == A.p && s.v == A.v));
        }
    }

    #[test]
    fn inconsistent_kinds_rejected() {
        assert!(matches!(
            make_path(&[A, C], &[PathKind::Isochoric], 5),
            Err(ExperimentError::InconsistentKind { segment: 0, .. })
        ));
        assert!(matches!(
            make_path(&[A, B, C], &[PathKind::Isochoric, PathKind::Isochoric], 5),
            Err(ExperimentError::InconsistentKind { segment: 1, .. })
        ));
        assert!(matches!(
            make_path(&[A, C], &[PathKind::Isothermal], 5),
            Err(ExperimentError::InconsistentKind { .. })
        ));
        let iso_end = State::new(5000.0, 0.0448);
        assert!(make_path(&[A, iso_end], &[PathKind::Isothermal], 5).is_ok());
        assert!(make_path(&[A, B], &[], 5).is_err());
        assert!(make_path(&[A], &[], 5).is_err());
        assert!(make_path(&[A, B], &[PathKind::Isochoric], 1).is_err());
        assert!(matches!(
            make_path(&[State::new(-1.0, 0.0224), B], &[PathKind::Isochoric], 5),
            Err(ExperimentError::Domain(_))
        ));
    }

    #[test]
    fn isothermal_keeps_pv() {
        let end = State::new(5000.0, 0.0448);
        let traj = make_path(&[A, end], &[PathKind::Isothermal], 17).unwrap();
        for s in traj.samples() {
            assert!((s.p * s.v - A.p * A.v).abs() < 1e-9);
        }
    }

    #[test]
    fn reference_path_endpoints() {
        let traj = make_path(&[A, B, C], &[PathKind::Isochoric, PathKind::Isobaric], 2).unwrap();
        let recs = run_experiment(&gas(), &traj).unwrap();
        assert_eq!(recs.len(), 3);
        assert!((recs[1].s - recs[0].s - 8.644758).abs() < 1e-5);
        assert!((recs[2].s - recs[1].s - 14.407931).abs() < 1e-5);
        assert_eq!(recs.iter().map(|r| r.t).collect::<Vec<_>>(), [0.0, 1.0, 2.0]);
    }

    #[test]
    fn constant_trajectory_constant_entropy() {
        let traj = make_path(&[A, A, A], &[PathKind::Linear, PathKind::Isobaric], 7).unwrap();
        let recs = run_experiment(&gas(), &traj).unwrap();
        assert!(recs.iter().all(|r| r.s == recs[0].s));
    }

    #[test]
    fn closed_loop_returns_to_start() {
        let kinds = [PathKind::Isochoric, PathKind::Isobaric, PathKind::Isochoric, PathKind::Isobaric];
        let traj = make_path(&[A, B, C, D, A], &kinds, 33).unwrap();
        let recs = run_experiment(&gas(), &traj).unwrap();
        let (first, last) = (recs[0].s, recs[recs.len() - 1].s);
        assert!((last - first).abs() <= 1e-9 * first.abs().max(1.0));
    }

    #[test]
    fn refinement_keeps_endpoint_records() {
        let kinds = [PathKind::Isochoric, PathKind::Isobaric];
        let coarse = run_experiment(&gas(), &make_path(&[A, B, C], &kinds, 51).unwrap()).unwrap();
        let fine = run_experiment(&gas(), &make_path(&[A, B, C], &kinds, 102).unwrap()).unwrap();
        for t in [0.0, 1.0, 2.0] {
            let a = coarse.iter().find(|r| r.t == t).unwrap();
            let b = fine.iter().find(|r| r.t == t).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn doubling_moles_doubles_entropy_change() {
        let one = gas();
        let two = GasSpec::new(2.0, 8.3145, 12.47175, 0.0).unwrap();
        let traj = make_path(&[A, C], &[PathKind::Linear], 9).unwrap();
        let d = |g: &GasSpec<f64>| {
            let r = run_experiment(g, &traj).unwrap();
            r[r.len() - 1].s - r[0].s
        };
        assert!((d(&two) - 2.0 * d(&one)).abs() < 1e-10);
    }

    #[test]
    fn split_by_integer_t() {
        let kinds = [PathKind::Isochoric, PathKind::Isobaric];
        let recs = run_experiment(&gas(), &make_path(&[A, B, C], &kinds, 4).unwrap()).unwrap();
        assert_eq!(recs.len(), 7);
        let segs = split_segments(&recs);
        assert_eq!(segs.len(), 2);
        assert_eq!(segs[0].len(), 4);
        assert_eq!(segs[1].len(), 4);
        assert_eq!(segs[0][3], segs[1][0]);
        assert!(split_segments::<f64>(&[]).is_empty());
    }

    #[test]
    fn csv_round_trip_and_header_only() {
        let kinds = [PathKind::Isochoric, PathKind::Isobaric];
        let recs = run_experiment(&gas(), &make_path(&[A, B, C], &kinds, 13).unwrap()).unwrap();
        let mut buf = Vec::new();
        write_records_to(&mut buf, &recs).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("t,p,V,S\n"));
        let back: Vec<ExperimentRecord<f64>> = read_records_from(buf.as_slice()).unwrap();
        assert_eq!(back, recs);
        let empty: Vec<ExperimentRecord<f64>> = read_records_from("t,p,V,S\n".as_bytes()).unwrap();
        assert!(empty.is_empty());
    }

    #[test]
    fn csv_validation_errors() {
        let neg = "t,p,V,S\n0,1,1,0\n1,1,-2,0\n";
        assert!(matches!(
            read_records_from::<f64, _>(neg.as_bytes()),
            Err(ExperimentError::Validation { line: 3, .. })
        ));
        let shuffled = "t,p,V,S\n1,1,1,0\n0,1,1,0\n";
        assert!(matches!(
            read_records_from::<f64, _>(shuffled.as_bytes()),
            Err(ExperimentError::Validation { line: 3, .. })
        ));
        let garbage = "t,p,V,S\n0,1,x,0\n";
        assert!(matches!(
            read_records_from::<f64, _>(garbage.as_bytes()),
            Err(ExperimentError::Parse { line: 2, .. })
        ));
        let short = "t,p,V,S\n0,1,1\n";
        assert!(matches!(
            read_records_from::<f64, _>(short.as_bytes()),
            Err(ExperimentError::Parse { line: 2, .. })
        ));
        assert!(read_records_from::<f64, _>("a,b,c,d\n".as_bytes()).is_err());
    }

    #[test]
    fn generic_over_f32() {
        let g = GasSpec::<f32>::monatomic_mole();
        let a = State::new(10000.0f32, 0.0224);
        let b = State::new(20000.0f32, 0.0224);
        let recs = run_experiment(&g, &make_path(&[a, b], &[PathKind::Isochoric], 3).unwrap()).unwrap();
        assert!((recs[2].s - recs[0].s - 8.644758).abs() < 1e-3);
    }

    proptest! {
        #[test]
        fn entropy_is_a_state_function(
            p0 in 1e3f64..1e5, v0 in 1e-3f64..1e-1,
            p1 in 1e3f64..1e5, v1 in 1e-3f64..1e-1,
            pm in 1e3f64..1e5, vm in 1e-3f64..1e-1,
        ) {
            let g = gas();
            let start = State::new(p0, v0);
            let end = State::new(p1, v1);
            let direct = make_path(&[start, end], &[PathKind::Linear], 5).unwrap();
            let detour = make_path(&[start, State::new(pm, vm), end], &[PathKind::Linear, PathKind::Linear], 5).unwrap();
            let d = |traj: &Trajectory<f64>| {
                let r = run_experiment(&g, traj).unwrap();
                r[r.len() - 1].s - r[0].s
            };
            prop_assert_eq!(d(&direct), d(&detour));
        }

        #[test]
        fn csv_round_trip_is_lossless(values in prop::collection::vec((1e-300f64..1e300, 1e-300f64..1e300, -1e10f64..1e10), 1..20)) {
            let recs: Vec<_> = values.iter().enumerate().map(|(i, (p, v, s))| ExperimentRecord { t: i as f64 * 0.37, p: *p, v: *v, s: *s }).collect();
            let mut buf = Vec::new();
            write_records_to(&mut buf, &recs).unwrap();
            let back: Vec<ExperimentRecord<f64>> = read_records_from(buf.as_slice()).unwrap();
            prop_assert_eq!(back, recs);
        }
    }
}
