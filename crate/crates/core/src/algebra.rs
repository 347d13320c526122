//! Monoid pairs that parameterize closure computation.
//!
//! A [`DistanceStructure`] works on `[0, ∞]` with an aggregation `⊕`
//! (identity `∞`) choosing among path lengths and a combination `⊗`
//! (identity `0`) accumulating weights along a path. A
//! [`ProximityStructure`] is the `[0, 1]` counterpart built from a T-norm and
//! a T-conorm. A decreasing bijection [`IsomorphismMap`] carries one to the
//! other.
//!
//! Infinity is `f64::INFINITY`. `min`, `max` and `+` all saturate on it
//! without special casing.

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

pub type BinaryFn = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;
pub type UnaryFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Default sample count for randomized axiom checks.
pub const DEFAULT_SAMPLES: usize = 10_000;
/// Relative tolerance used when comparing operation results in axiom checks.
pub const AXIOM_TOLERANCE: f64 = 1e-9;
/// Largest accepted round-trip error `|φ⁻¹(φ(p)) − p|`.
pub const BIJECTION_TOLERANCE: f64 = 1e-9;

const AXIOM_SEED: u64 = 0x5eed_a1eb_0000_0001;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AlgebraError {
    #[error("unknown structure `{0}` (expected `metric` or `ultrametric`)")]
    UnknownStructure(String),
    #[error("map is not a decreasing bijection [0,1] -> [0,inf]: {0}")]
    MapNotBijective(String),
    #[error("induced structure violates monoid axioms: {0}")]
    AxiomViolation(String),
}

/// Order-theoretic identity of an operation, when one is known.
///
/// Closure algorithms only need to know that `⊕` selects the smaller
/// operand; the tag records that fact even when the operation itself is
/// evaluated through a composed function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Lattice {
    Min,
    Max,
}

impl Lattice {
    fn dual(self) -> Lattice {
        match self {
            Lattice::Min => Lattice::Max,
            Lattice::Max => Lattice::Min,
        }
    }
}

#[derive(Clone)]
pub struct BinaryOp {
    name: String,
    lattice: Option<Lattice>,
    f: BinaryFn,
}

impl BinaryOp {
    pub fn min() -> Self {
        BinaryOp {
            name: "min".into(),
            lattice: Some(Lattice::Min),
            f: Arc::new(f64::min),
        }
    }

    pub fn max() -> Self {
        BinaryOp {
            name: "max".into(),
            lattice: Some(Lattice::Max),
            f: Arc::new(f64::max),
        }
    }

    pub fn sum() -> Self {
        BinaryOp::custom("sum", |a, b| a + b)
    }

    pub fn custom(
        name: impl Into<String>,
        f: impl Fn(f64, f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        BinaryOp {
            name: name.into(),
            lattice: None,
            f: Arc::new(f),
        }
    }

    #[inline]
    pub fn apply(&self, a: f64, b: f64) -> f64 {
        (self.f)(a, b)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn lattice(&self) -> Option<Lattice> {
        self.lattice
    }
}

impl fmt::Debug for BinaryOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BinaryOp")
            .field("name", &self.name)
            .field("lattice", &self.lattice)
            .finish()
    }
}

/// `(⊕, ⊗)` on `[0, ∞]`.
#[derive(Debug, Clone)]
pub struct DistanceStructure {
    name: String,
    aggregate: BinaryOp,
    combine: BinaryOp,
}

impl DistanceStructure {
    pub fn new(name: impl Into<String>, aggregate: BinaryOp, combine: BinaryOp) -> Self {
        DistanceStructure {
            name: name.into(),
            aggregate,
            combine,
        }
    }

    /// `(min, +)`: shortest-path distances.
    pub fn metric() -> Self {
        DistanceStructure::new("metric", BinaryOp::min(), BinaryOp::sum())
    }

    /// `(min, max)`: minimax (bottleneck) distances.
    pub fn ultrametric() -> Self {
        DistanceStructure::new("ultrametric", BinaryOp::min(), BinaryOp::max())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn aggregate(&self) -> &BinaryOp {
        &self.aggregate
    }

    pub fn combine(&self) -> &BinaryOp {
        &self.combine
    }

    /// True when path lengths are combined by a comparison-only operation,
    /// so closures are exact in floating point.
    pub fn is_exact(&self) -> bool {
        self.combine.lattice.is_some()
    }
}

pub fn builtin_structure(name: &str) -> Result<DistanceStructure, AlgebraError> {
    match name {
        "metric" => Ok(DistanceStructure::metric()),
        "ultrametric" => Ok(DistanceStructure::ultrametric()),
        other => Err(AlgebraError::UnknownStructure(other.to_string())),
    }
}

/// `(∧, ∨)` on `[0, 1]` with an optional negation.
#[derive(Clone)]
pub struct ProximityStructure {
    name: String,
    tnorm: BinaryOp,
    tconorm: BinaryOp,
    negation: Option<UnaryFn>,
}

impl ProximityStructure {
    pub fn new(
        name: impl Into<String>,
        tnorm: BinaryOp,
        tconorm: BinaryOp,
        negation: Option<UnaryFn>,
    ) -> Self {
        ProximityStructure {
            name: name.into(),
            tnorm,
            tconorm,
            negation,
        }
    }

    /// `∧ = min`, `∨ = max`, `¬a = 1 − a`.
    pub fn max_min() -> Self {
        ProximityStructure::new(
            "max-min",
            BinaryOp::min(),
            BinaryOp::max(),
            Some(Arc::new(|a| 1.0 - a)),
        )
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn tnorm(&self) -> &BinaryOp {
        &self.tnorm
    }

    pub fn tconorm(&self) -> &BinaryOp {
        &self.tconorm
    }

    pub fn negation(&self) -> Option<&UnaryFn> {
        self.negation.as_ref()
    }
}

impl fmt::Debug for ProximityStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ProximityStructure")
            .field("name", &self.name)
            .field("tnorm", &self.tnorm)
            .field("tconorm", &self.tconorm)
            .field("negation", &self.negation.is_some())
            .finish()
    }
}

/// Decreasing bijection `φ: [0,1] → [0,∞]` with its inverse.
#[derive(Clone)]
pub struct IsomorphismMap {
    name: String,
    forward: UnaryFn,
    inverse: UnaryFn,
}

impl IsomorphismMap {
    pub fn new(
        name: impl Into<String>,
        forward: impl Fn(f64) -> f64 + Send + Sync + 'static,
        inverse: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        IsomorphismMap {
            name: name.into(),
            forward: Arc::new(forward),
            inverse: Arc::new(inverse),
        }
    }

    /// `φ(p) = 1/p − 1`, `φ⁻¹(d) = 1/(1 + d)`, with `φ(0) = ∞`.
    pub fn reciprocal() -> Self {
        IsomorphismMap::new(
            "1/p-1",
            |p| {
                if p == 0.0 {
                    f64::INFINITY
                } else {
                    1.0 / p - 1.0
                }
            },
            |d| {
                if d == f64::INFINITY {
                    0.0
                } else {
                    1.0 / (1.0 + d)
                }
            },
        )
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    #[inline]
    pub fn forward(&self, p: f64) -> f64 {
        (self.forward)(p)
    }

    #[inline]
    pub fn inverse(&self, d: f64) -> f64 {
        (self.inverse)(d)
    }
}

impl fmt::Debug for IsomorphismMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IsomorphismMap")
            .field("name", &self.name)
            .finish()
    }
}

/// Checks that `m` behaves as a strictly decreasing bijection with the
/// required endpoints on a deterministic sample of `[0, 1]`.
pub fn check_bijection(m: &IsomorphismMap, samples: usize) -> Result<(), AlgebraError> {
    if m.forward(0.0) != f64::INFINITY || m.forward(1.0) != 0.0 {
        return Err(AlgebraError::MapNotBijective(format!(
            "endpoints map to phi(0)={}, phi(1)={}",
            m.forward(0.0),
            m.forward(1.0)
        )));
    }
    if m.inverse(f64::INFINITY) != 0.0 || m.inverse(0.0) != 1.0 {
        return Err(AlgebraError::MapNotBijective(
            "inverse endpoints are wrong".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(AXIOM_SEED);
    let mut points: Vec<f64> = (0..samples.max(2))
        .map(|_| {
            // log-uniform on [1e-6, 1]
            let e: f64 = rng.gen_range(-6.0..=0.0);
            10f64.powf(e)
        })
        .collect();
    points.push(1.0);
    points.sort_by(f64::total_cmp);
    points.dedup();

    let mut prev: Option<(f64, f64)> = None;
    for &p in &points {
        let d = m.forward(p);
        if d.is_nan() || d < 0.0 {
            return Err(AlgebraError::MapNotBijective(format!(
                "phi({p}) = {d} is outside [0,inf]"
            )));
        }
        let back = m.inverse(d);
        if back.is_nan() || (back - p).abs() > BIJECTION_TOLERANCE {
            return Err(AlgebraError::MapNotBijective(format!(
                "inverse(phi({p})) = {back}"
            )));
        }
        if let Some((q, dq)) = prev {
            if d.is_nan() || dq <= d {
                return Err(AlgebraError::MapNotBijective(format!(
                    "not strictly decreasing: phi({q}) = {dq}, phi({p}) = {d}"
                )));
            }
        }
        prev = Some((p, d));
    }
    Ok(())
}

/// Builds the distance structure that `φ` induces from a proximity structure.
///
/// Path aggregation in proximity space is the T-conorm and edge combination
/// is the T-norm, so `a ⊕ b = φ(φ⁻¹a ∨ φ⁻¹b)` and `a ⊗ b = φ(φ⁻¹a ∧ φ⁻¹b)`.
/// Because `φ` reverses order, a `max` conorm becomes a `min` aggregation
/// and a `min` norm becomes a `max` combination.
pub fn induce_distance_structure(
    p: &ProximityStructure,
    m: &IsomorphismMap,
) -> Result<DistanceStructure, AlgebraError> {
    check_bijection(m, DEFAULT_SAMPLES)?;

    let induced = |source: &BinaryOp, symbol: &str| {
        let (op, m) = (source.clone(), m.clone());
        BinaryOp {
            name: format!("phi({symbol}:{})", source.name()),
            lattice: source.lattice().map(Lattice::dual),
            f: Arc::new(move |a, b| m.forward(op.apply(m.inverse(a), m.inverse(b)))),
        }
    };
    let s = DistanceStructure::new(
        format!("{}/{}", p.name(), m.name()),
        induced(p.tconorm(), "or"),
        induced(p.tnorm(), "and"),
    );

    let report = check_monoid_pair_with(&s, 2_000, AXIOM_SEED, AXIOM_TOLERANCE);
    if let Some(v) = report.violations.first() {
        return Err(AlgebraError::AxiomViolation(v.to_string()));
    }
    Ok(s)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OpRole {
    /// `⊕` or the T-conorm.
    Aggregate,
    /// `⊗` or the T-norm.
    Combine,
    Negation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axiom {
    Associativity,
    Commutativity,
    Monotonicity,
    Identity,
    Involution,
    DeMorgan,
}

/// A failed axiom together with the operands that exposed it.
#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub role: OpRole,
    pub axiom: Axiom,
    pub witness: Vec<f64>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:?} of {:?} fails at {:?}",
            self.axiom, self.role, self.witness
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AxiomReport {
    pub structure: String,
    pub samples: usize,
    pub violations: Vec<Violation>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

fn close(x: f64, y: f64, tol: f64) -> bool {
    x == y
        || (x.is_finite() && y.is_finite() && (x - y).abs() <= tol * 1f64.max(x.abs()).max(y.abs()))
}

fn le(x: f64, y: f64, tol: f64) -> bool {
    x <= y || close(x, y, tol)
}

struct Checker {
    tol: f64,
    violations: Vec<Violation>,
}

impl Checker {
    fn record(&mut self, role: OpRole, axiom: Axiom, witness: &[f64]) {
        if !self
            .violations
            .iter()
            .any(|v| v.role == role && v.axiom == axiom)
        {
            self.violations.push(Violation {
                role,
                axiom,
                witness: witness.to_vec(),
            });
        }
    }

    fn monoid(&mut self, role: OpRole, op: &BinaryOp, identity: f64, triples: &[[f64; 3]]) {
        let t = self.tol;
        for &[a, b, c] in triples {
            if !close(op.apply(op.apply(a, b), c), op.apply(a, op.apply(b, c)), t) {
                self.record(role, Axiom::Associativity, &[a, b, c]);
            }
            if !close(op.apply(a, b), op.apply(b, a), t) {
                self.record(role, Axiom::Commutativity, &[a, b]);
            }
            let (lo, hi) = if a <= c { (a, c) } else { (c, a) };
            if !le(op.apply(lo, b), op.apply(hi, b), t) {
                self.record(role, Axiom::Monotonicity, &[lo, hi, b]);
            }
            if !close(op.apply(a, identity), a, t) {
                self.record(role, Axiom::Identity, &[a, identity]);
            }
        }
    }
}

fn sample_extended(rng: &mut ChaCha8Rng) -> f64 {
    match rng.gen_range(0..20) {
        0 => 0.0,
        1 => f64::INFINITY,
        2..=5 => f64::from(rng.gen_range(0u32..10)),
        6..=9 => rng.gen_range(0.0..1.0),
        _ => 10f64.powf(rng.gen_range(-3.0..6.0)),
    }
}

/// Multiples of 2⁻⁵³ in `[0, 1]`; `1 − a` is exact for every such value.
fn sample_unit(rng: &mut ChaCha8Rng) -> f64 {
    match rng.gen_range(0..20) {
        0 => 0.0,
        1 => 1.0,
        _ => (rng.gen::<u64>() >> 11) as f64 * (1.0 / (1u64 << 53) as f64),
    }
}

/// Randomized check of the monoid axioms of both operations, using the
/// default seed and [`AXIOM_TOLERANCE`].
pub fn check_monoid_pair(s: &DistanceStructure, samples: usize) -> AxiomReport {
    check_monoid_pair_with(s, samples, AXIOM_SEED, AXIOM_TOLERANCE)
}

pub fn check_monoid_pair_with(
    s: &DistanceStructure,
    samples: usize,
    seed: u64,
    tol: f64,
) -> AxiomReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let triples: Vec<[f64; 3]> = (0..samples.max(1))
        .map(|_| std::array::from_fn(|_| sample_extended(&mut rng)))
        .collect();
    let mut checker = Checker {
        tol,
        violations: Vec::new(),
    };
    checker.monoid(OpRole::Aggregate, s.aggregate(), f64::INFINITY, &triples);
    checker.monoid(OpRole::Combine, s.combine(), 0.0, &triples);
    AxiomReport {
        structure: s.name().to_string(),
        samples: triples.len(),
        violations: checker.violations,
    }
}

/// Randomized check of a proximity structure: T-norm and T-conorm axioms,
/// and when a negation is present, involution and De Morgan duality.
pub fn check_proximity_structure(p: &ProximityStructure, samples: usize, tol: f64) -> AxiomReport {
    let mut rng = ChaCha8Rng::seed_from_u64(AXIOM_SEED);
    let triples: Vec<[f64; 3]> = (0..samples.max(1))
        .map(|_| std::array::from_fn(|_| sample_unit(&mut rng)))
        .collect();
    let mut checker = Checker {
        tol,
        violations: Vec::new(),
    };
    checker.monoid(OpRole::Combine, p.tnorm(), 1.0, &triples);
    checker.monoid(OpRole::Aggregate, p.tconorm(), 0.0, &triples);
    if let Some(neg) = p.negation() {
        for &[a, b, _] in &triples {
            if !close(neg(neg(a)), a, tol) {
                checker.record(OpRole::Negation, Axiom::Involution, &[a]);
            }
            let dual = neg(p.tnorm().apply(neg(a), neg(b)));
            if !close(p.tconorm().apply(a, b), dual, tol) {
                checker.record(OpRole::Negation, Axiom::DeMorgan, &[a, b]);
            }
        }
    }
    AxiomReport {
        structure: p.name().to_string(),
        samples: triples.len(),
        violations: checker.violations,
    }
}
