//! Discrete measure spaces, partitions, measurable functions, exponents, and
//! the reduction of point-level data to per-atom aggregates.
//!
//! A [`PointSpace`] is a finite set of labelled points with strictly positive
//! masses. A [`Partition`] groups those points into disjoint blocks; each
//! block plays the role of an atom of the coarser measurable structure.
//! Asymptotic behaviour beyond any finite materialization lives in
//! [`AtomProfile`] rules and [`TailCertificate`]s, never in the point set
//! itself.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::LambertError;
use crate::sum::{compensated_sum, CompensatedSum};

/// Identifier of a single point (a minimal atom of the fine structure).
///
/// Gallery instances use the natural number of the modelled sequence space as
/// the identifier, so weight rules like `n -> n^{-3}` can read it directly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointId(pub u64);

impl std::fmt::Display for PointId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Finite discrete measure space: ordered distinct points with positive masses.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSpace {
    points: Vec<PointId>,
    masses: Vec<f64>,
    positions: HashMap<PointId, usize>,
}

impl PointSpace {
    pub fn new(points: Vec<PointId>, masses: Vec<f64>) -> Result<Self, LambertError> {
        if points.is_empty() {
            return Err(LambertError::EmptySpace);
        }
        if points.len() != masses.len() {
            return Err(LambertError::LengthMismatch {
                expected: points.len(),
                got: masses.len(),
            });
        }
        for (index, &mass) in masses.iter().enumerate() {
            if !(mass.is_finite() && mass > 0.0) {
                return Err(LambertError::BadMass { index, mass });
            }
        }
        let mut positions = HashMap::with_capacity(points.len());
        for (pos, &id) in points.iter().enumerate() {
            if positions.insert(id, pos).is_some() {
                return Err(LambertError::DuplicatePoint(id.0));
            }
        }
        Ok(Self {
            points,
            masses,
            positions,
        })
    }

    /// Space over points `1..=n` with unit masses (counting measure).
    pub fn counting(n: usize) -> Result<Self, LambertError> {
        Self::new((1..=n as u64).map(PointId).collect(), vec![1.0; n])
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false // construction requires at least one point
    }

    pub fn points(&self) -> &[PointId] {
        &self.points
    }

    pub fn mass(&self, position: usize) -> f64 {
        self.masses[position]
    }

    pub fn masses(&self) -> &[f64] {
        &self.masses
    }

    pub fn position(&self, id: PointId) -> Option<usize> {
        self.positions.get(&id).copied()
    }

    pub fn total_mass(&self) -> f64 {
        compensated_sum(self.masses.iter().copied())
    }
}

/// Real-valued function given by one finite value per point of a space.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurableFunction {
    values: Vec<f64>,
}

impl MeasurableFunction {
    pub fn new(values: Vec<f64>) -> Result<Self, LambertError> {
        for (index, v) in values.iter().enumerate() {
            if !v.is_finite() {
                return Err(LambertError::NonFiniteValue { index });
            }
        }
        Ok(Self { values })
    }

    pub fn constant(len: usize, value: f64) -> Result<Self, LambertError> {
        Self::new(vec![value; len])
    }

    /// Evaluate a rule on every point identifier of `space`, in point order.
    pub fn from_fn(
        space: &PointSpace,
        mut rule: impl FnMut(PointId) -> f64,
    ) -> Result<Self, LambertError> {
        Self::new(space.points().iter().map(|&id| rule(id)).collect())
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn value(&self, position: usize) -> f64 {
        self.values[position]
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

/// Conjugate exponent: the solution of `1/p + 1/p' = 1`, with `conj(1) = ∞`.
pub fn conjugate_exponent(p: f64) -> Result<f64, LambertError> {
    if !p.is_finite() || p < 1.0 {
        return Err(LambertError::InvalidExponent(p));
    }
    if p == 1.0 {
        Ok(f64::INFINITY)
    } else {
        Ok(p / (p - 1.0))
    }
}

/// Source/target exponent pair with derived conjugates.
///
/// Both `p` and `q` must be finite and at least 1; the conjugates may be the
/// distinguished value `∞` (for `p = 1` or `q = 1`) but never appear as
/// source or target exponents themselves.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Exponents {
    p: f64,
    q: f64,
    p_conj: f64,
    q_conj: f64,
}

impl Exponents {
    pub fn new(p: f64, q: f64) -> Result<Self, LambertError> {
        if !p.is_finite() || p < 1.0 {
            return Err(LambertError::InvalidExponent(p));
        }
        if !q.is_finite() || q < 1.0 {
            return Err(LambertError::InvalidExponent(q));
        }
        Ok(Self {
            p,
            q,
            p_conj: conjugate_exponent(p)?,
            q_conj: conjugate_exponent(q)?,
        })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn p_conj(&self) -> f64 {
        self.p_conj
    }

    pub fn q_conj(&self) -> f64 {
        self.q_conj
    }

    /// Exponent applied to `|u|` in per-atom aggregates: `p'` for `p > 1`,
    /// `q'` in the `p = 1` source case.
    pub fn u_exponent(&self) -> f64 {
        if self.p > 1.0 {
            self.p_conj
        } else {
            self.q_conj
        }
    }

    /// Exponent applied to `|w|` in per-atom aggregates (always `q`).
    pub fn w_exponent(&self) -> f64 {
        self.q
    }

    /// Summability exponent `r = 1/(1/q - 1/p)` of the series test, defined
    /// whenever `q < p`. Tends to `p'` as `q -> 1`.
    pub fn series_exponent(&self) -> Option<f64> {
        if self.q < self.p {
            Some(1.0 / (1.0 / self.q - 1.0 / self.p))
        } else {
            None
        }
    }
}

/// Weighted p-norm `(Σ_x |f(x)|^p μ({x}))^{1/p}`, with `max |f|` for `p = ∞`.
pub fn lp_norm(f: &MeasurableFunction, p: f64, space: &PointSpace) -> f64 {
    assert_eq!(
        f.len(),
        space.len(),
        "function must be defined on every point of the space"
    );
    assert!(p >= 1.0, "norm exponent must be at least 1");
    if p == f64::INFINITY {
        return f.sup_norm();
    }
    let mut acc = CompensatedSum::new();
    for (pos, v) in f.values().iter().enumerate() {
        acc.add(v.abs().powf(p) * space.mass(pos));
    }
    acc.value().powf(1.0 / p)
}

/// Disjoint blocks of points covering a [`PointSpace`]; each block is an atom
/// of the coarse structure. Atoms are indexed 1-based in every public API.
#[derive(Debug, Clone, PartialEq)]
pub struct Partition {
    blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
}

impl Partition {
    pub fn new(space: &PointSpace, blocks: Vec<Vec<PointId>>) -> Result<Self, LambertError> {
        let mut block_of = vec![usize::MAX; space.len()];
        let mut resolved = Vec::with_capacity(blocks.len());
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(LambertError::EmptyBlock { block: b + 1 });
            }
            let mut positions = Vec::with_capacity(block.len());
            for &id in block {
                let pos = space
                    .position(id)
                    .ok_or(LambertError::UnknownPoint {
                        point: id.0,
                        block: b + 1,
                    })?;
                if block_of[pos] != usize::MAX {
                    return Err(LambertError::OverlappingBlocks { point: id.0 });
                }
                block_of[pos] = b;
                positions.push(pos);
            }
            resolved.push(positions);
        }
        if let Some(pos) = block_of.iter().position(|&b| b == usize::MAX) {
            return Err(LambertError::UncoveredPoint {
                point: space.points()[pos].0,
            });
        }
        Ok(Self {
            blocks: resolved,
            block_of,
        })
    }

    /// Finest partition: one singleton block per point, in point order.
    pub fn singletons(space: &PointSpace) -> Self {
        Self {
            blocks: (0..space.len()).map(|p| vec![p]).collect(),
            block_of: (0..space.len()).collect(),
        }
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// Point positions of atom `n` (1-based).
    pub fn block(&self, n: usize) -> &[usize] {
        &self.blocks[n - 1]
    }

    pub fn blocks(&self) -> impl Iterator<Item = &[usize]> {
        self.blocks.iter().map(|b| b.as_slice())
    }

    /// 1-based atom index of the block containing the point at `position`.
    pub fn block_index_of(&self, position: usize) -> usize {
        self.block_of[position] + 1
    }

    pub fn block_mass(&self, space: &PointSpace, n: usize) -> f64 {
        compensated_sum(self.block(n).iter().map(|&pos| space.mass(pos)))
    }
}

/// Partition by the preimage classes of a labelling map, blocks ordered by
/// first occurrence in point order.
pub fn partition_from_map<L: Eq + std::hash::Hash>(
    space: &PointSpace,
    mut label: impl FnMut(PointId) -> L,
) -> Partition {
    let mut block_ids: HashMap<L, usize> = HashMap::new();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut block_of = vec![0usize; space.len()];
    for (pos, &id) in space.points().iter().enumerate() {
        let lab = label(id);
        let next = blocks.len();
        let b = *block_ids.entry(lab).or_insert(next);
        if b == blocks.len() {
            blocks.push(Vec::new());
        }
        blocks[b].push(pos);
        block_of[pos] = b;
    }
    Partition { blocks, block_of }
}

/// Per-atom aggregates: the atom measure and the conditional averages of the
/// two weight powers on that atom.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AtomStat {
    /// Atom measure `μ(A_n) > 0`.
    pub mu: f64,
    /// Conditional average of `|u|` raised to the active conjugate exponent.
    pub eu: f64,
    /// Conditional average of `|w|^q`.
    pub ew: f64,
}

impl AtomStat {
    pub fn new(mu: f64, eu: f64, ew: f64) -> Result<Self, LambertError> {
        if !(mu.is_finite() && mu > 0.0) {
            return Err(LambertError::BadAtomStat(format!(
                "mu must be positive and finite: got {mu}"
            )));
        }
        if !(eu.is_finite() && eu >= 0.0) {
            return Err(LambertError::BadAtomStat(format!(
                "eu must be nonnegative and finite: got {eu}"
            )));
        }
        if !(ew.is_finite() && ew >= 0.0) {
            return Err(LambertError::BadAtomStat(format!(
                "ew must be nonnegative and finite: got {ew}"
            )));
        }
        Ok(Self { mu, eu, ew })
    }
}

/// Envelope family of a [`TailCertificate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TailKind {
    /// Terms are exactly zero for indices past `last`.
    FinitelySupported { last: usize },
    /// Envelope `n^{-exponent}`.
    PowerLaw { exponent: f64 },
    /// Envelope `ratio^n` with `ratio` in (0, 1).
    Geometric { ratio: f64 },
}

/// Trusted two-sided envelope on criterion terms past a threshold index:
/// `c_lower·env(n) ≤ term_n ≤ c_upper·env(n)` for all `n > from`.
///
/// The certificate refers to the terms of whichever criterion it accompanies
/// (series terms for a series test, gauge terms for a limit test). It is what
/// makes infinite series and limit conditions decidable; the checker treats
/// it as trusted input.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailCertificate {
    pub kind: TailKind,
    pub c_lower: f64,
    pub c_upper: f64,
    /// Envelope holds for indices strictly beyond this threshold.
    pub from: usize,
}

impl TailCertificate {
    pub fn new(kind: TailKind, c_lower: f64, c_upper: f64, from: usize) -> Result<Self, LambertError> {
        if !(c_lower.is_finite() && c_lower >= 0.0) {
            return Err(LambertError::BadCertificate(format!(
                "c_lower must be nonnegative and finite: got {c_lower}"
            )));
        }
        if !(c_upper.is_finite() && c_upper >= c_lower) {
            return Err(LambertError::BadCertificate(format!(
                "c_upper must be finite and at least c_lower: got {c_upper}"
            )));
        }
        match kind {
            TailKind::Geometric { ratio } => {
                if !(ratio > 0.0 && ratio < 1.0) {
                    return Err(LambertError::BadCertificate(format!(
                        "geometric ratio must lie in (0, 1): got {ratio}"
                    )));
                }
            }
            TailKind::PowerLaw { exponent } => {
                if !exponent.is_finite() {
                    return Err(LambertError::BadCertificate(format!(
                        "power-law exponent must be finite: got {exponent}"
                    )));
                }
            }
            TailKind::FinitelySupported { .. } => {}
        }
        Ok(Self {
            kind,
            c_lower,
            c_upper,
            from,
        })
    }

    pub fn finitely_supported(last: usize) -> Self {
        Self {
            kind: TailKind::FinitelySupported { last },
            c_lower: 0.0,
            c_upper: 0.0,
            from: last,
        }
    }

    pub fn power_law(exponent: f64, c_lower: f64, c_upper: f64, from: usize) -> Result<Self, LambertError> {
        Self::new(TailKind::PowerLaw { exponent }, c_lower, c_upper, from)
    }

    pub fn geometric(ratio: f64, c_lower: f64, c_upper: f64, from: usize) -> Result<Self, LambertError> {
        Self::new(TailKind::Geometric { ratio }, c_lower, c_upper, from)
    }

    /// Does the certified envelope decide `Σ term_n < ∞`?
    /// `Some(true)` = converges, `Some(false)` = diverges, `None` = undecided.
    pub fn series_converges(&self) -> Option<bool> {
        if self.c_upper == 0.0 {
            return Some(true);
        }
        match self.kind {
            TailKind::FinitelySupported { .. } => Some(true),
            TailKind::Geometric { .. } => Some(true),
            TailKind::PowerLaw { exponent } => {
                if exponent > 1.0 {
                    Some(true)
                } else if self.c_lower > 0.0 {
                    Some(false)
                } else {
                    None
                }
            }
        }
    }

    /// Does the certified envelope decide `term_n -> 0`?
    pub fn limit_is_zero(&self) -> Option<bool> {
        if self.c_upper == 0.0 {
            return Some(true);
        }
        match self.kind {
            TailKind::FinitelySupported { .. } => Some(true),
            TailKind::Geometric { .. } => Some(true),
            TailKind::PowerLaw { exponent } => {
                if exponent > 0.0 {
                    Some(true)
                } else if self.c_lower > 0.0 {
                    Some(false)
                } else {
                    None
                }
            }
        }
    }
}

type AtomRule = Arc<dyn Fn(usize) -> AtomStat + Send + Sync>;

/// Per-atom aggregate sequence: a materialized head, an optional pure rule
/// for indices beyond the head, and an optional tail certificate.
///
/// A profile is *complete* when its head enumerates every atom of the
/// instance; criteria then decide by finite evaluation. An incomplete
/// profile stands for an infinite atom sequence: certified verdicts need a
/// tail certificate, otherwise only heuristic diagnostics are possible.
#[derive(Clone)]
pub struct AtomProfile {
    head: Vec<AtomStat>,
    rule: Option<AtomRule>,
    tail: Option<TailCertificate>,
    complete: bool,
}

impl std::fmt::Debug for AtomProfile {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("AtomProfile")
            .field("head", &self.head.len())
            .field("rule", &self.rule.is_some())
            .field("tail", &self.tail)
            .field("complete", &self.complete)
            .finish()
    }
}

impl AtomProfile {
    /// Profile whose head lists every atom of the instance.
    pub fn finite(head: Vec<AtomStat>) -> Self {
        Self {
            head,
            rule: None,
            tail: None,
            complete: true,
        }
    }

    /// Materialized head of an infinite atom sequence, with nothing known
    /// beyond it.
    pub fn open(head: Vec<AtomStat>) -> Self {
        Self {
            head,
            rule: None,
            tail: None,
            complete: false,
        }
    }

    /// Infinite profile generated by a pure rule; the first `materialized`
    /// stats are cached as the head, so head and rule agree by construction.
    pub fn from_rule(
        materialized: usize,
        rule: impl Fn(usize) -> AtomStat + Send + Sync + 'static,
    ) -> Self {
        let head = (1..=materialized).map(&rule).collect();
        Self {
            head,
            rule: Some(Arc::new(rule)),
            tail: None,
            complete: false,
        }
    }

    /// Attach a tail certificate. The profile becomes (or stays) incomplete:
    /// a certificate describes terms beyond any finite enumeration.
    pub fn with_tail(mut self, tail: TailCertificate) -> Self {
        self.tail = Some(tail);
        self.complete = false;
        self
    }

    pub fn head_len(&self) -> usize {
        self.head.len()
    }

    pub fn head(&self) -> &[AtomStat] {
        &self.head
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn has_rule(&self) -> bool {
        self.rule.is_some()
    }

    pub fn tail(&self) -> Option<&TailCertificate> {
        self.tail.as_ref()
    }

    /// Statistic of atom `n` (1-based), from the head or the rule.
    pub fn stat(&self, n: usize) -> Option<AtomStat> {
        if n == 0 {
            return None;
        }
        if n <= self.head.len() {
            return Some(self.head[n - 1]);
        }
        if self.complete {
            return None;
        }
        self.rule.as_ref().map(|rule| rule(n))
    }

    /// Number of stats reachable by direct evaluation, capped at `horizon`.
    pub fn materializable(&self, horizon: usize) -> usize {
        if self.rule.is_some() {
            horizon.max(self.head.len()).min(horizon.max(self.head.len()))
        } else {
            self.head.len()
        }
        .min(if self.rule.is_some() {
            horizon.max(self.head.len())
        } else {
            self.head.len()
        })
    }
}

/// Which区 level a sampled region proxies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegionLevel {
    /// Non-atomic part of the coarse structure (the complement of the atoms).
    ALevel,
    /// Non-atomic part of the fine structure.
    SigmaLevel,
}

/// One trusted sample of a non-atomic region: a positive mass together with
/// the local values of the two weight aggregates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionSample {
    pub mass: f64,
    pub ew: f64,
    pub eu: f64,
}

/// Sampled proxy for a non-atomic region; used for the "zero almost
/// everywhere" checks that continuous parts of an instance require.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledRegion {
    pub level: RegionLevel,
    samples: Vec<RegionSample>,
}

impl SampledRegion {
    pub fn new(level: RegionLevel, samples: Vec<RegionSample>) -> Result<Self, LambertError> {
        for (index, s) in samples.iter().enumerate() {
            let ok = s.mass.is_finite()
                && s.mass > 0.0
                && s.ew.is_finite()
                && s.ew >= 0.0
                && s.eu.is_finite()
                && s.eu >= 0.0;
            if !ok {
                return Err(LambertError::BadRegionSample { index });
            }
        }
        Ok(Self { level, samples })
    }

    pub fn samples(&self) -> &[RegionSample] {
        &self.samples
    }
}

/// Reduce point-level data to the per-atom aggregate profile.
///
/// For each atom: `mu = Σ m_x`, `eu = Σ |u|^c m_x / mu`, `ew = Σ |w|^q m_x / mu`
/// where `c` is `p'` for `p > 1` and `q'` for `p = 1`. The result is a
/// complete profile.
pub fn profile_from_points(
    space: &PointSpace,
    partition: &Partition,
    u: &MeasurableFunction,
    w: &MeasurableFunction,
    exps: &Exponents,
) -> Result<AtomProfile, LambertError> {
    if u.len() != space.len() {
        return Err(LambertError::LengthMismatch {
            expected: space.len(),
            got: u.len(),
        });
    }
    if w.len() != space.len() {
        return Err(LambertError::LengthMismatch {
            expected: space.len(),
            got: w.len(),
        });
    }
    let ue = exps.u_exponent();
    let we = exps.w_exponent();
    if !ue.is_finite() {
        // p = q = 1 leaves no finite conjugate to aggregate u with.
        return Err(LambertError::WrongRegime {
            required: "p > 1 or q > 1",
            p: exps.p(),
            q: exps.q(),
        });
    }
    let mut stats = Vec::with_capacity(partition.block_count());
    for n in 1..=partition.block_count() {
        let block = partition.block(n);
        let mut mass = CompensatedSum::new();
        let mut su = CompensatedSum::new();
        let mut sw = CompensatedSum::new();
        for &pos in block {
            let m = space.mass(pos);
            mass.add(m);
            su.add(u.value(pos).abs().powf(ue) * m);
            sw.add(w.value(pos).abs().powf(we) * m);
        }
        let mu = mass.value();
        let eu = su.value() / mu;
        let ew = sw.value() / mu;
        if !eu.is_finite() {
            return Err(LambertError::AggregateOverflow {
                symbol: 'u',
                exponent: ue,
                atom: n,
            });
        }
        if !ew.is_finite() {
            return Err(LambertError::AggregateOverflow {
                symbol: 'w',
                exponent: we,
                atom: n,
            });
        }
        stats.push(AtomStat::new(mu, eu, ew)?);
    }
    Ok(AtomProfile::finite(stats))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space(masses: &[f64]) -> PointSpace {
        PointSpace::new(
            (1..=masses.len() as u64).map(PointId).collect(),
            masses.to_vec(),
        )
        .unwrap()
    }

    #[test]
    fn conjugate_fixed_point_and_convention() {
        assert_eq!(conjugate_exponent(2.0).unwrap(), 2.0);
        assert!((conjugate_exponent(3.0).unwrap() - 1.5).abs() < 1e-15);
        assert_eq!(conjugate_exponent(1.0).unwrap(), f64::INFINITY);
        assert!(conjugate_exponent(0.5).is_err());
    }

    #[test]
    fn lp_norm_small_cases() {
        let s = space(&[1.0, 1.0]);
        let f = MeasurableFunction::new(vec![3.0, 4.0]).unwrap();
        assert!((lp_norm(&f, 2.0, &s) - 5.0).abs() < 1e-14);

        let s3 = space(&[2.0, 3.0, 5.0]);
        let ones = MeasurableFunction::constant(3, 1.0).unwrap();
        assert!((lp_norm(&ones, 1.0, &s3) - 10.0).abs() < 1e-14);

        let zero = MeasurableFunction::constant(3, 0.0).unwrap();
        assert_eq!(lp_norm(&zero, 1.5, &s3), 0.0);

        let f = MeasurableFunction::new(vec![-7.0, 2.0, 0.5]).unwrap();
        assert_eq!(lp_norm(&f, f64::INFINITY, &s3), 7.0);
    }

    #[test]
    fn space_validation() {
        assert!(matches!(
            PointSpace::new(vec![], vec![]),
            Err(LambertError::EmptySpace)
        ));
        assert!(matches!(
            PointSpace::new(vec![PointId(1)], vec![0.0]),
            Err(LambertError::BadMass { .. })
        ));
        assert!(matches!(
            PointSpace::new(vec![PointId(1), PointId(1)], vec![1.0, 1.0]),
            Err(LambertError::DuplicatePoint(1))
        ));
    }

    #[test]
    fn partition_validation() {
        let s = space(&[1.0, 1.0, 1.0]);
        let ok = Partition::new(&s, vec![vec![PointId(1), PointId(3)], vec![PointId(2)]]).unwrap();
        assert_eq!(ok.block_count(), 2);
        assert_eq!(ok.block_index_of(s.position(PointId(3)).unwrap()), 1);

        assert!(matches!(
            Partition::new(&s, vec![vec![PointId(1)], vec![PointId(2)]]),
            Err(LambertError::UncoveredPoint { point: 3 })
        ));
        assert!(matches!(
            Partition::new(
                &s,
                vec![vec![PointId(1), PointId(2)], vec![PointId(2), PointId(3)]]
            ),
            Err(LambertError::OverlappingBlocks { point: 2 })
        ));
        assert!(matches!(
            Partition::new(&s, vec![vec![], vec![PointId(1), PointId(2), PointId(3)]]),
            Err(LambertError::EmptyBlock { block: 1 })
        ));
    }

    #[test]
    fn partition_from_map_orders_blocks_by_first_occurrence() {
        let s = space(&[1.0; 5]);
        // identity map: singleton blocks
        let fine = partition_from_map(&s, |id| id.0);
        assert_eq!(fine.block_count(), 5);
        // constant map: one block
        let coarse = partition_from_map(&s, |_| 0u64);
        assert_eq!(coarse.block_count(), 1);
        // pairing map: {1,2},{3},{4},{5}
        let paired = partition_from_map(&s, |id| if id.0 == 1 { 1 } else { id.0 - 1 });
        assert_eq!(paired.block_count(), 4);
        assert_eq!(paired.block(1).len(), 2);
        assert_eq!(paired.block(2), &[2]);
    }

    #[test]
    fn profile_constant_weights_average_to_one() {
        let s = space(&[0.5, 2.0, 1.0, 3.0]);
        let part = Partition::new(
            &s,
            vec![vec![PointId(1), PointId(2)], vec![PointId(3), PointId(4)]],
        )
        .unwrap();
        let one = MeasurableFunction::constant(4, 1.0).unwrap();
        let exps = Exponents::new(2.5, 1.7).unwrap();
        let profile = profile_from_points(&s, &part, &one, &one, &exps).unwrap();
        assert!(profile.is_complete());
        for stat in profile.head() {
            assert!((stat.eu - 1.0).abs() < 1e-15);
            assert!((stat.ew - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn profile_block_average_example() {
        // block {4,6}, unit masses, u(n) = n, p' = 2 -> eu = (16+36)/2 = 26
        let s = PointSpace::new(vec![PointId(4), PointId(6)], vec![1.0, 1.0]).unwrap();
        let part = Partition::new(&s, vec![vec![PointId(4), PointId(6)]]).unwrap();
        let u = MeasurableFunction::from_fn(&s, |id| id.0 as f64).unwrap();
        let w = MeasurableFunction::constant(2, 1.0).unwrap();
        let exps = Exponents::new(2.0, 2.0).unwrap();
        let profile = profile_from_points(&s, &part, &u, &w, &exps).unwrap();
        assert!((profile.stat(1).unwrap().eu - 26.0).abs() < 1e-12);
    }

    #[test]
    fn profile_overflow_is_reported() {
        let s = space(&[1.0]);
        let part = Partition::singletons(&s);
        let u = MeasurableFunction::constant(1, 1e300).unwrap();
        let w = MeasurableFunction::constant(1, 1.0).unwrap();
        let exps = Exponents::new(1.5, 2.0).unwrap(); // p' = 3: 1e900 overflows
        assert!(matches!(
            profile_from_points(&s, &part, &u, &w, &exps),
            Err(LambertError::AggregateOverflow { symbol: 'u', .. })
        ));
    }

    #[test]
    fn rule_profile_extends_head() {
        let profile = AtomProfile::from_rule(3, |n| {
            AtomStat::new(1.0, n as f64, 1.0 / n as f64).unwrap()
        });
        assert_eq!(profile.head_len(), 3);
        assert!(!profile.is_complete());
        assert_eq!(profile.stat(5).unwrap().eu, 5.0);
        // head and rule agree on the overlap by construction
        assert_eq!(profile.stat(2).unwrap().eu, 2.0);
    }

    #[test]
    fn certificate_validation_and_decisions() {
        assert!(TailCertificate::geometric(1.1, 0.0, 1.0, 0).is_err());
        assert!(TailCertificate::power_law(2.0, 1.0, 0.5, 0).is_err());

        let conv = TailCertificate::power_law(2.0, 0.5, 1.0, 2).unwrap();
        assert_eq!(conv.series_converges(), Some(true));
        assert_eq!(conv.limit_is_zero(), Some(true));

        let div = TailCertificate::power_law(1.0, 0.5, 1.0, 1).unwrap();
        assert_eq!(div.series_converges(), Some(false));
        assert_eq!(div.limit_is_zero(), Some(true));

        let constant = TailCertificate::power_law(0.0, 1.0, 1.0, 0).unwrap();
        assert_eq!(constant.limit_is_zero(), Some(false));

        let undecided = TailCertificate::power_law(0.5, 0.0, 1.0, 0).unwrap();
        assert_eq!(undecided.series_converges(), None);
        assert_eq!(undecided.limit_is_zero(), Some(true));

        let finite = TailCertificate::finitely_supported(10);
        assert_eq!(finite.series_converges(), Some(true));
        assert_eq!(finite.limit_is_zero(), Some(true));
    }

    #[test]
    fn region_sample_validation() {
        assert!(SampledRegion::new(
            RegionLevel::ALevel,
            vec![RegionSample {
                mass: 0.0,
                ew: 1.0,
                eu: 1.0
            }]
        )
        .is_err());
        let region = SampledRegion::new(RegionLevel::SigmaLevel, vec![]).unwrap();
        assert!(region.samples().is_empty());
    }
}
