//! Final-state magic distributions, equivalence classes and maxima.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::amplitude::{amplitude_matrix, SpinAmplitudeMatrix};
use crate::error::Error;
use crate::kinematics::{KinematicPoint, Process, Regime};
use crate::limits::{limit_amplitude, LimitAmplitude};
use crate::linalg::Vec4;
use crate::magic::MagicValue;
use crate::stabilizer::{stabilizer_catalog, CATALOG_LEN};

/// Where amplitude matrices come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Source {
    /// Full spinor calculation at a finite kinematic point.
    Engine,
    /// Analytic limit forms.
    Limit,
}

impl Source {
    pub fn name(self) -> &'static str {
        match self {
            Source::Engine => "engine",
            Source::Limit => "limit",
        }
    }
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Source {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s.to_ascii_lowercase().as_str() {
            "engine" => Ok(Source::Engine),
            "limit" => Ok(Source::Limit),
            _ => Err(Error::Parse {
                kind: "source",
                value: s.to_string(),
            }),
        }
    }
}

/// Numerical settings shared by scans.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScanConfig {
    /// Angular grid `θ_k = kπ/N`, `k = 1..N−1`.
    pub grid: usize,
    /// `|p⃗|/m_e` for low-energy engine evaluations.
    pub mu_low: f64,
    /// High-energy engine evaluations use `|p⃗| = factor × (heaviest mass)`.
    pub high_energy_factor: f64,
    /// Relative distance above the μ⁺μ⁻ threshold.
    pub threshold_eps: f64,
    /// Pointwise `M₂` agreement for grouping limit-form distributions.
    pub eps_class_limit: f64,
    /// Pointwise `M₂` agreement for grouping engine distributions.
    pub eps_class_engine: f64,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            grid: 180,
            mu_low: 1e-3,
            high_energy_factor: 1e6,
            threshold_eps: 1e-6,
            eps_class_limit: 1e-9,
            eps_class_engine: 1e-4,
        }
    }
}

impl ScanConfig {
    /// The same settings one decade deeper into every limit.
    pub fn one_decade_further(&self) -> Self {
        ScanConfig {
            mu_low: self.mu_low / 10.0,
            high_energy_factor: self.high_energy_factor * 10.0,
            threshold_eps: self.threshold_eps / 10.0,
            ..*self
        }
    }

    pub fn theta_grid(&self) -> Vec<f64> {
        theta_grid(self.grid)
    }

    pub fn eps_class(&self, source: Source) -> f64 {
        match source {
            Source::Engine => self.eps_class_engine,
            Source::Limit => self.eps_class_limit,
        }
    }

    /// Engine kinematic point representing `regime`.
    pub fn engine_point(
        &self,
        process: Process,
        regime: Regime,
        theta: f64,
        lambda: f64,
    ) -> Result<KinematicPoint, Error> {
        if !process.supports(regime) {
            return Err(Error::InvalidRegime { process, regime });
        }
        match regime {
            Regime::Threshold => KinematicPoint::above_threshold(theta, lambda, self.threshold_eps),
            Regime::Low => KinematicPoint::new(process, theta, lambda, self.mu_low),
            Regime::High => {
                let mu = self.high_energy_factor * process.heaviest_mass(lambda);
                KinematicPoint::new(process, theta, lambda, mu)
            }
        }
    }
}

/// `θ_k = kπ/N` for `k = 1..N−1`.
pub fn theta_grid(n: usize) -> Vec<f64> {
    (1..n).map(|k| k as f64 * PI / n as f64).collect()
}

/// An amplitude at one angle, from either source.
#[derive(Debug, Clone, Copy)]
pub enum AmplitudeAt {
    Engine(SpinAmplitudeMatrix),
    Limit(LimitAmplitude),
}

impl AmplitudeAt {
    pub fn new(
        process: Process,
        regime: Regime,
        theta: f64,
        lambda: f64,
        source: Source,
        cfg: &ScanConfig,
    ) -> Result<Self, Error> {
        match source {
            Source::Engine => {
                let pt = cfg.engine_point(process, regime, theta, lambda)?;
                Ok(AmplitudeAt::Engine(amplitude_matrix(&pt)))
            }
            Source::Limit => Ok(AmplitudeAt::Limit(limit_amplitude(
                process, regime, theta, lambda,
            )?)),
        }
    }

    /// Unnormalized final state, or `VanishingState`.
    pub fn final_state(&self, psi: &Vec4) -> Result<Vec4, Error> {
        match self {
            AmplitudeAt::Engine(a) => {
                let out = a.entries.apply(psi);
                out.normalize_relative(a.reference_scale())?;
                Ok(out)
            }
            AmplitudeAt::Limit(l) => l.final_state(psi),
        }
    }

    pub fn magic(&self, psi: &Vec4) -> Option<MagicValue> {
        let out = self.final_state(psi).ok()?;
        Some(MagicValue::of_state(&out.normalize_relative(0.0).ok()?))
    }

    /// Magic for every catalog state, index `id − 1`.
    pub fn magic_all(&self) -> Vec<Option<MagicValue>> {
        stabilizer_catalog().iter().map(|s| self.magic(&s.state)).collect()
    }
}

/// `M₂` of the final state from catalog state `id` at one point.
pub fn magic_at(
    process: Process,
    regime: Regime,
    theta: f64,
    lambda: f64,
    id: usize,
    source: Source,
    cfg: &ScanConfig,
) -> Result<Option<MagicValue>, Error> {
    let psi = crate::stabilizer::stabilizer(id)?.state;
    Ok(AmplitudeAt::new(process, regime, theta, lambda, source, cfg)?.magic(&psi))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum DistributionStatus {
    Normal,
    /// The amplitude annihilates the initial state at every sample.
    VanishingAmplitude,
    /// `M₂ < 1e-10` at every sample.
    ZeroMagic,
}

impl DistributionStatus {
    pub fn name(self) -> &'static str {
        match self {
            DistributionStatus::Normal => "normal",
            DistributionStatus::VanishingAmplitude => "vanishing_amplitude",
            DistributionStatus::ZeroMagic => "zero_magic",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Sample {
    pub theta: f64,
    pub xi2: Option<f64>,
    pub m2: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MagicDistribution {
    pub process: Process,
    pub regime: Regime,
    pub initial_id: usize,
    pub lambda: f64,
    pub source: Source,
    pub samples: Vec<Sample>,
    pub status: DistributionStatus,
}

pub const ZERO_MAGIC: f64 = 1e-10;

fn status_of(values: &[Option<f64>]) -> DistributionStatus {
    if values.iter().all(Option::is_none) {
        DistributionStatus::VanishingAmplitude
    } else if values.iter().flatten().all(|m| m.abs() < ZERO_MAGIC) {
        DistributionStatus::ZeroMagic
    } else {
        DistributionStatus::Normal
    }
}

/// Magic of all 60 catalog states at each grid angle, `[θ][id − 1]`.
fn magic_table(
    process: Process,
    regime: Regime,
    lambda: f64,
    source: Source,
    cfg: &ScanConfig,
    thetas: &[f64],
) -> Result<Vec<Vec<Option<MagicValue>>>, Error> {
    thetas
        .par_iter()
        .map(|&th| Ok(AmplitudeAt::new(process, regime, th, lambda, source, cfg)?.magic_all()))
        .collect()
}

/// Distributions for every catalog state over the default grid.
pub fn magic_distributions(
    process: Process,
    regime: Regime,
    lambda: f64,
    source: Source,
    cfg: &ScanConfig,
) -> Result<Vec<MagicDistribution>, Error> {
    let thetas = cfg.theta_grid();
    let table = magic_table(process, regime, lambda, source, cfg, &thetas)?;
    Ok((0..CATALOG_LEN)
        .map(|k| {
            let samples: Vec<Sample> = thetas
                .iter()
                .zip(&table)
                .map(|(&theta, row)| Sample {
                    theta,
                    xi2: row[k].map(|m| m.xi2),
                    m2: row[k].map(|m| m.m2),
                })
                .collect();
            let m2: Vec<Option<f64>> = samples.iter().map(|s| s.m2).collect();
            MagicDistribution {
                process,
                regime,
                initial_id: k + 1,
                lambda,
                source,
                status: status_of(&m2),
                samples,
            }
        })
        .collect())
}

pub fn magic_distribution(
    process: Process,
    regime: Regime,
    initial_id: usize,
    lambda: f64,
    source: Source,
    cfg: &ScanConfig,
) -> Result<MagicDistribution, Error> {
    crate::stabilizer::stabilizer(initial_id)?;
    let mut all = magic_distributions(process, regime, lambda, source, cfg)?;
    Ok(all.swap_remove(initial_id - 1))
}

/// Variable along which a class is compared and maximized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Axis {
    Theta,
    Lambda,
}

impl Axis {
    pub fn for_regime(regime: Regime) -> Self {
        if regime == Regime::Threshold {
            Axis::Lambda
        } else {
            Axis::Theta
        }
    }
}

/// Outcome of a maximum search.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum Maximum {
    /// The function is constant (within 1e-12).
    Flat { value: f64 },
    /// Global maximum and every argument reaching it within 1e-8.
    Peaks { value: f64, argmax: Vec<f64> },
    /// The function is undefined everywhere on the domain.
    Undefined,
}

impl Maximum {
    pub fn value(&self) -> Option<f64> {
        match self {
            Maximum::Flat { value } | Maximum::Peaks { value, .. } => Some(*value),
            Maximum::Undefined => None,
        }
    }

    pub fn argmax(&self) -> &[f64] {
        match self {
            Maximum::Peaks { argmax, .. } => argmax,
            _ => &[],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaxSearch {
    pub lo: f64,
    pub hi: f64,
    /// Whether the endpoints themselves belong to the domain.
    pub closed: bool,
    pub grid: usize,
}

impl MaxSearch {
    /// `θ ∈ (0, π)`.
    pub fn theta() -> Self {
        MaxSearch {
            lo: 0.0,
            hi: PI,
            closed: false,
            grid: 720,
        }
    }

    /// `λ ∈ [0, 1]`.
    pub fn lambda() -> Self {
        MaxSearch {
            lo: 0.0,
            hi: 1.0,
            closed: true,
            grid: 720,
        }
    }
}

const INV_PHI: f64 = 0.618_033_988_749_894_9;

fn value_or_floor(f: &dyn Fn(f64) -> Option<f64>, x: f64) -> f64 {
    f(x).filter(|v| v.is_finite()).unwrap_or(f64::NEG_INFINITY)
}

fn golden_section(f: &dyn Fn(f64) -> Option<f64>, mut a: f64, mut b: f64) -> f64 {
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = value_or_floor(f, c);
    let mut fd = value_or_floor(f, d);
    while b - a > 1e-10 {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = value_or_floor(f, c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = value_or_floor(f, d);
        }
    }
    0.5 * (a + b)
}

/// Refine an interior maximum as the root of a central-difference slope.
fn polish(f: &dyn Fn(f64) -> Option<f64>, x: f64, lo: f64, hi: f64) -> f64 {
    const H: f64 = 1e-5;
    const DELTA: f64 = 1e-6;
    let slope = |t: f64| -> Option<f64> {
        if t - H <= lo || t + H >= hi {
            return None;
        }
        Some((f(t + H)? - f(t - H)?) / (2.0 * H))
    };
    let (mut a, mut b) = (x - DELTA, x + DELTA);
    let (Some(ga), Some(gb)) = (slope(a), slope(b)) else {
        return x;
    };
    if !(ga > 0.0 && gb < 0.0) {
        return x;
    }
    for _ in 0..60 {
        let m = 0.5 * (a + b);
        match slope(m) {
            Some(g) if g > 0.0 => a = m,
            Some(_) => b = m,
            None => return x,
        }
        if b - a < 1e-14 {
            break;
        }
    }
    0.5 * (a + b)
}

/// Global maxima of `f` on the search domain: grid scan, golden-section
/// refinement of each local grid maximum, then a slope-root polish.
pub fn find_maximum(f: &dyn Fn(f64) -> Option<f64>, search: &MaxSearch) -> Maximum {
    let n = search.grid.max(4);
    let step = (search.hi - search.lo) / n as f64;
    let range = if search.closed { 0..=n } else { 1..=(n - 1) };
    let xs: Vec<f64> = range.map(|k| search.lo + k as f64 * step).collect();
    let vs: Vec<f64> = xs.iter().map(|&x| value_or_floor(f, x)).collect();

    let defined: Vec<f64> = vs.iter().copied().filter(|v| v.is_finite()).collect();
    if defined.is_empty() {
        return Maximum::Undefined;
    }
    let gmax = defined.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let gmin = defined.iter().copied().fold(f64::INFINITY, f64::min);
    if gmax - gmin < 1e-12 {
        return Maximum::Flat { value: gmax };
    }

    let mut found: Vec<(f64, f64)> = Vec::new();
    for k in 0..xs.len() {
        if !vs[k].is_finite() {
            continue;
        }
        let left = if k > 0 { vs[k - 1] } else { f64::NEG_INFINITY };
        let right = if k + 1 < xs.len() { vs[k + 1] } else { f64::NEG_INFINITY };
        if vs[k] < left || vs[k] < right {
            continue;
        }
        let a = if k > 0 { xs[k - 1] } else { xs[k] };
        let b = if k + 1 < xs.len() { xs[k + 1] } else { xs[k] };
        let mut x = if a < b { golden_section(f, a, b) } else { xs[k] };
        if search.closed {
            // Keep exact endpoints when the maximum sits on the boundary.
            for edge in [search.lo, search.hi] {
                if (x - edge).abs() < 1e-6 && value_or_floor(f, edge) >= value_or_floor(f, x) - 1e-14 {
                    x = edge;
                }
            }
        }
        x = polish(f, x, search.lo, search.hi);
        let v = value_or_floor(f, x);
        if v.is_finite() {
            found.push((x, v));
        }
    }
    let value = found.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
    let mut peaks: Vec<(f64, f64)> = found.into_iter().filter(|p| p.1 >= value - 1e-8).collect();
    peaks.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut argmax: Vec<f64> = Vec::new();
    let mut best: Vec<f64> = Vec::new();
    for (x, v) in peaks {
        match argmax.last() {
            Some(&prev) if (x - prev).abs() < 1e-6 => {
                if v > *best.last().unwrap() {
                    *argmax.last_mut().unwrap() = x;
                    *best.last_mut().unwrap() = v;
                }
            }
            _ => {
                argmax.push(x);
                best.push(v);
            }
        }
    }
    Maximum::Peaks { value, argmax }
}

/// Continuous `M₂` of one catalog state along the class axis.
pub fn magic_curve(
    process: Process,
    regime: Regime,
    id: usize,
    lambda: f64,
    source: Source,
    cfg: ScanConfig,
) -> impl Fn(f64) -> Option<f64> {
    let psi = stabilizer_catalog()[id - 1].state;
    let axis = Axis::for_regime(regime);
    move |x: f64| {
        let (theta, lam) = match axis {
            Axis::Theta => (x, lambda),
            Axis::Lambda => (PI / 3.0, x),
        };
        AmplitudeAt::new(process, regime, theta, lam, source, &cfg)
            .ok()?
            .magic(&psi)
            .map(|m| m.m2)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistributionClass {
    pub representative: usize,
    pub members: Vec<usize>,
    pub status: DistributionStatus,
    pub maximum: Maximum,
}

impl DistributionClass {
    pub fn contains(&self, id: usize) -> bool {
        self.members.contains(&id)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassificationReport {
    pub process: Process,
    pub regime: Regime,
    pub lambda: f64,
    pub source: Source,
    pub axis: Axis,
    pub classes: Vec<DistributionClass>,
}

impl ClassificationReport {
    pub fn class_of(&self, id: usize) -> Option<&DistributionClass> {
        self.classes.iter().find(|c| c.contains(id))
    }

    /// Classes other than the vanishing one.
    pub fn distribution_count(&self) -> usize {
        self.classes
            .iter()
            .filter(|c| c.status != DistributionStatus::VanishingAmplitude)
            .count()
    }
}

/// Whether two sampled curves agree within `eps` wherever both are defined.
pub fn same_distribution(a: &[Option<f64>], b: &[Option<f64>], eps: f64) -> bool {
    let mut shared = 0usize;
    let mut only_one = 0usize;
    for (x, y) in a.iter().zip(b) {
        match (x, y) {
            (Some(x), Some(y)) => {
                if (x - y).abs() > eps {
                    return false;
                }
                shared += 1;
            }
            (None, None) => {}
            _ => only_one += 1,
        }
    }
    // Isolated undefined points are tolerated, systematic ones are not.
    shared > 0 && only_one * 20 <= shared
}

/// Sampled `M₂` for every catalog state along the class axis, `[id − 1][k]`.
pub fn class_samples(
    process: Process,
    regime: Regime,
    lambda: f64,
    source: Source,
    cfg: &ScanConfig,
) -> Result<Vec<Vec<Option<f64>>>, Error> {
    let axis = Axis::for_regime(regime);
    let points: Vec<(f64, f64)> = match axis {
        Axis::Theta => cfg.theta_grid().into_iter().map(|t| (t, lambda)).collect(),
        Axis::Lambda => (1..=cfg.grid)
            .map(|k| (PI / 3.0, k as f64 / cfg.grid as f64))
            .collect(),
    };
    let table: Vec<Vec<Option<MagicValue>>> = points
        .par_iter()
        .map(|&(t, l)| Ok(AmplitudeAt::new(process, regime, t, l, source, cfg)?.magic_all()))
        .collect::<Result<_, Error>>()?;
    Ok((0..CATALOG_LEN)
        .map(|k| table.iter().map(|row| row[k].map(|m| m.m2)).collect())
        .collect())
}

/// Group the 60 catalog states by their magic distribution.
pub fn classify(
    process: Process,
    regime: Regime,
    lambda: f64,
    source: Source,
    cfg: &ScanConfig,
) -> Result<ClassificationReport, Error> {
    if !process.supports(regime) {
        return Err(Error::InvalidRegime { process, regime });
    }
    let samples = class_samples(process, regime, lambda, source, cfg)?;
    let eps = cfg.eps_class(source);
    let mut groups: Vec<(usize, Vec<usize>, DistributionStatus)> = Vec::new();
    for (k, curve) in samples.iter().enumerate() {
        let id = k + 1;
        let status = status_of(curve);
        let slot = groups.iter_mut().find(|(rep, _, st)| {
            *st == status
                && (status == DistributionStatus::VanishingAmplitude
                    || same_distribution(&samples[rep - 1], curve, eps))
        });
        match slot {
            Some((_, members, _)) => members.push(id),
            None => groups.push((id, vec![id], status)),
        }
    }
    let axis = Axis::for_regime(regime);
    let search = match axis {
        Axis::Theta => MaxSearch::theta(),
        Axis::Lambda if source == Source::Engine => MaxSearch {
            lo: 1e-3,
            ..MaxSearch::lambda()
        },
        Axis::Lambda => MaxSearch::lambda(),
    };
    let classes = groups
        .into_par_iter()
        .map(|(rep, members, status)| {
            let maximum = match status {
                DistributionStatus::VanishingAmplitude => Maximum::Undefined,
                DistributionStatus::ZeroMagic => Maximum::Flat { value: 0.0 },
                DistributionStatus::Normal => {
                    let f = magic_curve(process, regime, rep, lambda, source, *cfg);
                    find_maximum(&f, &search)
                }
            };
            DistributionClass {
                representative: rep,
                members,
                status,
                maximum,
            }
        })
        .collect();
    Ok(ClassificationReport {
        process,
        regime,
        lambda,
        source,
        axis,
        classes,
    })
}

/// For each `λ`, the largest `M₂` over `θ` reached from catalog state 13 in
/// low-energy μ⁻μ⁺ → e⁻e⁺ (analytic limit form).
pub fn g8_max_curve(lambdas: &[f64]) -> Vec<(f64, f64)> {
    let cfg = ScanConfig::default();
    lambdas
        .par_iter()
        .map(|&l| {
            let f = magic_curve(Process::MuMuToEe, Regime::Low, 13, l, Source::Limit, cfg);
            let v = find_maximum(&f, &MaxSearch::theta()).value().unwrap_or(f64::NAN);
            (l, v)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::limits::{closed_form_xi2, ClosedForm};

    #[test]
    fn grid_excludes_endpoints() {
        let g = theta_grid(180);
        assert_eq!(g.len(), 179);
        assert!(g[0] > 0.0 && *g.last().unwrap() < PI);
    }

    #[test]
    fn max_of_f3_curve() {
        let f = |t: f64| Some(-closed_form_xi2(ClosedForm::F3, t, 0.0).ln());
        let m = find_maximum(&f, &MaxSearch::theta());
        let t0 = (2.0 * 2f64.sqrt()).atan();
        assert!((m.value().unwrap() - (9.0f64 / 5.0).ln()).abs() < 1e-12);
        let am = m.argmax();
        assert_eq!(am.len(), 2);
        assert!((am[0] - t0).abs() < 1e-8, "{}", am[0] - t0);
        assert!((am[1] - (PI - t0)).abs() < 1e-8);
    }

    #[test]
    fn max_of_g1_over_lambda() {
        let f = |l: f64| Some(-closed_form_xi2(ClosedForm::G1, 0.0, l).ln());
        let m = find_maximum(&f, &MaxSearch::lambda());
        assert!((m.value().unwrap() - (4.0f64 / 3.0).ln()).abs() < 1e-12);
        assert!((m.argmax()[0] - (2f64.sqrt() - 1.0)).abs() < 1e-8);
    }

    #[test]
    fn endpoint_maximum_on_closed_domain() {
        let f = |l: f64| Some(-closed_form_xi2(ClosedForm::G2, 0.0, l).ln());
        let m = find_maximum(&f, &MaxSearch::lambda());
        assert_eq!(m.argmax(), &[1.0]);
    }

    #[test]
    fn flat_function() {
        let f = |_t: f64| Some(0.0);
        assert_eq!(find_maximum(&f, &MaxSearch::theta()), Maximum::Flat { value: 0.0 });
        let g = |_t: f64| None;
        assert_eq!(find_maximum(&g, &MaxSearch::theta()), Maximum::Undefined);
    }

    #[test]
    fn bhabha_low_all_zero_magic() {
        let d = magic_distributions(Process::Bhabha, Regime::Low, 0.005, Source::Limit, &ScanConfig::default()).unwrap();
        assert!(d.iter().all(|x| x.status == DistributionStatus::ZeroMagic));
    }

    #[test]
    fn threshold_41_vanishes() {
        let d = magic_distribution(Process::EeToMuMu, Regime::Threshold, 41, 0.005, Source::Engine, &ScanConfig::default()).unwrap();
        assert_eq!(d.status, DistributionStatus::VanishingAmplitude);
    }

    #[test]
    fn same_distribution_tolerates_isolated_gaps() {
        let a: Vec<Option<f64>> = (0..100).map(|k| Some(k as f64)).collect();
        let mut b = a.clone();
        b[50] = None;
        assert!(same_distribution(&a, &b, 1e-9));
        b[10] = Some(10.1);
        assert!(!same_distribution(&a, &b, 1e-9));
    }
}
