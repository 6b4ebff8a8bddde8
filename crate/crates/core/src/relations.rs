//! Functional identities between the numerically defined distributions.
//!
//! Distributions without a closed form are represented by the `Ξ₂(θ)` of
//! their first member in the reference tables.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use serde::Serialize;

use crate::error::Error;
use crate::kinematics::{Process, Regime};
use crate::limits::{closed_form_xi2, ClosedForm};
use crate::scan::{class_samples, g8_max_curve, theta_grid, AmplitudeAt, ScanConfig, Source};
use crate::stabilizer::stabilizer_catalog;
use crate::tables::{expected_rows, TableId};

/// Pointwise tolerance for functional identities.
pub const TOL_RELATION: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RelationCheck {
    pub name: String,
    pub max_deviation: f64,
    pub tolerance: f64,
    /// Points where both sides were defined.
    pub points: usize,
    /// Points skipped because one side was undefined.
    pub skipped: usize,
    /// Reported only; does not affect the verdict.
    pub informational: bool,
}

impl RelationCheck {
    pub fn passed(&self) -> bool {
        self.points > 0 && self.max_deviation <= self.tolerance
    }
}

/// `Ξ₂(θ)` of catalog state `id`.
pub fn xi2_curve(
    process: Process,
    regime: Regime,
    id: usize,
    lambda: f64,
    source: Source,
    cfg: ScanConfig,
) -> impl Fn(f64) -> Option<f64> {
    let psi = stabilizer_catalog()[id - 1].state;
    move |theta: f64| {
        AmplitudeAt::new(process, regime, theta, lambda, source, &cfg)
            .ok()?
            .magic(&psi)
            .map(|m| m.xi2)
    }
}

fn inside(theta: f64) -> bool {
    theta > 1e-12 && theta < PI - 1e-12
}

/// Compare `lhs(θ)` and `rhs(θ)` on the grid points where both are defined.
pub fn compare_on_grid(
    name: impl Into<String>,
    grid: &[f64],
    lhs: impl Fn(f64) -> Option<f64>,
    rhs: impl Fn(f64) -> Option<f64>,
    tolerance: f64,
) -> RelationCheck {
    let mut dev = 0.0f64;
    let (mut points, mut skipped) = (0, 0);
    for &x in grid {
        match (lhs(x), rhs(x)) {
            (Some(a), Some(b)) => {
                dev = dev.max((a - b).abs());
                points += 1;
            }
            _ => skipped += 1,
        }
    }
    RelationCheck {
        name: name.into(),
        max_deviation: dev,
        tolerance,
        points,
        skipped,
        informational: false,
    }
}

fn representative(table: TableId, label: &str) -> usize {
    expected_rows(table)
        .into_iter()
        .find(|r| r.label == Some(label))
        .map(|r| r.members[0])
        .unwrap_or_else(|| panic!("no row {label} in table {table}"))
}

fn g(label: &str, lambda: f64, cfg: ScanConfig) -> impl Fn(f64) -> Option<f64> {
    let id = representative(TableId::III, label);
    xi2_curve(Process::MuMuToEe, Regime::Low, id, lambda, Source::Limit, cfg)
}

/// Shift the argument, returning `None` outside `(0, π)`.
fn shifted(f: impl Fn(f64) -> Option<f64>, map: impl Fn(f64) -> f64) -> impl Fn(f64) -> Option<f64> {
    move |t| {
        let x = map(t);
        if inside(x) {
            f(x)
        } else {
            None
        }
    }
}

/// Reflection and shift identities of the low-energy μ⁻μ⁺ → e⁻e⁺ functions.
pub fn mumu_low_relations(lambda: f64, cfg: &ScanConfig) -> Vec<RelationCheck> {
    let grid = cfg.theta_grid();
    let cfg = *cfg;
    let mut out = Vec::new();
    for i in 3..=8 {
        let name = format!("G{i}");
        out.push(compare_on_grid(
            format!("{name}(t) = {name}(pi - t)"),
            &grid,
            g(&name, lambda, cfg),
            shifted(g(&name, lambda, cfg), |t| PI - t),
            TOL_RELATION,
        ));
    }
    out.push(compare_on_grid(
        "G5(t) = G4(pi/2 - t)",
        &grid,
        g("G5", lambda, cfg),
        shifted(g("G4", lambda, cfg), |t| FRAC_PI_2 - t),
        TOL_RELATION,
    ));
    out.push(compare_on_grid(
        "G6(t) = G3(pi/2 - t)",
        &grid,
        g("G6", lambda, cfg),
        shifted(g("G3", lambda, cfg), |t| FRAC_PI_2 - t),
        TOL_RELATION,
    ));
    out.push(compare_on_grid(
        "G10(t) = G4(t - pi/4)",
        &grid,
        g("G10", lambda, cfg),
        shifted(g("G4", lambda, cfg), |t| t - FRAC_PI_4),
        TOL_RELATION,
    ));
    let mut alt = compare_on_grid(
        "G10(t) = G4(t + pi/4)",
        &grid,
        g("G10", lambda, cfg),
        shifted(g("G4", lambda, cfg), |t| t + FRAC_PI_4),
        TOL_RELATION,
    );
    alt.informational = true;
    out.push(alt);
    for i in [9, 10] {
        let name = format!("G{i}");
        out.push(compare_on_grid(
            format!("~{name}(t) = {name}(pi - t)"),
            &grid,
            g(&format!("~{name}"), lambda, cfg),
            shifted(g(&name, lambda, cfg), |t| PI - t),
            TOL_RELATION,
        ));
    }
    out
}

/// `F̃₁₂`, `F̃₁₃` against the reflected `F₁₂`, `F₁₃` in the Møller and
/// Bhabha high-energy tables.
pub fn tilde_relations(cfg: &ScanConfig) -> Vec<RelationCheck> {
    let grid = cfg.theta_grid();
    let mut out = Vec::new();
    for table in [TableId::V, TableId::VI] {
        let (process, regime) = table.process_regime();
        for name in ["F12", "F13"] {
            let f = |label: &str| {
                xi2_curve(process, regime, representative(table, label), 0.0, Source::Limit, *cfg)
            };
            out.push(compare_on_grid(
                format!("table {table}: ~{name}(t) = {name}(pi - t)"),
                &grid,
                f(&format!("~{name}")),
                shifted(f(name), |t| PI - t),
                TOL_RELATION,
            ));
        }
    }
    out
}

/// At `λ = 0`: `G₃ = F₄` and `G₄ = G₅ = G₇ = G₁₀ = F₅`.
pub fn lambda_zero_identities(cfg: &ScanConfig) -> Vec<RelationCheck> {
    let grid = cfg.theta_grid();
    [("G3", ClosedForm::F4), ("G4", ClosedForm::F5), ("G5", ClosedForm::F5), ("G7", ClosedForm::F5), ("G10", ClosedForm::F5)]
        .into_iter()
        .map(|(label, form)| {
            compare_on_grid(
                format!("{label}(t, 0) = {form}(t)"),
                &grid,
                g(label, 0.0, *cfg),
                move |t| Some(closed_form_xi2(form, t, 0.0)),
                TOL_RELATION,
            )
        })
        .collect()
}

/// Every member of every row with a closed form in tables I, II and IV,
/// on a 181-point grid.
pub fn closed_form_cross_validation(lambda: f64, cfg: &ScanConfig) -> Vec<RelationCheck> {
    let theta = theta_grid(182);
    let lambdas: Vec<f64> = (0..181).map(|k| k as f64 / 180.0).collect();
    let mut out = Vec::new();
    for table in [TableId::I, TableId::II, TableId::IV] {
        let (process, regime) = table.process_regime();
        for row in expected_rows(table) {
            let Some(form) = row.label.and_then(|l| l.parse::<ClosedForm>().ok()) else {
                continue;
            };
            for &id in &row.members {
                let check = if regime == Regime::Threshold {
                    let psi = stabilizer_catalog()[id - 1].state;
                    let cfg = *cfg;
                    compare_on_grid(
                        format!("table {table} state {id} = {form}(lambda)"),
                        &lambdas,
                        move |l| {
                            AmplitudeAt::new(process, regime, FRAC_PI_2, l, Source::Limit, &cfg)
                                .ok()?
                                .magic(&psi)
                                .map(|m| m.xi2)
                        },
                        move |l| Some(closed_form_xi2(form, 0.0, l)),
                        TOL_RELATION,
                    )
                } else {
                    compare_on_grid(
                        format!("table {table} state {id} = {form}(theta)"),
                        &theta,
                        xi2_curve(process, regime, id, lambda, Source::Limit, *cfg),
                        move |t| Some(closed_form_xi2(form, t, lambda)),
                        TOL_RELATION,
                    )
                };
                out.push(check);
            }
        }
    }
    out
}

/// The θ-maximum of the state-13 curve against its closed form on 50
/// values of `λ`, plus the two endpoint values.
pub fn g8_max_checks() -> Vec<RelationCheck> {
    let lambdas: Vec<f64> = (0..50).map(|k| k as f64 / 49.0).collect();
    let curve = g8_max_curve(&lambdas);
    let closed = |l: f64| -closed_form_xi2(ClosedForm::G8Max, 0.0, l).ln();
    let dev = curve
        .iter()
        .map(|&(l, m)| (m - closed(l)).abs())
        .fold(0.0, f64::max);
    let mut out = vec![RelationCheck {
        name: "max_t G8(t, lambda) = G8max(lambda)".into(),
        max_deviation: dev,
        tolerance: 1e-9,
        points: curve.len(),
        skipped: 0,
        informational: false,
    }];
    for (l, target, text) in [(0.0, (16.0f64 / 7.0).ln(), "log(16/7)"), (1.0, (9.0f64 / 5.0).ln(), "log(9/5)")] {
        let m = curve.iter().find(|(x, _)| *x == l).map_or(f64::NAN, |p| p.1);
        out.push(RelationCheck {
            name: format!("max_t G8(t, {l}) = {text}"),
            max_deviation: (m - target).abs(),
            tolerance: 1e-9,
            points: 1,
            skipped: 0,
            informational: false,
        });
    }
    out
}

/// High-energy μ⁻μ⁺ → e⁻e⁺ and e⁻e⁺ → μ⁻μ⁺ give the same `M₂(θ)` for
/// every initial state, compared with the full spinor calculation.
pub fn annihilation_high_energy_equivalence(
    lambda: f64,
    cfg: &ScanConfig,
) -> Result<RelationCheck, Error> {
    let a = class_samples(Process::EeToMuMu, Regime::High, lambda, Source::Engine, cfg)?;
    let b = class_samples(Process::MuMuToEe, Regime::High, lambda, Source::Engine, cfg)?;
    let mut dev = 0.0f64;
    let (mut points, mut skipped) = (0, 0);
    for (ca, cb) in a.iter().zip(&b) {
        for (x, y) in ca.iter().zip(cb) {
            match (x, y) {
                (Some(x), Some(y)) => {
                    dev = dev.max((x - y).abs());
                    points += 1;
                }
                _ => skipped += 1,
            }
        }
    }
    Ok(RelationCheck {
        name: "mumu-ee high = ee-mumu high (engine, all states)".into(),
        max_deviation: dev,
        tolerance: cfg.eps_class_engine,
        points,
        skipped,
        informational: false,
    })
}
