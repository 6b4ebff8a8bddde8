//! Sampled curves for figures 2 to 8.

use serde::Serialize;

use crate::error::Error;
use crate::limits::{closed_form_xi2, ClosedForm};
use crate::scan::{g8_max_curve, magic_curve, ScanConfig, Source};
use crate::tables::{label_representatives, TableId};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Series {
    pub label: String,
    /// `M₂` in nats; `None` where the final state vanishes.
    pub values: Vec<Option<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Figure {
    pub number: u8,
    pub title: &'static str,
    /// `"theta"` (radians) or `"lambda"`.
    pub axis: &'static str,
    pub x: Vec<f64>,
    pub series: Vec<Series>,
}

pub const FIGURES: [u8; 7] = [2, 3, 4, 5, 6, 7, 8];

fn lambda_axis(n: usize) -> Vec<f64> {
    (0..=n).map(|k| k as f64 / n as f64).collect()
}

fn closed_series(form: ClosedForm, x: &[f64], along_lambda: bool) -> Series {
    Series {
        label: form.name().to_string(),
        values: x
            .iter()
            .map(|&v| {
                let xi = if along_lambda {
                    closed_form_xi2(form, 0.0, v)
                } else {
                    closed_form_xi2(form, v, 0.0)
                };
                Some(-xi.ln())
            })
            .collect(),
    }
}

/// One series per labelled row of `table`, skipping the trivial `F1`.
fn table_series(table: TableId, lambda: f64, x: &[f64], cfg: &ScanConfig) -> Vec<Series> {
    let (process, regime) = table.process_regime();
    label_representatives(table)
        .into_iter()
        .filter(|(label, _)| *label != "F1")
        .map(|(label, id)| {
            let f = magic_curve(process, regime, id, lambda, Source::Limit, *cfg);
            Series {
                label: label.to_string(),
                values: x.iter().map(|&t| f(t)).collect(),
            }
        })
        .collect()
}

pub fn figure(number: u8, lambda: f64, cfg: &ScanConfig) -> Result<Figure, Error> {
    let theta = cfg.theta_grid();
    let lam = lambda_axis(200);
    let fig = match number {
        2 => Figure {
            number,
            title: "ee -> mumu near threshold: M2 against lambda",
            axis: "lambda",
            series: vec![
                closed_series(ClosedForm::G1, &lam, true),
                closed_series(ClosedForm::G2, &lam, true),
            ],
            x: lam,
        },
        3 => Figure {
            number,
            title: "Moller low energy: M2 against theta",
            axis: "theta",
            series: vec![
                closed_series(ClosedForm::F2, &theta, false),
                closed_series(ClosedForm::F3, &theta, false),
            ],
            x: theta,
        },
        4 => Figure {
            number,
            title: "mumu -> ee low energy: M2 against theta",
            axis: "theta",
            series: table_series(TableId::III, lambda, &theta, cfg),
            x: theta,
        },
        5 => Figure {
            number,
            title: "mumu -> ee low energy: largest M2 over theta for states 13-28, against lambda",
            axis: "lambda",
            series: vec![Series {
                label: "G8max".into(),
                values: g8_max_curve(&lam).into_iter().map(|(_, m)| Some(m)).collect(),
            }],
            x: lam,
        },
        6 => Figure {
            number,
            title: "ee -> mumu high energy: M2 against theta",
            axis: "theta",
            series: vec![
                closed_series(ClosedForm::F4, &theta, false),
                closed_series(ClosedForm::F5, &theta, false),
            ],
            x: theta,
        },
        7 => Figure {
            number,
            title: "Moller high energy: M2 against theta",
            axis: "theta",
            series: table_series(TableId::V, lambda, &theta, cfg)
                .into_iter()
                .filter(|s| !matches!(s.label.as_str(), "F2" | "F5"))
                .collect(),
            x: theta,
        },
        8 => Figure {
            number,
            title: "e mu high energy: M2 against theta",
            axis: "theta",
            series: table_series(TableId::VII, lambda, &theta, cfg)
                .into_iter()
                .filter(|s| !matches!(s.label.as_str(), "F5" | "F7"))
                .collect(),
            x: theta,
        },
        _ => {
            return Err(Error::InvalidParameter {
                name: "figure",
                value: number as f64,
                reason: "figures are numbered 2 to 8",
            })
        }
    };
    Ok(fig)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn figure_shapes() {
        let cfg = ScanConfig::default();
        for n in FIGURES {
            let f = figure(n, 0.005, &cfg).unwrap();
            assert!(!f.series.is_empty());
            assert!(f.series.iter().all(|s| s.values.len() == f.x.len()), "figure {n}");
        }
        assert!(figure(9, 0.005, &cfg).is_err());
    }

    #[test]
    fn figure_series_labels() {
        let cfg = ScanConfig::default();
        let labels = |n| -> Vec<String> {
            figure(n, 0.005, &cfg).unwrap().series.into_iter().map(|s| s.label).collect()
        };
        assert_eq!(labels(4), ["G3", "G4", "G5", "G6", "G7", "G8", "G9", "~G9", "G10", "~G10"]);
        assert_eq!(labels(7), ["F6", "F7", "F8", "F9", "F10", "F11", "F12", "~F12", "F13", "~F13"]);
        assert_eq!(labels(8), ["F14", "F15", "F16", "F17", "F18", "F19", "F20", "F21", "F22"]);
    }

    #[test]
    fn figure_five_endpoints() {
        let f = figure(5, 0.005, &ScanConfig::default()).unwrap();
        let v = &f.series[0].values;
        assert!((v[0].unwrap() - (16.0f64 / 7.0).ln()).abs() < 1e-9);
        assert!((v.last().unwrap().unwrap() - 1.8f64.ln()).abs() < 1e-9);
    }
}
