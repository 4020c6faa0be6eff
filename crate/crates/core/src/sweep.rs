//! Parameter sweeps: one row per (q, γ, σ, α, family, property) with the
//! radius, its α = 0 Euler–Rayleigh bounds and the first ε and ξ zeros.

use crate::error::{QmlError, Result};
use crate::grid::{self, Execution};
use crate::mlseries::QmlParams;
use crate::output::{format_f64, to_json_writer};
use crate::radii::{NormalizedFamily, Property, RadiusQuery, RadiusSolver};
use crate::rayleigh::{radius_bounds, NativeQuantity};
use crate::zeros::{ZeroKind, ZeroOptions};
use serde::{Deserialize, Serialize};
use std::io;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub q_values: Vec<f64>,
    pub gamma_values: Vec<f64>,
    pub sigma_values: Vec<f64>,
    pub alpha_values: Vec<f64>,
    pub families: Vec<NormalizedFamily>,
    pub properties: Vec<Property>,
    pub output_format: OutputFormat,
}

impl Default for SweepSpec {
    fn default() -> Self {
        SweepSpec {
            q_values: vec![0.05, 0.1, 0.2, 0.3],
            gamma_values: vec![0.0, 0.5, 1.0, 1.5],
            sigma_values: vec![0.5, 1.0, 2.0],
            alpha_values: vec![0.0, 0.25, 0.5, 0.75],
            families: NormalizedFamily::ALL.to_vec(),
            properties: Property::ALL.to_vec(),
            output_format: OutputFormat::Json,
        }
    }
}

impl SweepSpec {
    /// Checks every value against its domain and every list for emptiness.
    pub fn validate(&self) -> Result<Vec<QmlParams>> {
        let lists = [
            ("q_values", self.q_values.is_empty()),
            ("gamma_values", self.gamma_values.is_empty()),
            ("sigma_values", self.sigma_values.is_empty()),
            ("alpha_values", self.alpha_values.is_empty()),
            ("families", self.families.is_empty()),
            ("properties", self.properties.is_empty()),
        ];
        if let Some((name, _)) = lists.iter().find(|(_, empty)| *empty) {
            return Err(QmlError::Domain(format!("{name} must not be empty")));
        }
        for &a in &self.alpha_values {
            RadiusQuery::new(NormalizedFamily::G, Property::Starlike, a)?;
        }
        let mut points = Vec::new();
        for &q in &self.q_values {
            for &g in &self.gamma_values {
                for &s in &self.sigma_values {
                    points.push(QmlParams::new(q, g, s)?);
                }
            }
        }
        Ok(points)
    }

    pub fn row_count(&self) -> usize {
        self.q_values.len()
            * self.gamma_values.len()
            * self.sigma_values.len()
            * self.alpha_values.len()
            * self.families.len()
            * self.properties.len()
    }
}

/// Column order of both output formats.
pub const CSV_HEADER: [&str; 16] = [
    "q",
    "gamma",
    "sigma",
    "alpha",
    "family",
    "property",
    "radius",
    "native_quantity",
    "native_lower",
    "native_upper",
    "normalized_lower",
    "normalized_upper",
    "epsilon_1",
    "xi_1",
    "margin",
    "error",
];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub q: f64,
    pub gamma: f64,
    pub sigma: f64,
    pub alpha: f64,
    pub family: NormalizedFamily,
    pub property: Property,
    pub radius: Option<f64>,
    pub native_quantity: Option<NativeQuantity>,
    pub native_lower: Option<f64>,
    pub native_upper: Option<f64>,
    pub normalized_lower: Option<f64>,
    pub normalized_upper: Option<f64>,
    pub epsilon_1: Option<f64>,
    pub xi_1: Option<f64>,
    /// Relative distance from the radius to the nearer normalized bound.
    pub margin: Option<f64>,
    pub error: Option<String>,
}

fn native_name(n: NativeQuantity) -> &'static str {
    match n {
        NativeQuantity::InverseSquareOfRadius => "inverse_square_of_radius",
        NativeQuantity::SquareOfRadius => "square_of_radius",
        NativeQuantity::Radius => "radius",
    }
}

impl SweepRow {
    fn blank(p: &QmlParams, alpha: f64, family: NormalizedFamily, property: Property) -> Self {
        SweepRow {
            q: p.q,
            gamma: p.gamma,
            sigma: p.sigma,
            alpha,
            family,
            property,
            radius: None,
            native_quantity: None,
            native_lower: None,
            native_upper: None,
            normalized_lower: None,
            normalized_upper: None,
            epsilon_1: None,
            xi_1: None,
            margin: None,
            error: None,
        }
    }

    fn csv_fields(&self) -> Vec<String> {
        let f = |v: f64| format_f64(v).replace("null", "");
        let o = |v: Option<f64>| v.map(f).unwrap_or_default();
        vec![
            f(self.q),
            f(self.gamma),
            f(self.sigma),
            f(self.alpha),
            self.family.name().into(),
            self.property.name().into(),
            o(self.radius),
            self.native_quantity.map(native_name).unwrap_or_default().into(),
            o(self.native_lower),
            o(self.native_upper),
            o(self.normalized_lower),
            o(self.normalized_upper),
            o(self.epsilon_1),
            o(self.xi_1),
            o(self.margin),
            self.error.clone().unwrap_or_default(),
        ]
    }
}

fn point_rows(p: &QmlParams, spec: &SweepSpec, force: bool, tol: f64) -> Vec<SweepRow> {
    let mut rows = Vec::new();
    let solver = RadiusSolver::new(*p, ZeroOptions { tol, force });
    let mut solver = match solver {
        Ok(s) => s,
        Err(e) => {
            for &a in &spec.alpha_values {
                for &f in &spec.families {
                    for &pr in &spec.properties {
                        rows.push(SweepRow { error: Some(e.to_string()), ..SweepRow::blank(p, a, f, pr) });
                    }
                }
            }
            return rows;
        }
    };
    let eps1 = solver.zeros().first(ZeroKind::Epsilon).ok();
    let xi1 = solver.zeros().first(ZeroKind::Xi).ok();
    for &alpha in &spec.alpha_values {
        for &family in &spec.families {
            for &property in &spec.properties {
                let mut row = SweepRow { epsilon_1: eps1, xi_1: xi1, ..SweepRow::blank(p, alpha, family, property) };
                let solved = RadiusQuery::new(family, property, alpha).and_then(|q| solver.radius(q));
                match solved {
                    Ok(r) => {
                        row.radius = Some(r.value);
                        if alpha == 0.0 {
                            if let Ok(b) = radius_bounds(family, property, p) {
                                row.native_quantity = Some(b.quantity);
                                row.native_lower = Some(b.lower);
                                row.native_upper = Some(b.upper);
                                row.normalized_lower = Some(b.normalized_radius_lower);
                                row.normalized_upper = Some(b.normalized_radius_upper);
                                let gap =
                                    (r.value - b.normalized_radius_lower).min(b.normalized_radius_upper - r.value);
                                row.margin = Some(gap / r.value);
                            }
                        }
                    }
                    Err(e) => row.error = Some(e.to_string()),
                }
                rows.push(row);
            }
        }
    }
    rows
}

/// All rows, ordered by q, γ, σ, α, family, property.
pub fn run(spec: &SweepSpec, exec: Execution, force: bool, tol: f64) -> Result<Vec<SweepRow>> {
    let points = spec.validate()?;
    let rows = grid::map(exec, &points, |p| point_rows(p, spec, force, tol));
    Ok(rows.into_iter().flatten().collect())
}

pub fn write_csv<W: io::Write>(writer: W, rows: &[SweepRow]) -> io::Result<()> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(writer);
    w.write_record(CSV_HEADER)?;
    for r in rows {
        w.write_record(r.csv_fields())?;
    }
    w.flush()
}

pub fn write_json<W: io::Write>(mut writer: W, rows: &[SweepRow]) -> io::Result<()> {
    to_json_writer(&mut writer, rows).map_err(io::Error::other)?;
    writer.write_all(b"\n")
}

pub fn write<W: io::Write>(writer: W, rows: &[SweepRow], format: OutputFormat) -> io::Result<()> {
    match format {
        OutputFormat::Csv => write_csv(writer, rows),
        OutputFormat::Json => write_json(writer, rows),
    }
}
