use std::fmt::Write as _;

use rayon::prelude::*;

use crate::algebra::AlgebraElement;
use crate::grp::Cocycle;
use crate::kgraph::KGraph;
use crate::phase::Rational;
use crate::scalar::Scalar;

use super::{torus_fiber_norm, trunc_regular_norm, BundleError, GroupAlgebraElement, RepConfig};

pub const CSV_HEADER: &str = "theta_num,theta_den,fiber_norm,regrep_norm,box_radius,grid";

#[derive(Clone, Debug, PartialEq)]
pub struct ScanRow {
    pub theta: Rational,
    pub fiber_norm: f64,
    pub regrep_norm: f64,
    pub box_radius: i64,
    pub grid: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanTable {
    pub rows: Vec<ScanRow>,
}

impl ScanTable {
    /// Largest jump of the fibre norm between adjacent grid points.
    pub fn delta(&self) -> f64 {
        self.rows.windows(2).map(|w| (w[1].fiber_norm - w[0].fiber_norm).abs()).fold(0.0, f64::max)
    }

    /// Largest `|fiber_norm − regrep_norm|` over the rows.
    pub fn max_gap(&self) -> f64 {
        self.rows.iter().map(|r| (r.fiber_norm - r.regrep_norm).abs()).fold(0.0, f64::max)
    }

    pub fn row(&self, theta: Rational) -> Option<&ScanRow> {
        self.rows.iter().find(|r| r.theta == theta)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            writeln!(
                out,
                "{},{},{},{},{},{}",
                r.theta.numer(),
                r.theta.denom(),
                format_sig(r.fiber_norm, 12),
                format_sig(r.regrep_norm, 12),
                r.box_radius,
                r.grid
            )
            .expect("writing to a String");
        }
        out
    }
}

/// `x` in fixed notation with `digits` significant digits.
pub fn format_sig(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{:.*}", digits.saturating_sub(1), x);
    }
    let magnitude = x.abs().log10().floor() as i64 + 1;
    let decimals = (digits as i64 - magnitude).max(0) as usize;
    format!("{x:.decimals$}")
}

/// Fibre norms of `a` over the angles `θ = j/denominator`, `j = 0..=denominator`,
/// on a single-vertex rank-2 graph with one loop per color. Each row pairs
/// the clock/shift grid maximum with the truncated regular representation.
pub fn norm_scan<S: Scalar>(
    graph: &KGraph,
    a: &AlgebraElement<S>,
    denominator: u32,
    config: RepConfig,
) -> Result<ScanTable, BundleError> {
    config.validate()?;
    if denominator == 0 {
        return Err(BundleError::Config("grid denominator must be positive".into()));
    }
    if graph.rank() != 2 {
        return Err(BundleError::UnsupportedShape(format!("fibre scans need rank 2, got {}", graph.rank())));
    }
    let rows = (0..=denominator)
        .into_par_iter()
        .map(|j| {
            let theta = Rational::new(j as i64, denominator as i64);
            let sigma = Cocycle::rotation(theta);
            let elem = GroupAlgebraElement::from_terms(graph, &sigma, a)?;
            Ok(ScanRow {
                theta,
                fiber_norm: torus_fiber_norm(&elem, theta, config.grid)?,
                regrep_norm: trunc_regular_norm(&elem, &sigma, config.radius)?,
                box_radius: config.radius,
                grid: config.grid,
            })
        })
        .collect::<Result<Vec<_>, BundleError>>()?;
    Ok(ScanTable { rows })
}
