//! The JSON curve file, independent re-verification of stored curves, and SVG/CSV export.

use std::fmt::Write as _;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::chebyshev::{divided_difference, ChebT, ChebV};
use crate::error::{Error, Result};
use crate::exactpoly::{count_roots, format_rational, int, parse_rational, Poly, Rational};
use crate::knotforge::{
    certify_a, check_coincidence, crossings, crossings_at, degrees, is_t3, verify_space,
    CrossingReport, NodeSet, Synthesis,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Basis {
    T,
    V,
    #[serde(rename = "monomial")]
    Monomial,
}

/// Coefficients, lowest degree first, in the named basis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coeffs {
    pub basis: Basis,
    pub coeffs: Vec<String>,
}

impl Coeffs {
    pub fn from_cheb_t(c: &ChebT) -> Self {
        Coeffs {
            basis: Basis::T,
            coeffs: c.coeffs().iter().map(format_rational).collect(),
        }
    }

    pub fn from_poly(p: &Poly) -> Self {
        Coeffs {
            basis: Basis::Monomial,
            coeffs: p.coeffs().iter().map(format_rational).collect(),
        }
    }

    fn parsed(&self) -> Result<Vec<Rational>> {
        self.coeffs.iter().map(|s| parse_rational(s)).collect()
    }

    pub fn to_poly(&self) -> Result<Poly> {
        let c = self.parsed()?;
        Ok(match self.basis {
            Basis::T => ChebT::new(c).to_poly(),
            Basis::V => ChebV::new(c).to_poly(),
            Basis::Monomial => Poly::new(c),
        })
    }

    pub fn to_cheb_t(&self) -> Result<ChebT> {
        Ok(match self.basis {
            Basis::T => ChebT::new(self.parsed()?),
            _ => ChebT::from_poly(&self.to_poly()?),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossingEntry {
    /// Isolating interval `(lo, hi]` of `u = s + t`.
    pub u: [String; 2],
    pub alpha: f64,
    pub s: f64,
    pub t: f64,
    pub sign: i32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveFile {
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nodes: Option<Vec<String>>,
    pub x: Coeffs,
    pub y: Coeffs,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z: Option<Coeffs>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degrees: Option<Vec<usize>>,
    #[serde(default)]
    pub crossings: Vec<CrossingEntry>,
    #[serde(default)]
    pub certified: bool,
}

fn entries(report: &CrossingReport) -> Vec<CrossingEntry> {
    report
        .crossings
        .iter()
        .map(|c| CrossingEntry {
            u: [format_rational(&c.u.lo), format_rational(&c.u.hi)],
            alpha: c.alpha,
            s: c.s,
            t: c.t,
            sign: c.sign,
        })
        .collect()
}

impl CurveFile {
    pub fn from_synthesis(n_crossings: usize, s: &Synthesis) -> Self {
        let (dx, dy, dz) = degrees(n_crossings);
        CurveFile {
            n: n_crossings,
            epsilon: s.epsilon.as_ref().map(format_rational),
            nodes: Some(s.nodes.delta().iter().map(format_rational).collect()),
            x: Coeffs::from_cheb_t(&ChebT::from_poly(&s.curve.plane.x)),
            y: Coeffs::from_cheb_t(&s.curve.plane.y),
            z: Some(Coeffs::from_cheb_t(&s.curve.z)),
            degrees: Some(vec![dx, dy, dz]),
            crossings: entries(&s.report),
            certified: true,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("curve file serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> std::result::Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub n: usize,
    pub degrees: (usize, usize, Option<usize>),
    pub report: CrossingReport,
    /// Exact checks at the planted nodes were run.
    pub exact_nodes: bool,
    /// The height function was present and checked.
    pub signs_checked: bool,
}

const STORED_TOL: f64 = 1e-9;

fn fail(msg: String) -> Error {
    Error::CertificationFailed(msg)
}

/// Re-derives every certificate of a stored curve from its coefficients alone.
///
/// Without planted nodes (a curve not produced by this crate), the crossing certificate
/// is the general one: exactly `N` roots of the divided-difference image in `(-2, 2)`.
/// With nodes, the image must also vanish exactly at `0, ±δ_i` and pass the strict
/// `(-1, 1)` certificate, and the height must interpolate `(-1)^i` exactly.
pub fn verify_curve_file(file: &CurveFile) -> Result<VerifyReport> {
    let n = file.n;
    if n % 2 == 0 {
        return Err(fail(format!("N = {n} is not odd")));
    }
    let x = file.x.to_poly()?;
    if !is_t3(&x) {
        return Err(fail("x is not T_3".into()));
    }
    let y = file.y.to_cheb_t()?;
    let r = divided_difference(&y).to_poly();
    if r.is_zero() {
        return Err(fail("divided-difference image of y is zero".into()));
    }
    let (m2, p2) = (int(-2), int(2));
    if r.eval(&m2).is_zero() || r.eval(&p2).is_zero() {
        return Err(fail("divided-difference image vanishes at ±2".into()));
    }
    let found = count_roots(&r, &m2, &p2)?;
    if found != n {
        return Err(Error::CrossingCount { expected: n, found });
    }

    let nodes = match &file.nodes {
        Some(v) => Some(NodeSet::try_from(v.clone())?),
        None => None,
    };
    if let Some(nodes) = &nodes {
        if nodes.n() != n / 2 {
            return Err(fail(format!(
                "{} nodes stored, N = {n} needs {}",
                nodes.n(),
                n / 2
            )));
        }
        if let Some(u) = nodes.all_nodes().iter().find(|u| !r.eval(u).is_zero()) {
            return Err(fail(format!(
                "divided-difference image of y does not vanish at node {}",
                format_rational(u)
            )));
        }
        if !certify_a(&r, n) {
            return Err(fail("strict root certificate on (-1, 1) fails".into()));
        }
    }

    let planted = nodes.as_ref().map(NodeSet::all_nodes);
    let mut report = crossings_at(&r, n, planted.as_deref())?;
    let z = file.z.as_ref().map(|c| c.to_cheb_t()).transpose()?;
    let signs_checked = z.is_some();
    report = match &z {
        Some(z) => verify_space(&x, &y, z, nodes.as_ref(), report)?,
        None => {
            check_coincidence(&x, &y, &mut report)?;
            report
        }
    };

    let deg_y = y.degree().unwrap_or(0);
    let deg_z = z.as_ref().and_then(|z| z.degree());
    if let Some(d) = &file.degrees {
        let actual: Vec<usize> = [Some(3), Some(deg_y), deg_z]
            .into_iter()
            .flatten()
            .collect();
        if *d != actual {
            return Err(fail(format!("stored degrees {d:?}, actual {actual:?}")));
        }
    }
    if !file.crossings.is_empty() {
        check_stored_crossings(&file.crossings, &report, signs_checked)?;
    }
    Ok(VerifyReport {
        n,
        degrees: (3, deg_y, deg_z),
        report,
        exact_nodes: nodes.is_some(),
        signs_checked,
    })
}

fn check_stored_crossings(
    stored: &[CrossingEntry],
    report: &CrossingReport,
    signs_checked: bool,
) -> Result<()> {
    if stored.len() != report.crossings.len() {
        return Err(fail(format!(
            "{} crossings stored, {} recomputed",
            stored.len(),
            report.crossings.len()
        )));
    }
    for (i, (e, c)) in stored.iter().zip(&report.crossings).enumerate() {
        let lo = parse_rational(&e.u[0])?;
        let hi = parse_rational(&e.u[1])?;
        // Both intervals isolate a root of the same polynomial; they must overlap.
        let overlap = lo < c.u.hi && c.u.lo < hi;
        let close = (e.s - c.s).abs() < STORED_TOL && (e.t - c.t).abs() < STORED_TOL;
        if !overlap || !close {
            return Err(fail(format!(
                "stored crossing {} disagrees with recomputation",
                i + 1
            )));
        }
        if signs_checked && e.sign != c.sign {
            return Err(fail(format!("stored sign of crossing {} disagrees", i + 1)));
        }
    }
    Ok(())
}

/// `t_j = -2.2 + 4.4 j / (M - 1)`, `j = 0..M`.
pub fn sample_params(samples: usize) -> Vec<f64> {
    let m = samples.max(2);
    (0..m)
        .map(|j| -2.2 + 4.4 * j as f64 / (m - 1) as f64)
        .collect()
}

/// Rows `t,x,y[,z]`.
pub fn export_csv(file: &CurveFile, samples: usize) -> Result<String> {
    let x = file.x.to_cheb_t()?;
    let y = file.y.to_cheb_t()?;
    let z = file.z.as_ref().map(|c| c.to_cheb_t()).transpose()?;
    let mut out = String::from(if z.is_some() { "t,x,y,z\n" } else { "t,x,y\n" });
    for t in sample_params(samples) {
        write!(out, "{t},{},{}", x.eval_f64(t), y.eval_f64(t)).unwrap();
        if let Some(z) = &z {
            write!(out, ",{}", z.eval_f64(t)).unwrap();
        }
        out.push('\n');
    }
    Ok(out)
}

const SVG_SIZE: f64 = 800.0;
const SVG_PAD: f64 = 20.0;

/// The `(x, y)` projection as polylines. At each crossing the under-strand (the parameter
/// with the lower `z`) is interrupted, so `N` crossings give `N + 1` polylines. Files
/// without a height function get a gap on the `s` branch.
pub fn export_svg(file: &CurveFile, samples: usize) -> Result<String> {
    let x = file.x.to_cheb_t()?;
    let y = file.y.to_cheb_t()?;
    let ts = sample_params(samples);
    let pts: Vec<(f64, f64)> = ts.iter().map(|&t| (x.eval_f64(t), y.eval_f64(t))).collect();
    let (mut x0, mut x1, mut y0, mut y1) = (
        f64::INFINITY,
        f64::NEG_INFINITY,
        f64::INFINITY,
        f64::NEG_INFINITY,
    );
    for &(a, b) in &pts {
        x0 = x0.min(a);
        x1 = x1.max(a);
        y0 = y0.min(b);
        y1 = y1.max(b);
    }
    let sx = (SVG_SIZE - 2.0 * SVG_PAD) / (x1 - x0).max(1e-12);
    let sy = (SVG_SIZE - 2.0 * SVG_PAD) / (y1 - y0).max(1e-12);
    let map = |a: f64, b: f64| (SVG_PAD + (a - x0) * sx, SVG_SIZE - SVG_PAD - (b - y0) * sy);

    let report_crossings = if file.crossings.is_empty() {
        let r = divided_difference(&y).to_poly();
        entries(&crossings(&r, file.n)?)
    } else {
        file.crossings.clone()
    };
    let mut under: Vec<f64> = report_crossings
        .iter()
        .map(|c| {
            if c.sign > 0 {
                c.s
            } else if c.sign < 0 {
                c.t
            } else {
                c.s
            }
        })
        .collect();
    under.sort_by(f64::total_cmp);
    let min_sep = under
        .windows(2)
        .map(|w| w[1] - w[0])
        .fold(f64::INFINITY, f64::min);
    let half = (0.3 * min_sep).min(0.03);

    let mut pieces: Vec<Vec<f64>> = Vec::new();
    let mut start = ts[0];
    for &g in &under {
        pieces.push(piece(&ts, start, g - half));
        start = g + half;
    }
    pieces.push(piece(&ts, start, *ts.last().unwrap()));

    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SVG_SIZE}" height="{SVG_SIZE}" viewBox="0 0 {SVG_SIZE} {SVG_SIZE}">"#
    )
    .unwrap();
    out.push_str("<g fill=\"none\" stroke=\"black\" stroke-width=\"1.5\">\n");
    for p in &pieces {
        out.push_str("<polyline points=\"");
        for (k, &t) in p.iter().enumerate() {
            let (a, b) = map(x.eval_f64(t), y.eval_f64(t));
            if k > 0 {
                out.push(' ');
            }
            write!(out, "{a:.3},{b:.3}").unwrap();
        }
        out.push_str("\"/>\n");
    }
    out.push_str("</g>\n");
    for c in &report_crossings {
        let (a, b) = map(x.eval_f64(c.t), y.eval_f64(c.t));
        writeln!(
            out,
            r#"<circle class="crossing" cx="{a:.3}" cy="{b:.3}" r="3" fill="red" data-sign="{}"/>"#,
            c.sign
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    Ok(out)
}

/// Sample parameters in `[a, b]`, with the endpoints included.
fn piece(ts: &[f64], a: f64, b: f64) -> Vec<f64> {
    let mut p = vec![a];
    p.extend(ts.iter().copied().filter(|&t| t > a && t < b));
    p.push(b);
    p
}
