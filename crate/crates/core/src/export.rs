//! Region artifacts: JSON, CSV and SVG.

use std::fmt::Write as _;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize, Serializer};

use crate::bounds::{self, Constraint};
use crate::channel::ChannelSpec;
use crate::geometry::{Point, RegionPolytope};
use crate::rational::{self, Rational};
use crate::regime::{self, Regime, RegimeReport};
use crate::verify::SuiteReport;
use crate::{Error, Result};

pub fn serialize_rational<S: Serializer>(x: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&rational::format(x))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstraintJson {
    pub family: String,
    pub omega: String,
    pub mu: Option<String>,
    pub a: String,
    pub b: String,
    pub c: String,
}

impl From<&Constraint> for ConstraintJson {
    fn from(c: &Constraint) -> Self {
        let w = &c.bound.weight;
        Self {
            family: c.bound.family.to_string(),
            omega: rational::format(&w.omega),
            mu: w.mu.as_ref().map(rational::format),
            a: rational::format(&c.plane.a()),
            b: rational::format(&c.plane.b()),
            c: rational::format(&c.plane.c()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionJson {
    pub vertices: Vec<[String; 2]>,
    pub constraints: Vec<ConstraintJson>,
}

impl RegionJson {
    pub fn new(region: &RegionPolytope, active: &[Constraint]) -> Self {
        Self {
            vertices: region
                .vertices()
                .iter()
                .map(|p| [rational::format(&p.r1), rational::format(&p.r2)])
                .collect(),
            constraints: active.iter().map(ConstraintJson::from).collect(),
        }
    }

    pub fn to_polytope(&self) -> Result<RegionPolytope> {
        let points = self
            .vertices
            .iter()
            .map(|[a, b]| Ok(Point::new(rational::parse(a)?, rational::parse(b)?)))
            .collect::<Result<Vec<_>>>()?;
        RegionPolytope::from_vertices(&points)
    }
}

pub fn region_json(region: &RegionPolytope, active: &[Constraint]) -> String {
    serde_json::to_string_pretty(&RegionJson::new(region, active)).expect("plain data")
}

/// Reads the `vertices` of a region JSON document back into a polytope.
pub fn parse_region_json(text: &str) -> Result<RegionPolytope> {
    let doc: RegionJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    doc.to_polytope()
}

pub fn region_csv(region: &RegionPolytope) -> String {
    let mut out = String::from("R1,R2\n");
    for p in region.vertices() {
        let _ = writeln!(out, "{},{}", rational::format(&p.r1), rational::format(&p.r2));
    }
    out
}

pub fn parse_region_csv(text: &str) -> Result<RegionPolytope> {
    let mut lines = text.lines();
    if lines.next().map(str::trim) != Some("R1,R2") {
        return Err(Error::Parse("line 1: expected header R1,R2".into()));
    }
    let points = lines
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            let (a, b) = l
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("line {}: expected two columns", i + 2)))?;
            Ok(Point::new(rational::parse(a)?, rational::parse(b)?))
        })
        .collect::<Result<Vec<_>>>()?;
    RegionPolytope::from_vertices(&points)
}

/// Extra marks drawn for a weak-interference region.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeakAnnotations {
    pub tin: Point,
    pub sum_capacity: Rational,
    pub star: Point,
    /// Ends of the sum-capacity face.
    pub a: Point,
    pub b: Point,
}

const SIZE: f64 = 480.0;
const MARGIN: f64 = 60.0;

struct Frame {
    scale: f64,
}

impl Frame {
    fn x(&self, v: &Rational) -> f64 {
        MARGIN + rational::to_f64(v) * self.scale
    }

    fn y(&self, v: &Rational) -> f64 {
        SIZE - MARGIN - rational::to_f64(v) * self.scale
    }
}

pub fn region_svg(region: &RegionPolytope, title: &str, weak: Option<&WeakAnnotations>) -> String {
    let (bx, by) = region.bounding_box();
    let extent = rational::to_f64(&bx.max(by));
    let extent = if extent > 0.0 { extent * 1.1 } else { 1.0 };
    let f = Frame { scale: (SIZE - 2.0 * MARGIN) / extent };
    let zero = Rational::zero();
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(s, r#"<title>{}</title>"#, escape(title));
    let (ox, oy) = (f.x(&zero), f.y(&zero));
    let end = MARGIN + extent * f.scale;
    let _ = writeln!(s, r#"<line x1="{ox}" y1="{oy}" x2="{end}" y2="{oy}" stroke="black"/>"#);
    let _ = writeln!(s, r#"<line x1="{ox}" y1="{oy}" x2="{ox}" y2="{}" stroke="black"/>"#, SIZE - end);
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" text-anchor="middle">R1 (bits/channel use)</text>"#,
        SIZE / 2.0,
        SIZE - MARGIN / 3.0
    );
    let _ = writeln!(
        s,
        r#"<text x="{x}" y="{y}" text-anchor="middle" transform="rotate(-90 {x} {y})">R2 (bits/channel use)</text>"#,
        x = MARGIN / 3.0,
        y = SIZE / 2.0
    );
    let pts: Vec<String> = region
        .vertices()
        .iter()
        .map(|p| format!("{:.3},{:.3}", f.x(&p.r1), f.y(&p.r2)))
        .collect();
    let _ = writeln!(
        s,
        r#"<polygon points="{}" fill="lightsteelblue" stroke="navy" stroke-width="2"/>"#,
        pts.join(" ")
    );
    for p in region.vertices() {
        let _ = writeln!(s, r#"<circle cx="{:.3}" cy="{:.3}" r="3" fill="navy"/>"#, f.x(&p.r1), f.y(&p.r2));
    }
    if let Some(w) = weak {
        let dash = r#"stroke="gray" stroke-dasharray="6,4""#;
        let _ = writeln!(
            s,
            r#"<line x1="{:.3}" y1="{oy:.3}" x2="{:.3}" y2="{:.3}" {dash}/>"#,
            f.x(&w.tin.r1),
            f.x(&w.tin.r1),
            f.y(&w.tin.r2)
        );
        let _ = writeln!(
            s,
            r#"<line x1="{ox:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" {dash}/>"#,
            f.y(&w.tin.r2),
            f.x(&w.tin.r1),
            f.y(&w.tin.r2)
        );
        let _ = writeln!(
            s,
            r#"<line x1="{:.3}" y1="{oy:.3}" x2="{ox:.3}" y2="{:.3}" {dash}/>"#,
            f.x(&w.sum_capacity),
            f.y(&w.sum_capacity)
        );
        for (label, p) in [("*", &w.star), ("A", &w.a), ("B", &w.b), ("TIN", &w.tin)] {
            let _ = writeln!(
                s,
                r#"<text x="{:.3}" y="{:.3}" font-size="14">{label}</text>"#,
                f.x(&p.r1) + 5.0,
                f.y(&p.r2) - 5.0
            );
        }
    }
    s.push_str("</svg>\n");
    s
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[derive(Serialize)]
struct RegionSummary {
    /// `"capacity"` or `"outer bound (tightness open)"`.
    kind: &'static str,
    vertices: Vec<[String; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    sum_capacity: Option<String>,
}

#[derive(Serialize)]
struct ClassificationJson<'a> {
    #[serde(skip_serializing_if = "Option::is_none")]
    label: Option<&'a str>,
    #[serde(flatten)]
    report: &'a RegimeReport,
    region: RegionSummary,
}

/// Regime report plus the capacity region (strong/weak) or the outer bound.
pub fn classification_json(spec: &ChannelSpec, label: Option<&str>) -> Result<String> {
    let report = regime::classify(spec);
    let one = Rational::one();
    let (kind, region) = match report.regime {
        Regime::Strong => ("capacity", regime::strong_region(spec)?),
        Regime::Weak => ("capacity", regime::weak_region(spec)?),
        Regime::Moderate | Regime::Mixed => ("outer bound (tightness open)", bounds::outer_bound_region(spec)?),
    };
    let sum_capacity = report.regime.is_tight().then(|| rational::format(&region.support(&one, &one)));
    let doc = ClassificationJson {
        label,
        report: &report,
        region: RegionSummary { kind, vertices: RegionJson::new(&region, &[]).vertices, sum_capacity },
    };
    Ok(serde_json::to_string_pretty(&doc).expect("plain data"))
}

pub fn suite_report_json(report: &SuiteReport) -> String {
    serde_json::to_string_pretty(report).expect("plain data")
}
