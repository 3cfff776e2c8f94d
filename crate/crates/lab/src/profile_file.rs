//! Plain-text profile files (TOML).
//!
//! ```toml
//! family = "custom"
//! vertices = [[1.0, 0.0], [0.5, 0.5], [0.0, 1.0]]
//!
//! [[segments]]
//! shape = "line"
//! normal = [1, 1]
//! ```
//!
//! A file may instead name a family with its parameters and omit the
//! vertices. Without `segments`, straight segments are assumed and their
//! normals are classified from the decimal coordinates.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use toric_core::{Family, IVec, MomentProfile, NormalClass, Segment, Shape, Vec2};

use crate::LabError;

#[derive(Debug, Default, Serialize, Deserialize, PartialEq)]
pub struct Params {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct SegmentRecord {
    /// `line`, `mu_line` or `arc`.
    pub shape: String,
    /// Primitive outward normal of a rational line.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub normal: Option<[i64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub center: Option<[f64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub radius: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub start: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sweep: Option<f64>,
}

#[derive(Debug, Default, Serialize, Deserialize, PartialEq)]
pub struct ProfileFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(default, skip_serializing_if = "is_default_params")]
    pub params: Params,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub vertices: Vec<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub segments: Vec<SegmentRecord>,
}

fn is_default_params(p: &Params) -> bool {
    *p == Params::default()
}

impl ProfileFile {
    pub fn from_profile(p: &MomentProfile) -> ProfileFile {
        let (family, params) = match p.family() {
            Family::Ellipsoid { a, b, n } => ("ellipsoid", Params { a: Some(a), b: Some(b), c: None, n: Some(n) }),
            Family::Polydisk { a, b } => ("polydisk", Params { a: Some(a), b: Some(b), ..Params::default() }),
            Family::Fc { b, c, n } => ("fc", Params { a: None, b: Some(b), c: Some(c), n: Some(n) }),
            Family::Custom => ("custom", Params::default()),
        };
        let segments = p
            .segments()
            .iter()
            .map(|s| {
                let mut r = SegmentRecord { shape: String::new(), normal: None, center: None, radius: None, start: None, sweep: None };
                match s.shape {
                    Shape::Line => r.shape = "line".into(),
                    Shape::MuLine => r.shape = "mu_line".into(),
                    Shape::Arc { center, radius, start, sweep } => {
                        r.shape = "arc".into();
                        r.center = Some([center.x, center.y]);
                        r.radius = Some(radius);
                        r.start = Some(start);
                        r.sweep = Some(sweep);
                    }
                }
                if let NormalClass::Rational(v) = s.normal {
                    r.normal = Some([v.m, v.n]);
                }
                r
            })
            .collect();
        ProfileFile {
            family: Some(family.into()),
            params,
            vertices: p.vertices().iter().map(|v| [v.x, v.y]).collect(),
            segments,
        }
    }

    pub fn to_profile(&self) -> Result<MomentProfile, LabError> {
        let family = self.family.as_deref().unwrap_or("custom");
        if self.vertices.is_empty() {
            return family_profile(family, &self.params);
        }
        let points: Vec<(f64, f64)> = self.vertices.iter().map(|v| (v[0], v[1])).collect();
        let profile = if self.segments.is_empty() {
            MomentProfile::from_vertices(&points)?
        } else {
            let vertices = points.iter().map(|&p| Vec2::from(p)).collect();
            let segments = self.segments.iter().map(segment_from_record).collect::<Result<Vec<_>, _>>()?;
            MomentProfile::from_parts(vertices, segments, Family::Custom)?
        };
        let tag = match family {
            "custom" => Family::Custom,
            _ => match family_profile(family, &self.params) {
                Ok(p) => p.family(),
                Err(_) => Family::Custom,
            },
        };
        Ok(profile.with_family(tag))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("profile files serialize")
    }

    pub fn parse(text: &str) -> Result<ProfileFile, LabError> {
        toml::from_str(text).map_err(|e| LabError::Format(e.to_string()))
    }
}

fn segment_from_record(r: &SegmentRecord) -> Result<Segment, LabError> {
    let missing = |f: &str| LabError::Format(format!("arc segment needs `{f}`"));
    match r.shape.as_str() {
        "line" => Ok(Segment::line(r.normal.map(|[m, n]| IVec::new(m, n)))),
        "mu_line" => Ok(Segment::curve(Shape::MuLine)),
        "arc" => {
            let c = r.center.ok_or_else(|| missing("center"))?;
            Ok(Segment::curve(Shape::Arc {
                center: Vec2::new(c[0], c[1]),
                radius: r.radius.ok_or_else(|| missing("radius"))?,
                start: r.start.ok_or_else(|| missing("start"))?,
                sweep: r.sweep.ok_or_else(|| missing("sweep"))?,
            }))
        }
        other => Err(LabError::Format(format!("unknown segment shape `{other}`"))),
    }
}

/// Build a named family from its parameters.
pub fn family_profile(family: &str, p: &Params) -> Result<MomentProfile, LabError> {
    let need = |v: Option<f64>, name: &str| v.ok_or_else(|| LabError::Format(format!("family `{family}` needs `{name}`")));
    Ok(match family {
        "ellipsoid" => MomentProfile::ellipsoid(need(p.a, "a")?, need(p.b, "b")?, p.n.unwrap_or(1))?,
        "ball" => MomentProfile::ball(need(p.a, "a")?)?,
        "polydisk" => MomentProfile::polydisk(need(p.a, "a")?, need(p.b, "b")?)?,
        "fc" => MomentProfile::fc_domain(need(p.b, "b")?, need(p.c, "c")?, p.n.unwrap_or(32))?,
        other => return Err(LabError::Format(format!("unknown family `{other}`"))),
    })
}

/// Parse a family shorthand such as `ellipsoid:1,4`, `ball:2`,
/// `polydisk:1,2` or `fc:2,0.7,32`.
pub fn parse_family_spec(spec: &str) -> Result<MomentProfile, LabError> {
    let (name, args) = spec.split_once(':').ok_or_else(|| LabError::Format(format!("not a family spec: `{spec}`")))?;
    let nums: Vec<f64> = args
        .split(',')
        .map(|s| s.trim().parse::<f64>().map_err(|_| LabError::Format(format!("bad number `{s}` in `{spec}`"))))
        .collect::<Result<_, _>>()?;
    let at = |i: usize| nums.get(i).copied();
    let n = |i: usize| at(i).map(|x| x as usize);
    let params = match name {
        "ball" => Params { a: at(0), ..Params::default() },
        "ellipsoid" | "polydisk" => Params { a: at(0), b: at(1), c: None, n: n(2) },
        "fc" => Params { a: None, b: at(0), c: at(1), n: n(2) },
        _ => Params::default(),
    };
    family_profile(name, &params)
}

/// A family shorthand or a path to a profile file.
pub fn load_profile(arg: &str) -> Result<MomentProfile, LabError> {
    if !Path::new(arg).exists() && arg.contains(':') {
        return parse_family_spec(arg);
    }
    let text = fs::read_to_string(arg).map_err(|e| LabError::Io(format!("{arg}: {e}")))?;
    ProfileFile::parse(&text)?.to_profile()
}

pub fn save_profile(p: &MomentProfile, path: &Path) -> Result<(), LabError> {
    fs::write(path, ProfileFile::from_profile(p).to_toml()).map_err(|e| LabError::Io(format!("{}: {e}", path.display())))
}
