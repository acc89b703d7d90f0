//! Tetrahedral meshes with per-element magnetization, evaluation point sets and
//! field evaluation over them.
//!
//! Mesh files are JSON:
//!
//! ```json
//! {
//!   "unit": "mm",
//!   "vertices": [[2.5, 3, 1], [2, 1, 4], [1.5, 4, 3], [4.5, 5, 2]],
//!   "elements": [[0, 1, 2, 3]],
//!   "magnetization": [[0.32, 0.74, 0.89]]
//! }
//! ```
//!
//! `unit` is `"m"`, `"mm"` or a number giving meters per file unit. Vertices
//! are converted to meters on load; magnetization is always A/m.

use std::fmt;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::de::{self, Deserializer};
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::assembly::{b_from_h, PreparedTetrahedron};
use crate::error::GeometryError;
use crate::geometry::{contains, Containment, Tetrahedron};
use crate::linalg::Vec3;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum LengthUnit {
    Meter,
    Millimeter,
    /// Meters per file unit.
    Custom(f64),
}

impl LengthUnit {
    pub fn to_meters(self) -> f64 {
        match self {
            LengthUnit::Meter => 1.0,
            LengthUnit::Millimeter => 1e-3,
            LengthUnit::Custom(s) => s,
        }
    }
}

impl Serialize for LengthUnit {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            LengthUnit::Meter => s.serialize_str("m"),
            LengthUnit::Millimeter => s.serialize_str("mm"),
            LengthUnit::Custom(v) => s.serialize_f64(*v),
        }
    }
}

impl<'de> Deserialize<'de> for LengthUnit {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Name(String),
            Scale(f64),
        }
        match Raw::deserialize(d)? {
            Raw::Name(n) if n == "m" => Ok(LengthUnit::Meter),
            Raw::Name(n) if n == "mm" => Ok(LengthUnit::Millimeter),
            Raw::Name(n) => Err(de::Error::custom(format!(
                "unknown unit `{n}` (expected \"m\", \"mm\" or a scale factor)"
            ))),
            Raw::Scale(s) if s.is_finite() && s > 0.0 => Ok(LengthUnit::Custom(s)),
            Raw::Scale(s) => Err(de::Error::custom(format!(
                "unit scale must be positive and finite, got {s}"
            ))),
        }
    }
}

#[derive(Debug, Error)]
pub enum MeshError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("no elements")]
    NoElements,
    #[error(
        "element {element} refers to vertex {index}, but there are only {vertex_count} vertices"
    )]
    IndexOutOfRange {
        element: usize,
        index: usize,
        vertex_count: usize,
    },
    #[error("non-finite {what} {index}")]
    NonFinite { what: &'static str, index: usize },
    #[error("degenerate element {element}: {source}")]
    DegenerateElement {
        element: usize,
        source: GeometryError,
    },
    #[error("{magnetizations} magnetization vectors for {elements} elements")]
    MagnetizationCount {
        elements: usize,
        magnetizations: usize,
    },
}

impl MeshError {
    /// Whether the file could not be read or parsed at all, as opposed to
    /// parsing into an invalid mesh.
    pub fn is_parse_error(&self) -> bool {
        matches!(self, MeshError::Io { .. } | MeshError::Parse { .. })
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MeshFile {
    unit: LengthUnit,
    vertices: Vec<Vec3>,
    elements: Vec<[usize; 4]>,
    magnetization: Vec<Vec3>,
}

/// Validated mesh. Vertices are stored in meters.
#[derive(Clone, Debug, PartialEq)]
pub struct TetMesh {
    vertices: Vec<Vec3>,
    elements: Vec<[usize; 4]>,
    magnetization: Vec<Vec3>,
    unit: LengthUnit,
}

impl TetMesh {
    /// Builds a mesh from vertices given in `unit`.
    pub fn new(
        vertices: Vec<Vec3>,
        elements: Vec<[usize; 4]>,
        magnetization: Vec<Vec3>,
        unit: LengthUnit,
    ) -> Result<Self, MeshError> {
        if elements.is_empty() {
            return Err(MeshError::NoElements);
        }
        if magnetization.len() != elements.len() {
            return Err(MeshError::MagnetizationCount {
                elements: elements.len(),
                magnetizations: magnetization.len(),
            });
        }
        if let Some(index) = vertices.iter().position(|v| !v.is_finite()) {
            return Err(MeshError::NonFinite {
                what: "vertex",
                index,
            });
        }
        if let Some(index) = magnetization.iter().position(|m| !m.is_finite()) {
            return Err(MeshError::NonFinite {
                what: "magnetization",
                index,
            });
        }
        let scale = unit.to_meters();
        let vertices: Vec<Vec3> = vertices.into_iter().map(|v| v * scale).collect();
        for (element, idx) in elements.iter().enumerate() {
            for &index in idx {
                if index >= vertices.len() {
                    return Err(MeshError::IndexOutOfRange {
                        element,
                        index,
                        vertex_count: vertices.len(),
                    });
                }
            }
            let tet = Tetrahedron::from_array(idx.map(|i| vertices[i]))
                .map_err(|source| MeshError::DegenerateElement { element, source })?;
            PreparedTetrahedron::new(&tet)
                .map_err(|source| MeshError::DegenerateElement { element, source })?;
        }
        Ok(Self {
            vertices,
            elements,
            magnetization,
            unit,
        })
    }

    /// A one-element mesh.
    pub fn single(tet: &Tetrahedron, m: Vec3) -> Self {
        Self {
            vertices: tet.vertices().to_vec(),
            elements: vec![[0, 1, 2, 3]],
            magnetization: vec![m],
            unit: LengthUnit::Meter,
        }
    }

    pub fn vertices(&self) -> &[Vec3] {
        &self.vertices
    }

    pub fn elements(&self) -> &[[usize; 4]] {
        &self.elements
    }

    pub fn magnetization(&self) -> &[Vec3] {
        &self.magnetization
    }

    /// Unit the mesh was declared in. Stored vertices are already in meters.
    pub fn unit(&self) -> LengthUnit {
        self.unit
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn tetrahedron(&self, element: usize) -> Tetrahedron {
        Tetrahedron::from_array(self.elements[element].map(|i| self.vertices[i]))
            .expect("validated on construction")
    }

    /// Serializes in the file schema, with vertices written in meters.
    pub fn to_json(&self) -> String {
        let file = MeshFile {
            unit: LengthUnit::Meter,
            vertices: self.vertices.clone(),
            elements: self.elements.clone(),
            magnetization: self.magnetization.clone(),
        };
        serde_json::to_string_pretty(&file).expect("mesh serializes")
    }
}

/// Parses and validates mesh JSON.
pub fn parse_mesh(text: &str) -> Result<TetMesh, MeshError> {
    let file: MeshFile = serde_json::from_str(text).map_err(|e| MeshError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    TetMesh::new(file.vertices, file.elements, file.magnetization, file.unit)
}

pub fn load_mesh(path: impl AsRef<Path>) -> Result<TetMesh, MeshError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| MeshError::Io {
        path: path.to_owned(),
        source,
    })?;
    parse_mesh(&text)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub fn unit(self) -> Vec3 {
        match self {
            Axis::X => Vec3::X,
            Axis::Y => Vec3::Y,
            Axis::Z => Vec3::Z,
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

impl std::str::FromStr for Axis {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "x" | "X" => Ok(Axis::X),
            "y" | "Y" => Ok(Axis::Y),
            "z" | "Z" => Ok(Axis::Z),
            other => Err(format!("unknown axis `{other}`")),
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::X => "x",
            Axis::Y => "y",
            Axis::Z => "z",
        })
    }
}

/// Where the points of an [`EvalSet`] came from.
#[derive(Clone, Debug, PartialEq)]
pub enum Provenance {
    Explicit,
    Line {
        axis: Axis,
        through: Vec3,
        start: f64,
        end: f64,
        count: usize,
    },
    Grid {
        min: Vec3,
        max: Vec3,
        counts: [usize; 3],
    },
}

#[derive(Debug, Error, PartialEq)]
pub enum EvalSetError {
    #[error("an evaluation set needs at least one point")]
    Empty,
    #[error("non-finite coordinate in evaluation point {0}")]
    NonFinite(usize),
}

#[derive(Clone, Debug, PartialEq)]
pub struct EvalSet {
    pub points: Vec<Vec3>,
    pub provenance: Provenance,
}

fn linspace(start: f64, end: f64, count: usize) -> impl Iterator<Item = f64> {
    let step = if count > 1 {
        (end - start) / (count - 1) as f64
    } else {
        0.0
    };
    (0..count).map(move |i| {
        if i + 1 == count && count > 1 {
            end
        } else {
            start + step * i as f64
        }
    })
}

impl EvalSet {
    fn checked(points: Vec<Vec3>, provenance: Provenance) -> Result<Self, EvalSetError> {
        if points.is_empty() {
            return Err(EvalSetError::Empty);
        }
        if let Some(i) = points.iter().position(|p| !p.is_finite()) {
            return Err(EvalSetError::NonFinite(i));
        }
        Ok(Self { points, provenance })
    }

    pub fn explicit(points: Vec<Vec3>) -> Result<Self, EvalSetError> {
        Self::checked(points, Provenance::Explicit)
    }

    /// `count` evenly spaced points along `axis` through `through`, with the
    /// axis coordinate running from `start` to `end` inclusive.
    pub fn line(
        axis: Axis,
        through: Vec3,
        start: f64,
        end: f64,
        count: usize,
    ) -> Result<Self, EvalSetError> {
        let points = linspace(start, end, count)
            .map(|t| {
                let mut c = through.to_array();
                c[axis.index()] = t;
                Vec3::from(c)
            })
            .collect();
        Self::checked(
            points,
            Provenance::Line {
                axis,
                through,
                start,
                end,
                count,
            },
        )
    }

    /// Regular grid, x varying fastest.
    pub fn grid(min: Vec3, max: Vec3, counts: [usize; 3]) -> Result<Self, EvalSetError> {
        let mut points = Vec::with_capacity(counts.iter().product());
        for z in linspace(min.z, max.z, counts[2]) {
            for y in linspace(min.y, max.y, counts[1]) {
                for x in linspace(min.x, max.x, counts[0]) {
                    points.push(Vec3::new(x, y, z));
                }
            }
        }
        Self::checked(points, Provenance::Grid { min, max, counts })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Field at one evaluation point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FieldRecord {
    pub point: Vec3,
    /// A/m
    pub h: Vec3,
    /// T
    pub b: Vec3,
    pub h_norm: f64,
    pub containment: Containment,
    /// Owning element when the point is inside or on the boundary of one.
    pub element: Option<usize>,
}

/// Mesh with every element's faces placed once.
pub struct PreparedMesh<'a> {
    mesh: &'a TetMesh,
    elements: Vec<PreparedTetrahedron>,
}

impl<'a> PreparedMesh<'a> {
    pub fn new(mesh: &'a TetMesh) -> Self {
        let elements = (0..mesh.len())
            .map(|e| {
                PreparedTetrahedron::new(&mesh.tetrahedron(e)).expect("validated on construction")
            })
            .collect();
        Self { mesh, elements }
    }

    /// Total `H` summed over elements in index order.
    pub fn field(&self, r: Vec3) -> Vec3 {
        let mut h = Vec3::ZERO;
        for (prep, m) in self.elements.iter().zip(&self.mesh.magnetization) {
            h += prep.field(*m, r);
        }
        h
    }

    /// First element containing `r`, preferring strict interiors over
    /// boundaries.
    pub fn locate(&self, r: Vec3) -> (Containment, Option<usize>) {
        let mut boundary = None;
        for (e, prep) in self.elements.iter().enumerate() {
            match contains(&prep.tet, r) {
                Containment::Inside => return (Containment::Inside, Some(e)),
                Containment::Boundary if boundary.is_none() => boundary = Some(e),
                _ => {}
            }
        }
        match boundary {
            Some(e) => (Containment::Boundary, Some(e)),
            None => (Containment::Outside, None),
        }
    }

    pub fn record(&self, r: Vec3) -> FieldRecord {
        let h = self.field(r);
        let (containment, element) = self.locate(r);
        let m = element.map_or(Vec3::ZERO, |e| self.mesh.magnetization[e]);
        FieldRecord {
            point: r,
            h,
            b: b_from_h(h, m, containment),
            h_norm: h.norm(),
            containment,
            element,
        }
    }
}

/// Field records for every point, in input order. Points are evaluated in
/// parallel; each record depends only on its own point.
pub fn evaluate(mesh: &TetMesh, eval: &EvalSet) -> Vec<FieldRecord> {
    let prepared = PreparedMesh::new(mesh);
    eval.points
        .par_iter()
        .map(|&r| prepared.record(r))
        .collect()
}
