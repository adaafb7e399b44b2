//! JSON file formats for seeds, homomorphisms, surfaces and semigroup tables.

use std::collections::BTreeMap;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::Number;
use thiserror::Error;

use crate::hom::{HomError, PartialSeedHom};
use crate::seed::{Seed, SeedError};
use crate::semigroup::{SemigroupError, SemigroupTable};
use crate::surface::{Diagonal, Lamination, LaminationCurve, MarkedPolygon, SurfaceData, SurfaceError};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("entry {0} is not an integer")]
    NotInteger(String),
    #[error("unsupported schema_version {0}")]
    Schema(u32),
    #[error(transparent)]
    Seed(#[from] SeedError),
    #[error(transparent)]
    Hom(#[from] HomError),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
}

fn default_version() -> u32 {
    SCHEMA_VERSION
}

fn check_version(v: u32) -> Result<(), IoError> {
    if v == SCHEMA_VERSION {
        Ok(())
    } else {
        Err(IoError::Schema(v))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeedFile {
    #[serde(default = "default_version")]
    pub schema_version: u32,
    pub exchangeable: Vec<String>,
    #[serde(default)]
    pub frozen: Vec<String>,
    /// One row per exchangeable variable, columns exchangeable then frozen.
    pub matrix: Vec<Vec<Number>>,
}

impl SeedFile {
    pub fn from_seed(seed: &Seed) -> Self {
        let matrix = seed
            .matrix()
            .rows()
            .map(|row| row.iter().map(|b| Number::from_str(&b.to_string()).expect("integer literal")).collect())
            .collect();
        Self {
            schema_version: SCHEMA_VERSION,
            exchangeable: seed.exchangeable().to_vec(),
            frozen: seed.frozen().to_vec(),
            matrix,
        }
    }

    /// Matrix entries as integers, without checking the seed conditions.
    pub fn integer_rows(&self) -> Result<Vec<Vec<BigInt>>, IoError> {
        check_version(self.schema_version)?;
        self.matrix
            .iter()
            .map(|row| {
                row.iter()
                    .map(|v| BigInt::from_str(&v.to_string()).map_err(|_| IoError::NotInteger(v.to_string())))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect()
    }

    pub fn to_seed(&self) -> Result<Seed, IoError> {
        let rows = self.integer_rows()?;
        Ok(Seed::new(self.exchangeable.clone(), self.frozen.clone(), rows)?)
    }
}

pub fn parse_seed(text: &str) -> Result<Seed, IoError> {
    serde_json::from_str::<SeedFile>(text)?.to_seed()
}

pub fn seed_to_json(seed: &Seed) -> String {
    serde_json::to_string_pretty(&SeedFile::from_seed(seed)).expect("serializable")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomFile {
    #[serde(default = "default_version")]
    pub schema_version: u32,
    #[serde(default)]
    pub i0: Vec<String>,
    #[serde(default)]
    pub i1: Vec<String>,
    /// Source label to target label for every domain variable.
    pub map: BTreeMap<String, String>,
}

impl HomFile {
    pub fn from_hom(f: &PartialSeedHom) -> Self {
        let (i0, i1) = f.spec().labels(f.source());
        Self { schema_version: SCHEMA_VERSION, i0, i1, map: f.label_map() }
    }

    pub fn to_hom(&self, source: Arc<Seed>, target: Arc<Seed>) -> Result<PartialSeedHom, IoError> {
        check_version(self.schema_version)?;
        let pairs: Vec<(&str, &str)> = self.map.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        let i0: Vec<&str> = self.i0.iter().map(String::as_str).collect();
        let i1: Vec<&str> = self.i1.iter().map(String::as_str).collect();
        Ok(PartialSeedHom::from_labels(source, target, &i0, &i1, &pairs)?)
    }
}

/// A single polygon with default labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolygonFile {
    #[serde(rename = "N")]
    pub n: usize,
    pub triangulation: Vec<(usize, usize)>,
    #[serde(default)]
    pub laminations: Vec<Vec<(usize, usize)>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentFile {
    pub vertices: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagonalFile {
    pub label: String,
    pub component: usize,
    pub ends: (usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveFile {
    pub component: usize,
    pub ends: (usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LaminationFile {
    pub label: String,
    pub curves: Vec<CurveFile>,
}

/// Any number of polygons with explicit labels, as produced by cutting.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FullSurfaceFile {
    #[serde(default = "default_version")]
    pub schema_version: u32,
    pub components: Vec<ComponentFile>,
    pub diagonals: Vec<DiagonalFile>,
    #[serde(default)]
    pub laminations: Vec<LaminationFile>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SurfaceFile {
    Polygon(PolygonFile),
    Full(FullSurfaceFile),
}

impl SurfaceFile {
    pub fn to_surface(&self) -> Result<SurfaceData, IoError> {
        match self {
            SurfaceFile::Polygon(p) => Ok(SurfaceData::polygon(p.n, &p.triangulation, &p.laminations)?),
            SurfaceFile::Full(f) => {
                check_version(f.schema_version)?;
                let components = f
                    .components
                    .iter()
                    .map(|c| MarkedPolygon::with_names(c.vertices.clone()))
                    .collect::<Result<Vec<_>, _>>()?;
                let diagonals = f
                    .diagonals
                    .iter()
                    .map(|d| Diagonal { label: d.label.clone(), component: d.component, ends: d.ends })
                    .collect();
                let laminations = f
                    .laminations
                    .iter()
                    .map(|l| Lamination {
                        label: l.label.clone(),
                        curves: l.curves.iter().map(|c| LaminationCurve::new(c.component, c.ends.0, c.ends.1)).collect(),
                    })
                    .collect();
                Ok(SurfaceData::new(components, diagonals, laminations)?)
            }
        }
    }

    pub fn from_surface(data: &SurfaceData) -> Self {
        SurfaceFile::Full(FullSurfaceFile {
            schema_version: SCHEMA_VERSION,
            components: data.components().iter().map(|p| ComponentFile { vertices: p.vertices().to_vec() }).collect(),
            diagonals: data
                .diagonals()
                .iter()
                .map(|d| DiagonalFile { label: d.label.clone(), component: d.component, ends: d.ends })
                .collect(),
            laminations: data
                .laminations()
                .iter()
                .map(|l| LaminationFile {
                    label: l.label.clone(),
                    curves: l.curves.iter().map(|c| CurveFile { component: c.component, ends: c.ends }).collect(),
                })
                .collect(),
        })
    }
}

pub fn parse_surface(text: &str) -> Result<SurfaceData, IoError> {
    serde_json::from_str::<SurfaceFile>(text)?.to_surface()
}

pub fn surface_to_json(data: &SurfaceData) -> String {
    serde_json::to_string_pretty(&SurfaceFile::from_surface(data)).expect("serializable")
}

/// A stored `End_par` table; products are taken as given.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableFile {
    #[serde(default = "default_version")]
    pub schema_version: u32,
    pub seed: SeedFile,
    pub elements: Vec<HomFile>,
    pub product: Vec<Vec<u32>>,
}

impl TableFile {
    pub fn from_table(table: &SemigroupTable) -> Self {
        let size = table.len();
        Self {
            schema_version: SCHEMA_VERSION,
            seed: SeedFile::from_seed(table.seed()),
            elements: table.elements().iter().map(HomFile::from_hom).collect(),
            product: table.products().chunks(size.max(1)).map(<[u32]>::to_vec).collect(),
        }
    }

    pub fn to_table(&self) -> Result<SemigroupTable, IoError> {
        check_version(self.schema_version)?;
        let seed = Arc::new(self.seed.to_seed()?);
        let elements = self
            .elements
            .iter()
            .map(|h| h.to_hom(seed.clone(), seed.clone()))
            .collect::<Result<Vec<_>, _>>()?;
        let product = self.product.concat();
        Ok(SemigroupTable::with_products(seed, elements, product)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seed_round_trip() {
        let s = Seed::from_arrows(&["x1", "x2"], &["y"], &[("x1", "x2", 1), ("y", "x1", 2)]).unwrap();
        let back = parse_seed(&seed_to_json(&s)).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn big_entries_survive() {
        let text = r#"{"exchangeable":["a","b"],"matrix":[[0,123456789012345678901234567890],[-123456789012345678901234567890,0]]}"#;
        let s = parse_seed(text).unwrap();
        assert_eq!(parse_seed(&seed_to_json(&s)).unwrap(), s);
    }

    #[test]
    fn rejects_non_integers() {
        let text = r#"{"exchangeable":["a"],"matrix":[[0.5]]}"#;
        assert!(matches!(parse_seed(text), Err(IoError::NotInteger(_))));
    }

    #[test]
    fn surface_formats() {
        let simple = r#"{"N": 6, "triangulation": [[0,2],[0,3],[0,4]], "laminations": [[[0,3]]]}"#;
        let data = parse_surface(simple).unwrap();
        assert_eq!(parse_surface(&surface_to_json(&data)).unwrap(), data);
        let crossing = r#"{"N": 5, "triangulation": [[0,2],[1,3]]}"#;
        assert!(matches!(parse_surface(crossing), Err(IoError::Surface(SurfaceError::Crossing(..)))));
    }
}
