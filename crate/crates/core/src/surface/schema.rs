//! JSON surface documents.
//!
//! ```json
//! {"name": "square_torus",
//!  "polygons": [{"id": "P", "vertices": [[0,0],[1,0],[1,1],[0,1]]}],
//!  "gluings": [{"a": ["P", 3], "b": ["P", 1]}]}
//! ```

use super::{ConeSurface, EdgeRef, Polygon};
use crate::error::{Error, Result};
use crate::geom::PlanarPoint;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolygonDoc {
    pub id: String,
    pub vertices: Vec<[f64; 2]>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GluingDoc {
    pub a: (String, usize),
    pub b: (String, usize),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub polygons: Vec<PolygonDoc>,
    pub gluings: Vec<GluingDoc>,
}

impl SurfaceDoc {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("surface documents always serialize")
    }

    pub fn build(&self) -> Result<ConeSurface> {
        let polygons: Vec<Polygon> = self
            .polygons
            .iter()
            .map(|p| Polygon {
                id: p.id.clone(),
                vertices: p.vertices.iter().map(|v| PlanarPoint::new(v[0], v[1])).collect(),
            })
            .collect();
        let side = |(id, edge): &(String, usize)| -> Result<EdgeRef> {
            let polygon = polygons
                .iter()
                .position(|p| &p.id == id)
                .ok_or_else(|| Error::Schema(format!("gluing names unknown polygon `{id}`")))?;
            Ok(EdgeRef { polygon, edge: *edge })
        };
        let pairs = self
            .gluings
            .iter()
            .map(|g| Ok((side(&g.a)?, side(&g.b)?)))
            .collect::<Result<Vec<_>>>()?;
        ConeSurface::new(self.name.clone(), polygons, pairs)
    }
}

/// Parse and fully validate a surface document.
pub fn parse_surface(text: &str) -> Result<ConeSurface> {
    SurfaceDoc::from_json(text)?.build()
}

impl ConeSurface {
    pub fn parse(text: &str) -> Result<ConeSurface> {
        parse_surface(text)
    }

    pub fn to_doc(&self) -> SurfaceDoc {
        SurfaceDoc {
            name: self.name.clone(),
            polygons: self
                .polygons
                .iter()
                .map(|p| PolygonDoc {
                    id: p.id.clone(),
                    vertices: p.vertices.iter().map(|v| [v.x, v.y]).collect(),
                })
                .collect(),
            gluings: self
                .gluings
                .iter()
                .map(|g| GluingDoc {
                    a: (self.polygons[g.side_a.polygon].id.clone(), g.side_a.edge),
                    b: (self.polygons[g.side_b.polygon].id.clone(), g.side_b.edge),
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        self.to_doc().to_json()
    }
}
