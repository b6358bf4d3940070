//! Euclidean surfaces with conical singularities: glued polygon complexes,
//! geodesic tracing, finite-radius unfoldings of the universal cover,
//! shortest and closed geodesics, and the checks built on top of them.

pub mod checks;
pub mod closed;
pub mod error;
pub mod fan;
pub mod geom;
pub mod oracle;
pub mod path;
pub mod shortest;
pub mod surface;
pub mod tolerance;
pub mod tracer;
pub mod unfolding;
pub mod verify;
pub mod word;

pub use error::{Error, Result};
pub use geom::{PlanarPoint, RigidMotion};
pub use surface::{builtin, parse_surface, validate_surface, ConeKind, ConePoint, ConeSurface, SurfacePoint};
pub use word::{HomotopyWord, Letter};
pub use path::{check_local_geodesic, geodesic_length, min_clearance, ConePassage, GeodesicPath, PathEvent};
pub use tracer::{cross_edge, trace_ray, Direction};
