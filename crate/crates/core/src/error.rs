use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error(
        "triangle vertices are collinear (min altitude {altitude:e} vs longest edge {edge:e})"
    )]
    CollinearTriangle { altitude: f64, edge: f64 },
    #[error("tetrahedron vertices are coplanar (volume {volume:e} vs longest edge {edge:e})")]
    CoplanarTetrahedron { volume: f64, edge: f64 },
    #[error("degenerate face: local extents h={h:e}, k={k:e}, l={l:e} must all be positive")]
    DegenerateFace { h: f64, k: f64, l: f64 },
    #[error("non-finite coordinate in input")]
    NonFinite,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParameterError {
    #[error("right-triangle extent `{name}` must be positive and finite, got {value}")]
    NonPositive { name: &'static str, value: f64 },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("invalid quadrature spec: {0}")]
    InvalidSpec(&'static str),
    #[error("evaluation point lies on the face (distance {distance:e})")]
    OnSurface { distance: f64 },
    #[error(
        "quadrature did not converge after {subdivisions} subdivisions \
         (error estimate {estimate:e}, target {target:e})"
    )]
    NotConverged {
        subdivisions: usize,
        estimate: f64,
        target: f64,
    },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}
