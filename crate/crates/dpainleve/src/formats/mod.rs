pub mod coeffs;
pub mod evaluation;
pub mod grid;
pub mod header;
pub mod mapping;
pub mod model;
pub mod orbit;

pub use coeffs::{read_coefficients, write_coefficients};
pub use evaluation::{write_evaluations, EvaluationMeta};
pub use grid::write_grid;
pub use header::Header;
pub use mapping::MappingDocument;
pub use model::ModelDocument;
pub use orbit::write_orbit;
