pub mod error;
pub mod evolution;
pub mod oracle;
pub mod grid;
pub mod polynomials;
pub mod quadrature;
pub mod special_fn;
pub mod transforms;
pub mod validation;
pub mod wei_norman;

pub use error::{Error, Result};
pub use grid::{GridFunction, GridSpec, Window, WindowSide};
pub use polynomials::PolyDense;
