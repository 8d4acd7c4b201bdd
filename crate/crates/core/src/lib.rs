//! Asymptotically pole-free solutions of the first discrete Painlevé equation
//!
//! ```text
//! w[n+1] + w[n] + w[n-1] = (alpha*n + beta) / w[n] + gamma
//! ```
//!
//! The crate builds the formal large-`n` series of the two solution families
//! (Type A, `w ~ ±sqrt(-alpha n)` alternating in sign between even and odd
//! sites, and Type B, `w ~ ±sqrt(alpha n / 3)`), estimates the prefactor
//! constants of their factorial-over-power divergence, classifies the
//! complex plane into Stokes and anti-Stokes regions, assembles the
//! optimally-truncated series with its exponentially small remainder, and
//! iterates the difference equation directly for comparison.
//!
//! Everything runs in arbitrary-precision binary floating point with a
//! caller-chosen mantissa width. The crate is `no_std` and only needs
//! `alloc`; file formats and the command-line tool live in a companion
//! crate.

#![no_std]

extern crate alloc;

pub mod error;
pub mod evaluator;
pub mod lateorder;
pub mod lattice;
pub mod maps;
pub mod params;
pub mod precision;
pub mod series;
pub mod stokes;
pub mod variant;

pub use error::{Error, Result};
pub use evaluator::{
    evaluate, normal_cdf, optimal_truncation, reconstruct_lattice, stokes_multiplier, Evaluation,
    MultiplierEntry, Parity, RemainderSpec, TruncatedApproximation, TruncationRule,
};
pub use lateorder::{
    estimate_lambda_type_a, estimate_lambda_type_b, predict_coefficient, LateOrderModel,
    TypeAEstimate, TypeBEstimate,
};
pub use lattice::{
    compare, iterate_backward, iterate_backward_from, iterate_forward, iterate_forward_from,
    ComparisonReport, LatticeSolution, PoleThreshold,
};
pub use maps::{map_freud, map_p4, p4_parameters};
pub use params::{Branch, PainleveParams, Sequence, SolutionFamily, SolutionKind};
pub use precision::{gamma_half, principal_power, ArithmeticContext, ComplexHP, Real};
pub use series::{
    extend_coefficients, leading_orders, residual, CoefficientTable, Expansion, LeadingOrders,
};
pub use stokes::{
    classify_point, grid_map, jump_constants, sector_angle, singulants, GridPoint, SingulantSet,
    StokesPointClass, Window,
};
pub use variant::{variant_coefficients, variant_leading_orders, variant_singulants, VariantParams};
