//! Polynomial interpolation from segment integrals.
//!
//! Given segments `s_1, ..., s_r` of an interval and the averages-times-length
//! `mu_i = int_{s_i} f`, find the polynomial `p` of degree `r - 1` with the
//! same integrals. The crate builds segment families, measures functions by
//! Gauss-Legendre quadrature, solves the interpolation problem and computes
//! conditioning quantities such as the Lebesgue constant.
//!
//! ```
//! use segmental::{interpolate, measure_with, QuadratureConfig, SegmentSet};
//!
//! let set = SegmentSet::chebyshev_lobatto(6).unwrap();
//! let mu = measure_with(|x| x.powi(4), &set, QuadratureConfig::default()).unwrap();
//! let p = interpolate(&set, &mu).unwrap();
//! assert!((p.eval(0.5) - 0.0625).abs() < 1e-12);
//! ```

pub mod basis;
pub mod conditioning;
pub mod error;
pub mod interpolation;
pub mod linalg;
pub mod quadrature;
pub mod segments;

pub use basis::{cheb_to_monomial, eval_t, eval_u, integrate_u, monomial_to_cheb, ChebExpansion, MonomialPoly};
pub use conditioning::*;
pub use error::{Error, Result};
pub use interpolation::{
    interpolate, interpolate_c2_fast, interpolate_explicit, lagrange_c1, lagrange_c3, lagrange_generic,
    solve_dense, vandermonde, BasisTag, Diagnostics, Interpolant, IntervalPoly, NodalInterpolant,
    SegmentalBasis, SolvePath,
};
pub use quadrature::{measure, measure_vector, measure_with, MeasurementVector, Provenance, QuadratureConfig, QuadratureRule};
pub use segments::{AffineMap, ArcParams, Family, NodeSet, Segment, SegmentClass, SegmentSet};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/segments.md")]
    mod segments {}
    #[doc = include_str!("../../../book/src/measurements.md")]
    mod measurements {}
    #[doc = include_str!("../../../book/src/solving.md")]
    mod solving {}
    #[doc = include_str!("../../../book/src/basis.md")]
    mod basis {}
    #[doc = include_str!("../../../book/src/conditioning.md")]
    mod conditioning {}
    #[doc = include_str!("../../../book/src/arcs.md")]
    mod arcs {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
