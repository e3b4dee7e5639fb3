//! Mirror superpotentials and quantum cohomology of semi-Fano toric surfaces.
//!
//! Everything is exact: fans are integer data, Kähler parameters are formal
//! integer linear forms, superpotentials are Laurent polynomials with rational
//! coefficients, and the ring isomorphism check runs Buchberger's algorithm
//! over the rationals.
//!
//! Ray indices in this API are 0-based. Text output (canonical strings of
//! quantum products, CLI reports, error messages) labels divisors `D1..Dd`.
//!
//! ```
//! use toric_mirror::{bundled, potential};
//!
//! let x1 = bundled::surface("X1").unwrap();
//! let w = potential::superpotential(&x1.spec).unwrap();
//! assert_eq!(
//!     w.w.canonical_string(),
//!     "(q1 + q1*q2)*z2^-1 + q1^2*q2*z1^-1*z2^-2 + z1 + z2"
//! );
//! ```

pub mod bundled;
pub mod disks;
pub mod error;
pub mod fan;
pub mod groebner;
pub mod homology;
pub mod jacobian;
pub mod kahler;
pub mod laurent;
pub mod par;
pub mod potential;
pub mod quantum;
pub mod surface_file;

pub use surface_file::Surface;

pub use error::{Error, Result};
pub use fan::{Fan, Ray};
pub use kahler::{KahlerSpec, TForm};
pub use laurent::{LaurentPoly, QPoly, Rational};
pub use par::Execution;
