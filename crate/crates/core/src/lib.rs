//! Zeeman-zone calculus: exact polynomial algebra on the Gaussian-weighted
//! Hilbert space, Zeeman zones and their projection kernels, Wiener-Kac and
//! Dirac-Feynman propagators, partition functions, time-sliced path
//! measures, and the Pauli-Dirac spinor machinery.

pub mod algebra;
pub mod coords;
pub mod error;
pub mod exec;
pub mod extensions;
pub mod padi;
pub mod params;
pub mod path_measure;
pub mod poly;
pub mod propagators;
pub mod quadrature;
pub mod special;
pub mod thermo;
pub mod verify;
pub mod zones;

pub use error::{Result, ZoneError};
pub use exec::Exec;
pub use params::{ChargeSign, PhysParams};
pub use poly::{Monomial, ZonePolynomial};
