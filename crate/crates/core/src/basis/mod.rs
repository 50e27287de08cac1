//! Linear nodal functions, element bubbles and quadrature.

mod bubble;
mod p1;
mod quadrature;

pub use bubble::{bubble_normalization, eval_bubble, BubbleKind};
pub use p1::{eval_p1, P1Element};
pub use quadrature::{boundary_quadrature, gauss_legendre, simplex_quadrature, QuadratureRule};
