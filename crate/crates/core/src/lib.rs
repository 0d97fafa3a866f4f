//! Exact two-variable interlace polynomials of graphs with loops.
//!
//! `q(G; x, y)` is the sum over vertex subsets `S` of
//! `(x - 1)^rank(G[S]) * (y - 1)^nullity(G[S])`, ranks taken over GF(2).
//! Two independent evaluators are provided: the subset expansion and the
//! pivot / local complementation recursion. The census module runs both
//! over enumerated catalogs of small graphs.

pub mod bipoly;
pub mod census;
pub mod error;
pub mod eval;
pub mod families;
pub mod gf2;
pub mod graph;

pub use bipoly::{Basis, BiPoly, UniPoly};
pub use error::{Error, Result};
pub use eval::{q_expansion, q_reduction, EvalMethod, Reducer};
pub use gf2::BitMatrix;
pub use graph::{Graph, GraphCatalog};
