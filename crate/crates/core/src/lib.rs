//! Exact-arithmetic verification engine for the stratified Mukai flop on
//! G(2,n) and the derived-equivalence checks at n = 4: Grassmannian sheaf
//! cohomology via Bott's algorithm, graded Ext on cotangent-type total
//! spaces, blow-up intersection and discrepancy arithmetic, and symbolic
//! image tables for the flop functors.

pub mod bott;
pub mod bundle;
pub mod error;
pub mod functor;
pub mod lattice;
pub mod schur;
pub mod total_space;
pub mod verify;

pub use bott::{bott_cohomology, euler_char, CohomologyResult, GrassmannData, HomogBundle};
pub use bundle::{normalize, parse_expr, BundleExpr, NormalForm};
pub use error::{Error, Result};
pub use schur::{cauchy_sym, lr_tensor, GLWeight, IrrepSum, Partition};
