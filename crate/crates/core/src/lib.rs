//! Density operators built from weighted graphs, gates and partial gates on
//! them, and certificates for zero quantum discord backed by a numerical
//! discord oracle.
//!
//! ```
//! use qgraph::graph::{LaplacianConvention, WeightedGraph};
//! use qgraph::linalg::{c, Subsystem, Tolerance};
//! use qgraph::state::Partition;
//! use qgraph::discord::{zero_discord_verdict, Verdict, VerdictInput};
//!
//! let mut g = WeightedGraph::new(Partition::new(1, 1).unwrap());
//! g.add_edge(0, 2, c(1.0, 0.0)).unwrap();
//! g.add_edge(1, 3, c(1.0, 0.0)).unwrap();
//! let tol = Tolerance::default();
//! let input = VerdictInput::Graph { graph: &g, convention: LaplacianConvention::Signed };
//! let report = zero_discord_verdict(input, Subsystem::A, tol).unwrap();
//! assert_eq!(report.verdict, Verdict::CertifiedZero);
//! ```

pub mod discord;
pub mod error;
pub mod fixtures;
pub mod gates;
pub mod graph;
pub mod io;
pub mod linalg;
pub mod oracle;
pub mod state;

pub use error::{Error, Result};
pub use linalg::{Complex64, ComplexMatrix, Subsystem, Tolerance};
pub use state::{DensityOperator, Partition};
