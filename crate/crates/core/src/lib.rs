//! Exact and sampled counting of graphlets on two to four vertices.
//!
//! Counting is edge-centric: each edge's neighborhood is split into common,
//! exclusive and distant vertices, a handful of closed forms plus two short
//! scans give per-edge counts, and a fixed linear chain turns their sums
//! into global counts. Sampling edges instead of enumerating all of them
//! yields unbiased estimates with variance and confidence bounds.
//!
//! ```
//! use graphlets::{exact_counts, generate, Graphlet};
//!
//! let g = generate::complete(5);
//! let est = exact_counts(&g, 1).unwrap();
//! assert_eq!(est.x[Graphlet::FourClique], 5.0);
//! ```

pub mod adaptive;
pub mod distribution;
pub mod error;
pub mod estimator;
pub mod extremal;
pub mod generate;
pub mod graph;
pub mod graphlet;
pub mod kcore;
pub mod local;
pub mod micro;
pub mod oracle;
pub mod report;
pub mod sampling;

pub use adaptive::{adaptive_estimate, loss, AdaptiveConfig, AdaptiveTrace, LossKind};
pub use distribution::{gfd, ks_statistic, relative_error, GfdVariant};
pub use error::{Error, Result};
pub use estimator::{
    accumulate, accumulate_sample, confidence_bounds, estimate, estimate_counts, exact_counts,
    exact_integer_counts, EngineConfig, GraphletEstimate, UnrestrictedAccumulator, WeightVector,
};
pub use extremal::{max_graphlet_estimate, ExtremalResult};
pub use graph::{load_graph, read_graph, read_graph_file, EdgeId, Format, Graph, VertexId};
pub use graphlet::{Graphlet, GraphletVec, NUM_GRAPHLETS};
pub use micro::{micro_counts, micro_exact, univariate_stats, MicroConfig, MicroEstimate};
pub use sampling::{draw_sample, sample_edges, Inclusion, Sample, SampleDesign, SampleMode, Weighting};
