//! Classification of 5-dimensional links `L(w; d)` of weighted homogeneous
//! hypersurface singularities: quasi-smoothness, Sasaki–Einstein
//! certification through klt estimates, Smale-manifold topology, Yau–Yu
//! normal forms and bounded searches. All arithmetic is exact.

pub mod certify;
pub mod error;
pub mod exact;
pub mod link;
pub mod quasismooth;
pub mod record;
pub mod search;
pub mod series;
pub mod tables;
pub mod topology;
pub mod yy;

pub use certify::{Lichnerowicz, Margins, SeStatus, Verdict};
pub use error::{Error, Result};
pub use exact::{ExponentMatrix, Monomial, Rational, WeightVector};
pub use link::{LinkCandidate, Support};
pub use quasismooth::{QsMode, QuasiSmoothReport};
pub use record::ResultRecord;
pub use search::{classify, enumerate, enumerate_with, SearchFilters, SearchSpec, TorsionFilter};
pub use series::{Params, SeriesFamily};
pub use topology::{BranchDivisor, SmaleManifold, TorsionEntry, TypeXSolution};
pub use yy::{RealizeOutcome, YyForm, YyType};

/// Engine version recorded in caches and machine-readable output.
pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");
