use serde::{Deserialize, Serialize};

use crate::certify::{Lichnerowicz, Verdict};
use crate::quasismooth::QuasiSmoothReport;
use crate::topology::TorsionEntry;
use crate::yy::YyType;

/// Everything the pipeline knows about one link `L(w; d)`.
///
/// `b2`, `torsion` and `manifold` are present exactly when the link is
/// positive and quasi-smooth.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub weights: [u64; 4],
    pub degree: u64,
    pub index: i64,
    pub yy_type: Option<YyType>,
    pub exponents: Option<[u64; 4]>,
    pub quasismooth: QuasiSmoothReport,
    pub verdict: Verdict,
    pub lichnerowicz: Option<Lichnerowicz>,
    pub b2: Option<u64>,
    pub torsion: Option<Vec<TorsionEntry>>,
    pub manifold: Option<String>,
    pub provenance: Option<String>,
}

impl ResultRecord {
    pub fn key(&self) -> ([u64; 4], u64) {
        (self.weights, self.degree)
    }

    pub fn is_positive(&self) -> bool {
        self.index > 0
    }

    /// The documented field invariant.
    pub fn is_consistent(&self) -> bool {
        let full = self.is_positive() && self.quasismooth.quasismooth;
        full == self.manifold.is_some() && full == self.b2.is_some() && full == self.torsion.is_some()
    }
}
