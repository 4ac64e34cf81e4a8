//! Link candidates `L(w; d)` and their monomial support.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{has_solution, nonneg_solutions, Monomial, WeightVector};
use crate::yy::YyType;

/// Monomial support of the polynomial defining a link.
///
/// `Generic` stands for every monomial of degree `d` (the general member of
/// the linear system) and is answered by Diophantine existence queries.
/// Explicit monomials use positional coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Support {
    Generic,
    Explicit(Vec<Monomial>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkCandidate {
    pub weights: WeightVector,
    pub degree: u64,
    pub yy_type: Option<YyType>,
    /// Normal-form exponents in template slot order, when known.
    pub exponents: Option<[u64; 4]>,
    pub support: Support,
}

impl LinkCandidate {
    /// Generic member of `|O(d)|` on `P(w)`, weights in any order.
    pub fn new(positional: [u64; 4], degree: u64) -> Result<Self> {
        if degree == 0 {
            return Err(Error::Usage("degree must be positive".into()));
        }
        Ok(LinkCandidate {
            weights: WeightVector::new(positional)?,
            degree,
            yy_type: None,
            exponents: None,
            support: Support::Generic,
        })
    }

    /// Replaces the generic support by explicit positional monomials, each of
    /// which must have degree `d`.
    pub fn with_support(mut self, monomials: Vec<Monomial>) -> Result<Self> {
        let w = self.weights.positional();
        for m in &monomials {
            let deg = m.degree(&w)?;
            if deg != self.degree {
                return Err(Error::Usage(format!("monomial {m} has degree {deg}, expected {}", self.degree)));
            }
        }
        if monomials.is_empty() {
            return Err(Error::Usage("explicit support is empty".into()));
        }
        self.support = Support::Explicit(monomials);
        Ok(self)
    }

    pub fn sorted_weights(&self) -> &[u64; 4] {
        self.weights.sorted()
    }

    /// Fano index `|w| - d`.
    pub fn index(&self) -> i128 {
        self.weights.sum() as i128 - self.degree as i128
    }

    /// Whether the support holds a monomial whose variables all lie in the
    /// given positional coordinates.
    pub fn has_monomial_in(&self, coords: &[usize]) -> bool {
        match &self.support {
            Support::Generic => {
                let w = self.weights.positional();
                let ws: Vec<u64> = coords.iter().map(|&i| w[i]).collect();
                has_solution(&ws, self.degree)
            }
            Support::Explicit(ms) => ms.iter().any(|m| m.supported_in(coords)),
        }
    }

    /// All support monomials in positional coordinates. For the generic
    /// support this enumerates every monomial of degree `d`.
    pub fn materialize(&self) -> Vec<Monomial> {
        match &self.support {
            Support::Generic => {
                let w = self.weights.positional();
                nonneg_solutions(&w, self.degree).into_iter().map(|b| Monomial::new([b[0], b[1], b[2], b[3]])).collect()
            }
            Support::Explicit(ms) => ms.clone(),
        }
    }
}
