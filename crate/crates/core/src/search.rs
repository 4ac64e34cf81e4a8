//! The classification pipeline and bounded searches over exponent space.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::certify::{self, combine, klt_unchecked, SeStatus, Verdict};
use crate::error::{Error, Result};
use crate::link::LinkCandidate;
use crate::quasismooth;
use crate::record::ResultRecord;
use crate::topology::{betti2, branch_divisors, kollar_allowed, smale_name, torsion_of, SmaleManifold};
use crate::yy::{weights_for, YyType};

/// Positivity, quasi-smoothness, certification and topology for one link.
pub fn classify(c: &LinkCandidate) -> Result<ResultRecord> {
    let weights = *c.sorted_weights();
    let degree = c.degree;
    let index = i64::try_from(c.index()).map_err(|_| Error::Overflow("index"))?;
    let quasismooth = quasismooth::is_quasismooth(&weights, degree);
    let mut rec = ResultRecord {
        weights,
        degree,
        index,
        yy_type: c.yy_type,
        exponents: c.exponents,
        quasismooth,
        verdict: Verdict::unknown(""),
        lichnerowicz: None,
        b2: None,
        torsion: None,
        manifold: None,
        provenance: None,
    };
    if index <= 0 {
        rec.verdict = Verdict::unknown(format!("not positive: I = {index}"));
        return Ok(rec);
    }
    if !rec.quasismooth.quasismooth {
        rec.verdict = Verdict::unknown("not quasi-smooth");
        return Ok(rec);
    }

    let mut verdict = klt_unchecked(c)?;
    let lich = certify::lichnerowicz_obstructed(&weights, c.index());
    combine(&mut verdict, lich, c)?;

    let divisors = branch_divisors(c)?;
    let torsion = torsion_of(&divisors);
    if !kollar_allowed(&torsion) {
        return Err(Error::Inconsistency(format!(
            "{} d={degree} is positive with torsion {torsion:?} outside Kollár's list",
            c.weights
        )));
    }
    let b2 = betti2(&weights, degree)?;
    let manifold = smale_name(b2, &torsion)?;

    rec.verdict = verdict;
    rec.lichnerowicz = Some(lich);
    rec.b2 = Some(b2);
    rec.torsion = Some(torsion);
    rec.manifold = Some(manifold.to_string());
    Ok(rec)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TorsionFilter {
    #[default]
    Any,
    Trivial,
    Nontrivial,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchFilters {
    pub torsion: TorsionFilter,
    pub verdict: Option<SeStatus>,
    pub manifold: Option<SmaleManifold>,
    pub index_min: Option<i64>,
    pub index_max: Option<i64>,
}

impl SearchFilters {
    fn index_ok(&self, index: i64) -> bool {
        self.index_min.is_none_or(|lo| index >= lo) && self.index_max.is_none_or(|hi| index <= hi)
    }

    fn accepts(&self, r: &ResultRecord) -> bool {
        let torsion_ok = match (self.torsion, &r.torsion) {
            (TorsionFilter::Any, _) => true,
            (TorsionFilter::Trivial, Some(t)) => t.is_empty(),
            (TorsionFilter::Nontrivial, Some(t)) => !t.is_empty(),
            (_, None) => false,
        };
        let verdict_ok = self.verdict.is_none_or(|v| v == r.verdict.status);
        let manifold_ok = self.manifold.as_ref().is_none_or(|m| r.manifold.as_deref() == Some(m.to_string().as_str()));
        torsion_ok && verdict_ok && manifold_ok && self.index_ok(r.index)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchSpec {
    pub types: Vec<YyType>,
    /// Inclusive `[lo, hi]` per exponent slot.
    pub bounds: [(u64, u64); 4],
    pub filters: SearchFilters,
    /// Worker threads; `None` uses the rayon default.
    pub jobs: Option<usize>,
}

impl SearchSpec {
    /// All standard types, every slot in `2..=max`, positive links only.
    pub fn uniform(types: Vec<YyType>, max: u64) -> Self {
        SearchSpec {
            types,
            bounds: [(2, max); 4],
            filters: SearchFilters { index_min: Some(1), ..SearchFilters::default() },
            jobs: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.types.is_empty() {
            return Err(Error::Usage("no Yau-Yu types requested".into()));
        }
        if let Some(t) = self.types.iter().find(|t| !t.is_standard()) {
            return Err(Error::UnsupportedType(*t));
        }
        for (slot, &(lo, hi)) in self.bounds.iter().enumerate() {
            if lo < 2 || hi < lo {
                return Err(Error::Usage(format!("exponent slot {slot} has bounds [{lo}, {hi}]; need 2 <= lo <= hi")));
            }
        }
        Ok(())
    }
}

/// Canonical key `(d, sorted w)`, which is also the output order.
type Key = (u64, [u64; 4]);

fn solve_slice(ty: YyType, a0: u64, bounds: &[(u64, u64); 4]) -> Result<Vec<(Key, LinkCandidate)>> {
    let mut out = Vec::new();
    for a1 in bounds[1].0..=bounds[1].1 {
        for a2 in bounds[2].0..=bounds[2].1 {
            for a3 in bounds[3].0..=bounds[3].1 {
                match weights_for(ty, &[a0, a1, a2, a3]) {
                    Ok(c) => out.push(((c.degree, *c.sorted_weights()), c)),
                    Err(Error::SingularSystem | Error::NonPositiveSolution(_)) => {}
                    Err(e) => return Err(e),
                }
            }
        }
    }
    Ok(out)
}

/// Runs [`classify`] over every exponent tuple in the spec.
pub fn enumerate(spec: &SearchSpec) -> Result<Vec<ResultRecord>> {
    enumerate_with(spec, classify)
}

/// Like [`enumerate`] with a caller-supplied classifier (for caching).
///
/// Duplicate `(sorted w, d)` keys keep the candidate with the smallest
/// `(type, exponents)`; output is ordered by `(d, sorted w)` whatever the
/// worker count.
pub fn enumerate_with<F>(spec: &SearchSpec, classifier: F) -> Result<Vec<ResultRecord>>
where
    F: Fn(&LinkCandidate) -> Result<ResultRecord> + Sync,
{
    spec.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(spec.jobs.unwrap_or(0))
        .build()
        .map_err(|e| Error::Usage(format!("cannot start worker pool: {e}")))?;

    let mut types = spec.types.clone();
    types.sort();
    types.dedup();
    let slices: Vec<(YyType, u64)> =
        types.iter().flat_map(|&t| (spec.bounds[0].0..=spec.bounds[0].1).map(move |a0| (t, a0))).collect();

    pool.install(|| {
        let solved: Vec<Vec<(Key, LinkCandidate)>> =
            slices.par_iter().map(|&(t, a0)| solve_slice(t, a0, &spec.bounds)).collect::<Result<_>>()?;

        // slices are in (type, a0) order and each is lexicographic in
        // (a1, a2, a3), so the first insertion per key is the smallest
        let mut unique: BTreeMap<Key, LinkCandidate> = BTreeMap::new();
        for (key, c) in solved.into_iter().flatten() {
            if spec.filters.index_ok(c.index() as i64) {
                unique.entry(key).or_insert(c);
            }
        }

        let candidates: Vec<LinkCandidate> = unique.into_values().collect();
        let records: Vec<ResultRecord> = candidates
            .par_iter()
            .map(|c| {
                let mut r = classifier(c)?;
                r.provenance = Some("search".into());
                Ok(r)
            })
            .collect::<Result<_>>()?;
        Ok(records.into_iter().filter(|r| spec.filters.accepts(r)).collect())
    })
}
