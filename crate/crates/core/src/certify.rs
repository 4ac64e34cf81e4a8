//! Sasaki–Einstein certification through the klt estimates, and the
//! Lichnerowicz obstruction.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{has_solution, mul};
use crate::link::LinkCandidate;
use crate::quasismooth;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeStatus {
    SeCertified,
    Obstructed,
    Unknown,
}

/// The exact integers compared by the three klt branches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Margins {
    pub two_i_d: i128,
    pub three_w0_w1: i128,
    pub three_w0_w2: i128,
    pub three_w0_w3: i128,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub status: SeStatus,
    pub branch: Option<u8>,
    pub reason: Option<String>,
    pub margins: Option<Margins>,
}

impl Verdict {
    pub fn unknown(reason: impl Into<String>) -> Self {
        Verdict { status: SeStatus::Unknown, branch: None, reason: Some(reason.into()), margins: None }
    }

    pub fn is_certified(&self) -> bool {
        self.status == SeStatus::SeCertified
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lichnerowicz {
    pub obstructed: bool,
    /// `I = 3·w0` exactly.
    pub marginal: bool,
}

pub fn fano_index(w: &[u64; 4], d: u64) -> i128 {
    w.iter().map(|&x| x as i128).sum::<i128>() - d as i128
}

fn positional_of_sorted(c: &LinkCandidate, sorted: &[usize]) -> Vec<usize> {
    let order = c.weights.original_order();
    sorted.iter().map(|&k| order[k]).collect()
}

/// Whether `(0,0,0,1)` (largest weight) lies on the hypersurface.
pub fn point_in_variety(c: &LinkCandidate) -> bool {
    !c.has_monomial_in(&positional_of_sorted(c, &[3]))
}

/// Whether the line `z0 = z1 = 0` (two smallest weights) lies on the hypersurface.
pub fn line_in_variety(c: &LinkCandidate) -> bool {
    !c.has_monomial_in(&positional_of_sorted(c, &[2, 3]))
}

/// Generic-support forms of the two side conditions on sorted weights.
pub fn point_in_generic_variety(w: &[u64; 4], d: u64) -> bool {
    !d.is_multiple_of(w[3])
}

pub fn line_in_generic_variety(w: &[u64; 4], d: u64) -> bool {
    !has_solution(&[w[2], w[3]], d)
}

pub fn margins(w: &[u64; 4], d: u64) -> Result<Margins> {
    let i = fano_index(w, d);
    let w0 = w[0] as i128;
    Ok(Margins {
        two_i_d: mul(mul(2, i)?, d as i128)?,
        three_w0_w1: mul(mul(3, w0)?, w[1] as i128)?,
        three_w0_w2: mul(mul(3, w0)?, w[2] as i128)?,
        three_w0_w3: mul(mul(3, w0)?, w[3] as i128)?,
    })
}

/// Tries the three klt branches in order, with strict inequalities.
pub fn klt_certificate(c: &LinkCandidate) -> Result<Verdict> {
    if c.index() <= 0 {
        return Err(Error::Precondition(format!("klt check needs I > 0, got {}", c.index())));
    }
    let report = quasismooth::is_quasismooth(c.sorted_weights(), c.degree);
    if !report.quasismooth {
        return Err(Error::Precondition(format!("{} is not quasi-smooth", c.weights)));
    }
    klt_unchecked(c)
}

pub(crate) fn klt_unchecked(c: &LinkCandidate) -> Result<Verdict> {
    let m = margins(c.sorted_weights(), c.degree)?;
    let branch = if m.two_i_d < m.three_w0_w1 {
        Some(1)
    } else if m.two_i_d < m.three_w0_w2 && !line_in_variety(c) {
        Some(2)
    } else if m.two_i_d < m.three_w0_w3 && !point_in_variety(c) {
        Some(3)
    } else {
        None
    };
    Ok(match branch {
        Some(b) => Verdict { status: SeStatus::SeCertified, branch: Some(b), reason: None, margins: Some(m) },
        None => Verdict {
            status: SeStatus::Unknown,
            branch: None,
            reason: Some("no klt estimate holds".into()),
            margins: Some(m),
        },
    })
}

/// Obstructed iff `I > 3·w_min`.
pub fn lichnerowicz_obstructed(w: &[u64; 4], index: i128) -> Lichnerowicz {
    let bound = 3 * *w.iter().min().expect("four weights") as i128;
    Lichnerowicz { obstructed: index > bound, marginal: index == bound }
}

/// Combined verdict: klt certificate, then the obstruction.
pub fn certify(c: &LinkCandidate) -> Result<(Verdict, Lichnerowicz)> {
    let mut verdict = klt_certificate(c)?;
    let lich = lichnerowicz_obstructed(c.sorted_weights(), c.index());
    combine(&mut verdict, lich, c)?;
    Ok((verdict, lich))
}

pub(crate) fn combine(verdict: &mut Verdict, lich: Lichnerowicz, c: &LinkCandidate) -> Result<()> {
    if !lich.obstructed {
        return Ok(());
    }
    if verdict.is_certified() {
        return Err(Error::Inconsistency(format!(
            "{} d={} is klt-certified and Lichnerowicz-obstructed",
            c.weights, c.degree
        )));
    }
    verdict.status = SeStatus::Obstructed;
    verdict.reason = Some(format!("Lichnerowicz: I = {} > 3*w0 = {}", c.index(), 3 * c.sorted_weights()[0]));
    Ok(())
}
