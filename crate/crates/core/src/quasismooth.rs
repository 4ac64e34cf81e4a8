//! Quasi-smoothness of the generic degree-`d` hypersurface in `P(w)`.
//!
//! All functions work on the weights in the order given; coordinates in
//! witnesses and failures index that array.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::exact::{first_solution, Monomial};

/// How condition (3) treats its two auxiliary monomials `z_i^c z_j^c' z_k`
/// and `z_i^e z_j^e' z_l`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QsMode {
    /// `k = l` allowed: one auxiliary monomial suffices.
    #[default]
    Permissive,
    /// Both remaining coordinates must occur as `k` and `l`.
    Strict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub condition: u8,
    pub coordinates: Vec<usize>,
    pub monomial: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub condition: u8,
    pub coordinates: Vec<usize>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuasiSmoothReport {
    pub quasismooth: bool,
    pub witnesses: Vec<Witness>,
    pub failure: Option<Failure>,
}

fn monomial_from(pairs: &[(usize, u64)]) -> Monomial {
    let mut e = [0; 4];
    for &(i, x) in pairs {
        e[i] += x;
    }
    Monomial::new(e)
}

/// `z_i^m` or `z_i^m z_j` (m ≥ 1) of degree `d`.
fn condition1_witness(w: &[u64; 4], d: u64, i: usize) -> Option<Monomial> {
    if d.is_multiple_of(w[i]) {
        return Some(Monomial::pure(i, d / w[i]));
    }
    (0..4).filter(|&j| j != i).find_map(|j| {
        let rest = d.checked_sub(w[j])?;
        (rest >= w[i] && rest % w[i] == 0).then(|| monomial_from(&[(i, rest / w[i]), (j, 1)]))
    })
}

fn pair_monomial(w: &[u64; 4], d: u64, i: usize, j: usize) -> Option<Monomial> {
    first_solution(&[w[i], w[j]], d).map(|b| monomial_from(&[(i, b[0]), (j, b[1])]))
}

/// `z_i^c z_j^c' z_k` of degree `d`, with `c, c' ≥ 0`.
fn auxiliary_monomial(w: &[u64; 4], d: u64, i: usize, j: usize, k: usize) -> Option<Monomial> {
    let rest = d.checked_sub(w[k])?;
    first_solution(&[w[i], w[j]], rest).map(|b| monomial_from(&[(i, b[0]), (j, b[1]), (k, 1)]))
}

fn pairs() -> impl Iterator<Item = (usize, usize)> {
    (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j)))
}

pub fn check_condition1(w: &[u64; 4], d: u64) -> [bool; 4] {
    [0, 1, 2, 3].map(|i| condition1_witness(w, d, i).is_some())
}

pub fn check_condition2(w: &[u64; 4], d: u64) -> bool {
    pairs().all(|(i, j)| w[i].gcd(&w[j]) == 1 || pair_monomial(w, d, i, j).is_some())
}

pub fn check_condition3(w: &[u64; 4], d: u64, mode: QsMode) -> bool {
    pairs().all(|(i, j)| condition3_pair(w, d, i, j, mode).is_ok())
}

fn condition3_pair(w: &[u64; 4], d: u64, i: usize, j: usize, mode: QsMode) -> Result<Vec<Monomial>, String> {
    if let Some(m) = pair_monomial(w, d, i, j) {
        return Ok(vec![m]);
    }
    let others: Vec<usize> = (0..4).filter(|&k| k != i && k != j).collect();
    let found: Vec<Monomial> = others.iter().filter_map(|&k| auxiliary_monomial(w, d, i, j, k)).collect();
    let enough = match mode {
        QsMode::Permissive => !found.is_empty(),
        QsMode::Strict => found.len() == others.len(),
    };
    if enough {
        Ok(found)
    } else {
        Err(format!(
            "no monomial in z{i},z{j} of degree {d} and {} auxiliary z{i}^c*z{j}^c'*z_k",
            if found.is_empty() { "no" } else { "only one" }
        ))
    }
}

pub fn is_quasismooth(w: &[u64; 4], d: u64) -> QuasiSmoothReport {
    is_quasismooth_with(w, d, QsMode::default())
}

pub fn is_quasismooth_with(w: &[u64; 4], d: u64, mode: QsMode) -> QuasiSmoothReport {
    let mut witnesses = Vec::new();
    let fail = |witnesses, condition, coordinates, detail| QuasiSmoothReport {
        quasismooth: false,
        witnesses,
        failure: Some(Failure { condition, coordinates, detail }),
    };

    for i in 0..4 {
        match condition1_witness(w, d, i) {
            Some(m) => witnesses.push(Witness { condition: 1, coordinates: vec![i], monomial: m.to_string() }),
            None => {
                let detail = format!("no monomial z{i}^m or z{i}^m*z_j of degree {d}");
                return fail(witnesses, 1, vec![i], detail);
            }
        }
    }
    for (i, j) in pairs() {
        let g = w[i].gcd(&w[j]);
        if g == 1 {
            continue;
        }
        match pair_monomial(w, d, i, j) {
            Some(m) => witnesses.push(Witness { condition: 2, coordinates: vec![i, j], monomial: m.to_string() }),
            None => {
                let detail = format!("gcd(w{i},w{j}) = {g} > 1 but {}*b + {}*c = {d} has no solution", w[i], w[j]);
                return fail(witnesses, 2, vec![i, j], detail);
            }
        }
    }
    for (i, j) in pairs() {
        match condition3_pair(w, d, i, j, mode) {
            Ok(ms) => witnesses.extend(ms.into_iter().map(|m| Witness {
                condition: 3,
                coordinates: vec![i, j],
                monomial: m.to_string(),
            })),
            Err(detail) => return fail(witnesses, 3, vec![i, j], detail),
        }
    }
    QuasiSmoothReport { quasismooth: true, witnesses, failure: None }
}
