//! Yau–Yu normal forms for weighted homogeneous polynomials in four variables.
//!
//! Ten of the nineteen types (I–VII, X, XI, XIX) are *standard*: their four
//! monomials give a square exponent system `A·w = d·1` that fixes the weights.
//! The remaining types carry an extra monomial with a side condition and are
//! cataloged here with their pattern and index formula only.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{qadd, ratio, solve_exponent_system, ExponentMatrix, Monomial, Rational};
use crate::link::{LinkCandidate, Support};
use crate::quasismooth;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum YyType {
    I,
    II,
    III,
    IV,
    V,
    VI,
    VII,
    VIII,
    IX,
    X,
    XI,
    XII,
    XIII,
    XIV,
    XV,
    XVI,
    XVII,
    XVIII,
    XIX,
}

use YyType::*;

impl YyType {
    pub const ALL: [YyType; 19] =
        [I, II, III, IV, V, VI, VII, VIII, IX, X, XI, XII, XIII, XIV, XV, XVI, XVII, XVIII, XIX];

    pub const STANDARD: [YyType; 10] = [I, II, III, IV, V, VI, VII, X, XI, XIX];

    pub fn is_standard(self) -> bool {
        Self::STANDARD.contains(&self)
    }

    pub fn roman(self) -> &'static str {
        const NAMES: [&str; 19] = [
            "I", "II", "III", "IV", "V", "VI", "VII", "VIII", "IX", "X", "XI", "XII", "XIII", "XIV", "XV", "XVI",
            "XVII", "XVIII", "XIX",
        ];
        NAMES[self as usize]
    }

    pub fn form(self) -> &'static YyForm {
        &CATALOG[self as usize]
    }
}

impl fmt::Display for YyType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.roman())
    }
}

impl FromStr for YyType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let upper = s.trim().to_ascii_uppercase();
        YyType::ALL
            .into_iter()
            .find(|t| t.roman() == upper)
            .ok_or_else(|| Error::Usage(format!("unknown Yau-Yu type '{s}'")))
    }
}

/// One catalog entry.
#[derive(Debug, Clone, Serialize)]
pub struct YyForm {
    pub type_id: YyType,
    pub pattern: &'static str,
    pub side_condition: Option<&'static str>,
    pub standard: bool,
    /// `|w|/d` as a function of the exponents `a, b, c, d`.
    pub index_formula: &'static str,
}

impl YyForm {
    pub fn index(&self, a: &[u64]) -> Result<Rational> {
        positivity_index(self.type_id, a)
    }
}

const fn form(
    type_id: YyType,
    pattern: &'static str,
    side_condition: Option<&'static str>,
    standard: bool,
    index_formula: &'static str,
) -> YyForm {
    YyForm { type_id, pattern, side_condition, standard, index_formula }
}

static CATALOG: [YyForm; 19] = [
    form(I, "z0^a + z1^b + z2^c + z3^d", None, true, "1/a + 1/b + 1/c + 1/d"),
    form(II, "z0^a + z1^b + z2^c + z2*z3^d", None, true, "1/a + 1/b + 1/c + (c-1)/(c*d)"),
    form(III, "z0^a + z1^b + z2^c*z3 + z2*z3^d", None, true, "1/a + 1/b + (d-1)/(c*d-1) + (c-1)/(c*d-1)"),
    form(IV, "z0^a + z0*z1^b + z2^c + z2*z3^d", None, true, "1/a + (a-1)/(a*b) + 1/c + (c-1)/(c*d)"),
    form(V, "z0^a*z1 + z0*z1^b + z2^c + z2*z3^d", None, true, "(b-1)/(a*b-1) + (a-1)/(a*b-1) + 1/c + (c-1)/(c*d)"),
    form(
        VI,
        "z0^a*z1 + z0*z1^b + z2^c*z3 + z2*z3^d",
        None,
        true,
        "(b-1)/(a*b-1) + (a-1)/(a*b-1) + (d-1)/(c*d-1) + (c-1)/(c*d-1)",
    ),
    form(VII, "z0^a + z1^b + z1*z2^c + z2*z3^d", None, true, "1/a + 1/b + (b-1)/(b*c) + (b*(c-1)+1)/(b*c*d)"),
    form(
        VIII,
        "z0^a + z1^b + z1*z2^c + z1*z3^d + z2^p*z3^q",
        Some("p*(b-1)/(b*c) + q*(b-1)/(b*d) = 1"),
        false,
        "1/a + 1/b + (b-1)/(b*c) + (b-1)/(b*d)",
    ),
    form(
        IX,
        "z0^a + z1^b*z3 + z2^c*z3 + z1*z3^d + z1^p*z2^q",
        Some("p*(d-1)/(b*d-1) + q*b*(d-1)/(c*(b*d-1)) = 1"),
        false,
        "1/a + (d-1)/(b*d-1) + b*(d-1)/(c*(b*d-1)) + (b-1)/(b*d-1)",
    ),
    form(
        X,
        "z0^a + z1^b*z2 + z2^c*z3 + z1*z3^d",
        None,
        true,
        "1/a + (d*(c-1)+1)/(b*c*d+1) + (b*(d-1)+1)/(b*c*d+1) + (c*(b-1)+1)/(b*c*d+1)",
    ),
    form(
        XI,
        "z0^a + z0*z1^b + z1*z2^c + z2*z3^d",
        None,
        true,
        "1/a + (a-1)/(a*b) + (a*(b-1)+1)/(a*b*c) + (a*b*(c-1)+(a-1))/(a*b*c*d)",
    ),
    form(
        XII,
        "z0^a + z0*z1^b + z0*z2^c + z1*z3^d + z1^p*z2^q",
        Some("p*(a-1)/(a*b) + q*(a-1)/(a*c) = 1"),
        false,
        "1/a + (a-1)/(a*b) + (a-1)/(a*c) + (a*(b-1)+1)/(a*b*d)",
    ),
    form(
        XIII,
        "z0^a + z0*z1^b + z1*z2^c + z1*z3^d + z2^p*z3^q",
        Some("p*(a*(b-1)+1)/(a*b*c) + q*(a*(b-1)+1)/(a*b*d) = 1"),
        false,
        "1/a + (a-1)/(a*b) + (a*(b-1)+1)/(a*b*c) + (a*(b-1)+1)/(a*b*d)",
    ),
    form(
        XIV,
        "z0^a + z0*z1^b + z0*z2^c + z0*z3^d + z1^p*z2^q + z2^r*z3^s",
        Some("p*(a-1)/(a*b) + q*(a-1)/(a*c) = 1 = r*(a-1)/(a*c) + s*(a-1)/(a*d)"),
        false,
        "1/a + (a-1)/(a*b) + (a-1)/(a*c) + (a-1)/(a*d)",
    ),
    form(
        XV,
        "z0^a*z1 + z0*z1^b + z0*z2^c + z2*z3^d + z1^p*z2^q",
        Some("p*(a-1)/(a*b-1) + q*b*(a-1)/(c*(a*b-1)) = 1"),
        false,
        "(b-1)/(a*b-1) + (a-1)/(a*b-1) + b*(a-1)/(c*(a*b-1)) + (c*(a*b-1)-b*(a-1))/(c*d*(a*b-1))",
    ),
    form(
        XVI,
        "z0^a*z1 + z0*z1^b + z0*z2^c + z0*z3^d + z1^p*z2^q + z2^r*z3^s",
        Some("p*(a-1)/(a*b-1) + q*b*(a-1)/(c*(a*b-1)) = 1 = r*(a-1)/(a*c) + s*(a-1)/(a*d)"),
        false,
        "(b-1)/(a*b-1) + (a-1)/(a*b-1) + b*(a-1)/(c*(a*b-1)) + b*(a-1)/(d*(a*b-1))",
    ),
    form(
        XVII,
        "z0^a*z1 + z0*z1^b + z1*z2^c + z0*z3^d + z1^p*z3^q + z0^r*z2^s",
        Some("p*(a-1)/(a*b-1) + q*b*(a-1)/(d*(a*b-1)) = 1 = r*(b-1)/(a*b-1) + s*a*(b-1)/(c*(a*b-1))"),
        false,
        "(b-1)/(a*b-1) + (a-1)/(a*b-1) + a*(b-1)/(c*(a*b-1)) + b*(a-1)/(d*(a*b-1))",
    ),
    form(
        XVIII,
        "z0^a*z2 + z0*z1^b + z1*z2^c + z1*z3^d + z2^p*z3^q",
        Some("p*(a*(b-1)+1)/(a*b*c+1) + q*c*(a*(b-1)+1)/(d*(a*b*c+1)) = 1"),
        false,
        "(b*(c-1)+1)/(a*b*c+1) + (c*(a-1)+1)/(a*b*c+1) + (a*(b-1)+1)/(a*b*c+1) + c*(a*(b-1)+1)/(d*(a*b*c+1))",
    ),
    form(
        XIX,
        "z0^a*z2 + z0*z1^b + z2^c*z3 + z1*z3^d",
        None,
        true,
        "((b*(d*(c-1)+1)-1) + (d*(c*(a-1)+1)-1) + (a*(b*(d-1)+1)-1) + (c*(a*(b-1)+1)-1))/(a*b*c*d-1)",
    ),
];

pub fn catalog() -> &'static [YyForm; 19] {
    &CATALOG
}

#[derive(Clone, Copy)]
enum Exp {
    Slot(usize),
    One,
}

type Term = (usize, Exp);

use Exp::{One, Slot};

/// Monomial `r` of each standard template carries exponent slot `r`.
fn template(ty: YyType) -> Option<[&'static [Term]; 4]> {
    const P0: &[Term] = &[(0, Slot(0))];
    const P1: &[Term] = &[(1, Slot(1))];
    const P2: &[Term] = &[(2, Slot(2))];
    const P3: &[Term] = &[(3, Slot(3))];
    const Z0A_Z1: &[Term] = &[(0, Slot(0)), (1, One)];
    const Z0A_Z2: &[Term] = &[(0, Slot(0)), (2, One)];
    const Z0_Z1B: &[Term] = &[(0, One), (1, Slot(1))];
    const Z1B_Z2: &[Term] = &[(1, Slot(1)), (2, One)];
    const Z1_Z2C: &[Term] = &[(1, One), (2, Slot(2))];
    const Z2C_Z3: &[Term] = &[(2, Slot(2)), (3, One)];
    const Z2_Z3D: &[Term] = &[(2, One), (3, Slot(3))];
    const Z1_Z3D: &[Term] = &[(1, One), (3, Slot(3))];
    Some(match ty {
        I => [P0, P1, P2, P3],
        II => [P0, P1, P2, Z2_Z3D],
        III => [P0, P1, Z2C_Z3, Z2_Z3D],
        IV => [P0, Z0_Z1B, P2, Z2_Z3D],
        V => [Z0A_Z1, Z0_Z1B, P2, Z2_Z3D],
        VI => [Z0A_Z1, Z0_Z1B, Z2C_Z3, Z2_Z3D],
        VII => [P0, P1, Z1_Z2C, Z2_Z3D],
        X => [P0, Z1B_Z2, Z2C_Z3, Z1_Z3D],
        XI => [P0, Z0_Z1B, Z1_Z2C, Z2_Z3D],
        XIX => [Z0A_Z2, Z0_Z1B, Z2C_Z3, Z1_Z3D],
        _ => return None,
    })
}

fn check_exponents(a: &[u64]) -> Result<[u64; 4]> {
    match a {
        [x0, x1, x2, x3] if a.iter().all(|&e| e >= 1) => Ok([*x0, *x1, *x2, *x3]),
        [_, _, _, _] => Err(Error::Usage(format!("exponents must be positive, got {a:?}"))),
        _ => Err(Error::Usage(format!("expected 4 exponents, got {}", a.len()))),
    }
}

/// The positional normal-form monomials of a standard type.
pub fn normal_form(ty: YyType, a: &[u64]) -> Result<Vec<Monomial>> {
    let a = check_exponents(a)?;
    let tmpl = template(ty).ok_or(Error::UnsupportedType(ty))?;
    Ok(tmpl
        .iter()
        .map(|terms| {
            let mut e = [0u64; 4];
            for (var, exp) in terms.iter() {
                e[*var] += match exp {
                    Slot(s) => a[*s],
                    One => 1,
                };
            }
            Monomial::new(e)
        })
        .collect())
}

pub fn exponent_matrix(ty: YyType, a: &[u64]) -> Result<ExponentMatrix> {
    let rows = normal_form(ty, a)?;
    Ok(ExponentMatrix::new([rows[0].exponents, rows[1].exponents, rows[2].exponents, rows[3].exponents]))
}

/// Solves the exponent system of a standard type and returns the generic link.
pub fn weights_for(ty: YyType, a: &[u64]) -> Result<LinkCandidate> {
    let m = exponent_matrix(ty, a)?;
    let (weights, degree) = solve_exponent_system(&m)?;
    Ok(LinkCandidate {
        weights,
        degree,
        yy_type: Some(ty),
        exponents: Some(check_exponents(a)?),
        support: Support::Generic,
    })
}

/// `|w|/d` from the closed-form index formula of the type.
pub fn positivity_index(ty: YyType, a: &[u64]) -> Result<Rational> {
    let [a, b, c, d] = check_exponents(a)?.map(|x| x as i128);
    let q = |n: i128, m: i128| ratio(n, m, "index formula");
    let sum = |terms: &[Rational]| -> Result<Rational> {
        terms.iter().try_fold(Rational::from_integer(0), |acc, t| qadd(&acc, t))
    };
    let ab = a * b;
    let cd = c * d;
    match ty {
        I => sum(&[q(1, a)?, q(1, b)?, q(1, c)?, q(1, d)?]),
        II => sum(&[q(1, a)?, q(1, b)?, q(1, c)?, q(c - 1, cd)?]),
        III => sum(&[q(1, a)?, q(1, b)?, q(d - 1, cd - 1)?, q(c - 1, cd - 1)?]),
        IV => sum(&[q(1, a)?, q(a - 1, ab)?, q(1, c)?, q(c - 1, cd)?]),
        V => sum(&[q(b - 1, ab - 1)?, q(a - 1, ab - 1)?, q(1, c)?, q(c - 1, cd)?]),
        VI => sum(&[q(b - 1, ab - 1)?, q(a - 1, ab - 1)?, q(d - 1, cd - 1)?, q(c - 1, cd - 1)?]),
        VII => sum(&[q(1, a)?, q(1, b)?, q(b - 1, b * c)?, q(b * (c - 1) + 1, b * cd)?]),
        VIII => sum(&[q(1, a)?, q(1, b)?, q(b - 1, b * c)?, q(b - 1, b * d)?]),
        IX => {
            let bd1 = b * d - 1;
            sum(&[q(1, a)?, q(d - 1, bd1)?, q(b * (d - 1), c * bd1)?, q(b - 1, bd1)?])
        }
        X => {
            let den = b * cd + 1;
            sum(&[q(1, a)?, q(d * (c - 1) + 1, den)?, q(b * (d - 1) + 1, den)?, q(c * (b - 1) + 1, den)?])
        }
        XI => sum(&[q(1, a)?, q(a - 1, ab)?, q(a * (b - 1) + 1, ab * c)?, q(ab * (c - 1) + (a - 1), ab * cd)?]),
        XII => sum(&[q(1, a)?, q(a - 1, ab)?, q(a - 1, a * c)?, q(a * (b - 1) + 1, ab * d)?]),
        XIII => {
            let t = a * (b - 1) + 1;
            sum(&[q(1, a)?, q(a - 1, ab)?, q(t, ab * c)?, q(t, ab * d)?])
        }
        XIV => sum(&[q(1, a)?, q(a - 1, ab)?, q(a - 1, a * c)?, q(a - 1, a * d)?]),
        XV => {
            let e = ab - 1;
            sum(&[q(b - 1, e)?, q(a - 1, e)?, q(b * (a - 1), c * e)?, q(c * e - b * (a - 1), cd * e)?])
        }
        XVI => {
            let e = ab - 1;
            sum(&[q(b - 1, e)?, q(a - 1, e)?, q(b * (a - 1), c * e)?, q(b * (a - 1), d * e)?])
        }
        XVII => {
            let e = ab - 1;
            sum(&[q(b - 1, e)?, q(a - 1, e)?, q(a * (b - 1), c * e)?, q(b * (a - 1), d * e)?])
        }
        XVIII => {
            let e = ab * c + 1;
            let t = a * (b - 1) + 1;
            sum(&[q(b * (c - 1) + 1, e)?, q(c * (a - 1) + 1, e)?, q(t, e)?, q(c * t, d * e)?])
        }
        XIX => {
            let e = ab * cd - 1;
            sum(&[
                q(b * (d * (c - 1) + 1) - 1, e)?,
                q(d * (c * (a - 1) + 1) - 1, e)?,
                q(a * (b * (d - 1) + 1) - 1, e)?,
                q(c * (a * (b - 1) + 1) - 1, e)?,
            ])
        }
    }
}

/// A template monomial `z_i^{a'}·z_j` minimized to the pure power `z_i^{a}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Perturbation {
    pub coordinate: usize,
    pub partner: usize,
    pub source_exponent: u64,
    pub target_exponent: u64,
}

impl Perturbation {
    pub fn source(&self) -> Monomial {
        let mut e = [0; 4];
        e[self.coordinate] = self.source_exponent;
        e[self.partner] = 1;
        Monomial::new(e)
    }

    pub fn target(&self) -> Monomial {
        Monomial::pure(self.coordinate, self.target_exponent)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Realization {
    /// Template exponents; under a perturbation the slot holds `a'`, not the listed value.
    pub exponents: [u64; 4],
    /// `permutation[i]` is the sorted position of normal-form variable `z_i`.
    pub permutation: [usize; 4],
    pub perturbation: Option<Perturbation>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum RealizeOutcome {
    Realized(Realization),
    Unrealized { trace: Vec<String> },
}

fn distinct_permutations(items: [u64; 4]) -> Vec<[u64; 4]> {
    let mut out = BTreeSet::new();
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                for l in 0..4 {
                    let idx = [i, j, k, l];
                    let mut seen = [false; 4];
                    if idx.iter().all(|&x| !std::mem::replace(&mut seen[x], true)) {
                        out.insert(idx.map(|x| items[x]));
                    }
                }
            }
        }
    }
    out.into_iter().collect()
}

fn permutation_of(c: &LinkCandidate) -> [usize; 4] {
    std::array::from_fn(|i| c.weights.sorted_position(i))
}

/// Finds a positional assignment of an unordered exponent multiset to the
/// template slots of `ty` reproducing the target `(sorted weights, degree)`.
///
/// Exact assignments are tried first in lexicographic order; failing that,
/// readings where one listed exponent is the pure power that minimizes a
/// template monomial `z_i^{a'}·z_j`.
pub fn realize(ty: YyType, multiset: &[u64], target: (&[u64; 4], u64)) -> Result<RealizeOutcome> {
    if !ty.is_standard() {
        return Err(Error::UnsupportedType(ty));
    }
    let ms = check_exponents(multiset)?;
    let (target_w, target_d) = target;
    let perms = distinct_permutations(ms);
    let mut trace = Vec::new();

    for p in &perms {
        match weights_for(ty, p) {
            Ok(c) if c.sorted_weights() == target_w && c.degree == target_d => {
                return Ok(RealizeOutcome::Realized(Realization {
                    exponents: *p,
                    permutation: permutation_of(&c),
                    perturbation: None,
                }));
            }
            Ok(c) => trace.push(format!("{ty} {p:?}: w={} d={}", c.weights, c.degree)),
            Err(e) => trace.push(format!("{ty} {p:?}: {e}")),
        }
    }

    // The row may list the minimized form of a template monomial: slot value
    // `e` with `e·w_i = d` standing for `z_i^{a'}·z_j` of the same degree.
    let tmpl = template(ty).expect("standard");
    let mut attempts = 0usize;
    for p in &perms {
        let base = exponent_matrix(ty, p)?;
        for (r, terms) in tmpl.iter().enumerate() {
            let (i, j, s) = match terms {
                [(i, Slot(s)), (j, One)] | [(j, One), (i, Slot(s))] => (*i, *j, *s),
                _ => continue,
            };
            attempts += 1;
            let target_exp = p[s];
            let mut m = base;
            m.entries[r] = Monomial::pure(i, target_exp).exponents;
            let Ok((w, d)) = solve_exponent_system(&m) else { continue };
            if w.sorted() != target_w || d != target_d {
                continue;
            }
            let pos = w.positional();
            let Some(rest) = d.checked_sub(pos[j]).filter(|x| *x >= pos[i] && x % pos[i] == 0) else {
                continue;
            };
            let source_exp = rest / pos[i];
            let mut exponents = *p;
            exponents[s] = source_exp;
            let c = LinkCandidate {
                weights: w,
                degree: d,
                yy_type: Some(ty),
                exponents: Some(exponents),
                support: Support::Generic,
            };
            return Ok(RealizeOutcome::Realized(Realization {
                exponents,
                permutation: permutation_of(&c),
                perturbation: Some(Perturbation {
                    coordinate: i,
                    partner: j,
                    source_exponent: source_exp,
                    target_exponent: target_exp,
                }),
            }));
        }
    }
    trace.push(format!("{attempts} minimized-monomial readings tried, none matched"));
    Ok(RealizeOutcome::Unrealized { trace })
}

/// Replaces one positional weight, keeping the degree.
pub fn jiggle(candidate: &LinkCandidate, coordinate: usize, new_weight: u64) -> Result<LinkCandidate> {
    if coordinate >= 4 {
        return Err(Error::Usage(format!("coordinate {coordinate} out of range")));
    }
    if candidate.index() <= 0 {
        return Err(Error::Precondition(format!("jiggling needs a positive index, got I = {}", candidate.index())));
    }
    let mut w = candidate.weights.positional();
    if w[coordinate] == new_weight {
        return Ok(candidate.clone());
    }
    w[coordinate] = new_weight;
    let jiggled = LinkCandidate::new(w, candidate.degree)?;
    let report = quasismooth::is_quasismooth(jiggled.sorted_weights(), jiggled.degree);
    if !report.quasismooth {
        let why = report.failure.map(|f| f.detail).unwrap_or_default();
        return Err(Error::QuasiSmoothnessLost(why));
    }
    Ok(jiggled)
}

/// Replaces every `z_i^{a'}·z_j` (j ≠ i) by `z_i^{d/w_i}` wherever `w_i | d`.
pub fn minimize(support: &[Monomial], weights: &[u64; 4], degree: u64) -> Vec<Monomial> {
    let mut out = BTreeSet::new();
    for m in support {
        let vars: Vec<usize> = m.variables().collect();
        let mut replaced = None;
        if let [x, y] = vars[..] {
            for (i, j) in [(x, y), (y, x)] {
                if m.exponents[j] == 1 && degree.is_multiple_of(weights[i]) {
                    replaced = Some(Monomial::pure(i, degree / weights[i]));
                    break;
                }
            }
        }
        out.insert(replaced.unwrap_or(*m));
    }
    out.into_iter().collect()
}
