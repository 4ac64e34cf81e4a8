//! Exact integer and rational arithmetic shared by every other module.
//!
//! All products go through checked `i128` operations; an overflow is an
//! [`Error::Overflow`], never a wrapped value.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = Ratio<i128>;

pub(crate) fn mul(a: i128, b: i128) -> Result<i128> {
    a.checked_mul(b).ok_or(Error::Overflow("integer product"))
}

pub(crate) fn add(a: i128, b: i128) -> Result<i128> {
    a.checked_add(b).ok_or(Error::Overflow("integer sum"))
}

pub(crate) fn qadd(a: &Rational, b: &Rational) -> Result<Rational> {
    a.checked_add(b).ok_or(Error::Overflow("rational sum"))
}

pub(crate) fn qsub(a: &Rational, b: &Rational) -> Result<Rational> {
    a.checked_sub(b).ok_or(Error::Overflow("rational difference"))
}

pub(crate) fn qmul(a: &Rational, b: &Rational) -> Result<Rational> {
    a.checked_mul(b).ok_or(Error::Overflow("rational product"))
}

/// `num / den` as a reduced rational, erroring on a zero denominator.
pub(crate) fn ratio(num: i128, den: i128, what: &'static str) -> Result<Rational> {
    if den == 0 {
        return Err(Error::DivisionByZero(what));
    }
    Ok(Rational::new(num, den))
}

pub fn gcd_vec(values: &[u64]) -> Result<u64> {
    match values.split_first() {
        None => Err(Error::Usage("gcd of an empty list".into())),
        Some((first, rest)) => Ok(rest.iter().fold(*first, |g, v| g.gcd(v))),
    }
}

pub(crate) fn lcm_checked(a: u64, b: u64) -> Result<u64> {
    if a == 0 || b == 0 {
        return Ok(0);
    }
    (a / a.gcd(&b)).checked_mul(b).ok_or(Error::Overflow("lcm"))
}

/// Four positive, coprime weights stored sorted ascending, together with the
/// positional index each sorted entry came from.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeightVector {
    w: [u64; 4],
    original_order: [usize; 4],
}

impl WeightVector {
    /// Builds the canonical form from weights given in normal-form (positional) order.
    pub fn new(positional: [u64; 4]) -> Result<Self> {
        if positional.contains(&0) {
            return Err(Error::Usage(format!("weights must be positive, got {positional:?}")));
        }
        let g = gcd_vec(&positional)?;
        if g != 1 {
            return Err(Error::GcdNotOne { weights: positional.to_vec(), gcd: g });
        }
        let mut order = [0, 1, 2, 3];
        order.sort_by_key(|&i| (positional[i], i));
        let w = order.map(|i| positional[i]);
        Ok(WeightVector { w, original_order: order })
    }

    pub fn sorted(&self) -> &[u64; 4] {
        &self.w
    }

    /// `original_order[k]` is the positional index of the k-th smallest weight.
    pub fn original_order(&self) -> &[usize; 4] {
        &self.original_order
    }

    pub fn positional(&self) -> [u64; 4] {
        let mut out = [0; 4];
        for (k, &i) in self.original_order.iter().enumerate() {
            out[i] = self.w[k];
        }
        out
    }

    /// Sorted position of the positional coordinate `i`.
    pub fn sorted_position(&self, i: usize) -> usize {
        self.original_order.iter().position(|&p| p == i).expect("index in 0..4")
    }

    pub fn sum(&self) -> u64 {
        self.w.iter().sum()
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.w;
        write!(f, "({a},{b},{c},{d})")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Monomial {
    pub exponents: [u64; 4],
}

impl Monomial {
    pub fn new(exponents: [u64; 4]) -> Self {
        Monomial { exponents }
    }

    pub fn pure(i: usize, e: u64) -> Self {
        let mut exponents = [0; 4];
        exponents[i] = e;
        Monomial { exponents }
    }

    pub fn degree(&self, weights: &[u64; 4]) -> Result<u64> {
        let mut total: u64 = 0;
        for (e, w) in self.exponents.iter().zip(weights) {
            let term = u64::checked_mul(*e, *w).ok_or(Error::Overflow("monomial degree"))?;
            total = u64::checked_add(total, term).ok_or(Error::Overflow("monomial degree"))?;
        }
        Ok(total)
    }

    /// Coordinates with a non-zero exponent.
    pub fn variables(&self) -> impl Iterator<Item = usize> + '_ {
        (0..4).filter(|&i| self.exponents[i] > 0)
    }

    /// True when every variable of the monomial lies in `coords`.
    pub fn supported_in(&self, coords: &[usize]) -> bool {
        self.variables().all(|i| coords.contains(&i))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.exponents.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "z{i}")?;
            } else {
                write!(f, "z{i}^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

impl FromStr for Monomial {
    type Err = Error;

    /// Parses the `Display` form, e.g. `z1^3*z2`. Repeated variables add up.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Usage(format!("cannot parse monomial '{s}'"));
        let mut exponents = [0u64; 4];
        for factor in s.trim().split('*') {
            let factor = factor.trim();
            let (var, exp) = factor.split_once('^').unwrap_or((factor, "1"));
            let i: usize = var.strip_prefix('z').ok_or_else(bad)?.parse().map_err(|_| bad())?;
            let e: u64 = exp.trim().parse().map_err(|_| bad())?;
            let slot = exponents.get_mut(i).ok_or_else(bad)?;
            *slot = slot.checked_add(e).ok_or(Error::Overflow("monomial exponent"))?;
        }
        Ok(Monomial { exponents })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ExponentMatrix {
    pub entries: [[u64; 4]; 4],
}

impl ExponentMatrix {
    pub fn new(entries: [[u64; 4]; 4]) -> Self {
        ExponentMatrix { entries }
    }

    pub fn identity() -> Self {
        let mut entries = [[0; 4]; 4];
        for (i, row) in entries.iter_mut().enumerate() {
            row[i] = 1;
        }
        ExponentMatrix { entries }
    }

    fn as_i128(&self) -> [[i128; 4]; 4] {
        self.entries.map(|row| row.map(|x| x as i128))
    }

    pub fn det(&self) -> Result<i128> {
        det4(&self.as_i128())
    }

    /// `A·w - d·1` computed exactly.
    pub fn residual(&self, w: &[u64; 4], d: u64) -> Result<[i128; 4]> {
        let mut out = [0i128; 4];
        for (r, row) in self.entries.iter().enumerate() {
            let mut acc = -(d as i128);
            for (a, x) in row.iter().zip(w) {
                acc = add(acc, mul(*a as i128, *x as i128)?)?;
            }
            out[r] = acc;
        }
        Ok(out)
    }
}

fn det3(m: &[[i128; 3]; 3]) -> Result<i128> {
    let minor = |a: usize, b: usize, c: usize, d: usize| -> Result<i128> {
        mul(m[1][a], m[2][b])?.checked_sub(mul(m[1][c], m[2][d])?).ok_or(Error::Overflow("determinant"))
    };
    let t0 = mul(m[0][0], minor(1, 2, 2, 1)?)?;
    let t1 = mul(m[0][1], minor(0, 2, 2, 0)?)?;
    let t2 = mul(m[0][2], minor(0, 1, 1, 0)?)?;
    add(t0.checked_sub(t1).ok_or(Error::Overflow("determinant"))?, t2)
}

fn det4(m: &[[i128; 4]; 4]) -> Result<i128> {
    let mut total = 0i128;
    for col in 0..4 {
        if m[0][col] == 0 {
            continue;
        }
        let mut minor = [[0i128; 3]; 3];
        for r in 1..4 {
            let rest = (0..4).filter(|&c| c != col);
            for (k, c) in rest.enumerate() {
                minor[r - 1][k] = m[r][c];
            }
        }
        let term = mul(m[0][col], det3(&minor)?)?;
        total = if col % 2 == 0 {
            add(total, term)?
        } else {
            total.checked_sub(term).ok_or(Error::Overflow("determinant"))?
        };
    }
    Ok(total)
}

/// Solves `A·w = d·(1,1,1,1)` by Cramer's rule and returns the primitive
/// integer solution (gcd(w) = 1). The weights come back in positional order
/// inside the [`WeightVector`].
pub fn solve_exponent_system(a: &ExponentMatrix) -> Result<(WeightVector, u64)> {
    let m = a.as_i128();
    let det = det4(&m)?;
    if det == 0 {
        return Err(Error::SingularSystem);
    }
    let mut x = [Rational::zero(); 4];
    for (col, xi) in x.iter_mut().enumerate() {
        let mut mc = m;
        for row in mc.iter_mut() {
            row[col] = 1;
        }
        *xi = ratio(det4(&mc)?, det, "Cramer quotient")?;
    }
    if x.iter().any(|v| *v <= Rational::zero()) {
        let shown: Vec<String> = x.iter().map(|v| v.to_string()).collect();
        return Err(Error::NonPositiveSolution(shown.join(", ")));
    }
    let mut den: u64 = 1;
    for v in &x {
        den = lcm_checked(den, *v.denom() as u64)?;
    }
    let den_q = Rational::from_integer(den as i128);
    let mut scaled = [0u64; 4];
    for (s, v) in scaled.iter_mut().zip(&x) {
        *s = qmul(v, &den_q)?.to_integer() as u64;
    }
    let g = gcd_vec(&scaled)?;
    let w = scaled.map(|v| v / g);
    debug_assert_eq!(den % g, 0);
    let d = den / g;
    let wv = WeightVector::new(w)?;
    debug_assert!(a.residual(&w, d)?.iter().all(|r| *r == 0));
    Ok((wv, d))
}

/// All non-negative integer tuples `b` with `Σ b_i·w_i = d`, lexicographically ascending.
pub fn nonneg_solutions(weights: &[u64], d: u64) -> Vec<Vec<u64>> {
    fn rec(weights: &[u64], rest: u64, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        match weights.split_first() {
            None => {
                if rest == 0 {
                    out.push(prefix.clone());
                }
            }
            Some((&w, tail)) => {
                for b in 0..=rest / w {
                    prefix.push(b);
                    rec(tail, rest - b * w, prefix, out);
                    prefix.pop();
                }
            }
        }
    }
    assert!(weights.iter().all(|&w| w > 0), "weights must be positive");
    let mut out = Vec::new();
    rec(weights, d, &mut Vec::with_capacity(weights.len()), &mut out);
    out
}

/// First (lexicographic) solution of `Σ b_i·w_i = d`, with early exit.
///
/// The two-variable case runs in `O(min(d/w_0, w_1))` by scanning residues.
pub fn first_solution(weights: &[u64], d: u64) -> Option<Vec<u64>> {
    match weights {
        [] => (d == 0).then(Vec::new),
        [w] => d.is_multiple_of(*w).then(|| vec![d / w]),
        [w0, w1] => {
            let period = w1 / w0.gcd(w1);
            let limit = (d / w0).min(period.saturating_sub(1));
            (0..=limit).find(|b| (d - b * w0).is_multiple_of(*w1)).map(|b| vec![b, (d - b * w0) / w1])
        }
        [w0, tail @ ..] => (0..=d / w0).find_map(|b| {
            first_solution(tail, d - b * w0).map(|mut rest| {
                rest.insert(0, b);
                rest
            })
        }),
    }
}

pub fn has_solution(weights: &[u64], d: u64) -> bool {
    first_solution(weights, d).is_some()
}
