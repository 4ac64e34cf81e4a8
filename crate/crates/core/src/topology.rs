//! Smale-manifold topology of a link: branch divisors, curve genus, second
//! Betti number, torsion and the canonical name `kM∞#M_{m1}#…`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{gcd_vec, lcm_checked, qadd, qmul, qsub, ratio, Rational};
use crate::link::{LinkCandidate, Support};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchDivisor {
    /// Sorted position of the coordinate `z_i` with `D_i = {z_i = 0}`.
    pub coordinate: usize,
    pub weight: u64,
    pub ramification: u64,
    pub curve_weights: [u64; 3],
    pub curve_degree: u64,
    pub genus: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionEntry {
    pub m: u64,
    pub genus: u64,
}

/// Branch divisors with `m_i = gcd(w_j : j ≠ i) > 1`.
pub fn branch_divisors(c: &LinkCandidate) -> Result<Vec<BranchDivisor>> {
    let w = c.sorted_weights();
    let d = c.degree;
    let order = c.weights.original_order();
    let mut out = Vec::new();
    for i in 0..4 {
        let others: Vec<u64> = (0..4).filter(|&j| j != i).map(|j| w[j]).collect();
        let m = gcd_vec(&others)?;
        if m == 1 {
            continue;
        }
        if !d.is_multiple_of(m) {
            return Err(Error::Inconsistency(format!(
                "ramification index {m} of the w={} coordinate does not divide d={d}",
                w[i]
            )));
        }
        // a monomial z_j^a z_i forces m_i = 1
        let stray = (0..4).filter(|&j| j != i).find(|&j| match &c.support {
            Support::Generic => d > w[i] && (d - w[i]).is_multiple_of(w[j]),
            Support::Explicit(ms) => ms.iter().any(|mo| {
                let e = mo.exponents;
                e[order[i]] == 1 && e[order[j]] >= 1 && mo.variables().count() == 2
            }),
        });
        if let Some(j) = stray {
            return Err(Error::Inconsistency(format!(
                "a monomial z^a*z' pairs weights {} and {} at degree {d} but m = {m} > 1",
                w[j], w[i]
            )));
        }
        let curve_weights = [others[0] / m, others[1] / m, others[2] / m];
        let curve_degree = d / m;
        let genus = curve_genus(&curve_weights, curve_degree)?;
        if rationality_shortcut(&curve_weights, curve_degree) && genus != 0 {
            return Err(Error::Inconsistency(format!(
                "curve in P{curve_weights:?} of degree {curve_degree} has |w'| > d' but genus {genus}"
            )));
        }
        out.push(BranchDivisor { coordinate: i, weight: w[i], ramification: m, curve_weights, curve_degree, genus });
    }
    Ok(out)
}

/// Genus of a quasi-smooth curve of degree `d'` in `P(w')`.
pub fn curve_genus(w: &[u64; 3], d: u64) -> Result<u64> {
    if w.contains(&0) || d == 0 {
        return Err(Error::Usage(format!("curve data P{w:?}, d'={d} must be positive")));
    }
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let g = w[i].gcd(&w[j]);
        if !d.is_multiple_of(g) {
            return Err(Error::Inconsistency(format!(
                "curve P{w:?} of degree {d} is not well-formed: gcd(w'{i},w'{j}) = {g} does not divide d'"
            )));
        }
    }
    let [a, b, c] = w.map(|x| x as i128);
    let d = d as i128;
    let mut twice = ratio(d * d, a * b * c, "genus")?;
    for (x, y) in [(a, b), (a, c), (b, c)] {
        let t = qmul(&Rational::from_integer(d), &ratio(x.gcd(&y), x * y, "genus")?)?;
        twice = qsub(&twice, &t)?;
    }
    for x in [a, b, c] {
        twice = qadd(&twice, &ratio(d.gcd(&x), x, "genus")?)?;
    }
    twice = qsub(&twice, &Rational::from_integer(1))?;
    if !twice.is_integer() || twice.to_integer() % 2 != 0 || twice.to_integer() < 0 {
        return Err(Error::Inconsistency(format!("genus formula gives 2g = {twice} for P{w:?}, d'={d}")));
    }
    Ok((twice.to_integer() / 2) as u64)
}

/// `|w'| > d'` forces a rational curve.
pub fn rationality_shortcut(w: &[u64; 3], d: u64) -> bool {
    w.iter().sum::<u64>() > d
}

/// Second Betti number from the divisor expansion over coordinate subsets.
pub fn betti2(w: &[u64; 4], d: u64) -> Result<u64> {
    let uv: Vec<(u64, u64)> = w
        .iter()
        .map(|&x| {
            let g = d.gcd(&x);
            (d / g, x / g)
        })
        .collect();
    let mut total = Rational::from_integer(0);
    for mask in 0u32..16 {
        let size = mask.count_ones();
        let mut num: i128 = 1;
        let mut lcm: u64 = 1;
        let mut vprod: i128 = 1;
        for (i, &(u, v)) in uv.iter().enumerate() {
            if mask & (1 << i) != 0 {
                num = num.checked_mul(u as i128).ok_or(Error::Overflow("betti2"))?;
                lcm = lcm_checked(lcm, u)?;
                vprod = vprod.checked_mul(v as i128).ok_or(Error::Overflow("betti2"))?;
            }
        }
        let den = (lcm as i128).checked_mul(vprod).ok_or(Error::Overflow("betti2"))?;
        let mut term = ratio(num, den, "betti2")?;
        if (4 - size) % 2 == 1 {
            term = -term;
        }
        total = qadd(&total, &term)?;
    }
    if !total.is_integer() || total.to_integer() < 0 {
        return Err(Error::Inconsistency(format!("b2 of {w:?}, d={d} evaluates to {total}")));
    }
    Ok(total.to_integer() as u64)
}

/// Non-rational branch divisors: `H_2` torsion is `⊕ (Z_m)^{2g}`.
pub fn torsion(c: &LinkCandidate) -> Result<Vec<TorsionEntry>> {
    Ok(torsion_of(&branch_divisors(c)?))
}

pub fn torsion_of(divisors: &[BranchDivisor]) -> Vec<TorsionEntry> {
    divisors.iter().filter(|b| b.genus > 0).map(|b| TorsionEntry { m: b.ramification, genus: b.genus }).collect()
}

/// Invariant factors `n_1 | n_2 | …` (all > 1) of `⊕ (Z_m)^{2g}`.
pub fn invariant_factors(torsion: &[TorsionEntry]) -> Vec<u64> {
    // prime -> exponents of the elementary divisors
    let mut primes: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
    for t in torsion {
        for (p, e) in factorize(t.m) {
            primes.entry(p).or_default().extend(std::iter::repeat_n(e, 2 * t.genus as usize));
        }
    }
    let len = primes.values().map(Vec::len).max().unwrap_or(0);
    let mut factors = vec![1u64; len];
    for (p, mut exps) in primes {
        exps.sort_unstable();
        // right-align so the largest powers land on the last factors
        let offset = len - exps.len();
        for (k, e) in exps.into_iter().enumerate() {
            factors[offset + k] *= p.pow(e);
        }
    }
    factors
}

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Kollár's list of torsion groups of simply connected Sasaki–Einstein 5-manifolds.
pub fn kollar_allowed(torsion: &[TorsionEntry]) -> bool {
    let f = invariant_factors(torsion);
    let Some(&m) = f.first() else { return true };
    if f.iter().any(|&x| x != m) || !f.len().is_multiple_of(2) {
        return false;
    }
    match (m, f.len()) {
        (_, 2) => true,
        (2, n) => n >= 4,
        (3, n) => matches!(n, 4 | 6 | 8),
        (4 | 5, n) => n == 4,
        _ => false,
    }
}

/// `kM∞ # M_{m1} # … # M_{mn}` with `m_j | m_{j+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SmaleManifold {
    pub rank: u64,
    pub torsion_factors: Vec<u64>,
}

pub fn smale_name(b2: u64, torsion: &[TorsionEntry]) -> Result<SmaleManifold> {
    let f = invariant_factors(torsion);
    if !f.len().is_multiple_of(2) || f.chunks(2).any(|p| p[0] != p[1]) {
        return Err(Error::Inconsistency(format!("torsion invariant factors {f:?} do not pair up into M_m summands")));
    }
    Ok(SmaleManifold { rank: b2, torsion_factors: f.chunks(2).map(|p| p[0]).collect() })
}

impl SmaleManifold {
    pub fn is_sphere(&self) -> bool {
        self.rank == 0 && self.torsion_factors.is_empty()
    }

    pub fn has_torsion(&self) -> bool {
        !self.torsion_factors.is_empty()
    }
}

fn with_count(f: &mut fmt::Formatter<'_>, n: u64, name: &str) -> fmt::Result {
    if n == 1 {
        write!(f, "{name}")
    } else {
        write!(f, "{n}{name}")
    }
}

impl fmt::Display for SmaleManifold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_sphere() {
            return f.write_str("S5");
        }
        let mut first = true;
        if self.rank > 0 {
            with_count(f, self.rank, "M∞")?;
            first = false;
        }
        let mut runs: Vec<(u64, u64)> = Vec::new();
        for &m in &self.torsion_factors {
            match runs.last_mut() {
                Some((x, n)) if *x == m => *n += 1,
                _ => runs.push((m, 1)),
            }
        }
        for (m, n) in runs {
            if !first {
                f.write_str("#")?;
            }
            first = false;
            with_count(f, n, &format!("M{m}"))?;
        }
        Ok(())
    }
}

impl FromStr for SmaleManifold {
    type Err = Error;

    /// Accepts `M∞`, `Minf` and `S5`/`S⁵`, with `#` separators.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if matches!(s, "S5" | "S⁵" | "S^5") {
            return Ok(SmaleManifold { rank: 0, torsion_factors: Vec::new() });
        }
        let bad = || Error::Usage(format!("cannot parse manifold name '{s}'"));
        let mut rank = 0;
        let mut factors = Vec::new();
        for part in s.split('#') {
            let part = part.trim();
            let digits: String = part.chars().take_while(char::is_ascii_digit).collect();
            let count: u64 = if digits.is_empty() { 1 } else { digits.parse().map_err(|_| bad())? };
            let rest = part[digits.len()..].strip_prefix('M').ok_or_else(bad)?;
            if matches!(rest, "∞" | "inf" | "infty") {
                rank += count;
            } else {
                let m: u64 = rest.parse().map_err(|_| bad())?;
                if m < 2 {
                    return Err(bad());
                }
                factors.extend(std::iter::repeat_n(m, count as usize));
            }
        }
        factors.sort_unstable();
        if factors.windows(2).any(|p| p[1] % p[0] != 0) {
            return Err(Error::Usage(format!("'{s}' does not form a divisibility chain")));
        }
        Ok(SmaleManifold { rank, torsion_factors: factors })
    }
}

/// The branch curve of a type-X link `z0^2 + z1^{a1} z2 + z2^{a2} z3 + z1 z3^{a3}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeXSolution {
    pub a: [u64; 3],
    pub q: u64,
    pub curve_degree: u64,
    pub curve_weights: [u64; 3],
    pub genus: u64,
}

pub fn typex_branch_solve(a1: u64, a2: u64, a3: u64) -> Result<Option<TypeXSolution>> {
    if a1 < 2 || a2 < 2 || a3 < 2 {
        return Err(Error::Usage(format!("type X exponents must be >= 2, got ({a1},{a2},{a3})")));
    }
    let a = [a1, a2, a3];
    let b = [0, 1, 2].map(|i| a[i] * a[(i + 1) % 3] - a[(i + 1) % 3] + 1);
    let c = [a3 * (a2 - 1) + 1, a1 * (a3 - 1) + 1, a2 * (a1 - 1) + 1];
    let total = 1 + a1 * a2 * a3;
    let q = gcd_vec(&b)?;
    if q <= 1 || q % 2 == 0 || !total.is_multiple_of(q) {
        return Ok(None);
    }
    let curve_weights = c.map(|x| x / q);
    let curve_degree = total / q;
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        if curve_weights[i].gcd(&curve_weights[j]) != 1 {
            return Err(Error::Inconsistency(format!(
                "type X curve weights {curve_weights:?} are not pairwise coprime"
            )));
        }
    }
    if curve_weights.iter().any(|w| w.gcd(&curve_degree) != 1) {
        return Err(Error::Inconsistency(format!(
            "type X curve weights {curve_weights:?} share a factor with d' = {curve_degree}"
        )));
    }
    Ok(Some(TypeXSolution { a, q, curve_degree, curve_weights, genus: (q - 1) / 2 }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cand(w: [u64; 4], d: u64) -> LinkCandidate {
        LinkCandidate::new(w, d).unwrap()
    }

    #[test]
    fn branch_divisor_examples() {
        let b = branch_divisors(&cand([12, 8, 3, 3], 24)).unwrap();
        assert_eq!(b.len(), 1);
        assert_eq!((b[0].weight, b[0].ramification), (8, 3));
        assert_eq!((b[0].curve_weights, b[0].curve_degree, b[0].genus), ([1, 1, 4], 8, 3));

        let b = branch_divisors(&cand([4, 6, 6, 9], 24)).unwrap();
        let got: Vec<_> = b.iter().map(|x| (x.ramification, x.curve_weights, x.curve_degree)).collect();
        assert_eq!(got, vec![(3, [2, 2, 3], 8), (2, [2, 3, 3], 12)]);
        let genera: Vec<_> = b.iter().map(|x| x.genus).collect();
        assert_eq!(genera, vec![0, 1]);

        assert!(branch_divisors(&cand([2, 3, 5, 7], 17)).unwrap().is_empty());
    }

    #[test]
    fn genus_examples() {
        assert_eq!(curve_genus(&[4, 1, 1], 8).unwrap(), 3);
        assert_eq!(curve_genus(&[1, 1, 1], 4).unwrap(), 3);
        assert_eq!(curve_genus(&[3, 2, 1], 11).unwrap(), 5);
        assert_eq!(curve_genus(&[2, 2, 3], 8).unwrap(), 0);
        assert!(curve_genus(&[2, 2, 3], 7).unwrap_err().is_inconsistency());
    }

    #[test]
    fn rationality_examples() {
        assert!(!rationality_shortcut(&[2, 2, 3], 8));
        assert!(rationality_shortcut(&[1, 1, 1], 2));
        // z0^a + z1 z2 has d' = w1 + w2, margin w0
        assert!(rationality_shortcut(&[3, 2, 4], 6));
    }

    #[test]
    fn betti_examples() {
        assert_eq!(betti2(&[3, 3, 8, 12], 24).unwrap(), 0);
        assert_eq!(betti2(&[4, 6, 6, 9], 24).unwrap(), 1);
        assert_eq!(betti2(&[3, 3, 5, 9], 18).unwrap(), 1);
        // the quadric link is S2 x S3
        assert_eq!(betti2(&[1, 1, 1, 1], 2).unwrap(), 1);
        assert_eq!(betti2(&[3, 3, 7, 12], 24).unwrap(), 1);
    }

    #[test]
    fn torsion_examples() {
        assert_eq!(torsion(&cand([12, 8, 3, 3], 24)).unwrap(), vec![TorsionEntry { m: 3, genus: 3 }]);
        assert_eq!(torsion(&cand([2, 4, 6, 11], 22)).unwrap(), vec![TorsionEntry { m: 2, genus: 5 }]);
        assert!(torsion(&cand([2, 3, 5, 7], 17)).unwrap().is_empty());
    }

    #[test]
    fn kollar_examples() {
        let t = |m, genus| vec![TorsionEntry { m, genus }];
        assert!(kollar_allowed(&t(3, 3)));
        assert!(!kollar_allowed(&t(7, 2)));
        assert!(kollar_allowed(&[]));
        assert!(kollar_allowed(&t(2, 5)));
        assert!(kollar_allowed(&t(11, 1)));
        assert!(!kollar_allowed(&t(3, 5)));
        assert!(kollar_allowed(&t(4, 2)));
        assert!(!kollar_allowed(&t(4, 3)));
        // Z_2^2 + Z_3^2 = Z_6^2
        assert!(kollar_allowed(&[TorsionEntry { m: 2, genus: 1 }, TorsionEntry { m: 3, genus: 1 }]));
    }

    #[test]
    fn smale_names() {
        let t = |m, genus| vec![TorsionEntry { m, genus }];
        assert_eq!(smale_name(1, &t(3, 2)).unwrap().to_string(), "M∞#2M3");
        assert_eq!(smale_name(0, &[]).unwrap().to_string(), "S5");
        assert_eq!(smale_name(3, &t(2, 1)).unwrap().to_string(), "3M∞#M2");
        assert_eq!(smale_name(0, &t(2, 5)).unwrap().to_string(), "5M2");
        let mixed = [TorsionEntry { m: 2, genus: 1 }, TorsionEntry { m: 4, genus: 1 }];
        assert_eq!(smale_name(2, &mixed).unwrap().to_string(), "2M∞#M2#M4");
        let mixed = [TorsionEntry { m: 2, genus: 1 }, TorsionEntry { m: 3, genus: 1 }];
        assert_eq!(smale_name(0, &mixed).unwrap().to_string(), "M6");
    }

    #[test]
    fn parse_names() {
        for s in ["M∞#2M3", "S5", "3M∞#M2", "5M2", "2M∞#M2#M4", "M∞#M6"] {
            assert_eq!(s.parse::<SmaleManifold>().unwrap().to_string(), s);
        }
        assert_eq!("Minf#3M3".parse::<SmaleManifold>().unwrap().to_string(), "M∞#3M3");
        assert_eq!("S⁵".parse::<SmaleManifold>().unwrap().to_string(), "S5");
        assert!("M2#M3".parse::<SmaleManifold>().is_err());
        assert!("X2".parse::<SmaleManifold>().is_err());
    }

    #[test]
    fn typex_examples() {
        let s = typex_branch_solve(3, 5, 8).unwrap().unwrap();
        assert_eq!((s.q, s.curve_degree, s.curve_weights, s.genus), (11, 11, [3, 2, 1], 5));
        for a3 in (5..=18).filter(|&x| x != 8) {
            assert_eq!(typex_branch_solve(3, 5, a3).unwrap(), None, "a3 = {a3}");
        }
        let s = typex_branch_solve(2, 2, 2).unwrap().unwrap();
        assert_eq!((s.q, s.curve_degree, s.curve_weights, s.genus), (3, 3, [1, 1, 1], 1));
        assert!(typex_branch_solve(1, 2, 2).is_err());
    }

    proptest! {
        #[test]
        fn plane_curve_genus(d in 1u64..=12) {
            let closed = (d as i64 - 1) * (d as i64 - 2) / 2;
            prop_assert_eq!(curve_genus(&[1, 1, 1], d).unwrap() as i64, closed);
        }

        #[test]
        fn typex_genus_agrees(a in proptest::array::uniform3(2u64..=12)) {
            if let Some(s) = typex_branch_solve(a[0], a[1], a[2]).unwrap() {
                prop_assert_eq!(s.q % 2, 1);
                prop_assert_eq!(s.q * s.curve_degree, 1 + a[0] * a[1] * a[2]);
                prop_assert_eq!(curve_genus(&s.curve_weights, s.curve_degree).unwrap(), s.genus);
            }
        }

        #[test]
        fn name_round_trip(rank in 0u64..5, g in proptest::collection::vec((2u64..7, 1u64..4), 0..3)) {
            let t: Vec<_> = g.into_iter().map(|(m, genus)| TorsionEntry { m, genus }).collect();
            let name = smale_name(rank, &t).unwrap();
            prop_assert_eq!(name.to_string().parse::<SmaleManifold>().unwrap(), name);
        }
    }
}
