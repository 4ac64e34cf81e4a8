//! Independent reference computations for the acceptance suite. Nothing here
//! calls into the engine's topology or certification code.

#![allow(dead_code)]

use std::collections::BTreeMap;

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn index(w: &[u64; 4], d: u64) -> i64 {
    w.iter().sum::<u64>() as i64 - d as i64
}

/// Lichnerowicz bound `I > 3 min(w)`.
pub fn obstructed(w: &[u64; 4], d: u64) -> bool {
    index(w, d) > 3 * *w.iter().min().unwrap() as i64
}

/// `b2` of the link as the number of integral spectrum numbers, read off the
/// Poincaré series `prod (1 - t^(d - w_i)) / (1 - t^w_i)` of the Milnor algebra.
/// Only meaningful for quasi-smooth `(w, d)`; panics if the series is not a
/// polynomial of the expected degree.
pub fn betti2_spectrum(w: &[u64; 4], d: u64) -> u64 {
    let total: i64 = w.iter().sum::<u64>() as i64;
    let top = 4 * d as i64 - 2 * total;
    assert!(top >= 0, "spectrum degree negative for {w:?}, d={d}");
    let top = top as usize;
    let len = top + 1 + *w.iter().max().unwrap() as usize + 1;
    let mut p = vec![0i128; len];
    p[0] = 1;
    for &wi in w {
        let a = (d - wi) as usize;
        for e in (a..len).rev() {
            p[e] -= p[e - a];
        }
        let wi = wi as usize;
        for e in wi..len {
            p[e] += p[e - wi];
        }
    }
    assert!(p[top + 1..].iter().all(|&x| x == 0), "Poincaré series of {w:?}, d={d} is not a polynomial");
    (0..=top)
        .filter(|&e| (e as u64 + total as u64).is_multiple_of(d))
        .map(|e| u64::try_from(p[e]).expect("negative coefficient"))
        .sum()
}

/// Number of monomials of weighted degree `k`.
pub fn monomials_of_degree(w: &[u64], k: u64) -> u64 {
    match w.split_first() {
        None => u64::from(k == 0),
        Some((&w0, rest)) => (0..=k / w0).map(|e| monomials_of_degree(rest, k - e * w0)).sum(),
    }
}

/// Genus of a quasi-smooth curve of degree `d` in `P(w)`: reduce to a
/// well-formed plane, then count sections of the canonical sheaf
/// `O(d - |w|)`. `None` when the curve cannot be well-formed.
pub fn curve_genus_sections(w: &[u64; 3], d: u64) -> Option<u64> {
    let (mut w, mut d) = (*w, d);
    loop {
        let mut changed = false;
        for k in 0..3 {
            let (i, j) = ((k + 1) % 3, (k + 2) % 3);
            let h = gcd(w[i], w[j]);
            if h > 1 {
                if d % h != 0 {
                    return None;
                }
                w[i] /= h;
                w[j] /= h;
                d /= h;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let s: u64 = w.iter().sum();
    Some(if d < s { 0 } else { monomials_of_degree(&w, d - s) })
}

pub fn plane_curve_genus(d: u64) -> u64 {
    if d < 3 {
        0
    } else {
        (d - 1) * (d - 2) / 2
    }
}

/// `(m, g, rational_shortcut)` for each coordinate with `m = gcd(other weights) > 1`.
pub fn branch_data(w: &[u64; 4], d: u64) -> Vec<(u64, u64, bool)> {
    let mut out = Vec::new();
    for i in 0..4 {
        let others: Vec<u64> = (0..4).filter(|&j| j != i).map(|j| w[j]).collect();
        let m = others.iter().fold(0, |g, &x| gcd(g, x));
        if m == 1 {
            continue;
        }
        let cw = [others[0] / m, others[1] / m, others[2] / m];
        let g = curve_genus_sections(&cw, d / m).expect("branch curve not well-formed");
        out.push((m, g, cw.iter().sum::<u64>() > d / m));
    }
    out
}

/// Torsion summands `(m, g)` with `g > 0`, sorted.
pub fn torsion(w: &[u64; 4], d: u64) -> Vec<(u64, u64)> {
    let mut t: Vec<(u64, u64)> = branch_data(w, d).into_iter().filter(|e| e.1 > 0).map(|(m, g, _)| (m, g)).collect();
    t.sort();
    t
}

/// prime -> exponents of the cyclic prime-power summands of `⊕ Z_m^(2g)`.
fn primary_parts(t: &[(u64, u64)]) -> BTreeMap<u64, Vec<u32>> {
    let mut parts: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
    for &(m, g) in t {
        let mut n = m;
        let mut p = 2;
        while n > 1 {
            if n % p == 0 {
                let mut e = 0;
                while n % p == 0 {
                    n /= p;
                    e += 1;
                }
                parts.entry(p).or_default().extend(std::iter::repeat_n(e, 2 * g as usize));
            }
            p += 1;
        }
    }
    parts
}

/// Invariant factors `n_1 | n_2 | ...` of `⊕ Z_m^(2g)`.
pub fn invariant_factors(t: &[(u64, u64)]) -> Vec<u64> {
    let parts = primary_parts(t);
    let len = parts.values().map(Vec::len).max().unwrap_or(0);
    let mut f = vec![1u64; len];
    for (p, mut es) in parts {
        es.sort_unstable_by(|a, b| b.cmp(a));
        for (k, e) in es.into_iter().enumerate() {
            f[len - 1 - k] *= p.pow(e);
        }
    }
    f
}

/// Torsion groups allowed for simply connected positive Sasakian 5-manifolds:
/// `Z_m^2`, `Z_2^2n (n > 1)`, `Z_3^4`, `Z_3^6`, `Z_3^8`, `Z_4^4`, `Z_5^4`.
pub fn kollar(t: &[(u64, u64)]) -> bool {
    let f = invariant_factors(t);
    match f.as_slice() {
        [] => true,
        [a, b] => a == b,
        _ => {
            let m = f[0];
            let n = f.len();
            f.iter().all(|&x| x == m)
                && match m {
                    2 => n.is_multiple_of(2) && n >= 4,
                    3 => n == 4 || n == 6 || n == 8,
                    4 | 5 => n == 4,
                    _ => false,
                }
        }
    }
}

/// Smale name such as `M∞#2M3`, `5M2` or `S5`.
pub fn manifold_name(b2: u64, t: &[(u64, u64)]) -> String {
    let f = invariant_factors(t);
    assert!(f.len().is_multiple_of(2), "torsion {t:?} is not of the form G ⊕ G");
    let summands: Vec<u64> = f.chunks(2).map(|c| c[0]).collect();
    let mut parts = Vec::new();
    let count = |n: usize| if n == 1 { String::new() } else { n.to_string() };
    if b2 > 0 {
        parts.push(format!("{}M∞", count(b2 as usize)));
    }
    let mut i = 0;
    while i < summands.len() {
        let j = summands[i..].iter().take_while(|&&x| x == summands[i]).count();
        parts.push(format!("{}M{}", count(j), summands[i]));
        i += j;
    }
    if parts.is_empty() {
        "S5".into()
    } else {
        parts.join("#")
    }
}

/// Hand-checked values for the oracles themselves.
pub fn self_check() {
    assert_eq!(betti2_spectrum(&[1, 1, 1, 1], 2), 1);
    assert_eq!(betti2_spectrum(&[1, 1, 1, 1], 3), 6);
    assert_eq!(curve_genus_sections(&[1, 1, 1], 4), Some(3));
    assert_eq!(curve_genus_sections(&[2, 2, 3], 8), Some(0));
    assert_eq!(invariant_factors(&[(2, 1), (3, 1)]), vec![6, 6]);
    assert_eq!(manifold_name(1, &[(3, 1)]), "M∞#M3");
    assert_eq!(manifold_name(0, &[(2, 5)]), "5M2");
    assert!(kollar(&[(2, 2)]) && !kollar(&[(3, 2), (2, 1)]) && !kollar(&[(7, 2)]));
}
