//! Parametric series of links: the sixteen Table 1 families and the
//! double-infinite `4M2` family.

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::gcd_vec;
use crate::link::LinkCandidate;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Params {
    pub k: u64,
    pub n: u64,
    pub l: u64,
}

impl Params {
    pub fn new(k: u64, n: u64, l: u64) -> Self {
        Params { k, n, l }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Param {
    K,
    N,
    L,
}

/// The SE column of a family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SeColumn {
    Yes,
    Open,
    /// "no" exactly where the family's obstruction predicate holds.
    NoWhen(&'static str),
}

#[derive(Clone, Serialize)]
pub struct SeriesFamily {
    pub name: &'static str,
    pub weights_formula: &'static str,
    pub degree_formula: &'static str,
    pub side_condition: Option<&'static str>,
    pub index_formula: &'static str,
    pub manifold_pattern: &'static str,
    pub se: SeColumn,
    pub params: &'static [Param],
    #[serde(skip)]
    eval: fn(Params) -> ([u64; 4], u64),
    #[serde(skip)]
    side: fn(Params) -> bool,
    #[serde(skip)]
    index: fn(Params) -> i64,
    #[serde(skip)]
    manifold: fn(Params) -> String,
    #[serde(skip)]
    obstruction: Option<fn(Params) -> bool>,
}

impl std::fmt::Debug for SeriesFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SeriesFamily").field("name", &self.name).finish_non_exhaustive()
    }
}

impl SeriesFamily {
    pub fn expected_index(&self, p: Params) -> i64 {
        (self.index)(p)
    }

    pub fn expected_manifold(&self, p: Params) -> String {
        (self.manifold)(p)
    }

    /// Whether the SE column predicts an obstruction at `p`.
    pub fn expected_obstructed(&self, p: Params) -> Option<bool> {
        self.obstruction.map(|f| f(p))
    }

    pub fn side_condition_holds(&self, p: Params) -> bool {
        (self.side)(p)
    }
}

fn always(_: Params) -> bool {
    true
}

fn k_odd(p: Params) -> bool {
    p.k % 2 == 1
}

fn k_gt_4(p: Params) -> bool {
    p.k > 4
}

macro_rules! family {
    (
        $name:expr, $wf:expr, $df:expr, $side_s:expr, $if:expr, $mf:expr, $se:expr, $params:expr,
        eval = $eval:expr, side = $side:expr, index = $index:expr, manifold = $man:expr,
        obstruction = $obs:expr $(,)?
    ) => {
        SeriesFamily {
            name: $name,
            weights_formula: $wf,
            degree_formula: $df,
            side_condition: $side_s,
            index_formula: $if,
            manifold_pattern: $mf,
            se: $se,
            params: $params,
            eval: $eval,
            side: $side,
            index: $index,
            manifold: $man,
            obstruction: $obs,
        }
    };
}

fn repeat_m(count: u64, name: &str) -> String {
    if count == 1 {
        name.to_string()
    } else {
        format!("{count}{name}")
    }
}

use Param::{K, L, N};

const KN: &[Param] = &[K, N];
const K_ONLY: &[Param] = &[K];
const N_ONLY: &[Param] = &[N];
const KL: &[Param] = &[K, L];

#[rustfmt::skip]
pub fn families() -> Vec<SeriesFamily> {
    vec![
        family!(
            "table1.row1", "(2,2k,k(2n+1),2k(n+1))", "4k(n+1)", Some("(k,2)=1"), "k+2",
            "M∞#nM2", SeColumn::NoWhen("k>4"), KN,
            eval = |p| ([2, 2 * p.k, p.k * (2 * p.n + 1), 2 * p.k * (p.n + 1)], 4 * p.k * (p.n + 1)),
            side = k_odd, index = |p| p.k as i64 + 2,
            manifold = |p| format!("M∞#{}", repeat_m(p.n, "M2")),
            obstruction = Some(k_gt_4),
        ),
        family!(
            "table1.row2", "(2,4,4n,4n+1)", "4(2n+1)", None, "3", "2M∞#nM2", SeColumn::Open, N_ONLY,
            eval = |p| ([2, 4, 4 * p.n, 4 * p.n + 1], 4 * (2 * p.n + 1)),
            side = always, index = |_| 3,
            manifold = |p| format!("2M∞#{}", repeat_m(p.n, "M2")),
            obstruction = None,
        ),
        family!(
            "table1.row3", "(4,4k+2,4k+3,2(4k+3))", "4(4k+3)", None, "3", "2M∞#M2",
            SeColumn::Open, K_ONLY,
            eval = |p| ([4, 4 * p.k + 2, 4 * p.k + 3, 2 * (4 * p.k + 3)], 4 * (4 * p.k + 3)),
            side = always, index = |_| 3, manifold = |_| "2M∞#M2".into(),
            obstruction = None,
        ),
        family!(
            "table1.row4", "(4,4k-1,4k,8k)", "16k", None, "3", "M∞#M4", SeColumn::Open, K_ONLY,
            eval = |p| ([4, 4 * p.k - 1, 4 * p.k, 8 * p.k], 16 * p.k),
            side = always, index = |_| 3, manifold = |_| "M∞#M4".into(),
            obstruction = None,
        ),
        family!(
            "table1.row5", "(2,3k+2,4k+2,2(3k+2))", "4(3k+2)", Some("(k,2)=1"), "k+2", "3M∞#M2",
            SeColumn::NoWhen("k>4"), K_ONLY,
            eval = |p| ([2, 3 * p.k + 2, 4 * p.k + 2, 2 * (3 * p.k + 2)], 4 * (3 * p.k + 2)),
            side = k_odd, index = |p| p.k as i64 + 2, manifold = |_| "3M∞#M2".into(),
            obstruction = Some(k_gt_4),
        ),
        family!(
            "table1.row6", "(3,3k+2,3(2k+1),3(3k+2))", "6(3k+2)", None, "2", "3M∞#M3",
            SeColumn::Yes, K_ONLY,
            eval = |p| ([3, 3 * p.k + 2, 3 * (2 * p.k + 1), 3 * (3 * p.k + 2)], 6 * (3 * p.k + 2)),
            side = always, index = |_| 2, manifold = |_| "3M∞#M3".into(),
            obstruction = None,
        ),
        family!(
            "table1.row7", "(6,3(2k+1),4(3k+1),9(2k+1))", "18(2k+1)", None, "4", "M∞#M3",
            SeColumn::Yes, K_ONLY,
            eval = |p| ([6, 3 * (2 * p.k + 1), 4 * (3 * p.k + 1), 9 * (2 * p.k + 1)], 18 * (2 * p.k + 1)),
            side = always, index = |_| 4, manifold = |_| "M∞#M3".into(),
            obstruction = None,
        ),
        family!(
            "table1.row8", "(3,3k,6k-1,9k)", "18k", None, "2", "M∞#2M3", SeColumn::Yes, K_ONLY,
            eval = |p| ([3, 3 * p.k, 6 * p.k - 1, 9 * p.k], 18 * p.k),
            side = always, index = |_| 2, manifold = |_| "M∞#2M3".into(),
            obstruction = None,
        ),
        family!(
            "table1.row9", "(3,3k-1,3k,3k)", "9k", None, "2", "2M∞#M3", SeColumn::Open, K_ONLY,
            eval = |p| ([3, 3 * p.k - 1, 3 * p.k, 3 * p.k], 9 * p.k),
            side = always, index = |_| 2, manifold = |_| "2M∞#M3".into(),
            obstruction = None,
        ),
        family!(
            "table1.row10", "(2,2k+1,2(2k+1),2(3k+1))", "6(2k+1)", None, "1", "6M∞#M2",
            SeColumn::Open, K_ONLY,
            eval = |p| ([2, 2 * p.k + 1, 2 * (2 * p.k + 1), 2 * (3 * p.k + 1)], 6 * (2 * p.k + 1)),
            side = always, index = |_| 1, manifold = |_| "6M∞#M2".into(),
            obstruction = None,
        ),
        family!(
            "table1.row11", "(2,2k,4k,6k-1)", "12k", None, "1", "2M∞#4M2", SeColumn::Open, K_ONLY,
            eval = |p| ([2, 2 * p.k, 4 * p.k, 6 * p.k - 1], 12 * p.k),
            side = always, index = |_| 1, manifold = |_| "2M∞#4M2".into(),
            obstruction = None,
        ),
        family!(
            "table1.row12", "(6,2k,4k,3(2k-1))", "12k", Some("(k,3)=1"), "3", "2M∞#M2",
            SeColumn::Open, K_ONLY,
            eval = |p| ([6, 2 * p.k, 4 * p.k, 3 * (2 * p.k - 1)], 12 * p.k),
            side = |p| p.k % 3 != 0, index = |_| 3, manifold = |_| "2M∞#M2".into(),
            obstruction = None,
        ),
        family!(
            "table1.row13", "(2,2k,2k,4k-1)", "8k", None, "1", "3M∞#3M2", SeColumn::Open, K_ONLY,
            eval = |p| ([2, 2 * p.k, 2 * p.k, 4 * p.k - 1], 8 * p.k),
            side = always, index = |_| 1, manifold = |_| "3M∞#3M2".into(),
            obstruction = None,
        ),
        family!(
            "table1.row14", "(3,3k,6k-1,9k)", "18k", None, "2", "2M3", SeColumn::Yes, K_ONLY,
            eval = |p| ([3, 3 * p.k, 6 * p.k - 1, 9 * p.k], 18 * p.k),
            side = always, index = |_| 2, manifold = |_| "2M3".into(),
            obstruction = None,
        ),
        family!(
            "table1.row15", "(4,3(2k+1),4(2k+1),4(3k+1))", "12(2k+1)", None, "2k+3", "M4",
            SeColumn::NoWhen("k>4"), K_ONLY,
            eval = |p| ([4, 3 * (2 * p.k + 1), 4 * (2 * p.k + 1), 4 * (3 * p.k + 1)], 12 * (2 * p.k + 1)),
            side = always, index = |p| 2 * p.k as i64 + 3, manifold = |_| "M4".into(),
            obstruction = Some(k_gt_4),
        ),
        family!(
            "table1.row16", "(6,6k-1,12k,18k)", "36k", None, "5", "M6", SeColumn::Open, K_ONLY,
            eval = |p| ([6, 6 * p.k - 1, 12 * p.k, 18 * p.k], 36 * p.k),
            side = always, index = |_| 5, manifold = |_| "M6".into(),
            obstruction = None,
        ),
        family!(
            "double.4m2", "(2l,2(2k+1),(9l-1)(2k+1),9l(2k+1))", "18l(2k+1)", Some("(l,2k+1)=1"),
            "2l+2k+1", "4M2", SeColumn::NoWhen("2k>4l-1 or l>5k+2"), KL,
            eval = |p| {
                let o = 2 * p.k + 1;
                ([2 * p.l, 2 * o, (9 * p.l - 1) * o, 9 * p.l * o], 18 * p.l * o)
            },
            side = |p| p.l.gcd(&(2 * p.k + 1)) == 1,
            index = |p| (2 * p.l + 2 * p.k + 1) as i64,
            manifold = |_| "4M2".into(),
            obstruction = Some(|p| 2 * p.k + 1 > 4 * p.l || p.l > 5 * p.k + 2),
        ),
    ]
}

pub fn family(name: &str) -> Result<SeriesFamily> {
    families()
        .into_iter()
        .find(|f| f.name == name)
        .ok_or_else(|| Error::Usage(format!("unknown series family '{name}'")))
}

/// The link of `family` at `p`, or `None` when a side condition fails.
pub fn instantiate_series(family: &SeriesFamily, p: Params) -> Result<Option<LinkCandidate>> {
    for param in family.params {
        let v = match param {
            K => p.k,
            N => p.n,
            L => p.l,
        };
        if v == 0 {
            return Err(Error::Usage(format!("{}: parameters must be >= 1", family.name)));
        }
    }
    if !(family.side)(p) {
        return Ok(None);
    }
    let (w, d) = (family.eval)(p);
    let g = gcd_vec(&w)?;
    if g != 1 {
        return Err(Error::Inconsistency(format!(
            "{} at {p:?}: weights {w:?} have gcd {g} although the side conditions hold",
            family.name
        )));
    }
    let c = LinkCandidate::new(w, d)?;
    let expected = (family.index)(p);
    if c.index() != expected as i128 {
        return Err(Error::Inconsistency(format!(
            "{} at {p:?}: I = {} but the family predicts {expected}",
            family.name,
            c.index()
        )));
    }
    Ok(Some(c))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn instantiate_examples() {
        let f = family("table1.row1").unwrap();
        let c = instantiate_series(&f, Params::new(1, 2, 1)).unwrap().unwrap();
        assert_eq!((c.sorted_weights(), c.degree, c.index()), (&[2, 2, 5, 6], 12, 3));
        assert_eq!(f.expected_manifold(Params::new(1, 2, 1)), "M∞#2M2");
        assert!(instantiate_series(&f, Params::new(2, 1, 1)).unwrap().is_none());

        let f = family("table1.row6").unwrap();
        let c = instantiate_series(&f, Params::new(2, 1, 1)).unwrap().unwrap();
        assert_eq!((c.sorted_weights(), c.degree, c.index()), (&[3, 8, 15, 24], 48, 2));

        assert!(family("table1.row99").is_err());
        assert!(instantiate_series(&family("table1.row4").unwrap(), Params::new(0, 1, 1)).is_err());
    }

    #[test]
    fn every_family_instantiates() {
        assert_eq!(families().len(), 17);
        for f in families() {
            for k in 1..=5 {
                for n in 1..=5 {
                    for l in 1..=5 {
                        instantiate_series(&f, Params::new(k, n, l)).unwrap();
                    }
                }
            }
        }
    }

    #[test]
    fn double_series_thresholds() {
        let f = family("double.4m2").unwrap();
        // l = 1, k = 3: 2k = 6 > 4l - 1 = 3
        let p = Params::new(3, 1, 1);
        let c = instantiate_series(&f, p).unwrap().unwrap();
        assert_eq!(c.sorted_weights(), &[2, 14, 56, 63]);
        assert_eq!(c.index(), 9);
        assert_eq!(f.expected_obstructed(p), Some(true));
        assert_eq!(f.expected_obstructed(Params::new(1, 1, 1)), Some(false));
    }
}
