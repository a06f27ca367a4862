//! Growth factors of admissible orientations along the level filtration.

use num_bigint::BigUint;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Pow};
use serde::Serialize;

use super::{build_graph, count_admissible_orientations};
use crate::enumerate::BigCount;
use crate::error::{Error, Result};
use crate::region::Region;

/// Rational lower bound for `e`, used so that checking against it is at
/// least as strict as checking against `e` itself.
const E_LOWER_NUM: u64 = 2_718_281_828;
const E_LOWER_DEN: u64 = 1_000_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrowthRow {
    pub level: i32,
    /// Tiles rooted at this level.
    pub tiles: usize,
    /// Tiles rooted in the `n` levels ending here.
    pub window: usize,
    /// Admissible orientations of the subgraph on levels up to this one.
    #[serde(serialize_with = "crate::serde_decimal")]
    pub orientations: BigCount,
    /// `g_l` as a reduced fraction.
    pub growth: String,
    #[serde(serialize_with = "crate::serde_decimal")]
    pub binomial: BigCount,
    pub binomial_ok: bool,
    /// Whether the level lies at or below the last level of maximal width.
    pub exponential_applies: bool,
    pub exponential_ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrowthReport {
    pub n: usize,
    pub t_max: usize,
    /// Last level carrying `t_max` tiles.
    pub big_l: i32,
    pub rows: Vec<GrowthRow>,
    pub ok: bool,
}

/// Computes `g_l = A(H_l) / A(H_{l-1})` for every level of a rectangle,
/// where `H_l` is the tile graph restricted to levels `<= l` and
/// `A(H_{-1}) = 1`, and checks `g_l <= C(S_l, T_l)` everywhere and
/// `g_l <= (e n)^{T_l}` up to the last level of maximal width.
pub fn verify_growth_bounds(region: &Region, n: usize, free_edge_limit: usize) -> Result<GrowthReport> {
    let (rows, cols) =
        region.as_rectangle().ok_or_else(|| Error::InvalidArgument("growth bounds need a rectangle".into()))?;
    if n == 0 || (rows % n != 0 && cols % n != 0) {
        return Err(Error::InvalidArgument(format!("{n} divides neither side of {rows}x{cols}")));
    }
    let graph = build_graph(region, n)?;
    let top = graph.vertices().iter().map(|v| v.level).max().unwrap_or(0);
    let tiles_at = |l: i32| graph.vertices().iter().filter(|v| v.level == l).count();
    let t: Vec<usize> = (0..=top).map(tiles_at).collect();
    let t_max = t.iter().copied().max().unwrap_or(0);
    let big_l = t.iter().rposition(|&x| x == t_max).unwrap_or(0) as i32;

    let mut rows_out = Vec::with_capacity(t.len());
    let mut previous = BigUint::one();
    for level in 0..=top {
        let h = graph.induced(|v| v.level <= level);
        let current = count_admissible_orientations(&h, free_edge_limit)?;
        let tl = t[level as usize];
        let lo = (level - n as i32 + 1).max(0) as usize;
        let sl: usize = t[lo..=level as usize].iter().sum();
        let c = binomial(BigUint::from(sl), BigUint::from(tl));
        let binomial_ok = current <= &c * &previous;
        let exponential_applies = level <= big_l;
        // A_l * den^T <= (num * n)^T * A_{l-1}
        let exponential_ok = !exponential_applies
            || &current * Pow::pow(BigUint::from(E_LOWER_DEN), tl)
                <= Pow::pow(BigUint::from(E_LOWER_NUM) * n, tl) * &previous;
        let growth = BigRational::new(current.clone().into(), previous.clone().into());
        rows_out.push(GrowthRow {
            level,
            tiles: tl,
            window: sl,
            orientations: current.clone(),
            growth: growth.to_string(),
            binomial: c,
            binomial_ok,
            exponential_applies,
            exponential_ok,
        });
        previous = current;
    }
    let ok = rows_out.iter().all(|r| r.binomial_ok && r.exponential_ok);
    Ok(GrowthReport { n, t_max, big_l, rows: rows_out, ok })
}
