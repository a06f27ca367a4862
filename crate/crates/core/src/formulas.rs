//! Closed-form counts, recurrences, entropy values and bounds.

use std::f64::consts::{E, LN_2, PI};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::enumerate::{count_tilings, entropy_of, log2_big, BigCount};
use crate::error::{Error, Result};
use crate::region::build_rectangle;

/// Catalan's constant `1 - 1/9 + 1/25 - ...`.
pub const CATALAN: f64 = 0.915_965_594_177_219;

/// Constant in the asymptotics of the `n x 2n` rectangle counts.
pub const C_BESSEL: f64 = 2.496_918_339;

/// Limiting per-tile entropy of domino tilings of large rectangles,
/// `2G / (pi ln 2)`.
pub fn domino_rect_entropy() -> f64 {
    2.0 * CATALAN / (PI * LN_2)
}

pub fn rectangle_is_tileable(rows: usize, cols: usize, n: usize) -> bool {
    n > 0 && (rows.is_multiple_of(n) || cols.is_multiple_of(n))
}

fn factorial(k: usize) -> BigUint {
    (1..=k).fold(BigUint::one(), |acc, i| acc * i)
}

/// Tilings of an `n x width` strip by `n`-ribbons, for `width <= n + 1`.
pub fn rect_strip_count(n: usize, width: usize) -> Result<BigCount> {
    if n == 0 || width == 0 {
        return Err(Error::InvalidArgument("strip dimensions must be positive".into()));
    }
    match width {
        w if w <= n => Ok(factorial(w)),
        w if w == n + 1 => Ok(factorial(w) / 2u32),
        w => Err(Error::OutOfRange(format!("no closed form for an {n} x {w} strip (width must be at most {})", n + 1))),
    }
}

/// `2^(N(N+1)/2)`, the tiling count of every generalized Aztec diamond of
/// size `N`.
pub fn aztec_count(size: usize) -> BigCount {
    BigUint::one() << (size * (size + 1) / 2)
}

/// Tilings of the stair with `rows` rows of length `n` by `n`-ribbons.
///
/// Odd `n` uses the closed form; even `n` counts the `n/2 x rows` rectangle
/// by `n/2`-ribbons.
pub fn stair_count(rows: usize, n: usize) -> Result<BigCount> {
    if rows == 0 || n == 0 {
        return Err(Error::InvalidArgument("stair dimensions must be positive".into()));
    }
    if n.is_multiple_of(2) {
        return count_tilings(&build_rectangle(n / 2, rows)?, n / 2);
    }
    let half = n.div_ceil(2);
    if rows <= half {
        return Ok(factorial(rows));
    }
    // Gamma(half) for a positive integer argument
    let exponent = rows - (n - 1) / 2;
    Ok(factorial(half - 1) * BigUint::from(half).pow(exponent as u32))
}

/// Limit per-tile entropy of stairs for odd `n`: `log2(n + 1) - 1`.
pub fn stair_entropy_limit(n: usize) -> Result<f64> {
    if n.is_multiple_of(2) {
        return Err(Error::Unsupported(format!("stair entropy limit is only known for odd n, got {n}")));
    }
    Ok(((n + 1) as f64).log2() - 1.0)
}

/// `C(m, 0) ..= C(m, m)`.
fn binomial_row(m: usize) -> Vec<BigUint> {
    let mut row = Vec::with_capacity(m + 1);
    row.push(BigUint::one());
    for k in 0..m {
        let next = &row[k] * (m - k) / (k + 1);
        row.push(next);
    }
    row
}

/// `a_0 ..= a_max` where `a_n` counts the `n`-ribbon tilings of the
/// `n x 2n` rectangle, from the quadratic recurrence.
pub fn a_sequence_upto(max: usize) -> Result<Vec<BigCount>> {
    let mut seq: Vec<BigUint> = vec![BigUint::one()];
    for n in 1..=max {
        // the weights i (n - i + 1) / (n + 2) share the denominator, which
        // is divided out once at the end
        let (lower, upper) = (binomial_row(n - 1), binomial_row(n + 3));
        let mut numerator = BigUint::zero();
        for i in 1..=n {
            let weight = &lower[i - 1] * &upper[i + 1] * (i * (n - i + 1));
            numerator += weight * (&seq[i - 1] * &seq[n - i]);
        }
        let denominator = BigUint::from(2 * (n + 2));
        let (value, rem) = numerator.div_rem(&denominator);
        if !rem.is_zero() {
            let exact = BigRational::new(BigInt::from(numerator), BigInt::from(denominator));
            return Err(Error::Internal(format!("a_{n} evaluated to the non-integer {exact}")));
        }
        seq.push(value);
    }
    Ok(seq)
}

pub fn a_sequence(n: usize) -> Result<BigCount> {
    Ok(a_sequence_upto(n)?.pop().expect("sequence has a_0"))
}

/// Asymptote of `log2(a_n) / 2n`: `log2 n - log2 e + 1 - log2(C)/2`.
pub fn a_entropy_asymptote(n: usize) -> f64 {
    (n as f64).log2() - E.log2() + 1.0 - 0.5 * C_BESSEL.log2()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AEntropyRow {
    pub n: usize,
    #[serde(serialize_with = "crate::serde_decimal")]
    pub a_n: BigCount,
    pub entropy: f64,
    pub asymptote: f64,
}

/// `(n, log2(a_n) / 2n)` for `1 <= n <= n_max`, alongside the asymptote.
pub fn a_entropy_diagnostic(n_max: usize) -> Result<Vec<AEntropyRow>> {
    let seq = a_sequence_upto(n_max)?;
    Ok((1..=n_max)
        .map(|n| AEntropyRow {
            n,
            a_n: seq[n].clone(),
            entropy: log2_big(&seq[n]) / (2 * n) as f64,
            asymptote: a_entropy_asymptote(n),
        })
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    GeneralUpper,
    RectLower,
    RectUpper,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EntropyBound {
    pub kind: BoundKind,
    pub n: usize,
    pub value: f64,
}

/// General upper bound `n - 1`, and the rectangle bounds
/// `log2 n - log2 e + (log2 n / 2 + log2 sqrt(2 pi)) / n` and `log2 n + log2 e`.
pub fn entropy_bounds(n: usize) -> Result<[EntropyBound; 3]> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("entropy bounds need n >= 2, got {n}")));
    }
    let nf = n as f64;
    let lower = nf.log2() - E.log2() + (0.5 * nf.log2() + (2.0 * PI).sqrt().log2()) / nf;
    Ok([
        EntropyBound { kind: BoundKind::GeneralUpper, n, value: nf - 1.0 },
        EntropyBound { kind: BoundKind::RectLower, n, value: lower },
        EntropyBound { kind: BoundKind::RectUpper, n, value: nf.log2() + E.log2() },
    ])
}

/// Limit per-tile entropy of domino tilings of `height x M` rectangles as
/// `M` grows.
pub fn domino_strip_entropy(height: usize) -> f64 {
    let nf = height as f64;
    let sum: f64 = (1..=height / 2)
        .map(|l| {
            let c = (l as f64 * PI / (nf + 1.0)).cos();
            (c + (1.0 + c * c).sqrt()).log2()
        })
        .sum();
    2.0 / nf * sum
}

/// Fibonacci numbers with `F_1 = F_2 = 1`.
pub fn fibonacci(k: usize) -> BigUint {
    let (mut a, mut b) = (BigUint::zero(), BigUint::one());
    for _ in 0..k {
        let next = &a + &b;
        a = std::mem::replace(&mut b, next);
    }
    a
}

/// Tilings of a `rows x cols` rectangle by ribbons of arbitrary length.
pub fn stanley_fib_count(rows: usize, cols: usize) -> BigCount {
    let (m, n) = if rows <= cols { (rows, cols) } else { (cols, rows) };
    if m == 0 {
        return BigUint::one();
    }
    let squares = (1..m).fold(BigUint::one(), |acc, k| {
        let f = fibonacci(2 * k + 2);
        acc * &f * &f
    });
    squares * fibonacci(2 * m + 1).pow((n - m) as u32)
}

/// Tile count and number of the minimal arbitrary-length ribbon tilings of
/// a rectangle: `(M, (M!)^2)` with `M` the shorter side.
pub fn stanley_minimal_count(rows: usize, cols: usize) -> (usize, BigCount) {
    let m = rows.min(cols);
    let f = factorial(m);
    (m, &f * &f)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DoublingRow {
    pub side: usize,
    #[serde(serialize_with = "crate::serde_decimal")]
    pub count: BigCount,
    pub entropy: f64,
}

/// Per-tile entropy of the squares `side0 * 2^k` for `k < steps`. By
/// super-additivity the entropies are non-decreasing toward their supremum.
pub fn doubling_entropy_diagnostic(side0: usize, n: usize, steps: usize) -> Result<Vec<DoublingRow>> {
    (0..steps)
        .map(|k| {
            let side = side0 << k;
            let region = build_rectangle(side, side)?;
            let count = count_tilings(&region, n)?;
            let entropy = entropy_of(&count, region.area(), n)?;
            Ok(DoublingRow { side, count, entropy })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn constants() {
        assert!((domino_rect_entropy() - 0.841_266_940_7).abs() < 1e-10);
        // partial sums of the alternating series bracket the constant
        let partial: f64 = (0..200_000).map(|k| (-1f64).powi(k) / ((2 * k + 1) as f64).powi(2)).sum();
        assert!((partial - CATALAN).abs() < 1e-10);
        assert!((1.0 - 0.5 * C_BESSEL.log2() - 0.339_926).abs() < 1e-6);
    }

    #[test]
    fn strip_counts() {
        assert_eq!(rect_strip_count(4, 4).unwrap(), big(24));
        assert_eq!(rect_strip_count(3, 4).unwrap(), big(12));
        assert_eq!(rect_strip_count(5, 1).unwrap(), big(1));
        assert!(matches!(rect_strip_count(3, 5), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn aztec_counts() {
        assert_eq!(aztec_count(1), big(2));
        assert_eq!(aztec_count(2), big(8));
        assert_eq!(aztec_count(3), big(64));
    }

    #[test]
    fn stair_counts() {
        assert_eq!(stair_count(2, 3).unwrap(), big(2));
        assert_eq!(stair_count(7, 3).unwrap(), big(64));
        assert_eq!(stair_count(7, 5).unwrap(), big(486));
        assert_eq!(stair_count(5, 5).unwrap(), big(54));
        assert_eq!(stair_count(3, 4).unwrap(), big(3));
        assert_eq!(stair_count(6, 1).unwrap(), big(1));
    }

    #[test]
    fn stair_limits() {
        assert_eq!(stair_entropy_limit(3).unwrap(), 1.0);
        assert_eq!(stair_entropy_limit(1).unwrap(), 0.0);
        assert_eq!(stair_entropy_limit(7).unwrap(), 2.0);
        assert!(matches!(stair_entropy_limit(4), Err(Error::Unsupported(_))));
    }

    #[test]
    fn a_sequence_values() {
        let seq = a_sequence_upto(4).unwrap();
        assert_eq!(seq, vec![big(1), big(1), big(5), big(61), big(1379)]);
        assert_eq!(a_sequence(3).unwrap(), big(61));
    }

    #[test]
    fn a_sequence_stays_integral() {
        let seq = a_sequence_upto(200).unwrap();
        assert_eq!(seq.len(), 201);
        assert!(seq[1..].windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn a_entropy_rows() {
        let rows = a_entropy_diagnostic(4).unwrap();
        assert!((rows[1].entropy - 5f64.log2() / 4.0).abs() < 1e-12);
        assert!((rows[1].entropy - 0.5805).abs() < 1e-4);
        assert!((rows[3].entropy - 1379f64.log2() / 8.0).abs() < 1e-12);
        assert!((rows[3].entropy - 1.3037).abs() < 1e-4);
        let expected = 100f64.log2() - E.log2() + 1.0 - 0.5 * 2.496918339f64.log2();
        assert!((a_entropy_asymptote(100) - expected).abs() < 1e-12);
    }

    #[test]
    fn a_entropy_approaches_asymptote() {
        let rows = a_entropy_diagnostic(200).unwrap();
        let gap = |r: &AEntropyRow| (r.entropy - r.asymptote).abs();
        assert!(gap(&rows[199]) < gap(&rows[19]));
        assert!(gap(&rows[199]) < 0.05);
    }

    #[test]
    fn bounds() {
        let [upper, lower, rect_upper] = entropy_bounds(2).unwrap();
        assert_eq!(upper.value, 1.0);
        assert!((lower.value - 0.4702).abs() < 1e-3);
        assert!(lower.value <= rect_upper.value);
        let [_, _, r8] = entropy_bounds(8).unwrap();
        assert!((r8.value - (3.0 + E.log2())).abs() < 1e-12);
        assert!((r8.value - 4.4427).abs() < 1e-4);
        for n in 2..200 {
            let [g, lo, hi] = entropy_bounds(n).unwrap();
            assert!(lo.value <= hi.value);
            assert_eq!(g.value, (n - 1) as f64);
        }
        assert!(entropy_bounds(1).is_err());
    }

    #[test]
    fn domino_strips() {
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((domino_strip_entropy(2) - phi.log2()).abs() < 1e-12);
        assert!((domino_strip_entropy(2) - 0.6942).abs() < 1e-4);
        assert_eq!(domino_strip_entropy(1), 0.0);
        assert!((domino_strip_entropy(4000) - domino_rect_entropy()).abs() < 1e-3);
    }

    #[test]
    fn fibonacci_indexing() {
        let f: Vec<BigUint> = (1..=6).map(fibonacci).collect();
        assert_eq!(f, vec![big(1), big(1), big(2), big(3), big(5), big(8)]);
    }

    #[test]
    fn stanley_counts() {
        assert_eq!(stanley_fib_count(1, 2), big(2));
        assert_eq!(stanley_fib_count(2, 2), big(9));
        assert_eq!(stanley_fib_count(2, 3), big(45));
        assert_eq!(stanley_fib_count(3, 2), big(45));
        assert_eq!(stanley_minimal_count(2, 2), (2, big(4)));
        assert_eq!(stanley_minimal_count(1, 5), (1, big(1)));
        assert_eq!(stanley_minimal_count(3, 4), (3, big(36)));
    }

    #[test]
    fn rectangle_tileability_rule() {
        assert!(rectangle_is_tileable(3, 5, 3));
        assert!(!rectangle_is_tileable(4, 5, 3));
        assert!(!rectangle_is_tileable(2, 2, 3));
    }

    #[test]
    fn doubling_is_monotone() {
        let rows = doubling_entropy_diagnostic(2, 2, 4).unwrap();
        assert_eq!(rows.iter().map(|r| r.side).collect::<Vec<_>>(), [2, 4, 8, 16]);
        assert_eq!(rows[1].count, big(36));
        assert!(rows.windows(2).all(|w| w[0].entropy <= w[1].entropy));
        assert!(rows[3].entropy < domino_rect_entropy());
    }
}
