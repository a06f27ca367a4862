//! Chromatic polynomials by deletion-contraction.

use std::fmt;
use std::ops::{Mul, Sub};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Simple undirected graph on at most 64 vertices, as adjacency masks.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimpleGraph {
    adj: Vec<u64>,
}

impl SimpleGraph {
    pub const MAX_VERTICES: usize = 64;

    pub fn new(vertices: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if vertices > Self::MAX_VERTICES {
            return Err(Error::InvalidArgument(format!(
                "{vertices} vertices exceed the limit of {}",
                Self::MAX_VERTICES
            )));
        }
        let mut adj = vec![0u64; vertices];
        for (a, b) in edges {
            if a >= vertices || b >= vertices || a == b {
                return Err(Error::InvalidArgument(format!("bad edge {a}-{b}")));
            }
            adj[a] |= 1 << b;
            adj[b] |= 1 << a;
        }
        Ok(SimpleGraph { adj })
    }

    pub fn empty(vertices: usize) -> Self {
        Self::new(vertices, []).expect("edgeless graph")
    }

    pub fn complete(vertices: usize) -> Self {
        let edges = (0..vertices).flat_map(|a| (a + 1..vertices).map(move |b| (a, b)));
        Self::new(vertices, edges).expect("complete graph")
    }

    pub fn path(vertices: usize) -> Self {
        Self::new(vertices, (1..vertices).map(|i| (i - 1, i))).expect("path graph")
    }

    pub fn cycle(vertices: usize) -> Self {
        assert!(vertices >= 3, "a simple cycle needs at least 3 vertices");
        Self::new(vertices, (0..vertices).map(|i| (i, (i + 1) % vertices))).expect("cycle graph")
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|m| m.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a] >> b & 1 == 1
    }

    pub fn neighbors(&self, v: usize) -> u64 {
        self.adj[v]
    }

    /// Edges as `(a, b)` with `a < b`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.adj.len())
            .flat_map(|a| (a + 1..self.adj.len()).filter(move |&b| self.has_edge(a, b)).map(move |b| (a, b)))
            .collect()
    }

    pub fn is_complete(&self) -> bool {
        let k = self.adj.len();
        self.edge_count() == k * k.saturating_sub(1) / 2
    }

    pub fn without_edge(&self, a: usize, b: usize) -> Self {
        let mut g = self.clone();
        g.adj[a] &= !(1 << b);
        g.adj[b] &= !(1 << a);
        g
    }

    /// Merges `b` into `a` and drops `b`; vertices after `b` shift down.
    pub fn contract(&self, a: usize, b: usize) -> Self {
        let mut adj = self.adj.clone();
        adj[a] |= adj[b];
        for (v, mask) in adj.iter_mut().enumerate() {
            if *mask >> b & 1 == 1 && v != a {
                *mask |= 1 << a;
            }
        }
        let keep: Vec<usize> = (0..adj.len()).filter(|&v| v != b).collect();
        let squeeze =
            |mask: u64| keep.iter().enumerate().fold(0u64, |acc, (new, &old)| acc | ((mask >> old & 1) << new));
        let mut out: Vec<u64> = keep.iter().map(|&v| squeeze(adj[v])).collect();
        let na = keep.iter().position(|&v| v == a).expect("a survives");
        out[na] &= !(1 << na);
        SimpleGraph { adj: out }
    }

    /// Subgraph induced by `keep`, relabelled in the given order.
    pub fn induced(&self, keep: &[usize]) -> Self {
        let edges = (0..keep.len())
            .flat_map(|i| (i + 1..keep.len()).map(move |j| (i, j)))
            .filter(|&(i, j)| self.has_edge(keep[i], keep[j]));
        SimpleGraph::new(keep.len(), edges).expect("induced subgraph")
    }
}

/// Integer polynomial in `lambda`, coefficients from the constant term up.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChromaticPoly {
    coeffs: Vec<BigInt>,
}

impl ChromaticPoly {
    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(BigInt::zero());
        }
        ChromaticPoly { coeffs }
    }

    pub fn constant(c: i64) -> Self {
        Self::from_coeffs(vec![BigInt::from(c)])
    }

    /// `lambda - c`.
    pub fn linear(c: i64) -> Self {
        Self::from_coeffs(vec![BigInt::from(-c), BigInt::one()])
    }

    /// `lambda^k`.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = BigInt::one();
        Self::from_coeffs(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(Self::constant(1), |acc, _| &acc * self)
    }

    pub fn eval(&self, lambda: i64) -> BigInt {
        let x = BigInt::from(lambda);
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * &x + c)
    }
}

impl Mul for &ChromaticPoly {
    type Output = ChromaticPoly;

    fn mul(self, rhs: &ChromaticPoly) -> ChromaticPoly {
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ChromaticPoly::from_coeffs(out)
    }
}

impl Sub for &ChromaticPoly {
    type Output = ChromaticPoly;

    fn sub(self, rhs: &ChromaticPoly) -> ChromaticPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let at = |p: &ChromaticPoly, i: usize| p.coeffs.get(i).cloned().unwrap_or_default();
        ChromaticPoly::from_coeffs((0..len).map(|i| at(self, i) - at(rhs, i)).collect())
    }
}

impl fmt::Display for ChromaticPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() && self.coeffs.len() > 1 {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let abs = c.abs();
            match k {
                0 => write!(f, "{abs}")?,
                _ if abs.is_one() => {}
                _ => write!(f, "{abs}*")?,
            }
            match k {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        Ok(())
    }
}

/// `lambda (lambda - 1) ... (lambda - k + 1)`, the chromatic polynomial of `K_k`.
pub fn falling_factorial(k: usize) -> ChromaticPoly {
    (0..k as i64).fold(ChromaticPoly::constant(1), |acc, i| &acc * &ChromaticPoly::linear(i))
}

/// Chromatic polynomial, via `P(G) = P(G - e) - P(G / e)` down to complete
/// and edgeless graphs.
pub fn chromatic_polynomial(g: &SimpleGraph) -> ChromaticPoly {
    let k = g.vertex_count();
    if g.edge_count() == 0 {
        return ChromaticPoly::monomial(k);
    }
    if g.is_complete() {
        return falling_factorial(k);
    }
    if let Some(isolated) = (0..k).find(|&v| g.neighbors(v) == 0) {
        let rest: Vec<usize> = (0..k).filter(|&v| v != isolated).collect();
        return &ChromaticPoly::monomial(1) * &chromatic_polynomial(&g.induced(&rest));
    }
    // an edge at a vertex of minimum degree keeps contractions sparse
    let a = (0..k).min_by_key(|&v| g.neighbors(v).count_ones()).expect("graph has vertices");
    let b = g.neighbors(a).trailing_zeros() as usize;
    &chromatic_polynomial(&g.without_edge(a, b)) - &chromatic_polynomial(&g.contract(a, b))
}

/// Number of acyclic orientations as `|P(-1)|`.
pub fn acyclic_count_via_chromatic(g: &SimpleGraph) -> BigUint {
    chromatic_polynomial(g).eval(-1).magnitude().clone()
}

/// Tile graph of the stair with `rows` rows of odd length `n`: slot `k`
/// (level `2k`) is joined to slots `k + 1 ..= k + (n - 1) / 2`.
pub fn stair_graph(rows: usize, n: usize) -> Result<SimpleGraph> {
    if n.is_multiple_of(2) {
        return Err(Error::Unsupported(format!("stair graphs are defined for odd n, got {n}")));
    }
    let reach = (n - 1) / 2;
    SimpleGraph::new(rows, (0..rows).flat_map(|k| (1..=reach).filter(move |i| k + i < rows).map(move |i| (k, k + i))))
}

/// `lambda (lambda - 1) ... (lambda - m + 1) (lambda - m)^(M - m)` with
/// `m = (n - 1) / 2`; for `M <= m + 1` the graph is complete.
pub fn stair_graph_closed_form(rows: usize, n: usize) -> Result<ChromaticPoly> {
    if n.is_multiple_of(2) {
        return Err(Error::Unsupported(format!("stair graphs are defined for odd n, got {n}")));
    }
    let m = (n - 1) / 2;
    if rows <= m + 1 {
        return Ok(falling_factorial(rows));
    }
    Ok(&falling_factorial(m) * &ChromaticPoly::linear(m as i64).pow(rows - m))
}
