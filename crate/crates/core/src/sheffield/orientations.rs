//! Counting acyclic orientations that extend a partial orientation.
//!
//! Free edges are assigned one at a time while a transitive closure of the
//! arcs chosen so far is maintained. An edge whose direction is already
//! implied by the closure has a single option; otherwise both directions
//! are acyclic and the search branches. Every partial acyclic assignment
//! extends to a complete one, so each leaf is a distinct admissible
//! orientation and no branch is wasted.

use num_bigint::BigUint;

use super::{EdgeClass, SGraph};
use crate::error::{Error, Result};

pub const DEFAULT_FREE_EDGE_LIMIT: usize = 30;

/// Row-major reachability bitsets: row `v` holds every vertex reachable
/// from `v` along at least one arc.
#[derive(Clone)]
struct Closure {
    words: usize,
    rows: Vec<u64>,
}

impl Closure {
    fn new(vertices: usize) -> Self {
        let words = vertices.div_ceil(64).max(1);
        Closure { words, rows: vec![0; vertices * words] }
    }

    #[inline]
    fn reaches(&self, from: usize, to: usize) -> bool {
        self.rows[from * self.words + (to >> 6)] >> (to & 63) & 1 == 1
    }

    /// Adds `from -> to`; false if that closes a cycle.
    fn add_arc(&mut self, from: usize, to: usize) -> bool {
        if from == to || self.reaches(to, from) {
            return false;
        }
        if self.reaches(from, to) {
            return true;
        }
        let words = self.words;
        let mut gained: Vec<u64> = self.rows[to * words..(to + 1) * words].to_vec();
        gained[to >> 6] |= 1 << (to & 63);
        let vertices = self.rows.len() / words;
        for w in 0..vertices {
            if w == from || self.reaches(w, from) {
                for (dst, src) in self.rows[w * words..(w + 1) * words].iter_mut().zip(&gained) {
                    *dst |= src;
                }
            }
        }
        true
    }
}

/// True when the arcs contain no directed cycle.
pub fn is_acyclic(vertices: usize, arcs: &[(usize, usize)]) -> bool {
    let mut closure = Closure::new(vertices);
    arcs.iter().all(|&(a, b)| closure.add_arc(a, b))
}

fn count_leaves(free: &[(usize, usize)], closure: &mut Closure) -> u128 {
    let Some((&(u, v), rest)) = free.split_first() else {
        return 1;
    };
    if closure.reaches(u, v) || closure.reaches(v, u) {
        return count_leaves(rest, closure);
    }
    let saved = closure.clone();
    closure.add_arc(u, v);
    let forward = count_leaves(rest, closure);
    *closure = saved.clone();
    closure.add_arc(v, u);
    let backward = count_leaves(rest, closure);
    *closure = saved;
    forward + backward
}

/// Number of acyclic orientations of `graph` that agree with its partial
/// orientation. Refuses graphs with more than `free_edge_limit` free edges.
pub fn count_admissible_orientations(graph: &SGraph, free_edge_limit: usize) -> Result<BigUint> {
    let mut free: Vec<(usize, usize)> =
        graph.edges().iter().filter(|e| e.class == EdgeClass::Free).map(|e| (e.from, e.to)).collect();
    if free.len() > free_edge_limit {
        return Err(Error::ResourceLimit(format!("{} free edges exceed the limit of {free_edge_limit}", free.len())));
    }
    let mut closure = Closure::new(graph.vertices().len());
    for (a, b) in graph.tau() {
        if !closure.add_arc(a, b) {
            return Ok(BigUint::from(0u32));
        }
    }
    // sweep upward through the levels so that closures fill in early
    let level = |i: usize| graph.vertices()[i].level;
    free.sort_by_key(|&(a, b)| (level(a).max(level(b)), level(a).min(level(b)), a, b));
    Ok(BigUint::from(count_leaves(&free, &mut closure)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sheffield::{Edge, SimpleGraph, VertexId};

    fn complete(k: usize) -> SGraph {
        SGraph::from_simple(&SimpleGraph::complete(k))
    }

    #[test]
    fn complete_graphs_give_factorials() {
        let mut f = 1u32;
        for k in 1..=7 {
            f *= k as u32;
            assert_eq!(count_admissible_orientations(&complete(k), 30).unwrap(), f.into());
        }
    }

    #[test]
    fn one_forced_edge_halves_the_count() {
        // K_4 with the edge between the end vertices forced
        let vertices: Vec<VertexId> = (0..4).map(|l| VertexId { level: l, rank: 1 }).collect();
        let mut edges = Vec::new();
        for a in 0..4 {
            for b in a + 1..4 {
                let class = if (a, b) == (0, 3) { EdgeClass::Forced } else { EdgeClass::Free };
                edges.push(Edge { from: a, to: b, class });
            }
        }
        let g = SGraph::from_parts(3, vertices, edges).unwrap();
        assert_eq!(count_admissible_orientations(&g, 30).unwrap(), 12u32.into());
    }

    #[test]
    fn trivial_and_limits() {
        assert_eq!(count_admissible_orientations(&complete(1), 30).unwrap(), 1u32.into());
        assert!(matches!(count_admissible_orientations(&complete(9), 30), Err(Error::ResourceLimit(_))));
        assert_eq!(count_admissible_orientations(&complete(9), 36).unwrap(), 362_880u32.into());
    }

    #[test]
    fn cyclic_tau_admits_nothing() {
        let vertices: Vec<VertexId> = (0..3).map(|l| VertexId { level: l, rank: 1 }).collect();
        let forced = |from, to| Edge { from, to, class: EdgeClass::Forced };
        let g = SGraph::from_parts(3, vertices, vec![forced(0, 1), forced(1, 2), forced(2, 0)]).unwrap();
        assert_eq!(count_admissible_orientations(&g, 30).unwrap(), 0u32.into());
    }

    #[test]
    fn acyclicity_check() {
        assert!(is_acyclic(3, &[(0, 1), (1, 2), (0, 2)]));
        assert!(!is_acyclic(3, &[(0, 1), (1, 2), (2, 0)]));
        assert!(is_acyclic(130, &[(0, 129), (129, 64), (64, 1)]));
        assert!(!is_acyclic(130, &[(0, 129), (129, 64), (64, 0)]));
    }
}
