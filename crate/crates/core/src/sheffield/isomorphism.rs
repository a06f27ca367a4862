//! Isomorphism of tile graphs, preserving edge classes and directions.

use super::{EdgeClass, SGraph};

/// Relation between an ordered vertex pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Rel {
    None,
    Free,
    SameOut,
    SameIn,
    ForcedOut,
    ForcedIn,
}

fn relation_matrix(g: &SGraph) -> Vec<Vec<Rel>> {
    let k = g.vertices().len();
    let mut m = vec![vec![Rel::None; k]; k];
    for e in g.edges() {
        let (out, inn) = match e.class {
            EdgeClass::Free => (Rel::Free, Rel::Free),
            EdgeClass::SameLevel => (Rel::SameOut, Rel::SameIn),
            EdgeClass::Forced => (Rel::ForcedOut, Rel::ForcedIn),
        };
        m[e.from][e.to] = out;
        m[e.to][e.from] = inn;
    }
    m
}

/// Per-vertex counts of each relation kind.
fn signatures(m: &[Vec<Rel>]) -> Vec<[usize; 5]> {
    m.iter()
        .map(|row| {
            let mut s = [0; 5];
            for r in row {
                match r {
                    Rel::None => {}
                    Rel::Free => s[0] += 1,
                    Rel::SameOut => s[1] += 1,
                    Rel::SameIn => s[2] += 1,
                    Rel::ForcedOut => s[3] += 1,
                    Rel::ForcedIn => s[4] += 1,
                }
            }
            s
        })
        .collect()
}

/// Searches for a vertex bijection `map[v1] = v2` preserving edges, edge
/// classes and partial-orientation directions.
///
/// Vertices of the first graph are matched in level order, which keeps each
/// new vertex adjacent to already matched ones in banded tile graphs.
pub fn graphs_isomorphic(g1: &SGraph, g2: &SGraph) -> Option<Vec<usize>> {
    let k = g1.vertices().len();
    if k != g2.vertices().len() || g1.edges().len() != g2.edges().len() {
        return None;
    }
    for class in [EdgeClass::Free, EdgeClass::SameLevel, EdgeClass::Forced] {
        if g1.count_class(class) != g2.count_class(class) {
            return None;
        }
    }
    let (m1, m2) = (relation_matrix(g1), relation_matrix(g2));
    let (s1, s2) = (signatures(&m1), signatures(&m2));
    let mut sorted1 = s1.clone();
    let mut sorted2 = s2.clone();
    sorted1.sort_unstable();
    sorted2.sort_unstable();
    if sorted1 != sorted2 {
        return None;
    }

    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by_key(|&v| g1.vertices()[v]);

    struct Search<'a> {
        m1: &'a [Vec<Rel>],
        m2: &'a [Vec<Rel>],
        s1: &'a [[usize; 5]],
        s2: &'a [[usize; 5]],
        order: &'a [usize],
        map: Vec<Option<usize>>,
        used: Vec<bool>,
    }

    impl Search<'_> {
        fn extend(&mut self, depth: usize) -> bool {
            let Some(&v) = self.order.get(depth) else {
                return true;
            };
            for w in 0..self.m2.len() {
                if self.used[w] || self.s1[v] != self.s2[w] {
                    continue;
                }
                let consistent = self.order[..depth].iter().all(|&u| {
                    let mu = self.map[u].expect("matched earlier");
                    self.m1[v][u] == self.m2[w][mu]
                });
                if !consistent {
                    continue;
                }
                self.map[v] = Some(w);
                self.used[w] = true;
                if self.extend(depth + 1) {
                    return true;
                }
                self.map[v] = None;
                self.used[w] = false;
            }
            false
        }
    }

    let mut search =
        Search { m1: &m1, m2: &m2, s1: &s1, s2: &s2, order: &order, map: vec![None; k], used: vec![false; k] };
    search.extend(0).then(|| search.map.into_iter().map(|w| w.expect("complete map")).collect())
}
