//! The tile graph of a region and its partial orientation.
//!
//! Vertices are tile slots `(level, rank)`: every tiling of a region has the
//! same number of tiles rooted at each level, so the `rank`-th tile from the
//! left in a level names the same slot in every tiling. Two slots are joined
//! when their levels differ by at most `n`. Same-level edges point from the
//! lower rank to the higher one, edges spanning exactly `n` levels have a
//! region-determined direction, and the remaining (free) edges are oriented
//! by each tiling through the light rule: a tile that has a cell north-west
//! of another tile's cell on a shared level lies to its left, and the edge
//! points from the left tile to the right one.
//!
//! Tiles outside the region along its border are not represented.

mod chromatic;
mod growth;
mod isomorphism;
mod orientations;

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt::Write as _;

use serde::Serialize;

use crate::enumerate::{count_tilings, enumerate_tilings, BigCount};
use crate::error::{Error, Result};
use crate::region::{Region, Tile, Tiling};

pub use chromatic::{
    acyclic_count_via_chromatic, chromatic_polynomial, falling_factorial, stair_graph, stair_graph_closed_form,
    ChromaticPoly, SimpleGraph,
};
pub use growth::{verify_growth_bounds, GrowthReport, GrowthRow};
pub use isomorphism::graphs_isomorphic;
pub use orientations::{count_admissible_orientations, is_acyclic, DEFAULT_FREE_EDGE_LIMIT};

/// Tile slot: the `rank`-th tile (1-based, left to right) rooted at `level`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct VertexId {
    pub level: i32,
    pub rank: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeClass {
    SameLevel,
    Free,
    Forced,
}

impl EdgeClass {
    pub fn in_tau(self) -> bool {
        !matches!(self, EdgeClass::Free)
    }
}

/// Edge between vertex indices. For `SameLevel` and `Forced` edges the pair
/// is the fixed direction `from -> to`; for `Free` edges `from < to` and
/// carries no direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub class: EdgeClass,
}

/// Tile graph with its partial orientation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SGraph {
    n: usize,
    vertices: Vec<VertexId>,
    edges: Vec<Edge>,
}

impl SGraph {
    /// Assembles a graph from explicit parts, checking indices and
    /// rejecting loops and parallel edges.
    pub fn from_parts(n: usize, vertices: Vec<VertexId>, edges: Vec<Edge>) -> Result<Self> {
        let mut seen = HashSet::new();
        for e in &edges {
            if e.from >= vertices.len() || e.to >= vertices.len() || e.from == e.to {
                return Err(Error::InvalidArgument(format!("bad edge {}-{}", e.from, e.to)));
            }
            if !seen.insert((e.from.min(e.to), e.from.max(e.to))) {
                return Err(Error::InvalidArgument(format!("parallel edge {}-{}", e.from, e.to)));
            }
        }
        let edges = edges
            .into_iter()
            .map(|e| match e.class {
                EdgeClass::Free => Edge { from: e.from.min(e.to), to: e.from.max(e.to), ..e },
                _ => e,
            })
            .collect();
        Ok(SGraph { n, vertices, edges })
    }

    /// Every edge of `g` as a free edge; vertices get level `i`, rank 1.
    pub fn from_simple(g: &SimpleGraph) -> Self {
        let vertices = (0..g.vertex_count()).map(|i| VertexId { level: i as i32, rank: 1 }).collect();
        let edges = g.edges().into_iter().map(|(from, to)| Edge { from, to, class: EdgeClass::Free }).collect();
        SGraph { n: 0, vertices, edges }
    }

    pub fn ribbon_length(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_index(&self, v: VertexId) -> Option<usize> {
        self.vertices.iter().position(|&w| w == v)
    }

    /// Directed pairs of the partial orientation.
    pub fn tau(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().filter(|e| e.class.in_tau()).map(|e| (e.from, e.to))
    }

    pub fn count_class(&self, class: EdgeClass) -> usize {
        self.edges.iter().filter(|e| e.class == class).count()
    }

    /// Underlying undirected graph.
    pub fn to_simple(&self) -> Result<SimpleGraph> {
        SimpleGraph::new(self.vertices.len(), self.edges.iter().map(|e| (e.from, e.to)))
    }

    /// Subgraph induced by the vertices satisfying `keep`, with classes and
    /// directions inherited.
    pub fn induced(&self, keep: impl Fn(&VertexId) -> bool) -> SGraph {
        let mut remap = vec![None; self.vertices.len()];
        let mut vertices = Vec::new();
        for (i, v) in self.vertices.iter().enumerate() {
            if keep(v) {
                remap[i] = Some(vertices.len());
                vertices.push(*v);
            }
        }
        let edges = self
            .edges
            .iter()
            .filter_map(|e| Some(Edge { from: remap[e.from]?, to: remap[e.to]?, class: e.class }))
            .collect();
        SGraph { n: self.n, vertices, edges }
    }

    /// Graphviz rendering: partial-orientation edges solid and directed,
    /// free edges dashed and undirected.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph sheffield {\n  node [shape=circle];\n");
        for v in &self.vertices {
            let _ = writeln!(out, "  \"{}_{}\";", v.level, v.rank);
        }
        for e in &self.edges {
            let (a, b) = (self.vertices[e.from], self.vertices[e.to]);
            let style = match e.class {
                EdgeClass::Free => "style=dashed, dir=none",
                EdgeClass::SameLevel | EdgeClass::Forced => "style=solid",
            };
            let _ = writeln!(out, "  \"{}_{}\" -> \"{}_{}\" [{style}];", a.level, a.rank, b.level, b.rank);
        }
        out.push_str("}\n");
        out
    }

    /// JSON object with `vertices`, `edges` and `tau`.
    pub fn to_json(&self) -> serde_json::Value {
        let tau: Vec<(usize, usize)> = self.tau().collect();
        serde_json::json!({
            "n": self.n,
            "vertices": self.vertices,
            "edges": self.edges,
            "tau": tau,
        })
    }
}

/// Complete assignment of directions, aligned with [`SGraph::edges`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Orientation {
    pub arcs: Vec<(usize, usize)>,
}

fn first_tiling(region: &Region, n: usize) -> Result<Tiling> {
    enumerate_tilings(region, n)?.next().ok_or(Error::NoTiling(n))
}

/// Tiles rooted at each level. The count is the same for every tiling.
pub fn tile_levels(region: &Region, n: usize) -> Result<BTreeMap<i32, usize>> {
    Ok(first_tiling(region, n)?.level_counts())
}

/// Maps each vertex slot to its tile in `tiling`.
fn slots(tiling: &Tiling) -> BTreeMap<VertexId, &Tile> {
    let mut by_level: BTreeMap<i32, Vec<&Tile>> = BTreeMap::new();
    for t in tiling.tiles() {
        by_level.entry(t.level()).or_default().push(t);
    }
    let mut out = BTreeMap::new();
    for (level, mut tiles) in by_level {
        tiles.sort_by_key(|t| t.root.x);
        for (i, t) in tiles.into_iter().enumerate() {
            out.insert(VertexId { level, rank: i as u32 + 1 }, t);
        }
    }
    out
}

/// Whether `u` is to the left of `v` under the light rule: compared on the
/// levels both tiles occupy. `None` when they share no level.
fn light_relation(u: &Tile, v: &Tile) -> Result<Option<bool>> {
    let (cu, cv) = (u.cells(), v.cells());
    let (lu, lv) = (u.level(), v.level());
    let lo = lu.max(lv);
    let hi = (lu + cu.len() as i32).min(lv + cv.len() as i32);
    let mut verdict = None;
    for level in lo..hi {
        let xu = cu[(level - lu) as usize].x;
        let xv = cv[(level - lv) as usize].x;
        let left = xu < xv;
        match verdict {
            None => verdict = Some(left),
            Some(prev) if prev != left => {
                return Err(Error::Internal(format!("tiles at {} and {} swap sides at level {level}", u.root, v.root)))
            }
            _ => {}
        }
    }
    Ok(verdict)
}

/// Builds the tile graph of `region` for `n`-ribbons.
///
/// Vertex slots come from one tiling. An edge spanning exactly `n` levels,
/// from slot `u` to slot `v` one band higher, is directed `u -> v` when the
/// root of `v` lies strictly east of the top cell of `u` in that tiling, and
/// `v -> u` otherwise.
pub fn build_graph(region: &Region, n: usize) -> Result<SGraph> {
    let tiling = first_tiling(region, n)?;
    build_graph_from(&tiling, n)
}

/// Tile graph with forced directions read from the given tiling.
pub fn build_graph_from(tiling: &Tiling, n: usize) -> Result<SGraph> {
    let slots = slots(tiling);
    let vertices: Vec<VertexId> = slots.keys().copied().collect();
    let tiles: Vec<&Tile> = slots.values().copied().collect();
    let mut edges = Vec::new();
    for i in 0..vertices.len() {
        for j in i + 1..vertices.len() {
            let (vi, vj) = (vertices[i], vertices[j]);
            let gap = (vj.level - vi.level).unsigned_abs() as usize;
            if gap > n {
                continue;
            }
            let edge = if gap == 0 {
                // ranks increase with the index inside a level
                Edge { from: i, to: j, class: EdgeClass::SameLevel }
            } else if gap == n {
                let (low, high) = if vi.level < vj.level { (i, j) } else { (j, i) };
                if tiles[high].root.x > tiles[low].top().x {
                    Edge { from: low, to: high, class: EdgeClass::Forced }
                } else {
                    Edge { from: high, to: low, class: EdgeClass::Forced }
                }
            } else {
                Edge { from: i, to: j, class: EdgeClass::Free }
            };
            edges.push(edge);
        }
    }
    Ok(SGraph { n, vertices, edges })
}

/// Orientation induced by `tiling` on `graph` through the light rule.
pub fn orientation_from_tiling(tiling: &Tiling, graph: &SGraph) -> Result<Orientation> {
    let slots = slots(tiling);
    if slots.len() != graph.vertices.len() || graph.vertices.iter().any(|v| !slots.contains_key(v)) {
        return Err(Error::InvalidTiling("tiling does not match the graph's tile slots".into()));
    }
    let tile_of = |i: usize| slots[&graph.vertices[i]];
    let mut arcs = Vec::with_capacity(graph.edges.len());
    for e in &graph.edges {
        let arc = match e.class {
            EdgeClass::Forced => (e.from, e.to),
            EdgeClass::SameLevel | EdgeClass::Free => match light_relation(tile_of(e.from), tile_of(e.to))? {
                Some(true) => (e.from, e.to),
                Some(false) => (e.to, e.from),
                None => {
                    return Err(Error::Internal(format!(
                        "no light relation across free edge {:?}-{:?}",
                        graph.vertices[e.from], graph.vertices[e.to]
                    )))
                }
            },
        };
        if e.class == EdgeClass::SameLevel && arc != (e.from, e.to) {
            return Err(Error::Internal("light rule contradicts rank order".into()));
        }
        arcs.push(arc);
    }
    if !is_acyclic(graph.vertices.len(), &arcs) {
        return Err(Error::Internal("light rule produced a directed cycle".into()));
    }
    Ok(Orientation { arcs })
}

/// Outcome of comparing tilings with admissible orientations on one region.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BijectionReport {
    #[serde(serialize_with = "crate::serde_decimal")]
    pub tilings: BigCount,
    #[serde(serialize_with = "crate::serde_decimal")]
    pub orientations: BigCount,
    pub distinct_images: usize,
    pub forced_constant: bool,
    /// First pair of enumerated tilings (by stream position) sharing an
    /// orientation, or a description of the first failure.
    pub first_offense: Option<String>,
}

impl BijectionReport {
    pub fn holds(&self) -> bool {
        self.first_offense.is_none()
            && self.forced_constant
            && self.tilings == self.orientations
            && BigCount::from(self.distinct_images) == self.tilings
    }
}

/// Checks that tilings and admissible orientations are equinumerous and that
/// the light rule maps tilings injectively. Also checks that each tiling
/// yields the same forced directions.
pub fn verify_bijection(region: &Region, n: usize, free_edge_limit: usize) -> Result<BijectionReport> {
    let graph = build_graph(region, n)?;
    let tilings = count_tilings(region, n)?;
    let orientations = count_admissible_orientations(&graph, free_edge_limit)?;
    let mut images: HashMap<Orientation, usize> = HashMap::new();
    let mut first_offense = None;
    let mut forced_constant = true;
    for (pos, tiling) in enumerate_tilings(region, n)?.enumerate() {
        if build_graph_from(&tiling, n)? != graph {
            forced_constant = false;
        }
        match orientation_from_tiling(&tiling, &graph) {
            Ok(o) => {
                if let Some(prev) = images.insert(o, pos) {
                    first_offense.get_or_insert_with(|| format!("tilings #{prev} and #{pos} share an orientation"));
                }
            }
            Err(e) => {
                first_offense.get_or_insert_with(|| format!("tiling #{pos}: {e}"));
            }
        }
    }
    if first_offense.is_none() && tilings != orientations {
        first_offense = Some(format!("{tilings} tilings but {orientations} admissible orientations"));
    }
    Ok(BijectionReport { tilings, orientations, distinct_images: images.len(), forced_constant, first_offense })
}
