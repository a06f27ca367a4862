//! Lattice geometry: cells, ribbon shapes, placed tiles and the region
//! families used throughout the crate.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// The unit square `[x, x+1] x [y, y+1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "(i32, i32)", into = "(i32, i32)")]
pub struct Cell {
    pub x: i32,
    pub y: i32,
}

impl Cell {
    pub const fn new(x: i32, y: i32) -> Self {
        Cell { x, y }
    }

    /// Anti-diagonal index `x + y`.
    #[inline]
    pub const fn level(self) -> i32 {
        self.x + self.y
    }

    /// Sort key of the canonical cell order: level first, then column.
    #[inline]
    pub const fn canonical_key(self) -> (i32, i32) {
        (self.level(), self.x)
    }

    #[inline]
    pub fn step(self, step: Step) -> Cell {
        match step {
            Step::East => Cell::new(self.x + 1, self.y),
            Step::North => Cell::new(self.x, self.y + 1),
        }
    }

    fn neighbors4(self) -> [Cell; 4] {
        [
            Cell::new(self.x + 1, self.y),
            Cell::new(self.x - 1, self.y),
            Cell::new(self.x, self.y + 1),
            Cell::new(self.x, self.y - 1),
        ]
    }
}

impl From<(i32, i32)> for Cell {
    fn from((x, y): (i32, i32)) -> Self {
        Cell { x, y }
    }
}

impl From<Cell> for (i32, i32) {
    fn from(c: Cell) -> Self {
        (c.x, c.y)
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// One move of a ribbon. `East` is encoded as bit 0, `North` as bit 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    East,
    North,
}

impl Step {
    pub fn letter(self) -> char {
        match self {
            Step::East => 'E',
            Step::North => 'N',
        }
    }
}

/// Shape of an n-ribbon: the `n - 1` moves taken from the root cell.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RibbonShape {
    moves: Vec<Step>,
}

impl RibbonShape {
    pub fn from_moves(moves: Vec<Step>) -> Self {
        RibbonShape { moves }
    }

    pub fn monomino() -> Self {
        RibbonShape { moves: Vec::new() }
    }

    /// Decodes a word over `{0, 1}` (0 = east, 1 = north) of length `n - 1`.
    pub fn from_word(word: &str, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("ribbon length must be positive".into()));
        }
        let moves = word
            .chars()
            .map(|c| match c {
                '0' => Ok(Step::East),
                '1' => Ok(Step::North),
                other => {
                    Err(Error::InvalidArgument(format!("shape word may only contain '0' and '1', found {other:?}")))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        if moves.len() != n - 1 {
            return Err(Error::InvalidArgument(format!(
                "shape word for an {n}-ribbon needs {} symbols, got {}",
                n - 1,
                moves.len()
            )));
        }
        Ok(RibbonShape { moves })
    }

    /// Shape whose `k`-th move is the `k`-th most significant of `n - 1` bits.
    pub fn from_bits(bits: u64, n: usize) -> Self {
        assert!((1..=64).contains(&n), "ribbon length {n} outside 1..=64");
        let moves = (0..n - 1).map(|k| if (bits >> (n - 2 - k)) & 1 == 1 { Step::North } else { Step::East }).collect();
        RibbonShape { moves }
    }

    /// All `2^(n-1)` shapes of length `n`, in lexicographic word order.
    pub fn all(n: usize) -> impl Iterator<Item = RibbonShape> {
        assert!((1..=64).contains(&n), "ribbon length {n} outside 1..=64");
        (0..1u64 << (n - 1)).map(move |bits| RibbonShape::from_bits(bits, n))
    }

    pub fn len(&self) -> usize {
        self.moves.len() + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn moves(&self) -> &[Step] {
        &self.moves
    }

    /// The `0`/`1` word of this shape.
    pub fn word(&self) -> String {
        self.moves
            .iter()
            .map(|s| match s {
                Step::East => '0',
                Step::North => '1',
            })
            .collect()
    }

    /// The `E`/`N` move string of this shape.
    pub fn move_string(&self) -> String {
        self.moves.iter().map(|s| s.letter()).collect()
    }

    pub fn is_horizontal(&self) -> bool {
        self.moves.iter().all(|&s| s == Step::East)
    }

    pub fn is_vertical(&self) -> bool {
        self.moves.iter().all(|&s| s == Step::North)
    }
}

impl FromStr for RibbonShape {
    type Err = Error;

    /// Parses an `E`/`N` move string; the empty string is the monomino.
    fn from_str(s: &str) -> Result<Self> {
        let moves = s
            .chars()
            .map(|c| match c {
                'E' | 'e' => Ok(Step::East),
                'N' | 'n' => Ok(Step::North),
                other => {
                    Err(Error::InvalidArgument(format!("move string may only contain 'E' and 'N', found {other:?}")))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(RibbonShape { moves })
    }
}

impl fmt::Display for RibbonShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.move_string())
    }
}

/// A placed ribbon: root cell plus shape.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Tile {
    pub root: Cell,
    #[serde(with = "shape_as_moves")]
    pub shape: RibbonShape,
}

mod shape_as_moves {
    use super::*;

    pub fn serialize<S: Serializer>(shape: &RibbonShape, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&shape.move_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<RibbonShape, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl Tile {
    pub fn new(root: Cell, shape: RibbonShape) -> Self {
        Tile { root, shape }
    }

    pub fn len(&self) -> usize {
        self.shape.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn level(&self) -> i32 {
        self.root.level()
    }

    /// Cells from the root onward; cell `k` has level `root.level() + k`.
    pub fn cells(&self) -> Vec<Cell> {
        let mut out = Vec::with_capacity(self.len());
        let mut c = self.root;
        out.push(c);
        for &s in self.shape.moves() {
            c = c.step(s);
            out.push(c);
        }
        out
    }

    pub fn top(&self) -> Cell {
        self.shape.moves().iter().fold(self.root, |c, &s| c.step(s))
    }
}

/// A finite set of unit cells, translated so that its minimal x and y are 0.
///
/// Cells are stored in canonical order (ascending level, then x).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Region {
    cells: Vec<Cell>,
    index: HashMap<Cell, usize>,
}

impl Region {
    /// Builds a normalized region. Duplicate cells are merged.
    pub fn new<I: IntoIterator<Item = Cell>>(cells: I) -> Self {
        let raw: Vec<Cell> = cells.into_iter().collect();
        let min_x = raw.iter().map(|c| c.x).min().unwrap_or(0);
        let min_y = raw.iter().map(|c| c.y).min().unwrap_or(0);
        let mut cells: Vec<Cell> = raw.into_iter().map(|c| Cell::new(c.x - min_x, c.y - min_y)).collect();
        cells.sort_by_key(|c| c.canonical_key());
        cells.dedup();
        let index = cells.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        Region { cells, index }
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn area(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains(&self, c: Cell) -> bool {
        self.index.contains_key(&c)
    }

    /// Position of `c` in canonical order.
    pub fn index_of(&self, c: Cell) -> Option<usize> {
        self.index.get(&c).copied()
    }

    pub fn level_histogram(&self) -> BTreeMap<i32, usize> {
        let mut hist = BTreeMap::new();
        for c in &self.cells {
            *hist.entry(c.level()).or_insert(0) += 1;
        }
        hist
    }

    /// `(width, height)` of the bounding box.
    pub fn bounding_box(&self) -> (i32, i32) {
        let w = self.cells.iter().map(|c| c.x + 1).max().unwrap_or(0);
        let h = self.cells.iter().map(|c| c.y + 1).max().unwrap_or(0);
        (w, h)
    }

    /// True when the cells are 4-connected.
    pub fn is_connected(&self) -> bool {
        let Some(&start) = self.cells.first() else {
            return true;
        };
        let mut seen = HashSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(c) = queue.pop_front() {
            for nb in c.neighbors4() {
                if self.contains(nb) && seen.insert(nb) {
                    queue.push_back(nb);
                }
            }
        }
        seen.len() == self.area()
    }

    /// True when the region has no holes: the complement inside a frame one
    /// cell wider than the bounding box is 8-connected.
    pub fn is_simply_connected(&self) -> bool {
        let (w, h) = self.bounding_box();
        let inside = |c: Cell| c.x >= -1 && c.x <= w && c.y >= -1 && c.y <= h;
        let start = Cell::new(-1, -1);
        let mut seen = HashSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(c) = queue.pop_front() {
            for dx in -1..=1 {
                for dy in -1..=1 {
                    let nb = Cell::new(c.x + dx, c.y + dy);
                    if inside(nb) && !self.contains(nb) && seen.insert(nb) {
                        queue.push_back(nb);
                    }
                }
            }
        }
        let frame_cells = ((w + 2) * (h + 2)) as usize;
        seen.len() + self.area() == frame_cells
    }

    /// Whether the region is exactly a full `rows x cols` rectangle.
    pub fn as_rectangle(&self) -> Option<(usize, usize)> {
        let (w, h) = self.bounding_box();
        (self.area() == (w * h) as usize && !self.is_empty()).then_some((h as usize, w as usize))
    }

    /// Grid text: `#` for a cell, `.` for empty, top row first.
    pub fn to_grid(&self) -> String {
        let (w, h) = self.bounding_box();
        let mut out = String::new();
        for y in (0..h).rev() {
            for x in 0..w {
                out.push(if self.contains(Cell::new(x, y)) { '#' } else { '.' });
            }
            out.push('\n');
        }
        out
    }

    /// Parses the grid text format. The last line is row `y = 0`.
    pub fn parse_grid(text: &str) -> Result<Region> {
        let lines: Vec<&str> = text.lines().map(|l| l.trim_end_matches('\r')).collect();
        // trailing blank lines are tolerated
        let end = lines.iter().rposition(|l| !l.trim().is_empty()).map_or(0, |i| i + 1);
        let lines = &lines[..end];
        let mut cells = Vec::new();
        for (row, line) in lines.iter().enumerate() {
            let y = (lines.len() - 1 - row) as i32;
            for (col, ch) in line.chars().enumerate() {
                match ch {
                    '#' => cells.push(Cell::new(col as i32, y)),
                    '.' => {}
                    other => {
                        return Err(Error::Parse {
                            line: row + 1,
                            column: col + 1,
                            message: format!("unexpected character {other:?}"),
                        })
                    }
                }
            }
        }
        if cells.is_empty() {
            return Err(Error::Parse { line: lines.len().max(1), column: 1, message: "grid contains no cells".into() });
        }
        Ok(Region::new(cells))
    }
}

impl Serialize for Region {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            cells: &'a [Cell],
        }
        let mut sorted = self.cells.clone();
        sorted.sort();
        Repr { cells: &sorted }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Region {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            cells: Vec<Cell>,
        }
        Ok(Region::new(Repr::deserialize(d)?.cells))
    }
}

/// `rows x cols` rectangle.
pub fn build_rectangle(rows: usize, cols: usize) -> Result<Region> {
    if rows == 0 || cols == 0 {
        return Err(Error::InvalidArgument(format!("rectangle dimensions must be positive, got {rows}x{cols}")));
    }
    Ok(Region::new((0..cols as i32).flat_map(|x| (0..rows as i32).map(move |y| Cell::new(x, y)))))
}

/// Generalized Aztec diamond with `2 * size` columns, built for `n`-ribbons
/// with center offset `offset`.
///
/// Column `x` has height `n * min(x + 1, 2 * size - x)`. Bottoms descend by
/// one over the left half, the right half starts at `offset` and climbs by
/// `n - 1` per column.
pub fn build_aztec(size: usize, n: usize, offset: usize) -> Result<Region> {
    if size == 0 {
        return Err(Error::InvalidArgument("Aztec diamond size must be positive".into()));
    }
    if n < 2 {
        return Err(Error::InvalidArgument(format!("Aztec diamond needs n >= 2, got {n}")));
    }
    if offset > n - 2 {
        return Err(Error::InvalidArgument(format!("Aztec offset k = {offset} outside [0, {}]", n - 2)));
    }
    let size = size as i32;
    let (n, offset) = (n as i32, offset as i32);
    let mut cells = Vec::new();
    let mut bottom = 0;
    for x in 0..2 * size {
        bottom = if x < size {
            size - 1 - x
        } else if x == size {
            offset
        } else {
            bottom + n - 1
        };
        let height = n * (x + 1).min(2 * size - x);
        cells.extend((bottom..bottom + height).map(|y| Cell::new(x, y)));
    }
    Ok(Region::new(cells))
}

/// Stair of `rows` rows of length `len`, each row shifted one cell right of
/// the row below.
pub fn build_stair(rows: usize, len: usize) -> Result<Region> {
    if rows == 0 || len == 0 {
        return Err(Error::InvalidArgument(format!("stair dimensions must be positive, got M={rows}, n={len}")));
    }
    Ok(Region::new((0..rows as i32).flat_map(|r| (0..len as i32).map(move |j| Cell::new(r + j, r)))))
}

/// Cells covered by `tile`, root first.
pub fn cells_of(tile: &Tile) -> Vec<Cell> {
    tile.cells()
}

/// See [`RibbonShape::from_word`].
pub fn shape_from_word(word: &str, n: usize) -> Result<RibbonShape> {
    RibbonShape::from_word(word, n)
}

/// A set of tiles that partitions a region, kept in canonical order
/// (ascending root level, then root x).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tiling {
    region: Region,
    tiles: Vec<Tile>,
}

impl Tiling {
    /// Validates that `tiles` partition `region` and sorts them canonically.
    pub fn new(region: Region, mut tiles: Vec<Tile>) -> Result<Self> {
        let mut seen = HashSet::with_capacity(region.area());
        for t in &tiles {
            for c in t.cells() {
                if !region.contains(c) {
                    return Err(Error::InvalidTiling(format!("tile at {} leaves the region at {c}", t.root)));
                }
                if !seen.insert(c) {
                    return Err(Error::InvalidTiling(format!("cell {c} is covered twice")));
                }
            }
        }
        if seen.len() != region.area() {
            return Err(Error::InvalidTiling(format!("{} of {} cells covered", seen.len(), region.area())));
        }
        tiles.sort_by_key(|t| t.root.canonical_key());
        Ok(Tiling { region, tiles })
    }

    /// Tiling of the region formed by the union of the tiles.
    pub fn from_tiles(tiles: Vec<Tile>) -> Result<Self> {
        let cells: Vec<Cell> = tiles.iter().flat_map(|t| t.cells()).collect();
        let (min_x, min_y) =
            (cells.iter().map(|c| c.x).min().unwrap_or(0), cells.iter().map(|c| c.y).min().unwrap_or(0));
        let shifted =
            tiles.into_iter().map(|t| Tile::new(Cell::new(t.root.x - min_x, t.root.y - min_y), t.shape)).collect();
        Tiling::new(Region::new(cells), shifted)
    }

    pub(crate) fn from_canonical_unchecked(region: Region, tiles: Vec<Tile>) -> Self {
        debug_assert!(tiles.windows(2).all(|w| w[0].root.canonical_key() < w[1].root.canonical_key()));
        Tiling { region, tiles }
    }

    pub fn region(&self) -> &Region {
        &self.region
    }

    pub fn tiles(&self) -> &[Tile] {
        &self.tiles
    }

    pub fn len(&self) -> usize {
        self.tiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tiles.is_empty()
    }

    /// Tile index covering each cell, keyed by cell.
    pub fn owner_map(&self) -> HashMap<Cell, usize> {
        self.tiles.iter().enumerate().flat_map(|(i, t)| t.cells().into_iter().map(move |c| (c, i))).collect()
    }

    /// Number of tiles rooted at each level.
    pub fn level_counts(&self) -> BTreeMap<i32, usize> {
        let mut out = BTreeMap::new();
        for t in &self.tiles {
            *out.entry(t.level()).or_insert(0) += 1;
        }
        out
    }
}

impl Serialize for Tiling {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            tiles: &'a [Tile],
        }
        Repr { tiles: &self.tiles }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Tiling {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            tiles: Vec<Tile>,
        }
        Tiling::from_tiles(Repr::deserialize(d)?.tiles).map_err(serde::de::Error::custom)
    }
}
