//! Counting, enumeration and uniform sampling of ribbon tilings.
//!
//! Every search here branches at the uncovered cell that is smallest in
//! canonical `(level, x)` order. A ribbon holds exactly one cell per level, so
//! any tile covering that cell must be rooted there: branching over the shapes
//! rooted at it visits every tiling exactly once.
//!
//! Counting memoizes on the frontier: the first uncovered cell together with
//! the occupancy of the cells after it. Cells before it are all covered, and
//! placed tiles never reach more than `n - 1` levels past it.

use std::collections::BTreeSet;
use std::hash::Hash;
use std::sync::atomic::{AtomicUsize, Ordering};

use dashmap::DashMap;
use num_bigint::{BigUint, RandBigInt};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::region::{Cell, Region, RibbonShape, Step, Tile, Tiling};

/// Exact, arbitrary-precision count.
pub type BigCount = BigUint;

/// Environment variable overriding the memo table budget, in bytes.
pub const MEMO_LIMIT_ENV: &str = "RIBBONRY_MEMO_LIMIT";

/// Tuning knobs for the counting search. None of them change results.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountOptions {
    /// Memoize completion counts on the frontier key.
    pub memoize: bool,
    /// Reject placements that leave an uncovered pocket whose size is not a
    /// multiple of the ribbon length (fixed-length mode only).
    pub prune_dead_ends: bool,
    /// Worker threads for the top-level branches.
    pub threads: usize,
    /// Approximate memo budget in bytes; entries beyond it are not stored.
    pub memo_limit_bytes: Option<usize>,
}

impl Default for CountOptions {
    fn default() -> Self {
        CountOptions { memoize: true, prune_dead_ends: false, threads: 1, memo_limit_bytes: None }
    }
}

impl CountOptions {
    /// Applies [`MEMO_LIMIT_ENV`] when it is set to a valid byte count.
    pub fn with_env_overrides(mut self) -> Self {
        if let Some(limit) = std::env::var(MEMO_LIMIT_ENV).ok().and_then(|v| v.trim().parse::<usize>().ok()) {
            self.memo_limit_bytes = Some(limit);
        }
        self
    }
}

/// Allowed ribbon lengths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Lengths {
    Fixed(usize),
    /// Any length from 1 up to the region's area.
    Any,
}

/// Partial covering of a region, addressed by cells.
#[derive(Clone, Debug)]
pub struct Occupancy<'r> {
    region: &'r Region,
    covered: Vec<bool>,
    remaining: usize,
}

impl<'r> Occupancy<'r> {
    pub fn new(region: &'r Region) -> Self {
        Occupancy { region, covered: vec![false; region.area()], remaining: region.area() }
    }

    pub fn region(&self) -> &'r Region {
        self.region
    }

    pub fn is_covered(&self, c: Cell) -> bool {
        self.region.index_of(c).is_some_and(|i| self.covered[i])
    }

    pub fn is_complete(&self) -> bool {
        self.remaining == 0
    }

    /// Marks a tile's cells covered. Fails without modification if the tile
    /// leaves the region or overlaps covered cells.
    pub fn cover(&mut self, tile: &Tile) -> Result<()> {
        let idx =
            tile.cells()
                .into_iter()
                .map(|c| {
                    self.region.index_of(c).filter(|&i| !self.covered[i]).ok_or_else(|| {
                        Error::InvalidTiling(format!("cell {c} is outside the region or already covered"))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
        for i in idx {
            self.covered[i] = true;
        }
        self.remaining -= tile.len();
        Ok(())
    }

    /// The uncovered cell with the smallest `(level, x)`.
    pub fn min_uncovered_cell(&self) -> Result<Cell> {
        self.covered.iter().position(|&b| !b).map(|i| self.region.cells()[i]).ok_or(Error::NoCell)
    }

    /// Tiles rooted at `c` whose length is in `lengths` and whose cells are
    /// all uncovered cells of the region. Sorted by length, then shape word.
    pub fn placements_at(&self, c: Cell, lengths: &[usize]) -> Vec<Tile> {
        let allowed: BTreeSet<usize> = lengths.iter().copied().filter(|&l| l > 0).collect();
        let Some(&max_len) = allowed.last() else {
            return Vec::new();
        };
        let free = |cell: Cell| self.region.index_of(cell).is_some_and(|i| !self.covered[i]);
        ribbons_from(c, max_len, &free)
            .into_iter()
            .filter(|s| allowed.contains(&s.len()))
            .map(|s| Tile::new(c, s))
            .collect()
    }
}

/// All ribbon shapes rooted at `root` of length at most `max_len` whose cells
/// satisfy `free`, sorted by length then word.
fn ribbons_from(root: Cell, max_len: usize, free: &dyn Fn(Cell) -> bool) -> Vec<RibbonShape> {
    fn grow(at: Cell, moves: &mut Vec<Step>, max_len: usize, free: &dyn Fn(Cell) -> bool, out: &mut Vec<RibbonShape>) {
        out.push(RibbonShape::from_moves(moves.clone()));
        if moves.len() + 1 == max_len {
            return;
        }
        for step in [Step::East, Step::North] {
            let next = at.step(step);
            if free(next) {
                moves.push(step);
                grow(next, moves, max_len, free, out);
                moves.pop();
            }
        }
    }
    let mut out = Vec::new();
    if max_len > 0 && free(root) {
        grow(root, &mut Vec::new(), max_len, free, &mut out);
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// Memo key: first uncovered cell index and the covered bits after it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FrontierKey {
    pub base: u32,
    pub band: Box<[u64]>,
}

struct Placement {
    shape: RibbonShape,
    cells: Box<[u32]>,
}

#[inline]
fn get_bit(bits: &[u64], i: usize) -> bool {
    bits[i >> 6] >> (i & 63) & 1 == 1
}

#[inline]
fn flip_bit(bits: &mut [u64], i: usize) {
    bits[i >> 6] ^= 1 << (i & 63);
}

fn first_zero(bits: &[u64], from: usize, len: usize) -> Option<usize> {
    let mut w = from >> 6;
    if w >= bits.len() {
        return None;
    }
    let mut word = !bits[w] & (u64::MAX << (from & 63));
    loop {
        if word != 0 {
            let i = (w << 6) + word.trailing_zeros() as usize;
            return (i < len).then_some(i);
        }
        w += 1;
        if w >= bits.len() {
            return None;
        }
        word = !bits[w];
    }
}

fn frontier_key(bits: &[u64], base: usize) -> FrontierKey {
    let start = base + 1;
    let (w0, shift) = (start >> 6, start & 63);
    let mut band: Vec<u64> = (w0..bits.len())
        .map(|w| {
            let lo = bits[w] >> shift;
            let hi = if shift != 0 && w + 1 < bits.len() { bits[w + 1] << (64 - shift) } else { 0 };
            lo | hi
        })
        .collect();
    while band.last() == Some(&0) {
        band.pop();
    }
    FrontierKey { base: base as u32, band: band.into_boxed_slice() }
}

/// Value aggregated over the search tree.
pub(crate) trait Tally: Clone + Send + Sync {
    fn empty() -> Self;
    fn leaf() -> Self;
    /// Accounts for the tile placed on the edge leading to this subtree.
    fn add_tile(self) -> Self;
    fn merge(&mut self, other: Self);
    fn approx_bytes(&self) -> usize;
}

impl Tally for BigUint {
    fn empty() -> Self {
        BigUint::zero()
    }
    fn leaf() -> Self {
        BigUint::one()
    }
    fn add_tile(self) -> Self {
        self
    }
    fn merge(&mut self, other: Self) {
        *self += other;
    }
    fn approx_bytes(&self) -> usize {
        (self.bits() as usize).div_ceil(8) + 24
    }
}

/// Fewest tiles in a completion and the number of completions achieving it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct MinTally(Option<(usize, BigUint)>);

impl Tally for MinTally {
    fn empty() -> Self {
        MinTally(None)
    }
    fn leaf() -> Self {
        MinTally(Some((0, BigUint::one())))
    }
    fn add_tile(self) -> Self {
        MinTally(self.0.map(|(k, c)| (k + 1, c)))
    }
    fn merge(&mut self, other: Self) {
        match (&mut self.0, other.0) {
            (_, None) => {}
            (None, o) => self.0 = o,
            (Some((k, c)), Some((ok, oc))) => {
                if ok < *k {
                    *k = ok;
                    *c = oc;
                } else if ok == *k {
                    *c += oc;
                }
            }
        }
    }
    fn approx_bytes(&self) -> usize {
        self.0.as_ref().map_or(8, |(_, c)| c.approx_bytes() + 8)
    }
}

struct Memo<T> {
    table: DashMap<FrontierKey, T>,
    enabled: bool,
    budget: Option<usize>,
    used: AtomicUsize,
}

impl<T: Tally> Memo<T> {
    fn new(opts: &CountOptions) -> Self {
        Memo { table: DashMap::new(), enabled: opts.memoize, budget: opts.memo_limit_bytes, used: AtomicUsize::new(0) }
    }

    fn get(&self, key: &FrontierKey) -> Option<T> {
        self.table.get(key).map(|v| v.clone())
    }

    fn insert(&self, key: FrontierKey, value: &T) {
        let cost = 64 + key.band.len() * 8 + value.approx_bytes();
        if let Some(budget) = self.budget {
            if self.used.load(Ordering::Relaxed) + cost > budget {
                return;
            }
        }
        if self.table.insert(key, value.clone()).is_none() {
            self.used.fetch_add(cost, Ordering::Relaxed);
        }
    }
}

/// Search tree shared by counting, enumeration and sampling.
struct Engine<'r> {
    region: &'r Region,
    words: usize,
    placements: Vec<Vec<Placement>>,
    neighbors: Vec<Vec<u32>>,
    /// Pocket-size modulus for dead-end pruning.
    prune_modulus: Option<usize>,
    opts: CountOptions,
}

impl<'r> Engine<'r> {
    fn new(region: &'r Region, lengths: &Lengths, opts: CountOptions) -> Result<Self> {
        let (max_len, allowed): (usize, Box<dyn Fn(usize) -> bool>) = match *lengths {
            Lengths::Fixed(0) => return Err(Error::InvalidArgument("ribbon length must be positive".into())),
            Lengths::Fixed(n) => (n, Box::new(move |l| l == n)),
            Lengths::Any => (region.area(), Box::new(|_| true)),
        };
        let free = |c: Cell| region.contains(c);
        let placements = region
            .cells()
            .iter()
            .map(|&root| {
                ribbons_from(root, max_len, &free)
                    .into_iter()
                    .filter(|s| allowed(s.len()))
                    .map(|shape| {
                        let tile = Tile::new(root, shape);
                        let cells = tile
                            .cells()
                            .into_iter()
                            .map(|c| region.index_of(c).expect("ribbon stays inside region") as u32)
                            .collect();
                        Placement { shape: tile.shape, cells }
                    })
                    .collect()
            })
            .collect();
        let neighbors = region
            .cells()
            .iter()
            .map(|c| {
                [(1, 0), (-1, 0), (0, 1), (0, -1)]
                    .into_iter()
                    .filter_map(|(dx, dy)| region.index_of(Cell::new(c.x + dx, c.y + dy)))
                    .map(|i| i as u32)
                    .collect()
            })
            .collect();
        let prune_modulus = match *lengths {
            Lengths::Fixed(n) if opts.prune_dead_ends && n > 1 => Some(n),
            _ => None,
        };
        Ok(Engine { region, words: region.area().div_ceil(64).max(1), placements, neighbors, prune_modulus, opts })
    }

    fn area(&self) -> usize {
        self.region.area()
    }

    fn empty_bits(&self) -> Vec<u64> {
        vec![0; self.words]
    }

    fn fits(&self, bits: &[u64], p: &Placement) -> bool {
        p.cells.iter().all(|&c| !get_bit(bits, c as usize))
    }

    fn toggle(&self, bits: &mut [u64], p: &Placement) {
        for &c in p.cells.iter() {
            flip_bit(bits, c as usize);
        }
    }

    /// Every 4-connected pocket of uncovered cells has a size divisible by
    /// the modulus.
    fn pockets_ok(&self, bits: &[u64], from: usize, modulus: usize) -> bool {
        let mut seen = bits.to_vec();
        let mut stack = Vec::new();
        let mut next = from;
        while let Some(start) = first_zero(&seen, next, self.area()) {
            flip_bit(&mut seen, start);
            stack.push(start);
            let mut size = 0usize;
            while let Some(i) = stack.pop() {
                size += 1;
                for &nb in &self.neighbors[i] {
                    let nb = nb as usize;
                    if !get_bit(&seen, nb) {
                        flip_bit(&mut seen, nb);
                        stack.push(nb);
                    }
                }
            }
            if !size.is_multiple_of(modulus) {
                return false;
            }
            next = start + 1;
        }
        true
    }

    fn solve<T: Tally>(&self, bits: &mut [u64], from: usize, memo: &Memo<T>) -> T {
        let Some(p) = first_zero(bits, from, self.area()) else {
            return T::leaf();
        };
        let key = memo.enabled.then(|| frontier_key(bits, p));
        if let Some(hit) = key.as_ref().and_then(|k| memo.get(k)) {
            return hit;
        }
        let mut acc = T::empty();
        for pl in &self.placements[p] {
            if !self.fits(bits, pl) {
                continue;
            }
            self.toggle(bits, pl);
            let viable = self.prune_modulus.is_none_or(|m| self.pockets_ok(bits, p + 1, m));
            if viable {
                acc.merge(self.solve(bits, p + 1, memo).add_tile());
            }
            self.toggle(bits, pl);
        }
        if let Some(k) = key {
            memo.insert(k, &acc);
        }
        acc
    }

    /// Like [`Engine::solve`], splitting the first branching level across a
    /// thread pool. The merge order is fixed, so results are identical.
    fn solve_root<T: Tally>(&self, memo: &Memo<T>) -> T {
        let mut bits = self.empty_bits();
        if self.opts.threads <= 1 {
            return self.solve(&mut bits, 0, memo);
        }
        let Some(p) = first_zero(&bits, 0, self.area()) else {
            return T::leaf();
        };
        let branches: Vec<&Placement> = self.placements[p].iter().filter(|pl| self.fits(&bits, pl)).collect();
        let run = || {
            branches
                .par_iter()
                .map(|pl| {
                    let mut local = self.empty_bits();
                    self.toggle(&mut local, pl);
                    if self.prune_modulus.is_none_or(|m| self.pockets_ok(&local, p + 1, m)) {
                        self.solve(&mut local, p + 1, memo).add_tile()
                    } else {
                        T::empty()
                    }
                })
                .collect::<Vec<T>>()
        };
        let parts = match rayon::ThreadPoolBuilder::new().num_threads(self.opts.threads).build() {
            Ok(pool) => pool.install(run),
            Err(_) => run(),
        };
        parts.into_iter().fold(T::empty(), |mut acc, t| {
            acc.merge(t);
            acc
        })
    }
}

/// Memoized completion counter for one region and length set.
pub struct TilingCounter<'r> {
    engine: Engine<'r>,
    memo: Memo<BigUint>,
}

impl<'r> TilingCounter<'r> {
    pub fn new(region: &'r Region, n: usize, opts: CountOptions) -> Result<Self> {
        Self::with_lengths(region, &Lengths::Fixed(n), opts)
    }

    pub fn with_lengths(region: &'r Region, lengths: &Lengths, opts: CountOptions) -> Result<Self> {
        let memo = Memo::new(&opts);
        Ok(TilingCounter { engine: Engine::new(region, lengths, opts)?, memo })
    }

    pub fn region(&self) -> &'r Region {
        self.engine.region
    }

    /// Number of tilings of the whole region.
    pub fn total(&self) -> BigCount {
        self.engine.solve_root(&self.memo)
    }

    /// Number of ways to finish a partial covering given as a bitset over
    /// canonical cell indices.
    fn completions(&self, bits: &mut [u64]) -> BigCount {
        self.engine.solve(bits, 0, &self.memo)
    }

    /// Entries currently held in the memo table.
    pub fn memo_len(&self) -> usize {
        self.memo.table.len()
    }
}

fn fixed_length_shortcut(region: &Region, n: usize) -> Result<bool> {
    if n == 0 {
        return Err(Error::InvalidArgument("ribbon length must be positive".into()));
    }
    Ok(!region.area().is_multiple_of(n))
}

/// Exact number of `n`-ribbon tilings of `region`.
pub fn count_tilings(region: &Region, n: usize) -> Result<BigCount> {
    count_tilings_with(region, n, &CountOptions::default())
}

pub fn count_tilings_with(region: &Region, n: usize, opts: &CountOptions) -> Result<BigCount> {
    if fixed_length_shortcut(region, n)? {
        return Ok(BigCount::zero());
    }
    Ok(TilingCounter::new(region, n, opts.clone())?.total())
}

/// True iff the region has at least one `n`-ribbon tiling.
pub fn is_tileable(region: &Region, n: usize) -> Result<bool> {
    let tileable = !count_tilings(region, n)?.is_zero();
    if let Some((rows, cols)) = region.as_rectangle() {
        debug_assert_eq!(tileable, crate::formulas::rectangle_is_tileable(rows, cols, n));
    }
    Ok(tileable)
}

/// Tilings by ribbons of any length.
pub fn count_variable(region: &Region) -> BigCount {
    TilingCounter::with_lengths(region, &Lengths::Any, CountOptions::default())
        .expect("variable-length engine has no invalid arguments")
        .total()
}

/// Fewest ribbons (of any lengths) in a tiling, and how many tilings use
/// exactly that many.
pub fn count_minimal(region: &Region) -> (usize, BigCount) {
    let opts = CountOptions::default();
    let engine = Engine::new(region, &Lengths::Any, opts.clone()).expect("variable-length engine");
    let memo = Memo::new(&opts);
    match engine.solve_root::<MinTally>(&memo).0 {
        Some(best) => best,
        None => (0, BigCount::zero()),
    }
}

/// `log2` of a big integer, accurate to f64 precision.
pub fn log2_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().map_or(f64::INFINITY, f64::log2);
    }
    let shift = bits - 64;
    let top: BigUint = x >> shift;
    top.to_f64().unwrap_or(f64::MAX).log2() + shift as f64
}

/// Per-tile entropy `log2(count) / (area / n)`.
pub fn entropy(region: &Region, n: usize) -> Result<f64> {
    let count = count_tilings(region, n)?;
    entropy_of(&count, region.area(), n)
}

/// Per-tile entropy from an already computed count.
pub fn entropy_of(count: &BigCount, area: usize, n: usize) -> Result<f64> {
    if count.is_zero() || n == 0 || !area.is_multiple_of(n) {
        return Err(Error::UndefinedEntropy(n));
    }
    if area == 0 {
        return Ok(0.0);
    }
    Ok(log2_big(count) / (area / n) as f64)
}

struct Frame {
    cell: usize,
    next: usize,
    placed: Option<usize>,
}

/// Streams every tiling exactly once, in lexicographic order of shape
/// choices at the canonical cells. Branches with no completion are skipped
/// using the memoized counter, so no dead end is ever explored twice.
pub struct TilingIter<'r> {
    counter: TilingCounter<'r>,
    bits: Vec<u64>,
    stack: Vec<Frame>,
    started: bool,
    done: bool,
}

impl<'r> TilingIter<'r> {
    fn new(counter: TilingCounter<'r>) -> Self {
        let bits = counter.engine.empty_bits();
        TilingIter { counter, bits, stack: Vec::new(), started: false, done: false }
    }

    fn current_tiling(&self) -> Tiling {
        let engine = &self.counter.engine;
        let tiles = self
            .stack
            .iter()
            .map(|f| {
                let pl = &engine.placements[f.cell][f.placed.expect("placed frame")];
                Tile::new(engine.region.cells()[f.cell], pl.shape.clone())
            })
            .collect();
        Tiling::from_canonical_unchecked(engine.region.clone(), tiles)
    }
}

impl Iterator for TilingIter<'_> {
    type Item = Tiling;

    fn next(&mut self) -> Option<Tiling> {
        if self.done {
            return None;
        }
        let engine = &self.counter.engine;
        if !self.started {
            self.started = true;
            if self.counter.total().is_zero() {
                self.done = true;
                return None;
            }
            match first_zero(&self.bits, 0, engine.area()) {
                Some(p) => self.stack.push(Frame { cell: p, next: 0, placed: None }),
                None => {
                    self.done = true;
                    return Some(Tiling::from_canonical_unchecked(engine.region.clone(), Vec::new()));
                }
            }
        }
        loop {
            let Some(top) = self.stack.last_mut() else {
                self.done = true;
                return None;
            };
            let placements = &engine.placements[top.cell];
            if let Some(prev) = top.placed.take() {
                engine.toggle(&mut self.bits, &placements[prev]);
            }
            let mut chosen = None;
            while top.next < placements.len() {
                let i = top.next;
                top.next += 1;
                let pl = &placements[i];
                if !engine.fits(&self.bits, pl) {
                    continue;
                }
                engine.toggle(&mut self.bits, pl);
                if !self.counter.completions(&mut self.bits).is_zero() {
                    chosen = Some(i);
                    break;
                }
                engine.toggle(&mut self.bits, pl);
            }
            match chosen {
                Some(i) => {
                    let from = top.cell + 1;
                    top.placed = Some(i);
                    match first_zero(&self.bits, from, engine.area()) {
                        Some(p) => self.stack.push(Frame { cell: p, next: 0, placed: None }),
                        None => return Some(self.current_tiling()),
                    }
                }
                None => {
                    self.stack.pop();
                }
            }
        }
    }
}

/// All `n`-ribbon tilings of `region`, as a lazy stream.
pub fn enumerate_tilings(region: &Region, n: usize) -> Result<TilingIter<'_>> {
    enumerate_tilings_with(region, n, &CountOptions::default())
}

pub fn enumerate_tilings_with<'r>(region: &'r Region, n: usize, opts: &CountOptions) -> Result<TilingIter<'r>> {
    let mut opts = opts.clone();
    opts.threads = 1;
    Ok(TilingIter::new(TilingCounter::new(region, n, opts)?))
}

/// Exactly uniform sampler over the `n`-ribbon tilings of one region.
///
/// At each canonical cell a placement is drawn with probability
/// proportional to its number of completions.
pub struct TilingSampler<'r> {
    counter: TilingCounter<'r>,
    total: BigCount,
    n: usize,
    rng: ChaCha8Rng,
}

impl<'r> TilingSampler<'r> {
    pub fn new(region: &'r Region, n: usize, seed: u64) -> Result<Self> {
        Self::with_options(region, n, seed, &CountOptions::default())
    }

    pub fn with_options(region: &'r Region, n: usize, seed: u64, opts: &CountOptions) -> Result<Self> {
        let mut opts = opts.clone();
        opts.threads = 1;
        let counter = TilingCounter::new(region, n, opts)?;
        let total = if fixed_length_shortcut(region, n)? { BigCount::zero() } else { counter.total() };
        Ok(TilingSampler { counter, total, n, rng: ChaCha8Rng::seed_from_u64(seed) })
    }

    pub fn total(&self) -> &BigCount {
        &self.total
    }

    pub fn sample(&mut self) -> Result<Tiling> {
        if self.total.is_zero() {
            return Err(Error::NoTiling(self.n));
        }
        let engine = &self.counter.engine;
        let mut bits = engine.empty_bits();
        let mut tiles = Vec::new();
        let mut from = 0;
        while let Some(p) = first_zero(&bits, from, engine.area()) {
            let mut options: Vec<(usize, BigCount)> = Vec::new();
            let mut sum = BigCount::zero();
            for (i, pl) in engine.placements[p].iter().enumerate() {
                if !engine.fits(&bits, pl) {
                    continue;
                }
                engine.toggle(&mut bits, pl);
                let c = self.counter.completions(&mut bits);
                engine.toggle(&mut bits, pl);
                if !c.is_zero() {
                    sum += &c;
                    options.push((i, c));
                }
            }
            if sum.is_zero() {
                return Err(Error::Internal("sampler reached a dead end".into()));
            }
            let mut r = self.rng.gen_biguint_below(&sum);
            let mut pick = options[options.len() - 1].0;
            for (i, c) in options {
                if r < c {
                    pick = i;
                    break;
                }
                r -= c;
            }
            let pl = &engine.placements[p][pick];
            engine.toggle(&mut bits, pl);
            tiles.push(Tile::new(engine.region.cells()[p], pl.shape.clone()));
            from = p + 1;
        }
        Ok(Tiling::from_canonical_unchecked(engine.region.clone(), tiles))
    }

    /// Probability the sampler assigns to `tiling`, as an exact fraction.
    pub fn probability(&self, tiling: &Tiling) -> Result<BigRational> {
        let engine = &self.counter.engine;
        if tiling.region() != engine.region {
            return Err(Error::InvalidTiling("tiling belongs to a different region".into()));
        }
        if self.total.is_zero() {
            return Err(Error::NoTiling(self.n));
        }
        let mut bits = engine.empty_bits();
        let mut prob = BigRational::one();
        for tile in tiling.tiles() {
            let p = first_zero(&bits, 0, engine.area()).ok_or(Error::NoCell)?;
            if engine.region.index_of(tile.root) != Some(p) {
                return Err(Error::InvalidTiling(format!("tile at {} is not rooted at the canonical cell", tile.root)));
            }
            let before = self.counter.completions(&mut bits);
            let pl = engine.placements[p]
                .iter()
                .find(|pl| pl.shape == tile.shape)
                .ok_or_else(|| Error::InvalidTiling(format!("tile at {} does not fit", tile.root)))?;
            if !engine.fits(&bits, pl) {
                return Err(Error::InvalidTiling(format!("tile at {} overlaps", tile.root)));
            }
            engine.toggle(&mut bits, pl);
            let after = self.counter.completions(&mut bits);
            prob *= BigRational::new(after.into(), before.into());
        }
        Ok(prob)
    }
}

/// One uniformly random `n`-ribbon tiling, deterministic in `seed`.
pub fn sample_tiling(region: &Region, n: usize, seed: u64) -> Result<Tiling> {
    TilingSampler::new(region, n, seed)?.sample()
}

/// Probability that [`sample_tiling`] returns `tiling`.
pub fn tiling_probability(region: &Region, n: usize, tiling: &Tiling) -> Result<BigRational> {
    TilingSampler::new(region, n, 0)?.probability(tiling)
}
