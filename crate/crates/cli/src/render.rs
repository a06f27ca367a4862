//! SVG and ASCII pictures of tilings.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use ribbonry::{Cell, Tiling};

const CELL: i32 = 24;
const PAD: i32 = 8;
const LETTERS: &[u8] = b"abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789";

type Point = (i32, i32);

/// Boundary of a simply connected set of cells as a counterclockwise
/// vertex list, with collinear vertices dropped.
pub fn outline(cells: &[Cell]) -> Vec<Point> {
    let mut edges: HashSet<(Point, Point)> = HashSet::new();
    for c in cells {
        let (x, y) = (c.x, c.y);
        let corners = [(x, y), (x + 1, y), (x + 1, y + 1), (x, y + 1)];
        for i in 0..4 {
            let e = (corners[i], corners[(i + 1) % 4]);
            if !edges.remove(&(e.1, e.0)) {
                edges.insert(e);
            }
        }
    }
    let next: HashMap<Point, Point> = edges.iter().copied().collect();
    let Some(&start) = next.keys().min() else {
        return Vec::new();
    };
    let mut ring = vec![start];
    let mut at = next[&start];
    while at != start {
        ring.push(at);
        at = next[&at];
    }
    let k = ring.len();
    (0..k)
        .filter(|&i| {
            let (p, q, r) = (ring[(i + k - 1) % k], ring[i], ring[(i + 1) % k]);
            (q.0 - p.0) * (r.1 - q.1) != (q.1 - p.1) * (r.0 - q.0)
        })
        .map(|i| ring[i])
        .collect()
}

/// Hue in degrees, mixed from the tile index.
fn hue(index: usize) -> u64 {
    let mut z = (index as u64).wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    (z ^ (z >> 31)) % 360
}

/// One filled polygon per tile and a dot on each root cell. The y axis
/// points up in the picture.
pub fn to_svg(tiling: &Tiling) -> String {
    let (w, h) = tiling.region().bounding_box();
    let px = |x: i32| PAD + x * CELL;
    let py = |y: i32| PAD + (h - y) * CELL;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        w * CELL + 2 * PAD,
        h * CELL + 2 * PAD,
        w * CELL + 2 * PAD,
        h * CELL + 2 * PAD
    );
    for (i, tile) in tiling.tiles().iter().enumerate() {
        let points: Vec<String> =
            outline(&tile.cells()).into_iter().map(|(x, y)| format!("{},{}", px(x), py(y))).collect();
        let _ = writeln!(
            out,
            r##"  <polygon points="{}" fill="hsl({}, 60%, 72%)" stroke="#222" stroke-width="1.5"/>"##,
            points.join(" "),
            hue(i)
        );
    }
    for tile in tiling.tiles() {
        let (cx, cy) = (px(tile.root.x) + CELL / 2, py(tile.root.y) - CELL / 2);
        let _ = writeln!(out, r##"  <circle cx="{cx}" cy="{cy}" r="3" fill="#222"/>"##);
    }
    out.push_str("</svg>\n");
    out
}

/// Grid of letters, one per tile, top row first; `.` outside the region.
pub fn to_ascii(tiling: &Tiling) -> String {
    let owner = tiling.owner_map();
    let (w, h) = tiling.region().bounding_box();
    let mut out = String::new();
    for y in (0..h).rev() {
        for x in 0..w {
            out.push(match owner.get(&Cell::new(x, y)) {
                Some(&i) => LETTERS[i % LETTERS.len()] as char,
                None => '.',
            });
        }
        out.push('\n');
    }
    out
}
