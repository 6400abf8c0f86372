//! Lattice paths built from legs `(dx, dy)` placed head to tail from the
//! origin, and the convex ones among them.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum PathError {
    #[error("leg ({0}, {1}) has non-positive width")]
    ZeroWidth(i64, i64),
    #[error("paths have different sizes {0:?} and {1:?}")]
    SizeMismatch((i64, i64), (i64, i64)),
    #[error("the first path does not lie below the second")]
    NotBelow,
    #[error("cannot parse path {0:?}: expected legs like \"1,1;2,-1\"")]
    Parse(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Leg {
    pub dx: i64,
    pub dy: i64,
}

impl Leg {
    pub fn new(dx: i64, dy: i64) -> Result<Leg, PathError> {
        if dx < 1 {
            return Err(PathError::ZeroWidth(dx, dy));
        }
        Ok(Leg { dx, dy })
    }

    pub fn slope(&self) -> Rational64 {
        Rational64::new(self.dy, self.dx)
    }

    fn slope_cmp(&self, other: &Leg) -> Ordering {
        (self.dy * other.dx).cmp(&(other.dy * self.dx))
    }
}

/// A path whose leg slopes strictly increase.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ConvexPath {
    pub legs: Vec<Leg>,
}

impl ConvexPath {
    pub fn size(&self) -> (i64, i64) {
        size(&self.legs)
    }
}

impl fmt::Display for ConvexPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_legs(&self.legs))
    }
}

pub fn format_legs(legs: &[Leg]) -> String {
    legs.iter()
        .map(|l| format!("{},{}", l.dx, l.dy))
        .collect::<Vec<_>>()
        .join(";")
}

/// Parse `"dx,dy;dx,dy;..."`; the empty string is the empty path.
pub fn parse_legs(s: &str) -> Result<Vec<Leg>, PathError> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(';')
        .map(|part| {
            let (a, b) = part.split_once(',').ok_or_else(|| PathError::Parse(s.to_string()))?;
            let dx = a.trim().parse().map_err(|_| PathError::Parse(s.to_string()))?;
            let dy = b.trim().parse().map_err(|_| PathError::Parse(s.to_string()))?;
            Leg::new(dx, dy)
        })
        .collect()
}

impl FromStr for ConvexPath {
    type Err = PathError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(convexify(&parse_legs(s)?))
    }
}

pub fn size(legs: &[Leg]) -> (i64, i64) {
    legs.iter().fold((0, 0), |(x, y), l| (x + l.dx, y + l.dy))
}

/// Slopes are nondecreasing.
pub fn is_convex(legs: &[Leg]) -> bool {
    legs.windows(2).all(|w| w[0].slope_cmp(&w[1]) != Ordering::Greater)
}

/// Reorder legs by increasing slope and merge legs of equal slope.
pub fn convexify(legs: &[Leg]) -> ConvexPath {
    let mut sorted = legs.to_vec();
    sorted.sort_by(|a, b| a.slope_cmp(b));
    let mut out: Vec<Leg> = Vec::with_capacity(sorted.len());
    for l in sorted {
        match out.last_mut() {
            Some(last) if last.slope_cmp(&l) == Ordering::Equal => {
                last.dx += l.dx;
                last.dy += l.dy;
            }
            _ => out.push(l),
        }
    }
    ConvexPath { legs: out }
}

/// Breakpoints `(x, y)` including both endpoints.
fn vertices(legs: &[Leg]) -> Vec<(i64, i64)> {
    let mut v = vec![(0, 0)];
    for l in legs {
        let (x, y) = *v.last().unwrap();
        v.push((x + l.dx, y + l.dy));
    }
    v
}

/// Height of the path at `x` (`0 <= x <= width`).
pub fn height_at(legs: &[Leg], x: Rational64) -> Rational64 {
    let mut x0 = 0i64;
    let mut y0 = 0i64;
    for l in legs {
        let x1 = x0 + l.dx;
        if x <= Rational64::from_integer(x1) {
            return Rational64::from_integer(y0) + (x - Rational64::from_integer(x0)) * l.slope();
        }
        x0 = x1;
        y0 += l.dy;
    }
    Rational64::from_integer(y0)
}

fn check_sizes(p: &[Leg], p2: &[Leg]) -> Result<(), PathError> {
    let (a, b) = (size(p), size(p2));
    if a != b {
        return Err(PathError::SizeMismatch(a, b));
    }
    Ok(())
}

/// Union of the breakpoint abscissae of both paths.
fn joint_breaks(p: &[Leg], p2: &[Leg]) -> Vec<i64> {
    let mut xs: Vec<i64> = vertices(p).iter().chain(vertices(p2).iter()).map(|v| v.0).collect();
    xs.sort_unstable();
    xs.dedup();
    xs
}

/// Whether the graph of `p` is nowhere above the graph of `p2`. Both are
/// linear between joint breakpoints, so those suffice.
pub fn lies_below(p: &[Leg], p2: &[Leg]) -> Result<bool, PathError> {
    check_sizes(p, p2)?;
    Ok(joint_breaks(p, p2).into_iter().all(|x| {
        let x = Rational64::from_integer(x);
        height_at(p, x) <= height_at(p2, x)
    }))
}

/// Area enclosed between `p` (below) and `p2` (above).
pub fn area_between(p: &[Leg], p2: &[Leg]) -> Result<Rational64, PathError> {
    if !lies_below(p, p2)? {
        return Err(PathError::NotBelow);
    }
    let xs = joint_breaks(p, p2);
    let gap = |x: i64| {
        let x = Rational64::from_integer(x);
        height_at(p2, x) - height_at(p, x)
    };
    Ok(xs
        .windows(2)
        .map(|w| (gap(w[0]) + gap(w[1])) * Rational64::new(w[1] - w[0], 2))
        .sum())
}

/// Lower limit for the vertex heights of a convex path of size `(n, m)`
/// that rises strictly above `bound` somewhere, or equals it.
///
/// The gap to `bound` is largest at some integer `x* in (0, n)` (a vertex of
/// either path), where the path is at least as high as `bound`. The height
/// there need not be an integer when `x*` is a vertex of `bound` only.
/// Convexity through that point and the endpoints then bounds the height at
/// every `x` from below.
fn vertex_floor(n: i64, m: i64, bound: &[Leg]) -> Vec<Rational64> {
    let b: Vec<Rational64> = (0..=n).map(|x| height_at(bound, Rational64::from_integer(x))).collect();
    (0..=n)
        .map(|x| {
            let mut lo = b[x as usize];
            for xs in 1..n {
                let p = b[xs as usize];
                let cand = match x.cmp(&xs) {
                    Ordering::Less => {
                        p - Rational64::from_integer(xs - x) * (Rational64::from_integer(m) - p)
                            / Rational64::from_integer(n - xs)
                    }
                    Ordering::Greater => p + Rational64::from_integer(x - xs) * p / Rational64::from_integer(xs),
                    Ordering::Equal => p,
                };
                lo = lo.min(cand);
            }
            lo
        })
        .collect()
}

/// All convex lattice paths of size `(n, m)` whose vertex heights stay at or
/// above `floor(x) - depth`.
fn convex_paths_in_window(n: i64, m: i64, floor: &[Rational64], depth: i64) -> Vec<ConvexPath> {
    struct Search<'a> {
        n: i64,
        m: i64,
        floor: &'a [Rational64],
        depth: i64,
        legs: Vec<Leg>,
        out: Vec<ConvexPath>,
    }

    impl Search<'_> {
        fn go(&mut self, x: i64, y: i64) {
            let (n, m) = (self.n, self.m);
            if x == n {
                if y == m {
                    self.out.push(ConvexPath {
                        legs: self.legs.clone(),
                    });
                }
                return;
            }
            for nx in x + 1..=n {
                // vertices of a convex path stay below the chord to the endpoint
                let top = if nx == n {
                    m
                } else {
                    (Rational64::from_integer(m) * Rational64::from_integer(nx) / Rational64::from_integer(n))
                        .floor()
                        .to_integer()
                };
                let bottom = (self.floor[nx as usize] - Rational64::from_integer(self.depth))
                    .ceil()
                    .to_integer();
                for ny in bottom..=top {
                    let leg = Leg { dx: nx - x, dy: ny - y };
                    if self
                        .legs
                        .last()
                        .is_some_and(|last| last.slope_cmp(&leg) != Ordering::Less)
                    {
                        continue;
                    }
                    self.legs.push(leg);
                    self.go(nx, ny);
                    self.legs.pop();
                }
            }
        }
    }

    if n == 0 {
        return if m == 0 {
            vec![ConvexPath { legs: Vec::new() }]
        } else {
            Vec::new()
        };
    }
    let mut s = Search {
        n,
        m,
        floor,
        depth,
        legs: Vec::new(),
        out: Vec::new(),
    };
    s.go(0, 0);
    s.out
}

fn kept(p: &ConvexPath, bound: &[Leg]) -> bool {
    !lies_below(&p.legs, bound).expect("sizes agree") || (is_convex(bound) && p.legs == convexify(bound).legs)
}

/// The convex lattice paths of size `size` that do not lie strictly below
/// `bound`: those rising above it somewhere, plus `bound` itself when it is
/// convex. Every other convex path of that size lies below `bound`.
pub fn enumerate_convex_above(size_: (i64, i64), bound: &[Leg]) -> Result<Vec<ConvexPath>, PathError> {
    enumerate_with_depth(size_, bound, 0)
}

/// The same enumeration with the search window deepened by `depth` units;
/// used to confirm that nothing outside the default window qualifies.
pub fn enumerate_with_depth(size_: (i64, i64), bound: &[Leg], depth: i64) -> Result<Vec<ConvexPath>, PathError> {
    let bs = size(bound);
    if bs != size_ {
        return Err(PathError::SizeMismatch(size_, bs));
    }
    let (n, m) = size_;
    let floor = vertex_floor(n, m, bound);
    let mut out: Vec<ConvexPath> = convex_paths_in_window(n, m, &floor, depth)
        .into_iter()
        .filter(|p| kept(p, bound))
        .collect();
    out.sort_by_cached_key(|p| p.legs.iter().map(|l| (l.dx, l.dy)).collect::<Vec<_>>());
    Ok(out)
}

/// Number of convex paths in the deepened window, kept or not; shows the
/// window is nonempty beyond the kept set.
pub fn window_population(size_: (i64, i64), bound: &[Leg], depth: i64) -> usize {
    let (n, m) = size_;
    convex_paths_in_window(n, m, &vertex_floor(n, m, bound), depth).len()
}
