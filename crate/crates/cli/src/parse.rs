//! Parsers for command-line values.

use std::ops::RangeInclusive;

use adeshuffle::quiver::{Quiver, QuiverOrientation};
use adeshuffle::roots::{DynkinType, RootVec};
use anyhow::{bail, Context, Result};

use crate::QuiverArgs;

pub fn quiver(args: &QuiverArgs) -> Result<Quiver> {
    let t: DynkinType = args.dynkin.parse()?;
    let o = match &args.orientation {
        Some(s) => QuiverOrientation::parse(t, s)?,
        None => QuiverOrientation::standard(t),
    };
    Ok(Quiver::new(o))
}

/// `"i:d,j:e,..."` with 1-based colors; returns 0-based `(color, mode)` pairs.
pub fn word(q: &Quiver, s: &str) -> Result<Vec<(usize, i32)>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|part| {
            let (i, d) = part
                .split_once(':')
                .with_context(|| format!("word letter {part:?} should look like \"color:mode\""))?;
            let i: usize = i.trim().parse().with_context(|| format!("bad color in {part:?}"))?;
            let d: i32 = d.trim().parse().with_context(|| format!("bad mode in {part:?}"))?;
            if i == 0 || i > q.rank() {
                bail!("color {i} out of range 1..={}", q.rank());
            }
            Ok((i - 1, d))
        })
        .collect()
}

pub fn root(q: &Quiver, s: &str) -> Result<RootVec> {
    let v: Vec<i64> = s
        .split(',')
        .map(|x| x.trim().parse().with_context(|| format!("bad dimension vector {s:?}")))
        .collect::<Result<_>>()?;
    if v.len() != q.rank() {
        bail!("dimension vector {s:?} should have {} entries", q.rank());
    }
    let v = RootVec(v);
    if !q.roots.is_root(&v) {
        bail!("{v} is not a positive root");
    }
    Ok(v)
}

/// `"a..b"`, inclusive.
pub fn range(s: &str) -> Result<RangeInclusive<i32>> {
    let (a, b) = s
        .split_once("..")
        .with_context(|| format!("range {s:?} should look like \"-2..2\""))?;
    let a: i32 = a.trim().parse().with_context(|| format!("bad range start in {s:?}"))?;
    let b: i32 = b.trim().parse().with_context(|| format!("bad range end in {s:?}"))?;
    if a > b {
        bail!("empty range {s:?}");
    }
    Ok(a..=b)
}

pub fn size(s: &str) -> Result<(i64, i64)> {
    let (a, b) = s
        .split_once(',')
        .with_context(|| format!("size {s:?} should look like \"4,1\""))?;
    Ok((a.trim().parse()?, b.trim().parse()?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> Quiver {
        Quiver::parse("A2", "1>2").unwrap()
    }

    #[test]
    fn words() {
        assert_eq!(word(&a2(), "2:0,1:-1").unwrap(), vec![(1, 0), (0, -1)]);
        assert!(word(&a2(), "3:0").is_err());
        assert!(word(&a2(), "1").is_err());
    }

    #[test]
    fn ranges_and_roots() {
        assert_eq!(range("-2..2").unwrap(), -2..=2);
        assert!(range("2..-2").is_err());
        assert_eq!(root(&a2(), "1,1").unwrap(), RootVec(vec![1, 1]));
        assert!(root(&a2(), "2,1").is_err());
        assert_eq!(size("4,-1").unwrap(), (4, -1));
    }
}
