//! Partitions as Jordan types of nilpotent elements.
//!
//! A [`Partition`] stores its parts in weakly decreasing order; equality is
//! multiset equality. Which partitions label nilpotent orbits depends on the
//! [`Series`] of the ambient group.

use std::{cmp::Ordering, fmt, str::FromStr};

use crate::error::{Error, Result};

/// The classical series: `B` is SO(2n+1), `C` is Sp(2n), `D` is SO(2n).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Series {
    B,
    C,
    D,
}

impl Series {
    pub const ALL: [Series; 3] = [Series::B, Series::C, Series::D];

    /// Parity of the part sizes that carry component-group generators:
    /// even parts for `C`, odd parts for `B` and `D`.
    pub fn twists_part(self, part: u32) -> bool {
        match self {
            Series::C => part.is_multiple_of(2),
            Series::B | Series::D => part % 2 == 1,
        }
    }

    /// Dimension of the defining representation at rank `n`.
    pub fn dimension(self, rank: usize) -> usize {
        match self {
            Series::B => 2 * rank + 1,
            Series::C | Series::D => 2 * rank,
        }
    }

    /// Rank for a given dimension, if the dimension has the right parity.
    pub fn rank_of(self, dimension: usize) -> Option<usize> {
        match self {
            Series::B if dimension % 2 == 1 => Some(dimension / 2),
            Series::C | Series::D if dimension.is_multiple_of(2) => Some(dimension / 2),
            _ => None,
        }
    }

    pub fn group_name(self) -> &'static str {
        match self {
            Series::B => "SO(2n+1)",
            Series::C => "Sp(2n)",
            Series::D => "SO(2n)",
        }
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self {
            Series::B => "B",
            Series::C => "C",
            Series::D => "D",
        };
        f.write_str(tag)
    }
}

impl FromStr for Series {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "B" | "b" => Ok(Series::B),
            "C" | "c" => Ok(Series::C),
            "D" | "d" => Ok(Series::D),
            other => Err(Error::Parse(format!(
                "unknown series `{other}`, expected B, C or D"
            ))),
        }
    }
}

/// A partition, parts sorted weakly decreasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

/// Outcome of [`Partition::surgery`]: either a genuine partition or the
/// formally-zero symbol produced when a negative part is inserted.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Shape {
    Partition(Partition),
    Null,
}

impl Shape {
    pub fn as_partition(&self) -> Option<&Partition> {
        match self {
            Shape::Partition(p) => Some(p),
            Shape::Null => None,
        }
    }

    pub fn is_null(&self) -> bool {
        matches!(self, Shape::Null)
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Shape::Partition(p) => p.fmt(f),
            Shape::Null => f.write_str("null"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidityReport {
    pub valid: bool,
    pub very_even: bool,
    pub reason: String,
}

impl Partition {
    /// Builds a partition from parts in any order. Zero parts are rejected.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::NonPositivePart("0".into()));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// `(i^count)`.
    pub fn rectangle(part: u32, count: usize) -> Self {
        assert!(part > 0, "parts are positive");
        Partition {
            parts: vec![part; count],
        }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn size(&self) -> usize {
        self.parts.iter().map(|&p| p as usize).sum()
    }

    pub fn largest(&self) -> Option<u32> {
        self.parts.first().copied()
    }

    /// `m_i`: the number of parts equal to `i`.
    pub fn multiplicity(&self, i: u32) -> usize {
        self.parts.iter().filter(|&&p| p == i).count()
    }

    /// `m_{>i}`: the number of parts strictly larger than `i`.
    pub fn multiplicity_above(&self, i: u32) -> usize {
        self.parts.iter().take_while(|&&p| p > i).count()
    }

    /// Distinct part sizes with their multiplicities, largest part first.
    pub fn distinct(&self) -> Vec<(u32, usize)> {
        let mut out: Vec<(u32, usize)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((q, m)) if *q == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    pub fn validate(&self, series: Series) -> ValidityReport {
        let invalid = |reason: String| ValidityReport {
            valid: false,
            very_even: false,
            reason,
        };
        let size = self.size();
        match series {
            Series::B if size.is_multiple_of(2) => {
                return invalid(format!("size {size} is even; series B needs an odd size"))
            }
            Series::C | Series::D if size % 2 == 1 => {
                return invalid(format!(
                    "size {size} is odd; series {series} needs an even size"
                ))
            }
            Series::D if size == 0 => return invalid("series D needs a positive size".to_string()),
            _ => {}
        }
        for (i, m) in self.distinct() {
            // C: odd parts need even multiplicity; B, D: even parts do.
            let constrained = !series.twists_part(i);
            if constrained && m % 2 == 1 {
                return invalid(format!("m_{i} = {m} odd"));
            }
        }
        let very_even = series == Series::D && self.parts.iter().all(|p| p % 2 == 0);
        ValidityReport {
            valid: true,
            very_even,
            reason: if very_even {
                "very even".into()
            } else {
                "ok".into()
            },
        }
    }

    pub fn is_valid(&self, series: Series) -> bool {
        self.validate(series).valid
    }

    /// Errors with the validity reason unless the partition is valid for `series`.
    pub fn ensure_valid(&self, series: Series) -> Result<()> {
        let report = self.validate(series);
        if report.valid {
            Ok(())
        } else {
            Err(Error::InvalidPartition {
                partition: self.clone(),
                series,
                reason: report.reason,
            })
        }
    }

    /// Replaces the parts in `removed` by the parts in `inserted` and re-sorts.
    ///
    /// Inserted zeros are dropped. Any negative inserted part yields
    /// [`Shape::Null`].
    pub fn surgery(&self, removed: &[u32], inserted: &[i64]) -> Result<Shape> {
        let mut parts = self.parts.clone();
        for &r in removed {
            match parts.iter().position(|&p| p == r) {
                Some(idx) => {
                    parts.remove(idx);
                }
                None => {
                    return Err(Error::NotSubMultiset {
                        partition: self.clone(),
                        removed: removed.to_vec(),
                    })
                }
            }
        }
        if inserted.iter().any(|&b| b < 0) {
            return Ok(Shape::Null);
        }
        parts.extend(inserted.iter().filter(|&&b| b > 0).map(|&b| b as u32));
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Shape::Partition(Partition { parts }))
    }

    /// Comma-separated parts, e.g. `2,2,1,1`.
    pub fn to_text(&self) -> String {
        self.join(",")
    }

    pub fn join(&self, sep: &str) -> String {
        self.parts
            .iter()
            .map(u32::to_string)
            .collect::<Vec<_>>()
            .join(sep)
    }
}

/// Lexicographic on the descending part lists.
impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.parts.cmp(&other.parts)
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let text = text.trim();
        let text = text
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .unwrap_or(text);
        if text.trim().is_empty() {
            return Err(Error::Parse("empty partition".into()));
        }
        let mut parts = Vec::new();
        for token in text.split(',') {
            let token = token.trim();
            let value: i64 = token
                .parse()
                .map_err(|_| Error::Parse(format!("`{token}` is not an integer")))?;
            if value <= 0 {
                return Err(Error::NonPositivePart(token.to_string()));
            }
            let value = u32::try_from(value)
                .map_err(|_| Error::Parse(format!("`{token}` is too large")))?;
            parts.push(value);
        }
        Partition::new(parts)
    }
}

/// All partitions of `size`, in reverse lexicographic order.
pub fn partitions_of(size: usize) -> Vec<Partition> {
    fn go(remaining: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition {
                parts: prefix.clone(),
            });
            return;
        }
        for part in (1..=remaining.min(max)).rev() {
            prefix.push(part);
            go(remaining - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(size as u32, size as u32, &mut Vec::new(), &mut out);
    out
}

/// Partitions labelling nilpotent orbits of the rank-`rank` group of `series`,
/// in reverse lexicographic order. Very even partitions appear once.
pub fn valid_partitions(series: Series, rank: usize) -> Vec<Partition> {
    partitions_of(series.dimension(rank))
        .into_iter()
        .filter(|p| p.is_valid(series))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn parse_sorts_and_rejects() {
        assert_eq!("2,2,1,1".parse::<Partition>().unwrap(), p(&[2, 2, 1, 1]));
        assert_eq!("1,4,4".parse::<Partition>().unwrap().parts(), &[4, 4, 1]);
        let err = "2,0".parse::<Partition>().unwrap_err();
        assert!(err.to_string().contains("part must be positive"));
        assert!(err.to_string().contains('0'));
        assert!(matches!("2,-3".parse::<Partition>(), Err(Error::NonPositivePart(t)) if t == "-3"));
        assert!(matches!("2,a".parse::<Partition>(), Err(Error::Parse(m)) if m.contains("`a`")));
        assert!("".parse::<Partition>().is_err());
    }

    #[test]
    fn multiplicities() {
        let l = p(&[6, 6, 4]);
        assert_eq!(l.multiplicity(6), 2);
        assert_eq!(l.multiplicity(5), 0);
        assert_eq!(p(&[2, 2, 1, 1]).multiplicity(1), 2);
        assert_eq!(p(&[2, 2, 1, 1]).multiplicity_above(1), 2);
        assert_eq!(p(&[2, 2, 1, 1]).multiplicity_above(2), 0);
        assert_eq!(p(&[4, 2, 1]).multiplicity_above(2), 1);
        assert_eq!(l.multiplicity(100), 0);
    }

    #[test]
    fn validity() {
        assert!(p(&[3, 3]).validate(Series::C).valid);
        let r = p(&[2, 1, 1, 1]).validate(Series::B);
        assert!(!r.valid);
        assert_eq!(r.reason, "m_2 = 1 odd");
        let r = p(&[2, 2]).validate(Series::D);
        assert!(r.valid && r.very_even);
        assert!(!p(&[2, 2]).validate(Series::C).very_even);
        let r = p(&[2, 1]).validate(Series::C);
        assert!(!r.valid);
        assert!(r.reason.contains("size 3 is odd"));
        assert!(!p(&[2]).is_valid(Series::D));
        assert!(p(&[1]).is_valid(Series::B));
        assert!(Partition::empty().is_valid(Series::C));
        assert!(!Partition::empty().is_valid(Series::D));
    }

    #[test]
    fn surgery_examples() {
        let l = p(&[6, 4, 4, 4, 3, 2]);
        assert_eq!(
            l.surgery(&[4, 4], &[2, 1]).unwrap(),
            Shape::Partition(p(&[6, 4, 3, 2, 2, 1]))
        );
        assert_eq!(
            p(&[2, 2]).surgery(&[2], &[0]).unwrap(),
            Shape::Partition(p(&[2]))
        );
        assert_eq!(p(&[1, 1, 1]).surgery(&[1], &[-1]).unwrap(), Shape::Null);
        assert!(matches!(
            p(&[2, 2]).surgery(&[3], &[1]),
            Err(Error::NotSubMultiset { .. })
        ));
        assert!(matches!(
            p(&[2]).surgery(&[2, 2], &[1, 1]),
            Err(Error::NotSubMultiset { .. })
        ));
    }

    #[test]
    fn enumeration_counts() {
        // p(n) for n = 0..10
        let expected = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42];
        for (n, &count) in expected.iter().enumerate() {
            assert_eq!(partitions_of(n).len(), count);
        }
        let sp6: Vec<String> = valid_partitions(Series::C, 3)
            .iter()
            .map(|p| p.to_string())
            .collect();
        assert_eq!(
            sp6,
            [
                "(6)",
                "(4,2)",
                "(4,1,1)",
                "(3,3)",
                "(2,2,2)",
                "(2,2,1,1)",
                "(2,1,1,1,1)",
                "(1,1,1,1,1,1)"
            ]
        );
        let so4: Vec<String> = valid_partitions(Series::D, 2)
            .iter()
            .map(|p| p.to_string())
            .collect();
        assert_eq!(so4, ["(3,1)", "(2,2)", "(1,1,1,1)"]);
    }

    #[test]
    fn descending_and_distinct() {
        let l = p(&[1, 3, 3, 2]);
        assert_eq!(l.parts(), &[3, 3, 2, 1]);
        assert_eq!(l.distinct(), vec![(3, 2), (2, 1), (1, 1)]);
        assert_eq!(l.to_text(), "3,3,2,1");
        assert_eq!(l.join("."), "3.3.2.1");
    }
}
