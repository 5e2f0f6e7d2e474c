use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// Construction tree of a two-terminal series-parallel graph.
///
/// `Series` and `Parallel` are n-ary; every node has at least two children.
/// The smart constructors enforce this, and [`crate::sp::realize`] rejects
/// hand-built nodes that break it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SpTerm {
    Edge,
    Series(Vec<SpTerm>),
    Parallel(Vec<SpTerm>),
}

impl SpTerm {
    pub fn series(children: Vec<SpTerm>) -> Result<Self> {
        if children.len() < 2 {
            return Err(Error::Arity { found: children.len() });
        }
        Ok(SpTerm::Series(children))
    }

    pub fn parallel(children: Vec<SpTerm>) -> Result<Self> {
        if children.len() < 2 {
            return Err(Error::Arity { found: children.len() });
        }
        Ok(SpTerm::Parallel(children))
    }

    /// Series composition of `n` copies; `n = 1` is the identity.
    pub fn series_power(&self, n: u64) -> Result<Self> {
        match n {
            0 => Err(Error::Count { what: "series power", value: 0 }),
            1 => Ok(self.clone()),
            n => Ok(SpTerm::Series(vec![self.clone(); n as usize])),
        }
    }

    /// Parallel composition of `n` copies; `n = 1` is the identity.
    pub fn parallel_power(&self, n: u64) -> Result<Self> {
        match n {
            0 => Err(Error::Count { what: "parallel power", value: 0 }),
            1 => Ok(self.clone()),
            n => Ok(SpTerm::Parallel(vec![self.clone(); n as usize])),
        }
    }

    /// Replaces every edge by a path of `s` edges, scaling every cycle by `s`.
    pub fn stretch(&self, s: u64) -> Result<Self> {
        if s == 0 {
            return Err(Error::Count { what: "stretch factor", value: 0 });
        }
        let leaf = SpTerm::Edge.series_power(s)?;
        Ok(self.map_leaves(&leaf))
    }

    fn map_leaves(&self, leaf: &SpTerm) -> SpTerm {
        match self {
            SpTerm::Edge => leaf.clone(),
            SpTerm::Series(ch) => SpTerm::Series(ch.iter().map(|c| c.map_leaves(leaf)).collect()),
            SpTerm::Parallel(ch) => SpTerm::Parallel(ch.iter().map(|c| c.map_leaves(leaf)).collect()),
        }
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            SpTerm::Edge => 1,
            SpTerm::Series(ch) | SpTerm::Parallel(ch) => ch.iter().map(SpTerm::leaf_count).sum(),
        }
    }

    /// Checks the arity invariant throughout the tree.
    pub fn validate(&self) -> Result<()> {
        match self {
            SpTerm::Edge => Ok(()),
            SpTerm::Series(ch) | SpTerm::Parallel(ch) => {
                if ch.len() < 2 {
                    return Err(Error::Arity { found: ch.len() });
                }
                ch.iter().try_for_each(SpTerm::validate)
            }
        }
    }
}

/// Canonical form: `e`, `S(..)`, `P(..)` with comma-separated children.
impl fmt::Display for SpTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (tag, ch) = match self {
            SpTerm::Edge => return f.write_str("e"),
            SpTerm::Series(ch) => ("S(", ch),
            SpTerm::Parallel(ch) => ("P(", ch),
        };
        f.write_str(tag)?;
        for (i, c) in ch.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn powers() {
        let e = SpTerm::Edge;
        assert_eq!(e.series_power(3).unwrap(), SpTerm::Series(vec![SpTerm::Edge; 3]));
        assert_eq!(e.series_power(1).unwrap(), e);
        assert!(e.series_power(0).is_err());
        assert!(e.parallel_power(0).is_err());
        let p2 = e.series_power(2).unwrap();
        assert_eq!(p2.parallel_power(3).unwrap(), SpTerm::Parallel(vec![p2.clone(); 3]));
    }

    #[test]
    fn arity_enforced() {
        assert_eq!(SpTerm::series(vec![SpTerm::Edge]), Err(Error::Arity { found: 1 }));
        assert!(SpTerm::parallel(vec![]).is_err());
        assert!(SpTerm::Series(vec![SpTerm::Edge]).validate().is_err());
    }

    #[test]
    fn stretch_identity_and_leaves() {
        let t = SpTerm::Parallel(vec![SpTerm::Edge.series_power(2).unwrap(), SpTerm::Edge.series_power(3).unwrap()]);
        assert_eq!(t.stretch(1).unwrap(), t);
        assert_eq!(t.stretch(3).unwrap().leaf_count(), 15);
        assert!(t.stretch(0).is_err());
    }

    #[test]
    fn display_is_canonical() {
        let t = SpTerm::Parallel(vec![SpTerm::Edge.series_power(2).unwrap(), SpTerm::Edge.series_power(3).unwrap()]);
        assert_eq!(t.to_string(), "P(S(e,e),S(e,e,e))");
    }
}
