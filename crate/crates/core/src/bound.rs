//! The value `2 + 1/q` of the strong fractional choice number for girth `k`.

use core::fmt;

use crate::error::{precondition, Result};

/// `q = ⌊(k + 1) / 4⌋`, so that `k ∈ {4q − 1, 4q, 4q + 1, 4q + 2}`.
pub fn q_for_girth(k: u32) -> Result<u32> {
    if k < 3 {
        return Err(precondition(alloc::format!("girth bound k must be at least 3, got {k}")));
    }
    Ok((k + 1) / 4)
}

/// One row of the bound table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoundRow {
    pub k: u32,
    pub q: u32,
    /// Smallest and largest `k` sharing this `q`.
    pub class: (u32, u32),
    /// `2 + 1/q` as a reduced fraction.
    pub numer: u32,
    pub denom: u32,
}

pub fn bound_for_girth(k: u32) -> Result<BoundRow> {
    let q = q_for_girth(k)?;
    // gcd(2q + 1, q) = 1
    Ok(BoundRow { k, q, class: (4 * q - 1, 4 * q + 2), numer: 2 * q + 1, denom: q })
}

impl fmt::Display for BoundRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k={} q={} class={}..={} bound=", self.k, self.q, self.class.0, self.class.1)?;
        if self.denom == 1 {
            write!(f, "{}", self.numer)
        } else {
            write!(f, "{}/{}", self.numer, self.denom)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn table() {
        assert_eq!(bound_for_girth(3).unwrap().to_string(), "k=3 q=1 class=3..=6 bound=3");
        assert_eq!(bound_for_girth(7).unwrap().to_string(), "k=7 q=2 class=7..=10 bound=5/2");
        assert_eq!(bound_for_girth(11).unwrap().to_string(), "k=11 q=3 class=11..=14 bound=7/3");
        assert!(bound_for_girth(2).is_err());
        for k in 3..200 {
            let row = bound_for_girth(k).unwrap();
            assert!(row.class.0 <= k && k <= row.class.1);
        }
    }
}
