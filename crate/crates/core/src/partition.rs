//! Integer partitions, used both as Schur-function labels and as keys in
//! quiver-coefficient expansions.

use crate::error::{Error, Result};

/// Weakly decreasing positive parts; trailing zeros are trimmed on entry,
/// so equal partitions are structurally equal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn empty() -> Self {
        Partition::default()
    }

    pub fn new(parts: &[u32]) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidArgument(format!(
                "partition parts must be weakly decreasing, got {parts:?}"
            )));
        }
        let mut parts = parts.to_vec();
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition { parts })
    }

    /// p rows of length q (empty when either is zero).
    pub fn rectangle(p: u32, q: u32) -> Self {
        if q == 0 {
            return Partition::empty();
        }
        Partition { parts: vec![q; p as usize] }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// 1-based part, zero beyond the last row.
    pub fn part(&self, i: usize) -> u32 {
        assert!(i >= 1, "parts are 1-based");
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    pub fn num_rows(&self) -> usize {
        self.parts.len()
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.parts.first().copied().unwrap_or(0) as usize;
        let parts = (1..=cols)
            .map(|c| self.parts.iter().filter(|&&p| p as usize >= c).count() as u32)
            .collect();
        Partition { parts }
    }

    pub fn fits_in(&self, rows: u32, cols: u32) -> bool {
        self.parts.len() <= rows as usize && self.parts.first().copied().unwrap_or(0) <= cols
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.parts.iter().map(|&p| serde_json::Value::from(p)).collect(),
        )
    }
}

impl std::fmt::Display for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// All partitions of n, largest-part-first order.
pub fn partitions_of(n: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn go(remaining: u32, max_part: u32, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition { parts: current.clone() });
            return;
        }
        for p in (1..=remaining.min(max_part)).rev() {
            current.push(p);
            go(remaining - p, p, current, out);
            current.pop();
        }
    }
    go(n, n, &mut current, &mut out);
    out
}

/// Partitions of n with at most `rows` rows and parts at most `cols`.
pub fn partitions_in_box(n: u32, rows: u32, cols: u32) -> Vec<Partition> {
    partitions_of(n).into_iter().filter(|p| p.fits_in(rows, cols)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(parts: &[u32]) -> Partition {
        Partition::new(parts).unwrap()
    }

    #[test]
    fn construction_trims_and_validates() {
        assert_eq!(pt(&[3, 1, 0, 0]), pt(&[3, 1]));
        assert_eq!(pt(&[]), Partition::empty());
        assert!(Partition::new(&[1, 2]).is_err());
        assert_eq!(pt(&[2, 2, 1]).size(), 5);
        assert_eq!(pt(&[2, 2, 1]).part(1), 2);
        assert_eq!(pt(&[2, 2, 1]).part(4), 0);
    }

    #[test]
    fn conjugation() {
        assert_eq!(pt(&[2, 1]).conjugate(), pt(&[2, 1]));
        assert_eq!(pt(&[3, 1]).conjugate(), pt(&[2, 1, 1]));
        assert_eq!(pt(&[4]).conjugate(), pt(&[1, 1, 1, 1]));
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
        for n in 0..=6 {
            for p in partitions_of(n) {
                assert_eq!(p.conjugate().conjugate(), p);
                assert_eq!(p.conjugate().size(), p.size());
            }
        }
    }

    #[test]
    fn enumeration_counts() {
        // Partition numbers 1, 1, 2, 3, 5, 7, 11.
        let counts: Vec<usize> = (0..=6).map(|n| partitions_of(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11]);
        assert_eq!(
            partitions_in_box(4, 2, 2),
            vec![Partition::rectangle(2, 2)]
        );
        assert_eq!(partitions_in_box(3, 2, 2).len(), 1); // only (2,1)
    }

    #[test]
    fn rectangles_and_boxes() {
        assert_eq!(Partition::rectangle(2, 3), pt(&[3, 3]));
        assert_eq!(Partition::rectangle(0, 5), Partition::empty());
        assert_eq!(Partition::rectangle(5, 0), Partition::empty());
        assert!(pt(&[2, 1]).fits_in(2, 2));
        assert!(!pt(&[2, 1]).fits_in(1, 2));
        assert!(!pt(&[3]).fits_in(2, 2));
        assert!(Partition::empty().fits_in(0, 0));
    }

    #[test]
    fn ordering_is_lex_on_parts() {
        assert!(pt(&[1, 1]) < pt(&[2]));
        assert!(pt(&[2]) < pt(&[2, 1]));
        assert_eq!(pt(&[2, 1]).to_string(), "(2,1)");
        assert_eq!(pt(&[2, 1]).to_json(), serde_json::json!([2, 1]));
    }
}
