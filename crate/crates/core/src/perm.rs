//! Permutations in one-line notation, canonicalized by trimming trailing
//! fixed points so that each element of the infinite symmetric group has a
//! unique representative. Values and positions are 1-based throughout.

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    // One-line notation w(1), w(2), ..., w(m) with w(m) != m unless empty.
    window: Vec<usize>,
}

impl Permutation {
    pub fn identity() -> Self {
        Permutation { window: Vec::new() }
    }

    /// Builds a permutation from one-line notation, validating that the
    /// values are a rearrangement of 1..=len.
    pub fn from_one_line(values: &[usize]) -> Result<Self> {
        let n = values.len();
        let mut seen = vec![false; n];
        for &v in values {
            if v == 0 || v > n || seen[v - 1] {
                return Err(Error::InvalidArgument(format!(
                    "not a permutation of 1..={n}: {values:?}"
                )));
            }
            seen[v - 1] = true;
        }
        let mut window = values.to_vec();
        while let Some(&last) = window.last() {
            if last == window.len() {
                window.pop();
            } else {
                break;
            }
        }
        Ok(Permutation { window })
    }

    /// The adjacent transposition s_j exchanging j and j+1.
    pub fn adjacent_transposition(j: usize) -> Self {
        assert!(j >= 1, "transposition index is 1-based");
        let mut values: Vec<usize> = (1..=j + 1).collect();
        values.swap(j - 1, j);
        Permutation { window: values }
    }

    /// The longest element of S_m: m, m-1, ..., 1.
    pub fn longest(m: usize) -> Self {
        Permutation {
            window: if m <= 1 { Vec::new() } else { (1..=m).rev().collect() },
        }
    }

    /// Product of adjacent transpositions, left to right in composition order.
    pub fn from_word(letters: &[usize]) -> Self {
        let mut acc = Permutation::identity();
        for &j in letters {
            acc = acc.multiply(&Permutation::adjacent_transposition(j));
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.window.is_empty()
    }

    /// Smallest m such that the permutation fixes every point beyond m.
    pub fn size(&self) -> usize {
        self.window.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        assert!(i >= 1, "positions are 1-based");
        if i <= self.window.len() {
            self.window[i - 1]
        } else {
            i
        }
    }

    /// One-line notation padded with fixed points out to length m.
    pub fn one_line(&self, m: usize) -> Vec<usize> {
        assert!(m >= self.size());
        (1..=m).map(|i| self.apply(i)).collect()
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let w = &self.window;
        let mut count = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] > w[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Functional composition: (self * other)(i) = self(other(i)).
    pub fn multiply(&self, other: &Permutation) -> Permutation {
        let m = self.size().max(other.size());
        let values: Vec<usize> = (1..=m).map(|i| self.apply(other.apply(i))).collect();
        Permutation::from_one_line(&values).expect("composition of permutations")
    }

    pub fn inverse(&self) -> Permutation {
        let mut values = vec![0; self.window.len()];
        for (i, &v) in self.window.iter().enumerate() {
            values[v - 1] = i + 1;
        }
        Permutation { window: values }
    }

    /// True when w(j) > w(j+1).
    pub fn descent_at(&self, j: usize) -> bool {
        assert!(j >= 1);
        self.apply(j) > self.apply(j + 1)
    }

    /// Largest j with a descent at j, or 0 for the identity.
    pub fn last_descent(&self) -> usize {
        (1..self.window.len()).rev().find(|&j| self.descent_at(j)).unwrap_or(0)
    }

    /// Conjugation-free embedding that makes the permutation act on
    /// k+1, k+2, ... instead of 1, 2, ...; lengths are preserved.
    pub fn shift(&self, k: usize) -> Permutation {
        if self.window.is_empty() {
            return Permutation::identity();
        }
        let mut values: Vec<usize> = (1..=k).collect();
        values.extend(self.window.iter().map(|&v| v + k));
        Permutation { window: values }
    }

    /// Bruhat order via the dominance criterion on rank matrices:
    /// u <= v iff for all i, j the count #{a <= i : u(a) >= j} never
    /// exceeds the same count for v.
    pub fn bruhat_leq(&self, other: &Permutation) -> bool {
        let m = self.size().max(other.size());
        for i in 1..=m {
            for j in 1..=m {
                let cu = (1..=i).filter(|&a| self.apply(a) >= j).count();
                let cv = (1..=i).filter(|&a| other.apply(a) >= j).count();
                if cu > cv {
                    return false;
                }
            }
        }
        true
    }

    /// Some reduced word, produced by repeatedly removing the last descent.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut w = self.clone();
        let mut letters = Vec::with_capacity(self.length());
        while !w.is_identity() {
            let j = w.last_descent();
            w = w.multiply(&Permutation::adjacent_transposition(j));
            letters.push(j);
        }
        letters.reverse();
        letters
    }

    /// Whether w encodes a partial permutation from cols elements to rows
    /// elements: all descents of w at positions <= cols and all descents of
    /// w⁻¹ at positions <= rows. Equivalent to w being the minimal-length
    /// completion of the matching it carves out of the rows x cols corner.
    pub fn is_partial_perm(&self, rows: usize, cols: usize) -> bool {
        self.last_descent() <= cols && self.inverse().last_descent() <= rows
    }

    /// Minimal-length completion of a partial permutation given as matched
    /// (row, col) pairs inside a rows x cols rectangle.
    pub fn complete_partial(pairs: &[(usize, usize)], rows: usize, cols: usize) -> Result<Self> {
        let mut row_used = vec![false; rows];
        let mut col_used = vec![false; cols];
        for &(p, q) in pairs {
            if p == 0 || p > rows || q == 0 || q > cols {
                return Err(Error::InvalidArgument(format!(
                    "pair ({p},{q}) outside {rows}x{cols} rectangle"
                )));
            }
            if row_used[p - 1] || col_used[q - 1] {
                return Err(Error::InvalidArgument(format!(
                    "pair ({p},{q}) reuses a row or column"
                )));
            }
            row_used[p - 1] = true;
            col_used[q - 1] = true;
        }
        let mut values = vec![0; cols];
        for &(p, q) in pairs {
            values[q - 1] = p;
        }
        let mut next_spare = rows;
        for v in values.iter_mut() {
            if *v == 0 {
                next_spare += 1;
                *v = next_spare;
            }
        }
        for p in 1..=rows {
            if !row_used[p - 1] {
                values.push(p);
            }
        }
        Permutation::from_one_line(&values)
    }

    /// All members of S_m in lexicographic one-line order.
    pub fn symmetric_group(m: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut values: Vec<usize> = (1..=m).collect();
        let mut used = vec![false; m];
        fn build(
            m: usize,
            values: &mut Vec<usize>,
            used: &mut Vec<bool>,
            depth: usize,
            out: &mut Vec<Permutation>,
        ) {
            if depth == m {
                out.push(Permutation::from_one_line(values).expect("valid by construction"));
                return;
            }
            for v in 1..=m {
                if !used[v - 1] {
                    used[v - 1] = true;
                    values[depth] = v;
                    build(m, values, used, depth + 1, out);
                    used[v - 1] = false;
                }
            }
        }
        build(m, &mut values, &mut used, 0, &mut out);
        out
    }
}

impl std::fmt::Debug for Permutation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self}")
    }
}

impl std::fmt::Display for Permutation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.window.is_empty() {
            return write!(f, "id");
        }
        if self.window.len() <= 9 {
            for v in &self.window {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            write!(f, "[")?;
            for (i, v) in self.window.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, "]")
        }
    }
}
