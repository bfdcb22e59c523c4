//! Orbits of equioriented type-A quiver representations and their lace
//! diagrams. An orbit is a triangular array of rank conditions r_ij; a lace
//! diagram is a column arrangement of dots with partial matchings between
//! neighbors, encoded equivalently as a sequence of partial permutations.
//! This module builds the left-most diagram of an orbit and closes it under
//! the length-preserving moves (minimal diagrams) and the three-variant
//! K-theoretic moves (KMS-factorizations).

use std::collections::{BTreeSet, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Orbit identifier: dims (e_0..e_n) and expected ranks r_ij of the
/// composite maps from stage i to stage j, for 0 <= i < j <= n.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct RankConditions {
    dims: Vec<usize>,
    ranks: Vec<usize>,
}

impl RankConditions {
    /// Missing entries default to rank 0; conflicting duplicates are
    /// rejected. Realizability is not required here, only at use.
    pub fn new(dims: &[usize], entries: &[(usize, usize, usize)]) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::InvalidArgument("dimension vector is empty".to_string()));
        }
        let n = dims.len() - 1;
        let mut ranks: Vec<Option<usize>> = vec![None; n * (n + 1) / 2];
        for &(i, j, v) in entries {
            if i >= j || j > n {
                return Err(Error::InvalidArgument(format!(
                    "rank index ({i},{j}) outside 0 <= i < j <= {n}"
                )));
            }
            let slot = &mut ranks[Self::index(n, i, j)];
            if slot.is_some_and(|old| old != v) {
                return Err(Error::InvalidArgument(format!(
                    "conflicting values for rank ({i},{j})"
                )));
            }
            *slot = Some(v);
        }
        Ok(RankConditions {
            dims: dims.to_vec(),
            ranks: ranks.into_iter().map(|v| v.unwrap_or(0)).collect(),
        })
    }

    fn index(n: usize, i: usize, j: usize) -> usize {
        i * (2 * n - i + 1) / 2 + (j - i - 1)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    fn n(&self) -> usize {
        self.dims.len() - 1
    }

    /// r_ij with the boundary conventions r_ii = e_i and r_ij = 0 whenever
    /// an index leaves [0,n] or i > j.
    pub fn rank(&self, i: i64, j: i64) -> i64 {
        let n = self.n() as i64;
        if i < 0 || j < 0 || i > n || j > n || i > j {
            return 0;
        }
        if i == j {
            return self.dims[i as usize] as i64;
        }
        self.ranks[Self::index(self.n(), i as usize, j as usize)] as i64
    }

    /// Number of strands spanning exactly columns i..j in any diagram of
    /// this orbit; negative exactly when the ranks are unrealizable.
    pub fn multiplicity(&self, i: usize, j: usize) -> i64 {
        assert!(i <= j && j <= self.n(), "multiplicity indices out of range");
        let (i, j) = (i as i64, j as i64);
        self.rank(i, j) - self.rank(i - 1, j) - self.rank(i, j + 1) + self.rank(i - 1, j + 1)
    }

    pub fn is_realizable(&self) -> bool {
        self.require_realizable().is_ok()
    }

    pub fn require_realizable(&self) -> Result<()> {
        for i in 0..=self.n() {
            for j in i..=self.n() {
                let m = self.multiplicity(i, j);
                if m < 0 {
                    return Err(Error::Unrealizable(format!(
                        "strand multiplicity for columns {i}..{j} is {m}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Expected codimension d(r) of the orbit.
    pub fn codim(&self) -> Result<usize> {
        self.require_realizable()?;
        let n = self.n() as i64;
        let mut d = 0i64;
        for i in 0..n {
            for j in (i + 1)..=n {
                d += (self.rank(i, j - 1) - self.rank(i, j))
                    * (self.rank(i + 1, j) - self.rank(i, j));
            }
        }
        Ok(d as usize)
    }

    /// Whether this orbit lies in the closure of `other`: pointwise
    /// rank inequality over the same dims.
    pub fn closure_leq(&self, other: &RankConditions) -> Result<bool> {
        if self.dims != other.dims {
            return Err(Error::InvalidArgument(format!(
                "closure comparison requires equal dims, got {:?} vs {:?}",
                self.dims, other.dims
            )));
        }
        Ok(self.ranks.iter().zip(other.ranks.iter()).all(|(s, r)| s <= r))
    }

    /// The orbit with k extra full-length strands: dims and all ranks grow
    /// by k. Minimal diagrams correspond under shifting every w_i by k.
    pub fn add_strands(&self, k: usize) -> RankConditions {
        RankConditions {
            dims: self.dims.iter().map(|e| e + k).collect(),
            ranks: self.ranks.iter().map(|r| r + k).collect(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let n = self.n();
        let mut triples = Vec::new();
        for i in 0..n {
            for j in (i + 1)..=n {
                triples.push(serde_json::json!([i, j, self.ranks[Self::index(n, i, j)]]));
            }
        }
        serde_json::json!({"dims": self.dims, "ranks": triples})
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Parse("rank conditions must be an object".to_string()))?;
        let dims = parse_dims(obj.get("dims"))?;
        let mut entries = Vec::new();
        if let Some(ranks) = obj.get("ranks") {
            let list = ranks
                .as_array()
                .ok_or_else(|| Error::Parse("ranks must be an array of triples".to_string()))?;
            for item in list {
                let triple = item
                    .as_array()
                    .filter(|a| a.len() == 3)
                    .ok_or_else(|| Error::Parse("each rank entry must be [i,j,value]".to_string()))?;
                let mut nums = [0usize; 3];
                for (slot, value) in nums.iter_mut().zip(triple.iter()) {
                    *slot = value
                        .as_u64()
                        .ok_or_else(|| Error::Parse("rank entries must be non-negative integers".to_string()))?
                        as usize;
                }
                entries.push((nums[0], nums[1], nums[2]));
            }
        }
        Self::new(&dims, &entries)
    }
}

fn parse_dims(v: Option<&serde_json::Value>) -> Result<Vec<usize>> {
    let list = v
        .and_then(|d| d.as_array())
        .ok_or_else(|| Error::Parse("missing dims array".to_string()))?;
    list.iter()
        .map(|x| {
            x.as_u64()
                .map(|u| u as usize)
                .ok_or_else(|| Error::Parse("dims must be non-negative integers".to_string()))
        })
        .collect()
}

/// A lace diagram: e_i dots per column, and for each neighboring pair
/// (i-1, i) a partial matching. The triple (i, p, q) joins dot p of column
/// i-1 to dot q of column i; dots are numbered 1 at the top, downward.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct LaceDiagram {
    dims: Vec<usize>,
    connections: Vec<(usize, usize, usize)>,
}

impl LaceDiagram {
    pub fn new(dims: &[usize], connections: &[(usize, usize, usize)]) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::InvalidArgument("dimension vector is empty".to_string()));
        }
        let n = dims.len() - 1;
        let mut sorted = connections.to_vec();
        sorted.sort_unstable();
        let mut left_used = HashSet::new();
        let mut right_used = HashSet::new();
        for &(i, p, q) in &sorted {
            if i == 0 || i > n {
                return Err(Error::InvalidArgument(format!(
                    "connection pair index {i} outside 1..={n}"
                )));
            }
            if p == 0 || p > dims[i - 1] || q == 0 || q > dims[i] {
                return Err(Error::InvalidArgument(format!(
                    "connection ({i},{p},{q}) outside the {}x{} dot range",
                    dims[i - 1],
                    dims[i]
                )));
            }
            if !left_used.insert((i, p)) || !right_used.insert((i, q)) {
                return Err(Error::InvalidArgument(format!(
                    "connection ({i},{p},{q}) reuses a dot"
                )));
            }
        }
        Ok(LaceDiagram { dims: dims.to_vec(), connections: sorted })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn connections(&self) -> &[(usize, usize, usize)] {
        &self.connections
    }

    /// The permutation encoding: w_i is the minimal-length permutation with
    /// w_i(q) = p for every connection of the pair (i-1, i).
    pub fn to_perms(&self) -> PermSeq {
        let n = self.dims.len() - 1;
        let perms = (1..=n)
            .map(|i| {
                let pairs: Vec<(usize, usize)> = self
                    .connections
                    .iter()
                    .filter(|c| c.0 == i)
                    .map(|&(_, p, q)| (p, q))
                    .collect();
                Permutation::complete_partial(&pairs, self.dims[i - 1], self.dims[i])
                    .expect("connections validated at construction")
            })
            .collect();
        PermSeq { dims: self.dims.clone(), perms }
    }

    pub fn from_perms(seq: &PermSeq) -> LaceDiagram {
        seq.to_lace()
    }

    pub fn rank_conditions(&self) -> RankConditions {
        self.to_perms().rank_conditions()
    }

    pub fn diagram_length(&self) -> usize {
        self.to_perms().diagram_length()
    }

    pub fn is_minimal(&self) -> bool {
        self.to_perms().is_minimal()
    }

    /// The extended diagram: every unmatched dot gains a partner dot
    /// appended below the existing dots of the neighboring column, making
    /// each neighboring matching total. Column k first receives the
    /// partners of unmatched column-(k+1) dots, then those of unmatched
    /// column-(k-1) dots, matching the numbering inside the completed w_i.
    pub fn extend(&self) -> LaceDiagram {
        let seq = self.to_perms();
        let n = self.dims.len() - 1;
        let conn_count =
            |i: usize| self.connections.iter().filter(|c| c.0 == i).count();
        // Phantom partners for pair i live at indices e_{i-1}+1.. on the
        // left and after the pair-(i+1) phantoms on the right.
        let left_phantoms: Vec<usize> =
            (0..=n).map(|k| if k < n { self.dims[k + 1] - conn_count(k + 1) } else { 0 }).collect();
        let right_phantoms: Vec<usize> =
            (0..=n).map(|k| if k > 0 { self.dims[k - 1] - conn_count(k) } else { 0 }).collect();
        let new_dims: Vec<usize> = (0..=n)
            .map(|k| self.dims[k] + left_phantoms[k] + right_phantoms[k])
            .collect();
        let mut connections = Vec::new();
        for i in 1..=n {
            let w = &seq.perms[i - 1];
            let total = self.dims[i] + right_phantoms[i];
            for q in 1..=total {
                let p = w.apply(q);
                let global_q =
                    if q <= self.dims[i] { q } else { q + left_phantoms[i] };
                connections.push((i, p, global_q));
            }
        }
        LaceDiagram::new(&new_dims, &connections).expect("extension is a valid diagram")
    }

    pub fn to_json(&self) -> serde_json::Value {
        let conns: Vec<serde_json::Value> = self
            .connections
            .iter()
            .map(|&(i, p, q)| serde_json::json!([i, p, q]))
            .collect();
        serde_json::json!({"dims": self.dims, "connections": conns})
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Parse("lace diagram must be an object".to_string()))?;
        let dims = parse_dims(obj.get("dims"))?;
        let mut connections = Vec::new();
        if let Some(list) = obj.get("connections") {
            let list = list
                .as_array()
                .ok_or_else(|| Error::Parse("connections must be an array of triples".to_string()))?;
            for item in list {
                let triple = item
                    .as_array()
                    .filter(|a| a.len() == 3)
                    .ok_or_else(|| Error::Parse("each connection must be [i,p,q]".to_string()))?;
                let mut nums = [0usize; 3];
                for (slot, value) in nums.iter_mut().zip(triple.iter()) {
                    *slot = value
                        .as_u64()
                        .ok_or_else(|| Error::Parse("connections must be non-negative integers".to_string()))?
                        as usize;
                }
                connections.push((nums[0], nums[1], nums[2]));
            }
        }
        Self::new(&dims, &connections)
    }
}

/// Permutation encoding of a lace diagram: w_i describes the pair
/// (i-1, i), sending the column-i dot q to its column-(i-1) partner.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct PermSeq {
    dims: Vec<usize>,
    perms: Vec<Permutation>,
}

impl PermSeq {
    pub fn new(dims: &[usize], perms: Vec<Permutation>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::InvalidArgument("dimension vector is empty".to_string()));
        }
        if perms.len() + 1 != dims.len() {
            return Err(Error::InvalidArgument(format!(
                "{} permutations do not fit {} columns",
                perms.len(),
                dims.len()
            )));
        }
        for (t, w) in perms.iter().enumerate() {
            if !w.is_partial_perm(dims[t], dims[t + 1]) {
                return Err(Error::InvalidArgument(format!(
                    "w_{} = {w} is not a partial permutation for columns {}x{}",
                    t + 1,
                    dims[t],
                    dims[t + 1]
                )));
            }
        }
        Ok(PermSeq { dims: dims.to_vec(), perms })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn perms(&self) -> &[Permutation] {
        &self.perms
    }

    /// The permutation of the pair (i-1, i), 1-based.
    pub fn perm(&self, i: usize) -> &Permutation {
        &self.perms[i - 1]
    }

    pub fn to_lace(&self) -> LaceDiagram {
        let n = self.dims.len() - 1;
        let mut connections = Vec::new();
        for i in 1..=n {
            for q in 1..=self.dims[i] {
                let p = self.perms[i - 1].apply(q);
                if p <= self.dims[i - 1] {
                    connections.push((i, p, q));
                }
            }
        }
        LaceDiagram::new(&self.dims, &connections).expect("valid by construction")
    }

    /// Total crossing count of the extended diagram.
    pub fn diagram_length(&self) -> usize {
        self.perms.iter().map(Permutation::length).sum()
    }

    pub fn rank_conditions(&self) -> RankConditions {
        let n = self.dims.len() - 1;
        let mut entries = Vec::new();
        for i in 0..n {
            for j in (i + 1)..=n {
                let count = self
                    .strands()
                    .iter()
                    .filter(|s| s.first().unwrap().0 <= i && s.last().unwrap().0 >= j)
                    .count();
                entries.push((i, j, count));
            }
        }
        RankConditions::new(&self.dims, &entries).expect("indices in range")
    }

    pub fn is_minimal(&self) -> bool {
        let r = self.rank_conditions();
        let codim = r.codim().expect("ranks of an actual diagram are realizable");
        self.diagram_length() == codim
    }

    /// Maximal chains of connected dots as (column, dot) lists, ordered by
    /// first occurrence when scanning columns left to right, top to bottom.
    pub fn strands(&self) -> Vec<Vec<(usize, usize)>> {
        let n = self.dims.len() - 1;
        let inverses: Vec<Permutation> =
            self.perms.iter().map(Permutation::inverse).collect();
        let mut out = Vec::new();
        for k in 0..=n {
            for t in 1..=self.dims[k] {
                let starts = k == 0 || self.perms[k - 1].apply(t) > self.dims[k - 1];
                if !starts {
                    continue;
                }
                let mut strand = vec![(k, t)];
                let (mut col, mut dot) = (k, t);
                while col < n {
                    let q = inverses[col].apply(dot);
                    if q > self.dims[col + 1] {
                        break;
                    }
                    strand.push((col + 1, q));
                    col += 1;
                    dot = q;
                }
                out.push(strand);
            }
        }
        out
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MoveDirection {
    /// Transfer a crossing from pair (i, i+1) to pair (i-1, i).
    Leftward,
    /// Transfer a crossing from pair (i-1, i) to pair (i, i+1).
    Rightward,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum KMoveVariant {
    /// (u_i s_j, u_{i+1}) over the ascending base (u_i, u_{i+1}).
    Prime,
    /// (u_i, s_j u_{i+1}).
    DoublePrime,
    /// (u_i s_j, s_j u_{i+1}), one crossing longer than the other forms.
    TriplePrime,
}

fn check_site(seq: &PermSeq, i: usize, j: usize) -> Result<()> {
    let n = seq.dims.len() - 1;
    if i == 0 || i + 1 > n {
        return Err(Error::InvalidArgument(format!(
            "move column {i} outside the interior range 1..={}",
            n.saturating_sub(1)
        )));
    }
    if j == 0 || j >= seq.dims[i] {
        return Err(Error::InvalidArgument(format!(
            "move row {j} outside 1..{} for column {i}",
            seq.dims[i]
        )));
    }
    Ok(())
}

/// Length-preserving move at dots j, j+1 of column i: requires the moved
/// side descending and the partner side ascending, then swaps the two dots
/// in both adjacent permutations. None when the pattern or the resulting
/// diagram's validity fails.
pub fn apply_move_perms(
    seq: &PermSeq,
    i: usize,
    j: usize,
    direction: MoveDirection,
) -> Result<Option<PermSeq>> {
    check_site(seq, i, j)?;
    let left = &seq.perms[i - 1];
    let right = &seq.perms[i];
    let left_desc = left.descent_at(j);
    let right_desc = right.inverse().descent_at(j);
    let pattern = match direction {
        MoveDirection::Rightward => left_desc && !right_desc,
        MoveDirection::Leftward => !left_desc && right_desc,
    };
    if !pattern {
        return Ok(None);
    }
    let s = Permutation::adjacent_transposition(j);
    build_moved(seq, i, left.multiply(&s), s.multiply(right))
}

/// K-theoretic move: classifies the site against the common ascending base
/// and rebuilds the requested variant. None at a base site, when the
/// request equals the current form, or when the result is invalid.
pub fn apply_kmove_perms(
    seq: &PermSeq,
    i: usize,
    j: usize,
    variant: KMoveVariant,
) -> Result<Option<PermSeq>> {
    check_site(seq, i, j)?;
    let left = &seq.perms[i - 1];
    let right = &seq.perms[i];
    let left_desc = left.descent_at(j);
    let right_desc = right.inverse().descent_at(j);
    if !left_desc && !right_desc {
        return Ok(None);
    }
    let s = Permutation::adjacent_transposition(j);
    let base_left = if left_desc { left.multiply(&s) } else { left.clone() };
    let base_right = if right_desc { s.multiply(right) } else { right.clone() };
    let (new_left, new_right) = match variant {
        KMoveVariant::Prime => (base_left.multiply(&s), base_right),
        KMoveVariant::DoublePrime => (base_left, s.multiply(&base_right)),
        KMoveVariant::TriplePrime => (base_left.multiply(&s), s.multiply(&base_right)),
    };
    if new_left == *left && new_right == *right {
        return Ok(None);
    }
    build_moved(seq, i, new_left, new_right)
}

fn build_moved(
    seq: &PermSeq,
    i: usize,
    new_left: Permutation,
    new_right: Permutation,
) -> Result<Option<PermSeq>> {
    if !new_left.is_partial_perm(seq.dims[i - 1], seq.dims[i])
        || !new_right.is_partial_perm(seq.dims[i], seq.dims[i + 1])
    {
        return Ok(None);
    }
    let mut perms = seq.perms.clone();
    perms[i - 1] = new_left;
    perms[i] = new_right;
    Ok(Some(PermSeq { dims: seq.dims.clone(), perms }))
}

pub fn apply_move(
    d: &LaceDiagram,
    i: usize,
    j: usize,
    direction: MoveDirection,
) -> Result<Option<LaceDiagram>> {
    Ok(apply_move_perms(&d.to_perms(), i, j, direction)?.map(|s| s.to_lace()))
}

pub fn apply_kmove(
    d: &LaceDiagram,
    i: usize,
    j: usize,
    variant: KMoveVariant,
) -> Result<Option<LaceDiagram>> {
    Ok(apply_kmove_perms(&d.to_perms(), i, j, variant)?.map(|s| s.to_lace()))
}

/// The left-most diagram of an orbit: for i = 0..n and j = n down to i,
/// append the m_ij strands spanning columns i..j to the bottom.
pub fn leftmost(r: &RankConditions) -> Result<LaceDiagram> {
    Ok(leftmost_perms(r)?.to_lace())
}

pub fn leftmost_perms(r: &RankConditions) -> Result<PermSeq> {
    r.require_realizable()?;
    let n = r.dims().len() - 1;
    let mut next_dot = vec![0usize; n + 1];
    let mut connections = Vec::new();
    for i in 0..=n {
        for j in (i..=n).rev() {
            for _ in 0..r.multiplicity(i, j) {
                for k in i..=j {
                    next_dot[k] += 1;
                }
                for k in (i + 1)..=j {
                    connections.push((k, next_dot[k - 1], next_dot[k]));
                }
            }
        }
    }
    debug_assert_eq!(next_dot, r.dims(), "interval multiplicities cover every column");
    Ok(LaceDiagram::new(r.dims(), &connections)?.to_perms())
}

fn close_under<F>(root: PermSeq, expand: F) -> Vec<LaceDiagram>
where
    F: Fn(&PermSeq, &mut Vec<PermSeq>),
{
    let mut visited: BTreeSet<PermSeq> = BTreeSet::new();
    let mut queue = VecDeque::new();
    visited.insert(root.clone());
    queue.push_back(root);
    let mut found = Vec::new();
    while let Some(seq) = queue.pop_front() {
        found.clear();
        expand(&seq, &mut found);
        for next in found.drain(..) {
            if visited.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    visited.into_iter().map(|s| s.to_lace()).collect()
}

/// All minimal diagrams of the orbit: BFS closure of the left-most diagram
/// under the length-preserving moves.
pub fn enumerate_minimal(r: &RankConditions) -> Result<Vec<LaceDiagram>> {
    let root = leftmost_perms(r)?;
    let n = root.dims().len() - 1;
    let dims = root.dims().to_vec();
    Ok(close_under(root, move |seq, out| {
        for i in 1..n {
            for j in 1..dims[i] {
                for dir in [MoveDirection::Leftward, MoveDirection::Rightward] {
                    if let Some(next) =
                        apply_move_perms(seq, i, j, dir).expect("site ranges checked")
                    {
                        out.push(next);
                    }
                }
            }
        }
    }))
}

/// All KMS-factorizations of the orbit: BFS closure of the left-most
/// diagram under the k-moves in every variant. Termination is guaranteed
/// because each w_i stays inside S_{e_{i-1}+e_i}.
pub fn enumerate_kms(r: &RankConditions) -> Result<Vec<LaceDiagram>> {
    let root = leftmost_perms(r)?;
    let n = root.dims().len() - 1;
    let dims = root.dims().to_vec();
    Ok(close_under(root, move |seq, out| {
        for i in 1..n {
            for j in 1..dims[i] {
                for variant in
                    [KMoveVariant::Prime, KMoveVariant::DoublePrime, KMoveVariant::TriplePrime]
                {
                    if let Some(next) =
                        apply_kmove_perms(seq, i, j, variant).expect("site ranges checked")
                    {
                        out.push(next);
                    }
                }
            }
        }
    }))
}

/// Every realizable rank-condition array for the dims, enumerated through
/// non-negative strand multiplicities with column sums e_k.
pub fn all_orbits(dims: &[usize]) -> Vec<RankConditions> {
    assert!(!dims.is_empty(), "dimension vector is empty");
    let n = dims.len() - 1;
    let intervals: Vec<(usize, usize)> =
        (0..=n).flat_map(|i| (i..=n).map(move |j| (i, j))).collect();
    let mut capacity = dims.to_vec();
    let mut multiplicity = vec![0usize; intervals.len()];
    let mut out = Vec::new();
    fn recurse(
        idx: usize,
        intervals: &[(usize, usize)],
        capacity: &mut Vec<usize>,
        multiplicity: &mut Vec<usize>,
        out: &mut Vec<RankConditions>,
        dims: &[usize],
    ) {
        if idx == intervals.len() {
            debug_assert!(capacity.iter().all(|&c| c == 0));
            let n = dims.len() - 1;
            let mut entries = Vec::new();
            for i in 0..n {
                for j in (i + 1)..=n {
                    let r: usize = intervals
                        .iter()
                        .zip(multiplicity.iter())
                        .filter(|(&(a, b), _)| a <= i && b >= j)
                        .map(|(_, &m)| m)
                        .sum();
                    entries.push((i, j, r));
                }
            }
            out.push(RankConditions::new(dims, &entries).expect("indices in range"));
            return;
        }
        let (i, j) = intervals[idx];
        let max = (i..=j).map(|k| capacity[k]).min().unwrap();
        // The last interval through column i in this order is (i, n):
        // it must absorb the column's remaining capacity exactly.
        let choices: Vec<usize> = if j == dims.len() - 1 {
            if capacity[i] <= max { vec![capacity[i]] } else { vec![] }
        } else {
            (0..=max).collect()
        };
        for v in choices {
            for k in i..=j {
                capacity[k] -= v;
            }
            multiplicity[idx] = v;
            recurse(idx + 1, intervals, capacity, multiplicity, out, dims);
            for k in i..=j {
                capacity[k] += v;
            }
        }
        multiplicity[idx] = 0;
    }
    recurse(0, &intervals, &mut capacity, &mut multiplicity, &mut out, dims);
    out.sort();
    out
}

/// Every valid lace diagram for the dims, of any rank conditions.
pub fn all_diagrams(dims: &[usize]) -> Vec<LaceDiagram> {
    assert!(!dims.is_empty(), "dimension vector is empty");
    let n = dims.len() - 1;
    let choices: Vec<Vec<Permutation>> = (1..=n)
        .map(|i| {
            Permutation::symmetric_group(dims[i - 1] + dims[i])
                .into_iter()
                .filter(|w| w.is_partial_perm(dims[i - 1], dims[i]))
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut current: Vec<Permutation> = Vec::with_capacity(n);
    fn product(
        choices: &[Vec<Permutation>],
        current: &mut Vec<Permutation>,
        dims: &[usize],
        out: &mut Vec<LaceDiagram>,
    ) {
        if current.len() == choices.len() {
            let seq = PermSeq::new(dims, current.clone()).expect("filtered to valid");
            out.push(seq.to_lace());
            return;
        }
        for w in &choices[current.len()] {
            current.push(w.clone());
            product(choices, current, dims, out);
            current.pop();
        }
    }
    product(&choices, &mut current, dims, &mut out);
    out
}

pub fn closure_leq(s: &RankConditions, r: &RankConditions) -> Result<bool> {
    s.closure_leq(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rc(dims: &[usize], entries: &[(usize, usize, usize)]) -> RankConditions {
        RankConditions::new(dims, entries).unwrap()
    }

    fn p(values: &[usize]) -> Permutation {
        Permutation::from_one_line(values).unwrap()
    }

    fn seq(dims: &[usize], perms: &[&[usize]]) -> PermSeq {
        PermSeq::new(dims, perms.iter().map(|w| p(w)).collect()).unwrap()
    }

    #[test]
    fn rank_accessor_conventions() {
        let r = rc(&[1, 2, 1], &[(0, 1, 1), (1, 2, 1)]);
        assert_eq!(r.rank(0, 0), 1);
        assert_eq!(r.rank(1, 1), 2);
        assert_eq!(r.rank(0, 1), 1);
        assert_eq!(r.rank(0, 2), 0);
        assert_eq!(r.rank(-1, 0), 0);
        assert_eq!(r.rank(1, 3), 0);
        assert_eq!(r.rank(2, 1), 0);
        assert!(RankConditions::new(&[1, 1], &[(1, 1, 0)]).is_err());
        assert!(RankConditions::new(&[1, 1], &[(0, 1, 0), (0, 1, 1)]).is_err());
    }

    #[test]
    fn codim_examples() {
        assert_eq!(rc(&[1, 1], &[(0, 1, 1)]).codim().unwrap(), 0);
        assert_eq!(rc(&[1, 1], &[]).codim().unwrap(), 1);
        assert_eq!(rc(&[1, 1, 1], &[]).codim().unwrap(), 2);
        // Orbit of (2,2,1) with r_01 = r_12 = 1, r_02 = 0.
        assert_eq!(rc(&[2, 2, 1], &[(0, 1, 1), (1, 2, 1)]).codim().unwrap(), 2);
        assert!(matches!(
            rc(&[1, 1], &[(0, 1, 2)]).codim(),
            Err(Error::Unrealizable(_))
        ));
    }

    #[test]
    fn realizability_is_multiplicity_nonnegativity() {
        let good = rc(&[1, 2, 1], &[(0, 1, 1), (1, 2, 1)]);
        assert!(good.is_realizable());
        assert_eq!(good.multiplicity(0, 1), 1);
        assert_eq!(good.multiplicity(1, 2), 1);
        assert_eq!(good.multiplicity(0, 2), 0);
        assert_eq!(good.multiplicity(1, 1), 0);
        // r_02 = 1 forces a full strand but r_12 = 0 contradicts it.
        let bad = rc(&[1, 1, 1], &[(0, 2, 1), (0, 1, 1)]);
        assert!(!bad.is_realizable());
    }

    #[test]
    fn lace_diagram_validation() {
        assert!(LaceDiagram::new(&[1, 1], &[(1, 1, 1)]).is_ok());
        assert!(LaceDiagram::new(&[1, 1], &[(2, 1, 1)]).is_err());
        assert!(LaceDiagram::new(&[1, 1], &[(1, 2, 1)]).is_err());
        assert!(LaceDiagram::new(&[2, 2], &[(1, 1, 1), (1, 1, 2)]).is_err());
        assert!(LaceDiagram::new(&[2, 2], &[(1, 1, 1), (1, 2, 1)]).is_err());
    }

    #[test]
    fn rank_conditions_of_diagrams() {
        let empty = LaceDiagram::new(&[1, 1], &[]).unwrap();
        assert_eq!(empty.rank_conditions(), rc(&[1, 1], &[]));
        let full = LaceDiagram::new(&[1, 1], &[(1, 1, 1)]).unwrap();
        assert_eq!(full.rank_conditions(), rc(&[1, 1], &[(0, 1, 1)]));
    }

    #[test]
    fn five_column_reference_diagram() {
        // Two strands from column 0 reach column 2, one goes on to column 3.
        let d = LaceDiagram::new(
            &[3, 4, 3, 3, 2],
            &[(1, 1, 1), (1, 2, 3), (2, 3, 1), (2, 1, 2), (3, 2, 1)],
        )
        .unwrap();
        let r = d.rank_conditions();
        assert_eq!(r.rank(0, 1), 2);
        assert_eq!(r.rank(0, 2), 2);
        assert_eq!(r.rank(0, 3), 1);
        assert_eq!(r.rank(0, 4), 0);
        let perms = d.to_perms();
        assert_eq!(perms.perm(2), &p(&[3, 1, 5, 2, 4]));
    }

    #[test]
    fn perm_encoding_examples() {
        let empty = LaceDiagram::new(&[1, 1], &[]).unwrap();
        assert_eq!(empty.to_perms().perm(1), &p(&[2, 1]));
        let full = LaceDiagram::new(&[1, 1], &[(1, 1, 1)]).unwrap();
        assert!(full.to_perms().perm(1).is_identity());
        assert!(PermSeq::new(&[1, 1], vec![p(&[3, 2, 1])]).is_err());
    }

    #[test]
    fn perm_lace_round_trip() {
        for dims in [vec![1, 1], vec![2, 1], vec![2, 2], vec![1, 2, 1]] {
            for d in all_diagrams(&dims) {
                let seq = d.to_perms();
                assert_eq!(LaceDiagram::from_perms(&seq), d);
                assert_eq!(seq.to_lace().to_perms(), seq);
            }
        }
    }

    #[test]
    fn diagram_counts_are_partial_permutation_products() {
        assert_eq!(all_diagrams(&[1, 1]).len(), 2);
        assert_eq!(all_diagrams(&[1, 2, 1]).len(), 9);
        assert_eq!(all_diagrams(&[2, 2]).len(), 7);
    }

    #[test]
    fn extension_examples() {
        let full = LaceDiagram::new(&[1, 1], &[(1, 1, 1)]).unwrap();
        assert_eq!(full.extend(), full);
        let empty = LaceDiagram::new(&[1, 1], &[]).unwrap();
        let ext = empty.extend();
        assert_eq!(ext.dims(), &[2, 2]);
        assert_eq!(ext.connections(), &[(1, 1, 2), (1, 2, 1)]);
        let bare = LaceDiagram::new(&[2, 1], &[]).unwrap();
        assert_eq!(bare.extend().dims(), &[3, 3]);
        // Extending is idempotent: a total diagram stays put.
        assert_eq!(ext.extend(), ext);
    }

    /// Counts crossings of a total diagram geometrically: two segments of
    /// one pair cross when their endpoints interleave in opposite orders.
    fn extended_crossings(d: &LaceDiagram) -> usize {
        let ext = d.extend();
        let mut count = 0;
        for (a_idx, &(i, p, q)) in ext.connections().iter().enumerate() {
            for &(i2, p2, q2) in &ext.connections()[a_idx + 1..] {
                if i2 == i && (p < p2) != (q < q2) {
                    count += 1;
                }
            }
        }
        count
    }

    #[test]
    fn diagram_length_matches_geometric_crossings() {
        for dims in [vec![1, 1], vec![2, 1], vec![2, 2], vec![1, 2, 1], vec![1, 1, 1]] {
            for d in all_diagrams(&dims) {
                assert_eq!(
                    d.diagram_length(),
                    extended_crossings(&d),
                    "diagram {:?}",
                    d.connections()
                );
            }
        }
    }

    #[test]
    fn length_thresholds_codim_with_equality_at_minimal() {
        for dims in [vec![1, 1], vec![2, 1], vec![2, 2], vec![1, 2, 1], vec![1, 1, 1]] {
            for d in all_diagrams(&dims) {
                let codim = d.rank_conditions().codim().unwrap();
                assert!(d.diagram_length() >= codim);
                assert_eq!(d.is_minimal(), d.diagram_length() == codim);
            }
        }
    }

    /// Geometric minimality: pairwise strand crossings in the extension,
    /// computed by order swaps between adjacent columns of extended spans.
    fn geometric_minimal(d: &LaceDiagram) -> bool {
        let ext_seq = d.extend().to_perms();
        let ext_strands = ext_seq.strands();
        let real_strands = d.to_perms().strands();
        // Original dots keep their coordinates in the extension, so an
        // extended strand is identified by its first real dot.
        let canonical: Vec<(Vec<(usize, usize)>, Option<(usize, usize)>)> = ext_strands
            .iter()
            .map(|s| {
                let real_span = real_strands
                    .iter()
                    .find(|rs| rs.iter().any(|dot| s.contains(dot)))
                    .map(|rs| (rs.first().unwrap().0, rs.last().unwrap().0));
                (s.clone(), real_span)
            })
            .collect();
        for (a_idx, (sa, span_a)) in canonical.iter().enumerate() {
            for (sb, span_b) in &canonical[a_idx + 1..] {
                let mut crossings = 0;
                for (col_a, dot_a) in sa {
                    for (col_b, dot_b) in sb {
                        if col_a == col_b {
                            // Compare with the next shared column if both continue.
                            let next_a = sa.iter().find(|(c, _)| *c == col_a + 1);
                            let next_b = sb.iter().find(|(c, _)| *c == col_a + 1);
                            if let (Some((_, na)), Some((_, nb))) = (next_a, next_b) {
                                if (dot_a < dot_b) != (na < nb) {
                                    crossings += 1;
                                }
                            }
                        }
                    }
                }
                if crossings > 1 {
                    return false;
                }
                if crossings > 0 {
                    if let (Some((a0, a1)), Some((b0, b1))) = (span_a, span_b) {
                        if a0 == b0 || a1 == b1 {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    #[test]
    fn minimality_matches_geometric_criterion() {
        for dims in [vec![1, 1], vec![2, 1], vec![2, 2], vec![1, 2, 1], vec![1, 1, 1]] {
            for d in all_diagrams(&dims) {
                assert_eq!(
                    d.is_minimal(),
                    geometric_minimal(&d),
                    "diagram {:?}",
                    d.connections()
                );
            }
        }
    }

    #[test]
    fn leftmost_examples() {
        let full = leftmost(&rc(&[1, 1], &[(0, 1, 1)])).unwrap();
        assert_eq!(full.connections(), &[(1, 1, 1)]);
        let sep = leftmost(&rc(&[1, 1], &[])).unwrap();
        assert!(sep.connections().is_empty());
        let half = leftmost(&rc(&[2, 2], &[(0, 1, 1)])).unwrap();
        assert_eq!(half.connections(), &[(1, 1, 1)]);
        assert_eq!(half.to_perms().perm(1), &p(&[1, 3, 2]));
        // Orbit of codimension 2 for dims (2,2,1).
        let reference = leftmost(&rc(&[2, 2, 1], &[(0, 1, 1), (1, 2, 1)])).unwrap();
        let perms = reference.to_perms();
        assert_eq!(perms.perm(1), &p(&[1, 3, 2]));
        assert_eq!(perms.perm(2), &p(&[2, 1]));
        // Smaller positive-codimension orbit of dims (1,2,1).
        let b = leftmost(&rc(&[1, 2, 1], &[(0, 1, 1), (1, 2, 1)])).unwrap();
        let perms = b.to_perms();
        assert!(perms.perm(1).is_identity());
        assert_eq!(perms.perm(2), &p(&[2, 1]));
        // Dense orbit of dims (1,2,1): one long strand plus one isolated dot.
        let dense = leftmost(&rc(&[1, 2, 1], &[(0, 1, 1), (1, 2, 1), (0, 2, 1)])).unwrap();
        let perms = dense.to_perms();
        assert!(perms.perm(1).is_identity());
        assert!(perms.perm(2).is_identity());
        assert!(matches!(leftmost(&rc(&[1, 1], &[(0, 1, 2)])), Err(Error::Unrealizable(_))));
    }

    #[test]
    fn leftmost_is_minimal_and_rightward_fixed() {
        for dims in [vec![1, 1], vec![2, 2], vec![1, 2, 1], vec![2, 2, 1], vec![1, 1, 1]] {
            for r in all_orbits(&dims) {
                let lm = leftmost_perms(&r).unwrap();
                assert!(lm.is_minimal());
                assert_eq!(lm.rank_conditions(), r);
                let n = dims.len() - 1;
                for i in 1..n {
                    for j in 1..dims[i] {
                        assert_eq!(
                            apply_move_perms(&lm, i, j, MoveDirection::Rightward).unwrap(),
                            None,
                            "rightward move applied to leftmost of {r:?} at ({i},{j})"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn move_examples() {
        // Both sides ascending: no move in either direction.
        let dense = seq(&[1, 2, 1], &[&[1], &[1]]);
        assert_eq!(apply_move_perms(&dense, 1, 1, MoveDirection::Leftward).unwrap(), None);
        assert_eq!(apply_move_perms(&dense, 1, 1, MoveDirection::Rightward).unwrap(), None);
        // Crossing in pair 2 transfers to pair 1 and back.
        let x = seq(&[1, 2, 1], &[&[1], &[2, 1]]);
        let y = apply_move_perms(&x, 1, 1, MoveDirection::Leftward).unwrap().unwrap();
        assert_eq!(y, seq(&[1, 2, 1], &[&[2, 1], &[1]]));
        assert_eq!(apply_move_perms(&y, 1, 1, MoveDirection::Rightward).unwrap().unwrap(), x);
        assert_eq!(apply_move_perms(&x, 1, 1, MoveDirection::Rightward).unwrap(), None);
        // Out-of-range sites are errors, not silent no-ops.
        assert!(apply_move_perms(&x, 2, 1, MoveDirection::Leftward).is_err());
        assert!(apply_move_perms(&x, 0, 1, MoveDirection::Leftward).is_err());
        assert!(apply_move_perms(&x, 1, 2, MoveDirection::Leftward).is_err());
    }

    #[test]
    fn moves_preserve_ranks_and_length() {
        for dims in [vec![1, 2, 1], vec![2, 2, 1], vec![2, 1, 2], vec![1, 1, 1]] {
            for d in all_diagrams(&dims) {
                let s = d.to_perms();
                let n = dims.len() - 1;
                for i in 1..n {
                    for j in 1..dims[i] {
                        for dir in [MoveDirection::Leftward, MoveDirection::Rightward] {
                            if let Some(moved) = apply_move_perms(&s, i, j, dir).unwrap() {
                                assert_eq!(moved.rank_conditions(), s.rank_conditions());
                                assert_eq!(moved.diagram_length(), s.diagram_length());
                                // The opposite move undoes it.
                                let back = match dir {
                                    MoveDirection::Leftward => MoveDirection::Rightward,
                                    MoveDirection::Rightward => MoveDirection::Leftward,
                                };
                                assert_eq!(
                                    apply_move_perms(&moved, i, j, back).unwrap().unwrap(),
                                    s
                                );
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn minimal_enumeration_matches_exhaustive_filter() {
        for dims in [vec![1, 1], vec![2, 1], vec![2, 2], vec![1, 2, 1], vec![2, 2, 1]] {
            let diagrams = all_diagrams(&dims);
            for r in all_orbits(&dims) {
                let closure = enumerate_minimal(&r).unwrap();
                let exhaustive: Vec<LaceDiagram> = diagrams
                    .iter()
                    .filter(|d| d.rank_conditions() == r && d.is_minimal())
                    .cloned()
                    .collect();
                assert_eq!(closure, exhaustive, "orbit {r:?}");
            }
        }
    }

    #[test]
    fn minimal_enumeration_counts() {
        assert_eq!(enumerate_minimal(&rc(&[1, 1], &[])).unwrap().len(), 1);
        assert_eq!(enumerate_minimal(&rc(&[1, 1, 1], &[])).unwrap().len(), 1);
        // Two minimal diagrams for the codimension-1 orbit of dims (1,2,1).
        let b = rc(&[1, 2, 1], &[(0, 1, 1), (1, 2, 1)]);
        assert_eq!(enumerate_minimal(&b).unwrap().len(), 2);
        // And for the codimension-2 orbit of dims (2,2,1).
        let reference = rc(&[2, 2, 1], &[(0, 1, 1), (1, 2, 1)]);
        assert_eq!(enumerate_minimal(&reference).unwrap().len(), 2);
    }

    #[test]
    fn kmove_examples() {
        let x = seq(&[1, 2, 1], &[&[1], &[2, 1]]);
        // x is the double-prime form over base (id, id): requesting it back
        // is a no-op, the other variants produce the two partners.
        assert_eq!(apply_kmove_perms(&x, 1, 1, KMoveVariant::DoublePrime).unwrap(), None);
        let y = apply_kmove_perms(&x, 1, 1, KMoveVariant::Prime).unwrap().unwrap();
        assert_eq!(y, seq(&[1, 2, 1], &[&[2, 1], &[1]]));
        let z = apply_kmove_perms(&x, 1, 1, KMoveVariant::TriplePrime).unwrap().unwrap();
        assert_eq!(z, seq(&[1, 2, 1], &[&[2, 1], &[2, 1]]));
        assert_eq!(z.diagram_length(), x.diagram_length() + 1);
        // Prime -> double-prime -> prime is the identity.
        let back = apply_kmove_perms(&y, 1, 1, KMoveVariant::DoublePrime).unwrap().unwrap();
        assert_eq!(back, x);
        // A base site admits no k-move at all.
        let dense = seq(&[1, 2, 1], &[&[1], &[1]]);
        for v in [KMoveVariant::Prime, KMoveVariant::DoublePrime, KMoveVariant::TriplePrime] {
            assert_eq!(apply_kmove_perms(&dense, 1, 1, v).unwrap(), None);
        }
    }

    #[test]
    fn kms_enumeration() {
        // No interior sites: the KMS set is the minimal set.
        for r in all_orbits(&[1, 1]) {
            assert_eq!(enumerate_kms(&r).unwrap(), enumerate_minimal(&r).unwrap());
        }
        for r in all_orbits(&[1, 1, 1]) {
            assert_eq!(enumerate_kms(&r).unwrap(), enumerate_minimal(&r).unwrap());
        }
        // The codimension-1 orbit of dims (1,2,1) gains exactly one
        // length-2 member on top of its two minimal diagrams.
        let b = rc(&[1, 2, 1], &[(0, 1, 1), (1, 2, 1)]);
        let kms = enumerate_kms(&b).unwrap();
        assert_eq!(kms.len(), 3);
        let dense = rc(&[1, 2, 1], &[(0, 1, 1), (1, 2, 1), (0, 2, 1)]);
        assert_eq!(enumerate_kms(&dense).unwrap().len(), 1);
    }

    #[test]
    fn kms_contains_minimal_as_its_shortest_stratum() {
        for dims in [vec![1, 1], vec![1, 2, 1], vec![2, 2], vec![1, 1, 1], vec![2, 2, 1]] {
            for r in all_orbits(&dims) {
                let minimal = enumerate_minimal(&r).unwrap();
                let kms = enumerate_kms(&r).unwrap();
                let d = r.codim().unwrap();
                let shortest: Vec<LaceDiagram> = kms
                    .iter()
                    .filter(|w| w.diagram_length() == d)
                    .cloned()
                    .collect();
                assert_eq!(shortest, minimal, "orbit {r:?}");
                for m in &minimal {
                    assert!(kms.contains(m));
                }
            }
        }
    }

    #[test]
    fn orbit_counts() {
        assert_eq!(all_orbits(&[1, 1]).len(), 2);
        assert_eq!(all_orbits(&[2, 1]).len(), 2);
        // For an all-ones vector of m columns the orbits are the interval
        // partitions of a path: 2^(m-1) of them.
        assert_eq!(all_orbits(&[1, 1, 1]).len(), 4);
        assert_eq!(all_orbits(&[1, 2, 1]).len(), 5);
        assert_eq!(all_orbits(&[2, 2, 2]).len(), 10);
        assert_eq!(all_orbits(&[1, 1, 1, 1, 1, 1]).len(), 32);
    }

    #[test]
    fn orbits_are_realizable_and_distinct() {
        for dims in [vec![2, 2], vec![1, 2, 1], vec![2, 2, 1]] {
            let orbits = all_orbits(&dims);
            for r in &orbits {
                assert!(r.is_realizable());
            }
            let set: BTreeSet<_> = orbits.iter().cloned().collect();
            assert_eq!(set.len(), orbits.len());
        }
    }

    #[test]
    fn closure_comparisons() {
        let zero = rc(&[1, 1], &[]);
        let one = rc(&[1, 1], &[(0, 1, 1)]);
        assert!(zero.closure_leq(&zero).unwrap());
        assert!(zero.closure_leq(&one).unwrap());
        assert!(!one.closure_leq(&zero).unwrap());
        assert!(one.closure_leq(&rc(&[2, 1], &[])).is_err());
    }

    #[test]
    fn add_strands_basics() {
        let zero = rc(&[1, 1], &[]);
        assert_eq!(zero.add_strands(0), zero);
        let bumped = zero.add_strands(1);
        assert_eq!(bumped, rc(&[2, 2], &[(0, 1, 1)]));
        // Left-most diagrams correspond under shifting each permutation.
        for dims in [vec![1, 1], vec![1, 1, 1], vec![1, 2, 1]] {
            for r in all_orbits(&dims) {
                for k in 1..=2 {
                    let lifted = leftmost_perms(&r.add_strands(k)).unwrap();
                    let base = leftmost_perms(&r).unwrap();
                    let shifted: Vec<Permutation> =
                        base.perms().iter().map(|w| w.shift(k)).collect();
                    assert_eq!(lifted.perms(), &shifted[..], "orbit {r:?} k={k}");
                }
            }
        }
        // Whole minimal sets correspond as well.
        let r = rc(&[1, 1], &[]);
        let shifted: BTreeSet<Vec<Permutation>> = enumerate_minimal(&r)
            .unwrap()
            .iter()
            .map(|d| d.to_perms().perms().iter().map(|w| w.shift(1)).collect())
            .collect();
        let lifted: BTreeSet<Vec<Permutation>> = enumerate_minimal(&r.add_strands(1))
            .unwrap()
            .iter()
            .map(|d| d.to_perms().perms().to_vec())
            .collect();
        assert_eq!(lifted, shifted);
    }

    #[test]
    fn strand_scan_order() {
        // Left-most diagram of the (2,2,1) codimension-2 orbit: strands in
        // scan order are (0,1)-(1,1), the isolated (0,2), and (1,2)-(2,1).
        let d = leftmost(&rc(&[2, 2, 1], &[(0, 1, 1), (1, 2, 1)])).unwrap();
        let strands = d.to_perms().strands();
        assert_eq!(
            strands,
            vec![
                vec![(0, 1), (1, 1)],
                vec![(0, 2)],
                vec![(1, 2), (2, 1)],
            ]
        );
    }

    #[test]
    fn json_round_trips() {
        let r = rc(&[2, 2, 1], &[(0, 1, 1), (1, 2, 1)]);
        let parsed = RankConditions::from_json(&r.to_json()).unwrap();
        assert_eq!(parsed, r);
        // Missing entries default to zero.
        let sparse =
            RankConditions::from_json(&serde_json::json!({"dims": [1, 1, 1]})).unwrap();
        assert_eq!(sparse, rc(&[1, 1, 1], &[]));
        let d = leftmost(&r).unwrap();
        let parsed = LaceDiagram::from_json(&d.to_json()).unwrap();
        assert_eq!(parsed, d);
        assert!(RankConditions::from_json(&serde_json::json!([1, 2])).is_err());
        assert!(LaceDiagram::from_json(&serde_json::json!({"dims": [1], "connections": [[1, 1]]}))
            .is_err());
    }
}
