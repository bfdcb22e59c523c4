//! Orbit classes assembled from diagram data: the component formula and
//! its K-theoretic refinement, restriction maps to strand variables, the
//! Euler class of an orbit, an independent linear-system solver for the
//! same class, and the extraction of non-negative expansion coefficients.

use std::collections::{BTreeMap, HashMap};

use num::rational::BigRational;
use num::{BigInt, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lace::{
    all_diagrams, all_orbits, enumerate_kms, enumerate_minimal, leftmost, LaceDiagram, PermSeq,
    RankConditions,
};
use crate::partition::{partitions_in_box, Partition};
use crate::perm::Permutation;
use crate::poly::{Monomial, Poly, Subst, Variable};
use crate::schubert::{eg_coefficients, grothendieck_normalized, schubert, substitute_blocks};
use crate::symmetric::super_schur;

/// The Chern-root alphabet of column i: x^i_1 .. x^i_len.
pub fn chern_block(block: usize, len: usize) -> Vec<Variable> {
    (1..=len).map(|j| Variable::chern(block, j)).collect()
}

/// Strand index (1-based, in scan order) for every dot of the diagram.
pub fn strand_labeling(d: &LaceDiagram) -> HashMap<(usize, usize), usize> {
    let mut labels = HashMap::new();
    for (idx, strand) in d.to_perms().strands().into_iter().enumerate() {
        for dot in strand {
            labels.insert(dot, idx + 1);
        }
    }
    labels
}

/// Restriction to an orbit point: substitutes each x^i_j by the strand
/// variable b of the strand through dot j of column i.
pub fn phi(f: &Poly, d: &LaceDiagram) -> Result<Poly> {
    let labels = strand_labeling(d);
    let dims = d.dims();
    let mut map = HashMap::new();
    for v in f.variables() {
        if let Variable::Chern { block, index } = v {
            if block >= dims.len() || index == 0 || index > dims[block] {
                return Err(Error::InvalidArgument(format!(
                    "variable {} outside the {:?} dot grid",
                    v.name(),
                    dims
                )));
            }
            let b = labels[&(block, index)];
            map.insert(v, Subst::Var(Variable::strand(b)));
        }
    }
    Ok(f.substitute(&map))
}

/// Euler class of the orbit from a minimal diagram: the product over
/// crossings of the extension of (b_steep - b_shallow), where the steeper
/// strand is the one entering the upper dot of the crossed pair.
pub fn euler_class(d: &LaceDiagram) -> Result<Poly> {
    if !d.is_minimal() {
        return Err(Error::InvalidArgument(
            "euler class requires a minimal diagram".to_string(),
        ));
    }
    let labels = strand_labeling(d);
    let seq = d.to_perms();
    let dims = d.dims();
    let n = dims.len() - 1;
    // A segment (p, q) of the pair (i-1, i) belongs to the strand of its
    // original endpoint: dot q of column i when q is real, otherwise dot p
    // of column i-1 (a segment never has two extension endpoints).
    let segment_strand = |i: usize, q: usize, p: usize| -> usize {
        if q <= dims[i] {
            labels[&(i, q)]
        } else {
            labels[&(i - 1, p)]
        }
    };
    let mut product = Poly::one();
    for i in 1..=n {
        let w = seq.perm(i);
        let span = dims[i] + dims[i - 1];
        for q in 1..=span {
            for q2 in (q + 1)..=span {
                let (p, p2) = (w.apply(q), w.apply(q2));
                if p > p2 {
                    let upper = segment_strand(i, q, p);
                    let lower = segment_strand(i, q2, p2);
                    product = &product
                        * &(&Poly::var(Variable::strand(upper))
                            - &Poly::var(Variable::strand(lower)));
                }
            }
        }
    }
    Ok(product)
}

/// The cohomology class of the orbit closure: the sum over minimal
/// diagrams of products of double Schubert polynomials of the pairs.
pub fn component_polynomial(r: &RankConditions) -> Result<Poly> {
    let minimal = enumerate_minimal(r)?;
    let dims = r.dims();
    let n = dims.len() - 1;
    let mut total = Poly::zero();
    for d in &minimal {
        let seq = d.to_perms();
        let mut term = Poly::one();
        for i in 1..=n {
            let factor = schubert(
                seq.perm(i),
                &chern_block(i, dims[i]),
                &chern_block(i - 1, dims[i - 1]),
            )?;
            term = &term * &factor;
        }
        total += &term;
    }
    Ok(total)
}

#[derive(Clone, Debug)]
pub struct VerifyCheck {
    pub orbit: RankConditions,
    pub condition: &'static str,
    pub pass: bool,
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub pass: bool,
    pub checks: Vec<VerifyCheck>,
}

impl VerifyReport {
    pub fn to_json(&self) -> serde_json::Value {
        let checks: Vec<serde_json::Value> = self
            .checks
            .iter()
            .map(|c| {
                serde_json::json!({
                    "orbit": c.orbit.to_json(),
                    "condition": c.condition,
                    "status": if c.pass { "pass" } else { "fail" },
                })
            })
            .collect();
        serde_json::json!({
            "status": if self.pass { "pass" } else { "fail" },
            "checks": checks,
        })
    }
}

fn check_blockwise_symmetric(f: &Poly, dims: &[usize]) -> Result<()> {
    for (i, &e) in dims.iter().enumerate() {
        if !f.is_symmetric_in(&chern_block(i, e)) {
            return Err(Error::InvalidArgument(format!(
                "polynomial is not symmetric in the x^{i} block"
            )));
        }
    }
    Ok(())
}

/// Orbits of the same dims whose closure does not contain r must restrict
/// to zero; r itself must restrict to its Euler class.
pub fn verify_thom(f: &Poly, r: &RankConditions) -> Result<VerifyReport> {
    r.require_realizable()?;
    let dims = r.dims();
    check_blockwise_symmetric(f, dims)?;
    let small = dims.iter().sum::<usize>() <= 4;
    let orbits = all_orbits(dims);
    let results: Vec<Result<Option<VerifyCheck>>> = orbits
        .par_iter()
        .map(|s| {
            if *s == *r {
                let mut pass = true;
                for d in enumerate_minimal(r)? {
                    let restricted = phi(f, &d)?;
                    let euler = euler_class(&d)?;
                    let ok = restricted == euler;
                    if !small && d != leftmost(r)? {
                        continue;
                    }
                    if small {
                        pass = pass && ok;
                    } else if d == leftmost(r)? {
                        pass = ok;
                    }
                }
                return Ok(Some(VerifyCheck { orbit: s.clone(), condition: "ii", pass }));
            }
            if s.closure_leq(r)? {
                return Ok(None);
            }
            let value = phi(f, &leftmost(s)?)?;
            if small {
                // The restriction of a blockwise-symmetric polynomial must
                // not depend on which diagram of s realizes it.
                for d in all_diagrams(dims) {
                    if d.rank_conditions() == *s && phi(f, &d)? != value {
                        return Err(Error::Internal(format!(
                            "restriction differs between diagrams of {:?}",
                            s
                        )));
                    }
                }
            }
            Ok(Some(VerifyCheck { orbit: s.clone(), condition: "i", pass: value.is_zero() }))
        })
        .collect();
    let mut checks = Vec::new();
    for item in results {
        if let Some(check) = item? {
            checks.push(check);
        }
    }
    let pass = checks.iter().all(|c| c.pass);
    Ok(VerifyReport { pass, checks })
}

fn big(value: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(value))
}

/// Exact Gaussian elimination; errors signal a bug because the
/// restriction system is provably uniquely solvable.
fn solve_unique(mut rows: Vec<(Vec<BigRational>, BigRational)>, unknowns: usize) -> Result<Vec<BigRational>> {
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; unknowns];
    let mut pivot_rows: Vec<usize> = Vec::new();
    let mut used = vec![false; rows.len()];
    for col in 0..unknowns {
        let Some(pivot) = (0..rows.len())
            .find(|&i| !used[i] && !rows[i].0[col].is_zero()) else { continue };
        used[pivot] = true;
        pivot_of_col[col] = Some(pivot);
        pivot_rows.push(pivot);
        let scale = rows[pivot].0[col].clone();
        for x in rows[pivot].0.iter_mut() {
            *x /= scale.clone();
        }
        rows[pivot].1 /= scale.clone();
        for i in 0..rows.len() {
            if i != pivot && !rows[i].0[col].is_zero() {
                let factor = rows[i].0[col].clone();
                for c in 0..unknowns {
                    let delta = &factor * &rows[pivot].0[c];
                    rows[i].0[c] -= delta;
                }
                let delta = &factor * &rows[pivot].1;
                rows[i].1 -= delta;
            }
        }
    }
    if pivot_of_col.iter().any(Option::is_none) {
        return Err(Error::Internal(
            "restriction system is underdetermined on the chosen basis".to_string(),
        ));
    }
    for (i, row) in rows.iter().enumerate() {
        if !used[i] && !row.1.is_zero() {
            return Err(Error::Internal("restriction system is inconsistent".to_string()));
        }
    }
    Ok((0..unknowns)
        .map(|col| rows[pivot_of_col[col].unwrap()].1.clone())
        .collect())
}

fn basis_partition_seqs(dims: &[usize], degree: usize) -> Vec<Vec<Partition>> {
    let n = dims.len() - 1;
    let mut out = Vec::new();
    let mut current: Vec<Partition> = Vec::with_capacity(n);
    fn recurse(
        i: usize,
        remaining: usize,
        dims: &[usize],
        current: &mut Vec<Partition>,
        out: &mut Vec<Vec<Partition>>,
    ) {
        let n = dims.len() - 1;
        if i > n {
            if remaining == 0 {
                out.push(current.clone());
            }
            return;
        }
        for size in 0..=remaining {
            for lambda in partitions_in_box(size as u32, dims[i] as u32, dims[i - 1] as u32) {
                current.push(lambda);
                recurse(i + 1, remaining - size, dims, current, out);
                current.pop();
            }
        }
    }
    recurse(1, degree, dims, &mut current, &mut out);
    out
}

/// Independent construction of the orbit class: solve the restriction
/// equations exactly over the basis of Schur-determinant products with
/// lambda_i capped at e_i rows and e_{i-1} columns.
pub fn solve_thom_linear(r: &RankConditions) -> Result<Poly> {
    let degree = r.codim()?;
    let dims = r.dims();
    let n = dims.len() - 1;
    let seqs = basis_partition_seqs(dims, degree);
    let basis: Vec<Poly> = seqs
        .iter()
        .map(|seq| {
            let mut p = Poly::one();
            for i in 1..=n {
                let factor = super_schur(
                    &seq[i - 1],
                    &chern_block(i, dims[i]),
                    &chern_block(i - 1, dims[i - 1]),
                );
                p = &p * &factor;
            }
            p
        })
        .collect();
    let mut rows: Vec<(Vec<BigRational>, BigRational)> = Vec::new();
    for s in all_orbits(dims) {
        let (target, diagram) = if s == *r {
            let d = leftmost(r)?;
            (euler_class(&d)?, d)
        } else if s.closure_leq(r)? {
            continue;
        } else {
            (Poly::zero(), leftmost(&s)?)
        };
        let restricted: Vec<Poly> =
            basis.iter().map(|b| phi(b, &diagram)).collect::<Result<_>>()?;
        let mut monomials: std::collections::BTreeSet<Monomial> = std::collections::BTreeSet::new();
        for p in restricted.iter().chain(std::iter::once(&target)) {
            for (m, _) in p.terms() {
                monomials.insert(m.clone());
            }
        }
        for m in monomials {
            let coeffs: Vec<BigRational> =
                restricted.iter().map(|p| big(p.coefficient(&m))).collect();
            rows.push((coeffs, big(target.coefficient(&m))));
        }
    }
    let solution = solve_unique(rows, basis.len())?;
    let mut result = Poly::zero();
    for (value, basis_poly) in solution.iter().zip(basis.iter()) {
        if !value.is_integer() {
            return Err(Error::Internal(format!(
                "restriction system produced a non-integral coefficient {value}"
            )));
        }
        let as_int = value.to_integer();
        let small: i64 = match i64::try_from(&as_int) {
            Ok(v) => v,
            Err(_) => {
                return Err(Error::Internal("solution coefficient overflows i64".to_string()))
            }
        };
        if small != 0 {
            result += &basis_poly.scale(small);
        }
    }
    Ok(result)
}

/// Sequence-of-partitions expansion of the orbit class with coefficients
/// from transition expansions of the diagram permutations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverExpansion {
    pub dims: Vec<usize>,
    pub codim: usize,
    pub coeffs: BTreeMap<Vec<Partition>, i64>,
}

impl QuiverExpansion {
    pub fn to_json(&self) -> serde_json::Value {
        let coeffs: Vec<serde_json::Value> = self
            .coeffs
            .iter()
            .map(|(lambda, c)| {
                let parts: Vec<serde_json::Value> =
                    lambda.iter().map(Partition::to_json).collect();
                serde_json::json!({"lambda": parts, "c": c})
            })
            .collect();
        serde_json::json!({"dims": self.dims, "codim": self.codim, "coeffs": coeffs})
    }
}

/// Non-negative expansion coefficients of the orbit class over products of
/// Schur determinants, summed over minimal diagrams.
pub fn quiver_coefficients(r: &RankConditions) -> Result<QuiverExpansion> {
    let codim = r.codim()?;
    let dims = r.dims().to_vec();
    let n = dims.len() - 1;
    let mut coeffs: BTreeMap<Vec<Partition>, i64> = BTreeMap::new();
    for d in enumerate_minimal(r)? {
        let seq = d.to_perms();
        let factor_maps: Vec<BTreeMap<Partition, i64>> =
            (1..=n).map(|i| eg_coefficients(seq.perm(i))).collect();
        let mut partial: Vec<(Vec<Partition>, i64)> = vec![(Vec::new(), 1)];
        for map in &factor_maps {
            let mut next = Vec::new();
            for (prefix, c) in &partial {
                for (lambda, v) in map {
                    let mut key = prefix.clone();
                    key.push(lambda.clone());
                    next.push((key, c * v));
                }
            }
            partial = next;
        }
        for (key, c) in partial {
            *coeffs.entry(key).or_insert(0) += c;
        }
    }
    Ok(QuiverExpansion { dims, codim, coeffs })
}

/// The partition sequence whose coefficient is exactly 1: column-interval
/// rectangles arranged side by side.
pub fn distinguished_lambda(r: &RankConditions) -> Result<Vec<Partition>> {
    r.require_realizable()?;
    let n = r.dims().len() - 1;
    let mut seq = Vec::with_capacity(n);
    for i in 1..=n {
        // Rectangle for the interval ending at column j: height
        // r_{i,j} - r_{i-1,j}, width r_{i-1,j-1} - r_{i-1,j}.
        let mut rows: Vec<u32> = Vec::new();
        let mut last_height = usize::MAX;
        let mut widths_so_far = 0i64;
        let mut row_lengths: Vec<i64> = Vec::new();
        for j in i..=n {
            let (i64i, i64j) = (i as i64, j as i64);
            let height = (r.rank(i64i, i64j) - r.rank(i64i - 1, i64j)) as usize;
            let width = r.rank(i64i - 1, i64j - 1) - r.rank(i64i - 1, i64j);
            if width == 0 {
                continue;
            }
            assert!(
                height <= last_height,
                "rectangle heights must weakly decrease left to right"
            );
            last_height = height;
            while row_lengths.len() < height {
                row_lengths.push(widths_so_far);
            }
            for t in 0..height {
                row_lengths[t] += width;
            }
            widths_so_far += width;
        }
        for len in row_lengths {
            rows.push(len as u32);
        }
        seq.push(Partition::new(&rows).expect("rows weakly decreasing by construction"));
    }
    Ok(seq)
}

/// The K-theoretic class of the orbit closure: the sum over the k-move
/// closure of beta-graded normalized deformation products, with uniform
/// per-block unit factors restoring symmetry in each alphabet. The
/// beta-free part is the cohomology class.
pub fn k_class(r: &RankConditions) -> Result<Poly> {
    let codim = r.codim()?;
    let dims = r.dims().to_vec();
    let n = dims.len() - 1;
    let members: Vec<PermSeq> = enumerate_kms(r)?.iter().map(LaceDiagram::to_perms).collect();
    // Uniform denominator-clearing exponent per block: the largest
    // denominator exponent over all members of the pair using the block
    // as its second alphabet.
    let mut clearing = vec![0usize; n];
    for seq in &members {
        for i in 1..=n {
            let (_, nu) = grothendieck_normalized(seq.perm(i));
            if let Some(&max_nu) = nu.iter().max() {
                clearing[i - 1] = clearing[i - 1].max(max_nu);
            }
        }
    }
    let mut total = Poly::zero();
    for seq in &members {
        let length = seq.diagram_length();
        if length < codim {
            return Err(Error::Internal(format!(
                "k-move closure member shorter ({length}) than the codimension ({codim})"
            )));
        }
        let beta_power =
            Monomial::from_factors([(Variable::Beta, (length - codim) as u32)]);
        let mut term = Poly::one().mul_monomial(&beta_power, 1);
        for i in 1..=n {
            let (numerator, nu) = grothendieck_normalized(seq.perm(i));
            let factor = substitute_blocks(
                &numerator,
                &chern_block(i, dims[i]),
                &chern_block(i - 1, dims[i - 1]),
            )?;
            term = &term * &factor;
            for j in 1..=dims[i - 1] {
                let denominator_power = nu.get(j - 1).copied().unwrap_or(0);
                assert!(
                    denominator_power <= clearing[i - 1],
                    "clearing exponent covers every member"
                );
                let unit = &Poly::one()
                    + &(&Poly::var(Variable::Beta) * &Poly::var(Variable::chern(i - 1, j)));
                term = &term * &unit.pow((clearing[i - 1] - denominator_power) as u32);
            }
        }
        total += &term;
    }
    Ok(total)
}

#[derive(Clone, Debug)]
pub struct KmsConditionsReport {
    pub pass: bool,
    pub failures: Vec<String>,
}

impl KmsConditionsReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "status": if self.pass { "pass" } else { "fail" },
            "failures": self.failures,
        })
    }
}

/// Structural test of a candidate K-theoretic diagram set: boundary pairs
/// of every member must be ascending at every real dot (I); the signed
/// indicator must satisfy the local three-form coincidences at every
/// doubly-ascending site of every diagram (II); and the set must contain
/// the left-most diagram of the orbit (III).
pub fn kms_conditions_check(s: &[LaceDiagram], r: &RankConditions) -> KmsConditionsReport {
    let mut failures = Vec::new();
    let codim = match r.codim() {
        Ok(d) => d,
        Err(e) => {
            return KmsConditionsReport { pass: false, failures: vec![e.to_string()] };
        }
    };
    let dims = r.dims();
    let n = dims.len() - 1;
    let set: std::collections::HashSet<PermSeq> =
        s.iter().map(LaceDiagram::to_perms).collect();
    let signed = |perms: &[Permutation]| -> i64 {
        match PermSeq::new(dims, perms.to_vec()) {
            Ok(seq) if set.contains(&seq) => {
                let length: usize = perms.iter().map(Permutation::length).sum();
                if (length as i64 - codim as i64) % 2 == 0 {
                    1
                } else {
                    -1
                }
            }
            _ => 0,
        }
    };
    for member in &set {
        let w1 = member.perm(1);
        let inv = w1.inverse();
        for j in 1..dims[0] {
            if inv.descent_at(j) {
                failures.push(format!(
                    "member {:?} has a left-boundary descent at {j}",
                    member.to_lace().connections()
                ));
            }
        }
        let wn = member.perm(n);
        for j in 1..dims[n] {
            if wn.descent_at(j) {
                failures.push(format!(
                    "member {:?} has a right-boundary descent at {j}",
                    member.to_lace().connections()
                ));
            }
        }
    }
    for u in all_diagrams(dims) {
        let seq = u.to_perms();
        for i in 1..n {
            for j in 1..dims[i] {
                let left = seq.perm(i);
                let right = seq.perm(i + 1);
                if left.descent_at(j) || right.inverse().descent_at(j) {
                    continue;
                }
                let sj = Permutation::adjacent_transposition(j);
                let build = |new_left: Permutation, new_right: Permutation| -> i64 {
                    let mut perms = seq.perms().to_vec();
                    perms[i - 1] = new_left;
                    perms[i] = new_right;
                    signed(&perms)
                };
                let c_prime = build(left.multiply(&sj), right.clone());
                let c_double = build(left.clone(), sj.multiply(right));
                let c_triple = build(left.multiply(&sj), sj.multiply(right));
                if !(c_prime == c_double && c_prime == -c_triple) {
                    failures.push(format!(
                        "three-form mismatch at site ({i},{j}) over {:?}: {c_prime}, {c_double}, {c_triple}",
                        u.connections()
                    ));
                }
            }
        }
    }
    match leftmost(r) {
        Ok(root) => {
            if !set.contains(&root.to_perms()) {
                failures.push("set does not contain the left-most diagram".to_string());
            }
        }
        Err(e) => failures.push(e.to_string()),
    }
    KmsConditionsReport { pass: failures.is_empty(), failures }
}
