//! End-to-end acceptance checks. Each criterion exercises one advertised
//! guarantee over a fixed range of dimension vectors and reports pass or
//! fail with timing; the selftest subcommand and the acceptance test
//! target both run these.

use std::collections::BTreeSet;
use std::time::Instant;

use rand::{Rng, SeedableRng};

use crate::error::Result;
use crate::lace::{all_diagrams, all_orbits, enumerate_kms, enumerate_minimal, leftmost, RankConditions};
use crate::partition::Partition;
use crate::perm::Permutation;
use crate::poly::{Poly, Variable};
use crate::quiver::{
    chern_block, component_polynomial, distinguished_lambda, euler_class, k_class,
    kms_conditions_check, phi, quiver_coefficients, solve_thom_linear, verify_thom,
};
use crate::schubert::{
    grothendieck, schubert, schubert_generic, specialize_schubert, stability_check, stanley,
};
use crate::symmetric::super_schur;

#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub index: usize,
    pub name: &'static str,
    pub pass: bool,
    pub failures: Vec<String>,
    pub millis: u128,
}

impl CriterionResult {
    pub fn summary_line(&self) -> String {
        format!(
            "criterion {}: {} ({} ms){}",
            self.index,
            if self.pass { "PASS" } else { "FAIL" },
            self.millis,
            if self.failures.is_empty() {
                String::new()
            } else {
                format!(" [{} failure(s), first: {}]", self.failures.len(), self.failures[0])
            }
        )
    }
}

/// The nine dimension vectors over which the class is verified, solved,
/// and expanded orbit by orbit.
fn verify_range() -> Vec<Vec<usize>> {
    [
        &[1, 1][..],
        &[2, 1],
        &[1, 2],
        &[2, 2],
        &[1, 1, 1],
        &[1, 2, 1],
        &[2, 1, 2],
        &[2, 2, 1],
        &[2, 2, 2],
    ]
    .iter()
    .map(|d| d.to_vec())
    .collect()
}

/// Every dimension vector with at least two columns, positive entries,
/// and total at most `total`.
fn dims_up_to(total: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, budget: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() >= 2 {
            out.push(prefix.clone());
        }
        for part in 1..=budget {
            prefix.push(part);
            go(prefix, budget - part, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), total, &mut out);
    out
}

fn finish(
    index: usize,
    name: &'static str,
    started: Instant,
    failures: Vec<String>,
) -> CriterionResult {
    CriterionResult {
        index,
        name,
        pass: failures.is_empty(),
        failures,
        millis: started.elapsed().as_millis(),
    }
}

fn record<T>(failures: &mut Vec<String>, context: &str, result: Result<T>) -> Option<T> {
    match result {
        Ok(value) => Some(value),
        Err(e) => {
            failures.push(format!("{context}: {e}"));
            None
        }
    }
}

/// Reference orbit of dims (2,2,1): the restriction identifies variables
/// along strands and the Euler class is the two-factor product.
pub fn criterion_1() -> CriterionResult {
    let started = Instant::now();
    let mut failures = Vec::new();
    let b = |i: usize| Poly::var(Variable::strand(i));
    let run = || -> Result<()> {
        let r = RankConditions::new(&[2, 2, 1], &[(0, 1, 1), (1, 2, 1)])?;
        let d = leftmost(&r)?;
        let expected = [
            ((0, 1), 1),
            ((1, 1), 1),
            ((0, 2), 2),
            ((1, 2), 3),
            ((2, 1), 3),
        ];
        let mut local = Vec::new();
        for ((block, index), strand) in expected {
            let image = phi(&Poly::var(Variable::chern(block, index)), &d)?;
            if image != b(strand) {
                local.push(format!("x^{block}_{index} restricted to {image:?}, wanted b_{strand}"));
            }
        }
        let euler = euler_class(&d)?;
        let wanted = &(&b(3) - &b(1)) * &(&b(3) - &b(2));
        if euler != wanted {
            local.push(format!("euler class {euler:?}, wanted (b3-b1)(b3-b2)"));
        }
        if !local.is_empty() {
            return Err(crate::error::Error::Internal(local.join("; ")));
        }
        Ok(())
    };
    record(&mut failures, "reference orbit", run());
    finish(1, "reference orbit restriction and Euler class", started, failures)
}

/// The component-formula class passes the restriction verification for
/// every orbit of every dims vector in the verify range.
pub fn criterion_2() -> CriterionResult {
    let started = Instant::now();
    let mut failures = Vec::new();
    for dims in verify_range() {
        for r in all_orbits(&dims) {
            let context = format!("orbit {:?}", r);
            let Some(q) = record(&mut failures, &context, component_polynomial(&r)) else {
                continue;
            };
            if let Some(report) = record(&mut failures, &context, verify_thom(&q, &r)) {
                if !report.pass {
                    failures.push(format!("{context}: verification failed"));
                }
            }
        }
    }
    finish(2, "verification of the component formula", started, failures)
}

/// The exact linear solver reproduces the component-formula class.
pub fn criterion_3() -> CriterionResult {
    let started = Instant::now();
    let mut failures = Vec::new();
    for dims in verify_range() {
        for r in all_orbits(&dims) {
            let context = format!("orbit {:?}", r);
            let q = record(&mut failures, &context, component_polynomial(&r));
            let solved = record(&mut failures, &context, solve_thom_linear(&r));
            if let (Some(q), Some(solved)) = (q, solved) {
                if q != solved {
                    failures.push(format!("{context}: solver disagrees with the component sum"));
                }
            }
        }
    }
    finish(3, "linear solver agreement", started, failures)
}

/// The class is annihilated by every adjacent divided difference within
/// each column's alphabet.
pub fn criterion_4() -> CriterionResult {
    let started = Instant::now();
    let mut failures = Vec::new();
    for dims in verify_range() {
        for r in all_orbits(&dims) {
            let context = format!("orbit {:?}", r);
            let Some(q) = record(&mut failures, &context, component_polynomial(&r)) else {
                continue;
            };
            for (i, &e) in dims.iter().enumerate() {
                for j in 1..e {
                    let delta = record(
                        &mut failures,
                        &context,
                        q.divided_difference(Variable::chern(i, j), Variable::chern(i, j + 1)),
                    );
                    if let Some(delta) = delta {
                        if !delta.is_zero() {
                            failures.push(format!("{context}: divided difference {i},{j} nonzero"));
                        }
                    }
                }
            }
        }
    }
    finish(4, "divided differences annihilate the class", started, failures)
}

/// Summing stable double Stanley polynomials over minimal diagrams gives
/// the same class as summing double Schubert polynomials.
pub fn criterion_5() -> CriterionResult {
    let started = Instant::now();
    let mut failures = Vec::new();
    for dims in dims_up_to(6) {
        let n = dims.len() - 1;
        for r in all_orbits(&dims) {
            let context = format!("orbit {:?}", r);
            let Some(minimal) = record(&mut failures, &context, enumerate_minimal(&r)) else {
                continue;
            };
            let Some(lhs) = record(&mut failures, &context, component_polynomial(&r)) else {
                continue;
            };
            let mut rhs = Poly::zero();
            for d in &minimal {
                let seq = d.to_perms();
                let mut term = Poly::one();
                for i in 1..=n {
                    let factor = stanley(
                        seq.perm(i),
                        &chern_block(i, dims[i]),
                        &chern_block(i - 1, dims[i - 1]),
                    );
                    term = &term * &factor;
                }
                rhs += &term;
            }
            if lhs != rhs {
                failures.push(format!("{context}: Stanley sum differs from Schubert sum"));
            }
        }
    }
    finish(5, "stable sum matches the component formula", started, failures)
}

/// Expansion coefficients are positive, graded by codimension, assign 1
/// to the distinguished sequence, and are stable under adding strands.
pub fn criterion_6() -> CriterionResult {
    let started = Instant::now();
    let mut failures = Vec::new();
    for dims in verify_range() {
        for r in all_orbits(&dims) {
            let context = format!("orbit {:?}", r);
            let Some(expansion) = record(&mut failures, &context, quiver_coefficients(&r)) else {
                continue;
            };
            for (lambda, c) in &expansion.coeffs {
                if *c <= 0 {
                    failures.push(format!("{context}: coefficient {c} at {lambda:?}"));
                }
                let total: u32 = lambda.iter().map(Partition::size).sum();
                if total as usize != expansion.codim {
                    failures.push(format!("{context}: key {lambda:?} has degree {total}"));
                }
            }
            if let Some(marked) = record(&mut failures, &context, distinguished_lambda(&r)) {
                if expansion.coeffs.get(&marked) != Some(&1) {
                    failures.push(format!("{context}: distinguished sequence lacks coefficient 1"));
                }
            }
        }
    }
    for dims in [vec![1, 1], vec![2, 1], vec![1, 2], vec![2, 2]] {
        for r in all_orbits(&dims) {
            let context = format!("orbit {:?}", r);
            let base = record(&mut failures, &context, quiver_coefficients(&r));
            let lifted = record(&mut failures, &context, quiver_coefficients(&r.add_strands(1)));
            if let (Some(base), Some(lifted)) = (base, lifted) {
                if base.coeffs != lifted.coeffs {
                    failures.push(format!("{context}: coefficients change under added strands"));
                }
            }
        }
    }
    finish(6, "positivity, grading, and stability of coefficients", started, failures)
}

/// The coefficient expansion reconstructs the class exactly.
pub fn criterion_7() -> CriterionResult {
    let started = Instant::now();
    let mut failures = Vec::new();
    for dims in verify_range() {
        let n = dims.len() - 1;
        for r in all_orbits(&dims) {
            let context = format!("orbit {:?}", r);
            let expansion = record(&mut failures, &context, quiver_coefficients(&r));
            let q = record(&mut failures, &context, component_polynomial(&r));
            let (Some(expansion), Some(q)) = (expansion, q) else { continue };
            let mut rebuilt = Poly::zero();
            for (lambda, c) in &expansion.coeffs {
                let mut term = Poly::constant(*c);
                for i in 1..=n {
                    let factor = super_schur(
                        &lambda[i - 1],
                        &chern_block(i, dims[i]),
                        &chern_block(i - 1, dims[i - 1]),
                    );
                    term = &term * &factor;
                }
                rebuilt += &term;
            }
            if rebuilt != q {
                failures.push(format!("{context}: reconstruction differs from the class"));
            }
        }
    }
    finish(7, "reconstruction from coefficients", started, failures)
}

/// Move enumeration is complete, and unequal coefficient mixtures over
/// multiple minimal diagrams are never blockwise symmetric.
pub fn criterion_8() -> CriterionResult {
    let started = Instant::now();
    let mut failures = Vec::new();
    let mut pool: Vec<RankConditions> = Vec::new();
    for dims in dims_up_to(6) {
        let exhaustive = all_diagrams(&dims);
        for r in all_orbits(&dims) {
            let context = format!("orbit {:?}", r);
            let Some(enumerated) = record(&mut failures, &context, enumerate_minimal(&r)) else {
                continue;
            };
            let expected: BTreeSet<_> = exhaustive
                .iter()
                .filter(|d| d.rank_conditions() == r && d.is_minimal())
                .cloned()
                .collect();
            let got: BTreeSet<_> = enumerated.iter().cloned().collect();
            if got != expected {
                failures.push(format!(
                    "{context}: move closure found {} minimal diagrams, exhaustive search {}",
                    got.len(),
                    expected.len()
                ));
            }
            if enumerated.len() >= 2 {
                pool.push(r.clone());
            }
        }
    }
    if pool.is_empty() {
        failures.push("no orbit with two or more minimal diagrams in range".to_string());
    } else {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        for trial in 0..100 {
            let r = &pool[trial % pool.len()];
            let dims = r.dims().to_vec();
            let n = dims.len() - 1;
            let context = format!("trial {trial} orbit {:?}", r);
            let Some(minimal) = record(&mut failures, &context, enumerate_minimal(r)) else {
                continue;
            };
            let mut coeffs: Vec<i64> =
                (0..minimal.len()).map(|_| rng.gen_range(-3..=3)).collect();
            if coeffs.iter().all(|&c| c == coeffs[0]) {
                coeffs[0] += 1;
            }
            let mut mixture = Poly::zero();
            let mut broken = false;
            for (d, &c) in minimal.iter().zip(&coeffs) {
                let seq = d.to_perms();
                let mut term = Poly::constant(c);
                for i in 1..=n {
                    match schubert(
                        seq.perm(i),
                        &chern_block(i, dims[i]),
                        &chern_block(i - 1, dims[i - 1]),
                    ) {
                        Ok(factor) => term = &term * &factor,
                        Err(e) => {
                            failures.push(format!("{context}: {e}"));
                            broken = true;
                        }
                    }
                }
                mixture += &term;
            }
            if broken {
                continue;
            }
            let mut some_nonzero = false;
            'outer: for (i, &e) in dims.iter().enumerate() {
                for j in 1..e {
                    let delta = mixture
                        .divided_difference(Variable::chern(i, j), Variable::chern(i, j + 1))
                        .expect("distinct variables");
                    if !delta.is_zero() {
                        some_nonzero = true;
                        break 'outer;
                    }
                }
            }
            if !some_nonzero {
                failures.push(format!(
                    "{context}: unequal coefficients {coeffs:?} still symmetric"
                ));
            }
        }
    }
    finish(8, "completeness of moves and necessity of equal coefficients", started, failures)
}

/// K-theory: deformations restrict to Schubert polynomials at beta zero;
/// the k-move closure yields a blockwise symmetric class truncating to
/// the cohomology class, its shortest stratum is the minimal set, and it
/// satisfies the structural conditions.
pub fn criterion_9() -> CriterionResult {
    let started = Instant::now();
    let mut failures = Vec::new();
    let xs = chern_block(1, 3);
    let ys = chern_block(0, 3);
    for w in Permutation::symmetric_group(3) {
        let context = format!("permutation {:?}", w.one_line(3));
        let deformed = record(&mut failures, &context, grothendieck(&w, &xs, &ys));
        let classical = record(&mut failures, &context, schubert(&w, &xs, &ys));
        if let (Some(deformed), Some(classical)) = (deformed, classical) {
            if deformed.beta_zero() != classical {
                failures.push(format!("{context}: beta-zero truncation differs"));
            }
        }
    }
    for dims in dims_up_to(5) {
        for r in all_orbits(&dims) {
            let context = format!("orbit {:?}", r);
            let k = record(&mut failures, &context, k_class(&r));
            let q = record(&mut failures, &context, component_polynomial(&r));
            if let (Some(k), Some(q)) = (&k, &q) {
                if k.beta_zero() != *q {
                    failures.push(format!("{context}: beta truncation differs from the class"));
                }
                for (i, &e) in dims.iter().enumerate() {
                    if !k.is_symmetric_in(&chern_block(i, e)) {
                        failures.push(format!("{context}: class asymmetric in block {i}"));
                    }
                }
            }
            let kms = record(&mut failures, &context, enumerate_kms(&r));
            let minimal = record(&mut failures, &context, enumerate_minimal(&r));
            let codim = record(&mut failures, &context, r.codim());
            if let (Some(kms), Some(minimal), Some(codim)) = (kms, minimal, codim) {
                let stratum: Vec<_> = kms
                    .iter()
                    .filter(|d| d.diagram_length() == codim)
                    .cloned()
                    .collect();
                if stratum != minimal {
                    failures.push(format!("{context}: shortest stratum differs from minimal set"));
                }
                let report = kms_conditions_check(&kms, &r);
                if !report.pass {
                    failures.push(format!(
                        "{context}: structural conditions failed: {}",
                        report.failures.join("; ")
                    ));
                }
            }
        }
    }
    finish(9, "K-theoretic classes and closure conditions", started, failures)
}

/// Schubert engine sanity: the staircase product formula, the stability
/// identity under strand shifts, and vanishing of specializations
/// exactly outside the Bruhat order.
pub fn criterion_10() -> CriterionResult {
    let started = Instant::now();
    let mut failures = Vec::new();
    for m in 2..=4usize {
        let w0 = Permutation::longest(m);
        let mut staircase = Poly::one();
        for i in 1..m {
            for j in 1..m {
                if i + j <= m {
                    staircase = &staircase
                        * &(&Poly::var(Variable::chern(1, i)) - &Poly::var(Variable::chern(0, j)));
                }
            }
        }
        if *schubert_generic(&w0) != staircase {
            failures.push(format!("longest element of S_{m} misses the staircase product"));
        }
    }
    for w in Permutation::symmetric_group(3) {
        for k in 1..=2usize {
            if !stability_check(&w, k, 3) {
                failures.push(format!(
                    "stability fails for {:?} shifted by {k}",
                    w.one_line(3)
                ));
            }
        }
    }
    let s4 = Permutation::symmetric_group(4);
    for w in &s4 {
        for u in &s4 {
            let value = specialize_schubert(w, u);
            let expected_nonzero = w.bruhat_leq(u);
            if value.is_zero() == expected_nonzero {
                failures.push(format!(
                    "specialization of {:?} at {:?} is {}",
                    w.one_line(4),
                    u.one_line(4),
                    if value.is_zero() { "zero" } else { "nonzero" }
                ));
            }
            if w == u {
                let mut product = Poly::one();
                for i in 1..4 {
                    for j in (i + 1)..=4 {
                        if w.apply(i) > w.apply(j) {
                            product = &product
                                * &(&Poly::var(Variable::strand(w.apply(i)))
                                    - &Poly::var(Variable::strand(w.apply(j))));
                        }
                    }
                }
                if value != product {
                    failures.push(format!(
                        "diagonal specialization of {:?} differs from its root product",
                        w.one_line(4)
                    ));
                }
            }
        }
    }
    finish(10, "Schubert product, stability, and Bruhat vanishing", started, failures)
}

pub fn run_all() -> Vec<CriterionResult> {
    vec![
        criterion_1(),
        criterion_2(),
        criterion_3(),
        criterion_4(),
        criterion_5(),
        criterion_6(),
        criterion_7(),
        criterion_8(),
        criterion_9(),
        criterion_10(),
    ]
}
