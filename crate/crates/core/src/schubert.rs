//! Double Schubert polynomials by divided-difference descent from the
//! longest element, their beta-deformations, and double Stanley symmetric
//! polynomials via length-additive factorizations. Generic results are
//! memoized per permutation; public entry points substitute the caller's
//! variable blocks into the generic form.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::perm::Permutation;
use crate::poly::{Monomial, Poly, Subst, Variable};

// Generic alphabets: block 1 holds the x variables, block 0 the y's.
fn x_var(i: usize) -> Variable {
    Variable::chern(1, i)
}

fn y_var(j: usize) -> Variable {
    Variable::chern(0, j)
}

type Cache<T> = OnceLock<Mutex<HashMap<Permutation, Arc<T>>>>;

static SCHUBERT: Cache<Poly> = OnceLock::new();
static DEFORMED: Cache<Poly> = OnceLock::new();
static NORMALIZED: Cache<(Poly, Vec<usize>)> = OnceLock::new();

fn memoized<T>(cache: &'static Cache<T>, w: &Permutation, compute: impl FnOnce() -> T) -> Arc<T> {
    let map = cache.get_or_init(Default::default);
    if let Some(hit) = map.lock().unwrap().get(w) {
        return hit.clone();
    }
    // The lock is released while computing: recursive calls re-enter here.
    let value = Arc::new(compute());
    map.lock()
        .unwrap()
        .entry(w.clone())
        .or_insert_with(|| value.clone())
        .clone()
}

/// Drops every memoized polynomial; useful for isolating benchmark runs.
pub fn clear_caches() {
    for cache in [&SCHUBERT, &DEFORMED] {
        if let Some(map) = cache.get() {
            map.lock().unwrap().clear();
        }
    }
    if let Some(map) = NORMALIZED.get() {
        map.lock().unwrap().clear();
    }
}

fn staircase(m: usize, factor: impl Fn(usize, usize) -> Poly) -> Poly {
    let mut p = Poly::one();
    for i in 1..m {
        for j in 1..=(m - i) {
            p = &p * &factor(i, j);
        }
    }
    p
}

fn first_ascent(w: &Permutation) -> usize {
    (1..w.size())
        .find(|&i| w.apply(i) < w.apply(i + 1))
        .expect("a non-longest permutation has an ascent inside its window")
}

/// Generic double Schubert polynomial in x_1, x_2, ... and y_1, y_2, ...
/// Lehmer code entry i: the number of later positions holding a smaller
/// value. Weakly decreasing codes (dominant permutations, the longest
/// element included) admit a direct product formula, which keeps large
/// one-shot windows out of the ascent recursion.
fn dominant_shape(w: &Permutation) -> Option<Vec<usize>> {
    let m = w.size();
    let mut code = Vec::with_capacity(m);
    for i in 1..=m {
        code.push((i + 1..=m).filter(|&j| w.apply(j) < w.apply(i)).count());
    }
    if code.windows(2).all(|pair| pair[0] >= pair[1]) {
        Some(code)
    } else {
        None
    }
}

pub fn schubert_generic(w: &Permutation) -> Arc<Poly> {
    memoized(&SCHUBERT, w, || {
        if w.is_identity() {
            return Poly::one();
        }
        if let Some(shape) = dominant_shape(w) {
            let mut p = Poly::one();
            for (i, &len) in shape.iter().enumerate() {
                for j in 1..=len {
                    p = &p * &(&Poly::var(x_var(i + 1)) - &Poly::var(y_var(j)));
                }
            }
            return p;
        }
        let i = first_ascent(w);
        let longer = w.multiply(&Permutation::adjacent_transposition(i));
        schubert_generic(&longer)
            .divided_difference(x_var(i), x_var(i + 1))
            .expect("adjacent variables are distinct")
    })
}

pub(crate) fn substitute_blocks(generic: &Poly, xs: &[Variable], ys: &[Variable]) -> Result<Poly> {
    let mut map = HashMap::new();
    for v in generic.variables() {
        if let Variable::Chern { block, index } = v {
            let target = if block == 1 { xs } else { ys };
            let name = if block == 1 { "x" } else { "y" };
            if index > target.len() {
                return Err(Error::InvalidArgument(format!(
                    "{name} block too short: the polynomial uses {name}_{index} but only {} variables were supplied",
                    target.len()
                )));
            }
            map.insert(v, Subst::Var(target[index - 1]));
        }
    }
    Ok(generic.substitute(&map))
}

fn check_block(vars: &[Variable]) -> Result<()> {
    let distinct: HashSet<_> = vars.iter().collect();
    if distinct.len() != vars.len() {
        return Err(Error::InvalidArgument("variable block has repeats".to_string()));
    }
    Ok(())
}

/// Double Schubert polynomial in the given alphabets. The blocks must
/// cover the variables the polynomial actually uses: x up to
/// last_descent(w) and y up to last_descent(w inverse).
pub fn schubert(w: &Permutation, xs: &[Variable], ys: &[Variable]) -> Result<Poly> {
    check_block(xs)?;
    check_block(ys)?;
    substitute_blocks(&schubert_generic(w), xs, ys)
}

/// The y-side divided difference of the generic double Schubert
/// polynomial; equals -schubert(s_i w) when that shortens w, else 0.
pub fn schubert_y_divided_difference(w: &Permutation, i: usize) -> Poly {
    schubert_generic(w)
        .divided_difference(y_var(i), y_var(i + 1))
        .expect("adjacent variables are distinct")
}

/// Schubert polynomial evaluated at x_i = b_{u(i)}, y_j = b_j; zero
/// whenever w is not below u in Bruhat order.
pub fn specialize_schubert(w: &Permutation, u: &Permutation) -> Poly {
    let generic = schubert_generic(w);
    let mut map = HashMap::new();
    for v in generic.variables() {
        if let Variable::Chern { block, index } = v {
            let target = if block == 1 { u.apply(index) } else { index };
            map.insert(v, Subst::Var(Variable::strand(target)));
        }
    }
    generic.substitute(&map)
}

/// Checks the embedding identity: prepending k trivial strands and zeroing
/// the first k variables of each alphabet recovers the original
/// polynomial on x_1..x_m, y_1..y_m.
pub fn stability_check(w: &Permutation, k: usize, m: usize) -> bool {
    let shifted = schubert_generic(&w.shift(k));
    let mut map = HashMap::new();
    for v in shifted.variables() {
        if let Variable::Chern { block, index } = v {
            let target = if index <= k {
                Subst::Zero
            } else if index <= k + m {
                Subst::Var(Variable::Chern { block, index: index - k })
            } else {
                return false;
            };
            map.insert(v, target);
        }
    }
    shifted.substitute(&map) == *schubert_generic(w)
}

fn left_descents(v: &Permutation) -> Vec<usize> {
    let inv = v.inverse();
    (1..v.size()).filter(|&m| inv.descent_at(m)).collect()
}

/// Single-alphabet Stanley polynomial: peels the first variable through
/// length-additive factorizations u·v = w where u carries a strictly
/// decreasing reduced word and contributes vars[0]^len(u).
fn single_stanley(w: &Permutation, vars: &[Variable]) -> Poly {
    let mut memo = HashMap::new();
    single_stanley_rec(w, vars, &mut memo)
}

fn single_stanley_rec(
    w: &Permutation,
    vars: &[Variable],
    memo: &mut HashMap<(Permutation, usize), Poly>,
) -> Poly {
    if w.is_identity() {
        return Poly::one();
    }
    if vars.is_empty() {
        return Poly::zero();
    }
    let key = (w.clone(), vars.len());
    if let Some(hit) = memo.get(&key) {
        return hit.clone();
    }
    let mut acc = Poly::zero();
    // Each strictly decreasing left factor is reached by exactly one chain
    // of max-bounded left-descent peels, so no deduplication is needed.
    let mut stack = vec![(w.clone(), usize::MAX)];
    while let Some((v, bound)) = stack.pop() {
        let tail = single_stanley_rec(&v, &vars[1..], memo);
        if !tail.is_zero() {
            let deg = (w.length() - v.length()) as u32;
            acc += &tail.mul_monomial(&Monomial::from_factors([(vars[0], deg)]), 1);
        }
        for m in left_descents(&v) {
            if m < bound {
                stack.push((Permutation::adjacent_transposition(m).multiply(&v), m));
            }
        }
    }
    memo.insert(key, acc.clone());
    acc
}

/// Double Stanley polynomial truncated to the given alphabets, assembled
/// from length-additive factorizations w = u·v with the y-part carried by
/// the inverse of u and a sign for its length.
pub fn stanley(w: &Permutation, xs: &[Variable], ys: &[Variable]) -> Poly {
    let mut total = Poly::zero();
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(w.clone());
    queue.push_back((Permutation::identity(), w.clone()));
    while let Some((u, v)) = queue.pop_front() {
        let left = single_stanley(&u.inverse(), ys);
        if !left.is_zero() {
            let sign = if u.length() % 2 == 0 { 1 } else { -1 };
            total += &(&left * &single_stanley(&v, xs)).scale(sign);
        }
        for m in left_descents(&v) {
            let next_v = Permutation::adjacent_transposition(m).multiply(&v);
            if seen.insert(next_v.clone()) {
                queue.push_back((u.multiply(&Permutation::adjacent_transposition(m)), next_v));
            }
        }
    }
    total
}

/// Schur expansion of the single Stanley polynomial of w, taken in len(w)
/// variables so every partition of len(w) is visible.
pub fn eg_coefficients(w: &Permutation) -> BTreeMap<Partition, i64> {
    let vars: Vec<Variable> = (1..=w.length()).map(x_var).collect();
    let f = single_stanley(w, &vars);
    crate::symmetric::schur_expand(&f, &vars)
        .expect("Stanley polynomials are symmetric in their alphabet")
}

fn deformed_generic(w: &Permutation) -> Arc<Poly> {
    memoized(&DEFORMED, w, || {
        if w.is_identity() {
            return Poly::one();
        }
        let m = w.size();
        if *w == Permutation::longest(m) {
            return staircase(m, |i, j| {
                let x = Poly::var(x_var(i));
                let y = Poly::var(y_var(j));
                &(&x - &y) - &(&(&Poly::var(Variable::Beta) * &x) * &y)
            });
        }
        let i = first_ascent(w);
        let longer = w.multiply(&Permutation::adjacent_transposition(i));
        deformed_generic(&longer)
            .isobaric_difference(x_var(i), x_var(i + 1))
            .expect("adjacent variables are distinct")
    })
}

/// Beta-deformed double Schubert polynomial from the top class
/// prod (x_i - y_j - beta x_i y_j); beta = 0 recovers schubert exactly.
pub fn grothendieck(w: &Permutation, xs: &[Variable], ys: &[Variable]) -> Result<Poly> {
    check_block(xs)?;
    check_block(ys)?;
    substitute_blocks(&deformed_generic(w), xs, ys)
}

fn normalized_generic(w: &Permutation) -> Arc<(Poly, Vec<usize>)> {
    memoized(&NORMALIZED, w, || {
        if w.is_identity() {
            return (Poly::one(), Vec::new());
        }
        let m = w.size();
        if *w == Permutation::longest(m) {
            let p = staircase(m, |i, j| &Poly::var(x_var(i)) - &Poly::var(y_var(j)));
            return (p, (1..m).map(|j| m - j).collect());
        }
        let i = first_ascent(w);
        let longer = w.multiply(&Permutation::adjacent_transposition(i));
        let inner = normalized_generic(&longer);
        let mut p = inner
            .0
            .isobaric_difference(x_var(i), x_var(i + 1))
            .expect("adjacent variables are distinct");
        let mut nu = inner.1.clone();
        for j in 1..=nu.len() {
            while nu[j - 1] > 0 {
                match p.exact_quotient_one_plus_beta(y_var(j)) {
                    Some(q) => {
                        p = q;
                        nu[j - 1] -= 1;
                    }
                    None => break,
                }
            }
        }
        while nu.last() == Some(&0) {
            nu.pop();
        }
        (p, nu)
    })
}

/// The variant of the deformation whose second alphabet enters through the
/// formal inverse: represented as a numerator polynomial P and exponents
/// nu with the class equal to P divided by prod (1 + beta y_j)^nu_j.
/// Setting beta = 0 in P recovers schubert. This is the form the
/// K-theoretic factorization formula consumes.
pub fn grothendieck_normalized(w: &Permutation) -> (Poly, Vec<usize>) {
    let arc = normalized_generic(w);
    (arc.0.clone(), arc.1.clone())
}
