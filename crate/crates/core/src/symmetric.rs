//! Symmetric-function building blocks: complete homogeneous and elementary
//! bases, Schur polynomials in one alphabet via Jacobi-Trudi, their
//! supersymmetric extension in a pair of alphabets, and expansion of a
//! symmetric polynomial in the Schur basis.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::poly::{Poly, Variable};

/// h_0..h_k in the given variables.
fn complete_up_to(k: u32, vars: &[Variable]) -> Vec<Poly> {
    let mut h = vec![Poly::zero(); k as usize + 1];
    h[0] = Poly::one();
    for &v in vars {
        let xv = Poly::var(v);
        // Ascending d reuses the already-updated h[d-1], which is the
        // recurrence h_d(..,v) = h_d(..) + v * h_{d-1}(..,v).
        for d in 1..=k as usize {
            let add = &xv * &h[d - 1];
            h[d] += &add;
        }
    }
    h
}

/// e_0..e_k in the given variables; e_d = 0 for d > vars.len().
fn elementary_up_to(k: u32, vars: &[Variable]) -> Vec<Poly> {
    let mut e = vec![Poly::zero(); k as usize + 1];
    e[0] = Poly::one();
    for &v in vars {
        let xv = Poly::var(v);
        // Descending d reads the not-yet-updated e[d-1]: the recurrence
        // e_d(..,v) = e_d(..) + v * e_{d-1}(..).
        for d in (1..=k as usize).rev() {
            let add = &xv * &e[d - 1];
            e[d] += &add;
        }
    }
    e
}

pub fn complete_homogeneous(k: u32, vars: &[Variable]) -> Poly {
    complete_up_to(k, vars).pop().expect("k+1 entries")
}

pub fn elementary(k: u32, vars: &[Variable]) -> Poly {
    elementary_up_to(k, vars).pop().expect("k+1 entries")
}

/// Determinant by first-row expansion with minors memoized on the set of
/// unused columns; the consumed row count is that set's complement size.
fn determinant(mat: &[Vec<Poly>]) -> Poly {
    fn minor(mat: &[Vec<Poly>], mask: u32, memo: &mut HashMap<u32, Poly>) -> Poly {
        if mask == 0 {
            return Poly::one();
        }
        if let Some(p) = memo.get(&mask) {
            return p.clone();
        }
        let n = mat.len();
        let row = n - mask.count_ones() as usize;
        let mut out = Poly::zero();
        let mut sign = 1i64;
        for col in 0..n {
            if mask & (1 << col) == 0 {
                continue;
            }
            if !mat[row][col].is_zero() {
                let sub = minor(mat, mask & !(1 << col), memo);
                out += &(&mat[row][col] * &sub).scale(sign);
            }
            sign = -sign;
        }
        memo.insert(mask, out.clone());
        out
    }
    let n = mat.len();
    if n == 0 {
        return Poly::one();
    }
    assert!(n <= 32, "determinant size exceeds column mask width");
    minor(mat, (1u32 << n) - 1, &mut HashMap::new())
}

/// Jacobi-Trudi: s_lambda = det(h_{lambda_t - t + u}) over rows t and
/// columns u of the partition length.
pub fn schur(lambda: &Partition, vars: &[Variable]) -> Poly {
    let rows = lambda.num_rows();
    if rows == 0 {
        return Poly::one();
    }
    let max_index = lambda.part(1) as i64 + rows as i64 - 1;
    let h = complete_up_to(max_index.max(0) as u32, vars);
    let mat = jacobi_trudi_matrix(lambda, &h);
    determinant(&mat)
}

fn jacobi_trudi_matrix(lambda: &Partition, entries: &[Poly]) -> Vec<Vec<Poly>> {
    let rows = lambda.num_rows();
    (1..=rows)
        .map(|t| {
            (1..=rows)
                .map(|u| {
                    let idx = lambda.part(t) as i64 - t as i64 + u as i64;
                    if idx < 0 {
                        Poly::zero()
                    } else {
                        entries[idx as usize].clone()
                    }
                })
                .collect()
        })
        .collect()
}

/// Schur polynomial in the difference of alphabets xs - ys: the
/// Jacobi-Trudi determinant over c_k = sum_{a+b=k} h_a(xs) * (-1)^b e_b(ys).
/// With this convention the rectangle with `ys.len()` columns and
/// `xs.len()` rows factors as prod (x_i - y_j), and empty ys recovers the
/// ordinary Schur polynomial.
pub fn super_schur(lambda: &Partition, xs: &[Variable], ys: &[Variable]) -> Poly {
    let rows = lambda.num_rows();
    if rows == 0 {
        return Poly::one();
    }
    let max_index = (lambda.part(1) as i64 + rows as i64 - 1).max(0) as u32;
    let h = complete_up_to(max_index, xs);
    let e = elementary_up_to(max_index, ys);
    let c: Vec<Poly> = (0..=max_index as usize)
        .map(|k| {
            let mut out = Poly::zero();
            for a in 0..=k {
                let b = k - a;
                let sign = if b % 2 == 0 { 1 } else { -1 };
                out += &(&h[a] * &e[b]).scale(sign);
            }
            out
        })
        .collect();
    let mat = jacobi_trudi_matrix(lambda, &c);
    determinant(&mat)
}

/// Writes a symmetric polynomial as sum c_lambda s_lambda(vars) by peeling
/// dominant leading terms. `vars` must be strictly increasing in the global
/// variable order so lex-leading monomials have weakly decreasing exponents.
pub fn schur_expand(f: &Poly, vars: &[Variable]) -> Result<BTreeMap<Partition, i64>> {
    assert!(
        vars.windows(2).all(|w| w[0] < w[1]),
        "schur_expand variables must be strictly increasing"
    );
    let allowed: std::collections::BTreeSet<Variable> = vars.iter().copied().collect();
    if !f.variables().is_subset(&allowed) {
        return Err(Error::InvalidArgument(
            "polynomial involves variables outside the expansion alphabet".to_string(),
        ));
    }
    if !f.is_symmetric_in(vars) {
        return Err(Error::InvalidArgument(
            "polynomial is not symmetric in the given variables".to_string(),
        ));
    }
    let mut rest = f.clone();
    let mut out = BTreeMap::new();
    while let Some((lead, c)) = rest.leading() {
        let exps: Vec<u32> = vars.iter().map(|&v| lead.exponent(v)).collect();
        let lambda = Partition::new(&exps).map_err(|_| {
            Error::Internal("leading term of a symmetric polynomial must be dominant".to_string())
        })?;
        out.insert(lambda.clone(), c);
        rest = &rest - &schur(&lambda, vars).scale(c);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::partitions_of;
    use proptest::prelude::*;

    fn x(i: usize) -> Variable {
        Variable::chern(1, i)
    }

    fn y(i: usize) -> Variable {
        Variable::chern(0, i)
    }

    fn pt(parts: &[u32]) -> Partition {
        Partition::new(parts).unwrap()
    }

    fn pv(v: Variable) -> Poly {
        Poly::var(v)
    }

    #[test]
    fn homogeneous_and_elementary_basics() {
        let vars = [x(1), x(2), x(3)];
        let (a, b, c) = (pv(x(1)), pv(x(2)), pv(x(3)));
        let e2 = &(&(&a * &b) + &(&a * &c)) + &(&b * &c);
        assert_eq!(elementary(2, &vars), e2);
        assert_eq!(elementary(4, &vars), Poly::zero());
        assert_eq!(elementary(0, &vars), Poly::one());
        let two = [x(1), x(2)];
        let h2 = &(&(&a * &a) + &(&a * &b)) + &(&b * &b);
        assert_eq!(complete_homogeneous(2, &two), h2);
        assert_eq!(complete_homogeneous(0, &[]), Poly::one());
        assert_eq!(complete_homogeneous(1, &[]), Poly::zero());
    }

    /// Brute-force Schur polynomial as the generating function of
    /// semistandard tableaux: rows weakly increase, columns strictly
    /// increase, entries bounded by the variable count.
    fn schur_by_tableaux(lambda: &Partition, vars: &[Variable]) -> Poly {
        fn fill(
            lambda: &Partition,
            vars: &[Variable],
            rows: &mut Vec<Vec<usize>>,
            out: &mut Poly,
        ) {
            let r = rows.len();
            if r == lambda.num_rows() {
                let factors = rows
                    .iter()
                    .flatten()
                    .map(|&entry| (vars[entry - 1], 1u32));
                out.add_term(crate::poly::Monomial::from_factors(factors), 1);
                return;
            }
            let width = lambda.part(r + 1) as usize;
            let mut row = vec![0usize; width];
            fn cell(
                lambda: &Partition,
                vars: &[Variable],
                rows: &mut Vec<Vec<usize>>,
                row: &mut Vec<usize>,
                col: usize,
                out: &mut Poly,
            ) {
                if col == row.len() {
                    rows.push(row.clone());
                    fill(lambda, vars, rows, out);
                    rows.pop();
                    return;
                }
                let left = if col > 0 { row[col - 1] } else { 1 };
                let above = if let Some(prev) = rows.last() {
                    if col < prev.len() {
                        prev[col] + 1
                    } else {
                        1
                    }
                } else {
                    1
                };
                for v in left.max(above)..=vars.len() {
                    row[col] = v;
                    cell(lambda, vars, rows, row, col + 1, out);
                }
            }
            cell(lambda, vars, rows, &mut row, 0, out);
        }
        let mut out = Poly::zero();
        fill(lambda, vars, &mut Vec::new(), &mut out);
        out
    }

    #[test]
    fn schur_small_cases() {
        let vars = [x(1), x(2), x(3)];
        assert_eq!(schur(&Partition::empty(), &vars), Poly::one());
        assert_eq!(schur(&pt(&[2]), &vars), complete_homogeneous(2, &vars));
        assert_eq!(schur(&pt(&[1, 1]), &vars), elementary(2, &vars));
        // More rows than variables vanishes.
        assert_eq!(schur(&pt(&[1, 1]), &[x(1)]), Poly::zero());
        // s_{2,1}(x,y,z): 8 tableaux but 7 distinct monomials, the
        // squarefree one appearing twice.
        let s21 = schur(&pt(&[2, 1]), &vars);
        assert_eq!(s21.num_terms(), 7);
        let xyz = crate::poly::Monomial::from_factors([(x(1), 1), (x(2), 1), (x(3), 1)]);
        assert_eq!(s21.coefficient(&xyz), 2);
    }

    #[test]
    fn schur_matches_tableau_generating_function() {
        for n in 0..=4 {
            for lambda in partitions_of(n) {
                for nvars in 1..=3 {
                    let vars: Vec<Variable> = (1..=nvars).map(x).collect();
                    assert_eq!(
                        schur(&lambda, &vars),
                        schur_by_tableaux(&lambda, &vars),
                        "shape {lambda} in {nvars} variables"
                    );
                }
            }
        }
    }

    #[test]
    fn pieri_sample() {
        let vars = [x(1), x(2), x(3)];
        let prod = &schur(&pt(&[1]), &vars) * &schur(&pt(&[1]), &vars);
        let expansion = schur_expand(&prod, &vars).unwrap();
        let expect: BTreeMap<Partition, i64> =
            [(pt(&[1, 1]), 1), (pt(&[2]), 1)].into_iter().collect();
        assert_eq!(expansion, expect);
    }

    #[test]
    fn super_schur_rectangles_factor() {
        // One column, two rows: (x1 - y1)(x2 - y1).
        let f = super_schur(&pt(&[1, 1]), &[x(1), x(2)], &[y(1)]);
        let expect = &(&pv(x(1)) - &pv(y(1))) * &(&pv(x(2)) - &pv(y(1)));
        assert_eq!(f, expect);
        // Two columns, two rows over two y's: full double product.
        let f = super_schur(&pt(&[2, 2]), &[x(1), x(2)], &[y(1), y(2)]);
        let mut expect = Poly::one();
        for i in 1..=2 {
            for j in 1..=2 {
                expect = &expect * &(&pv(x(i)) - &pv(y(j)));
            }
        }
        assert_eq!(f, expect);
        // One row, one column: x1 + x2 - y1.
        let f = super_schur(&pt(&[1]), &[x(1), x(2)], &[y(1)]);
        let expect = &(&pv(x(1)) + &pv(x(2))) - &pv(y(1));
        assert_eq!(f, expect);
    }

    #[test]
    fn super_schur_with_empty_second_alphabet_is_schur() {
        let vars = [x(1), x(2), x(3)];
        for n in 0..=4 {
            for lambda in partitions_of(n) {
                assert_eq!(super_schur(&lambda, &vars, &[]), schur(&lambda, &vars));
            }
        }
    }

    #[test]
    fn super_schur_is_symmetric_in_each_alphabet() {
        let xs = [x(1), x(2)];
        let ys = [y(1), y(2)];
        let f = super_schur(&pt(&[2, 1]), &xs, &ys);
        assert!(f.is_symmetric_in(&xs));
        assert!(f.is_symmetric_in(&ys));
    }

    #[test]
    fn schur_expand_rejects_asymmetric_and_foreign_input() {
        let vars = [x(1), x(2)];
        assert!(matches!(
            schur_expand(&pv(x(1)), &vars),
            Err(crate::error::Error::InvalidArgument(_))
        ));
        assert!(matches!(
            schur_expand(&pv(y(1)), &vars),
            Err(crate::error::Error::InvalidArgument(_))
        ));
        assert_eq!(schur_expand(&Poly::zero(), &vars).unwrap(), BTreeMap::new());
    }

    proptest! {
        #[test]
        fn schur_expand_roundtrip(coeffs in prop::collection::vec(-3i64..4, 8)) {
            let vars = [x(1), x(2), x(3)];
            let mut shapes = Vec::new();
            for n in 0..=3u32 {
                for lambda in partitions_of(n) {
                    if lambda.fits_in(3, 3) {
                        shapes.push(lambda);
                    }
                }
            }
            let mut f = Poly::zero();
            let mut expect: BTreeMap<Partition, i64> = BTreeMap::new();
            for (lambda, &c) in shapes.iter().zip(coeffs.iter()) {
                if c != 0 {
                    f += &schur(lambda, &vars).scale(c);
                    expect.insert(lambda.clone(), c);
                }
            }
            prop_assert_eq!(schur_expand(&f, &vars).unwrap(), expect);
        }
    }
}
