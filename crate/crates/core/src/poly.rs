//! Sparse exact multivariate polynomials over the integers, in the chern
//! roots x^i_j, the strand variables b_k, and the deformation parameter
//! beta, together with the divided-difference operators that drive all
//! Schubert-polynomial computation. Terms are kept in graded-lex order
//! (degree descending, then lexicographic on the global variable order) so
//! that serialization is deterministic and leading terms are cheap.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};

/// Global variable order: chern roots by (block, index), then strand
/// variables by index, then beta. The derived Ord implements exactly that.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Variable {
    Chern { block: usize, index: usize },
    Strand { index: usize },
    Beta,
}

impl Variable {
    pub fn chern(block: usize, index: usize) -> Self {
        assert!(index >= 1, "chern root index is 1-based");
        Variable::Chern { block, index }
    }

    pub fn strand(index: usize) -> Self {
        assert!(index >= 1, "strand index is 1-based");
        Variable::Strand { index }
    }

    pub fn name(&self) -> String {
        match self {
            Variable::Chern { block, index } => format!("x.{block}.{index}"),
            Variable::Strand { index } => format!("b.{index}"),
            Variable::Beta => "beta".to_string(),
        }
    }

    /// Inverse of name(): "x.i.j", "b.k", or "beta".
    pub fn parse(name: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("unknown variable name {name:?}"));
        if name == "beta" {
            return Ok(Variable::Beta);
        }
        if let Some(rest) = name.strip_prefix("b.") {
            let index: usize = rest.parse().map_err(|_| bad())?;
            if index == 0 {
                return Err(bad());
            }
            return Ok(Variable::strand(index));
        }
        if let Some(rest) = name.strip_prefix("x.") {
            let (block_text, index_text) = rest.split_once('.').ok_or_else(bad)?;
            let block: usize = block_text.parse().map_err(|_| bad())?;
            let index: usize = index_text.parse().map_err(|_| bad())?;
            if index == 0 {
                return Err(bad());
            }
            return Ok(Variable::chern(block, index));
        }
        Err(bad())
    }
}

impl std::fmt::Display for Variable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// Product of variable powers; factors sorted by variable, exponents > 0.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial {
    factors: Vec<(Variable, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(v: Variable) -> Self {
        Monomial { factors: vec![(v, 1)] }
    }

    pub fn from_factors(factors: impl IntoIterator<Item = (Variable, u32)>) -> Self {
        let mut merged: BTreeMap<Variable, u32> = BTreeMap::new();
        for (v, e) in factors {
            if e > 0 {
                *merged.entry(v).or_insert(0) += e;
            }
        }
        Monomial { factors: merged.into_iter().collect() }
    }

    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, v: Variable) -> u32 {
        self.factors
            .binary_search_by(|&(u, _)| u.cmp(&v))
            .map(|i| self.factors[i].1)
            .unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Variable, u32)> + '_ {
        self.factors.iter().copied()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial::from_factors(self.iter().chain(other.iter()))
    }

    /// Copy with the exponent of v replaced by e (dropped when e = 0).
    pub fn with_exponent(&self, v: Variable, e: u32) -> Monomial {
        Monomial::from_factors(
            self.iter().filter(|&(u, _)| u != v).chain(std::iter::once((v, e)).filter(|_| e > 0)),
        )
    }

    fn to_json(&self) -> serde_json::Value {
        let mut map = serde_json::Map::new();
        for (v, e) in self.iter() {
            map.insert(v.name(), serde_json::Value::from(e));
        }
        serde_json::Value::Object(map)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        // Smaller = earlier in output: higher degree first, then the
        // lex-larger monomial (bigger exponent on the earliest variable).
        match other.degree().cmp(&self.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let mut a = self.factors.iter().peekable();
        let mut b = other.factors.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Less,
                (None, Some(_)) => return Ordering::Greater,
                (Some(&&(va, ea)), Some(&&(vb, eb))) => match va.cmp(&vb) {
                    Ordering::Less => return Ordering::Less,
                    Ordering::Greater => return Ordering::Greater,
                    Ordering::Equal => match eb.cmp(&ea) {
                        Ordering::Equal => {
                            a.next();
                            b.next();
                        }
                        ord => return ord,
                    },
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Substitution target for a single variable.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Subst {
    Var(Variable),
    Zero,
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, i64>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        let mut p = Poly::zero();
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn var(v: Variable) -> Self {
        let mut p = Poly::zero();
        p.add_term(Monomial::var(v), 1);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn coefficient(&self, m: &Monomial) -> i64 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    /// First term in the global order: highest degree, lex-dominant.
    pub fn leading(&self) -> Option<(&Monomial, i64)> {
        self.terms.iter().next().map(|(m, &c)| (m, c))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, i64)> + '_ {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn variables(&self) -> std::collections::BTreeSet<Variable> {
        self.terms.keys().flat_map(|m| m.iter().map(|(v, _)| v)).collect()
    }

    pub fn add_term(&mut self, m: Monomial, c: i64) {
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = *e.get() + c;
                if sum == 0 {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn scale(&self, c: i64) -> Poly {
        if c == 0 {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, &a)| (m.clone(), a * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: i64) -> Poly {
        if c == 0 {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(t, &a)| (t.mul(m), a * c)).collect() }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut out = Poly::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Simultaneous substitution; unmapped variables pass through.
    pub fn substitute(&self, map: &HashMap<Variable, Subst>) -> Poly {
        let mut out = Poly::zero();
        'term: for (m, &c) in &self.terms {
            let mut factors = Vec::with_capacity(m.factors.len());
            for (v, e) in m.iter() {
                match map.get(&v) {
                    None => factors.push((v, e)),
                    Some(Subst::Var(u)) => factors.push((*u, e)),
                    Some(Subst::Zero) => continue 'term,
                }
            }
            out.add_term(Monomial::from_factors(factors), c);
        }
        out
    }

    pub fn beta_zero(&self) -> Poly {
        let mut map = HashMap::new();
        map.insert(Variable::Beta, Subst::Zero);
        self.substitute(&map)
    }

    pub fn swap_vars(&self, a: Variable, b: Variable) -> Poly {
        let mut map = HashMap::new();
        map.insert(a, Subst::Var(b));
        map.insert(b, Subst::Var(a));
        self.substitute(&map)
    }

    /// The operator (f - swap(f))/(a - b), computed term by term: each
    /// monomial a^p b^q M with p > q contributes the geometric sum
    /// sum_{t=q}^{p-1} a^t b^{p+q-1-t} M, and the mirror image negated for
    /// p < q, so no polynomial division is ever performed.
    pub fn divided_difference(&self, a: Variable, b: Variable) -> Result<Poly> {
        if a == b {
            return Err(Error::InvalidArgument(format!(
                "divided difference needs distinct variables, got {a} twice"
            )));
        }
        let mut out = Poly::zero();
        for (m, &c) in &self.terms {
            let p = m.exponent(a);
            let q = m.exponent(b);
            if p == q {
                continue;
            }
            let (lo, hi, sign) = if p > q { (q, p, c) } else { (p, q, -c) };
            for t in lo..hi {
                let term = m.with_exponent(a, t).with_exponent(b, p + q - 1 - t);
                out.add_term(term, sign);
            }
        }
        Ok(out)
    }

    /// The beta-deformed operator: divided_difference((1 + beta*b) * f, a, b).
    /// Satisfies pi^2 = -beta*pi and reduces to divided_difference at beta=0.
    pub fn isobaric_difference(&self, a: Variable, b: Variable) -> Result<Poly> {
        let correction = self
            .mul_monomial(&Monomial::var(Variable::Beta).mul(&Monomial::var(b)), 1);
        (self + &correction).divided_difference(a, b)
    }

    /// True iff f is invariant under all permutations of vars, decided by
    /// vanishing of the consecutive divided differences.
    pub fn is_symmetric_in(&self, vars: &[Variable]) -> bool {
        vars.windows(2).all(|w| {
            self.divided_difference(w[0], w[1])
                .expect("distinct consecutive variables")
                .is_zero()
        })
    }

    /// Exact quotient by (1 + beta*y), or None when the division leaves a
    /// remainder. Writing f = sum c_k y^k, the quotient coefficients are
    /// q_0 = c_0, q_k = c_k - beta*q_{k-1}, and exactness is the single
    /// condition c_N = beta*q_{N-1} at the top degree N.
    pub fn exact_quotient_one_plus_beta(&self, y: Variable) -> Option<Poly> {
        if self.is_zero() {
            return Some(Poly::zero());
        }
        let mut parts: BTreeMap<u32, Poly> = BTreeMap::new();
        for (m, &c) in &self.terms {
            let k = m.exponent(y);
            parts.entry(k).or_default().add_term(m.with_exponent(y, 0), c);
        }
        let top = *parts.keys().last().expect("nonzero polynomial");
        if top == 0 {
            return None;
        }
        let beta = Poly::var(Variable::Beta);
        let mut quotient = Poly::zero();
        let mut prev = parts.get(&0).cloned().unwrap_or_default();
        quotient += &prev;
        for k in 1..top {
            let c_k = parts.get(&k).cloned().unwrap_or_default();
            let q_k = &c_k - &(&beta * &prev);
            quotient += &q_k.mul_monomial(&Monomial::from_factors([(y, k)]), 1);
            prev = q_k;
        }
        let c_top = parts.get(&top).cloned().unwrap_or_default();
        if c_top == &beta * &prev {
            Some(quotient)
        } else {
            None
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms
                .iter()
                .map(|(m, &c)| {
                    let mut obj = serde_json::Map::new();
                    obj.insert("coeff".to_string(), serde_json::Value::from(c));
                    obj.insert("monomial".to_string(), m.to_json());
                    serde_json::Value::Object(obj)
                })
                .collect(),
        )
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let terms = v
            .as_array()
            .ok_or_else(|| Error::Parse("polynomial JSON must be an array of terms".to_string()))?;
        let mut out = Poly::zero();
        for term in terms {
            let obj = term
                .as_object()
                .ok_or_else(|| Error::Parse("each term must be an object".to_string()))?;
            let coeff = obj
                .get("coeff")
                .and_then(serde_json::Value::as_i64)
                .ok_or_else(|| Error::Parse("term is missing an integer coeff".to_string()))?;
            let monomial = obj
                .get("monomial")
                .and_then(serde_json::Value::as_object)
                .ok_or_else(|| Error::Parse("term is missing a monomial object".to_string()))?;
            let mut factors = Vec::new();
            for (name, exponent) in monomial {
                let e = exponent
                    .as_u64()
                    .and_then(|e| u32::try_from(e).ok())
                    .filter(|&e| e > 0)
                    .ok_or_else(|| {
                        Error::Parse(format!("exponent of {name} must be a positive integer"))
                    })?;
                factors.push((Variable::parse(name)?, e));
            }
            out.add_term(Monomial::from_factors(factors), coeff);
        }
        Ok(out)
    }
}

impl std::ops::Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl std::ops::AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        for (m, &c) in &rhs.terms {
            self.add_term(m.clone(), c);
        }
    }
}

impl std::ops::Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, &c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl std::ops::Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(-1)
    }
}

impl std::ops::Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let (small, large) = if self.terms.len() <= rhs.terms.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = Poly::zero();
        for (m, &c) in &small.terms {
            for (t, &a) in &large.terms {
                out.add_term(m.mul(t), c * a);
            }
        }
        out
    }
}

impl std::fmt::Display for Poly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms().enumerate() {
            let abs = c.unsigned_abs();
            if idx == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else if c < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let factors: Vec<String> = m
                .iter()
                .map(|(v, e)| if e == 1 { v.name() } else { format!("{}^{}", v.name(), e) })
                .collect();
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else {
                if abs != 1 {
                    write!(f, "{abs}*")?;
                }
                write!(f, "{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}
