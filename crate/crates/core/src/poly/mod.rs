//! Exact multivariate polynomials over `QQ` or `F_p`.
//!
//! A [`Polynomial`] keeps its terms strictly decreasing in the ring's monomial
//! order with no zero coefficients, so structural equality is mathematical
//! equality.

mod field;
mod parse;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

pub use field::{Field, FieldElem};
pub use parse::parse_polynomial;
pub(crate) use parse::{parse_poly_at, parse_ring_body, Cursor};

use crate::error::{Error, Result};

/// Exponent vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self | other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Indices of variables with positive exponent.
    pub fn support(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn is_squarefree(&self) -> bool {
        self.0.iter().all(|&e| e <= 1)
    }

    pub(crate) fn extend(&self, extra: usize) -> Monomial {
        let mut e = self.0.clone();
        e.extend(std::iter::repeat_n(0, extra));
        Monomial(e)
    }

    pub(crate) fn truncate(&self, nvars: usize) -> Monomial {
        Monomial(self.0[..nvars].to_vec())
    }
}

/// Global monomial orders. `Elimination` ranks the trailing `tail` variables
/// first (graded reverse lexicographic within the block) and breaks ties by
/// grevlex on the leading variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Lex,
    GrevLex,
    Elimination { tail: usize },
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            MonomialOrder::Lex => a.0.cmp(&b.0),
            MonomialOrder::GrevLex => grevlex(&a.0, &b.0),
            MonomialOrder::Elimination { tail } => {
                let split = a.0.len() - tail;
                grevlex(&a.0[split..], &b.0[split..])
                    .then_with(|| grevlex(&a.0[..split], &b.0[..split]))
            }
        }
    }
}

fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonomialOrder::Lex => write!(f, "lex"),
            MonomialOrder::GrevLex => write!(f, "grevlex"),
            MonomialOrder::Elimination { tail } => write!(f, "elim({tail})"),
        }
    }
}

/// Size guard applied to every intermediate polynomial in Gröbner computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_degree: u32,
    pub max_terms: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_degree: 256,
            max_terms: 50_000,
        }
    }
}

#[derive(Debug)]
struct RingData {
    field: Field,
    vars: Vec<String>,
    order: MonomialOrder,
    limits: Limits,
}

/// Polynomial ring `k[vars]` with a fixed monomial order. Cheap to clone.
#[derive(Clone, Debug)]
pub struct PolyRing(Arc<RingData>);

impl PartialEq for PolyRing {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.field == other.0.field
                && self.0.order == other.0.order
                && self.0.vars == other.0.vars)
    }
}

impl Eq for PolyRing {}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl PolyRing {
    pub fn new(field: Field, vars: Vec<String>, order: MonomialOrder) -> Result<Self> {
        Self::with_limits(field, vars, order, Limits::default())
    }

    pub fn with_limits(
        field: Field,
        vars: Vec<String>,
        order: MonomialOrder,
        limits: Limits,
    ) -> Result<Self> {
        if vars.is_empty() {
            return Err(Error::InvalidRing("no variables".into()));
        }
        for (i, v) in vars.iter().enumerate() {
            if !is_identifier(v) {
                return Err(Error::InvalidRing(format!("invalid variable name `{v}`")));
            }
            if vars[..i].contains(v) {
                return Err(Error::InvalidRing(format!("duplicate variable `{v}`")));
            }
        }
        if let Field::Prime(p) = field {
            Field::prime(p)?;
        }
        if let MonomialOrder::Elimination { tail } = order {
            if tail == 0 || tail >= vars.len() {
                return Err(Error::InvalidRing("elimination block out of range".into()));
            }
        }
        Ok(PolyRing(Arc::new(RingData {
            field,
            vars,
            order,
            limits,
        })))
    }

    /// Parses `QQ[x,y] grevlex`, `FP(7)[a, b] order lex`, ...
    pub fn parse_spec(spec: &str) -> Result<Self> {
        parse::parse_ring_spec(spec)
    }

    pub fn field(&self) -> Field {
        self.0.field
    }

    pub fn vars(&self) -> &[String] {
        &self.0.vars
    }

    pub fn nvars(&self) -> usize {
        self.0.vars.len()
    }

    pub fn order(&self) -> MonomialOrder {
        self.0.order
    }

    pub fn limits(&self) -> Limits {
        self.0.limits
    }

    /// Krull dimension, i.e. the number of variables.
    pub fn dim(&self) -> usize {
        self.nvars()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.0.vars.iter().position(|v| v == name)
    }

    pub fn with_new_limits(&self, limits: Limits) -> PolyRing {
        PolyRing(Arc::new(RingData {
            field: self.0.field,
            vars: self.0.vars.clone(),
            order: self.0.order,
            limits,
        }))
    }

    pub fn with_order(&self, order: MonomialOrder) -> Result<PolyRing> {
        Self::with_limits(self.0.field, self.0.vars.clone(), order, self.0.limits)
    }

    /// Appends `extra` fresh variables (named `_t0`, `_t1`, ...) under `order`.
    pub(crate) fn extend(&self, extra: usize, order: MonomialOrder) -> PolyRing {
        let mut vars = self.0.vars.clone();
        let mut k = 0;
        while vars.len() < self.nvars() + extra {
            let name = format!("_t{k}");
            if !vars.contains(&name) {
                vars.push(name);
            }
            k += 1;
        }
        Self::with_limits(self.0.field, vars, order, self.0.limits).expect("extended ring is valid")
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial {
            ring: self.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(&self) -> Polynomial {
        self.constant(self.field().one())
    }

    pub fn constant(&self, c: FieldElem) -> Polynomial {
        self.term(Monomial::one(self.nvars()), c)
    }

    pub fn var(&self, i: usize) -> Polynomial {
        self.term(Monomial::var(self.nvars(), i), self.field().one())
    }

    pub fn term(&self, m: Monomial, c: FieldElem) -> Polynomial {
        assert_eq!(m.nvars(), self.nvars());
        let terms = if c.is_zero() { Vec::new() } else { vec![(m, c)] };
        Polynomial {
            ring: self.clone(),
            terms,
        }
    }

    pub fn monomial(&self, m: Monomial) -> Polynomial {
        self.term(m, self.field().one())
    }

    pub fn parse(&self, src: &str) -> Result<Polynomial> {
        parse_polynomial(src, self)
    }
}

impl fmt::Display for PolyRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}] {}", self.0.field, self.0.vars.join(", "), self.0.order)
    }
}

pub type Term = (Monomial, FieldElem);

/// Polynomial in canonical form: terms strictly decreasing, no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    ring: PolyRing,
    terms: Vec<Term>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// Checked arithmetic entry point: errors on operands from different rings.
pub fn poly_arithmetic(lhs: &Polynomial, rhs: &Polynomial, op: ArithOp) -> Result<Polynomial> {
    if lhs.ring != rhs.ring {
        return Err(Error::RingMismatch);
    }
    Ok(match op {
        ArithOp::Add => lhs + rhs,
        ArithOp::Sub => lhs - rhs,
        ArithOp::Mul => lhs * rhs,
    })
}

impl Polynomial {
    /// Builds a canonical polynomial from arbitrary terms (any order, repeats allowed).
    pub fn from_terms(ring: &PolyRing, mut terms: Vec<Term>) -> Polynomial {
        let order = ring.order();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = lc.add(&c),
                _ => out.push((m, c)),
            }
            if out.last().is_some_and(|(_, c)| c.is_zero()) {
                out.pop();
            }
        }
        Polynomial {
            ring: ring.clone(),
            terms: out,
        }
    }

    pub(crate) fn from_sorted_terms(ring: &PolyRing, terms: Vec<Term>) -> Polynomial {
        debug_assert!(terms
            .windows(2)
            .all(|w| ring.order().cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Nonzero constant.
    pub fn is_unit(&self) -> bool {
        !self.is_zero() && self.is_constant()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.iter().map(|(m, _)| m.degree());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn leading_term(&self) -> Result<(&Monomial, &FieldElem)> {
        self.terms
            .first()
            .map(|(m, c)| (m, c))
            .ok_or(Error::ZeroPolynomial)
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn leading_coefficient(&self) -> Option<&FieldElem> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn scale(&self, c: &FieldElem) -> Polynomial {
        if c.is_zero() {
            return self.ring.zero();
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a.mul(c))).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &FieldElem) -> Polynomial {
        if c.is_zero() {
            return self.ring.zero();
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(n, a)| (n.mul(m), a.mul(c)))
                .collect(),
        }
    }

    pub fn monic(&self) -> Polynomial {
        match self.leading_coefficient() {
            None => self.clone(),
            Some(c) if c.is_one() => self.clone(),
            Some(c) => self.scale(&c.inv().expect("nonzero")),
        }
    }

    /// Exact division; `None` if `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        let (dm, dc) = divisor.leading_term().ok()?;
        let dc_inv = dc.inv()?;
        let mut rem = self.clone();
        let mut quotient = Vec::new();
        while let Some((m, c)) = rem.terms.first() {
            if !dm.divides(m) {
                return None;
            }
            let qm = dm.quotient_of(m);
            let qc = c.mul(&dc_inv);
            rem = &rem - &divisor.mul_term(&qm, &qc);
            quotient.push((qm, qc));
        }
        Some(Polynomial::from_sorted_terms(&self.ring, quotient))
    }

    /// Embeds into `target`, a ring with the same leading variables.
    pub(crate) fn embed(&self, target: &PolyRing) -> Polynomial {
        let extra = target.nvars() - self.ring.nvars();
        Polynomial::from_terms(
            target,
            self.terms.iter().map(|(m, c)| (m.extend(extra), c.clone())).collect(),
        )
    }

    /// Restricts to `target` (a prefix of the variables); `None` if a dropped variable occurs.
    pub(crate) fn restrict(&self, target: &PolyRing) -> Option<Polynomial> {
        let n = target.nvars();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            if m.exponents()[n..].iter().any(|&e| e > 0) {
                return None;
            }
            terms.push((m.truncate(n), c.clone()));
        }
        Some(Polynomial::from_terms(target, terms))
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut acc = self.ring.one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    fn merge(&self, rhs: &Polynomial, negate: bool) -> Polynomial {
        let order = self.ring.order();
        let (a, b) = (&self.terms, &rhs.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match order.cmp(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { b[j].1.neg() } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate {
                        a[i].1.sub(&b[j].1)
                    } else {
                        a[i].1.add(&b[j].1)
                    };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| {
            (m.clone(), if negate { c.neg() } else { c.clone() })
        }));
        Polynomial {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    /// Formats with explicit variable names (used for rings with hidden variables).
    fn fmt_terms(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative_repr();
            let abs = if neg { c.neg() } else { c.clone() };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mut parts: Vec<String> = Vec::new();
            if !abs.is_one() || m.is_one() {
                parts.push(abs.to_string());
            }
            for (i, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => parts.push(self.ring.vars()[i].clone()),
                    _ => parts.push(format!("{}^{}", self.ring.vars()[i], e)),
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_terms(f)
    }
}

// Operator impls panic on mixed rings; use `poly_arithmetic` for a checked variant.
impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        assert!(self.ring == rhs.ring, "ring mismatch");
        self.merge(rhs, false)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        assert!(self.ring == rhs.ring, "ring mismatch");
        self.merge(rhs, true)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert!(self.ring == rhs.ring, "ring mismatch");
        let mut terms = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for (m, a) in &self.terms {
            for (n, b) in &rhs.terms {
                terms.push((m.mul(n), a.mul(b)));
            }
        }
        Polynomial::from_terms(&self.ring, terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(vars: &[&str], order: MonomialOrder) -> PolyRing {
        PolyRing::new(
            Field::Rational,
            vars.iter().map(|s| s.to_string()).collect(),
            order,
        )
        .unwrap()
    }

    #[test]
    fn sum_and_product() {
        let r = ring(&["x", "y"], MonomialOrder::GrevLex);
        let a = r.parse("x + y").unwrap();
        let b = r.parse("x - y").unwrap();
        assert_eq!((&a + &b).to_string(), "2*x");
        assert_eq!((&b * &a).to_string(), "x^2 - y^2");
        assert!((&a - &a).is_zero());
    }

    #[test]
    fn leading_terms_under_each_order() {
        let g = ring(&["x", "y"], MonomialOrder::GrevLex);
        let l = ring(&["x", "y"], MonomialOrder::Lex);
        let lt = |r: &PolyRing, s: &str| {
            let p = r.parse(s).unwrap();
            let (m, _) = p.leading_term().unwrap();
            r.monomial(m.clone()).to_string()
        };
        assert_eq!(lt(&g, "x^2 + y"), "x^2");
        assert_eq!(lt(&l, "x + y^2"), "x");
        assert_eq!(lt(&g, "x + y^2"), "y^2");
        assert!(matches!(
            g.zero().leading_term(),
            Err(Error::ZeroPolynomial)
        ));
    }

    #[test]
    fn mixed_rings_are_rejected() {
        let r = ring(&["x", "y"], MonomialOrder::GrevLex);
        let s = ring(&["x", "z"], MonomialOrder::GrevLex);
        let err = poly_arithmetic(&r.var(0), &s.var(0), ArithOp::Add).unwrap_err();
        assert!(matches!(err, Error::RingMismatch));
    }

    #[test]
    fn exact_division() {
        let r = ring(&["x", "y"], MonomialOrder::GrevLex);
        let p = r.parse("x^2 - y^2").unwrap();
        let d = r.parse("x + y").unwrap();
        assert_eq!(p.div_exact(&d).unwrap().to_string(), "x - y");
        assert!(r.parse("x^2 + y").unwrap().div_exact(&d).is_none());
    }

    #[test]
    fn ring_validation() {
        assert!(PolyRing::new(Field::Rational, vec![], MonomialOrder::Lex).is_err());
        assert!(PolyRing::new(
            Field::Rational,
            vec!["x".into(), "x".into()],
            MonomialOrder::Lex
        )
        .is_err());
    }

    fn monomials_up_to(nvars: usize, deg: u32) -> Vec<Monomial> {
        let mut out = vec![Monomial::one(nvars)];
        for _ in 0..deg {
            let mut next = out.clone();
            for m in &out {
                for i in 0..nvars {
                    next.push(m.mul(&Monomial::var(nvars, i)));
                }
            }
            next.sort();
            next.dedup();
            out = next;
        }
        out
    }

    #[test]
    fn order_axioms() {
        let ms = monomials_up_to(3, 4);
        for order in [
            MonomialOrder::Lex,
            MonomialOrder::GrevLex,
            MonomialOrder::Elimination { tail: 1 },
        ] {
            let one = Monomial::one(3);
            for a in &ms {
                assert_ne!(order.cmp(a, &one), Ordering::Less);
                for b in &ms {
                    let ab = order.cmp(a, b);
                    assert_eq!(ab == Ordering::Equal, a == b);
                    assert_eq!(ab, order.cmp(b, a).reverse());
                    for c in ms.iter().take(10) {
                        assert_eq!(order.cmp(&a.mul(c), &b.mul(c)), ab);
                    }
                }
            }
        }
    }
}
