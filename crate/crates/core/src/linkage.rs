//! Linkage of ideals over a cyclic module `M = R/J`: regular sequences,
//! module colons, the linkage predicates, the double-colon set and `a′`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::homalg::{grade_via_ext, pd_via_resolution};
use crate::ideal_ops::{ideal_equal, ideal_quotient, intersect_all, intersect_ideals, radical_membership};
use crate::monomial::{associated_primes_monomial, cd_monomial, krull_dim, MonomialPrime};
use crate::poly::{PolyRing, Polynomial};

/// `M = R/J` with `J` proper.
#[derive(Clone, Debug)]
pub struct CyclicModule {
    j: Ideal,
}

impl CyclicModule {
    pub fn new(j: Ideal) -> Result<Self> {
        if j.is_unit()? {
            return Err(Error::UnitIdeal);
        }
        Ok(CyclicModule { j })
    }

    /// `M = R`.
    pub fn free(ring: &PolyRing) -> Self {
        CyclicModule {
            j: Ideal::zero(ring),
        }
    }

    pub fn ring(&self) -> &PolyRing {
        self.j.ring()
    }

    /// The defining ideal, which is also `Ann M`.
    pub fn ideal(&self) -> &Ideal {
        &self.j
    }

    pub fn is_free(&self) -> bool {
        self.j.is_zero()
    }

    /// `a + J`, the ideal with `aM = (a + J)/J`.
    pub fn extend(&self, a: &Ideal) -> Result<Ideal> {
        a.sum(&self.j)
    }

    pub fn dim(&self) -> Result<usize> {
        krull_dim(&self.j)
    }
}

impl fmt::Display for CyclicModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.j.is_zero() {
            write!(f, "R")
        } else {
            write!(f, "R/{}", self.j)
        }
    }
}

fn same_ring(ring: &PolyRing, m: &CyclicModule) -> Result<()> {
    if ring != m.ring() {
        Err(Error::RingMismatch)
    } else {
        Ok(())
    }
}

/// Whether `xs` is an `M`-regular sequence in the given order.
pub fn is_regular_sequence(xs: &[Polynomial], m: &CyclicModule) -> Result<bool> {
    if xs.is_empty() {
        return Err(Error::InvalidArgument("empty sequence".into()));
    }
    let ring = m.ring();
    for x in xs {
        same_ring(x.ring(), m)?;
    }
    let mut prefix = m.ideal().clone();
    for x in xs {
        if x.is_zero() {
            return Ok(false);
        }
        let colon = ideal_quotient(&prefix, &Ideal::new(ring, vec![x.clone()])?)?;
        if !ideal_equal(&colon, &prefix)? {
            return Ok(false);
        }
        prefix = prefix.with_generator(x.clone())?;
    }
    prefix.is_proper()
}

/// A verified `M`-regular sequence `x_1, ..., x_t` and the ideal it generates.
#[derive(Clone, Debug)]
pub struct RegularSequenceWitness {
    elements: Vec<Polynomial>,
    ideal: Ideal,
}

impl RegularSequenceWitness {
    /// Checks regularity; the empty sequence (`I = 0`, `t = 0`) is allowed.
    pub fn new(elements: Vec<Polynomial>, m: &CyclicModule) -> Result<Self> {
        let ideal = Ideal::new(m.ring(), elements.clone())?;
        if !elements.is_empty() && !is_regular_sequence(&elements, m)? {
            let shown: Vec<String> = elements.iter().map(|e| e.to_string()).collect();
            return Err(Error::InvalidWitness(format!(
                "({}) is not {}-regular",
                shown.join(", "),
                m
            )));
        }
        Ok(RegularSequenceWitness { elements, ideal })
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }
}

/// `q = (I + J) : a`, so that `IM :_M a = qM`.
pub fn module_colon(i: &Ideal, a: &Ideal, m: &CyclicModule) -> Result<Ideal> {
    same_ring(i.ring(), m)?;
    same_ring(a.ring(), m)?;
    if a.is_zero() {
        return Err(Error::QuotientByZero);
    }
    ideal_quotient(&m.extend(i)?, a)
}

fn check_pair(a: &Ideal, b: &Ideal, w: &RegularSequenceWitness, m: &CyclicModule) -> Result<()> {
    for x in [a, b] {
        same_ring(x.ring(), m)?;
        let ext = m.extend(x)?;
        if ext.is_unit()? {
            return Err(Error::Precondition(format!("{x} + Ann M is the unit ideal")));
        }
        if !ext.contains_ideal(w.ideal())? {
            return Err(Error::Precondition(format!(
                "{} is not contained in {x} modulo Ann M",
                w.ideal()
            )));
        }
    }
    Ok(())
}

/// `a ~ b` by `I` over `M`: `(I+J):a = b+J` and `(I+J):b = a+J`.
pub fn is_linked(a: &Ideal, b: &Ideal, w: &RegularSequenceWitness, m: &CyclicModule) -> Result<bool> {
    check_pair(a, b, w, m)?;
    let i = w.ideal();
    Ok(ideal_equal(&module_colon(i, a, m)?, &m.extend(b)?)?
        && ideal_equal(&module_colon(i, b, m)?, &m.extend(a)?)?)
}

/// Linked, and additionally `(a+J) ∩ (b+J) = I+J`.
pub fn is_geometrically_linked(
    a: &Ideal,
    b: &Ideal,
    w: &RegularSequenceWitness,
    m: &CyclicModule,
) -> Result<bool> {
    if !is_linked(a, b, w, m)? {
        return Ok(false);
    }
    let meet = intersect_ideals(&m.extend(a)?, &m.extend(b)?)?;
    ideal_equal(&meet, &m.extend(w.ideal())?)
}

/// The only possible partner of `a`: `b = (I+J):a`.
pub fn candidate_link(a: &Ideal, w: &RegularSequenceWitness, m: &CyclicModule) -> Result<Ideal> {
    same_ring(a.ring(), m)?;
    if !m.extend(a)?.contains_ideal(w.ideal())? {
        return Err(Error::Precondition(format!(
            "{} is not contained in {a} modulo Ann M",
            w.ideal()
        )));
    }
    module_colon(w.ideal(), a, m)
}

/// Membership in the double-colon set: `(I+J) : ((I+J) : a) = a + J`.
pub fn s_membership(a: &Ideal, w: &RegularSequenceWitness, m: &CyclicModule) -> Result<bool> {
    same_ring(a.ring(), m)?;
    let ij = m.extend(w.ideal())?;
    let aj = m.extend(a)?;
    if !aj.contains_ideal(&ij)? {
        return Err(Error::Precondition(format!("{} is not contained in {a}", w.ideal())));
    }
    if ideal_equal(&aj, &ij)? {
        return Err(Error::Precondition("I = a: the containment must be strict".into()));
    }
    let inner = ideal_quotient(&ij, &aj)?;
    if inner.is_zero() {
        return Ok(false);
    }
    ideal_equal(&ideal_quotient(&ij, &inner)?, &aj)
}

/// Associated primes of `M/IM` that contain `a`.
pub fn lambda_primes(
    a: &Ideal,
    w: &RegularSequenceWitness,
    m: &CyclicModule,
) -> Result<Vec<MonomialPrime>> {
    let ij = m.extend(w.ideal())?;
    if !ij.is_monomial()? {
        return Err(Error::NotMonomial);
    }
    let ring = m.ring();
    let mut out = Vec::new();
    for p in associated_primes_monomial(&ij)?.all {
        if p.to_ideal(ring).contains_ideal(a)? {
            out.push(p);
        }
    }
    Ok(out)
}

/// `a′ = ⋂ {p ∈ Ass(M/IM) : a ⊆ p}`, requiring `grade_M a = t`.
pub fn aprime_construct(a: &Ideal, w: &RegularSequenceWitness, m: &CyclicModule) -> Result<Ideal> {
    same_ring(a.ring(), m)?;
    let ij = m.extend(w.ideal())?;
    if !ij.is_monomial()? {
        return Err(Error::NotMonomial);
    }
    let grade = grade_via_ext(a, m)?;
    if grade != w.len() {
        return Err(Error::Precondition(format!(
            "grade_M a = {grade} differs from the sequence length {}",
            w.len()
        )));
    }
    let lambda = lambda_primes(a, w, m)?;
    if lambda.is_empty() {
        return Err(Error::Precondition("no associated prime of M/IM contains a".into()));
    }
    let ring = m.ring();
    let primes: Vec<Ideal> = lambda.iter().map(|p| p.to_ideal(ring)).collect();
    intersect_all(ring, &primes)
}

/// `cd((f), M)`: 0 when `f` is nilpotent on `M`, otherwise 1.
pub fn cd_principal_cyclic(f: &Polynomial, m: &CyclicModule) -> Result<usize> {
    same_ring(f.ring(), m)?;
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if radical_membership(f, m.ideal())? {
        return Ok(0);
    }
    if m.ideal().with_generator(f.clone())?.is_unit()? {
        return Err(Error::Precondition(format!("{f} acts invertibly on M")));
    }
    Ok(1)
}

/// Cohomological dimension: exact, or bracketed by `[lo, hi]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CdValue {
    Exact { value: usize },
    Interval { lo: usize, hi: usize },
}

impl CdValue {
    pub fn exact(&self) -> Option<usize> {
        match self {
            CdValue::Exact { value } => Some(*value),
            CdValue::Interval { .. } => None,
        }
    }

    pub fn lower(&self) -> usize {
        match self {
            CdValue::Exact { value } => *value,
            CdValue::Interval { lo, .. } => *lo,
        }
    }

    pub fn upper(&self) -> usize {
        match self {
            CdValue::Exact { value } => *value,
            CdValue::Interval { hi, .. } => *hi,
        }
    }
}

impl fmt::Display for CdValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CdValue::Exact { value } => write!(f, "{value}"),
            CdValue::Interval { lo, hi } => write!(f, "[{lo}, {hi}]"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantRecord {
    pub grade: usize,
    pub cd: CdValue,
    pub pd: Option<usize>,
    pub dim: usize,
}

fn is_maximal_homogeneous(ideal: &Ideal) -> Result<bool> {
    let ring = ideal.ring();
    for i in 0..ring.nvars() {
        if !radical_membership(&ring.var(i), ideal)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Exact `cd(a, M)` when one of the oracles applies.
///
/// Oracles, in order: `a ⊆ √J` gives 0; monomial `a` over `M = R` uses
/// Hochster's formula; principal `a` uses the nilpotence rule; graded data with
/// `√(a+J)` maximal gives `dim M`; and `grade = upper bound` pins the value.
pub fn cd_exact(a: &Ideal, m: &CyclicModule) -> Result<Option<usize>> {
    let rec = cd_bounds(a, m)?;
    Ok(rec.cd.exact())
}

/// Grade, cohomological dimension (exact or bounds), pd and `dim M`.
pub fn cd_bounds(a: &Ideal, m: &CyclicModule) -> Result<InvariantRecord> {
    same_ring(a.ring(), m)?;
    if a.is_unit()? {
        return Err(Error::UnitIdeal);
    }
    let aj = m.extend(a)?;
    if aj.is_unit()? {
        return Err(Error::GradeUndefined);
    }
    let grade = grade_via_ext(a, m)?;
    let dim = m.dim()?;
    let homogeneous = a.is_homogeneous()?;
    let pd = if homogeneous { Some(pd_via_resolution(a)?) } else { None };
    let gens = a.minimal_generators()?;

    let mut exact = None;
    if gens.iter().try_fold(true, |acc, g| -> Result<bool> {
        Ok(acc && radical_membership(g, m.ideal())?)
    })? {
        exact = Some(0);
    } else if m.is_free() && a.is_monomial()? {
        exact = Some(cd_monomial(a)?);
    } else if gens.len() == 1 {
        exact = Some(cd_principal_cyclic(&gens[0], m)?);
    } else if homogeneous && m.ideal().is_homogeneous()? && is_maximal_homogeneous(&aj)? {
        exact = Some(dim);
    }
    let hi = gens.len().min(dim);
    let cd = match exact {
        Some(value) => CdValue::Exact { value },
        None if grade >= hi => CdValue::Exact { value: grade },
        None => CdValue::Interval { lo: grade, hi },
    };
    Ok(InvariantRecord { grade, cd, pd, dim })
}

/// One linkage datum: `M`, `a`, optional `b`, and `I` with its regular sequence.
#[derive(Clone, Debug)]
pub struct LinkageInstance {
    pub module: CyclicModule,
    pub a: Ideal,
    pub b: Option<Ideal>,
    pub witness: RegularSequenceWitness,
    pub expect_geometric: Option<bool>,
    pub expect_selflinked: Option<bool>,
}

impl LinkageInstance {
    /// Checks `I ⊆ a (, b)` modulo `J` and properness of `a + J` (and `b + J`).
    pub fn new(
        module: CyclicModule,
        a: Ideal,
        b: Option<Ideal>,
        witness: RegularSequenceWitness,
    ) -> Result<Self> {
        let partner = b.clone().unwrap_or_else(|| a.clone());
        check_pair(&a, &partner, &witness, &module)?;
        Ok(LinkageInstance {
            module,
            a,
            b,
            witness,
            expect_geometric: None,
            expect_selflinked: None,
        })
    }

    pub fn ring(&self) -> &PolyRing {
        self.module.ring()
    }

    pub fn i(&self) -> &Ideal {
        self.witness.ideal()
    }

    pub fn t(&self) -> usize {
        self.witness.len()
    }

    /// The given `b`, or the candidate link `(I+J):a`.
    pub fn partner(&self) -> Result<Ideal> {
        match &self.b {
            Some(b) => Ok(b.clone()),
            None => candidate_link(&self.a, &self.witness, &self.module),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{Field, MonomialOrder};

    fn ring(vars: &[&str]) -> PolyRing {
        PolyRing::new(
            Field::Rational,
            vars.iter().map(|s| s.to_string()).collect(),
            MonomialOrder::GrevLex,
        )
        .unwrap()
    }

    fn r2() -> PolyRing {
        ring(&["x", "y"])
    }

    fn r4() -> PolyRing {
        ring(&["x1", "x2", "x3", "x4"])
    }

    fn id(r: &PolyRing, s: &str) -> Ideal {
        Ideal::parse(r, s).unwrap()
    }

    fn polys(r: &PolyRing, s: &str) -> Vec<Polynomial> {
        id(r, s).generators().to_vec()
    }

    fn wit(r: &PolyRing, s: &str, m: &CyclicModule) -> RegularSequenceWitness {
        let xs = if s == "0" { Vec::new() } else { polys(r, s) };
        RegularSequenceWitness::new(xs, m).unwrap()
    }

    fn quotient(r: &PolyRing, s: &str) -> CyclicModule {
        CyclicModule::new(id(r, s)).unwrap()
    }

    #[test]
    fn regular_sequences() {
        let r = r2();
        let free = CyclicModule::free(&r);
        assert!(is_regular_sequence(&polys(&r, "x, y"), &free).unwrap());
        let x = r.parse("x").unwrap();
        assert!(!is_regular_sequence(&[x.clone(), x], &free).unwrap());
        assert!(!is_regular_sequence(&polys(&r, "x*y"), &quotient(&r, "x")).unwrap());
        assert!(matches!(
            RegularSequenceWitness::new(polys(&r, "x*y"), &quotient(&r, "x")),
            Err(Error::InvalidWitness(_))
        ));
    }

    #[test]
    fn colons() {
        let r = r2();
        let free = CyclicModule::free(&r);
        let eq = |a: &Ideal, b: &Ideal| ideal_equal(a, b).unwrap();
        assert!(eq(&module_colon(&id(&r, "x*y"), &id(&r, "x"), &free).unwrap(), &id(&r, "y")));
        let m = quotient(&r, "x*y");
        assert!(eq(&module_colon(&id(&r, "0"), &id(&r, "x"), &m).unwrap(), &id(&r, "y")));
        assert!(module_colon(&id(&r, "x"), &id(&r, "x"), &free).unwrap().is_unit().unwrap());
        assert!(matches!(
            module_colon(&id(&r, "x"), &id(&r, "0"), &free),
            Err(Error::QuotientByZero)
        ));
    }

    #[test]
    fn linkage_predicates() {
        let r = r2();
        let free = CyclicModule::free(&r);
        let w = wit(&r, "x*y", &free);
        assert!(is_linked(&id(&r, "x"), &id(&r, "y"), &w, &free).unwrap());
        assert!(is_geometrically_linked(&id(&r, "x"), &id(&r, "y"), &w, &free).unwrap());
        let w = wit(&r, "x^2, y", &free);
        let m_ideal = id(&r, "x, y");
        assert!(is_linked(&m_ideal, &m_ideal, &w, &free).unwrap());
        assert!(!is_geometrically_linked(&m_ideal, &m_ideal, &w, &free).unwrap());
        let m = quotient(&r, "x*y");
        let w0 = wit(&r, "0", &m);
        assert!(is_geometrically_linked(&id(&r, "x"), &id(&r, "y"), &w0, &m).unwrap());

        let r4 = r4();
        let free4 = CyclicModule::free(&r4);
        let w = wit(&r4, "x1*x3, x2*x4", &free4);
        assert!(!is_linked(&id(&r4, "x1, x2"), &id(&r4, "x3, x4"), &w, &free4).unwrap());
    }

    #[test]
    fn candidate_links() {
        let r4 = r4();
        let free4 = CyclicModule::free(&r4);
        let a = id(&r4, "x1*x3, x1*x4, x2*x3, x2*x4");
        let w = wit(&r4, "x1*x3, x2*x4", &free4);
        let b = candidate_link(&a, &w, &free4).unwrap();
        assert!(ideal_equal(&b, &id(&r4, "x1*x2, x1*x3, x2*x4, x3*x4")).unwrap());
        assert!(is_geometrically_linked(&a, &b, &w, &free4).unwrap());

        let r = r2();
        let free = CyclicModule::free(&r);
        let b = candidate_link(&id(&r, "x, y"), &wit(&r, "x^2, y", &free), &free).unwrap();
        assert!(ideal_equal(&b, &id(&r, "x, y")).unwrap());
        let b = candidate_link(&id(&r, "x"), &wit(&r, "x*y", &free), &free).unwrap();
        assert!(ideal_equal(&b, &id(&r, "y")).unwrap());
    }

    #[test]
    fn double_colon_set() {
        let r = r2();
        let free = CyclicModule::free(&r);
        assert!(s_membership(&id(&r, "x, y"), &wit(&r, "x^2, y", &free), &free).unwrap());
        assert!(s_membership(&id(&r, "x"), &wit(&r, "x*y", &free), &free).unwrap());
        assert!(!s_membership(&id(&r, "x, y^2"), &wit(&r, "x*y", &free), &free).unwrap());
        assert!(matches!(
            s_membership(&id(&r, "x*y"), &wit(&r, "x*y", &free), &free),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn aprime() {
        let r4 = r4();
        let free4 = CyclicModule::free(&r4);
        let a = id(&r4, "x1*x3, x1*x4, x2*x3, x2*x4");
        let ap = aprime_construct(&a, &wit(&r4, "x1*x3, x2*x4", &free4), &free4).unwrap();
        assert!(ideal_equal(&ap, &a).unwrap());
        let ap2 = aprime_construct(&a, &wit(&r4, "x1*x4, x2*x3", &free4), &free4).unwrap();
        assert!(ideal_equal(&ap, &ap2).unwrap());

        let r = r2();
        let free = CyclicModule::free(&r);
        let ap = aprime_construct(&id(&r, "x"), &wit(&r, "x*y", &free), &free).unwrap();
        assert!(ideal_equal(&ap, &id(&r, "x")).unwrap());
        let ap = aprime_construct(&id(&r, "x, y"), &wit(&r, "x^2, y", &free), &free).unwrap();
        assert!(ideal_equal(&ap, &id(&r, "x, y")).unwrap());
    }

    #[test]
    fn principal_cd() {
        let r = r2();
        let x = r.parse("x").unwrap();
        assert_eq!(cd_principal_cyclic(&x, &quotient(&r, "x*y")).unwrap(), 1);
        assert_eq!(cd_principal_cyclic(&x, &quotient(&r, "x^2")).unwrap(), 0);
        assert_eq!(cd_principal_cyclic(&x, &CyclicModule::free(&r)).unwrap(), 1);
        assert!(matches!(
            cd_principal_cyclic(&r.zero(), &CyclicModule::free(&r)),
            Err(Error::ZeroPolynomial)
        ));
    }

    #[test]
    fn bounds() {
        let r4 = r4();
        let rec = cd_bounds(&id(&r4, "x1*x3, x1*x4, x2*x3, x2*x4"), &CyclicModule::free(&r4)).unwrap();
        assert_eq!(rec.grade, 2);
        assert_eq!(rec.cd, CdValue::Exact { value: 3 });
        assert_eq!(rec.pd, Some(3));
        assert_eq!(rec.dim, 4);
        let r = r2();
        let rec = cd_bounds(&id(&r, "x^2 - y"), &CyclicModule::free(&r)).unwrap();
        assert_eq!((rec.grade, rec.cd), (1, CdValue::Exact { value: 1 }));
        assert!(matches!(
            cd_bounds(&id(&r, "1"), &CyclicModule::free(&r)),
            Err(Error::UnitIdeal)
        ));
        let m = quotient(&r, "x*y");
        let rec = cd_bounds(&id(&r, "x, y"), &m).unwrap();
        assert_eq!((rec.grade, rec.cd, rec.dim), (1, CdValue::Exact { value: 1 }, 1));
    }
}
