//! Intersection, colon, saturation and radical tests.

use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::poly::{MonomialOrder, PolyRing, Polynomial};

fn same_ring(i: &Ideal, j: &Ideal) -> Result<()> {
    if i.ring() != j.ring() {
        Err(Error::RingMismatch)
    } else {
        Ok(())
    }
}

/// `I ∩ J` by eliminating `t` from `t·I + (1 - t)·J`.
pub fn intersect_ideals(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    same_ring(i, j)?;
    let ring = i.ring();
    if i.is_zero() || j.is_zero() {
        return Ok(Ideal::zero(ring));
    }
    let ext = ring.extend(1, MonomialOrder::Elimination { tail: 1 });
    let t = ext.var(ring.nvars());
    let one_minus_t = &ext.one() - &t;
    let mut gens: Vec<Polynomial> = i.generators().iter().map(|f| &f.embed(&ext) * &t).collect();
    gens.extend(j.generators().iter().map(|g| &g.embed(&ext) * &one_minus_t));
    let big = Ideal::new(&ext, gens)?;
    let kept: Vec<Polynomial> = big
        .groebner_basis()?
        .iter()
        .filter_map(|g| g.restrict(ring))
        .collect();
    Ideal::new(ring, kept)
}

/// `I : (f)` computed as `(I ∩ (f)) / f`.
pub fn quotient_by_element(i: &Ideal, f: &Polynomial) -> Result<Ideal> {
    if f.ring() != i.ring() {
        return Err(Error::RingMismatch);
    }
    if f.is_zero() {
        return Err(Error::QuotientByZero);
    }
    let ring = i.ring();
    let principal = Ideal::new(ring, vec![f.clone()])?;
    let meet = intersect_ideals(i, &principal)?;
    let gens = meet
        .generators()
        .iter()
        .map(|g| {
            g.div_exact(f)
                .ok_or_else(|| Error::Defect("intersection generator not divisible by f".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ideal::new(ring, gens)
}

/// `I : J = ∩_k (I : (f_k))`. The zero ideal is rejected as divisor.
pub fn ideal_quotient(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    same_ring(i, j)?;
    if j.is_zero() {
        return Err(Error::QuotientByZero);
    }
    if i.is_unit()? || i.contains_ideal(j)? {
        return Ok(Ideal::unit(i.ring()));
    }
    let mut acc: Option<Ideal> = None;
    for f in j.groebner_basis()? {
        let q = quotient_by_element(i, f)?;
        acc = Some(match acc {
            None => q,
            Some(a) => intersect_ideals(&a, &q)?,
        });
    }
    Ok(acc.expect("nonzero divisor has generators"))
}

const SATURATION_STEPS: usize = 64;

/// `I : J^∞` by iterating the colon to a fixed point.
pub fn saturate(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    same_ring(i, j)?;
    let mut cur = i.clone();
    for _ in 0..SATURATION_STEPS {
        let next = ideal_quotient(&cur, j)?;
        if ideal_equal(&next, &cur)? {
            return Ok(cur);
        }
        cur = next;
    }
    Err(Error::ResourceLimit(format!(
        "saturation did not stabilize within {SATURATION_STEPS} steps"
    )))
}

/// `f ∈ √I` iff `1 ∈ I + (1 - t·f)` in `R[t]`.
pub fn radical_membership(f: &Polynomial, i: &Ideal) -> Result<bool> {
    if f.ring() != i.ring() {
        return Err(Error::RingMismatch);
    }
    if f.is_zero() {
        return Ok(true);
    }
    let ring = i.ring();
    let ext = ring.extend(1, MonomialOrder::GrevLex);
    let t = ext.var(ring.nvars());
    let mut gens: Vec<Polynomial> = i.generators().iter().map(|g| g.embed(&ext)).collect();
    gens.push(&ext.one() - &(&t * &f.embed(&ext)));
    Ideal::new(&ext, gens)?.is_unit()
}

/// `√J ⊆ √I`.
pub fn radical_contains(i: &Ideal, j: &Ideal) -> Result<bool> {
    same_ring(i, j)?;
    for g in j.generators() {
        if !radical_membership(g, i)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn radicals_equal(i: &Ideal, j: &Ideal) -> Result<bool> {
    Ok(radical_contains(i, j)? && radical_contains(j, i)?)
}

/// Equality of reduced Gröbner bases.
pub fn ideal_equal(i: &Ideal, j: &Ideal) -> Result<bool> {
    same_ring(i, j)?;
    Ok(i.groebner_basis()? == j.groebner_basis()?)
}

/// Intersection of a list; the empty intersection is the unit ideal.
pub fn intersect_all(ring: &PolyRing, ideals: &[Ideal]) -> Result<Ideal> {
    let mut acc = Ideal::unit(ring);
    for i in ideals {
        acc = intersect_ideals(&acc, i)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Field;

    fn ring(vars: &[&str]) -> PolyRing {
        PolyRing::new(
            Field::Rational,
            vars.iter().map(|s| s.to_string()).collect(),
            MonomialOrder::GrevLex,
        )
        .unwrap()
    }

    fn id(r: &PolyRing, s: &str) -> Ideal {
        Ideal::parse(r, s).unwrap()
    }

    fn eq(a: &Ideal, b: &Ideal) -> bool {
        ideal_equal(a, b).unwrap()
    }

    #[test]
    fn intersections() {
        let r = ring(&["x", "y"]);
        assert!(eq(&intersect_ideals(&id(&r, "x"), &id(&r, "y")).unwrap(), &id(&r, "x*y")));
        assert!(eq(
            &intersect_ideals(&id(&r, "x, y"), &id(&r, "x^2, y")).unwrap(),
            &id(&r, "x^2, y")
        ));
        let r4 = ring(&["x1", "x2", "x3", "x4"]);
        assert!(eq(
            &intersect_ideals(&id(&r4, "x1, x2"), &id(&r4, "x3, x4")).unwrap(),
            &id(&r4, "x1*x3, x1*x4, x2*x3, x2*x4")
        ));
    }

    #[test]
    fn quotients() {
        let r = ring(&["x", "y"]);
        assert!(eq(&ideal_quotient(&id(&r, "x*y"), &id(&r, "x")).unwrap(), &id(&r, "y")));
        assert!(eq(
            &ideal_quotient(&id(&r, "x^2, y"), &id(&r, "x, y")).unwrap(),
            &id(&r, "x, y")
        ));
        assert!(ideal_quotient(&id(&r, "x, y"), &id(&r, "x*y"))
            .unwrap()
            .is_unit()
            .unwrap());
        assert!(matches!(
            ideal_quotient(&id(&r, "x"), &id(&r, "0")),
            Err(Error::QuotientByZero)
        ));
    }

    #[test]
    fn saturations() {
        let r = ring(&["x", "y"]);
        assert!(eq(&saturate(&id(&r, "x^2*y"), &id(&r, "y")).unwrap(), &id(&r, "x^2")));
        assert!(eq(&saturate(&id(&r, "x*y"), &id(&r, "x, y")).unwrap(), &id(&r, "x*y")));
        assert!(saturate(&id(&r, "x^2, x*y"), &id(&r, "x"))
            .unwrap()
            .is_unit()
            .unwrap());
    }

    #[test]
    fn radicals() {
        let r = ring(&["x", "y"]);
        let p = |s: &str| r.parse(s).unwrap();
        assert!(radical_membership(&p("x"), &id(&r, "x^2")).unwrap());
        assert!(!radical_membership(&p("x"), &id(&r, "y")).unwrap());
        assert!(radical_membership(&p("x + y"), &id(&r, "x^3 + 3*x^2*y + 3*x*y^2 + y^3")).unwrap());
        assert!(radicals_equal(&id(&r, "x^2"), &id(&r, "x")).unwrap());
        let meet = intersect_ideals(&id(&r, "x"), &id(&r, "y")).unwrap();
        assert!(radicals_equal(&id(&r, "x*y"), &meet).unwrap());
        assert!(!radicals_equal(&id(&r, "x"), &id(&r, "y")).unwrap());
    }

    #[test]
    fn equality() {
        let r = ring(&["x", "y"]);
        assert!(eq(&id(&r, "x, y"), &id(&r, "y, x + y")));
        assert!(!eq(&id(&r, "x"), &id(&r, "x^2")));
        assert!(eq(&id(&r, "0"), &id(&r, "0")));
    }
}
