//! Multivariate division, reduced Gröbner bases, membership, module Gröbner
//! bases and syzygies.

pub(crate) mod engine;

use std::fmt;
use std::sync::{Arc, OnceLock};

use engine::{Ctx, SVec};

use crate::error::{Error, Result};
use crate::poly::{Monomial, PolyRing, Polynomial};

/// Finitely generated ideal with a write-once cache of its reduced Gröbner basis.
#[derive(Clone, Debug)]
pub struct Ideal {
    ring: PolyRing,
    gens: Vec<Polynomial>,
    gb: Arc<OnceLock<Vec<Polynomial>>>,
}

impl Ideal {
    /// Zero generators are dropped; the zero ideal has no generators.
    pub fn new(ring: &PolyRing, gens: Vec<Polynomial>) -> Result<Self> {
        if gens.iter().any(|g| g.ring() != ring) {
            return Err(Error::RingMismatch);
        }
        Ok(Ideal {
            ring: ring.clone(),
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
            gb: Arc::new(OnceLock::new()),
        })
    }

    /// Comma-separated polynomials; `"0"` is the zero ideal.
    pub fn parse(ring: &PolyRing, src: &str) -> Result<Self> {
        let gens = src
            .split(',')
            .map(|s| ring.parse(s))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(ring, gens)
    }

    pub fn zero(ring: &PolyRing) -> Self {
        Ideal::new(ring, Vec::new()).expect("same ring")
    }

    pub fn unit(ring: &PolyRing) -> Self {
        Ideal::new(ring, vec![ring.one()]).expect("same ring")
    }

    pub fn from_monomials(ring: &PolyRing, monos: &[Monomial]) -> Self {
        Ideal::new(ring, monos.iter().map(|m| ring.monomial(m.clone())).collect())
            .expect("same ring")
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    /// The reduced monic Gröbner basis, computed once per ideal value.
    pub fn groebner_basis(&self) -> Result<&[Polynomial]> {
        if let Some(gb) = self.gb.get() {
            return Ok(gb);
        }
        let gb = compute_gb(&self.ring, &self.gens)?;
        // A concurrent first computation may win; both results are identical.
        let _ = self.gb.set(gb);
        Ok(self.gb.get().expect("just set"))
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        if f.ring() != &self.ring {
            return Err(Error::RingMismatch);
        }
        Ok(reduce_normal_form(f, self.groebner_basis()?)?.is_zero())
    }

    /// `other ⊆ self`.
    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool> {
        if other.ring != self.ring {
            return Err(Error::RingMismatch);
        }
        for g in &other.gens {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_unit(&self) -> Result<bool> {
        Ok(self.groebner_basis()?.iter().any(|g| g.is_unit()))
    }

    pub fn is_proper(&self) -> Result<bool> {
        Ok(!self.is_unit()?)
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        if other.ring != self.ring {
            return Err(Error::RingMismatch);
        }
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        if other.ring != self.ring {
            return Err(Error::RingMismatch);
        }
        let mut gens = Vec::new();
        for f in &self.gens {
            for g in &other.gens {
                gens.push(f * g);
            }
        }
        Ideal::new(&self.ring, gens)
    }

    pub fn with_generator(&self, f: Polynomial) -> Result<Ideal> {
        let mut gens = self.gens.clone();
        gens.push(f);
        Ideal::new(&self.ring, gens)
    }

    /// Monomial ideals are exactly those whose reduced Gröbner basis is monomial.
    pub fn is_monomial(&self) -> Result<bool> {
        Ok(self.groebner_basis()?.iter().all(|g| g.is_monomial()))
    }

    pub fn is_homogeneous(&self) -> Result<bool> {
        if self.gens.iter().all(|g| g.is_homogeneous()) {
            return Ok(true);
        }
        // Reduced grevlex/lex bases of homogeneous ideals are homogeneous.
        Ok(self.groebner_basis()?.iter().all(|g| g.is_homogeneous()))
    }

    /// Minimal monomial generators, when the ideal is monomial.
    pub fn monomial_generators(&self) -> Result<Option<Vec<Monomial>>> {
        let gb = self.groebner_basis()?;
        if gb.iter().all(|g| g.is_monomial()) {
            Ok(Some(
                gb.iter()
                    .map(|g| g.leading_monomial().expect("nonzero").clone())
                    .collect(),
            ))
        } else {
            Ok(None)
        }
    }

    /// A non-redundant generating set; minimal when the generators are homogeneous.
    pub fn minimal_generators(&self) -> Result<Vec<Polynomial>> {
        let gens: Vec<SVec> = self.gens.iter().map(|g| SVec::from_poly(g, 0)).collect();
        let kept = engine::prune_generators(gens, &Ctx::new(&self.ring, vec![0]))?;
        Ok(kept
            .iter()
            .map(|v| v.coords(&self.ring, 1).pop().expect("rank one"))
            .collect())
    }

    /// Leading monomials of the reduced Gröbner basis.
    pub fn initial_monomials(&self) -> Result<Vec<Monomial>> {
        Ok(self
            .groebner_basis()?
            .iter()
            .map(|g| g.leading_monomial().expect("nonzero").clone())
            .collect())
    }

    /// Canonical rendering by the reduced Gröbner basis, e.g. `(x, y^2)`.
    pub fn canonical(&self) -> Result<String> {
        let gb = self.groebner_basis()?;
        if gb.is_empty() {
            return Ok("(0)".into());
        }
        let parts: Vec<String> = gb.iter().map(|g| g.to_string()).collect();
        Ok(format!("({})", parts.join(", ")))
    }

}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gens.is_empty() {
            return write!(f, "(0)");
        }
        let parts: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

fn compute_gb(ring: &PolyRing, gens: &[Polynomial]) -> Result<Vec<Polynomial>> {
    let inputs: Vec<SVec> = gens.iter().map(|g| SVec::from_poly(g, 0)).collect();
    let out = engine::groebner(&inputs, &Ctx::new(ring, vec![0]))?;
    Ok(out
        .basis
        .into_iter()
        .map(|v| v.coords(ring, 1).pop().expect("rank one"))
        .collect())
}

/// Remainder of multivariate division of `f` by the list `basis`.
pub fn reduce_normal_form(f: &Polynomial, basis: &[Polynomial]) -> Result<Polynomial> {
    let ring = f.ring();
    if basis.iter().any(|g| g.ring() != ring) {
        return Err(Error::RingMismatch);
    }
    let b: Vec<SVec> = basis.iter().map(|g| SVec::from_poly(g, 0)).collect();
    let r = engine::reduce(&SVec::from_poly(f, 0), &b, &Ctx::new(ring, vec![0]))?;
    Ok(r.coords(ring, 1).pop().expect("rank one"))
}

pub fn reduced_groebner_basis(ideal: &Ideal) -> Result<Vec<Polynomial>> {
    Ok(ideal.groebner_basis()?.to_vec())
}

pub fn ideal_membership(f: &Polynomial, ideal: &Ideal) -> Result<bool> {
    ideal.contains(f)
}

/// Element of the free module `R^r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeModuleElement {
    ring: PolyRing,
    coords: Vec<Polynomial>,
}

impl FreeModuleElement {
    pub fn new(ring: &PolyRing, coords: Vec<Polynomial>) -> Result<Self> {
        if coords.iter().any(|c| c.ring() != ring) {
            return Err(Error::RingMismatch);
        }
        Ok(FreeModuleElement {
            ring: ring.clone(),
            coords,
        })
    }

    pub fn zero(ring: &PolyRing, rank: usize) -> Self {
        FreeModuleElement {
            ring: ring.clone(),
            coords: vec![ring.zero(); rank],
        }
    }

    pub fn unit(ring: &PolyRing, rank: usize, i: usize) -> Self {
        let mut v = Self::zero(ring, rank);
        v.coords[i] = ring.one();
        v
    }

    pub fn parse(ring: &PolyRing, coords: &[&str]) -> Result<Self> {
        let coords = coords
            .iter()
            .map(|s| ring.parse(s))
            .collect::<Result<Vec<_>>>()?;
        Self::new(ring, coords)
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Polynomial] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub(crate) fn to_svec(&self) -> SVec {
        SVec::from_coords(&self.coords)
    }

    pub(crate) fn from_svec(ring: &PolyRing, rank: usize, v: &SVec) -> Self {
        FreeModuleElement {
            ring: ring.clone(),
            coords: v.coords(ring, rank),
        }
    }
}

impl fmt::Display for FreeModuleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

fn common_rank(gens: &[FreeModuleElement]) -> Result<Option<(PolyRing, usize)>> {
    let Some(first) = gens.first() else {
        return Ok(None);
    };
    for g in gens {
        if g.ring != first.ring {
            return Err(Error::RingMismatch);
        }
        if g.rank() != first.rank() {
            return Err(Error::RankMismatch {
                expected: first.rank(),
                found: g.rank(),
            });
        }
    }
    Ok(Some((first.ring.clone(), first.rank())))
}

/// Reduced Gröbner basis of the submodule spanned by `gens`, position-over-term.
pub fn module_groebner_basis(gens: &[FreeModuleElement]) -> Result<Vec<FreeModuleElement>> {
    let Some((ring, rank)) = common_rank(gens)? else {
        return Ok(Vec::new());
    };
    let inputs: Vec<SVec> = gens.iter().map(|g| g.to_svec()).collect();
    let out = engine::groebner(&inputs, &Ctx::new(&ring, vec![0; rank]))?;
    Ok(out
        .basis
        .iter()
        .map(|v| FreeModuleElement::from_svec(&ring, rank, v))
        .collect())
}

/// Normal form of `v` with respect to a module Gröbner basis.
pub fn module_normal_form(
    v: &FreeModuleElement,
    basis: &[FreeModuleElement],
) -> Result<FreeModuleElement> {
    let mut all = vec![v.clone()];
    all.extend(basis.iter().cloned());
    common_rank(&all)?;
    let b: Vec<SVec> = basis.iter().map(|g| g.to_svec()).collect();
    let ctx = Ctx::new(&v.ring, vec![0; v.rank()]);
    let r = engine::reduce(&v.to_svec(), &b, &ctx)?;
    Ok(FreeModuleElement::from_svec(&v.ring, v.rank(), &r))
}

/// Whether `v` lies in the submodule spanned by `gens`.
pub fn module_membership(v: &FreeModuleElement, gens: &[FreeModuleElement]) -> Result<bool> {
    if gens.is_empty() {
        return Ok(v.is_zero());
    }
    let gb = module_groebner_basis(gens)?;
    Ok(module_normal_form(v, &gb)?.is_zero())
}

/// Generators of the syzygy module of `gens` (a Gröbner basis of it).
pub fn syzygy_module(gens: &[FreeModuleElement]) -> Result<Vec<FreeModuleElement>> {
    let Some((ring, rank)) = common_rank(gens)? else {
        return Ok(Vec::new());
    };
    let cols: Vec<SVec> = gens.iter().map(|g| g.to_svec()).collect();
    let k = cols.len();
    let ctx = Ctx::new(&ring, vec![0; rank]);
    let src: Vec<i64> = cols.iter().map(|c| c.degree(&ctx.shifts).max(0)).collect();
    let ker = engine::kernel(&cols, &[], &ctx, &src, ring.nvars(), &ring.field().one())?;
    Ok(ker
        .iter()
        .map(|v| FreeModuleElement::from_svec(&ring, k, v))
        .collect())
}

/// Syzygies of a list of polynomials (rank-one case).
pub fn polynomial_syzygies(gens: &[Polynomial]) -> Result<Vec<FreeModuleElement>> {
    let Some(first) = gens.first() else {
        return Ok(Vec::new());
    };
    let ring = first.ring().clone();
    let elems = gens
        .iter()
        .map(|g| FreeModuleElement::new(&ring, vec![g.clone()]))
        .collect::<Result<Vec<_>>>()?;
    syzygy_module(&elems)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{Field, MonomialOrder};

    fn ring(vars: &[&str], order: MonomialOrder) -> PolyRing {
        PolyRing::new(
            Field::Rational,
            vars.iter().map(|s| s.to_string()).collect(),
            order,
        )
        .unwrap()
    }

    fn gb_strings(r: &PolyRing, src: &str) -> Vec<String> {
        Ideal::parse(r, src)
            .unwrap()
            .groebner_basis()
            .unwrap()
            .iter()
            .map(|g| g.to_string())
            .collect()
    }

    #[test]
    fn normal_forms() {
        let r = ring(&["x", "y"], MonomialOrder::GrevLex);
        let p = |s: &str| r.parse(s).unwrap();
        assert_eq!(
            reduce_normal_form(&p("x^2*y"), &[p("x^2 - y")]).unwrap(),
            p("y^2")
        );
        assert!(reduce_normal_form(&p("x"), &[p("x")]).unwrap().is_zero());
        assert_eq!(reduce_normal_form(&p("y"), &[p("x")]).unwrap(), p("y"));
    }

    #[test]
    fn reduced_bases() {
        let r = ring(&["x", "y"], MonomialOrder::GrevLex);
        assert_eq!(gb_strings(&r, "x - y, x + y"), vec!["x", "y"]);
        assert_eq!(gb_strings(&r, "x"), vec!["x"]);
        assert_eq!(gb_strings(&r, "x, 1 + x"), vec!["1"]);
        assert!(gb_strings(&r, "0").is_empty());
        let lex = ring(&["x", "y"], MonomialOrder::Lex);
        assert_eq!(
            gb_strings(&lex, "x^2 + y^2 - 1, x - y"),
            vec!["x - y", "y^2 - 1/2"]
        );
    }

    #[test]
    fn membership() {
        let r = ring(&["x", "y"], MonomialOrder::GrevLex);
        let p = |s: &str| r.parse(s).unwrap();
        let i = |s: &str| Ideal::parse(&r, s).unwrap();
        assert!(ideal_membership(&p("x*y"), &i("x")).unwrap());
        assert!(!ideal_membership(&p("x"), &i("x^2")).unwrap());
        assert!(ideal_membership(&p("x^2 - y^2"), &i("x - y")).unwrap());
    }

    #[test]
    fn cyclic_four_over_prime_field() {
        let r = PolyRing::parse_spec("FP(32003)[a, b, c, d] grevlex").unwrap();
        let i = Ideal::parse(
            &r,
            "a + b + c + d, a*b + b*c + c*d + d*a, a*b*c + b*c*d + c*d*a + d*a*b, a*b*c*d - 1",
        )
        .unwrap();
        let gb = i.groebner_basis().unwrap();
        for g in i.generators() {
            assert!(reduce_normal_form(g, gb).unwrap().is_zero());
        }
        assert_eq!(gb.len(), 7);
    }

    #[test]
    fn module_membership_examples() {
        let r = ring(&["x", "y"], MonomialOrder::GrevLex);
        let v = |a: &str, b: &str| FreeModuleElement::parse(&r, &[a, b]).unwrap();
        assert!(module_membership(&v("x*y", "x^2"), &[v("x", "0"), v("0", "x")]).unwrap());
        assert!(!module_membership(&v("y", "x"), &[v("x", "y")]).unwrap());
        assert!(module_groebner_basis(&[]).unwrap().is_empty());
    }

    #[test]
    fn syzygy_examples() {
        let r = ring(&["x", "y"], MonomialOrder::GrevLex);
        let p = |s: &str| r.parse(s).unwrap();
        let syz = polynomial_syzygies(&[p("x"), p("y")]).unwrap();
        assert_eq!(syz.len(), 1);
        assert_eq!(syz[0].to_string(), "(y, -x)");
        let syz = polynomial_syzygies(&[p("x^2"), p("x*y")]).unwrap();
        assert_eq!(syz.len(), 1);
        assert_eq!(syz[0].to_string(), "(y, -x)");
        assert!(polynomial_syzygies(&[p("x^2 - y")]).unwrap().is_empty());
    }

    #[test]
    fn resource_limit_is_reported() {
        let r = ring(&["x", "y", "z"], MonomialOrder::GrevLex).with_new_limits(crate::poly::Limits {
            max_degree: 1,
            max_terms: 1000,
        });
        let i = Ideal::parse(&r, "x^2 - y*z, y^2 - x*z, z^2 - x*y + x").unwrap();
        assert!(matches!(i.groebner_basis(), Err(Error::ResourceLimit(_))));
    }
}
