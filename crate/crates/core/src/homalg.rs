//! Free resolutions, Ext against cyclic modules, grade and projective dimension.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::groebner::engine::{self, Ctx, SVec};
use crate::groebner::{FreeModuleElement, Ideal};
use crate::linkage::CyclicModule;
use crate::poly::{PolyRing, Polynomial};

/// Matrix over the ring, stored by columns (the images of basis vectors).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: Vec<Vec<Polynomial>>,
}

impl Matrix {
    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn entry(&self, r: usize, c: usize) -> &Polynomial {
        &self.cols[c][r]
    }

    pub fn column(&self, c: usize) -> &[Polynomial] {
        &self.cols[c]
    }

    pub fn row(&self, r: usize) -> Vec<Polynomial> {
        self.cols.iter().map(|c| c[r].clone()).collect()
    }

    /// `self · other`, or `None` on a shape mismatch.
    pub fn mul(&self, other: &Matrix) -> Option<Matrix> {
        if self.ncols() != other.rows {
            return None;
        }
        let cols = other
            .cols
            .iter()
            .map(|oc| {
                (0..self.rows)
                    .map(|r| {
                        let mut acc: Option<Polynomial> = None;
                        for (k, x) in oc.iter().enumerate() {
                            if x.is_zero() || self.cols[k][r].is_zero() {
                                continue;
                            }
                            let t = &self.cols[k][r] * x;
                            acc = Some(match acc {
                                None => t,
                                Some(a) => &a + &t,
                            });
                        }
                        acc.unwrap_or_else(|| oc[0].ring().zero())
                    })
                    .collect()
            })
            .collect();
        Some(Matrix {
            rows: self.rows,
            cols,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().flatten().all(|p| p.is_zero())
    }

    fn constant_entry(&self) -> Option<(usize, usize)> {
        for (c, col) in self.cols.iter().enumerate() {
            for (r, p) in col.iter().enumerate() {
                if p.is_constant() && !p.is_zero() {
                    return Some((r, c));
                }
            }
        }
        None
    }
}

/// Chain complex `0 <- R^{b_0} <- R^{b_1} <- ...` resolving `R/a`.
#[derive(Clone, Debug)]
pub struct FreeResolution {
    ring: PolyRing,
    maps: Vec<Matrix>,
    minimal: bool,
}

impl FreeResolution {
    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    /// `d_1, d_2, ...`; `maps()[i]` is `d_{i+1}: R^{b_{i+1}} -> R^{b_i}`.
    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    pub fn ranks(&self) -> Vec<usize> {
        let mut r = vec![1];
        r.extend(self.maps.iter().map(|m| m.ncols()));
        r
    }

    pub fn length(&self) -> usize {
        self.maps.len()
    }

    pub fn is_minimal(&self) -> bool {
        self.minimal
    }

    /// `d_i ∘ d_{i+1} = 0` for every consecutive pair.
    pub fn is_complex(&self) -> bool {
        self.maps
            .windows(2)
            .all(|w| w[0].mul(&w[1]).is_some_and(|p| p.is_zero()))
    }
}

/// Cokernel of a relation map into `R^rank`.
#[derive(Clone, Debug)]
pub struct PresentedModule {
    ring: PolyRing,
    rank: usize,
    relations: Vec<FreeModuleElement>,
}

impl PresentedModule {
    pub fn new(ring: &PolyRing, rank: usize, relations: Vec<FreeModuleElement>) -> Result<Self> {
        for r in &relations {
            if r.ring() != ring {
                return Err(Error::RingMismatch);
            }
            if r.rank() != rank {
                return Err(Error::RankMismatch {
                    expected: rank,
                    found: r.rank(),
                });
            }
        }
        Ok(PresentedModule {
            ring: ring.clone(),
            rank,
            relations,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn relations(&self) -> &[FreeModuleElement] {
        &self.relations
    }
}

/// Whether every unit vector lies in the relation submodule.
pub fn is_zero_module(n: &PresentedModule) -> Result<bool> {
    if n.rank == 0 {
        return Ok(true);
    }
    let ctx = Ctx::new(&n.ring, vec![0; n.rank]);
    let rels: Vec<SVec> = n.relations.iter().map(|r| r.to_svec()).collect();
    let gb = engine::groebner(&rels, &ctx)?.basis;
    let one = n.ring.field().one();
    for pos in 0..n.rank {
        let e = SVec::unit(pos, n.ring.nvars(), one.clone());
        if !engine::reduce(&e, &gb, &ctx)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn column_shifts(cols: &[SVec], target: &[i64]) -> Vec<i64> {
    cols.iter()
        .map(|c| if c.is_zero() { 0 } else { c.degree(target) })
        .collect()
}

/// Removes one constant entry `c = d_i[p][q]` by splitting off `R -> R`:
/// Schur complement on `d_i`, drop column `p` of `d_{i-1}` and row `q` of `d_{i+1}`.
fn split_constant(maps: &mut Vec<Matrix>, i: usize, p: usize, q: usize) {
    let d = &maps[i];
    let c = d.entry(p, q).leading_coefficient().expect("nonzero").clone();
    let cinv = c.inv().expect("nonzero constant");
    let pivot_col = d.cols[q].clone();
    let cols: Vec<Vec<Polynomial>> = (0..d.ncols())
        .filter(|&s| s != q)
        .map(|s| {
            let f = d.entry(p, s).scale(&cinv);
            (0..d.rows)
                .filter(|&r| r != p)
                .map(|r| {
                    if f.is_zero() || pivot_col[r].is_zero() {
                        d.cols[s][r].clone()
                    } else {
                        &d.cols[s][r] - &(&pivot_col[r] * &f)
                    }
                })
                .collect()
        })
        .collect();
    maps[i] = Matrix {
        rows: d.rows - 1,
        cols,
    };
    if i > 0 {
        maps[i - 1].cols.remove(p);
    }
    if i + 1 < maps.len() {
        let next = &mut maps[i + 1];
        next.rows -= 1;
        for col in &mut next.cols {
            col.remove(q);
        }
    }
}

/// Applies constant-entry pivoting until no map has a nonzero constant entry.
/// The first map (into `R^1`) never pivots: a constant there means `a` is the unit ideal.
fn minimize_constants(maps: &mut Vec<Matrix>) {
    loop {
        let hit = (1..maps.len()).find_map(|i| maps[i].constant_entry().map(|(p, q)| (i, p, q)));
        match hit {
            Some((i, p, q)) => split_constant(maps, i, p, q),
            None => break,
        }
    }
    while maps.last().is_some_and(|m| m.ncols() == 0) {
        maps.pop();
    }
}

fn to_matrix(ring: &PolyRing, rows: usize, cols: &[SVec]) -> Matrix {
    Matrix {
        rows,
        cols: cols.iter().map(|c| c.coords(ring, rows)).collect(),
    }
}

/// A finite free resolution of `R/a`. With `minimal`, requires homogeneous `a`
/// and returns the minimal graded resolution.
pub fn free_resolution(a: &Ideal, minimal: bool) -> Result<FreeResolution> {
    let ring = a.ring().clone();
    if a.is_unit()? {
        return Err(Error::UnitIdeal);
    }
    let homogeneous = a.is_homogeneous()?;
    if minimal && !homogeneous {
        return Err(Error::NotHomogeneous);
    }
    let cap = ring.nvars() + 1;
    let nv = ring.nvars();
    let one = ring.field().one();

    // A homogeneous ideal given by inhomogeneous generators is resolved from
    // its reduced Gröbner basis, which is homogeneous.
    let gens: Vec<Polynomial> =
        if homogeneous && !a.generators().iter().all(|g| g.is_homogeneous()) {
            a.groebner_basis()?.to_vec()
        } else {
            a.generators().to_vec()
        };
    let first: Vec<SVec> = gens.iter().map(|g| SVec::from_poly(g, 0)).collect();
    let mut cols = engine::prune_generators(first, &Ctx::new(&ring, vec![0]))?;

    let mut maps: Vec<Matrix> = Vec::new();
    while !cols.is_empty() {
        if maps.len() >= cap {
            return Err(Error::Defect(format!(
                "resolution exceeds the Hilbert syzygy bound of {} maps",
                cap - 1
            )));
        }
        let rows = maps.last().map_or(1, |m| m.ncols());
        maps.push(to_matrix(&ring, rows, &cols));
        let before = maps.len();
        minimize_constants(&mut maps);
        if maps.len() < before {
            break;
        }
        let shifts = shifts_of(&maps);
        let k = maps.len();
        let last: Vec<SVec> = maps[k - 1].cols.iter().map(|c| SVec::from_coords(c)).collect();
        let ctx = Ctx::new(&ring, shifts[k - 1].clone());
        let ker = engine::kernel(&last, &[], &ctx, &shifts[k], nv, &one)?;
        cols = engine::prune_generators(ker, &Ctx::new(&ring, shifts[k].clone()))?;
    }
    Ok(FreeResolution {
        ring,
        maps,
        minimal: homogeneous,
    })
}

/// Generator degrees of every free module in the chain, starting at `R^1`.
fn shifts_of(maps: &[Matrix]) -> Vec<Vec<i64>> {
    let mut out = vec![vec![0i64]];
    for m in maps {
        let cols: Vec<SVec> = m.cols.iter().map(|c| SVec::from_coords(c)).collect();
        let next = column_shifts(&cols, out.last().expect("nonempty"));
        out.push(next);
    }
    out
}

/// Cocycles `K` and coboundaries-plus-`J` `N` of `Hom(F, R/J)` in degree `i`,
/// both as vectors in `R^{b_i}`.
fn ext_pieces(
    res: &FreeResolution,
    shifts: &[Vec<i64>],
    i: usize,
    j: &Ideal,
) -> Result<(Vec<SVec>, Vec<SVec>, Ctx)> {
    let ring = &res.ring;
    let ranks = res.ranks();
    let bi = ranks[i];
    let dual = |v: &[i64]| v.iter().map(|d| -d).collect::<Vec<i64>>();
    let ctx_i = Ctx::new(ring, dual(&shifts[i]));
    let jgens = j.groebner_basis()?;

    let k: Vec<SVec> = if i < res.maps.len() {
        let d = &res.maps[i];
        let b_next = ranks[i + 1];
        let cols: Vec<SVec> = (0..bi).map(|r| SVec::from_coords(&d.row(r))).collect();
        let rels: Vec<SVec> = (0..b_next)
            .flat_map(|s| jgens.iter().map(move |g| SVec::from_poly(g, s)))
            .collect();
        let ctx = Ctx::new(ring, dual(&shifts[i + 1]));
        engine::kernel(&cols, &rels, &ctx, &ctx_i.shifts, ring.nvars(), &ring.field().one())?
    } else {
        let one = ring.field().one();
        (0..bi).map(|r| SVec::unit(r, ring.nvars(), one.clone())).collect()
    };

    let mut n: Vec<SVec> = (0..bi)
        .flat_map(|s| jgens.iter().map(move |g| SVec::from_poly(g, s)))
        .collect();
    if i > 0 {
        let d = &res.maps[i - 1];
        n.extend((0..ranks[i - 1]).map(|r| SVec::from_coords(&d.row(r))));
    }
    Ok((k, n, ctx_i))
}

fn ext_nonzero_with(res: &FreeResolution, shifts: &[Vec<i64>], i: usize, m: &CyclicModule) -> Result<bool> {
    if i > res.length() {
        return Ok(false);
    }
    let (k, n, ctx) = ext_pieces(res, shifts, i, m.ideal())?;
    if k.is_empty() {
        return Ok(false);
    }
    let gb = engine::groebner(&n, &ctx)?.basis;
    for v in &k {
        if !engine::reduce(v, &gb, &ctx)?.is_zero() {
            return Ok(true);
        }
    }
    Ok(false)
}

fn check_module(a: &Ideal, m: &CyclicModule) -> Result<()> {
    if a.ring() != m.ring() {
        return Err(Error::RingMismatch);
    }
    Ok(())
}

fn resolution_for_ext(a: &Ideal) -> Result<FreeResolution> {
    free_resolution(a, false)
}

/// Whether `Ext^i(R/a, M) ≠ 0`.
pub fn ext_nonzero(i: i64, a: &Ideal, m: &CyclicModule) -> Result<bool> {
    check_module(a, m)?;
    if i < 0 {
        return Err(Error::InvalidArgument(format!("negative Ext degree {i}")));
    }
    let res = resolution_for_ext(a)?;
    let shifts = shifts_of(&res.maps);
    ext_nonzero_with(&res, &shifts, i as usize, m)
}

/// `Ext^i(R/a, M)` as a presented module (generators are the cocycles).
pub fn ext_module(i: usize, a: &Ideal, m: &CyclicModule) -> Result<PresentedModule> {
    check_module(a, m)?;
    let ring = a.ring();
    let res = resolution_for_ext(a)?;
    if i > res.length() {
        return PresentedModule::new(ring, 0, Vec::new());
    }
    let shifts = shifts_of(&res.maps);
    let (k, n, ctx) = ext_pieces(&res, &shifts, i, m.ideal())?;
    let src = column_shifts(&k, &ctx.shifts);
    let rels = engine::kernel(&k, &n, &ctx, &src, ring.nvars(), &ring.field().one())?;
    let rank = k.len();
    PresentedModule::new(
        ring,
        rank,
        rels.iter()
            .map(|v| FreeModuleElement::from_svec(ring, rank, v))
            .collect(),
    )
}

/// All `i` with `Ext^i(R/a, M) ≠ 0`.
pub fn ext_nonvanishing(a: &Ideal, m: &CyclicModule) -> Result<BTreeSet<usize>> {
    check_module(a, m)?;
    let res = resolution_for_ext(a)?;
    let shifts = shifts_of(&res.maps);
    let mut out = BTreeSet::new();
    for i in 0..=res.length() {
        if ext_nonzero_with(&res, &shifts, i, m)? {
            out.insert(i);
        }
    }
    Ok(out)
}

/// `grade_M a = min{i : Ext^i(R/a, M) ≠ 0}`; undefined when `aM = M`.
pub fn grade_via_ext(a: &Ideal, m: &CyclicModule) -> Result<usize> {
    check_module(a, m)?;
    if a.sum(m.ideal())?.is_unit()? {
        return Err(Error::GradeUndefined);
    }
    if a.is_zero() {
        return Ok(0);
    }
    let res = resolution_for_ext(a)?;
    let shifts = shifts_of(&res.maps);
    for i in 0..=res.length() {
        if ext_nonzero_with(&res, &shifts, i, m)? {
            return Ok(i);
        }
    }
    Err(Error::Defect(format!(
        "no nonvanishing Ext up to the resolution length {}",
        res.length()
    )))
}

/// Length of the minimal free resolution of `R/a`.
pub fn pd_via_resolution(a: &Ideal) -> Result<usize> {
    Ok(free_resolution(a, true)?.length())
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

    fn id(r: &PolyRing, s: &str) -> Ideal {
        Ideal::parse(r, s).unwrap()
    }

    fn free(r: &PolyRing) -> CyclicModule {
        CyclicModule::free(r)
    }

    #[test]
    fn resolutions() {
        let r = ring(&["x", "y"]);
        let res = free_resolution(&id(&r, "x"), true).unwrap();
        assert_eq!(res.ranks(), vec![1, 1]);
        let res = free_resolution(&id(&r, "x, y"), true).unwrap();
        assert_eq!(res.ranks(), vec![1, 2, 1]);
        assert!(res.is_complex());
        let r4 = ring(&["x1", "x2", "x3", "x4"]);
        let res = free_resolution(&id(&r4, "x1*x3, x1*x4, x2*x3, x2*x4"), true).unwrap();
        assert_eq!(res.ranks(), vec![1, 4, 4, 1]);
        assert_eq!(res.length(), 3);
        assert!(res.is_complex());
        assert!(matches!(
            free_resolution(&id(&r, "x^2 - y"), true),
            Err(Error::NotHomogeneous)
        ));
    }

    #[test]
    fn non_minimal_input_is_minimized() {
        let r = ring(&["x", "y", "z"]);
        let res = free_resolution(&id(&r, "x, y, x + y, x*z"), true).unwrap();
        assert_eq!(res.ranks(), vec![1, 2, 1]);
        let res = free_resolution(&id(&r, "x^2 - y, x*y"), false).unwrap();
        assert!(res.is_complex());
        assert!(res.length() <= 3);
    }

    #[test]
    fn zero_modules() {
        let r = ring(&["x", "y"]);
        let ident = PresentedModule::new(
            &r,
            2,
            vec![
                FreeModuleElement::parse(&r, &["1", "0"]).unwrap(),
                FreeModuleElement::parse(&r, &["0", "1"]).unwrap(),
            ],
        )
        .unwrap();
        assert!(is_zero_module(&ident).unwrap());
        let cyc = PresentedModule::new(
            &r,
            1,
            vec![
                FreeModuleElement::parse(&r, &["x"]).unwrap(),
                FreeModuleElement::parse(&r, &["y"]).unwrap(),
            ],
        )
        .unwrap();
        assert!(!is_zero_module(&cyc).unwrap());
        let ext1 = ext_module(1, &id(&r, "x, y"), &free(&r)).unwrap();
        assert!(is_zero_module(&ext1).unwrap());
        let ext2 = ext_module(2, &id(&r, "x, y"), &free(&r)).unwrap();
        assert!(!is_zero_module(&ext2).unwrap());
    }

    #[test]
    fn ext_values() {
        let r = ring(&["x", "y"]);
        let m = free(&r);
        assert!(ext_nonzero(2, &id(&r, "x, y"), &m).unwrap());
        assert!(!ext_nonzero(1, &id(&r, "x, y"), &m).unwrap());
        assert!(!ext_nonzero(0, &id(&r, "x"), &m).unwrap());
        assert!(ext_nonzero(-1, &id(&r, "x"), &m).is_err());
    }

    #[test]
    fn grades() {
        let r = ring(&["x", "y"]);
        assert_eq!(grade_via_ext(&id(&r, "x, y"), &free(&r)).unwrap(), 2);
        let m = CyclicModule::new(id(&r, "x*y")).unwrap();
        assert_eq!(grade_via_ext(&id(&r, "x"), &m).unwrap(), 0);
        assert_eq!(grade_via_ext(&id(&r, "x, y"), &m).unwrap(), 1);
        let r4 = ring(&["x1", "x2", "x3", "x4"]);
        assert_eq!(
            grade_via_ext(&id(&r4, "x1*x3, x1*x4, x2*x3, x2*x4"), &free(&r4)).unwrap(),
            2
        );
        assert!(matches!(
            grade_via_ext(&id(&r, "x"), &CyclicModule::new(id(&r, "x - 1")).unwrap()),
            Err(Error::GradeUndefined)
        ));
        assert_eq!(grade_via_ext(&id(&r, "x^2 - y"), &free(&r)).unwrap(), 1);
    }

    #[test]
    fn projective_dimensions() {
        let r = ring(&["x", "y", "z", "w"]);
        assert_eq!(pd_via_resolution(&id(&r, "x")).unwrap(), 1);
        assert_eq!(pd_via_resolution(&id(&r, "x*y, z*w")).unwrap(), 2);
        let r4 = ring(&["x1", "x2", "x3", "x4"]);
        assert_eq!(pd_via_resolution(&id(&r4, "x1*x3, x1*x4, x2*x3, x2*x4")).unwrap(), 3);
        assert_eq!(pd_via_resolution(&id(&r, "0")).unwrap(), 0);
    }
}
