//! Monomial ideals: radicals, primary decomposition, associated primes,
//! Stanley–Reisner complexes and Hochster's formula.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::poly::{FieldElem, Monomial, PolyRing};

/// Largest number of variables for which Hochster's formula is evaluated.
pub const HOCHSTER_MAX_VARS: usize = 12;

/// Prime generated by a set of variables (sorted indices). The empty set
/// stands for the zero prime.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MonomialPrime {
    vars: Vec<usize>,
}

impl MonomialPrime {
    pub fn new(mut vars: Vec<usize>) -> Self {
        vars.sort_unstable();
        vars.dedup();
        MonomialPrime { vars }
    }

    pub fn vars(&self) -> &[usize] {
        &self.vars
    }

    pub fn height(&self) -> usize {
        self.vars.len()
    }

    pub fn is_zero(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn to_ideal(&self, ring: &PolyRing) -> Ideal {
        Ideal::new(ring, self.vars.iter().map(|&i| ring.var(i)).collect()).expect("same ring")
    }

    /// `self ⊆ other`.
    pub fn is_subset(&self, other: &MonomialPrime) -> bool {
        self.vars.iter().all(|v| other.vars.contains(v))
    }

    /// Whether the prime contains the monomial ideal generated by `gens`.
    pub fn contains_monomials(&self, gens: &[Monomial]) -> bool {
        gens.iter()
            .all(|m| m.support().iter().any(|v| self.vars.contains(v)))
    }

    pub fn render(&self, ring: &PolyRing) -> String {
        if self.vars.is_empty() {
            return "(0)".into();
        }
        let names: Vec<&str> = self.vars.iter().map(|&i| ring.vars()[i].as_str()).collect();
        format!("({})", names.join(", "))
    }
}

/// Associated primes together with the minimal ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssociatedPrimes {
    pub all: Vec<MonomialPrime>,
    pub minimal: Vec<MonomialPrime>,
}

impl AssociatedPrimes {
    pub fn is_unmixed(&self) -> bool {
        self.all.len() == self.minimal.len()
    }
}

/// Simplicial complex on vertices `0..n`, stored by its facets as bitmasks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    n: usize,
    facets: Vec<u64>,
}

impl SimplicialComplex {
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn facets(&self) -> Vec<Vec<usize>> {
        self.facets.iter().map(|&f| bits(f)).collect()
    }

    pub fn is_face(&self, face: u64) -> bool {
        self.facets.iter().any(|&f| face & !f == 0)
    }

    /// Faces of the restriction to `sigma`, grouped by cardinality.
    fn restricted_faces(&self, sigma: u64) -> Vec<Vec<u64>> {
        let mut by_size: Vec<Vec<u64>> = vec![Vec::new(); sigma.count_ones() as usize + 1];
        let mut sub = sigma;
        loop {
            if self.is_face(sub) {
                by_size[sub.count_ones() as usize].push(sub);
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & sigma;
        }
        for v in &mut by_size {
            v.sort_unstable();
        }
        by_size
    }
}

impl fmt::Display for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .facets()
            .iter()
            .map(|s| {
                let v: Vec<String> = s.iter().map(|i| i.to_string()).collect();
                format!("{{{}}}", v.join(","))
            })
            .collect();
        write!(f, "<{}>", parts.join(" "))
    }
}

fn bits(mask: u64) -> Vec<usize> {
    (0..64).filter(|i| mask >> i & 1 == 1).collect()
}

fn support_mask(m: &Monomial) -> u64 {
    m.support().iter().fold(0, |acc, &i| acc | 1 << i)
}

/// Drops generators divisible by another and sorts the rest.
pub(crate) fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| b.exponents().cmp(a.exponents())));
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::new();
    for g in gens {
        if !out.iter().any(|h| h.divides(&g)) {
            out.push(g);
        }
    }
    out
}

fn intersect_monomial(a: &[Monomial], b: &[Monomial]) -> Vec<Monomial> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for m in a {
        for n in b {
            out.push(m.lcm(n));
        }
    }
    minimalize(out)
}

/// `small ⊆ big` for monomial generating sets.
fn monomial_subset(small: &[Monomial], big: &[Monomial]) -> bool {
    small.iter().all(|m| big.iter().any(|g| g.divides(m)))
}

fn squarefree_part(m: &Monomial) -> Monomial {
    Monomial::from_exponents(m.exponents().iter().map(|&e| e.min(1)).collect())
}

/// Minimal monomial generators, or `NotMonomial`.
pub fn monomial_gens(i: &Ideal) -> Result<Vec<Monomial>> {
    i.monomial_generators()?
        .map(minimalize)
        .ok_or(Error::NotMonomial)
}

fn proper_gens(i: &Ideal) -> Result<Vec<Monomial>> {
    if i.ring().nvars() > 64 {
        return Err(Error::ResourceLimit("monomial combinatorics limited to 64 variables".into()));
    }
    let gens = monomial_gens(i)?;
    if gens.iter().any(|m| m.is_one()) {
        return Err(Error::UnitIdeal);
    }
    Ok(gens)
}

pub fn monomial_radical(i: &Ideal) -> Result<Ideal> {
    let gens = monomial_gens(i)?;
    let rad = minimalize(gens.iter().map(squarefree_part).collect());
    Ok(Ideal::from_monomials(i.ring(), &rad))
}

pub fn is_squarefree_monomial(i: &Ideal) -> Result<bool> {
    Ok(i.monomial_generators()?
        .is_some_and(|g| g.iter().all(|m| m.is_squarefree())))
}

/// Primary components as generating sets, one per radical, irredundant.
fn decompose(gens: &[Monomial], nvars: usize) -> Vec<Vec<Monomial>> {
    let mut leaves: BTreeSet<Vec<Vec<u32>>> = BTreeSet::new();
    let mut stack = vec![minimalize(gens.to_vec())];
    while let Some(cur) = stack.pop() {
        match cur.iter().find(|m| m.support().len() > 1) {
            None => {
                leaves.insert(cur.iter().map(|m| m.exponents().to_vec()).collect());
            }
            Some(m) => {
                let v0 = m.support()[0];
                let mut ue = vec![0; nvars];
                ue[v0] = m.exponents()[v0];
                let u = Monomial::from_exponents(ue);
                let w = u.quotient_of(m);
                for piece in [u, w] {
                    let mut next = cur.clone();
                    next.push(piece);
                    stack.push(minimalize(next));
                }
            }
        }
    }
    let leaves: Vec<Vec<Monomial>> = leaves
        .into_iter()
        .map(|l| l.into_iter().map(Monomial::from_exponents).collect())
        .collect();

    // Merge components sharing a radical; the intersection stays primary.
    let mut merged: Vec<(u64, Vec<Monomial>)> = Vec::new();
    for leaf in leaves {
        let rad = leaf.iter().fold(0, |acc, m| acc | support_mask(m));
        match merged.iter_mut().find(|(r, _)| *r == rad) {
            Some((_, comp)) => *comp = intersect_monomial(comp, &leaf),
            None => merged.push((rad, leaf)),
        }
    }
    merged.sort_by_key(|(r, _)| (r.count_ones(), *r));

    // Greedily drop components containing the intersection of the others,
    // trying embedded (larger) primes first.
    let mut comps: Vec<(u64, Vec<Monomial>)> = merged;
    let mut k = comps.len();
    while k > 0 {
        k -= 1;
        if comps.len() == 1 {
            break;
        }
        let mut rest: Option<Vec<Monomial>> = None;
        for (j, (_, c)) in comps.iter().enumerate() {
            if j != k {
                rest = Some(match rest {
                    None => c.clone(),
                    Some(acc) => intersect_monomial(&acc, c),
                });
            }
        }
        if monomial_subset(&rest.expect("at least two components"), &comps[k].1) {
            comps.remove(k);
        }
    }
    comps.into_iter().map(|(_, c)| c).collect()
}

/// Irredundant primary decomposition with pairwise distinct radicals.
pub fn primary_decomposition_monomial(i: &Ideal) -> Result<Vec<Ideal>> {
    let gens = proper_gens(i)?;
    if gens.is_empty() {
        return Ok(vec![Ideal::zero(i.ring())]);
    }
    Ok(decompose(&gens, i.ring().nvars())
        .iter()
        .map(|c| Ideal::from_monomials(i.ring(), c))
        .collect())
}

fn primes_of(gens: &[Monomial], nvars: usize) -> AssociatedPrimes {
    if gens.is_empty() {
        let zero = MonomialPrime::new(Vec::new());
        return AssociatedPrimes {
            all: vec![zero.clone()],
            minimal: vec![zero],
        };
    }
    let mut all: Vec<MonomialPrime> = decompose(gens, nvars)
        .iter()
        .map(|c| MonomialPrime::new(c.iter().flat_map(|m| m.support()).collect()))
        .collect();
    all.sort();
    all.dedup();
    let minimal = all
        .iter()
        .filter(|p| !all.iter().any(|q| q != *p && q.is_subset(p)))
        .cloned()
        .collect();
    AssociatedPrimes { all, minimal }
}

/// `Ass(R/J)` and its minimal elements; `Ass(R/0) = {(0)}`.
pub fn associated_primes_monomial(j: &Ideal) -> Result<AssociatedPrimes> {
    let gens = proper_gens(j)?;
    Ok(primes_of(&gens, j.ring().nvars()))
}

/// Minimal primes of a monomial ideal.
pub fn minimal_primes_monomial(j: &Ideal) -> Result<Vec<MonomialPrime>> {
    let gens = proper_gens(j)?;
    let rad = minimalize(gens.iter().map(squarefree_part).collect());
    Ok(primes_of(&rad, j.ring().nvars()).minimal)
}

pub fn stanley_reisner(i: &Ideal) -> Result<SimplicialComplex> {
    let gens = proper_gens(i)?;
    if !gens.iter().all(|m| m.is_squarefree()) {
        return Err(Error::NotSquarefree);
    }
    let n = i.ring().nvars();
    if n > 24 {
        return Err(Error::ResourceLimit(format!(
            "Stanley–Reisner complex on {n} vertices"
        )));
    }
    let nonfaces: Vec<u64> = gens.iter().map(support_mask).collect();
    let faces: Vec<u64> = (0..1u64 << n)
        .filter(|s| !nonfaces.iter().any(|g| g & !s == 0))
        .collect();
    let facets = faces
        .iter()
        .copied()
        .filter(|&f| !faces.iter().any(|&g| g != f && f & !g == 0))
        .collect();
    Ok(SimplicialComplex { n, facets })
}

/// Rank of a dense matrix over a field by Gaussian elimination.
fn rank(mut rows: Vec<Vec<FieldElem>>) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = rows[rank][col].inv().expect("nonzero pivot");
        let pivot: Vec<FieldElem> = rows[rank].iter().map(|x| x.mul(&inv)).collect();
        for r in rank + 1..rows.len() {
            if rows[r][col].is_zero() {
                continue;
            }
            let factor = rows[r][col].clone();
            for c in col..ncols {
                if !pivot[c].is_zero() {
                    rows[r][c] = rows[r][c].sub(&factor.mul(&pivot[c]));
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Rank of the boundary map from `k`-element faces to `(k-1)`-element faces.
fn boundary_rank(upper: &[u64], lower: &[u64], one: &FieldElem) -> usize {
    if upper.is_empty() || lower.is_empty() {
        return 0;
    }
    let zero = one.field().zero();
    let rows: Vec<Vec<FieldElem>> = upper
        .iter()
        .map(|&f| {
            let mut row = vec![zero.clone(); lower.len()];
            for (sign, v) in bits(f).into_iter().enumerate() {
                let face = f & !(1 << v);
                let idx = lower.binary_search(&face).expect("faces are closed under subsets");
                row[idx] = if sign % 2 == 0 { one.clone() } else { one.neg() };
            }
            row
        })
        .collect();
    rank(rows)
}

/// `dim H̃^{k-1}` for each face cardinality `k` (cardinality 0 is degree -1).
fn reduced_cohomology(by_size: &[Vec<u64>], one: &FieldElem) -> Vec<usize> {
    let ranks: Vec<usize> = (0..=by_size.len())
        .map(|k| {
            if k == 0 || k >= by_size.len() {
                0
            } else {
                boundary_rank(&by_size[k], &by_size[k - 1], one)
            }
        })
        .collect();
    (0..by_size.len())
        .map(|k| by_size[k].len() - ranks[k] - ranks[k + 1])
        .collect()
}

/// Total Betti numbers `β_i(R/I)` of a squarefree monomial ideal by Hochster's formula.
pub fn hochster_betti(i: &Ideal) -> Result<Vec<usize>> {
    let n = i.ring().nvars();
    if n > HOCHSTER_MAX_VARS {
        return Err(Error::ResourceLimit(format!(
            "Hochster's formula limited to {HOCHSTER_MAX_VARS} variables, got {n}"
        )));
    }
    if i.is_zero() {
        return Ok(vec![1]);
    }
    let delta = stanley_reisner(i)?;
    let one = i.ring().field().one();
    let per_sigma: Vec<Vec<(usize, usize)>> = (0..1u64 << n)
        .into_par_iter()
        .map(|sigma| {
            let size = sigma.count_ones() as usize;
            let faces = delta.restricted_faces(sigma);
            reduced_cohomology(&faces, &one)
                .into_iter()
                .enumerate()
                .filter(|(_, d)| *d > 0)
                // H̃^j with j = k - 1 contributes to β_i with i = |σ| - j - 1.
                .map(|(k, d)| (size - k, d))
                .collect()
        })
        .collect();
    let mut betti = vec![0usize; n + 1];
    for (idx, d) in per_sigma.into_iter().flatten() {
        betti[idx] += d;
    }
    while betti.len() > 1 && *betti.last().expect("nonempty") == 0 {
        betti.pop();
    }
    Ok(betti)
}

/// `pd(R/I)` for a nonzero proper squarefree monomial ideal.
pub fn hochster_pd(i: &Ideal) -> Result<usize> {
    if i.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    Ok(hochster_betti(i)?.len() - 1)
}

/// `cd(a, R)` for a nonzero proper monomial ideal, as `pd(R/√a)`.
pub fn cd_monomial(a: &Ideal) -> Result<usize> {
    proper_gens(a)?;
    if a.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    hochster_pd(&monomial_radical(a)?)
}

/// `{i : Ext^i(R/a, R) ≠ 0}`, which for squarefree `a` is where `H^i_a(R) ≠ 0`.
pub fn ext_nonvanishing_degrees(a: &Ideal) -> Result<BTreeSet<usize>> {
    if !is_squarefree_monomial(a)? {
        return Err(Error::NotSquarefree);
    }
    if a.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    let m = crate::linkage::CyclicModule::free(a.ring());
    crate::homalg::ext_nonvanishing(a, &m)
}

/// `dim R/J` for a monomial ideal `J`.
pub fn krull_dim_monomial(j: &Ideal) -> Result<usize> {
    let n = j.ring().nvars();
    let mins = minimal_primes_monomial(j)?;
    Ok(n - mins.iter().map(|p| p.height()).min().unwrap_or(0))
}

/// `dim R/J` for any proper ideal, through its initial ideal.
pub fn krull_dim(j: &Ideal) -> Result<usize> {
    let init = Ideal::from_monomials(j.ring(), &j.initial_monomials()?);
    krull_dim_monomial(&init)
}
