//! Buchberger's algorithm on sparse vectors of a free module `R^r` under the
//! position-over-term order (lower position index ranks higher). Ideals are
//! the rank-one case.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::poly::{FieldElem, Limits, Monomial, MonomialOrder, PolyRing, Polynomial};

pub(crate) type MTerm = (usize, Monomial, FieldElem);

/// Sparse module vector; terms strictly decreasing in position-over-term order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct SVec {
    pub terms: Vec<MTerm>,
}

fn key_cmp(order: MonomialOrder, a: (usize, &Monomial), b: (usize, &Monomial)) -> Ordering {
    b.0.cmp(&a.0).then_with(|| order.cmp(a.1, b.1))
}

impl SVec {
    pub fn zero() -> Self {
        SVec { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn from_poly(p: &Polynomial, pos: usize) -> Self {
        SVec {
            terms: p
                .terms()
                .iter()
                .map(|(m, c)| (pos, m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn from_coords(coords: &[Polynomial]) -> Self {
        let mut terms = Vec::new();
        for (pos, p) in coords.iter().enumerate() {
            terms.extend(p.terms().iter().map(|(m, c)| (pos, m.clone(), c.clone())));
        }
        SVec { terms }
    }

    pub fn unit(pos: usize, nvars: usize, one: FieldElem) -> Self {
        SVec {
            terms: vec![(pos, Monomial::one(nvars), one)],
        }
    }

    pub fn coords(&self, ring: &PolyRing, rank: usize) -> Vec<Polynomial> {
        let mut buckets: Vec<Vec<(Monomial, FieldElem)>> = vec![Vec::new(); rank];
        for (pos, m, c) in &self.terms {
            buckets[*pos].push((m.clone(), c.clone()));
        }
        buckets
            .into_iter()
            .map(|t| Polynomial::from_sorted_terms(ring, t))
            .collect()
    }

    pub fn lead(&self) -> Option<&MTerm> {
        self.terms.first()
    }

    pub fn lead_pos(&self) -> Option<usize> {
        self.terms.first().map(|t| t.0)
    }

    pub fn degree(&self, shifts: &[i64]) -> i64 {
        self.terms
            .iter()
            .map(|(p, m, _)| m.degree() as i64 + shifts[*p])
            .max()
            .unwrap_or(i64::MIN)
    }

    pub fn is_homogeneous(&self, shifts: &[i64]) -> bool {
        let mut it = self.terms.iter().map(|(p, m, _)| m.degree() as i64 + shifts[*p]);
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    pub fn monic(mut self) -> Self {
        if let Some((_, _, c)) = self.terms.first() {
            if !c.is_one() {
                let inv = c.inv().expect("nonzero lead");
                for t in &mut self.terms {
                    t.2 = t.2.mul(&inv);
                }
            }
        }
        self
    }

    pub fn mul_term(&self, m: &Monomial, c: &FieldElem) -> SVec {
        if c.is_zero() {
            return SVec::zero();
        }
        SVec {
            terms: self
                .terms
                .iter()
                .map(|(p, n, a)| (*p, n.mul(m), a.mul(c)))
                .collect(),
        }
    }

    /// `self[start..] - c * m * other` (or `+` when `add`), merged.
    fn sub_mul_from(
        &self,
        start: usize,
        c: &FieldElem,
        m: &Monomial,
        other: &SVec,
        order: MonomialOrder,
    ) -> SVec {
        let a = &self.terms[start..];
        let b = &other.terms;
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            let bm = b[j].1.mul(m);
            match key_cmp(order, (a[i].0, &a[i].1), (b[j].0, &bm)) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b[j].0, bm, b[j].2.mul(c).neg()));
                    j += 1;
                }
                Ordering::Equal => {
                    let v = a[i].2.sub(&b[j].2.mul(c));
                    if !v.is_zero() {
                        out.push((a[i].0, bm, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for t in &b[j..] {
            out.push((t.0, t.1.mul(m), t.2.mul(c).neg()));
        }
        SVec { terms: out }
    }

    fn check_limits(&self, limits: &Limits) -> Result<()> {
        if self.terms.len() > limits.max_terms {
            return Err(Error::ResourceLimit(format!(
                "intermediate vector has {} terms (cap {})",
                self.terms.len(),
                limits.max_terms
            )));
        }
        if let Some(d) = self.terms.iter().map(|t| t.1.degree()).max() {
            if d > limits.max_degree {
                return Err(Error::ResourceLimit(format!(
                    "intermediate degree {d} exceeds cap {}",
                    limits.max_degree
                )));
            }
        }
        Ok(())
    }
}

/// Parameters shared by one Gröbner computation.
#[derive(Clone, Debug)]
pub(crate) struct Ctx {
    pub order: MonomialOrder,
    pub limits: Limits,
    pub shifts: Vec<i64>,
}

impl Ctx {
    pub fn new(ring: &PolyRing, shifts: Vec<i64>) -> Self {
        Ctx {
            order: ring.order(),
            limits: ring.limits(),
            shifts,
        }
    }

    pub fn rank(&self) -> usize {
        self.shifts.len()
    }
}

/// Full reduction of `f` by `basis` (any list, not necessarily a Gröbner basis).
pub(crate) fn reduce(f: &SVec, basis: &[SVec], ctx: &Ctx) -> Result<SVec> {
    let leads: Vec<Option<&MTerm>> = basis.iter().map(|g| g.lead()).collect();
    let mut p = f.clone();
    let mut start = 0;
    let mut rem: Vec<MTerm> = Vec::new();
    let mut steps = 0usize;
    while start < p.terms.len() {
        let (pos, m, c) = &p.terms[start];
        let reducer = leads.iter().position(|l| match l {
            Some((lp, lm, _)) => lp == pos && lm.divides(m),
            None => false,
        });
        match reducer {
            Some(k) => {
                let (_, lm, lc) = leads[k].expect("nonzero");
                let q = lm.quotient_of(m);
                let coef = c.div(lc);
                p = p.sub_mul_from(start, &coef, &q, &basis[k], ctx.order);
                start = 0;
                steps += 1;
                if steps % 64 == 0 {
                    p.check_limits(&ctx.limits)?;
                }
            }
            None => {
                rem.push(p.terms[start].clone());
                start += 1;
            }
        }
    }
    Ok(SVec { terms: rem })
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    pos: usize,
    lcm: Monomial,
    deg: i64,
}

pub(crate) struct GbOutput {
    /// Reduced Gröbner basis, sorted by decreasing leading term.
    pub basis: Vec<SVec>,
    /// Inputs that were not redundant when processed (in processing order).
    /// For homogeneous input these form a minimal generating set.
    pub minimal_inputs: Vec<usize>,
}

const MAX_BASIS: usize = 20_000;

pub(crate) fn groebner(inputs: &[SVec], ctx: &Ctx) -> Result<GbOutput> {
    let product_criterion = ctx.rank() == 1;
    let mut queue: Vec<(i64, usize)> = inputs
        .iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(i, v)| (v.degree(&ctx.shifts), i))
        .collect();
    queue.sort();
    let mut next_input = 0;

    let mut basis: Vec<SVec> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut minimal_inputs = Vec::new();

    loop {
        let best_pair = pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| (a.deg, a.i, a.j).cmp(&(b.deg, b.i, b.j)))
            .map(|(k, p)| (k, p.deg));
        let next = queue.get(next_input).copied();
        let candidate = match (best_pair, next) {
            (None, None) => break,
            (Some((k, d)), Some((e, _))) if d <= e => {
                let p = pairs.swap_remove(k);
                spoly(&basis[p.i], &basis[p.j], &p.lcm, ctx.order)
            }
            (Some((k, _)), None) => {
                let p = pairs.swap_remove(k);
                spoly(&basis[p.i], &basis[p.j], &p.lcm, ctx.order)
            }
            (_, Some((_, idx))) => {
                next_input += 1;
                let r = reduce(&inputs[idx], &basis, ctx)?;
                if !r.is_zero() {
                    minimal_inputs.push(idx);
                    insert(&mut basis, &mut pairs, r.monic(), ctx, product_criterion)?;
                }
                continue;
            }
        };
        let r = reduce(&candidate, &basis, ctx)?;
        if !r.is_zero() {
            insert(&mut basis, &mut pairs, r.monic(), ctx, product_criterion)?;
        }
    }

    Ok(GbOutput {
        basis: interreduce(basis, ctx)?,
        minimal_inputs,
    })
}

fn spoly(f: &SVec, g: &SVec, lcm: &Monomial, order: MonomialOrder) -> SVec {
    let (_, fm, _) = f.lead().expect("nonzero");
    let (_, gm, _) = g.lead().expect("nonzero");
    let one = f.terms[0].2.field().one();
    let a = f.mul_term(&fm.quotient_of(lcm), &one);
    a.sub_mul_from(0, &one, &gm.quotient_of(lcm), g, order)
}

/// Adds a monic element and updates the pair set (Gebauer–Möller).
fn insert(
    basis: &mut Vec<SVec>,
    pairs: &mut Vec<Pair>,
    h: SVec,
    ctx: &Ctx,
    product_criterion: bool,
) -> Result<()> {
    h.check_limits(&ctx.limits)?;
    if basis.len() >= MAX_BASIS {
        return Err(Error::ResourceLimit(format!(
            "Gröbner basis exceeds {MAX_BASIS} elements"
        )));
    }
    let k = basis.len();
    let (hp, hm) = {
        let (p, m, _) = h.lead().expect("nonzero");
        (*p, m.clone())
    };
    let shift = ctx.shifts[hp];

    pairs.retain(|p| {
        !(p.pos == hp
            && hm.divides(&p.lcm)
            && lead_mono(&basis[p.i]).lcm(&hm) != p.lcm
            && lead_mono(&basis[p.j]).lcm(&hm) != p.lcm)
    });

    let mut fresh: Vec<(Pair, bool)> = basis
        .iter()
        .enumerate()
        .filter(|(_, g)| g.lead_pos() == Some(hp))
        .map(|(i, g)| {
            let gm = lead_mono(g);
            let lcm = gm.lcm(&hm);
            let coprime = product_criterion && gm.is_coprime(&hm);
            let deg = lcm.degree() as i64 + shift;
            (Pair { i, j: k, pos: hp, lcm, deg }, coprime)
        })
        .collect();
    fresh.reverse();
    let mut kept: Vec<(Pair, bool)> = Vec::new();
    while let Some((p, coprime)) = fresh.pop() {
        let dominated = fresh.iter().any(|(q, _)| q.lcm.divides(&p.lcm))
            || kept.iter().any(|(q, _)| q.lcm.divides(&p.lcm));
        if coprime || !dominated {
            kept.push((p, coprime));
        }
    }
    pairs.extend(kept.into_iter().filter(|(_, c)| !c).map(|(p, _)| p));
    basis.push(h);
    Ok(())
}

fn lead_mono(v: &SVec) -> &Monomial {
    &v.terms[0].1
}

fn interreduce(basis: Vec<SVec>, ctx: &Ctx) -> Result<Vec<SVec>> {
    let keep: Vec<bool> = (0..basis.len())
        .map(|i| {
            let (pi, mi, _) = basis[i].lead().expect("nonzero");
            !basis.iter().enumerate().any(|(j, g)| {
                let (pj, mj, _) = g.lead().expect("nonzero");
                j != i && pj == pi && mj.divides(mi) && (mj != mi || j < i)
            })
        })
        .collect();
    let minimal: Vec<SVec> = basis
        .into_iter()
        .zip(keep)
        .filter(|(_, k)| *k)
        .map(|(g, _)| g)
        .collect();
    let mut out = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<SVec> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, g)| g.clone())
            .collect();
        out.push(reduce(&minimal[i], &others, ctx)?.monic());
    }
    out.sort_by(|a, b| {
        let (pa, ma, _) = a.lead().expect("nonzero");
        let (pb, mb, _) = b.lead().expect("nonzero");
        key_cmp(ctx.order, (*pb, mb), (*pa, ma))
    });
    Ok(out)
}

/// Kernel of the map `R^k -> R^r / <relations>` sending `e_l` to `cols[l]`.
///
/// `ctx` carries the shifts of the target `R^r`; `source_shifts` those of `R^k`.
/// Returns a Gröbner basis of the kernel (position-over-term on `R^k`).
pub(crate) fn kernel(
    cols: &[SVec],
    relations: &[SVec],
    ctx: &Ctx,
    source_shifts: &[i64],
    nvars: usize,
    one: &FieldElem,
) -> Result<Vec<SVec>> {
    let r = ctx.rank();
    let mut shifts = ctx.shifts.clone();
    shifts.extend_from_slice(source_shifts);
    let aug = Ctx {
        order: ctx.order,
        limits: ctx.limits,
        shifts,
    };
    let mut rows: Vec<SVec> = cols
        .iter()
        .enumerate()
        .map(|(l, c)| {
            let mut v = c.clone();
            v.terms.push((r + l, Monomial::one(nvars), one.clone()));
            v
        })
        .collect();
    rows.extend(relations.iter().cloned());
    let out = groebner(&rows, &aug)?;
    Ok(out
        .basis
        .into_iter()
        .filter(|v| v.lead_pos().is_some_and(|p| p >= r))
        .map(|v| SVec {
            terms: v
                .terms
                .into_iter()
                .map(|(p, m, c)| (p - r, m, c))
                .collect(),
        })
        .collect())
}

/// A non-redundant generating subset: minimal for homogeneous input, greedily
/// irredundant otherwise.
pub(crate) fn prune_generators(gens: Vec<SVec>, ctx: &Ctx) -> Result<Vec<SVec>> {
    let gens: Vec<SVec> = gens.into_iter().filter(|g| !g.is_zero()).collect();
    if gens.iter().all(|g| g.is_homogeneous(&ctx.shifts)) {
        let out = groebner(&gens, ctx)?;
        let mut idx = out.minimal_inputs;
        idx.sort_by_key(|&i| (gens[i].degree(&ctx.shifts), i));
        return Ok(idx.into_iter().map(|i| gens[i].clone()).collect());
    }
    let mut kept = gens;
    let mut i = kept.len();
    while i > 0 {
        i -= 1;
        let others: Vec<SVec> = kept
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, g)| g.clone())
            .collect();
        let gb = groebner(&others, ctx)?.basis;
        if reduce(&kept[i], &gb, ctx)?.is_zero() {
            kept.remove(i);
        }
    }
    Ok(kept)
}
