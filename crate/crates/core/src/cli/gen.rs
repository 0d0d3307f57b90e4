//! Seeded instance generation.
//!
//! The generator is ChaCha8 (`rand_chacha::ChaCha8Rng::seed_from_u64(seed)`),
//! consumed only through `next_u64`; a choice among `n` options is
//! `next_u64() % n`. Both are platform-independent, so a seed pins the output
//! byte for byte.
//!
//! Every profile starts from a monomial complete intersection `I` in
//! `x1..xn`: the variables are shuffled (Fisher–Yates) and consecutive pairs
//! give generators `x_p^e * x_q^f` with `e, f ∈ {1, 2}`.

use std::fmt;
use std::str::FromStr;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::instance::{CheckDirective, InstanceFile};
use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::ideal_ops::intersect_all;
use crate::linkage::{candidate_link, is_geometrically_linked, is_linked, CyclicModule, RegularSequenceWitness};
use crate::monomial::primary_decomposition_monomial;
use crate::poly::{Field, Monomial, MonomialOrder, PolyRing, Polynomial};
use crate::theorems::Selector;

pub const MAX_VARS: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Profile {
    MonomialCi,
    GeometricLinks,
    SelfLinks,
}

impl FromStr for Profile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "monomial-ci" => Ok(Profile::MonomialCi),
            "geometric-links" => Ok(Profile::GeometricLinks),
            "self-links" => Ok(Profile::SelfLinks),
            _ => Err(Error::InvalidArgument(format!(
                "unknown profile `{s}` (expected monomial-ci, geometric-links or self-links)"
            ))),
        }
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Profile::MonomialCi => "monomial-ci",
            Profile::GeometricLinks => "geometric-links",
            Profile::SelfLinks => "self-links",
        })
    }
}

struct Gen {
    rng: ChaCha8Rng,
}

impl Gen {
    fn pick(&mut self, n: usize) -> usize {
        (self.rng.next_u64() % n as u64) as usize
    }

    fn shuffled(&mut self, n: usize) -> Vec<usize> {
        let mut v: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            let j = self.pick(i + 1);
            v.swap(i, j);
        }
        v
    }

    fn complete_intersection(&mut self, ring: &PolyRing) -> Vec<Polynomial> {
        let n = ring.nvars();
        let pool = self.shuffled(n);
        let t = 1 + self.pick((n / 2).max(1));
        (0..t)
            .map(|l| {
                let mut e = vec![0u32; n];
                for &v in pool.iter().skip(2 * l).take(2) {
                    e[v] = 1 + self.pick(2) as u32;
                }
                ring.monomial(Monomial::from_exponents(e))
            })
            .collect()
    }

    /// Intersection of a random nonempty proper subset of the components of `I`.
    fn partial_intersection(&mut self, ring: &PolyRing, seq: &[Polynomial]) -> Result<Option<Ideal>> {
        let comps = primary_decomposition_monomial(&Ideal::new(ring, seq.to_vec())?)?;
        if comps.len() < 2 {
            return Ok(None);
        }
        let k = comps.len();
        let mask = 1 + self.pick((1usize << k) - 2);
        let chosen: Vec<Ideal> = (0..k)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| comps[i].clone())
            .collect();
        Ok(Some(intersect_all(ring, &chosen)?))
    }
}

fn minimal_gens(i: &Ideal) -> Result<Vec<Polynomial>> {
    i.minimal_generators()
}

/// Emits `count` instances of `profile` in `vars` variables.
pub fn generate_instances(seed: u64, profile: Profile, count: usize, vars: usize) -> Result<InstanceFile> {
    if count == 0 {
        return Err(Error::InvalidArgument("count must be at least 1".into()));
    }
    if vars == 0 || vars > MAX_VARS {
        return Err(Error::InvalidArgument(format!("vars must be in 1..={MAX_VARS}")));
    }
    if profile == Profile::GeometricLinks && vars < 2 {
        return Err(Error::InvalidArgument("geometric links need at least 2 variables".into()));
    }
    let names: Vec<String> = (1..=vars).map(|i| format!("x{i}")).collect();
    let ring = PolyRing::new(Field::Rational, names, MonomialOrder::GrevLex)?;
    let free = CyclicModule::free(&ring);
    let mut g = Gen {
        rng: ChaCha8Rng::seed_from_u64(seed),
    };
    let mut file = InstanceFile {
        ring_name: "R".into(),
        ring: ring.clone(),
        ideals: Vec::new(),
        modules: Vec::new(),
        regseqs: Vec::new(),
        checks: Vec::new(),
    };
    let mut attempts = 0usize;
    let mut k = 0usize;
    while k < count {
        attempts += 1;
        if attempts > 64 * count + 64 {
            return Err(Error::InvalidArgument(format!(
                "profile {profile} produced only {k} of {count} instances in {vars} variables"
            )));
        }
        let tag = k + 1;
        let (a, b, seq) = match profile {
            Profile::MonomialCi | Profile::GeometricLinks => {
                let seq = g.complete_intersection(&ring);
                let a = match g.partial_intersection(&ring, &seq)? {
                    Some(a) => a,
                    None if profile == Profile::MonomialCi => {
                        crate::monomial::monomial_radical(&Ideal::new(&ring, seq.clone())?)?
                    }
                    None => continue,
                };
                let w = RegularSequenceWitness::new(seq.clone(), &free)?;
                if !a.is_proper()? || a.contains_ideal(w.ideal())? && w.ideal().contains_ideal(&a)? {
                    continue;
                }
                if profile == Profile::GeometricLinks {
                    let b = candidate_link(&a, &w, &free)?;
                    if !b.is_proper()? || !is_geometrically_linked(&a, &b, &w, &free)? {
                        continue;
                    }
                    (a, Some(b), seq)
                } else {
                    (a, None, seq)
                }
            }
            Profile::SelfLinks => {
                let size = 1 + g.pick(vars);
                let chosen: Vec<usize> = g.shuffled(vars).into_iter().take(size).collect();
                let doubled = g.pick(size);
                let a = Ideal::new(&ring, chosen.iter().map(|&v| ring.var(v)).collect())?;
                let seq: Vec<Polynomial> = chosen
                    .iter()
                    .enumerate()
                    .map(|(l, &v)| {
                        let mut e = vec![0u32; vars];
                        e[v] = if l == doubled { 2 } else { 1 };
                        ring.monomial(Monomial::from_exponents(e))
                    })
                    .collect();
                let w = RegularSequenceWitness::new(seq.clone(), &free)?;
                if !is_linked(&a, &a, &w, &free)? {
                    continue;
                }
                (a.clone(), Some(a), seq)
            }
        };
        let mut args = vec![("a".to_string(), format!("a{tag}"))];
        file.ideals.push((format!("a{tag}"), minimal_gens(&a)?));
        if let Some(b) = b {
            file.ideals.push((format!("b{tag}"), minimal_gens(&b)?));
            args.push(("b".into(), format!("b{tag}")));
        }
        file.regseqs.push((format!("I{tag}"), seq));
        args.push(("I".into(), format!("I{tag}")));
        file.checks.push(CheckDirective {
            selector: Selector::All,
            args,
        });
        k += 1;
    }
    Ok(file)
}

/// Generated file text with a provenance comment.
pub fn render(seed: u64, profile: Profile, count: usize, vars: usize) -> Result<String> {
    let file = generate_instances(seed, profile, count, vars)?;
    Ok(format!(
        "# generated by linkcheck gen --seed {seed} --profile {profile} --count {count} --vars {vars}\n{file}"
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::instance::parse_instance;

    #[test]
    fn deterministic_and_round_trips() {
        for p in [Profile::MonomialCi, Profile::GeometricLinks, Profile::SelfLinks] {
            let x = render(1, p, 4, 4).unwrap();
            assert_eq!(x, render(1, p, 4, 4).unwrap());
            let f = parse_instance(&x).unwrap();
            assert_eq!(f.checks.len(), 4);
            assert_eq!(parse_instance(&f.to_string()).unwrap(), f);
        }
    }

    #[test]
    fn monomial_ci_has_two_variable_generators() {
        let f = generate_instances(1, Profile::MonomialCi, 6, 4).unwrap();
        assert!(f
            .regseqs
            .iter()
            .flat_map(|(_, s)| s)
            .any(|p| p.terms()[0].0.support().len() == 2));
    }

    #[test]
    fn rejects_impossible_profiles() {
        assert!(generate_instances(1, Profile::GeometricLinks, 1, 1).is_err());
        assert!(generate_instances(1, Profile::MonomialCi, 0, 3).is_err());
        assert!(generate_instances(1, Profile::MonomialCi, 1, 9).is_err());
    }
}
