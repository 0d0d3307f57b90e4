//! Property tests for the algebraic invariants of each module.

use std::cmp::Ordering;

use linkcheck::cli::gen::{generate_instances, Profile};
use linkcheck::groebner::{
    ideal_membership, polynomial_syzygies, reduce_normal_form, reduced_groebner_basis, Ideal,
};
use linkcheck::homalg::{free_resolution, grade_via_ext, pd_via_resolution};
use linkcheck::ideal_ops::{ideal_equal, ideal_quotient, intersect_all, radical_membership};
use linkcheck::linkage::{
    aprime_construct, candidate_link, cd_bounds, is_geometrically_linked, is_linked, s_membership,
    CyclicModule, RegularSequenceWitness,
};
use linkcheck::monomial::{
    associated_primes_monomial, cd_monomial, ext_nonvanishing_degrees, hochster_pd,
    minimal_primes_monomial, monomial_radical, primary_decomposition_monomial,
};
use linkcheck::poly::{Field, Monomial, MonomialOrder, PolyRing, Polynomial};
use linkcheck::theorems::{run_suite, Status};
use proptest::prelude::*;

fn ring(n: usize, order: MonomialOrder) -> PolyRing {
    PolyRing::new(Field::Rational, (1..=n).map(|i| format!("x{i}")).collect(), order).unwrap()
}

fn poly(r: &PolyRing, terms: &[(i64, Vec<u32>)]) -> Polynomial {
    Polynomial::from_terms(
        r,
        terms
            .iter()
            .map(|(c, e)| (Monomial::from_exponents(e.clone()), r.field().from_i64(*c)))
            .collect(),
    )
}

fn terms_strategy(n: usize, max_terms: usize, max_exp: u32) -> impl Strategy<Value = Vec<(i64, Vec<u32>)>> {
    prop::collection::vec((-3i64..=3, prop::collection::vec(0..=max_exp, n)), 1..=max_terms)
}

fn exps_strategy(n: usize, max_exp: u32, max_gens: usize) -> impl Strategy<Value = Vec<Vec<u32>>> {
    prop::collection::vec(
        prop::collection::vec(0..=max_exp, n).prop_filter("non-unit", |e| e.iter().any(|&x| x > 0)),
        1..=max_gens,
    )
}

fn mono_ideal(r: &PolyRing, exps: &[Vec<u32>]) -> Ideal {
    let ms: Vec<Monomial> = exps.iter().map(|e| Monomial::from_exponents(e.clone())).collect();
    Ideal::from_monomials(r, &ms)
}

fn squarefree(masks: &[u8], n: usize) -> Vec<Vec<u32>> {
    masks
        .iter()
        .map(|m| (0..n).map(|i| u32::from(m >> i & 1)).collect())
        .collect()
}

/// Monomial ideal intersection by pairwise lcms (independent of the library's elimination).
fn lcm_intersection(r: &PolyRing, a: &[Monomial], b: &[Monomial]) -> Ideal {
    let ms: Vec<Monomial> = a.iter().flat_map(|x| b.iter().map(move |y| x.lcm(y))).collect();
    Ideal::from_monomials(r, &ms)
}

fn gens_of(i: &Ideal) -> Vec<Monomial> {
    i.monomial_generators().unwrap().unwrap()
}

fn cfg(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        ..ProptestConfig::default()
    }
}

// ---------- poly ----------

proptest! {
    #![proptest_config(cfg(64))]

    #[test]
    fn print_parse_round_trip(t in terms_strategy(3, 5, 3), lex in any::<bool>()) {
        let r = ring(3, if lex { MonomialOrder::Lex } else { MonomialOrder::GrevLex });
        let p = poly(&r, &t);
        prop_assert_eq!(r.parse(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn ring_axioms(a in terms_strategy(3, 4, 2), b in terms_strategy(3, 4, 2), c in terms_strategy(3, 4, 2)) {
        let r = ring(3, MonomialOrder::GrevLex);
        let (a, b, c) = (poly(&r, &a), poly(&r, &b), poly(&r, &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert!((&a - &a).is_zero());
    }
}

#[test]
fn monomial_order_axioms() {
    let mut monos = Vec::new();
    for a in 0..=4u32 {
        for b in 0..=4 - a {
            for c in 0..=4 - a - b {
                monos.push(Monomial::from_exponents(vec![a, b, c]));
            }
        }
    }
    let one = Monomial::one(3);
    for order in [MonomialOrder::Lex, MonomialOrder::GrevLex] {
        for m in &monos {
            assert_ne!(order.cmp(m, &one), Ordering::Less);
            for n in &monos {
                let c = order.cmp(m, n);
                assert_eq!(c == Ordering::Equal, m == n);
                assert_eq!(order.cmp(n, m), c.reverse());
                for w in &monos {
                    if w.degree() <= 2 {
                        assert_eq!(order.cmp(&m.mul(w), &n.mul(w)), c);
                    }
                }
            }
        }
    }
}

// ---------- groebner ----------

fn small_ideal() -> impl Strategy<Value = Vec<Vec<(i64, Vec<u32>)>>> {
    prop::collection::vec(terms_strategy(3, 3, 2), 1..=3)
}

proptest! {
    #![proptest_config(cfg(48))]

    #[test]
    fn gb_permutation_invariant(gens in small_ideal(), seed in any::<u64>()) {
        let r = ring(3, MonomialOrder::GrevLex);
        let ps: Vec<Polynomial> = gens.iter().map(|t| poly(&r, t)).collect();
        let mut shuffled = ps.clone();
        let k = shuffled.len();
        shuffled.rotate_left((seed as usize) % k);
        if seed & 1 == 1 {
            shuffled.reverse();
        }
        let g1 = reduced_groebner_basis(&Ideal::new(&r, ps.clone()).unwrap()).unwrap();
        let g2 = reduced_groebner_basis(&Ideal::new(&r, shuffled).unwrap()).unwrap();
        prop_assert_eq!(&g1, &g2);
        let i = Ideal::new(&r, ps.clone()).unwrap();
        for g in &ps {
            prop_assert!(ideal_membership(g, &i).unwrap());
        }
    }

    #[test]
    fn normal_form_idempotent(gens in small_ideal(), f in terms_strategy(3, 5, 3)) {
        let r = ring(3, MonomialOrder::Lex);
        let i = Ideal::new(&r, gens.iter().map(|t| poly(&r, t)).collect()).unwrap();
        let b = reduced_groebner_basis(&i).unwrap();
        let f = poly(&r, &f);
        let nf = reduce_normal_form(&f, &b).unwrap();
        prop_assert_eq!(reduce_normal_form(&nf, &b).unwrap(), nf.clone());
        prop_assert!(ideal_membership(&(&f - &nf), &i).unwrap());
    }

    #[test]
    fn syzygies_vanish(gens in small_ideal()) {
        let r = ring(3, MonomialOrder::GrevLex);
        let ps: Vec<Polynomial> = gens.iter().map(|t| poly(&r, t)).filter(|p| !p.is_zero()).collect();
        prop_assume!(!ps.is_empty());
        for s in polynomial_syzygies(&ps).unwrap() {
            let mut acc = r.zero();
            for (c, g) in s.coords().iter().zip(&ps) {
                acc = &acc + &(c * g);
            }
            prop_assert!(acc.is_zero());
        }
    }
}

// ---------- ideal_ops ----------

proptest! {
    #![proptest_config(cfg(50))]

    #[test]
    fn colon_times_divisor_inside(i in exps_strategy(3, 2, 3), j in exps_strategy(3, 2, 2)) {
        let r = ring(3, MonomialOrder::GrevLex);
        let (i, j) = (mono_ideal(&r, &i), mono_ideal(&r, &j));
        let q = ideal_quotient(&i, &j).unwrap();
        for a in j.generators() {
            for b in q.generators() {
                prop_assert!(i.contains(&(a * b)).unwrap());
            }
        }
    }

    #[test]
    fn iterated_colon(i in exps_strategy(3, 2, 3), j in exps_strategy(3, 2, 2), k in exps_strategy(3, 2, 2)) {
        let r = ring(3, MonomialOrder::GrevLex);
        let (i, j, k) = (mono_ideal(&r, &i), mono_ideal(&r, &j), mono_ideal(&r, &k));
        let left = ideal_quotient(&ideal_quotient(&i, &j).unwrap(), &k).unwrap();
        let right = ideal_quotient(&i, &j.product(&k).unwrap()).unwrap();
        prop_assert!(ideal_equal(&left, &right).unwrap());
    }

    #[test]
    fn monomial_colon_rule(i in exps_strategy(3, 3, 3), j in exps_strategy(3, 3, 3)) {
        let r = ring(3, MonomialOrder::GrevLex);
        let (ii, jj) = (mono_ideal(&r, &i), mono_ideal(&r, &j));
        let (ig, jg) = (gens_of(&ii), gens_of(&jj));
        // (I : n) = (m / gcd(m, n)), and (I : J) = ∩_n (I : n).
        let mut expected: Option<Ideal> = None;
        for n in &jg {
            let part: Vec<Monomial> = ig.iter().map(|m| m.gcd(n).quotient_of(m)).collect();
            expected = Some(match expected {
                None => Ideal::from_monomials(&r, &part),
                Some(e) => lcm_intersection(&r, &gens_of(&e), &part),
            });
        }
        let got = ideal_quotient(&ii, &jj).unwrap();
        prop_assert!(ideal_equal(&got, &expected.unwrap()).unwrap());
    }

    #[test]
    fn radical_membership_brute_force(i in exps_strategy(3, 2, 3), f in prop::collection::vec(0u32..=2, 3)) {
        let r = ring(3, MonomialOrder::GrevLex);
        let i = mono_ideal(&r, &i);
        let f = r.monomial(Monomial::from_exponents(f));
        let mut power = r.one();
        let mut brute = false;
        for _ in 1..=8 {
            power = &power * &f;
            if i.contains(&power).unwrap() {
                brute = true;
                break;
            }
        }
        prop_assert_eq!(radical_membership(&f, &i).unwrap(), brute);
    }
}

// ---------- monomial ----------

proptest! {
    #![proptest_config(cfg(50))]

    #[test]
    fn decomposition_reproduces_ideal(n in 2usize..=6, raw in exps_strategy(6, 2, 4)) {
        let r = ring(n, MonomialOrder::GrevLex);
        let exps: Vec<Vec<u32>> = raw.iter().map(|e| e[..n].to_vec()).filter(|e| e.iter().any(|&x| x > 0)).collect();
        prop_assume!(!exps.is_empty());
        let i = mono_ideal(&r, &exps);
        let comps = primary_decomposition_monomial(&i).unwrap();
        prop_assert!(ideal_equal(&intersect_all(&r, &comps).unwrap(), &i).unwrap());
        // Irredundant: dropping any component enlarges the intersection.
        if comps.len() > 1 {
            for k in 0..comps.len() {
                let rest: Vec<Ideal> = comps.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, c)| c.clone()).collect();
                prop_assert!(!ideal_equal(&intersect_all(&r, &rest).unwrap(), &i).unwrap());
            }
        }
    }
}

proptest! {
    #![proptest_config(cfg(25))]

    #[test]
    fn hochster_matches_resolution(n in 2usize..=5, masks in prop::collection::vec(1u8..32, 1..=4)) {
        let r = ring(n, MonomialOrder::GrevLex);
        let masks: Vec<u8> = masks.into_iter().map(|m| m & ((1 << n) - 1)).filter(|&m| m != 0).collect();
        prop_assume!(!masks.is_empty());
        let i = mono_ideal(&r, &squarefree(&masks, n));
        prop_assert_eq!(hochster_pd(&i).unwrap(), pd_via_resolution(&i).unwrap());
    }

    #[test]
    fn cd_grade_relations(n in 2usize..=5, raw in exps_strategy(5, 2, 4)) {
        let r = ring(n, MonomialOrder::GrevLex);
        let exps: Vec<Vec<u32>> = raw.iter().map(|e| e[..n].to_vec()).filter(|e| e.iter().any(|&x| x > 0)).collect();
        prop_assume!(!exps.is_empty());
        let a = mono_ideal(&r, &exps);
        let rad = monomial_radical(&a).unwrap();
        let cd = cd_monomial(&a).unwrap();
        prop_assert_eq!(cd, cd_monomial(&rad).unwrap());
        let free = CyclicModule::free(&r);
        let grade = grade_via_ext(&a, &free).unwrap();
        prop_assert_eq!(grade, grade_via_ext(&rad, &free).unwrap());
        let ngens = gens_of(&a).len();
        prop_assert!(grade <= cd && cd <= ngens.min(n));
        let degrees = ext_nonvanishing_degrees(&rad).unwrap();
        prop_assert_eq!(*degrees.iter().next().unwrap(), grade);
        prop_assert_eq!(*degrees.iter().last().unwrap(), cd);
        // Polynomial rings are Cohen–Macaulay, so grade equals height.
        let height = minimal_primes_monomial(&a).unwrap().iter().map(|p| p.height()).min().unwrap();
        prop_assert_eq!(grade, height);
    }
}

// ---------- homalg ----------

proptest! {
    #![proptest_config(cfg(24))]

    #[test]
    fn resolutions_are_complexes(gens in small_ideal(), minimal in any::<bool>()) {
        let r = ring(3, MonomialOrder::GrevLex);
        let i = Ideal::new(&r, gens.iter().map(|t| poly(&r, t)).collect()).unwrap();
        prop_assume!(!i.is_zero() && i.is_proper().unwrap());
        prop_assume!(!minimal || i.is_homogeneous().unwrap());
        let res = free_resolution(&i, minimal).unwrap();
        prop_assert!(res.is_complex());
    }

    #[test]
    fn auslander_buchsbaum(n in 2usize..=4, masks in prop::collection::vec(1u8..16, 1..=4)) {
        let r = ring(n, MonomialOrder::GrevLex);
        let masks: Vec<u8> = masks.into_iter().map(|m| m & ((1 << n) - 1)).filter(|&m| m != 0).collect();
        prop_assume!(!masks.is_empty());
        let a = mono_ideal(&r, &squarefree(&masks, n));
        let maximal = Ideal::new(&r, (0..n).map(|i| r.var(i)).collect()).unwrap();
        let depth = grade_via_ext(&maximal, &CyclicModule::new(a.clone()).unwrap()).unwrap();
        prop_assert_eq!(pd_via_resolution(&a).unwrap() + depth, n);
    }

    #[test]
    fn grade_radical_invariance_over_quotients(a in exps_strategy(3, 2, 3), j in exps_strategy(3, 2, 2)) {
        let r = ring(3, MonomialOrder::GrevLex);
        let (a, j) = (mono_ideal(&r, &a), mono_ideal(&r, &j));
        let m = CyclicModule::new(j).unwrap();
        prop_assume!(m.extend(&a).unwrap().is_proper().unwrap());
        let rad = monomial_radical(&a).unwrap();
        prop_assert_eq!(grade_via_ext(&a, &m).unwrap(), grade_via_ext(&rad, &m).unwrap());
    }
}

// ---------- linkage ----------

/// A monomial complete intersection plus an ideal containing it.
fn linkage_data() -> impl Strategy<Value = (usize, u64, Vec<Vec<u32>>)> {
    (2usize..=4, any::<u64>(), exps_strategy(4, 2, 2))
}

proptest! {
    #![proptest_config(cfg(96))]

    #[test]
    fn linkage_invariants((n, seed, extra) in linkage_data()) {
        let file = generate_instances(seed, Profile::MonomialCi, 1, n).unwrap();
        let r = &file.ring;
        let free = CyclicModule::free(r);
        let seq = file.regseqs[0].1.clone();
        let w = RegularSequenceWitness::new(seq, &free).unwrap();
        let base = Ideal::new(r, file.ideals[0].1.clone()).unwrap();
        // Either the generated ideal or I plus a few extra monomials.
        let extra: Vec<Vec<u32>> = extra.iter().map(|e| e[..n].to_vec()).filter(|e| e.iter().any(|&x| x > 0)).collect();
        let a = if seed % 3 == 0 && !extra.is_empty() {
            w.ideal().sum(&mono_ideal(r, &extra)).unwrap()
        } else {
            base
        };
        prop_assume!(a.is_proper().unwrap());
        let b = candidate_link(&a, &w, &free).unwrap();
        prop_assume!(b.is_proper().unwrap());
        let ab = is_linked(&a, &b, &w, &free).unwrap();
        prop_assert_eq!(ab, is_linked(&b, &a, &w, &free).unwrap());
        if is_geometrically_linked(&a, &b, &w, &free).unwrap() {
            prop_assert!(ab);
        }
        let strict = !ideal_equal(&a, w.ideal()).unwrap();
        if strict {
            prop_assert_eq!(ab, s_membership(&a, &w, &free).unwrap());
        }
        if ab {
            prop_assert_eq!(grade_via_ext(&a, &free).unwrap(), w.len());
            let ass_i = associated_primes_monomial(w.ideal()).unwrap().all;
            for p in associated_primes_monomial(&a).unwrap().all {
                prop_assert!(ass_i.contains(&p));
            }
        }
        if grade_via_ext(&a, &free).unwrap() == w.len() {
            let ap = aprime_construct(&a, &w, &free).unwrap();
            prop_assert!(ap.contains_ideal(&a).unwrap());
            prop_assert!(ideal_equal(&monomial_radical(&ap).unwrap(), &ap).unwrap());
        }
        let rec = cd_bounds(&a, &free).unwrap();
        prop_assert!(rec.grade <= rec.cd.lower() && rec.cd.lower() <= rec.cd.upper());
    }
}

// ---------- theorems ----------

proptest! {
    #![proptest_config(cfg(48))]

    #[test]
    fn generated_instances_never_fail(seed in any::<u64>(), n in 2usize..=4, profile in 0usize..3) {
        let profile = [Profile::MonomialCi, Profile::GeometricLinks, Profile::SelfLinks][profile];
        let file = generate_instances(seed, profile, 2, n).unwrap();
        let suite = file.to_suite().unwrap();
        let first = run_suite(&suite, 1);
        let second = run_suite(&suite, 2);
        prop_assert_eq!(first.len(), second.len());
        for (x, y) in first.iter().zip(&second) {
            prop_assert_eq!(x.check, y.check);
            prop_assert_eq!(x.status, y.status);
            prop_assert_eq!(&x.details, &y.details);
            prop_assert!(x.status != Status::Fails, "{:?}", x);
            if x.status == Status::Inapplicable {
                prop_assert!(x.details.contains_key("violated_hypothesis"));
            }
        }
    }
}
