//! Verdict-producing checks, one per statement, and the suite runner.
//!
//! Every check recomputes both sides of its identity with the library's
//! oracles. A check whose hypotheses fail reports `inapplicable` and names the
//! hypothesis; it never reports `holds` or `fails` in that case.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::homalg::grade_via_ext;
use crate::ideal_ops::{ideal_equal, intersect_all, intersect_ideals, radicals_equal};
use crate::linkage::{
    aprime_construct, candidate_link, cd_bounds, is_geometrically_linked, is_linked,
    module_colon, s_membership, CdValue, CyclicModule, LinkageInstance, RegularSequenceWitness,
};
use crate::monomial::{
    associated_primes_monomial, cd_monomial, ext_nonvanishing_degrees, is_squarefree_monomial,
    monomial_radical, MonomialPrime,
};
use crate::poly::{Monomial, PolyRing, Polynomial};

/// Largest ring for which radical monomial ideals are enumerated exhaustively.
pub const BRUTE_FORCE_MAX_VARS: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum CheckId {
    #[serde(rename = "L07")]
    L07,
    #[serde(rename = "L1")]
    L1,
    #[serde(rename = "T8_MV")]
    T8Mv,
    #[serde(rename = "L5")]
    L5,
    #[serde(rename = "GRADE_FORMULA_T")]
    GradeFormulaT,
    #[serde(rename = "T5_CD")]
    T5Cd,
    #[serde(rename = "C3_E3")]
    C3E3,
    #[serde(rename = "APRIME_T7")]
    AprimeT7,
    #[serde(rename = "C4")]
    C4,
    #[serde(rename = "S_REFLEX")]
    SReflex,
    #[serde(rename = "C11_GLOBAL")]
    C11Global,
    #[serde(rename = "T1_GLOBAL")]
    T1Global,
    #[serde(rename = "C1_WITNESS")]
    C1Witness,
    /// Synthetic: compares the computed linkage type with a declared expectation.
    #[serde(rename = "EXPECT")]
    Expect,
}

impl CheckId {
    pub const INSTANCE_CHECKS: [CheckId; 10] = [
        CheckId::L07,
        CheckId::L1,
        CheckId::T8Mv,
        CheckId::L5,
        CheckId::GradeFormulaT,
        CheckId::T5Cd,
        CheckId::C3E3,
        CheckId::AprimeT7,
        CheckId::C4,
        CheckId::SReflex,
    ];

    pub const ALL: [CheckId; 14] = [
        CheckId::L07,
        CheckId::L1,
        CheckId::T8Mv,
        CheckId::L5,
        CheckId::GradeFormulaT,
        CheckId::T5Cd,
        CheckId::C3E3,
        CheckId::AprimeT7,
        CheckId::C4,
        CheckId::SReflex,
        CheckId::C11Global,
        CheckId::T1Global,
        CheckId::C1Witness,
        CheckId::Expect,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            CheckId::L07 => "L07",
            CheckId::L1 => "L1",
            CheckId::T8Mv => "T8_MV",
            CheckId::L5 => "L5",
            CheckId::GradeFormulaT => "GRADE_FORMULA_T",
            CheckId::T5Cd => "T5_CD",
            CheckId::C3E3 => "C3_E3",
            CheckId::AprimeT7 => "APRIME_T7",
            CheckId::C4 => "C4",
            CheckId::SReflex => "S_REFLEX",
            CheckId::C11Global => "C11_GLOBAL",
            CheckId::T1Global => "T1_GLOBAL",
            CheckId::C1Witness => "C1_WITNESS",
            CheckId::Expect => "EXPECT",
        }
    }

    /// Global checks take a ring (and the file's corpus) instead of an instance.
    pub fn is_global(&self) -> bool {
        matches!(self, CheckId::C11Global | CheckId::T1Global | CheckId::C1Witness)
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CheckId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CheckId::ALL
            .iter()
            .copied()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown check `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Holds,
    Fails,
    Inapplicable,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Holds => "holds",
            Status::Fails => "fails",
            Status::Inapplicable => "inapplicable",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub check: CheckId,
    pub status: Status,
    pub details: BTreeMap<String, Value>,
    pub witness: Option<Value>,
    pub millis: u64,
    /// Set when the verdict failed because a resource cap was hit.
    #[serde(skip)]
    pub resource_limited: bool,
}

/// Declared linkage type for the synthetic `EXPECT` check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Expectation {
    Linked,
    NotLinked,
    Geometric,
    NotGeometric,
    SelfLinked,
}

impl Expectation {
    pub fn as_str(&self) -> &'static str {
        match self {
            Expectation::Linked => "linked",
            Expectation::NotLinked => "not_linked",
            Expectation::Geometric => "geometric",
            Expectation::NotGeometric => "not_geometric",
            Expectation::SelfLinked => "selflinked",
        }
    }

    pub const ALL: [Expectation; 5] = [
        Expectation::Linked,
        Expectation::NotLinked,
        Expectation::Geometric,
        Expectation::NotGeometric,
        Expectation::SelfLinked,
    ];
}

impl FromStr for Expectation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Expectation::ALL
            .iter()
            .copied()
            .find(|e| e.as_str() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown expectation `{s}`")))
    }
}

/// Which checks a request runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Selector {
    One(CheckId),
    /// Every per-instance check.
    All,
}

/// One resolved `check` directive.
#[derive(Clone, Debug)]
pub struct CheckRequest {
    pub selector: Selector,
    pub a: Option<Ideal>,
    pub b: Option<Ideal>,
    /// Elements of the regular sequence generating `I`; empty means `I = 0`.
    pub i: Vec<Polynomial>,
    /// `J` with `M = R/J`; `None` means `M = R`.
    pub m: Option<Ideal>,
    pub alt: Option<Vec<Polynomial>>,
    pub expect: Option<Expectation>,
    /// Human-readable argument list, e.g. `a=a, I=I`.
    pub label: String,
}

/// A resolved instance file.
#[derive(Clone, Debug)]
pub struct Suite {
    pub ring: PolyRing,
    pub ideals: Vec<(String, Ideal)>,
    pub regseqs: Vec<(String, Vec<Polynomial>)>,
    pub requests: Vec<CheckRequest>,
}

/// Collects claims and report fields for one verdict.
#[derive(Default)]
struct Outcome {
    details: BTreeMap<String, Value>,
    failed: Vec<String>,
    inapplicable: Option<String>,
}

impl Outcome {
    fn set(&mut self, key: &str, v: impl Into<Value>) {
        self.details.insert(key.to_string(), v.into());
    }

    fn claim(&mut self, name: &str, ok: bool) {
        self.details.insert(format!("claim.{name}"), Value::Bool(ok));
        if !ok {
            self.failed.push(name.to_string());
        }
    }

    fn inapplicable(hypothesis: &str, why: impl Into<String>) -> Outcome {
        let mut o = Outcome {
            inapplicable: Some(hypothesis.to_string()),
            ..Outcome::default()
        };
        o.set("violated_hypothesis", hypothesis);
        o.set("reason", why.into());
        o
    }
}

fn canon(i: &Ideal) -> Result<String> {
    i.canonical()
}

fn render_primes(ring: &PolyRing, ps: &[MonomialPrime]) -> Value {
    Value::Array(ps.iter().map(|p| Value::String(p.render(ring))).collect())
}

fn polys_value(ps: &[Polynomial]) -> Value {
    Value::Array(ps.iter().map(|p| Value::String(p.to_string())).collect())
}

fn ideal_value(i: &Ideal) -> Value {
    polys_value(i.generators())
}

/// Data shared by the per-instance checks.
struct Prepared {
    inst: LinkageInstance,
    /// `b`, or the candidate link when no `b` was given.
    b: Ideal,
    linked: bool,
    geometric: bool,
    alt: Option<Vec<Polynomial>>,
}

impl Prepared {
    fn m(&self) -> &CyclicModule {
        &self.inst.module
    }

    fn ring(&self) -> &PolyRing {
        self.inst.ring()
    }

    fn ij(&self) -> Result<Ideal> {
        self.m().extend(self.inst.i())
    }

}

fn prepare(req: &CheckRequest, ring: &PolyRing) -> std::result::Result<Prepared, Outcome> {
    let build = || -> Result<std::result::Result<Prepared, Outcome>> {
        let Some(a) = req.a.clone() else {
            return Ok(Err(Outcome::inapplicable("instance", "no ideal a given")));
        };
        let module = match &req.m {
            None => CyclicModule::free(ring),
            Some(j) => match CyclicModule::new(j.clone()) {
                Ok(m) => m,
                Err(Error::UnitIdeal) => {
                    return Ok(Err(Outcome::inapplicable("nonzero_module", "M = 0")))
                }
                Err(e) => return Err(e),
            },
        };
        let witness = match RegularSequenceWitness::new(req.i.clone(), &module) {
            Ok(w) => w,
            Err(Error::InvalidWitness(msg)) => {
                return Ok(Err(Outcome::inapplicable("regular_sequence", msg)))
            }
            Err(e) => return Err(e),
        };
        let inst = match LinkageInstance::new(module, a, req.b.clone(), witness) {
            Ok(i) => i,
            Err(Error::Precondition(msg)) => {
                return Ok(Err(Outcome::inapplicable("instance", msg)))
            }
            Err(e) => return Err(e),
        };
        let b = match &req.b {
            Some(b) => b.clone(),
            None => candidate_link(&inst.a, &inst.witness, &inst.module)?,
        };
        let linked = match is_linked(&inst.a, &b, &inst.witness, &inst.module) {
            Ok(v) => v,
            Err(Error::Precondition(_)) => false,
            Err(e) => return Err(e),
        };
        let geometric = linked && is_geometrically_linked(&inst.a, &b, &inst.witness, &inst.module)?;
        Ok(Ok(Prepared {
            inst,
            b,
            linked,
            geometric,
            alt: req.alt.clone(),
        }))
    };
    match build() {
        Ok(r) => r,
        Err(e) => Err(error_outcome(e)),
    }
}

fn error_outcome(e: Error) -> Outcome {
    match e {
        Error::Precondition(msg) => Outcome::inapplicable("precondition", msg),
        other => {
            let mut o = Outcome::default();
            o.set(
                "reason",
                if other.is_resource_limit() {
                    "resource_limit"
                } else {
                    "error"
                },
            );
            o.set("error", other.to_string());
            o.failed.push("computation".into());
            o
        }
    }
}

fn require_linked(p: &Prepared) -> Option<Outcome> {
    (!p.linked).then(|| Outcome::inapplicable("linked", "a and b are not linked by I over M"))
}

fn common_details(p: &Prepared, o: &mut Outcome) -> Result<()> {
    o.set("a", canon(&p.inst.a)?);
    o.set("b", canon(&p.b)?);
    o.set("I", canon(p.inst.i())?);
    o.set("M", p.m().to_string());
    o.set("t", p.inst.t());
    o.set("linked", p.linked);
    o.set("geometric", p.geometric);
    Ok(())
}

fn cd_value(v: &CdValue) -> Value {
    serde_json::to_value(v).expect("serializable")
}

// Lemma l07: radical identities for linked ideals.
fn check_l07(p: &Prepared) -> Result<Outcome> {
    if let Some(o) = require_linked(p) {
        return Ok(o);
    }
    let mut o = Outcome::default();
    common_details(p, &mut o)?;
    let m = p.m();
    let meet = intersect_ideals(&p.inst.a, &p.b)?;
    o.claim(
        "radical_I_equals_radical_a_cap_b",
        radicals_equal(&p.ij()?, &m.extend(&meet)?)?,
    );
    if p.inst.i().is_zero() {
        let ann = module_colon(&Ideal::zero(p.ring()), &p.inst.a, m)?;
        o.set("J_colon_a", canon(&ann)?);
        o.claim("radical_J_colon_a_equals_radical_b", radicals_equal(&ann, &m.extend(&p.b)?)?);
    }
    Ok(o)
}

// Lemma l1: Ass(M/aM) ⊆ Ass(M/IM) (and likewise for b).
fn check_l1(p: &Prepared) -> Result<Outcome> {
    if let Some(o) = require_linked(p) {
        return Ok(o);
    }
    let m = p.m();
    let (aj, bj, ij) = (m.extend(&p.inst.a)?, m.extend(&p.b)?, p.ij()?);
    if !(aj.is_monomial()? && bj.is_monomial()? && ij.is_monomial()?) {
        return Ok(Outcome::inapplicable("monomial_data", "Ass needs monomial a+J, b+J, I+J"));
    }
    let mut o = Outcome::default();
    common_details(p, &mut o)?;
    let ring = p.ring();
    let ass_i = associated_primes_monomial(&ij)?.all;
    let ass_a = associated_primes_monomial(&aj)?.all;
    let ass_b = associated_primes_monomial(&bj)?.all;
    o.set("ass_M_IM", render_primes(ring, &ass_i));
    o.set("ass_M_aM", render_primes(ring, &ass_a));
    o.set("ass_M_bM", render_primes(ring, &ass_b));
    o.claim("ass_a_in_ass_I", ass_a.iter().all(|q| ass_i.contains(q)));
    o.claim("ass_b_in_ass_I", ass_b.iter().all(|q| ass_i.contains(q)));
    Ok(o)
}

// Prop t8: the Mayer–Vietoris bound on cd(a+b, M).
fn check_t8(p: &Prepared) -> Result<Outcome> {
    if let Some(o) = require_linked(p) {
        return Ok(o);
    }
    let m = p.m();
    let sum = p.inst.a.sum(&p.b)?;
    let (ra, rb, rs) = (cd_bounds(&p.inst.a, m)?, cd_bounds(&p.b, m)?, cd_bounds(&sum, m)?);
    let (Some(ca), Some(cb), Some(cs)) = (ra.cd.exact(), rb.cd.exact(), rs.cd.exact()) else {
        let mut o = Outcome::inapplicable("cd_oracle", "no exact cd oracle for a, b or a+b");
        o.set("cd_a", cd_value(&ra.cd));
        o.set("cd_b", cd_value(&rb.cd));
        o.set("cd_a_plus_b", cd_value(&rs.cd));
        return Ok(o);
    };
    let mut o = Outcome::default();
    common_details(p, &mut o)?;
    let t = p.inst.t();
    let bound = ca.max(cb).max(t + 1);
    o.set("cd_a", ca);
    o.set("cd_b", cb);
    o.set("cd_a_plus_b", cs);
    o.set("bound", bound);
    o.claim("cd_sum_at_most_bound", cs <= bound);
    let equality_expected = cs > t || p.geometric;
    o.set("equality_expected", equality_expected);
    if equality_expected {
        o.claim("cd_sum_equals_bound", cs == bound);
    }
    Ok(o)
}

// Prop l5: vanishing pattern (i) and the I = 0 identity (ii).
fn check_l5(p: &Prepared) -> Result<Outcome> {
    if let Some(o) = require_linked(p) {
        return Ok(o);
    }
    let m = p.m();
    let mut o = Outcome::default();
    common_details(p, &mut o)?;
    let mut parts = 0;

    let sum = p.inst.a.sum(&p.b)?;
    let rs = cd_bounds(&sum, m)?;
    if rs.cd.exact() == Some(rs.grade) {
        let ra = cd_bounds(&p.inst.a, m)?;
        let allowed = [ra.grade, rs.grade];
        o.set("grade_a", ra.grade);
        o.set("grade_a_plus_b", rs.grade);
        if m.is_free() && is_squarefree_monomial(&p.inst.a)? {
            let degrees = ext_nonvanishing_degrees(&p.inst.a)?;
            o.set("nonvanishing_degrees", degrees.iter().copied().collect::<Vec<_>>());
            o.claim("vanishing_pattern", degrees.iter().all(|i| allowed.contains(i)));
            parts += 1;
        } else if let Some(ca) = ra.cd.exact() {
            // H^grade and H^cd never vanish, so cd must be an allowed degree.
            o.set("cd_a", ca);
            o.claim("cd_in_allowed_degrees", allowed.contains(&ca));
            parts += 1;
        }
    }

    if p.inst.i().is_zero() {
        let quotient = CyclicModule::new(m.extend(&p.b)?)?;
        let left = cd_bounds(&p.inst.a, m)?.cd;
        let right = match cd_bounds(&p.inst.a, &quotient) {
            Ok(r) => Some(r.cd),
            Err(Error::GradeUndefined) => None,
            Err(e) => return Err(e),
        };
        if let (Some(l), Some(Some(r))) = (left.exact(), right.map(|r| r.exact())) {
            o.set("cd_a_M", l);
            o.set("cd_a_M_mod_bM", r);
            o.claim("cd_equals_cd_mod_b", l == r);
            parts += 1;
        }
    }

    if parts == 0 {
        return Ok(Outcome::inapplicable(
            "relative_cm_or_zero_I",
            "M is not relative CM w.r.t. a+b with computable cd, and I ≠ 0",
        ));
    }
    Ok(o)
}

// Prop t: grade_M(a+b) = grade_M I + 1 for geometric links.
fn check_grade_formula(p: &Prepared) -> Result<Outcome> {
    if !p.geometric {
        return Ok(Outcome::inapplicable(
            "geometric_linkage",
            "a and b are not geometrically linked by I over M",
        ));
    }
    let mut o = Outcome::default();
    common_details(p, &mut o)?;
    let g = grade_via_ext(&p.inst.a.sum(&p.b)?, p.m())?;
    o.set("grade_a_plus_b", g);
    o.set("t_plus_1", p.inst.t() + 1);
    o.claim("grade_sum_equals_t_plus_1", g == p.inst.t() + 1);
    Ok(o)
}

fn primes_ideal(ring: &PolyRing, ps: &[MonomialPrime]) -> Result<Ideal> {
    let ideals: Vec<Ideal> = ps.iter().map(|q| q.to_ideal(ring)).collect();
    intersect_all(ring, &ideals)
}

fn contains_ideal(p: &MonomialPrime, ring: &PolyRing, i: &Ideal) -> Result<bool> {
    p.to_ideal(ring).contains_ideal(i)
}

// Thm t5: the cd membership formula, via its computable shadow.
fn check_t5(p: &Prepared) -> Result<Outcome> {
    if !p.ij()?.is_monomial()? {
        return Ok(Outcome::inapplicable("monomial_data", "Ass(M/IM) needs monomial I+J"));
    }
    let ring = p.ring();
    let ass = associated_primes_monomial(&p.ij()?)?;
    if !ass.is_unmixed() {
        let mut o = Outcome::inapplicable("unmixed", "Ass M/IM ≠ Min Ass M/IM");
        o.set("ass_M_IM", render_primes(ring, &ass.all));
        o.set("min_ass_M_IM", render_primes(ring, &ass.minimal));
        return Ok(o);
    }
    if let Some(o) = require_linked(p) {
        return Ok(o);
    }
    let m = p.m();
    let a = &p.inst.a;
    let mut o = Outcome::default();
    common_details(p, &mut o)?;
    o.set("ass_M_IM", render_primes(ring, &ass.all));
    let rec = cd_bounds(a, m)?;
    let grade = rec.grade;
    o.set("grade_a", grade);
    o.set("cd_a", cd_value(&rec.cd));
    o.claim("grade_equals_t", grade == p.inst.t());

    let mut inside = Vec::new();
    let mut excluded = Vec::new();
    for q in &ass.all {
        if contains_ideal(q, ring, a)? {
            inside.push(q.clone());
        } else {
            excluded.push(q.clone());
        }
    }
    if excluded.is_empty() {
        o.set("branch", "cd_equals_grade");
        match rec.cd.exact() {
            Some(cd) => o.claim("cd_equals_grade", cd == grade),
            None => o.claim("cd_equals_grade", rec.cd.lower() == grade && rec.cd.upper() == grade),
        }
        return Ok(o);
    }
    o.set("branch", "c_construction");
    let c = primes_ideal(ring, &excluded)?;
    o.set("c", canon(&c)?);
    o.set("ass_outside_V_a", render_primes(ring, &excluded));
    let ac = intersect_ideals(a, &c)?;
    o.claim("radical_I_equals_radical_a_cap_c", radicals_equal(&p.ij()?, &m.extend(&ac)?)?);
    let grade_ac = match grade_via_ext(&a.sum(&c)?, m) {
        Ok(g) => Some(g),
        Err(Error::GradeUndefined) => None,
        Err(e) => return Err(e),
    };
    o.set("grade_a_plus_c", grade_ac.map_or(Value::from("infinite"), Value::from));
    o.claim("grade_a_plus_c_exceeds_grade", grade_ac.is_none_or(|g| g > grade));
    let inter = primes_ideal(ring, &inside)?;
    o.claim("e1_radical_a_equals_cap_ass_in_V_a", radicals_equal(&m.extend(a)?, &inter)?);
    if let Some(cd) = rec.cd.exact() {
        o.claim("grade_at_most_cd", grade <= cd);
        if cd != grade {
            // The value the theorem assigns to cd(a, H^t_c(M)); reported, not computed.
            o.set("implied_cd_a_H_t_c", cd - grade);
            o.claim("implied_value_positive", cd - grade >= 1);
        }
    }
    Ok(o)
}

// Cor c3: identity (e3) for geometric links and Cor c2's predicted constant.
fn check_c3(p: &Prepared) -> Result<Outcome> {
    if !p.geometric {
        return Ok(Outcome::inapplicable(
            "geometric_linkage",
            "a and b are not geometrically linked by I over M",
        ));
    }
    if !p.ij()?.is_monomial()? {
        return Ok(Outcome::inapplicable("monomial_data", "Ass(M/IM) needs monomial I+J"));
    }
    let ring = p.ring();
    let m = p.m();
    let mut o = Outcome::default();
    common_details(p, &mut o)?;
    let ass = associated_primes_monomial(&p.ij()?)?.all;
    let mut outside_a = Vec::new();
    let mut in_b = Vec::new();
    for q in &ass {
        if !contains_ideal(q, ring, &p.inst.a)? {
            outside_a.push(q.clone());
        }
        if contains_ideal(q, ring, &p.b)? {
            in_b.push(q.clone());
        }
    }
    o.set("ass_outside_V_a", render_primes(ring, &outside_a));
    o.set("ass_in_V_b", render_primes(ring, &in_b));
    o.claim("e3", outside_a == in_b);
    let cap = primes_ideal(ring, &outside_a)?;
    o.claim("radical_b_equals_cap_ass_outside_V_a", radicals_equal(&m.extend(&p.b)?, &cap)?);
    let rec = cd_bounds(&p.inst.a, m)?;
    o.set("grade_a", rec.grade);
    o.set("cd_a", cd_value(&rec.cd));
    if let Some(cd) = rec.cd.exact() {
        let constant = if cd == rec.grade { 1 } else { cd - rec.grade };
        o.set("c2_predicted_constant", constant);
        if cd != rec.grade {
            // Cor c3: cd(a, H^t_b(M)) = cd - grade, reported as the implied value.
            o.set("implied_cd_a_H_t_b", cd - rec.grade);
        }
    }
    Ok(o)
}

/// Every squarefree monomial ideal of `ring` (antichains of variable subsets).
fn radical_monomial_ideals(ring: &PolyRing) -> Vec<Ideal> {
    let n = ring.nvars();
    let subsets: Vec<u32> = (1..1u32 << n).collect();
    let mut out = Vec::new();
    let mut chosen: Vec<u32> = Vec::new();
    fn rec(idx: usize, subsets: &[u32], chosen: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if idx == subsets.len() {
            out.push(chosen.clone());
            return;
        }
        rec(idx + 1, subsets, chosen, out);
        let s = subsets[idx];
        if chosen.iter().all(|&c| c & s != c && c & s != s) {
            chosen.push(s);
            rec(idx + 1, subsets, chosen, out);
            chosen.pop();
        }
    }
    let mut antichains = Vec::new();
    rec(0, &subsets, &mut chosen, &mut antichains);
    for ac in antichains {
        if ac.is_empty() {
            continue;
        }
        let monos: Vec<Monomial> = ac
            .iter()
            .map(|&s| Monomial::from_exponents((0..n).map(|i| s >> i & 1).collect()))
            .collect();
        out.push(Ideal::from_monomials(ring, &monos));
    }
    out
}

// Prop t7: the a′ construction, minimality and independence of I.
fn check_aprime(p: &Prepared) -> Result<Outcome> {
    let m = p.m();
    let a = &p.inst.a;
    if !p.ij()?.is_monomial()? {
        return Ok(Outcome::inapplicable("monomial_data", "Ass(M/IM) needs monomial I+J"));
    }
    let grade = grade_via_ext(a, m)?;
    if grade != p.inst.t() {
        let mut o = Outcome::inapplicable("grade_equals_t", "grade_M a differs from the length of I");
        o.set("grade_a", grade);
        return Ok(o);
    }
    let ring = p.ring();
    let ap = aprime_construct(a, &p.inst.witness, m)?;
    let mut o = Outcome::default();
    common_details(p, &mut o)?;
    o.set("aprime", canon(&ap)?);
    o.claim("a_inside_aprime", ap.contains_ideal(a)?);
    if ideal_equal(&ap, &p.ij()?)? {
        return Ok(Outcome::inapplicable(
            "strict_containment",
            "a′ = I + Ann M, so a′ is not a proper overideal of I",
        ));
    }
    o.claim("aprime_in_S", s_membership(&ap, &p.inst.witness, m)?);
    o.claim("aprime_radical", ideal_equal(&monomial_radical(&ap)?, &ap)?);
    if let Some(alt) = &p.alt {
        match RegularSequenceWitness::new(alt.clone(), m) {
            Ok(w2) if m.extend(a)?.contains_ideal(w2.ideal())? && w2.len() == grade => {
                if !m.extend(w2.ideal())?.is_monomial()? {
                    o.set("alternate", "skipped: non-monomial");
                } else {
                    let ap2 = aprime_construct(a, &w2, m)?;
                    o.set("aprime_alternate", canon(&ap2)?);
                    o.claim("independent_of_I", ideal_equal(&ap, &ap2)?);
                }
            }
            _ => {
                return Ok(Outcome::inapplicable(
                    "alternate_regular_sequence",
                    "alt is not a maximal M-regular sequence inside a",
                ))
            }
        }
    }
    if ring.nvars() <= BRUTE_FORCE_MAX_VARS {
        let ij = p.ij()?;
        let mut checked = 0usize;
        let mut violations = Vec::new();
        for c in radical_monomial_ideals(ring) {
            let cj = m.extend(&c)?;
            if !cj.contains_ideal(a)? || cj.is_unit()? || ideal_equal(&cj, &ij)? || !cj.contains_ideal(&ij)? {
                continue;
            }
            if s_membership(&c, &p.inst.witness, m)? {
                checked += 1;
                if !c.contains_ideal(&ap)? {
                    violations.push(canon(&c)?);
                }
            }
        }
        o.set("minimality_candidates", checked);
        if !violations.is_empty() {
            o.set("minimality_violations", violations.clone());
        }
        o.claim("aprime_minimal", violations.is_empty());
    }
    Ok(o)
}

// Cor c4: √(a + Ann M) = a′ for linked a.
fn check_c4(p: &Prepared) -> Result<Outcome> {
    if let Some(o) = require_linked(p) {
        return Ok(o);
    }
    if !p.ij()?.is_monomial()? {
        return Ok(Outcome::inapplicable("monomial_data", "Ass(M/IM) needs monomial I+J"));
    }
    let m = p.m();
    let a = &p.inst.a;
    let mut o = Outcome::default();
    common_details(p, &mut o)?;
    let ap = aprime_construct(a, &p.inst.witness, m)?;
    o.set("aprime", canon(&ap)?);
    o.claim("radical_a_equals_aprime", radicals_equal(&m.extend(a)?, &ap)?);
    Ok(o)
}

// The double-colon set: a ∈ S ⟺ a is linked to its candidate partner.
fn check_s_reflex(p: &Prepared) -> Result<Outcome> {
    let m = p.m();
    let a = &p.inst.a;
    let ij = p.ij()?;
    if ideal_equal(&m.extend(a)?, &ij)? {
        return Ok(Outcome::inapplicable("strict_containment", "I = a"));
    }
    let mut o = Outcome::default();
    common_details(p, &mut o)?;
    let member = s_membership(a, &p.inst.witness, m)?;
    let cand = candidate_link(a, &p.inst.witness, m)?;
    let linked_to_candidate = match is_linked(a, &cand, &p.inst.witness, m) {
        Ok(v) => v,
        Err(Error::Precondition(_)) => false,
        Err(e) => return Err(e),
    };
    o.set("in_S", member);
    o.set("candidate_link", canon(&cand)?);
    o.set("linked_to_candidate", linked_to_candidate);
    o.claim("reflexivity_criterion", member == linked_to_candidate);
    if p.linked {
        o.claim("linked_a_in_S", member);
        if !ideal_equal(&m.extend(&p.b)?, &ij)? {
            o.claim("linked_b_in_S", s_membership(&p.b, &p.inst.witness, m)?);
        }
    }
    Ok(o)
}

fn check_expect(p: &Prepared, expect: Option<Expectation>) -> Result<Outcome> {
    let Some(e) = expect else {
        return Ok(Outcome::inapplicable("expectation", "no expect= argument"));
    };
    let mut o = Outcome::default();
    common_details(p, &mut o)?;
    o.set("expected", e.as_str());
    let self_linked = p.linked && ideal_equal(&p.m().extend(&p.inst.a)?, &p.m().extend(&p.b)?)?;
    let ok = match e {
        Expectation::Linked => p.linked,
        Expectation::NotLinked => !p.linked,
        Expectation::Geometric => p.geometric,
        Expectation::NotGeometric => !p.geometric,
        Expectation::SelfLinked => self_linked,
    };
    o.claim("expectation_met", ok);
    Ok(o)
}

fn var_monomial(n: usize, exps: &[(usize, u32)]) -> Monomial {
    let mut e = vec![0; n];
    for &(i, k) in exps {
        e[i] += k;
    }
    Monomial::from_exponents(e)
}

// Cor c11: complementary parts of a regular sequence are never linked.
fn check_c11(ring: &PolyRing) -> Result<Outcome> {
    let n = ring.nvars();
    if n < 4 {
        return Ok(Outcome::inapplicable("four_variables", "needs at least four variables"));
    }
    let free = CyclicModule::free(ring);
    let mut o = Outcome::default();
    let mut tested = Vec::new();
    let mut linked_pairs = Vec::new();
    for j in 2..=n / 2 {
        let left: Vec<usize> = (0..j).collect();
        let right: Vec<usize> = (j..2 * j).collect();
        let a = Ideal::new(ring, left.iter().map(|&i| ring.var(i)).collect())?;
        let b = Ideal::new(ring, right.iter().map(|&i| ring.var(i)).collect())?;
        // Complete intersections x_{l}^e · x_{σ(l)}^f inside a ∩ b, for the
        // identity and the reversal pairing; exponents 1 and 2 when j = 2.
        let exps: &[u32] = if j == 2 { &[1, 2] } else { &[1] };
        for pairing in [false, true] {
            for &e in exps {
                for &f in exps {
                    let seq: Vec<Polynomial> = (0..j)
                        .map(|l| {
                            let r = if pairing { right[j - 1 - l] } else { right[l] };
                            let (ee, ff) = if l == 0 { (e, f) } else { (1, 1) };
                            ring.monomial(var_monomial(n, &[(left[l], ee), (r, ff)]))
                        })
                        .collect();
                    let w = RegularSequenceWitness::new(seq.clone(), &free)?;
                    let linked = match is_linked(&a, &b, &w, &free) {
                        Ok(v) => v,
                        Err(Error::Precondition(_)) => false,
                        Err(e) => return Err(e),
                    };
                    let label = format!("{} ~ {} by {}", a, b, w.ideal());
                    if linked {
                        linked_pairs.push(label.clone());
                    }
                    tested.push(label);
                }
            }
        }
    }
    tested.dedup();
    o.set("tested", tested.clone());
    if !linked_pairs.is_empty() {
        o.set("linked_pairs", linked_pairs.clone());
    }
    o.claim("no_pair_linked", linked_pairs.is_empty());
    Ok(o)
}

// Thm t1 on the file's corpus (M = R, monomial data).
fn check_t1(suite: &Suite) -> Result<Outcome> {
    let ring = &suite.ring;
    let free = CyclicModule::free(ring);
    let dim = ring.nvars();
    let mut o = Outcome::default();
    let mut pairs = Vec::new();
    let mut violations = Vec::new();
    for (iname, seq) in &suite.regseqs {
        if seq.is_empty() {
            continue;
        }
        let Ok(w) = RegularSequenceWitness::new(seq.clone(), &free) else {
            continue;
        };
        let i = w.ideal();
        if !i.is_monomial()? {
            continue;
        }
        let ass = associated_primes_monomial(i)?.all;
        // cd(p, R) = height p for a monomial prime.
        if ass.iter().any(|q| q.height() >= dim) {
            continue;
        }
        for (aname, a) in &suite.ideals {
            if !a.is_monomial()? || a.is_zero() || !a.is_proper()? || !a.contains_ideal(i)? {
                continue;
            }
            if grade_via_ext(a, &free)? != w.len() {
                continue;
            }
            let cd = cd_monomial(a)?;
            pairs.push(json!({"I": iname, "a": aname, "cd_a": cd}));
            if cd >= dim {
                violations.push(format!("{aname} over {iname}"));
            }
        }
    }
    if pairs.is_empty() {
        return Ok(Outcome::inapplicable(
            "t1_hypothesis",
            "no corpus pair (I, a) satisfies the hypotheses",
        ));
    }
    o.set("dim_R", dim);
    o.set("pairs", Value::Array(pairs));
    o.claim("cd_below_dim", violations.is_empty());
    if !violations.is_empty() {
        o.set("violations", violations);
    }
    Ok(o)
}

// Cor c1, existence form: some linked b has H^{dim R}_b(R) ≠ 0.
fn check_c1(ring: &PolyRing) -> Result<Outcome> {
    let n = ring.nvars();
    let free = CyclicModule::free(ring);
    let maximal = Ideal::new(ring, (0..n).map(|i| ring.var(i)).collect())?;
    let mut o = Outcome::default();
    o.set(
        "note",
        "the printed statement reads as an existence claim; checked in that form by witness search",
    );
    // Candidates I = (x_1^{e_1}, ..., x_n^{e_n}), e ∈ {1,2}^n, not all 1.
    for code in 1..1u64 << n.min(12) {
        let seq: Vec<Polynomial> = (0..n)
            .map(|i| {
                let e = if i < 64 && code >> i & 1 == 1 { 2 } else { 1 };
                ring.monomial(var_monomial(n, &[(i, e)]))
            })
            .collect();
        let w = RegularSequenceWitness::new(seq, &free)?;
        let b = candidate_link(&maximal, &w, &free)?;
        if !b.is_proper()? || !b.is_monomial()? {
            continue;
        }
        if !is_linked(&maximal, &b, &w, &free)? {
            continue;
        }
        let cd = cd_monomial(&b)?;
        if cd == n {
            o.set("b", canon(&b)?);
            o.set("I", canon(w.ideal())?);
            o.set("partner", canon(&maximal)?);
            o.set("cd_b", cd);
            o.set("dim_R", n);
            o.claim("witness_found", true);
            return Ok(o);
        }
    }
    o.claim("witness_found", false);
    Ok(o)
}

fn finish(check: CheckId, outcome: Outcome, witness_base: Value, started: Instant) -> Verdict {
    let Outcome {
        mut details,
        failed,
        inapplicable,
    } = outcome;
    let resource_limited = details.get("reason").and_then(|v| v.as_str()) == Some("resource_limit");
    let (status, witness) = if inapplicable.is_some() {
        (Status::Inapplicable, None)
    } else if failed.is_empty() {
        (Status::Holds, None)
    } else {
        let mut w = witness_base;
        w["failed_claims"] = json!(failed);
        (Status::Fails, Some(w))
    };
    if let Some(h) = inapplicable {
        details.insert("violated_hypothesis".into(), Value::String(h));
    }
    Verdict {
        check,
        status,
        details,
        witness,
        millis: started.elapsed().as_millis() as u64,
        resource_limited,
    }
}

fn request_witness(ring: &PolyRing, req: &CheckRequest, check: CheckId) -> Value {
    let mut w = json!({
        "check": check.as_str(),
        "ring": ring.to_string(),
        "args": req.label,
    });
    if let Some(a) = &req.a {
        w["a"] = ideal_value(a);
    }
    if let Some(b) = &req.b {
        w["b"] = ideal_value(b);
    }
    w["I"] = polys_value(&req.i);
    w["J"] = req.m.as_ref().map_or(json!([]), ideal_value);
    if let Some(alt) = &req.alt {
        w["alt"] = polys_value(alt);
    }
    if let Some(e) = req.expect {
        w["expect"] = json!(e.as_str());
    }
    w
}

fn run_instance_check(check: CheckId, req: &CheckRequest, prepared: &std::result::Result<Prepared, Outcome>) -> Outcome {
    let p = match prepared {
        Ok(p) => p,
        Err(o) => {
            return Outcome {
                details: o.details.clone(),
                failed: o.failed.clone(),
                inapplicable: o.inapplicable.clone(),
            }
        }
    };
    let r = match check {
        CheckId::L07 => check_l07(p),
        CheckId::L1 => check_l1(p),
        CheckId::T8Mv => check_t8(p),
        CheckId::L5 => check_l5(p),
        CheckId::GradeFormulaT => check_grade_formula(p),
        CheckId::T5Cd => check_t5(p),
        CheckId::C3E3 => check_c3(p),
        CheckId::AprimeT7 => check_aprime(p),
        CheckId::C4 => check_c4(p),
        CheckId::SReflex => check_s_reflex(p),
        CheckId::Expect => check_expect(p, req.expect),
        CheckId::C11Global | CheckId::T1Global | CheckId::C1Witness => {
            unreachable!("global checks are dispatched separately")
        }
    };
    r.unwrap_or_else(error_outcome)
}

fn run_request(suite: &Suite, req: &CheckRequest) -> Vec<Verdict> {
    let ring = &suite.ring;
    let checks: Vec<CheckId> = match req.selector {
        Selector::All => CheckId::INSTANCE_CHECKS.to_vec(),
        Selector::One(c) => vec![c],
    };
    if let [c] = checks[..] {
        if c.is_global() {
            let started = Instant::now();
            let r = match c {
                CheckId::C11Global => check_c11(ring),
                CheckId::T1Global => check_t1(suite),
                _ => check_c1(ring),
            };
            let mut o = r.unwrap_or_else(error_outcome);
            o.set("args", req.label.clone());
            return vec![finish(c, o, request_witness(ring, req, c), started)];
        }
    }
    let started = Instant::now();
    let prepared = prepare(req, ring);
    let prep_ms = started.elapsed();
    checks
        .into_iter()
        .map(|c| {
            let t0 = Instant::now();
            let mut o = run_instance_check(c, req, &prepared);
            o.set("args", req.label.clone());
            let mut v = finish(c, o, request_witness(ring, req, c), t0);
            v.millis += prep_ms.as_millis() as u64;
            v
        })
        .collect()
}

/// Runs every request; verdict order follows the requests regardless of `jobs`.
pub fn run_suite(suite: &Suite, jobs: usize) -> Vec<Verdict> {
    let per_request: Vec<Vec<Verdict>> = if jobs > 1 {
        match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
            Ok(pool) => pool.install(|| suite.requests.par_iter().map(|r| run_request(suite, r)).collect()),
            Err(_) => suite.requests.iter().map(|r| run_request(suite, r)).collect(),
        }
    } else {
        suite.requests.iter().map(|r| run_request(suite, r)).collect()
    };
    let mut verdicts: Vec<Verdict> = per_request.into_iter().flatten().collect();
    c2_constancy(&mut verdicts);
    verdicts
}

/// Cor c2: the predicted constant must agree across geometric partners of the same `(a, M)`.
fn c2_constancy(verdicts: &mut [Verdict]) {
    let mut groups: BTreeMap<(String, String), Vec<usize>> = BTreeMap::new();
    for (k, v) in verdicts.iter().enumerate() {
        if v.check != CheckId::C3E3 || v.status == Status::Inapplicable {
            continue;
        }
        if !v.details.contains_key("c2_predicted_constant") {
            continue;
        }
        let key = |f: &str| v.details.get(f).and_then(|x| x.as_str()).unwrap_or("").to_string();
        groups.entry((key("a"), key("M"))).or_default().push(k);
    }
    for idx in groups.values() {
        let values: Vec<Value> = idx
            .iter()
            .map(|&k| verdicts[k].details["c2_predicted_constant"].clone())
            .collect();
        let partners: Vec<Value> = idx.iter().map(|&k| verdicts[k].details["b"].clone()).collect();
        let agree = values.windows(2).all(|w| w[0] == w[1]);
        for &k in idx {
            let v = &mut verdicts[k];
            v.details.insert("c2_partners".into(), Value::Array(partners.clone()));
            v.details.insert("claim.c2_constant_across_partners".into(), Value::Bool(agree));
            if !agree && v.status == Status::Holds {
                v.status = Status::Fails;
                v.witness = Some(json!({
                    "failed_claims": ["c2_constant_across_partners"],
                    "values": values.clone(),
                }));
            }
        }
    }
}
