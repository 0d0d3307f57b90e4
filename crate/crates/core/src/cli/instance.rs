//! Instance files: a line-oriented, semicolon-terminated declaration language.
//!
//! ```text
//! ring R = QQ[x, y] order grevlex;
//! ideal a = x;
//! ideal b = y;
//! regseq I = x*y;
//! module M = quotient 0;
//! check T5_CD (a=a, b=b, I=I, M=M);
//! ```

use std::fmt;

use crate::error::{Error, Position, Result};
use crate::groebner::Ideal;
use crate::poly::{parse_poly_at, parse_ring_body, Cursor};
use crate::poly::{Limits, PolyRing, Polynomial};
use crate::theorems::{CheckId, CheckRequest, Expectation, Selector, Suite};

/// Argument names accepted inside `check (...)`.
pub const ARG_NAMES: [&str; 7] = ["a", "b", "I", "M", "alt", "ring", "expect"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckDirective {
    pub selector: Selector,
    pub args: Vec<(String, String)>,
}

impl CheckDirective {
    pub fn arg(&self, name: &str) -> Option<&str> {
        self.args.iter().find(|(k, _)| k == name).map(|(_, v)| v.as_str())
    }

    fn label(&self) -> String {
        self.args
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(", ")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceFile {
    pub ring_name: String,
    pub ring: PolyRing,
    pub ideals: Vec<(String, Vec<Polynomial>)>,
    /// `None` is `quotient 0`, i.e. `M = R`.
    pub modules: Vec<(String, Option<String>)>,
    pub regseqs: Vec<(String, Vec<Polynomial>)>,
    pub checks: Vec<CheckDirective>,
}

impl InstanceFile {
    pub fn ideal(&self, name: &str) -> Option<&[Polynomial]> {
        lookup(&self.ideals, name).map(|v| v.as_slice())
    }

    pub fn regseq(&self, name: &str) -> Option<&[Polynomial]> {
        lookup(&self.regseqs, name).map(|v| v.as_slice())
    }

    pub fn module(&self, name: &str) -> Option<&Option<String>> {
        lookup(&self.modules, name)
    }

    fn seq_arg(&self, name: &str) -> Option<Vec<Polynomial>> {
        self.regseq(name).or_else(|| self.ideal(name)).map(<[_]>::to_vec)
    }

    /// Resolves names into the runner's input.
    pub fn to_suite(&self) -> Result<Suite> {
        let ring = &self.ring;
        let mk = |gens: &[Polynomial]| Ideal::new(ring, gens.to_vec());
        let ideals = self
            .ideals
            .iter()
            .map(|(n, g)| Ok((n.clone(), mk(g)?)))
            .collect::<Result<Vec<_>>>()?;
        let mut requests = Vec::new();
        for d in &self.checks {
            let ideal_arg = |k: &str| -> Result<Option<Ideal>> {
                d.arg(k).map(|n| mk(self.ideal(n).expect("resolved at parse time"))).transpose()
            };
            let m = match d.arg("M") {
                None => None,
                Some(n) => match self.module(n).expect("resolved at parse time") {
                    None => None,
                    Some(j) => Some(mk(self.ideal(j).expect("resolved at parse time"))?),
                },
            };
            requests.push(CheckRequest {
                selector: d.selector,
                a: ideal_arg("a")?,
                b: ideal_arg("b")?,
                i: d.arg("I").and_then(|n| self.seq_arg(n)).unwrap_or_default(),
                m,
                alt: d.arg("alt").and_then(|n| self.seq_arg(n)),
                expect: d.arg("expect").map(|e| e.parse()).transpose()?,
                label: d.label(),
            });
        }
        Ok(Suite {
            ring: ring.clone(),
            ideals,
            regseqs: self.regseqs.clone(),
            requests,
        })
    }
}

fn lookup<'a, T>(items: &'a [(String, T)], name: &str) -> Option<&'a T> {
    items.iter().find(|(n, _)| n == name).map(|(_, v)| v)
}

fn poly_list(f: &mut fmt::Formatter<'_>, ps: &[Polynomial]) -> fmt::Result {
    if ps.is_empty() {
        return f.write_str("0");
    }
    let parts: Vec<String> = ps.iter().map(|p| p.to_string()).collect();
    f.write_str(&parts.join(", "))
}

/// Canonical text; parsing it yields an equal `InstanceFile`.
impl fmt::Display for InstanceFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = &self.ring;
        writeln!(
            f,
            "ring {} = {}[{}] order {};",
            self.ring_name,
            r.field(),
            r.vars().join(", "),
            r.order()
        )?;
        for (n, g) in &self.ideals {
            write!(f, "ideal {n} = ")?;
            poly_list(f, g)?;
            writeln!(f, ";")?;
        }
        for (n, q) in &self.modules {
            writeln!(f, "module {n} = quotient {};", q.as_deref().unwrap_or("0"))?;
        }
        for (n, g) in &self.regseqs {
            write!(f, "regseq {n} = ")?;
            poly_list(f, g)?;
            writeln!(f, ";")?;
        }
        for d in &self.checks {
            let id = match d.selector {
                Selector::All => "ALL",
                Selector::One(c) => c.as_str(),
            };
            writeln!(f, "check {id} ({});", d.label())?;
        }
        Ok(())
    }
}

struct Parser<'a> {
    cur: Cursor<'a>,
    limits: Limits,
    ring: Option<(String, PolyRing)>,
    ideals: Vec<(String, Vec<Polynomial>)>,
    modules: Vec<(String, Option<String>)>,
    regseqs: Vec<(String, Vec<Polynomial>)>,
    checks: Vec<CheckDirective>,
}

impl<'a> Parser<'a> {
    fn name(&mut self) -> Result<(String, Position)> {
        self.cur.skip_ws();
        let pos = self.cur.position();
        Ok((self.cur.ident()?, pos))
    }

    fn ring(&self, pos: Position) -> Result<PolyRing> {
        self.ring
            .as_ref()
            .map(|(_, r)| r.clone())
            .ok_or(Error::Syntax {
                pos,
                message: "no ring in scope".into(),
            })
    }

    fn polys(&mut self, ring: &PolyRing) -> Result<Vec<Polynomial>> {
        let mut out = Vec::new();
        loop {
            let p = parse_poly_at(&mut self.cur, ring)?;
            if !p.is_zero() {
                out.push(p);
            }
            if !self.cur.eat(b',') {
                return Ok(out);
            }
        }
    }

    fn end(&mut self) -> Result<()> {
        if self.cur.eat(b';') {
            Ok(())
        } else {
            Err(self.cur.unexpected("`;`"))
        }
    }

    fn duplicate<T>(items: &[(String, T)], kind: &str, name: &str, pos: Position) -> Result<()> {
        if lookup(items, name).is_some() {
            return Err(Error::Syntax {
                pos,
                message: format!("duplicate {kind} name `{name}`"),
            });
        }
        Ok(())
    }

    fn statement(&mut self) -> Result<()> {
        self.cur.skip_ws();
        let pos = self.cur.position();
        let kw = self.cur.ident()?;
        match kw.as_str() {
            "ring" => {
                if self.ring.is_some() {
                    return Err(Error::Syntax {
                        pos,
                        message: "only one ring declaration per file".into(),
                    });
                }
                let (name, _) = self.name()?;
                self.cur.expect(b'=')?;
                let ring = parse_ring_body(&mut self.cur)?.with_new_limits(self.limits);
                self.end()?;
                self.ring = Some((name, ring));
            }
            "ideal" | "regseq" => {
                let ring = self.ring(pos)?;
                let (name, npos) = self.name()?;
                if kw == "ideal" {
                    Self::duplicate(&self.ideals, "ideal", &name, npos)?;
                } else {
                    Self::duplicate(&self.regseqs, "regseq", &name, npos)?;
                }
                self.cur.expect(b'=')?;
                let gens = self.polys(&ring)?;
                self.end()?;
                if kw == "ideal" {
                    self.ideals.push((name, gens));
                } else {
                    self.regseqs.push((name, gens));
                }
            }
            "module" => {
                self.ring(pos)?;
                let (name, npos) = self.name()?;
                Self::duplicate(&self.modules, "module", &name, npos)?;
                self.cur.expect(b'=')?;
                if !self.cur.eat_keyword("quotient") {
                    return Err(self.cur.unexpected("`quotient`"));
                }
                self.cur.skip_ws();
                let qpos = self.cur.position();
                let target = if self.cur.eat(b'0') {
                    None
                } else {
                    let q = self.cur.ident()?;
                    if lookup(&self.ideals, &q).is_none() {
                        return Err(Error::Syntax {
                            pos: qpos,
                            message: format!("unresolved ideal `{q}`"),
                        });
                    }
                    Some(q)
                };
                self.end()?;
                self.modules.push((name, target));
            }
            "check" => {
                self.ring(pos)?;
                let (id, ipos) = self.name()?;
                let selector = if id == "ALL" {
                    Selector::All
                } else {
                    Selector::One(id.parse::<CheckId>().map_err(|_| Error::Syntax {
                        pos: ipos,
                        message: format!("unknown check `{id}`"),
                    })?)
                };
                self.cur.expect(b'(')?;
                let mut args: Vec<(String, String)> = Vec::new();
                if !self.cur.eat(b')') {
                    loop {
                        let (k, kpos) = self.name()?;
                        if !ARG_NAMES.contains(&k.as_str()) {
                            return Err(Error::Syntax {
                                pos: kpos,
                                message: format!("unknown argument `{k}`"),
                            });
                        }
                        if args.iter().any(|(x, _)| *x == k) {
                            return Err(Error::Syntax {
                                pos: kpos,
                                message: format!("repeated argument `{k}`"),
                            });
                        }
                        self.cur.expect(b'=')?;
                        let (v, vpos) = self.name()?;
                        self.resolve(&k, &v, vpos)?;
                        args.push((k, v));
                        if self.cur.eat(b')') {
                            break;
                        }
                        self.cur.expect(b',')?;
                    }
                }
                self.end()?;
                let d = CheckDirective { selector, args };
                self.validate(&d, ipos)?;
                self.checks.push(d);
            }
            other => {
                return Err(Error::Syntax {
                    pos,
                    message: format!("unknown statement `{other}`"),
                })
            }
        }
        Ok(())
    }

    fn resolve(&self, arg: &str, value: &str, pos: Position) -> Result<()> {
        let ok = match arg {
            "a" | "b" => lookup(&self.ideals, value).is_some(),
            "I" | "alt" => {
                lookup(&self.regseqs, value).is_some() || lookup(&self.ideals, value).is_some()
            }
            "M" => lookup(&self.modules, value).is_some(),
            "ring" => self.ring.as_ref().is_some_and(|(n, _)| n == value),
            "expect" => value.parse::<Expectation>().is_ok(),
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Syntax {
                pos,
                message: format!("unresolved reference `{value}` for argument `{arg}`"),
            })
        }
    }

    fn validate(&self, d: &CheckDirective, pos: Position) -> Result<()> {
        let global = matches!(d.selector, Selector::One(c) if c.is_global());
        if !global && d.arg("a").is_none() {
            return Err(Error::Syntax {
                pos,
                message: "check needs argument `a`".into(),
            });
        }
        if d.selector == Selector::One(CheckId::Expect) && d.arg("expect").is_none() {
            return Err(Error::Syntax {
                pos,
                message: "EXPECT needs argument `expect`".into(),
            });
        }
        Ok(())
    }
}

/// Parses an instance file with default resource limits.
pub fn parse_instance(text: &str) -> Result<InstanceFile> {
    parse_instance_with(text, Limits::default())
}

pub fn parse_instance_with(text: &str, limits: Limits) -> Result<InstanceFile> {
    let mut p = Parser {
        cur: Cursor::new(text),
        limits,
        ring: None,
        ideals: Vec::new(),
        modules: Vec::new(),
        regseqs: Vec::new(),
        checks: Vec::new(),
    };
    loop {
        p.cur.skip_ws();
        if p.cur.at_end() {
            break;
        }
        p.statement()?;
    }
    let (ring_name, ring) = p.ring.ok_or(Error::Syntax {
        pos: p.cur.position(),
        message: "no ring declared".into(),
    })?;
    Ok(InstanceFile {
        ring_name,
        ring,
        ideals: p.ideals,
        modules: p.modules,
        regseqs: p.regseqs,
        checks: p.checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const FLAGSHIP: &str = "ring R4 = QQ[x1, x2, x3, x4] order grevlex;\n\
        ideal a = x1*x3, x1*x4, x2*x3, x2*x4;\n\
        ideal I = x1*x3, x2*x4;\n\
        check T5_CD (a=a, I=I);\n";

    #[test]
    fn flagship_counts() {
        let f = parse_instance(FLAGSHIP).unwrap();
        assert_eq!(f.ring.nvars(), 4);
        assert_eq!(f.ideals.len(), 2);
        assert_eq!(f.checks.len(), 1);
        let s = f.to_suite().unwrap();
        assert_eq!(s.requests[0].i.len(), 2);
    }

    #[test]
    fn round_trip() {
        let src = "# comment\nring R = FP(7)[x, y] lex;\nideal a = 3*x - y^2, 0;\nideal z = 0;\n\
            module M = quotient a;\nmodule N = quotient 0;\nregseq I = x*y;\nregseq E = 0;\n\
            check ALL (a=a, I=I, M=M);\ncheck C1_WITNESS (ring=R);\ncheck EXPECT (a=a, expect=linked);\n";
        let f = parse_instance(src).unwrap();
        let g = parse_instance(&f.to_string()).unwrap();
        assert_eq!(f, g);
        assert_eq!(f.to_string(), g.to_string());
    }

    fn err_of(src: &str) -> String {
        parse_instance(src).unwrap_err().to_string()
    }

    #[test]
    fn errors() {
        assert!(err_of("ideal a = x*y;").contains("no ring in scope"));
        assert!(err_of("ring R = QQ[x, x] order lex;").contains("duplicate variable"));
        assert!(err_of("ring R = FP(8)[x];").contains("1:"));
        let e = parse_instance("ring R = QQ[x];\nideal a = x;\nideal a = x^2;").unwrap_err();
        assert!(matches!(e, Error::Syntax { pos: Position { line: 3, column: 7 }, .. }), "{e}");
        assert!(err_of("ring R = QQ[x];\ncheck L07 (a=q);").contains("unresolved"));
        assert!(err_of("ring R = QQ[x];\nideal a = x;\ncheck L07 (a=a)").contains("`;`"));
        assert!(err_of("ring R = QQ[x];\nideal a = x +;").contains("2:"));
        assert!(err_of("ring R = QQ[x];\nideal a = y;").contains("unknown variable"));
        assert!(err_of("ring R = QQ[x];\nring S = QQ[y];").contains("one ring"));
        assert!(err_of("").contains("no ring"));
    }
}
