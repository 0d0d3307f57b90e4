use num_bigint::BigInt;

use super::{Field, Monomial, MonomialOrder, PolyRing, Polynomial};
use crate::error::{Error, Position, Result};

/// Byte cursor with line/column tracking, shared with the instance-file parser.
pub(crate) struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    col: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(src: &'a str) -> Self {
        Cursor {
            src: src.as_bytes(),
            pos: 0,
            line: 1,
            col: 1,
        }
    }

    pub fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    pub fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        if c == b'\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    pub fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    pub fn position(&self) -> Position {
        Position {
            line: self.line,
            column: self.col,
        }
    }

    /// Skips whitespace and `#` comments.
    pub fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_ascii_whitespace() {
                self.bump();
            } else if c == b'#' {
                while let Some(c) = self.peek() {
                    if c == b'\n' {
                        break;
                    }
                    self.bump();
                }
            } else {
                break;
            }
        }
    }

    pub fn error(&self, message: impl Into<String>) -> Error {
        Error::Syntax {
            pos: self.position(),
            message: message.into(),
        }
    }

    pub fn unexpected(&self, expected: &str) -> Error {
        match self.peek() {
            Some(c) => self.error(format!(
                "expected {expected}, found `{}`",
                char::from(c).escape_default()
            )),
            None => self.error(format!("expected {expected}, found end of input")),
        }
    }

    pub fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.unexpected(&format!("`{}`", char::from(c))))
        }
    }

    pub fn peek_ident_start(&self) -> bool {
        matches!(self.peek(), Some(c) if c.is_ascii_alphabetic() || c == b'_')
    }

    /// Identifier at the current position (no leading whitespace skipping).
    pub fn ident(&mut self) -> Result<String> {
        if !self.peek_ident_start() {
            return Err(self.unexpected("identifier"));
        }
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == b'_') {
            self.bump();
        }
        Ok(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    pub fn uint(&mut self) -> Result<BigInt> {
        if !matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            return Err(self.unexpected("unsigned integer"));
        }
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.bump();
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("digit string"))
    }

    pub fn small_uint(&mut self) -> Result<u64> {
        let pos = self.position();
        let v = self.uint()?;
        u64::try_from(v).map_err(|_| Error::Syntax {
            pos,
            message: "integer too large".into(),
        })
    }

    /// Consumes keyword `kw` if present as a whole identifier.
    pub fn eat_keyword(&mut self, kw: &str) -> bool {
        self.skip_ws();
        let end = self.pos + kw.len();
        if self.src.get(self.pos..end) == Some(kw.as_bytes())
            && !matches!(self.src.get(end), Some(c) if c.is_ascii_alphanumeric() || *c == b'_')
        {
            for _ in 0..kw.len() {
                self.bump();
            }
            true
        } else {
            false
        }
    }
}

/// Parses a full string as one polynomial of `ring`.
pub fn parse_polynomial(src: &str, ring: &PolyRing) -> Result<Polynomial> {
    let mut cur = Cursor::new(src);
    let p = parse_poly_at(&mut cur, ring)?;
    cur.skip_ws();
    if !cur.at_end() {
        return Err(cur.unexpected("`+`, `-` or end of input"));
    }
    Ok(p)
}

/// Parses a polynomial starting at the cursor and stops before the first
/// character that cannot continue it.
pub(crate) fn parse_poly_at(cur: &mut Cursor<'_>, ring: &PolyRing) -> Result<Polynomial> {
    cur.skip_ws();
    let negate_first = cur.eat(b'-');
    let mut acc = parse_term(cur, ring)?;
    if negate_first {
        acc = -&acc;
    }
    loop {
        cur.skip_ws();
        let neg = match cur.peek() {
            Some(b'+') => false,
            Some(b'-') => true,
            _ => break,
        };
        cur.bump();
        cur.skip_ws();
        let t = parse_term(cur, ring)?;
        acc = if neg { &acc - &t } else { &acc + &t };
    }
    Ok(acc)
}

fn parse_term(cur: &mut Cursor<'_>, ring: &PolyRing) -> Result<Polynomial> {
    cur.skip_ws();
    let field = ring.field();
    let mut exps = vec![0u32; ring.nvars()];
    let coeff = match cur.peek() {
        Some(c) if c.is_ascii_digit() => {
            let num = cur.uint()?;
            let mut den = BigInt::from(1);
            cur.skip_ws();
            if cur.peek() == Some(b'/') {
                cur.bump();
                cur.skip_ws();
                let pos = cur.position();
                den = cur.uint()?;
                if den == BigInt::from(0) {
                    return Err(Error::Syntax {
                        pos,
                        message: "zero denominator".into(),
                    });
                }
                field.from_ratio(&num, &den).ok_or(Error::Syntax {
                    pos,
                    message: format!("denominator divisible by {}", field.characteristic()),
                })?
            } else {
                field.from_ratio(&num, &den).expect("unit denominator")
            }
        }
        Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
            parse_factor(cur, ring, &mut exps)?;
            field.one()
        }
        _ => return Err(cur.unexpected("term")),
    };
    loop {
        cur.skip_ws();
        if cur.peek() != Some(b'*') {
            break;
        }
        cur.bump();
        cur.skip_ws();
        parse_factor(cur, ring, &mut exps)?;
    }
    Ok(ring.term(Monomial::from_exponents(exps), coeff))
}

fn parse_factor(cur: &mut Cursor<'_>, ring: &PolyRing, exps: &mut [u32]) -> Result<()> {
    let pos = cur.position();
    if !cur.peek_ident_start() {
        return Err(cur.unexpected("variable"));
    }
    let name = cur.ident()?;
    let idx = ring
        .var_index(&name)
        .ok_or(Error::UnknownVariable { name, pos })?;
    cur.skip_ws();
    let mut e = 1u32;
    if cur.peek() == Some(b'^') {
        cur.bump();
        cur.skip_ws();
        let pos = cur.position();
        e = u32::try_from(cur.small_uint()?).map_err(|_| Error::Syntax {
            pos,
            message: "exponent too large".into(),
        })?;
    }
    exps[idx] = exps[idx].checked_add(e).ok_or(Error::Syntax {
        pos,
        message: "exponent overflow".into(),
    })?;
    Ok(())
}

/// `(QQ | FP(p)) [v1, ..., vn] [order] (lex | grevlex)`; the order clause is optional.
pub(crate) fn parse_ring_body(cur: &mut Cursor<'_>) -> Result<PolyRing> {
    cur.skip_ws();
    let field_pos = cur.position();
    let field = if cur.eat_keyword("QQ") {
        Field::Rational
    } else if cur.eat_keyword("FP") {
        cur.expect(b'(')?;
        cur.skip_ws();
        let pos = cur.position();
        let p = cur.small_uint()?;
        cur.expect(b')')?;
        Field::prime(p).map_err(|e| Error::Syntax {
            pos,
            message: e.to_string(),
        })?
    } else {
        return Err(Error::Syntax {
            pos: field_pos,
            message: "expected coefficient field `QQ` or `FP(p)`".into(),
        });
    };
    cur.expect(b'[')?;
    let mut vars: Vec<String> = Vec::new();
    loop {
        cur.skip_ws();
        let pos = cur.position();
        let v = cur.ident()?;
        if vars.contains(&v) {
            return Err(Error::Syntax {
                pos,
                message: format!("duplicate variable `{v}`"),
            });
        }
        vars.push(v);
        if cur.eat(b',') {
            continue;
        }
        cur.expect(b']')?;
        break;
    }
    cur.eat_keyword("order");
    let order = if cur.eat_keyword("lex") {
        MonomialOrder::Lex
    } else if cur.eat_keyword("grevlex") {
        MonomialOrder::GrevLex
    } else {
        MonomialOrder::GrevLex
    };
    PolyRing::new(field, vars, order)
}

pub(crate) fn parse_ring_spec(spec: &str) -> Result<PolyRing> {
    let mut cur = Cursor::new(spec);
    let ring = parse_ring_body(&mut cur)?;
    cur.skip_ws();
    if !cur.at_end() {
        return Err(cur.unexpected("end of ring specification"));
    }
    Ok(ring)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::FieldElem;
    use num_rational::BigRational;

    fn qq(vars: &[&str]) -> PolyRing {
        PolyRing::new(
            Field::Rational,
            vars.iter().map(|s| s.to_string()).collect(),
            MonomialOrder::GrevLex,
        )
        .unwrap()
    }

    #[test]
    fn reads_rational_coefficients() {
        let r = qq(&["x", "y"]);
        let p = parse_polynomial("x^2 - 1/2*y", &r).unwrap();
        assert_eq!(p.terms().len(), 2);
        let half = FieldElem::Qq(BigRational::new((-1).into(), 2.into()));
        assert_eq!(p.terms()[1].1, half);
        assert_eq!(p.to_string(), "x^2 - 1/2*y");
    }

    #[test]
    fn reads_indexed_variables() {
        let r = qq(&["x1", "x2", "x3", "x4"]);
        let p = parse_polynomial("x1*x3", &r).unwrap();
        assert!(p.is_monomial());
        assert_eq!(p.to_string(), "x1*x3");
    }

    #[test]
    fn double_star_is_rejected_at_second_star() {
        let r = qq(&["x", "y"]);
        match parse_polynomial("x**2", &r) {
            Err(Error::Syntax { pos, .. }) => assert_eq!((pos.line, pos.column), (1, 3)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn unknown_variable_and_implicit_product() {
        let r = qq(&["x", "y"]);
        assert!(matches!(
            parse_polynomial("x*z", &r),
            Err(Error::UnknownVariable { .. })
        ));
        assert!(parse_polynomial("2x", &r).is_err());
        assert!(parse_polynomial("x*2", &r).is_err());
        assert!(parse_polynomial("x + -y", &r).is_err());
    }

    #[test]
    fn prime_field_denominators() {
        let r = PolyRing::parse_spec("FP(5)[x] grevlex").unwrap();
        assert!(parse_polynomial("1/5*x", &r).is_err());
        assert_eq!(parse_polynomial("1/2*x", &r).unwrap().to_string(), "-2*x");
    }

    #[test]
    fn ring_specs() {
        let r = PolyRing::parse_spec("QQ[x, y] grevlex").unwrap();
        assert_eq!(r.nvars(), 2);
        let r = PolyRing::parse_spec("FP(7)[a,b,c] order lex").unwrap();
        assert_eq!(r.order(), MonomialOrder::Lex);
        assert!(PolyRing::parse_spec("QQ[x, x]").is_err());
        assert!(PolyRing::parse_spec("FP(6)[x]").is_err());
    }

    #[test]
    fn whitespace_and_collection() {
        let r = qq(&["x", "y"]);
        let p = parse_polynomial(" - x * y + 2 * x*y - 0 ", &r).unwrap();
        assert_eq!(p.to_string(), "x*y");
        assert!(parse_polynomial("0", &r).unwrap().is_zero());
    }
}
