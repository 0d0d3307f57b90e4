use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Coefficient field of a polynomial ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    /// Prime field `F_p`. The modulus must be a prime below 2^32.
    pub fn prime(p: u64) -> Result<Field> {
        if p >= 1 << 32 {
            return Err(Error::InvalidRing(format!("modulus {p} exceeds 2^32")));
        }
        if !is_prime(p) {
            return Err(Error::InvalidRing(format!("modulus {p} is not prime")));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> FieldElem {
        self.from_i64(0)
    }

    pub fn one(&self) -> FieldElem {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> FieldElem {
        match *self {
            Field::Rational => FieldElem::Qq(BigRational::from_integer(BigInt::from(v))),
            Field::Prime(p) => FieldElem::Fp {
                residue: v.rem_euclid(p as i64) as u64,
                modulus: p,
            },
        }
    }

    /// `num / den` in this field; `None` when the denominator vanishes.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Option<FieldElem> {
        match *self {
            Field::Rational => {
                if den.is_zero() {
                    None
                } else {
                    Some(FieldElem::Qq(BigRational::new(num.clone(), den.clone())))
                }
            }
            Field::Prime(p) => {
                let n = reduce_big(num, p);
                let d = reduce_big(den, p);
                if d == 0 {
                    return None;
                }
                let n = FieldElem::Fp { residue: n, modulus: p };
                let d = FieldElem::Fp { residue: d, modulus: p };
                Some(n.mul(&d.inv()?))
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "QQ"),
            Field::Prime(p) => write!(f, "FP({p})"),
        }
    }
}

fn reduce_big(v: &BigInt, p: u64) -> u64 {
    let m = BigInt::from(p);
    v.mod_floor(&m).to_u64().expect("residue fits in u64")
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Exact field element. Rationals are kept reduced with positive denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldElem {
    Qq(BigRational),
    Fp { residue: u64, modulus: u64 },
}

impl FieldElem {
    pub fn is_zero(&self) -> bool {
        match self {
            FieldElem::Qq(q) => q.is_zero(),
            FieldElem::Fp { residue, .. } => *residue == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElem::Qq(q) => q.is_one(),
            FieldElem::Fp { residue, .. } => *residue == 1,
        }
    }

    pub fn field(&self) -> Field {
        match self {
            FieldElem::Qq(_) => Field::Rational,
            FieldElem::Fp { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn add(&self, rhs: &FieldElem) -> FieldElem {
        match (self, rhs) {
            (FieldElem::Qq(a), FieldElem::Qq(b)) => FieldElem::Qq(a + b),
            (FieldElem::Fp { residue: a, modulus: p }, FieldElem::Fp { residue: b, .. }) => {
                FieldElem::Fp {
                    residue: ((*a as u128 + *b as u128) % *p as u128) as u64,
                    modulus: *p,
                }
            }
            _ => panic!("mixed coefficient fields"),
        }
    }

    pub fn neg(&self) -> FieldElem {
        match self {
            FieldElem::Qq(a) => FieldElem::Qq(-a),
            FieldElem::Fp { residue, modulus } => FieldElem::Fp {
                residue: if *residue == 0 { 0 } else { modulus - residue },
                modulus: *modulus,
            },
        }
    }

    pub fn sub(&self, rhs: &FieldElem) -> FieldElem {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &FieldElem) -> FieldElem {
        match (self, rhs) {
            (FieldElem::Qq(a), FieldElem::Qq(b)) => FieldElem::Qq(a * b),
            (FieldElem::Fp { residue: a, modulus: p }, FieldElem::Fp { residue: b, .. }) => {
                FieldElem::Fp {
                    residue: ((*a as u128 * *b as u128) % *p as u128) as u64,
                    modulus: *p,
                }
            }
            _ => panic!("mixed coefficient fields"),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<FieldElem> {
        if self.is_zero() {
            return None;
        }
        match self {
            FieldElem::Qq(a) => Some(FieldElem::Qq(a.recip())),
            FieldElem::Fp { residue, modulus } => {
                // Fermat: a^(p-2)
                let p = *modulus as u128;
                let mut base = *residue as u128;
                let mut exp = modulus - 2;
                let mut acc = 1u128;
                while exp > 0 {
                    if exp & 1 == 1 {
                        acc = acc * base % p;
                    }
                    base = base * base % p;
                    exp >>= 1;
                }
                Some(FieldElem::Fp {
                    residue: acc as u64,
                    modulus: *modulus,
                })
            }
        }
    }

    pub fn div(&self, rhs: &FieldElem) -> FieldElem {
        self.mul(&rhs.inv().expect("division by zero coefficient"))
    }

    /// Sign used when printing: rationals by sign, residues by the symmetric representative.
    pub(crate) fn is_negative_repr(&self) -> bool {
        match self {
            FieldElem::Qq(a) => a.is_negative(),
            FieldElem::Fp { residue, modulus } => *residue > modulus / 2,
        }
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElem::Qq(a) => {
                if a.denom().is_one() {
                    write!(f, "{}", a.numer())
                } else {
                    write!(f, "{}/{}", a.numer(), a.denom())
                }
            }
            FieldElem::Fp { residue, modulus } => {
                if self.is_negative_repr() {
                    write!(f, "-{}", modulus - residue)
                } else {
                    write!(f, "{residue}")
                }
            }
        }
    }
}
