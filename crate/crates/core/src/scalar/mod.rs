//! The field tower: ℚ, ℚ(i), GF(p), real surds and complex surds.
//!
//! A [`Scalar`] is a tagged element of one of these fields. Binary operators on
//! `&Scalar` assume both operands live in the same field and panic otherwise;
//! [`Matrix`](crate::Matrix) enforces that invariant for every entry, and the
//! `try_*` methods are the checked entry points for user-supplied scalars.

mod gaussian;
mod prime;
mod rational;
mod surd;
mod surd_complex;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;

pub use gaussian::{parse_gaussian, GaussianRational};
pub use prime::{is_prime, validate_modulus, PrimeFieldElement};
pub use rational::{int, parse_rational, rat, Rational};
pub use surd::{is_square_free, parse_surd, square_free_decompose, surd_basis_product, SurdReal};
pub use surd_complex::{parse_surd_complex, SurdComplex};

use crate::error::{AlgebraError, Result};

/// Which field a scalar or matrix lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Gaussian,
    Prime(u64),
    Surd,
    SurdComplex,
}

impl Field {
    /// Builds `GF(p)` after checking that `p` is a supported prime.
    pub fn prime(p: u64) -> Result<Self> {
        validate_modulus(p)?;
        Ok(Field::Prime(p))
    }

    pub fn zero(self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, value: i64) -> Scalar {
        match self {
            Field::Prime(p) => Scalar::Gf(PrimeFieldElement::new(value, p)),
            _ => Scalar::Q(int(value))
                .promote(self)
                .expect("ℚ embeds in every characteristic-zero field"),
        }
    }

    /// Image of a rational; in GF(p) this fails when `p` divides the denominator.
    pub fn from_rational(self, q: &Rational) -> Result<Scalar> {
        Scalar::Q(q.clone()).promote(self)
    }

    /// `i`, when the field contains a square root of −1 by construction.
    pub fn imaginary_unit(self) -> Result<Scalar> {
        match self {
            Field::Gaussian => Ok(Scalar::Qi(GaussianRational::i())),
            Field::SurdComplex => Ok(Scalar::SurdC(SurdComplex::i())),
            other => Err(AlgebraError::UnsupportedField {
                field: other,
                reason: "no imaginary unit".into(),
            }),
        }
    }

    pub fn is_complex(self) -> bool {
        matches!(self, Field::Gaussian | Field::SurdComplex)
    }

    pub fn characteristic(self) -> u64 {
        match self {
            Field::Prime(p) => p,
            _ => 0,
        }
    }

    /// The real subfield used for the scalar action on hermitian-type spaces.
    pub fn real_part(self) -> Field {
        match self {
            Field::Gaussian => Field::Rational,
            Field::SurdComplex => Field::Surd,
            other => other,
        }
    }

    /// Smallest surd field containing this one.
    pub fn widen_to_surd(self) -> Result<Field> {
        match self {
            Field::Rational | Field::Surd => Ok(Field::Surd),
            Field::Gaussian | Field::SurdComplex => Ok(Field::SurdComplex),
            Field::Prime(_) => Err(AlgebraError::UnsupportedField {
                field: self,
                reason: "surd extensions need characteristic zero".into(),
            }),
        }
    }

    /// Wire tag: `Q`, `Qi`, `GF`, `surd`, `surd_c`.
    pub fn tag(self) -> &'static str {
        match self {
            Field::Rational => "Q",
            Field::Gaussian => "Qi",
            Field::Prime(_) => "GF",
            Field::Surd => "surd",
            Field::SurdComplex => "surd_c",
        }
    }

    pub fn modulus(self) -> Option<u64> {
        match self {
            Field::Prime(p) => Some(p),
            _ => None,
        }
    }

    pub fn from_tag(tag: &str, p: Option<u64>) -> Result<Self> {
        match (tag, p) {
            ("Q", None) => Ok(Field::Rational),
            ("Qi", None) => Ok(Field::Gaussian),
            ("surd", None) => Ok(Field::Surd),
            ("surd_c", None) => Ok(Field::SurdComplex),
            ("GF", Some(p)) => Field::prime(p),
            ("GF", None) => Err(AlgebraError::InvalidField("GF requires a prime p".into())),
            (other, Some(_)) if other != "GF" => Err(AlgebraError::InvalidField(format!(
                "field {other} takes no modulus"
            ))),
            (other, _) => Err(AlgebraError::InvalidField(format!("unknown field `{other}`"))),
        }
    }

    pub fn parse_scalar(self, text: &str) -> Result<Scalar> {
        match self {
            Field::Rational => Ok(Scalar::Q(parse_rational(text)?)),
            Field::Gaussian => Ok(Scalar::Qi(parse_gaussian(text)?)),
            Field::Surd => Ok(Scalar::Surd(parse_surd(text)?)),
            Field::SurdComplex => Ok(Scalar::SurdC(parse_surd_complex(text)?)),
            Field::Prime(_) => self.from_rational(&parse_rational(text)?),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Prime(p) => write!(f, "GF({p})"),
            other => write!(f, "{}", other.tag()),
        }
    }
}

/// An element of one of the supported exact fields.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(Rational),
    Qi(GaussianRational),
    Gf(PrimeFieldElement),
    Surd(SurdReal),
    SurdC(SurdComplex),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Checked binary arithmetic on two scalars of the same field.
pub fn field_arith(x: &Scalar, y: &Scalar, op: ArithOp) -> Result<Scalar> {
    x.ensure_same_field(y)?;
    Ok(match op {
        ArithOp::Add => x + y,
        ArithOp::Sub => x - y,
        ArithOp::Mul => x * y,
        ArithOp::Div => return x.try_div(y),
    })
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Q(_) => Field::Rational,
            Scalar::Qi(_) => Field::Gaussian,
            Scalar::Gf(x) => Field::Prime(x.modulus()),
            Scalar::Surd(_) => Field::Surd,
            Scalar::SurdC(_) => Field::SurdComplex,
        }
    }

    pub fn ensure_same_field(&self, other: &Scalar) -> Result<()> {
        if self.field() == other.field() {
            Ok(())
        } else {
            Err(AlgebraError::FieldMismatch {
                left: self.field(),
                right: other.field(),
            })
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(x) => x.is_zero(),
            Scalar::Qi(x) => x.is_zero(),
            Scalar::Gf(x) => x.is_zero(),
            Scalar::Surd(x) => x.is_zero(),
            Scalar::SurdC(x) => x.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        *self == self.field().one()
    }

    /// Complex conjugation; the identity on real fields and GF(p).
    pub fn conj(&self) -> Scalar {
        match self {
            Scalar::Qi(x) => Scalar::Qi(x.conj()),
            Scalar::SurdC(x) => Scalar::SurdC(x.conj()),
            other => other.clone(),
        }
    }

    pub fn inverse(&self) -> Result<Scalar> {
        Ok(match self {
            Scalar::Q(x) if x.is_zero() => return Err(AlgebraError::DivisionByZero),
            Scalar::Q(x) => Scalar::Q(x.recip()),
            Scalar::Qi(x) => Scalar::Qi(x.inverse()?),
            Scalar::Gf(x) => Scalar::Gf(x.inverse()?),
            Scalar::Surd(x) => Scalar::Surd(x.inverse()?),
            Scalar::SurdC(x) => Scalar::SurdC(x.inverse()?),
        })
    }

    pub fn try_div(&self, rhs: &Scalar) -> Result<Scalar> {
        self.ensure_same_field(rhs)?;
        Ok(self * &rhs.inverse()?)
    }

    pub fn try_add(&self, rhs: &Scalar) -> Result<Scalar> {
        field_arith(self, rhs, ArithOp::Add)
    }

    pub fn try_sub(&self, rhs: &Scalar) -> Result<Scalar> {
        field_arith(self, rhs, ArithOp::Sub)
    }

    pub fn try_mul(&self, rhs: &Scalar) -> Result<Scalar> {
        field_arith(self, rhs, ArithOp::Mul)
    }

    /// Real and imaginary rational parts, for ℚ and ℚ(i) only.
    pub fn rational_parts(&self) -> Option<(Rational, Rational)> {
        match self {
            Scalar::Q(x) => Some((x.clone(), Rational::zero())),
            Scalar::Qi(x) => Some((x.re.clone(), x.im.clone())),
            _ => None,
        }
    }

    /// Canonical embedding into a larger field.
    ///
    /// Supported: ℚ into every field (reduction mod p for GF(p)), ℚ(i) and surds into
    /// complex surds.
    pub fn promote(&self, target: Field) -> Result<Scalar> {
        let source = self.field();
        if source == target {
            return Ok(self.clone());
        }
        let mismatch = || AlgebraError::FieldMismatch {
            left: source,
            right: target,
        };
        Ok(match (self, target) {
            (Scalar::Q(q), Field::Gaussian) => Scalar::Qi(GaussianRational::real(q.clone())),
            (Scalar::Q(q), Field::Surd) => Scalar::Surd(SurdReal::from_rational(q.clone())),
            (Scalar::Q(q), Field::SurdComplex) => {
                Scalar::SurdC(SurdComplex::real(SurdReal::from_rational(q.clone())))
            }
            (Scalar::Q(q), Field::Prime(p)) => {
                let reduce = |value: &BigInt| -> i64 {
                    let m = BigInt::from(p);
                    let r = ((value % &m) + &m) % &m;
                    i64::try_from(r).expect("residue below modulus")
                };
                let numer = PrimeFieldElement::new(reduce(&q.numer()), p);
                let denom = PrimeFieldElement::new(reduce(&q.denom()), p);
                let inv = denom.inverse().map_err(|_| AlgebraError::NonInvertibleScalar {
                    what: q.denom().to_string(),
                    field: target,
                })?;
                Scalar::Gf(numer.mul(&inv))
            }
            (Scalar::Qi(z), Field::SurdComplex) => Scalar::SurdC(SurdComplex::new(
                SurdReal::from_rational(z.re.clone()),
                SurdReal::from_rational(z.im.clone()),
            )),
            (Scalar::Surd(x), Field::SurdComplex) => Scalar::SurdC(SurdComplex::real(x.clone())),
            _ => return Err(mismatch()),
        })
    }

    /// Whether the scalar is fixed by conjugation.
    pub fn is_real(&self) -> bool {
        self.conj() == *self
    }

    /// Floating-point value of a real scalar; used only for numeric cross-checks.
    pub fn to_f64(&self) -> Option<f64> {
        match self {
            Scalar::Q(x) => x.to_f64(),
            Scalar::Surd(x) => Some(x.to_f64()),
            Scalar::Qi(x) if x.im.is_zero() => x.re.to_f64(),
            Scalar::SurdC(x) if x.im.is_zero() => Some(x.re.to_f64()),
            _ => None,
        }
    }
}

macro_rules! binary_op {
    ($trait:ident, $method:ident, $gf:ident) => {
        impl<'a> $trait<&'a Scalar> for &'a Scalar {
            type Output = Scalar;

            fn $method(self, rhs: &Scalar) -> Scalar {
                match (self, rhs) {
                    (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a.$method(b)),
                    (Scalar::Qi(a), Scalar::Qi(b)) => Scalar::Qi(a.$method(b)),
                    (Scalar::Gf(a), Scalar::Gf(b)) if a.modulus() == b.modulus() => {
                        Scalar::Gf(a.$gf(b))
                    }
                    (Scalar::Surd(a), Scalar::Surd(b)) => Scalar::Surd(a.$method(b)),
                    (Scalar::SurdC(a), Scalar::SurdC(b)) => Scalar::SurdC(a.$method(b)),
                    (a, b) => panic!(
                        "scalar field mismatch: {} {} {}",
                        a.field(),
                        stringify!($method),
                        b.field()
                    ),
                }
            }
        }

        impl $trait for Scalar {
            type Output = Scalar;

            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
    };
}

binary_op!(Add, add, add);
binary_op!(Sub, sub, sub);
binary_op!(Mul, mul, mul);

impl Neg for &Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(-a),
            Scalar::Qi(a) => Scalar::Qi(-a),
            Scalar::Gf(a) => Scalar::Gf(a.neg()),
            Scalar::Surd(a) => Scalar::Surd(-a),
            Scalar::SurdC(a) => Scalar::SurdC(-a),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        -&self
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(x) => write!(f, "{x}"),
            Scalar::Qi(x) => write!(f, "{x}"),
            Scalar::Gf(x) => write!(f, "{x}"),
            Scalar::Surd(x) => write!(f, "{x}"),
            Scalar::SurdC(x) => write!(f, "{x}"),
        }
    }
}

impl From<Rational> for Scalar {
    fn from(q: Rational) -> Self {
        Scalar::Q(q)
    }
}

impl From<GaussianRational> for Scalar {
    fn from(z: GaussianRational) -> Self {
        Scalar::Qi(z)
    }
}

impl From<SurdReal> for Scalar {
    fn from(x: SurdReal) -> Self {
        Scalar::Surd(x)
    }
}

impl From<SurdComplex> for Scalar {
    fn from(z: SurdComplex) -> Self {
        Scalar::SurdC(z)
    }
}
