use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::surd::{parse_surd, SurdReal};
use crate::error::{AlgebraError, Result};

/// `re + im·i` with surd real and imaginary parts.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SurdComplex {
    pub re: SurdReal,
    pub im: SurdReal,
}

impl SurdComplex {
    pub fn new(re: SurdReal, im: SurdReal) -> Self {
        Self { re, im }
    }

    pub fn real(re: SurdReal) -> Self {
        Self::new(re, SurdReal::zero())
    }

    pub fn i() -> Self {
        Self::new(SurdReal::zero(), SurdReal::one())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -&self.im)
    }

    /// Defined when `re² + im²` is a single surd term.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let norm = &(&self.re * &self.re) + &(&self.im * &self.im);
        let inv = norm
            .inverse()
            .map_err(|_| AlgebraError::NonInvertibleSurd(self.to_string()))?;
        Ok(Self::new(&self.re * &inv, &(-&self.im) * &inv))
    }
}

impl<'a> Add<&'a SurdComplex> for &'a SurdComplex {
    type Output = SurdComplex;
    fn add(self, rhs: &SurdComplex) -> SurdComplex {
        SurdComplex::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl<'a> Sub<&'a SurdComplex> for &'a SurdComplex {
    type Output = SurdComplex;
    fn sub(self, rhs: &SurdComplex) -> SurdComplex {
        SurdComplex::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl<'a> Mul<&'a SurdComplex> for &'a SurdComplex {
    type Output = SurdComplex;
    fn mul(self, rhs: &SurdComplex) -> SurdComplex {
        SurdComplex::new(
            &(&self.re * &rhs.re) - &(&self.im * &rhs.im),
            &(&self.re * &rhs.im) + &(&self.im * &rhs.re),
        )
    }
}

impl Neg for &SurdComplex {
    type Output = SurdComplex;
    fn neg(self) -> SurdComplex {
        SurdComplex::new(-&self.re, -&self.im)
    }
}

/// `re`, `(im)*i`, or `re+(im)*i`.
impl fmt::Display for SurdComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "({})*i", self.im),
            (false, false) => write!(f, "{}+({})*i", self.re, self.im),
        }
    }
}

pub fn parse_surd_complex(text: &str) -> Result<SurdComplex> {
    let text: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let Some(body) = text.strip_suffix(")*i") else {
        return Ok(SurdComplex::real(parse_surd(&text)?));
    };
    let mut depth = 1i32;
    let mut open = None;
    for (idx, ch) in body.char_indices().rev() {
        match ch {
            ')' => depth += 1,
            '(' => {
                depth -= 1;
                if depth == 0 {
                    open = Some(idx);
                    break;
                }
            }
            _ => {}
        }
    }
    let open = open.ok_or_else(|| AlgebraError::Parse(format!("unbalanced `{text}`")))?;
    let im = parse_surd(&body[open + 1..])?;
    let re_text = &body[..open];
    let re = match re_text {
        "" => SurdReal::zero(),
        _ => {
            let re_text = re_text.strip_suffix('+').ok_or_else(|| {
                AlgebraError::Parse(format!("expected `+` before imaginary part in `{text}`"))
            })?;
            parse_surd(re_text)?
        }
    };
    Ok(SurdComplex::new(re, im))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational::{int, rat};

    #[test]
    fn conjugation_negates_imaginary_part() {
        let z = SurdComplex::new(SurdReal::term(int(1), 2), SurdReal::term(int(1), 3));
        let expected = SurdComplex::new(SurdReal::term(int(1), 2), SurdReal::term(int(-1), 3));
        assert_eq!(z.conj(), expected);
        assert_eq!(z.conj().conj(), z);
    }

    #[test]
    fn i_squared_is_minus_one() {
        let i = SurdComplex::i();
        assert_eq!(&i * &i, SurdComplex::real(SurdReal::from_rational(int(-1))));
    }

    #[test]
    fn inverse_when_norm_is_one_term() {
        let z = SurdComplex::new(SurdReal::term(rat(1, 2), 2), SurdReal::term(rat(1, 2), 2));
        let one = SurdComplex::real(SurdReal::one());
        assert_eq!(&z * &z.inverse().unwrap(), one);
    }

    #[test]
    fn round_trip_text() {
        let z = SurdComplex::new(
            &SurdReal::from_rational(rat(1, 3)) + &SurdReal::term(int(-2), 5),
            SurdReal::term(rat(1, 2), 2),
        );
        assert_eq!(z.to_string(), "1/3-2*sqrt(5)+(1/2*sqrt(2))*i");
        assert_eq!(parse_surd_complex(&z.to_string()).unwrap(), z);
        let pure = SurdComplex::new(SurdReal::zero(), SurdReal::term(int(-1), 2));
        assert_eq!(parse_surd_complex(&pure.to_string()).unwrap(), pure);
    }
}
