use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;

use super::rational::{parse_rational, to_u64, Rational};
use crate::error::{AlgebraError, Result};

/// Splits `k > 0` as `s²·f` with `f` squarefree, by trial division.
pub fn square_free_decompose(k: u64) -> (u64, u64) {
    assert!(k > 0, "square-free decomposition of zero");
    let mut rest = k;
    let mut square_root = 1u64;
    let mut free = 1u64;
    let mut d = 2u64;
    while d * d <= rest {
        let mut power = 0;
        while rest % d == 0 {
            rest /= d;
            power += 1;
        }
        square_root *= d.pow(power / 2);
        if power % 2 == 1 {
            free *= d;
        }
        d += 1;
    }
    (square_root, free * rest)
}

pub fn is_square_free(k: u64) -> bool {
    k > 0 && square_free_decompose(k).0 == 1
}

/// `√d·√e = s·√f` for squarefree `d`, `e`; returns `(s, f)`.
pub fn surd_basis_product(d: u64, e: u64) -> (u64, u64) {
    debug_assert!(is_square_free(d) && is_square_free(e));
    let g = num_integer::gcd(d, e);
    let (s, f) = square_free_decompose((d / g) * (e / g));
    (g * s, f)
}

/// Finite sum `Σ q_d·√d` over squarefree `d`; `d = 1` holds the rational part.
///
/// Zero coefficients are never stored, so structural equality is value equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SurdReal {
    terms: BTreeMap<u64, Rational>,
}

impl SurdReal {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_rational(q: Rational) -> Self {
        Self::term(q, 1)
    }

    /// `q·√d`; `d` must be squarefree.
    pub fn term(q: Rational, d: u64) -> Self {
        assert!(is_square_free(d), "{d} is not squarefree");
        let mut terms = BTreeMap::new();
        if !q.is_zero() {
            terms.insert(d, q);
        }
        Self { terms }
    }

    /// Exact square root of a non-negative rational: `√(a/b) = (s/b)·√f` where `a·b = s²·f`.
    pub fn sqrt(q: &Rational) -> Result<Self> {
        if q.is_negative() {
            return Err(AlgebraError::UnsupportedField {
                field: super::Field::Surd,
                reason: format!("square root of negative {q}"),
            });
        }
        if q.is_zero() {
            return Ok(Self::zero());
        }
        let a = to_u64(&q.numer())?;
        let b = to_u64(&q.denom())?;
        let product = a
            .checked_mul(b)
            .ok_or_else(|| AlgebraError::Parse(format!("√{q} is out of range")))?;
        let (s, f) = square_free_decompose(product);
        Ok(Self::term(
            Rational::new(BigInt::from(s), BigInt::from(b)),
            f,
        ))
    }

    pub fn terms(&self) -> impl Iterator<Item = (u64, &Rational)> {
        self.terms.iter().map(|(d, q)| (*d, q))
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value as a rational, when no irrational term is present.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&1).cloned(),
            _ => None,
        }
    }

    fn accumulate(&mut self, d: u64, q: Rational) {
        if q.is_zero() {
            return;
        }
        let slot = self.terms.entry(d).or_insert_with(Rational::zero);
        *slot += q;
        if slot.is_zero() {
            self.terms.remove(&d);
        }
    }

    /// Inverse of a single-term surd: `1/(q√d) = √d/(q·d)`.
    pub fn inverse(&self) -> Result<Self> {
        match self.terms.len() {
            0 => Err(AlgebraError::DivisionByZero),
            1 => {
                let (&d, q) = self.terms.iter().next().expect("one term");
                let denom = q * Rational::from_integer(BigInt::from(d));
                Ok(Self::term(denom.recip(), d))
            }
            _ => Err(AlgebraError::NonInvertibleSurd(self.to_string())),
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.terms
            .iter()
            .map(|(d, q)| q.to_f64().unwrap_or(f64::NAN) * (*d as f64).sqrt())
            .sum()
    }
}

impl<'a> Add<&'a SurdReal> for &'a SurdReal {
    type Output = SurdReal;
    fn add(self, rhs: &SurdReal) -> SurdReal {
        let mut out = self.clone();
        for (d, q) in &rhs.terms {
            out.accumulate(*d, q.clone());
        }
        out
    }
}

impl<'a> Sub<&'a SurdReal> for &'a SurdReal {
    type Output = SurdReal;
    fn sub(self, rhs: &SurdReal) -> SurdReal {
        let mut out = self.clone();
        for (d, q) in &rhs.terms {
            out.accumulate(*d, -q);
        }
        out
    }
}

impl<'a> Mul<&'a SurdReal> for &'a SurdReal {
    type Output = SurdReal;
    fn mul(self, rhs: &SurdReal) -> SurdReal {
        let mut out = SurdReal::zero();
        for (d, q) in &self.terms {
            for (e, r) in &rhs.terms {
                let (s, f) = surd_basis_product(*d, *e);
                out.accumulate(f, q * r * Rational::from_integer(BigInt::from(s)));
            }
        }
        out
    }
}

impl Neg for &SurdReal {
    type Output = SurdReal;
    fn neg(self) -> SurdReal {
        SurdReal {
            terms: self.terms.iter().map(|(d, q)| (*d, -q)).collect(),
        }
    }
}

impl fmt::Display for SurdReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (d, q)) in self.terms.iter().enumerate() {
            let magnitude = q.abs();
            if idx == 0 {
                if q.is_negative() {
                    write!(f, "-")?;
                }
            } else if q.is_negative() {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            if *d == 1 {
                write!(f, "{magnitude}")?;
            } else {
                write!(f, "{magnitude}*sqrt({d})")?;
            }
        }
        Ok(())
    }
}

/// Parses sums of terms `q`, `q*sqrt(d)`, `sqrt(d)`; non-squarefree radicands are reduced.
pub fn parse_surd(text: &str) -> Result<SurdReal> {
    let text: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if text.is_empty() {
        return Err(AlgebraError::Parse("empty surd".into()));
    }
    let mut out = SurdReal::zero();
    let mut start = 0;
    let mut depth = 0i32;
    let bytes = text.as_bytes();
    for idx in 0..=bytes.len() {
        let at_boundary = idx == bytes.len()
            || (depth == 0 && idx > start && (bytes[idx] == b'+' || bytes[idx] == b'-')
                && bytes[idx - 1] != b'/');
        if idx < bytes.len() {
            match bytes[idx] {
                b'(' => depth += 1,
                b')' => depth -= 1,
                _ => {}
            }
        }
        if at_boundary {
            let piece = &text[start..idx];
            let parsed = parse_surd_term(piece)?;
            out = &out + &parsed;
            start = idx;
        }
    }
    Ok(out)
}

fn parse_surd_term(piece: &str) -> Result<SurdReal> {
    let (sign, body) = match piece.as_bytes().first() {
        Some(b'-') => (-1, &piece[1..]),
        Some(b'+') => (1, &piece[1..]),
        _ => (1, piece),
    };
    let (coeff_text, radicand_text) = if let Some(rest) = body.strip_prefix("sqrt(") {
        ("1", rest)
    } else if let Some(pos) = body.find("*sqrt(") {
        (&body[..pos], &body[pos + 6..])
    } else {
        let q = parse_rational(body)?;
        return Ok(SurdReal::from_rational(q * Rational::from_integer(sign.into())));
    };
    let radicand_text = radicand_text
        .strip_suffix(')')
        .ok_or_else(|| AlgebraError::Parse(format!("unterminated sqrt in `{piece}`")))?;
    let radicand: u64 = radicand_text
        .parse()
        .map_err(|_| AlgebraError::Parse(format!("bad radicand `{radicand_text}`")))?;
    if radicand == 0 {
        return Ok(SurdReal::zero());
    }
    let coeff = parse_rational(coeff_text)? * Rational::from_integer(sign.into());
    let (s, f) = square_free_decompose(radicand);
    Ok(SurdReal::term(coeff * Rational::from_integer(BigInt::from(s)), f))
}
