use std::fmt;

use crate::error::{AlgebraError, Result};

/// Largest modulus accepted; keeps every product of residues inside `u64`.
pub const MAX_MODULUS: u64 = 1 << 32;

/// Residue class modulo a prime `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeFieldElement {
    residue: u64,
    modulus: u64,
}

pub fn is_prime(p: u64) -> bool {
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

pub fn validate_modulus(p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(AlgebraError::InvalidField(format!("{p} is not prime")));
    }
    if p >= MAX_MODULUS {
        return Err(AlgebraError::InvalidField(format!(
            "modulus {p} exceeds the supported bound {MAX_MODULUS}"
        )));
    }
    Ok(())
}

impl PrimeFieldElement {
    /// Caller guarantees `modulus` passed [`validate_modulus`].
    pub fn new(value: i64, modulus: u64) -> Self {
        let m = modulus as i128;
        let residue = ((value as i128 % m + m) % m) as u64;
        Self { residue, modulus }
    }

    pub fn residue(&self) -> u64 {
        self.residue
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.residue == 0
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self {
            residue: (self.residue + rhs.residue) % self.modulus,
            modulus: self.modulus,
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        Self {
            residue: (self.residue + self.modulus - rhs.residue) % self.modulus,
            modulus: self.modulus,
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Self {
            residue: self.residue * rhs.residue % self.modulus,
            modulus: self.modulus,
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            residue: (self.modulus - self.residue) % self.modulus,
            modulus: self.modulus,
        }
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        let mut base = *self;
        let mut acc = Self::new(1, self.modulus);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            exp >>= 1;
        }
        acc
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(self.pow(self.modulus - 2))
    }
}

impl fmt::Display for PrimeFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.residue)
    }
}
