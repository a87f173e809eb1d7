//! Vector-free affine spaces and Lie brackets on them.
//!
//! [`AffineSpace`] and [`LieAffgebra`] describe a carrier only through the heap
//! operation `⟨a,b,c⟩`, the based action `α ▷_a b` and the bracket; every derived
//! construction (retract group, retract vector space, translation, Lie algebra
//! retract) is a provided method expressed in those terms. [`MatrixAffgebra`] is
//! the concrete model on square matrices, and the free functions at the bottom
//! are thin wrappers over it.

use std::fmt;

use crate::error::{AlgebraError, Result};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// Points are matrices of the ambient `gl(m, 𝔽)`.
pub type AffinePoint = Matrix;

pub trait AffineSpace {
    type Point: Clone + PartialEq + fmt::Debug;

    /// `⟨a,b,c⟩`.
    fn heap(&self, a: &Self::Point, b: &Self::Point, c: &Self::Point) -> Result<Self::Point>;

    /// `α ▷_base b`.
    fn action(&self, alpha: &Scalar, base: &Self::Point, b: &Self::Point) -> Result<Self::Point>;

    /// `⟨a,b,c,d,e⟩ = ⟨⟨a,b,c⟩,d,e⟩`.
    fn heap5(
        &self,
        a: &Self::Point,
        b: &Self::Point,
        c: &Self::Point,
        d: &Self::Point,
        e: &Self::Point,
    ) -> Result<Self::Point> {
        self.heap(&self.heap(a, b, c)?, d, e)
    }

    /// Addition in the retract group `G(A;o)`: `⟨a,o,b⟩`.
    fn retract_add(&self, o: &Self::Point, a: &Self::Point, b: &Self::Point) -> Result<Self::Point> {
        self.heap(a, o, b)
    }

    /// Negation in `G(A;o)`: `⟨o,a,o⟩`.
    fn retract_neg(&self, o: &Self::Point, a: &Self::Point) -> Result<Self::Point> {
        self.heap(o, a, o)
    }

    /// `a − b` in `G(A;o)`.
    fn retract_sub(&self, o: &Self::Point, a: &Self::Point, b: &Self::Point) -> Result<Self::Point> {
        self.retract_add(o, a, &self.retract_neg(o, b)?)
    }

    /// Scalar multiplication in `V(A;o)`: `α ▷_o a`.
    fn retract_scale(&self, o: &Self::Point, alpha: &Scalar, a: &Self::Point) -> Result<Self::Point> {
        self.action(alpha, o, a)
    }

    /// Translation `G(A;o) → G(A;ō)`, `a ↦ ⟨a,o,ō⟩`.
    fn translate(&self, o: &Self::Point, o_bar: &Self::Point, a: &Self::Point) -> Result<Self::Point> {
        self.heap(a, o, o_bar)
    }
}

pub trait LieAffgebra: AffineSpace {
    fn bracket(&self, a: &Self::Point, b: &Self::Point) -> Result<Self::Point>;

    /// Bracket of the Lie algebra retract `L(A;o)`:
    /// `⟨[a,b],[a,o],[o,o],[o,b],o⟩`.
    fn lie_retract_bracket(
        &self,
        o: &Self::Point,
        a: &Self::Point,
        b: &Self::Point,
    ) -> Result<Self::Point> {
        self.heap5(
            &self.bracket(a, b)?,
            &self.bracket(a, o)?,
            &self.bracket(o, o)?,
            &self.bracket(o, b)?,
            o,
        )
    }
}

/// The two bi-affine brackets realised on matrices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BracketKind {
    /// `[a,b] = ζ ▷_a b`.
    Zeta(Scalar),
    /// `[a,b] = ⟨ab, ba, b⟩ = ab − ba + b`.
    AffineCommutator,
}

impl fmt::Display for BracketKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BracketKind::Zeta(z) => write!(f, "zeta:{z}"),
            BracketKind::AffineCommutator => write!(f, "commutator"),
        }
    }
}

/// Matrices with `⟨a,b,c⟩ = a − b + c`, `α ▷_a b = αb − αa + a` and a chosen bracket.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixAffgebra {
    pub bracket: BracketKind,
}

impl MatrixAffgebra {
    pub fn new(bracket: BracketKind) -> Self {
        Self { bracket }
    }

    pub fn commutator() -> Self {
        Self::new(BracketKind::AffineCommutator)
    }
}

impl AffineSpace for MatrixAffgebra {
    type Point = Matrix;

    fn heap(&self, a: &Matrix, b: &Matrix, c: &Matrix) -> Result<Matrix> {
        &(a - b)? + c
    }

    fn action(&self, alpha: &Scalar, base: &Matrix, b: &Matrix) -> Result<Matrix> {
        base.ensure_compatible(b)?;
        let alpha = alpha.promote(b.field())?;
        let shifted = (b - base)?.scale(&alpha)?;
        &shifted + base
    }
}

impl LieAffgebra for MatrixAffgebra {
    fn bracket(&self, a: &Matrix, b: &Matrix) -> Result<Matrix> {
        match &self.bracket {
            BracketKind::Zeta(zeta) => self.action(zeta, a, b),
            BracketKind::AffineCommutator => &a.commutator(b)? + b,
        }
    }
}

pub fn heap(a: &Matrix, b: &Matrix, c: &Matrix) -> Result<Matrix> {
    MatrixAffgebra::commutator().heap(a, b, c)
}

pub fn action(alpha: &Scalar, base: &Matrix, b: &Matrix) -> Result<Matrix> {
    MatrixAffgebra::commutator().action(alpha, base, b)
}

pub fn bracket(kind: &BracketKind, a: &Matrix, b: &Matrix) -> Result<Matrix> {
    MatrixAffgebra::new(kind.clone()).bracket(a, b)
}

pub fn retract_add(o: &Matrix, a: &Matrix, b: &Matrix) -> Result<Matrix> {
    MatrixAffgebra::commutator().retract_add(o, a, b)
}

pub fn retract_neg(o: &Matrix, a: &Matrix) -> Result<Matrix> {
    MatrixAffgebra::commutator().retract_neg(o, a)
}

pub fn retract_scale(o: &Matrix, alpha: &Scalar, a: &Matrix) -> Result<Matrix> {
    MatrixAffgebra::commutator().retract_scale(o, alpha, a)
}

pub fn translate(o: &Matrix, o_bar: &Matrix, a: &Matrix) -> Result<Matrix> {
    MatrixAffgebra::commutator().translate(o, o_bar, a)
}

pub fn lie_retract_bracket(kind: &BracketKind, o: &Matrix, a: &Matrix, b: &Matrix) -> Result<Matrix> {
    MatrixAffgebra::new(kind.clone()).lie_retract_bracket(o, a, b)
}

/// Product of the associative retract algebra at `o`: `⟨ab, ao, o², ob, o⟩`,
/// i.e. `ab − ao + o² − ob` computed in `G(A;o)`.
pub fn assoc_retract_product(o: &Matrix, a: &Matrix, b: &Matrix) -> Result<Matrix> {
    MatrixAffgebra::commutator().heap5(&(a * b)?, &(a * o)?, &(o * o)?, &(o * b)?, o)
}

/// `[a,b] − b` as a plain matrix; requires `[a,a] = a` and `[b,b] = b`.
pub fn vector_bracket(kind: &BracketKind, a: &Matrix, b: &Matrix) -> Result<Matrix> {
    let model = MatrixAffgebra::new(kind.clone());
    for x in [a, b] {
        if model.bracket(x, x)? != *x {
            return Err(AlgebraError::NotIdempotent);
        }
    }
    &model.bracket(a, b)? - b
}
