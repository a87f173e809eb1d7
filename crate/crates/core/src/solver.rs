//! Affine solution spaces of linear constraint systems on matrix entries.
//!
//! A constraint is `Σ c·x_rc + Σ d·conj(x_rc) = rhs`. Conjugate terms only make
//! sense when the system is realified: every complex unknown splits into its
//! rational real and imaginary parts and each complex equation into two rational
//! ones, so elimination always runs over a genuine field.

use crate::error::{AlgebraError, Result};
use crate::matrix::Matrix;
use crate::scalar::{Field, GaussianRational, Rational, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearTerm {
    pub row: usize,
    pub col: usize,
    pub coeff: Scalar,
    pub conjugated: bool,
}

impl LinearTerm {
    pub fn plain(row: usize, col: usize, coeff: Scalar) -> Self {
        Self {
            row,
            col,
            coeff,
            conjugated: false,
        }
    }

    pub fn conjugated(row: usize, col: usize, coeff: Scalar) -> Self {
        Self {
            row,
            col,
            coeff,
            conjugated: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearConstraint {
    /// Human-readable name, reported when a membership test fails.
    pub label: String,
    pub terms: Vec<LinearTerm>,
    pub rhs: Scalar,
}

impl LinearConstraint {
    /// Left-hand side evaluated on `m`, with coefficients promoted into `m`'s field.
    pub fn evaluate(&self, m: &Matrix) -> Result<Scalar> {
        let field = m.field();
        let mut acc = field.zero();
        for term in &self.terms {
            let coeff = term.coeff.promote(field)?;
            let x = m.get(term.row, term.col);
            let x = if term.conjugated { x.conj() } else { x.clone() };
            acc = &acc + &(&coeff * &x);
        }
        Ok(acc)
    }

    pub fn holds(&self, m: &Matrix) -> Result<bool> {
        Ok(self.evaluate(m)? == self.rhs.promote(m.field())?)
    }
}

/// `particular + span(directions)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSubspace {
    pub particular: Matrix,
    pub directions: Vec<Matrix>,
    /// Directions span the space over the real subfield only.
    pub realified: bool,
    /// Rank of the (possibly realified) constraint system.
    pub rank: usize,
}

impl AffineSubspace {
    pub fn dimension(&self) -> usize {
        self.directions.len()
    }

    /// `particular + Σ coeffs[k]·directions[k]`.
    pub fn point(&self, coeffs: &[Scalar]) -> Result<Matrix> {
        if coeffs.len() != self.directions.len() {
            return Err(AlgebraError::SizeMismatch {
                left: self.directions.len(),
                right: coeffs.len(),
            });
        }
        let field = self.particular.field();
        let mut acc = self.particular.clone();
        for (alpha, dir) in coeffs.iter().zip(&self.directions) {
            acc = (&acc + &dir.scale(&alpha.promote(field)?)?)?;
        }
        Ok(acc)
    }
}

/// Solves the constraint system for `size × size` matrices over `field`.
pub fn solve_affine_system(
    constraints: &[LinearConstraint],
    size: usize,
    field: Field,
    realify: bool,
) -> Result<AffineSubspace> {
    if realify {
        if field != Field::Gaussian {
            return Err(AlgebraError::UnsupportedField {
                field,
                reason: "realified solving is defined for ℚ(i) only".into(),
            });
        }
        return solve_realified(constraints, size);
    }
    if matches!(field, Field::Surd | Field::SurdComplex) {
        return Err(AlgebraError::UnsupportedField {
            field,
            reason: "elimination needs full division".into(),
        });
    }
    let unknowns = size * size;
    let mut rows = Vec::with_capacity(constraints.len());
    for constraint in constraints {
        let mut row = vec![field.zero(); unknowns + 1];
        for term in &constraint.terms {
            if term.conjugated && field.is_complex() {
                return Err(AlgebraError::UnsupportedField {
                    field,
                    reason: format!("constraint `{}` is conjugate-linear", constraint.label),
                });
            }
            let k = term.row * size + term.col;
            row[k] = &row[k] + &term.coeff.promote(field)?;
        }
        row[unknowns] = constraint.rhs.promote(field)?;
        rows.push(row);
    }
    let solution = eliminate(rows, unknowns, field)?;
    let to_matrix = |v: &[Scalar]| Matrix::from_fn(field, size, |r, c| v[r * size + c].clone());
    Ok(AffineSubspace {
        particular: to_matrix(&solution.particular),
        directions: solution.nullspace.iter().map(|v| to_matrix(v)).collect(),
        realified: false,
        rank: solution.rank,
    })
}

fn solve_realified(constraints: &[LinearConstraint], size: usize) -> Result<AffineSubspace> {
    let q = Field::Rational;
    let unknowns = 2 * size * size;
    let parts = |s: &Scalar| -> Result<(Rational, Rational)> {
        s.rational_parts().ok_or(AlgebraError::FieldMismatch {
            left: Field::Gaussian,
            right: s.field(),
        })
    };
    let mut rows = Vec::with_capacity(2 * constraints.len());
    for constraint in constraints {
        let mut re_row = vec![q.zero(); unknowns + 1];
        let mut im_row = vec![q.zero(); unknowns + 1];
        for term in &constraint.terms {
            let (alpha, beta) = parts(&term.coeff)?;
            let k = term.row * size + term.col;
            let (u, v) = (2 * k, 2 * k + 1);
            let add = |row: &mut Vec<Scalar>, idx: usize, value: Rational| {
                row[idx] = &row[idx] + &Scalar::Q(value);
            };
            // (α+iβ)(u+iv) = (αu − βv) + i(βu + αv); conjugated: (αu + βv) + i(βu − αv).
            let sign = if term.conjugated { 1 } else { -1 };
            add(&mut re_row, u, alpha.clone());
            add(&mut re_row, v, &beta * Rational::from_integer(sign.into()));
            add(&mut im_row, u, beta.clone());
            add(&mut im_row, v, &alpha * Rational::from_integer((-sign).into()));
        }
        let (rho, sigma) = parts(&constraint.rhs)?;
        re_row[unknowns] = Scalar::Q(rho);
        im_row[unknowns] = Scalar::Q(sigma);
        rows.push(re_row);
        rows.push(im_row);
    }
    let solution = eliminate(rows, unknowns, q)?;
    let to_matrix = |v: &[Scalar]| {
        Matrix::from_fn(Field::Gaussian, size, |r, c| {
            let k = r * size + c;
            let (re, _) = v[2 * k].rational_parts().expect("rational unknown");
            let (im, _) = v[2 * k + 1].rational_parts().expect("rational unknown");
            Scalar::Qi(GaussianRational::new(re, im))
        })
    };
    Ok(AffineSubspace {
        particular: to_matrix(&solution.particular),
        directions: solution.nullspace.iter().map(|v| to_matrix(v)).collect(),
        realified: true,
        rank: solution.rank,
    })
}

struct Solution {
    particular: Vec<Scalar>,
    nullspace: Vec<Vec<Scalar>>,
    rank: usize,
}

/// Reduced row echelon form of an augmented system, then read off a particular
/// solution (free variables zero) and one nullspace vector per free variable.
fn eliminate(mut rows: Vec<Vec<Scalar>>, unknowns: usize, field: Field) -> Result<Solution> {
    let mut pivots: Vec<usize> = Vec::new();
    let mut next = 0;
    for col in 0..unknowns {
        let Some(found) = (next..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(next, found);
        let inv = rows[next][col].inverse()?;
        for x in rows[next].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..rows.len() {
            if r == next || rows[r][col].is_zero() {
                continue;
            }
            let factor = rows[r][col].clone();
            for k in col..=unknowns {
                let delta = &factor * &rows[next][k];
                rows[r][k] = &rows[r][k] - &delta;
            }
        }
        pivots.push(col);
        next += 1;
        if next == rows.len() {
            break;
        }
    }
    if let Some(bad) = rows[next..].iter().find(|row| !row[unknowns].is_zero()) {
        return Err(AlgebraError::Infeasible(format!(
            "reduces to 0 = {}",
            bad[unknowns]
        )));
    }
    let mut particular = vec![field.zero(); unknowns];
    for (r, &p) in pivots.iter().enumerate() {
        particular[p] = rows[r][unknowns].clone();
    }
    let mut is_pivot = vec![false; unknowns];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let nullspace = (0..unknowns)
        .filter(|&f| !is_pivot[f])
        .map(|free| {
            let mut v = vec![field.zero(); unknowns];
            v[free] = field.one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -&rows[r][free];
            }
            v
        })
        .collect();
    Ok(Solution {
        particular,
        nullspace,
        rank: pivots.len(),
    })
}
