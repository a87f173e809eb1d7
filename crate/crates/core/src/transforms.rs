//! Closed-form change-of-basis matrices and the isomorphisms they induce.
//!
//! `P` has a constant last column and zero column sums elsewhere, so conjugating
//! by it moves the "all row/column sums equal c" structure into a block-diagonal
//! one. `U` is the orthonormal counterpart, needed when the class is defined by
//! (anti-)symmetry or (anti-)hermitian conditions that `P` would not preserve.

use std::fmt;

use num_bigint::BigInt;
use rand::Rng;

use crate::classes::{random_scalar, ClassKind, ClassSpec, SampleBounds};
use crate::error::{AlgebraError, Result};
use crate::matrix::Matrix;
use crate::scalar::{Field, Rational, Scalar, SurdReal};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Conjugator {
    P,
    U,
}

impl Conjugator {
    /// `U` for the classes `P` does not preserve, `P` otherwise.
    pub fn default_for(spec: &ClassSpec) -> Self {
        if spec.kind().needs_unitary() {
            Conjugator::U
        } else {
            Conjugator::P
        }
    }
}

impl fmt::Display for Conjugator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Conjugator::P => write!(f, "P"),
            Conjugator::U => write!(f, "U"),
        }
    }
}

/// `P` of size `n + 1`: first row all ones; row `r ≥ 1` has `−1` in column `n − r`
/// and `1` in the last column.
pub fn build_p(n: usize, field: Field) -> Matrix {
    Matrix::from_fn(field, n + 1, |r, c| {
        if r == 0 || c == n {
            field.one()
        } else if c == n - r {
            field.from_i64(-1)
        } else {
            field.zero()
        }
    })
}

/// `P⁻¹ = M/(n+1)`, where row `r < n` of `M` is `−n` in column `n − r` and `1`
/// elsewhere, and the last row of `M` is all ones.
pub fn build_p_inverse(n: usize, field: Field) -> Result<Matrix> {
    let scale = field
        .from_i64(n as i64 + 1)
        .inverse()
        .map_err(|_| AlgebraError::NonInvertibleScalar {
            what: format!("n+1 = {}", n + 1),
            field,
        })?;
    let body = Matrix::from_fn(field, n + 1, |r, c| {
        if r < n && c == n - r {
            field.from_i64(-(n as i64))
        } else {
            field.one()
        }
    });
    body.scale(&scale)
}

fn inv_sqrt(k: usize) -> SurdReal {
    let q = Rational::new(BigInt::from(1), BigInt::from(k));
    SurdReal::sqrt(&q).expect("positive radicand")
}

/// The orthogonal matrix obtained by orthonormalising the columns of `P`,
/// starting from the constant column, written in closed form.
///
/// Column `j < n` holds `1/√((n+1−j)(n−j))` in rows `0..n−j`, then
/// `−√((n−j)/(n+1−j))` in row `n − j`, then zeros; the last column is `1/√(n+1)`.
pub fn build_u(n: usize) -> Matrix {
    Matrix::from_fn(Field::Surd, n + 1, |r, c| {
        let value = if c == n {
            inv_sqrt(n + 1)
        } else if r < n - c {
            inv_sqrt((n + 1 - c) * (n - c))
        } else if r == n - c {
            let q = Rational::new(BigInt::from(n - c), BigInt::from(n + 1 - c));
            -&SurdReal::sqrt(&q).expect("positive radicand")
        } else {
            SurdReal::zero()
        };
        Scalar::Surd(value)
    })
}

/// `P`, `P⁻¹` and `U` for one size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransformMatrices {
    pub p: Matrix,
    pub p_inv: Matrix,
    pub u: Matrix,
}

impl TransformMatrices {
    pub fn new(n: usize, field: Field) -> Result<Self> {
        Ok(Self {
            p: build_p(n, field),
            p_inv: build_p_inverse(n, field)?,
            u: build_u(n),
        })
    }
}

/// `ga_c → ga_{c'}`, `a ↦ a + (c' − c)·I`.
pub fn shift_map(c: &Scalar, c_prime: &Scalar, m: &Matrix) -> Result<Matrix> {
    let field = m.field();
    let c = c.promote(field)?;
    let c_prime = c_prime.promote(field)?;
    if m.size() < 2 {
        return Err(AlgebraError::SizeMismatch {
            left: 2,
            right: m.size(),
        });
    }
    ClassSpec::ga_c(c.clone(), m.size() - 1)?.check_member(m)?;
    let delta = &c_prime - &c;
    m + &Matrix::identity(field, m.size()).scale(&delta)?
}

/// Classical Lie algebra occupying the top-left `n × n` block.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BlockKind {
    Gl,
    Sl,
    O,
    U,
    Su,
}

impl BlockKind {
    pub fn for_class(kind: &ClassKind) -> Self {
        match kind {
            ClassKind::Gna | ClassKind::GaC(_) => BlockKind::Gl,
            ClassKind::Sna => BlockKind::Sl,
            ClassKind::Ona => BlockKind::O,
            ClassKind::Una => BlockKind::U,
            ClassKind::Suna => BlockKind::Su,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            BlockKind::Gl => "gl",
            BlockKind::Sl => "sl",
            BlockKind::O => "o",
            BlockKind::U => "u",
            BlockKind::Su => "su",
        }
    }

    fn traceless(self) -> bool {
        matches!(self, BlockKind::Sl | BlockKind::Su)
    }
}

/// `base_block + (𝔤 0; 0 0)`: a fixed block-diagonal matrix plus the classical
/// algebra in the top-left corner.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockTarget {
    pub base_block: Matrix,
    pub kind: BlockKind,
    /// Field the block entries are sampled from before promotion.
    pub entry_field: Field,
}

impl BlockTarget {
    pub fn n(&self) -> usize {
        self.base_block.size() - 1
    }

    /// Conditions on `x` as an element of `(𝔤 0; 0 0)`, i.e. with the base removed.
    pub fn block_violation(&self, x: &Matrix) -> Result<Option<String>> {
        self.base_block.ensure_compatible(x)?;
        let n = self.n();
        for k in 0..=n {
            if !x.get(n, k).is_zero() {
                return Ok(Some(format!("last row entry {} is nonzero", k + 1)));
            }
            if !x.get(k, n).is_zero() {
                return Ok(Some(format!("last column entry {} is nonzero", k + 1)));
            }
        }
        if self.kind.traceless() && !x.trace().is_zero() {
            return Ok(Some("block trace is nonzero".into()));
        }
        for r in 0..n {
            for c in r..n {
                let (a, b) = (x.get(r, c), x.get(c, r));
                let ok = match self.kind {
                    BlockKind::Gl | BlockKind::Sl => true,
                    BlockKind::O => *a == -b,
                    BlockKind::U | BlockKind::Su => *a == -&b.conj(),
                };
                if !ok {
                    return Ok(Some(format!(
                        "block entry ({},{}) breaks {}",
                        r + 1,
                        c + 1,
                        self.kind.name()
                    )));
                }
            }
        }
        Ok(None)
    }

    pub fn violation(&self, m: &Matrix) -> Result<Option<String>> {
        self.block_violation(&(m - &self.base_block)?)
    }

    pub fn contains(&self, m: &Matrix) -> Result<bool> {
        Ok(self.violation(m)?.is_none())
    }

    /// Random element of `(𝔤 0; 0 0)`, promoted to the base block's field.
    pub fn sample_block(&self, bounds: SampleBounds, rng: &mut impl Rng) -> Matrix {
        let n = self.n();
        let f = self.entry_field;
        let mut x = Matrix::zeros(f, n + 1);
        let put = |x: &mut Matrix, r: usize, c: usize, v: Scalar| {
            x.set(r, c, v).expect("entry field")
        };
        for r in 0..n {
            for c in r..n {
                match self.kind {
                    BlockKind::Gl | BlockKind::Sl => {
                        put(&mut x, r, c, random_scalar(f, bounds, rng));
                        if c != r {
                            put(&mut x, c, r, random_scalar(f, bounds, rng));
                        }
                    }
                    BlockKind::O => {
                        if c != r {
                            let v = random_scalar(f, bounds, rng);
                            put(&mut x, c, r, -&v);
                            put(&mut x, r, c, v);
                        }
                    }
                    BlockKind::U | BlockKind::Su => {
                        let v = if c == r {
                            let t = random_scalar(f.real_part(), bounds, rng);
                            &f.imaginary_unit().expect("complex entry field")
                                * &t.promote(f).expect("real part embeds")
                        } else {
                            random_scalar(f, bounds, rng)
                        };
                        put(&mut x, c, r, -&v.conj());
                        put(&mut x, r, c, v);
                    }
                }
            }
        }
        if self.kind.traceless() {
            let partial = (0..n - 1).fold(f.zero(), |acc, k| &acc + x.get(k, k));
            put(&mut x, n - 1, n - 1, -&partial);
        }
        x.promote(self.base_block.field())
            .expect("entry field embeds in target field")
    }

    /// `base_block + sample_block(..)`.
    pub fn sample(&self, bounds: SampleBounds, rng: &mut impl Rng) -> Matrix {
        (&self.base_block + &self.sample_block(bounds, rng)).expect("same shape")
    }
}

impl fmt::Display for BlockTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} + ({}({}) 0; 0 0)",
            self.base_block,
            self.kind.name(),
            self.n()
        )
    }
}

/// Right-hand side of the isomorphism for `spec`, over the field the chosen
/// conjugation lands in.
pub fn block_target(spec: &ClassSpec, via: Conjugator) -> Result<BlockTarget> {
    let field = spec.field();
    let n = spec.size() - 1;
    let s = spec.normalisation();
    let mut diag = vec![field.zero(); n + 1];
    match spec.kind() {
        ClassKind::Gna | ClassKind::GaC(_) | ClassKind::Una => diag[n] = s,
        ClassKind::Sna | ClassKind::Suna => {
            let inv_n = field
                .from_i64(n as i64)
                .inverse()
                .map_err(|_| AlgebraError::NonInvertibleScalar {
                    what: format!("n = {n}"),
                    field,
                })?;
            let corner = -&(&s * &inv_n);
            diag.iter_mut().take(n).for_each(|d| *d = corner.clone());
            diag[n] = s;
        }
        ClassKind::Ona => diag.iter_mut().for_each(|d| *d = field.one()),
    }
    let target_field = match via {
        Conjugator::P => field,
        Conjugator::U => field.widen_to_surd()?,
    };
    Ok(BlockTarget {
        base_block: Matrix::diagonal(&diag)?.promote(target_field)?,
        kind: BlockKind::for_class(spec.kind()),
        entry_field: field,
    })
}

/// `f(a) = L·a·R` into block form and its inverse `f⁻¹(b) = R⁻¹·b·L⁻¹`.
#[derive(Clone, Debug)]
pub struct ClassIsomorphism {
    spec: ClassSpec,
    via: Conjugator,
    target: BlockTarget,
    left: Matrix,
    right: Matrix,
    left_inv: Matrix,
    right_inv: Matrix,
}

impl ClassIsomorphism {
    pub fn new(spec: &ClassSpec, via: Conjugator) -> Result<Self> {
        let n = spec.size() - 1;
        let target = block_target(spec, via)?;
        let (left, right, left_inv, right_inv) = match via {
            Conjugator::P => {
                if spec.kind().needs_unitary() {
                    return Err(AlgebraError::RequiresUnitary(spec.to_string()));
                }
                let p = build_p(n, spec.field());
                let p_inv = build_p_inverse(n, spec.field())?;
                (p_inv.clone(), p.clone(), p, p_inv)
            }
            Conjugator::U => {
                let u = build_u(n).promote(target.base_block.field())?;
                let u_dag = u.dagger();
                (u_dag.clone(), u.clone(), u, u_dag)
            }
        };
        Ok(Self {
            spec: spec.clone(),
            via,
            target,
            left,
            right,
            left_inv,
            right_inv,
        })
    }

    pub fn spec(&self) -> &ClassSpec {
        &self.spec
    }

    pub fn via(&self) -> Conjugator {
        self.via
    }

    pub fn target(&self) -> &BlockTarget {
        &self.target
    }

    pub fn target_field(&self) -> Field {
        self.target.base_block.field()
    }

    /// Raw conjugation `L·a·R`; no membership checks.
    pub fn apply(&self, a: &Matrix) -> Result<Matrix> {
        let a = a.promote(self.target_field())?;
        &(&self.left * &a)? * &self.right
    }

    /// Raw inverse conjugation `R⁻¹·b·L⁻¹`.
    pub fn pull_back(&self, b: &Matrix) -> Result<Matrix> {
        let b = b.promote(self.target_field())?;
        &(&self.left_inv * &b)? * &self.right_inv
    }

    /// Checked forward map: class member in, block-target member out.
    pub fn to_blocks(&self, a: &Matrix) -> Result<Matrix> {
        self.spec.check_member(a)?;
        let image = self.apply(a)?;
        if let Some(constraint) = self.target.violation(&image)? {
            return Err(AlgebraError::ClassViolation {
                class: self.target.to_string(),
                constraint,
            });
        }
        Ok(image)
    }
}

/// `a ↦ P⁻¹aP` or `a ↦ U†aU`, with both ends membership-checked.
pub fn conjugate_to_blocks(spec: &ClassSpec, m: &Matrix, via: Conjugator) -> Result<Matrix> {
    ClassIsomorphism::new(spec, via)?.to_blocks(m)
}
