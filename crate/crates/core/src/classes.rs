//! The normalised affine matrix classes `ga_c`, `gna`, `sna`, `ona`, `una`, `suna`.
//!
//! Each class is cut out of `gl(n+1, 𝔽)` by linear equations: all row and column
//! sums equal a fixed scalar (`1`, `c` or `i`), optionally together with a trace,
//! antisymmetry or anti-hermitian condition. Those equations are the single
//! source for membership, dimension counting and sampling.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{AlgebraError, Result};
use crate::matrix::Matrix;
use crate::scalar::{rat, Field, GaussianRational, Scalar};
use crate::solver::{solve_affine_system, AffineSubspace, LinearConstraint, LinearTerm};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ClassKind {
    /// Row and column sums equal to `c`.
    GaC(Scalar),
    Gna,
    Sna,
    Ona,
    Una,
    Suna,
}

impl ClassKind {
    pub fn tag(&self) -> &'static str {
        match self {
            ClassKind::GaC(_) => "ga_c",
            ClassKind::Gna => "gna",
            ClassKind::Sna => "sna",
            ClassKind::Ona => "ona",
            ClassKind::Una => "una",
            ClassKind::Suna => "suna",
        }
    }

    /// ONA, UNA and SUNA are only preserved by the unitary conjugation.
    pub fn needs_unitary(&self) -> bool {
        matches!(self, ClassKind::Ona | ClassKind::Una | ClassKind::Suna)
    }

    fn is_hermitian_type(&self) -> bool {
        matches!(self, ClassKind::Una | ClassKind::Suna)
    }

    fn is_traceless(&self) -> bool {
        matches!(self, ClassKind::Sna | ClassKind::Suna)
    }
}

/// One class at block size `n` (ambient size `n + 1`) over a field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ClassSpec {
    kind: ClassKind,
    n: usize,
    field: Field,
}

impl ClassSpec {
    pub fn new(kind: ClassKind, n: usize, field: Field) -> Result<Self> {
        if n == 0 {
            return Err(AlgebraError::InvalidClass("n must be positive".into()));
        }
        let allowed = match kind {
            ClassKind::Gna | ClassKind::Sna | ClassKind::GaC(_) => matches!(
                field,
                Field::Rational | Field::Gaussian | Field::Prime(_)
            ),
            ClassKind::Ona => matches!(field, Field::Rational | Field::Surd),
            ClassKind::Una | ClassKind::Suna => {
                matches!(field, Field::Gaussian | Field::SurdComplex)
            }
        };
        if !allowed {
            return Err(AlgebraError::InvalidClass(format!(
                "{} is not defined over {field}",
                kind.tag()
            )));
        }
        let kind = match kind {
            ClassKind::GaC(c) => ClassKind::GaC(c.promote(field)?),
            other => other,
        };
        Ok(Self { kind, n, field })
    }

    pub fn gna(n: usize, field: Field) -> Result<Self> {
        Self::new(ClassKind::Gna, n, field)
    }

    pub fn sna(n: usize, field: Field) -> Result<Self> {
        Self::new(ClassKind::Sna, n, field)
    }

    pub fn ona(n: usize) -> Result<Self> {
        Self::new(ClassKind::Ona, n, Field::Rational)
    }

    pub fn una(n: usize) -> Result<Self> {
        Self::new(ClassKind::Una, n, Field::Gaussian)
    }

    pub fn suna(n: usize) -> Result<Self> {
        Self::new(ClassKind::Suna, n, Field::Gaussian)
    }

    pub fn ga_c(c: Scalar, n: usize) -> Result<Self> {
        let field = c.field();
        Self::new(ClassKind::GaC(c), n, field)
    }

    pub fn kind(&self) -> &ClassKind {
        &self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Ambient matrix size `n + 1`.
    pub fn size(&self) -> usize {
        self.n + 1
    }

    /// The common value of every row and column sum.
    pub fn normalisation(&self) -> Scalar {
        match &self.kind {
            ClassKind::GaC(c) => c.clone(),
            ClassKind::Una | ClassKind::Suna => {
                self.field.imaginary_unit().expect("complex field")
            }
            _ => self.field.one(),
        }
    }

    /// Field the affine action is taken over: the reals for hermitian-type classes.
    pub fn scalar_field(&self) -> Field {
        if self.kind.is_hermitian_type() {
            self.field.real_part()
        } else {
            self.field
        }
    }

    pub fn realified(&self) -> bool {
        self.kind.is_hermitian_type()
    }

    /// Same class over another field, e.g. its surd widening.
    pub fn with_field(&self, field: Field) -> Result<Self> {
        Self::new(self.kind.clone(), self.n, field)
    }

    /// The defining linear equations.
    pub fn constraint_system(&self) -> Vec<LinearConstraint> {
        let m = self.size();
        let f = self.field;
        let one = f.one();
        let s = self.normalisation();
        let mut out = Vec::new();
        for l in 0..m {
            out.push(LinearConstraint {
                label: format!("row {} sums to {s}", l + 1),
                terms: (0..m).map(|k| LinearTerm::plain(l, k, one.clone())).collect(),
                rhs: s.clone(),
            });
            out.push(LinearConstraint {
                label: format!("column {} sums to {s}", l + 1),
                terms: (0..m).map(|k| LinearTerm::plain(k, l, one.clone())).collect(),
                rhs: s.clone(),
            });
        }
        if self.kind.is_traceless() {
            out.push(LinearConstraint {
                label: "trace is 0".into(),
                terms: (0..m).map(|k| LinearTerm::plain(k, k, one.clone())).collect(),
                rhs: f.zero(),
            });
        }
        if self.kind == ClassKind::Ona {
            for k in 0..m {
                out.push(LinearConstraint {
                    label: format!("a[{0},{0}] = 1", k + 1),
                    terms: vec![LinearTerm::plain(k, k, one.clone())],
                    rhs: one.clone(),
                });
                for l in k + 1..m {
                    out.push(LinearConstraint {
                        label: format!("a[{},{}] = -a[{},{}]", k + 1, l + 1, l + 1, k + 1),
                        terms: vec![
                            LinearTerm::plain(k, l, one.clone()),
                            LinearTerm::plain(l, k, one.clone()),
                        ],
                        rhs: f.zero(),
                    });
                }
            }
        }
        if self.kind.is_hermitian_type() {
            for k in 0..m {
                for l in k..m {
                    out.push(LinearConstraint {
                        label: format!("a[{},{}] = -conj(a[{},{}])", k + 1, l + 1, l + 1, k + 1),
                        terms: vec![
                            LinearTerm::plain(k, l, one.clone()),
                            LinearTerm::conjugated(l, k, one.clone()),
                        ],
                        rhs: f.zero(),
                    });
                }
            }
        }
        out
    }

    fn check_shape(&self, m: &Matrix) -> Result<()> {
        if m.size() != self.size() {
            return Err(AlgebraError::SizeMismatch {
                left: self.size(),
                right: m.size(),
            });
        }
        let widened = self.field.widen_to_surd().ok();
        if m.field() != self.field && Some(m.field()) != widened {
            return Err(AlgebraError::FieldMismatch {
                left: self.field,
                right: m.field(),
            });
        }
        Ok(())
    }

    /// First violated defining equation, if any.
    pub fn violation(&self, m: &Matrix) -> Result<Option<String>> {
        self.check_shape(m)?;
        for constraint in self.constraint_system() {
            if !constraint.holds(m)? {
                return Ok(Some(constraint.label));
            }
        }
        Ok(None)
    }

    /// Exact membership. `m` may also live in the surd widening of the class field.
    pub fn contains(&self, m: &Matrix) -> Result<bool> {
        Ok(self.violation(m)?.is_none())
    }

    /// `Ok` for members, `ClassViolation` naming the failed equation otherwise.
    pub fn check_member(&self, m: &Matrix) -> Result<()> {
        match self.violation(m)? {
            None => Ok(()),
            Some(constraint) => Err(AlgebraError::ClassViolation {
                class: self.to_string(),
                constraint,
            }),
        }
    }

    fn inverse_of(&self, k: usize, what: &str) -> Result<Scalar> {
        self.field
            .from_i64(k as i64)
            .inverse()
            .map_err(|_| AlgebraError::NonInvertibleScalar {
                what: format!("{what} = {k}"),
                field: self.field,
            })
    }

    /// The distinguished element the isomorphisms send to the block base point.
    pub fn base_point(&self) -> Result<ClassElement> {
        let m = self.size();
        let f = self.field;
        let identity = Matrix::identity(f, m);
        let value = match &self.kind {
            ClassKind::Gna | ClassKind::GaC(_) | ClassKind::Una => {
                let scale = &self.normalisation() * &self.inverse_of(m, "n+1")?;
                Matrix::constant(m, &scale)
            }
            ClassKind::Sna | ClassKind::Suna => {
                let scale = &self.normalisation() * &self.inverse_of(self.n, "n")?;
                (&Matrix::constant(m, &scale) - &identity.scale(&scale)?)?
            }
            ClassKind::Ona => identity,
        };
        ClassElement::new(self.clone(), value)
    }

    pub fn affine_subspace(&self) -> Result<AffineSubspace> {
        if matches!(self.field, Field::Surd | Field::SurdComplex) {
            return Err(AlgebraError::UnsupportedField {
                field: self.field,
                reason: "parameterisation and sampling run over ℚ and ℚ(i)".into(),
            });
        }
        solve_affine_system(
            &self.constraint_system(),
            self.size(),
            self.field,
            self.realified(),
        )
    }

    /// Dimension over the scalar field, i.e. that of the retract Lie algebra.
    pub fn dimension(&self) -> Result<usize> {
        Ok(self.affine_subspace()?.dimension())
    }

    pub fn sample(&self, seed: u64, index: u64) -> Result<ClassElement> {
        Sampler::new(self.clone())?.sample(seed, index)
    }
}

impl fmt::Display for ClassSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ClassKind::GaC(c) => write!(f, "ga_{{{c}}}({}, {})", self.n, self.field),
            other => write!(f, "{}({}, {})", other.tag(), self.n, self.field),
        }
    }
}

/// A matrix known to belong to its class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassElement {
    spec: ClassSpec,
    value: Matrix,
}

impl ClassElement {
    pub fn new(spec: ClassSpec, value: Matrix) -> Result<Self> {
        spec.check_member(&value)?;
        Ok(Self { spec, value })
    }

    pub fn spec(&self) -> &ClassSpec {
        &self.spec
    }

    pub fn value(&self) -> &Matrix {
        &self.value
    }

    pub fn into_value(self) -> Matrix {
        self.value
    }
}

/// Range of the random rational coefficients used by samplers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SampleBounds {
    /// Numerators are drawn from `[-numerator, numerator]`.
    pub numerator: i64,
    /// Denominators are drawn from `[1, denominator]`.
    pub denominator: i64,
}

impl Default for SampleBounds {
    fn default() -> Self {
        Self {
            numerator: 9,
            denominator: 9,
        }
    }
}

/// Deterministic generator for trial `index` under `seed`.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Uniform random element of `field` within `bounds` (ℚ-parts drawn independently).
pub fn random_scalar(field: Field, bounds: SampleBounds, rng: &mut impl Rng) -> Scalar {
    let rational = |rng: &mut dyn rand::RngCore| {
        let num = rng.gen_range(-bounds.numerator..=bounds.numerator);
        let den = rng.gen_range(1..=bounds.denominator);
        rat(num, den)
    };
    match field {
        Field::Prime(p) => field.from_i64(rng.gen_range(0..p) as i64),
        Field::Gaussian => Scalar::Qi(GaussianRational::new(rational(rng), rational(rng))),
        other => other
            .from_rational(&rational(rng))
            .expect("rationals embed in characteristic zero"),
    }
}

/// Cached parameterisation of a class for repeated sampling.
#[derive(Clone, Debug)]
pub struct Sampler {
    spec: ClassSpec,
    subspace: AffineSubspace,
    /// Nonzero `(entry index, value)` pairs of each direction.
    sparse: Vec<Vec<(usize, Scalar)>>,
    bounds: SampleBounds,
}

impl Sampler {
    pub fn new(spec: ClassSpec) -> Result<Self> {
        Self::with_bounds(spec, SampleBounds::default())
    }

    pub fn with_bounds(spec: ClassSpec, bounds: SampleBounds) -> Result<Self> {
        spec.base_point()?;
        let subspace = spec.affine_subspace()?;
        let sparse = subspace
            .directions
            .iter()
            .map(|d| {
                d.entries()
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(k, x)| (k, x.clone()))
                    .collect()
            })
            .collect();
        Ok(Self {
            spec,
            subspace,
            sparse,
            bounds,
        })
    }

    pub fn spec(&self) -> &ClassSpec {
        &self.spec
    }

    pub fn subspace(&self) -> &AffineSubspace {
        &self.subspace
    }

    pub fn bounds(&self) -> SampleBounds {
        self.bounds
    }

    /// Next class element from `rng`.
    pub fn draw(&self, rng: &mut impl Rng) -> Matrix {
        let coeff_field = if self.subspace.realified {
            Field::Rational
        } else {
            self.spec.field
        };
        let field = self.spec.field;
        let mut entries = self.subspace.particular.entries().to_vec();
        for direction in &self.sparse {
            let coeff = random_scalar(coeff_field, self.bounds, rng)
                .promote(field)
                .expect("coefficients embed in the class field");
            if coeff.is_zero() {
                continue;
            }
            for (k, value) in direction {
                entries[*k] = &entries[*k] + &(&coeff * value);
            }
        }
        Matrix::from_entries(field, self.spec.size(), entries)
    }

    /// Next scalar for the affine action, from the class's scalar field.
    pub fn draw_scalar(&self, rng: &mut impl Rng) -> Scalar {
        random_scalar(self.spec.scalar_field(), self.bounds, rng)
    }

    pub fn sample(&self, seed: u64, index: u64) -> Result<ClassElement> {
        let value = self.draw(&mut trial_rng(seed, index));
        ClassElement::new(self.spec.clone(), value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    const Q: Field = Field::Rational;

    #[test]
    fn gna_contains_scaled_all_ones() {
        for n in 1..5 {
            let spec = ClassSpec::gna(n, Q).unwrap();
            let j = Matrix::constant(n + 1, &Scalar::Q(rat(1, n as i64 + 1)));
            assert!(spec.contains(&j).unwrap());
        }
    }

    #[test]
    fn identity_in_ona_not_in_sna() {
        for n in 1..5 {
            let id = Matrix::identity(Q, n + 1);
            assert!(ClassSpec::ona(n).unwrap().contains(&id).unwrap());
            assert!(!ClassSpec::sna(n, Q).unwrap().contains(&id).unwrap());
        }
    }

    #[test]
    fn wrong_size_is_an_error() {
        let spec = ClassSpec::gna(2, Q).unwrap();
        assert!(matches!(
            spec.contains(&Matrix::identity(Q, 2)),
            Err(AlgebraError::SizeMismatch { .. })
        ));
    }

    #[test]
    fn base_points() {
        let gna = ClassSpec::gna(2, Q).unwrap().base_point().unwrap();
        assert_eq!(*gna.value(), Matrix::constant(3, &Scalar::Q(rat(1, 3))));
        let sna = ClassSpec::sna(2, Q).unwrap().base_point().unwrap();
        let h = Scalar::Q(rat(1, 2));
        let z = Q.zero();
        let expected = Matrix::from_rows(
            Q,
            vec![
                vec![z.clone(), h.clone(), h.clone()],
                vec![h.clone(), z.clone(), h.clone()],
                vec![h.clone(), h.clone(), z.clone()],
            ],
        )
        .unwrap();
        assert_eq!(*sna.value(), expected);
        let gf5 = Field::prime(5).unwrap();
        assert!(matches!(
            ClassSpec::sna(5, gf5).unwrap().base_point(),
            Err(AlgebraError::NonInvertibleScalar { .. })
        ));
    }

    #[test]
    fn invalid_field_combinations() {
        assert!(ClassSpec::new(ClassKind::Ona, 2, Field::Gaussian).is_err());
        assert!(ClassSpec::new(ClassKind::Una, 2, Q).is_err());
        assert!(ClassSpec::new(ClassKind::Gna, 0, Q).is_err());
        assert!(ClassSpec::new(ClassKind::Gna, 2, Field::Surd).is_err());
    }

    #[test]
    fn gna_ranks_and_dimensions() {
        for n in 1..5 {
            let space = ClassSpec::gna(n, Q).unwrap().affine_subspace().unwrap();
            assert_eq!(space.rank, 2 * n + 1);
            assert_eq!(space.dimension(), n * n);
        }
        let ga0 = ClassSpec::ga_c(Q.zero(), 2).unwrap();
        assert_eq!(ga0.dimension().unwrap(), 4);
    }

    #[test]
    fn class_dimensions() {
        assert_eq!(ClassSpec::gna(3, Q).unwrap().dimension().unwrap(), 9);
        assert_eq!(ClassSpec::suna(2).unwrap().dimension().unwrap(), 3);
        assert_eq!(ClassSpec::ona(3).unwrap().dimension().unwrap(), 3);
        assert_eq!(ClassSpec::ona(2).unwrap().dimension().unwrap(), 1);
        assert_eq!(ClassSpec::una(3).unwrap().dimension().unwrap(), 9);
    }

    #[test]
    fn gna1_samples_are_symmetric_doubly_stochastic() {
        let spec = ClassSpec::gna(1, Q).unwrap();
        let sampler = Sampler::new(spec).unwrap();
        for index in 0..20 {
            let s = sampler.sample(7, index).unwrap().into_value();
            let x = s.get(0, 0).clone();
            let one_minus = &Q.one() - &x;
            assert_eq!(*s.get(0, 1), one_minus);
            assert_eq!(*s.get(1, 0), one_minus);
            assert_eq!(*s.get(1, 1), x);
        }
    }

    #[test]
    fn sampling_is_deterministic() {
        let spec = ClassSpec::suna(2).unwrap();
        let a = spec.sample(42, 3).unwrap();
        let b = spec.sample(42, 3).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, spec.sample(42, 4).unwrap());
    }

    #[test]
    fn ga_c_with_c_one_is_gna() {
        let gna = ClassSpec::gna(2, Q).unwrap();
        let ga1 = ClassSpec::ga_c(Scalar::Q(int(1)), 2).unwrap();
        for index in 0..10 {
            let x = gna.sample(1, index).unwrap().into_value();
            let y = ga1.sample(2, index).unwrap().into_value();
            assert!(ga1.contains(&x).unwrap());
            assert!(gna.contains(&y).unwrap());
        }
    }
}
