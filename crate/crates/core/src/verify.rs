//! Exact property checks over sampled data, with replayable counterexamples.
//!
//! Identities that only involve the heap, the action and the bracket are
//! evaluated by [`check_identity`] against any [`LieAffgebra`]. The remaining
//! checks (closure, the retract product, the isomorphism and its corollary) need
//! matrix structure and a class, and are evaluated by [`run_check`].

use std::fmt;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::affine::{assoc_retract_product, AffineSpace, BracketKind, LieAffgebra, MatrixAffgebra};
use crate::classes::{trial_rng, ClassSpec, SampleBounds, Sampler};
use crate::error::{AlgebraError, Result};
use crate::matrix::Matrix;
use crate::scalar::{int, Field, Scalar};
use crate::transforms::{ClassIsomorphism, Conjugator};
use crate::wire::{ClassSpecJson, MatrixJson};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CheckId {
    HeapAssoc,
    Malcev,
    HeapComm,
    ActAdd,
    ActHeap,
    ActAssoc,
    ActUnit,
    ActZero,
    ActBaseChange,
    BracketLeftAffine,
    BracketRightAffine,
    Antisym,
    Jacobi,
    Closure,
    Idempotent,
    RetractGroup,
    RetractVector,
    RetractLie,
    ZetaRetractTrivial,
    BulletAssoc,
    BulletCommutator,
    TranslateGroupIso,
    TranslateLieIso,
    TheoremIso,
    CorollaryRetract,
}

impl CheckId {
    /// Catalogue order, which is also report order.
    pub const ALL: [CheckId; 25] = [
        CheckId::HeapAssoc,
        CheckId::Malcev,
        CheckId::HeapComm,
        CheckId::ActAdd,
        CheckId::ActHeap,
        CheckId::ActAssoc,
        CheckId::ActUnit,
        CheckId::ActZero,
        CheckId::ActBaseChange,
        CheckId::BracketLeftAffine,
        CheckId::BracketRightAffine,
        CheckId::Antisym,
        CheckId::Jacobi,
        CheckId::Closure,
        CheckId::Idempotent,
        CheckId::RetractGroup,
        CheckId::RetractVector,
        CheckId::RetractLie,
        CheckId::ZetaRetractTrivial,
        CheckId::BulletAssoc,
        CheckId::BulletCommutator,
        CheckId::TranslateGroupIso,
        CheckId::TranslateLieIso,
        CheckId::TheoremIso,
        CheckId::CorollaryRetract,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckId::HeapAssoc => "heap-assoc",
            CheckId::Malcev => "malcev",
            CheckId::HeapComm => "heap-comm",
            CheckId::ActAdd => "act-add",
            CheckId::ActHeap => "act-heap",
            CheckId::ActAssoc => "act-assoc",
            CheckId::ActUnit => "act-unit",
            CheckId::ActZero => "act-zero",
            CheckId::ActBaseChange => "act-base-change",
            CheckId::BracketLeftAffine => "bracket-left-affine",
            CheckId::BracketRightAffine => "bracket-right-affine",
            CheckId::Antisym => "antisym",
            CheckId::Jacobi => "jacobi",
            CheckId::Closure => "closure",
            CheckId::Idempotent => "idempotent",
            CheckId::RetractGroup => "retract-group",
            CheckId::RetractVector => "retract-vector",
            CheckId::RetractLie => "retract-lie",
            CheckId::ZetaRetractTrivial => "zeta-retract-trivial",
            CheckId::BulletAssoc => "bullet-assoc",
            CheckId::BulletCommutator => "bullet-commutator",
            CheckId::TranslateGroupIso => "translate-group-iso",
            CheckId::TranslateLieIso => "translate-lie-iso",
            CheckId::TheoremIso => "theorem-iso",
            CheckId::CorollaryRetract => "corollary-retract",
        }
    }

    pub fn parse(name: &str) -> Result<Self> {
        let name = name.trim();
        CheckId::ALL
            .into_iter()
            .find(|c| c.name() == name)
            .ok_or_else(|| AlgebraError::UnknownCheck(name.to_string()))
    }

    fn index(self) -> u64 {
        CheckId::ALL.iter().position(|&c| c == self).expect("catalogued") as u64
    }

    /// Outcome is recorded but not counted towards the overall verdict.
    pub fn is_empirical(self) -> bool {
        self == CheckId::TranslateLieIso
    }

    pub fn applies_to(self, kind: &BracketKind) -> bool {
        match self {
            CheckId::ZetaRetractTrivial => matches!(kind, BracketKind::Zeta(_)),
            CheckId::BulletAssoc
            | CheckId::BulletCommutator
            | CheckId::TheoremIso
            | CheckId::CorollaryRetract => *kind == BracketKind::AffineCommutator,
            _ => true,
        }
    }

    /// Whether the identity is stated purely in terms of heap, action and bracket.
    pub fn is_generic(self) -> bool {
        !matches!(
            self,
            CheckId::Closure
                | CheckId::BulletAssoc
                | CheckId::BulletCommutator
                | CheckId::TheoremIso
                | CheckId::CorollaryRetract
        )
    }

    pub fn default_trials(self) -> usize {
        match self {
            CheckId::Jacobi => 50,
            _ => 100,
        }
    }

    /// Class elements and scalars consumed by one trial.
    pub fn arity(self) -> (usize, usize) {
        match self {
            CheckId::HeapAssoc => (5, 0),
            CheckId::Malcev => (2, 0),
            CheckId::HeapComm => (3, 0),
            CheckId::ActAdd => (2, 3),
            CheckId::ActHeap => (4, 1),
            CheckId::ActAssoc => (2, 2),
            CheckId::ActUnit | CheckId::ActZero => (2, 0),
            CheckId::ActBaseChange => (3, 1),
            CheckId::BracketLeftAffine | CheckId::BracketRightAffine => (4, 1),
            CheckId::Antisym => (2, 0),
            CheckId::Jacobi => (3, 0),
            CheckId::Closure => (3, 1),
            CheckId::Idempotent => (1, 0),
            CheckId::RetractGroup => (4, 0),
            CheckId::RetractVector => (3, 2),
            CheckId::RetractLie => (4, 1),
            CheckId::ZetaRetractTrivial => (3, 0),
            CheckId::BulletAssoc => (4, 0),
            CheckId::BulletCommutator => (3, 0),
            CheckId::TranslateGroupIso | CheckId::TranslateLieIso => (4, 0),
            CheckId::TheoremIso => (3, 1),
            CheckId::CorollaryRetract => (2, 0),
        }
    }

    /// Block-target elements drawn after the class elements.
    fn target_arity(self) -> usize {
        match self {
            CheckId::TheoremIso => 1,
            CheckId::CorollaryRetract => 2,
            _ => 0,
        }
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Two sides of a broken equation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch<P> {
    pub expected: P,
    pub actual: P,
    pub detail: &'static str,
}

fn first_mismatch<P: PartialEq>(
    equations: Vec<(&'static str, P, P)>,
) -> Option<Mismatch<P>> {
    equations
        .into_iter()
        .find(|(_, expected, actual)| expected != actual)
        .map(|(detail, expected, actual)| Mismatch {
            expected,
            actual,
            detail,
        })
}

fn expect_inputs<T>(check: CheckId, items: &[T], needed: usize, what: &str) -> Result<()> {
    if items.len() < needed {
        return Err(AlgebraError::Parse(format!(
            "{check} needs {needed} {what}, got {}",
            items.len()
        )));
    }
    Ok(())
}

/// Evaluates one carrier-level identity on the given inputs.
///
/// `points` and `scalars` are laid out as in [`CheckId::arity`]. Class-level
/// checks are rejected with `NotApplicable`.
pub fn check_identity<A: LieAffgebra>(
    alg: &A,
    check: CheckId,
    points: &[A::Point],
    scalars: &[Scalar],
) -> Result<Option<Mismatch<A::Point>>> {
    if !check.is_generic() {
        return Err(AlgebraError::NotApplicable {
            check: check.name().into(),
            bracket: "an abstract carrier".into(),
        });
    }
    let (np, ns) = check.arity();
    expect_inputs(check, points, np, "points")?;
    expect_inputs(check, scalars, ns, "scalars")?;
    let p = points;
    let s = scalars;
    let one = Scalar::Q(int(1));
    let zero = Scalar::Q(int(0));
    let br = |x: &A::Point, y: &A::Point| alg.bracket(x, y);
    let equations = match check {
        CheckId::HeapAssoc => {
            let (a, b, c, d, e) = (&p[0], &p[1], &p[2], &p[3], &p[4]);
            vec![(
                "<<a,b,c>,d,e> = <a,b,<c,d,e>>",
                alg.heap(a, b, &alg.heap(c, d, e)?)?,
                alg.heap(&alg.heap(a, b, c)?, d, e)?,
            )]
        }
        CheckId::Malcev => {
            let (a, b) = (&p[0], &p[1]);
            vec![
                ("<a,b,b> = a", a.clone(), alg.heap(a, b, b)?),
                ("<b,b,a> = a", a.clone(), alg.heap(b, b, a)?),
            ]
        }
        CheckId::HeapComm => {
            let (a, b, c) = (&p[0], &p[1], &p[2]);
            vec![("<a,b,c> = <c,b,a>", alg.heap(c, b, a)?, alg.heap(a, b, c)?)]
        }
        CheckId::ActAdd => {
            let (a, b) = (&p[0], &p[1]);
            let (al, be, ga) = (&s[0], &s[1], &s[2]);
            let combined = al.try_sub(be)?.try_add(ga)?;
            vec![(
                "(α-β+γ)▷_a b = <α▷_a b, β▷_a b, γ▷_a b>",
                alg.heap(&alg.action(al, a, b)?, &alg.action(be, a, b)?, &alg.action(ga, a, b)?)?,
                alg.action(&combined, a, b)?,
            )]
        }
        CheckId::ActHeap => {
            let (a, b, c, d) = (&p[0], &p[1], &p[2], &p[3]);
            let al = &s[0];
            vec![(
                "α▷_a<b,c,d> = <α▷_a b, α▷_a c, α▷_a d>",
                alg.heap(&alg.action(al, a, b)?, &alg.action(al, a, c)?, &alg.action(al, a, d)?)?,
                alg.action(al, a, &alg.heap(b, c, d)?)?,
            )]
        }
        CheckId::ActAssoc => {
            let (a, b) = (&p[0], &p[1]);
            let (al, be) = (&s[0], &s[1]);
            vec![(
                "(αβ)▷_a b = α▷_a(β▷_a b)",
                alg.action(al, a, &alg.action(be, a, b)?)?,
                alg.action(&al.try_mul(be)?, a, b)?,
            )]
        }
        CheckId::ActUnit => {
            let (a, b) = (&p[0], &p[1]);
            vec![("1▷_a b = b", b.clone(), alg.action(&one, a, b)?)]
        }
        CheckId::ActZero => {
            let (a, b) = (&p[0], &p[1]);
            vec![("0▷_a b = a", a.clone(), alg.action(&zero, a, b)?)]
        }
        CheckId::ActBaseChange => {
            let (a, b, c) = (&p[0], &p[1], &p[2]);
            let al = &s[0];
            vec![(
                "α▷_a b = <α▷_c b, α▷_c a, a>",
                alg.heap(&alg.action(al, c, b)?, &alg.action(al, c, a)?, a)?,
                alg.action(al, a, b)?,
            )]
        }
        CheckId::BracketLeftAffine => {
            let (a, b, c, d) = (&p[0], &p[1], &p[2], &p[3]);
            let al = &s[0];
            vec![
                (
                    "[<b,c,d>,a] = <[b,a],[c,a],[d,a]>",
                    alg.heap(&br(b, a)?, &br(c, a)?, &br(d, a)?)?,
                    br(&alg.heap(b, c, d)?, a)?,
                ),
                (
                    "[α▷_b c, a] = α▷_[b,a] [c,a]",
                    alg.action(al, &br(b, a)?, &br(c, a)?)?,
                    br(&alg.action(al, b, c)?, a)?,
                ),
            ]
        }
        CheckId::BracketRightAffine => {
            let (a, b, c, d) = (&p[0], &p[1], &p[2], &p[3]);
            let al = &s[0];
            vec![
                (
                    "[a,<b,c,d>] = <[a,b],[a,c],[a,d]>",
                    alg.heap(&br(a, b)?, &br(a, c)?, &br(a, d)?)?,
                    br(a, &alg.heap(b, c, d)?)?,
                ),
                (
                    "[a, α▷_b c] = α▷_[a,b] [a,c]",
                    alg.action(al, &br(a, b)?, &br(a, c)?)?,
                    br(a, &alg.action(al, b, c)?)?,
                ),
            ]
        }
        CheckId::Antisym => {
            let (a, b) = (&p[0], &p[1]);
            vec![(
                "<[a,b],[a,a],[b,a]> = [b,b]",
                br(b, b)?,
                alg.heap(&br(a, b)?, &br(a, a)?, &br(b, a)?)?,
            )]
        }
        CheckId::Jacobi => {
            let (a, b, c) = (&p[0], &p[1], &p[2]);
            vec![(
                "<[a,[b,c]],[a,a],[b,[c,a]],[b,b],[c,[a,b]]> = [c,c]",
                br(c, c)?,
                alg.heap5(
                    &br(a, &br(b, c)?)?,
                    &br(a, a)?,
                    &br(b, &br(c, a)?)?,
                    &br(b, b)?,
                    &br(c, &br(a, b)?)?,
                )?,
            )]
        }
        CheckId::Idempotent => {
            let a = &p[0];
            vec![("[a,a] = a", a.clone(), br(a, a)?)]
        }
        CheckId::RetractGroup => {
            let (o, a, b, c) = (&p[0], &p[1], &p[2], &p[3]);
            let add = |x: &A::Point, y: &A::Point| alg.retract_add(o, x, y);
            vec![
                (
                    "(a+b)+c = a+(b+c)",
                    add(a, &add(b, c)?)?,
                    add(&add(a, b)?, c)?,
                ),
                ("a+b = b+a", add(b, a)?, add(a, b)?),
                ("a+o = a", a.clone(), add(a, o)?),
                ("a+(-a) = o", o.clone(), add(a, &alg.retract_neg(o, a)?)?),
            ]
        }
        CheckId::RetractVector => {
            let (o, a, b) = (&p[0], &p[1], &p[2]);
            let (al, be) = (&s[0], &s[1]);
            let add = |x: &A::Point, y: &A::Point| alg.retract_add(o, x, y);
            let scale = |k: &Scalar, x: &A::Point| alg.retract_scale(o, k, x);
            vec![
                (
                    "α(a+b) = αa+αb",
                    add(&scale(al, a)?, &scale(al, b)?)?,
                    scale(al, &add(a, b)?)?,
                ),
                (
                    "(α+β)a = αa+βa",
                    add(&scale(al, a)?, &scale(be, a)?)?,
                    scale(&al.try_add(be)?, a)?,
                ),
                (
                    "(αβ)a = α(βa)",
                    scale(al, &scale(be, a)?)?,
                    scale(&al.try_mul(be)?, a)?,
                ),
                ("1a = a", a.clone(), scale(&one, a)?),
            ]
        }
        CheckId::RetractLie => {
            let (o, a, b, c) = (&p[0], &p[1], &p[2], &p[3]);
            let al = &s[0];
            let add = |x: &A::Point, y: &A::Point| alg.retract_add(o, x, y);
            let scale = |k: &Scalar, x: &A::Point| alg.retract_scale(o, k, x);
            let lb = |x: &A::Point, y: &A::Point| alg.lie_retract_bracket(o, x, y);
            vec![
                (
                    "[a+b,c]_o = [a,c]_o+[b,c]_o",
                    add(&lb(a, c)?, &lb(b, c)?)?,
                    lb(&add(a, b)?, c)?,
                ),
                (
                    "[c,a+b]_o = [c,a]_o+[c,b]_o",
                    add(&lb(c, a)?, &lb(c, b)?)?,
                    lb(c, &add(a, b)?)?,
                ),
                (
                    "[αa,b]_o = α[a,b]_o",
                    scale(al, &lb(a, b)?)?,
                    lb(&scale(al, a)?, b)?,
                ),
                ("[a,a]_o = o", o.clone(), lb(a, a)?),
                (
                    "[a,[b,c]_o]_o+[b,[c,a]_o]_o+[c,[a,b]_o]_o = o",
                    o.clone(),
                    add(
                        &add(&lb(a, &lb(b, c)?)?, &lb(b, &lb(c, a)?)?)?,
                        &lb(c, &lb(a, b)?)?,
                    )?,
                ),
            ]
        }
        CheckId::ZetaRetractTrivial => {
            let (o, a, b) = (&p[0], &p[1], &p[2]);
            vec![("[a,b]_o = o", o.clone(), alg.lie_retract_bracket(o, a, b)?)]
        }
        CheckId::TranslateGroupIso => {
            let (o, o_bar, a, b) = (&p[0], &p[1], &p[2], &p[3]);
            let t = |x: &A::Point| alg.translate(o, o_bar, x);
            vec![
                (
                    "t(a+b) = t(a)+t(b)",
                    alg.retract_add(o_bar, &t(a)?, &t(b)?)?,
                    t(&alg.retract_add(o, a, b)?)?,
                ),
                ("t(o) = ō", o_bar.clone(), t(o)?),
                (
                    "t(-a) = -t(a)",
                    alg.retract_neg(o_bar, &t(a)?)?,
                    t(&alg.retract_neg(o, a)?)?,
                ),
                ("t⁻¹(t(a)) = a", a.clone(), alg.translate(o_bar, o, &t(a)?)?),
            ]
        }
        CheckId::TranslateLieIso => {
            let (o, o_bar, a, b) = (&p[0], &p[1], &p[2], &p[3]);
            let t = |x: &A::Point| alg.translate(o, o_bar, x);
            vec![(
                "t([a,b]_o) = [t(a),t(b)]_ō",
                alg.lie_retract_bracket(o_bar, &t(a)?, &t(b)?)?,
                t(&alg.lie_retract_bracket(o, a, b)?)?,
            )]
        }
        _ => unreachable!("class-level checks rejected above"),
    };
    Ok(first_mismatch(equations))
}

/// Knobs shared by every check run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunOptions {
    /// Overrides [`CheckId::default_trials`].
    pub trials: Option<usize>,
    /// Adds 1 to entry (1,1) of the first sampled element of every trial.
    pub inject_fault: bool,
    /// Conjugation for the isomorphism checks; defaults per class.
    pub via: Option<Conjugator>,
    pub bounds: SampleBounds,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self {
            trials: None,
            inject_fault: false,
            via: None,
            bounds: SampleBounds::default(),
        }
    }
}

impl RunOptions {
    pub fn with_trials(trials: usize) -> Self {
        Self {
            trials: Some(trials),
            ..Self::default()
        }
    }
}

/// Everything needed to re-evaluate a failed trial without the seed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    pub check: String,
    pub class: ClassSpecJson,
    pub bracket: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub via: Option<String>,
    pub trial: u64,
    pub points: Vec<MatrixJson>,
    pub scalars: Vec<String>,
    pub expected: Value,
    pub actual: Value,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    pub class: String,
    pub bracket: String,
    pub passed: bool,
    /// Trials evaluated; stops at the first failure.
    pub trials: usize,
    pub counterexample: Option<Counterexample>,
    pub elapsed_ms: u64,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub empirical: bool,
}

impl CheckReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serialises")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| AlgebraError::Parse(e.to_string()))
    }

    /// JSON with `elapsed_ms` zeroed, for comparing runs.
    pub fn to_json_without_timing(&self) -> String {
        Self {
            elapsed_ms: 0,
            ..self.clone()
        }
        .to_json()
    }
}

/// True when every non-empirical report passed.
pub fn all_passed(reports: &[CheckReport]) -> bool {
    reports.iter().all(|r| r.passed || r.empirical)
}

struct Failure {
    expected: Value,
    actual: Value,
    detail: String,
}

fn matrix_value(m: &Matrix) -> Value {
    serde_json::to_value(MatrixJson::from(m)).expect("plain data serialises")
}

impl From<Mismatch<Matrix>> for Failure {
    fn from(m: Mismatch<Matrix>) -> Self {
        Self {
            expected: matrix_value(&m.expected),
            actual: matrix_value(&m.actual),
            detail: m.detail.to_string(),
        }
    }
}

/// Resolved inputs of one check: class, bracket and, for the isomorphism
/// checks, the conjugation.
struct Context {
    check: CheckId,
    spec: ClassSpec,
    kind: BracketKind,
    model: MatrixAffgebra,
    iso: Option<ClassIsomorphism>,
}

impl Context {
    fn new(check: CheckId, spec: &ClassSpec, kind: &BracketKind, via: Option<Conjugator>) -> Result<Self> {
        if !check.applies_to(kind) {
            return Err(AlgebraError::NotApplicable {
                check: check.name().into(),
                bracket: kind.to_string(),
            });
        }
        let kind = normalise_bracket(spec, kind)?;
        let iso = match check {
            CheckId::TheoremIso | CheckId::CorollaryRetract => {
                let via = via.unwrap_or_else(|| Conjugator::default_for(spec));
                Some(ClassIsomorphism::new(spec, via)?)
            }
            _ => None,
        };
        Ok(Self {
            check,
            spec: spec.clone(),
            model: MatrixAffgebra::new(kind.clone()),
            kind,
            iso,
        })
    }

    fn iso(&self) -> &ClassIsomorphism {
        self.iso.as_ref().expect("isomorphism checks build one")
    }

    fn counterexample(&self, trial: u64, points: &[Matrix], scalars: &[Scalar], f: Failure) -> Counterexample {
        Counterexample {
            check: self.check.name().into(),
            class: ClassSpecJson::from(&self.spec),
            bracket: self.kind.to_string(),
            via: self.iso.as_ref().map(|iso| iso.via().to_string()),
            trial,
            points: points.iter().map(MatrixJson::from).collect(),
            scalars: scalars.iter().map(|s| s.to_string()).collect(),
            expected: f.expected,
            actual: f.actual,
            detail: f.detail,
        }
    }

    fn membership(&self, what: &str, spec: &ClassSpec, m: &Matrix) -> Result<Option<Failure>> {
        Ok(spec.violation(m)?.map(|constraint| Failure {
            expected: Value::String(format!("{what} in {spec}")),
            actual: matrix_value(m),
            detail: format!("{what}: constraint `{constraint}` violated"),
        }))
    }

    fn in_target(&self, what: &str, m: &Matrix) -> Result<Option<Failure>> {
        let target = self.iso().target();
        Ok(target.violation(m)?.map(|constraint| Failure {
            expected: Value::String(format!("{what} in {target}")),
            actual: matrix_value(m),
            detail: format!("{what}: {constraint}"),
        }))
    }

    fn evaluate(&self, points: &[Matrix], scalars: &[Scalar]) -> Result<Option<Failure>> {
        let check = self.check;
        if check.is_generic() {
            return Ok(check_identity(&self.model, check, points, scalars)?.map(Failure::from));
        }
        let (np, ns) = check.arity();
        expect_inputs(check, points, np + check.target_arity(), "points")?;
        expect_inputs(check, scalars, ns, "scalars")?;
        let alg = &self.model;
        let p = points;
        match check {
            CheckId::Closure => {
                let (a, b, c) = (&p[0], &p[1], &p[2]);
                let al = &scalars[0];
                let results = [
                    ("<a,b,c>", alg.heap(a, b, c)?),
                    ("α▷_a b", alg.action(al, a, b)?),
                    ("[a,b]", alg.bracket(a, b)?),
                ];
                for (what, m) in &results {
                    if let Some(f) = self.membership(what, &self.spec, m)? {
                        return Ok(Some(f));
                    }
                }
                Ok(None)
            }
            CheckId::BulletAssoc => {
                let (o, a, b, c) = (&p[0], &p[1], &p[2], &p[3]);
                let dot = |x: &Matrix, y: &Matrix| assoc_retract_product(o, x, y);
                Ok(first_mismatch(vec![(
                    "(a∙b)∙c = a∙(b∙c)",
                    dot(a, &dot(b, c)?)?,
                    dot(&dot(a, b)?, c)?,
                )])
                .map(Failure::from))
            }
            CheckId::BulletCommutator => {
                let (o, a, b) = (&p[0], &p[1], &p[2]);
                let ab = assoc_retract_product(o, a, b)?;
                let ba = assoc_retract_product(o, b, a)?;
                Ok(first_mismatch(vec![(
                    "[a,b]_o = a∙b - b∙a",
                    alg.retract_sub(o, &ab, &ba)?,
                    alg.lie_retract_bracket(o, a, b)?,
                )])
                .map(Failure::from))
            }
            CheckId::TheoremIso => self.evaluate_theorem(points, scalars),
            CheckId::CorollaryRetract => self.evaluate_corollary(points),
            _ => unreachable!("generic checks handled above"),
        }
    }

    fn evaluate_theorem(&self, p: &[Matrix], s: &[Scalar]) -> Result<Option<Failure>> {
        let iso = self.iso();
        let alg = &self.model;
        let (a, b, c, y) = (&p[0], &p[1], &p[2], &p[3]);
        let al = &s[0];
        let f = |x: &Matrix| iso.apply(x);
        let (fa, fb, fc) = (f(a)?, f(b)?, f(c)?);
        for (what, m) in [("f(a)", &fa), ("f(b)", &fb), ("f(c)", &fc)] {
            if let Some(failure) = self.in_target(what, m)? {
                return Ok(Some(failure));
            }
        }
        let target_field = iso.target_field();
        let base = self.spec.base_point()?.into_value();
        let pulled = iso.pull_back(y)?;
        if let Some(failure) = self.membership("f⁻¹(y)", &self.spec, &pulled)? {
            return Ok(Some(failure));
        }
        Ok(first_mismatch(vec![
            ("f(o) = base block", iso.target().base_block.clone(), f(&base)?),
            ("f([a,b]) = [f(a),f(b)]", alg.bracket(&fa, &fb)?, f(&alg.bracket(a, b)?)?),
            ("f(<a,b,c>) = <f(a),f(b),f(c)>", alg.heap(&fa, &fb, &fc)?, f(&alg.heap(a, b, c)?)?),
            ("f(α▷_a b) = α▷_f(a) f(b)", alg.action(al, &fa, &fb)?, f(&alg.action(al, a, b)?)?),
            ("f⁻¹(f(a)) = a", a.promote(target_field)?, iso.pull_back(&fa)?),
            ("f(f⁻¹(y)) = y", y.promote(target_field)?, f(&pulled)?),
        ])
        .map(Failure::from))
    }

    fn evaluate_corollary(&self, p: &[Matrix]) -> Result<Option<Failure>> {
        let iso = self.iso();
        let alg = &self.model;
        let (a, b, xa, xb) = (&p[0], &p[1], &p[2], &p[3]);
        let base = self.spec.base_point()?.into_value();
        let fo = iso.apply(&base)?;
        let x = (&iso.apply(a)? - &fo)?;
        let y = (&iso.apply(b)? - &fo)?;
        let xy = x.commutator(&y)?;
        let target = iso.target();
        for (what, m) in [("f(a) - f(o)", &x), ("f(b) - f(o)", &y), ("xy - yx", &xy)] {
            if let Some(constraint) = target.block_violation(m)? {
                return Ok(Some(Failure {
                    expected: Value::String(format!("{what} in ({}({}) 0; 0 0)", target.kind.name(), target.n())),
                    actual: matrix_value(m),
                    detail: format!("{what}: {constraint}"),
                }));
            }
        }
        let block = &target.base_block;
        let (u, v) = ((xa - block)?, (xb - block)?);
        Ok(first_mismatch(vec![
            (
                "f([a,b]_o) = f(o) + (xy - yx)",
                (&fo + &xy)?,
                iso.apply(&alg.lie_retract_bracket(&base, a, b)?)?,
            ),
            (
                "[o+u, o+v]_o = o + (uv - vu) in the block picture",
                (block + &u.commutator(&v)?)?,
                alg.lie_retract_bracket(block, xa, xb)?,
            ),
        ])
        .map(Failure::from))
    }
}

/// Puts `ζ` into the class field; hermitian-type classes only admit real `ζ`.
fn normalise_bracket(spec: &ClassSpec, kind: &BracketKind) -> Result<BracketKind> {
    match kind {
        BracketKind::AffineCommutator => Ok(BracketKind::AffineCommutator),
        BracketKind::Zeta(z) => {
            let z = z.promote(spec.field())?;
            if spec.realified() && !z.is_real() {
                return Err(AlgebraError::InvalidField(format!(
                    "zeta must be real for {spec}, got {z}"
                )));
            }
            Ok(BracketKind::Zeta(z))
        }
    }
}

fn perturb(m: &Matrix) -> Matrix {
    let mut out = m.clone();
    let bumped = m.get(0, 0) + &m.field().one();
    out.set(0, 0, bumped).expect("same field");
    out
}

/// Evaluates `check` on independently sampled tuples, stopping at the first
/// failure.
pub fn run_check(
    check: CheckId,
    spec: &ClassSpec,
    kind: &BracketKind,
    seed: u64,
    opts: &RunOptions,
) -> Result<CheckReport> {
    let start = Instant::now();
    let ctx = Context::new(check, spec, kind, opts.via)?;
    let sampler = Sampler::with_bounds(spec.clone(), opts.bounds)?;
    let trials = opts.trials.unwrap_or(check.default_trials());
    let (np, ns) = check.arity();
    let mut counterexample = None;
    let mut done = 0;
    for trial in 0..trials as u64 {
        let mut rng = trial_rng(seed, (check.index() << 32) | trial);
        let mut points: Vec<Matrix> = (0..np).map(|_| sampler.draw(&mut rng)).collect();
        for _ in 0..check.target_arity() {
            points.push(ctx.iso().target().sample(opts.bounds, &mut rng));
        }
        let scalars: Vec<Scalar> = (0..ns).map(|_| sampler.draw_scalar(&mut rng)).collect();
        if opts.inject_fault {
            points[0] = perturb(&points[0]);
        }
        done += 1;
        if let Some(failure) = ctx.evaluate(&points, &scalars)? {
            counterexample = Some(ctx.counterexample(trial, &points, &scalars, failure));
            break;
        }
    }
    Ok(CheckReport {
        check: check.name().into(),
        class: spec.to_string(),
        bracket: ctx.kind.to_string(),
        passed: counterexample.is_none(),
        trials: done,
        counterexample,
        elapsed_ms: start.elapsed().as_millis() as u64,
        empirical: check.is_empirical(),
    })
}

/// The isomorphism check with the commutator bracket.
pub fn verify_theorem(
    spec: &ClassSpec,
    seed: u64,
    samples: usize,
    via: Option<Conjugator>,
) -> Result<CheckReport> {
    let opts = RunOptions {
        trials: Some(samples),
        via,
        ..RunOptions::default()
    };
    run_check(CheckId::TheoremIso, spec, &BracketKind::AffineCommutator, seed, &opts)
}

/// The retract at the base point against the plain commutator of blocks.
pub fn run_corollary(spec: &ClassSpec, seed: u64, trials: usize) -> Result<CheckReport> {
    run_check(
        CheckId::CorollaryRetract,
        spec,
        &BracketKind::AffineCommutator,
        seed,
        &RunOptions::with_trials(trials),
    )
}

/// Every applicable check from `checks` for every class and bracket, in
/// class, bracket, catalogue order regardless of how the work is scheduled.
pub fn run_all(
    specs: &[ClassSpec],
    kinds: &[BracketKind],
    checks: &[CheckId],
    seed: u64,
    opts: &RunOptions,
) -> Result<Vec<CheckReport>> {
    let mut checks = checks.to_vec();
    checks.sort();
    checks.dedup();
    let jobs: Vec<(&ClassSpec, &BracketKind, CheckId)> = specs
        .iter()
        .flat_map(|spec| {
            let checks = &checks;
            kinds.iter().flat_map(move |kind| {
                checks
                    .iter()
                    .filter(|c| c.applies_to(kind))
                    .map(move |&c| (spec, kind, c))
            })
        })
        .collect();
    jobs.into_par_iter()
        .map(|(spec, kind, check)| run_check(check, spec, kind, seed, opts))
        .collect()
}

/// Result of re-evaluating a stored counterexample.
#[derive(Clone, Debug, PartialEq)]
pub struct ReplayOutcome {
    /// The identity still fails on the stored inputs.
    pub reproduced: bool,
    pub detail: Option<String>,
}

pub fn replay(cx: &Counterexample) -> Result<ReplayOutcome> {
    let check = CheckId::parse(&cx.check)?;
    let spec = ClassSpec::try_from(&cx.class)?;
    let kind = crate::wire::parse_bracket(&cx.bracket, spec.field())?;
    let via = match cx.via.as_deref() {
        None => None,
        Some("P") => Some(Conjugator::P),
        Some("U") => Some(Conjugator::U),
        Some(other) => return Err(AlgebraError::Parse(format!("unknown conjugation `{other}`"))),
    };
    let ctx = Context::new(check, &spec, &kind, via)?;
    let points = cx
        .points
        .iter()
        .map(Matrix::try_from)
        .collect::<Result<Vec<_>>>()?;
    let scalar_field: Field = spec.scalar_field();
    let scalars = cx
        .scalars
        .iter()
        .map(|s| scalar_field.parse_scalar(s))
        .collect::<Result<Vec<_>>>()?;
    let failure = ctx.evaluate(&points, &scalars)?;
    Ok(ReplayOutcome {
        reproduced: failure.is_some(),
        detail: failure.map(|f| f.detail),
    })
}

/// Replays the counterexample carried by a report.
pub fn replay_report(report: &CheckReport) -> Result<ReplayOutcome> {
    let cx = report
        .counterexample
        .as_ref()
        .ok_or_else(|| AlgebraError::Parse("report carries no counterexample".into()))?;
    replay(cx)
}
