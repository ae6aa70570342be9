//! The named multi-expert model classes and their shape/tag predicates.

use std::fmt;
use std::str::FromStr;

use crate::dynamics::{run_mixed, HiddenPattern, RunOptions};
use crate::error::{Error, Result};
use crate::matrix::{mat_add, Matrix};
use crate::special::{
    expected_len, make_special, Algebra, ComponentTag, Kind, Op, SpecialMatrix,
    SpecialStateVector, Side,
};
use crate::value::{Scalar, ValueDomain};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModelClass {
    Sfcm,
    Smfcm,
    Sncm,
    Smncm,
    Sfncm,
    Sfrm,
    Smfrm,
    Snrm,
    Smnrm,
    Sfnrm,
    Smfcfrm,
    Smncnrm,
    Smfcrncrm,
    Sfre,
    Smfre,
    Snre,
    Smnre,
    Sshm,
}

impl ModelClass {
    pub const ALL: [ModelClass; 18] = [
        ModelClass::Sfcm,
        ModelClass::Smfcm,
        ModelClass::Sncm,
        ModelClass::Smncm,
        ModelClass::Sfncm,
        ModelClass::Sfrm,
        ModelClass::Smfrm,
        ModelClass::Snrm,
        ModelClass::Smnrm,
        ModelClass::Sfnrm,
        ModelClass::Smfcfrm,
        ModelClass::Smncnrm,
        ModelClass::Smfcrncrm,
        ModelClass::Sfre,
        ModelClass::Smfre,
        ModelClass::Snre,
        ModelClass::Smnre,
        ModelClass::Sshm,
    ];

    pub fn acronym(self) -> &'static str {
        match self {
            ModelClass::Sfcm => "SFCM",
            ModelClass::Smfcm => "SMFCM",
            ModelClass::Sncm => "SNCM",
            ModelClass::Smncm => "SMNCM",
            ModelClass::Sfncm => "SFNCM",
            ModelClass::Sfrm => "SFRM",
            ModelClass::Smfrm => "SMFRM",
            ModelClass::Snrm => "SNRM",
            ModelClass::Smnrm => "SMNRM",
            ModelClass::Sfnrm => "SFNRM",
            ModelClass::Smfcfrm => "SMFCFRM",
            ModelClass::Smncnrm => "SMNCNRM",
            ModelClass::Smfcrncrm => "SMFCRNCRM",
            ModelClass::Sfre => "SFRE",
            ModelClass::Smfre => "SMFRE",
            ModelClass::Snre => "SNRE",
            ModelClass::Smnre => "SMNRE",
            ModelClass::Sshm => "SSHM",
        }
    }

    pub fn is_equation(self) -> bool {
        matches!(
            self,
            ModelClass::Sfre | ModelClass::Smfre | ModelClass::Snre | ModelClass::Smnre
        )
    }
}

impl fmt::Display for ModelClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.acronym())
    }
}

impl FromStr for ModelClass {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        ModelClass::ALL
            .into_iter()
            .find(|c| c.acronym().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown model class `{s}`"))
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Labels {
    pub rows: Vec<String>,
    pub cols: Vec<String>,
    pub expert: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Model {
    pub class: ModelClass,
    pub name: String,
    pub matrix: SpecialMatrix,
    pub labels: Vec<Labels>,
}

#[derive(Clone, Copy, PartialEq)]
enum Family {
    Fuzzy,
    Neutro,
    Any,
}

struct Rule {
    kind: Option<Kind>,
    family: Family,
    same_shape: bool,
    needs_both_kinds: bool,
    needs_both_algebras: bool,
    unit_membership: bool,
}

fn rule(class: ModelClass) -> Rule {
    use ModelClass::*;
    let base = Rule {
        kind: None,
        family: Family::Any,
        same_shape: false,
        needs_both_kinds: false,
        needs_both_algebras: false,
        unit_membership: false,
    };
    match class {
        Sfcm | Smfcm | Sncm | Smncm | Sfncm => Rule {
            kind: Some(Kind::Cm),
            family: match class {
                Sfcm | Smfcm => Family::Fuzzy,
                Sncm | Smncm => Family::Neutro,
                _ => Family::Any,
            },
            same_shape: matches!(class, Sfcm | Sncm),
            needs_both_algebras: class == Sfncm,
            ..base
        },
        Sfrm | Smfrm | Snrm | Smnrm | Sfnrm => Rule {
            kind: Some(Kind::Rm),
            family: match class {
                Sfrm | Smfrm => Family::Fuzzy,
                Snrm | Smnrm => Family::Neutro,
                _ => Family::Any,
            },
            same_shape: matches!(class, Sfrm | Snrm),
            needs_both_algebras: class == Sfnrm,
            ..base
        },
        Smfcfrm => Rule { family: Family::Fuzzy, needs_both_kinds: true, ..base },
        Smncnrm => Rule { family: Family::Neutro, needs_both_kinds: true, ..base },
        Smfcrncrm | Sshm => base,
        Sfre | Smfre | Snre | Smnre => Rule {
            kind: Some(Kind::Rm),
            family: if matches!(class, Sfre | Smfre) { Family::Fuzzy } else { Family::Neutro },
            same_shape: matches!(class, Sfre | Snre),
            unit_membership: true,
            ..base
        },
    }
}

fn violation(class: ModelClass, component: usize, rule: impl Into<String>) -> Error {
    Error::ClassViolation {
        class: class.to_string(),
        component,
        rule: rule.into(),
    }
}

/// Every class-predicate and zero-diagonal violation, in component order.
pub fn class_diagnostics(class: ModelClass, m: &SpecialMatrix) -> Vec<Error> {
    let r = rule(class);
    let mut out = Vec::new();
    let first = m.component(0).matrix.dims();
    for (i, c) in m.components().iter().enumerate() {
        let n = i + 1;
        if let Some(k) = r.kind {
            if c.tag.kind != k {
                out.push(violation(class, n, format!("components must be {k}, found {}", c.tag.kind)));
            }
        }
        match (r.family, c.tag.algebra) {
            (Family::Fuzzy, Algebra::Neutrosophic) => out.push(violation(class, n, "components must be fuzzy")),
            (Family::Neutro, Algebra::Fuzzy) => out.push(violation(class, n, "components must be neutrosophic")),
            _ => {}
        }
        if c.tag.algebra == Algebra::Fuzzy && c.matrix.domain().is_neutrosophic() {
            out.push(violation(class, n, format!("fuzzy component over domain {}", c.matrix.domain())));
        }
        if r.same_shape && c.matrix.dims() != first {
            out.push(violation(
                class,
                n,
                format!(
                    "all components must share shape {}x{}, found {}x{}",
                    first.0,
                    first.1,
                    c.matrix.rows(),
                    c.matrix.cols()
                ),
            ));
        }
        if r.unit_membership && !c.matrix.domain().is_subset_of(ValueDomain::NeutroUnit) {
            out.push(violation(class, n, "membership matrix must lie in [0,1] or its neutrosophic extension"));
        }
        if c.tag.kind == Kind::Cm && c.tag.op == Op::Circle {
            for d in (0..c.matrix.rows()).filter(|&d| c.matrix.get(d, d) != Scalar::ZERO) {
                out.push(Error::NonzeroDiagonal { component: n, index: d + 1 });
            }
        }
    }
    let has = |f: &dyn Fn(&ComponentTag) -> bool| m.components().iter().any(|c| f(&c.tag));
    if r.needs_both_kinds && !(has(&|t| t.kind == Kind::Cm) && has(&|t| t.kind == Kind::Rm)) {
        out.push(violation(class, m.len(), "needs both CM and RM components"));
    }
    if r.needs_both_algebras
        && !(has(&|t| t.algebra == Algebra::Fuzzy) && has(&|t| t.algebra == Algebra::Neutrosophic))
    {
        out.push(violation(class, m.len(), "needs both fuzzy and neutrosophic components"));
    }
    out
}

pub fn check_class(class: ModelClass, m: &SpecialMatrix) -> Result<()> {
    match class_diagnostics(class, m).into_iter().next() {
        Some(e) => Err(e),
        None => Ok(()),
    }
}

pub fn build_model(
    class: ModelClass,
    components: Vec<(Matrix, ComponentTag)>,
    labels: Vec<Labels>,
) -> Result<Model> {
    let matrix = make_special(components)?;
    check_class(class, &matrix)?;
    let labels = if labels.is_empty() {
        vec![Labels::default(); matrix.len()]
    } else {
        labels
    };
    if labels.len() != matrix.len() {
        return Err(Error::ComponentCountMismatch {
            expected: matrix.len(),
            got: labels.len(),
        });
    }
    for (i, (l, c)) in labels.iter().zip(matrix.components()).enumerate() {
        let bad_rows = !l.rows.is_empty() && l.rows.len() != c.matrix.rows();
        let bad_cols = !l.cols.is_empty() && l.cols.len() != c.matrix.cols();
        if bad_rows || bad_cols {
            return Err(Error::ShapeMismatch(format!(
                "component {}: labels do not match {}x{}",
                i + 1,
                c.matrix.rows(),
                c.matrix.cols()
            )));
        }
    }
    Ok(Model {
        class,
        name: String::new(),
        matrix,
        labels,
    })
}

/// Entrywise sum of several experts' maps.
pub fn combine_maps(matrices: &[Matrix]) -> Result<Matrix> {
    let (first, rest) = matrices
        .split_first()
        .ok_or_else(|| Error::ShapeMismatch("no matrices to combine".into()))?;
    let mut acc = first.clone();
    for m in rest {
        acc = mat_add(&acc, m)?;
    }
    let d = ValueDomain::infer(acc.entries().iter());
    acc.with_domain(d)
}

/// Every problem with `x` as a seed for `model`; empty means valid.
pub fn validate_input(model: &Model, x: &SpecialStateVector) -> Vec<String> {
    let mut out = Vec::new();
    if x.parts.len() != model.matrix.len() {
        out.push(format!(
            "expected {} components, got {}",
            model.matrix.len(),
            x.parts.len()
        ));
    }
    for (i, (p, c)) in x.parts.iter().zip(model.matrix.components()).enumerate() {
        let n = i + 1;
        if c.tag.kind == Kind::Cm && p.side == Side::Range {
            out.push(format!("component {n}: CM component given a range-side vector"));
        }
        let want = expected_len(c, p.side);
        if p.values.len() != want {
            out.push(format!(
                "component {n}: length {} but {} side needs {want}",
                p.values.len(),
                p.side
            ));
        }
        if p.values.iter().any(|v| *v != Scalar::ZERO && *v != Scalar::ONE) {
            out.push(format!("component {n}: non-crisp input (entries must be 0 or 1)"));
        }
    }
    out
}

pub fn run(model: &Model, x0: &SpecialStateVector, opts: RunOptions) -> Result<HiddenPattern> {
    if model.class.is_equation() {
        return Err(Error::WrongEntryPoint(model.class.to_string()));
    }
    let diags = validate_input(model, x0);
    if !diags.is_empty() {
        return Err(Error::InvalidInput(diags.join("; ")));
    }
    run_mixed(&model.matrix, x0, opts)
}
