//! Special matrices: ordered unions `M_1 ∪ … ∪ M_n` of independent component matrices.
//!
//! The union is structural only. Component `i` of any result depends on component `i`
//! of the inputs and nothing else; duplicates are allowed and order matters.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::matrix::{transpose, vec_mat_maxmin, vec_mat_minmax, vec_mat_mul, Matrix};
use crate::value::{OrderPolicy, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    /// Square map iterated against itself.
    Cm,
    /// Rectangular relation alternated with its transpose.
    Rm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algebra {
    Fuzzy,
    Neutrosophic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Op {
    /// Ordinary vector-matrix product.
    Circle,
    MaxMin,
    MinMax,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ComponentTag {
    pub kind: Kind,
    pub algebra: Algebra,
    pub op: Op,
}

impl ComponentTag {
    pub const fn new(kind: Kind, algebra: Algebra, op: Op) -> Self {
        ComponentTag { kind, algebra, op }
    }

    pub const fn fcm() -> Self {
        Self::new(Kind::Cm, Algebra::Fuzzy, Op::Circle)
    }

    pub const fn frm() -> Self {
        Self::new(Kind::Rm, Algebra::Fuzzy, Op::Circle)
    }

    pub const fn ncm() -> Self {
        Self::new(Kind::Cm, Algebra::Neutrosophic, Op::Circle)
    }

    pub const fn nrm() -> Self {
        Self::new(Kind::Rm, Algebra::Neutrosophic, Op::Circle)
    }
}

macro_rules! text_enum {
    ($t:ty { $($v:path => $s:literal),+ $(,)? }) => {
        impl fmt::Display for $t {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(match self { $($v => $s),+ })
            }
        }
        impl FromStr for $t {
            type Err = String;
            fn from_str(s: &str) -> std::result::Result<Self, String> {
                $(if s.eq_ignore_ascii_case($s) { return Ok($v); })+
                Err(format!("unknown {} `{s}`", stringify!($t).to_lowercase()))
            }
        }
    };
}

text_enum!(Kind { Kind::Cm => "CM", Kind::Rm => "RM" });
text_enum!(Algebra { Algebra::Fuzzy => "fuzzy", Algebra::Neutrosophic => "neutro" });
text_enum!(Op { Op::Circle => "circle", Op::MaxMin => "maxmin", Op::MinMax => "minmax" });
text_enum!(Side { Side::Domain => "domain", Side::Range => "range" });

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Classification {
    SpecialSquare,
    SpecialMixedSquare,
    SpecialRectangular,
    SpecialMixedRectangular,
    SpecialMixed,
}

impl Classification {
    pub fn of(shapes: &[(usize, usize)]) -> Classification {
        let squares = shapes.iter().filter(|(r, c)| r == c).count();
        let uniform = shapes.windows(2).all(|w| w[0] == w[1]);
        match (squares == shapes.len(), squares == 0, uniform) {
            (true, _, true) => Classification::SpecialSquare,
            (true, _, false) => Classification::SpecialMixedSquare,
            (false, true, true) => Classification::SpecialRectangular,
            (false, true, false) => Classification::SpecialMixedRectangular,
            _ => Classification::SpecialMixed,
        }
    }

    pub fn describe(self, neutrosophic: bool) -> String {
        let alg = if neutrosophic { "neutrosophic" } else { "fuzzy" };
        match self {
            Classification::SpecialSquare => format!("special {alg} square"),
            Classification::SpecialMixedSquare => format!("special {alg} mixed square"),
            Classification::SpecialRectangular => format!("special {alg} rectangular"),
            Classification::SpecialMixedRectangular => format!("special {alg} mixed rectangular"),
            Classification::SpecialMixed => format!("special {alg} mixed"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Component {
    pub matrix: Matrix,
    pub tag: ComponentTag,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpecialMatrix {
    components: Vec<Component>,
}

pub fn make_special(components: Vec<(Matrix, ComponentTag)>) -> Result<SpecialMatrix> {
    if components.is_empty() {
        return Err(Error::EmptyUnion);
    }
    for (i, (m, t)) in components.iter().enumerate() {
        if t.kind == Kind::Cm && !m.is_square() {
            return Err(Error::NonSquareCm(i + 1));
        }
    }
    Ok(SpecialMatrix {
        components: components
            .into_iter()
            .map(|(matrix, tag)| Component { matrix, tag })
            .collect(),
    })
}

impl SpecialMatrix {
    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn component(&self, i: usize) -> &Component {
        &self.components[i]
    }

    pub fn shapes(&self) -> Vec<(usize, usize)> {
        self.components.iter().map(|c| c.matrix.dims()).collect()
    }

    pub fn classification(&self) -> Classification {
        Classification::of(&self.shapes())
    }

    pub fn is_neutrosophic(&self) -> bool {
        self.components.iter().any(|c| c.tag.algebra == Algebra::Neutrosophic)
    }

    fn map(&self, f: impl Fn(&Component) -> Matrix) -> SpecialMatrix {
        SpecialMatrix {
            components: self
                .components
                .iter()
                .map(|c| Component { matrix: f(c), tag: c.tag })
                .collect(),
        }
    }
}

/// Transposes every component.
pub fn plain_transpose(m: &SpecialMatrix) -> SpecialMatrix {
    m.map(|c| transpose(&c.matrix))
}

/// Transposes rectangular components only; squares pass through.
pub fn special_transpose(m: &SpecialMatrix) -> SpecialMatrix {
    m.map(|c| {
        if c.matrix.is_square() {
            c.matrix.clone()
        } else {
            transpose(&c.matrix)
        }
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Side {
    #[default]
    Domain,
    Range,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Domain => Side::Range,
            Side::Range => Side::Domain,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Part {
    pub side: Side,
    pub values: Vec<Scalar>,
}

/// One state vector per component; `side` says which space of an RM component it addresses.
#[derive(Debug, Clone, PartialEq)]
pub struct SpecialStateVector {
    pub parts: Vec<Part>,
}

impl SpecialStateVector {
    pub fn new(parts: Vec<Part>) -> Self {
        SpecialStateVector { parts }
    }

    /// Domain-side vectors from plain values.
    pub fn domain<V: Into<Scalar>>(parts: Vec<Vec<V>>) -> Self {
        Self::on_side(Side::Domain, parts)
    }

    pub fn on_side<V: Into<Scalar>>(side: Side, parts: Vec<Vec<V>>) -> Self {
        SpecialStateVector {
            parts: parts
                .into_iter()
                .map(|v| Part {
                    side,
                    values: v.into_iter().map(Into::into).collect(),
                })
                .collect(),
        }
    }

    pub fn values(&self) -> Vec<Vec<Scalar>> {
        self.parts.iter().map(|p| p.values.clone()).collect()
    }
}

/// Length a part must have for component `c` on `side`.
pub fn expected_len(c: &Component, side: Side) -> usize {
    match side {
        Side::Domain => c.matrix.rows(),
        Side::Range => c.matrix.cols(),
    }
}

/// Applies `op` to a vector on `side`, using the transpose for range-side input.
pub fn apply_component(
    x: &[Scalar],
    c: &Component,
    side: Side,
    op: Op,
    policy: OrderPolicy,
    index: usize,
) -> Result<Vec<Scalar>> {
    if x.len() != expected_len(c, side) {
        return Err(Error::ShapeMismatch(format!(
            "component {}: {} vector of length {} against {}x{} matrix",
            index + 1,
            side,
            x.len(),
            c.matrix.rows(),
            c.matrix.cols()
        )));
    }
    let t;
    let m = match side {
        Side::Range => {
            t = transpose(&c.matrix);
            &t
        }
        Side::Domain => &c.matrix,
    };
    match op {
        Op::Circle => vec_mat_mul(x, m),
        Op::MaxMin => vec_mat_maxmin(x, m, policy),
        Op::MinMax => vec_mat_minmax(x, m, policy),
    }
}

fn check_count(x: &SpecialStateVector, m: &SpecialMatrix) -> Result<()> {
    if x.parts.len() != m.len() {
        return Err(Error::ComponentCountMismatch {
            expected: m.len(),
            got: x.parts.len(),
        });
    }
    Ok(())
}

fn apply_with(
    x: &SpecialStateVector,
    m: &SpecialMatrix,
    policy: OrderPolicy,
    exec: Exec,
    op_of: impl Fn(&Component) -> Op + Sync + Send,
) -> Result<SpecialStateVector> {
    check_count(x, m)?;
    let parts = exec.map(&x.parts, |i, p| {
        let c = m.component(i);
        apply_component(&p.values, c, p.side, op_of(c), policy, i).map(|values| Part {
            side: p.side.flip_for(c),
            values,
        })
    });
    Ok(SpecialStateVector {
        parts: parts.into_iter().collect::<Result<_>>()?,
    })
}

impl Side {
    /// Side of the output after one application to component `c`.
    fn flip_for(self, c: &Component) -> Side {
        match c.tag.kind {
            Kind::Cm => self,
            Kind::Rm => self.flip(),
        }
    }
}

/// `X ∘ M = X_1 ∘ M_1 ∪ …` with one operator for every component; raw (unthresholded).
pub fn special_apply(
    x: &SpecialStateVector,
    m: &SpecialMatrix,
    op: Op,
    policy: OrderPolicy,
) -> Result<SpecialStateVector> {
    apply_with(x, m, policy, Exec::default(), move |_| op)
}

/// The mixed operator: each component uses the operator in its own tag.
pub fn special_apply_mixed(
    x: &SpecialStateVector,
    m: &SpecialMatrix,
    policy: OrderPolicy,
) -> Result<SpecialStateVector> {
    apply_with(x, m, policy, Exec::default(), |c| c.tag.op)
}

pub fn special_apply_mixed_with(
    x: &SpecialStateVector,
    m: &SpecialMatrix,
    policy: OrderPolicy,
    exec: Exec,
) -> Result<SpecialStateVector> {
    apply_with(x, m, policy, exec, |c| c.tag.op)
}
