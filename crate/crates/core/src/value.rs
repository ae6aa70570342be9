//! Scalars of the form `a` or `a + bI` with `I² = I`, their orderings and thresholding.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Coefficient tolerance for the `t = s` tie in neutrosophic thresholding.
pub const TIE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Scalar {
    Real(f64),
    /// `a + bI`, never constructed with `b == 0`.
    Neutro(f64, f64),
}

fn clean(x: f64) -> f64 {
    // folds -0.0 into 0.0 so equal values render and hash the same
    x + 0.0
}

impl Scalar {
    pub const ZERO: Scalar = Scalar::Real(0.0);
    pub const ONE: Scalar = Scalar::Real(1.0);
    pub const I: Scalar = Scalar::Neutro(0.0, 1.0);

    /// Builds `a + bI` in canonical form.
    pub fn new(a: f64, b: f64) -> Scalar {
        if b == 0.0 {
            Scalar::Real(clean(a))
        } else {
            Scalar::Neutro(clean(a), b)
        }
    }

    pub fn real(a: f64) -> Scalar {
        Scalar::Real(clean(a))
    }

    pub fn indet(b: f64) -> Scalar {
        Scalar::new(0.0, b)
    }

    pub fn real_part(self) -> f64 {
        match self {
            Scalar::Real(a) | Scalar::Neutro(a, _) => a,
        }
    }

    pub fn indet_coeff(self) -> f64 {
        match self {
            Scalar::Real(_) => 0.0,
            Scalar::Neutro(_, b) => b,
        }
    }

    pub fn is_real(self) -> bool {
        matches!(self, Scalar::Real(_))
    }

    /// A nonzero multiple of `I` with no real part.
    pub fn is_pure_indet(self) -> bool {
        matches!(self, Scalar::Neutro(a, _) if a == 0.0)
    }

    pub fn is_mixed(self) -> bool {
        matches!(self, Scalar::Neutro(a, _) if a != 0.0)
    }

    pub fn is_finite(self) -> bool {
        self.real_part().is_finite() && self.indet_coeff().is_finite()
    }

    pub fn as_real(self) -> Option<f64> {
        match self {
            Scalar::Real(a) => Some(a),
            Scalar::Neutro(..) => None,
        }
    }

    pub fn approx_eq(self, other: Scalar, tol: f64) -> bool {
        (self.real_part() - other.real_part()).abs() <= tol
            && (self.indet_coeff() - other.indet_coeff()).abs() <= tol
    }

    /// Bit pattern usable as an exact hash key.
    pub fn key(self) -> (u64, u64) {
        (self.real_part().to_bits(), self.indet_coeff().to_bits())
    }

    /// Ordering magnitude: the real value, or the coefficient of a pure I-multiple.
    fn coeff(self) -> f64 {
        match self {
            Scalar::Real(a) => a,
            Scalar::Neutro(_, b) => b,
        }
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::ZERO
    }
}

impl From<f64> for Scalar {
    fn from(a: f64) -> Self {
        Scalar::real(a)
    }
}

impl From<i32> for Scalar {
    fn from(a: i32) -> Self {
        Scalar::real(a as f64)
    }
}

impl std::ops::Add for Scalar {
    type Output = Scalar;
    fn add(self, o: Scalar) -> Scalar {
        scalar_add(self, o)
    }
}

impl std::ops::Mul for Scalar {
    type Output = Scalar;
    fn mul(self, o: Scalar) -> Scalar {
        scalar_mul(self, o)
    }
}

impl std::ops::Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-self.real_part(), -self.indet_coeff())
    }
}

pub fn scalar_add(x: Scalar, y: Scalar) -> Scalar {
    Scalar::new(
        x.real_part() + y.real_part(),
        x.indet_coeff() + y.indet_coeff(),
    )
}

/// `(a+bI)(c+dI) = ac + (ad+bc+bd)I`.
pub fn scalar_mul(x: Scalar, y: Scalar) -> Scalar {
    let (a, b) = (x.real_part(), x.indet_coeff());
    let (c, d) = (y.real_part(), y.indet_coeff());
    Scalar::new(a * c, a * d + b * c + b * d)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OrderPolicy {
    #[default]
    BookDefault,
    IndeterminacyDominant,
}

fn orderable(x: Scalar, y: Scalar) -> Result<()> {
    if x.is_mixed() || y.is_mixed() {
        return Err(Error::OrderUndefined(x.to_string(), y.to_string()));
    }
    Ok(())
}

/// Returns `(min, max)` under the given policy.
pub fn scalar_min_max(x: Scalar, y: Scalar, policy: OrderPolicy) -> Result<(Scalar, Scalar)> {
    orderable(x, y)?;
    let (xi, yi) = (x.is_pure_indet(), y.is_pure_indet());
    if xi == yi {
        // same kind: plain comparison of values or coefficients
        return Ok(if x.coeff() <= y.coeff() { (x, y) } else { (y, x) });
    }
    let (real, ind) = if xi { (y, x) } else { (x, y) };
    match policy {
        OrderPolicy::IndeterminacyDominant => Ok((ind, ind)),
        OrderPolicy::BookDefault => {
            let (r, m) = (real.coeff().abs(), ind.coeff().abs());
            if r < m {
                Ok((real, ind))
            } else if r > m {
                Ok((ind, real))
            } else {
                Ok((ind, ind))
            }
        }
    }
}

pub fn scalar_min(x: Scalar, y: Scalar, policy: OrderPolicy) -> Result<Scalar> {
    scalar_min_max(x, y, policy).map(|p| p.0)
}

pub fn scalar_max(x: Scalar, y: Scalar, policy: OrderPolicy) -> Result<Scalar> {
    scalar_min_max(x, y, policy).map(|p| p.1)
}

/// Strictly-greater under the policy: `x` is the max, `y` the min, and they differ.
pub fn scalar_gt(x: Scalar, y: Scalar, policy: OrderPolicy) -> Result<bool> {
    let (lo, hi) = scalar_min_max(x, y, policy)?;
    Ok(x != y && hi == x && lo == y)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ThresholdMode {
    Fuzzy(f64),
    Neutrosophic(f64),
}

impl Default for ThresholdMode {
    fn default() -> Self {
        ThresholdMode::Fuzzy(0.0)
    }
}

fn cut(v: f64, k: f64) -> Scalar {
    if v > k {
        Scalar::ONE
    } else {
        Scalar::ZERO
    }
}

/// Maps a raw activation onto `{0, 1, I}`.
pub fn threshold_scalar(x: Scalar, mode: ThresholdMode) -> Result<Scalar> {
    match mode {
        ThresholdMode::Fuzzy(k) => match x {
            Scalar::Real(v) => Ok(cut(v, k)),
            Scalar::Neutro(..) => Err(Error::ModeMismatch(x.to_string())),
        },
        ThresholdMode::Neutrosophic(k) => Ok(match x {
            Scalar::Real(v) => cut(v, k),
            Scalar::Neutro(t, s) if t == 0.0 => {
                if s > k {
                    Scalar::I
                } else {
                    Scalar::ZERO
                }
            }
            Scalar::Neutro(t, s) => {
                if (t - s).abs() <= TIE_TOL {
                    Scalar::I
                } else if t > s {
                    cut(t, k)
                } else {
                    cut(s, k)
                }
            }
        }),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ValueDomain {
    Tri,
    Unit,
    StateTri,
    Bipolar,
    NeutroTri,
    NeutroUnit,
    /// Output of ordinary products, which may leave every bounded domain.
    Unconstrained,
}

impl ValueDomain {
    pub const ALL: [ValueDomain; 7] = [
        ValueDomain::Tri,
        ValueDomain::Unit,
        ValueDomain::StateTri,
        ValueDomain::Bipolar,
        ValueDomain::NeutroTri,
        ValueDomain::NeutroUnit,
        ValueDomain::Unconstrained,
    ];

    pub fn contains(self, x: Scalar) -> bool {
        if !x.is_finite() {
            return false;
        }
        let tri = |v: f64| v == -1.0 || v == 0.0 || v == 1.0;
        let unit = |v: f64| (0.0..=1.0).contains(&v);
        match (self, x) {
            (ValueDomain::Unconstrained, _) => true,
            (ValueDomain::Tri, Scalar::Real(v)) => tri(v),
            (ValueDomain::Unit, Scalar::Real(v)) => unit(v),
            (ValueDomain::Bipolar, Scalar::Real(v)) => (-1.0..=1.0).contains(&v),
            (ValueDomain::NeutroTri, Scalar::Real(v)) => tri(v),
            (ValueDomain::StateTri, Scalar::Real(v)) => v == 0.0 || v == 1.0,
            (ValueDomain::NeutroUnit, Scalar::Real(v)) => unit(v),
            (ValueDomain::NeutroTri | ValueDomain::StateTri, n) => n == Scalar::I,
            (ValueDomain::NeutroUnit, Scalar::Neutro(a, b)) => unit(a) && unit(b),
            _ => false,
        }
    }

    pub fn is_subset_of(self, other: ValueDomain) -> bool {
        use ValueDomain::*;
        self == other
            || other == Unconstrained
            || matches!(
                (self, other),
                (Tri, Bipolar | NeutroTri)
                    | (Unit, Bipolar | NeutroUnit)
                    | (StateTri, NeutroTri | NeutroUnit)
            )
    }

    /// Smallest domain containing both.
    pub fn join(self, other: ValueDomain) -> ValueDomain {
        ValueDomain::ALL
            .into_iter()
            .find(|d| self.is_subset_of(*d) && other.is_subset_of(*d))
            .unwrap_or(ValueDomain::Unconstrained)
    }

    pub fn is_neutrosophic(self) -> bool {
        matches!(
            self,
            ValueDomain::NeutroTri
                | ValueDomain::NeutroUnit
                | ValueDomain::StateTri
                | ValueDomain::Unconstrained
        )
    }

    pub fn name(self) -> &'static str {
        match self {
            ValueDomain::Tri => "tri",
            ValueDomain::Unit => "unit",
            ValueDomain::StateTri => "state",
            ValueDomain::Bipolar => "bipolar",
            ValueDomain::NeutroTri => "neutro-tri",
            ValueDomain::NeutroUnit => "neutro-unit",
            ValueDomain::Unconstrained => "any",
        }
    }

    /// Smallest named domain holding every value, `Unconstrained` if none.
    pub fn infer<'a>(values: impl IntoIterator<Item = &'a Scalar> + Clone) -> ValueDomain {
        ValueDomain::ALL
            .into_iter()
            .find(|d| values.clone().into_iter().all(|v| d.contains(*v)))
            .unwrap_or(ValueDomain::Unconstrained)
    }
}

impl fmt::Display for ValueDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ValueDomain {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        ValueDomain::ALL
            .into_iter()
            .find(|d| d.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown value domain `{s}`"))
    }
}

fn write_coeff_i(f: &mut fmt::Formatter<'_>, b: f64) -> fmt::Result {
    if b == 1.0 {
        f.write_str("I")
    } else if b == -1.0 {
        f.write_str("-I")
    } else {
        write!(f, "{b}I")
    }
}

/// Canonical text: integers without a decimal point, `nI`, `a+bI`, `a-bI`.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Scalar::Real(a) => write!(f, "{a}"),
            Scalar::Neutro(a, b) if a == 0.0 => write_coeff_i(f, b),
            Scalar::Neutro(a, b) => {
                write!(f, "{a}")?;
                if b > 0.0 {
                    f.write_str("+")?;
                }
                write_coeff_i(f, b)
            }
        }
    }
}

/// Parses one scalar; whitespace inside the token is ignored.
pub fn parse_scalar(text: &str) -> std::result::Result<Scalar, String> {
    let s: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err("empty scalar".into());
    }
    let (mut re, mut im) = (0.0, 0.0);
    let mut i = 0;
    while i < s.len() {
        let mut sign = 1.0;
        if s[i] == '+' || s[i] == '-' {
            if s[i] == '-' {
                sign = -1.0;
            }
            i += 1;
        } else if i > 0 {
            return Err(format!("expected sign before term in `{text}`"));
        }
        let start = i;
        while i < s.len() {
            let c = s[i];
            let exp_sign = (c == '+' || c == '-') && i > start && matches!(s[i - 1], 'e' | 'E');
            if c.is_ascii_digit() || c == '.' || c == 'e' || c == 'E' || exp_sign {
                i += 1;
            } else {
                break;
            }
        }
        let num: String = s[start..i].iter().collect();
        let is_i = i < s.len() && s[i] == 'I';
        if is_i {
            i += 1;
        }
        let mag = if num.is_empty() {
            if !is_i {
                return Err(format!("malformed scalar `{text}`"));
            }
            1.0
        } else {
            num.parse::<f64>()
                .map_err(|_| format!("malformed number `{num}` in `{text}`"))?
        };
        if !mag.is_finite() {
            return Err(format!("non-finite value in `{text}`"));
        }
        if is_i {
            im += sign * mag;
        } else {
            re += sign * mag;
        }
    }
    Ok(Scalar::new(re, im))
}

impl FromStr for Scalar {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        parse_scalar(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(t: &str) -> Scalar {
        t.parse().unwrap()
    }

    #[test]
    fn canonical_zero_coefficient() {
        assert_eq!(Scalar::new(3.0, 0.0), Scalar::Real(3.0));
        assert_eq!(Scalar::new(-0.0, 0.0).to_string(), "0");
    }

    #[test]
    fn add_and_mul() {
        assert_eq!(s("2I") + s("7I"), s("9I"));
        assert_eq!(s("3+2I") + s("4+5I"), s("7+7I"));
        assert_eq!(Scalar::I * Scalar::I, Scalar::I);
        assert_eq!(s("7+I") * s("7-I") + Scalar::I * Scalar::I, s("49"));
        assert_eq!(s("4") * Scalar::I, s("4I"));
    }

    #[test]
    fn parse_render_forms() {
        for (inp, out) in [
            ("0.3", "0.3"),
            ("-1", "-1"),
            ("I", "I"),
            ("2I", "2I"),
            ("0.3+0.5I", "0.3+0.5I"),
            ("7-I", "7-I"),
            ("7I-1", "-1+7I"),
            ("-I", "-I"),
            (" 2 - 0.8I ", "2-0.8I"),
            ("1.0", "1"),
            ("1e-3", "0.001"),
        ] {
            assert_eq!(s(inp).to_string(), out, "{inp}");
        }
        for bad in ["", "II", "1..2", "I2", "abc", "+"] {
            assert!(parse_scalar(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn ordering_fixtures() {
        let b = OrderPolicy::BookDefault;
        assert_eq!(scalar_min(s("5I"), s("8"), b).unwrap(), s("5I"));
        assert_eq!(scalar_max(s("5I"), s("8"), b).unwrap(), s("8"));
        assert_eq!(scalar_max(s("2"), s("7I"), b).unwrap(), s("7I"));
        assert_eq!(scalar_min(s("2"), s("7I"), b).unwrap(), s("2"));
        assert_eq!(scalar_min(s("3"), s("3I"), b).unwrap(), s("3I"));
        assert_eq!(scalar_max(s("3"), s("3I"), b).unwrap(), s("3I"));
        let d = OrderPolicy::IndeterminacyDominant;
        assert_eq!(scalar_min(s("0.2"), s("I"), d).unwrap(), s("I"));
        assert_eq!(scalar_max(s("9"), s("I"), d).unwrap(), s("I"));
        assert!(matches!(
            scalar_min(s("1+I"), s("2"), b),
            Err(Error::OrderUndefined(..))
        ));
    }

    #[test]
    fn thresholds() {
        let n = ThresholdMode::Neutrosophic(0.0);
        assert_eq!(threshold_scalar(s("1+I"), n).unwrap(), Scalar::I);
        assert_eq!(threshold_scalar(s("2I"), n).unwrap(), Scalar::I);
        assert_eq!(threshold_scalar(s("-1"), n).unwrap(), Scalar::ZERO);
        assert_eq!(threshold_scalar(s("3-I"), n).unwrap(), Scalar::ONE);
        assert_eq!(threshold_scalar(s("-2+I"), n).unwrap(), Scalar::ONE);
        assert_eq!(threshold_scalar(s("-I"), n).unwrap(), Scalar::ZERO);
        let f = ThresholdMode::Fuzzy(0.0);
        assert_eq!(threshold_scalar(s("0"), f).unwrap(), Scalar::ZERO);
        assert_eq!(threshold_scalar(s("2"), f).unwrap(), Scalar::ONE);
        assert!(matches!(
            threshold_scalar(Scalar::I, f),
            Err(Error::ModeMismatch(_))
        ));
        assert_eq!(
            threshold_scalar(s("2"), ThresholdMode::Fuzzy(2.0)).unwrap(),
            Scalar::ZERO
        );
    }

    #[test]
    fn domain_join() {
        use ValueDomain::*;
        assert_eq!(Unit.join(Unit), Unit);
        assert_eq!(Tri.join(Unit), Bipolar);
        assert_eq!(Unit.join(StateTri), NeutroUnit);
        assert_eq!(Tri.join(StateTri), NeutroTri);
        assert_eq!(Unit.join(NeutroTri), Unconstrained);
        assert!(NeutroTri.contains(Scalar::I));
        assert!(!NeutroTri.contains(s("2I")));
        assert!(NeutroUnit.contains(s("0.3+0.5I")));
    }
}
