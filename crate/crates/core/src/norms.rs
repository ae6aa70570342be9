//! Neutrosophic t-norms and t-conorms on `[0,1] ∪ {I}`.

use crate::error::{Error, Result};
use crate::value::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TNorm {
    Standard,
    AlgebraicProduct,
    BoundedDifference,
    Drastic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TConorm {
    Standard,
    AlgebraicSum,
    BoundedSum,
    Drastic,
}

impl TNorm {
    pub const ALL: [TNorm; 4] = [
        TNorm::Standard,
        TNorm::AlgebraicProduct,
        TNorm::BoundedDifference,
        TNorm::Drastic,
    ];
}

impl TConorm {
    pub const ALL: [TConorm; 4] = [
        TConorm::Standard,
        TConorm::AlgebraicSum,
        TConorm::BoundedSum,
        TConorm::Drastic,
    ];
}

enum Arg {
    Real(f64),
    Indet,
}

fn arg(x: Scalar) -> Result<Arg> {
    if x.is_mixed() {
        return Err(Error::OrderUndefined(x.to_string(), "I".into()));
    }
    match x {
        Scalar::Neutro(..) => Ok(Arg::Indet),
        Scalar::Real(v) if (0.0..=1.0).contains(&v) => Ok(Arg::Real(v)),
        Scalar::Real(_) => Err(Error::OutOfDomain(x.to_string())),
    }
}

pub fn tnorm(kind: TNorm, a: Scalar, b: Scalar) -> Result<Scalar> {
    let (x, y) = match (arg(a)?, arg(b)?) {
        (Arg::Real(x), Arg::Real(y)) => (x, y),
        _ => return Ok(Scalar::I),
    };
    let v = match kind {
        TNorm::Standard => x.min(y),
        TNorm::AlgebraicProduct => x * y,
        TNorm::BoundedDifference if y == 1.0 => x,
        TNorm::BoundedDifference if x == 1.0 => y,
        TNorm::BoundedDifference => (x + y - 1.0).max(0.0),
        TNorm::Drastic if y == 1.0 => x,
        TNorm::Drastic if x == 1.0 => y,
        TNorm::Drastic => 0.0,
    };
    Ok(Scalar::real(v))
}

pub fn tconorm(kind: TConorm, a: Scalar, b: Scalar) -> Result<Scalar> {
    let (x, y) = match (arg(a)?, arg(b)?) {
        (Arg::Real(x), Arg::Real(y)) => (x, y),
        _ => return Ok(Scalar::I),
    };
    let v = match kind {
        TConorm::Standard => x.max(y),
        TConorm::AlgebraicSum => x + y - x * y,
        TConorm::BoundedSum => (x + y).min(1.0),
        TConorm::Drastic if y == 0.0 => x,
        TConorm::Drastic if x == 0.0 => y,
        TConorm::Drastic => 1.0,
    };
    Ok(Scalar::real(v))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formulas() {
        let r = Scalar::real;
        assert_eq!(tnorm(TNorm::Standard, r(0.3), r(0.7)).unwrap(), r(0.3));
        assert_eq!(tnorm(TNorm::AlgebraicProduct, r(0.5), Scalar::I).unwrap(), Scalar::I);
        assert!(tnorm(TNorm::BoundedDifference, r(0.8), r(0.4)).unwrap().approx_eq(r(0.2), 1e-12));
        assert_eq!(tnorm(TNorm::Drastic, r(0.4), r(1.0)).unwrap(), r(0.4));
        assert_eq!(tnorm(TNorm::Drastic, r(0.4), r(0.9)).unwrap(), r(0.0));
        assert_eq!(tconorm(TConorm::Standard, r(0.3), r(0.7)).unwrap(), r(0.7));
        assert_eq!(tconorm(TConorm::BoundedSum, r(0.8), r(0.4)).unwrap(), r(1.0));
        assert_eq!(tconorm(TConorm::AlgebraicSum, r(0.3), Scalar::I).unwrap(), Scalar::I);
        assert_eq!(tconorm(TConorm::Drastic, r(0.3), r(0.2)).unwrap(), r(1.0));
    }

    #[test]
    fn rejects_outside_unit() {
        assert!(matches!(
            tnorm(TNorm::Standard, Scalar::real(-0.5), Scalar::ONE),
            Err(Error::OutOfDomain(_))
        ));
        assert!(matches!(
            tconorm(TConorm::Standard, Scalar::new(0.2, 0.3), Scalar::ONE),
            Err(Error::OrderUndefined(..))
        ));
    }
}
