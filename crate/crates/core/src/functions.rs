//! Named builtin functions used by the command line and the verification suites.

use std::fmt;
use std::str::FromStr;

use crate::algebra::PentaComplex;
use crate::elementary;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Builtin {
    One,
    Identity,
    Square,
    Cube,
    Exp,
    Sin,
    Cos,
    Sinh,
    Cosh,
    /// `(x0, 0, 0, 0, 0)`, not analytic.
    Projection,
}

impl Builtin {
    pub const ALL: [Builtin; 10] = [
        Builtin::One,
        Builtin::Identity,
        Builtin::Square,
        Builtin::Cube,
        Builtin::Exp,
        Builtin::Sin,
        Builtin::Cos,
        Builtin::Sinh,
        Builtin::Cosh,
        Builtin::Projection,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Builtin::One => "one",
            Builtin::Identity => "identity",
            Builtin::Square => "square",
            Builtin::Cube => "cube",
            Builtin::Exp => "exp",
            Builtin::Sin => "sin",
            Builtin::Cos => "cos",
            Builtin::Sinh => "sinh",
            Builtin::Cosh => "cosh",
            Builtin::Projection => "projection",
        }
    }

    pub fn is_analytic(self) -> bool {
        self != Builtin::Projection
    }

    pub fn eval(self, u: &PentaComplex) -> Result<PentaComplex> {
        match self {
            Builtin::One => Ok(PentaComplex::ONE),
            Builtin::Identity => Ok(*u),
            Builtin::Square => PentaComplex::checked((*u * *u).components()),
            Builtin::Cube => PentaComplex::checked((*u * *u * *u).components()),
            Builtin::Exp => elementary::exp(u),
            Builtin::Sin => elementary::sin(u),
            Builtin::Cos => elementary::cos(u),
            Builtin::Sinh => elementary::sinh(u),
            Builtin::Cosh => elementary::cosh(u),
            Builtin::Projection => PentaComplex::real(u[0]),
        }
    }
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Builtin {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let alias = match s {
            "u" => Some(Builtin::Identity),
            "1" => Some(Builtin::One),
            _ => None,
        };
        alias
            .or_else(|| Builtin::ALL.into_iter().find(|b| b.name() == s))
            .ok_or_else(|| {
                let names: Vec<_> = Builtin::ALL.iter().map(|b| b.name()).collect();
                Error::InvalidArgument(format!("unknown function `{s}`, expected one of: {}", names.join(", ")))
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_roundtrip() {
        for b in Builtin::ALL {
            assert_eq!(b.name().parse::<Builtin>().unwrap(), b);
        }
        assert_eq!("u".parse::<Builtin>().unwrap(), Builtin::Identity);
        assert!("tan".parse::<Builtin>().is_err());
    }

    #[test]
    fn projection_keeps_first_component() {
        let u = PentaComplex::new([1.0, 2.0, 3.0, 4.0, 5.0]).unwrap();
        assert_eq!(Builtin::Projection.eval(&u).unwrap(), PentaComplex::real(1.0).unwrap());
    }
}
