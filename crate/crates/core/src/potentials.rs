//! Degenerate Calogero–Moser pair functions.
//!
//! | kind          | v(ξ)            | w(ξ)          | w′(ξ)                     |
//! |---------------|-----------------|---------------|---------------------------|
//! | rational      | ξ⁻²             | ξ⁻¹           | −ξ⁻²                      |
//! | hyperbolic    | a² sinh⁻²(aξ)   | a sinh⁻¹(aξ)  | −a² cosh(aξ) / sinh²(aξ)  |
//! | trigonometric | a² sin⁻²(aξ)    | a sin⁻¹(aξ)   | −a² cos(aξ) / sin²(aξ)    |
//!
//! In every case `v = w²`, `w` is odd and `w′` is even.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Distance from the singular locus below which evaluation is refused.
pub const SINGULARITY_GUARD: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PotentialKind {
    Rational,
    Hyperbolic { a: f64 },
    Trigonometric { a: f64 },
}

impl PotentialKind {
    pub fn hyperbolic(a: f64) -> Result<Self> {
        Self::check_coupling(a)?;
        Ok(Self::Hyperbolic { a })
    }

    pub fn trigonometric(a: f64) -> Result<Self> {
        Self::check_coupling(a)?;
        Ok(Self::Trigonometric { a })
    }

    /// Builds a kind from its name and coupling; the coupling is ignored for `rational`.
    pub fn from_name(name: &str, a: f64) -> Result<Self> {
        match name.to_ascii_lowercase().as_str() {
            "rational" | "rat" => Ok(Self::Rational),
            "hyperbolic" | "hyp" => Self::hyperbolic(a),
            "trigonometric" | "trig" => Self::trigonometric(a),
            other => Err(Error::InvalidParameter(format!(
                "unknown potential `{other}`"
            ))),
        }
    }

    fn check_coupling(a: f64) -> Result<()> {
        if a.is_finite() && a > 0.0 {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!(
                "coupling a must be positive, got {a}"
            )))
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Rational => "rational",
            Self::Hyperbolic { .. } => "hyperbolic",
            Self::Trigonometric { .. } => "trigonometric",
        }
    }

    pub fn coupling(&self) -> Option<f64> {
        match *self {
            Self::Rational => None,
            Self::Hyperbolic { a } | Self::Trigonometric { a } => Some(a),
        }
    }

    /// Distance of `xi` from the singular locus, in the quantity the guard is applied to.
    pub fn singularity_distance(&self, xi: f64) -> f64 {
        match *self {
            Self::Rational | Self::Hyperbolic { .. } => xi.abs(),
            Self::Trigonometric { a } => (a * xi).sin().abs(),
        }
    }

    pub fn is_regular(&self, xi: f64) -> bool {
        xi.is_finite() && self.singularity_distance(xi) >= SINGULARITY_GUARD
    }
}

impl fmt::Display for PotentialKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.coupling() {
            None => write!(f, "{}", self.name()),
            Some(a) => write!(f, "{}(a={a})", self.name()),
        }
    }
}

impl FromStr for PotentialKind {
    type Err = Error;

    /// Parses `rational`, `hyperbolic`, `trigonometric`, optionally with `:a`.
    fn from_str(s: &str) -> Result<Self> {
        match s.split_once(':') {
            None => Self::from_name(s, 1.0),
            Some((name, a)) => {
                let a: f64 = a
                    .parse()
                    .map_err(|_| Error::InvalidParameter(format!("bad coupling `{a}`")))?;
                Self::from_name(name, a)
            }
        }
    }
}

/// `v(ξ)`, `w(ξ)` and `w′(ξ)` at one argument.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PairValues {
    pub v: f64,
    pub w: f64,
    pub dw: f64,
}

impl PairValues {
    /// `w′/w`, the coefficient of `E_α ⊗ E_{−α}` in the dynamical r-matrix.
    pub fn log_derivative(&self) -> f64 {
        self.dw / self.w
    }

    /// `v′ = 2 w w′`, from `v = w²`.
    pub fn dv(&self) -> f64 {
        2.0 * self.w * self.dw
    }
}

pub fn potential_values(kind: PotentialKind, xi: f64) -> Result<PairValues> {
    if !kind.is_regular(xi) {
        return Err(Error::Singular { xi });
    }
    let (w, dw) = match kind {
        PotentialKind::Rational => (1.0 / xi, -1.0 / (xi * xi)),
        PotentialKind::Hyperbolic { a } => {
            let s = (a * xi).sinh();
            (a / s, -a * a * (a * xi).cosh() / (s * s))
        }
        PotentialKind::Trigonometric { a } => {
            let s = (a * xi).sin();
            (a / s, -a * a * (a * xi).cos() / (s * s))
        }
    };
    Ok(PairValues { v: w * w, w, dw })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn rational_at_two() {
        let pv = potential_values(PotentialKind::Rational, 2.0).unwrap();
        assert_eq!(pv.v, 0.25);
        assert_eq!(pv.w, 0.5);
        assert_eq!(pv.dw, -0.25);
    }

    #[test]
    fn hyperbolic_at_one() {
        let pv = potential_values(PotentialKind::hyperbolic(1.0).unwrap(), 1.0).unwrap();
        let s = 1f64.sinh();
        assert_relative_eq!(pv.v, 1.0 / (s * s), max_relative = 1e-15);
        assert_relative_eq!(pv.w, 1.0 / s, max_relative = 1e-15);
        assert_relative_eq!(pv.dw, -1f64.cosh() / (s * s), max_relative = 1e-15);
    }

    #[test]
    fn guard_rejects_singular_points() {
        assert!(matches!(
            potential_values(PotentialKind::Rational, 0.0),
            Err(Error::Singular { .. })
        ));
        assert!(potential_values(PotentialKind::Rational, 5e-9).is_err());
        let trig = PotentialKind::trigonometric(2.0).unwrap();
        assert!(potential_values(trig, std::f64::consts::FRAC_PI_2).is_err());
        assert!(potential_values(trig, 0.3).is_ok());
    }

    #[test]
    fn coupling_must_be_positive() {
        assert!(PotentialKind::hyperbolic(0.0).is_err());
        assert!(PotentialKind::trigonometric(-1.0).is_err());
        assert!(PotentialKind::hyperbolic(f64::NAN).is_err());
    }

    #[test]
    fn parse_names() {
        assert_eq!(
            "rational".parse::<PotentialKind>().unwrap(),
            PotentialKind::Rational
        );
        assert_eq!(
            "trig:0.5".parse::<PotentialKind>().unwrap(),
            PotentialKind::Trigonometric { a: 0.5 }
        );
        assert!("elliptic".parse::<PotentialKind>().is_err());
    }
}
