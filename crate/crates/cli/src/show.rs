//! `show`: print R′, φ(q) or the Frobenius data.

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use cmr_core::algebra::{Matrix, Scalar};
use cmr_core::frobenius::{frobenius_basis, frobenius_inverse_check};
use cmr_core::rmatrix::{constant_r_index_set, phi_matrix, vandermonde_product};

use crate::args::{ShowArgs, ShowObject};
use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "object", rename_all = "lowercase")]
pub enum ShowReport {
    #[serde(rename = "constR")]
    ConstR {
        n: usize,
        /// One-based `(a, b, c, d)`.
        index_set: Vec<[usize; 4]>,
        terms: Vec<String>,
    },
    Phi {
        n: usize,
        arithmetic: String,
        q: Vec<String>,
        matrix: Vec<Vec<String>>,
        determinant: String,
        vandermonde_product: String,
        agree: bool,
    },
    Frobenius {
        n: usize,
        basis: Vec<String>,
        m: Vec<Vec<String>>,
        gram: Vec<Vec<i64>>,
        m_inverse: Option<Vec<Vec<String>>>,
        kappa: Option<String>,
        residual: Option<String>,
        passed: bool,
    },
}

/// Parses an integer, a fraction `a/b` or a plain decimal exactly.
pub fn parse_rational(s: &str) -> Result<BigRational, CliError> {
    let bad = || CliError::Usage(format!("cannot parse `{s}` as an exact rational"));
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let num: BigRational = num.trim().parse().map_err(|_| bad())?;
        let den: BigRational = den.trim().parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        return Ok(num / den);
    }
    let (sign, body) = match s.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    let digits = format!("{int}{frac}");
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let value: BigRational = digits.parse().map_err(|_| bad())?;
    let scale = BigRational::from_integer(num_traits::pow(10.into(), frac.len()));
    Ok(value / scale * BigRational::from_integer(sign.into()))
}

fn parse_float(s: &str) -> Result<f64, CliError> {
    match s.trim().parse::<f64>() {
        Ok(x) if x.is_finite() => Ok(x),
        Ok(_) => Err(CliError::Usage(format!("coordinate `{s}` is not finite"))),
        Err(_) => parse_rational(s)?
            .to_f64()
            .ok_or_else(|| CliError::Usage(format!("cannot parse `{s}`"))),
    }
}

fn strings<T: Scalar + ToString>(m: &Matrix<T>) -> Vec<Vec<String>> {
    m.rows()
        .into_iter()
        .map(|r| r.iter().map(T::to_string).collect())
        .collect()
}

fn show_phi(args: &ShowArgs) -> Result<ShowReport, CliError> {
    let Some(raw) = &args.q else {
        return Err(CliError::Usage("show phi needs --q".into()));
    };
    let n = raw.len();
    if let Some(m) = args.n {
        if usize::from(m) != n {
            return Err(CliError::Usage(format!(
                "--n {m} disagrees with {n} coordinates"
            )));
        }
    }
    let distinct = |e: cmr_core::Error| CliError::Usage(e.to_string());
    if args.exact {
        let q: Vec<BigRational> = raw
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<_, _>>()?;
        let phi = phi_matrix(&q).map_err(distinct)?;
        let det = phi.determinant();
        let prod = vandermonde_product(&q);
        Ok(ShowReport::Phi {
            n,
            arithmetic: "exact".into(),
            q: q.iter().map(ToString::to_string).collect(),
            matrix: strings(&phi),
            agree: det == prod,
            determinant: det.to_string(),
            vandermonde_product: prod.to_string(),
        })
    } else {
        let q: Vec<f64> = raw
            .iter()
            .map(|s| parse_float(s))
            .collect::<Result<_, _>>()?;
        let phi = phi_matrix(&q).map_err(distinct)?;
        let det = phi.determinant();
        let prod = vandermonde_product(&q);
        Ok(ShowReport::Phi {
            n,
            arithmetic: "float".into(),
            q: q.iter().map(ToString::to_string).collect(),
            matrix: strings(&phi),
            agree: ((det - prod) / prod).abs() < 1e-10,
            determinant: det.to_string(),
            vandermonde_product: prod.to_string(),
        })
    }
}

fn unit_name(i: usize, j: usize) -> String {
    format!("e{}{}", i, j)
}

pub fn run_show(args: &ShowArgs) -> Result<ShowReport, CliError> {
    let need_n = |min: usize| -> Result<usize, CliError> {
        let n = usize::from(args.n.unwrap_or(3));
        if n < min {
            return Err(CliError::Usage(format!(
                "n must be at least {min}, got {n}"
            )));
        }
        Ok(n)
    };
    match args.object {
        ShowObject::ConstR => {
            let n = need_n(2)?;
            let set = constant_r_index_set(n);
            let terms = set
                .iter()
                .map(|&(a, b, c, d)| {
                    format!(
                        "{}⊗{} − {}⊗{}",
                        unit_name(a, b),
                        unit_name(c, d),
                        unit_name(c, d),
                        unit_name(a, b)
                    )
                })
                .collect();
            Ok(ShowReport::ConstR {
                n,
                index_set: set.into_iter().map(|(a, b, c, d)| [a, b, c, d]).collect(),
                terms,
            })
        }
        ShowObject::Phi => show_phi(args),
        ShowObject::Frobenius => {
            let n = need_n(2)?;
            let basis = frobenius_basis(n)?;
            let check = frobenius_inverse_check(n)?;
            Ok(ShowReport::Frobenius {
                n,
                basis: basis
                    .indices()
                    .iter()
                    .map(|&(k, l)| unit_name(k + 1, l + 1))
                    .collect(),
                m: strings(&check.m.m),
                gram: check.gram.rows(),
                m_inverse: check.m_inverse.as_ref().map(strings::<BigRational>),
                passed: check.passed(),
                kappa: check.kappa.as_ref().map(ToString::to_string),
                residual: check.residual.as_ref().map(ToString::to_string),
            })
        }
    }
}

fn grid(rows: &[Vec<String>]) -> String {
    let width = rows
        .iter()
        .flatten()
        .map(|s| s.chars().count())
        .max()
        .unwrap_or(1);
    rows.iter()
        .map(|r| {
            let cells: Vec<String> = r.iter().map(|s| format!("{s:>width$}")).collect();
            format!("  [{}]\n", cells.join(" "))
        })
        .collect()
}

pub fn render(report: &ShowReport) -> String {
    match report {
        ShowReport::ConstR { n, index_set, terms } => {
            let mut out = format!("R' for n = {n}: |S| = {}\n", index_set.len());
            for (idx, term) in index_set.iter().zip(terms) {
                out.push_str(&format!("  ({},{},{},{})  {term}\n", idx[0], idx[1], idx[2], idx[3]));
            }
            out
        }
        ShowReport::Phi {
            n,
            arithmetic,
            q,
            matrix,
            determinant,
            vandermonde_product,
            agree,
        } => format!(
            "phi(q) for n = {n}, q = ({}) [{arithmetic}]\n{}det phi = {determinant}\nproduct formula = {vandermonde_product}\nagree: {agree}\n",
            q.join(", "),
            grid(matrix)
        ),
        ShowReport::Frobenius {
            n,
            basis,
            m,
            gram,
            m_inverse,
            kappa,
            residual,
            passed,
        } => {
            let gram: Vec<Vec<String>> = gram.iter().map(|r| r.iter().map(ToString::to_string).collect()).collect();
            let mut out = format!("Frobenius data for n = {n}\nbasis: {}\nM:\n{}G:\n{}", basis.join(", "), grid(m), grid(&gram));
            if let Some(inv) = m_inverse {
                out.push_str(&format!("M^-1:\n{}", grid(inv)));
            }
            out.push_str(&format!(
                "kappa = {}\nresidual = {}\nM^-1 = kappa G: {passed}\n",
                kappa.as_deref().unwrap_or("undefined"),
                residual.as_deref().unwrap_or("undefined")
            ));
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use cmr_core::algebra::rational;

    #[test]
    fn parses_exact_rationals() {
        assert_eq!(parse_rational("3").unwrap(), rational(3, 1));
        assert_eq!(parse_rational("-2/6").unwrap(), rational(-1, 3));
        assert_eq!(parse_rational("0.125").unwrap(), rational(1, 8));
        assert_eq!(parse_rational("-1.5").unwrap(), rational(-3, 2));
        assert_eq!(parse_rational("+.5").unwrap(), rational(1, 2));
        for bad in ["", "1/0", "1e3", "abc", "1..2", "-"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }
}
