//! Monic rational polynomials and minimal polynomials of matrices.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::matrix::RatMatrix;

/// A monic polynomial; `coeffs[i]` multiplies `X^i` and the last entry is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatPolynomial {
    coeffs: Vec<BigRational>,
}

impl RatPolynomial {
    /// Builds a monic polynomial from its lower coefficients `c_0..c_{d-1}`.
    pub fn monic(lower: Vec<BigRational>) -> Self {
        let mut coeffs = lower;
        coeffs.push(BigRational::one());
        RatPolynomial { coeffs }
    }

    pub fn from_i64_monic(lower: &[i64]) -> Self {
        RatPolynomial::monic(lower.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn has_integer_coefficients(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// `P(M)` by Horner's scheme.
    pub fn eval_matrix(&self, m: &RatMatrix) -> RatMatrix {
        assert!(m.is_square());
        let n = m.rows();
        let mut acc = RatMatrix::zeros(n, n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(m).add(&RatMatrix::identity(n).scale(c));
        }
        acc
    }
}

impl fmt::Display for RatPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let a = c.abs();
            let mono = match i {
                0 => String::new(),
                1 => "X".to_string(),
                _ => format!("X^{i}"),
            };
            if mono.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{a}{mono}")?;
            }
            first = false;
        }
        Ok(())
    }
}

/// The monic polynomial of least degree annihilating `m`.
pub fn minimal_polynomial(m: &RatMatrix) -> RatPolynomial {
    assert!(m.is_square(), "minimal polynomial of a non-square matrix");
    let n = m.rows();
    if n == 0 {
        return RatPolynomial::monic(Vec::new());
    }
    let mut powers: Vec<Vec<BigRational>> = vec![RatMatrix::identity(n).entries().to_vec()];
    let mut current = RatMatrix::identity(n);
    loop {
        current = current.mul(m);
        let target = current.entries().to_vec();
        let span = RatMatrix::from_columns(n * n, &powers);
        if let Some(c) = span.solve(&target) {
            // M^d = Σ c_i M^i  =>  P = X^d - Σ c_i X^i
            return RatPolynomial::monic(c.into_iter().map(|x| -x).collect());
        }
        powers.push(target);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_has_linear_minimal_polynomial() {
        let p = minimal_polynomial(&RatMatrix::identity(3));
        assert_eq!(p, RatPolynomial::from_i64_monic(&[-1]));
    }

    #[test]
    fn rotation_has_x_squared_plus_one() {
        let m = RatMatrix::from_i64_rows(&[&[0, -1], &[1, 0]], 2);
        let p = minimal_polynomial(&m);
        assert_eq!(p, RatPolynomial::from_i64_monic(&[1, 0]));
        assert!(p.eval_matrix(&m).is_zero());
        assert_eq!(p.to_string(), "X^2 + 1");
    }

    #[test]
    fn empty_matrix_has_constant_one() {
        let p = minimal_polynomial(&RatMatrix::zeros(0, 0));
        assert_eq!(p.degree(), 0);
    }

    #[test]
    fn fractional_coefficients_are_detected() {
        let m = RatMatrix::from_fraction_rows(&[&[(1, 2)]], 1);
        let p = minimal_polynomial(&m);
        assert!(!p.has_integer_coefficients());
        assert_eq!(p.to_string(), "X - 1/2");
    }
}
