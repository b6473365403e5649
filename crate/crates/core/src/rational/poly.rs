//! Dense univariate polynomials with complex coefficients, ascending power
//! order. The zero polynomial is canonically the empty coefficient list.

use num_complex::Complex64;

#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<Complex64>,
}

impl Polynomial {
    /// Build from ascending coefficients, trimming exactly-zero leading
    /// terms. Signed zeros are normalized to +0.0 so canonical forms hash
    /// and serialize stably.
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        let mut coeffs: Vec<Complex64> = coeffs
            .into_iter()
            .map(|c| Complex64::new(c.re + 0.0, c.im + 0.0))
            .collect();
        while coeffs
            .last()
            .is_some_and(|c| *c == Complex64::new(0.0, 0.0))
        {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: vec![] }
    }

    pub fn constant(c: Complex64) -> Self {
        Polynomial::new(vec![c])
    }

    pub fn from_reals(coeffs: &[f64]) -> Self {
        Polynomial::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree treating the zero polynomial as degree 0.
    pub fn degree_or_zero(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading(&self) -> Complex64 {
        self.coeffs
            .last()
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs
            .get(k)
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    /// Horner evaluation.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    pub fn derivative(&self) -> Polynomial {
        if self.coeffs.len() <= 1 {
            return Polynomial::zero();
        }
        Polynomial::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, &c)| c * (i as f64 + 1.0))
                .collect(),
        )
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Complex64::new(0.0, 0.0); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }

    pub fn scale(&self, s: Complex64) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    /// Multiply by z^k.
    pub fn shift_up(&self, k: usize) -> Polynomial {
        if self.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Complex64::new(0.0, 0.0); k];
        out.extend_from_slice(&self.coeffs);
        Polynomial::new(out)
    }

    /// Coefficient reversal: p(z) = z^deg · rev(1/z).
    pub fn reversed(&self) -> Polynomial {
        let mut r = self.coeffs.clone();
        r.reverse();
        Polynomial::new(r)
    }

    /// p(z) = z^k · q(z) with q(0) ≠ 0; returns (k, q). Exactly-zero
    /// constant coefficients only.
    pub fn factor_out_origin(&self) -> (usize, Polynomial) {
        let k = self
            .coeffs
            .iter()
            .position(|c| *c != Complex64::new(0.0, 0.0))
            .unwrap_or(0);
        (k, Polynomial::new(self.coeffs[k..].to_vec()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn trims_and_degree() {
        let p = Polynomial::new(vec![c(1.0, 0.0), c(2.0, 0.0), c(0.0, 0.0)]);
        assert_eq!(p.degree(), Some(1));
        assert!(Polynomial::new(vec![c(0.0, 0.0)]).is_zero());
        assert_eq!(Polynomial::zero().degree(), None);
    }

    #[test]
    fn eval_and_derivative() {
        // p = 1 + 2z + 3z^2
        let p = Polynomial::from_reals(&[1.0, 2.0, 3.0]);
        assert_eq!(p.eval(c(2.0, 0.0)), c(17.0, 0.0));
        let dp = p.derivative();
        assert_eq!(dp.coeffs(), &[c(2.0, 0.0), c(6.0, 0.0)]);
    }

    #[test]
    fn mul_matches_expansion() {
        // (z-1)(z-2) = z^2 - 3z + 2
        let a = Polynomial::from_reals(&[-1.0, 1.0]);
        let b = Polynomial::from_reals(&[-2.0, 1.0]);
        assert_eq!(a.mul(&b), Polynomial::from_reals(&[2.0, -3.0, 1.0]));
    }

    #[test]
    fn reversal_identity() {
        let p = Polynomial::from_reals(&[3.0, 0.0, 1.0]); // 3 + z^2
        let r = p.reversed(); // 1 + 3z^2
        let z = c(0.5, 0.25);
        let lhs = p.eval(z);
        let rhs = z.powi(2) * r.eval(z.inv());
        assert!((lhs - rhs).norm() < 1e-12);
    }

    #[test]
    fn origin_factoring() {
        let p = Polynomial::from_reals(&[0.0, 0.0, 5.0, 1.0]); // 5z^2 + z^3
        let (k, q) = p.factor_out_origin();
        assert_eq!(k, 2);
        assert_eq!(q, Polynomial::from_reals(&[5.0, 1.0]));
    }
}
