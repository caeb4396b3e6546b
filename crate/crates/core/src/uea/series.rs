use super::element::UeaElement;
use crate::error::{Error, Result};
use crate::scalar::{self, Scalar};

/// A polynomial in a formal parameter `t` with coefficients in `U(g)`,
/// truncated at `order`. Coefficient `n` multiplies `t^n`.
///
/// Working order by order in `t` keeps every identity exact: the `t`-adic
/// truncation is compatible with products, whereas dropping high PBW degrees
/// is not for non-nilpotent algebras.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    coeffs: Vec<UeaElement>,
}

impl Series {
    /// `coeffs[n]` is the `t^n` coefficient; the order is `coeffs.len() − 1`.
    pub fn new(coeffs: Vec<UeaElement>) -> Result<Self> {
        let first = coeffs
            .first()
            .ok_or_else(|| Error::Precondition("a series needs at least one coefficient".into()))?;
        if let Some(c) = coeffs.iter().find(|c| c.trunc() != first.trunc()) {
            return Err(Error::TruncMismatch {
                left: first.trunc(),
                right: c.trunc(),
            });
        }
        Ok(Series { coeffs })
    }

    pub fn zero(order: usize, trunc: usize) -> Self {
        Series {
            coeffs: vec![UeaElement::zero(trunc); order + 1],
        }
    }

    /// `a · t^k` up to `order`.
    pub fn monomial(a: UeaElement, k: usize, order: usize) -> Self {
        let mut s = Self::zero(order, a.trunc());
        if k <= order {
            s.coeffs[k] = a;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn trunc(&self) -> usize {
        self.coeffs[0].trunc()
    }

    pub fn coeff(&self, n: usize) -> &UeaElement {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[UeaElement] {
        &self.coeffs
    }

    pub fn set_coeff(&mut self, n: usize, a: UeaElement) {
        self.coeffs[n] = a;
    }

    /// Value at `t = 1`.
    pub fn sum(&self) -> UeaElement {
        let mut out = UeaElement::zero(self.trunc());
        for c in &self.coeffs {
            out.add_scaled(c, &scalar::one());
        }
        out
    }

    pub fn truncate(&self, order: usize) -> Series {
        Series {
            coeffs: self.coeffs[..=order.min(self.order())].to_vec(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(UeaElement::is_zero)
    }

    pub fn scale(&self, c: &Scalar) -> Series {
        Series {
            coeffs: self.coeffs.iter().map(|a| a.scale(c)).collect(),
        }
    }

    /// Sum up to the smaller of the two orders.
    pub fn add(&self, other: &Series) -> Series {
        Series {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Series) -> Series {
        self.add(&other.scale(&-scalar::one()))
    }

    /// `t d/dt` shifted down: coefficient `n` of the result is `(n+1) a_{n+1}`.
    pub fn derivative(&self) -> Series {
        let order = self.order();
        if order == 0 {
            return Self::zero(0, self.trunc());
        }
        Series {
            coeffs: (1..=order)
                .map(|n| self.coeffs[n].scale(&scalar::int(n as i64)))
                .collect(),
        }
    }

    /// Cauchy product with the given coefficient product. Fails if a product
    /// of nonzero coefficients could exceed the PBW degree cap.
    pub fn mul_with(
        &self,
        other: &Series,
        mut mul: impl FnMut(&UeaElement, &UeaElement) -> Result<UeaElement>,
    ) -> Result<Series> {
        let order = self.order().min(other.order());
        let trunc = self.trunc();
        let mut out = Self::zero(order, trunc);
        for i in 0..=order {
            let a = &self.coeffs[i];
            let Some(da) = a.degree() else { continue };
            for j in 0..=order - i {
                let b = &other.coeffs[j];
                let Some(db) = b.degree() else { continue };
                if da + db > trunc {
                    return Err(Error::TruncationExceeded {
                        trunc,
                        needed: da + db,
                    });
                }
                let p = mul(a, b)?;
                out.coeffs[i + j].add_scaled(&p, &scalar::one());
            }
        }
        Ok(out)
    }

    /// `Σ x^k / k!` for a series without constant term.
    pub fn exp_with(
        &self,
        mut mul: impl FnMut(&UeaElement, &UeaElement) -> Result<UeaElement>,
    ) -> Result<Series> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::Precondition(
                "exp needs a series without constant term".into(),
            ));
        }
        let order = self.order();
        let mut out = Self::monomial(UeaElement::unit(self.trunc()), 0, order);
        let mut power = out.clone();
        for k in 1..=order {
            power = power.mul_with(self, &mut mul)?;
            let w = scalar::one() / scalar::factorial(k);
            out = out.add(&power.scale(&w));
        }
        Ok(out)
    }

    /// `Σ (−1)^{k+1} y^k / k` with `y = g − 1`, for `g` with unit constant term.
    pub fn log_with(
        &self,
        mut mul: impl FnMut(&UeaElement, &UeaElement) -> Result<UeaElement>,
    ) -> Result<Series> {
        let unit = UeaElement::unit(self.trunc());
        if self.coeffs[0] != unit {
            return Err(Error::Precondition(
                "log needs a series with constant term 1".into(),
            ));
        }
        let order = self.order();
        let mut y = self.clone();
        y.coeffs[0] = UeaElement::zero(self.trunc());
        let mut out = Self::zero(order, self.trunc());
        let mut power = Self::monomial(unit, 0, order);
        for k in 1..=order {
            power = power.mul_with(&y, &mut mul)?;
            let sign = if k % 2 == 1 { 1 } else { -1 };
            out = out.add(&power.scale(&scalar::frac(sign, k as i64)));
        }
        Ok(out)
    }

    /// Lowest `t`-order carrying a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }
}
