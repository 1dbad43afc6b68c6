use crate::scalar::Scalar;

/// Absolute residual of an identity together with the magnitude of its largest term.
#[derive(Clone, Debug, PartialEq)]
pub struct Residual {
    pub abs: Scalar,
    pub scale: Scalar,
}

impl Residual {
    /// Residual of `sum(terms) = 0`, scaled by the largest `|term|`.
    pub fn of_terms(terms: &[Scalar]) -> Residual {
        let prec = terms.iter().map(Scalar::prec).max().unwrap_or(64);
        let sum = terms.iter().fold(Scalar::zero(prec), |acc, t| acc + t);
        let scale = terms.iter().fold(Scalar::zero(prec), |m, t| m.max_of(&t.abs()));
        Residual { abs: sum.abs(), scale }
    }

    /// `abs / scale`, or `abs` itself when every term vanishes.
    pub fn relative(&self) -> Scalar {
        if self.scale.is_zero() {
            self.abs.clone()
        } else {
            &self.abs / &self.scale
        }
    }

    pub fn within(&self, rel_tol: &Scalar) -> bool {
        self.relative() <= *rel_tol
    }
}
