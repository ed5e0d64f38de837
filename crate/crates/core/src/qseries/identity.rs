use super::{FormalSeries, SeriesError};

/// Outcome of an exact coefficient comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub equal: bool,
    /// Smallest exponent numerator where the coefficients differ.
    pub first_mismatch: Option<i64>,
}

/// Compares `a` and `b` coefficient by coefficient through exponent
/// numerator `through24` inclusive.
pub fn identity_equal(
    a: &FormalSeries,
    b: &FormalSeries,
    through24: i64,
) -> Result<IdentityCheck, SeriesError> {
    let have = a.order().min(b.order());
    if have < through24 {
        return Err(SeriesError::InsufficientOrder { needed: through24, have });
    }
    let diff = a.truncate(through24).sub(&b.truncate(through24));
    let first_mismatch = diff.valuation();
    Ok(IdentityCheck { equal: first_mismatch.is_none(), first_mismatch })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::{eisenstein_l, theta, ThetaKind};

    #[test]
    fn theta3_vs_theta4_mismatch_at_q() {
        let a = theta(ThetaKind::Theta3, 1, 240);
        let b = theta(ThetaKind::Theta4, 1, 240);
        let r = identity_equal(&a, &b, 240).unwrap();
        assert_eq!(r, IdentityCheck { equal: false, first_mismatch: Some(24) });
    }

    #[test]
    fn duplication_formula() {
        let o = 4800;
        let lhs = theta(ThetaKind::Theta2, 2, o)
            .mul(&theta(ThetaKind::Theta3, 2, o))
            .scale(&crate::qseries::series::rat(2, 1));
        let t2 = theta(ThetaKind::Theta2, 1, o);
        let r = identity_equal(&lhs, &t2.mul(&t2), o).unwrap();
        assert!(r.equal);
    }

    #[test]
    fn ramanujan_eisenstein() {
        let o = 4800;
        let t3 = theta(ThetaKind::Theta3, 1, o);
        let lhs = t3.pow(4).unwrap().scale(&crate::qseries::series::rat(3, 1));
        let rhs = eisenstein_l(4, o)
            .scale(&crate::qseries::series::rat(4, 1))
            .sub(&eisenstein_l(1, o));
        assert_eq!(identity_equal(&lhs, &rhs, o).unwrap().first_mismatch, None);
    }

    #[test]
    fn insufficient_order_is_an_error() {
        let a = theta(ThetaKind::Theta3, 1, 100);
        let b = theta(ThetaKind::Theta3, 1, 240);
        assert_eq!(
            identity_equal(&a, &b, 240),
            Err(SeriesError::InsufficientOrder { needed: 240, have: 100 })
        );
    }
}
