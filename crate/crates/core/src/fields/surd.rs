use std::cmp::Ordering;

use num_traits::{One, Signed};

use super::{FieldError, Rational};

/// Orders `x` against `m = (1 + sqrt(1 + 4c)) / 2` without leaving the
/// rationals: for `x > 1/2` both `2x - 1` and `2m - 1` are positive, so the
/// comparison reduces to `(2x - 1)^2` against `1 + 4c`.
pub fn cmp_with_surd_mean(x: &Rational, c: &Rational) -> Result<Ordering, FieldError> {
    if c.is_negative() {
        return Err(FieldError::NegativeDiscriminantInput(c.clone()));
    }
    let one = Rational::one();
    let two = Rational::from_integer(2.into());
    let four = Rational::from_integer(4.into());
    if x * &two <= one {
        return Ok(Ordering::Less);
    }
    let lhs = x * &two - &one;
    Ok((&lhs * &lhs).cmp(&(one + four * c)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn examples() {
        assert_eq!(cmp_with_surd_mean(&rat(3, 1), &rat(6, 1)).unwrap(), Ordering::Equal);
        assert_eq!(cmp_with_surd_mean(&rat(2, 1), &rat(6, 1)).unwrap(), Ordering::Less);
        assert_eq!(cmp_with_surd_mean(&rat(3, 1), &rat(35, 6)).unwrap(), Ordering::Greater);
        assert_eq!(cmp_with_surd_mean(&rat(1, 2), &rat(0, 1)).unwrap(), Ordering::Less);
        assert_eq!(cmp_with_surd_mean(&rat(1, 1), &rat(0, 1)).unwrap(), Ordering::Equal);
        assert!(matches!(
            cmp_with_surd_mean(&rat(1, 1), &rat(-1, 3)),
            Err(FieldError::NegativeDiscriminantInput(_))
        ));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn agrees_with_float(xn in -400i64..400, xd in 1i64..60, cn in 0i64..4000, cd in 1i64..60) {
            let x = rat(xn, xd);
            let c = rat(cn, cd);
            let xf = xn as f64 / xd as f64;
            let m = (1.0 + (1.0 + 4.0 * cn as f64 / cd as f64).sqrt()) / 2.0;
            let exact = cmp_with_surd_mean(&x, &c).unwrap();
            if (xf - m).abs() > 1e-9 {
                prop_assert_eq!(exact, xf.partial_cmp(&m).unwrap());
            }
        }
    }
}
