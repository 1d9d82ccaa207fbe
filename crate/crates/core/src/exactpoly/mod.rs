//! Exact sparse multivariate polynomials over the rationals.
//!
//! Degrees exposed at the API are geometric (each x_i has degree 2); the
//! packed monomial stores plain exponent sums.

mod monomial;
mod poly;
mod rational;
mod text;

pub use monomial::{Monomial, MAX_VARS};
pub use poly::{graded_basis, Poly};
pub use rational::Rational;
pub use text::parse_poly;

impl serde::Serialize for Poly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Poly {
        parse_poly(s, n).unwrap()
    }

    #[test]
    fn arith_examples() {
        let x1 = Poly::var(2, 1);
        let x2 = Poly::var(2, 2);
        assert!((&x1 + &(-&x1)).is_zero());
        assert_eq!(&(&x1 + &x2) * &(&x1 - &x2), p("x1^2 - x2^2", 2));
        assert_eq!(x1.scale(&Rational::from_int(2)).scale(&Rational::new(1, 2)), x1);
        assert!(Poly::var(2, 1).checked_add(&Poly::var(3, 1)).is_err());
    }

    #[test]
    fn act_examples() {
        let q = p("x1*x2 + x3", 3);
        assert_eq!(Poly::var(3, 1).act(&[2, 1, 3]).unwrap(), Poly::var(3, 2));
        assert_eq!(q.act(&[1, 2, 3]).unwrap(), q);
        assert_eq!(q.act(&[2, 1, 3]).unwrap(), q);
        assert!(q.act(&[2, 1]).is_err());
    }

    #[test]
    fn divide_linear_examples() {
        assert_eq!(p("x1^2 - x2^2", 2).divide_linear(1, 2).unwrap(), p("x1 + x2", 2));
        assert!(Poly::zero(2).divide_linear(1, 2).unwrap().is_zero());
        assert_eq!(p("x1*x3 - x2*x3", 3).divide_linear(1, 2).unwrap(), Poly::var(3, 3));
        assert_eq!(p("x1", 2).divide_linear(1, 2), Err(crate::Error::NotDivisible(1, 2)));
        assert_eq!(p("x3^2 - x1^2", 3).divide_linear(3, 1).unwrap(), p("x1 + x3", 3));
    }

    #[test]
    fn graded_basis_examples() {
        let b = graded_basis(2, 2).unwrap();
        assert_eq!(b, vec![Monomial::var(0), Monomial::var(1)]);
        assert_eq!(graded_basis(2, 0).unwrap(), vec![Monomial::ONE]);
        let b = graded_basis(3, 4).unwrap();
        let shown: Vec<String> = b.iter().map(|m| m.to_string()).collect();
        assert_eq!(shown, ["x1^2", "x1*x2", "x1*x3", "x2^2", "x2*x3", "x3^2"]);
        assert!(graded_basis(3, 3).is_err());
        assert!(graded_basis(0, 0).unwrap() == vec![Monomial::ONE]);
    }

    #[test]
    fn text_format() {
        let q = p("1 - 3/2*x2 + x1^2*x3 - x1", 3);
        assert_eq!(q.to_string(), "x1^2*x3 - x1 - 3/2*x2 + 1");
        assert_eq!(p(&q.to_string(), 3), q);
        assert_eq!(Poly::zero(2).to_string(), "0");
        assert_eq!(p("-2*x1*x1", 1).to_string(), "-2*x1^2");
        assert!(parse_poly("x4", 3).is_err());
        assert!(parse_poly("x1 x2", 3).is_err());
        assert!(parse_poly("", 3).is_err());
    }

    #[test]
    fn substitute_and_eval() {
        let q = p("x1^2 + x2", 2);
        let r = q.substitute(&[p("x1 + 1", 1), p("2", 1)]);
        assert_eq!(r, p("x1^2 + 2*x1 + 3", 1));
        let v = q.eval(&[Rational::from_int(3), Rational::new(1, 2)]);
        assert_eq!(v, Rational::new(19, 2));
    }
}
