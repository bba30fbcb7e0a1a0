use crate::algebra::{AlgebraMap, Element, Monomial, Parity};
use crate::error::{Error, Result};
use crate::scalar;

fn even_generator(f: &Element, t: &str) -> Result<usize> {
    let i = f.table().index_of(t)?;
    if f.table().is_odd(i) {
        return Err(Error::ExpectedEven(t.to_string()));
    }
    Ok(i)
}

/// Antiderivative in the even generator `t`, term by term, vanishing at `t = 0`.
pub fn antiderivative(f: &Element, t: &str) -> Result<Element> {
    let i = even_generator(f, t)?;
    Ok(Element::from_terms(
        f.table(),
        f.terms().iter().map(|(m, c)| {
            let mut exps = m.exponents().to_vec();
            exps[i] += 1;
            let n = exps[i] as i64;
            (Monomial::from_exponents(exps), c / scalar::int(n))
        }),
    ))
}

/// `∫_a^b f dt = F(b) − F(a)`, with `a` and `b` even elements free of `t`.
pub fn integrate(f: &Element, t: &str, a: &Element, b: &Element) -> Result<Element> {
    let i = even_generator(f, t)?;
    for bound in [a, b] {
        bound.table().ensure_same(f.table())?;
        if bound.parity() == Some(Parity::Odd) || (!bound.is_zero() && bound.parity().is_none()) {
            return Err(Error::OddBound(bound.to_string()));
        }
        if bound.terms().keys().any(|m| m.exponent(i) > 0) {
            return Err(Error::InvalidInput(format!("integration bound `{bound}` depends on `{t}`")));
        }
    }
    let big_f = antiderivative(f, t)?;
    let at = |v: &Element| AlgebraMap::from_named(f.table(), f.table(), [(t, v.clone())])?.apply(&big_f);
    Ok(&at(b)? - &at(a)?)
}

/// Berezin integral `∫dθ`: the left partial derivative in the odd generator `θ`.
pub fn berezin(f: &Element, theta: &str) -> Result<Element> {
    let i = f.table().index_of(theta)?;
    if !f.table().is_odd(i) {
        return Err(Error::ExpectedOdd(theta.to_string()));
    }
    Ok(f.partial(i))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse, Generator, GeneratorTable};

    fn table() -> GeneratorTable {
        GeneratorTable::new(vec![Generator::even("t", 0), Generator::even("x", 2), Generator::odd("theta", 1)]).unwrap()
    }

    #[test]
    fn unit_interval_and_degenerate_bounds() {
        let t = table();
        let p = |s: &str| parse(s, &t).unwrap();
        assert_eq!(integrate(&p("t"), "t", &p("0"), &p("1")).unwrap(), p("1/2"));
        assert!(integrate(&p("t^3*x + theta"), "t", &p("x"), &p("x")).unwrap().is_zero());
        assert_eq!(integrate(&p("x*theta"), "t", &p("0"), &p("x")).unwrap(), p("x^2*theta"));
    }

    #[test]
    fn rejects_odd_variable_and_bounds() {
        let t = table();
        let p = |s: &str| parse(s, &t).unwrap();
        assert_eq!(integrate(&p("t"), "theta", &p("0"), &p("1")).unwrap_err(), Error::ExpectedEven("theta".into()));
        assert!(matches!(integrate(&p("t"), "t", &p("theta"), &p("1")).unwrap_err(), Error::OddBound(_)));
    }

    #[test]
    fn berezin_basics() {
        let t = table();
        let p = |s: &str| parse(s, &t).unwrap();
        assert!(berezin(&p("1"), "theta").unwrap().is_zero());
        assert_eq!(berezin(&p("theta"), "theta").unwrap(), p("1"));
        assert_eq!(berezin(&p("x*theta"), "theta").unwrap(), p("x"));
        assert_eq!(berezin(&p("x"), "x").unwrap_err(), Error::ExpectedOdd("x".into()));
    }
}
