//! Textual form `[n0,n1,...]/[d0,d1,...]@D`: coefficient lists in s, lowest
//! degree first, denominator monic, rationals written `p/q`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::Poly;
use super::qscalar::QScalar;
use super::ScalarError;

fn rat_str(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn to_text(x: &QScalar) -> String {
    if x.is_zero() {
        return "[]/[1]@1".to_string();
    }
    let (num, den) = if x.shift() >= 0 {
        (x.numerator().shift_up(x.shift() as usize), x.denominator().clone())
    } else {
        (x.numerator().clone(), x.denominator().shift_up((-x.shift()) as usize))
    };
    let lc = den.lc().clone();
    let fmt_list = |p: &Poly| {
        p.coeffs()
            .iter()
            .map(|c| rat_str(&BigRational::new(c.clone(), lc.clone())))
            .collect::<Vec<_>>()
            .join(",")
    };
    format!("[{}]/[{}]@{}", fmt_list(&num), fmt_list(&den), x.root_order())
}

fn parse_rat(s: &str) -> Result<BigRational, ScalarError> {
    let bad = || ScalarError::Parse(s.to_string());
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

fn parse_list(s: &str) -> Result<Vec<BigRational>, ScalarError> {
    let inner = s
        .trim()
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| ScalarError::Parse(s.to_string()))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner.split(',').map(parse_rat).collect()
}

/// Clear denominators of a rational coefficient list.
fn integral(cs: &[BigRational]) -> (Poly, BigInt) {
    let l = cs.iter().fold(BigInt::one(), |acc, c| num_integer::lcm(acc, c.denom().clone()));
    let coeffs = cs.iter().map(|c| (c * BigRational::from_integer(l.clone())).to_integer()).collect();
    (Poly::from_coeffs(coeffs), l)
}

pub fn from_text(s: &str) -> Result<QScalar, ScalarError> {
    let bad = || ScalarError::Parse(s.to_string());
    let (body, root) = s.rsplit_once('@').ok_or_else(bad)?;
    let root: u32 = root.trim().parse().map_err(|_| bad())?;
    if root == 0 {
        return Err(bad());
    }
    let split = body.find("]/[").ok_or_else(bad)?;
    let num = parse_list(&body[..=split])?;
    let den = parse_list(&body[split + 2..])?;
    let (np, nl) = integral(&num);
    let (dp, dl) = integral(&den);
    if dp.is_zero() {
        return Err(ScalarError::ZeroDenominator);
    }
    // num/den = (np/nl)/(dp/dl) = (np*dl)/(dp*nl)
    Ok(QScalar::from_parts(0, np.scale(&dl), dp.scale(&nl), root))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let q = QScalar::q_pow(1);
        let s = QScalar::q_frac_pow(1, 3);
        for x in [
            QScalar::zero(),
            QScalar::one(),
            QScalar::from_ratio(-3, 7),
            q.inv(),
            (&q + &QScalar::from_int(2)) / (&q * &QScalar::from_int(3) - &s),
        ] {
            assert_eq!(from_text(&to_text(&x)).unwrap(), x);
        }
    }

    #[test]
    fn monic_denominator() {
        let x = QScalar::one() / (QScalar::q_pow(1).scale_int(2) - QScalar::one());
        assert_eq!(to_text(&x), "[1/2]/[-1/2,1]@1");
    }

    #[test]
    fn rejects_garbage() {
        assert!(from_text("[1,2]@1").is_err());
        assert!(from_text("[1]/[0]@1").is_err());
    }
}
