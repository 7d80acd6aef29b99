//! Text forms for exact values: rationals (decimal, scientific, or a/b),
//! cyclotomic literals built from z(m,e) terms, and the "z@rot" interpreter
//! encoding where rot is either 1 or e/m for zeta_m^e.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use dekking::cyclotomic::{CycNumber, RootOfUnity};
use dekking::turtle::GroupElement;

pub fn parse_rational(s: &str) -> Result<BigRational, String> {
    let s = s.trim();
    if s.is_empty() {
        return Err("empty number".into());
    }
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num.trim().parse().map_err(|_| format!("bad integer '{num}'"))?;
        let d: BigInt = den.trim().parse().map_err(|_| format!("bad integer '{den}'"))?;
        if d.is_zero() {
            return Err("zero denominator".into());
        }
        return Ok(BigRational::new(n, d));
    }
    // decimal with optional exponent: [-]ddd[.ddd][e[-]dd]
    let (mantissa, exp) = match s.split_once(['e', 'E']) {
        Some((m, e)) => {
            let exp: i64 = e.parse().map_err(|_| format!("bad exponent '{e}'"))?;
            (m, exp)
        }
        None => (s, 0),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mantissa, ""),
    };
    let negative = int_part.starts_with('-');
    let digits: String = format!(
        "{}{}",
        int_part.trim_start_matches(['-', '+']),
        frac_part
    );
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!("bad number '{s}'"));
    }
    let value: BigInt = digits.parse().expect("digits only");
    let mut out = BigRational::from_integer(value);
    if negative {
        out = -out;
    }
    let shift = exp - frac_part.len() as i64;
    let ten = BigInt::from(10);
    if shift >= 0 {
        out *= BigRational::from_integer(ten.pow(shift as u32));
    } else {
        out /= BigRational::from_integer(ten.pow((-shift) as u32));
    }
    Ok(out)
}

/// One term of a cyclotomic literal: a rational, z(m,e), or rational*z(m,e).
fn parse_term(s: &str) -> Result<CycNumber, String> {
    let s = s.trim();
    if let Some(idx) = s.find("z(") {
        let (coef_str, root_str) = s.split_at(idx);
        let root_body = root_str
            .strip_prefix("z(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| format!("bad root term '{s}', expected z(m,e)"))?;
        let (m_str, e_str) = root_body
            .split_once(',')
            .ok_or_else(|| format!("bad root term '{s}', expected z(m,e)"))?;
        let m: u64 = m_str.trim().parse().map_err(|_| format!("bad order '{m_str}'"))?;
        let e: i64 = e_str.trim().parse().map_err(|_| format!("bad exponent '{e_str}'"))?;
        let root = CycNumber::root(m, e).map_err(|err| err.to_string())?;
        let coef_str = coef_str.trim().trim_end_matches('*').trim();
        let coef = match coef_str {
            "" | "+" => BigRational::one(),
            "-" => -BigRational::one(),
            other => parse_rational(other)?,
        };
        Ok(root.scale(&coef))
    } else {
        Ok(CycNumber::from_rational(parse_rational(s)?))
    }
}

/// A sum of terms, e.g. "1 - 2*z(3,1) + 1/2".
pub fn parse_cyclotomic(s: &str) -> Result<CycNumber, String> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err("empty value".into());
    }
    let mut acc = CycNumber::zero();
    let mut start = 0usize;
    let bytes = compact.as_bytes();
    let mut depth = 0i32;
    for i in 0..=bytes.len() {
        let split = i == bytes.len()
            || (depth == 0
                && i > start
                && (bytes[i] == b'+' || (bytes[i] == b'-' && bytes[i - 1] != b'*'
                    && bytes[i - 1] != b'('
                    && bytes[i - 1] != b','
                    && bytes[i - 1] != b'e'
                    && bytes[i - 1] != b'E'
                    && bytes[i - 1] != b'/')));
        if i < bytes.len() {
            match bytes[i] {
                b'(' => depth += 1,
                b')' => depth -= 1,
                _ => {}
            }
        }
        if split {
            let term = &compact[start..i];
            if !term.is_empty() && term != "+" {
                acc = acc.add(&parse_term(term)?);
            }
            start = i;
        }
    }
    Ok(acc)
}

/// Rotation: "1" for no turn, "e/m" for zeta_m^e.
pub fn parse_rotation(s: &str) -> Result<RootOfUnity, String> {
    let s = s.trim();
    if s == "1" {
        return Ok(RootOfUnity::one());
    }
    let (e_str, m_str) = s
        .split_once('/')
        .ok_or_else(|| format!("bad rotation '{s}': expected 1 or e/m for zeta_m^e"))?;
    let e: i64 = e_str.trim().parse().map_err(|_| format!("bad exponent '{e_str}'"))?;
    let m: u64 = m_str.trim().parse().map_err(|_| format!("bad order '{m_str}'"))?;
    if m == 0 {
        return Err("rotation order must be positive".into());
    }
    Ok(RootOfUnity::new(m, e))
}

/// An instruction "translation@rotation".
pub fn parse_instruction(s: &str) -> Result<GroupElement, String> {
    let (z_str, rot_str) = s
        .split_once('@')
        .ok_or_else(|| format!("bad instruction '{s}': expected translation@rotation"))?;
    Ok(GroupElement::new(parse_cyclotomic(z_str)?, parse_rotation(rot_str)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("3/4").unwrap(), BigRational::new(3.into(), 4.into()));
        assert_eq!(parse_rational("-2").unwrap(), BigRational::from_integer((-2).into()));
        assert_eq!(parse_rational("0.25").unwrap(), BigRational::new(1.into(), 4.into()));
        assert_eq!(
            parse_rational("1e-3").unwrap(),
            BigRational::new(1.into(), 1000.into())
        );
        assert_eq!(
            parse_rational("2.5e2").unwrap(),
            BigRational::from_integer(250.into())
        );
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn cyclotomic_literals() {
        assert_eq!(parse_cyclotomic("1").unwrap(), CycNumber::from_int(1));
        assert_eq!(parse_cyclotomic("z(6,1)").unwrap(), CycNumber::root(6, 1).unwrap());
        let v = parse_cyclotomic("1-2*z(3,1)").unwrap();
        let expected = CycNumber::from_int(1)
            .sub(&CycNumber::root(3, 1).unwrap().scale(&BigRational::from_integer(2.into())));
        assert_eq!(v, expected);
        let w = parse_cyclotomic("-z(4,1) + 1/2").unwrap();
        let expected = CycNumber::root(4, 1)
            .unwrap()
            .neg()
            .add(&CycNumber::from_rational(BigRational::new(1.into(), 2.into())));
        assert_eq!(w, expected);
    }

    #[test]
    fn rotations_and_instructions() {
        assert!(parse_rotation("1").unwrap().is_one());
        assert_eq!(parse_rotation("1/6").unwrap(), RootOfUnity::new(6, 1));
        assert_eq!(parse_rotation("-1/6").unwrap(), RootOfUnity::new(6, 5));
        let g = parse_instruction("1@1/6").unwrap();
        assert_eq!(g.z, CycNumber::from_int(1));
        assert_eq!(g.u, RootOfUnity::new(6, 1));
        assert!(parse_instruction("1").is_err());
    }
}
