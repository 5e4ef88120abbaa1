use num_rational::Ratio;
use num_traits::{One, Zero};

use super::{KernelError, Result};

/// Exact rational used for every measure computation.
pub type Q = Ratio<i128>;

/// Parses `"p/q"`, `"p"` or `"-p/q"`.
pub fn parse_rational(text: &str) -> Result<Q> {
    let bad = || KernelError::MalformedSpec(format!("bad rational `{text}`"));
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: i128 = num.parse().map_err(|_| bad())?;
    let den: i128 = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Ratio::new(num, den))
}

/// Canonical `"p/q"` (or `"p"` for integers) rendering.
pub fn rational_to_string(q: &Q) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub(crate) fn q_int(v: u64) -> Q {
    Q::from_integer(v as i128)
}

pub(crate) fn ceil_u64(q: &Q) -> u64 {
    let c = q.ceil().to_integer();
    if c < 0 {
        0
    } else {
        c as u64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_prints() {
        assert_eq!(parse_rational("1/2").unwrap(), Q::new(1, 2));
        assert_eq!(parse_rational("4/2").unwrap(), Q::from_integer(2));
        assert_eq!(rational_to_string(&Q::new(6, 4)), "3/2");
        assert_eq!(rational_to_string(&Q::from_integer(3)), "3");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }
}
