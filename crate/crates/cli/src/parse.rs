//! Command-line value parsers.

use toro::field::Monomial;
use toro::partitions::Partition;
use toro::plane::Box3;

use crate::error::CliError;

/// Comma separated, weakly decreasing parts; `""` is the empty partition.
pub fn partition(s: &str) -> Result<Partition, CliError> {
    Partition::parse(s).map_err(|e| CliError::invalid("MalformedPartition", format!("{s:?}: {e}")))
}

pub fn box3(s: &str) -> Result<Box3, CliError> {
    let v: Vec<i64> = s
        .split(',')
        .map(|t| t.trim().parse::<i64>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::invalid("MalformedBox", format!("{s:?} is not x,y,z")))?;
    match v[..] {
        [x, y, z] => Ok(Box3::new(x, y, z)),
        _ => Err(CliError::invalid("MalformedBox", format!("{s:?} is not x,y,z"))),
    }
}

/// Layers separated by `/`, e.g. `3,1/2/1`.
pub fn layers(s: &str) -> Result<Vec<Partition>, CliError> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split('/').map(partition).collect()
}

/// Doubled exponents `(u, q, d, K)` of a generator.
fn atom(name: &str) -> Option<[i64; 4]> {
    Some(match name {
        "1" => [0, 0, 0, 0],
        "u" => [2, 0, 0, 0],
        "q" => [0, 2, 0, 0],
        "d" => [0, 0, 2, 0],
        "K" => [0, 0, 0, 2],
        "q1" => [0, -2, 2, 0],
        "q2" => [0, 4, 0, 0],
        "q3" => [0, -2, -2, 0],
        _ => return None,
    })
}

/// `num/den` with `den` in `{1, 2}`.
fn exponent(s: &str) -> Option<(i64, i64)> {
    let s = s.trim().trim_start_matches('(').trim_end_matches(')');
    match s.split_once('/') {
        None => Some((s.parse().ok()?, 1)),
        Some((a, b)) => {
            let d: i64 = b.trim().parse().ok()?;
            (d == 1 || d == 2).then_some(())?;
            Some((a.trim().parse().ok()?, d))
        }
    }
}

/// Products of `u, q, d, K, q1, q2, q3` with integer or half-integer exponents,
/// e.g. `q1^2*q3^-1`, `q^(1/2) d`.
pub fn monomial(s: &str) -> Result<Monomial, CliError> {
    let bad = |why: &str| CliError::invalid("MalformedMonomial", format!("{s:?}: {why}"));
    let mut acc = [0i64; 4];
    let mut rest = s.trim();
    if rest.is_empty() {
        return Err(bad("empty"));
    }
    while !rest.is_empty() {
        rest = rest.trim_start_matches(|c: char| c == '*' || c.is_whitespace());
        if rest.is_empty() {
            break;
        }
        let name_len = if rest.starts_with('1') {
            1
        } else {
            let mut l = rest.chars().next().map_or(0, |c| c.len_utf8());
            if rest[l..].starts_with(['1', '2', '3']) && rest.starts_with('q') {
                l += 1;
            }
            l
        };
        let base = atom(&rest[..name_len]).ok_or_else(|| bad("unknown generator"))?;
        rest = &rest[name_len..];
        let (num, den) = if let Some(r) = rest.strip_prefix('^') {
            let end = if r.starts_with('(') {
                r.find(')').map(|i| i + 1).ok_or_else(|| bad("unbalanced parenthesis"))?
            } else {
                r.find(|c: char| !(c.is_ascii_digit() || c == '-')).unwrap_or(r.len())
            };
            let e = exponent(&r[..end]).ok_or_else(|| bad("bad exponent"))?;
            rest = &r[end..];
            e
        } else {
            (1, 1)
        };
        for (a, b) in acc.iter_mut().zip(base) {
            let v = b * num;
            if v % den != 0 {
                return Err(bad("exponent is not allowed to be fractional here"));
            }
            *a += v / den;
        }
    }
    if acc[0] % 2 != 0 {
        return Err(bad("u must have an integer exponent"));
    }
    if acc.iter().any(|&v| v.abs() > i32::MAX as i64) {
        return Err(bad("exponent out of range"));
    }
    Ok(Monomial::new((acc[0] / 2) as i32, acc[1] as i32, acc[2] as i32, acc[3] as i32))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomials() {
        assert_eq!(monomial("q1^1").unwrap(), Monomial::q1());
        assert_eq!(monomial("q1^2*q3^-1").unwrap(), Monomial::q1().pow(2) * Monomial::q3().inv());
        assert_eq!(monomial("q^(1/2) d").unwrap(), Monomial::new(0, 1, 2, 0));
        assert_eq!(monomial("1").unwrap(), Monomial::ONE);
        assert_eq!(monomial("u q2").unwrap(), Monomial::u() * Monomial::q2());
        assert!(monomial("x").is_err());
        assert!(monomial("u^(1/2)").is_err());
        assert!(monomial("").is_err());
    }

    #[test]
    fn partitions_reject_increasing() {
        assert!(partition("1,2").is_err());
        assert_eq!(partition("").unwrap(), Partition::empty());
        assert_eq!(layers("2,1/1").unwrap().len(), 2);
    }
}
