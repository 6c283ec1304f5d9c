//! Parsing of scalar expressions and parameter grids.
//!
//! Scalars accept plain floats and pi shortcuts (`pi`, `pi/2`, `3pi/4`,
//! `-0.5pi`); grids accept `start:stop:step` (inclusive endpoints),
//! `start:stop` (unit step), and comma lists.

use anyhow::{bail, Context, Result};
use std::f64::consts::PI;

/// Parses a scalar: a float literal or a pi expression
/// `[sign][coefficient]pi[/divisor]`.
pub fn parse_scalar(text: &str) -> Result<f64> {
    let t = text.trim();
    if t.is_empty() {
        bail!("empty scalar");
    }
    if let Ok(v) = t.parse::<f64>() {
        if !v.is_finite() {
            bail!("non-finite scalar {t:?}");
        }
        return Ok(v);
    }
    let lower = t.to_ascii_lowercase();
    let Some(pi_pos) = lower.find("pi") else {
        bail!("cannot parse scalar {t:?}");
    };
    let (head, rest) = (&lower[..pi_pos], &lower[pi_pos + 2..]);
    let coeff = match head {
        "" | "+" => 1.0,
        "-" => -1.0,
        other => other
            .parse::<f64>()
            .with_context(|| format!("bad pi coefficient in {t:?}"))?,
    };
    let divisor = match rest.strip_prefix('/') {
        None if rest.is_empty() => 1.0,
        None => bail!("trailing characters after pi in {t:?}"),
        Some(d) => {
            let d: f64 = d
                .parse()
                .with_context(|| format!("bad pi divisor in {t:?}"))?;
            if d == 0.0 {
                bail!("zero pi divisor in {t:?}");
            }
            d
        }
    };
    Ok(coeff * PI / divisor)
}

/// Parses a complex scalar `re` or `re,im` (both components scalar
/// expressions).
pub fn parse_complex(text: &str) -> Result<num_complex::Complex64> {
    let parts: Vec<&str> = text.split(',').collect();
    match parts.as_slice() {
        [re] => Ok(num_complex::Complex64::new(parse_scalar(re)?, 0.0)),
        [re, im] => Ok(num_complex::Complex64::new(
            parse_scalar(re)?,
            parse_scalar(im)?,
        )),
        _ => bail!("complex value {text:?} must be `re` or `re,im`"),
    }
}

/// Expands a grid expression into explicit values.
///
/// `a:b:h` runs from `a` to `b` inclusive in steps of `h`; `a:b` uses unit
/// step; anything else is a comma list of scalars (possibly one).
pub fn parse_grid(text: &str) -> Result<Vec<f64>> {
    let t = text.trim();
    if t.contains(':') {
        let parts: Vec<&str> = t.split(':').collect();
        let (start, stop, step) = match parts.as_slice() {
            [a, b] => (parse_scalar(a)?, parse_scalar(b)?, 1.0),
            [a, b, h] => (parse_scalar(a)?, parse_scalar(b)?, parse_scalar(h)?),
            _ => bail!("range {t:?} must be start:stop or start:stop:step"),
        };
        return expand_range(start, stop, step);
    }
    t.split(',').map(parse_scalar).collect()
}

/// Inclusive range, tolerant of the usual floating-point endpoint slop.
pub fn expand_range(start: f64, stop: f64, step: f64) -> Result<Vec<f64>> {
    if step == 0.0 || !step.is_finite() {
        bail!("range step must be nonzero and finite");
    }
    let span = (stop - start) / step;
    if span < -1e-9 {
        bail!("range from {start} to {stop} never reached with step {step}");
    }
    let count = (span + 1.0 + 1e-9).floor() as usize;
    Ok((0..count).map(|k| start + k as f64 * step).collect())
}

/// Grid of non-negative integer indices (photon-number sequences).
pub fn parse_index_grid(text: &str) -> Result<Vec<usize>> {
    let values = parse_grid(text)?;
    values
        .into_iter()
        .map(|v| {
            let rounded = v.round();
            if (v - rounded).abs() > 1e-9 || rounded < 0.0 {
                bail!("index grid entry {v} is not a non-negative integer");
            }
            Ok(rounded as usize)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_forms() {
        assert_eq!(parse_scalar("1.5").unwrap(), 1.5);
        assert_eq!(parse_scalar("pi").unwrap(), PI);
        assert_eq!(parse_scalar("pi/2").unwrap(), PI / 2.0);
        assert_eq!(parse_scalar("3pi/4").unwrap(), 3.0 * PI / 4.0);
        assert_eq!(parse_scalar("-pi/8").unwrap(), -PI / 8.0);
        assert_eq!(parse_scalar("0.5pi").unwrap(), 0.5 * PI);
        assert!(parse_scalar("2x").is_err());
        assert!(parse_scalar("pi/0").is_err());
        assert!(parse_scalar("").is_err());
    }

    #[test]
    fn complex_forms() {
        let z = parse_complex("1").unwrap();
        assert_eq!((z.re, z.im), (1.0, 0.0));
        let z = parse_complex("0.3,-0.4").unwrap();
        assert_eq!((z.re, z.im), (0.3, -0.4));
        assert!(parse_complex("1,2,3").is_err());
    }

    #[test]
    fn grid_forms() {
        assert_eq!(parse_grid("0:30:0.1").unwrap().len(), 301);
        assert_eq!(parse_grid("-1:-0.732:0.001").unwrap().len(), 269);
        assert_eq!(parse_grid("0:20").unwrap().len(), 21);
        assert_eq!(parse_grid("0,1.5,2.5,3").unwrap(), vec![0.0, 1.5, 2.5, 3.0]);
        assert_eq!(parse_grid("1.25").unwrap(), vec![1.25]);
        assert_eq!(
            parse_grid("0:pi:pi/2").unwrap(),
            vec![0.0, PI / 2.0, PI]
        );
        assert!(parse_grid("0:1:0").is_err());
        assert!(parse_grid("1:0:0.5").is_err());
    }

    #[test]
    fn index_grids() {
        assert_eq!(parse_index_grid("0:4").unwrap(), vec![0, 1, 2, 3, 4]);
        assert_eq!(parse_index_grid("2,5,9").unwrap(), vec![2, 5, 9]);
        assert!(parse_index_grid("0.5,1").is_err());
        assert!(parse_index_grid("-2:3").is_err());
    }
}
