//! Flat `key = value` parameter files. Complex numbers are written `re,im`;
//! `#` starts a comment. Keys not present keep their defaults.
//!
//! ```text
//! z1 = 0.4045,0.2939
//! w2 = -0.25,0
//! lambda = auto
//! eps = 1e-40
//! ```

use std::collections::HashSet;

use super::{ConfigError, ParamsInput, C64, RHO_PROFILE};

fn parse_real(s: &str) -> Result<f64, String> {
    let v: f64 = s
        .trim()
        .parse()
        .map_err(|_| format!("`{s}` is not a number"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("`{s}` is not finite"))
    }
}

fn parse_complex(s: &str) -> Result<C64, String> {
    let (re, im) = s
        .split_once(',')
        .ok_or_else(|| format!("`{s}` is not of the form re,im"))?;
    Ok(C64::new(parse_real(re)?, parse_real(im)?))
}

fn parse_optional(s: &str) -> Result<Option<f64>, String> {
    if s.trim() == "auto" {
        Ok(None)
    } else {
        parse_real(s).map(Some)
    }
}

fn index(key: &str, prefix: char, max: usize) -> Option<usize> {
    let rest = key.strip_prefix(prefix)?;
    let i: usize = rest.parse().ok()?;
    (1..=max).contains(&i).then_some(i)
}

pub fn parse_params(text: &str) -> Result<ParamsInput, ConfigError> {
    let mut out = ParamsInput::default();
    let mut seen = HashSet::new();
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let err = |msg: String| ConfigError::ParamsFile { line, msg };
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content
            .split_once('=')
            .ok_or_else(|| err(format!("expected `key = value`, got `{content}`")))?;
        let key = key.trim();
        let value = value.trim();
        if !seen.insert(key.to_string()) {
            return Err(err(format!("duplicate key `{key}`")));
        }
        if let Some(i) = index(key, 'z', 11) {
            let z = parse_complex(value).map_err(err)?;
            if i == 11 {
                if z != C64::new(0.0, 0.0) {
                    return Err(err("z11 is fixed at the origin".into()));
                }
            } else {
                out.z[i - 1] = z;
            }
            continue;
        }
        if let Some(k) = index(key, 'w', 3) {
            out.w[k - 1] = parse_complex(value).map_err(err)?;
            continue;
        }
        match key {
            "lambda" => out.lambda = parse_optional(value).map_err(err)?,
            "eps" => out.eps = parse_optional(value).map_err(err)?,
            "c" => out.c = parse_optional(value).map_err(err)?,
            "rho_profile" => {
                if value != RHO_PROFILE {
                    return Err(err(format!(
                        "unknown rho_profile `{value}`; only `{RHO_PROFILE}` is supported"
                    )));
                }
            }
            _ => return Err(err(format!("unknown key `{key}`"))),
        }
    }
    Ok(out)
}

pub fn format_params(p: &ParamsInput) -> String {
    let opt = |v: Option<f64>| v.map_or("auto".to_string(), |x| format!("{x:e}"));
    let mut s = String::new();
    for (i, z) in p.z.iter().enumerate() {
        s += &format!("z{} = {:?},{:?}\n", i + 1, z.re, z.im);
    }
    s += "z11 = 0,0\n";
    for (k, w) in p.w.iter().enumerate() {
        s += &format!("w{} = {:?},{:?}\n", k + 1, w.re, w.im);
    }
    s += &format!(
        "lambda = {}\neps = {}\nc = {}\nrho_profile = {RHO_PROFILE}\n",
        opt(p.lambda),
        opt(p.eps),
        opt(p.c)
    );
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_round_trip() {
        let mut p = ParamsInput::default();
        p.lambda = Some(0.003);
        let back = parse_params(&format_params(&p)).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn overrides_and_comments() {
        let p = parse_params("# points\nz3 = 0.1, -0.2  # moved\n\nlambda = 0.01\neps = auto\n")
            .unwrap();
        assert_eq!(p.z[2], C64::new(0.1, -0.2));
        assert_eq!(p.lambda, Some(0.01));
        assert_eq!(p.eps, None);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let cases = [
            ("z1 = 1,2\nfoo = 3\n", 2),
            ("\n\nz2 = 0.1\n", 3),
            ("lambda = x\n", 1),
            ("w1 = 0,0.1\nw1 = 0,0.2\n", 2),
            ("z11 = 0.1,0\n", 1),
            ("just text\n", 1),
            ("rho_profile = cosine\n", 1),
        ];
        for (text, want) in cases {
            match parse_params(text) {
                Err(ConfigError::ParamsFile { line, .. }) => assert_eq!(line, want, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }
}
