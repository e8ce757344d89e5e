//! Text syntax for symbols and harmonic functions.
//!
//! ```text
//! symbol   := "identity"
//!           | "dilation" "s=" complex
//!           | "rotation" "theta=" real
//!           | "automorphism" "a=" complex
//!           | "blaschke" "zeros=" list ["theta=" real]
//!           | "poly" "coeffs=" list
//!           | "power" "n=" int "(" symbol ")"
//!           | "compose" "(" symbol ")" "(" symbol ")"
//! function := "znbar" "n=" int
//!           | "harmonic" "h=" list ["g=" list]
//!           | "logpole" ["zeta=" complex]
//!           | "const" "c=" complex
//! list     := "[" [complex ("," complex)*] "]"
//! complex  := real | real "i" | real ("+"|"-") real "i"
//! ```
//!
//! `harmonic h=[..] g=[..]` lists power-series coefficients of the analytic
//! and co-analytic parts.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_complex::Complex64;

use crate::analytic::AnalyticMap;
use crate::error::{Error, Result};
use crate::harmonic::HarmonicFunction;
use crate::symbol::SymbolSpec;

fn err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

/// Parses `0.5`, `-2i`, `i`, `0.3-0.2i`, `1e-3+4e-1i`.
pub fn parse_complex(text: &str) -> Result<Complex64> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(err("empty number"));
    }
    let real = |t: &str| -> Result<f64> {
        t.parse::<f64>().map_err(|_| err(format!("bad number '{t}' in '{text}'")))
    };
    let Some(body) = s.strip_suffix('i') else {
        return Ok(Complex64::new(real(&s)?, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let imag = |t: &str| -> Result<f64> {
        match t {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => real(t),
        }
    };
    match split {
        Some(k) => Ok(Complex64::new(real(&body[..k])?, imag(&body[k..])?)),
        None => Ok(Complex64::new(0.0, imag(body)?)),
    }
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Self { src, pos: 0 }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let r = self.rest();
        self.pos += r.len() - r.trim_start().len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            Err(err(format!("expected '{c}' at '{}'", self.rest())))
        }
    }

    fn word(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let r = self.rest();
        let len = r
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
            .unwrap_or(r.len());
        if len == 0 {
            return Err(err(format!("expected a name at '{r}'")));
        }
        self.pos += len;
        Ok(&r[..len])
    }

    /// `key=value` pairs up to the next `(` or the end.
    fn params(&mut self) -> Result<BTreeMap<&'a str, &'a str>> {
        let mut out = BTreeMap::new();
        while matches!(self.peek(), Some(c) if c.is_ascii_alphabetic()) {
            let key = self.word()?;
            self.expect('=')?;
            self.skip_ws();
            let r = self.rest();
            let len = if r.starts_with('[') {
                r.find(']').map(|k| k + 1).ok_or_else(|| err(format!("unclosed list at '{r}'")))?
            } else {
                r.find(|c: char| c.is_whitespace() || c == '(' || c == ')').unwrap_or(r.len())
            };
            if out.insert(key, &r[..len]).is_some() {
                return Err(err(format!("duplicate parameter '{key}'")));
            }
            self.pos += len;
        }
        Ok(out)
    }

    fn finish(&mut self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(_) => Err(err(format!("unexpected trailing input '{}'", self.rest()))),
        }
    }
}

fn parse_list(text: &str) -> Result<Vec<Complex64>> {
    let inner = text
        .trim()
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| err(format!("expected a list, got '{text}'")))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner.split(',').map(parse_complex).collect()
}

fn parse_real(text: &str) -> Result<f64> {
    text.parse::<f64>().map_err(|_| err(format!("bad real '{text}'")))
}

fn parse_count(text: &str) -> Result<u32> {
    text.parse::<u32>().map_err(|_| err(format!("bad integer '{text}'")))
}

struct Params<'a> {
    family: &'a str,
    map: BTreeMap<&'a str, &'a str>,
}

impl<'a> Params<'a> {
    fn required(&mut self, key: &str) -> Result<&'a str> {
        self.map
            .remove(key)
            .ok_or_else(|| err(format!("{} needs parameter '{key}'", self.family)))
    }

    fn optional(&mut self, key: &str) -> Option<&'a str> {
        self.map.remove(key)
    }

    fn done(self) -> Result<()> {
        match self.map.keys().next() {
            None => Ok(()),
            Some(k) => Err(err(format!("{} has no parameter '{k}'", self.family))),
        }
    }
}

fn symbol(cur: &mut Cursor<'_>) -> Result<SymbolSpec> {
    let family = cur.word()?;
    let mut p = Params { family, map: cur.params()? };
    let spec = match family {
        "identity" => SymbolSpec::Identity,
        "dilation" => SymbolSpec::Dilation { s: parse_complex(p.required("s")?)? },
        "rotation" => SymbolSpec::Rotation { theta: parse_real(p.required("theta")?)? },
        "automorphism" => SymbolSpec::Automorphism { a: parse_complex(p.required("a")?)? },
        "blaschke" => SymbolSpec::Blaschke {
            zeros: parse_list(p.required("zeros")?)?,
            theta: p.optional("theta").map(parse_real).transpose()?.unwrap_or(0.0),
        },
        "poly" => SymbolSpec::Polynomial { coeffs: parse_list(p.required("coeffs")?)? },
        "power" => {
            let n = parse_count(p.required("n")?)?;
            SymbolSpec::Power { base: Box::new(nested(cur)?), n }
        }
        "compose" => {
            let outer = nested(cur)?;
            let inner = nested(cur)?;
            SymbolSpec::Compose { outer: Box::new(outer), inner: Box::new(inner) }
        }
        other => return Err(err(format!("unknown symbol family '{other}'"))),
    };
    p.done()?;
    Ok(spec)
}

fn nested(cur: &mut Cursor<'_>) -> Result<SymbolSpec> {
    cur.expect('(')?;
    let s = symbol(cur)?;
    cur.expect(')')?;
    Ok(s)
}

impl FromStr for SymbolSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut cur = Cursor::new(s);
        let spec = symbol(&mut cur)?;
        cur.finish()?;
        Ok(spec)
    }
}

/// Parses a harmonic function in the `function` syntax.
pub fn parse_function(text: &str) -> Result<HarmonicFunction> {
    let mut cur = Cursor::new(text);
    let family = cur.word()?;
    let mut p = Params { family, map: cur.params()? };
    let f = match family {
        "znbar" => {
            let n = parse_count(p.required("n")?)?;
            if n == 0 {
                return Err(err("znbar needs n >= 1"));
            }
            HarmonicFunction::znbar(n)
        }
        "harmonic" => {
            let h = parse_list(p.required("h")?)?;
            let g = p.optional("g").map(parse_list).transpose()?.unwrap_or_default();
            HarmonicFunction::new(AnalyticMap::Polynomial(h), AnalyticMap::Polynomial(g))
        }
        "logpole" => {
            let zeta = match p.optional("zeta") {
                Some(t) => parse_complex(t)?,
                None => Complex64::new(1.0, 0.0),
            };
            if (zeta.norm() - 1.0).abs() > 1e-12 {
                return Err(Error::ParameterDomain("logpole needs |zeta| = 1".into()));
            }
            HarmonicFunction::analytic(AnalyticMap::LogPole(zeta))
        }
        "const" => HarmonicFunction::constant(parse_complex(p.required("c")?)?),
        other => return Err(err(format!("unknown function family '{other}'"))),
    };
    p.done()?;
    cur.finish()?;
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn complex_forms() {
        assert_eq!(parse_complex("0.5").unwrap(), c(0.5, 0.0));
        assert_eq!(parse_complex("-0.5i").unwrap(), c(0.0, -0.5));
        assert_eq!(parse_complex("0.5+0i").unwrap(), c(0.5, 0.0));
        assert_eq!(parse_complex("0.3-0.2i").unwrap(), c(0.3, -0.2));
        assert_eq!(parse_complex("i").unwrap(), c(0.0, 1.0));
        assert_eq!(parse_complex("-i").unwrap(), c(0.0, -1.0));
        assert_eq!(parse_complex("1e-3+4e-1i").unwrap(), c(1e-3, 0.4));
        assert_eq!(parse_complex("-2e-3-1e+2i").unwrap(), c(-2e-3, -100.0));
        assert!(parse_complex("").is_err());
        assert!(parse_complex("abc").is_err());
    }

    #[test]
    fn documented_examples() {
        assert_eq!(
            "automorphism a=0.5+0i".parse::<SymbolSpec>().unwrap(),
            SymbolSpec::Automorphism { a: c(0.5, 0.0) }
        );
        assert_eq!(
            "dilation s=0.9".parse::<SymbolSpec>().unwrap(),
            SymbolSpec::Dilation { s: c(0.9, 0.0) }
        );
        assert_eq!(
            "blaschke zeros=[0.3, -0.5i]".parse::<SymbolSpec>().unwrap(),
            SymbolSpec::Blaschke { zeros: vec![c(0.3, 0.0), c(0.0, -0.5)], theta: 0.0 }
        );
        assert_eq!(
            "poly coeffs=[0, 0.5, 0.25]".parse::<SymbolSpec>().unwrap(),
            SymbolSpec::Polynomial { coeffs: vec![c(0.0, 0.0), c(0.5, 0.0), c(0.25, 0.0)] }
        );
        let nested = "compose (power n=3 (automorphism a=0.2-0.1i)) (dilation s=0.5)";
        let spec: SymbolSpec = nested.parse().unwrap();
        assert_eq!(spec.to_string(), nested);
    }

    #[test]
    fn errors() {
        assert!("spiral r=2".parse::<SymbolSpec>().is_err());
        assert!("dilation".parse::<SymbolSpec>().is_err());
        assert!("dilation s=0.5 t=1".parse::<SymbolSpec>().is_err());
        assert!("dilation s=0.5 extra".parse::<SymbolSpec>().is_err());
        assert!("power n=2 identity".parse::<SymbolSpec>().is_err());
        assert!("blaschke zeros=[0.1".parse::<SymbolSpec>().is_err());
    }

    #[test]
    fn functions() {
        use crate::disk::DiskPoint;
        let z = DiskPoint::new(c(0.3, 0.1)).unwrap();
        let f = parse_function("znbar n=2").unwrap();
        assert!((f.eval(&z) - c(0.16, 0.0)).norm() < 1e-15);
        let f = parse_function("harmonic h=[1, 1] g=[0, 1]").unwrap();
        assert!((f.eval(&z) - c(1.6, 0.0)).norm() < 1e-15);
        let f = parse_function("logpole").unwrap();
        assert!((f.eval(&z) + (c(1.0, 0.0) - z.value()).ln()).norm() < 1e-15);
        assert!(parse_function("logpole zeta=0.5").is_err());
        assert!(parse_function("znbar n=0").is_err());
        assert_eq!(parse_function("const c=2i").unwrap().eval(&z), c(0.0, 2.0));
    }

    fn leaf() -> impl Strategy<Value = SymbolSpec> {
        let cx = (-0.9f64..0.9, -0.4f64..0.4).prop_map(|(a, b)| c(a, b));
        prop_oneof![
            Just(SymbolSpec::Identity),
            cx.clone().prop_map(|s| SymbolSpec::Dilation { s }),
            (-3.0f64..3.0).prop_map(|theta| SymbolSpec::Rotation { theta }),
            cx.clone().prop_map(|a| SymbolSpec::Automorphism { a }),
            (prop::collection::vec(cx.clone(), 1..4), -3.0f64..3.0)
                .prop_map(|(zeros, theta)| SymbolSpec::Blaschke { zeros, theta }),
            prop::collection::vec(cx, 0..5).prop_map(|coeffs| SymbolSpec::Polynomial { coeffs }),
        ]
    }

    fn spec() -> impl Strategy<Value = SymbolSpec> {
        leaf().prop_recursive(3, 12, 2, |inner| {
            prop_oneof![
                (inner.clone(), 1u32..50).prop_map(|(b, n)| SymbolSpec::Power { base: Box::new(b), n }),
                (inner.clone(), inner).prop_map(|(o, i)| SymbolSpec::Compose {
                    outer: Box::new(o),
                    inner: Box::new(i)
                }),
            ]
        })
    }

    proptest! {
        #[test]
        fn display_round_trips(s in spec()) {
            let text = s.to_string();
            prop_assert_eq!(text.parse::<SymbolSpec>().unwrap(), s);
        }
    }
}
