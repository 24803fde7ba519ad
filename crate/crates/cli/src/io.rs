//! Line-oriented file formats: quartic batches, Ciani polynomials, run headers.

use std::fmt::Write as _;
use std::path::Path;

use anyhow::{bail, Context, Result};
use luroth::covariants::forms::monomials;
use luroth::exactalg::{DensePoly, Field};
use luroth::TernaryQuartic;

/// Provenance written as `# key value` comments at the top of every output.
#[derive(Clone, Debug)]
pub struct Header {
    pub command_line: String,
    pub seed: Option<u64>,
    pub field: String,
    pub extra: Vec<(String, String)>,
}

impl Header {
    pub fn new(seed: Option<u64>, field: String) -> Self {
        let args: Vec<String> = std::env::args().skip(1).collect();
        Header { command_line: format!("luroth {}", args.join(" ")), seed, field, extra: Vec::new() }
    }

    pub fn with(mut self, key: &str, value: impl ToString) -> Self {
        self.extra.push((key.to_string(), value.to_string()));
        self
    }

    pub fn lines(&self) -> Vec<String> {
        let mut out = vec![
            format!("tool luroth {}", env!("CARGO_PKG_VERSION")),
            format!("command {}", self.command_line),
            format!("seed {}", self.seed.map_or("none".to_string(), |s| s.to_string())),
            format!("prime {}", self.field),
        ];
        out.extend(self.extra.iter().map(|(k, v)| format!("{k} {v}")));
        out
    }

    pub fn render(&self) -> String {
        self.lines().iter().map(|l| format!("# {l}\n")).collect()
    }
}

pub fn write_output(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn monomial_names() -> String {
    monomials(4)
        .iter()
        .map(|e| {
            let mut s = String::new();
            for (v, &n) in ["x", "y", "z"].iter().zip(e) {
                match n {
                    0 => {}
                    1 => s.push_str(v),
                    _ => {
                        let _ = write!(s, "{v}^{n}");
                    }
                }
            }
            s
        })
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn quartics_to_text<K: Field>(k: &K, header: &Header, quartics: &[TernaryQuartic<K::Elem>]) -> String {
    let mut s = header.render();
    let _ = writeln!(s, "# count {}", quartics.len());
    let _ = writeln!(s, "# monomials {}", monomial_names());
    for f in quartics {
        let line: Vec<String> = f.coeffs().iter().map(|c| k.format(c)).collect();
        let _ = writeln!(s, "{}", line.join(" "));
    }
    s
}

/// Value of a `# key value` header comment, if present.
pub fn header_value<'a>(text: &'a str, key: &str) -> Option<&'a str> {
    text.lines()
        .map_while(|l| l.trim().strip_prefix('#'))
        .find_map(|l| l.trim().strip_prefix(key).filter(|r| r.starts_with(' ')).map(str::trim))
}

/// Parses a quartic batch; errors name the offending line.
pub fn quartics_from_text<K: Field>(k: &K, text: &str) -> Result<Vec<TernaryQuartic<K::Elem>>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let words: Vec<&str> = line.split_whitespace().collect();
        if words.len() != 15 {
            bail!("line {}: expected 15 coefficients, found {}", i + 1, words.len());
        }
        let coeffs = words
            .iter()
            .map(|w| k.parse(w).map_err(|e| anyhow::anyhow!("line {}: {e}", i + 1)))
            .collect::<Result<Vec<_>>>()?;
        out.push(TernaryQuartic::from_coeffs(4, coeffs)?);
    }
    Ok(out)
}

pub fn poly_to_text<K: Field>(k: &K, header: &Header, vars: &[&str], p: &DensePoly<K::Elem>) -> String {
    let mut s = header.render();
    let _ = writeln!(s, "variables {}", vars.join(" "));
    let _ = writeln!(s, "support {}", p.num_terms());
    for (e, c) in p.terms() {
        let exps: Vec<String> = e.iter().map(u32::to_string).collect();
        let _ = writeln!(s, "{} {}", exps.join(" "), k.format(c));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use luroth::PrimeField;

    #[test]
    fn quartic_round_trip_and_line_numbers() {
        let k = PrimeField::new(2017).unwrap();
        let f = TernaryQuartic::from_coeffs(4, (0..15).map(|i| i as u64).collect()).unwrap();
        let h = Header { command_line: "luroth test".into(), seed: Some(3), field: "2017".into(), extra: vec![] };
        let text = quartics_to_text(&k, &h, &[f.clone(), f.clone()]);
        assert_eq!(quartics_from_text(&k, &text).unwrap(), vec![f.clone(), f]);
        assert_eq!(header_value(&text, "prime"), Some("2017"));
        assert_eq!(header_value(&text, "count"), Some("2"));
        let bad = format!("{text}1 2 3\n");
        let err = quartics_from_text(&k, &bad).unwrap_err().to_string();
        assert!(err.starts_with(&format!("line {}:", bad.lines().count())), "{err}");
    }

    #[test]
    fn monomial_header_order() {
        assert!(monomial_names().starts_with("x^4 x^3y x^3z x^2y^2 x^2yz"));
        assert!(monomial_names().ends_with("z^4"));
    }
}
