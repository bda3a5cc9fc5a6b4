//! Chirotope lines and witness files.

use std::fmt::Write as _;

use anyhow::{bail, Context, Result};
use omreal_core::polysys::parse_rational;
use omreal_core::{Chirotope, Realization};
use sha2::{Digest, Sha256};

/// `n r signstring`, whitespace separated. Length and alphabet are always
/// checked; the exchange axiom only with `validate`.
pub fn parse_chirotope_line(text: &str, validate: bool) -> Result<Chirotope> {
    let fields: Vec<&str> = text.split_whitespace().collect();
    let [n, r, signs] = fields[..] else {
        bail!("expected `n r signs`, got {text:?}");
    };
    let n: usize = n.parse().with_context(|| format!("bad n {n:?}"))?;
    let r: usize = r.parse().with_context(|| format!("bad r {r:?}"))?;
    let chi = Chirotope::from_sign_str(n, r, signs)?;
    if validate {
        let check = chi.check_axioms();
        if !check.is_valid() {
            bail!("not a chirotope: {check}");
        }
    }
    Ok(chi)
}

/// Non-empty lines that are not `#` comments.
pub fn parse_chirotope_lines(text: &str, validate: bool) -> Result<Vec<Chirotope>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|(k, l)| parse_chirotope_line(l, validate).with_context(|| format!("line {}", k + 1)))
        .collect()
}

/// `r` lines of `n` space-separated rationals.
pub fn witness_text(v: &Realization) -> String {
    let mut out = String::new();
    for row in v.rows() {
        let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
        writeln!(out, "{}", cells.join(" ")).expect("writing to a string");
    }
    out
}

pub fn parse_witness(text: &str) -> Result<Realization> {
    let rows = text
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| l.split_whitespace().map(parse_rational).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Realization::from_rows(rows)?)
}

/// Stable witness file name for a store key.
pub fn witness_name(key: &str) -> String {
    let digest = Sha256::digest(key.as_bytes());
    let hex: String = digest.iter().take(12).map(|b| format!("{b:02x}")).collect();
    format!("{hex}.txt")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chirotope_lines() {
        assert_eq!(parse_chirotope_line("3 3 +", true).unwrap(), Chirotope::all_plus(3, 3).unwrap());
        assert_eq!(
            parse_chirotope_line("5 3 ++++++++++", false).unwrap(),
            Chirotope::all_plus(5, 3).unwrap()
        );
        let err = parse_chirotope_line("4 3 +++", false).unwrap_err();
        assert!(format!("{err:#}").contains("expected 4"), "{err:#}");
        assert!(parse_chirotope_line("3 3 x", false).is_err());
        assert!(parse_chirotope_line("3 3", false).is_err());
    }

    #[test]
    fn identity_witness_round_trip() {
        let v = Realization::from_integer_rows(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        let text = witness_text(&v);
        assert_eq!(text, "1 0 0\n0 1 0\n0 0 1\n");
        assert_eq!(parse_witness(&text).unwrap(), v);
        assert!(parse_witness("1 0\n0").is_err());
    }
}
