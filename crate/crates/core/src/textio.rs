//! Text formats for messages and codewords: decimal canonical integers
//! separated by whitespace, one symbol per line on output, `?` for an erased
//! symbol. Grid codewords print `n1` lines of `n2` symbols.

use crate::error::{Error, Result};
use crate::gf::{Field, FieldElement};

pub const ERASURE: &str = "?";

/// Symbols with erasures.
pub fn parse_received(field: &Field, text: &str) -> Result<Vec<Option<FieldElement>>> {
    text.split_whitespace()
        .map(|token| {
            if token == ERASURE {
                return Ok(None);
            }
            let value: u64 = token
                .parse()
                .map_err(|_| Error::InvalidParameters(format!("bad symbol {token:?}")))?;
            field.element(value).map(Some)
        })
        .collect()
}

/// Symbols without erasures.
pub fn parse_symbols(field: &Field, text: &str) -> Result<Vec<FieldElement>> {
    parse_received(field, text)?
        .into_iter()
        .map(|s| s.ok_or_else(|| Error::InvalidParameters("unexpected erasure".into())))
        .collect()
}

pub fn format_symbols(symbols: &[FieldElement]) -> String {
    symbols.iter().map(|a| format!("{}\n", a.value())).collect()
}

pub fn format_received(symbols: &[Option<FieldElement>]) -> String {
    symbols
        .iter()
        .map(|a| match a {
            Some(a) => format!("{}\n", a.value()),
            None => format!("{ERASURE}\n"),
        })
        .collect()
}

/// Row-major symbols as lines of `width` space-separated values.
pub fn format_grid(symbols: &[FieldElement], width: usize) -> String {
    symbols
        .chunks(width)
        .map(|row| {
            let cells: Vec<String> = row.iter().map(|a| a.value().to_string()).collect();
            cells.join(" ") + "\n"
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips() {
        let f = Field::prime(13).unwrap();
        let text = "4\n?\n 12 0\n";
        let got = parse_received(&f, text).unwrap();
        assert_eq!(got.len(), 4);
        assert_eq!(got[1], None);
        assert_eq!(format_received(&got), "4\n?\n12\n0\n");
        assert!(parse_received(&f, "13").is_err());
        assert!(parse_received(&f, "x").is_err());
        assert!(parse_symbols(&f, "1 ?").is_err());
        let row = parse_symbols(&f, "1 2 3 4").unwrap();
        assert_eq!(format_grid(&row, 2), "1 2\n3 4\n");
        assert_eq!(format_symbols(&row[..2]), "1\n2\n");
    }
}
