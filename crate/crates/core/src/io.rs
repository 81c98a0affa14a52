//! The line-oriented algebra file format.
//!
//! ```text
//! algebra <name>
//! size <n>
//! op <symbol> <arity>
//! <n^arity integers, row-major over argument tuples in lexicographic order>
//! ...
//! ```
//!
//! Constants are `op <symbol> 0` followed by one integer. Table entries may
//! wrap across lines; diagnostics carry 1-based line numbers.

use crate::algebra::FiniteAlgebra;
use crate::error::{Error, Result};
use crate::signature::Signature;

struct Cursor<'a> {
    tokens: Vec<(usize, &'a str)>,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        let tokens = text
            .lines()
            .enumerate()
            .flat_map(|(i, line)| line.split_whitespace().map(move |w| (i + 1, w)))
            .collect();
        Cursor { tokens, pos: 0 }
    }

    fn peek(&self) -> Option<(usize, &'a str)> {
        self.tokens.get(self.pos).copied()
    }

    fn next(&mut self, what: &str) -> Result<(usize, &'a str)> {
        match self.tokens.get(self.pos) {
            Some(&tok) => {
                self.pos += 1;
                Ok(tok)
            }
            None => {
                let line = self.tokens.last().map_or(1, |&(l, _)| l);
                Err(Error::AlgebraFile {
                    line,
                    msg: format!("unexpected end of file, expected {what}"),
                })
            }
        }
    }

    fn expect_keyword(&mut self, kw: &str) -> Result<usize> {
        let (line, tok) = self.next(&format!("`{kw}`"))?;
        if tok != kw {
            return Err(Error::AlgebraFile {
                line,
                msg: format!("expected `{kw}`, found `{tok}`"),
            });
        }
        Ok(line)
    }

    fn next_usize(&mut self, what: &str) -> Result<(usize, usize)> {
        let (line, tok) = self.next(what)?;
        tok.parse::<usize>()
            .map(|v| (line, v))
            .map_err(|_| Error::AlgebraFile {
                line,
                msg: format!("expected {what}, found `{tok}`"),
            })
    }
}

/// Parse one algebra file. The signature is implied by the `op` sections,
/// in file order.
pub fn parse_algebra(text: &str) -> Result<FiniteAlgebra> {
    let mut cur = Cursor::new(text);
    cur.expect_keyword("algebra")?;
    let (_, name) = cur.next("algebra name")?;
    cur.expect_keyword("size")?;
    let (size_line, size) = cur.next_usize("carrier size")?;
    if size == 0 {
        return Err(Error::AlgebraFile {
            line: size_line,
            msg: "size must be positive".into(),
        });
    }
    let mut symbols: Vec<(String, usize)> = Vec::new();
    let mut tables: Vec<Vec<usize>> = Vec::new();
    while cur.peek().is_some() {
        cur.expect_keyword("op")?;
        let (name_line, op_name) = cur.next("operation symbol")?;
        if symbols.iter().any(|(n, _)| n == op_name) {
            return Err(Error::AlgebraFile {
                line: name_line,
                msg: format!("duplicate operation `{op_name}`"),
            });
        }
        let (arity_line, arity) = cur.next_usize("arity")?;
        let rows = size.checked_pow(arity.try_into().map_err(|_| Error::AlgebraFile {
            line: arity_line,
            msg: "arity too large".into(),
        })?);
        let rows = rows.ok_or(Error::AlgebraFile {
            line: arity_line,
            msg: format!("table for `{op_name}` would overflow (size {size}, arity {arity})"),
        })?;
        let mut table = Vec::with_capacity(rows);
        for _ in 0..rows {
            let (line, v) = cur.next_usize(&format!("table entry for `{op_name}`"))?;
            if v >= size {
                return Err(Error::AlgebraFile {
                    line,
                    msg: format!("table entry {v} out of range for `{op_name}` (size {size})"),
                });
            }
            table.push(v);
        }
        symbols.push((op_name.to_string(), arity));
        tables.push(table);
    }
    let sig = Signature::new(symbols).map_err(|e| Error::AlgebraFile {
        line: 1,
        msg: e.to_string(),
    })?;
    Ok(FiniteAlgebra::new(name, sig, size, tables))
}

/// Emit an algebra in the file format (one table row block per operation).
pub fn format_algebra(alg: &FiniteAlgebra) -> String {
    let mut out = String::new();
    out.push_str(&format!("algebra {}\n", alg.name()));
    out.push_str(&format!("size {}\n", alg.size()));
    let sig = alg.signature();
    for sym in 0..sig.len() {
        out.push_str(&format!("op {} {}\n", sig.name(sym), sig.arity(sym)));
        let row: Vec<String> = alg.tables()[sym].iter().map(|v| v.to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn round_trips_fixtures() {
        for alg in [fixtures::b2(), fixtures::d3(), fixtures::d3min(), fixtures::s2()] {
            let text = format_algebra(&alg);
            let parsed = parse_algebra(&text).unwrap();
            assert_eq!(parsed, alg);
        }
    }

    #[test]
    fn reports_out_of_range_entry_with_line() {
        let text = "algebra bad\nsize 2\nop f 1\n0 2\n";
        match parse_algebra(text) {
            Err(Error::AlgebraFile { line, msg }) => {
                assert_eq!(line, 4);
                assert!(msg.contains("out of range"));
            }
            other => panic!("expected file error, got {other:?}"),
        }
    }

    #[test]
    fn reports_truncated_table() {
        let text = "algebra bad\nsize 2\nop f 2\n0 1 1\n";
        match parse_algebra(text) {
            Err(Error::AlgebraFile { line, .. }) => assert_eq!(line, 4),
            other => panic!("expected file error, got {other:?}"),
        }
    }

    #[test]
    fn rejects_duplicate_ops() {
        let text = "algebra bad\nsize 2\nop f 0\n0\nop f 0\n1\n";
        assert!(matches!(parse_algebra(text), Err(Error::AlgebraFile { line: 5, .. })));
    }

    #[test]
    fn table_entries_may_span_lines() {
        let text = "algebra ok\nsize 2\nop f 2\n0 1\n1 0\n";
        let alg = parse_algebra(text).unwrap();
        assert_eq!(alg.tables()[0], vec![0, 1, 1, 0]);
    }
}
