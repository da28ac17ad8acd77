//! The line-oriented `.voa` text format.
//!
//! ```text
//! # comment
//! name M(1)@2
//! charge 1
//! window 0 2
//! dims 1 1 2
//! vacuum 0 0
//! omega 2 1 1/2
//! p 1 0 1 1 0 -> 0 1
//! p 1 0 -1 1 0 -> 1 1
//! ```
//!
//! A product line `p wa ia k wb ib -> ic c [, ic c ...]` gives `a(k)b`, with
//! the output weight fixed by `wa + wb - k - 1`. `omega` lists components
//! `w i c` separated by commas and may be omitted when `ω = 0`.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{fmt_scalar, parse_scalar, Scalar};
use crate::voa::{GradedVector, ModeKey, TruncatedVoa, VoaData, WeightedIndex};

#[derive(Clone, Debug)]
struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokenize(line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        let sep = ch.is_whitespace() || ch == ',';
        match (start, sep) {
            (None, false) => start = Some(i),
            (Some(s), true) => {
                out.push(Token {
                    text: &line[s..i],
                    column: line[..s].chars().count() + 1,
                });
                start = None;
            }
            _ => {}
        }
        if ch == ',' {
            out.push(Token {
                text: &line[i..i + 1],
                column: line[..i].chars().count() + 1,
            });
        }
    }
    if let Some(s) = start {
        out.push(Token {
            text: &line[s..],
            column: line[..s].chars().count() + 1,
        });
    }
    out
}

struct Cursor<'a> {
    line: usize,
    tokens: Vec<Token<'a>>,
    pos: usize,
    end_column: usize,
}

impl<'a> Cursor<'a> {
    fn err(&self, column: usize, message: impl Into<String>) -> Error {
        Error::Syntax {
            line: self.line,
            column,
            message: message.into(),
        }
    }

    fn column(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end_column, |t| t.column)
    }

    fn next(&mut self, what: &str) -> Result<Token<'a>> {
        let t = self
            .tokens
            .get(self.pos)
            .cloned()
            .ok_or_else(|| self.err(self.end_column, format!("expected {what}")))?;
        self.pos += 1;
        Ok(t)
    }

    fn int<T: std::str::FromStr>(&mut self, what: &str) -> Result<T> {
        let t = self.next(what)?;
        t.text
            .parse()
            .map_err(|_| self.err(t.column, format!("expected {what}, found '{}'", t.text)))
    }

    fn scalar(&mut self) -> Result<Scalar> {
        let t = self.next("a rational p/q")?;
        parse_scalar(t.text).ok_or_else(|| self.err(t.column, format!("expected a rational p/q, found '{}'", t.text)))
    }

    fn expect(&mut self, text: &str) -> Result<()> {
        let t = self.next(&format!("'{text}'"))?;
        if t.text != text {
            return Err(self.err(t.column, format!("expected '{text}', found '{}'", t.text)));
        }
        Ok(())
    }

    fn at_end(&self) -> bool {
        self.pos >= self.tokens.len()
    }

    fn finish(&self) -> Result<()> {
        match self.tokens.get(self.pos) {
            None => Ok(()),
            Some(t) => Err(self.err(t.column, format!("unexpected '{}'", t.text))),
        }
    }

    /// Whether the next token is a comma; consumes it.
    fn comma(&mut self) -> bool {
        if self.tokens.get(self.pos).is_some_and(|t| t.text == ",") {
            self.pos += 1;
            true
        } else {
            false
        }
    }
}

#[derive(Default)]
struct Header {
    name: Option<String>,
    charge: Option<Scalar>,
    window: Option<(i32, i32)>,
    dims: Option<Vec<usize>>,
    vacuum: Option<WeightedIndex>,
    omega: Option<Vec<(WeightedIndex, Scalar)>>,
}

pub fn parse_voa(text: &str) -> Result<TruncatedVoa> {
    let mut h = Header::default();
    let mut products: Vec<(ModeKey, GradedVector)> = Vec::new();
    let mut seen = BTreeSet::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("");
        let tokens = tokenize(body);
        if tokens.is_empty() {
            continue;
        }
        let mut c = Cursor {
            line,
            tokens,
            pos: 1,
            end_column: body.trim_end().chars().count() + 1,
        };
        let keyword = c.tokens[0].clone();
        let duplicate = |set: bool| -> Result<()> {
            if set {
                Err(Error::Syntax {
                    line,
                    column: keyword.column,
                    message: format!("duplicate '{}' line", keyword.text),
                })
            } else {
                Ok(())
            }
        };
        match keyword.text {
            "name" => {
                duplicate(h.name.is_some())?;
                let start = c.column();
                let label = body.chars().skip(start - 1).collect::<String>();
                let label = label.trim();
                if label.is_empty() {
                    return Err(c.err(start, "expected a label"));
                }
                h.name = Some(label.to_string());
            }
            "charge" => {
                duplicate(h.charge.is_some())?;
                h.charge = Some(c.scalar()?);
                c.finish()?;
            }
            "window" => {
                duplicate(h.window.is_some())?;
                let lo: i32 = c.int("n_min")?;
                let hi: i32 = c.int("N")?;
                c.finish()?;
                h.window = Some((lo, hi));
            }
            "dims" => {
                duplicate(h.dims.is_some())?;
                let mut d = Vec::new();
                while !c.at_end() {
                    d.push(c.int("a dimension")?);
                }
                h.dims = Some(d);
            }
            "vacuum" => {
                duplicate(h.vacuum.is_some())?;
                let w = c.int("a weight")?;
                let i = c.int("an index")?;
                c.finish()?;
                h.vacuum = Some(WeightedIndex::new(w, i));
            }
            "omega" => {
                duplicate(h.omega.is_some())?;
                let mut comps = Vec::new();
                while !c.at_end() {
                    let w = c.int("a weight")?;
                    let i = c.int("an index")?;
                    comps.push((WeightedIndex::new(w, i), c.scalar()?));
                    if !c.comma() {
                        break;
                    }
                }
                c.finish()?;
                h.omega = Some(comps);
            }
            "p" => {
                let (lo, hi) = h
                    .window
                    .ok_or_else(|| c.err(keyword.column, "product line before 'window'"))?;
                let dims = h
                    .dims
                    .clone()
                    .ok_or_else(|| c.err(keyword.column, "product line before 'dims'"))?;
                let wa: i32 = c.int("a weight")?;
                let ia: usize = c.int("an index")?;
                let k: i32 = c.int("a mode index")?;
                let wb: i32 = c.int("a weight")?;
                let ib: usize = c.int("an index")?;
                c.expect("->")?;
                let mut outs = Vec::new();
                loop {
                    let ic: usize = c.int("an output index")?;
                    outs.push((ic, c.scalar()?));
                    if !c.comma() {
                        break;
                    }
                }
                c.finish()?;
                let entry = format!("p {wa} {ia} {k} {wb} {ib}");
                let semantic = |message: String| Error::Semantic {
                    line,
                    entry: entry.clone(),
                    message,
                };
                let dim = |w: i32| -> Option<usize> {
                    (lo..=hi)
                        .contains(&w)
                        .then(|| dims.get((w - lo) as usize).copied())
                        .flatten()
                };
                for (w, idx) in [(wa, ia), (wb, ib)] {
                    match dim(w) {
                        Some(d) if idx < d => {}
                        Some(d) => return Err(semantic(format!("index {idx} out of range at weight {w} (dim {d})"))),
                        None => return Err(semantic(format!("weight {w} outside the window [{lo}, {hi}]"))),
                    }
                }
                let wc = wa + wb - k - 1;
                let dc = dim(wc).ok_or_else(|| {
                    semantic(format!(
                        "output weight {wc} = {wa}+{wb}-{k}-1 outside the window [{lo}, {hi}]"
                    ))
                })?;
                let key = ModeKey {
                    a: WeightedIndex::new(wa, ia),
                    k,
                    b: WeightedIndex::new(wb, ib),
                };
                if !seen.insert(key) {
                    return Err(semantic("duplicate product entry".into()));
                }
                let mut out = GradedVector::zero();
                for (ic, x) in outs {
                    if ic >= dc {
                        return Err(semantic(format!(
                            "output index {ic} out of range at weight {wc} (dim {dc})"
                        )));
                    }
                    out.add_to(WeightedIndex::new(wc, ic), &x);
                }
                products.push((key, out));
            }
            other => {
                return Err(Error::Syntax {
                    line,
                    column: keyword.column,
                    message: format!("unknown keyword '{other}'"),
                })
            }
        }
    }
    let missing = |what: &str| Error::Input(format!("missing '{what}' line"));
    let (n_min, n_max) = h.window.ok_or_else(|| missing("window"))?;
    let omega = GradedVector::from_components(h.omega.unwrap_or_default());
    TruncatedVoa::new(VoaData {
        name: h.name.ok_or_else(|| missing("name"))?,
        n_min,
        n_max,
        dims: h.dims.ok_or_else(|| missing("dims"))?,
        vacuum: h.vacuum.ok_or_else(|| missing("vacuum"))?,
        omega,
        central_charge: h.charge.ok_or_else(|| missing("charge"))?,
        products,
    })
}

fn fmt_components<'a>(it: impl Iterator<Item = (&'a WeightedIndex, &'a Scalar)>, with_weight: bool) -> String {
    let parts: Vec<String> = it
        .filter(|(_, x)| !x.is_zero())
        .map(|(w, x)| {
            if with_weight {
                format!("{} {} {}", w.weight, w.index, fmt_scalar(x))
            } else {
                format!("{} {}", w.index, fmt_scalar(x))
            }
        })
        .collect();
    parts.join(", ")
}

/// Canonical text: header in fixed order, then products sorted by `(a, k, b)`.
pub fn serialize_voa(v: &TruncatedVoa) -> String {
    let mut s = String::new();
    let dims: Vec<String> = v.dims().iter().map(usize::to_string).collect();
    let _ = writeln!(s, "name {}", v.name());
    let _ = writeln!(s, "charge {}", fmt_scalar(v.central_charge()));
    let _ = writeln!(s, "window {} {}", v.n_min(), v.n_max());
    let _ = writeln!(s, "dims {}", dims.join(" "));
    let _ = writeln!(s, "vacuum {} {}", v.vacuum().weight, v.vacuum().index);
    if !v.omega().is_zero() {
        let _ = writeln!(s, "omega {}", fmt_components(v.omega().iter(), true));
    }
    for (key, out) in v.products() {
        let _ = writeln!(
            s,
            "p {} {} {} {} {} -> {}",
            key.a.weight,
            key.a.index,
            key.k,
            key.b.weight,
            key.b.index,
            fmt_components(out.iter(), false)
        );
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    const UNIT: &str = "name Q\ncharge 0\nwindow 0 0\ndims 1\nvacuum 0 0\np 0 0 -1 0 0 -> 0 1\n";

    #[test]
    fn one_dimensional_round_trip() {
        let v = parse_voa(UNIT).unwrap();
        assert_eq!(v.total_dim(), 1);
        assert_eq!(serialize_voa(&v), UNIT);
    }

    #[test]
    fn comments_and_blank_lines() {
        let text = format!("# header\n\n{}  # trailing\n", UNIT.trim_end());
        assert_eq!(parse_voa(&text).unwrap(), parse_voa(UNIT).unwrap());
    }

    #[test]
    fn output_weight_outside_window() {
        let text = UNIT.replace("p 0 0 -1", "p 0 0 -2");
        match parse_voa(&text) {
            Err(Error::Semantic { line, message, .. }) => {
                assert_eq!(line, 6);
                assert!(message.contains("output weight 1"), "{message}");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn syntax_errors_carry_columns() {
        match parse_voa("name x\ncharge 1/x\n") {
            Err(Error::Syntax { line: 2, column: 8, .. }) => {}
            other => panic!("{other:?}"),
        }
        match parse_voa("name x\nwindow 0\n") {
            Err(Error::Syntax { line: 2, column: 9, .. }) => {}
            other => panic!("{other:?}"),
        }
        match parse_voa("bogus\n") {
            Err(Error::Syntax { line: 1, column: 1, .. }) => {}
            other => panic!("{other:?}"),
        }
    }
}
