//! Loader for the checked-in table of generating functions and asymptotic
//! constants (`table1.txt`). The table is data, not code, so transcription
//! stays auditable line by line; every entry is cross-checked against the
//! enumeration oracle by the verification suite.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use super::moments::SlopeMode;
use super::parse::parse_xq;
use super::GfError;
use crate::perm::Pattern;
use crate::series::{Rat, XqPoly};

pub const BUILTIN_TABLE: &str = include_str!("table1.txt");

/// One row of the table: the patterns sharing a generating function, the
/// function itself, and the two asymptotic constants.
#[derive(Clone, Debug)]
pub struct Table1Row {
    pub key: String,
    pub patterns: Vec<Pattern>,
    pub gf: RowGf,
    pub e: ConstSpec,
    pub var: ConstSpec,
}

#[derive(Clone, Debug)]
pub enum RowGf {
    Rational {
        num: XqPoly,
        den: XqPoly,
    },
    /// The algebraic Motzkin closed form, constructed in code.
    Motzkin,
}

#[derive(Clone, Debug)]
pub struct ConstSpec {
    pub mode: SlopeMode,
    pub expr: ConstExpr,
}

#[derive(Clone, Debug)]
pub enum ConstExpr {
    Rational(Rat),
    /// `c0 + c1·√k`
    SqrtForm {
        k: u64,
        c0: Rat,
        c1: Rat,
    },
    /// `value(α)/den` where α is the smallest-magnitude root of `poly`.
    RootForm {
        poly: Vec<BigInt>,
        value: Vec<BigInt>,
        den: BigInt,
    },
}

#[derive(Clone, Debug)]
pub struct CatalogData {
    pub rows: Vec<Table1Row>,
    constants: Vec<(String, ConstSpec)>,
}

impl CatalogData {
    pub fn row(&self, key: &str) -> Option<&Table1Row> {
        self.rows.iter().find(|r| r.key == key)
    }

    /// Lookup by constant name: `thm_*` entries from the table, plus
    /// `tbl_<row>_E` / `tbl_<row>_Var` derived from the rows.
    pub fn constant(&self, name: &str) -> Option<&ConstSpec> {
        self.constants
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, c)| c)
    }

    pub fn constant_names(&self) -> Vec<&str> {
        self.constants.iter().map(|(n, _)| n.as_str()).collect()
    }
}

pub fn parse_catalog_data(src: &str) -> Result<CatalogData, GfError> {
    struct RowBuilder {
        key: String,
        patterns: Vec<Pattern>,
        num: Option<XqPoly>,
        den: Option<XqPoly>,
        motzkin: bool,
        e: Option<ConstSpec>,
        var: Option<ConstSpec>,
        line: usize,
    }

    fn flush(b: RowBuilder, rows: &mut Vec<Table1Row>) -> Result<(), GfError> {
        let gf = match (b.motzkin, b.num, b.den) {
            (true, None, None) => RowGf::Motzkin,
            (false, Some(num), Some(den)) => RowGf::Rational { num, den },
            _ => {
                return Err(data_err(
                    b.line,
                    "row needs either `gf h3412` or both num and den",
                ));
            }
        };
        if b.patterns.is_empty() {
            return Err(data_err(b.line, "row without patterns"));
        }
        rows.push(Table1Row {
            key: b.key,
            patterns: b.patterns,
            gf,
            e: b.e
                .ok_or_else(|| data_err(b.line, "row without `e` constant"))?,
            var: b
                .var
                .ok_or_else(|| data_err(b.line, "row without `var` constant"))?,
        });
        Ok(())
    }

    let mut rows = Vec::new();
    let mut constants: Vec<(String, ConstSpec)> = Vec::new();
    let mut current: Option<RowBuilder> = None;

    for (idx, raw) in src.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (kw, rest) = split_keyword(line);
        match kw {
            "row" => {
                if let Some(b) = current.take() {
                    flush(b, &mut rows)?;
                }
                current = Some(RowBuilder {
                    key: rest.trim().to_string(),
                    patterns: Vec::new(),
                    num: None,
                    den: None,
                    motzkin: false,
                    e: None,
                    var: None,
                    line: lineno,
                });
            }
            "patterns" | "num" | "den" | "gf" | "e" | "var" => {
                let b = current
                    .as_mut()
                    .ok_or_else(|| data_err(lineno, "field outside a row"))?;
                match kw {
                    "patterns" => {
                        for tok in rest.split_whitespace() {
                            let p: Pattern =
                                tok.parse().map_err(|_| data_err(lineno, "bad pattern"))?;
                            b.patterns.push(p);
                        }
                    }
                    "num" => {
                        b.num = Some(parse_xq(rest).map_err(|e| data_err(lineno, &e))?);
                    }
                    "den" => {
                        b.den = Some(parse_xq(rest).map_err(|e| data_err(lineno, &e))?);
                    }
                    "gf" => {
                        if rest.trim() != "h3412" {
                            return Err(data_err(lineno, "unknown gf keyword"));
                        }
                        b.motzkin = true;
                    }
                    "e" => b.e = Some(parse_const_spec(rest, lineno)?),
                    "var" => b.var = Some(parse_const_spec(rest, lineno)?),
                    _ => unreachable!(),
                }
            }
            "const" => {
                let (name, spec_text) = split_keyword(rest);
                if name.is_empty() {
                    return Err(data_err(lineno, "const without a name"));
                }
                constants.push((name.to_string(), parse_const_spec(spec_text, lineno)?));
            }
            other => {
                return Err(data_err(lineno, &format!("unknown keyword `{other}`")));
            }
        }
    }
    if let Some(b) = current.take() {
        flush(b, &mut rows)?;
    }

    for row in &rows {
        constants.push((format!("tbl_{}_E", row.key), row.e.clone()));
        constants.push((format!("tbl_{}_Var", row.key), row.var.clone()));
    }
    for i in 0..constants.len() {
        for j in i + 1..constants.len() {
            if constants[i].0 == constants[j].0 {
                return Err(GfError::Data(format!(
                    "duplicate constant `{}`",
                    constants[i].0
                )));
            }
        }
    }
    Ok(CatalogData { rows, constants })
}

fn data_err(line: usize, msg: &str) -> GfError {
    GfError::Data(format!("line {line}: {msg}"))
}

fn split_keyword(s: &str) -> (&str, &str) {
    let s = s.trim();
    match s.find(char::is_whitespace) {
        Some(i) => (&s[..i], &s[i..]),
        None => (s, ""),
    }
}

fn parse_rat_token(tok: &str, line: usize) -> Result<Rat, GfError> {
    let (num, den) = match tok.split_once('/') {
        Some((n, d)) => (n, d),
        None => (tok, "1"),
    };
    let n: i64 = num
        .trim()
        .parse()
        .map_err(|_| data_err(line, &format!("bad rational `{tok}`")))?;
    let d: i64 = den
        .trim()
        .parse()
        .map_err(|_| data_err(line, &format!("bad rational `{tok}`")))?;
    if d == 0 {
        return Err(data_err(line, "zero denominator"));
    }
    Ok(Rat::new(n.into(), d.into()))
}

fn parse_const_spec(text: &str, line: usize) -> Result<ConstSpec, GfError> {
    let (mode_tok, rest) = split_keyword(text);
    let mode = SlopeMode::parse(mode_tok)
        .ok_or_else(|| data_err(line, &format!("unknown mode `{mode_tok}`")))?;
    let (kind, rest) = split_keyword(rest);
    let expr = match kind {
        "rat" => ConstExpr::Rational(parse_rat_token(rest.trim(), line)?),
        "sqrt" => {
            let toks: Vec<&str> = rest.split_whitespace().collect();
            if toks.len() != 3 {
                return Err(data_err(line, "sqrt expects `k c0 c1`"));
            }
            let k: u64 = toks[0]
                .parse()
                .map_err(|_| data_err(line, "bad sqrt radicand"))?;
            ConstExpr::SqrtForm {
                k,
                c0: parse_rat_token(toks[1], line)?,
                c1: parse_rat_token(toks[2], line)?,
            }
        }
        "root" => {
            let (coeff_text, value_text) = rest
                .split_once(';')
                .ok_or_else(|| data_err(line, "root expects `coeffs ; value / den`"))?;
            let (value_coeffs, den_text) = value_text
                .split_once('/')
                .ok_or_else(|| data_err(line, "root expects a `/ den` part"))?;
            let parse_ints = |s: &str| -> Result<Vec<BigInt>, GfError> {
                s.split_whitespace()
                    .map(|t| {
                        t.parse::<i64>()
                            .map(BigInt::from)
                            .map_err(|_| data_err(line, &format!("bad integer `{t}`")))
                    })
                    .collect()
            };
            let poly = parse_ints(coeff_text)?;
            let value = parse_ints(value_coeffs)?;
            let den: BigInt = den_text
                .trim()
                .parse::<i64>()
                .map(BigInt::from)
                .map_err(|_| data_err(line, "bad root denominator"))?;
            if poly.len() < 2 || den.is_zero() {
                return Err(data_err(line, "degenerate root expression"));
            }
            ConstExpr::RootForm { poly, value, den }
        }
        other => return Err(data_err(line, &format!("unknown constant kind `{other}`"))),
    };
    Ok(ConstSpec { mode, expr })
}
