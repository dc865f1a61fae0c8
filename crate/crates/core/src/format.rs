//! Line-based instance text format.
//!
//! ```text
//! MAXCSP 1
//! family cut k 2
//! n 3 m 3
//! c 00 1 2
//! c 00 2 3
//! c 00 1 3
//! ```
//!
//! Masks are written `b_1 … b_k`; constraints appear in stream order.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::instance::{Constraint, Instance};
use crate::predicate::{format_mask, parse_mask, Family, PredicateFamily};

const MAGIC: &str = "MAXCSP 1";

pub fn write_instance(instance: &Instance) -> String {
    let k = instance.family().arity();
    let mut out = String::new();
    writeln!(out, "{MAGIC}").unwrap();
    writeln!(out, "family {} k {k}", instance.family().family()).unwrap();
    writeln!(out, "n {} m {}", instance.n(), instance.m()).unwrap();
    for c in instance.constraints() {
        write!(out, "c {}", format_mask(c.mask(), k)).unwrap();
        for j in c.vars() {
            write!(out, " {j}").unwrap();
        }
        out.push('\n');
    }
    out
}

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn parse_num<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T> {
    tok.ok_or_else(|| perr(line, format!("missing {what}")))?
        .parse()
        .map_err(|_| perr(line, format!("bad {what}")))
}

fn expect(tok: Option<&str>, word: &str, line: usize) -> Result<()> {
    match tok {
        Some(t) if t == word => Ok(()),
        Some(t) => Err(perr(line, format!("expected `{word}`, found `{t}`"))),
        None => Err(perr(line, format!("expected `{word}`"))),
    }
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));

    let (ln, first) = lines.next().ok_or_else(|| perr(1, "empty input"))?;
    if first.trim_end() != MAGIC {
        return Err(perr(ln, format!("expected header `{MAGIC}`")));
    }

    let (ln, fam_line) = lines.next().ok_or_else(|| perr(2, "missing family line"))?;
    let mut toks = fam_line.split_ascii_whitespace();
    expect(toks.next(), "family", ln)?;
    let name = toks.next().ok_or_else(|| perr(ln, "missing family name"))?;
    let family = Family::parse(name).ok_or_else(|| perr(ln, format!("unknown family `{name}`")))?;
    expect(toks.next(), "k", ln)?;
    let k: usize = parse_num(toks.next(), ln, "arity")?;
    let pf = PredicateFamily::new(family, k).map_err(|e| perr(ln, e.to_string()))?;

    let (ln, size_line) = lines.next().ok_or_else(|| perr(3, "missing size line"))?;
    let mut toks = size_line.split_ascii_whitespace();
    expect(toks.next(), "n", ln)?;
    let n: usize = parse_num(toks.next(), ln, "n")?;
    expect(toks.next(), "m", ln)?;
    let m: usize = parse_num(toks.next(), ln, "m")?;

    let mut constraints = Vec::with_capacity(m);
    for (ln, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let mut toks = line.split_ascii_whitespace();
        expect(toks.next(), "c", ln)?;
        let mask_tok = toks.next().ok_or_else(|| perr(ln, "missing mask"))?;
        let mask = parse_mask(mask_tok, k)
            .ok_or_else(|| perr(ln, format!("mask `{mask_tok}` is not {k} binary digits")))?;
        let vars = toks
            .map(|t| t.parse::<u32>().map_err(|_| perr(ln, format!("bad index `{t}`"))))
            .collect::<Result<Vec<_>>>()?;
        let c = Constraint::new(vars, mask);
        c.validate(n, &pf).map_err(|e| perr(ln, e.to_string()))?;
        constraints.push(c);
    }
    if constraints.len() != m {
        return Err(perr(
            3,
            format!("header says m = {m}, found {} constraints", constraints.len()),
        ));
    }
    Instance::new(n, pf, constraints)
}
