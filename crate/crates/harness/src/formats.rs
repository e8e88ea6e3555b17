//! Plain-text file formats.
//!
//! Code file: a header line `q n dim`, then `dim` lines of `n` space-separated
//! element indices (one generator row per line). Lines starting with `#` are
//! comments.
//!
//! Sample file: one coordinate per line, either a real symbol as 16 hex digits
//! with a `0x` prefix or a bit as `0`/`1`.

use std::io::{BufRead, Write};

use anyhow::{bail, ensure, Context, Result};
use planted_core::noise::Observation;
use planted_core::planted::RealSymbol;
use planted_core::{Field, FieldElement, LinearCode};

/// `(p, m)` with `q = p^m`, if `q` is a prime power.
fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let (mut rest, mut m) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        m += 1;
    }
    (rest == 1).then_some((p, m))
}

pub fn write_code<W: Write>(code: &LinearCode, mut out: W) -> Result<()> {
    writeln!(out, "{} {} {}", code.field().size(), code.len(), code.dimension())?;
    for row in code.generator().row_iter() {
        let line: Vec<String> = row.iter().map(|x| x.index().to_string()).collect();
        writeln!(out, "{}", line.join(" "))?;
    }
    Ok(())
}

fn content_lines<R: BufRead>(input: R) -> impl Iterator<Item = (usize, std::io::Result<String>)> {
    input
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| l.as_ref().map_or(true, |s| !s.trim().is_empty() && !s.trim_start().starts_with('#')))
}

/// Reads a code file over the default field of order `q`.
pub fn read_code<R: BufRead>(input: R) -> Result<LinearCode> {
    let mut lines = content_lines(input);
    let (_, header) = lines.next().context("empty code file")?;
    let header = header?;
    let nums: Vec<usize> = header
        .split_whitespace()
        .map(|t| t.parse().with_context(|| format!("bad header token {t:?}")))
        .collect::<Result<_>>()?;
    ensure!(nums.len() == 3, "header must be `q n dim`, got {header:?}");
    let (q, n, dim) = (nums[0], nums[1], nums[2]);
    let (p, m) =
        u32::try_from(q).ok().and_then(prime_power).with_context(|| format!("q = {q} is not a prime power"))?;
    let field = Field::new(p, m)?;
    let mut rows = Vec::with_capacity(dim);
    for (line_no, line) in lines {
        let line = line?;
        let row: Vec<FieldElement> = line
            .split_whitespace()
            .map(|t| {
                let v: u32 = t.parse().with_context(|| format!("line {line_no}: bad entry {t:?}"))?;
                field.element(v).with_context(|| format!("line {line_no}"))
            })
            .collect::<Result<_>>()?;
        ensure!(row.len() == n, "line {line_no}: expected {n} entries, got {}", row.len());
        rows.push(row);
    }
    ensure!(rows.len() == dim, "expected {dim} generator rows, got {}", rows.len());
    Ok(LinearCode::from_generator(field, n, &rows)?)
}

pub fn write_sample<W: Write>(sample: &Observation, mut out: W) -> Result<()> {
    match sample {
        Observation::Real(xs) => {
            for x in xs {
                writeln!(out, "{:#018x}", x.0)?;
            }
        }
        Observation::Binary(bits) => {
            for b in bits {
                writeln!(out, "{}", b.index())?;
            }
        }
    }
    Ok(())
}

pub fn read_sample<R: BufRead>(input: R) -> Result<Observation> {
    let mut real = Vec::new();
    let mut bits = Vec::new();
    for (line_no, line) in content_lines(input) {
        let line = line?;
        let t = line.trim();
        if let Some(hex) = t.strip_prefix("0x") {
            let v = u64::from_str_radix(hex, 16).with_context(|| format!("line {line_no}: bad hex {t:?}"))?;
            real.push(RealSymbol(v));
        } else {
            match t {
                "0" => bits.push(FieldElement::ZERO),
                "1" => bits.push(FieldElement::ONE),
                _ => bail!("line {line_no}: expected 0x-prefixed hex or a bit, got {t:?}"),
            }
        }
    }
    match (real.is_empty(), bits.is_empty()) {
        (_, true) => Ok(Observation::Real(real)),
        (true, false) => Ok(Observation::Binary(bits)),
        (false, false) => bail!("sample mixes real symbols and bits"),
    }
}
