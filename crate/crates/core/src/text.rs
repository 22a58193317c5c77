//! Line framing shared by the `.dg`, `.grp` and transformation formats:
//! an `n <N>` header, then payload lines, with `#` comment lines and blank
//! lines ignored anywhere.

use crate::error::{Error, Result};

/// A payload line together with its 1-based line number in the source.
pub(crate) struct Line<'a> {
    pub number: usize,
    pub text: &'a str,
}

pub(crate) fn split_framed(text: &str) -> Result<(usize, Vec<Line<'_>>)> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| Line {
            number: i + 1,
            text: l.trim(),
        })
        .filter(|l| !l.text.is_empty() && !l.text.starts_with('#'));

    let header = lines
        .next()
        .ok_or_else(|| Error::parse(1, "missing `n <N>` header"))?;
    let mut fields = header.text.split_whitespace();
    let n = match (fields.next(), fields.next(), fields.next()) {
        (Some("n"), Some(v), None) => v
            .parse::<usize>()
            .map_err(|_| Error::parse(header.number, format!("bad order `{v}`")))?,
        _ => return Err(Error::parse(header.number, "expected `n <N>` header")),
    };
    Ok((n, lines.collect()))
}

pub(crate) fn parse_points(line: &Line<'_>, n: usize) -> Result<Vec<usize>> {
    line.text
        .split_whitespace()
        .map(|tok| {
            let v = tok
                .parse::<usize>()
                .map_err(|_| Error::parse(line.number, format!("bad integer `{tok}`")))?;
            if v >= n {
                return Err(Error::parse(
                    line.number,
                    format!("point {v} out of range for n = {n}"),
                ));
            }
            Ok(v)
        })
        .collect()
}
