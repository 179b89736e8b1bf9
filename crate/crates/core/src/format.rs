//! Text formats for families and matrices.
//!
//! Family file:
//!
//! ```text
//! # comments anywhere
//! 9;3,3,3,3;3
//! 0,1,8
//! 0,2,5
//! 0,2,5
//! 0,1,4
//! ```
//!
//! A header `v;k1,k2,k3,k4;lambda` followed by exactly four block lines of
//! ascending comma-separated residues; an empty line is an empty block.
//!
//! Matrix files come in two flavours: rows of `+`/`-` characters, or a plain
//! PBM (`P1`) bitmap in which `1` (black) encodes `-1` and `0` encodes `+1`.

use crate::arrays::SquareMatrix;
use crate::error::{Error, Result};
use crate::family::DifferenceFamily;
use crate::params::PropusParameterSet;
use crate::sequence::Block;

fn parse_block(v: usize, line: &str, line_no: usize) -> Result<Block> {
    let line = line.trim();
    if line.is_empty() {
        return Block::empty(v).map_err(|e| Error::parse(line_no, e.to_string()));
    }
    let line = line
        .strip_prefix('[')
        .and_then(|l| l.strip_suffix(']'))
        .unwrap_or(line);
    let residues = line
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::parse(line_no, format!("bad residue {:?}", t.trim())))
        })
        .collect::<Result<Vec<_>>>()?;
    if residues.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::parse(line_no, "residues must be strictly ascending"));
    }
    Block::new(v, residues).map_err(|e| Error::parse(line_no, e.to_string()))
}

/// Parses a family without checking the difference-family condition.
/// `first_line` is the 1-based line number of `lines[0]`, for messages.
pub(crate) fn parse_family_lines(lines: &[&str], first_line: usize) -> Result<DifferenceFamily> {
    let mut rows = lines
        .iter()
        .enumerate()
        .map(|(i, l)| (first_line + i, l.strip_suffix('\r').unwrap_or(l)))
        .filter(|(_, l)| !l.trim_start().starts_with('#'));

    let (header_no, header) = rows
        .by_ref()
        .find(|(_, l)| !l.trim().is_empty())
        .ok_or_else(|| Error::parse(first_line, "missing header line"))?;
    let params: PropusParameterSet = header
        .parse()
        .map_err(|e: Error| Error::parse(header_no, e.to_string()))?;

    let mut blocks = Vec::with_capacity(4);
    let mut last = header_no;
    for _ in 0..4 {
        let (no, line) = rows
            .next()
            .ok_or_else(|| Error::parse(last + 1, "expected four block lines"))?;
        blocks.push(parse_block(params.v(), line, no)?);
        last = no;
    }
    if let Some((no, _)) = rows.find(|(_, l)| !l.trim().is_empty()) {
        return Err(Error::parse(no, "unexpected content after the fourth block"));
    }
    let blocks: [Block; 4] = blocks.try_into().expect("four blocks");
    DifferenceFamily::unchecked(params, blocks).map_err(|e| Error::parse(header_no, e.to_string()))
}

/// Reads a family file without validating the blocks as a difference family.
pub fn parse_family_unchecked(text: &str) -> Result<DifferenceFamily> {
    let lines: Vec<&str> = text.split('\n').collect();
    parse_family_lines(&lines, 1)
}

/// Reads a family file and validates it.
pub fn parse_family(text: &str) -> Result<DifferenceFamily> {
    let family = parse_family_unchecked(text)?;
    family.validate()?;
    Ok(family)
}

pub fn write_family(family: &DifferenceFamily) -> String {
    let p = family.params();
    let mut out = format!(
        "{};{},{},{},{};{}\n",
        p.v(),
        p.x(),
        p.y(),
        p.y(),
        p.z(),
        p.lambda()
    );
    for block in family.blocks() {
        let residues: Vec<String> = block.elements().iter().map(usize::to_string).collect();
        out.push_str(&residues.join(","));
        out.push('\n');
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixFormat {
    Text,
    Pbm,
}

impl std::str::FromStr for MatrixFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(MatrixFormat::Text),
            "pbm" => Ok(MatrixFormat::Pbm),
            other => Err(Error::invalid(format!("unknown matrix format {other:?}"))),
        }
    }
}

/// One row per line of `+` and `-`.
pub fn write_matrix_text(h: &SquareMatrix) -> Result<String> {
    if !h.is_pm_one() {
        return Err(Error::invalid("text format holds ±1 matrices only"));
    }
    let mut out = String::with_capacity(h.order() * (h.order() + 1));
    for row in h.rows() {
        out.extend(row.iter().map(|&x| if x > 0 { '+' } else { '-' }));
        out.push('\n');
    }
    Ok(out)
}

pub fn read_matrix_text(text: &str) -> Result<SquareMatrix> {
    let rows = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            l.trim()
                .chars()
                .map(|c| match c {
                    '+' => Ok(1),
                    '-' => Ok(-1),
                    other => Err(Error::parse(i + 1, format!("unexpected character {other:?}"))),
                })
                .collect::<Result<Vec<i32>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    SquareMatrix::from_rows(rows).map_err(|e| Error::parse(0, e.to_string()))
}

/// Plain PBM: `P1`, then `n n`, then one row of `0`/`1` digits per line.
pub fn write_matrix_pbm(h: &SquareMatrix) -> Result<String> {
    if !h.is_pm_one() {
        return Err(Error::invalid("PBM output holds ±1 matrices only"));
    }
    let n = h.order();
    let mut out = format!("P1\n{n} {n}\n");
    for row in h.rows() {
        out.extend(row.iter().map(|&x| if x < 0 { '1' } else { '0' }));
        out.push('\n');
    }
    Ok(out)
}

/// Accepts any whitespace layout and `#` comments, as plain PBM allows.
pub fn read_matrix_pbm(text: &str) -> Result<SquareMatrix> {
    let mut tokens = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .flat_map(str::split_whitespace);
    if tokens.next() != Some("P1") {
        return Err(Error::parse(1, "missing P1 magic"));
    }
    let mut dim = || -> Result<usize> {
        tokens
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::parse(2, "bad dimensions"))
    };
    let (w, h) = (dim()?, dim()?);
    if w != h {
        return Err(Error::parse(2, format!("matrix must be square, got {w}x{h}")));
    }
    let bits: Vec<i32> = tokens
        .flat_map(str::chars)
        .map(|c| match c {
            '0' => Ok(1),
            '1' => Ok(-1),
            other => Err(Error::parse(0, format!("unexpected PBM character {other:?}"))),
        })
        .collect::<Result<_>>()?;
    if bits.len() != w * h {
        return Err(Error::parse(0, format!("expected {} bits, found {}", w * h, bits.len())));
    }
    SquareMatrix::from_rows(bits.chunks(w.max(1)).map(<[i32]>::to_vec).collect())
        .map_err(|e| Error::parse(0, e.to_string()))
}

pub fn write_matrix(h: &SquareMatrix, format: MatrixFormat) -> Result<String> {
    match format {
        MatrixFormat::Text => write_matrix_text(h),
        MatrixFormat::Pbm => write_matrix_pbm(h),
    }
}

pub fn read_matrix(text: &str, format: MatrixFormat) -> Result<SquareMatrix> {
    match format {
        MatrixFormat::Text => read_matrix_text(text),
        MatrixFormat::Pbm => read_matrix_pbm(text),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const NINE: &str = "9;3,3,3,3;3\n0,1,8\n0,2,5\n0,2,5\n0,1,4\n";

    #[test]
    fn family_round_trip() {
        let f = parse_family(NINE).unwrap();
        assert_eq!(write_family(&f), NINE);
    }

    #[test]
    fn family_with_comments_and_empty_block() {
        let text = "# trivial\n\n3;1,1,1,0;0\n0\n# middle\n0\n0\n\n";
        let f = parse_family(text).unwrap();
        assert!(f.d().is_empty());
        assert_eq!(write_family(&f), "3;1,1,1,0;0\n0\n0\n0\n\n");
        let paren = parse_family("(9;3,3,3,3;3)\n[0,1,8]\n0,2,5\n0,2,5\n0,1,4").unwrap();
        assert_eq!(write_family(&paren), NINE);
    }

    #[test]
    fn family_errors() {
        let truncated = "9;3,3,3,3;3\n0,1,8\n0,2,5\n";
        assert!(matches!(parse_family(truncated), Err(Error::Parse { .. })));
        assert!(parse_family("9;3,3,3,3;3\n0,1,8\n0,2,5\n0,2,5\n0,1,4\n1,2\n").is_err());
        assert!(parse_family("9;3,3,3,3;3\n0,8,1\n0,2,5\n0,2,5\n0,1,4\n").is_err());
        assert!(parse_family("9;3,3,3,3;3\n0,1,9\n0,2,5\n0,2,5\n0,1,4\n").is_err());
        // parses, but is not a difference family
        let bad = "9;3,3,3,3;3\n0,1,7\n0,2,5\n0,2,5\n0,1,4\n";
        assert!(parse_family_unchecked(bad).is_ok());
        assert!(matches!(parse_family(bad), Err(Error::Precondition(_))));
    }

    #[test]
    fn matrix_formats() {
        let h = SquareMatrix::from_rows(vec![vec![1, 1], vec![1, -1]]).unwrap();
        let text = write_matrix_text(&h).unwrap();
        assert_eq!(text, "++\n+-\n");
        assert_eq!(read_matrix_text(&text).unwrap(), h);
        let pbm = write_matrix_pbm(&h).unwrap();
        assert_eq!(pbm, "P1\n2 2\n00\n01\n");
        assert_eq!(read_matrix_pbm(&pbm).unwrap(), h);
        assert_eq!(read_matrix_pbm("P1 # c\n2 2\n0 0\n0 1").unwrap(), h);
        assert!(read_matrix_pbm("P1\n2 2\n0 0 0").is_err());
        assert!(read_matrix_text("++\n+").is_err());
    }
}
