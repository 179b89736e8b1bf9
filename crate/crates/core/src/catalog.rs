//! The bundled collection of known propus families and an independent
//! verifier for any family.

use std::fmt;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::arrays::{is_hadamard, is_symmetric_matrix, propus_matrix};
use crate::error::{Error, Result};
use crate::family::{DifferenceFamily, SymmetricSlot};
use crate::format::parse_family_lines;
use crate::params::PropusParameterSet;
use crate::sequence::{is_difference_family, paf_deficit};

/// The bundled data, in family-file layout with one `@` directive per record.
pub const CATALOG_DATA: &str = include_str!("../data/catalog.txt");
const CATALOG_SHA256: &str = include_str!("../data/catalog.sha256");

/// Existence marks attached to a parameter set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Annotation {
    /// A family with `A` symmetric is known.
    A,
    /// A family with `D` symmetric is known.
    D,
    /// A family with both symmetric is known.
    AD,
    /// Belongs to the Turyn series.
    T,
    /// Belongs to the X series.
    X,
    /// No family exists.
    No,
    /// Undecided.
    Unknown,
}

impl std::str::FromStr for Annotation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "A" => Annotation::A,
            "D" => Annotation::D,
            "AD" => Annotation::AD,
            "T" => Annotation::T,
            "X" => Annotation::X,
            "No" => Annotation::No,
            "?" => Annotation::Unknown,
            other => return Err(Error::invalid(format!("unknown annotation {other:?}"))),
        })
    }
}

impl fmt::Display for Annotation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Annotation::A => "A",
            Annotation::D => "D",
            Annotation::AD => "AD",
            Annotation::T => "T",
            Annotation::X => "X",
            Annotation::No => "No",
            Annotation::Unknown => "?",
        })
    }
}

/// Existence marks of every parameter set with odd `v < 50`, as published.
/// `No` and `?` sets have no bundled family.
const ANNOTATION_TABLE: [(&str, &str); 76] = [
    ("(3;1,1,1,0;0)", "AD,T,X"),
    ("(5;1,2,2,1;1)", "No"),
    ("(5;2,1,1,2;1)", "AD,T,X"),
    ("(7;3,2,2,2;2)", "AD,T"),
    ("(7;3,3,3,1;3)", "D,X"),
    ("(9;3,3,3,3;3)", "A,D"),
    ("(9;3,4,4,2;4)", "AD,T"),
    ("(11;5,4,4,3;5)", "A,D,X"),
    ("(13;4,6,6,4;7)", "A,D"),
    ("(13;5,5,5,4;6)", "AD,T"),
    ("(13;6,4,4,6;7)", "AD"),
    ("(13;6,6,6,3;8)", "A,D"),
    ("(15;6,7,7,4;9)", "A,D"),
    ("(15;7,5,5,6;8)", "AD,T"),
    ("(17;6,7,7,6;9)", "A,D"),
    ("(17;7,6,6,7;9)", "A,D"),
    ("(17;8,7,7,5;10)", "A,D,X"),
    ("(19;7,9,9,6;12)", "AD,T"),
    ("(19;8,8,8,6;11)", "A,D"),
    ("(19;9,7,7,7;11)", "A,D"),
    ("(21;9,8,8,8;12)", "AD,T"),
    ("(21;10,10,10,6;15)", "A,D,X"),
    ("(23;9,10,10,8;14)", "A,D"),
    ("(23;10,11,11,7;16)", "A,D"),
    ("(25;9,12,12,9;17)", "A,D"),
    ("(25;10,10,10,10;15)", "No"),
    ("(25;12,9,9,12;17)", "AD,T"),
    ("(25;12,10,10,9;16)", "A,D"),
    ("(25;12,11,11,8;17)", "A,D"),
    ("(27;11,13,13,9;19)", "A,D"),
    ("(27;12,11,11,10;17)", "A,D"),
    ("(27;12,12,12,9;18)", "A,D"),
    ("(27;13,10,10,12;18)", "AD,T,X"),
    ("(29;11,13,13,11;19)", "A,D"),
    ("(29;13,11,11,13;19)", "A,D"),
    ("(31;13,13,13,12;20)", "AD,T"),
    ("(31;13,14,14,11;21)", "A,D"),
    ("(31;15,12,12,13;21)", "A,D"),
    ("(31;15,15,15,10;24)", "A,D"),
    ("(33;13,16,16,12;24)", "A,D"),
    ("(33;15,13,13,14;22)", "A,D"),
    ("(33;15,16,16,11;25)", "A,D"),
    ("(33;16,14,14,12;23)", "A,D,X"),
    ("(35;16,15,15,13;24)", "A,D"),
    ("(35;17,16,16,12;26)", "A,D,X"),
    ("(37;15,16,16,15;25)", "A,D"),
    ("(37;15,17,17,14;26)", "AD,T"),
    ("(37;16,15,15,16;25)", "A,D"),
    ("(37;16,18,18,13;28)", "A,D"),
    ("(37;17,17,17,13;27)", "A,D"),
    ("(37;18,15,15,15;26)", "A,D"),
    ("(39;17,17,17,15;27)", "A,D"),
    ("(39;18,16,16,16;27)", "A,D"),
    ("(41;16,20,20,16;31)", "A,D"),
    ("(41;18,19,19,15;30)", "A,D"),
    ("(41;20,16,16,20;31)", "AD,T,X"),
    ("(43;18,21,21,16;33)", "?"),
    ("(43;19,18,18,18;30)", "?"),
    ("(43;21,17,17,20;32)", "?"),
    ("(43;21,19,19,16;32)", "?"),
    ("(43;21,21,21,15;35)", "D"),
    ("(45;18,21,21,18;33)", "?"),
    ("(45;19,20,20,18;32)", "AD,T"),
    ("(45;21,18,18,21;33)", "?"),
    ("(45;21,20,20,17;33)", "?"),
    ("(45;21,22,22,16;36)", "?"),
    ("(45;22,19,19,18;33)", "D,X"),
    ("(47;20,22,22,18;35)", "?"),
    ("(47;22,20,20,19;34)", "?"),
    ("(47;23,19,19,21;35)", "?"),
    ("(47;23,22,22,17;37)", "?"),
    ("(49;21,21,21,21;35)", "?"),
    ("(49;22,22,22,19;36)", "?"),
    ("(49;22,24,24,18;39)", "?"),
    ("(49;23,20,20,22;36)", "AD,T"),
    ("(49;23,23,23,18;38)", "?"),
];

/// The published existence marks of a parameter set with odd `v < 50`.
/// Untrusted metadata; only `A`, `D` and `AD` are checked, against the
/// bundled families.
pub fn annotations(params: &PropusParameterSet) -> Option<Vec<Annotation>> {
    let key = params.to_string();
    ANNOTATION_TABLE
        .iter()
        .find(|(p, _)| *p == key)
        .map(|(_, marks)| marks.split(',').map(|m| m.parse().expect("valid mark")).collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub family: DifferenceFamily,
    /// `group:(parameter set):index`.
    pub source: String,
    pub claimed_slot: SymmetricSlot,
    /// Unverified metadata; only the slot claim is checked.
    pub annotations: Vec<Annotation>,
    /// Block `C` was not listed and has been copied from `B`.
    pub c_copied: bool,
    /// Order in which the block lines were listed, e.g. `DBCA`.
    pub listed_order: String,
    /// Header the blocks were listed under, when it differs from the family's
    /// parameter set.
    pub listed_as: Option<String>,
}

#[derive(Debug, Default)]
struct Directive {
    source: Option<String>,
    slot: Option<SymmetricSlot>,
    annotations: Vec<Annotation>,
    c_copied: bool,
    order: Option<String>,
    listed_as: Option<String>,
}

fn parse_directive(line: &str, line_no: usize) -> Result<Directive> {
    let mut d = Directive::default();
    for field in line.trim_start_matches('@').split_whitespace() {
        let (key, value) = field
            .split_once('=')
            .ok_or_else(|| Error::parse(line_no, format!("bad directive field {field:?}")))?;
        match key {
            "source" => d.source = Some(value.to_string()),
            "slot" => d.slot = Some(value.parse()?),
            "annotations" => {
                d.annotations = value.split(',').map(str::parse).collect::<Result<_>>()?;
            }
            "c" => d.c_copied = value == "copied-from-b",
            "order" => d.order = Some(value.to_string()),
            "printed-as" => d.listed_as = Some(value.to_string()),
            other => return Err(Error::parse(line_no, format!("unknown directive key {other:?}"))),
        }
    }
    Ok(d)
}

/// Parses catalog text after checking it against a SHA-256 digest.
pub fn parse_catalog(text: &str, expected_sha256: &str) -> Result<Vec<CatalogEntry>> {
    let digest = hex::encode(Sha256::digest(text.as_bytes()));
    if digest != expected_sha256.trim() {
        return Err(Error::Integrity(format!(
            "catalog checksum mismatch: expected {}, found {digest}",
            expected_sha256.trim()
        )));
    }
    let lines: Vec<&str> = text.split('\n').collect();
    let starts: Vec<usize> = (0..lines.len()).filter(|&i| lines[i].starts_with('@')).collect();
    let mut entries = Vec::with_capacity(starts.len());
    for (n, &start) in starts.iter().enumerate() {
        let end = starts.get(n + 1).copied().unwrap_or(lines.len());
        let integrity = |e: Error| Error::Integrity(e.to_string());
        let d = parse_directive(lines[start], start + 1).map_err(integrity)?;
        let family = parse_family_lines(&lines[start + 1..end], start + 2).map_err(integrity)?;
        let order = d.order.unwrap_or_else(|| "ABCD".to_string());
        let family = match order.as_str() {
            "ABCD" => family,
            "DBCA" => {
                let [d_, b, c, a] = family.blocks().clone();
                DifferenceFamily::unchecked(*family.params(), [a, b, c, d_])?
            }
            other => {
                return Err(Error::Integrity(format!("line {}: unsupported order {other}", start + 1)))
            }
        };
        if d.c_copied && family.b() != family.c() {
            return Err(Error::Integrity(format!(
                "line {}: copied block C differs from B",
                start + 1
            )));
        }
        entries.push(CatalogEntry {
            family,
            source: d
                .source
                .ok_or_else(|| Error::Integrity(format!("line {}: missing source", start + 1)))?,
            claimed_slot: d
                .slot
                .ok_or_else(|| Error::Integrity(format!("line {}: missing slot", start + 1)))?,
            annotations: d.annotations,
            c_copied: d.c_copied,
            listed_order: order,
            listed_as: d.listed_as,
        });
    }
    Ok(entries)
}

/// Every bundled family, in listing order.
pub fn load_catalog() -> Result<Vec<CatalogEntry>> {
    parse_catalog(CATALOG_DATA, CATALOG_SHA256)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub family: String,
    pub checks: Vec<Check>,
    /// Which of `A`, `D` is symmetric, as observed.
    pub symmetric_slot: Option<SymmetricSlot>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(
                f,
                "{} {}: {}",
                if c.passed { "PASS" } else { "FAIL" },
                c.name,
                c.detail
            )?;
        }
        Ok(())
    }
}

/// Runs every check on a family independently; failures become report
/// entries rather than errors.
///
/// Checks: block sizes, constant difference count equal to `Σk - v`, the
/// autocorrelation sum vanishing off the origin, `B = C`, a symmetric outer
/// block (matching `claimed` when given), and the propus matrix being
/// Hadamard and symmetric.
pub fn verify_family(family: &DifferenceFamily, claimed: Option<SymmetricSlot>) -> VerificationReport {
    let params = family.params();
    let v = params.v();
    let mut checks = Vec::new();
    let mut push = |name, passed, detail: String| checks.push(Check { name, passed, detail });

    let sizes = family.blocks().each_ref().map(|b| b.len());
    push(
        "sizes",
        sizes == params.sizes(),
        format!("block sizes {sizes:?}, expected {:?}", params.sizes()),
    );

    let expected_lambda = sizes.iter().sum::<usize>() as i64 - v as i64;
    match is_difference_family(family.blocks(), v) {
        Some(l) => push(
            "lambda",
            l as i64 == expected_lambda && l == params.lambda(),
            format!("constant difference count {l}, expected {}", params.lambda()),
        ),
        None => push("lambda", false, "difference counts are not constant".to_string()),
    }

    let seqs = family.sequences();
    let deficit = paf_deficit(&seqs.each_ref(), &[1, 1, 1, 1]).unwrap_or_default();
    let nonzero = deficit.iter().filter(|&&d| d != 0).count();
    push(
        "paf-sum",
        nonzero == 0,
        format!("{nonzero} nonzero shifts in the autocorrelation sum"),
    );

    push(
        "b-equals-c",
        family.b() == family.c(),
        if family.b() == family.c() {
            "B = C".to_string()
        } else {
            "B ≠ C".to_string()
        },
    );

    let observed = family.symmetric_slot();
    let slot_ok = match (claimed, observed) {
        (_, None) => false,
        (None, Some(_)) => true,
        (Some(c), Some(o)) => (!c.includes_a() || o.includes_a()) && (!c.includes_d() || o.includes_d()),
    };
    push(
        "symmetric-slot",
        slot_ok,
        format!(
            "observed {}{}",
            observed.map_or("none".to_string(), |s| s.to_string()),
            claimed.map_or(String::new(), |c| format!(", claimed {c}"))
        ),
    );

    let h = propus_matrix(family);
    let hadamard = is_hadamard(&h).unwrap_or(false);
    push(
        "hadamard",
        hadamard,
        format!("H·Hᵀ {} {}·I for the order-{} propus matrix", if hadamard { "=" } else { "≠" }, 4 * v, 4 * v),
    );
    let symmetric = is_symmetric_matrix(&h);
    push(
        "symmetric-matrix",
        symmetric,
        format!("H {} Hᵀ", if symmetric { "=" } else { "≠" }),
    );

    VerificationReport {
        family: params.to_string(),
        checks,
        symmetric_slot: observed,
    }
}

pub fn verify_entry(entry: &CatalogEntry) -> VerificationReport {
    verify_family(&entry.family, Some(entry.claimed_slot))
}
