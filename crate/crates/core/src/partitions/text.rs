//! Canonical text form: `{1*|2*3}`, `{-2*2|-1*|1*}`, `TOP`.
//!
//! Blocks are separated by `|`; elements inside a block ascend by (absolute
//! value, sign), pointed elements carry a `*` suffix and negative ones a `-`
//! prefix. The zero block, when nonempty, comes first. For ground sets with
//! `n >= 10` elements are separated by `,` to stay unambiguous.

use super::{Block, Element, FamilySpec, Ground, Kind, PartitionError, PointedPartition};

fn block_string(g: Ground, b: &Block) -> String {
    let sep = if g.n >= 10 { "," } else { "" };
    g.elements(b.members)
        .into_iter()
        .map(|e| {
            let star = if b.pointed & g.bit(e) != 0 { "*" } else { "" };
            format!("{e}{star}")
        })
        .collect::<Vec<_>>()
        .join(sep)
}

pub fn canonical_string(p: &PointedPartition) -> String {
    let g = p.ground();
    let parts: Vec<String> = p.all_blocks().map(|b| block_string(g, b)).collect();
    format!("{{{}}}", parts.join("|"))
}

fn parse_error(position: usize, message: impl Into<String>) -> PartitionError {
    PartitionError::Parse {
        position,
        message: message.into(),
    }
}

struct RawElement {
    value: i32,
    pointed: bool,
}

/// Parse one block starting at byte offset `base` of the original text.
fn parse_block(text: &str, base: usize) -> Result<Vec<RawElement>, PartitionError> {
    if text.is_empty() {
        return Err(parse_error(base, "empty block"));
    }
    let comma_separated = text.contains(',');
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut pos = 0;
    while pos < bytes.len() {
        let start = pos;
        let negative = bytes[pos] == b'-';
        if negative {
            pos += 1;
        }
        let digits_start = pos;
        if comma_separated {
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
        } else if pos < bytes.len() && bytes[pos].is_ascii_digit() {
            pos += 1;
        }
        if pos == digits_start {
            return Err(parse_error(base + pos, "expected a digit"));
        }
        let value: i32 = text[digits_start..pos]
            .parse()
            .map_err(|_| parse_error(base + digits_start, "element too large"))?;
        if value == 0 {
            return Err(parse_error(base + digits_start, "elements start at 1"));
        }
        let pointed = pos < bytes.len() && bytes[pos] == b'*';
        if pointed {
            pos += 1;
        }
        if comma_separated && pos < bytes.len() {
            if bytes[pos] != b',' {
                return Err(parse_error(base + pos, "expected ','"));
            }
            pos += 1;
            if pos == bytes.len() {
                return Err(parse_error(base + pos, "trailing ','"));
            }
        }
        out.push(RawElement {
            value: if negative { -value } else { value },
            pointed,
        });
        debug_assert!(pos > start);
    }
    Ok(out)
}

/// Parse the canonical text of a partition and check it against `kind`.
///
/// The ground set size is the largest absolute value that occurs.
pub fn parse_partition(text: &str, kind: Kind) -> Result<PointedPartition, PartitionError> {
    let trimmed = text.trim();
    let offset = text.len() - text.trim_start().len();
    let inner = trimmed
        .strip_prefix('{')
        .ok_or_else(|| parse_error(offset, "expected '{'"))?
        .strip_suffix('}')
        .ok_or_else(|| parse_error(offset + trimmed.len(), "expected '}'"))?;
    let mut blocks = Vec::new();
    let mut base = offset + 1;
    for piece in inner.split('|') {
        blocks.push((base, parse_block(piece, base)?));
        base += piece.len() + 1;
    }
    let n = blocks
        .iter()
        .flat_map(|(_, b)| b.iter().map(|e| e.value.unsigned_abs() as usize))
        .max()
        .unwrap_or(0);
    let signed = kind.is_signed();
    if !signed {
        if let Some((pos, _)) = blocks.iter().find(|(_, b)| b.iter().any(|e| e.value < 0)) {
            return Err(parse_error(*pos, "negative element in an unsigned partition"));
        }
    }
    let as_lists: Vec<(Vec<i32>, Vec<i32>)> = blocks
        .iter()
        .map(|(_, b)| {
            (
                b.iter().map(|e| e.value).collect(),
                b.iter().filter(|e| e.pointed).map(|e| e.value).collect(),
            )
        })
        .collect();
    let g = Ground::new(n, signed);
    let mut seen = 0u32;
    for (pos, b) in &blocks {
        for e in b {
            let bit = g.bit(e.value);
            if seen & bit != 0 {
                return Err(parse_error(*pos, format!("element {} repeated", e.value)));
            }
            seen |= bit;
        }
    }
    let p = PointedPartition::from_elements(n, signed, &as_lists)?;
    p.validate(kind)?;
    Ok(p)
}

/// Parse an element of a family: a partition or `TOP` for the extended family.
pub fn parse_element(text: &str, spec: &FamilySpec) -> Result<Element, PartitionError> {
    if text.trim() == "TOP" {
        return match spec {
            FamilySpec::AExtended { .. } => Ok(Element::Top),
            _ => Err(parse_error(0, "TOP only exists in the extended family")),
        };
    }
    let p = parse_partition(text, spec.kind())?;
    if p.n() != spec.n() {
        return Err(PartitionError::GroundMismatch);
    }
    if !spec.admits(&p) {
        return Err(PartitionError::Invalid(format!("{p} is not in {spec}")));
    }
    Ok(Element::Partition(p))
}
