use std::fmt;
use std::sync::Arc;

use super::{ParseError, SystemSpec};
use crate::pcs::{ChordLabel, PcSetType};

/// Chords to analyze, in order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChordSequence {
    pub chords: Vec<ChordLabel>,
}

impl fmt::Display for ChordSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tokens: Vec<String> = self.chords.iter().map(ToString::to_string).collect();
        f.write_str(&tokens.join(" "))
    }
}

const NOTE_NAMES: [(&str, u32); 17] = [
    ("C", 0),
    ("C#", 1),
    ("Db", 1),
    ("D", 2),
    ("D#", 3),
    ("Eb", 3),
    ("E", 4),
    ("F", 5),
    ("F#", 6),
    ("Gb", 6),
    ("G", 7),
    ("G#", 8),
    ("Ab", 8),
    ("A", 9),
    ("A#", 10),
    ("Bb", 10),
    ("B", 11),
];

/// Tokens `<root>_<type>` separated by whitespace or commas; `#` starts a
/// comment. Roots are `0..N` or, for `N = 12`, note names such as `C#`.
pub fn parse_sequence(text: &str, system: &SystemSpec) -> Result<ChordSequence, ParseError> {
    let types: Vec<Arc<PcSetType>> = system
        .types
        .iter()
        .map(|t| {
            Arc::new(
                PcSetType::new(t.name.clone(), t.intervals.clone(), system.modulus)
                    .expect("validated"),
            )
        })
        .collect();
    let mut chords = Vec::new();
    for (i, raw) in text.split('\n').enumerate() {
        let line = raw.strip_suffix('\r').unwrap_or(raw);
        let content = line.find('#').map_or(line, |p| &line[..p]);
        for token in content
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
        {
            let start = token.as_ptr() as usize - line.as_ptr() as usize;
            let col = line[..start].chars().count() + 1;
            let Some((root, ty)) = token.split_once('_') else {
                return Err(ParseError::syntax(i + 1, col, "`<root>_<type>`", token));
            };
            let type_col = col + root.chars().count() + 1;
            let root_value = match root.parse::<i64>() {
                Ok(r) if r >= 0 && r < system.modulus as i64 => r,
                Ok(r) => {
                    return Err(ParseError::semantic(
                        i + 1,
                        col,
                        format!("root {r} out of range for modulus {}", system.modulus),
                    ))
                }
                Err(_) => match NOTE_NAMES.iter().find(|(n, _)| *n == root) {
                    Some(&(_, v)) if system.modulus == 12 => v as i64,
                    _ => {
                        return Err(ParseError::syntax(
                            i + 1,
                            col,
                            "a root number or note name",
                            root,
                        ))
                    }
                },
            };
            let kind = types.iter().find(|t| t.name() == ty).ok_or_else(|| {
                ParseError::semantic(i + 1, type_col, format!("unknown type `{ty}`"))
            })?;
            chords.push(ChordLabel::new(root_value, kind.clone()));
        }
    }
    Ok(ChordSequence { chords })
}

pub fn serialize_sequence(seq: &ChordSequence) -> String {
    format!("{seq}\n")
}
