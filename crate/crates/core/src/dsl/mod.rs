//! Text format for transformation systems and chord sequences.
//!
//! A system file is a list of blocks. A block starts with a header line
//! (`system`, `type <name>`, `phi`, `zeta` or `chi`) and continues with
//! `key = value` lines. `#` starts a comment and indentation is ignored.
//!
//! ```text
//! system
//!   modulus = 12
//!   mode = group          # or groupoid
//!   h = cyclic 2          # group: cyclic <n> | table; groupoid: complete | classes
//!   h_names = 1, s
//!
//! type M
//!   intervals = 0, 4, 7
//!
//! type m
//!   intervals = 0, 3, 7
//!
//! phi
//!   mode = inverse        # trivial | inverse | explicit (with `map = s, -1` lines)
//!
//! zeta
//!   mode = trivial        # trivial | explicit (with `value = s, s, 6` lines)
//!
//! chi
//!   root = 0
//!   types = M, m
//! ```
//!
//! In groupoid mode the objects are the types, `h = classes` takes one
//! `class = M, alpha` line per component, φ entries read `map = M, alpha, -1`
//! (unit of `φ` along `h_{M,alpha}`), cocycle entries read
//! `value = M, alpha, beta, k` (`ζ(h_{alpha,beta}, h_{M,alpha}) = z^k`), and
//! `chi` takes `root`, `anchor` and `variance`.

mod parse;
mod sequence;
mod write;

use std::fmt;

use thiserror::Error;

pub use parse::parse_system;
pub use sequence::{parse_sequence, serialize_sequence, ChordSequence};
pub use write::serialize_system;

use crate::groupoid_action::Variance;

/// The D24 system on major and minor triads.
pub const D24_SYSTEM: &str = include_str!("../../fixtures/d24.sys");
/// The groupoid system on `M`, `alpha`, `beta`.
pub const MALPHABETA_SYSTEM: &str = include_str!("../../fixtures/malphabeta.sys");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SystemMode {
    Group,
    Groupoid,
}

impl fmt::Display for SystemMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SystemMode::Group => "group",
            SystemMode::Groupoid => "groupoid",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeSpec {
    pub name: String,
    pub intervals: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HSpec {
    Cyclic {
        names: Vec<String>,
    },
    /// `rows[a][b]` is the index of `a · b`.
    Table {
        names: Vec<String>,
        rows: Vec<Vec<usize>>,
    },
    Complete,
    /// Components as lists of type names.
    Classes(Vec<Vec<String>>),
}

/// An explicit `φ` unit: `on` is `[h]` for groups, `[dom, cod]` for groupoids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiEntry {
    pub on: Vec<String>,
    pub unit: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PhiSpec {
    Trivial,
    Inverse,
    Explicit(Vec<PhiEntry>),
}

/// An explicit cocycle value: `at` is `[h1, h2]` for groups and
/// `[X, Y, W]` (the pair `h_YW`, `h_XY`) for groupoids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZetaEntry {
    pub at: Vec<String>,
    pub value: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ZetaSpec {
    Trivial,
    Explicit(Vec<ZetaEntry>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChiSpec {
    /// `types[i]` is the type of the `i`-th element of `H`.
    Group { root: u32, types: Vec<String> },
    Groupoid {
        root: u32,
        anchor: String,
        variance: Variance,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystemSpec {
    pub modulus: u32,
    pub mode: SystemMode,
    pub h: HSpec,
    pub types: Vec<TypeSpec>,
    pub phi: PhiSpec,
    pub zeta: ZetaSpec,
    pub chi: ChiSpec,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax { expected: String, found: String },
    Semantic(String),
    MissingBlock(&'static str),
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::Syntax { expected, found } => {
                write!(f, "expected {expected}, found `{found}`")
            }
            ParseErrorKind::Semantic(msg) => f.write_str(msg),
            ParseErrorKind::MissingBlock(what) => write!(f, "missing {what} block"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

impl ParseError {
    pub fn syntax(
        line: usize,
        column: usize,
        expected: impl Into<String>,
        found: impl Into<String>,
    ) -> Self {
        Self {
            line,
            column,
            kind: ParseErrorKind::Syntax {
                expected: expected.into(),
                found: found.into(),
            },
        }
    }

    pub fn semantic(line: usize, column: usize, msg: impl Into<String>) -> Self {
        Self {
            line,
            column,
            kind: ParseErrorKind::Semantic(msg.into()),
        }
    }

    pub fn is_syntax(&self) -> bool {
        matches!(self.kind, ParseErrorKind::Syntax { .. })
    }
}

/// Names must be non-empty and free of whitespace, `,`, `=` and `#`.
pub fn is_valid_name(s: &str) -> bool {
    !s.is_empty()
        && !s
            .chars()
            .any(|c| c.is_whitespace() || matches!(c, ',' | '=' | '#'))
}
