use std::fmt::Write;

use super::{ChiSpec, HSpec, PhiSpec, SystemSpec, ZetaSpec};

fn list<T: ToString>(items: &[T]) -> String {
    items
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

/// Canonical text for `spec`, with LF line endings. Parsing it gives back
/// `spec`.
pub fn serialize_system(spec: &SystemSpec) -> String {
    let mut out = String::new();
    let w = &mut out;
    writeln!(w, "system").unwrap();
    writeln!(w, "  modulus = {}", spec.modulus).unwrap();
    writeln!(w, "  mode = {}", spec.mode).unwrap();
    match &spec.h {
        HSpec::Cyclic { names } => {
            writeln!(w, "  h = cyclic {}", names.len()).unwrap();
            writeln!(w, "  h_names = {}", list(names)).unwrap();
        }
        HSpec::Table { names, rows } => {
            writeln!(w, "  h = table").unwrap();
            writeln!(w, "  h_names = {}", list(names)).unwrap();
            for row in rows {
                let row: Vec<&str> = row.iter().map(|&i| names[i].as_str()).collect();
                writeln!(w, "  h_row = {}", list(&row)).unwrap();
            }
        }
        HSpec::Complete => writeln!(w, "  h = complete").unwrap(),
        HSpec::Classes(classes) => {
            writeln!(w, "  h = classes").unwrap();
            for c in classes {
                writeln!(w, "  class = {}", list(c)).unwrap();
            }
        }
    }
    for t in &spec.types {
        writeln!(w, "\ntype {}", t.name).unwrap();
        writeln!(w, "  intervals = {}", list(&t.intervals)).unwrap();
    }
    writeln!(w, "\nphi").unwrap();
    match &spec.phi {
        PhiSpec::Trivial => writeln!(w, "  mode = trivial").unwrap(),
        PhiSpec::Inverse => writeln!(w, "  mode = inverse").unwrap(),
        PhiSpec::Explicit(entries) => {
            writeln!(w, "  mode = explicit").unwrap();
            for e in entries {
                writeln!(w, "  map = {}, {}", list(&e.on), e.unit).unwrap();
            }
        }
    }
    writeln!(w, "\nzeta").unwrap();
    match &spec.zeta {
        ZetaSpec::Trivial => writeln!(w, "  mode = trivial").unwrap(),
        ZetaSpec::Explicit(entries) => {
            writeln!(w, "  mode = explicit").unwrap();
            for e in entries {
                writeln!(w, "  value = {}, {}", list(&e.at), e.value).unwrap();
            }
        }
    }
    writeln!(w, "\nchi").unwrap();
    match &spec.chi {
        ChiSpec::Group { root, types } => {
            writeln!(w, "  root = {root}").unwrap();
            writeln!(w, "  types = {}", list(types)).unwrap();
        }
        ChiSpec::Groupoid {
            root,
            anchor,
            variance,
        } => {
            writeln!(w, "  root = {root}").unwrap();
            writeln!(w, "  anchor = {anchor}").unwrap();
            writeln!(w, "  variance = {variance}").unwrap();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::{parse_system, D24_SYSTEM, MALPHABETA_SYSTEM};

    #[test]
    fn bundled_fixtures_round_trip() {
        for text in [D24_SYSTEM, MALPHABETA_SYSTEM] {
            let spec = parse_system(text).unwrap();
            let canonical = serialize_system(&spec);
            assert_eq!(parse_system(&canonical).unwrap(), spec);
            assert_eq!(
                serialize_system(&parse_system(&canonical).unwrap()),
                canonical
            );
        }
    }

    #[test]
    fn minimal_golden() {
        let spec =
            parse_system("system\nmodulus=12\nmode=group\nh=cyclic 1\ntype M\nintervals=0,4,7\n")
                .unwrap();
        let golden = "system\n  modulus = 12\n  mode = group\n  h = cyclic 1\n  h_names = 1\n\n\
                      type M\n  intervals = 0, 4, 7\n\nphi\n  mode = trivial\n\nzeta\n  mode = trivial\n\n\
                      chi\n  root = 0\n  types = M\n";
        assert_eq!(serialize_system(&spec), golden);
    }
}
