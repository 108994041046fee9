use std::fmt;
use std::path::Path;

use chordgroup::dsl::{parse_sequence, parse_system, SystemSpec, D24_SYSTEM, MALPHABETA_SYSTEM};
use chordgroup::geninv::{enumerate_geninvs, geninv_from_morphism};
use chordgroup::pcs::common_tones;
use chordgroup::system::{GroupSystem, GroupoidSystem, System};
use chordgroup::{ChordLabel, GroupoidChi, Variance};

use crate::render::{self, header, Format};

pub struct Output {
    pub stdout: String,
    pub code: u8,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Self { stdout, code: 0 }
    }
}

#[derive(Debug)]
pub enum CliError {
    /// Unreadable or malformed input, or a request the system cannot serve.
    Input(String),
    /// A well-formed request that fails on mathematical grounds.
    Domain(String),
    /// A computed label failed its own re-application check.
    Internal(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Domain(_) => 1,
            CliError::Input(_) => 2,
            CliError::Internal(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) | CliError::Domain(m) => f.write_str(m),
            CliError::Internal(m) => write!(f, "internal self-check failed: {m}"),
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn read(source: &str) -> Result<String> {
    match source {
        "builtin:d24" => Ok(D24_SYSTEM.to_string()),
        "builtin:malphabeta" => Ok(MALPHABETA_SYSTEM.to_string()),
        "-" => std::io::read_to_string(std::io::stdin())
            .map_err(|e| CliError::Input(format!("stdin: {e}"))),
        path => std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{path}: {e}"))),
    }
}

fn load_spec(source: &str) -> Result<SystemSpec> {
    parse_system(&read(source)?).map_err(|e| CliError::Input(format!("{source}: {e}")))
}

fn load(source: &str) -> Result<(SystemSpec, System)> {
    let spec = load_spec(source)?;
    let system = System::build(&spec).map_err(|e| CliError::Domain(format!("{source}: {e}")))?;
    Ok((spec, system))
}

pub fn verify(source: &str, format: Format) -> Result<Output> {
    let spec = load_spec(source)?;
    let h = header(&["status", "check", "detail"]);
    let system = match System::build(&spec) {
        Ok(s) => s,
        Err(e) => {
            let rows = vec![vec![
                "FAIL".into(),
                "H group".into(),
                format!("{} ({e})", e.axiom()),
            ]];
            return Ok(Output {
                stdout: render::table(format, &h, &rows),
                code: 1,
            });
        }
    };
    let report = system.verify();
    let rows: Vec<Vec<String>> = report
        .checks
        .iter()
        .map(|c| {
            let status = if c.passed() { "PASS" } else { "FAIL" };
            let detail = if c.passed() {
                c.detail.clone()
            } else {
                format!("{}: {}", c.failures.join(", "), c.detail)
            };
            vec![status.into(), c.name.into(), detail]
        })
        .collect();
    let mut stdout = render::table(format, &h, &rows);
    if report.passed() {
        match format {
            Format::Plain => stdout.push_str(&format!("{}\n", report.summary)),
            Format::Tsv => stdout.push_str(&format!("SUMMARY\tsystem\t{}\n", report.summary)),
        }
    }
    Ok(Output {
        stdout,
        code: if report.passed() { 0 } else { 1 },
    })
}

#[derive(Clone, Copy, Debug)]
pub struct Families {
    pub left: bool,
    pub right: bool,
    pub groupoid: bool,
}

pub fn analyze(
    source: &str,
    sequence: &Path,
    families: Families,
    format: Format,
) -> Result<Output> {
    let (spec, system) = load(source)?;
    let seq_name = sequence.display().to_string();
    let seq_text = read(&seq_name)?;
    let seq = parse_sequence(&seq_text, &spec)
        .map_err(|e| CliError::Input(format!("{seq_name}: {e}")))?;
    if seq.chords.len() < 2 {
        return Err(CliError::Input(format!(
            "{seq_name}: a sequence needs at least two chords"
        )));
    }
    let pairs: Vec<(&ChordLabel, &ChordLabel)> =
        seq.chords.windows(2).map(|w| (&w[0], &w[1])).collect();
    let (h, rows) = match &system {
        System::Group(g) => {
            if families.groupoid {
                return Err(CliError::Input("--groupoid needs a groupoid system".into()));
            }
            let none = !families.left && !families.right;
            analyze_group(g, &pairs, families.left || none, families.right || none)?
        }
        System::Groupoid(g) => {
            if families.left || families.right {
                return Err(CliError::Input(
                    "--left/--right need a group system; groupoid systems give morphism labels"
                        .into(),
                ));
            }
            analyze_groupoid(g, &pairs)?
        }
    };
    Ok(Output::ok(render::table(format, &h, &rows)))
}

fn analyze_group(
    s: &GroupSystem,
    pairs: &[(&ChordLabel, &ChordLabel)],
    left: bool,
    right: bool,
) -> Result<(Vec<String>, Vec<Vec<String>>)> {
    let mut cols = vec!["from", "to"];
    if left {
        cols.push("left");
    }
    if right {
        cols.push("right");
    }
    let domain = |e: chordgroup::ActionError| CliError::Domain(e.to_string());
    let mut rows = Vec::new();
    for &(p, q) in pairs {
        let mut row = vec![p.to_string(), q.to_string()];
        if left {
            let g = s.chi.solve_left(p, q).map_err(domain)?;
            if s.chi.left_act(g, p).ok().as_ref() != Some(q) {
                return Err(CliError::Internal(format!("left label for {p} -> {q}")));
            }
            let name = match &s.neo_riemannian {
                Some(nr) => {
                    let name = nr.ti_name(g);
                    if nr.ti_left_action(name, p).ok().as_ref() != Some(q) {
                        return Err(CliError::Internal(format!(
                            "{name} does not take {p} to {q}"
                        )));
                    }
                    name.to_string()
                }
                None => s.group.name(g),
            };
            row.push(name);
        }
        if right {
            let g = s.chi.solve_right(p, q).map_err(domain)?;
            if s.chi.right_act(p, g).ok().as_ref() != Some(q) {
                return Err(CliError::Internal(format!("right label for {p} -> {q}")));
            }
            let name = match &s.neo_riemannian {
                Some(nr) => {
                    let word = nr.plr_word(g);
                    if nr.eval_plr_word(&word) != Some(g) {
                        return Err(CliError::Internal(format!(
                            "{word} does not take {p} to {q}"
                        )));
                    }
                    word
                }
                None => s.group.name(g),
            };
            row.push(name);
        }
        rows.push(row);
    }
    Ok((header(&cols), rows))
}

fn groupoid_chi(s: &GroupoidSystem) -> Result<&GroupoidChi> {
    s.chi
        .as_ref()
        .ok_or_else(|| CliError::Domain("the chi anchor does not reach every type".into()))
}

fn analyze_groupoid(
    s: &GroupoidSystem,
    pairs: &[(&ChordLabel, &ChordLabel)],
) -> Result<(Vec<String>, Vec<Vec<String>>)> {
    let chi = groupoid_chi(s)?;
    let mut rows = Vec::new();
    for &(p, q) in pairs {
        let g = chi
            .label_pair(p, q)
            .map_err(|e| CliError::Domain(e.to_string()))?;
        if chi.act(g, p).ok().as_ref() != Some(q) {
            return Err(CliError::Internal(format!(
                "{} does not take {p} to {q}",
                s.ext.name(g)
            )));
        }
        let inversion = match geninv_from_morphism(g, chi) {
            Ok(r) => {
                // Frame-relative operators reproduce the action on the root-anchor chord.
                let probe = if r.frame_relative {
                    chi.chord(chi.root_anchor().value() as i64, chi.acting_object(g))
                } else {
                    p.clone()
                };
                let expected = chi.act(g, &probe).ok();
                if r.inversion.apply(&probe).ok() != expected {
                    return Err(CliError::Internal(format!(
                        "{} disagrees with {}",
                        r.inversion,
                        s.ext.name(g)
                    )));
                }
                r.inversion.to_string()
            }
            Err(_) => "-".to_string(),
        };
        let contextual = if chi.contextual_check(g).contextual {
            "yes"
        } else {
            "no"
        };
        rows.push(vec![
            p.to_string(),
            q.to_string(),
            s.ext.name(g),
            inversion,
            contextual.into(),
        ]);
    }
    Ok((
        header(&["from", "to", "morphism", "inversion", "contextual"]),
        rows,
    ))
}

pub fn enumerate(
    source: &str,
    t1: &str,
    t2: &str,
    min: Option<usize>,
    format: Format,
) -> Result<Output> {
    let (_, system) = load(source)?;
    let objects = match &system {
        System::Group(g) => g.chi.types().to_vec(),
        System::Groupoid(g) => g.ext.objects().to_vec(),
    };
    let find = |name: &str| {
        objects
            .iter()
            .find(|t| t.name() == name)
            .cloned()
            .ok_or_else(|| CliError::Input(format!("unknown type `{name}`")))
    };
    let (a, b) = (find(t1)?, find(t2)?);
    let all = enumerate_geninvs(&a, &b, min).map_err(|e| CliError::Domain(e.to_string()))?;
    let origin = ChordLabel::new(0, a.clone());
    let mut rows = Vec::new();
    for j in &all {
        let image = j
            .apply(&origin)
            .map_err(|e| CliError::Internal(e.to_string()))?;
        rows.push(vec![
            j.to_string(),
            j.constant().to_string(),
            j.pairing()
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(","),
            j.inversions()
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(","),
            image.to_string(),
            common_tones(&origin, &image).len().to_string(),
        ]);
    }
    let h = header(&["name", "c", "pairing", "inversions", "image", "common"]);
    Ok(Output::ok(render::table(format, &h, &rows)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableKind {
    Cayley,
    Left,
    Right,
}

pub fn table_cmd_group(s: &GroupSystem, kind: TableKind) -> (Vec<String>, Vec<Vec<String>>) {
    let g = &s.group;
    let elements: Vec<_> = g.elements().collect();
    if kind == TableKind::Cayley {
        let mut h = vec!["*".to_string()];
        h.extend(elements.iter().map(|&e| g.name(e)));
        let rows = elements
            .iter()
            .map(|&a| {
                let mut row = vec![g.name(a)];
                row.extend(elements.iter().map(|&b| g.name(g.compose(a, b))));
                row
            })
            .collect();
        return (h, rows);
    }
    let chords = s.chi.chords();
    let mut h = vec!["element".to_string()];
    if s.neo_riemannian.is_some() {
        h.push("name".to_string());
    }
    h.extend(chords.iter().map(ToString::to_string));
    let rows = elements
        .iter()
        .map(|&e| {
            let mut row = vec![g.name(e)];
            if let Some(nr) = &s.neo_riemannian {
                row.push(match kind {
                    TableKind::Left => nr.ti_name(e).to_string(),
                    _ => nr.plr_word(e),
                });
            }
            row.extend(chords.iter().map(|p| {
                let image = match kind {
                    TableKind::Left => s.chi.left_act(e, p),
                    _ => s.chi.right_act(p, e),
                };
                image.map_or_else(|_| "-".to_string(), |c| c.to_string())
            }));
            row
        })
        .collect();
    (h, rows)
}

pub fn table(source: &str, kind: TableKind, format: Format) -> Result<Output> {
    let (_, system) = load(source)?;
    let (h, rows) = match &system {
        System::Group(g) => table_cmd_group(g, kind),
        System::Groupoid(g) => {
            if kind == TableKind::Cayley {
                return Err(CliError::Input(
                    "a groupoid has no global composition table; use `dot` to see its structure"
                        .into(),
                ));
            }
            let variance = if kind == TableKind::Left {
                Variance::Covariant
            } else {
                Variance::Contravariant
            };
            let chi = groupoid_chi(g)?.with_variance(variance);
            let chords = chi.chords();
            let mut h = vec![format!("{variance}")];
            h.extend(chords.iter().map(ToString::to_string));
            let rows = g
                .ext
                .morphisms()
                .into_iter()
                .map(|m| {
                    let mut row = vec![g.ext.name(m)];
                    row.extend(chords.iter().map(|p| {
                        chi.act(m, p)
                            .map_or_else(|_| "-".to_string(), |c| c.to_string())
                    }));
                    row
                })
                .collect();
            (h, rows)
        }
    };
    Ok(Output::ok(render::table(format, &h, &rows)))
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn dot(source: &str) -> Result<Output> {
    let (_, system) = load(source)?;
    let System::Groupoid(g) = system else {
        return Err(CliError::Input(
            "a group system has one object; use `table --cayley` instead".into(),
        ));
    };
    let h = g.ext.h_groupoid();
    let n = g.ext.z().order();
    let mut out = String::from("digraph H {\n");
    for x in 0..h.object_count() {
        out.push_str(&format!("  {};\n", quote(h.object_name(x))));
    }
    for m in h.generators() {
        let image = g.ext.phi().apply(m, 1 % n);
        let phi = match image {
            1 => "z -> z".to_string(),
            k => format!("z -> z^{k}"),
        };
        out.push_str(&format!(
            "  {} -> {} [label={}];\n",
            quote(h.object_name(m.dom)),
            quote(h.object_name(m.cod)),
            quote(&format!("{}: {phi}", h.h_name(m)))
        ));
    }
    out.push_str("}\n");
    Ok(Output::ok(out))
}
