use std::collections::BTreeSet;

use super::{
    is_valid_name, ChiSpec, HSpec, ParseError, ParseErrorKind, PhiEntry, PhiSpec, SystemMode,
    SystemSpec, TypeSpec, ZetaEntry, ZetaSpec,
};
use crate::group::power_name;
use crate::groupoid_action::Variance;
use crate::pcs::PcSetType;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum BlockKind {
    System,
    Type,
    Phi,
    Zeta,
    Chi,
}

impl BlockKind {
    fn keys(self) -> &'static [&'static str] {
        match self {
            BlockKind::System => &["modulus", "mode", "h", "h_names", "h_row", "class"],
            BlockKind::Type => &["intervals"],
            BlockKind::Phi => &["mode", "map"],
            BlockKind::Zeta => &["mode", "value"],
            BlockKind::Chi => &["root", "types", "anchor", "variance"],
        }
    }

    fn repeatable(key: &str) -> bool {
        matches!(key, "h_row" | "class" | "map" | "value")
    }
}

const HEADERS: &str = "a block header (`system`, `type <name>`, `phi`, `zeta`, `chi`)";

#[derive(Clone, Debug)]
struct Pair<'a> {
    key: &'a str,
    value: &'a str,
    line: usize,
    key_col: usize,
    value_col: usize,
}

#[derive(Clone, Copy, Debug)]
struct Item<'a> {
    text: &'a str,
    line: usize,
    col: usize,
}

impl<'a> Pair<'a> {
    fn whole(&self) -> Result<Item<'a>, ParseError> {
        if self.value.is_empty() {
            return Err(ParseError::syntax(
                self.line,
                self.value_col,
                "a value",
                "end of line",
            ));
        }
        Ok(Item {
            text: self.value,
            line: self.line,
            col: self.value_col,
        })
    }

    fn items(&self) -> Result<Vec<Item<'a>>, ParseError> {
        let mut out = Vec::new();
        let mut offset = 0;
        for part in self.value.split(',') {
            let lead = part.len() - part.trim_start().len();
            let col = self.value_col + self.value[..offset + lead].chars().count();
            let text = part.trim();
            if text.is_empty() {
                let found = if offset + part.len() < self.value.len() {
                    ","
                } else {
                    "end of line"
                };
                return Err(ParseError::syntax(self.line, col, "a value", found));
            }
            out.push(Item {
                text,
                line: self.line,
                col,
            });
            offset += part.len() + 1;
        }
        Ok(out)
    }
}

impl Item<'_> {
    fn int(&self) -> Result<i64, ParseError> {
        self.text
            .parse::<i64>()
            .map_err(|_| ParseError::syntax(self.line, self.col, "an integer", self.text))
    }

    fn name(&self) -> Result<String, ParseError> {
        if is_valid_name(self.text) {
            Ok(self.text.to_string())
        } else {
            Err(ParseError::syntax(self.line, self.col, "a name", self.text))
        }
    }

    fn semantic(&self, msg: impl Into<String>) -> ParseError {
        ParseError::semantic(self.line, self.col, msg)
    }

    fn one_of<T: Copy>(&self, options: &[(&str, T)]) -> Result<T, ParseError> {
        options
            .iter()
            .find(|(k, _)| *k == self.text)
            .map(|&(_, v)| v)
            .ok_or_else(|| {
                let expected = options
                    .iter()
                    .map(|(k, _)| format!("`{k}`"))
                    .collect::<Vec<_>>()
                    .join(" or ");
                ParseError::syntax(self.line, self.col, expected, self.text)
            })
    }
}

#[derive(Clone, Debug)]
struct Block<'a> {
    kind: BlockKind,
    name: Option<Item<'a>>,
    line: usize,
    col: usize,
    pairs: Vec<Pair<'a>>,
}

impl<'a> Block<'a> {
    fn semantic(&self, msg: impl Into<String>) -> ParseError {
        ParseError::semantic(self.line, self.col, msg)
    }

    fn check_keys(&self) -> Result<(), ParseError> {
        let allowed = self.kind.keys();
        for (i, p) in self.pairs.iter().enumerate() {
            if !allowed.contains(&p.key) {
                let expected = allowed
                    .iter()
                    .map(|k| format!("`{k}`"))
                    .collect::<Vec<_>>()
                    .join(", ");
                return Err(ParseError::syntax(
                    p.line,
                    p.key_col,
                    format!("one of {expected}"),
                    p.key,
                ));
            }
            if !BlockKind::repeatable(p.key) && self.pairs[..i].iter().any(|q| q.key == p.key) {
                return Err(ParseError::semantic(
                    p.line,
                    p.key_col,
                    format!("`{}` given twice", p.key),
                ));
            }
        }
        Ok(())
    }

    fn get(&self, key: &str) -> Option<&Pair<'a>> {
        self.pairs.iter().find(|p| p.key == key)
    }

    fn require(&self, key: &str, header: &str) -> Result<&Pair<'a>, ParseError> {
        self.get(key)
            .ok_or_else(|| self.semantic(format!("`{header}` block needs `{key}`")))
    }

    fn all(&self, key: &str) -> Vec<&Pair<'a>> {
        self.pairs.iter().filter(|p| p.key == key).collect()
    }
}

fn column(line: &str, byte: usize) -> usize {
    line[..byte].chars().count() + 1
}

fn split_blocks(text: &str) -> Result<Vec<Block<'_>>, ParseError> {
    let mut blocks: Vec<Block> = Vec::new();
    for (i, raw) in text.split('\n').enumerate() {
        let line_no = i + 1;
        let line = raw.strip_suffix('\r').unwrap_or(raw);
        let content = line.find('#').map_or(line, |p| &line[..p]);
        if content.trim().is_empty() {
            continue;
        }
        let lead = content.len() - content.trim_start().len();
        if let Some(eq) = content.find('=') {
            let key = content[..eq].trim();
            if key.is_empty() {
                return Err(ParseError::syntax(line_no, column(line, eq), "a key", "="));
            }
            let after = &content[eq + 1..];
            let value = after.trim();
            let value_start = eq + 1 + (after.len() - after.trim_start().len());
            let pair = Pair {
                key,
                value,
                line: line_no,
                key_col: column(line, lead),
                value_col: column(line, value_start),
            };
            match blocks.last_mut() {
                Some(b) => b.pairs.push(pair),
                None => return Err(ParseError::syntax(line_no, pair.key_col, HEADERS, key)),
            }
            continue;
        }
        let words: Vec<(usize, &str)> = content
            .split_whitespace()
            .map(|w| (w.as_ptr() as usize - line.as_ptr() as usize, w))
            .collect();
        let (start, head) = words[0];
        let kind = match head {
            "system" => BlockKind::System,
            "type" => BlockKind::Type,
            "phi" => BlockKind::Phi,
            "zeta" => BlockKind::Zeta,
            "chi" => BlockKind::Chi,
            other => {
                return Err(ParseError::syntax(
                    line_no,
                    column(line, start),
                    HEADERS,
                    other,
                ))
            }
        };
        let name = match (kind, words.get(1), words.get(2)) {
            (BlockKind::Type, None, _) => {
                return Err(ParseError::syntax(
                    line_no,
                    column(line, start + head.len()),
                    "a type name",
                    "end of line",
                ))
            }
            (BlockKind::Type, Some(&(p, w)), None) => Some(Item {
                text: w,
                line: line_no,
                col: column(line, p),
            }),
            (BlockKind::Type, Some(_), Some(&(p, w))) | (_, Some(&(p, w)), _) => {
                return Err(ParseError::syntax(
                    line_no,
                    column(line, p),
                    "end of line",
                    w,
                ))
            }
            _ => None,
        };
        blocks.push(Block {
            kind,
            name,
            line: line_no,
            col: column(line, start),
            pairs: Vec::new(),
        });
    }
    Ok(blocks)
}

fn single<'b, 'a>(
    blocks: &'b [Block<'a>],
    kind: BlockKind,
    header: &str,
) -> Result<Option<&'b Block<'a>>, ParseError> {
    let mut found = blocks.iter().filter(|b| b.kind == kind);
    let first = found.next();
    if let Some(dup) = found.next() {
        return Err(dup.semantic(format!("second `{header}` block")));
    }
    Ok(first)
}

fn name_list<'a>(pair: &Pair<'a>) -> Result<Vec<(String, Item<'a>)>, ParseError> {
    let items = pair.items()?;
    let mut out: Vec<(String, Item)> = Vec::new();
    for it in items {
        let name = it.name()?;
        if out.iter().any(|(n, _)| *n == name) {
            return Err(it.semantic(format!("`{name}` listed twice")));
        }
        out.push((name, it));
    }
    Ok(out)
}

struct Context {
    modulus: u32,
    mode: SystemMode,
    types: Vec<TypeSpec>,
    h: HSpec,
}

impl Context {
    fn type_index(&self, it: &Item<'_>) -> Result<usize, ParseError> {
        self.types
            .iter()
            .position(|t| t.name == it.text)
            .ok_or_else(|| it.semantic(format!("unknown type `{}`", it.text)))
    }

    fn h_names(&self) -> &[String] {
        match &self.h {
            HSpec::Cyclic { names } | HSpec::Table { names, .. } => names,
            _ => &[],
        }
    }

    fn h_index(&self, it: &Item<'_>) -> Result<usize, ParseError> {
        self.h_names()
            .iter()
            .position(|n| n == it.text)
            .ok_or_else(|| it.semantic(format!("unknown element `{}` of H", it.text)))
    }

    fn component(&self, x: usize) -> usize {
        match &self.h {
            HSpec::Classes(classes) => classes
                .iter()
                .position(|c| c.contains(&self.types[x].name))
                .expect("classes partition the types"),
            _ => 0,
        }
    }

    fn residue(&self, it: &Item<'_>) -> Result<u32, ParseError> {
        Ok(it.int()?.rem_euclid(self.modulus as i64) as u32)
    }

    fn expect_arity<'a>(
        &self,
        pair: &Pair<'a>,
        arity: usize,
        shape: &str,
    ) -> Result<Vec<Item<'a>>, ParseError> {
        let items = pair.items()?;
        if items.len() != arity {
            let at = items.get(arity).unwrap_or(&items[items.len() - 1]);
            let found = items.get(arity).map_or("end of line", |i| i.text);
            return Err(ParseError::syntax(
                at.line,
                at.col,
                format!("`{} = {shape}`", pair.key),
                found,
            ));
        }
        Ok(items)
    }
}

/// Parses and validates a system file. Shapes and names are checked here;
/// algebraic axioms are left to [`crate::system::System::verify`].
pub fn parse_system(text: &str) -> Result<SystemSpec, ParseError> {
    let blocks = split_blocks(text)?;
    let system = single(&blocks, BlockKind::System, "system")?.ok_or(ParseError {
        line: 1,
        column: 1,
        kind: ParseErrorKind::MissingBlock("system"),
    })?;
    for b in &blocks {
        b.check_keys()?;
    }

    let modulus_item = system.require("modulus", "system")?.whole()?;
    let modulus = match modulus_item.int()? {
        m if m > 0 && m <= u32::MAX as i64 => m as u32,
        _ => return Err(modulus_item.semantic("modulus must be a positive integer")),
    };
    let mode = system.require("mode", "system")?.whole()?.one_of(&[
        ("group", SystemMode::Group),
        ("groupoid", SystemMode::Groupoid),
    ])?;

    let mut types: Vec<TypeSpec> = Vec::new();
    for b in blocks.iter().filter(|b| b.kind == BlockKind::Type) {
        let name_item = b.name.expect("type headers carry a name");
        let name = name_item.name()?;
        if types.iter().any(|t| t.name == name) {
            return Err(name_item.semantic(format!("type `{name}` declared twice")));
        }
        let pair = b.require("intervals", "type")?;
        let mut intervals = Vec::new();
        for it in pair.items()? {
            let v = it.int()?;
            if v < 0 || v >= modulus as i64 {
                return Err(it.semantic(format!("interval {v} out of range for modulus {modulus}")));
            }
            intervals.push(v as u32);
        }
        PcSetType::new(name.clone(), intervals.clone(), modulus)
            .map_err(|e| ParseError::semantic(pair.line, pair.value_col, e.to_string()))?;
        types.push(TypeSpec { name, intervals });
    }
    if types.is_empty() {
        return Err(system.semantic("no `type` blocks"));
    }

    let h_pair = system.require("h", "system")?;
    let h_item = h_pair.whole()?;
    let h_words: Vec<&str> = h_item.text.split_whitespace().collect();
    let rows = system.all("h_row");
    let classes = system.all("class");
    let names_pair = system.get("h_names");
    let misplaced = |pairs: &[&Pair<'_>], what: &str| -> Result<(), ParseError> {
        match pairs.first() {
            Some(p) => Err(ParseError::semantic(
                p.line,
                p.key_col,
                format!("`{}` does not apply to {what}", p.key),
            )),
            None => Ok(()),
        }
    };
    let h = match (mode, h_words.as_slice()) {
        (SystemMode::Group, ["cyclic", n]) => {
            misplaced(&rows, "a cyclic H")?;
            misplaced(&classes, "a group")?;
            let order = match n.parse::<usize>() {
                Ok(k) if k > 0 => k,
                _ => {
                    let col = h_item.col
                        + h_item
                            .text
                            .find(n)
                            .map_or(0, |b| h_item.text[..b].chars().count());
                    return Err(ParseError::syntax(h_item.line, col, "a positive order", *n));
                }
            };
            let names = match names_pair {
                Some(p) => {
                    let names = name_list(p)?;
                    if names.len() != order {
                        return Err(ParseError::semantic(
                            p.line,
                            p.value_col,
                            format!(
                                "H has {order} elements but {} names were given",
                                names.len()
                            ),
                        ));
                    }
                    names.into_iter().map(|(n, _)| n).collect()
                }
                None => (0..order).map(|k| power_name("s", k)).collect(),
            };
            HSpec::Cyclic { names }
        }
        (SystemMode::Group, ["table"]) => {
            misplaced(&classes, "a group")?;
            let p = names_pair.ok_or_else(|| system.semantic("`h = table` needs `h_names`"))?;
            let names: Vec<String> = name_list(p)?.into_iter().map(|(n, _)| n).collect();
            if rows.len() != names.len() {
                return Err(system.semantic(format!(
                    "`h = table` needs {} `h_row` lines, found {}",
                    names.len(),
                    rows.len()
                )));
            }
            let mut table = Vec::new();
            for r in &rows {
                let items = r.items()?;
                if items.len() != names.len() {
                    return Err(ParseError::semantic(
                        r.line,
                        r.value_col,
                        format!(
                            "row has {} entries, H has {} elements",
                            items.len(),
                            names.len()
                        ),
                    ));
                }
                let row = items
                    .iter()
                    .map(|it| {
                        names.iter().position(|n| n == it.text).ok_or_else(|| {
                            it.semantic(format!("unknown element `{}` of H", it.text))
                        })
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                table.push(row);
            }
            HSpec::Table { names, rows: table }
        }
        (SystemMode::Groupoid, ["complete"]) => {
            misplaced(&classes, "a complete groupoid")?;
            misplaced(&rows, "a groupoid")?;
            misplaced(&names_pair.into_iter().collect::<Vec<_>>(), "a groupoid")?;
            HSpec::Complete
        }
        (SystemMode::Groupoid, ["classes"]) => {
            misplaced(&rows, "a groupoid")?;
            misplaced(&names_pair.into_iter().collect::<Vec<_>>(), "a groupoid")?;
            let mut seen = BTreeSet::new();
            let mut out = Vec::new();
            for c in &classes {
                let mut class = Vec::new();
                for (name, it) in name_list(c)? {
                    if !types.iter().any(|t| t.name == name) {
                        return Err(it.semantic(format!("unknown type `{name}`")));
                    }
                    if !seen.insert(name.clone()) {
                        return Err(it.semantic(format!("type `{name}` is in two classes")));
                    }
                    class.push(name);
                }
                out.push(class);
            }
            if let Some(t) = types.iter().find(|t| !seen.contains(&t.name)) {
                return Err(h_pair
                    .whole()?
                    .semantic(format!("type `{}` is in no class", t.name)));
            }
            HSpec::Classes(out)
        }
        (SystemMode::Group, _) => {
            return Err(ParseError::syntax(
                h_item.line,
                h_item.col,
                "`cyclic <n>` or `table`",
                h_item.text,
            ))
        }
        (SystemMode::Groupoid, _) => {
            return Err(ParseError::syntax(
                h_item.line,
                h_item.col,
                "`complete` or `classes`",
                h_item.text,
            ))
        }
    };

    let ctx = Context {
        modulus,
        mode,
        types,
        h,
    };

    let chi_block = single(&blocks, BlockKind::Chi, "chi")?;
    let root = match chi_block.and_then(|b| b.get("root")) {
        Some(p) => {
            let it = p.whole()?;
            match it.int()? {
                r if r >= 0 && r < modulus as i64 => r as u32,
                r => {
                    return Err(it.semantic(format!("root {r} out of range for modulus {modulus}")))
                }
            }
        }
        None => 0,
    };
    let chi = match mode {
        SystemMode::Group => {
            if let Some(p) = chi_block.and_then(|b| b.get("anchor").or_else(|| b.get("variance"))) {
                return Err(ParseError::semantic(
                    p.line,
                    p.key_col,
                    format!("`{}` applies to groupoids", p.key),
                ));
            }
            let order = ctx.h_names().len();
            let types = match chi_block.and_then(|b| b.get("types")) {
                Some(p) => {
                    let list = name_list(p)?;
                    for (_, it) in &list {
                        ctx.type_index(it)?;
                    }
                    if list.len() != order {
                        return Err(ParseError::semantic(
                            p.line,
                            p.value_col,
                            format!("H has {order} elements but {} types were given", list.len()),
                        ));
                    }
                    list.into_iter().map(|(n, _)| n).collect()
                }
                None if ctx.types.len() == order => {
                    ctx.types.iter().map(|t| t.name.clone()).collect()
                }
                None => {
                    return Err(system.semantic(format!(
                        "H has {order} elements but {} types are declared; list them in `chi`",
                        ctx.types.len()
                    )))
                }
            };
            ChiSpec::Group { root, types }
        }
        SystemMode::Groupoid => {
            if let Some(p) = chi_block.and_then(|b| b.get("types")) {
                return Err(ParseError::semantic(
                    p.line,
                    p.key_col,
                    "`types` applies to groups",
                ));
            }
            let anchor = match chi_block.and_then(|b| b.get("anchor")) {
                Some(p) => {
                    let it = p.whole()?;
                    ctx.types[ctx.type_index(&it)?].name.clone()
                }
                None => ctx.types[0].name.clone(),
            };
            let variance = match chi_block.and_then(|b| b.get("variance")) {
                Some(p) => p.whole()?.one_of(&[
                    ("covariant", Variance::Covariant),
                    ("contravariant", Variance::Contravariant),
                ])?,
                None => Variance::Covariant,
            };
            ChiSpec::Groupoid {
                root,
                anchor,
                variance,
            }
        }
    };

    let phi = match single(&blocks, BlockKind::Phi, "phi")? {
        None => PhiSpec::Trivial,
        Some(b) => {
            let kind = b.require("mode", "phi")?.whole()?.one_of(&[
                ("trivial", 0),
                ("inverse", 1),
                ("explicit", 2),
            ])?;
            let maps = b.all("map");
            if kind != 2 {
                if let Some(p) = maps.first() {
                    return Err(ParseError::semantic(
                        p.line,
                        p.key_col,
                        "`map` needs `mode = explicit`",
                    ));
                }
            }
            match kind {
                0 => PhiSpec::Trivial,
                1 => PhiSpec::Inverse,
                _ => {
                    let mut entries: Vec<PhiEntry> = Vec::new();
                    for p in maps {
                        let entry = match ctx.mode {
                            SystemMode::Group => {
                                let items = ctx.expect_arity(p, 2, "<element>, <unit>")?;
                                ctx.h_index(&items[0])?;
                                PhiEntry {
                                    on: vec![items[0].text.to_string()],
                                    unit: ctx.residue(&items[1])?,
                                }
                            }
                            SystemMode::Groupoid => {
                                let items = ctx.expect_arity(p, 3, "<dom>, <cod>, <unit>")?;
                                let (x, y) =
                                    (ctx.type_index(&items[0])?, ctx.type_index(&items[1])?);
                                if x == y || ctx.component(x) != ctx.component(y) {
                                    return Err(items[0].semantic(format!(
                                        "no formal inversion from `{}` to `{}`",
                                        items[0].text, items[1].text
                                    )));
                                }
                                PhiEntry {
                                    on: vec![items[0].text.to_string(), items[1].text.to_string()],
                                    unit: ctx.residue(&items[2])?,
                                }
                            }
                        };
                        if entries.iter().any(|e| e.on == entry.on) {
                            return Err(ParseError::semantic(
                                p.line,
                                p.value_col,
                                "φ given twice for this morphism",
                            ));
                        }
                        entries.push(entry);
                    }
                    PhiSpec::Explicit(entries)
                }
            }
        }
    };

    let zeta = match single(&blocks, BlockKind::Zeta, "zeta")? {
        None => ZetaSpec::Trivial,
        Some(b) => {
            let explicit = b
                .require("mode", "zeta")?
                .whole()?
                .one_of(&[("trivial", false), ("explicit", true)])?;
            let values = b.all("value");
            if !explicit {
                if let Some(p) = values.first() {
                    return Err(ParseError::semantic(
                        p.line,
                        p.key_col,
                        "`value` needs `mode = explicit`",
                    ));
                }
                ZetaSpec::Trivial
            } else {
                let mut entries: Vec<ZetaEntry> = Vec::new();
                for p in values {
                    let entry = match ctx.mode {
                        SystemMode::Group => {
                            let items = ctx.expect_arity(p, 3, "<h1>, <h2>, <k>")?;
                            ctx.h_index(&items[0])?;
                            ctx.h_index(&items[1])?;
                            ZetaEntry {
                                at: vec![items[0].text.to_string(), items[1].text.to_string()],
                                value: ctx.residue(&items[2])?,
                            }
                        }
                        SystemMode::Groupoid => {
                            let items = ctx.expect_arity(p, 4, "<X>, <Y>, <W>, <k>")?;
                            let x = ctx.type_index(&items[0])?;
                            let y = ctx.type_index(&items[1])?;
                            let w = ctx.type_index(&items[2])?;
                            if ctx.component(x) != ctx.component(y)
                                || ctx.component(y) != ctx.component(w)
                            {
                                return Err(
                                    items[0].semantic("these morphisms are not in the groupoid")
                                );
                            }
                            ZetaEntry {
                                at: items[..3].iter().map(|i| i.text.to_string()).collect(),
                                value: ctx.residue(&items[3])?,
                            }
                        }
                    };
                    if entries.iter().any(|e| e.at == entry.at) {
                        return Err(ParseError::semantic(
                            p.line,
                            p.value_col,
                            "ζ given twice for this pair",
                        ));
                    }
                    entries.push(entry);
                }
                ZetaSpec::Explicit(entries)
            }
        }
    };

    Ok(SystemSpec {
        modulus,
        mode,
        h: ctx.h,
        types: ctx.types,
        phi,
        zeta,
        chi,
    })
}
