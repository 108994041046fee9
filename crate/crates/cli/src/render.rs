use clap::ValueEnum;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// Aligned columns.
    Plain,
    /// Tab-separated values with a header row.
    Tsv,
}

/// Renders a header and rows. Plain output pads columns to a common width.
pub fn table(format: Format, header: &[String], rows: &[Vec<String>]) -> String {
    let mut out = String::new();
    match format {
        Format::Tsv => {
            for row in std::iter::once(header).chain(rows.iter().map(Vec::as_slice)) {
                out.push_str(&row.join("\t"));
                out.push('\n');
            }
        }
        Format::Plain => {
            let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
            for row in rows {
                for (w, cell) in widths.iter_mut().zip(row) {
                    *w = (*w).max(cell.chars().count());
                }
            }
            for row in std::iter::once(header).chain(rows.iter().map(Vec::as_slice)) {
                let line: Vec<String> = row
                    .iter()
                    .zip(&widths)
                    .map(|(cell, &w)| format!("{cell:<w$}"))
                    .collect();
                out.push_str(line.join("  ").trim_end());
                out.push('\n');
            }
        }
    }
    out
}

pub fn header(cols: &[&str]) -> Vec<String> {
    cols.iter().map(|s| s.to_string()).collect()
}
