use std::fmt::Write;

use num_bigint::BigUint;
use serde::Serialize;

/// One table row: a class at fixed `k`, or a Catalan variant.
#[derive(Clone, Debug)]
pub struct Row {
    pub name: String,
    pub k: Option<u32>,
    pub counts: Vec<BigUint>,
}

#[derive(Serialize)]
struct JsonCell<'a> {
    class: &'a str,
    k: Option<u32>,
    n: usize,
    count: String,
}

pub fn csv(rows: &[Row], catalan: bool) -> String {
    let mut out = String::from(if catalan { "variant,n,count\n" } else { "k,n,count\n" });
    for row in rows {
        for (n, c) in row.counts.iter().enumerate() {
            match row.k {
                Some(k) if !catalan => writeln!(out, "{k},{n},{c}"),
                _ => writeln!(out, "{},{n},{c}", row.name),
            }
            .unwrap();
        }
    }
    out
}

pub fn json(rows: &[Row]) -> String {
    let cells: Vec<JsonCell> = rows
        .iter()
        .flat_map(|row| {
            row.counts.iter().enumerate().map(move |(n, c)| JsonCell {
                class: &row.name,
                k: row.k,
                n,
                count: c.to_string(),
            })
        })
        .collect();
    let mut s = serde_json::to_string_pretty(&cells).expect("plain data");
    s.push('\n');
    s
}

pub fn markdown(rows: &[Row], caption: &str, catalan: bool) -> String {
    let width = rows.iter().map(|r| r.counts.len()).max().unwrap_or(0);
    let mut out = String::new();
    out.push_str(if catalan { "| variant / n |" } else { "| k / n |" });
    for n in 0..width {
        write!(out, " {n} |").unwrap();
    }
    out.push_str("\n|---|");
    out.push_str(&"---:|".repeat(width));
    out.push('\n');
    for row in rows {
        let head = match row.k {
            Some(k) if !catalan => k.to_string(),
            _ => row.name.clone(),
        };
        write!(out, "| {head} |").unwrap();
        for c in &row.counts {
            write!(out, " {c} |").unwrap();
        }
        out.push('\n');
    }
    writeln!(out, "\n{caption}").unwrap();
    out
}

pub fn bfile(row: &Row) -> String {
    let mut out = match row.k {
        Some(k) => format!("# {} k={k}\n", row.name),
        None => format!("# {}\n", row.name),
    };
    for (n, c) in row.counts.iter().enumerate() {
        writeln!(out, "{n} {c}").unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(k: u32, counts: &[u32]) -> Row {
        Row { name: "even-up".into(), k: Some(k), counts: counts.iter().map(|&c| BigUint::from(c)).collect() }
    }

    #[test]
    fn csv_layout() {
        assert_eq!(csv(&[row(1, &[1, 1])], false), "k,n,count\n1,0,1\n1,1,1\n");
        let v = Row { name: "strict-odd-up".into(), k: None, counts: vec![BigUint::from(1u32)] };
        assert_eq!(csv(&[v], true), "variant,n,count\nstrict-odd-up,0,1\n");
    }

    #[test]
    fn json_counts_are_strings() {
        let text = json(&[row(3, &[1, 3])]);
        let parsed: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(parsed[1]["count"], "3");
        assert_eq!(parsed[1]["k"], 3);
        assert_eq!(parsed[1]["class"], "even-up");
    }

    #[test]
    fn markdown_layout() {
        let md = markdown(&[row(1, &[1, 1, 1])], "Number of even-up words.", false);
        assert!(md.starts_with("| k / n | 0 | 1 | 2 |\n|---|---:|---:|---:|\n| 1 | 1 | 1 | 1 |\n"));
        assert!(md.ends_with("Number of even-up words.\n"));
    }
}
