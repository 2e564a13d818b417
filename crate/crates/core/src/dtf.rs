//! Line based text format for dimers, weights and representations.
//!
//! ```text
//! dimer <name>
//! vertices <V>
//! arrow <id> <head> <tail> [label]
//! face + <a1> ... <ak>     # t(a_i) = h(a_{i+1})
//! face - <a1> ... <ak>
//! end
//! ```

use std::fmt::Write;

use crate::dimer::{Dimer, Sign};
use crate::error::DimerError;
use crate::scalar::{parse_scalar, Scalar};

struct Tokens<'a> {
    line: usize,
    items: Vec<(usize, &'a str)>,
}

fn tokenize(text: &str) -> Vec<Tokens<'_>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("");
        let mut items = Vec::new();
        let mut start = None;
        for (j, ch) in body.char_indices() {
            if ch.is_whitespace() {
                if let Some(s) = start.take() {
                    items.push((s + 1, &body[s..j]));
                }
            } else if start.is_none() {
                start = Some(j);
            }
        }
        if let Some(s) = start {
            items.push((s + 1, &body[s..]));
        }
        if !items.is_empty() {
            out.push(Tokens { line: i + 1, items });
        }
    }
    out
}

fn syntax(line: usize, column: usize, msg: impl Into<String>) -> DimerError {
    DimerError::Syntax { line, column, msg: msg.into() }
}

fn int(line: &Tokens<'_>, k: usize, what: &str) -> Result<usize, DimerError> {
    let Some(&(col, tok)) = line.items.get(k) else {
        let col = line.items.last().map(|(c, t)| c + t.len()).unwrap_or(1);
        return Err(syntax(line.line, col, format!("missing {what}")));
    };
    tok.parse::<usize>().map_err(|_| syntax(line.line, col, format!("expected {what}, found '{tok}'")))
}

pub fn parse_dimer(text: &str) -> Result<Dimer, DimerError> {
    let lines = tokenize(text);
    let mut name = None;
    let mut vertices = None;
    let mut arrows: Vec<(usize, usize, usize, Option<String>, usize, usize)> = Vec::new();
    let mut faces: Vec<(Sign, Vec<usize>, usize)> = Vec::new();
    let mut ended = false;
    for line in &lines {
        let (col, kw) = line.items[0];
        if ended {
            return Err(syntax(line.line, col, "content after 'end'"));
        }
        match kw {
            "dimer" => {
                if line.items.len() < 2 {
                    return Err(syntax(line.line, col, "missing dimer name"));
                }
                let from = line.items[1].0 - 1;
                let raw = text.lines().nth(line.line - 1).unwrap_or("");
                let body = raw.split('#').next().unwrap_or("");
                name = Some(body[from..].trim().to_string());
            }
            "vertices" => {
                if vertices.is_some() {
                    return Err(syntax(line.line, col, "duplicate 'vertices' line"));
                }
                vertices = Some(int(line, 1, "vertex count")?);
            }
            "arrow" => {
                let id = int(line, 1, "arrow id")?;
                let h = int(line, 2, "head vertex")?;
                let t = int(line, 3, "tail vertex")?;
                let label = line.items.get(4).map(|(_, s)| s.to_string());
                if let Some(&(c, _)) = line.items.get(5) {
                    return Err(syntax(line.line, c, "unexpected token after arrow label"));
                }
                arrows.push((id, h, t, label, line.line, line.items[1].0));
            }
            "face" => {
                let Some(&(scol, s)) = line.items.get(1) else {
                    return Err(syntax(line.line, col, "missing face sign"));
                };
                let sign = match s {
                    "+" => Sign::Pos,
                    "-" => Sign::Neg,
                    _ => return Err(syntax(line.line, scol, format!("face sign must be + or -, found '{s}'"))),
                };
                if line.items.len() < 3 {
                    return Err(syntax(line.line, scol, "face without arrows"));
                }
                let mut ids = Vec::new();
                for k in 2..line.items.len() {
                    ids.push(int(line, k, "arrow id")?);
                }
                faces.push((sign, ids, line.line));
            }
            "end" => ended = true,
            other => return Err(syntax(line.line, col, format!("unknown keyword '{other}'"))),
        }
    }
    let first = lines.first().map(|l| l.line).unwrap_or(1);
    let name = name.ok_or_else(|| syntax(first, 1, "missing 'dimer' line"))?;
    let v = vertices.ok_or_else(|| syntax(first, 1, "missing 'vertices' line"))?;
    if !ended {
        let last = lines.last().map(|l| l.line).unwrap_or(1);
        return Err(syntax(last, 1, "missing 'end'"));
    }
    let e = arrows.len();
    let mut head = vec![0; e];
    let mut tail = vec![0; e];
    let mut labels = vec![None; e];
    let mut seen = vec![false; e];
    for (id, h, t, label, ln, idcol) in arrows {
        if id == 0 || id > e || seen[id - 1] {
            return Err(syntax(ln, idcol, format!("arrow ids must be 1..{e} without repetition, found {id}")));
        }
        if h == 0 || h > v || t == 0 || t > v {
            return Err(syntax(ln, 1, format!("arrow {id} uses a vertex outside 1..{v}")));
        }
        seen[id - 1] = true;
        head[id - 1] = h - 1;
        tail[id - 1] = t - 1;
        labels[id - 1] = label;
    }
    let mut zero_based = Vec::new();
    for (sign, ids, ln) in faces {
        if let Some(bad) = ids.iter().find(|&&a| a == 0 || a > e) {
            return Err(syntax(ln, 1, format!("face uses unknown arrow {bad}")));
        }
        zero_based.push((sign, ids.into_iter().map(|a| a - 1).collect()));
    }
    Dimer::new(name, v, head, tail, zero_based, labels)
}

/// Normal form: faces rotated to their smallest arrow and sorted, positive first.
pub fn print_dimer(d: &Dimer) -> String {
    let mut out = String::new();
    writeln!(out, "dimer {}", d.name()).unwrap();
    writeln!(out, "vertices {}", d.vertex_count()).unwrap();
    for a in 0..d.arrow_count() {
        write!(out, "arrow {} {} {}", a + 1, d.head(a) + 1, d.tail(a) + 1).unwrap();
        if let Some(l) = d.label(a) {
            write!(out, " {l}").unwrap();
        }
        out.push('\n');
    }
    for face in d.faces() {
        let ids: Vec<String> = face.arrows.iter().map(|a| (a + 1).to_string()).collect();
        writeln!(out, "face {} {}", face.sign.symbol(), ids.join(" ")).unwrap();
    }
    out.push_str("end\n");
    out
}

fn parse_arrow_values<K: Scalar>(text: &str, keyword: &str, arrow_count: usize) -> Result<Vec<K>, DimerError> {
    let mut out = vec![K::zero(); arrow_count];
    let mut seen = vec![false; arrow_count];
    for line in tokenize(text) {
        let (col, kw) = line.items[0];
        if kw != keyword {
            return Err(syntax(line.line, col, format!("expected '{keyword}', found '{kw}'")));
        }
        let id = int(&line, 1, "arrow id")?;
        if id == 0 || id > arrow_count {
            return Err(syntax(line.line, line.items[1].0, format!("unknown arrow {id}")));
        }
        if seen[id - 1] {
            return Err(syntax(line.line, line.items[1].0, format!("arrow {id} given twice")));
        }
        seen[id - 1] = true;
        let Some(&(vcol, tok)) = line.items.get(2) else {
            return Err(syntax(line.line, col, "missing value"));
        };
        out[id - 1] = parse_scalar(tok).ok_or_else(|| syntax(line.line, vcol, format!("not a rational: '{tok}'")))?;
        if let Some(&(c, _)) = line.items.get(3) {
            return Err(syntax(line.line, c, "unexpected trailing token"));
        }
    }
    Ok(out)
}

/// `weight <arrow-id> <p/q>` lines; absent arrows weigh 0.
pub fn parse_weights<K: Scalar>(text: &str, arrow_count: usize) -> Result<Vec<K>, DimerError> {
    parse_arrow_values(text, "weight", arrow_count)
}

/// `rep <arrow-id> <p/q>` lines; absent arrows are 0.
pub fn parse_rep<K: Scalar>(text: &str, arrow_count: usize) -> Result<Vec<K>, DimerError> {
    parse_arrow_values(text, "rep", arrow_count)
}
