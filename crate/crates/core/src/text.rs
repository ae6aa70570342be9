//! Plain-text model, vector and matrix files.
//!
//! ```text
//! model SFCM
//! name five experts
//! component 1 CM fuzzy circle tri 5x5
//! expert E1
//! rows A1 A2 A3 A4 A5
//! 0 1 0 0 -1
//! ...
//! end
//! ```

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::models::{build_model, Labels, Model, ModelClass};
use crate::special::{ComponentTag, Part, SpecialStateVector, Side};
use crate::value::{parse_scalar, Scalar, ValueDomain};

fn err(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, col, msg: msg.into() }
}

/// Whitespace-separated tokens with their 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((s + 1, &line[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

/// Non-blank, non-comment lines as (line number, content).
fn content_lines(text: &str) -> Vec<(usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("")))
        .filter(|(_, l)| !l.trim().is_empty())
        .collect()
}

fn scalars(line: usize, toks: &[(usize, &str)]) -> Result<Vec<Scalar>> {
    toks.iter()
        .map(|(c, t)| parse_scalar(t).map_err(|m| err(line, *c, m)))
        .collect()
}

fn parse_tok<T: std::str::FromStr<Err = String>>(line: usize, tok: Option<&(usize, &str)>, what: &str, eol: usize) -> Result<T> {
    let (c, t) = tok.ok_or_else(|| err(line, eol, format!("missing {what}")))?;
    t.parse().map_err(|m: String| err(line, *c, m))
}

fn parse_dims(line: usize, tok: Option<&(usize, &str)>, eol: usize) -> Result<(usize, usize)> {
    let (c, t) = tok.ok_or_else(|| err(line, eol, "missing dimensions"))?;
    let bad = || err(line, *c, format!("dimensions must look like 5x5, got `{t}`"));
    let (r, k) = t.split_once(['x', 'X']).ok_or_else(bad)?;
    Ok((r.parse().map_err(|_| bad())?, k.parse().map_err(|_| bad())?))
}

/// A syntactically valid model file before the class predicate is checked.
#[derive(Debug, Clone, PartialEq)]
pub struct RawModel {
    pub class: ModelClass,
    pub name: String,
    pub components: Vec<(Matrix, ComponentTag)>,
    pub labels: Vec<Labels>,
}

pub fn parse_model(text: &str) -> Result<Model> {
    let raw = parse_model_raw(text)?;
    let mut model = build_model(raw.class, raw.components, raw.labels)?;
    model.name = raw.name;
    Ok(model)
}

pub fn parse_model_raw(text: &str) -> Result<RawModel> {
    let lines = content_lines(text);
    let mut it = lines.iter().peekable();
    let last_line = text.lines().count().max(1);

    let (ln, l) = it.next().ok_or_else(|| err(1, 1, "empty model file"))?;
    let t = tokens(l);
    if t.first().map(|x| x.1) != Some("model") {
        return Err(err(*ln, t[0].0, "expected `model <CLASS>`"));
    }
    let class: ModelClass = parse_tok(*ln, t.get(1), "model class", l.len() + 1)?;
    let mut name = String::new();
    if let Some((_, l)) = it.peek() {
        if let Some(rest) = l.trim_start().strip_prefix("name") {
            if rest.is_empty() || rest.starts_with(char::is_whitespace) {
                name = rest.trim().to_string();
                it.next();
            }
        }
    }

    let mut comps = Vec::new();
    let mut labels = Vec::new();
    let mut ended = false;
    while let Some((ln, l)) = it.next() {
        let t = tokens(l);
        match t[0].1 {
            "end" => {
                ended = true;
                if let Some((ln2, l2)) = it.next() {
                    return Err(err(*ln2, tokens(l2)[0].0, "content after `end`"));
                }
                break;
            }
            "component" => {}
            other => return Err(err(*ln, t[0].0, format!("expected `component` or `end`, got `{other}`"))),
        }
        let eol = l.len() + 1;
        let idx: usize = t
            .get(1)
            .and_then(|x| x.1.parse().ok())
            .ok_or_else(|| err(*ln, t.get(1).map_or(eol, |x| x.0), "expected component number"))?;
        if idx != comps.len() + 1 {
            return Err(err(*ln, t[1].0, format!("component {idx} out of order, expected {}", comps.len() + 1)));
        }
        let tag = ComponentTag::new(
            parse_tok(*ln, t.get(2), "kind (CM|RM)", eol)?,
            parse_tok(*ln, t.get(3), "algebra (fuzzy|neutro)", eol)?,
            parse_tok(*ln, t.get(4), "operator (circle|maxmin|minmax)", eol)?,
        );
        let domain: ValueDomain = parse_tok(*ln, t.get(5), "value domain", eol)?;
        let (rows, cols) = parse_dims(*ln, t.get(6), eol)?;
        if let Some((c, _)) = t.get(7) {
            return Err(err(*ln, *c, "unexpected token after dimensions"));
        }
        let mut lab = Labels::default();
        while let Some((_, nl)) = it.peek() {
            let nt = tokens(nl);
            let words = || nt[1..].iter().map(|x| x.1.to_string()).collect::<Vec<_>>();
            match nt[0].1 {
                "expert" => lab.expert = nl.trim()["expert".len()..].trim().to_string(),
                "rows" => lab.rows = words(),
                "cols" => lab.cols = words(),
                _ => break,
            }
            it.next();
        }
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            let (gl, g) = it
                .next()
                .ok_or_else(|| err(last_line, 1, format!("component {idx}: missing grid row {}", r + 1)))?;
            let gt = tokens(g);
            if gt.len() != cols {
                return Err(err(*gl, gt[0].0, format!("component {idx}: row has {} entries, expected {cols}", gt.len())));
            }
            let vals = scalars(*gl, &gt)?;
            for (v, (c, _)) in vals.iter().zip(&gt) {
                if !domain.contains(*v) {
                    return Err(err(*gl, *c, format!("{v} is outside domain {domain}")));
                }
            }
            data.extend(vals);
        }
        comps.push((Matrix::new(rows, cols, domain, data)?, tag));
        labels.push(lab);
    }
    if !ended {
        return Err(err(last_line, 1, "missing `end`"));
    }
    Ok(RawModel { class, name, components: comps, labels })
}

pub fn serialize_model(m: &Model) -> String {
    let mut s = format!("model {}\n", m.class);
    if !m.name.is_empty() {
        s += &format!("name {}\n", m.name);
    }
    for (i, (c, l)) in m.matrix.components().iter().zip(&m.labels).enumerate() {
        s += &format!(
            "component {} {} {} {} {} {}x{}\n",
            i + 1,
            c.tag.kind,
            c.tag.algebra,
            c.tag.op,
            c.matrix.domain(),
            c.matrix.rows(),
            c.matrix.cols()
        );
        if !l.expert.is_empty() {
            s += &format!("expert {}\n", l.expert);
        }
        if !l.rows.is_empty() {
            s += &format!("rows {}\n", l.rows.join(" "));
        }
        if !l.cols.is_empty() {
            s += &format!("cols {}\n", l.cols.join(" "));
        }
        s += &c.matrix.to_string();
    }
    s += "end\n";
    s
}

/// One line per component: `domain|range v1 v2 …`.
pub fn parse_vector(text: &str) -> Result<SpecialStateVector> {
    let mut parts = Vec::new();
    for (ln, l) in content_lines(text) {
        let t = tokens(l);
        let side: Side = t[0].1.parse().map_err(|m| err(ln, t[0].0, m))?;
        if t.len() < 2 {
            return Err(err(ln, l.len() + 1, "vector has no entries"));
        }
        parts.push(Part { side, values: scalars(ln, &t[1..])? });
    }
    if parts.is_empty() {
        return Err(err(1, 1, "empty vector file"));
    }
    Ok(SpecialStateVector::new(parts))
}

pub fn render_values(v: &[Scalar]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn serialize_vector(x: &SpecialStateVector) -> String {
    x.parts
        .iter()
        .map(|p| format!("{} {}\n", p.side, render_values(&p.values)))
        .collect()
}

/// Grid of scalars with an optional leading `domain <name>` line; otherwise the domain is inferred.
pub fn parse_matrix(text: &str) -> Result<Matrix> {
    let lines = content_lines(text);
    let mut domain = None;
    let mut rows = Vec::new();
    let mut width = None;
    for (i, (ln, l)) in lines.iter().enumerate() {
        let t = tokens(l);
        if i == 0 && t[0].1 == "domain" {
            domain = Some(parse_tok::<ValueDomain>(*ln, t.get(1), "domain name", l.len() + 1)?);
            continue;
        }
        let v = scalars(*ln, &t)?;
        if *width.get_or_insert(v.len()) != v.len() {
            return Err(err(*ln, t[0].0, format!("row has {} entries, expected {}", v.len(), width.unwrap())));
        }
        rows.push(v);
    }
    if rows.is_empty() {
        return Err(err(1, 1, "empty matrix file"));
    }
    let m = Matrix::infer(rows)?;
    match domain {
        Some(d) => m.with_domain(d),
        None => Ok(m),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "\
# two experts
model SMFCRNCRM
name toy
component 1 CM fuzzy circle tri 2x2
expert first
rows a b
0 1
-1 0
component 2 RM neutro circle neutro-tri 2x3
0 I 1
1 0 -1
end
";

    #[test]
    fn round_trip() {
        let m = parse_model(SAMPLE).unwrap();
        assert_eq!(m.name, "toy");
        assert_eq!(m.labels[0].expert, "first");
        let s = serialize_model(&m);
        assert_eq!(parse_model(&s).unwrap(), m);
        assert_eq!(serialize_model(&parse_model(&s).unwrap()), s);
    }

    #[test]
    fn errors_carry_location() {
        let bad = SAMPLE.replace("1 0 -1", "1 0 2");
        match parse_model(&bad).unwrap_err() {
            Error::Parse { line, col, .. } => assert_eq!((line, col), (11, 5)),
            e => panic!("{e}"),
        }
        let truncated: String = SAMPLE.lines().take(9).collect::<Vec<_>>().join("\n");
        assert!(matches!(parse_model(&truncated), Err(Error::Parse { .. })));
        let e = parse_model("model SFCM\ncomponent 1 CM fuzzy circle tri 2y2\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, col: 33, .. }), "{e}");
    }

    #[test]
    fn vectors_and_matrices() {
        let v = parse_vector("domain 0 1 0\nrange 1 I\n").unwrap();
        assert_eq!(v.parts[1].side, Side::Range);
        assert_eq!(serialize_vector(&v), "domain 0 1 0\nrange 1 I\n");
        let m = parse_matrix("0.3 0.1\n0 0.7\n").unwrap();
        assert_eq!(m.domain(), ValueDomain::Unit);
        let m = parse_matrix("domain bipolar\n1 0\n").unwrap();
        assert_eq!(m.domain(), ValueDomain::Bipolar);
        assert!(parse_matrix("1 0\n1\n").is_err());
    }
}
