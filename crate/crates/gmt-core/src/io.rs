//! Text formats for meshes, chains, polygons, signatures, Fourier
//! coefficients, and flat norm decompositions, plus atomic file writes.
//!
//! All writers print numbers with nine decimal places and emit lines in a
//! deterministic order, so identical inputs produce byte-identical files.
//! Every format accepts `#` comment lines and blank lines.

use std::fmt::Write as _;
use std::path::Path;

use crate::area_invariant::Signature;
use crate::error::{Error, Result};
use crate::flat_norm::FlatNormDecomposition;
use crate::geometry::{Chain, OrientedComplex2, Point2};
use crate::polygon::SimplePolygon;
use crate::reconstruction::FourierPolygon;

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

/// Parse the line-oriented mesh format: `v x y`, `e i j`, `t i j k`.
pub fn parse_mesh(text: &str) -> Result<OrientedComplex2> {
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    let mut triangles = Vec::new();
    for (line, content) in content_lines(text) {
        let mut fields = content.split_whitespace();
        let tag = fields.next().unwrap();
        let rest: Vec<&str> = fields.collect();
        match tag {
            "v" => {
                if rest.len() != 2 {
                    return Err(parse_err(line, "vertex line needs two coordinates"));
                }
                let x: f64 = rest[0]
                    .parse()
                    .map_err(|_| parse_err(line, "bad x coordinate"))?;
                let y: f64 = rest[1]
                    .parse()
                    .map_err(|_| parse_err(line, "bad y coordinate"))?;
                vertices.push(Point2::new(x, y));
            }
            "e" => {
                if rest.len() != 2 {
                    return Err(parse_err(line, "edge line needs two vertex indices"));
                }
                let a: usize = rest[0]
                    .parse()
                    .map_err(|_| parse_err(line, "bad tail index"))?;
                let b: usize = rest[1]
                    .parse()
                    .map_err(|_| parse_err(line, "bad head index"))?;
                edges.push((a, b));
            }
            "t" => {
                if rest.len() != 3 {
                    return Err(parse_err(line, "triangle line needs three vertex indices"));
                }
                let mut tri = [0usize; 3];
                for (slot, field) in tri.iter_mut().zip(&rest) {
                    *slot = field
                        .parse()
                        .map_err(|_| parse_err(line, "bad triangle vertex index"))?;
                }
                triangles.push(tri);
            }
            other => return Err(parse_err(line, format!("unknown record '{other}'"))),
        }
    }
    OrientedComplex2::new(vertices, edges, triangles)
        .map_err(|e| parse_err(0, format!("mesh rejected: {e}")))
}

pub fn write_mesh(complex: &OrientedComplex2) -> String {
    let mut out = String::new();
    for v in complex.vertices() {
        let _ = writeln!(out, "v {:.9} {:.9}", v.x, v.y);
    }
    for &(a, b) in complex.edges() {
        let _ = writeln!(out, "e {a} {b}");
    }
    for &[a, b, c] in complex.triangles() {
        let _ = writeln!(out, "t {a} {b} {c}");
    }
    out
}

/// Parse the chain format: first content line `dim d`, then
/// `simplex_index coefficient` lines.
pub fn parse_chain(text: &str) -> Result<Chain> {
    let mut lines = content_lines(text);
    let (line, header) = lines
        .next()
        .ok_or_else(|| parse_err(0, "empty chain file"))?;
    let mut fields = header.split_whitespace();
    if fields.next() != Some("dim") {
        return Err(parse_err(line, "chain must start with 'dim d'"));
    }
    let dimension: u8 = fields
        .next()
        .and_then(|f| f.parse().ok())
        .ok_or_else(|| parse_err(line, "bad chain dimension"))?;

    let mut chain = Chain::zero(dimension);
    for (line, content) in lines {
        let fields: Vec<&str> = content.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(parse_err(line, "chain term needs 'index coefficient'"));
        }
        let index: usize = fields[0]
            .parse()
            .map_err(|_| parse_err(line, "bad simplex index"))?;
        let coefficient: i64 = fields[1]
            .parse()
            .map_err(|_| parse_err(line, "bad coefficient"))?;
        chain
            .add_term(index, coefficient)
            .map_err(|e| parse_err(line, e.to_string()))?;
    }
    Ok(chain)
}

pub fn write_chain(chain: &Chain) -> String {
    let mut out = format!("dim {}\n", chain.dimension());
    for (index, coefficient) in chain.iter() {
        let _ = writeln!(out, "{index} {coefficient}");
    }
    out
}

/// Parse a polygon CSV: one `x,y` pair per line, counterclockwise.
pub fn parse_polygon(text: &str) -> Result<SimplePolygon> {
    let mut vertices = Vec::new();
    for (line, content) in content_lines(text) {
        let fields: Vec<&str> = content.split(',').map(str::trim).collect();
        if fields.len() != 2 {
            return Err(parse_err(line, "polygon line needs 'x,y'"));
        }
        let x: f64 = fields[0]
            .parse()
            .map_err(|_| parse_err(line, "bad x coordinate"))?;
        let y: f64 = fields[1]
            .parse()
            .map_err(|_| parse_err(line, "bad y coordinate"))?;
        vertices.push(Point2::new(x, y));
    }
    SimplePolygon::new(vertices).map_err(|e| parse_err(0, format!("polygon rejected: {e}")))
}

pub fn write_polygon(polygon: &SimplePolygon) -> String {
    let mut out = String::new();
    for v in polygon.vertices() {
        let _ = writeln!(out, "{:.9},{:.9}", v.x, v.y);
    }
    out
}

/// Parse a signature CSV with the `# r=<value> N=<count>` header comment
/// and `index,g` rows.
pub fn parse_signature(text: &str) -> Result<Signature> {
    let mut radius = None;
    for (line, raw) in text.lines().enumerate() {
        let raw = raw.trim();
        if let Some(rest) = raw.strip_prefix('#') {
            for field in rest.split_whitespace() {
                if let Some(value) = field.strip_prefix("r=") {
                    radius = Some(
                        value
                            .parse::<f64>()
                            .map_err(|_| parse_err(line + 1, "bad radius in header"))?,
                    );
                }
            }
        }
    }
    let radius = radius_checked(radius)?;

    let mut rows: Vec<(usize, f64)> = Vec::new();
    for (line, content) in content_lines(text) {
        let fields: Vec<&str> = content.split(',').map(str::trim).collect();
        if fields.len() != 2 {
            return Err(parse_err(line, "signature line needs 'index,g'"));
        }
        let index: usize = fields[0]
            .parse()
            .map_err(|_| parse_err(line, "bad index"))?;
        let value: f64 = fields[1]
            .parse()
            .map_err(|_| parse_err(line, "bad signature value"))?;
        rows.push((index, value));
    }
    rows.sort_by_key(|&(i, _)| i);
    for (expected, &(index, _)) in rows.iter().enumerate() {
        if index != expected {
            return Err(parse_err(0, format!("missing signature index {expected}")));
        }
    }
    Ok(Signature {
        radius,
        values: rows.into_iter().map(|(_, v)| v).collect(),
    })
}

pub fn write_signature(signature: &Signature) -> String {
    let mut out = format!(
        "# r={:.9} N={}\n",
        signature.radius,
        signature.values.len()
    );
    for (index, value) in signature.values.iter().enumerate() {
        let _ = writeln!(out, "{index},{value:.9}");
    }
    out
}

/// Parse the coefficients CSV: first content line `m,N`, then rows
/// `i,j,a_ij` for the nonzero entries (missing entries are zero).
pub fn parse_coefficients(text: &str) -> Result<FourierPolygon> {
    let mut lines = content_lines(text);
    let (line, header) = lines
        .next()
        .ok_or_else(|| parse_err(0, "empty coefficients file"))?;
    let fields: Vec<&str> = header.split(',').map(str::trim).collect();
    if fields.len() != 2 {
        return Err(parse_err(line, "header needs 'm,N'"));
    }
    let m: usize = fields[0]
        .parse()
        .map_err(|_| parse_err(line, "bad harmonic count"))?;
    let n: usize = fields[1]
        .parse()
        .map_err(|_| parse_err(line, "bad vertex count"))?;
    let mut fp = FourierPolygon::zeros(m, n).map_err(|e| parse_err(line, e.to_string()))?;

    for (line, content) in lines {
        let fields: Vec<&str> = content.split(',').map(str::trim).collect();
        if fields.len() != 3 {
            return Err(parse_err(line, "coefficient line needs 'i,j,a_ij'"));
        }
        let i: usize = fields[0]
            .parse()
            .map_err(|_| parse_err(line, "bad row index"))?;
        let j: usize = fields[1]
            .parse()
            .map_err(|_| parse_err(line, "bad harmonic index"))?;
        let a: f64 = fields[2]
            .parse()
            .map_err(|_| parse_err(line, "bad coefficient"))?;
        if i >= 4 || j >= m {
            return Err(parse_err(line, "coefficient index out of range"));
        }
        fp.set_coefficient(i, j, a);
    }
    Ok(fp)
}

pub fn write_coefficients(fp: &FourierPolygon) -> String {
    let mut out = format!("{},{}\n", fp.harmonics(), fp.vertex_count());
    for i in 0..4 {
        for j in 0..fp.harmonics() {
            let _ = writeln!(out, "{i},{j},{:.9}", fp.coefficient(i, j));
        }
    }
    out
}

/// Serialize a decomposition: `value`, `integral`, then `X:` and `S:`
/// chain blocks.
pub fn write_decomposition(d: &FlatNormDecomposition) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "value {:.9}", d.value);
    let _ = writeln!(out, "integral {}", d.is_integral);
    out.push_str("X:\n");
    out.push_str(&write_chain(&d.x_chain));
    out.push_str("S:\n");
    out.push_str(&write_chain(&d.s_chain));
    out
}

/// Parse a decomposition file back into `(value, is_integral, x, s)`.
pub fn parse_decomposition(text: &str) -> Result<(f64, bool, Chain, Chain)> {
    let mut value = None;
    let mut integral = None;
    let mut x_block = String::new();
    let mut s_block = String::new();
    let mut current: Option<&mut String> = None;
    for (line, raw) in text.lines().enumerate() {
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        if let Some(rest) = content.strip_prefix("value ") {
            value = Some(
                rest.trim()
                    .parse::<f64>()
                    .map_err(|_| parse_err(line + 1, "bad value"))?,
            );
        } else if let Some(rest) = content.strip_prefix("integral ") {
            integral = Some(
                rest.trim()
                    .parse::<bool>()
                    .map_err(|_| parse_err(line + 1, "bad integral flag"))?,
            );
        } else if content == "X:" {
            current = Some(&mut x_block);
        } else if content == "S:" {
            current = Some(&mut s_block);
        } else if let Some(block) = current.as_deref_mut() {
            block.push_str(content);
            block.push('\n');
        } else {
            return Err(parse_err(line + 1, "unexpected content before chain blocks"));
        }
    }
    Ok((
        value.ok_or_else(|| parse_err(0, "missing value line"))?,
        integral.ok_or_else(|| parse_err(0, "missing integral line"))?,
        parse_chain(&x_block)?,
        parse_chain(&s_block)?,
    ))
}

/// Write a file atomically: the contents land in a temporary sibling which
/// is renamed over the target, so a failed write leaves no partial file.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = path.parent().unwrap_or_else(|| Path::new("."));
    let stem = path
        .file_name()
        .ok_or_else(|| Error::Domain(format!("bad output path {}", path.display())))?;
    let tmp = dir.join(format!(".{}.tmp-{}", stem.to_string_lossy(), std::process::id()));
    std::fs::write(&tmp, contents)?;
    match std::fs::rename(&tmp, path) {
        Ok(()) => Ok(()),
        Err(e) => {
            let _ = std::fs::remove_file(&tmp);
            Err(e.into())
        }
    }
}

fn radius_checked(radius: Option<f64>) -> Result<f64> {
    match radius {
        Some(r) if r > 0.0 && r.is_finite() => Ok(r),
        Some(r) => Err(Error::Domain(format!("signature radius {r} out of range"))),
        None => Err(parse_err(0, "missing '# r=<value> N=<count>' header")),
    }
}
