//! Line-oriented text formats.
//!
//! Circuits:
//!
//! ```text
//! # comment
//! node a white
//! node g red
//! edge a g 2      # multiplicity, defaults to 1
//! ```
//!
//! DVD graphs use `node <name>` and `edge <src> <dst>`. Mark files list one
//! or more vertex names per line. The noise budget never appears in a file.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::circuit::{Circuit, Color, MarkSet, VertexId};
use crate::dvd::{DvdInstance, Provenance, ReductionMap};
use crate::error::{Error, Result};

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Non-empty lines with comments stripped, as `(1-based line, tokens)`.
fn tokenized(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = body.split_whitespace().collect();
        (!tokens.is_empty()).then_some((i + 1, tokens))
    })
}

struct NameTable {
    ids: HashMap<String, VertexId>,
}

impl NameTable {
    fn new() -> Self {
        NameTable {
            ids: HashMap::new(),
        }
    }

    fn declare(&mut self, line: usize, name: &str) -> Result<VertexId> {
        let id = VertexId::from(self.ids.len());
        if self.ids.insert(name.to_string(), id).is_some() {
            return Err(parse_error(line, format!("duplicate node `{name}`")));
        }
        Ok(id)
    }

    fn resolve(&self, line: usize, name: &str) -> Result<VertexId> {
        self.ids
            .get(name)
            .copied()
            .ok_or_else(|| parse_error(line, format!("unknown node `{name}`")))
    }
}

pub fn parse_circuit(text: &str) -> Result<Circuit> {
    let mut names = NameTable::new();
    let mut vertices = Vec::new();
    let mut pending = Vec::new();
    for (line, tokens) in tokenized(text) {
        match tokens.as_slice() {
            ["node", name, color] => {
                let color: Color = color
                    .parse()
                    .map_err(|_| parse_error(line, format!("unknown color `{color}`")))?;
                names.declare(line, name)?;
                vertices.push((name.to_string(), color));
            }
            ["edge", src, dst] => pending.push((line, *src, *dst, 1)),
            ["edge", src, dst, mult] => {
                let mult: u32 = mult
                    .parse()
                    .ok()
                    .filter(|&m| m > 0)
                    .ok_or_else(|| parse_error(line, format!("bad multiplicity `{mult}`")))?;
                pending.push((line, *src, *dst, mult));
            }
            ["node", ..] => return Err(parse_error(line, "expected `node <name> <color>`")),
            ["edge", ..] => {
                return Err(parse_error(
                    line,
                    "expected `edge <src> <dst> [multiplicity]`",
                ))
            }
            [other, ..] => return Err(parse_error(line, format!("unknown directive `{other}`"))),
            [] => unreachable!(),
        }
    }
    let edges = pending
        .into_iter()
        .map(|(line, src, dst, mult)| {
            Ok((names.resolve(line, src)?, names.resolve(line, dst)?, mult))
        })
        .collect::<Result<Vec<_>>>()?;
    Circuit::validate(vertices, edges)
}

pub fn write_circuit(circuit: &Circuit) -> String {
    let mut out = String::new();
    for v in circuit.vertices() {
        let _ = writeln!(
            out,
            "node {} {}",
            circuit.name(v),
            circuit.color(v).as_str()
        );
    }
    for e in circuit.edges() {
        let _ = write!(out, "edge {} {}", circuit.name(e.src), circuit.name(e.dst));
        if e.multiplicity != 1 {
            let _ = write!(out, " {}", e.multiplicity);
        }
        out.push('\n');
    }
    out
}

pub fn parse_marks(text: &str, circuit: &Circuit) -> Result<MarkSet> {
    let mut marks = MarkSet::empty(circuit.len());
    for (line, tokens) in tokenized(text) {
        for name in tokens {
            let v = circuit
                .vertex_by_name(name)
                .ok_or_else(|| parse_error(line, format!("unknown node `{name}`")))?;
            marks.insert(v);
        }
    }
    Ok(marks)
}

/// Marked vertex names sorted lexicographically, one per line.
pub fn write_marks(circuit: &Circuit, marks: &MarkSet) -> String {
    let mut names: Vec<&str> = marks.iter().map(|v| circuit.name(v)).collect();
    names.sort_unstable();
    let mut out = String::new();
    for name in names {
        out.push_str(name);
        out.push('\n');
    }
    out
}

pub fn parse_dvd(text: &str, path_limit: usize) -> Result<DvdInstance> {
    let mut names = NameTable::new();
    let mut vertices = Vec::new();
    let mut pending = Vec::new();
    for (line, tokens) in tokenized(text) {
        match tokens.as_slice() {
            ["node", name] => {
                names.declare(line, name)?;
                vertices.push(name.to_string());
            }
            ["edge", src, dst] => pending.push((line, *src, *dst)),
            ["node", ..] => return Err(parse_error(line, "expected `node <name>`")),
            ["edge", ..] => return Err(parse_error(line, "expected `edge <src> <dst>`")),
            [other, ..] => return Err(parse_error(line, format!("unknown directive `{other}`"))),
            [] => unreachable!(),
        }
    }
    let edges = pending
        .into_iter()
        .map(|(line, src, dst)| Ok((names.resolve(line, src)?, names.resolve(line, dst)?)))
        .collect::<Result<Vec<_>>>()?;
    DvdInstance::new(vertices, edges, path_limit)
}

pub fn write_dvd(h: &DvdInstance) -> String {
    let mut out = String::new();
    for name in h.names() {
        let _ = writeln!(out, "node {name}");
    }
    for &(a, b) in h.edges() {
        let _ = writeln!(out, "edge {} {}", h.name(a), h.name(b));
    }
    out
}

/// Tab-separated `circuit-name kind original-name` per circuit vertex, where
/// kind is `original`, `clone`, `gadget<i>` or `source` (original name `-`).
pub fn write_provenance(map: &ReductionMap, h: &DvdInstance) -> String {
    let mut out = String::from("vertex\tkind\toriginal\n");
    for v in map.circuit.vertices() {
        let name = map.circuit.name(v);
        let _ = match map.provenance[v.index()] {
            Provenance::Original(o) => writeln!(out, "{name}\toriginal\t{}", h.name(o)),
            Provenance::Clone(o) => writeln!(out, "{name}\tclone\t{}", h.name(o)),
            Provenance::Gadget { owner, index } => {
                writeln!(out, "{name}\tgadget{index}\t{}", h.name(owner))
            }
            Provenance::Source => writeln!(out, "{name}\tsource\t-"),
        };
    }
    out
}
