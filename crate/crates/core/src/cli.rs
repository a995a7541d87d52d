//! Command-line front end: graph files, the word syntax, and the `vgbs`
//! subcommands. Every command prints one JSON object with a `"kind"` field.
//!
//! Words are whitespace-separated terms: `x<vertex>(n1,...,nr)` for a
//! vertex-group element, `t<edge>` for the stable letter of an edge and
//! `T<edge>` for its inverse (the letter of the reverse edge). Word lists are
//! written `[w1, w2, ...]`.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::conjugacy::{ConjugacyAnswer, DEFAULT_BUDGET};
use crate::error::{Error, Result};
use crate::graph::{validate_graph, EdgeSpec, GraphSpec, VGBSGraph, VertexSpec};
use crate::group::Group;
use crate::linalg::IntMatrix;
use crate::modulus::IntersectionShape;
use crate::tree::{ProfileKind, TreePath, TreeVertex};
use crate::word::{Syllable, Word};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct VertexFile {
    id: String,
    rank: usize,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeFile {
    id: String,
    from: String,
    to: String,
    rank: usize,
    inj_initial: Vec<Vec<i64>>,
    inj_terminal: Vec<Vec<i64>>,
    reverse: String,
}

fn offset_of(text: &str, line: usize, column: usize) -> usize {
    let before: usize = text.split_inclusive('\n').take(line.saturating_sub(1)).map(str::len).sum();
    before + column.saturating_sub(1)
}

fn matrix_from_rows(rows: &[Vec<i64>], cols: usize, edge: &str, field: &str) -> Result<IntMatrix> {
    if let Some(r) = rows.iter().position(|r| r.len() != cols) {
        return Err(Error::Schema(format!(
            "edge `{edge}`: row {r} of {field} has length {} instead of {cols}",
            rows[r].len()
        )));
    }
    let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
    Ok(IntMatrix::from_i64_rows(&refs, cols))
}

/// Parses a graph file without validating it.
pub fn parse_graph_spec(text: &str) -> Result<GraphSpec> {
    let root: Value = serde_json::from_str(text)
        .map_err(|e| Error::Parse { offset: offset_of(text, e.line(), e.column()), message: e.to_string() })?;
    let obj = root.as_object().ok_or_else(|| Error::Schema("top level must be an object".into()))?;
    let list = |key: &str| -> Result<Vec<Value>> {
        obj.get(key).and_then(Value::as_array).cloned().ok_or_else(|| Error::Schema(format!("missing array \"{key}\"")))
    };
    if let Some(k) = obj.keys().find(|k| *k != "vertices" && *k != "edges") {
        return Err(Error::Schema(format!("unknown field \"{k}\"")));
    }
    let mut spec = GraphSpec::default();
    for (i, v) in list("vertices")?.into_iter().enumerate() {
        let vf: VertexFile = serde_json::from_value(v).map_err(|e| Error::Schema(format!("vertex #{i}: {e}")))?;
        spec.vertices.push(VertexSpec { id: vf.id, rank: vf.rank });
    }
    for (i, v) in list("edges")?.into_iter().enumerate() {
        let name = v.get("id").and_then(Value::as_str).map_or_else(|| format!("#{i}"), str::to_string);
        let ef: EdgeFile = serde_json::from_value(v).map_err(|e| Error::Schema(format!("edge `{name}`: {e}")))?;
        let inj_initial = matrix_from_rows(&ef.inj_initial, ef.rank, &ef.id, "inj_initial")?;
        let inj_terminal = matrix_from_rows(&ef.inj_terminal, ef.rank, &ef.id, "inj_terminal")?;
        spec.edges.push(EdgeSpec {
            id: ef.id,
            from: ef.from,
            to: ef.to,
            rank: ef.rank,
            inj_initial,
            inj_terminal,
            reverse: ef.reverse,
        });
    }
    Ok(spec)
}

/// Parses and validates a graph file.
pub fn parse_graph_file(text: &str) -> Result<VGBSGraph> {
    VGBSGraph::new(parse_graph_spec(text)?)
}

fn small_rows(m: &IntMatrix) -> Vec<Vec<i64>> {
    (0..m.rows()).map(|i| m.row(i).iter().map(|x| i64::try_from(x).expect("entry fits in i64")).collect()).collect()
}

/// The graph file text of a spec.
pub fn graph_to_json(spec: &GraphSpec) -> String {
    let vertices: Vec<VertexFile> =
        spec.vertices.iter().map(|v| VertexFile { id: v.id.clone(), rank: v.rank }).collect();
    let edges: Vec<EdgeFile> = spec
        .edges
        .iter()
        .map(|e| EdgeFile {
            id: e.id.clone(),
            from: e.from.clone(),
            to: e.to.clone(),
            rank: e.rank,
            inj_initial: small_rows(&e.inj_initial),
            inj_terminal: small_rows(&e.inj_terminal),
            reverse: e.reverse.clone(),
        })
        .collect();
    // one object per line keeps matrices readable
    let array = |items: Vec<String>| {
        if items.is_empty() {
            return "[]".to_string();
        }
        let body: Vec<String> = items.iter().map(|l| format!("    {l}")).collect();
        format!("[\n{}\n  ]", body.join(",\n"))
    };
    let v = array(vertices.iter().map(|v| serde_json::to_string(v).unwrap()).collect());
    let e = array(edges.iter().map(|e| serde_json::to_string(e).unwrap()).collect());
    format!("{{\n  \"vertices\": {v},\n  \"edges\": {e}\n}}\n")
}

fn parse_err(offset: usize, message: impl Into<String>) -> Error {
    Error::Parse { offset, message: message.into() }
}

fn is_delim(c: char) -> bool {
    c.is_whitespace() || "()[],".contains(c)
}

/// Parses a word; `offset` is added to reported positions.
fn parse_word_at(text: &str, offset: usize, graph: &VGBSGraph) -> Result<Word> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let n = chars.len();
    let pos = |i: usize| offset + chars.get(i).map_or(text.len(), |c| c.0);
    let mut syllables = Vec::new();
    let mut i = 0;
    while i < n {
        let (at, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        match c {
            'x' => {
                let id_start = i + 1;
                i = id_start;
                while i < n && chars[i].1 != '(' && !chars[i].1.is_whitespace() {
                    i += 1;
                }
                let id =
                    &text[chars.get(id_start).map_or(text.len(), |c| c.0)..chars.get(i).map_or(text.len(), |c| c.0)];
                if i >= n || chars[i].1 != '(' {
                    return Err(parse_err(pos(i), format!("expected '(' after vertex `{id}`")));
                }
                let v =
                    graph.vertex_index(id).map_err(|_| parse_err(pos(id_start), format!("unknown vertex `{id}`")))?;
                let open = i;
                while i < n && chars[i].1 != ')' {
                    i += 1;
                }
                if i >= n {
                    return Err(parse_err(pos(open), "unclosed '('"));
                }
                let inner = &text[chars[open].0 + 1..chars[i].0];
                i += 1;
                let mut exps = Vec::new();
                if !inner.trim().is_empty() {
                    for part in inner.split(',') {
                        let x: BigInt = part
                            .trim()
                            .parse()
                            .map_err(|_| parse_err(pos(open) + 1, format!("`{}` is not an integer", part.trim())))?;
                        exps.push(x);
                    }
                }
                let rank = graph.rank(v);
                if exps.len() != rank {
                    return Err(parse_err(
                        offset + at,
                        format!("vertex `{id}` has rank {rank} but {} exponents were given", exps.len()),
                    ));
                }
                syllables.push(Syllable::Vertex { vertex: v, exponents: exps });
            }
            't' | 'T' => {
                let id_start = i + 1;
                i = id_start;
                while i < n && !is_delim(chars[i].1) {
                    i += 1;
                }
                let id =
                    &text[chars.get(id_start).map_or(text.len(), |c| c.0)..chars.get(i).map_or(text.len(), |c| c.0)];
                let e = graph.edge_index(id).map_err(|_| parse_err(pos(id_start), format!("unknown edge `{id}`")))?;
                syllables.push(Syllable::Stable(if c == 't' { e } else { graph.reverse(e) }));
            }
            '1' if chars.get(i + 1).is_none_or(|c| c.1.is_whitespace()) => i += 1,
            _ => return Err(parse_err(offset + at, format!("unexpected character '{c}'"))),
        }
    }
    Ok(Word::from_syllables(syllables))
}

/// Parses a word; `1` and the empty string denote the identity.
pub fn parse_word(text: &str, graph: &VGBSGraph) -> Result<Word> {
    parse_word_at(text, 0, graph)
}

/// Parses `[w1, w2, ...]`.
pub fn parse_word_list(text: &str, graph: &VGBSGraph) -> Result<Vec<Word>> {
    let start = text.find(|c: char| !c.is_whitespace()).unwrap_or(text.len());
    let end = text.trim_end().len();
    if !text[start..end].starts_with('[') {
        return Err(parse_err(start, "word list must start with '['"));
    }
    if end <= start + 1 || !text[..end].ends_with(']') {
        return Err(parse_err(end, "word list must end with ']'"));
    }
    let body_start = start + 1;
    let body = &text[body_start..end - 1];
    if body.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut piece_start = 0;
    for (i, c) in body.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(parse_word_at(&body[piece_start..i], body_start + piece_start, graph)?);
                piece_start = i + 1;
            }
            _ => {}
        }
    }
    out.push(parse_word_at(&body[piece_start..], body_start + piece_start, graph)?);
    Ok(out)
}

#[derive(Parser, Debug)]
#[command(name = "vgbs", version, about = "Word, conjugacy and centralizer problems in graphs of free abelian groups")]
struct Cli {
    /// Base vertex of the presentation.
    #[arg(long, global = true)]
    base_vertex: Option<String>,
    /// State budget for elliptic conjugacy in graphs of cyclic groups.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a graph file.
    Validate { graph: PathBuf },
    /// Reduced form of a word.
    Reduce { graph: PathBuf, word: String },
    /// Whether a word is trivial.
    Trivial { graph: PathBuf, word: String },
    /// Translation length, with a fixed vertex or a fundamental domain.
    Length { graph: PathBuf, word: String },
    /// Centralizer of a hyperbolic element.
    Centralizer { graph: PathBuf, word: String },
    /// Intersection of the characteristic space of g with the axis of h.
    Axis { graph: PathBuf, g: String, h: String },
    /// Simultaneous conjugacy of two word lists.
    Conjugate { graph: PathBuf, a: String, b: String },
}

/// What a command prints and its exit status.
#[derive(Clone, Debug, PartialEq)]
pub struct CommandOutput {
    pub code: i32,
    pub stdout: String,
}

impl CommandOutput {
    fn json(v: Value) -> Self {
        let code = exit_code(v["kind"].as_str().unwrap_or("error"));
        CommandOutput { code, stdout: v.to_string() }
    }
}

/// Exit status for a result kind: 0 decided, 2 refused, 1 input error.
pub fn exit_code(kind: &str) -> i32 {
    match kind {
        "elliptic_unsupported" | "reduced_to_polycyclic" | "inconclusive" => 2,
        "error" | "invalid" => 1,
        _ => 0,
    }
}

fn error_json(e: &Error) -> Value {
    let mut v = json!({ "kind": "error", "message": e.to_string() });
    if let Error::Parse { offset, .. } = e {
        v["offset"] = json!(offset);
    }
    v
}

fn big_json(x: &BigInt) -> Value {
    i64::try_from(x).map_or_else(|_| json!(x.to_string()), |v| json!(v))
}

fn vec_json(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(big_json).collect())
}

fn vertex_json(group: &Group, x: &TreeVertex) -> Value {
    json!({ "vertex": group.graph().vertex(x.vertex).id, "carrier": group.render(&x.carrier) })
}

fn path_json(group: &Group, p: &TreePath) -> Value {
    Value::Array(p.vertices.iter().map(|x| vertex_json(group, x)).collect())
}

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io { path: path.display().to_string(), message: e.to_string() })
}

fn load_group(path: &Path, base: &Option<String>) -> Result<Group> {
    let graph = parse_graph_file(&read_file(path)?)?;
    let b = match base {
        Some(id) => graph.vertex_index(id)?,
        None => 0,
    };
    Group::with_base(graph, b)
}

/// JSON description of an intersection shape.
pub fn shape_json(group: &Group, s: &IntersectionShape) -> Value {
    match s {
        IntersectionShape::Empty { bridge, nearest } => {
            json!({ "kind": "empty", "nearest": nearest, "bridge": path_json(group, bridge) })
        }
        IntersectionShape::Finite { segment, start, end } => {
            json!({ "kind": "finite", "start": start, "end": end, "segment": path_json(group, segment) })
        }
        IntersectionShape::PositiveHalfLine { origin, position } => {
            json!({ "kind": "positive_half_line", "position": position, "origin": vertex_json(group, origin) })
        }
        IntersectionShape::NegativeHalfLine { origin, position } => {
            json!({ "kind": "negative_half_line", "position": position, "origin": vertex_json(group, origin) })
        }
        IntersectionShape::WholeAxis => json!({ "kind": "whole_axis" }),
    }
}

/// JSON description of a conjugacy answer.
pub fn answer_json(group: &Group, a: &ConjugacyAnswer) -> Value {
    let words = |ws: &[Word]| -> Value { Value::Array(ws.iter().map(|w| json!(group.render(w))).collect()) };
    match a {
        ConjugacyAnswer::Conjugate { witness } => json!({ "kind": "conjugate", "witness": group.render(witness) }),
        ConjugacyAnswer::NotConjugate { reason } => {
            json!({ "kind": "not_conjugate", "reason": reason.code(), "message": reason.to_string() })
        }
        ConjugacyAnswer::ReducedToPolycyclic(r) => json!({
            "kind": "reduced_to_polycyclic",
            "a": words(&r.a_tuple),
            "b": words(&r.b_tuple),
            "pre_conjugator": group.render(&r.pre_conjugator),
            "hyperbolic": group.render(&r.hyperbolic),
            "e_basepoint": vertex_json(group, &r.e_basepoint),
            "e_generators": r.e_generators.iter().map(|g| vec_json(g)).collect::<Vec<_>>(),
            "h_prime": group.render(&r.h_prime),
            "searched_window": r.searched_window,
        }),
        ConjugacyAnswer::EllipticUnsupported { explanation } => {
            json!({ "kind": "elliptic_unsupported", "explanation": explanation })
        }
        ConjugacyAnswer::Inconclusive { explored, bound } => {
            json!({ "kind": "inconclusive", "explored": explored, "bound": bound })
        }
    }
}

fn execute(cli: &Cli) -> Result<Value> {
    let base = &cli.base_vertex;
    match &cli.command {
        Command::Validate { graph } => {
            let spec = parse_graph_spec(&read_file(graph)?)?;
            let report = validate_graph(&spec);
            if report.is_valid() {
                Ok(json!({ "kind": "valid", "vertices": spec.vertices.len(), "edges": spec.edges.len() }))
            } else {
                let v: Vec<Value> =
                    report.violations.iter().map(|v| json!({ "subject": v.subject, "message": v.message })).collect();
                Ok(json!({ "kind": "invalid", "violations": v }))
            }
        }
        Command::Reduce { graph, word } => {
            let g = load_group(graph, base)?;
            let w = parse_word(word, g.graph())?;
            let f = g.reduced_form(&w);
            Ok(json!({ "kind": "reduced_form", "word": g.render(&g.form_to_word(&f)), "length": f.length() }))
        }
        Command::Trivial { graph, word } => {
            let g = load_group(graph, base)?;
            let w = parse_word(word, g.graph())?;
            Ok(json!({ "kind": "trivial", "value": g.is_trivial(&w) }))
        }
        Command::Length { graph, word } => {
            let g = load_group(graph, base)?;
            let w = parse_word(word, g.graph())?;
            let p = g.translation_profile(&w);
            Ok(match &p.kind {
                ProfileKind::Elliptic { fixed } => {
                    json!({ "kind": "elliptic", "length": 0, "fixed_vertex": vertex_json(&g, fixed) })
                }
                ProfileKind::Hyperbolic { fundamental_domain } => json!({
                    "kind": "hyperbolic",
                    "length": p.length,
                    "fundamental_domain": path_json(&g, fundamental_domain),
                }),
            })
        }
        Command::Centralizer { graph, word } => {
            let g = load_group(graph, base)?;
            let w = parse_word(word, g.graph())?;
            let c = g.centralizer_hyperbolic(&w)?;
            let elements: Vec<Value> = c.e_elements(&g).iter().map(|e| json!(g.render(e))).collect();
            Ok(json!({
                "kind": "centralizer",
                "basepoint": vertex_json(&g, &c.basepoint),
                "e_generators": c.e_generators().iter().map(|y| vec_json(y)).collect::<Vec<_>>(),
                "e_elements": elements,
                "h_prime": g.render(&c.h_prime),
                "h_prime_length": c.h_prime_length,
            }))
        }
        Command::Axis { graph, g: gw, h: hw } => {
            let g = load_group(graph, base)?;
            let x = parse_word(gw, g.graph())?;
            let h = parse_word(hw, g.graph())?;
            Ok(shape_json(&g, &g.classify_intersection(&x, &h)?))
        }
        Command::Conjugate { graph, a, b } => {
            let g = load_group(graph, base)?;
            let ta = parse_word_list(a, g.graph())?;
            let tb = parse_word_list(b, g.graph())?;
            Ok(answer_json(&g, &g.multi_conjugate_with_budget(&ta, &tb, cli.budget)?))
        }
    }
}

/// Runs the command line `args` (including the program name).
pub fn run_command<I, T>(args: I) -> CommandOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return CommandOutput { code: 0, stdout: e.to_string() };
            }
            return CommandOutput::json(json!({ "kind": "error", "message": e.to_string() }));
        }
    };
    match execute(&cli) {
        Ok(v) => CommandOutput::json(v),
        Err(e) => CommandOutput::json(error_json(&e)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn words_parse() {
        let g = fixtures::bs12();
        let w = parse_word("te1 xv0(1) Te1", g.graph()).unwrap();
        assert_eq!(g.render(&w), "te1 xv0(1) Te1");
        assert!(g.equal(&w, &g.vertex_word(0, &[2])));
        let e = parse_word("xv0(1,2)", g.graph()).unwrap_err();
        assert!(matches!(e, Error::Parse { offset: 0, .. }), "{e}");
        let e = parse_word("xv0(1) tq", g.graph()).unwrap_err();
        assert!(matches!(e, Error::Parse { offset: 8, .. }), "{e}");
    }

    #[test]
    fn word_lists_parse() {
        let g = fixtures::z2();
        let l = parse_word_list("[xv0(1, 2), xv0(0,1) xv0(3,0)]", g.graph()).unwrap();
        assert_eq!(l.len(), 2);
        assert!(parse_word_list("xv0(1,2)", g.graph()).is_err());
    }

    #[test]
    fn graph_files_round_trip() {
        for (_, g) in fixtures::all() {
            let text = graph_to_json(g.graph().spec());
            assert_eq!(&parse_graph_spec(&text).unwrap(), g.graph().spec());
        }
    }

    #[test]
    fn missing_reverse_names_the_edge() {
        let text = r#"{"vertices":[{"id":"v0","rank":1}],
            "edges":[{"id":"e1","from":"v0","to":"v0","rank":1,"inj_initial":[[1]],"inj_terminal":[[2]]}]}"#;
        let e = parse_graph_spec(text).unwrap_err().to_string();
        assert!(e.contains("e1") && e.contains("reverse"), "{e}");
    }
}
