//! Text formats for graphs, circuits and partitions, and JSON report helpers.
//!
//! External files use 1-based node ids. Graph files look like
//!
//! ```text
//! p maxcut 3 2
//! e 1 2 5
//! x 2 3 10
//! ```
//!
//! where an `x` line carries the weight `2^10`. Circuit files list `input`
//! lines, `gate` lines from `G_N` down to `G_1`, and one `outputs` line.

use std::collections::HashMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::circuit::{Circuit, Gate, Src};
use crate::circuit2cut::{CompiledGraph, Role};
use crate::graph::{Graph, Partition};

pub const SCHEMA: &str = "cutlab/1";

/// Largest exponent accepted on an `x` line.
pub const MAX_EXPONENT: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, col {col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

fn err<T>(line: usize, col: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { line, col, message: message.into() })
}

/// Whitespace-separated tokens with 1-based columns; `#` starts a comment.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let body = line.split('#').next().unwrap_or("");
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in body.char_indices() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((s, &body[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, &body[s..]));
    }
    out.into_iter().map(|(b, t)| (body[..b].chars().count() + 1, t)).collect()
}

fn parse_usize(line: usize, (col, t): (usize, &str), what: &str) -> Result<usize, ParseError> {
    if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
        return err(line, col, format!("expected {what}, found {t:?}"));
    }
    t.parse().or_else(|_| err(line, col, format!("{what} {t} is too large")))
}

fn parse_id(line: usize, tok: (usize, &str), n: usize) -> Result<usize, ParseError> {
    let id = parse_usize(line, tok, "node id")?;
    if id == 0 || id > n {
        return err(line, tok.0, format!("node id {id} outside 1..={n}"));
    }
    Ok(id - 1)
}

pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let mut g: Option<Graph> = None;
    let mut declared = 0;
    let mut last = 0;
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        last = line;
        let tok = tokens(raw);
        let Some(&(col, head)) = tok.first() else { continue };
        match (head, g.as_mut()) {
            ("p", None) => {
                if tok.len() != 4 || tok[1].1 != "maxcut" {
                    return err(line, col, "expected header `p maxcut <n> <m>`");
                }
                let n = parse_usize(line, tok[2], "node count")?;
                declared = parse_usize(line, tok[3], "edge count")?;
                g = Some(Graph::new(n));
            }
            ("p", Some(_)) => return err(line, col, "duplicate header"),
            ("e" | "x", Some(graph)) => {
                if tok.len() != 4 {
                    return err(line, col, format!("expected `{head} <u> <v> <{}>`", if head == "e" { "w" } else { "exp" }));
                }
                let n = graph.node_count();
                let u = parse_id(line, tok[1], n)?;
                let v = parse_id(line, tok[2], n)?;
                let (wc, wt) = tok[3];
                let w = if head == "e" {
                    let w: BigInt = match wt.parse() {
                        Ok(w) if wt.bytes().all(|b| b.is_ascii_digit()) => w,
                        _ => return err(line, wc, format!("expected a decimal weight, found {wt:?}")),
                    };
                    if !w.is_positive() {
                        return err(line, wc, "weight must be positive");
                    }
                    w
                } else {
                    let e = parse_usize(line, tok[3], "exponent")?;
                    if e > MAX_EXPONENT {
                        return err(line, wc, format!("exponent {e} exceeds {MAX_EXPONENT}"));
                    }
                    BigInt::one() << e
                };
                if u == v {
                    return err(line, tok[2].0, "self-loop");
                }
                if graph.edge_between(u, v).is_some() {
                    return err(line, tok[1].0, format!("duplicate edge {{{}, {}}}", u + 1, v + 1));
                }
                graph.add_edge(u, v, w).expect("checked edge");
            }
            ("e" | "x", None) => return err(line, col, "edge before the header"),
            _ => return err(line, col, format!("unknown line type {head:?}")),
        }
    }
    let Some(g) = g else { return err(last.max(1), 1, "missing header `p maxcut <n> <m>`") };
    if g.edge_count() != declared {
        return err(last.max(1), 1, format!("header declares {declared} edges, found {}", g.edge_count()));
    }
    Ok(g)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct EmitOptions {
    /// Write powers of two as `x` lines.
    pub exponents: bool,
}

pub fn emit_graph(g: &Graph) -> String {
    emit_graph_with(g, EmitOptions::default())
}

pub fn emit_graph_with(g: &Graph, opts: EmitOptions) -> String {
    let mut s = format!("p maxcut {} {}\n", g.node_count(), g.edge_count());
    for e in g.edges() {
        let pow = opts.exponents && (&e.w & (&e.w - BigInt::one())).is_zero();
        if pow {
            let _ = writeln!(s, "x {} {} {}", e.u + 1, e.v + 1, e.w.bits() - 1);
        } else {
            let _ = writeln!(s, "e {} {} {}", e.u + 1, e.v + 1, e.w);
        }
    }
    s
}

pub fn parse_circuit(text: &str) -> Result<Circuit, ParseError> {
    enum Def {
        Input(usize),
        Gate(usize),
    }
    struct Pending<'a> {
        line: usize,
        op: &'a str,
        args: Vec<(usize, &'a str)>,
    }
    let mut ids: HashMap<&str, Def> = HashMap::new();
    let mut inputs = 0;
    let mut pending: Vec<Pending> = Vec::new();
    let mut outputs: Option<(usize, Vec<(usize, &str)>)> = None;
    let mut last = 0;
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        last = line;
        let tok = tokens(raw);
        let Some(&(col, head)) = tok.first() else { continue };
        match head {
            "input" => {
                if tok.len() != 2 {
                    return err(line, col, "expected `input <id>`");
                }
                let (c, id) = tok[1];
                if ids.insert(id, Def::Input(inputs)).is_some() {
                    return err(line, c, format!("duplicate id {id:?}"));
                }
                inputs += 1;
            }
            "gate" => {
                if tok.len() < 3 {
                    return err(line, col, "expected `gate <id> NOR <a> <b>` or `gate <id> NOT <a>`");
                }
                let (c, id) = tok[1];
                let (oc, op) = tok[2];
                let arity = match op {
                    "NOR" => 2,
                    "NOT" => 1,
                    _ => return err(line, oc, format!("unknown gate type {op:?}")),
                };
                if tok.len() != 3 + arity {
                    return err(line, oc, format!("{op} takes {arity} operand(s)"));
                }
                if ids.insert(id, Def::Gate(pending.len())).is_some() {
                    return err(line, c, format!("duplicate id {id:?}"));
                }
                pending.push(Pending { line, op, args: tok[3..].to_vec() });
            }
            "outputs" => {
                if outputs.is_some() {
                    return err(line, col, "duplicate outputs line");
                }
                outputs = Some((line, tok[1..].to_vec()));
            }
            _ => return err(line, col, format!("unknown line type {head:?}")),
        }
    }
    let n_gates = pending.len();
    // the k-th gate line is G_{N-k}
    let gate_index = |pos: usize| n_gates - pos;
    let resolve = |line: usize, (c, t): (usize, &str)| -> Result<Src, ParseError> {
        match ids.get(t) {
            Some(Def::Input(j)) => Ok(Src::Input(*j)),
            Some(Def::Gate(pos)) => Ok(Src::Gate(gate_index(*pos))),
            None => err(line, c, format!("unknown id {t:?}")),
        }
    };
    let mut gates = vec![Gate::Not(Src::Input(0)); n_gates];
    for (pos, p) in pending.iter().enumerate() {
        let a = resolve(p.line, p.args[0])?;
        gates[gate_index(pos) - 1] = if p.op == "NOR" {
            Gate::Nor(a, resolve(p.line, p.args[1])?)
        } else {
            Gate::Not(a)
        };
    }
    let Some((oline, otoks)) = outputs else { return err(last.max(1), 1, "missing outputs line") };
    let mut outs = Vec::with_capacity(otoks.len());
    for t in otoks {
        match resolve(oline, t)? {
            Src::Gate(i) => outs.push(i),
            Src::Input(_) => return err(oline, t.0, format!("output {:?} is an input, not a gate", t.1)),
        }
    }
    Circuit::new(inputs, gates, outs).or_else(|e| err(last.max(1), 1, e.to_string()))
}

pub fn emit_circuit(c: &Circuit) -> String {
    let name = |s: Src| match s {
        Src::Input(j) => format!("x{}", j + 1),
        Src::Gate(i) => format!("g{i}"),
    };
    let mut s = String::new();
    for j in 0..c.input_count() {
        let _ = writeln!(s, "input x{}", j + 1);
    }
    for i in (1..=c.gate_count()).rev() {
        let _ = match *c.gate(i) {
            Gate::Nor(a, b) => writeln!(s, "gate g{i} NOR {} {}", name(a), name(b)),
            Gate::Not(a) => writeln!(s, "gate g{i} NOT {}", name(a)),
        };
    }
    s.push_str("outputs");
    for &o in c.outputs() {
        let _ = write!(s, " g{o}");
    }
    s.push('\n');
    s
}

/// One line of `0`/`1`; `expected` checks the length.
pub fn parse_partition(text: &str, expected: Option<usize>) -> Result<Partition, ParseError> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let Some((k, line)) = lines.next() else { return err(1, 1, "empty partition file") };
    if let Some((k2, _)) = lines.next() {
        return err(k2 + 1, 1, "partition files hold a single line");
    }
    let body = line.trim_end();
    let p: Partition = body.parse().or_else(|e: crate::graph::PartitionParseError| {
        err(k + 1, body[..e.pos].chars().count() + 1, format!("invalid character {:?}", e.ch))
    })?;
    if let Some(n) = expected {
        if p.len() != n {
            return err(k + 1, 1, format!("partition has length {}, expected {n}", p.len()));
        }
    }
    Ok(p)
}

pub fn emit_partition(p: &Partition) -> String {
    format!("{p}\n")
}

/// Serializes `body` as a JSON object with the schema tag first.
pub fn report<T: Serialize>(body: &T) -> Value {
    let mut out = serde_json::Map::new();
    out.insert("schema".into(), Value::from(SCHEMA));
    match serde_json::to_value(body).expect("serializable report") {
        Value::Object(m) => out.extend(m),
        other => {
            out.insert("data".into(), other);
        }
    }
    Value::Object(out)
}

/// Node roles of a compiled graph with 1-based ids.
pub fn role_map(cg: &CompiledGraph) -> Value {
    let nodes: Vec<Value> = cg
        .roles
        .iter()
        .enumerate()
        .map(|(id, r)| match r {
            Role::Gate(i) => json!({"id": id + 1, "role": "gate", "index": i}),
            Role::Chain(j) => json!({"id": id + 1, "role": "chain", "index": j}),
        })
        .collect();
    json!({
        "schema": SCHEMA,
        "gates": cg.gates,
        "looker": cg.looker,
        "reference": cg.reference + 1,
        "s_nodes": cg.s_nodes.iter().map(|x| x + 1).collect::<Vec<_>>(),
        "t_nodes": cg.t_nodes.iter().map(|x| x + 1).collect::<Vec<_>>(),
        "nodes": nodes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_examples() {
        let g = parse_graph("p maxcut 2 1\ne 1 2 5\n").unwrap();
        assert_eq!(g.node_count(), 2);
        assert_eq!(g.edge(0).w, BigInt::from(5));
        let g = parse_graph("p maxcut 2 1\nx 1 2 10\n").unwrap();
        assert_eq!(g.edge(0).w, BigInt::from(1024));
        let e = parse_graph("p maxcut 2 1\ne 0 2 5\n").unwrap_err();
        assert_eq!((e.line, e.col), (2, 3));
    }

    #[test]
    fn graph_errors() {
        let cases = [
            ("e 1 2 5\n", 1, 1),
            ("p maxcut 2 1\ne 1 1 5\n", 2, 5),
            ("p maxcut 3 2\ne 1 2 5\ne 2 1 4\n", 3, 3),
            ("p maxcut 2 1\ne 1 2 0\n", 2, 7),
            ("p maxcut 2 1\ne 1 2 -3\n", 2, 7),
            ("p maxcut 2 2\ne 1 2 3\n", 2, 1),
            ("p maxcut 2 1\nq 1 2 3\n", 2, 1),
        ];
        for (text, line, col) in cases {
            let e = parse_graph(text).unwrap_err();
            assert_eq!((e.line, e.col), (line, col), "{text:?}: {e}");
        }
    }

    #[test]
    fn comments_and_round_trip() {
        let g = parse_graph("# hi\np maxcut 3 2  # header\n\ne 1 2 7\nx 3 2 3\n").unwrap();
        let s = emit_graph(&g);
        assert_eq!(s, "p maxcut 3 2\ne 1 2 7\ne 3 2 8\n");
        assert_eq!(emit_graph(&parse_graph(&s).unwrap()), s);
        let x = emit_graph_with(&g, EmitOptions { exponents: true });
        assert_eq!(x, "p maxcut 3 2\ne 1 2 7\nx 3 2 3\n");
    }

    #[test]
    fn circuit_round_trip() {
        let text = "input x1\ngate g3 NOT x1\ngate g2 NOR g3 g3\ngate g1 NOT g2\noutputs g1\n";
        let c = parse_circuit(text).unwrap();
        assert_eq!(c.gate_count(), 3);
        assert_eq!(*c.gate(3), Gate::Not(Src::Input(0)));
        assert_eq!(emit_circuit(&c), text);
    }

    #[test]
    fn circuit_errors() {
        assert_eq!(parse_circuit("input a\ninput a\noutputs\n").unwrap_err().line, 2);
        let e = parse_circuit("input a\ngate b NOT c\noutputs b\n").unwrap_err();
        assert_eq!((e.line, e.col), (2, 12));
        assert!(parse_circuit("input a\ngate b XOR a\noutputs b\n").is_err());
        assert!(parse_circuit("input a\ngate b NOT a\n").is_err());
        assert!(parse_circuit("input a\ngate b NOT a\noutputs a\n").is_err());
    }

    #[test]
    fn partition_round_trip() {
        let p = parse_partition("0110\n", Some(4)).unwrap();
        assert_eq!(emit_partition(&p), "0110\n");
        let e = parse_partition("01x0\n", None).unwrap_err();
        assert_eq!((e.line, e.col), (1, 3));
        assert!(parse_partition("01\n", Some(3)).is_err());
    }

    #[test]
    fn report_has_schema() {
        let v = report(&json!({"a": 1}));
        assert_eq!(v["schema"], SCHEMA);
        assert_eq!(v["a"], 1);
    }
}
