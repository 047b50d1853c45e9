//! Line-oriented text formats.
//!
//! * lattice: `rank n`, then `n` rows of `chi`.
//! * basis: `rank n`, then one vector per row (seed coordinates).
//! * matrix tuple: a `matrix k of n` header before the rows of each member.
//! * coxeter tuple: `coxeter rank n count n`, then one word per line; an empty
//!   line is the empty word.
//! * reports: one tab-separated record per line.

use std::fmt::Write as _;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::coxeter::{CoxeterTuple, CoxeterWord, HurwitzSolution};
use crate::error::{Error, Result};
use crate::lattice::{BraidLetter, BraidWord, GramForm, LatticeVector, SOBasis};
use crate::matrix::IntMatrix;
use crate::orbit::{
    OrbitAnswer, OrbitEdge, OrbitPoint, OrbitResult, RelationOrigin, RelationReport,
    TransitivityReport, TransitivityVerdict,
};

fn numbered_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
}

fn parse_int(tok: &str, line: usize) -> Result<BigInt> {
    tok.parse::<BigInt>()
        .map_err(|_| Error::parse(line, format!("`{tok}` is not an integer")))
}

fn parse_usize(tok: &str, line: usize) -> Result<usize> {
    tok.parse::<usize>()
        .map_err(|_| Error::parse(line, format!("`{tok}` is not a non-negative integer")))
}

fn parse_rank_header(line_no: usize, line: &str) -> Result<usize> {
    match line.split_whitespace().collect::<Vec<_>>()[..] {
        ["rank", n] => {
            let n = parse_usize(n, line_no)?;
            if n == 0 {
                return Err(Error::parse(line_no, "rank must be positive"));
            }
            Ok(n)
        }
        _ => Err(Error::parse(line_no, format!("expected `rank n`, found `{line}`"))),
    }
}

/// Rows paired with their 1-based line numbers.
type NumberedRows = Vec<(usize, Vec<BigInt>)>;

/// Reads `rank n` followed by `n` rows of `n` integers. Blank lines are skipped.
fn parse_square_block(text: &str) -> Result<(usize, NumberedRows)> {
    let mut lines = numbered_lines(text).filter(|(_, l)| !l.trim().is_empty());
    let (hline, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "empty input, expected `rank n`"))?;
    let n = parse_rank_header(hline, header)?;
    let mut rows = Vec::with_capacity(n);
    for (line_no, line) in lines {
        if rows.len() == n {
            return Err(Error::parse(line_no, format!("unexpected extra row; rank is {n}")));
        }
        let row = line
            .split_whitespace()
            .map(|t| parse_int(t, line_no))
            .collect::<Result<Vec<_>>>()?;
        if row.len() != n {
            return Err(Error::parse(
                line_no,
                format!("expected {n} entries, found {}", row.len()),
            ));
        }
        rows.push((line_no, row));
    }
    if rows.len() != n {
        return Err(Error::parse(
            hline,
            format!("expected {n} rows, found {}", rows.len()),
        ));
    }
    Ok((n, rows))
}

pub fn parse_lattice(text: &str) -> Result<GramForm> {
    let (_, rows) = parse_square_block(text)?;
    let lines: Vec<usize> = rows.iter().map(|(l, _)| *l).collect();
    let chi = IntMatrix::from_rows(rows.into_iter().map(|(_, r)| r).collect())?;
    GramForm::new(chi).map_err(|e| match e {
        Error::NotUnitTriangular { row, .. } => Error::parse(lines[row - 1], e.to_string()),
        other => other,
    })
}

pub fn format_lattice(form: &GramForm) -> String {
    format!("rank {}\n{}", form.rank(), form.matrix())
}

pub fn parse_basis(form: Arc<GramForm>, text: &str) -> Result<SOBasis> {
    let (n, rows) = parse_square_block(text)?;
    if n != form.rank() {
        return Err(Error::parse(
            1,
            format!("basis rank {n} does not match lattice rank {}", form.rank()),
        ));
    }
    let vectors = rows.into_iter().map(|(_, r)| LatticeVector::new(r)).collect();
    SOBasis::new(form, vectors)
}

pub fn format_basis(basis: &SOBasis) -> String {
    let mut out = format!("rank {}\n", basis.rank());
    for v in basis.vectors() {
        let _ = writeln!(out, "{v}");
    }
    out
}

pub fn format_matrix_tuple(matrices: &[IntMatrix]) -> String {
    let mut out = String::new();
    for (k, m) in matrices.iter().enumerate() {
        let _ = writeln!(out, "matrix {} of {}", k + 1, matrices.len());
        out.push_str(&m.to_string());
    }
    out
}

pub fn parse_matrix_tuple(text: &str) -> Result<Vec<IntMatrix>> {
    let mut blocks: Vec<(usize, Vec<Vec<BigInt>>)> = Vec::new();
    let mut declared: Option<usize> = None;
    for (line_no, line) in numbered_lines(text) {
        if line.trim().is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        if let ["matrix", k, "of", n] = toks[..] {
            let (k, n) = (parse_usize(k, line_no)?, parse_usize(n, line_no)?);
            if k != blocks.len() + 1 {
                return Err(Error::parse(line_no, format!("expected matrix {}, found {k}", blocks.len() + 1)));
            }
            if declared.is_some_and(|d| d != n) {
                return Err(Error::parse(line_no, "inconsistent matrix count"));
            }
            declared = Some(n);
            blocks.push((line_no, Vec::new()));
            continue;
        }
        let Some((_, rows)) = blocks.last_mut() else {
            return Err(Error::parse(line_no, "expected a `matrix k of n` header"));
        };
        rows.push(toks.iter().map(|t| parse_int(t, line_no)).collect::<Result<_>>()?);
    }
    if let Some(n) = declared {
        if blocks.len() != n {
            return Err(Error::parse(1, format!("declared {n} matrices, found {}", blocks.len())));
        }
    }
    blocks
        .into_iter()
        .map(|(line_no, rows)| {
            let m = IntMatrix::from_rows(rows).map_err(|e| Error::parse(line_no, e.to_string()))?;
            if !m.is_square() {
                return Err(Error::parse(line_no, "matrix is not square"));
            }
            Ok(m)
        })
        .collect()
}

pub fn parse_coxeter_tuple(text: &str) -> Result<CoxeterTuple> {
    let mut lines = numbered_lines(text);
    let (hline, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "empty input, expected `coxeter rank n count n`"))?;
    let (rank, count) = match header.split_whitespace().collect::<Vec<_>>()[..] {
        ["coxeter", "rank", r, "count", c] => (parse_usize(r, hline)?, parse_usize(c, hline)?),
        _ => {
            return Err(Error::parse(
                hline,
                format!("expected `coxeter rank n count n`, found `{header}`"),
            ))
        }
    };
    if count != rank {
        return Err(Error::parse(hline, format!("count {count} must equal rank {rank}")));
    }
    let mut elements = Vec::with_capacity(count);
    for (line_no, line) in lines.by_ref().take(count) {
        let raw = line
            .split_whitespace()
            .map(|t| parse_usize(t, line_no))
            .collect::<Result<Vec<_>>>()?;
        let w = CoxeterWord::reduce(&raw, rank).map_err(|e| Error::parse(line_no, e.to_string()))?;
        if w.len() != raw.len() {
            return Err(Error::parse(line_no, "word is not reduced"));
        }
        elements.push(w);
    }
    if elements.len() != count {
        return Err(Error::parse(hline, format!("expected {count} words, found {}", elements.len())));
    }
    if let Some((line_no, _)) = lines.find(|(_, l)| !l.trim().is_empty()) {
        return Err(Error::parse(line_no, "unexpected trailing content"));
    }
    CoxeterTuple::new(rank, elements)
}

pub fn format_coxeter_tuple(t: &CoxeterTuple) -> String {
    let mut out = format!("coxeter rank {0} count {0}\n", t.rank());
    for w in t.elements() {
        let _ = writeln!(out, "{w}");
    }
    out
}

pub fn format_solution(sol: &HurwitzSolution) -> String {
    let mut out = format!(
        "solve\tsteps\t{}\tinitial_length\t{}\n",
        sol.word.len(),
        sol.total_lengths[0]
    );
    for (k, (letter, total)) in sol.word.letters().iter().zip(&sol.total_lengths[1..]).enumerate() {
        let _ = writeln!(out, "step\t{}\t{}\t{}", k + 1, letter, total);
    }
    let _ = writeln!(out, "word\t{}", sol.word);
    out
}

pub fn format_answer(answer: &OrbitAnswer) -> String {
    match answer {
        OrbitAnswer::Yes(w) => format!("yes\t{w}\n"),
        OrbitAnswer::No => "no\n".to_string(),
        OrbitAnswer::Unknown => "unknown\n".to_string(),
    }
}

pub fn format_orbit_report<P: OrbitPoint>(r: &OrbitResult<P>) -> String {
    let mut out = format!(
        "orbit\tsize\t{}\texhausted\t{}\tedges\t{}\tmax_depth\t{}\n",
        r.len(),
        r.exhausted,
        r.edges.len(),
        r.max_depth_reached()
    );
    for (i, node) in r.nodes.iter().enumerate() {
        let _ = writeln!(
            out,
            "node\t{}\t{}\t{}\t{}",
            i,
            node.depth,
            r.word_to(i),
            node.point.describe()
        );
    }
    for e in &r.edges {
        let _ = writeln!(out, "edge\t{}\t{}\t{}", e.from, e.letter, e.to);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranscriptNode {
    pub index: usize,
    pub depth: usize,
    pub word: BraidWord,
    pub representative: String,
}

/// Parsed orbit report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitTranscript {
    pub exhausted: bool,
    pub nodes: Vec<TranscriptNode>,
    pub edges: Vec<OrbitEdge>,
}

pub fn parse_orbit_report(text: &str) -> Result<OrbitTranscript> {
    let mut exhausted = None;
    let mut nodes = Vec::new();
    let mut edges = Vec::new();
    for (line_no, line) in numbered_lines(text) {
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        match fields[0] {
            "orbit" => {
                let flag = fields
                    .iter()
                    .position(|&f| f == "exhausted")
                    .and_then(|i| fields.get(i + 1))
                    .ok_or_else(|| Error::parse(line_no, "missing exhausted flag"))?;
                exhausted = Some(*flag == "true");
            }
            "node" if fields.len() == 5 => {
                let index = parse_usize(fields[1], line_no)?;
                if index != nodes.len() {
                    return Err(Error::parse(line_no, "node indices must be consecutive"));
                }
                let word: BraidWord = fields[3]
                    .parse()
                    .map_err(|e: Error| Error::parse(line_no, e.to_string()))?;
                nodes.push(TranscriptNode {
                    index,
                    depth: parse_usize(fields[2], line_no)?,
                    word,
                    representative: fields[4].to_string(),
                });
            }
            "edge" if fields.len() == 4 => {
                let letter = fields[2]
                    .parse::<i64>()
                    .ok()
                    .and_then(BraidLetter::from_signed)
                    .ok_or_else(|| Error::parse(line_no, format!("bad braid letter `{}`", fields[2])))?;
                edges.push(OrbitEdge {
                    from: parse_usize(fields[1], line_no)?,
                    letter,
                    to: parse_usize(fields[3], line_no)?,
                });
            }
            _ => return Err(Error::parse(line_no, format!("unrecognized record `{line}`"))),
        }
    }
    for e in &edges {
        if e.from >= nodes.len() || e.to >= nodes.len() {
            return Err(Error::parse(1, format!("edge {} -> {} refers to a missing node", e.from, e.to)));
        }
    }
    Ok(OrbitTranscript {
        exhausted: exhausted.ok_or_else(|| Error::parse(1, "missing `orbit` summary record"))?,
        nodes,
        edges,
    })
}

/// Re-applies every node word and edge letter of a transcript to `start`.
/// Returns descriptions of all mismatches (empty when the replay agrees).
pub fn replay_transcript<P: OrbitPoint>(start: &P, t: &OrbitTranscript) -> Result<Vec<String>> {
    let mut mismatches = Vec::new();
    let mut points = Vec::with_capacity(t.nodes.len());
    for node in &t.nodes {
        let mut p = start.clone();
        for &l in node.word.letters() {
            p = p.step(l)?;
        }
        if p.describe() != node.representative {
            mismatches.push(format!("node {}: replayed state differs", node.index));
        }
        points.push(p);
    }
    for e in &t.edges {
        let reached = points[e.from].step(e.letter)?.key()?;
        if reached != points[e.to].key()? {
            mismatches.push(format!("edge {} -{}-> {}: target differs", e.from, e.letter, e.to));
        }
    }
    Ok(mismatches)
}

pub fn format_relation_report(r: &RelationReport) -> String {
    let mut out = format!(
        "relations\tmax_length\t{}\twords\t{}\tdistinct\t{}\tmax_bits\t{}\tcount\t{}\n",
        r.max_length_searched,
        r.words_evaluated,
        r.distinct_matrices,
        r.max_entry_bits,
        r.relations.len()
    );
    for rel in &r.relations {
        match &rel.origin {
            RelationOrigin::Identity => {
                let _ = writeln!(out, "relation\t{}\t{}\tidentity", rel.found_at_length, rel.word);
            }
            RelationOrigin::Coincidence { earlier, later } => {
                let _ = writeln!(
                    out,
                    "relation\t{}\t{}\tcoincidence\t{}\t{}",
                    rel.found_at_length, rel.word, earlier, later
                );
            }
        }
    }
    out
}

pub fn format_transitivity_report(r: &TransitivityReport) -> String {
    let verdict = match r.verdict() {
        TransitivityVerdict::NoObstructionUpTo(l) => {
            format!("no-obstruction-up-to\t{l}\tevidence-not-proof")
        }
        TransitivityVerdict::Obstruction(w) => format!("relation-found\t{w}"),
    };
    format!(
        "transitivity\trank\t{}\tverdict\t{}\n{}",
        r.rank,
        verdict,
        format_relation_report(&r.search)
    )
}
