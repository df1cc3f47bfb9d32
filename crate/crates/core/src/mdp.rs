//! MDP representation: a directed graph with a player-1/random vertex
//! partition and a set of Büchi vertices.
//!
//! Transition probabilities are never stored; the qualitative analysis only
//! depends on the graph structure. Every vertex must have at least one
//! out-neighbor.

use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Who picks the successor of a vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VertexKind {
    /// The controller chooses one out-edge.
    Player1,
    /// The successor is chosen probabilistically among all out-edges.
    Random,
}

/// An MDP over vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mdp {
    edges: Vec<Vec<usize>>,
    kind: Vec<VertexKind>,
    buchi: Vec<bool>,
}

impl Mdp {
    /// Validates and builds an MDP. `buchi` lists the Büchi vertex ids.
    pub fn new(edges: Vec<Vec<usize>>, kind: Vec<VertexKind>, buchi: &[usize]) -> Result<Self> {
        let n = edges.len();
        if kind.len() != n {
            return Err(Error::input(format!(
                "kind vector has length {} but there are {} vertices",
                kind.len(),
                n
            )));
        }
        for (v, succ) in edges.iter().enumerate() {
            if succ.is_empty() {
                return Err(Error::input(format!("vertex {v} has no outgoing edge")));
            }
            for &w in succ {
                if w >= n {
                    return Err(Error::input(format!(
                        "edge ({v}, {w}) has endpoint out of range (n = {n})"
                    )));
                }
            }
        }
        let mut buchi_mask = vec![false; n];
        for &b in buchi {
            if b >= n {
                return Err(Error::input(format!(
                    "Büchi vertex {b} out of range (n = {n})"
                )));
            }
            buchi_mask[b] = true;
        }
        Ok(Mdp {
            edges,
            kind,
            buchi: buchi_mask,
        })
    }

    pub fn n(&self) -> usize {
        self.edges.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.iter().map(Vec::len).sum()
    }

    pub fn successors(&self, v: usize) -> &[usize] {
        &self.edges[v]
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn kind(&self, v: usize) -> VertexKind {
        self.kind[v]
    }

    pub fn is_buchi(&self, v: usize) -> bool {
        self.buchi[v]
    }

    /// Sorted list of Büchi vertex ids.
    pub fn buchi_vertices(&self) -> Vec<usize> {
        (0..self.n()).filter(|&v| self.buchi[v]).collect()
    }

    /// Canonical text form: one header line with `n`, then one line per
    /// vertex: `id kind buchi succ_count succ_1 ... succ_k`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.n());
        for v in 0..self.n() {
            let kind = match self.kind[v] {
                VertexKind::Player1 => 'P',
                VertexKind::Random => 'R',
            };
            let _ = write!(
                out,
                "{} {} {} {}",
                v,
                kind,
                u8::from(self.buchi[v]),
                self.edges[v].len()
            );
            for &w in &self.edges[v] {
                let _ = write!(out, " {w}");
            }
            out.push('\n');
        }
        out
    }

    /// Parses the text format. Lines whose first non-blank character is `#`
    /// are comments; blank lines are skipped. Vertex lines must appear in id
    /// order.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut data_lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        let (line_no, header) = data_lines.next().ok_or_else(|| Error::Parse {
            line: 1,
            message: "empty input".into(),
        })?;
        let n: usize = header.parse().map_err(|_| Error::Parse {
            line: line_no,
            message: format!("expected vertex count, got `{header}`"),
        })?;

        let mut edges = Vec::with_capacity(n);
        let mut kind = Vec::with_capacity(n);
        let mut buchi = Vec::new();
        for expect_id in 0..n {
            let (line_no, line) = data_lines.next().ok_or_else(|| Error::Parse {
                line: text.lines().count(),
                message: format!("expected {n} vertex lines, got {expect_id}"),
            })?;
            let parse = |line_no: usize, msg: String| Error::Parse {
                line: line_no,
                message: msg,
            };
            let mut tok = line.split_whitespace();
            let id: usize = tok
                .next()
                .ok_or_else(|| parse(line_no, "missing vertex id".into()))?
                .parse()
                .map_err(|_| parse(line_no, "bad vertex id".into()))?;
            if id != expect_id {
                return Err(parse(
                    line_no,
                    format!("expected vertex id {expect_id}, got {id}"),
                ));
            }
            let k = match tok.next() {
                Some("P") => VertexKind::Player1,
                Some("R") => VertexKind::Random,
                Some(other) => {
                    return Err(parse(
                        line_no,
                        format!("bad kind tag `{other}` (expected P or R)"),
                    ))
                }
                None => return Err(parse(line_no, "missing kind tag".into())),
            };
            match tok.next() {
                Some("0") => {}
                Some("1") => buchi.push(id),
                Some(other) => {
                    return Err(parse(
                        line_no,
                        format!("bad Büchi flag `{other}` (expected 0 or 1)"),
                    ))
                }
                None => return Err(parse(line_no, "missing Büchi flag".into())),
            }
            let count: usize = tok
                .next()
                .ok_or_else(|| parse(line_no, "missing successor count".into()))?
                .parse()
                .map_err(|_| parse(line_no, "bad successor count".into()))?;
            let mut succ = Vec::with_capacity(count);
            for _ in 0..count {
                let w: usize = tok
                    .next()
                    .ok_or_else(|| parse(line_no, "fewer successors than declared".into()))?
                    .parse()
                    .map_err(|_| parse(line_no, "bad successor id".into()))?;
                succ.push(w);
            }
            if tok.next().is_some() {
                return Err(parse(line_no, "more successors than declared".into()));
            }
            edges.push(succ);
            kind.push(k);
        }
        if let Some((line_no, _)) = data_lines.next() {
            return Err(Error::Parse {
                line: line_no,
                message: "trailing data after last vertex line".into(),
            });
        }
        Mdp::new(edges, kind, &buchi)
    }
}

/// Instance family on which the classical algorithm needs `stages + 1`
/// iterations, one stage peeled per iteration.
///
/// Layout: vertex 0 is a Büchi player-1 vertex `b` with a self-loop. Stage
/// `i` (1-based) contributes player-1 vertices `u_i`, `c_i` forming a
/// 2-cycle, and a random vertex `r_i` with edges to `u_i` and `b`. For
/// `i >= 2` both `u_i` and `c_i` also have an edge down to `r_{i-1}`, so the
/// stage survives the reachability check until stage `i-1` has been removed.
pub fn gen_worst_case(stages: usize) -> Mdp {
    assert!(stages >= 1, "gen_worst_case requires stages >= 1");
    let n = 3 * stages + 1;
    let u = |i: usize| 3 * (i - 1) + 1;
    let c = |i: usize| 3 * (i - 1) + 2;
    let r = |i: usize| 3 * (i - 1) + 3;

    let mut edges = vec![Vec::new(); n];
    let mut kind = vec![VertexKind::Player1; n];
    edges[0].push(0);
    for i in 1..=stages {
        edges[u(i)].push(c(i));
        edges[c(i)].push(u(i));
        if i >= 2 {
            edges[u(i)].push(r(i - 1));
            edges[c(i)].push(r(i - 1));
        }
        edges[r(i)].push(u(i));
        edges[r(i)].push(0);
        kind[r(i)] = VertexKind::Random;
    }
    Mdp::new(edges, kind, &[0]).expect("worst-case family is well-formed")
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The three-vertex fixture used throughout: s (player-1 self-loop),
    /// r (random, edges to s and b), b (player-1 Büchi self-loop).
    pub(crate) fn srb_fixture() -> Mdp {
        Mdp::new(
            vec![vec![0], vec![0, 2], vec![2]],
            vec![VertexKind::Player1, VertexKind::Random, VertexKind::Player1],
            &[2],
        )
        .unwrap()
    }

    #[test]
    fn rejects_vertex_without_outgoing_edge() {
        let err = Mdp::new(vec![vec![0], vec![]], vec![VertexKind::Player1; 2], &[0]);
        assert!(matches!(err, Err(Error::Input(_))));
    }

    #[test]
    fn rejects_out_of_range_edge_and_buchi() {
        let err = Mdp::new(vec![vec![5]], vec![VertexKind::Player1], &[0]);
        assert!(matches!(err, Err(Error::Input(_))));
        let err = Mdp::new(vec![vec![0]], vec![VertexKind::Player1], &[3]);
        assert!(matches!(err, Err(Error::Input(_))));
    }

    #[test]
    fn text_round_trip_is_identity() {
        let mdp = srb_fixture();
        let text = mdp.to_text();
        let parsed = Mdp::from_text(&text).unwrap();
        assert_eq!(parsed, mdp);
        assert_eq!(parsed.to_text(), text);
    }

    #[test]
    fn parse_accepts_comments_and_blank_lines() {
        let text = "# fixture\n\n3\n0 P 0 1 0\n# middle comment\n1 R 0 2 0 2\n2 P 1 1 2\n";
        let parsed = Mdp::from_text(text).unwrap();
        assert_eq!(parsed, srb_fixture());
    }

    #[test]
    fn parse_error_names_the_line() {
        let text = "3\n0 P 0 1 0\n1 X 0 2 0 2\n2 P 1 1 2\n";
        match Mdp::from_text(text) {
            Err(Error::Parse { line, message }) => {
                assert_eq!(line, 3);
                assert!(message.contains('X'), "message was: {message}");
            }
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn worst_case_shape() {
        let mdp = gen_worst_case(3);
        assert_eq!(mdp.n(), 10);
        assert_eq!(mdp.buchi_vertices(), vec![0]);
        // u_1 and c_1 form a bare 2-cycle.
        assert_eq!(mdp.successors(1), &[2]);
        assert_eq!(mdp.successors(2), &[1]);
        // u_2 additionally feeds r_1.
        assert_eq!(mdp.successors(4), &[5, 3]);
        assert_eq!(mdp.kind(3), VertexKind::Random);
    }
}
