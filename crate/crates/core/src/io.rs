//! Text formats: SNAP-style edge lists, partition files, trajectory CSVs and
//! flat `key = value` config files.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use crate::community::CommunityStructure;
use crate::dice::DiceRow;
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::roam::RoamRow;

/// Maps between file labels and dense node ids (ids follow first appearance).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LabelMap {
    labels: Vec<String>,
    index: HashMap<String, NodeId>,
}

impl LabelMap {
    /// Labels `0..n` as decimal strings.
    pub fn identity(n: usize) -> Self {
        let mut map = LabelMap::default();
        for v in 0..n {
            map.intern(&v.to_string());
        }
        map
    }

    fn intern(&mut self, label: &str) -> NodeId {
        if let Some(&id) = self.index.get(label) {
            return id;
        }
        let id = self.labels.len();
        self.labels.push(label.to_string());
        self.index.insert(label.to_string(), id);
        id
    }

    pub fn id(&self, label: &str) -> Option<NodeId> {
        self.index.get(label).copied()
    }

    pub fn label(&self, id: NodeId) -> &str {
        &self.labels[id]
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EdgeList {
    pub graph: Graph,
    pub labels: LabelMap,
    /// Repeated edges that were dropped (for undirected input this includes reversed pairs).
    pub duplicates: usize,
}

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

pub fn parse_edge_list(text: &str, directed: bool) -> Result<EdgeList> {
    let mut labels = LabelMap::default();
    let mut pairs = Vec::new();
    for (line, content) in content_lines(text) {
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(parse_error(line, format!("expected 2 labels, found {}", tokens.len())));
        }
        if tokens[0] == tokens[1] {
            return Err(parse_error(line, format!("self-loop on {}", tokens[0])));
        }
        pairs.push((labels.intern(tokens[0]), labels.intern(tokens[1])));
    }
    let mut graph = Graph::new(labels.len(), directed);
    let mut duplicates = 0;
    for (u, v) in pairs {
        if graph.has_edge(u, v) {
            duplicates += 1;
        } else {
            graph.add_edge(u, v)?;
        }
    }
    Ok(EdgeList { graph, labels, duplicates })
}

/// One `u v` line per edge in `Graph::edges` order. Isolated nodes are not
/// representable in this format and are dropped.
pub fn write_edge_list(g: &Graph, labels: Option<&LabelMap>) -> String {
    let mut out = String::new();
    for (u, v) in g.edges() {
        match labels {
            Some(l) => writeln!(out, "{} {}", l.label(u), l.label(v)),
            None => writeln!(out, "{u} {v}"),
        }
        .expect("writing to a string");
    }
    out
}

/// One community per line, members as whitespace-separated labels.
pub fn parse_partition(text: &str, labels: &LabelMap) -> Result<CommunityStructure> {
    let n = labels.len();
    let mut owner: Vec<Option<usize>> = vec![None; n];
    let mut communities = Vec::new();
    for (line, content) in content_lines(text) {
        let mut members = Vec::new();
        for token in content.split_whitespace() {
            let id = labels.id(token).ok_or_else(|| parse_error(line, format!("unknown label {token}")))?;
            if let Some(prev) = owner[id] {
                return Err(parse_error(line, format!("label {token} already listed on line {prev}")));
            }
            owner[id] = Some(line);
            members.push(id);
        }
        communities.push(members);
    }
    if let Some(missing) = owner.iter().position(Option::is_none) {
        return Err(Error::InvalidPartition(format!("label {} is in no community", labels.label(missing))));
    }
    CommunityStructure::new(n, communities)
}

pub fn write_partition(cs: &CommunityStructure, labels: Option<&LabelMap>) -> String {
    let mut out = String::new();
    for c in cs.communities() {
        let line: Vec<String> =
            c.iter().map(|&v| labels.map_or_else(|| v.to_string(), |l| l.label(v).to_string())).collect();
        writeln!(out, "{}", line.join(" ")).expect("writing to a string");
    }
    out
}

pub const ROAM_HEADER: &str = "execution,degree_rank,closeness_rank,betweenness_rank,ic_rel_influence,lt_rel_influence";
pub const DICE_HEADER: &str = "round,pct_rounds,mu";

fn decimal(x: Option<f64>) -> String {
    x.map(|x| format!("{x:.6}")).unwrap_or_default()
}

pub fn write_roam_csv(rows: &[RoamRow]) -> String {
    let mut out = format!("{ROAM_HEADER}\n");
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            r.execution,
            r.ranks[0],
            r.ranks[1],
            r.ranks[2],
            decimal(r.ic_relative_influence),
            decimal(r.lt_relative_influence)
        )
        .expect("writing to a string");
    }
    out
}

pub fn write_dice_csv(rows: &[DiceRow]) -> String {
    let mut out = format!("{DICE_HEADER}\n");
    for r in rows {
        writeln!(out, "{},{:.6},{:.6}", r.round, r.pct_rounds, r.mu).expect("writing to a string");
    }
    out
}

#[derive(Clone, Copy, Debug)]
pub enum Trajectory<'a> {
    Roam(&'a [RoamRow]),
    Dice(&'a [DiceRow]),
}

pub fn write_trajectory_csv(t: Trajectory<'_>) -> String {
    match t {
        Trajectory::Roam(rows) => write_roam_csv(rows),
        Trajectory::Dice(rows) => write_dice_csv(rows),
    }
}

fn csv_body<'a>(text: &'a str, header: &str) -> Result<impl Iterator<Item = (usize, Vec<&'a str>)>> {
    let mut lines = text.lines();
    if lines.next() != Some(header) {
        return Err(parse_error(1, format!("expected header {header}")));
    }
    Ok(lines.enumerate().map(|(i, l)| (i + 2, l.split(',').collect())))
}

fn field<T: std::str::FromStr>(line: usize, s: &str) -> Result<T> {
    s.parse().map_err(|_| parse_error(line, format!("bad value {s:?}")))
}

fn optional(line: usize, s: &str) -> Result<Option<f64>> {
    if s.is_empty() { Ok(None) } else { field(line, s).map(Some) }
}

pub fn parse_roam_csv(text: &str) -> Result<Vec<RoamRow>> {
    csv_body(text, ROAM_HEADER)?
        .map(|(line, f)| {
            if f.len() != 6 {
                return Err(parse_error(line, "expected 6 fields"));
            }
            Ok(RoamRow {
                execution: field(line, f[0])?,
                ranks: [field(line, f[1])?, field(line, f[2])?, field(line, f[3])?],
                ic_relative_influence: optional(line, f[4])?,
                lt_relative_influence: optional(line, f[5])?,
            })
        })
        .collect()
}

pub fn parse_dice_csv(text: &str) -> Result<Vec<DiceRow>> {
    csv_body(text, DICE_HEADER)?
        .map(|(line, f)| {
            if f.len() != 3 {
                return Err(parse_error(line, "expected 3 fields"));
            }
            Ok(DiceRow { round: field(line, f[0])?, pct_rounds: field(line, f[1])?, mu: field(line, f[2])? })
        })
        .collect()
}

/// Flat `key = value` pairs; `#` starts a comment line. Keys match the
/// long CLI flag names without dashes.
pub fn parse_config(text: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for (line, content) in content_lines(text) {
        let (key, value) =
            content.split_once('=').ok_or_else(|| parse_error(line, "expected key = value"))?;
        let key = key.trim();
        if key.is_empty() {
            return Err(parse_error(line, "empty key"));
        }
        if out.insert(key.to_string(), value.trim().to_string()).is_some() {
            return Err(parse_error(line, format!("key {key} given twice")));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::path_graph;
    use crate::oracles::random_gnp;
    use proptest::prelude::*;

    #[test]
    fn edge_list_examples() {
        let p = parse_edge_list("0 1\n1 2\n", false).unwrap();
        assert_eq!(p.graph, path_graph(3));
        let named = parse_edge_list("# comment\na b\n", false).unwrap();
        assert_eq!(named.graph.node_count(), 2);
        assert_eq!((named.labels.id("a"), named.labels.id("b")), (Some(0), Some(1)));
        assert_eq!(parse_edge_list("0 0\n", false).unwrap_err(), Error::Parse { line: 1, message: "self-loop on 0".into() });
        assert!(matches!(parse_edge_list("\n\n1 2 3\n", false), Err(Error::Parse { line: 3, .. })));
    }

    #[test]
    fn duplicates_are_counted() {
        let e = parse_edge_list("1 2\n2 1\n1 2\n2 3\n", false).unwrap();
        assert_eq!(e.graph.edge_count(), 2);
        assert_eq!(e.duplicates, 2);
        let d = parse_edge_list("1 2\n2 1\n1 2\n", true).unwrap();
        assert_eq!(d.graph.edge_count(), 2);
        assert_eq!(d.duplicates, 1);
    }

    #[test]
    fn partition_examples() {
        let labels = LabelMap::identity(3);
        let cs = parse_partition("0 1\n2\n", &labels).unwrap();
        assert_eq!(cs, CommunityStructure::new(3, vec![vec![0, 1], vec![2]]).unwrap());
        assert!(parse_partition("0 1\n1 2\n", &labels).is_err());
        assert!(parse_partition("0 1\n", &labels).is_err());
        assert!(parse_partition("0 1 7\n2\n", &labels).is_err());
        assert_eq!(parse_partition(&write_partition(&cs, Some(&labels)), &labels).unwrap(), cs);
    }

    #[test]
    fn trajectory_csvs() {
        assert_eq!(write_roam_csv(&[]), format!("{ROAM_HEADER}\n"));
        assert_eq!(write_dice_csv(&[]), format!("{DICE_HEADER}\n"));
        let rows = vec![
            RoamRow { execution: 0, ranks: [1, 2, 3], ic_relative_influence: Some(1.0), lt_relative_influence: Some(1.0) },
            RoamRow { execution: 1, ranks: [4, 5, 6], ic_relative_influence: Some(0.8123456789), lt_relative_influence: None },
        ];
        let text = write_trajectory_csv(Trajectory::Roam(&rows));
        assert_eq!(text.lines().nth(1), Some("0,1,2,3,1.000000,1.000000"));
        assert_eq!(text.lines().nth(2), Some("1,4,5,6,0.812346,"));
        let back = parse_roam_csv(&text).unwrap();
        assert_eq!(back[1].ranks, [4, 5, 6]);
        assert!((back[1].ic_relative_influence.unwrap() - 0.8123456789).abs() < 1e-6);
        assert_eq!(back[1].lt_relative_influence, None);

        let dice = vec![DiceRow { round: 0, pct_rounds: 0.0, mu: 0.0 }, DiceRow { round: 1, pct_rounds: 100.0 / 3.0, mu: 0.25 }];
        let text = write_dice_csv(&dice);
        assert_eq!(text.lines().nth(2), Some("1,33.333333,0.250000"));
        let back = parse_dice_csv(&text).unwrap();
        assert!((back[1].pct_rounds - 100.0 / 3.0).abs() < 1e-6);
    }

    #[test]
    fn config_files() {
        let cfg = parse_config("# experiment\nbudget = 3\n\nseed=7\n").unwrap();
        assert_eq!(cfg.get("budget").map(String::as_str), Some("3"));
        assert_eq!(cfg.get("seed").map(String::as_str), Some("7"));
        assert!(parse_config("budget 3\n").is_err());
        assert!(parse_config("a = 1\na = 2\n").is_err());
    }

    proptest! {
        #[test]
        fn edge_list_round_trip(seed in 0u64..10_000, n in 2usize..15, directed: bool) {
            let g = random_gnp(n, 0.3, directed, seed);
            let text = write_edge_list(&g, None);
            let back = parse_edge_list(&text, directed).unwrap();
            prop_assert_eq!(back.duplicates, 0);
            prop_assert_eq!(back.graph.edge_count(), g.edge_count());
            // Map parsed ids back through their labels.
            let perm: Vec<usize> = (0..back.labels.len()).map(|i| back.labels.label(i).parse().unwrap()).collect();
            for (u, v) in back.graph.edges() {
                prop_assert!(g.has_edge(perm[u], perm[v]));
            }
            prop_assert_eq!(write_edge_list(&back.graph, Some(&back.labels)).lines().count(), g.edge_count());
        }
    }
}
