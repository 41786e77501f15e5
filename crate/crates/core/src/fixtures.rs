//! The bundled fixture graphs and their reference removal tables.

use crate::graph::LayeredGraph;

pub const G_TRI_JSON: &str = include_str!("../fixtures/g_tri.json");
pub const G_SQ1_JSON: &str = include_str!("../fixtures/g_sq1.json");
pub const G_SQ2_JSON: &str = include_str!("../fixtures/g_sq2.json");

const G_TRI_TABLE: &str = include_str!("../fixtures/g_tri_table.csv");
const G_SQ1_TABLE: &str = include_str!("../fixtures/g_sq1_table.csv");
const G_SQ2_TABLE: &str = include_str!("../fixtures/g_sq2_table.csv");

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fixture {
    Tri,
    Sq1,
    Sq2,
}

impl Fixture {
    pub const ALL: [Fixture; 3] = [Fixture::Tri, Fixture::Sq1, Fixture::Sq2];

    pub fn name(self) -> &'static str {
        match self {
            Fixture::Tri => "G_tri",
            Fixture::Sq1 => "G_sq1",
            Fixture::Sq2 => "G_sq2",
        }
    }

    pub fn graph(self) -> LayeredGraph {
        let json = match self {
            Fixture::Tri => G_TRI_JSON,
            Fixture::Sq1 => G_SQ1_JSON,
            Fixture::Sq2 => G_SQ2_JSON,
        };
        LayeredGraph::from_json(json).expect("bundled fixture is valid")
    }

    pub fn table(self) -> Vec<TableRow> {
        let text = match self {
            Fixture::Tri => G_TRI_TABLE,
            Fixture::Sq1 => G_SQ1_TABLE,
            Fixture::Sq2 => G_SQ2_TABLE,
        };
        parse_table(text)
    }
}

/// One reference row: removal set, printed λ₂ and the nodes left with
/// zero from-above degree.
#[derive(Debug, Clone, PartialEq)]
pub struct TableRow {
    pub removed: Vec<String>,
    pub lambda2: f64,
    pub witnesses: Vec<String>,
}

fn parse_set(field: &str) -> Vec<String> {
    match field.trim() {
        "---" | "" => Vec::new(),
        s => s.split_whitespace().map(str::to_string).collect(),
    }
}

fn parse_table(text: &str) -> Vec<TableRow> {
    text.lines()
        .skip(1)
        .filter(|l| !l.trim().is_empty())
        .map(|line| {
            let cols: Vec<&str> = line.split(',').collect();
            assert_eq!(cols.len(), 3, "bad table row `{line}`");
            TableRow {
                removed: parse_set(cols[0]),
                lambda2: cols[1].parse().expect("numeric lambda2"),
                witnesses: parse_set(cols[2]),
            }
        })
        .collect()
}

pub fn g_tri() -> LayeredGraph {
    Fixture::Tri.graph()
}

pub fn g_sq1() -> LayeredGraph {
    Fixture::Sq1.graph()
}

pub fn g_sq2() -> LayeredGraph {
    Fixture::Sq2.graph()
}
