//! Shared helpers for integration tests: fixture loading and the
//! Seifert-matrix oracle.

#![allow(dead_code)]

pub mod golden;

use std::path::PathBuf;

use tanglecat::diagram::{parse_diagram, TangleDiagram};
use tanglecat::gradedring::{QuarterLaurent, VarContext};

pub const KNOTS: [&str; 7] = ["unknot", "trefoil", "trefoil_mirror", "figure_eight", "five_one", "six_one", "trefoil_r2"];

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(format!("{name}.tgl"))
}

pub fn fixture_text(name: &str) -> String {
    std::fs::read_to_string(fixture_path(name)).unwrap()
}

pub fn fixture(name: &str) -> TangleDiagram {
    parse_diagram(&fixture_text(name)).unwrap()
}

fn header(name: &str, key: &str) -> String {
    let text = fixture_text(name);
    let tag = format!("# {key}:");
    text.lines().find_map(|l| l.strip_prefix(&tag)).map(|s| s.trim().to_string()).unwrap()
}

/// Golden Alexander polynomial recorded in the fixture header.
pub fn golden(name: &str) -> String {
    header(name, "alexander")
}

pub fn seifert(name: &str) -> Vec<Vec<i64>> {
    serde_json::from_str(&header(name, "seifert")).unwrap()
}

fn det(m: &[Vec<QuarterLaurent>]) -> QuarterLaurent {
    let ctx = VarContext::single();
    if m.is_empty() {
        return QuarterLaurent::one(&ctx);
    }
    let mut acc = QuarterLaurent::zero(&ctx);
    for c in 0..m.len() {
        let minor: Vec<Vec<QuarterLaurent>> = m[1..].iter().map(|r| r.iter().enumerate().filter(|(k, _)| *k != c).map(|(_, v)| v.clone()).collect()).collect();
        let term = &m[0][c] * &det(&minor);
        acc = if c % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

/// `det(V - t V^T)`, un-normalized.
pub fn seifert_alexander(v: &[Vec<i64>]) -> QuarterLaurent {
    let ctx = VarContext::single();
    let t = QuarterLaurent::single_term(&ctx, 1, 4);
    let n = v.len();
    let m: Vec<Vec<QuarterLaurent>> = (0..n)
        .map(|i| (0..n).map(|j| &QuarterLaurent::constant(&ctx, v[i][j]) - &(&t * &QuarterLaurent::constant(&ctx, v[j][i]))).collect())
        .collect();
    det(&m)
}
