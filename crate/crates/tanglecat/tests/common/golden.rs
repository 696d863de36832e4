//! Reader for `fixtures/golden_tables.txt` with its own small parser for
//! entries written as `(t_1^4 - 1)t_1^{-1}t_2^{-1}`, `q-q^{-1}`, ...

use std::path::PathBuf;

use tanglecat::diagram::{CrossPattern, Pattern, Sign};
use tanglecat::gradedring::QuarterLaurent;
use tanglecat::rtmaps::{rt_crossing_local, rt_duality_local, Extremum};
use tanglecat::statespace::GradedMatrix;
use tanglecat::viromaps::{viro_crossing_local, viro_duality_local, ViroBasis};

pub struct Table {
    pub name: String,
    pub rows: Vec<Vec<String>>,
}

pub fn tables() -> Vec<Table> {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/golden_tables.txt");
    let text = std::fs::read_to_string(path).unwrap();
    let mut out: Vec<Table> = vec![];
    for line in text.lines().map(str::trim) {
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
            out.push(Table { name: name.to_string(), rows: vec![] });
        } else {
            out.last_mut().unwrap().rows.push(line.split(';').map(|s| s.trim().to_string()).collect());
        }
    }
    out
}

/// The matrix the library produces for a table name.
pub fn computed(name: &str) -> GradedMatrix {
    let w: Vec<&str> = name.split_whitespace().collect();
    let cross = |s: &str| match s {
        "UU" => CrossPattern::UU,
        "UD" => CrossPattern::UD,
        "DU" => CrossPattern::DU,
        "DD" => CrossPattern::DD,
        _ => panic!("{s}"),
    };
    let pair = |s: &str| if s == "LR" { Pattern::Lr } else { Pattern::Rl };
    let ext = |s: &str| if s == "min" { Extremum::Min } else { Extremum::Max };
    let basis = |s: &str| if s == "dual" { ViroBasis::Dual } else { ViroBasis::Standard };
    match w[..] {
        ["rt", "cross", p] => rt_crossing_local(cross(p), Sign::Pos),
        ["rt", k, p] => rt_duality_local(ext(k), pair(p)),
        ["viro", b, "cross", p] => viro_crossing_local(cross(p), Sign::Pos, basis(b)),
        ["viro", b, k, p] => viro_duality_local(ext(k), pair(p), basis(b)),
        _ => panic!("unknown table {name}"),
    }
}

/// Compare every entry; returns (entries checked, mismatches).
pub fn check(t: &Table) -> (usize, Vec<String>) {
    let m = computed(&t.name);
    let mut bad = vec![];
    let mut n = 0;
    let coords: Vec<(u64, u64, &String)> = if t.rows.len() == 1 {
        let min = t.name.contains("min");
        t.rows[0].iter().enumerate().map(|(k, s)| if min { (k as u64, 0, s) } else { (0, k as u64, s) }).collect()
    } else {
        t.rows.iter().enumerate().flat_map(|(r, row)| row.iter().enumerate().map(move |(c, s)| (r as u64, c as u64, s))).collect()
    };
    for (r, c, s) in coords {
        n += 1;
        let want = parse(&m, s);
        let got = m.get(r, c);
        if got != want {
            bad.push(format!("{} ({r},{c}): want {s}, got {got}", t.name));
        }
    }
    (n, bad)
}

fn parse(m: &GradedMatrix, s: &str) -> QuarterLaurent {
    let toks: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut p = Parser { m, toks, pos: 0 };
    let v = p.expr();
    assert_eq!(p.pos, p.toks.len(), "trailing input in {s}");
    v
}

struct Parser<'a> {
    m: &'a GradedMatrix,
    toks: Vec<char>,
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.toks.get(self.pos).copied()
    }

    fn expr(&mut self) -> QuarterLaurent {
        let mut acc = QuarterLaurent::zero(&self.m.ctx);
        let mut sign = 1;
        loop {
            match self.peek() {
                Some('+') => self.pos += 1,
                Some('-') => {
                    self.pos += 1;
                    sign = -sign;
                }
                _ => {}
            }
            let t = self.term();
            acc = if sign > 0 { &acc + &t } else { &acc - &t };
            sign = 1;
            match self.peek() {
                Some('+') | Some('-') => {}
                _ => return acc,
            }
        }
    }

    fn term(&mut self) -> QuarterLaurent {
        let mut acc = QuarterLaurent::one(&self.m.ctx);
        while let Some(c) = self.peek() {
            let f = match c {
                '(' => {
                    self.pos += 1;
                    let e = self.expr();
                    assert_eq!(self.peek(), Some(')'));
                    self.pos += 1;
                    e
                }
                '0'..='9' => QuarterLaurent::constant(&self.m.ctx, self.int()),
                'q' | 't' => self.power(),
                _ => break,
            };
            acc = &acc * &f;
        }
        acc
    }

    fn int(&mut self) -> i64 {
        let neg = self.peek() == Some('-');
        if neg {
            self.pos += 1;
        }
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let v: i64 = self.toks[start..self.pos].iter().collect::<String>().parse().unwrap();
        if neg {
            -v
        } else {
            v
        }
    }

    /// `q`, `t`, `t_1`, `t_2`, optionally raised to `^k` or `^{k}`.
    fn power(&mut self) -> QuarterLaurent {
        let c = self.toks[self.pos];
        self.pos += 1;
        let (name, quarters) = if c == 'q' {
            // q is a half power of t
            ("t".to_string(), 2)
        } else if self.peek() == Some('_') {
            self.pos += 1;
            let k = self.int();
            (format!("t{k}"), 4)
        } else {
            ("t".to_string(), 4)
        };
        let mut e = 1;
        if self.peek() == Some('^') {
            self.pos += 1;
            if self.peek() == Some('{') {
                self.pos += 1;
                e = self.int();
                assert_eq!(self.peek(), Some('}'));
                self.pos += 1;
            } else {
                e = self.int();
            }
        }
        QuarterLaurent::mono(&self.m.ctx, 1, &[(name.as_str(), quarters * e)])
    }
}
