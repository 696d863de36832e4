//! Oriented tangle diagrams as top-to-bottom lists of elementary slices:
//! parser, orientation propagation, strand components and the
//! rotate-and-reverse dictionary on single events.

use std::fmt;

use thiserror::Error;

use crate::gradedring::{Ctx, RingError, VarContext, VarMap};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("line {line}: syntax error: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: index {index} out of range for {n} strands")]
    IndexOutOfRange { line: usize, index: usize, n: usize },
    #[error("line {line}: orientation mismatch: {msg}")]
    OrientationMismatch { line: usize, msg: String },
    #[error("invalid level {0}")]
    InvalidLevel(usize),
    #[error("the terminal minimum has no rotated counterpart")]
    TerminalTilde,
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// Orientation of `n` boundary points; bit `j` of `up` (1-based) is set iff
/// position `j` points upward.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct OrientSeq {
    pub n: usize,
    pub up: u64,
}

impl OrientSeq {
    pub fn new(n: usize, up: u64) -> Self {
        assert!(n < 63);
        assert_eq!(up & !(((1u64 << n) - 1) << 1), 0, "up-set outside 1..n");
        OrientSeq { n, up }
    }

    pub fn empty() -> Self {
        OrientSeq { n: 0, up: 0 }
    }

    pub fn is_up(&self, j: usize) -> bool {
        self.up >> j & 1 == 1
    }

    pub fn parse(n: usize, s: &str) -> Option<Self> {
        if s.chars().count() != n {
            return None;
        }
        let mut up = 0;
        for (k, c) in s.chars().enumerate() {
            match c {
                '+' => up |= 1 << (k + 1),
                '-' => {}
                _ => return None,
            }
        }
        Some(OrientSeq { n, up })
    }

    /// Every orientation of `n` points.
    pub fn all(n: usize) -> impl Iterator<Item = OrientSeq> {
        (0..1u64 << n).map(move |b| OrientSeq { n, up: b << 1 })
    }

    pub fn swap(&self, i: usize) -> Self {
        let a = self.up >> i & 1;
        let b = self.up >> (i + 1) & 1;
        let mut up = self.up & !(1 << i) & !(1 << (i + 1));
        up |= b << i | a << (i + 1);
        OrientSeq { n: self.n, up }
    }

    /// Insert the pair `(l, r)` at positions `i+1, i+2`.
    pub fn insert_pair(&self, i: usize, l: bool, r: bool) -> Self {
        let low = self.up & ((1 << (i + 1)) - 1);
        let high = (self.up >> (i + 1)) << (i + 3);
        let up = low | high | (l as u64) << (i + 1) | (r as u64) << (i + 2);
        OrientSeq { n: self.n + 2, up }
    }

    pub fn remove_pair(&self, i: usize) -> Self {
        let low = self.up & ((1 << (i + 1)) - 1);
        let high = (self.up >> (i + 3)) << (i + 1);
        OrientSeq { n: self.n - 2, up: low | high }
    }

    pub fn cross_pattern(&self, i: usize) -> CrossPattern {
        CrossPattern::from_bits(self.is_up(i), self.is_up(i + 1))
    }
}

impl fmt::Display for OrientSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for j in 1..=self.n {
            write!(f, "{}", if self.is_up(j) { '+' } else { '-' })?;
        }
        Ok(())
    }
}

/// Direction of travel over an extremum, left endpoint to right endpoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pattern {
    Lr,
    Rl,
}

impl Pattern {
    /// Orientations (left, right) of the pair at a maximum: `lr` climbs on the
    /// left and descends on the right.
    pub fn max_pair(self) -> (bool, bool) {
        match self {
            Pattern::Lr => (true, false),
            Pattern::Rl => (false, true),
        }
    }

    /// Orientations (left, right) of the pair consumed by a minimum or the
    /// terminal minimum.
    pub fn min_pair(self) -> (bool, bool) {
        match self {
            Pattern::Lr => (false, true),
            Pattern::Rl => (true, false),
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "lr" => Some(Pattern::Lr),
            "rl" => Some(Pattern::Rl),
            _ => None,
        }
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Pattern::Lr => "lr",
            Pattern::Rl => "rl",
        })
    }
}

/// Orientations of the two strands at positions `(i, i+1)`; first letter is
/// position `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CrossPattern {
    UU,
    DU,
    UD,
    DD,
}

impl CrossPattern {
    pub const ALL: [CrossPattern; 4] = [CrossPattern::UU, CrossPattern::DU, CrossPattern::UD, CrossPattern::DD];

    pub fn from_bits(a: bool, b: bool) -> Self {
        match (a, b) {
            (true, true) => CrossPattern::UU,
            (false, true) => CrossPattern::DU,
            (true, false) => CrossPattern::UD,
            (false, false) => CrossPattern::DD,
        }
    }

    pub fn bits(self) -> (bool, bool) {
        match self {
            CrossPattern::UU => (true, true),
            CrossPattern::DU => (false, true),
            CrossPattern::UD => (true, false),
            CrossPattern::DD => (false, false),
        }
    }

    /// The pattern after the strands trade places.
    pub fn swapped(self) -> Self {
        let (a, b) = self.bits();
        Self::from_bits(b, a)
    }

    /// Rotation by a half turn plus orientation reversal.
    pub fn tilde(self) -> Self {
        match self {
            CrossPattern::UD => CrossPattern::DU,
            CrossPattern::DU => CrossPattern::UD,
            p => p,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Pos,
    Neg,
}

/// One slice of a diagram as written in a file.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Event {
    PosCross(usize),
    NegCross(usize),
    Max(usize, Pattern),
    Min(usize, Pattern),
    Terminal(Pattern),
}

/// A crossing or extremum together with the orientation data that selects
/// its matrix. For crossings the pattern is read on the level just below.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ElemEvent {
    Cross { i: usize, sign: Sign, pattern: CrossPattern },
    Max { i: usize, pattern: Pattern },
    Min { i: usize, pattern: Pattern },
}

/// Rotate-and-reverse on an elementary event, at the same index.
pub fn tilde_event(e: Event, below: Option<CrossPattern>) -> Result<ElemEvent, DiagramError> {
    match e {
        Event::PosCross(i) | Event::NegCross(i) => {
            let sign = if matches!(e, Event::PosCross(_)) { Sign::Pos } else { Sign::Neg };
            let pattern = below.expect("crossing pattern").tilde();
            Ok(ElemEvent::Cross { i, sign, pattern })
        }
        Event::Max(i, p) => Ok(ElemEvent::Min { i, pattern: p }),
        Event::Min(i, p) => Ok(ElemEvent::Max { i, pattern: p }),
        Event::Terminal(_) => Err(DiagramError::TerminalTilde),
    }
}

/// The event of the rotated-and-reversed tangle that acts on the same
/// boundary `above`, read upward from it. Crossings keep their index and take
/// the pattern of `above`. A cap of the diagram becomes a cup creating the
/// same pair, and vice versa; the pair's orientation read upward is that of
/// the opposite extremum type, so the direction label flips.
pub fn tilde_partner(e: Event, above: &OrientSeq) -> Result<ElemEvent, DiagramError> {
    let flip = |p: Pattern| match p {
        Pattern::Lr => Pattern::Rl,
        Pattern::Rl => Pattern::Lr,
    };
    match e {
        Event::PosCross(i) | Event::NegCross(i) => {
            if i < 1 || i + 1 > above.n {
                return Err(DiagramError::IndexOutOfRange { line: 0, index: i, n: above.n });
            }
            let sign = if matches!(e, Event::PosCross(_)) { Sign::Pos } else { Sign::Neg };
            Ok(ElemEvent::Cross { i, sign, pattern: above.cross_pattern(i) })
        }
        Event::Max(i, p) => Ok(ElemEvent::Min { i, pattern: flip(p) }),
        Event::Min(i, p) => Ok(ElemEvent::Max { i, pattern: flip(p) }),
        Event::Terminal(_) => Err(DiagramError::TerminalTilde),
    }
}

/// Same as [`tilde_event`] on an already oriented event.
pub fn tilde_elem(e: ElemEvent) -> ElemEvent {
    match e {
        ElemEvent::Cross { i, sign, pattern } => ElemEvent::Cross { i, sign, pattern: pattern.tilde() },
        ElemEvent::Max { i, pattern } => ElemEvent::Min { i, pattern },
        ElemEvent::Min { i, pattern } => ElemEvent::Max { i, pattern },
    }
}

impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Event::PosCross(i) => write!(f, "xp {i}"),
            Event::NegCross(i) => write!(f, "xn {i}"),
            Event::Max(i, p) => write!(f, "max {i} {p}"),
            Event::Min(i, p) => write!(f, "min {i} {p}"),
            Event::Terminal(p) => write!(f, "term {p}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct TangleDiagram {
    pub top: OrientSeq,
    pub events: Vec<Event>,
    /// `levels[k]` is the boundary just above event `k`; one extra at the end.
    pub levels: Vec<OrientSeq>,
    /// `kappa[k][j-1]` is the component through position `j` of level `k`.
    pub kappa: Vec<Vec<usize>>,
    pub num_components: usize,
    lines: Vec<usize>,
}

fn apply_event(o: &OrientSeq, e: Event, line: usize) -> Result<OrientSeq, DiagramError> {
    let n = o.n;
    let range = |index: usize| DiagramError::IndexOutOfRange { line, index, n };
    match e {
        Event::PosCross(i) | Event::NegCross(i) => {
            if i < 1 || i + 1 > n {
                return Err(range(i));
            }
            Ok(o.swap(i))
        }
        Event::Max(i, p) => {
            if i > n {
                return Err(range(i));
            }
            let (l, r) = p.max_pair();
            Ok(o.insert_pair(i, l, r))
        }
        Event::Min(i, p) => {
            if i + 2 > n {
                return Err(range(i));
            }
            let have = (o.is_up(i + 1), o.is_up(i + 2));
            if have != p.min_pair() {
                return Err(DiagramError::OrientationMismatch {
                    line,
                    msg: format!("min {i} {p} meets strands oriented {}", pair_str(have)),
                });
            }
            Ok(o.remove_pair(i))
        }
        Event::Terminal(p) => {
            if n != 2 {
                return Err(DiagramError::OrientationMismatch { line, msg: format!("terminal needs 2 strands, found {n}") });
            }
            let have = (o.is_up(1), o.is_up(2));
            if have != p.min_pair() {
                return Err(DiagramError::OrientationMismatch {
                    line,
                    msg: format!("term {p} meets strands oriented {}", pair_str(have)),
                });
            }
            Ok(OrientSeq::empty())
        }
    }
}

fn pair_str(p: (bool, bool)) -> String {
    let c = |b| if b { '+' } else { '-' };
    format!("{}{}", c(p.0), c(p.1))
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn find(&mut self, a: usize) -> usize {
        let mut r = a;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut a = a;
        while self.0[a] != r {
            let nx = self.0[a];
            self.0[a] = r;
            a = nx;
        }
        r
    }
    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.0[a.max(b)] = a.min(b);
        }
    }
}

impl TangleDiagram {
    pub fn new(top: OrientSeq, events: Vec<Event>) -> Result<Self, DiagramError> {
        let lines = (1..=events.len()).collect();
        Self::build(top, events, lines)
    }

    fn build(top: OrientSeq, events: Vec<Event>, lines: Vec<usize>) -> Result<Self, DiagramError> {
        let mut levels = vec![top];
        for (e, &line) in events.iter().zip(&lines) {
            let next = apply_event(levels.last().unwrap(), *e, line)?;
            levels.push(next);
        }
        for (k, e) in events.iter().enumerate() {
            if matches!(e, Event::Terminal(_)) && k + 1 != events.len() {
                return Err(DiagramError::Syntax { line: lines[k], msg: "events after the terminal minimum".into() });
            }
        }
        let (kappa, num_components) = components(&levels, &events);
        Ok(TangleDiagram { top, events, levels, kappa, num_components, lines })
    }

    pub fn is_closed(&self) -> bool {
        self.top.n == 0 && matches!(self.events.last(), Some(Event::Terminal(_)))
    }

    pub fn has_terminal(&self) -> bool {
        self.events.iter().any(|e| matches!(e, Event::Terminal(_)))
    }

    pub fn bottom(&self) -> OrientSeq {
        *self.levels.last().unwrap()
    }

    pub fn source_line(&self, k: usize) -> usize {
        self.lines[k]
    }

    /// The event at `k` with the orientation data its matrix depends on.
    pub fn elem_event(&self, k: usize) -> Option<ElemEvent> {
        let below = self.levels[k + 1];
        match self.events[k] {
            Event::PosCross(i) => Some(ElemEvent::Cross { i, sign: Sign::Pos, pattern: below.cross_pattern(i) }),
            Event::NegCross(i) => Some(ElemEvent::Cross { i, sign: Sign::Neg, pattern: below.cross_pattern(i) }),
            Event::Max(i, pattern) => Some(ElemEvent::Max { i, pattern }),
            Event::Min(i, pattern) => Some(ElemEvent::Min { i, pattern }),
            Event::Terminal(_) => None,
        }
    }

    /// Strand-variable context with one variable per component.
    pub fn component_ctx(&self) -> Ctx {
        VarContext::strands(self.num_components)
    }

    /// Point variables of level `k` sent into the component ring:
    /// `t_j -> s_{kappa(k,j)}^(1/4)`.
    pub fn points_to_components(&self, k: usize) -> Result<VarMap, DiagramError> {
        let n = self.levels.get(k).ok_or(DiagramError::InvalidLevel(k))?.n;
        let src = VarContext::points(n, &[]);
        let tgt = self.component_ctx();
        let names: Vec<String> = (0..n).map(|j| format!("s{}", self.kappa[k][j] + 1)).collect();
        let imgs: Vec<Vec<(&str, i64)>> = names.iter().map(|s| vec![(s.as_str(), 1)]).collect();
        Ok(VarMap::new(&src, &tgt, &imgs)?)
    }

    /// Strand variables of level `k` (`s_j` for the strand through position
    /// `j`) sent to component variables.
    pub fn strands_to_components(&self, k: usize) -> Result<VarMap, DiagramError> {
        let n = self.levels.get(k).ok_or(DiagramError::InvalidLevel(k))?.n;
        let src = VarContext::strands(n);
        let tgt = self.component_ctx();
        let names: Vec<String> = (0..n).map(|j| format!("s{}", self.kappa[k][j] + 1)).collect();
        let imgs: Vec<Vec<(&str, i64)>> = names.iter().map(|s| vec![(s.as_str(), 4)]).collect();
        Ok(VarMap::new(&src, &tgt, &imgs)?)
    }
}

fn components(levels: &[OrientSeq], events: &[Event]) -> (Vec<Vec<usize>>, usize) {
    let mut offs = vec![0];
    for l in levels {
        offs.push(offs.last().unwrap() + l.n);
    }
    let total = *offs.last().unwrap();
    let mut d = Dsu((0..total).collect());
    let id = |k: usize, j: usize| offs[k] + j - 1;
    for (k, e) in events.iter().enumerate() {
        let n = levels[k].n;
        match *e {
            Event::PosCross(i) | Event::NegCross(i) => {
                for j in 1..=n {
                    let to = if j == i { i + 1 } else if j == i + 1 { i } else { j };
                    d.union(id(k, j), id(k + 1, to));
                }
            }
            Event::Max(i, _) => {
                d.union(id(k + 1, i + 1), id(k + 1, i + 2));
                for j in 1..=n {
                    let to = if j <= i { j } else { j + 2 };
                    d.union(id(k, j), id(k + 1, to));
                }
            }
            Event::Min(i, _) => {
                d.union(id(k, i + 1), id(k, i + 2));
                for j in 1..=n {
                    if j <= i {
                        d.union(id(k, j), id(k + 1, j));
                    } else if j >= i + 3 {
                        d.union(id(k, j), id(k + 1, j - 2));
                    }
                }
            }
            Event::Terminal(_) => d.union(id(k, 1), id(k, 2)),
        }
    }
    let mut label = std::collections::HashMap::new();
    let mut kappa = vec![];
    for (k, l) in levels.iter().enumerate() {
        let mut row = vec![];
        for j in 1..=l.n {
            let r = d.find(id(k, j));
            let next = label.len();
            row.push(*label.entry(r).or_insert(next));
        }
        kappa.push(row);
    }
    (kappa, label.len())
}

/// Parse the slice DSL: optional `top <n> orient <+-...>` header, then one
/// event per line; `#` starts a comment.
pub fn parse_diagram(text: &str) -> Result<TangleDiagram, DiagramError> {
    let mut top = OrientSeq::empty();
    let mut events = vec![];
    let mut lines = vec![];
    for (ln, raw) in text.lines().enumerate() {
        let line = ln + 1;
        let body = raw.split('#').next().unwrap().trim();
        if body.is_empty() {
            continue;
        }
        let toks: Vec<&str> = body.split_whitespace().collect();
        let syn = |msg: &str| DiagramError::Syntax { line, msg: msg.to_string() };
        let num = |s: &str| s.parse::<usize>().map_err(|_| syn(&format!("expected a non-negative integer, got `{s}`")));
        match toks[0] {
            "top" => {
                if !events.is_empty() {
                    return Err(syn("header must precede events"));
                }
                if toks.len() != 4 || toks[2] != "orient" {
                    return Err(syn("expected `top <n> orient <+-...>`"));
                }
                let n = num(toks[1])?;
                if n > 60 {
                    return Err(syn("too many strands"));
                }
                top = OrientSeq::parse(n, toks[3]).ok_or_else(|| syn("orientation string must be n characters of + and -"))?;
            }
            "xp" | "xn" => {
                if toks.len() != 2 {
                    return Err(syn("expected `xp <i>` or `xn <i>`"));
                }
                let i = num(toks[1])?;
                events.push(if toks[0] == "xp" { Event::PosCross(i) } else { Event::NegCross(i) });
                lines.push(line);
            }
            "max" | "min" => {
                if toks.len() != 3 {
                    return Err(syn("expected `max|min <i> <lr|rl>`"));
                }
                let i = num(toks[1])?;
                let p = Pattern::parse(toks[2]).ok_or_else(|| syn("pattern must be lr or rl"))?;
                events.push(if toks[0] == "max" { Event::Max(i, p) } else { Event::Min(i, p) });
                lines.push(line);
            }
            "term" => {
                if toks.len() != 2 {
                    return Err(syn("expected `term <lr|rl>`"));
                }
                let p = Pattern::parse(toks[1]).ok_or_else(|| syn("pattern must be lr or rl"))?;
                events.push(Event::Terminal(p));
                lines.push(line);
            }
            other => return Err(syn(&format!("unknown keyword `{other}`"))),
        }
    }
    TangleDiagram::build(top, events, lines)
}

/// Point variables on the side of event `k` where it changes the boundary,
/// sent to the variables of the strands they lie on. Crossings: the outgoing
/// side, `t_i <-> t_{i+1}`. Extrema and the terminal: the side holding the
/// critical pair, pair -> `t`, `j <= i` fixed, `j >= i+3 -> t_{j-2}`.
pub fn strand_map(d: &TangleDiagram, k: usize) -> Result<VarMap, DiagramError> {
    let e = *d.events.get(k).ok_or(DiagramError::InvalidLevel(k))?;
    let n = d.levels[k].n;
    match e {
        Event::PosCross(i) | Event::NegCross(i) => {
            let c = VarContext::points(n, &[]);
            let names: Vec<String> = (1..=n)
                .map(|j| {
                    let to = if j == i { i + 1 } else if j == i + 1 { i } else { j };
                    format!("t{to}")
                })
                .collect();
            let imgs: Vec<Vec<(&str, i64)>> = names.iter().map(|s| vec![(s.as_str(), 4)]).collect();
            Ok(VarMap::new(&c, &c, &imgs)?)
        }
        Event::Max(i, _) => Ok(extremum_strand_map(n, i)?),
        Event::Min(i, _) => Ok(extremum_strand_map(n - 2, i)?),
        Event::Terminal(_) => Ok(extremum_strand_map(0, 0)?),
    }
}

/// Points `t_1..t_{n+2}` of the side with a critical pair at `i+1, i+2`,
/// sent to strand variables `t_1..t_n, t`.
pub fn extremum_strand_map(n: usize, i: usize) -> Result<VarMap, RingError> {
    let src = VarContext::points(n + 2, &[]);
    let tgt = VarContext::points(n, &["t"]);
    let names: Vec<String> = (1..=n + 2)
        .map(|j| {
            if j <= i {
                format!("t{j}")
            } else if j <= i + 2 {
                "t".to_string()
            } else {
                format!("t{}", j - 2)
            }
        })
        .collect();
    let imgs: Vec<Vec<(&str, i64)>> = names.iter().map(|s| vec![(s.as_str(), 4)]).collect();
    VarMap::new(&src, &tgt, &imgs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gradedring::{apply_varmap, QuarterLaurent};

    #[test]
    fn unknot_parses() {
        let d = parse_diagram("max 0 lr\nterm rl\n").unwrap();
        assert_eq!(d.levels.iter().map(|l| l.n).collect::<Vec<_>>(), vec![0, 2, 0]);
        assert!(d.is_closed());
        assert_eq!(d.num_components, 1);
    }

    #[test]
    fn open_crossing() {
        let d = parse_diagram("top 2 orient +-\nxp 1\n").unwrap();
        assert_eq!(d.events, vec![Event::PosCross(1)]);
        assert_eq!(d.bottom().to_string(), "-+");
        assert_eq!(d.num_components, 2);
    }

    #[test]
    fn orientation_mismatch() {
        let e = parse_diagram("max 0 lr\nmin 0 lr\n").unwrap_err();
        assert!(matches!(e, DiagramError::OrientationMismatch { line: 2, .. }));
        let e = parse_diagram("max 0 lr\nterm lr\n").unwrap_err();
        assert!(matches!(e, DiagramError::OrientationMismatch { .. }));
    }

    #[test]
    fn syntax_errors_carry_lines() {
        let e = parse_diagram("# c\nmax 0 lr\nwiggle 3\n").unwrap_err();
        assert!(matches!(e, DiagramError::Syntax { line: 3, .. }));
        let e = parse_diagram("max 0 lr\nxp 2\n").unwrap_err();
        assert!(matches!(e, DiagramError::IndexOutOfRange { line: 2, index: 2, n: 2 }));
    }

    #[test]
    fn strand_maps() {
        let d = parse_diagram("max 0 lr\nterm rl\n").unwrap();
        let m = strand_map(&d, 0).unwrap();
        let p = QuarterLaurent::mono(&m.source, 1, &[("t1", 4), ("t2", 4)]);
        assert_eq!(apply_varmap(&m, &p).unwrap(), QuarterLaurent::mono(&m.target, 1, &[("t", 8)]));

        let d = parse_diagram("top 3 orient +++\nxp 2\n").unwrap();
        let m = strand_map(&d, 0).unwrap();
        let p = QuarterLaurent::mono(&m.source, 1, &[("t1", 4)]);
        assert_eq!(apply_varmap(&m, &p).unwrap(), p.rebase(&m.target));

        let d = parse_diagram("top 4 orient ++-+\nmin 1 rl\n").unwrap();
        let m = strand_map(&d, 0).unwrap();
        let p = QuarterLaurent::mono(&m.source, 1, &[("t4", 4)]);
        assert_eq!(apply_varmap(&m, &p).unwrap(), QuarterLaurent::mono(&m.target, 1, &[("t2", 4)]));
    }

    #[test]
    fn tilde_dictionary() {
        let e = tilde_event(Event::PosCross(1), Some(CrossPattern::DU)).unwrap();
        assert_eq!(e, ElemEvent::Cross { i: 1, sign: Sign::Pos, pattern: CrossPattern::UD });
        let e = tilde_event(Event::PosCross(1), Some(CrossPattern::UU)).unwrap();
        assert_eq!(e, ElemEvent::Cross { i: 1, sign: Sign::Pos, pattern: CrossPattern::UU });
        assert_eq!(tilde_event(Event::Max(2, Pattern::Rl), None).unwrap(), ElemEvent::Min { i: 2, pattern: Pattern::Rl });
        assert!(tilde_event(Event::Terminal(Pattern::Lr), None).is_err());
        for p in CrossPattern::ALL {
            assert_eq!(p.tilde().tilde(), p);
        }
    }

    #[test]
    fn kappa_single_crossing() {
        let d = parse_diagram("top 3 orient +-+\nxn 1\n").unwrap();
        assert_eq!(d.kappa[0], vec![0, 1, 2]);
        assert_eq!(d.kappa[1], vec![1, 0, 2]);
    }
}
