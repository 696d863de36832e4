//! Laurent polynomials whose exponents live in (1/4)Z, over named variable
//! contexts, with exact big-integer coefficients.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("context mismatch: [{0}] vs [{1}]")]
    ContextMismatch(String, String),
    #[error("variable `{0}` is not in the target context")]
    MissingVariable(String),
    #[error("`{0}` is not a unit monomial")]
    NotUnit(String),
    #[error("cannot parse polynomial `{0}`")]
    Parse(String),
}

/// An exponent counted in quarter-units: `QExp(k)` stands for `k/4`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QExp(pub i64);

impl QExp {
    pub const ZERO: QExp = QExp(0);

    pub fn int(k: i64) -> Self {
        QExp(4 * k)
    }

    pub fn half(k: i64) -> Self {
        QExp(2 * k)
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl Add for QExp {
    type Output = QExp;
    fn add(self, o: QExp) -> QExp {
        QExp(self.0.checked_add(o.0).expect("exponent overflow"))
    }
}

impl Neg for QExp {
    type Output = QExp;
    fn neg(self) -> QExp {
        QExp(-self.0)
    }
}

impl fmt::Display for QExp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = num_integer::gcd(self.0, 4).max(1);
        let (num, den) = (self.0 / g, 4 / g);
        if den == 1 {
            write!(f, "{num}")
        } else {
            write!(f, "({num}/{den})")
        }
    }
}

/// What a variable stands for. The role fixes how it collapses to the
/// single variable `t`: a boundary point variable is a fourth root of its
/// strand variable, `q` is `t^(1/2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Role {
    Point,
    Strand,
    T,
    Q,
}

impl Role {
    /// Quarter-units of `t` contributed by one unit of this variable.
    fn t_weight(self) -> i64 {
        match self {
            Role::Point => 1,
            Role::Strand | Role::T => 4,
            Role::Q => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VarContext {
    names: Vec<String>,
    roles: Vec<Role>,
}

pub type Ctx = Arc<VarContext>;

impl VarContext {
    /// Equal variable lists share one `Ctx`, so context checks are usually a
    /// pointer comparison.
    pub fn new(vars: Vec<(String, Role)>) -> Ctx {
        static INTERNED: OnceLock<Mutex<HashMap<Vec<(String, Role)>, Ctx>>> = OnceLock::new();
        let table = INTERNED.get_or_init(Default::default);
        if let Some(c) = table.lock().unwrap().get(&vars) {
            return c.clone();
        }
        let key = vars.clone();
        let mut names = Vec::with_capacity(vars.len());
        let mut roles = Vec::with_capacity(vars.len());
        for (n, r) in vars {
            assert!(!names.contains(&n), "duplicate variable {n}");
            names.push(n);
            roles.push(r);
        }
        let c = Arc::new(VarContext { names, roles });
        table.lock().unwrap().insert(key, c.clone());
        c
    }

    pub fn empty() -> Ctx {
        Self::new(vec![])
    }

    /// The one-variable ring in `t`; `q` lives here as `t^(1/2)`.
    pub fn single() -> Ctx {
        Self::new(vec![("t".into(), Role::T)])
    }

    pub fn single_q() -> Ctx {
        Self::new(vec![("q".into(), Role::Q)])
    }

    /// Point variables `t1..tn` followed by any extra names (also point-role).
    pub fn points(n: usize, extra: &[&str]) -> Ctx {
        let mut v: Vec<_> = (1..=n).map(|j| (format!("t{j}"), Role::Point)).collect();
        v.extend(extra.iter().map(|e| (e.to_string(), Role::Point)));
        Self::new(v)
    }

    /// Strand variables `s1..sn` (one per strand, `sigma` in the literature).
    pub fn strands(n: usize) -> Ctx {
        Self::new((1..=n).map(|j| (format!("s{j}"), Role::Strand)).collect())
    }

    pub fn arity(&self) -> usize {
        self.names.len()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn name(&self, k: usize) -> &str {
        &self.names[k]
    }

    pub fn role(&self, k: usize) -> Role {
        self.roles[k]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }
}

fn same_ctx(a: &Ctx, b: &Ctx) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

fn ctx_str(c: &Ctx) -> String {
    c.names.join(",")
}

/// Sparse Laurent polynomial; terms sorted lexicographically by exponent
/// vector, zero coefficients never stored.
#[derive(Clone, Debug)]
pub struct QuarterLaurent {
    ctx: Ctx,
    terms: BTreeMap<Vec<QExp>, BigInt>,
}

impl PartialEq for QuarterLaurent {
    fn eq(&self, other: &Self) -> bool {
        same_ctx(&self.ctx, &other.ctx) && self.terms == other.terms
    }
}

impl Eq for QuarterLaurent {}

impl QuarterLaurent {
    pub fn zero(ctx: &Ctx) -> Self {
        QuarterLaurent { ctx: ctx.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(ctx: &Ctx, c: impl Into<BigInt>) -> Self {
        Self::monomial(ctx, c, &vec![QExp::ZERO; ctx.arity()])
    }

    pub fn one(ctx: &Ctx) -> Self {
        Self::constant(ctx, 1)
    }

    pub fn monomial(ctx: &Ctx, c: impl Into<BigInt>, exps: &[QExp]) -> Self {
        assert_eq!(exps.len(), ctx.arity(), "exponent vector length");
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps.to_vec(), c);
        }
        QuarterLaurent { ctx: ctx.clone(), terms }
    }

    /// `c * prod var^(q/4)` from (name, quarter-units) pairs.
    pub fn mono(ctx: &Ctx, c: i64, vars: &[(&str, i64)]) -> Self {
        let mut e = vec![QExp::ZERO; ctx.arity()];
        for (name, q) in vars {
            let k = ctx.index_of(name).unwrap_or_else(|| panic!("no variable {name}"));
            e[k] = e[k] + QExp(*q);
        }
        Self::monomial(ctx, c, &e)
    }

    /// `c * v^(k/4)` for the single variable of a one-variable context.
    pub fn single_term(ctx: &Ctx, c: i64, quarters: i64) -> Self {
        assert_eq!(ctx.arity(), 1);
        Self::monomial(ctx, c, &[QExp(quarters)])
    }

    /// `c * q^k` in the `t` ring (`q = t^(1/2)`).
    pub fn q_pow(ctx: &Ctx, c: i64, k: i64) -> Self {
        Self::single_term(ctx, c, 2 * k)
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<QExp>, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn check(&self, o: &Self) -> Result<(), RingError> {
        if same_ctx(&self.ctx, &o.ctx) {
            Ok(())
        } else {
            Err(RingError::ContextMismatch(ctx_str(&self.ctx), ctx_str(&o.ctx)))
        }
    }

    pub fn try_add(&self, o: &Self) -> Result<Self, RingError> {
        self.check(o)?;
        let mut terms = self.terms.clone();
        for (e, c) in &o.terms {
            add_term(&mut terms, e.clone(), c.clone());
        }
        Ok(QuarterLaurent { ctx: self.ctx.clone(), terms })
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self, RingError> {
        self.check(o)?;
        let mut terms = BTreeMap::new();
        let mut e = vec![QExp::ZERO; self.ctx.arity()];
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                for (k, (x, y)) in ea.iter().zip(eb).enumerate() {
                    e[k] = *x + *y;
                }
                add_term_ref(&mut terms, &e, ca * cb);
            }
        }
        Ok(QuarterLaurent { ctx: self.ctx.clone(), terms })
    }

    /// `self += a * b` without building the product separately.
    pub fn add_product(&mut self, a: &Self, b: &Self) {
        self.check(a).and_then(|_| self.check(b)).expect("context mismatch");
        let mut e = vec![QExp::ZERO; self.ctx.arity()];
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                for (k, (x, y)) in ea.iter().zip(eb).enumerate() {
                    e[k] = *x + *y;
                }
                match self.terms.get_mut(&e[..]) {
                    Some(v) => {
                        if cb.is_one() {
                            *v += ca;
                        } else if ca.is_one() {
                            *v += cb;
                        } else {
                            *v += ca * cb;
                        }
                        if v.is_zero() {
                            self.terms.remove(&e[..]);
                        }
                    }
                    None => {
                        self.terms.insert(e.clone(), ca * cb);
                    }
                }
            }
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let mut out = Self::zero(&self.ctx);
        if c.is_zero() {
            return out;
        }
        for (e, v) in &self.terms {
            out.terms.insert(e.clone(), v * c);
        }
        out
    }

    /// Inverse of `±monomial`; error for anything else.
    pub fn unit_inverse(&self) -> Result<Self, RingError> {
        if self.terms.len() != 1 {
            return Err(RingError::NotUnit(self.to_string()));
        }
        let (e, c) = self.terms.iter().next().unwrap();
        if !c.abs().is_one() {
            return Err(RingError::NotUnit(self.to_string()));
        }
        let e: Vec<QExp> = e.iter().map(|x| -*x).collect();
        Ok(Self::monomial(&self.ctx, c.clone(), &e))
    }

    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms.values().next().unwrap().abs().is_one()
    }

    pub fn pow(&self, k: i64) -> Self {
        if k < 0 {
            return self.unit_inverse().expect("negative power of a non-unit").pow(-k);
        }
        let mut acc = Self::one(&self.ctx);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Value at `t = 1` for every variable (integer sum of coefficients).
    pub fn eval_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// The same polynomial over a context that is equal by value.
    pub fn rebase(&self, ctx: &Ctx) -> Self {
        assert!(same_ctx(&self.ctx, ctx), "rebase onto a different context");
        QuarterLaurent { ctx: ctx.clone(), terms: self.terms.clone() }
    }

    /// Parse the canonical rendering (as produced by `Display`) back.
    pub fn parse(ctx: &Ctx, s: &str) -> Result<Self, RingError> {
        let err = || RingError::Parse(s.to_string());
        let s = s.trim();
        if s == "0" {
            return Ok(Self::zero(ctx));
        }
        let mut out = Self::zero(ctx);
        // split into signed chunks on top-level " + " / " - "
        let mut chunks: Vec<(bool, String)> = vec![];
        let mut cur = String::new();
        let mut neg = false;
        let mut depth = 0;
        let bytes: Vec<char> = s.chars().collect();
        let mut k = 0;
        while k < bytes.len() {
            let ch = bytes[k];
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                _ => {}
            }
            if depth == 0 && ch == ' ' && k + 2 < bytes.len() && (bytes[k + 1] == '+' || bytes[k + 1] == '-') && bytes[k + 2] == ' ' {
                chunks.push((neg, std::mem::take(&mut cur)));
                neg = bytes[k + 1] == '-';
                k += 3;
                continue;
            }
            cur.push(ch);
            k += 1;
        }
        chunks.push((neg, cur));
        for (neg, chunk) in chunks {
            let mut coeff = BigInt::one();
            let mut e = vec![QExp::ZERO; ctx.arity()];
            for factor in chunk.split('*') {
                let factor = factor.trim();
                if factor.is_empty() {
                    return Err(err());
                }
                if let Ok(c) = factor.parse::<BigInt>() {
                    coeff *= c;
                    continue;
                }
                let (name, exp) = match factor.split_once('^') {
                    Some((n, x)) => (n, parse_exp(x).ok_or_else(err)?),
                    None => (factor, QExp(4)),
                };
                let k = ctx.index_of(name).ok_or_else(err)?;
                e[k] = e[k] + exp;
            }
            if neg {
                coeff = -coeff;
            }
            out = &out + &Self::monomial(ctx, coeff, &e);
        }
        Ok(out)
    }

    /// Rendering in conventional single-variable notation, e.g.
    /// `t - 1 + t^-1`, highest power first. Requires arity 1 and
    /// integer-or-fractional exponents.
    pub fn pretty_single(&self) -> String {
        assert_eq!(self.ctx.arity(), 1);
        if self.is_zero() {
            return "0".into();
        }
        let var = self.ctx.name(0).to_string();
        let mut out = String::new();
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let ex = e[0];
            if ex.is_zero() {
                out.push_str(&a.to_string());
                continue;
            }
            if !a.is_one() {
                out.push_str(&a.to_string());
            }
            out.push_str(&var);
            if ex != QExp(4) {
                out.push('^');
                let g = num_integer::gcd(ex.0, 4);
                if g == 4 {
                    out.push_str(&(ex.0 / 4).to_string());
                } else {
                    out.push_str(&format!("({}/{})", ex.0 / g, 4 / g));
                }
            }
        }
        out
    }
}

fn parse_exp(x: &str) -> Option<QExp> {
    let x = x.trim().trim_start_matches('(').trim_end_matches(')');
    match x.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().ok()?;
            let d: i64 = d.trim().parse().ok()?;
            if d <= 0 || 4 % d != 0 {
                return None;
            }
            Some(QExp(n * (4 / d)))
        }
        None => Some(QExp::int(x.parse().ok()?)),
    }
}

/// [`add_term`] that only copies the exponent vector for a new term.
fn add_term_ref(terms: &mut BTreeMap<Vec<QExp>, BigInt>, e: &[QExp], c: BigInt) {
    match terms.get_mut(e) {
        Some(v) => {
            *v += c;
            if v.is_zero() {
                terms.remove(e);
            }
        }
        None => add_term(terms, e.to_vec(), c),
    }
}

fn add_term(terms: &mut BTreeMap<Vec<QExp>, BigInt>, e: Vec<QExp>, c: BigInt) {
    use std::collections::btree_map::Entry;
    if c.is_zero() {
        return;
    }
    match terms.entry(e) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

impl fmt::Display for QuarterLaurent {
    /// Canonical form: terms in increasing lexicographic exponent order,
    /// each as `coeff*var^exp*...`, exponents as reduced fractions.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                if c.is_negative() {
                    write!(f, " - ")?;
                } else {
                    write!(f, " + ")?;
                }
            }
            let shown = if k > 0 { c.abs() } else { c.clone() };
            write!(f, "{shown}")?;
            for (v, x) in e.iter().enumerate() {
                if !x.is_zero() {
                    write!(f, "*{}^{}", self.ctx.name(v), x)?;
                }
            }
        }
        Ok(())
    }
}

impl Add for &QuarterLaurent {
    type Output = QuarterLaurent;
    fn add(self, o: &QuarterLaurent) -> QuarterLaurent {
        self.try_add(o).expect("context mismatch")
    }
}

impl AddAssign<&QuarterLaurent> for QuarterLaurent {
    fn add_assign(&mut self, o: &QuarterLaurent) {
        self.check(o).expect("context mismatch");
        for (e, c) in &o.terms {
            add_term_ref(&mut self.terms, e, c.clone());
        }
    }
}

impl Sub for &QuarterLaurent {
    type Output = QuarterLaurent;
    fn sub(self, o: &QuarterLaurent) -> QuarterLaurent {
        self.try_add(&-o).expect("context mismatch")
    }
}

impl Mul for &QuarterLaurent {
    type Output = QuarterLaurent;
    fn mul(self, o: &QuarterLaurent) -> QuarterLaurent {
        self.try_mul(o).expect("context mismatch")
    }
}

impl Neg for &QuarterLaurent {
    type Output = QuarterLaurent;
    fn neg(self) -> QuarterLaurent {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Mul,
    Neg,
    Eq,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ArithResult {
    Poly(QuarterLaurent),
    Bool(bool),
}

/// One entry point for the four ring operations (`b` is ignored by `Neg`).
pub fn laurent_arith(a: &QuarterLaurent, b: &QuarterLaurent, op: ArithOp) -> Result<ArithResult, RingError> {
    a.check(b)?;
    Ok(match op {
        ArithOp::Add => ArithResult::Poly(a.try_add(b)?),
        ArithOp::Mul => ArithResult::Poly(a.try_mul(b)?),
        ArithOp::Neg => ArithResult::Poly(-a),
        ArithOp::Eq => ArithResult::Bool(a == b),
    })
}

/// A ring homomorphism given by sending each source variable to a unit
/// monomial (exponents in quarter-units) of the target context.
#[derive(Clone, Debug)]
pub struct VarMap {
    pub source: Ctx,
    pub target: Ctx,
    images: Vec<Vec<QExp>>,
}

impl VarMap {
    /// `images[k]` lists (target name, quarter-units) for source variable `k`.
    pub fn new(source: &Ctx, target: &Ctx, images: &[Vec<(&str, i64)>]) -> Result<Self, RingError> {
        assert_eq!(images.len(), source.arity());
        let mut out = Vec::with_capacity(images.len());
        for img in images {
            let mut e = vec![QExp::ZERO; target.arity()];
            for (name, q) in img {
                let k = target.index_of(name).ok_or_else(|| RingError::MissingVariable(name.to_string()))?;
                e[k] = e[k] + QExp(*q);
            }
            out.push(e);
        }
        Ok(VarMap { source: source.clone(), target: target.clone(), images: out })
    }

    /// Send source variable named `a` to target variable named `f(a)` with the
    /// given power (in whole units).
    pub fn rename(source: &Ctx, target: &Ctx, f: impl Fn(&str) -> String, power: i64) -> Result<Self, RingError> {
        let names: Vec<String> = source.names().iter().map(|n| f(n)).collect();
        let imgs: Vec<Vec<(&str, i64)>> = names.iter().map(|n| vec![(n.as_str(), 4 * power)]).collect();
        Self::new(source, target, &imgs)
    }

    pub fn identity(ctx: &Ctx) -> Self {
        let imgs: Vec<Vec<(&str, i64)>> = ctx.names().iter().map(|n| vec![(n.as_str(), 4)]).collect();
        Self::new(ctx, ctx, &imgs).unwrap()
    }

    pub fn image_exps(&self, k: usize) -> &[QExp] {
        &self.images[k]
    }

    /// Hashable description of the map: target names and every image.
    pub fn key(&self) -> (Vec<String>, Vec<Vec<QExp>>) {
        (self.target.names().to_vec(), self.images.clone())
    }
}

pub fn apply_varmap(m: &VarMap, p: &QuarterLaurent) -> Result<QuarterLaurent, RingError> {
    if !same_ctx(&m.source, &p.ctx) {
        return Err(RingError::ContextMismatch(ctx_str(&m.source), ctx_str(&p.ctx)));
    }
    let mut terms = BTreeMap::new();
    for (e, c) in &p.terms {
        let mut out = vec![QExp::ZERO; m.target.arity()];
        for (k, x) in e.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in m.images[k].iter().enumerate() {
                // x * y is in sixteenths; images are whole-unit multiples in practice
                let prod = x.0 * y.0;
                assert!(prod % 4 == 0, "exponent leaves (1/4)Z");
                out[j] = out[j] + QExp(prod / 4);
            }
        }
        add_term(&mut terms, out, c.clone());
    }
    Ok(QuarterLaurent { ctx: m.target.clone(), terms })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    T,
    Q,
}

/// Send every variable to `t` according to its role (point variables are
/// fourth roots, strand variables and `t` are `t`, `q` is `t^(1/2)`). With
/// `Target::Q` the result is re-expressed in `q = t^(1/2)`.
pub fn collapse_single(p: &QuarterLaurent, target: Target) -> QuarterLaurent {
    let ctx = match target {
        Target::T => VarContext::single(),
        Target::Q => VarContext::single_q(),
    };
    let mut terms = BTreeMap::new();
    for (e, c) in &p.terms {
        let tq: i64 = e.iter().enumerate().map(|(k, x)| x.0 * p.ctx.role(k).t_weight()).sum();
        // t-quarter-units: tq / 4 quarters... x.0 is quarters of the variable
        assert!(tq % 4 == 0, "collapse leaves (1/4)Z");
        let t_quarters = tq / 4;
        let v = match target {
            Target::T => t_quarters,
            Target::Q => 2 * t_quarters,
        };
        add_term(&mut terms, vec![QExp(v)], c.clone());
    }
    QuarterLaurent { ctx, terms }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cancellation() {
        let c = VarContext::single();
        let a = &QuarterLaurent::q_pow(&c, 1, 1) - &QuarterLaurent::q_pow(&c, 1, -1);
        let b = QuarterLaurent::q_pow(&c, 1, -1);
        assert_eq!(&a + &b, QuarterLaurent::q_pow(&c, 1, 1));
    }

    #[test]
    fn unit_inverse_pair() {
        let c = VarContext::points(2, &[]);
        let a = QuarterLaurent::mono(&c, 1, &[("t1", 4), ("t2", 4)]);
        let b = QuarterLaurent::mono(&c, 1, &[("t1", -4), ("t2", -4)]);
        assert_eq!(&a * &b, QuarterLaurent::one(&c));
        assert_eq!(a.unit_inverse().unwrap(), b);
    }

    #[test]
    fn boltzmann_expansion() {
        let c = VarContext::points(2, &[]);
        let t14 = &QuarterLaurent::mono(&c, 1, &[("t1", 16)]) - &QuarterLaurent::one(&c);
        let m = QuarterLaurent::mono(&c, 1, &[("t1", -4), ("t2", -4)]);
        let want = &QuarterLaurent::mono(&c, 1, &[("t1", 12), ("t2", -4)]) - &m;
        assert_eq!(&t14 * &m, want);
    }

    #[test]
    fn render_and_parse() {
        let c = VarContext::points(1, &[]);
        let p = QuarterLaurent::mono(&c, -1, &[("t1", 3)]);
        assert_eq!(p.to_string(), "-1*t1^(3/4)");
        let s = VarContext::single();
        let p = QuarterLaurent::parse(&s, "-1*t^-1 + 1 - 2*t^(1/2)").unwrap();
        assert_eq!(p.to_string(), "-1*t^-1 + 1 - 2*t^(1/2)");
        assert_eq!(QuarterLaurent::parse(&s, &p.to_string()).unwrap(), p);
    }

    #[test]
    fn pretty_trefoil() {
        let s = VarContext::single();
        let p = QuarterLaurent::parse(&s, "1*t^-1 - 1 + 1*t").unwrap();
        assert_eq!(p.pretty_single(), "t - 1 + t^-1");
    }

    #[test]
    fn mismatch_is_error() {
        let a = QuarterLaurent::one(&VarContext::single());
        let b = QuarterLaurent::one(&VarContext::points(1, &[]));
        assert!(a.try_add(&b).is_err());
        assert!(laurent_arith(&a, &b, ArithOp::Eq).is_err());
    }

    #[test]
    fn swap_map() {
        let c = VarContext::points(3, &[]);
        let m = VarMap::new(&c, &c, &[vec![("t1", 4)], vec![("t3", 4)], vec![("t2", 4)]]).unwrap();
        let p = QuarterLaurent::mono(&c, 1, &[("t2", 4), ("t3", -4)]);
        let want = QuarterLaurent::mono(&c, 1, &[("t3", 4), ("t2", -4)]);
        assert_eq!(apply_varmap(&m, &p).unwrap(), want);
        assert_eq!(apply_varmap(&VarMap::identity(&c), &p).unwrap(), p);
    }

    #[test]
    fn min_strand_map() {
        // i = 1: positions 2,3 -> t, position j >= 4 -> t_{j-2}
        let src = VarContext::points(4, &[]);
        let tgt = VarContext::points(2, &["t"]);
        let m = VarMap::new(&src, &tgt, &[vec![("t1", 4)], vec![("t", 4)], vec![("t", 4)], vec![("t2", 4)]]).unwrap();
        let p = QuarterLaurent::mono(&src, 1, &[("t2", 4), ("t4", 4)]);
        assert_eq!(apply_varmap(&m, &p).unwrap(), QuarterLaurent::mono(&tgt, 1, &[("t", 4), ("t2", 4)]));
    }

    #[test]
    fn collapse_examples() {
        let s = VarContext::strands(2);
        let p = QuarterLaurent::mono(&s, 1, &[("s1", 1), ("s2", 1)]);
        assert_eq!(collapse_single(&p, Target::T), QuarterLaurent::single_term(&VarContext::single(), 1, 2));
        let c = VarContext::points(2, &[]);
        let p = QuarterLaurent::mono(&c, 1, &[("t1", 4), ("t2", 4)]);
        assert_eq!(collapse_single(&p, Target::Q), QuarterLaurent::single_term(&VarContext::single_q(), 1, 4));
        let one = QuarterLaurent::one(&c);
        assert_eq!(collapse_single(&one, Target::T), QuarterLaurent::one(&VarContext::single()));
    }
}
