//! Sparse multivariate polynomials over the rationals.
//!
//! Provides exact parsing/printing, `Z^4`-multidegrees under a grading
//! matrix, the `T -> T * S1^e1 S2^e2 S3^e3` substitutions used by the Cox
//! ring presentations, monomial gcd extraction over the `S`-variables,
//! variable restriction, and the seeded draws of admissible coefficient
//! forms for the catalog equations.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::varieties::VarietyType;
use crate::{Int, IntMat, Rat};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{name}` at position {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("polynomial is not homogeneous: {mono1} has degree {deg1}, {mono2} has degree {deg2}")]
    Inhomogeneous {
        mono1: String,
        deg1: String,
        mono2: String,
        deg2: String,
    },
    #[error("zero polynomial has no degree")]
    ZeroPolynomial,
    #[error("monomial division is not exact")]
    DivisionNotExact,
}

/// Names of the ring variables; fixes the arity and the parser vocabulary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VariableContext {
    names: Vec<String>,
}

impl VariableContext {
    pub fn new(names: Vec<String>) -> Self {
        assert!(!names.is_empty(), "a ring needs at least one variable");
        VariableContext { names }
    }

    /// `T1 .. T{count}`.
    pub fn t_ring(count: usize) -> Self {
        Self::new((1..=count).map(|i| format!("T{i}")).collect())
    }

    /// `T1 .. T{t_count}, S1, S2, S3`.
    pub fn cox_ring(t_count: usize) -> Self {
        let mut names: Vec<String> = (1..=t_count).map(|i| format!("T{i}")).collect();
        for i in 1..=3 {
            names.push(format!("S{i}"));
        }
        Self::new(names)
    }

    /// `x1 .. x{n+2}`: homogeneous coordinates of the ambient projective
    /// space of a cubic in dimension `n`.
    pub fn proj_ring(n: usize) -> Self {
        Self::new((1..=n + 2).map(|i| format!("x{i}")).collect())
    }

    pub fn arity(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// Per-T-variable `S`-exponent triples of a substitution
/// `T_i -> T_i * S1^e1 S2^e2 S3^e3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BetaMap {
    pub exps: Vec<[u32; 3]>,
}

/// Sparse polynomial: monomial exponent vector -> nonzero rational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    ctx: VariableContext,
    terms: BTreeMap<Vec<u32>, Rat>,
}

impl MultiPoly {
    pub fn zero(ctx: &VariableContext) -> Self {
        MultiPoly {
            ctx: ctx.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ctx: &VariableContext, c: Rat) -> Self {
        let mut p = Self::zero(ctx);
        if !c.is_zero() {
            p.terms.insert(vec![0; ctx.arity()], c);
        }
        p
    }

    pub fn var(ctx: &VariableContext, i: usize) -> Self {
        let mut exps = vec![0; ctx.arity()];
        exps[i] = 1;
        Self::monomial(ctx, exps, Rat::one())
    }

    pub fn monomial(ctx: &VariableContext, exps: Vec<u32>, coeff: Rat) -> Self {
        assert_eq!(exps.len(), ctx.arity());
        let mut p = Self::zero(ctx);
        if !coeff.is_zero() {
            p.terms.insert(exps, coeff);
        }
        p
    }

    pub fn ctx(&self) -> &VariableContext {
        &self.ctx
    }

    pub fn arity(&self) -> usize {
        self.ctx.arity()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rat)> {
        self.terms.iter()
    }

    /// Coefficient of an exponent vector (zero when absent).
    pub fn coeff(&self, exps: &[u32]) -> Rat {
        self.terms.get(exps).cloned().unwrap_or_else(Rat::zero)
    }

    fn insert_term(&mut self, exps: Vec<u32>, coeff: Rat) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get() + &coeff;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        assert_eq!(self.ctx, other.ctx, "ring mismatch");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> MultiPoly {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rat) -> MultiPoly {
        if c.is_zero() {
            return Self::zero(&self.ctx);
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v = &*v * c;
        }
        out
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        assert_eq!(self.ctx, other.ctx, "ring mismatch");
        let mut out = Self::zero(&self.ctx);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let exps: Vec<u32> = ma.iter().zip(mb).map(|(a, b)| a + b).collect();
                out.insert_term(exps, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut out = Self::constant(&self.ctx, Rat::one());
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|m| m.iter().sum())
            .max()
            .unwrap_or(0)
    }

    /// Partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> MultiPoly {
        let mut out = Self::zero(&self.ctx);
        for (m, c) in &self.terms {
            if m[i] == 0 {
                continue;
            }
            let mut exps = m.clone();
            exps[i] -= 1;
            out.insert_term(exps, c * &Rat::from(Int::from(m[i] as i64)));
        }
        out
    }

    pub fn eval(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.arity());
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (i, &e) in m.iter().enumerate() {
                for _ in 0..e {
                    v = &v * &point[i];
                }
            }
            acc = &acc + &v;
        }
        acc
    }

    /// Substitutes variable `i` by the linear form `sum_j cols[i][j] * y_j`
    /// over a ring with the same arity.
    pub fn substitute_linear(&self, new_ctx: &VariableContext, cols: &[Vec<Rat>]) -> MultiPoly {
        assert_eq!(cols.len(), self.arity());
        let forms: Vec<MultiPoly> = cols
            .iter()
            .map(|col| {
                assert_eq!(col.len(), new_ctx.arity());
                let mut f = MultiPoly::zero(new_ctx);
                for (j, c) in col.iter().enumerate() {
                    f = f.add(&MultiPoly::var(new_ctx, j).scale(c));
                }
                f
            })
            .collect();
        let mut out = MultiPoly::zero(new_ctx);
        for (m, c) in &self.terms {
            let mut term = MultiPoly::constant(new_ctx, c.clone());
            for (i, &e) in m.iter().enumerate() {
                if e > 0 {
                    term = term.mul(&forms[i].pow(e));
                }
            }
            out = out.add(&term);
        }
        out
    }

    /// Reinterprets the polynomial in a larger (or renamed) ring; variable
    /// `i` maps to variable `i`.
    pub fn embed(&self, new_ctx: &VariableContext) -> MultiPoly {
        assert!(new_ctx.arity() >= self.arity(), "target ring too small");
        let mut out = MultiPoly::zero(new_ctx);
        for (m, c) in &self.terms {
            let mut exps = vec![0u32; new_ctx.arity()];
            exps[..m.len()].copy_from_slice(m);
            out.terms.insert(exps, c.clone());
        }
        out
    }

    /// Sets every variable outside `keep` to zero.
    pub fn restrict(&self, keep: &[usize]) -> MultiPoly {
        let mut out = Self::zero(&self.ctx);
        'term: for (m, c) in &self.terms {
            for (i, &e) in m.iter().enumerate() {
                if e > 0 && !keep.contains(&i) {
                    continue 'term;
                }
            }
            out.terms.insert(m.clone(), c.clone());
        }
        out
    }

    /// Degree vector `Q * exponents` of a monomial.
    pub fn monomial_degree(q: &IntMat, exps: &[u32]) -> Vec<Int> {
        assert_eq!(q.cols, exps.len());
        let v: Vec<Int> = exps.iter().map(|&e| Int::from(e as i64)).collect();
        q.mul_vec(&v)
    }

    /// Common degree of all terms under `Q`, or an error naming two witness
    /// monomials with different degrees.
    pub fn homogeneous_degree(&self, q: &IntMat) -> Result<Vec<Int>, PolyError> {
        let mut it = self.terms.keys();
        let first = it.next().ok_or(PolyError::ZeroPolynomial)?;
        let deg = Self::monomial_degree(q, first);
        for m in it {
            let d = Self::monomial_degree(q, m);
            if d != deg {
                return Err(PolyError::Inhomogeneous {
                    mono1: self.format_monomial(first),
                    deg1: format!("{deg:?}"),
                    mono2: self.format_monomial(m),
                    deg2: format!("{d:?}"),
                });
            }
        }
        Ok(deg)
    }

    /// Applies `T_i -> T_i * S1^e1 S2^e2 S3^e3`; the last three ring
    /// variables are the `S`-variables. Terms must not involve them.
    pub fn substitute_beta(&self, beta: &BetaMap) -> MultiPoly {
        let t_count = beta.exps.len();
        assert_eq!(self.arity(), t_count + 3, "ring is not a cox ring");
        let mut out = Self::zero(&self.ctx);
        for (m, c) in &self.terms {
            assert!(
                m[t_count..].iter().all(|&e| e == 0),
                "beta substitution applies to T-polynomials only"
            );
            let mut exps = m.clone();
            for (i, &e) in m[..t_count].iter().enumerate() {
                if e > 0 {
                    for k in 0..3 {
                        exps[t_count + k] += e * beta.exps[i][k];
                    }
                }
            }
            out.terms.insert(exps, c.clone());
        }
        out
    }

    /// Divides out the greatest common `S`-monomial (the last three
    /// variables); returns the quotient and the extracted exponent triple.
    pub fn s_gcd_divide(&self) -> (MultiPoly, [u32; 3]) {
        assert!(!self.is_zero(), "s_gcd_divide requires a nonzero polynomial");
        let t_count = self.arity() - 3;
        let mut g = [u32::MAX; 3];
        for m in self.terms.keys() {
            for k in 0..3 {
                g[k] = g[k].min(m[t_count + k]);
            }
        }
        let mut out = Self::zero(&self.ctx);
        for (m, c) in &self.terms {
            let mut exps = m.clone();
            for k in 0..3 {
                exps[t_count + k] -= g[k];
            }
            out.terms.insert(exps, c.clone());
        }
        (out, g)
    }

    /// Exact division by a monomial exponent vector.
    pub fn divide_by_monomial(&self, mono: &[u32]) -> Result<MultiPoly, PolyError> {
        assert_eq!(mono.len(), self.arity());
        let mut out = Self::zero(&self.ctx);
        for (m, c) in &self.terms {
            let mut exps = Vec::with_capacity(m.len());
            for (a, b) in m.iter().zip(mono) {
                if a < b {
                    return Err(PolyError::DivisionNotExact);
                }
                exps.push(a - b);
            }
            out.terms.insert(exps, c.clone());
        }
        Ok(out)
    }

    fn format_monomial(&self, exps: &[u32]) -> String {
        let parts: Vec<String> = exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    self.ctx.name(i).to_string()
                } else {
                    format!("{}^{}", self.ctx.name(i), e)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }

    pub fn parse(text: &str, ctx: &VariableContext) -> Result<MultiPoly, PolyError> {
        Parser::new(text, ctx).parse()
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // highest monomial (lex on exponent vectors) first
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c.clone() } else { c.clone() };
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mono = self.format_monomial(m);
            if mono == "1" {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{abs}*{mono}")?;
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    ctx: &'a VariableContext,
}

impl<'a> Parser<'a> {
    fn new(text: &str, ctx: &'a VariableContext) -> Self {
        Parser {
            chars: text.chars().collect(),
            pos: 0,
            ctx,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn err(&self, msg: &str) -> PolyError {
        PolyError::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn parse(&mut self) -> Result<MultiPoly, PolyError> {
        if self.peek().is_none() {
            return Err(self.err("empty input"));
        }
        let mut poly = MultiPoly::zero(self.ctx);
        let mut sign = match self.peek() {
            Some('+') => {
                self.pos += 1;
                false
            }
            Some('-') => {
                self.pos += 1;
                true
            }
            _ => false,
        };
        loop {
            let term = self.parse_term()?;
            poly = if sign { poly.sub(&term) } else { poly.add(&term) };
            match self.peek() {
                None => break,
                Some('+') => {
                    self.pos += 1;
                    sign = false;
                }
                Some('-') => {
                    self.pos += 1;
                    sign = true;
                }
                Some(c) => return Err(self.err(&format!("unexpected character `{c}`"))),
            }
        }
        Ok(poly)
    }

    fn parse_term(&mut self) -> Result<MultiPoly, PolyError> {
        let mut coeff = Rat::one();
        let mut exps = vec![0u32; self.ctx.arity()];
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let r = self.parse_rational()?;
                    coeff = &coeff * &r;
                }
                Some(c) if c.is_alphabetic() => {
                    let (idx, e) = self.parse_power()?;
                    exps[idx] += e;
                }
                Some(c) => return Err(self.err(&format!("expected a factor, found `{c}`"))),
                None => return Err(self.err("expected a factor, found end of input")),
            }
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                }
                _ => break,
            }
        }
        Ok(MultiPoly::monomial(self.ctx, exps, coeff))
    }

    fn parse_uint(&mut self) -> Result<u64, PolyError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| self.err("number too large"))
    }

    fn parse_rational(&mut self) -> Result<Rat, PolyError> {
        let num = self.parse_uint()?;
        let mut den = 1u64;
        if self.peek() == Some('/') {
            self.pos += 1;
            den = self.parse_uint()?;
            if den == 0 {
                return Err(self.err("zero denominator"));
            }
        }
        Ok(Rat::new(Int::from(num), Int::from(den)))
    }

    fn parse_power(&mut self) -> Result<(usize, u32), PolyError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len()
            && (self.chars[self.pos].is_alphanumeric() || self.chars[self.pos] == '_')
        {
            self.pos += 1;
        }
        let name: String = self.chars[start..self.pos].iter().collect();
        let idx = self
            .ctx
            .index_of(&name)
            .ok_or(PolyError::UnknownVariable { name, pos: start })?;
        let mut e = 1u32;
        if self.peek() == Some('^') {
            self.pos += 1;
            e = self.parse_uint()? as u32;
        }
        Ok((idx, e))
    }
}

// ---------------------------------------------------------------------------
// Seeded admissible coefficient forms
// ---------------------------------------------------------------------------

/// One drawn coefficient form of a catalog equation (e.g. `a2`, `b'`).
#[derive(Clone, Debug)]
pub struct CoefficientAssignment {
    /// forms keyed by name, as polynomials in `T1 .. T{n+2}`
    pub forms: BTreeMap<String, MultiPoly>,
    pub ty: VarietyType,
    pub n: usize,
    pub seed: u64,
}

impl CoefficientAssignment {
    pub fn form(&self, name: &str) -> &MultiPoly {
        self.forms
            .get(name)
            .unwrap_or_else(|| panic!("no form named {name} for {}", self.ty))
    }
}

struct FormSpec {
    name: &'static str,
    degree: u32,
    /// forms live in `C[T1 .. T{var_limit}]`
    var_limit: usize,
    /// exponent vectors with forced zero coefficient
    zero_slots: Vec<Vec<u32>>,
    /// exponent vectors with forced nonzero coefficient
    nonzero_slots: Vec<Vec<u32>>,
}

fn mono(arity: usize, pairs: &[(usize, u32)]) -> Vec<u32> {
    let mut m = vec![0u32; arity];
    for &(i, e) in pairs {
        m[i] += e;
    }
    m
}

/// All exponent vectors of total degree `d` in the first `var_limit`
/// variables of an `arity`-variable ring, lexicographically ordered.
pub fn monomials_of_degree(arity: usize, var_limit: usize, d: u32) -> Vec<Vec<u32>> {
    fn rec(out: &mut Vec<Vec<u32>>, cur: &mut Vec<u32>, arity: usize, limit: usize, left: u32) {
        if cur.len() == limit {
            if left == 0 {
                let mut m = cur.clone();
                m.resize(arity, 0);
                out.push(m);
            }
            return;
        }
        if cur.len() + 1 == limit {
            cur.push(left);
            rec(out, cur, arity, limit, 0);
            cur.pop();
            return;
        }
        for e in (0..=left).rev() {
            cur.push(e);
            rec(out, cur, arity, limit, left - e);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut out, &mut Vec::new(), arity, var_limit, d);
    out
}

fn form_specs(ty: VarietyType, n: usize) -> Vec<FormSpec> {
    let arity = n + 2; // ambient coordinates T1 .. T{n+2}
    let tn = n - 1; // index of T_n
    let tn1 = n; // index of T_{n+1}
    let tn2 = n + 1; // index of T_{n+2}
    let spec = |name, degree, var_limit| FormSpec {
        name,
        degree,
        var_limit,
        zero_slots: vec![],
        nonzero_slots: vec![],
    };
    match ty {
        VarietyType::X3 => vec![
            spec("a'", 2, n + 1),
            spec("a1", 1, n + 2),
            FormSpec {
                zero_slots: vec![mono(arity, &[(tn, 2)])],
                ..spec("b'", 2, n)
            },
            FormSpec {
                nonzero_slots: vec![mono(arity, &[(tn, 3)])],
                ..spec("b1", 3, n)
            },
        ],
        VarietyType::XS => vec![
            spec("a2", 2, n + 2),
            FormSpec {
                nonzero_slots: vec![mono(arity, &[(tn, 3)])],
                ..spec("b2", 3, n)
            },
        ],
        VarietyType::XS2 => vec![
            FormSpec {
                zero_slots: vec![mono(arity, &[(tn1, 2)]), mono(arity, &[(tn1, 1), (tn2, 1)])],
                ..spec("a3", 2, n + 2)
            },
            spec("b3", 3, n),
        ],
        VarietyType::XSSS => vec![spec("a4", 1, n + 2), spec("b4", 3, n)],
        VarietyType::X12 => vec![
            spec("a5", 2, n + 2),
            spec("b5", 2, n),
            spec("c5", 3, n),
        ],
        VarietyType::XS11 => vec![spec("a6", 2, n + 2), spec("b6", 3, n)],
        VarietyType::X111 => vec![
            spec("a7", 2, n + 2),
            spec("b7", 2, n),
            spec("c7", 3, n),
        ],
    }
}

fn draw_rat(rng: &mut ChaCha8Rng, nonzero: bool) -> Rat {
    loop {
        let num: i64 = rng.gen_range(-3..=3);
        let den: i64 = rng.gen_range(1..=2);
        if nonzero && num == 0 {
            continue;
        }
        return Rat::new(Int::from(num), Int::from(den));
    }
}

/// Draws rational coefficients for every form of the given catalog type,
/// honoring its zero/nonzero conditions; deterministic per `(ty, n, seed)`.
///
/// For `XS11`/`X111` the quadratic part of `a6`/`a7` in the last two
/// variables is replaced by `c*(T_{n+2} - r1*T_{n+1})(T_{n+2} - r2*T_{n+1})`
/// with distinct rational `r1, r2`, so the line meets the cubic in rational
/// points.
pub fn random_admissible(ty: VarietyType, n: usize, seed: u64) -> CoefficientAssignment {
    assert!(n >= 3);
    let arity = n + 2;
    let ctx = VariableContext::t_ring(arity);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut forms = BTreeMap::new();
    for fs in form_specs(ty, n) {
        let mut p = MultiPoly::zero(&ctx);
        for m in monomials_of_degree(arity, fs.var_limit, fs.degree) {
            if fs.zero_slots.contains(&m) {
                continue;
            }
            let c = draw_rat(&mut rng, fs.nonzero_slots.contains(&m));
            p = p.add(&MultiPoly::monomial(&ctx, m, c));
        }
        forms.insert(fs.name.to_string(), p);
    }
    if matches!(ty, VarietyType::XS11 | VarietyType::X111) {
        let name = if ty == VarietyType::XS11 { "a6" } else { "a7" };
        let r1 = draw_rat(&mut rng, false);
        let r2 = loop {
            let r = draw_rat(&mut rng, false);
            if r != r1 {
                break r;
            }
        };
        let c = draw_rat(&mut rng, true);
        let tn1 = n;
        let tn2 = n + 1;
        let mut p = forms[name].clone();
        let overrides = [
            (mono(arity, &[(tn1, 2)]), c.clone() * &r1 * &r2),
            (mono(arity, &[(tn1, 1), (tn2, 1)]), -(c.clone() * (&r1 + &r2))),
            (mono(arity, &[(tn2, 2)]), c),
        ];
        for (m, v) in overrides {
            let old = p.coeff(&m);
            p = p.sub(&MultiPoly::monomial(&ctx, m.clone(), old));
            p = p.add(&MultiPoly::monomial(&ctx, m, v));
        }
        forms.insert(name.to_string(), p);
    }
    CoefficientAssignment {
        forms,
        ty,
        n,
        seed,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{int, rat};
    use proptest::prelude::*;

    fn ctx3() -> VariableContext {
        VariableContext::t_ring(3)
    }

    #[test]
    fn parse_simple() {
        let ctx = ctx3();
        let p = MultiPoly::parse("T1^3 - 2/3*T2*T3^2", &ctx).unwrap();
        assert_eq!(p.num_terms(), 2);
        assert_eq!(p.coeff(&[3, 0, 0]), rat(1, 1));
        assert_eq!(p.coeff(&[0, 1, 2]), rat(-2, 3));
    }

    #[test]
    fn parse_empty_fails() {
        assert!(matches!(
            MultiPoly::parse("", &ctx3()),
            Err(PolyError::Syntax { .. })
        ));
        assert!(matches!(
            MultiPoly::parse("   ", &ctx3()),
            Err(PolyError::Syntax { .. })
        ));
    }

    #[test]
    fn parse_unknown_variable() {
        assert!(matches!(
            MultiPoly::parse("T9", &ctx3()),
            Err(PolyError::UnknownVariable { .. })
        ));
    }

    #[test]
    fn parse_leading_sign_and_coefficients() {
        let ctx = ctx3();
        let p = MultiPoly::parse("-T1 + 3*T1", &ctx).unwrap();
        assert_eq!(p.coeff(&[1, 0, 0]), rat(2, 1));
        let q = MultiPoly::parse("1/2 - 1/2", &ctx).unwrap();
        assert!(q.is_zero());
    }

    #[test]
    fn display_round_trip_fixed() {
        let ctx = ctx3();
        for s in [
            "T1^3 - 2/3*T2*T3^2",
            "-T1 + T2 - 5",
            "2*T1*T2*T3",
            "1/2",
        ] {
            let p = MultiPoly::parse(s, &ctx).unwrap();
            let q = MultiPoly::parse(&p.to_string(), &ctx).unwrap();
            assert_eq!(p, q, "round trip through `{p}`");
        }
    }

    #[test]
    fn arithmetic_and_derivative() {
        let ctx = ctx3();
        let p = MultiPoly::parse("T1^2*T2", &ctx).unwrap();
        let dp = p.derivative(0);
        assert_eq!(dp, MultiPoly::parse("2*T1*T2", &ctx).unwrap());
        assert!(p.derivative(2).is_zero());
        let point = [rat(2, 1), rat(3, 1), rat(7, 1)];
        assert_eq!(p.eval(&point), rat(12, 1));
    }

    #[test]
    fn restrict_examples() {
        let ctx = ctx3();
        let p = MultiPoly::parse("T1 + T2", &ctx).unwrap();
        assert_eq!(p.restrict(&[0]), MultiPoly::parse("T1", &ctx).unwrap());
        assert!(p.restrict(&[2]).is_zero());
    }

    #[test]
    fn restrict_composes_as_intersection() {
        let ctx = VariableContext::t_ring(4);
        let p = MultiPoly::parse("T1*T2 + T2*T3 + T3*T4 + T1^2", &ctx).unwrap();
        let a = p.restrict(&[0, 1, 2]).restrict(&[1, 2, 3]);
        let b = p.restrict(&[1, 2]);
        assert_eq!(a, b);
    }

    #[test]
    fn substitute_beta_examples() {
        let ctx = VariableContext::cox_ring(3);
        let beta = BetaMap {
            exps: vec![[1, 2, 3], [0, 0, 0], [3, 3, 3]],
        };
        let p = MultiPoly::parse("T1*T3 - T2", &ctx).unwrap();
        let img = p.substitute_beta(&beta);
        assert_eq!(
            img,
            MultiPoly::parse("T1*T3*S1^4*S2^5*S3^6 - T2", &ctx).unwrap()
        );
        assert!(MultiPoly::zero(&ctx).substitute_beta(&beta).is_zero());
    }

    #[test]
    fn s_gcd_divide_single_term() {
        let ctx = VariableContext::cox_ring(2);
        let p = MultiPoly::parse("T1*S1^2", &ctx).unwrap();
        let (q, g) = p.s_gcd_divide();
        assert_eq!(q, MultiPoly::parse("T1", &ctx).unwrap());
        assert_eq!(g, [2, 0, 0]);
    }

    #[test]
    fn s_gcd_divide_leaves_trivial_gcd() {
        let ctx = VariableContext::cox_ring(2);
        let p = MultiPoly::parse("T1*S1^2*S2 + T2*S1*S3^4", &ctx).unwrap();
        let (q, g) = p.s_gcd_divide();
        assert_eq!(g, [1, 0, 0]);
        let (_, g2) = q.s_gcd_divide();
        assert_eq!(g2, [0, 0, 0]);
    }

    #[test]
    fn homogeneous_degree_reports_witnesses() {
        let ctx = ctx3();
        let q = IntMat::from_rows(vec![
            vec![int(1), int(1), int(1)],
            vec![int(0), int(1), int(2)],
        ]);
        let p = MultiPoly::parse("T1*T3 + T2^2", &ctx).unwrap();
        assert_eq!(p.homogeneous_degree(&q).unwrap(), vec![int(2), int(2)]);
        let bad = MultiPoly::parse("T1 + T2^2", &ctx).unwrap();
        assert!(matches!(
            bad.homogeneous_degree(&q),
            Err(PolyError::Inhomogeneous { .. })
        ));
    }

    #[test]
    fn monomial_enumeration_counts() {
        // deg-3 monomials in 3 of 5 variables: C(5,2) = 10
        assert_eq!(monomials_of_degree(5, 3, 3).len(), 10);
        assert_eq!(monomials_of_degree(4, 4, 0), vec![vec![0, 0, 0, 0]]);
    }

    #[test]
    fn admissible_x3_conditions() {
        for seed in 0..5 {
            let a = random_admissible(VarietyType::X3, 3, seed);
            let arity = 5;
            // coefficient of T_n^2 in b' is zero (n = 3)
            assert!(a.form("b'").coeff(&mono(arity, &[(2, 2)])).is_zero());
            // coefficient of T_n^3 in b1 is nonzero
            assert!(!a.form("b1").coeff(&mono(arity, &[(2, 3)])).is_zero());
        }
    }

    #[test]
    fn admissible_xs_and_xs2_conditions() {
        for seed in 0..5 {
            let a = random_admissible(VarietyType::XS, 4, seed);
            let arity = 6;
            assert!(!a.form("b2").coeff(&mono(arity, &[(3, 3)])).is_zero());
            let a = random_admissible(VarietyType::XS2, 4, seed);
            assert!(a.form("a3").coeff(&mono(arity, &[(4, 2)])).is_zero());
            assert!(a.form("a3").coeff(&mono(arity, &[(4, 1), (5, 1)])).is_zero());
        }
    }

    #[test]
    fn admissible_is_deterministic() {
        for ty in crate::varieties::ALL_TYPES {
            let a = random_admissible(ty, 3, 42);
            let b = random_admissible(ty, 3, 42);
            for (k, v) in &a.forms {
                assert_eq!(v, &b.forms[k], "{ty}: form {k}");
            }
            let c = random_admissible(ty, 3, 43);
            assert!(a.forms.iter().any(|(k, v)| v != &c.forms[k]));
        }
    }

    #[test]
    fn admissible_x111_quadratic_splits() {
        // the T_{n+1},T_{n+2}-quadratic part of a7 has two distinct rational
        // roots: its discriminant is a nonzero square
        for seed in 0..10 {
            let n = 3;
            let a = random_admissible(VarietyType::X111, n, seed);
            let arity = n + 2;
            let al = a.form("a7").coeff(&mono(arity, &[(n, 2)]));
            let be = a.form("a7").coeff(&mono(arity, &[(n, 1), (n + 1, 1)]));
            let ga = a.form("a7").coeff(&mono(arity, &[(n + 1, 2)]));
            assert!(!ga.is_zero());
            let disc = &be * &be - rat(4, 1) * &al * &ga;
            assert!(!disc.is_zero(), "distinct roots for seed {seed}");
        }
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(seed in any::<u64>()) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let ctx = VariableContext::t_ring(3);
            let mut p = MultiPoly::zero(&ctx);
            for _ in 0..rng.gen_range(0..6) {
                let exps: Vec<u32> = (0..3).map(|_| rng.gen_range(0..4)).collect();
                let c = rat(rng.gen_range(-5..=5), rng.gen_range(1..=4));
                p = p.add(&MultiPoly::monomial(&ctx, exps, c));
            }
            let q = MultiPoly::parse(&p.to_string(), &ctx).unwrap();
            prop_assert_eq!(p, q);
        }

        #[test]
        fn beta_is_multiplicative(seed in any::<u64>()) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let ctx = VariableContext::cox_ring(3);
            let beta = BetaMap {
                exps: (0..3).map(|_| {
                    [rng.gen_range(0..4), rng.gen_range(0..4), rng.gen_range(0..4)]
                }).collect(),
            };
            let rand_poly = |rng: &mut rand_chacha::ChaCha8Rng| {
                let mut p = MultiPoly::zero(&ctx);
                for _ in 0..rng.gen_range(1..5) {
                    let mut exps = vec![0u32; 6];
                    for e in exps.iter_mut().take(3) {
                        *e = rng.gen_range(0..3);
                    }
                    let c = rat(rng.gen_range(-5..=5), rng.gen_range(1..=3));
                    p = p.add(&MultiPoly::monomial(&ctx, exps, c));
                }
                p
            };
            let p = rand_poly(&mut rng);
            let q = rand_poly(&mut rng);
            prop_assert_eq!(
                p.mul(&q).substitute_beta(&beta),
                p.substitute_beta(&beta).mul(&q.substitute_beta(&beta))
            );
        }
    }
}
