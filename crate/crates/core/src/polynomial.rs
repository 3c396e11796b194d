//! Sparse polynomials over GF(p) with terms kept in descending grevlex order,
//! and the line-oriented text format.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::AlgebraError;
use crate::field::{Field, FieldScalar};
use crate::monomial::{Block, Monomial, VariableLayout};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    terms: Vec<(Monomial, FieldScalar)>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    pub fn constant(layout: &VariableLayout, c: FieldScalar) -> Self {
        Self::term(layout.one(), c)
    }

    pub fn term(m: Monomial, c: FieldScalar) -> Self {
        if c == 0 {
            Self::zero()
        } else {
            Polynomial {
                terms: vec![(m, c)],
            }
        }
    }

    pub fn var(layout: &VariableLayout, var: usize) -> Self {
        Self::term(layout.var(var), 1)
    }

    /// Builds a polynomial from arbitrary terms: sorts, merges duplicates and
    /// drops zero coefficients.
    pub fn from_terms(terms: Vec<(Monomial, FieldScalar)>, field: &Field) -> Self {
        let mut acc: HashMap<Monomial, FieldScalar> = HashMap::with_capacity(terms.len());
        for (m, c) in terms {
            let slot = acc.entry(m).or_insert(0);
            *slot = field.add(*slot, c % field.modulus());
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| *c != 0).collect();
        terms.sort_unstable_by(|a, b| b.0.grevlex_cmp(&a.0));
        Polynomial { terms }
    }

    /// Trusts the caller that `terms` is strictly descending with nonzero
    /// coefficients.
    pub(crate) fn from_sorted_terms(terms: Vec<(Monomial, FieldScalar)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        debug_assert!(terms.iter().all(|t| t.1 != 0));
        Polynomial { terms }
    }

    #[inline]
    pub fn terms(&self) -> &[(Monomial, FieldScalar)] {
        &self.terms
    }

    #[inline]
    pub fn n_terms(&self) -> usize {
        self.terms.len()
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coeff(&self) -> Option<FieldScalar> {
        self.terms.first().map(|t| t.1)
    }

    /// Total degree (of the leading term, which has maximal degree).
    pub fn degree(&self) -> Option<u32> {
        self.leading_monomial().map(Monomial::degree)
    }

    pub fn coefficient(&self, m: &Monomial) -> FieldScalar {
        self.terms
            .binary_search_by(|(t, _)| m.grevlex_cmp(t))
            .map(|i| self.terms[i].1)
            .unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.terms
            .windows(2)
            .all(|w| w[0].0.degree() == w[1].0.degree())
    }

    /// The common bidegree of all terms, if there is one. `None` for zero.
    pub fn bidegree(&self) -> Option<(u32, u32)> {
        let first = self.terms.first()?.0.bidegree();
        self.terms
            .iter()
            .all(|(m, _)| m.bidegree() == first)
            .then_some(first)
    }

    pub fn is_bihomogeneous(&self) -> bool {
        self.is_zero() || self.bidegree().is_some()
    }

    pub fn is_bilinear(&self) -> bool {
        self.bidegree() == Some((1, 1))
    }

    /// Whether every term mentions only variables of `block`.
    pub fn lives_in(&self, layout: &VariableLayout, block: Block) -> bool {
        let range = layout.block_range(block);
        self.terms.iter().all(|(m, _)| {
            m.exponents()
                .iter()
                .enumerate()
                .all(|(v, &e)| e == 0 || range.contains(&v))
        })
    }

    pub fn neg(&self, field: &Field) -> Self {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), field.neg(*c)))
                .collect(),
        }
    }

    pub fn scale(&self, c: FieldScalar, field: &Field) -> Self {
        if c == 0 {
            return Self::zero();
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), field.mul(*a, c)))
                .collect(),
        }
    }

    pub fn monic(&self, field: &Field) -> Self {
        match self.leading_coeff() {
            None | Some(1) => self.clone(),
            Some(c) => self.scale(field.inv(c), field),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        Polynomial {
            terms: self.terms.iter().map(|(t, c)| (t.mul(m), *c)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: FieldScalar, field: &Field) -> Self {
        if c == 0 {
            return Self::zero();
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(t, a)| (t.mul(m), field.mul(*a, c)))
                .collect(),
        }
    }

    pub fn add(&self, other: &Polynomial, field: &Field) -> Self {
        self.merge(other, field, false)
    }

    pub fn sub(&self, other: &Polynomial, field: &Field) -> Self {
        self.merge(other, field, true)
    }

    fn merge(&self, other: &Polynomial, field: &Field, negate: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let theirs = |c: FieldScalar| if negate { field.neg(c) } else { c };
        while i < self.terms.len() && j < other.terms.len() {
            let (a, ca) = &self.terms[i];
            let (b, cb) = &other.terms[j];
            match a.grevlex_cmp(b) {
                std::cmp::Ordering::Greater => {
                    out.push((a.clone(), *ca));
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push((b.clone(), theirs(*cb)));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let s = field.add(*ca, theirs(*cb));
                    if s != 0 {
                        out.push((a.clone(), s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(other.terms[j..].iter().map(|(m, c)| (m.clone(), theirs(*c))));
        Polynomial { terms: out }
    }

    pub fn mul(&self, other: &Polynomial, field: &Field) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut acc: HashMap<Monomial, FieldScalar> =
            HashMap::with_capacity(self.n_terms() * other.n_terms());
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let slot = acc.entry(a.mul(b)).or_insert(0);
                *slot = field.add(*slot, field.mul(*ca, *cb));
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| *c != 0).collect();
        terms.sort_unstable_by(|a, b| b.0.grevlex_cmp(&a.0));
        Polynomial { terms }
    }

    /// Partial derivative with respect to variable `var`.
    pub fn derivative(&self, var: usize, field: &Field) -> Self {
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            let e = m.exponent(var);
            if e == 0 {
                continue;
            }
            let coeff = field.mul(*c, field.from_i64(e as i64));
            if coeff == 0 {
                continue;
            }
            let mut exps: crate::monomial::Exponents = m.exponents().into();
            exps[var] -= 1;
            terms.push((Monomial::from_raw(exps, m.split()), coeff));
        }
        terms.sort_unstable_by(|a, b| b.0.grevlex_cmp(&a.0));
        Polynomial { terms }
    }

    /// Substitutes field values for a subset of variables and drops them.
    /// `values[v]` is `Some(c)` for substituted variables.
    pub fn specialize(
        &self,
        values: &[Option<FieldScalar>],
        target: &VariableLayout,
        field: &Field,
    ) -> Self {
        let keep: Vec<bool> = values.iter().map(Option::is_none).collect();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut coeff = *c;
                for (v, val) in values.iter().enumerate() {
                    if let Some(val) = val {
                        coeff = field.mul(coeff, field.pow(*val, m.exponent(v) as u64));
                    }
                }
                (m.project(&keep, target.x_count() as u16), coeff)
            })
            .collect();
        Self::from_terms(terms, field)
    }

    /// Re-embeds into a larger layout; `map[v]` is the new index of old
    /// variable `v`.
    pub fn relabel(&self, map: &[usize], target: &VariableLayout, field: &Field) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut exps: crate::monomial::Exponents =
                    smallvec::SmallVec::from_elem(0, target.n_vars());
                for (v, &e) in m.exponents().iter().enumerate() {
                    exps[map[v]] += e;
                }
                (Monomial::from_raw(exps, target.x_count() as u16), *c)
            })
            .collect();
        Self::from_terms(terms, field)
    }

    pub fn evaluate(&self, point: &[FieldScalar], field: &Field) -> FieldScalar {
        self.terms.iter().fold(0, |acc, (m, c)| {
            let v = m
                .exponents()
                .iter()
                .zip(point)
                .fold(*c, |p, (&e, &x)| field.mul(p, field.pow(x, e as u64)));
            field.add(acc, v)
        })
    }

    /// Renders in the text format.
    pub fn to_text(&self, layout: &VariableLayout, field: &Field) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let signed = field.to_signed(*c);
            let (neg, abs) = (signed < 0, signed.unsigned_abs());
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if m.is_one() {
                let _ = write!(out, "{abs}");
            } else if abs == 1 {
                let _ = write!(out, "{}", m.display(layout));
            } else {
                let _ = write!(out, "{abs}*{}", m.display(layout));
            }
        }
        out
    }
}

/// Parses one polynomial in the text format. `line` is used only for error
/// positions.
pub fn parse_polynomial(
    text: &str,
    line: usize,
    layout: &VariableLayout,
    field: &Field,
) -> Result<Polynomial, AlgebraError> {
    Parser {
        chars: text.char_indices().peekable(),
        text,
        line,
        layout,
        field,
    }
    .polynomial()
}

/// Parses a system: one polynomial per nonblank line; `#` starts a comment.
pub fn parse_polynomials(
    text: &str,
    layout: &VariableLayout,
    field: &Field,
) -> Result<Vec<Polynomial>, AlgebraError> {
    let mut out = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("");
        if body.trim().is_empty() {
            continue;
        }
        out.push(parse_polynomial(body, k + 1, layout, field)?);
    }
    Ok(out)
}

/// Smallest `(x_count, y_count)` that covers every variable named in `text`.
pub fn infer_counts(text: &str) -> (usize, usize) {
    let (mut x, mut y) = (0, 0);
    for raw in text.lines() {
        let body = raw.split('#').next().unwrap_or("");
        let bytes = body.as_bytes();
        let mut k = 0;
        while k < bytes.len() {
            let c = bytes[k];
            if (c == b'x' || c == b'y') && k + 1 < bytes.len() && bytes[k + 1].is_ascii_digit() {
                let start = k + 1;
                let mut end = start;
                while end < bytes.len() && bytes[end].is_ascii_digit() {
                    end += 1;
                }
                let idx: usize = body[start..end].parse().unwrap_or(0);
                if c == b'x' {
                    x = x.max(idx + 1);
                } else {
                    y = y.max(idx + 1);
                }
                k = end;
            } else {
                k += 1;
            }
        }
    }
    (x, y)
}

struct Parser<'a> {
    chars: std::iter::Peekable<std::str::CharIndices<'a>>,
    text: &'a str,
    line: usize,
    layout: &'a VariableLayout,
    field: &'a Field,
}

impl Parser<'_> {
    fn error(&mut self, message: impl Into<String>) -> AlgebraError {
        let column = match self.chars.peek() {
            Some((pos, _)) => self.text[..*pos].chars().count() + 1,
            None => self.text.chars().count() + 1,
        };
        AlgebraError::Parse {
            line: self.line,
            column,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while matches!(self.chars.peek(), Some((_, c)) if c.is_whitespace()) {
            self.chars.next();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.peek().map(|&(_, c)| c)
    }

    fn number(&mut self) -> Result<u64, AlgebraError> {
        let mut value: Option<u64> = None;
        while let Some(&(_, c)) = self.chars.peek() {
            let Some(d) = c.to_digit(10) else { break };
            let v = value.unwrap_or(0);
            value = Some(
                v.checked_mul(10)
                    .and_then(|v| v.checked_add(d as u64))
                    .ok_or_else(|| self.error("integer too large"))?,
            );
            self.chars.next();
        }
        value.ok_or_else(|| self.error("expected a number"))
    }

    fn polynomial(mut self) -> Result<Polynomial, AlgebraError> {
        let mut terms = Vec::new();
        let mut first = true;
        loop {
            let negative = match self.peek() {
                None if first => return Err(self.error("empty polynomial")),
                None => break,
                Some('+') => {
                    self.chars.next();
                    false
                }
                Some('-') => {
                    self.chars.next();
                    true
                }
                Some(_) if first => false,
                Some(c) => return Err(self.error(format!("expected '+' or '-', found '{c}'"))),
            };
            first = false;
            let (m, c) = self.term()?;
            let c = if negative { self.field.neg(c) } else { c };
            terms.push((m, c));
        }
        Ok(Polynomial::from_terms(terms, self.field))
    }

    fn term(&mut self) -> Result<(Monomial, FieldScalar), AlgebraError> {
        let mut coeff = 1u32;
        let mut mono = self.layout.one();
        let mut first = true;
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let n = self.number()?;
                    coeff = self.field.mul(coeff, (n % self.field.modulus() as u64) as u32);
                }
                Some(c @ ('x' | 'y')) => {
                    self.chars.next();
                    if !matches!(self.chars.peek(), Some((_, d)) if d.is_ascii_digit()) {
                        return Err(self.error(format!("expected an index after '{c}'")));
                    }
                    let idx = self.number()? as usize;
                    let (count, var) = if c == 'x' {
                        (self.layout.x_count(), idx)
                    } else {
                        (self.layout.y_count(), self.layout.y(idx))
                    };
                    if idx >= count {
                        return Err(self.error(format!("variable {c}{idx} outside the layout")));
                    }
                    let mut exp = 1;
                    if self.peek() == Some('^') {
                        self.chars.next();
                        self.skip_ws();
                        exp = self.number()?;
                    }
                    let exp = u16::try_from(exp).map_err(|_| self.error("exponent too large"))?;
                    for _ in 0..exp {
                        mono = mono.mul_var(var);
                    }
                }
                Some(c) if first => return Err(self.error(format!("unexpected '{c}'"))),
                None if first => return Err(self.error("expected a term")),
                _ => return Err(self.error("expected a factor after '*'")),
            }
            first = false;
            if self.peek() == Some('*') {
                self.chars.next();
            } else {
                return Ok((mono, coeff));
            }
        }
    }
}
