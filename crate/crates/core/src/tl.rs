//! Temperley-Lieb algebra `TL_δ(k) = span NC2(k, k)` with loop parameter `δ`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{parse_scalar, pow};
use crate::partition::{ColorWord, Partition};
use crate::union_find::UnionFind;
use crate::ExactScalar;

pub const TL_MAX_K: usize = 10;

/// Noncrossing pairings of `0..n` as lists of arcs.
pub fn noncrossing_pairings(n: usize) -> Vec<Vec<(usize, usize)>> {
    fn rec(lo: usize, hi: usize) -> Vec<Vec<(usize, usize)>> {
        if lo >= hi {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        let mut j = lo + 1;
        while j < hi {
            for inner in rec(lo + 1, j) {
                for outer in rec(j + 1, hi) {
                    let mut arcs = vec![(lo, j)];
                    arcs.extend(inner.iter().copied());
                    arcs.extend(outer.iter().copied());
                    out.push(arcs);
                }
            }
            j += 2;
        }
        out
    }
    if n % 2 == 1 {
        return Vec::new();
    }
    rec(0, n)
}

/// The basis diagrams `NC2(k, k)` in canonical order.
pub fn basis(k: usize) -> Result<Vec<Partition>> {
    if k > TL_MAX_K {
        return Err(Error::LegBoundExceeded {
            legs: 2 * k,
            bound: 2 * TL_MAX_K,
        });
    }
    // clockwise position p < k is upper leg p; p ≥ k is lower leg 2k−1−p
    let leg = |p: usize| if p < k { p } else { k + (2 * k - 1 - p) };
    let mut out: Vec<Partition> = noncrossing_pairings(2 * k)
        .into_iter()
        .map(|arcs| {
            let mut labels = vec![0usize; 2 * k];
            for (b, (x, y)) in arcs.into_iter().enumerate() {
                labels[leg(x)] = b;
                labels[leg(y)] = b;
            }
            Partition::from_labels(ColorWord::white(k), ColorWord::white(k), &labels)
                .expect("valid pairing")
        })
        .collect();
    out.sort();
    Ok(out)
}

pub fn tl_dimension(k: usize) -> Result<usize> {
    basis(k).map(|b| b.len())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TLElement {
    pub k: usize,
    pub delta: ExactScalar,
    pub terms: BTreeMap<Partition, ExactScalar>,
}

fn check_diagram(p: &Partition, k: usize) -> Result<()> {
    if p.shape() != (k, k) || !p.is_pairing() || !p.is_noncrossing() {
        return Err(Error::NotTemperleyLieb(p.to_string()));
    }
    Ok(())
}

impl TLElement {
    pub fn zero(k: usize, delta: ExactScalar) -> Result<Self> {
        if delta <= ExactScalar::zero() {
            return Err(Error::InvalidArgument("delta must be positive".into()));
        }
        Ok(TLElement {
            k,
            delta,
            terms: BTreeMap::new(),
        })
    }

    pub fn diagram(p: &Partition, delta: ExactScalar) -> Result<Self> {
        let k = p.upper_len();
        check_diagram(&p.uncolored(), k)?;
        let mut x = Self::zero(k, delta)?;
        x.terms.insert(p.uncolored(), ExactScalar::one());
        Ok(x)
    }

    pub fn identity(k: usize, delta: ExactScalar) -> Result<Self> {
        Self::diagram(&Partition::identity(&ColorWord::white(k)), delta)
    }

    /// The cup-cap diagram `|^{i−1} ∪∩ |^{k−i−1}`.
    pub fn cup_cap(i: usize, k: usize, delta: ExactScalar) -> Result<Self> {
        if i == 0 || i >= k {
            return Err(Error::InvalidArgument(format!("generator index {i} outside 1..{k}")));
        }
        let mut labels = vec![0usize; 2 * k];
        let mut next = 0;
        for pos in 0..k {
            if pos == i {
                continue;
            }
            if pos == i - 1 {
                labels[pos] = next;
                labels[pos + 1] = next;
                labels[k + pos] = next + 1;
                labels[k + pos + 1] = next + 1;
                next += 2;
            } else {
                labels[pos] = next;
                labels[k + pos] = next;
                next += 1;
            }
        }
        let p = Partition::from_labels(ColorWord::white(k), ColorWord::white(k), &labels)?;
        Self::diagram(&p, delta)
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        let mut out = self.clone();
        out.terms = self
            .terms
            .iter()
            .map(|(d, x)| (d.clone(), x * c))
            .filter(|(_, x)| !x.is_zero())
            .collect();
        out
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.k != other.k {
            return Err(Error::TlMismatch("k"));
        }
        if self.delta != other.delta {
            return Err(Error::TlMismatch("delta"));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (d, x) in &other.terms {
            let e = out.terms.entry(d.clone()).or_insert_with(ExactScalar::zero);
            *e += x;
            if e.is_zero() {
                out.terms.remove(d);
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-ExactScalar::one()))
    }

    /// `xy` acts as `y` followed by `x`: `y` is stacked on top.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = Self::zero(self.k, self.delta.clone())?;
        for (x, a) in &self.terms {
            for (y, b) in &other.terms {
                let (c, loops) = y.compose(x)?;
                let coef = a * b * pow(&self.delta, loops);
                let e = out.terms.entry(c).or_insert_with(ExactScalar::zero);
                *e += coef;
            }
        }
        out.terms.retain(|_, x| !x.is_zero());
        Ok(out)
    }

    pub fn adjoint(&self) -> Self {
        let mut out = self.clone();
        out.terms = self
            .terms
            .iter()
            .map(|(d, x)| (d.adjoint().uncolored(), x.clone()))
            .collect();
        out
    }

    /// Normalized Markov trace: `δ^{loops(closure) − k}` per diagram.
    pub fn markov_trace(&self) -> ExactScalar {
        let mut acc = ExactScalar::zero();
        for (d, x) in &self.terms {
            let loops = closure_loops(d);
            acc += x * pow(&self.delta, loops) / pow(&self.delta, self.k);
        }
        acc
    }

    /// Image under the inclusion `TL(k) ⊂ TL(k+1)` adding a through-string on the right.
    pub fn embed(&self) -> Self {
        let bar = Partition::identity(&ColorWord::white(1));
        TLElement {
            k: self.k + 1,
            delta: self.delta.clone(),
            terms: self.terms.iter().map(|(d, x)| (d.tensor(&bar), x.clone())).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Loops formed when each upper leg is joined to the lower leg below it.
fn closure_loops(d: &Partition) -> usize {
    let k = d.upper_len();
    let mut uf = UnionFind::new(2 * k);
    let mut first = vec![None; d.num_blocks()];
    for (leg, &b) in d.labels().iter().enumerate() {
        match first[b as usize] {
            None => first[b as usize] = Some(leg),
            Some(f) => {
                uf.union(f, leg);
            }
        }
    }
    for i in 0..k {
        uf.union(i, k + i);
    }
    (0..2 * k).filter(|&v| uf.find(v) == v).count()
}

pub fn tl_multiply(a: &TLElement, b: &TLElement) -> Result<TLElement> {
    a.multiply(b)
}

pub fn tl_adjoint(x: &TLElement) -> TLElement {
    x.adjoint()
}

pub fn markov_trace(x: &TLElement) -> ExactScalar {
    x.markov_trace()
}

/// Jones projection `e_i = E_i / δ`.
pub fn jones_generator(i: usize, k: usize, delta: &ExactScalar) -> Result<TLElement> {
    Ok(TLElement::cup_cap(i, k, delta.clone())?.scale(&(ExactScalar::one() / delta)))
}

#[derive(Serialize)]
pub struct TermView {
    pub diagram: String,
    pub coefficient: String,
}

impl TLElement {
    pub fn term_list(&self) -> Vec<TermView> {
        self.terms
            .iter()
            .map(|(d, x)| TermView {
                diagram: d.to_string(),
                coefficient: x.to_string(),
            })
            .collect()
    }
}

impl fmt::Display for TLElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(d, x)| format!("({x})·[{d}]")).collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Evaluates expressions over `e<i>` (Jones projections), `E<i>` (cup-caps),
/// `id`, rational scalars, `+`, `-`, `*` and parentheses.
pub fn evaluate(expr: &str, k: usize, delta: &ExactScalar) -> Result<TLElement> {
    let tokens = tokenize(expr)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        k,
        delta: delta.clone(),
    };
    let value = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return Err(Error::Parse(format!("unexpected {:?}", parser.tokens[parser.pos])));
    }
    value.into_element(k, delta)
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Num(String),
    Ident(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '/') {
                i += 1;
            }
            out.push(Token::Num(chars[start..i].iter().collect()));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push(Token::Ident(chars[start..i].iter().collect()));
        } else if "+-*()".contains(c) {
            out.push(Token::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character {c:?}")));
        }
    }
    Ok(out)
}

/// Scalars stay scalars until they meet an element.
enum Value {
    Scalar(ExactScalar),
    Element(TLElement),
}

impl Value {
    fn into_element(self, k: usize, delta: &ExactScalar) -> Result<TLElement> {
        match self {
            Value::Element(e) => Ok(e),
            Value::Scalar(c) => Ok(TLElement::identity(k, delta.clone())?.scale(&c)),
        }
    }
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    k: usize,
    delta: ExactScalar,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn add(&self, a: Value, b: Value, sign: i64) -> Result<Value> {
        let s = ExactScalar::from_integer(sign.into());
        match (a, b) {
            (Value::Scalar(x), Value::Scalar(y)) => Ok(Value::Scalar(x + y * s)),
            (a, b) => {
                let a = a.into_element(self.k, &self.delta)?;
                let b = b.into_element(self.k, &self.delta)?;
                Ok(Value::Element(a.add(&b.scale(&s))?))
            }
        }
    }

    fn mul(&self, a: Value, b: Value) -> Result<Value> {
        Ok(match (a, b) {
            (Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(x * y),
            (Value::Scalar(x), Value::Element(e)) | (Value::Element(e), Value::Scalar(x)) => Value::Element(e.scale(&x)),
            (Value::Element(x), Value::Element(y)) => Value::Element(x.multiply(&y)?),
        })
    }

    fn expr(&mut self) -> Result<Value> {
        let mut acc = if self.peek() == Some(&Token::Op('-')) {
            self.pos += 1;
            let t = self.term()?;
            self.mul(Value::Scalar(-ExactScalar::one()), t)?
        } else {
            self.term()?
        };
        while let Some(Token::Op(c @ ('+' | '-'))) = self.peek().cloned() {
            self.pos += 1;
            let t = self.term()?;
            acc = self.add(acc, t, if c == '+' { 1 } else { -1 })?;
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Value> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Token::Op('*')) {
            self.pos += 1;
            let f = self.factor()?;
            acc = self.mul(acc, f)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Value> {
        let tok = self
            .tokens
            .get(self.pos)
            .cloned()
            .ok_or_else(|| Error::Parse("unexpected end of expression".into()))?;
        self.pos += 1;
        match tok {
            Token::Num(s) => Ok(Value::Scalar(parse_scalar(&s)?)),
            Token::Ident(id) if id == "id" => Ok(Value::Element(TLElement::identity(self.k, self.delta.clone())?)),
            Token::Ident(id) if id.len() > 1 && (id.starts_with('e') || id.starts_with('E')) => {
                let i: usize = id[1..]
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad generator {id:?}")))?;
                let e = if id.starts_with('e') {
                    jones_generator(i, self.k, &self.delta)?
                } else {
                    TLElement::cup_cap(i, self.k, self.delta.clone())?
                };
                Ok(Value::Element(e))
            }
            Token::Op('(') => {
                let v = self.expr()?;
                if self.tokens.get(self.pos) != Some(&Token::Op(')')) {
                    return Err(Error::Parse("missing ')'".into()));
                }
                self.pos += 1;
                Ok(v)
            }
            other => Err(Error::Parse(format!("unexpected {other:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{integer, rational};

    #[test]
    fn dimensions_are_catalan() {
        let catalan = [1, 1, 2, 5, 14, 42, 132, 429, 1430];
        for (k, &c) in catalan.iter().enumerate() {
            assert_eq!(tl_dimension(k).unwrap(), c);
        }
        assert!(tl_dimension(11).is_err());
    }

    #[test]
    fn basis_diagrams_are_valid() {
        for k in 0..5 {
            for d in basis(k).unwrap() {
                check_diagram(&d, k).unwrap();
            }
        }
    }

    #[test]
    fn cup_cap_relations() {
        let delta = integer(3);
        let e1 = TLElement::cup_cap(1, 2, delta.clone()).unwrap();
        assert_eq!(e1.multiply(&e1).unwrap(), e1.scale(&delta));
        let big = |i| TLElement::cup_cap(i, 3, delta.clone()).unwrap();
        let lhs = big(1).multiply(&big(2)).unwrap().multiply(&big(1)).unwrap();
        assert_eq!(lhs, big(1));
        let id = TLElement::identity(3, delta.clone()).unwrap();
        assert_eq!(id.multiply(&big(2)).unwrap(), big(2));
        assert!(TLElement::cup_cap(3, 3, delta).is_err());
    }

    #[test]
    fn trace_examples() {
        let delta = rational(7, 2);
        assert_eq!(TLElement::identity(4, delta.clone()).unwrap().markov_trace(), integer(1));
        let e1 = TLElement::cup_cap(1, 2, delta.clone()).unwrap();
        assert_eq!(e1.markov_trace(), ExactScalar::one() / &delta);
    }

    #[test]
    fn mismatches_are_errors() {
        let a = TLElement::identity(2, integer(2)).unwrap();
        let b = TLElement::identity(3, integer(2)).unwrap();
        let c = TLElement::identity(2, integer(3)).unwrap();
        assert_eq!(a.multiply(&b), Err(Error::TlMismatch("k")));
        assert_eq!(a.multiply(&c), Err(Error::TlMismatch("delta")));
        let crossing: Partition = "oo|oo {u1,d2}{u2,d1}".parse().unwrap();
        assert!(matches!(TLElement::diagram(&crossing, integer(2)), Err(Error::NotTemperleyLieb(_))));
    }

    #[test]
    fn expressions() {
        let delta = integer(3);
        let x = evaluate("e1*e2*e1", 3, &delta).unwrap();
        assert_eq!(x, jones_generator(1, 3, &delta).unwrap().scale(&rational(1, 9)));
        let y = evaluate("2*id - (e1 + 1/2 * E2)", 3, &delta).unwrap();
        assert_eq!(y.terms.len(), 3);
        assert!(evaluate("e1*e1 - e1", 3, &delta).unwrap().is_zero());
        assert!(evaluate("e1 +", 3, &delta).is_err());
        assert!(evaluate("f1", 3, &delta).is_err());
        assert_eq!(evaluate("4", 2, &delta).unwrap().markov_trace(), integer(4));
    }
}
