//! Formal line bundles: monomials in `K`, named variable bundles, spin roots
//! `S` with `S^2 = K`, 2-torsion bundles `I` with `I^2 = O`, and divisor
//! twists `O(D)`.
//!
//! Equality is syntactic after reduction. Two variables of the same degree
//! are different bundles unless they carry the same name.
//!
//! The canonical string form is `K^p` first, then variables, divisor twists,
//! spin roots and torsion bundles, each group sorted by name, joined by `*`.
//! For example `K^2*M^-1*I` or `K^-1*S`. The trivial bundle prints as `O`.
//! When parsing, a bare name starting with `I` is a torsion bundle, one
//! starting with `S` is a spin root, and anything else is a variable.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::curve::Curve;
use crate::error::{Error, Result};

/// Kinds of formal symbols. The declaration order is the display order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SymbolKind {
    Variable,
    Divisor,
    Spin,
    Torsion,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol {
    pub kind: SymbolKind,
    pub name: String,
}

impl Symbol {
    pub fn new(kind: SymbolKind, name: impl Into<String>) -> Self {
        Symbol { kind, name: name.into() }
    }
}

/// A reduced monomial `K^k_power * prod(symbol^exponent)`.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LineBundle {
    k_power: i64,
    factors: BTreeMap<Symbol, i64>,
}

impl LineBundle {
    pub fn trivial() -> Self {
        LineBundle::default()
    }

    pub fn canonical() -> Self {
        LineBundle::k(1)
    }

    /// `K^power`.
    pub fn k(power: i64) -> Self {
        LineBundle { k_power: power, factors: BTreeMap::new() }
    }

    pub fn var(name: &str) -> Self {
        LineBundle::symbol(SymbolKind::Variable, name, 1)
    }

    pub fn torsion(name: &str) -> Self {
        LineBundle::symbol(SymbolKind::Torsion, name, 1)
    }

    /// A square root of `K`.
    pub fn spin(name: &str) -> Self {
        LineBundle::symbol(SymbolKind::Spin, name, 1)
    }

    /// The line bundle `O(D)` of a named divisor.
    pub fn divisor(name: &str) -> Self {
        LineBundle::symbol(SymbolKind::Divisor, name, 1)
    }

    pub fn symbol(kind: SymbolKind, name: &str, exponent: i64) -> Self {
        let mut lb = LineBundle::trivial();
        lb.factors.insert(Symbol::new(kind, name), exponent);
        lb.reduce();
        lb
    }

    pub fn k_power(&self) -> i64 {
        self.k_power
    }

    pub fn factors(&self) -> impl Iterator<Item = (&Symbol, i64)> {
        self.factors.iter().map(|(s, e)| (s, *e))
    }

    pub fn exponent_of(&self, kind: SymbolKind, name: &str) -> i64 {
        self.factors.get(&Symbol::new(kind, name)).copied().unwrap_or(0)
    }

    fn reduce(&mut self) {
        let mut carry = 0;
        for (sym, e) in self.factors.iter_mut() {
            match sym.kind {
                SymbolKind::Torsion => *e = e.rem_euclid(2),
                SymbolKind::Spin => {
                    carry += e.div_euclid(2);
                    *e = e.rem_euclid(2);
                }
                SymbolKind::Variable | SymbolKind::Divisor => {}
            }
        }
        self.k_power += carry;
        self.factors.retain(|_, e| *e != 0);
    }

    pub fn tensor(&self, other: &LineBundle) -> LineBundle {
        let mut out = self.clone();
        out.k_power += other.k_power;
        for (sym, e) in &other.factors {
            *out.factors.entry(sym.clone()).or_insert(0) += e;
        }
        out.reduce();
        out
    }

    pub fn dual(&self) -> LineBundle {
        self.pow(-1)
    }

    pub fn pow(&self, n: i64) -> LineBundle {
        let mut out = LineBundle {
            k_power: self.k_power * n,
            factors: self.factors.iter().map(|(s, e)| (s.clone(), e * n)).collect(),
        };
        out.reduce();
        out
    }

    /// `Hom(self, other) = self^-1 * other`.
    pub fn hom_to(&self, other: &LineBundle) -> LineBundle {
        self.dual().tensor(other)
    }

    pub fn is_trivial(&self) -> bool {
        self.k_power == 0 && self.factors.is_empty()
    }

    /// `Some(j)` when the bundle is syntactically `K^j`.
    pub fn as_k_power(&self) -> Option<i64> {
        self.factors.is_empty().then_some(self.k_power)
    }

    /// Names of every variable or divisor whose degree must be declared.
    pub fn free_symbols(&self) -> impl Iterator<Item = &Symbol> {
        self.factors
            .keys()
            .filter(|s| matches!(s.kind, SymbolKind::Variable | SymbolKind::Divisor))
    }

    /// Replace each listed symbol (looked up by name) by a bundle expression.
    pub fn substitute(&self, images: &BTreeMap<String, LineBundle>) -> LineBundle {
        let mut out = LineBundle::k(self.k_power);
        for (sym, e) in &self.factors {
            let piece = match images.get(&sym.name) {
                Some(img) => img.pow(*e),
                None => LineBundle::symbol(sym.kind, &sym.name, *e),
            };
            out = out.tensor(&piece);
        }
        out
    }

    pub fn degree(&self, ctx: &DegreeContext) -> Result<i64> {
        ctx.degree(self)
    }
}

impl fmt::Display for LineBundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("O");
        }
        let mut parts: Vec<String> = Vec::new();
        if self.k_power != 0 {
            parts.push(power_string("K", self.k_power));
        }
        for (sym, e) in &self.factors {
            let base = match sym.kind {
                SymbolKind::Divisor => alloc::format!("O({})", sym.name),
                _ => sym.name.clone(),
            };
            parts.push(power_string(&base, *e));
        }
        f.write_str(&parts.join("*"))
    }
}

fn power_string(base: &str, e: i64) -> String {
    if e == 1 {
        base.to_string()
    } else {
        alloc::format!("{base}^{e}")
    }
}

fn symbol_kind_for(name: &str) -> SymbolKind {
    if name.starts_with('I') {
        SymbolKind::Torsion
    } else if name.starts_with('S') {
        SymbolKind::Spin
    } else {
        SymbolKind::Variable
    }
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl FromStr for LineBundle {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty line bundle".into()));
        }
        let mut out = LineBundle::trivial();
        for raw in s.split('*') {
            let factor = raw.trim();
            let (base, exp) = match factor.rsplit_once('^') {
                Some((b, e)) if !b.ends_with('(') => {
                    let e = e.trim().trim_start_matches('(').trim_end_matches(')');
                    let e: i64 = e
                        .parse()
                        .map_err(|_| Error::Parse(alloc::format!("bad exponent in `{factor}`")))?;
                    (b.trim(), e)
                }
                _ => (factor, 1),
            };
            let piece = if base == "O" {
                LineBundle::trivial()
            } else if base == "K" {
                LineBundle::k(exp)
            } else if let Some(inner) = base.strip_prefix("O(").and_then(|r| r.strip_suffix(')')) {
                if !valid_name(inner) {
                    return Err(Error::Parse(alloc::format!("bad divisor name `{inner}`")));
                }
                LineBundle::symbol(SymbolKind::Divisor, inner, exp)
            } else if valid_name(base) {
                LineBundle::symbol(symbol_kind_for(base), base, exp)
            } else {
                return Err(Error::Parse(alloc::format!("bad factor `{factor}`")));
            };
            out = out.tensor(&piece);
        }
        Ok(out)
    }
}

/// A curve together with the declared degrees of variables and divisors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeContext {
    curve: Curve,
    degrees: BTreeMap<String, i64>,
}

impl DegreeContext {
    pub fn new(curve: Curve) -> Self {
        DegreeContext { curve, degrees: BTreeMap::new() }
    }

    pub fn with(mut self, name: &str, degree: i64) -> Self {
        self.declare(name, degree);
        self
    }

    pub fn declare(&mut self, name: &str, degree: i64) {
        self.degrees.insert(name.to_string(), degree);
    }

    pub fn curve(&self) -> Curve {
        self.curve
    }

    pub fn declared(&self, name: &str) -> Option<i64> {
        self.degrees.get(name).copied()
    }

    pub fn degree(&self, lb: &LineBundle) -> Result<i64> {
        let g = i64::from(self.curve.genus());
        let mut total = lb.k_power * self.curve.canonical_degree();
        for (sym, e) in &lb.factors {
            let unit = match sym.kind {
                SymbolKind::Torsion => 0,
                SymbolKind::Spin => g - 1,
                SymbolKind::Variable | SymbolKind::Divisor => self
                    .degrees
                    .get(&sym.name)
                    .copied()
                    .ok_or_else(|| Error::UnresolvedDegree(sym.name.clone()))?,
            };
            total += e * unit;
        }
        Ok(total)
    }
}
