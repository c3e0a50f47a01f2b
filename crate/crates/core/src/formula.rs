//! Implicational formulas over a fixed set of variables `a1..ak`.
//!
//! A formula is a rooted binary tree: leaves carry variable indices, inner
//! nodes are implications. Size is the number of leaves, i.e. the number of
//! variable occurrences.

use std::fmt;

use crate::error::{Error, Result};

/// Default bound on the size accepted by [`enumerate_formulas`]. There are
/// `k^n * C_n` formulas of size `n`, so anything much past this is hopeless
/// to stream anyway.
pub const DEFAULT_ENUM_CAP: u32 = 20;

/// An implicational formula. Variables are 1-based indices into `a1..ak`.
///
/// The derived `Ord` (variables first, then implications, fields
/// lexicographically) is the canonical order used everywhere a deterministic
/// arrangement of formulas is needed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Var(u32),
    Imp(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn var(index: u32) -> Self {
        Formula::Var(index)
    }

    pub fn imp(left: Formula, right: Formula) -> Self {
        Formula::Imp(Box::new(left), Box::new(right))
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Formula::Var(_))
    }

    /// Number of variable occurrences (leaves of the formula tree).
    pub fn size(&self) -> u32 {
        match self {
            Formula::Var(_) => 1,
            Formula::Imp(l, r) => l.size() + r.size(),
        }
    }

    /// The goal: the rightmost variable of the formula.
    pub fn goal(&self) -> u32 {
        let mut cur = self;
        loop {
            match cur {
                Formula::Var(v) => return *v,
                Formula::Imp(_, r) => cur = r,
            }
        }
    }

    /// Largest variable index occurring in the formula.
    pub fn max_var(&self) -> u32 {
        match self {
            Formula::Var(v) => *v,
            Formula::Imp(l, r) => l.max_var().max(r.max_var()),
        }
    }

    /// Iterate over the premises of the right-nested spine without
    /// materializing a [`Decomposition`].
    pub fn premises(&self) -> Premises<'_> {
        Premises { cur: self }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_formula(self))
    }
}

/// Iterator over the premises `A_1, ..., A_p` of `A_1 -> (... -> (A_p -> goal))`.
pub struct Premises<'a> {
    cur: &'a Formula,
}

impl<'a> Iterator for Premises<'a> {
    type Item = &'a Formula;

    fn next(&mut self) -> Option<&'a Formula> {
        match self.cur {
            Formula::Var(_) => None,
            Formula::Imp(l, r) => {
                self.cur = r;
                Some(l)
            }
        }
    }
}

/// A formula split into its premises and goal variable:
/// `T = A_1, ..., A_p -> r(T)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub premises: Vec<Formula>,
    pub goal: u32,
}

/// Split a formula along its right-nested spine. A bare variable has no
/// premises and is its own goal.
pub fn decompose(f: &Formula) -> Decomposition {
    let mut premises = Vec::new();
    let mut cur = f;
    loop {
        match cur {
            Formula::Var(v) => {
                return Decomposition {
                    premises,
                    goal: *v,
                }
            }
            Formula::Imp(l, r) => {
                premises.push((**l).clone());
                cur = r;
            }
        }
    }
}

/// Right-nest the premises back onto the goal; inverse of [`decompose`].
pub fn reassemble(d: &Decomposition) -> Formula {
    let mut cur = Formula::Var(d.goal);
    for p in d.premises.iter().rev() {
        cur = Formula::imp(p.clone(), cur);
    }
    cur
}

/// Total number of leaves; alias for [`Formula::size`].
pub fn formula_size(f: &Formula) -> u32 {
    f.size()
}

/// Render with minimal parentheses; `->` is right-associative, so only
/// implications in argument position are parenthesized.
pub fn render_formula(f: &Formula) -> String {
    let mut out = String::new();
    render_into(f, &mut out);
    out
}

fn render_into(f: &Formula, out: &mut String) {
    match f {
        Formula::Var(v) => {
            out.push('a');
            out.push_str(&v.to_string());
        }
        Formula::Imp(l, r) => {
            if l.is_var() {
                render_into(l, out);
            } else {
                out.push('(');
                render_into(l, out);
                out.push(')');
            }
            out.push_str("->");
            render_into(r, out);
        }
    }
}

/// Parse the concrete syntax:
///
/// ```text
/// formula = atom | atom "->" formula
/// atom    = var | "(" formula ")"
/// var     = "a" digits | single letter a..z (alias for a1..a26)
/// ```
///
/// Whitespace is ignored. Every variable index must lie in `1..=k`.
pub fn parse_formula(text: &str, k: u32) -> Result<Formula> {
    let mut p = Parser {
        bytes: text.as_bytes(),
        pos: 0,
        k,
    };
    let f = p.formula()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(f)
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    k: u32,
}

impl<'a> Parser<'a> {
    fn err(&self, message: &str) -> Error {
        Error::Syntax {
            position: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn formula(&mut self) -> Result<Formula> {
        let atom = self.atom()?;
        if self.peek() == Some(b'-') {
            if self.bytes.get(self.pos + 1) != Some(&b'>') {
                self.pos += 1;
                return Err(self.err("expected '>' after '-'"));
            }
            self.pos += 2;
            let rest = self.formula()?;
            Ok(Formula::imp(atom, rest))
        } else {
            Ok(atom)
        }
    }

    fn atom(&mut self) -> Result<Formula> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let f = self.formula()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(f)
            }
            Some(c) if c.is_ascii_lowercase() => self.var(c),
            Some(_) => Err(self.err("expected variable or '('")),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn var(&mut self, first: u8) -> Result<Formula> {
        let start = self.pos;
        self.pos += 1;
        let index = if first == b'a'
            && self
                .bytes
                .get(self.pos)
                .is_some_and(|b| b.is_ascii_digit())
        {
            let mut v: u64 = 0;
            while let Some(b) = self.bytes.get(self.pos) {
                if !b.is_ascii_digit() {
                    break;
                }
                v = v * 10 + u64::from(b - b'0');
                if v > u64::from(u32::MAX) {
                    self.pos = start;
                    return Err(self.err("variable index out of range"));
                }
                self.pos += 1;
            }
            v as u32
        } else {
            // single-letter alias: a..z stand for a1..a26
            u32::from(first - b'a') + 1
        };
        if index == 0 {
            self.pos = start;
            return Err(self.err("variable indices start at 1"));
        }
        if index > self.k {
            return Err(Error::VarOutOfRange { index, k: self.k });
        }
        Ok(Formula::Var(index))
    }
}

/// Stream every formula of size `n` over variables `a1..ak`, each exactly
/// once, in the canonical enumeration order: left-subtree size ascending,
/// then the left subtree recursively, then the right subtree, with leaf
/// labels ascending.
pub fn enumerate_formulas(
    k: u32,
    n: u32,
    cap: Option<u32>,
) -> Result<Box<dyn Iterator<Item = Formula> + Send>> {
    let cap = cap.unwrap_or(DEFAULT_ENUM_CAP);
    if k == 0 || n == 0 {
        return Err(Error::Invalid {
            what: "enumeration parameters",
            detail: format!("k={k}, n={n}; both must be at least 1"),
        });
    }
    if n > cap {
        return Err(Error::CapExceeded {
            what: "formula size",
            requested: u64::from(n),
            cap: u64::from(cap),
        });
    }
    Ok(formulas_rec(k, n))
}

fn formulas_rec(k: u32, n: u32) -> Box<dyn Iterator<Item = Formula> + Send> {
    if n == 1 {
        Box::new((1..=k).map(Formula::Var))
    } else {
        Box::new((1..n).flat_map(move |i| {
            formulas_rec(k, i).flat_map(move |left| {
                formulas_rec(k, n - i).map(move |right| Formula::imp(left.clone(), right))
            })
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, k: u32) -> Formula {
        parse_formula(s, k).unwrap()
    }

    #[test]
    fn parse_identity() {
        assert_eq!(p("a1->a1", 1), Formula::imp(Formula::var(1), Formula::var(1)));
    }

    #[test]
    fn parse_right_associative() {
        assert_eq!(
            p("a1->a2->a1", 2),
            Formula::imp(
                Formula::var(1),
                Formula::imp(Formula::var(2), Formula::var(1))
            )
        );
    }

    #[test]
    fn parse_parenthesized() {
        assert_eq!(
            p("(a1->a2)->a1", 2),
            Formula::imp(
                Formula::imp(Formula::var(1), Formula::var(2)),
                Formula::var(1)
            )
        );
    }

    #[test]
    fn parse_letter_aliases() {
        assert_eq!(p("b->c", 3), p("a2->a3", 3));
        assert_eq!(p("a->a", 1), p("a1->a1", 1));
        assert_eq!(p("z", 26), Formula::var(26));
    }

    #[test]
    fn parse_whitespace() {
        assert_eq!(p("  a1 ->  ( a2 -> a1 ) ", 2), p("a1->a2->a1", 2));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            parse_formula("a3", 2),
            Err(Error::VarOutOfRange { index: 3, k: 2 })
        ));
        assert!(matches!(parse_formula("a0", 2), Err(Error::Syntax { .. })));
        assert!(matches!(parse_formula("", 1), Err(Error::Syntax { .. })));
        assert!(matches!(parse_formula("a1->", 1), Err(Error::Syntax { .. })));
        assert!(matches!(parse_formula("(a1", 1), Err(Error::Syntax { .. })));
        assert!(matches!(parse_formula("a1 a2", 2), Err(Error::Syntax { .. })));
        // position points at the offending byte
        match parse_formula("a1->?", 1) {
            Err(Error::Syntax { position, .. }) => assert_eq!(position, 4),
            other => panic!("unexpected: {other:?}"),
        }
    }

    #[test]
    fn render_examples() {
        assert_eq!(render_formula(&p("a1->a1", 1)), "a1->a1");
        assert_eq!(render_formula(&p("(a1->a2)->a1", 2)), "(a1->a2)->a1");
        assert_eq!(render_formula(&p("a1->(a2->a1)", 2)), "a1->a2->a1");
    }

    #[test]
    fn size_counts_leaves() {
        assert_eq!(Formula::var(1).size(), 1);
        assert_eq!(p("a1->a1", 1).size(), 2);
        assert_eq!(p("(a1->a2)->a1", 2).size(), 3);
    }

    #[test]
    fn decompose_examples() {
        let d = decompose(&Formula::var(2));
        assert_eq!(d, Decomposition { premises: vec![], goal: 2 });

        let d = decompose(&p("a1->a2->a1", 2));
        assert_eq!(d.premises, vec![Formula::var(1), Formula::var(2)]);
        assert_eq!(d.goal, 1);

        let d = decompose(&p("(a1->a1)->a1", 1));
        assert_eq!(d.premises, vec![p("a1->a1", 1)]);
        assert_eq!(d.goal, 1);
    }

    #[test]
    fn decompose_reassemble_roundtrip() {
        for n in 1..=6 {
            for f in enumerate_formulas(2, n, None).unwrap() {
                assert_eq!(reassemble(&decompose(&f)), f);
            }
        }
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_formulas(1, 2, None).unwrap().count(), 1);
        assert_eq!(enumerate_formulas(2, 1, None).unwrap().count(), 2);
        assert_eq!(enumerate_formulas(2, 3, None).unwrap().count(), 16);
        assert_eq!(enumerate_formulas(1, 4, None).unwrap().count(), 5);
    }

    #[test]
    fn enumeration_unique_and_deterministic() {
        let a: Vec<_> = enumerate_formulas(2, 5, None).unwrap().collect();
        let b: Vec<_> = enumerate_formulas(2, 5, None).unwrap().collect();
        assert_eq!(a, b);
        let mut dedup = a.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), a.len());
    }

    #[test]
    fn enumeration_order_golden() {
        let first: Vec<String> = enumerate_formulas(2, 3, None)
            .unwrap()
            .take(6)
            .map(|f| render_formula(&f))
            .collect();
        assert_eq!(
            first,
            vec![
                "a1->a1->a1",
                "a1->a1->a2",
                "a1->a2->a1",
                "a1->a2->a2",
                "a2->a1->a1",
                "a2->a1->a2",
            ]
        );
    }

    #[test]
    fn enumeration_cap() {
        assert!(matches!(
            enumerate_formulas(1, 21, None),
            Err(Error::CapExceeded { .. })
        ));
        assert!(enumerate_formulas(1, 21, Some(25)).is_ok());
    }

    #[test]
    fn parse_render_roundtrip_exhaustive() {
        for n in 1..=8 {
            for f in enumerate_formulas(2, n, None).unwrap() {
                assert_eq!(parse_formula(&render_formula(&f), 2).unwrap(), f);
            }
        }
    }
}
