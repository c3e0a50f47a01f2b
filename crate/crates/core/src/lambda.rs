//! Lambda terms in nameless (binder-index) form.
//!
//! Indices are 1-based: `BVar(1)` refers to the innermost enclosing binder,
//! so alpha-equivalence is structural equality. Size counts every node of
//! the term tree: variables and binders weigh 1, applications add 1 to the
//! sizes of both sides.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::formula::Formula;

/// Default bound for closed-term enumeration; the counts grow fast enough
/// that streaming much beyond this is futile.
pub const DEFAULT_TERM_CAP: u32 = 14;

/// Default step budget for [`beta_normalize`].
pub const DEFAULT_FUEL: u32 = 10_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    /// A bound variable counting enclosing binders, starting at 1.
    BVar(u32),
    Lam(Box<Term>),
    App(Box<Term>, Box<Term>),
}

impl Term {
    pub fn lam(body: Term) -> Self {
        Term::Lam(Box::new(body))
    }

    pub fn app(fun: Term, arg: Term) -> Self {
        Term::App(Box::new(fun), Box::new(arg))
    }

    pub fn size(&self) -> u32 {
        match self {
            Term::BVar(_) => 1,
            Term::Lam(b) => 1 + b.size(),
            Term::App(f, a) => 1 + f.size() + a.size(),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_term(self))
    }
}

/// Node count of the term tree.
pub fn term_size(t: &Term) -> u32 {
    t.size()
}

fn open_under(t: &Term, depth: u32) -> bool {
    match t {
        Term::BVar(i) => *i > depth,
        Term::Lam(b) => open_under(b, depth + 1),
        Term::App(f, a) => open_under(f, depth) || open_under(a, depth),
    }
}

/// True iff every variable index points at an enclosing binder.
pub fn is_closed(t: &Term) -> bool {
    !open_under(t, 0)
}

fn occurrences(t: &Term, depth: u32) -> u32 {
    match t {
        Term::BVar(i) => u32::from(*i == depth),
        Term::Lam(b) => occurrences(b, depth + 1),
        Term::App(f, a) => occurrences(f, depth) + occurrences(a, depth),
    }
}

fn binders_within(t: &Term, lo: u32, hi: u32) -> bool {
    match t {
        Term::BVar(_) => true,
        Term::Lam(b) => {
            let uses = occurrences(b, 1);
            uses >= lo && uses <= hi && binders_within(b, lo, hi)
        }
        Term::App(f, a) => binders_within(f, lo, hi) && binders_within(a, lo, hi),
    }
}

/// Closed and every binder binds exactly one occurrence (linear terms).
pub fn is_bci_term(t: &Term) -> bool {
    is_closed(t) && binders_within(t, 1, 1)
}

/// Closed and every binder binds at most one occurrence (affine terms).
pub fn is_bck_term(t: &Term) -> bool {
    is_closed(t) && binders_within(t, 0, 1)
}

/// Stream every closed term of size `n` exactly once, in the canonical
/// order: binders before applications, application split sizes ascending,
/// recursion left-to-right, variable indices ascending.
pub fn enumerate_closed_terms(
    n: u32,
    cap: Option<u32>,
) -> Result<Box<dyn Iterator<Item = Term> + Send>> {
    let cap = cap.unwrap_or(DEFAULT_TERM_CAP);
    if n > cap {
        return Err(Error::CapExceeded {
            what: "term size",
            requested: u64::from(n),
            cap: u64::from(cap),
        });
    }
    Ok(terms_rec(n, 0))
}

/// Terms of size `n` whose free indices stay within `m` extra binders.
fn terms_rec(n: u32, m: u32) -> Box<dyn Iterator<Item = Term> + Send> {
    if n == 0 {
        return Box::new(std::iter::empty());
    }
    if n == 1 {
        return Box::new((1..=m).map(Term::BVar));
    }
    let lams = terms_rec(n - 1, m + 1).map(Term::lam);
    let apps = (1..n - 1).flat_map(move |i| {
        terms_rec(i, m).flat_map(move |f| {
            terms_rec(n - 1 - i, m).map(move |a| Term::app(f.clone(), a))
        })
    });
    Box::new(lams.chain(apps))
}

fn shift(t: &Term, d: i64, cutoff: u32) -> Term {
    match t {
        Term::BVar(i) => {
            if *i >= cutoff {
                Term::BVar((i64::from(*i) + d) as u32)
            } else {
                Term::BVar(*i)
            }
        }
        Term::Lam(b) => Term::lam(shift(b, d, cutoff + 1)),
        Term::App(f, a) => Term::app(shift(f, d, cutoff), shift(a, d, cutoff)),
    }
}

fn subst(t: &Term, j: u32, s: &Term) -> Term {
    match t {
        Term::BVar(i) => {
            if *i == j {
                s.clone()
            } else {
                Term::BVar(*i)
            }
        }
        Term::Lam(b) => Term::lam(subst(b, j + 1, &shift(s, 1, 1))),
        Term::App(f, a) => Term::app(subst(f, j, s), subst(a, j, s)),
    }
}

fn beta_contract(body: &Term, arg: &Term) -> Term {
    shift(&subst(body, 1, &shift(arg, 1, 1)), -1, 2)
}

/// One leftmost-outermost reduction step, if any redex exists.
fn reduce_step(t: &Term) -> Option<Term> {
    match t {
        Term::BVar(_) => None,
        Term::App(f, a) => {
            if let Term::Lam(body) = &**f {
                return Some(beta_contract(body, a));
            }
            if let Some(f2) = reduce_step(f) {
                return Some(Term::app(f2, (**a).clone()));
            }
            reduce_step(a).map(|a2| Term::app((**f).clone(), a2))
        }
        Term::Lam(b) => reduce_step(b).map(Term::lam),
    }
}

/// Leftmost-outermost reduction for at most `fuel` steps. Returns the
/// normal form if it is reached within the budget, `None` otherwise.
pub fn beta_normalize(t: &Term, fuel: u32) -> Option<Term> {
    let mut cur = t.clone();
    for _ in 0..=fuel {
        match reduce_step(&cur) {
            Some(next) => cur = next,
            None => return Some(cur),
        }
    }
    None
}

/// Simple types: variables and arrows.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TypeExpr {
    TVar(u32),
    Arrow(Box<TypeExpr>, Box<TypeExpr>),
}

impl TypeExpr {
    pub fn arrow(l: TypeExpr, r: TypeExpr) -> Self {
        TypeExpr::Arrow(Box::new(l), Box::new(r))
    }
}

impl fmt::Display for TypeExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_type(self))
    }
}

/// Render with the same arrow conventions as formulas; type variables print
/// as `a1, a2, ...`.
pub fn render_type(ty: &TypeExpr) -> String {
    fn go(ty: &TypeExpr, out: &mut String) {
        match ty {
            TypeExpr::TVar(v) => {
                out.push('a');
                out.push_str(&v.to_string());
            }
            TypeExpr::Arrow(l, r) => {
                if matches!(**l, TypeExpr::Arrow(..)) {
                    out.push('(');
                    go(l, out);
                    out.push(')');
                } else {
                    go(l, out);
                }
                out.push_str("->");
                go(r, out);
            }
        }
    }
    let mut s = String::new();
    go(ty, &mut s);
    s
}

/// Instantiate every type variable through `assign` and read the result as
/// a formula.
pub fn type_to_formula(ty: &TypeExpr, assign: &impl Fn(u32) -> u32) -> Formula {
    match ty {
        TypeExpr::TVar(v) => Formula::Var(assign(*v)),
        TypeExpr::Arrow(l, r) => {
            Formula::imp(type_to_formula(l, assign), type_to_formula(r, assign))
        }
    }
}

struct Infer {
    bindings: HashMap<u32, TypeExpr>,
    next: u32,
}

impl Infer {
    fn fresh(&mut self) -> TypeExpr {
        self.next += 1;
        TypeExpr::TVar(self.next)
    }

    /// Chase top-level variable bindings.
    fn prune(&self, ty: &TypeExpr) -> TypeExpr {
        let mut cur = ty.clone();
        while let TypeExpr::TVar(v) = cur {
            match self.bindings.get(&v) {
                Some(t) => cur = t.clone(),
                None => return TypeExpr::TVar(v),
            }
        }
        cur
    }

    fn occurs(&self, v: u32, ty: &TypeExpr) -> bool {
        match self.prune(ty) {
            TypeExpr::TVar(w) => w == v,
            TypeExpr::Arrow(l, r) => self.occurs(v, &l) || self.occurs(v, &r),
        }
    }

    fn unify(&mut self, a: &TypeExpr, b: &TypeExpr) -> bool {
        let a = self.prune(a);
        let b = self.prune(b);
        match (&a, &b) {
            (TypeExpr::TVar(x), TypeExpr::TVar(y)) if x == y => true,
            (TypeExpr::TVar(x), _) => {
                if self.occurs(*x, &b) {
                    false
                } else {
                    self.bindings.insert(*x, b);
                    true
                }
            }
            (_, TypeExpr::TVar(_)) => self.unify(&b, &a),
            (TypeExpr::Arrow(l1, r1), TypeExpr::Arrow(l2, r2)) => {
                self.unify(l1, l2) && self.unify(r1, r2)
            }
        }
    }

    fn resolve(&self, ty: &TypeExpr) -> TypeExpr {
        match self.prune(ty) {
            TypeExpr::TVar(v) => TypeExpr::TVar(v),
            TypeExpr::Arrow(l, r) => TypeExpr::arrow(self.resolve(&l), self.resolve(&r)),
        }
    }

    fn infer(&mut self, t: &Term, env: &mut Vec<TypeExpr>) -> Option<TypeExpr> {
        match t {
            Term::BVar(i) => {
                let idx = env.len().checked_sub(*i as usize)?;
                Some(env[idx].clone())
            }
            Term::Lam(b) => {
                let alpha = self.fresh();
                env.push(alpha.clone());
                let body = self.infer(b, env);
                env.pop();
                Some(TypeExpr::arrow(alpha, body?))
            }
            Term::App(f, a) => {
                let tf = self.infer(f, env)?;
                let ta = self.infer(a, env)?;
                let beta = self.fresh();
                if self.unify(&tf, &TypeExpr::arrow(ta, beta.clone())) {
                    Some(beta)
                } else {
                    None
                }
            }
        }
    }
}

/// Renumber type variables by first occurrence, left to right.
fn canonicalize(ty: &TypeExpr) -> TypeExpr {
    fn go(ty: &TypeExpr, map: &mut HashMap<u32, u32>) -> TypeExpr {
        match ty {
            TypeExpr::TVar(v) => {
                let next = map.len() as u32 + 1;
                TypeExpr::TVar(*map.entry(*v).or_insert(next))
            }
            TypeExpr::Arrow(l, r) => {
                let l = go(l, map);
                let r = go(r, map);
                TypeExpr::arrow(l, r)
            }
        }
    }
    go(ty, &mut HashMap::new())
}

/// Principal simple type of a term (unification-based inference), with type
/// variables numbered by first occurrence. `None` when the term is open or
/// untypable.
pub fn principal_type(t: &Term) -> Option<TypeExpr> {
    if !is_closed(t) {
        return None;
    }
    let mut inf = Infer {
        bindings: HashMap::new(),
        next: 0,
    };
    let ty = inf.infer(t, &mut Vec::new())?;
    Some(canonicalize(&inf.resolve(&ty)))
}

/// Concrete term syntax: `\.` introduces a binder, `#i` is a variable,
/// application is juxtaposition wrapped in parentheses.
pub fn render_term(t: &Term) -> String {
    fn go(t: &Term, out: &mut String) {
        match t {
            Term::BVar(i) => {
                out.push('#');
                out.push_str(&i.to_string());
            }
            Term::Lam(b) => {
                out.push_str("\\.");
                go(b, out);
            }
            Term::App(f, a) => {
                out.push('(');
                go(f, out);
                out.push(' ');
                go(a, out);
                out.push(')');
            }
        }
    }
    let mut s = String::new();
    go(t, &mut s);
    s
}

/// Parse the syntax produced by [`render_term`].
pub fn parse_term(text: &str) -> Result<Term> {
    struct P<'a> {
        b: &'a [u8],
        pos: usize,
    }
    impl<'a> P<'a> {
        fn err(&self, message: &str) -> Error {
            Error::Syntax {
                position: self.pos,
                message: message.to_string(),
            }
        }
        fn skip_ws(&mut self) {
            while self.pos < self.b.len() && self.b[self.pos].is_ascii_whitespace() {
                self.pos += 1;
            }
        }
        fn term(&mut self) -> Result<Term> {
            self.skip_ws();
            match self.b.get(self.pos) {
                Some(b'\\') => {
                    self.pos += 1;
                    if self.b.get(self.pos) != Some(&b'.') {
                        return Err(self.err("expected '.' after '\\'"));
                    }
                    self.pos += 1;
                    Ok(Term::lam(self.term()?))
                }
                Some(b'#') => {
                    self.pos += 1;
                    let start = self.pos;
                    while self.b.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
                        self.pos += 1;
                    }
                    if start == self.pos {
                        return Err(self.err("expected index after '#'"));
                    }
                    let i: u32 = std::str::from_utf8(&self.b[start..self.pos])
                        .unwrap()
                        .parse()
                        .map_err(|_| self.err("index out of range"))?;
                    if i == 0 {
                        return Err(self.err("indices start at 1"));
                    }
                    Ok(Term::BVar(i))
                }
                Some(b'(') => {
                    self.pos += 1;
                    let f = self.term()?;
                    let a = self.term()?;
                    self.skip_ws();
                    if self.b.get(self.pos) != Some(&b')') {
                        return Err(self.err("expected ')'"));
                    }
                    self.pos += 1;
                    Ok(Term::app(f, a))
                }
                _ => Err(self.err("expected '\\.', '#' or '('")),
            }
        }
    }
    let mut p = P {
        b: text.as_bytes(),
        pos: 0,
    };
    let t = p.term()?;
    p.skip_ws();
    if p.pos != p.b.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(t)
}
