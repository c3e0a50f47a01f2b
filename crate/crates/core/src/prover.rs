//! Terminating proof search for implicational BCI, BCK and intuitionistic
//! logic, with lambda-term witnesses.
//!
//! Each logic gets a goal-directed sequent calculus:
//!
//! * BCI: right-implication moves the antecedent into the context; the axiom
//!   needs the context to be exactly the goal atom; left-implication on a
//!   context element `A -> B` splits the remaining context into an exact
//!   partition. The total symbol count of the sequent strictly decreases at
//!   every rule, so search terminates and is a decision procedure.
//! * BCK: the same rules with weakening absorbed into the axiom (`Γ, a ⊢ a`
//!   for any `Γ`). Same termination measure.
//! * INT: the contraction-free calculus whose left-implication rule is keyed
//!   on the shape of the antecedent head; terminating under the standard
//!   multiset ordering.
//!
//! Context elements are tried in canonical sorted order and partitions in a
//! fixed odometer order, so the first proof found, and hence the witness, is
//! deterministic.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use dashmap::DashMap;
use parking_lot::RwLock;
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::lambda::{is_bci_term, is_bck_term, is_closed, principal_type, Term, TypeExpr};

/// Default bound on the size of formulas accepted for proof search.
pub const DEFAULT_PROVER_CAP: u32 = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Logic {
    Bci,
    Bck,
    Int,
}

impl Logic {
    pub const ALL: [Logic; 3] = [Logic::Bci, Logic::Bck, Logic::Int];
}

impl fmt::Display for Logic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Logic::Bci => "bci",
            Logic::Bck => "bck",
            Logic::Int => "int",
        })
    }
}

impl FromStr for Logic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Logic> {
        match s {
            "bci" => Ok(Logic::Bci),
            "bck" => Ok(Logic::Bck),
            "int" => Ok(Logic::Int),
            other => Err(Error::Invalid {
                what: "logic",
                detail: format!("{other:?}; expected bci, bck or int"),
            }),
        }
    }
}

/// A multiset of hypotheses and a goal. The context is kept in the canonical
/// formula order so structurally equal sequents compare equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sequent {
    context: Vec<Formula>,
    goal: Formula,
}

impl Sequent {
    pub fn new(mut context: Vec<Formula>, goal: Formula) -> Self {
        context.sort();
        Sequent { context, goal }
    }

    pub fn context(&self) -> &[Formula] {
        &self.context
    }

    pub fn goal(&self) -> &Formula {
        &self.goal
    }

    fn size(&self) -> u64 {
        self.context.iter().map(|f| u64::from(f.size())).sum::<u64>()
            + u64::from(self.goal.size())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes_expanded: u64,
    pub cache_hits: u64,
}

/// Outcome of [`Prover::prove`]. When `provable` holds, `witness` carries a
/// closed lambda term that type-checks against the goal formula and
/// satisfies the structural predicate of the logic.
#[derive(Clone, Debug)]
pub struct ProofResult {
    pub provable: bool,
    pub witness: Option<Term>,
    pub stats: SearchStats,
}

type Id = u32;
type Ctx = SmallVec<[Id; 8]>;
type VarCtx = SmallVec<[(Id, u32); 8]>;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Node {
    Var(u32),
    Imp(Id, Id),
}

/// Hash-consing table: equal formulas share one id, so multiset membership
/// and sequent keys reduce to integer comparisons. New nodes appear during
/// search (the INT left rule builds fresh implications), hence the locks.
struct Interner {
    ids: DashMap<Node, Id>,
    nodes: RwLock<Vec<Node>>,
}

impl Interner {
    fn new() -> Self {
        Interner {
            ids: DashMap::new(),
            nodes: RwLock::new(Vec::new()),
        }
    }

    fn node(&self, id: Id) -> Node {
        self.nodes.read()[id as usize]
    }

    fn intern_node(&self, node: Node) -> Id {
        if let Some(id) = self.ids.get(&node) {
            return *id;
        }
        *self.ids.entry(node).or_insert_with(|| {
            let mut nodes = self.nodes.write();
            nodes.push(node);
            (nodes.len() - 1) as Id
        })
    }

    fn intern(&self, f: &Formula) -> Id {
        match f {
            Formula::Var(v) => self.intern_node(Node::Var(*v)),
            Formula::Imp(l, r) => {
                let l = self.intern(l);
                let r = self.intern(r);
                self.intern_node(Node::Imp(l, r))
            }
        }
    }

    /// Structural order mirroring the derived `Ord` of [`Formula`].
    fn cmp_ids(&self, a: Id, b: Id) -> std::cmp::Ordering {
        use std::cmp::Ordering;
        if a == b {
            return Ordering::Equal;
        }
        match (self.node(a), self.node(b)) {
            (Node::Var(i), Node::Var(j)) => i.cmp(&j),
            (Node::Var(_), Node::Imp(..)) => Ordering::Less,
            (Node::Imp(..), Node::Var(_)) => Ordering::Greater,
            (Node::Imp(l1, r1), Node::Imp(l2, r2)) => {
                self.cmp_ids(l1, l2).then_with(|| self.cmp_ids(r1, r2))
            }
        }
    }

    /// Insert keeping the canonical order; equal ids stay in insertion
    /// order, which keeps witness variable choice deterministic.
    fn insert_sorted(&self, ctx: &[Id], id: Id) -> Ctx {
        let mut out = Ctx::from_slice(ctx);
        let pos = out.partition_point(|&x| self.cmp_ids(x, id) != std::cmp::Ordering::Greater);
        out.insert(pos, id);
        out
    }

    fn insert_sorted_var(&self, ctx: &[(Id, u32)], entry: (Id, u32)) -> VarCtx {
        let mut out = VarCtx::from_slice(ctx);
        let pos =
            out.partition_point(|&(x, _)| self.cmp_ids(x, entry.0) != std::cmp::Ordering::Greater);
        out.insert(pos, entry);
        out
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
struct SeqKey {
    ctx: Ctx,
    goal: Id,
}

/// Witness skeleton over globally unique variable names; converted to
/// nameless form once the proof is complete.
#[derive(Clone)]
enum NamedTerm {
    Var(u32),
    Lam(u32, Box<NamedTerm>),
    App(Box<NamedTerm>, Box<NamedTerm>),
}

impl NamedTerm {
    fn lam(v: u32, body: NamedTerm) -> Self {
        NamedTerm::Lam(v, Box::new(body))
    }

    fn app(f: NamedTerm, a: NamedTerm) -> Self {
        NamedTerm::App(Box::new(f), Box::new(a))
    }
}

fn subst_named(t: &NamedTerm, var: u32, replacement: &NamedTerm) -> NamedTerm {
    match t {
        NamedTerm::Var(v) => {
            if *v == var {
                replacement.clone()
            } else {
                NamedTerm::Var(*v)
            }
        }
        NamedTerm::Lam(v, b) => NamedTerm::lam(*v, subst_named(b, var, replacement)),
        NamedTerm::App(f, a) => {
            NamedTerm::app(subst_named(f, var, replacement), subst_named(a, var, replacement))
        }
    }
}

fn to_debruijn(t: &NamedTerm, stack: &mut Vec<u32>) -> Term {
    match t {
        NamedTerm::Var(v) => {
            let depth = stack
                .iter()
                .rev()
                .position(|&x| x == *v)
                .expect("witness variable bound by an enclosing binder");
            Term::BVar(depth as u32 + 1)
        }
        NamedTerm::Lam(v, b) => {
            stack.push(*v);
            let body = to_debruijn(b, stack);
            stack.pop();
            Term::lam(body)
        }
        NamedTerm::App(f, a) => Term::app(to_debruijn(f, stack), to_debruijn(a, stack)),
    }
}

/// Enumerate all splits of a sorted multiset into an ordered pair of
/// disjoint sub-multisets covering it, in a fixed odometer order. Equal
/// elements are interchangeable, so only their counts vary. Stops early
/// when the callback reports success.
fn for_each_partition<T: Copy>(
    items: &[T],
    same: impl Fn(&T, &T) -> bool,
    mut visit: impl FnMut(&[T], &[T]) -> bool,
) -> bool {
    // group boundaries of runs of equal elements
    let mut groups: SmallVec<[(usize, usize); 8]> = SmallVec::new();
    let mut start = 0;
    for i in 1..=items.len() {
        if i == items.len() || !same(&items[i], &items[start]) {
            groups.push((start, i - start));
            start = i;
        }
    }
    let mut take: SmallVec<[usize; 8]> = SmallVec::from_elem(0, groups.len());
    let mut left: SmallVec<[T; 8]> = SmallVec::new();
    let mut right: SmallVec<[T; 8]> = SmallVec::new();
    loop {
        left.clear();
        right.clear();
        for (g, &(s, len)) in groups.iter().enumerate() {
            left.extend_from_slice(&items[s..s + take[g]]);
            right.extend_from_slice(&items[s + take[g]..s + len]);
        }
        if visit(&left, &right) {
            return true;
        }
        let mut g = 0;
        loop {
            if g == groups.len() {
                return false;
            }
            take[g] += 1;
            if take[g] <= groups[g].1 {
                break;
            }
            take[g] = 0;
            g += 1;
        }
    }
}

/// Proof-search session. Sequent results are memoized per logic in maps
/// that support concurrent readers with atomic insert-if-absent, so one
/// prover may serve many threads; identical inputs always produce identical
/// answers and witnesses.
pub struct Prover {
    interner: Interner,
    caches: [DashMap<SeqKey, bool>; 3],
    cap: u32,
}

impl Default for Prover {
    fn default() -> Self {
        Self::new()
    }
}

impl Prover {
    pub fn new() -> Self {
        Self::with_cap(DEFAULT_PROVER_CAP)
    }

    pub fn with_cap(cap: u32) -> Self {
        Prover {
            interner: Interner::new(),
            caches: [DashMap::new(), DashMap::new(), DashMap::new()],
            cap,
        }
    }

    /// Drop memoized sequents (the formula table is kept). Useful between
    /// large census levels to bound memory.
    pub fn clear_caches(&self) {
        for c in &self.caches {
            c.clear();
        }
    }

    /// Decide `∅ ⊢ f` in the given logic and synthesize a witness on
    /// success. Within the size cap the search is complete, so a negative
    /// answer is definitive.
    pub fn prove(&self, logic: Logic, f: &Formula) -> Result<ProofResult> {
        let size = f.size();
        if size > self.cap {
            return Err(Error::CapExceeded {
                what: "formula size for proof search",
                requested: u64::from(size),
                cap: u64::from(self.cap),
            });
        }
        let id = self.interner.intern(f);
        let mut stats = SearchStats::default();
        let provable = self.decide(logic, &[], id, &mut stats);
        let witness = if provable {
            let mut fresh = 0;
            let named = self.synth(logic, &[], id, &mut fresh, &mut stats);
            Some(to_debruijn(&named, &mut Vec::new()))
        } else {
            None
        };
        Ok(ProofResult {
            provable,
            witness,
            stats,
        })
    }

    /// Decide an arbitrary sequent (no witness).
    pub fn prove_sequent(&self, logic: Logic, sequent: &Sequent) -> Result<bool> {
        if sequent.size() > u64::from(self.cap) {
            return Err(Error::CapExceeded {
                what: "sequent size for proof search",
                requested: sequent.size(),
                cap: u64::from(self.cap),
            });
        }
        let mut ctx = Ctx::new();
        for f in &sequent.context {
            let id = self.interner.intern(f);
            ctx = self.interner.insert_sorted(&ctx, id);
        }
        let goal = self.interner.intern(&sequent.goal);
        let mut stats = SearchStats::default();
        Ok(self.decide(logic, &ctx, goal, &mut stats))
    }

    fn decide(&self, logic: Logic, ctx: &[Id], goal: Id, stats: &mut SearchStats) -> bool {
        let key = SeqKey {
            ctx: Ctx::from_slice(ctx),
            goal,
        };
        let cache = &self.caches[logic as usize];
        if let Some(v) = cache.get(&key) {
            stats.cache_hits += 1;
            return *v;
        }
        stats.nodes_expanded += 1;
        let res = match self.interner.node(goal) {
            Node::Imp(a, b) => {
                let child = self.interner.insert_sorted(ctx, a);
                self.decide(logic, &child, b, stats)
            }
            Node::Var(_) => self.decide_atomic(logic, ctx, goal, stats),
        };
        cache.insert(key, res);
        res
    }

    fn decide_atomic(&self, logic: Logic, ctx: &[Id], goal: Id, stats: &mut SearchStats) -> bool {
        match logic {
            Logic::Bci => {
                if ctx.len() == 1 && ctx[0] == goal {
                    return true;
                }
            }
            Logic::Bck | Logic::Int => {
                if ctx.contains(&goal) {
                    return true;
                }
            }
        }
        for idx in 0..ctx.len() {
            if idx > 0 && ctx[idx] == ctx[idx - 1] {
                continue;
            }
            let Node::Imp(a, b) = self.interner.node(ctx[idx]) else {
                continue;
            };
            let mut rest = Ctx::from_slice(ctx);
            rest.remove(idx);
            let found = match logic {
                Logic::Int => match self.interner.node(a) {
                    Node::Var(_) => {
                        rest.contains(&a) && {
                            let child = self.interner.insert_sorted(&rest, b);
                            self.decide(logic, &child, goal, stats)
                        }
                    }
                    Node::Imp(_, d) => {
                        let db = self.interner.intern_node(Node::Imp(d, b));
                        let first = self.interner.insert_sorted(&rest, db);
                        self.decide(logic, &first, a, stats) && {
                            let second = self.interner.insert_sorted(&rest, b);
                            self.decide(logic, &second, goal, stats)
                        }
                    }
                },
                Logic::Bci | Logic::Bck => for_each_partition(
                    &rest,
                    |x, y| x == y,
                    |left, right| {
                        self.decide(logic, left, a, stats) && {
                            let rctx = self.interner.insert_sorted(right, b);
                            self.decide(logic, &rctx, goal, stats)
                        }
                    },
                ),
            };
            if found {
                return true;
            }
        }
        false
    }

    /// Rebuild the proof found by [`Self::decide`], mapping axioms to
    /// variables, right rules to binders and left rules to applications.
    /// Follows exactly the same choice order, consulting the memoized
    /// decisions to walk only provable branches. Must only be called on
    /// sequents already decided provable.
    fn synth(
        &self,
        logic: Logic,
        ctx: &[(Id, u32)],
        goal: Id,
        fresh: &mut u32,
        stats: &mut SearchStats,
    ) -> NamedTerm {
        match self.interner.node(goal) {
            Node::Imp(a, b) => {
                *fresh += 1;
                let x = *fresh;
                let child = self.interner.insert_sorted_var(ctx, (a, x));
                NamedTerm::lam(x, self.synth(logic, &child, b, fresh, stats))
            }
            Node::Var(_) => self.synth_atomic(logic, ctx, goal, fresh, stats),
        }
    }

    fn synth_atomic(
        &self,
        logic: Logic,
        ctx: &[(Id, u32)],
        goal: Id,
        fresh: &mut u32,
        stats: &mut SearchStats,
    ) -> NamedTerm {
        match logic {
            Logic::Bci => {
                if ctx.len() == 1 && ctx[0].0 == goal {
                    return NamedTerm::Var(ctx[0].1);
                }
            }
            Logic::Bck | Logic::Int => {
                if let Some(&(_, x)) = ctx.iter().find(|&&(id, _)| id == goal) {
                    return NamedTerm::Var(x);
                }
            }
        }
        for idx in 0..ctx.len() {
            if idx > 0 && ctx[idx].0 == ctx[idx - 1].0 {
                continue;
            }
            let (fid, fvar) = ctx[idx];
            let Node::Imp(a, b) = self.interner.node(fid) else {
                continue;
            };
            let mut rest = VarCtx::from_slice(ctx);
            rest.remove(idx);
            let rest_ids: Ctx = rest.iter().map(|&(id, _)| id).collect();
            match logic {
                Logic::Int => match self.interner.node(a) {
                    Node::Var(_) => {
                        if let Some(&(_, xa)) = rest.iter().find(|&&(id, _)| id == a) {
                            let child_ids = self.interner.insert_sorted(&rest_ids, b);
                            if self.decide(logic, &child_ids, goal, stats) {
                                *fresh += 1;
                                let y = *fresh;
                                let child = self.interner.insert_sorted_var(&rest, (b, y));
                                let n = self.synth(logic, &child, goal, fresh, stats);
                                let fb = NamedTerm::app(NamedTerm::Var(fvar), NamedTerm::Var(xa));
                                return subst_named(&n, y, &fb);
                            }
                        }
                    }
                    Node::Imp(_, d) => {
                        let db = self.interner.intern_node(Node::Imp(d, b));
                        let first_ids = self.interner.insert_sorted(&rest_ids, db);
                        let second_ids = self.interner.insert_sorted(&rest_ids, b);
                        if self.decide(logic, &first_ids, a, stats)
                            && self.decide(logic, &second_ids, goal, stats)
                        {
                            *fresh += 1;
                            let h = *fresh;
                            let first = self.interner.insert_sorted_var(&rest, (db, h));
                            let m = self.synth(logic, &first, a, fresh, stats);
                            *fresh += 1;
                            let y = *fresh;
                            let second = self.interner.insert_sorted_var(&rest, (b, y));
                            let n = self.synth(logic, &second, goal, fresh, stats);
                            // the hypothetical D -> B is realized through fvar
                            *fresh += 1;
                            let dv = *fresh;
                            *fresh += 1;
                            let cv = *fresh;
                            let realizer = NamedTerm::lam(
                                dv,
                                NamedTerm::app(
                                    NamedTerm::Var(fvar),
                                    NamedTerm::lam(cv, NamedTerm::Var(dv)),
                                ),
                            );
                            let m = subst_named(&m, h, &realizer);
                            let fm = NamedTerm::app(NamedTerm::Var(fvar), m);
                            return subst_named(&n, y, &fm);
                        }
                    }
                },
                Logic::Bci | Logic::Bck => {
                    let mut witness = None;
                    for_each_partition(
                        &rest,
                        |x, y| x.0 == y.0,
                        |left, right| {
                            let left_ids: Ctx = left.iter().map(|&(id, _)| id).collect();
                            if !self.decide(logic, &left_ids, a, stats) {
                                return false;
                            }
                            let right_ids: Ctx = right.iter().map(|&(id, _)| id).collect();
                            let rctx_ids = self.interner.insert_sorted(&right_ids, b);
                            if !self.decide(logic, &rctx_ids, goal, stats) {
                                return false;
                            }
                            let m = self.synth(logic, left, a, fresh, stats);
                            *fresh += 1;
                            let y = *fresh;
                            let rctx = self.interner.insert_sorted_var(right, (b, y));
                            let n = self.synth(logic, &rctx, goal, fresh, stats);
                            let fm = NamedTerm::app(NamedTerm::Var(fvar), m);
                            witness = Some(subst_named(&n, y, &fm));
                            true
                        },
                    );
                    if let Some(w) = witness {
                        return w;
                    }
                }
            }
        }
        unreachable!("witness synthesis reached an unprovable sequent")
    }
}

/// Check a claimed witness: the term must be closed, satisfy the structural
/// predicate of the logic (binders bind exactly once for BCI, at most once
/// for BCK, unrestricted for INT), and be typable with the formula as its
/// type, reading formula variables as type constants.
pub fn check_witness(t: &Term, f: &Formula, logic: Logic) -> bool {
    if !is_closed(t) {
        return false;
    }
    let structural = match logic {
        Logic::Bci => is_bci_term(t),
        Logic::Bck => is_bck_term(t),
        Logic::Int => true,
    };
    if !structural {
        return false;
    }
    match principal_type(t) {
        Some(pt) => type_matches(&pt, f, &mut HashMap::new()),
        None => false,
    }
}

/// One-way matching: is `f` a substitution instance of `ty`?
fn type_matches(ty: &TypeExpr, f: &Formula, binding: &mut HashMap<u32, Formula>) -> bool {
    match (ty, f) {
        (TypeExpr::TVar(v), _) => match binding.get(v) {
            Some(bound) => bound == f,
            None => {
                binding.insert(*v, f.clone());
                true
            }
        },
        (TypeExpr::Arrow(l, r), Formula::Imp(fl, fr)) => {
            type_matches(l, fl, binding) && type_matches(r, fr, binding)
        }
        (TypeExpr::Arrow(..), Formula::Var(_)) => false,
    }
}
