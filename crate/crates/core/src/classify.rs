//! Class membership of formulas: classical tautologies, simple tautologies,
//! simple and less simple non-tautologies, even formulas, and exhaustive
//! size-class censuses.

use std::fmt;

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::formula::{enumerate_formulas, Formula};
use crate::prover::{Logic, Prover};

/// Truth tables enumerate all `2^k` valuations, so `k` stays small.
pub const MAX_TRUTH_TABLE_VARS: u32 = 20;

/// A total `{0,1}` assignment to the variables `a1..ak`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Valuation {
    bits: u32,
    k: u32,
}

impl Valuation {
    /// Valuation from a bitmask; bit `i-1` is the value of `a_i`.
    pub fn from_bits(bits: u32, k: u32) -> Self {
        assert!(k <= 32);
        Valuation { bits, k }
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn get(&self, var: u32) -> bool {
        debug_assert!(var >= 1 && var <= self.k);
        self.bits >> (var - 1) & 1 == 1
    }

    pub fn set(&mut self, var: u32, value: bool) {
        debug_assert!(var >= 1 && var <= self.k);
        if value {
            self.bits |= 1 << (var - 1);
        } else {
            self.bits &= !(1 << (var - 1));
        }
    }

    /// Evaluate a formula under this valuation with the standard semantics
    /// of implication.
    pub fn eval(&self, f: &Formula) -> bool {
        match f {
            Formula::Var(v) => self.get(*v),
            Formula::Imp(l, r) => !self.eval(l) || self.eval(r),
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in 1..=self.k {
            if v > 1 {
                f.write_str(" ")?;
            }
            write!(f, "a{}={}", v, u8::from(self.get(v)))?;
        }
        Ok(())
    }
}

/// True iff the formula holds under all `2^k` valuations.
pub fn is_classical_tautology(f: &Formula, k: u32) -> Result<bool> {
    if k > MAX_TRUTH_TABLE_VARS {
        return Err(Error::TruthTableBudget {
            k,
            max: MAX_TRUTH_TABLE_VARS,
        });
    }
    if f.max_var() > k {
        return Err(Error::VarOutOfRange {
            index: f.max_var(),
            k,
        });
    }
    for bits in 0..(1u64 << k) {
        if !Valuation::from_bits(bits as u32, k).eval(f) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A simple tautology has at least one premise identical to its goal
/// variable.
pub fn is_simple_tautology(f: &Formula) -> bool {
    let goal = f.goal();
    f.premises().any(|p| *p == Formula::Var(goal))
}

/// A simple non-tautology has at least one premise and every premise goal
/// differs from the formula goal. Falsified by goal = 0, everything else = 1.
pub fn is_simple_nontautology(f: &Formula) -> bool {
    let goal = f.goal();
    let mut any = false;
    for p in f.premises() {
        if p.goal() == goal {
            return false;
        }
        any = true;
    }
    any
}

/// Detect the less-simple non-tautology pattern. The formula must admit a
/// premise `C = C_1, ..., C_q -> r(C)` with `r(C) = r(T)` and `q >= 1` whose
/// first inner premise `C_1 = D_1, ..., D_r -> r(C_1)` has `r(C_1) != r(T)`,
/// while the goals of all other premises `B_j` and of all `D_j` avoid both
/// `r(T)` and `r(C_1)`. The first admissible premise position wins.
///
/// On success returns the canonical falsifying valuation: `r(T)` and
/// `r(C_1)` map to 0, every other variable to 1.
pub fn is_less_simple_nontautology(f: &Formula, k: u32) -> Option<Valuation> {
    let rt = f.goal();
    let premises: Vec<&Formula> = f.premises().collect();
    for (i, c) in premises.iter().enumerate() {
        let Formula::Imp(c1, _) = c else { continue };
        if c.goal() != rt {
            continue;
        }
        let rc1 = c1.goal();
        if rc1 == rt {
            continue;
        }
        let others_ok = premises
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .all(|(_, b)| {
                let rb = b.goal();
                rb != rt && rb != rc1
            });
        let inner_ok = c1.premises().all(|d| {
            let rd = d.goal();
            rd != rt && rd != rc1
        });
        if others_ok && inner_ok {
            let mut val = Valuation::from_bits(if k >= 32 { u32::MAX } else { (1 << k) - 1 }, k);
            val.set(rt, false);
            val.set(rc1, false);
            return Some(val);
        }
    }
    None
}

/// True iff every variable in `1..=k` occurs an even number of times
/// (zero occurrences count as even).
pub fn is_even(f: &Formula, k: u32) -> bool {
    fn parity(f: &Formula, mask: &mut u32) {
        match f {
            Formula::Var(v) => *mask ^= 1 << (v - 1),
            Formula::Imp(l, r) => {
                parity(l, mask);
                parity(r, mask);
            }
        }
    }
    debug_assert!(k <= 32 && f.max_var() <= k);
    let mut mask = 0u32;
    parity(f, &mut mask);
    mask == 0
}

/// Class membership labels. A formula carries a set of these; the set
/// respects the inclusion lattice (G ⊆ BCK ⊆ INT ⊆ CL, BCI ⊆ EVEN ∩ BCK,
/// SN and LN disjoint and outside CL).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassLabel {
    Cl,
    Int,
    Peirce,
    Bck,
    Bci,
    G,
    Even,
    Sn,
    Ln,
    /// Falsifiable but matching neither non-tautology pattern.
    OtherNontaut,
}

/// The full label set of one formula. Prover-backed labels (INT, BCK, BCI,
/// PEIRCE) are only decided when a prover is supplied; without one they are
/// left out rather than guessed.
pub fn class_labels(
    f: &Formula,
    k: u32,
    prover: Option<&Prover>,
) -> Result<Vec<ClassLabel>> {
    let mut labels = Vec::new();
    let cl = is_classical_tautology(f, k)?;
    if cl {
        labels.push(ClassLabel::Cl);
    }
    if is_simple_tautology(f) {
        labels.push(ClassLabel::G);
    }
    if is_even(f, k) {
        labels.push(ClassLabel::Even);
    }
    let sn = is_simple_nontautology(f);
    if sn {
        labels.push(ClassLabel::Sn);
    }
    let ln = is_less_simple_nontautology(f, k).is_some();
    if ln {
        labels.push(ClassLabel::Ln);
    }
    if !cl && !sn && !ln {
        labels.push(ClassLabel::OtherNontaut);
    }
    if let Some(p) = prover {
        if p.prove(Logic::Int, f)?.provable {
            labels.push(ClassLabel::Int);
            if p.prove(Logic::Bck, f)?.provable {
                labels.push(ClassLabel::Bck);
                if p.prove(Logic::Bci, f)?.provable {
                    labels.push(ClassLabel::Bci);
                }
            }
        } else if cl {
            labels.push(ClassLabel::Peirce);
        }
    }
    labels.sort();
    Ok(labels)
}

/// Exact counts of every class over all formulas of one size.
///
/// Prover-backed columns are `None` when the census ran without provers;
/// they serialize as empty CSV fields, never as zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusRow {
    pub k: u32,
    pub n: u32,
    pub total: BigUint,
    pub g: BigUint,
    pub sn: BigUint,
    pub ln: BigUint,
    pub even: BigUint,
    pub cl: BigUint,
    pub int: Option<BigUint>,
    pub bck: Option<BigUint>,
    pub bci: Option<BigUint>,
    pub peirce: Option<BigUint>,
}

impl CensusRow {
    pub const CSV_HEADER: &'static str = "k,n,total,G,SN,LN,EVEN,CL,INT,BCK,BCI,PEIRCE";

    pub fn csv_line(&self) -> String {
        let opt = |v: &Option<BigUint>| v.as_ref().map(BigUint::to_string).unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            self.k,
            self.n,
            self.total,
            self.g,
            self.sn,
            self.ln,
            self.even,
            self.cl,
            opt(&self.int),
            opt(&self.bck),
            opt(&self.bci),
            opt(&self.peirce),
        )
    }
}

#[derive(Default, Clone, Copy)]
struct RawCounts {
    total: u64,
    g: u64,
    sn: u64,
    ln: u64,
    even: u64,
    cl: u64,
    int: u64,
    bck: u64,
    bci: u64,
    peirce: u64,
}

impl RawCounts {
    fn merge(mut self, o: RawCounts) -> RawCounts {
        self.total += o.total;
        self.g += o.g;
        self.sn += o.sn;
        self.ln += o.ln;
        self.even += o.even;
        self.cl += o.cl;
        self.int += o.int;
        self.bck += o.bck;
        self.bci += o.bci;
        self.peirce += o.peirce;
        self
    }
}

/// Classify every formula of size `n` over `k` variables by walking the
/// enumeration stream and applying each predicate. With a prover, the
/// INT/BCK/BCI columns are decided by proof search and PEIRCE is CL minus
/// INT.
pub fn census(k: u32, n: u32, prover: Option<&Prover>) -> Result<CensusRow> {
    if k > MAX_TRUTH_TABLE_VARS {
        return Err(Error::TruthTableBudget {
            k,
            max: MAX_TRUTH_TABLE_VARS,
        });
    }
    if prover.is_some() && (k > 2 || n > 12) {
        return Err(Error::Invalid {
            what: "census with provers",
            detail: format!("k={k}, n={n}; proof search is bounded to k<=2, n<=12"),
        });
    }

    let classify_one = |f: &Formula| -> Result<RawCounts> {
        let mut c = RawCounts {
            total: 1,
            ..RawCounts::default()
        };
        if is_simple_tautology(f) {
            c.g = 1;
        }
        if is_simple_nontautology(f) {
            c.sn = 1;
        }
        if let Some(v) = is_less_simple_nontautology(f, k) {
            c.ln = 1;
            debug_assert!(!v.eval(f));
        }
        if is_even(f, k) {
            c.even = 1;
        }
        let cl = is_classical_tautology(f, k)?;
        if cl {
            c.cl = 1;
        }
        if let Some(p) = prover {
            let int = p.prove(Logic::Int, f)?.provable;
            if int {
                c.int = 1;
                if p.prove(Logic::Bck, f)?.provable {
                    c.bck = 1;
                    if p.prove(Logic::Bci, f)?.provable {
                        c.bci = 1;
                    }
                }
            } else if cl {
                c.peirce = 1;
            }
        }
        Ok(c)
    };

    let raw = if prover.is_some() {
        // proof search dominates, parallelize over the stream
        enumerate_formulas(k, n, Some(n))?
            .par_bridge()
            .map(|f| classify_one(&f))
            .try_reduce(RawCounts::default, |a, b| Ok(a.merge(b)))?
    } else {
        let mut acc = RawCounts::default();
        for f in enumerate_formulas(k, n, Some(n))? {
            acc = acc.merge(classify_one(&f)?);
        }
        acc
    };

    let some = |v: u64| prover.map(|_| BigUint::from(v));
    Ok(CensusRow {
        k,
        n,
        total: BigUint::from(raw.total),
        g: BigUint::from(raw.g),
        sn: BigUint::from(raw.sn),
        ln: BigUint::from(raw.ln),
        even: BigUint::from(raw.even),
        cl: BigUint::from(raw.cl),
        int: some(raw.int),
        bck: some(raw.bck),
        bci: some(raw.bci),
        peirce: some(raw.peirce),
    })
}

/// Counts produced by [`sweep_counts`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SweepCounts {
    pub total: u64,
    pub g: u64,
    pub sn: u64,
    pub even: u64,
}

/// Exhaustively visit every formula of size `n` over `k` variables and count
/// the syntactic classes G, SN and EVEN.
///
/// Semantically identical to running [`census`] without provers and reading
/// the same columns, but formulas are visited as (tree shape, label vector)
/// pairs with the classifier state updated incrementally per label change,
/// which keeps the sweep feasible into the billions of formulas. Agreement
/// with the per-formula predicates is pinned by tests on the overlap range.
pub fn sweep_counts(k: u32, n: u32) -> Result<SweepCounts> {
    if k == 0 || n == 0 || k > 31 || n as usize > SWEEP_MAX_SIZE {
        return Err(Error::Invalid {
            what: "sweep parameters",
            detail: format!("k={k}, n={n}"),
        });
    }
    let shapes = collect_shapes(n);
    let counts = shapes
        .par_iter()
        .map(|s| sweep_shape(s, k))
        .reduce(SweepCounts::default, |a, b| SweepCounts {
            total: a.total + b.total,
            g: a.g + b.g,
            sn: a.sn + b.sn,
            even: a.even + b.even,
        });
    Ok(counts)
}

/// Per-shape metadata: which leaf positions (in left-to-right order) are
/// premises that are bare leaves, and which are the goals of premises. The
/// formula goal is always the last leaf.
struct ShapeInfo {
    n: u32,
    p: u32,
    is_premise_leaf: Vec<bool>,
    is_premise_goal: Vec<bool>,
}

enum Shape {
    Leaf,
    Node(Box<Shape>, Box<Shape>),
}

impl Shape {
    fn leaves(&self) -> u32 {
        match self {
            Shape::Leaf => 1,
            Shape::Node(l, r) => l.leaves() + r.leaves(),
        }
    }
}

fn collect_shapes(n: u32) -> Vec<ShapeInfo> {
    fn gen(n: u32, out: &mut Vec<Shape>) {
        if n == 1 {
            out.push(Shape::Leaf);
            return;
        }
        let mut lefts = Vec::new();
        let mut rights = Vec::new();
        for i in 1..n {
            lefts.clear();
            rights.clear();
            gen(i, &mut lefts);
            gen(n - i, &mut rights);
            for l in &lefts {
                for r in &rights {
                    out.push(Shape::Node(Box::new(clone_shape(l)), Box::new(clone_shape(r))));
                }
            }
        }
    }
    fn clone_shape(s: &Shape) -> Shape {
        match s {
            Shape::Leaf => Shape::Leaf,
            Shape::Node(l, r) => Shape::Node(Box::new(clone_shape(l)), Box::new(clone_shape(r))),
        }
    }
    let mut shapes = Vec::new();
    gen(n, &mut shapes);
    shapes.iter().map(|s| shape_info(s, n)).collect()
}

fn shape_info(shape: &Shape, n: u32) -> ShapeInfo {
    let mut info = ShapeInfo {
        n,
        p: 0,
        is_premise_leaf: vec![false; n as usize],
        is_premise_goal: vec![false; n as usize],
    };
    // walk the right-nested spine; `start` is the leaf offset of the premise
    let mut start = 0u32;
    let mut cur = shape;
    while let Shape::Node(l, r) = cur {
        let sz = l.leaves();
        info.p += 1;
        if sz == 1 {
            info.is_premise_leaf[start as usize] = true;
        }
        // the goal of the premise is its rightmost leaf
        info.is_premise_goal[(start + sz - 1) as usize] = true;
        start += sz;
        cur = r;
    }
    info
}

const SWEEP_MAX_SIZE: usize = 32;

fn sweep_shape(info: &ShapeInfo, k: u32) -> SweepCounts {
    let n = info.n as usize;
    debug_assert!((1..=SWEEP_MAX_SIZE).contains(&n));
    let goal_pos = n - 1;
    let k8 = k as u8;
    let mut out = SweepCounts::default();
    let leaf_premises = info.is_premise_leaf.iter().filter(|&&b| b).count() as u32;

    if k == 1 {
        // one labeling per shape: every leaf is a1, so the goal label
        // matches everything
        out.total = 1;
        out.even = u64::from(n.is_multiple_of(2));
        if info.p > 0 {
            out.g = u64::from(leaf_premises > 0);
        }
        return out;
    }

    // per-position attribute bits: 1 = leaf premise, 2 = premise goal;
    // the goal position itself carries neither
    let mut digits = [0u8; SWEEP_MAX_SIZE];
    let mut attrs = [0u8; SWEEP_MAX_SIZE];
    for (i, slot) in attrs.iter_mut().enumerate().take(n) {
        *slot = u8::from(info.is_premise_leaf[i]) | (u8::from(info.is_premise_goal[i]) << 1);
    }

    // incremental classifier state for the all-zero label vector: bit b of
    // `parity` is the occurrence parity of label b
    let mut parity: u32 = u32::from(n % 2 == 1);
    let mut goal_label = 0u8;
    let mut g_match: u32 = leaf_premises;
    let mut sn_eq: u32 = info.p;
    let has_premises = info.p > 0;

    loop {
        out.total += 1;
        out.even += u64::from(parity == 0);
        if has_premises {
            out.g += u64::from(g_match > 0);
            out.sn += u64::from(sn_eq == 0);
        }

        // odometer increment, least significant digit first
        let mut pos = 0usize;
        loop {
            if pos == n {
                return out;
            }
            let old = digits[pos];
            let new = if old + 1 == k8 { 0 } else { old + 1 };
            digits[pos] = new;
            parity ^= (1u32 << old) ^ (1u32 << new);
            if pos == goal_pos {
                goal_label = new;
                g_match = 0;
                sn_eq = 0;
                for i in 0..n {
                    if digits[i] == goal_label {
                        g_match += u32::from(attrs[i] & 1);
                        sn_eq += u32::from(attrs[i] >> 1);
                    }
                }
            } else {
                let a = attrs[pos];
                if a != 0 {
                    if a & 1 != 0 {
                        g_match += u32::from(new == goal_label);
                        g_match -= u32::from(old == goal_label);
                    }
                    if a & 2 != 0 {
                        sn_eq += u32::from(new == goal_label);
                        sn_eq -= u32::from(old == goal_label);
                    }
                }
            }
            if new != 0 {
                break;
            }
            pos += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_formula;

    fn p(s: &str, k: u32) -> Formula {
        parse_formula(s, k).unwrap()
    }

    #[test]
    fn classical_tautology_examples() {
        assert!(is_classical_tautology(&p("a1->a1", 1), 1).unwrap());
        // the Peirce formula, via its 4-row truth table
        assert!(is_classical_tautology(&p("((a1->a2)->a1)->a1", 2), 2).unwrap());
        assert!(!is_classical_tautology(&p("(a1->a1)->a1", 1), 1).unwrap());
    }

    #[test]
    fn truth_table_budget() {
        assert!(matches!(
            is_classical_tautology(&p("a1", 1), 21),
            Err(Error::TruthTableBudget { .. })
        ));
    }

    #[test]
    fn simple_tautology_examples() {
        assert!(is_simple_tautology(&p("a1->a1", 1)));
        // second premise equals the goal after decomposition
        assert!(is_simple_tautology(&p("(a1->a1)->a1->a1", 1)));
        // sole premise is not a bare variable
        assert!(!is_simple_tautology(&p("(a1->a1)->a1", 1)));
    }

    #[test]
    fn simple_nontautology_examples() {
        assert!(is_simple_nontautology(&p("a1->a2", 2)));
        assert!(!is_simple_nontautology(&p("(a2->a1)->a1", 2)));
        // with one variable the condition is unsatisfiable
        for n in 1..=8 {
            for f in enumerate_formulas(1, n, None).unwrap() {
                assert!(!is_simple_nontautology(&f));
            }
        }
    }

    #[test]
    fn less_simple_nontautology_examples() {
        // the canonical valuation sends r(T) and r(C_1) to 0
        let f = p("(a2->a1)->a1", 2);
        let v = is_less_simple_nontautology(&f, 2).expect("LN member");
        assert!(!v.get(1));
        assert!(!v.get(2));
        assert!(!v.eval(&f), "returned valuation must falsify");

        assert!(is_less_simple_nontautology(&p("a1->a1", 1), 1).is_none());
        // C_1 = a1 has r(C_1) = r(T)
        assert!(is_less_simple_nontautology(&p("(a1->a1)->a1", 1), 1).is_none());
    }

    #[test]
    fn even_examples() {
        assert!(is_even(&p("a1->a1", 1), 1));
        assert!(is_even(&p("a1->(a2->a2)->a1", 2), 2));
        for n in [1u32, 3, 5, 7] {
            for f in enumerate_formulas(2, n, None).unwrap() {
                assert!(!is_even(&f, 2), "odd size cannot be even: {f}");
            }
        }
    }

    #[test]
    fn census_small_rows() {
        let r = census(1, 2, None).unwrap();
        assert_eq!(r.total, 1u32.into());
        assert_eq!(r.g, 1u32.into());
        assert_eq!(r.cl, 1u32.into());
        assert_eq!(r.even, 1u32.into());
        assert_eq!(r.sn, 0u32.into());
        assert_eq!(r.ln, 0u32.into());
        assert!(r.int.is_none() && r.bci.is_none());

        let prover = Prover::new();
        let r = census(1, 3, Some(&prover)).unwrap();
        assert_eq!(r.total, 2u32.into());
        assert_eq!(r.g, 1u32.into());
        assert_eq!(r.cl, 1u32.into());
        assert_eq!(r.even, 0u32.into());
        assert_eq!(r.bci, Some(0u32.into()));

        let r = census(1, 4, None).unwrap();
        assert_eq!(r.total, 5u32.into());
        assert_eq!(r.g, 3u32.into());
    }

    #[test]
    fn census_csv_prover_columns_empty_without_provers() {
        let r = census(1, 2, None).unwrap();
        assert_eq!(r.csv_line(), "1,2,1,1,0,0,1,1,,,,");
    }

    #[test]
    fn sweep_matches_census() {
        for k in 1..=2 {
            for n in 1..=8 {
                let row = census(k, n, None).unwrap();
                let sweep = sweep_counts(k, n).unwrap();
                assert_eq!(BigUint::from(sweep.total), row.total, "k={k} n={n}");
                assert_eq!(BigUint::from(sweep.g), row.g, "k={k} n={n}");
                assert_eq!(BigUint::from(sweep.sn), row.sn, "k={k} n={n}");
                assert_eq!(BigUint::from(sweep.even), row.even, "k={k} n={n}");
            }
        }
        for n in 1..=6 {
            let row = census(3, n, None).unwrap();
            let sweep = sweep_counts(3, n).unwrap();
            assert_eq!(BigUint::from(sweep.total), row.total, "k=3 n={n}");
            assert_eq!(BigUint::from(sweep.g), row.g, "k=3 n={n}");
            assert_eq!(BigUint::from(sweep.sn), row.sn, "k=3 n={n}");
            assert_eq!(BigUint::from(sweep.even), row.even, "k=3 n={n}");
        }
    }

    #[test]
    fn label_sets_respect_the_lattice() {
        let prover = Prover::new();
        for n in 1..=7 {
            for f in enumerate_formulas(2, n, None).unwrap() {
                let labels = class_labels(&f, 2, Some(&prover)).unwrap();
                let has = |l: ClassLabel| labels.contains(&l);
                assert!(!has(ClassLabel::G) || has(ClassLabel::Bck));
                assert!(!has(ClassLabel::Bci) || has(ClassLabel::Bck));
                assert!(!has(ClassLabel::Bci) || has(ClassLabel::Even));
                assert!(!has(ClassLabel::Bck) || has(ClassLabel::Int));
                assert!(!has(ClassLabel::Int) || has(ClassLabel::Cl));
                assert!(!(has(ClassLabel::Sn) && has(ClassLabel::Ln)));
                assert!(!has(ClassLabel::Sn) && !has(ClassLabel::Ln) || !has(ClassLabel::Cl));
                assert_eq!(
                    has(ClassLabel::Peirce),
                    has(ClassLabel::Cl) && !has(ClassLabel::Int)
                );
                assert_eq!(
                    has(ClassLabel::OtherNontaut),
                    !has(ClassLabel::Cl) && !has(ClassLabel::Sn) && !has(ClassLabel::Ln)
                );
            }
        }
        // without a prover the INT/BCK/BCI/PEIRCE labels are absent
        let labels = class_labels(&p("a1->a1", 1), 1, None).unwrap();
        assert_eq!(labels, vec![ClassLabel::Cl, ClassLabel::G, ClassLabel::Even]);
    }

    #[test]
    fn sn_ln_disjoint_and_falsifiable() {
        for k in 1..=2 {
            for n in 1..=8 {
                for f in enumerate_formulas(k, n, None).unwrap() {
                    let sn = is_simple_nontautology(&f);
                    let ln = is_less_simple_nontautology(&f, k);
                    assert!(!(sn && ln.is_some()), "SN and LN overlap on {f}");
                    if sn {
                        let goal = f.goal();
                        let mut v =
                            Valuation::from_bits((1 << k) - 1, k);
                        v.set(goal, false);
                        assert!(!v.eval(&f), "SN valuation must falsify {f}");
                    }
                    if let Some(v) = ln {
                        assert!(!v.eval(&f), "LN valuation must falsify {f}");
                    }
                }
            }
        }
    }

    #[test]
    fn simple_tautologies_are_classical() {
        for k in 1..=2 {
            for n in 1..=8 {
                for f in enumerate_formulas(k, n, None).unwrap() {
                    if is_simple_tautology(&f) {
                        assert!(is_classical_tautology(&f, k).unwrap());
                    }
                }
            }
        }
    }
}
