//! Exact-rational densities: empirical class ratios at finite size, the
//! closed-form limits they approach, convergence reports, and the finite-n
//! sandwich bounds behind the limit statements. Limits are never asserted as
//! computed facts; reports expose the trend and the exact gap.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::classify::{census, CensusRow};
use crate::counting::{
    bci_star_prefix, bck_prefix, count_all_formulas, count_even_formulas, formulas_prefix,
    simple_tautology_prefix,
};
use crate::error::{Error, Result};

/// Census-backed ratios enumerate every formula of the size, so they are
/// refused beyond this many formulas.
const CENSUS_BUDGET: u64 = 20_000_000;

/// A non-negative rational in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ratio {
    num: BigUint,
    den: BigUint,
}

impl Ratio {
    pub fn new(num: BigUint, den: BigUint) -> Self {
        assert!(!den.is_zero(), "denominator must be positive");
        let g = num.gcd(&den);
        Ratio {
            num: &num / &g,
            den: &den / &g,
        }
    }

    pub fn from_u64(num: u64, den: u64) -> Self {
        Ratio::new(BigUint::from(num), BigUint::from(den))
    }

    pub fn zero() -> Self {
        Ratio {
            num: BigUint::zero(),
            den: BigUint::one(),
        }
    }

    pub fn one() -> Self {
        Ratio {
            num: BigUint::one(),
            den: BigUint::one(),
        }
    }

    pub fn numerator(&self) -> &BigUint {
        &self.num
    }

    pub fn denominator(&self) -> &BigUint {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Absolute difference, exactly.
    pub fn gap(&self, other: &Ratio) -> Ratio {
        let lhs = &self.num * &other.den;
        let rhs = &other.num * &self.den;
        let num = if lhs >= rhs { lhs - rhs } else { rhs - lhs };
        Ratio::new(num, &self.den * &other.den)
    }

    /// Decimal rendering rounded half-up to `digits` fractional digits.
    pub fn decimal(&self, digits: u32) -> String {
        let scale = BigUint::from(10u32).pow(digits);
        let scaled = (&self.num * &scale * 2u32 + &self.den) / (&self.den * 2u32);
        let int_part = &scaled / &scale;
        let frac_part = &scaled % &scale;
        format!("{}.{:0>width$}", int_part, frac_part.to_string(), width = digits as usize)
    }
}

impl PartialOrd for Ratio {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ratio {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (&self.num * &other.den).cmp(&(&other.num * &self.den))
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// Formula classes with an empirical finite-n ratio.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EmpiricalClass {
    G,
    Even,
    Sn,
    Ln,
    Cl,
}

impl fmt::Display for EmpiricalClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EmpiricalClass::G => "G",
            EmpiricalClass::Even => "EVEN",
            EmpiricalClass::Sn => "SN",
            EmpiricalClass::Ln => "LN",
            EmpiricalClass::Cl => "CL",
        })
    }
}

impl FromStr for EmpiricalClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<EmpiricalClass> {
        match s.to_ascii_lowercase().as_str() {
            "g" => Ok(EmpiricalClass::G),
            "even" => Ok(EmpiricalClass::Even),
            "sn" => Ok(EmpiricalClass::Sn),
            "ln" => Ok(EmpiricalClass::Ln),
            "cl" => Ok(EmpiricalClass::Cl),
            other => Err(Error::Invalid {
                what: "class",
                detail: format!("{other:?}"),
            }),
        }
    }
}

/// Classes whose limiting density has a closed form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LimitClass {
    G,
    Sn,
    Ln,
    /// The limit superior of the even-formula ratio (the even-size
    /// subsequence; the odd subsequence is identically zero).
    EvenSup,
    Peirce,
}

/// Exact value of the closed-form limiting density:
/// G: `(4k+1)/(2k+1)^2`; SN: `k(k-1)/(k+1)^2`; LN: `2k(k-1)^2/(k+2)^4`;
/// EVEN (limsup): `1/2^(k-1)`; Peirce: `1/(2k^2)`.
pub fn closed_form_density(class: LimitClass, k: u32) -> Ratio {
    assert!(k >= 1);
    let k = u64::from(k);
    match class {
        LimitClass::G => Ratio::from_u64(4 * k + 1, (2 * k + 1) * (2 * k + 1)),
        LimitClass::Sn => Ratio::from_u64(k * (k - 1), (k + 1) * (k + 1)),
        LimitClass::Ln => {
            let d = k + 2;
            Ratio::from_u64(2 * k * (k - 1) * (k - 1), d * d * d * d)
        }
        LimitClass::EvenSup => Ratio::new(BigUint::one(), BigUint::one() << (k - 1) as u32),
        LimitClass::Peirce => Ratio::from_u64(1, 2 * k * k),
    }
}

fn census_count(class: EmpiricalClass, k: u32, n: u32) -> Result<BigUint> {
    let total = count_all_formulas(k, n);
    if total > BigUint::from(CENSUS_BUDGET) {
        return Err(Error::CountUnavailable {
            class: class.to_string(),
            k,
            n,
            reason: format!("exhaustive census needs {total} formulas"),
        });
    }
    let row = census(k, n, None)?;
    Ok(match class {
        EmpiricalClass::Sn => row.sn,
        EmpiricalClass::Ln => row.ln,
        EmpiricalClass::Cl => row.cl,
        EmpiricalClass::G => row.g,
        EmpiricalClass::Even => row.even,
    })
}

/// Exact `#class / #formulas` at one size. G and EVEN come from their
/// recurrence and closed form; SN, LN and CL require an exhaustive census
/// and therefore error beyond the enumeration budget.
pub fn empirical_ratio(class: EmpiricalClass, k: u32, n: u32) -> Result<Ratio> {
    let count = match class {
        EmpiricalClass::G => simple_tautology_prefix(k, n).swap_remove(n as usize),
        EmpiricalClass::Even => count_even_formulas(k, n),
        EmpiricalClass::Sn | EmpiricalClass::Ln | EmpiricalClass::Cl => {
            census_count(class, k, n)?
        }
    };
    Ok(Ratio::new(count, count_all_formulas(k, n)))
}

#[derive(Clone, Debug)]
pub struct ConvergenceRow {
    pub n: u32,
    pub ratio: Ratio,
    pub gap: Ratio,
}

/// Empirical ratios of one class at a schedule of sizes, with the exact gap
/// to the closed-form target and whether the gaps never increased along the
/// schedule.
#[derive(Clone, Debug)]
pub struct ConvergenceReport {
    pub class: EmpiricalClass,
    pub k: u32,
    pub target: Ratio,
    pub rows: Vec<ConvergenceRow>,
    pub gaps_non_increasing: bool,
}

impl ConvergenceReport {
    pub const CSV_HEADER: &'static str =
        "class,k,n,numerator,denominator,target_num,target_den,gap_decimal";

    pub fn csv_lines(&self) -> Vec<String> {
        self.rows
            .iter()
            .map(|row| {
                format!(
                    "{},{},{},{},{},{},{},{}",
                    self.class,
                    self.k,
                    row.n,
                    row.ratio.numerator(),
                    row.ratio.denominator(),
                    self.target.numerator(),
                    self.target.denominator(),
                    row.gap.decimal(12),
                )
            })
            .collect()
    }
}

fn limit_target(class: EmpiricalClass, k: u32) -> Result<Ratio> {
    Ok(match class {
        EmpiricalClass::G => closed_form_density(LimitClass::G, k),
        EmpiricalClass::Even => closed_form_density(LimitClass::EvenSup, k),
        EmpiricalClass::Sn => closed_form_density(LimitClass::Sn, k),
        EmpiricalClass::Ln => closed_form_density(LimitClass::Ln, k),
        EmpiricalClass::Cl => {
            return Err(Error::Invalid {
                what: "convergence class",
                detail: "no closed-form target exists for CL".to_string(),
            })
        }
    })
}

/// Ratios of one class at each requested size against its closed-form
/// target. Recurrence-backed classes share one prefix across the whole
/// schedule, so sizes in the thousands stay cheap.
pub fn convergence_table(class: EmpiricalClass, k: u32, sizes: &[u32]) -> Result<ConvergenceReport> {
    let target = limit_target(class, k)?;
    let max_n = sizes.iter().copied().max().unwrap_or(0);
    let g_prefix = match class {
        EmpiricalClass::G => simple_tautology_prefix(k, max_n),
        _ => Vec::new(),
    };
    let f_prefix = match class {
        EmpiricalClass::G | EmpiricalClass::Even => formulas_prefix(k, max_n),
        _ => Vec::new(),
    };
    let mut rows = Vec::with_capacity(sizes.len());
    let mut gaps_non_increasing = true;
    let mut prev: Option<Ratio> = None;
    for &n in sizes {
        let ratio = match class {
            EmpiricalClass::G => {
                Ratio::new(g_prefix[n as usize].clone(), f_prefix[n as usize].clone())
            }
            EmpiricalClass::Even => {
                Ratio::new(count_even_formulas(k, n), f_prefix[n as usize].clone())
            }
            _ => empirical_ratio(class, k, n)?,
        };
        let gap = ratio.gap(&target);
        if let Some(p) = &prev {
            if gap > *p {
                gaps_non_increasing = false;
            }
        }
        prev = Some(gap.clone());
        rows.push(ConvergenceRow { n, ratio, gap });
    }
    Ok(ConvergenceReport {
        class,
        k,
        target,
        rows,
        gaps_non_increasing,
    })
}

/// Exact ratios `a_{3k+2} / b_{3k+2}` of linear to affine term counts for
/// `k = 0..=k_max`, straight from the recurrence tables.
pub fn term_density_table(k_max: u32) -> Vec<(u32, Ratio)> {
    let a = bci_star_prefix(k_max);
    let b = bck_prefix(3 * k_max + 2);
    (0..=k_max)
        .map(|k| {
            (
                k,
                Ratio::new(a[k as usize].clone(), b[(3 * k + 2) as usize].clone()),
            )
        })
        .collect()
}

/// Finite-n analogue of the sandwich `G/F <= CL/F <= 1 - SN/F - LN/F`,
/// computed from a census row.
pub fn sandwich_bounds_from_census(row: &CensusRow) -> (Ratio, Ratio) {
    let f = row.total.clone();
    let lower = Ratio::new(row.g.clone(), f.clone());
    let upper_num = &f - &row.sn - &row.ln;
    (lower, Ratio::new(upper_num, f))
}

/// Exhaustively census size `n` over `k` variables and return the sandwich
/// bounds; the classical ratio at the same size always lies between them.
pub fn sandwich_bounds(k: u32, n: u32) -> Result<(Ratio, Ratio)> {
    let total = count_all_formulas(k, n);
    if total > BigUint::from(CENSUS_BUDGET) {
        return Err(Error::CountUnavailable {
            class: "sandwich".to_string(),
            k,
            n,
            reason: format!("exhaustive census needs {total} formulas"),
        });
    }
    Ok(sandwich_bounds_from_census(&census(k, n, None)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratio_reduces() {
        let r = Ratio::from_u64(6, 8);
        assert_eq!(r.numerator(), &BigUint::from(3u32));
        assert_eq!(r.denominator(), &BigUint::from(4u32));
        assert_eq!(r.to_string(), "3/4");
    }

    #[test]
    fn ratio_gap_and_order() {
        let a = Ratio::from_u64(1, 3);
        let b = Ratio::from_u64(1, 2);
        assert_eq!(a.gap(&b), Ratio::from_u64(1, 6));
        assert_eq!(b.gap(&a), Ratio::from_u64(1, 6));
        assert!(a < b);
    }

    #[test]
    fn ratio_decimal() {
        assert_eq!(Ratio::from_u64(1, 2).decimal(3), "0.500");
        assert_eq!(Ratio::from_u64(2, 3).decimal(6), "0.666667");
        assert_eq!(Ratio::from_u64(5, 4).decimal(2), "1.25");
        assert_eq!(Ratio::zero().decimal(4), "0.0000");
    }

    #[test]
    fn closed_forms() {
        assert_eq!(closed_form_density(LimitClass::G, 1), Ratio::from_u64(5, 9));
        assert_eq!(closed_form_density(LimitClass::Sn, 1), Ratio::zero());
        assert_eq!(closed_form_density(LimitClass::Ln, 2), Ratio::from_u64(1, 64));
        assert_eq!(
            closed_form_density(LimitClass::EvenSup, 3),
            Ratio::from_u64(1, 4)
        );
        assert_eq!(
            closed_form_density(LimitClass::Peirce, 2),
            Ratio::from_u64(1, 8)
        );
    }

    #[test]
    fn empirical_examples() {
        assert_eq!(empirical_ratio(EmpiricalClass::G, 1, 2).unwrap(), Ratio::one());
        for m in 1..=6 {
            assert_eq!(
                empirical_ratio(EmpiricalClass::Even, 2, 2 * m).unwrap(),
                Ratio::from_u64(1, 2),
                "even ratio is exactly 1/2 at even sizes for k = 2"
            );
            assert!(empirical_ratio(EmpiricalClass::Even, 2, 2 * m - 1)
                .unwrap()
                .is_zero());
        }
    }

    #[test]
    fn census_backed_ratio_budget() {
        assert!(empirical_ratio(EmpiricalClass::Cl, 2, 4).is_ok());
        assert!(matches!(
            empirical_ratio(EmpiricalClass::Cl, 3, 30),
            Err(Error::CountUnavailable { .. })
        ));
    }

    #[test]
    fn convergence_report_csv() {
        let report = convergence_table(EmpiricalClass::G, 1, &[2, 4, 8]).unwrap();
        assert_eq!(report.target, Ratio::from_u64(5, 9));
        let lines = report.csv_lines();
        assert_eq!(lines.len(), 3);
        assert!(lines[0].starts_with("G,1,2,1,1,5,9,"));
    }

    #[test]
    fn term_density_values() {
        let table = term_density_table(2);
        assert_eq!(table[0].1, Ratio::one());
        assert_eq!(table[1].1, Ratio::from_u64(5, 9));
        assert_eq!(table[2].1, Ratio::from_u64(60, 242));
    }

    #[test]
    fn term_density_small_by_forty() {
        let table = term_density_table(40);
        assert!(table[40].1 < Ratio::from_u64(1, 1000));
    }

    #[test]
    fn sandwich_examples() {
        let (lower, upper) = sandwich_bounds(1, 4).unwrap();
        assert_eq!(lower, Ratio::from_u64(3, 5));
        assert_eq!(upper, Ratio::one());
        let cl = empirical_ratio(EmpiricalClass::Cl, 1, 4).unwrap();
        assert!(lower <= cl && cl <= upper);
        // for one variable SN and LN are empty, so the upper bound is 1
        for n in 1..=8 {
            let (_, upper) = sandwich_bounds(1, n).unwrap();
            assert_eq!(upper, Ratio::one());
        }
    }
}
