//! `bcik`: enumeration, counting, classification, proof search and density
//! reports for implicational BCI/BCK logics.
//!
//! Exit codes: 0 on success (and for provable/tautology in `prove`), 1 for
//! "not provable" and for verification-suite failures, 2 for usage or
//! runtime errors.

mod output;

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;
use serde_json::json;

use bcik_core::classify::{
    census, is_classical_tautology, is_even, is_less_simple_nontautology, is_simple_nontautology,
    is_simple_tautology, sweep_counts,
};
use bcik_core::counting::{
    bci_star_prefix, bck_prefix, count_all_formulas, count_bck_terms, count_even_formulas,
    count_simple_tautologies, ogr_rhs, riccati_coeffs, OdeId, SequenceId, Tables,
};
use bcik_core::density::{convergence_table, term_density_table, EmpiricalClass, Ratio};
use bcik_core::formula::{enumerate_formulas, parse_formula, render_formula};
use bcik_core::lambda::{
    enumerate_closed_terms, is_bci_term, is_bck_term, render_term, term_size,
};
use bcik_core::prover::{check_witness, Logic, Prover};
use output::{big_json, Format, Sink};

const CACHE_ENV: &str = "BCIK_CACHE_DIR";
const CACHE_FILE: &str = "sequences.csv";

#[derive(Parser)]
#[command(
    name = "bcik",
    about = "Exact counting, classification and proof search for implicational BCI/BCK logics",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format for machine-readable results.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,

    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ProverCaps {
    /// Maximum formula size accepted by proof search.
    #[arg(long, default_value_t = 16)]
    cap_prover: u32,
}

#[derive(Subcommand)]
enum Command {
    /// Stream every formula of one size in the canonical order.
    Enumerate {
        #[arg(long)]
        vars: u32,
        #[arg(long)]
        size: u32,
        /// Maximum size accepted for enumeration.
        #[arg(long, default_value_t = 20)]
        cap_enum: u32,
    },
    /// Tabulate a counting sequence up to an index.
    Count {
        #[arg(long)]
        sequence: String,
        #[arg(long)]
        max: u32,
        /// Variable count, for the k-dependent sequences.
        #[arg(long)]
        vars: Option<u32>,
    },
    /// Classify one formula.
    Classify {
        #[arg(long)]
        vars: u32,
        #[arg(long)]
        formula: String,
        /// Also decide INT/BCK/BCI membership by proof search.
        #[arg(long)]
        provers: bool,
        #[command(flatten)]
        caps: ProverCaps,
    },
    /// Classify every formula of one size and report exact counts.
    Census {
        #[arg(long)]
        vars: u32,
        #[arg(long)]
        size: u32,
        #[arg(long)]
        provers: bool,
        #[command(flatten)]
        caps: ProverCaps,
    },
    /// Decide provability of a formula; exit 0 when provable, 1 when not.
    Prove {
        /// One of: bci, bck, int, cl.
        #[arg(long)]
        logic: String,
        #[arg(long)]
        vars: u32,
        #[arg(long)]
        formula: String,
        /// Print the lambda-term witness on success.
        #[arg(long)]
        witness: bool,
        #[command(flatten)]
        caps: ProverCaps,
    },
    /// Density reports: per-size ratios against the closed-form target, or
    /// the linear/affine term-density table (`--class term-ratio`).
    Density {
        /// One of: g, even, sn, ln, term-ratio.
        #[arg(long)]
        class: String,
        #[arg(long, default_value_t = 1)]
        vars: u32,
        /// Largest size (or largest k for term-ratio).
        #[arg(long)]
        max: u32,
    },
    /// Run a verification suite; exits 1 if any property fails.
    Verify {
        /// One of: recurrences, riccati, ogr-inequality, inclusions,
        /// witnesses.
        #[arg(long)]
        suite: String,
        /// Suite-specific bound (defaults per suite).
        #[arg(long)]
        max: Option<u32>,
    },
    /// Stream closed lambda terms of one size.
    DumpTerms {
        #[arg(long)]
        size: u32,
        /// One of: closed, bci, bck.
        #[arg(long, default_value = "closed")]
        class: String,
        #[arg(long, default_value_t = 14)]
        cap_enum: u32,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<u8, Box<dyn std::error::Error>> {
    let mut sink = Sink::open(cli.format, cli.output.as_ref())?;
    let code = match cli.command {
        Command::Enumerate { vars, size, cap_enum } => {
            cmd_enumerate(&mut sink, vars, size, cap_enum)?
        }
        Command::Count { sequence, max, vars } => cmd_count(&mut sink, &sequence, max, vars)?,
        Command::Classify {
            vars,
            formula,
            provers,
            caps,
        } => cmd_classify(&mut sink, vars, &formula, provers, caps.cap_prover)?,
        Command::Census {
            vars,
            size,
            provers,
            caps,
        } => cmd_census(&mut sink, vars, size, provers, caps.cap_prover)?,
        Command::Prove {
            logic,
            vars,
            formula,
            witness,
            caps,
        } => cmd_prove(&mut sink, &logic, vars, &formula, witness, caps.cap_prover)?,
        Command::Density { class, vars, max } => cmd_density(&mut sink, &class, vars, max)?,
        Command::Verify { suite, max } => cmd_verify(&mut sink, &suite, max)?,
        Command::DumpTerms {
            size,
            class,
            cap_enum,
        } => cmd_dump_terms(&mut sink, size, &class, cap_enum)?,
    };
    sink.finish()?;
    Ok(code)
}

fn cmd_enumerate(sink: &mut Sink, vars: u32, size: u32, cap: u32) -> Result<u8, Box<dyn std::error::Error>> {
    sink.header("index,formula")?;
    for (i, f) in enumerate_formulas(vars, size, Some(cap))?.enumerate() {
        let text = render_formula(&f);
        sink.record(
            &format!("{i},{text}"),
            json!({"index": i, "formula": text}),
        )?;
    }
    Ok(0)
}

fn cmd_count(
    sink: &mut Sink,
    sequence: &str,
    max: u32,
    vars: Option<u32>,
) -> Result<u8, Box<dyn std::error::Error>> {
    let id = SequenceId::from_str(sequence)?;
    let tables = Tables::new();
    let cache_path = std::env::var_os(CACHE_ENV).map(|dir| PathBuf::from(dir).join(CACHE_FILE));
    if let Some(path) = &cache_path {
        if path.exists() {
            tables.load_csv(std::io::BufReader::new(std::fs::File::open(path)?))?;
        }
    }
    let k = if id.takes_k() { vars } else { None };
    let prefix = tables.prefix(id, k, max)?;
    sink.comment("sequence dump")?;
    if let Some(oeis) = id.oeis() {
        sink.comment(&format!("{id} cross-reference: OEIS {oeis}"))?;
    }
    sink.header("sequence,k,n,value")?;
    let kcol = k.map(|v| v.to_string()).unwrap_or_default();
    for (n, value) in prefix.iter().enumerate() {
        sink.record(
            &format!("{id},{kcol},{n},{value}"),
            json!({"sequence": id.to_string(), "k": k, "n": n, "value": big_json(value)}),
        )?;
    }
    if let Some(path) = &cache_path {
        if let Some(parent) = path.parent() {
            std::fs::create_dir_all(parent)?;
        }
        let mut file = std::io::BufWriter::new(std::fs::File::create(path)?);
        tables.save_csv(&mut file)?;
    }
    Ok(0)
}

fn cmd_classify(
    sink: &mut Sink,
    vars: u32,
    formula: &str,
    provers: bool,
    cap_prover: u32,
) -> Result<u8, Box<dyn std::error::Error>> {
    let f = parse_formula(formula, vars)?;
    let text = render_formula(&f);
    let g = is_simple_tautology(&f);
    let sn = is_simple_nontautology(&f);
    let ln = is_less_simple_nontautology(&f, vars);
    let even = is_even(&f, vars);
    let cl = is_classical_tautology(&f, vars)?;
    let (int, bck, bci) = if provers {
        let prover = Prover::with_cap(cap_prover);
        (
            Some(prover.prove(Logic::Int, &f)?.provable),
            Some(prover.prove(Logic::Bck, &f)?.provable),
            Some(prover.prove(Logic::Bci, &f)?.provable),
        )
    } else {
        (None, None, None)
    };
    let peirce = int.map(|int| cl && !int);
    let bit = |b: bool| u8::from(b).to_string();
    let opt_bit = |b: Option<bool>| b.map(|v| u8::from(v).to_string()).unwrap_or_default();
    let ln_text = ln.map(|v| v.to_string()).unwrap_or_default();
    sink.header("formula,k,size,G,SN,LN,EVEN,CL,INT,BCK,BCI,PEIRCE,ln_valuation")?;
    sink.record(
        &format!(
            "{text},{vars},{},{},{},{},{},{},{},{},{},{},{}",
            f.size(),
            bit(g),
            bit(sn),
            bit(ln.is_some()),
            bit(even),
            bit(cl),
            opt_bit(int),
            opt_bit(bck),
            opt_bit(bci),
            opt_bit(peirce),
            ln_text,
        ),
        json!({
            "formula": text,
            "k": vars,
            "size": f.size(),
            "G": g,
            "SN": sn,
            "LN": ln.is_some(),
            "EVEN": even,
            "CL": cl,
            "INT": int,
            "BCK": bck,
            "BCI": bci,
            "PEIRCE": peirce,
            "ln_valuation": ln.map(|v| v.to_string()),
        }),
    )?;
    Ok(0)
}

fn census_json(row: &bcik_core::classify::CensusRow) -> serde_json::Value {
    let opt = |v: &Option<BigUint>| v.as_ref().map(big_json);
    json!({
        "k": row.k,
        "n": row.n,
        "total": big_json(&row.total),
        "G": big_json(&row.g),
        "SN": big_json(&row.sn),
        "LN": big_json(&row.ln),
        "EVEN": big_json(&row.even),
        "CL": big_json(&row.cl),
        "INT": opt(&row.int),
        "BCK": opt(&row.bck),
        "BCI": opt(&row.bci),
        "PEIRCE": opt(&row.peirce),
    })
}

fn cmd_census(
    sink: &mut Sink,
    vars: u32,
    size: u32,
    provers: bool,
    cap_prover: u32,
) -> Result<u8, Box<dyn std::error::Error>> {
    let prover = Prover::with_cap(cap_prover);
    let row = census(vars, size, provers.then_some(&prover))?;
    sink.header(bcik_core::classify::CensusRow::CSV_HEADER)?;
    sink.record(&row.csv_line(), census_json(&row))?;
    Ok(0)
}

fn cmd_prove(
    sink: &mut Sink,
    logic: &str,
    vars: u32,
    formula: &str,
    witness: bool,
    cap_prover: u32,
) -> Result<u8, Box<dyn std::error::Error>> {
    let f = parse_formula(formula, vars)?;
    let text = render_formula(&f);
    let (provable, witness_term) = if logic == "cl" {
        (is_classical_tautology(&f, vars)?, None)
    } else {
        let prover = Prover::with_cap(cap_prover);
        let result = prover.prove(Logic::from_str(logic)?, &f)?;
        (result.provable, result.witness)
    };
    let witness_text = if witness {
        witness_term.as_ref().map(render_term).unwrap_or_default()
    } else {
        String::new()
    };
    sink.header("logic,k,formula,provable,witness")?;
    sink.record(
        &format!("{logic},{vars},{text},{},{witness_text}", u8::from(provable)),
        json!({
            "logic": logic,
            "k": vars,
            "formula": text,
            "provable": provable,
            "witness": if witness_text.is_empty() { None } else { Some(witness_text.clone()) },
        }),
    )?;
    Ok(u8::from(!provable))
}

fn cmd_density(
    sink: &mut Sink,
    class: &str,
    vars: u32,
    max: u32,
) -> Result<u8, Box<dyn std::error::Error>> {
    if class == "term-ratio" {
        sink.header(bcik_core::density::ConvergenceReport::CSV_HEADER)?;
        // ratio of linear to affine term counts; the limit is zero
        let zero = Ratio::zero();
        for (k, ratio) in term_density_table(max) {
            let n = 3 * k + 2;
            sink.record(
                &format!(
                    "TERM_RATIO,{k},{n},{},{},0,1,{}",
                    ratio.numerator(),
                    ratio.denominator(),
                    ratio.gap(&zero).decimal(12)
                ),
                json!({
                    "class": "TERM_RATIO",
                    "k": k,
                    "n": n,
                    "numerator": big_json(ratio.numerator()),
                    "denominator": big_json(ratio.denominator()),
                    "target_num": 0,
                    "target_den": 1,
                    "gap_decimal": ratio.gap(&zero).decimal(12),
                }),
            )?;
        }
        return Ok(0);
    }
    let class = EmpiricalClass::from_str(class)?;
    // the even-formula ratio is identically zero at odd sizes, so its
    // convergence is reported on the even-size subsequence
    let sizes: Vec<u32> = if class == EmpiricalClass::Even {
        sink.comment("EVEN ratio is exactly 0 at every odd size; even sizes follow")?;
        (1..=max / 2).map(|m| 2 * m).collect()
    } else {
        (1..=max).collect()
    };
    sink.header(bcik_core::density::ConvergenceReport::CSV_HEADER)?;
    let report = convergence_table(class, vars, &sizes)?;
    for (row, line) in report.rows.iter().zip(report.csv_lines()) {
        sink.record(
            &line,
            json!({
                "class": report.class.to_string(),
                "k": report.k,
                "n": row.n,
                "numerator": big_json(row.ratio.numerator()),
                "denominator": big_json(row.ratio.denominator()),
                "target_num": big_json(report.target.numerator()),
                "target_den": big_json(report.target.denominator()),
                "gap_decimal": row.gap.decimal(12),
            }),
        )?;
    }
    Ok(0)
}

struct SuiteRun<'a> {
    sink: &'a mut Sink,
    failures: u32,
}

impl SuiteRun<'_> {
    fn check(&mut self, name: &str, ok: bool, detail: &str) -> std::io::Result<()> {
        let verdict = if ok { "PASS" } else { "FAIL" };
        if !ok {
            self.failures += 1;
        }
        self.sink.record(
            &format!("{verdict},{name},{detail}"),
            json!({"property": name, "pass": ok, "detail": detail}),
        )
    }
}

fn cmd_verify(
    sink: &mut Sink,
    suite: &str,
    max: Option<u32>,
) -> Result<u8, Box<dyn std::error::Error>> {
    sink.header("verdict,property,detail")?;
    let mut run = SuiteRun { sink, failures: 0 };
    match suite {
        "recurrences" => {
            let n_max = max.unwrap_or(10).min(12);
            for k in 1..=3u32 {
                let mut ok = true;
                let mut detail = format!("k={k}, n<={n_max}");
                for n in 1..=n_max {
                    let counts = sweep_counts(k, n)?;
                    if BigUint::from(counts.total) != count_all_formulas(k, n)
                        || BigUint::from(counts.g) != count_simple_tautologies(k, n)
                        || BigUint::from(counts.even) != count_even_formulas(k, n)
                    {
                        ok = false;
                        detail = format!("mismatch at k={k} n={n}");
                        break;
                    }
                }
                run.check(&format!("recurrences.formulas.k{k}"), ok, &detail)?;
            }
            let t_max = max.unwrap_or(11).min(13);
            let a = bci_star_prefix(t_max / 3);
            let b = bck_prefix(t_max);
            let mut ok = true;
            let mut detail = format!("n<={t_max}");
            for n in 1..=t_max {
                let mut bci = 0u64;
                let mut bck = 0u64;
                for t in enumerate_closed_terms(n, None)? {
                    bci += u64::from(is_bci_term(&t));
                    bck += u64::from(is_bck_term(&t));
                }
                let want_bci = if n % 3 == 2 {
                    a[(n as usize - 2) / 3].clone()
                } else {
                    BigUint::ZERO
                };
                if BigUint::from(bci) != want_bci || BigUint::from(bck) != b[n as usize] {
                    ok = false;
                    detail = format!("mismatch at term size {n}");
                    break;
                }
            }
            run.check("recurrences.terms", ok, &detail)?;
        }
        "riccati" => {
            let n = max.unwrap_or(200);
            let a_ok = riccati_coeffs(OdeId::A, n).coeffs == bci_star_prefix(n);
            run.check("riccati.A", a_ok, &format!("{n} coefficients"))?;
            let b_ok = riccati_coeffs(OdeId::B, n).coeffs == bck_prefix(n);
            run.check("riccati.B", b_ok, &format!("{n} coefficients"))?;
        }
        "ogr-inequality" => {
            let k_max = max.unwrap_or(40);
            let mut ok = true;
            let mut detail = format!("k<={k_max}");
            for k in 0..=k_max {
                if count_bck_terms(3 * k + 2) < ogr_rhs(k) {
                    ok = false;
                    detail = format!("inequality fails at k={k}");
                    break;
                }
            }
            run.check("ogr.lower-bound", ok, &detail)?;
            let strict = ogr_rhs(1) < count_bck_terms(5);
            run.check(
                "ogr.k1-strict",
                strict,
                &format!("rhs={} vs b_5={}", ogr_rhs(1), count_bck_terms(5)),
            )?;
        }
        "inclusions" => {
            let n_max = max.unwrap_or(6).min(12);
            let prover = Prover::new();
            let mut ok = true;
            let mut detail = format!("k<=2, n<={n_max}");
            'outer: for k in 1..=2u32 {
                for n in 1..=n_max {
                    for f in enumerate_formulas(k, n, None)? {
                        let bci = prover.prove(Logic::Bci, &f)?.provable;
                        let bck = prover.prove(Logic::Bck, &f)?.provable;
                        let int = prover.prove(Logic::Int, &f)?.provable;
                        let cl = is_classical_tautology(&f, k)?;
                        let chain = (!bci || bck) && (!bck || int) && (!int || cl);
                        let even_ok = !bci || is_even(&f, k);
                        let simple_ok = !is_simple_tautology(&f) || bck;
                        if !(chain && even_ok && simple_ok) {
                            ok = false;
                            detail = format!("violated by {f} (k={k})");
                            break 'outer;
                        }
                    }
                }
            }
            run.check("inclusions.chain", ok, &detail)?;
        }
        "witnesses" => {
            let n_max = max.unwrap_or(6).min(12);
            let prover = Prover::new();
            let mut ok = true;
            let mut checked = 0u64;
            let detail;
            'outer: {
                for k in 1..=2u32 {
                    for n in 1..=n_max {
                        for f in enumerate_formulas(k, n, None)? {
                            for logic in Logic::ALL {
                                let r = prover.prove(logic, &f)?;
                                if r.provable {
                                    checked += 1;
                                    let w = r.witness.expect("witness on success");
                                    if !check_witness(&w, &f, logic) {
                                        detail = format!("bad witness for {logic} on {f}");
                                        ok = false;
                                        break 'outer;
                                    }
                                }
                            }
                        }
                    }
                }
                detail = format!("{checked} witnesses checked (k<=2, n<={n_max})");
            }
            run.check("witnesses.sound", ok, &detail)?;
        }
        other => {
            return Err(Box::new(bcik_core::Error::Invalid {
                what: "verify suite",
                detail: format!("{other:?}"),
            }))
        }
    }
    Ok(u8::from(run.failures > 0))
}

fn cmd_dump_terms(
    sink: &mut Sink,
    size: u32,
    class: &str,
    cap: u32,
) -> Result<u8, Box<dyn std::error::Error>> {
    let filter: fn(&bcik_core::Term) -> bool = match class {
        "closed" => |_| true,
        "bci" => is_bci_term,
        "bck" => is_bck_term,
        other => {
            return Err(Box::new(bcik_core::Error::Invalid {
                what: "term class",
                detail: format!("{other:?}; expected closed, bci or bck"),
            }))
        }
    };
    sink.header("index,size,term")?;
    let mut index = 0u64;
    for t in enumerate_closed_terms(size, Some(cap))? {
        if filter(&t) {
            let text = render_term(&t);
            sink.record(
                &format!("{index},{},{text}", term_size(&t)),
                json!({"index": index, "size": term_size(&t), "term": text}),
            )?;
            index += 1;
        }
    }
    Ok(0)
}
