//! bch-atlas: BCH code parameters over three length families, with
//! formula-vs-oracle verification.
//!
//! Exit codes: 0 success, 1 verification disagreement, 2 usage or input error.

use bch_atlas::distance::DistanceReport;
use bch_atlas::*;
use bch_atlas_cli::{verify_suite, Budgets, Summary, VerificationReport, VerifyRun, SUITES};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "bch-atlas", version, about = "BCH code parameters and their duals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Cap on n*m steps for coset enumeration (env BCH_ATLAS_MAX_ENUM)
    #[arg(long, global = true)]
    max_enum: Option<u64>,
    /// Cap on codeword evaluations for the exhaustive distance oracle
    #[arg(long, global = true)]
    max_codewords: Option<u64>,
    /// Cap on syndrome operations for the low-weight search
    #[arg(long, global = true)]
    max_syndromes: Option<u64>,
    /// Worker threads for the exhaustive oracle (env BCH_ATLAS_THREADS)
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

/// Family plus its size parameter: --m for primitive and projective lengths,
/// --s for the anti-primitive family (m = 2s).
#[derive(Args)]
struct FamilyArgs {
    #[arg(long)]
    family: FamilyTag,
    #[arg(long)]
    q: u64,
    #[arg(long)]
    m: Option<u32>,
    #[arg(long)]
    s: Option<u32>,
}

impl FamilyArgs {
    fn param(&self) -> Result<u32> {
        match (self.family, self.m, self.s) {
            (FamilyTag::AntiPrimitive, None, Some(s)) => Ok(s),
            (FamilyTag::AntiPrimitive, _, _) => Err(Error::InvalidInput(
                "the anti family takes --s (and not --m)".into(),
            )),
            (_, Some(m), None) => Ok(m),
            _ => Err(Error::InvalidInput(
                "primitive and projective families take --m (and not --s)".into(),
            )),
        }
    }

    fn context(&self, budgets: &Budgets) -> Result<CosetContext> {
        let ctx = self.family.context(self.q, self.param()?)?;
        let needed = ctx.n() as u128 * ctx.m() as u128;
        if needed > budgets.enum_budget as u128 {
            return Err(Error::BudgetExceeded { needed, cap: budgets.enum_budget as u128 });
        }
        Ok(ctx)
    }
}

#[derive(Subcommand)]
enum Command {
    /// List coset leaders, or one full coset with --t
    Cosets {
        #[command(flatten)]
        fam: FamilyArgs,
        /// Show the coset of this residue instead of the leader list
        #[arg(long)]
        t: Option<u64>,
    },
    /// The k largest coset leaders: closed forms and/or the enumeration oracle
    Leaders {
        #[command(flatten)]
        fam: FamilyArgs,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, value_enum, default_value_t = Source::Both)]
        source: Source,
    },
    /// Build a code and report its parameter bundle
    Code {
        #[command(flatten)]
        fam: FamilyArgs,
        #[arg(long)]
        delta: u64,
        #[arg(long, default_value_t = 1)]
        b: u64,
    },
    /// Dual defining set and the dimension pair
    Dual {
        #[command(flatten)]
        fam: FamilyArgs,
        #[arg(long)]
        delta: u64,
        #[arg(long, default_value_t = 1)]
        b: u64,
    },
    /// Dually-BCH verdicts: exhaustive range search and closed form
    DuallyBch {
        #[command(flatten)]
        fam: FamilyArgs,
        #[arg(long)]
        delta: u64,
        #[arg(long, default_value_t = 1)]
        b: u64,
    },
    /// Distance bounds and oracles for one code
    Distance {
        #[command(flatten)]
        fam: FamilyArgs,
        #[arg(long)]
        delta: u64,
        #[arg(long, default_value_t = 1)]
        b: u64,
        /// Run the exhaustive codeword oracle (within --max-codewords)
        #[arg(long)]
        exhaustive: bool,
        /// Search the dual code for words of weight at most 4
        #[arg(long)]
        dual_low_weight: bool,
    },
    /// Run verification suites; exits 1 on any disagreement
    Verify {
        /// Suite name, or "all"
        #[arg(long, default_value = "all")]
        suite: String,
    },
    /// Parameter reports over a designed-distance range
    Table {
        #[command(flatten)]
        fam: FamilyArgs,
        #[arg(long)]
        delta_from: u64,
        #[arg(long)]
        delta_to: u64,
        #[arg(long, default_value_t = 1)]
        b: u64,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Source {
    Formula,
    Oracle,
    Both,
}

fn main() {
    let cli = Cli::parse();
    let mut budgets = Budgets::from_env();
    if let Some(v) = cli.max_enum {
        budgets.enum_budget = v;
    }
    if let Some(v) = cli.max_codewords {
        budgets.codeword_budget = v;
    }
    if let Some(v) = cli.max_syndromes {
        budgets.syndrome_budget = v;
    }
    if let Some(v) = cli.threads {
        budgets.threads = v;
    }
    match run(cli, &budgets) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(2);
        }
    }
}

fn run(cli: Cli, budgets: &Budgets) -> Result<i32> {
    let format = cli.format;
    match cli.command {
        Command::Cosets { fam, t } => {
            let ctx = fam.context(budgets)?;
            let out = match t {
                Some(t) => {
                    let c = coset_of(&ctx, t)?;
                    let elements: Vec<Num> = c.elements.iter().map(|&e| Num(e)).collect();
                    json!({
                        "q": Num(ctx.q()), "n": Num(ctx.n()), "m": ctx.m(), "t": Num(t),
                        "leader": Num(c.leader), "size": c.size, "elements": elements,
                    })
                }
                None => {
                    let leaders = coset_leaders(&ctx, budgets.enum_budget)?;
                    json!({
                        "q": Num(ctx.q()), "n": Num(ctx.n()), "m": ctx.m(),
                        "cosets": leaders,
                    })
                }
            };
            emit(&out, format);
            Ok(0)
        }
        Command::Leaders { fam, k, source } => {
            let ctx = fam.context(budgets)?;
            let param = fam.param()?;
            let oracle = if source != Source::Formula {
                Some(k_largest_leaders(&ctx, k, budgets.enum_budget)?)
            } else {
                None
            };
            let formula = if source != Source::Oracle {
                Some(formula_leaders(fam.family, fam.q, param, k))
            } else {
                None
            };
            let agree = match (&formula, &oracle) {
                (Some(f), Some(o)) => Some(formulas_match(f, o)),
                _ => None,
            };
            let out = json!({
                "family": fam.family.as_str(), "q": Num(fam.q), "param": param,
                "n": Num(ctx.n()), "k": k, "formula": formula, "oracle": oracle,
                "agree": agree,
            });
            emit(&out, format);
            Ok(0)
        }
        Command::Code { fam, delta, b } => {
            fam.context(budgets)?;
            let report = params_report(
                fam.family,
                fam.q,
                fam.param()?,
                delta,
                b,
                budgets.enum_budget,
                budgets.syndrome_budget,
            )?;
            emit(&serde_json::to_value(&report).expect("report to json"), format);
            Ok(0)
        }
        Command::Dual { fam, delta, b } => {
            let ctx = fam.context(budgets)?;
            let t = defining_set(&ctx, delta, b)?;
            let dual = dualize(&t);
            let out = json!({
                "family": fam.family.as_str(), "q": Num(ctx.q()), "n": Num(ctx.n()),
                "b": b, "delta": Num(delta),
                "dim": Num(ctx.n() - t.len()), "dual_dim": Num(ctx.n() - dual.len()),
                "dual_set_size": Num(dual.len()), "dual_leaders": dual.leaders(&ctx),
            });
            emit(&out, format);
            Ok(0)
        }
        Command::DuallyBch { fam, delta, b } => {
            fam.context(budgets)?;
            let param = fam.param()?;
            let code = bch_code(fam.family, fam.q, param, delta, b)?;
            let direct = is_dually_bch_direct(&code, budgets.enum_budget)?;
            let closed = dually_bch_closed_form(fam.family, fam.q, param, delta, b);
            let out = json!({
                "family": fam.family.as_str(), "q": Num(fam.q), "param": param,
                "n": Num(code.n()), "b": b, "delta": Num(delta),
                "direct": direct,
                "closed_form": closed.as_ref().ok(),
                "closed_form_gap": closed.err().map(|e| e.to_string()),
            });
            emit(&out, format);
            Ok(0)
        }
        Command::Distance { fam, delta, b, exhaustive, dual_low_weight } => {
            let out = distance_report(&fam, delta, b, exhaustive, dual_low_weight, budgets)?;
            emit(&out, format);
            Ok(0)
        }
        Command::Verify { suite } => {
            let names: Vec<String> = if suite == "all" {
                SUITES.iter().map(|s| s.to_string()).collect()
            } else {
                vec![suite]
            };
            let mut suites = Vec::new();
            for n in &names {
                eprintln!("running suite {n}...");
                suites.push(verify_suite(n, budgets)?);
            }
            let mut summary = Summary::default();
            for s in &suites {
                summary.total += s.summary.total;
                summary.agree += s.summary.agree;
                summary.disagree += s.summary.disagree;
                summary.skipped += s.summary.skipped;
            }
            let run = VerifyRun { suites, summary };
            match format {
                Format::Json => println!("{}", serde_json::to_string(&run).expect("json")),
                Format::Tsv => {
                    for s in &run.suites {
                        verify_tsv(s);
                    }
                }
            }
            Ok(if run.summary.disagree == 0 { 0 } else { 1 })
        }
        Command::Table { fam, delta_from, delta_to, b } => {
            fam.context(budgets)?;
            let param = fam.param()?;
            let mut rows = Vec::new();
            for delta in delta_from..=delta_to {
                rows.push(params_report(
                    fam.family,
                    fam.q,
                    param,
                    delta,
                    b,
                    budgets.enum_budget,
                    budgets.syndrome_budget,
                )?);
            }
            match format {
                Format::Json => {
                    println!("{}", serde_json::to_string(&rows).expect("json"))
                }
                Format::Tsv => table_tsv(&rows),
            }
            Ok(0)
        }
    }
}

fn formula_leaders(family: FamilyTag, q: u64, param: u32, k: usize) -> Vec<Value> {
    let mut out = Vec::new();
    for rank in 1..=k as u32 {
        let res = match family {
            FamilyTag::Primitive => primitive_delta(q, param, rank),
            FamilyTag::AntiPrimitive => anti_delta(q, param, rank),
            FamilyTag::Projective => match rank {
                1 => proj_delta1(q, param),
                2 => proj_delta2(q, param),
                i => Err(Error::RankOutOfRange { i, m: param }),
            },
        };
        out.push(match res {
            Ok(d) => json!({
                "leader": Num(d.value), "size": d.coset_size, "rank": rank, "id": d.formula,
            }),
            Err(e) => json!({ "rank": rank, "gap": e.to_string() }),
        });
    }
    out
}

fn formulas_match(formula: &[Value], oracle: &[CosetLeader]) -> bool {
    formula.iter().enumerate().all(|(i, f)| {
        let Some(leader) = f.get("leader").and_then(Value::as_u64) else {
            return true; // formula gap: nothing to compare
        };
        let size = f.get("size").and_then(Value::as_u64);
        oracle.get(i).is_some_and(|o| o.leader == leader && Some(o.size) == size)
    })
}

fn distance_report(
    fam: &FamilyArgs,
    delta: u64,
    b: u64,
    exhaustive: bool,
    dual_low_weight: bool,
    budgets: &Budgets,
) -> Result<Value> {
    let param = fam.param()?;
    fam.context(budgets)?;
    let mut code = bch_code(fam.family, fam.q, param, delta, b)?;
    let ctx = code.ctx;
    let bose = bose_distance(&code.defining);
    let rule = if b == 1 {
        divisor_multiple_exact_distance(fam.q, ctx.n(), delta)
    } else {
        None
    };
    let packing = if code.dimension > 0 {
        Some(sphere_packing_max_d(ctx.n(), code.dimension, fam.q)?)
    } else {
        None
    };
    let (p, e) = prime_power_parts(fam.q)?;
    let tower = build_tower(p, e, ctx.m() as u32)?;

    let mut methods = vec!["bose".to_string(), "sphere-packing".to_string()];
    let mut exact = rule;
    if rule.is_some() {
        methods.push("divisor-rule".into());
    }
    let mut budget_used = 0u64;
    let mut exhaustive_out = None;
    if exhaustive {
        code.attach_generator(&tower)?;
        let (d, count) = exhaustive_min_distance(
            code.generator.as_ref().unwrap(),
            &tower,
            ctx.n(),
            budgets.codeword_budget,
            budgets.threads,
        )?;
        methods.push("exhaustive".into());
        budget_used += count;
        exact = Some(d);
        exhaustive_out = Some(d);
    }
    let lower = exact.unwrap_or(bose);
    let upper = exact.or(packing).unwrap_or(ctx.n());
    let report = DistanceReport {
        lower,
        upper,
        exact,
        methods,
        budget_used,
    };

    let dual = if dual_low_weight {
        let set = dualize(&code.defining);
        let rows: Vec<u64> = set.leaders(&ctx).iter().map(|l| l.leader).collect();
        let out = low_weight_search(&rows, &ctx, &tower, 4, budgets.syndrome_budget)?;
        Some(json!({ "rows": rows, "result": out }))
    } else {
        None
    };

    Ok(json!({
        "family": fam.family.as_str(), "q": Num(fam.q), "param": param, "n": Num(ctx.n()),
        "b": b, "delta": Num(delta), "dim": Num(code.dimension),
        "report": report,
        "exhaustive": exhaustive_out,
        "dual_low_weight": dual,
    }))
}

fn emit(v: &Value, format: Format) {
    match format {
        Format::Json => println!("{}", serde_json::to_string(v).expect("json")),
        Format::Tsv => {
            match v {
                Value::Object(map) => {
                    for (k, val) in map {
                        println!("{k}\t{}", tsv_scalar(val));
                    }
                }
                other => println!("{}", tsv_scalar(other)),
            }
        }
    }
}

fn tsv_scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => serde_json::to_string(other).expect("json"),
    }
}

fn verify_tsv(s: &VerificationReport) {
    for c in &s.cases {
        println!(
            "{}\t{}\t{}\t{}\t{}\t{}",
            s.suite,
            c.rule,
            tsv_scalar(&c.inputs),
            tsv_scalar(&c.formula),
            tsv_scalar(&c.oracle),
            if c.skipped { "skipped" } else if c.agree { "agree" } else { "DISAGREE" },
        );
    }
    println!(
        "{}\tsummary\ttotal={}\tagree={}\tdisagree={}\tskipped={}",
        s.suite, s.summary.total, s.summary.agree, s.summary.disagree, s.summary.skipped
    );
}

fn table_tsv(rows: &[ParamsReport]) {
    println!(
        "family\tq\tm\ts\tn\tb\tdelta\tdim_oracle\tdim_formula\tformula_id\tbose\td_lower\td_upper\td_exact\tdually_bch_direct\tdually_bch_formula\tdual_dim\tnotes"
    );
    for r in rows {
        let v = serde_json::to_value(r).expect("report json");
        let cols = [
            "family", "q", "m", "s", "n", "b", "delta", "dim_oracle", "dim_formula",
            "formula_id", "bose", "d_lower", "d_upper", "d_exact", "dually_bch_direct",
            "dually_bch_formula", "dual_dim", "notes",
        ];
        let line: Vec<String> =
            cols.iter().map(|c| tsv_scalar(v.get(*c).unwrap_or(&Value::Null))).collect();
        println!("{}", line.join("\t"));
    }
}
