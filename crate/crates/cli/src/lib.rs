//! Command-line front end for `vinc-core`: counting, statistic tables,
//! equivalence checks, bijection and series verification, and the full
//! verification suite. Every command prints one report (JSON or CSV).

pub mod cache;
pub mod report;

use std::collections::BTreeSet;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use vinc_core::bijections::NamedMap;
use vinc_core::enumeration::{barred_set_coincidence, certify_reversibly_deletable};
use vinc_core::patterns::{BarredPattern, Pattern, Permutation, StatKind, VincularPattern};
use vinc_core::series::{series_vs_bruteforce, solve_family, Family, TruncatedSeries};
use vinc_core::suite::run_suite;

pub use cache::Cache;
use report::{Outcome, Report, Table};

/// Exit code for a passing verdict.
pub const EXIT_PASS: i32 = 0;
/// Exit code for a failed verification.
pub const EXIT_FAIL: i32 = 1;
/// Exit code for bad arguments or input.
pub const EXIT_USAGE: i32 = 2;

/// Largest permutation length accepted by the enumeration commands.
pub const MAX_N: usize = 16;

#[derive(Debug, Parser)]
#[command(name = "vinc", version, about = "Exact enumeration of vincular and barred pattern classes")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Count cache file.
    #[arg(long, global = true, env = "VINC_CACHE")]
    cache: Option<PathBuf>,
    /// Worker threads (0 lets the runtime decide).
    #[arg(long, global = true, env = "THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

fn parsed<T>(s: &str) -> Result<T, String>
where
    T: FromStr,
    T::Err: std::fmt::Display,
{
    s.parse().map_err(|e: T::Err| e.to_string())
}

fn length(s: &str) -> Result<usize, String> {
    let n: usize = s.parse().map_err(|e| format!("{e}"))?;
    if n > MAX_N {
        return Err(format!("n = {n} exceeds the supported maximum of {MAX_N}"));
    }
    Ok(n)
}

fn position_set(s: &str) -> Result<BTreeSet<usize>, String> {
    s.split(',')
        .map(|p| p.trim().parse::<usize>().map_err(|_| format!("bad position {p:?}")))
        .collect()
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Class sizes |S_m(p)| for m = 1..=n.
    Count {
        #[arg(short, value_parser = parsed::<Pattern>)]
        p: Pattern,
        #[arg(short, default_value_t = 9, value_parser = length)]
        n: usize,
    },
    /// Distribution of a statistic over S_n(p).
    Stat {
        #[arg(short, value_parser = parsed::<Pattern>)]
        p: Pattern,
        #[arg(short, default_value_t = 9, value_parser = length)]
        n: usize,
        #[arg(short, value_parser = parsed::<StatKind>)]
        s: StatKind,
    },
    /// Compare two patterns by counts, or by statistic tables with -s.
    Equiv {
        #[arg(short, required = true, num_args = 1, value_parser = parsed::<Pattern>)]
        p: Vec<Pattern>,
        #[arg(short, default_value_t = 9, value_parser = length)]
        n: usize,
        #[arg(short, value_parser = parsed::<StatKind>)]
        s: Option<StatKind>,
    },
    /// Partition the patterns of a file (one per line) by count vectors.
    Classify {
        #[arg(short)]
        f: PathBuf,
        #[arg(short, default_value_t = 9, value_parser = length)]
        n: usize,
    },
    /// Verify a named bijection on S_n.
    Bijection {
        #[arg(short, value_parser = parsed::<NamedMap>)]
        m: NamedMap,
        #[arg(short, default_value_t = 8, value_parser = length)]
        n: usize,
    },
    /// Solve a family's functional equations to z-degree N.
    Series {
        #[arg(short = 'F', value_parser = parsed::<Family>)]
        family: Family,
        #[arg(short = 'N', default_value_t = 8, value_parser = clap::value_parser!(u16).range(1..=30))]
        order: u16,
        /// Compare with brute-force tables for z-degree <= 8.
        #[arg(long)]
        check_bruteforce: bool,
    },
    /// Certify that a set of prefix positions is reversibly deletable.
    Revdel {
        #[arg(short, required = true, num_args = 1, value_parser = parsed::<VincularPattern>)]
        p: Vec<VincularPattern>,
        #[arg(long, value_parser = parsed::<Permutation>)]
        prefix: Permutation,
        #[arg(long = "set", value_parser = position_set)]
        set: BTreeSet<usize>,
        #[arg(short, default_value_t = 8, value_parser = length)]
        n: usize,
    },
    /// Compare the avoidance sets of a vincular and a barred pattern.
    Barred {
        #[arg(short, value_parser = parsed::<VincularPattern>)]
        v: VincularPattern,
        #[arg(short, value_parser = parsed::<BarredPattern>)]
        b: BarredPattern,
        #[arg(short, default_value_t = 8, value_parser = length)]
        n: usize,
    },
    /// Test 23-1-4 against 1-23-4 and 14-2-3 against 2-14-3.
    Conjecture {
        #[arg(short, default_value_t = 9, value_parser = length)]
        n: usize,
    },
    /// Run the full verification suite.
    Suite {
        /// Only these criterion ids (comma separated).
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
    },
}

struct Usage(String);

/// Runs one command line (`argv[0]` is the program name) and returns the
/// exit code. Reports go to `out`, diagnostics to `err`.
pub fn run(argv: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    if let Some(t) = cli.threads {
        // the global pool can be set once per process; later calls keep it
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    let mut cache = match &cli.cache {
        Some(path) => Cache::open(path, err),
        None => Cache::disabled(),
    };

    let start = Instant::now();
    let outcome = match execute(&cli.command, &mut cache) {
        Ok(o) => o,
        Err(Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            return EXIT_USAGE;
        }
    };
    let elapsed_ms = start.elapsed().as_millis() as u64;
    if let Err(e) = cache.save() {
        let _ = writeln!(err, "warning: could not write cache: {e}");
    }

    let report = Report::new(argv.iter().skip(1).cloned().collect(), outcome, elapsed_ms);
    let written = match cli.format {
        Format::Json => report.write_json(out),
        Format::Csv => report.write_csv(out),
    };
    if let Err(e) = written {
        let _ = writeln!(err, "error: could not write report: {e}");
        return EXIT_USAGE;
    }
    match report.verdict {
        report::Verdict::Pass => EXIT_PASS,
        report::Verdict::Fail => EXIT_FAIL,
    }
}

fn execute(cmd: &Command, cache: &mut Cache) -> Result<Outcome, Usage> {
    match cmd {
        Command::Count { p, n } => Ok(count(p, *n, cache)),
        Command::Stat { p, n, s } => stat(p, *n, *s, cache),
        Command::Equiv { p, n, s } => match p.as_slice() {
            [a, b] => Ok(equiv(a, b, *n, *s, cache)),
            _ => Err(Usage(format!("equiv takes exactly two -p patterns, got {}", p.len()))),
        },
        Command::Classify { f, n } => classify(f, *n, cache),
        Command::Bijection { m, n } => Ok(bijection(*m, *n)),
        Command::Series { family, order, check_bruteforce } => {
            series(*family, *order as usize, *check_bruteforce)
        }
        Command::Revdel { p, prefix, set, n } => revdel(p, prefix, set, *n),
        Command::Barred { v, b, n } => Ok(barred(v, b, *n)),
        Command::Conjecture { n } => Ok(conjecture(*n, cache)),
        Command::Suite { only } => Ok(suite(only)),
    }
}

fn count(p: &Pattern, n: usize, cache: &mut Cache) -> Outcome {
    let mut table = Table::new(&["pattern", "n", "count"]);
    let counts: Vec<u64> = (1..=n).map(|m| cache.count(p, m)).collect();
    for (m, c) in counts.iter().enumerate() {
        table.push(vec![json!(p.to_string()), json!(m + 1), json!(c)]);
    }
    Outcome {
        parameters: json!({ "pattern": p.to_string(), "n": n }),
        results: json!({ "counts": counts }),
        counterexample: None,
        table,
    }
}

fn stat(p: &Pattern, n: usize, kind: StatKind, cache: &mut Cache) -> Result<Outcome, Usage> {
    if n == 0 {
        return Err(Usage("statistics need n >= 1".into()));
    }
    let t = cache.table(p, n, kind);
    let mut table = Table::new(&["pattern", "n", "statistic", "value", "count"]);
    for (v, c) in t.iter() {
        table.push(vec![
            json!(p.to_string()),
            json!(n),
            json!(kind.name()),
            json!(v.key()),
            exact(c),
        ]);
    }
    Ok(Outcome {
        parameters: json!({ "pattern": p.to_string(), "n": n, "statistic": kind.name() }),
        results: serde_json::to_value(&t).expect("tables serialize"),
        counterexample: None,
        table,
    })
}

fn exact(v: &impl ToString) -> Value {
    Value::Number(v.to_string().parse().expect("integers are valid JSON numbers"))
}

fn equiv(a: &Pattern, b: &Pattern, n: usize, kind: Option<StatKind>, cache: &mut Cache) -> Outcome {
    let mut table = Table::new(&["n", "left", "right", "tables_agree"]);
    let mut rows = Vec::new();
    let mut counterexample = None;
    for m in 1..=n {
        let (l, r) = (cache.count(a, m), cache.count(b, m));
        let agree = kind.map(|k| cache.table(a, m, k) == cache.table(b, m, k));
        table.push(vec![json!(m), json!(l), json!(r), json!(agree)]);
        rows.push(json!({ "n": m, "left": l, "right": r, "tables_agree": agree }));
        if counterexample.is_none() && (l != r || agree == Some(false)) {
            counterexample = Some(json!({ "n": m, "left": l, "right": r, "tables_agree": agree }));
        }
    }
    Outcome {
        parameters: json!({
            "left": a.to_string(),
            "right": b.to_string(),
            "n": n,
            "statistic": kind.map(StatKind::name),
        }),
        results: json!({ "rows": rows }),
        counterexample,
        table,
    }
}

fn classify(path: &PathBuf, n: usize, cache: &mut Cache) -> Result<Outcome, Usage> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Usage(format!("cannot read {}: {e}", path.display())))?;
    let mut patterns = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let p: Pattern = line
            .parse()
            .map_err(|e| Usage(format!("{}:{}: {e}", path.display(), i + 1)))?;
        patterns.push(p);
    }
    let mut classes: Vec<(Vec<u64>, Vec<String>)> = Vec::new();
    for p in &patterns {
        let counts: Vec<u64> = (1..=n).map(|m| cache.count(p, m)).collect();
        match classes.iter_mut().find(|(c, _)| *c == counts) {
            Some((_, members)) => members.push(p.to_string()),
            None => classes.push((counts, vec![p.to_string()])),
        }
    }
    let mut table = Table::new(&["class", "pattern", "counts"]);
    for (i, (counts, members)) in classes.iter().enumerate() {
        for m in members {
            table.push(vec![json!(i + 1), json!(m), json!(counts)]);
        }
    }
    let results: Vec<Value> = classes
        .iter()
        .map(|(counts, members)| json!({ "patterns": members, "counts": counts }))
        .collect();
    Ok(Outcome {
        parameters: json!({ "file": path.display().to_string(), "n": n, "patterns": patterns.len() }),
        results: json!({ "classes": results }),
        counterexample: None,
        table,
    })
}

fn bijection(m: NamedMap, n: usize) -> Outcome {
    let r = m.verify(n);
    let mut table = Table::new(&["map", "n", "domain_size", "codomain_size", "holds"]);
    table.push(vec![json!(m.name()), json!(n), json!(r.domain_size), json!(r.codomain_size), json!(r.holds())]);
    Outcome {
        parameters: json!({ "map": m.name(), "n": n }),
        counterexample: r.violation.as_ref().map(|v| serde_json::to_value(v).expect("serializes")),
        results: serde_json::to_value(&r).expect("serializes"),
        table,
    }
}

fn terms(s: &TruncatedSeries) -> Vec<Value> {
    s.terms().map(|(n, a, c)| json!({ "n": n, "a": a, "coeff": exact(c) })).collect()
}

fn series(family: Family, order: usize, check: bool) -> Result<Outcome, Usage> {
    let sol = solve_family(family, order).map_err(|e| Usage(e.to_string()))?;
    let total = sol.total();
    let mut table = Table::new(&["family", "part", "n", "a", "coeff"]);
    for (part, s) in [("F", &total), ("F1", &sol.f1), ("F2", &sol.f2)] {
        for (n, a, c) in s.terms() {
            table.push(vec![json!(family.name()), json!(part), json!(n), json!(a), exact(c)]);
        }
    }
    let mut results = json!({
        "family": family.name(),
        "N": order,
        "F": terms(&total),
        "F1": terms(&sol.f1),
        "F2": terms(&sol.f2),
        "iterations": sol.iterations,
    });
    let mut counterexample = None;
    if check {
        let r = series_vs_bruteforce(family, order).map_err(|e| Usage(e.to_string()))?;
        counterexample = r.mismatches.first().map(|m| serde_json::to_value(m).expect("serializes"));
        results["check"] = serde_json::to_value(&r).expect("serializes");
    }
    Ok(Outcome {
        parameters: json!({ "family": family.name(), "N": order, "check_bruteforce": check }),
        results,
        counterexample,
        table,
    })
}

fn revdel(
    patterns: &[VincularPattern],
    prefix: &Permutation,
    set: &BTreeSet<usize>,
    n: usize,
) -> Result<Outcome, Usage> {
    let r = certify_reversibly_deletable(patterns, prefix, set, n).map_err(|e| Usage(e.to_string()))?;
    let names: Vec<String> = patterns.iter().map(ToString::to_string).collect();
    let mut table = Table::new(&["patterns", "prefix", "set", "n", "classes_checked", "holds"]);
    table.push(vec![
        json!(names.join(" ")),
        json!(prefix.to_string()),
        json!(set),
        json!(n),
        json!(r.classes_checked),
        json!(r.holds()),
    ]);
    Ok(Outcome {
        parameters: json!({ "patterns": names, "prefix": prefix.to_string(), "set": set, "n": n }),
        counterexample: r.counterexample.as_ref().map(|c| serde_json::to_value(c).expect("serializes")),
        results: serde_json::to_value(&r).expect("serializes"),
        table,
    })
}

fn barred(v: &VincularPattern, b: &BarredPattern, n: usize) -> Outcome {
    let r = barred_set_coincidence(v, b, n);
    let mut table = Table::new(&["n", "class_size"]);
    for (m, c) in r.class_sizes.iter().enumerate() {
        table.push(vec![json!(m + 1), json!(c)]);
    }
    Outcome {
        parameters: json!({ "vincular": v.to_string(), "barred": b.to_string(), "n": n }),
        counterexample: r.difference.as_ref().map(|d| serde_json::to_value(d).expect("serializes")),
        results: serde_json::to_value(&r).expect("serializes"),
        table,
    }
}

const CONJECTURE: [(&str, &str); 2] = [("23-1-4", "1-23-4"), ("14-2-3", "2-14-3")];

fn conjecture(n: usize, cache: &mut Cache) -> Outcome {
    let mut table = Table::new(&["left", "right", "n", "left_count", "right_count"]);
    let mut parts = Vec::new();
    let mut counterexample = None;
    for (l, r) in CONJECTURE {
        let (a, b): (Pattern, Pattern) = (l.parse().expect("literal"), r.parse().expect("literal"));
        let mut rows = Vec::new();
        for m in 1..=n {
            let (x, y) = (cache.count(&a, m), cache.count(&b, m));
            table.push(vec![json!(l), json!(r), json!(m), json!(x), json!(y)]);
            rows.push(json!({ "n": m, "left": x, "right": y }));
            if x != y && counterexample.is_none() {
                counterexample = Some(json!({ "left": l, "right": r, "n": m, "left_count": x, "right_count": y }));
            }
        }
        parts.push(json!({ "left": l, "right": r, "rows": rows }));
    }
    Outcome {
        parameters: json!({ "n": n }),
        results: json!({ "parts": parts }),
        counterexample,
        table,
    }
}

fn suite(only: &[u8]) -> Outcome {
    let r = run_suite(|id| only.is_empty() || only.contains(&id));
    let mut table = Table::new(&["id", "title", "passed", "detail", "elapsed_ms"]);
    for c in &r.criteria {
        table.push(vec![json!(c.id), json!(c.title), json!(c.passed), json!(c.detail), json!(c.elapsed_ms)]);
    }
    let counterexample = r
        .criteria
        .iter()
        .find(|c| !c.passed)
        .map(|c| json!({ "id": c.id, "title": c.title, "detail": c.detail }));
    Outcome {
        parameters: json!({ "only": only }),
        results: serde_json::to_value(&r).expect("serializes"),
        counterexample,
        table,
    }
}
