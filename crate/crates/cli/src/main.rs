use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use mincw_core::bounds::reference::published_g;
use mincw_core::bounds::{
    agrell_upper, assemble_table, matroid_upper, recursion_upper_table, refined_trivial_upper, trivial_upper, Bound,
    GSource, GTable, MAX_N,
};
use mincw_core::codes::{is_intersecting, minimal_codewords, minimal_codewords_oracle, ORACLE_MAX_K};
use mincw_core::cyclegraph::{verify_cycle_correspondence, Graph};
use mincw_core::search::{
    compute_g, exhaustive_max_m, heuristic_max_m, verify_certificate, SearchBudget, SearchCertificate, SearchError,
};
use mincw_core::{Error, LinearCode};

#[derive(Parser)]
#[command(name = "mincw", version, about = "Minimal codewords of binary linear codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Minimal codewords, distance and bounds for one code file
    Analyze {
        file: PathBuf,
        /// Recount with the pairwise oracle and require agreement
        #[arg(long)]
        oracle: bool,
        /// Print the minimal codewords
        #[arg(long)]
        minimal_list: bool,
        #[arg(long)]
        json: bool,
    },
    /// Bounds table for 1 <= k <= min(n, K), n <= N
    Bounds {
        n: usize,
        k: usize,
        /// Certificate file, or directory of *.cert files (repeatable)
        #[arg(long = "search-lower")]
        search_lower: Vec<PathBuf>,
        /// File of "n k d" lines, d realised by some [n,k] code
        #[arg(long = "d-table")]
        d_table: Option<PathBuf>,
    },
    /// Search for an [n,k] code with many minimal codewords
    Search {
        n: usize,
        k: usize,
        #[command(flatten)]
        mode: SearchMode,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, env = "MINCW_WORKERS")]
        workers: Option<usize>,
        #[arg(long)]
        max_candidates: Option<u64>,
        #[arg(long)]
        max_seconds: Option<u64>,
        /// Hill-climbing restarts
        #[arg(long, default_value_t = 200)]
        restarts: usize,
        /// Write the certificate here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cycle code of a graph against its simple cycles
    Graph {
        file: PathBuf,
        #[arg(long)]
        report: bool,
    },
    /// g(n): computed for n <= N, embedded otherwise
    Gtable {
        n: usize,
        #[arg(long, env = "MINCW_WORKERS")]
        workers: Option<usize>,
        #[arg(long, default_value_t = 600)]
        max_seconds: u64,
    },
    /// Check a certificate file
    Verify { file: PathBuf },
}

#[derive(Args)]
#[group(required = false, multiple = false)]
struct SearchMode {
    #[arg(long)]
    exhaustive: bool,
    #[arg(long)]
    heuristic: bool,
}

/// Exit status 2, 3 or 4 with a message.
#[derive(Debug)]
enum Failure {
    Input(String),
    Invariant(String),
    Budget(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Invariant(_) => 3,
            Failure::Budget(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Invariant(m) | Failure::Budget(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

/// Output collected so far plus how the command ended.
struct Run {
    out: String,
    result: Result<(), Failure>,
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn parse_in<T>(path: &Path, parsed: Result<T, Error>) -> Result<T, Failure> {
    parsed.map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn budget(workers: Option<usize>) -> SearchBudget {
    let b = SearchBudget::default();
    match workers {
        Some(w) => b.with_workers(w),
        None => b,
    }
}

fn show(v: Option<Bound>) -> String {
    v.map_or_else(|| "n/a".to_string(), |v| v.to_string())
}

fn analyze(file: &Path, oracle: bool, minimal_list: bool, as_json: bool, out: &mut String) -> Result<(), Failure> {
    let code = parse_in(file, LinearCode::parse(&read(file)?))?;
    let (n, k) = (code.n(), code.k());
    if oracle && k > ORACLE_MAX_K {
        return Err(Failure::Input(format!("--oracle needs k <= {ORACLE_MAX_K}, got {k}")));
    }
    let set = minimal_codewords(&code);
    let m = set.count() as Bound;
    let d = code.min_distance();
    let intersecting = is_intersecting(&code);

    let trivial = trivial_upper(n, k)?;
    let matroid = matroid_upper(n, k)?;
    let agrell = agrell_upper(n, k);
    let g = GTable::embedded();
    let refined = refined_trivial_upper(n, k, &g).ok();
    let recursion = if g.get(n).is_some() {
        recursion_upper_table(n, k, &g)?.get(n, k)
    } else {
        None
    };

    let oracle_m = if oracle {
        Some(minimal_codewords_oracle(&code)?.count() as Bound)
    } else {
        None
    };

    if as_json {
        let as_u64 = |v: Option<Bound>| v.map(|v| v as u64);
        let mut report = json!({
            "n": n,
            "k": k,
            "d": d,
            "m": m as u64,
            "intersecting": intersecting,
            "bounds": {
                "trivial": trivial as u64,
                "refined_trivial": as_u64(refined),
                "matroid": matroid as u64,
                "agrell": as_u64(agrell),
                "recursion": as_u64(recursion),
            },
        });
        if let Some(o) = oracle_m {
            report["oracle_m"] = json!(o as u64);
        }
        if minimal_list {
            report["minimal"] = set.members().iter().map(|c| c.vector().to_string()).collect();
        }
        let _ = writeln!(out, "{}", serde_json::to_string_pretty(&report).expect("json"));
    } else {
        let _ = writeln!(out, "code [{n},{k}], d = {d}");
        let _ = writeln!(
            out,
            "M = {m}, intersecting = {intersecting}, trivial {trivial}, matroid {matroid}, agrell {}",
            show(agrell)
        );
        let _ = writeln!(out, "refined_trivial {}, recursion {}", show(refined), show(recursion));
        if let Some(o) = oracle_m {
            let _ = writeln!(out, "oracle M = {o}");
        }
        if minimal_list {
            for c in set.members() {
                let _ = writeln!(out, "{}", c.vector());
            }
        }
    }

    if let Some(o) = oracle_m {
        if o != m {
            return Err(Failure::Invariant(format!(
                "oracle counts {o} minimal codewords, sieve {m}"
            )));
        }
    }
    let uppers = [Some(trivial), Some(matroid), agrell, refined, recursion];
    if let Some(u) = uppers.into_iter().flatten().find(|&u| m > u) {
        return Err(Failure::Invariant(format!("M = {m} exceeds upper bound {u}")));
    }
    Ok(())
}

fn certificate_files(path: &Path) -> Result<Vec<PathBuf>, Failure> {
    if !path.is_dir() {
        return Ok(vec![path.to_path_buf()]);
    }
    let entries = fs::read_dir(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "cert"))
        .collect();
    files.sort();
    Ok(files)
}

fn parse_d_table(path: &Path) -> Result<BTreeMap<(usize, usize), usize>, Failure> {
    let text = read(path)?;
    let mut table = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Result<Vec<usize>, _> = line.split_whitespace().map(str::parse).collect();
        match fields.as_deref() {
            Ok(&[n, k, d]) if 1 <= k && k <= n && 1 <= d && d <= n => {
                let best = table.entry((n, k)).or_insert(d);
                *best = (*best).max(d);
            }
            _ => {
                return Err(Failure::Input(format!(
                    "{}: line {}: expected \"n k d\" with 1 <= k <= n, 1 <= d <= n",
                    path.display(),
                    i + 1
                )))
            }
        }
    }
    Ok(table)
}

fn bounds(
    max_n: usize,
    max_k: usize,
    search_lower: &[PathBuf],
    d_table: Option<&Path>,
    out: &mut String,
) -> Result<(), Failure> {
    if max_n == 0 || max_k == 0 || max_n > MAX_N {
        return Err(Failure::Input(format!("need 1 <= N <= {MAX_N} and K >= 1")));
    }
    let mut search = BTreeMap::new();
    for path in search_lower {
        for file in certificate_files(path)? {
            let cert = parse_in(&file, SearchCertificate::parse(&read(&file)?))?;
            if !verify_certificate(&cert) {
                return Err(Failure::Invariant(format!(
                    "{}: certificate does not verify",
                    file.display()
                )));
            }
            if cert.n <= max_n && cert.k <= max_k {
                let best = search.entry((cert.n, cert.k)).or_insert(0);
                *best = (*best).max(cert.claimed_m as Bound);
            }
        }
    }
    let distances = match d_table {
        Some(p) => parse_d_table(p)?,
        None => BTreeMap::new(),
    };
    // rows without a tabulated g(n) fall back to the plain trivial bound
    let g = GTable::embedded();
    let table = assemble_table(max_n, max_k, &g, &search, &distances)?;
    out.push_str(&table.to_tsv());
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn search(
    n: usize,
    k: usize,
    heuristic: bool,
    seed: u64,
    workers: Option<usize>,
    max_candidates: Option<u64>,
    max_seconds: Option<u64>,
    restarts: usize,
    cert_out: Option<&Path>,
    out: &mut String,
) -> Result<(), Failure> {
    let mut b = budget(workers).with_seed(seed).with_restarts(restarts);
    if let Some(m) = max_candidates {
        b = b.with_max_candidates(m);
    }
    if let Some(s) = max_seconds {
        b = b.with_max_time(Duration::from_secs(s));
    }
    let (cert, exceeded) = if heuristic {
        (heuristic_max_m(n, k, &b)?, false)
    } else {
        match exhaustive_max_m(n, k, &b) {
            Ok(c) => (c, false),
            Err(SearchError::BudgetExceeded(c)) => (*c, true),
            Err(SearchError::Invalid(e)) => return Err(e.into()),
        }
    };
    let _ = writeln!(out, "claimed_m {}", cert.claimed_m);
    let _ = writeln!(out, "method {}", cert.method);
    let _ = writeln!(out, "candidates_examined {}", cert.candidates_examined);
    match cert_out {
        Some(path) => {
            fs::write(path, cert.to_text()).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
        }
        None => out.push_str(&cert.to_text()),
    }
    if exceeded {
        return Err(Failure::Budget(format!(
            "budget exhausted after {} candidates; best so far recorded as heuristic",
            cert.candidates_examined
        )));
    }
    Ok(())
}

fn graph(file: &Path, report: bool, out: &mut String) -> Result<(), Failure> {
    let g = parse_in(file, Graph::parse(&read(file)?))?;
    let r = match verify_cycle_correspondence(&g) {
        Ok(r) => r,
        Err(Error::AcyclicGraph) => {
            let _ = writeln!(out, "acyclic: 0 cycles, no cycle code");
            return Ok(());
        }
        Err(e) => return Err(e.into()),
    };
    let bound_new = r
        .bound_new
        .as_ref()
        .map_or_else(|| "n/a".to_string(), |b| b.to_string());
    if report {
        let _ = writeln!(out, "p {}, q {}, components {}", r.p, r.q, r.components);
        let _ = writeln!(out, "cycle code [{},{}]", r.q, r.dimension);
        let _ = writeln!(out, "cycles via code {}", r.cycles_via_code);
        let _ = writeln!(out, "cycles via backtracking {}", r.cycles_via_backtracking);
        let _ = writeln!(out, "bound_new {bound_new}");
        let _ = writeln!(out, "bound_old {}", r.bound_old);
        let _ = writeln!(out, "bounds hold {}", r.bounds_hold());
        let _ = writeln!(out, "agree {}", r.agree);
    } else {
        let _ = writeln!(
            out,
            "cycles {} = {}, code [{},{}]",
            r.cycles_via_code, r.cycles_via_backtracking, r.q, r.dimension
        );
        let _ = writeln!(
            out,
            "cycles {} = {}, bound_new {bound_new}, bound_old {}",
            r.cycles_via_code, r.cycles_via_backtracking, r.bound_old
        );
    }
    if !r.agree {
        return Err(Failure::Invariant(format!(
            "code counts {} cycles, backtracking {}",
            r.cycles_via_code, r.cycles_via_backtracking
        )));
    }
    if !r.bounds_hold() {
        return Err(Failure::Invariant("cycle count exceeds a bound".into()));
    }
    Ok(())
}

fn gtable(max_n: usize, workers: Option<usize>, max_seconds: u64, out: &mut String) -> Result<(), Failure> {
    if max_n > MAX_N {
        return Err(Failure::Input(format!("need N <= {MAX_N}")));
    }
    let b = budget(workers).with_max_time(Duration::from_secs(max_seconds.max(1)));
    let mut table = GTable::embedded();
    let mut mismatches = Vec::new();
    let _ = writeln!(out, "# n\tg\tsource\tembedded\tstatus");
    for n in 3..=max_n.max(15) {
        let embedded = published_g(n);
        if n <= max_n {
            let e = compute_g(n, &b)?;
            if e.exact {
                table.set_computed(n, e.value);
            }
            let status = match (e.exact, embedded) {
                (false, _) => "budget",
                (true, Some(p)) if p == e.value => "match",
                (true, Some(_)) => {
                    mismatches.push(n);
                    "MISMATCH"
                }
                (true, None) => "new",
            };
            let shown = if e.exact {
                e.value.to_string()
            } else {
                format!(">={}", e.value)
            };
            let _ = writeln!(
                out,
                "{n}\t{shown}\tcomputed\t{}\t{status}",
                embedded.map_or("-".to_string(), |g| g.to_string())
            );
        } else if let (Some(g), Some(GSource::Embedded)) = (embedded, table.source(n)) {
            let _ = writeln!(out, "{n}\t{g}\tembedded\t{g}\tembedded");
        }
    }
    if mismatches.is_empty() {
        Ok(())
    } else {
        Err(Failure::Invariant(format!(
            "computed g differs from embedded at n = {mismatches:?}"
        )))
    }
}

fn verify(file: &Path, out: &mut String) -> Result<(), Failure> {
    let cert = parse_in(file, SearchCertificate::parse(&read(file)?))?;
    if verify_certificate(&cert) {
        let _ = writeln!(
            out,
            "ok: [{},{}] M = {} ({})",
            cert.n, cert.k, cert.claimed_m, cert.method
        );
        Ok(())
    } else {
        Err(Failure::Invariant(format!(
            "certificate for [{},{}] claiming M = {} does not verify",
            cert.n, cert.k, cert.claimed_m
        )))
    }
}

fn run(cli: Cli) -> Run {
    let mut out = String::new();
    let result = match cli.command {
        Command::Analyze {
            file,
            oracle,
            minimal_list,
            json,
        } => analyze(&file, oracle, minimal_list, json, &mut out),
        Command::Bounds {
            n,
            k,
            search_lower,
            d_table,
        } => bounds(n, k, &search_lower, d_table.as_deref(), &mut out),
        Command::Search {
            n,
            k,
            mode,
            seed,
            workers,
            max_candidates,
            max_seconds,
            restarts,
            out: cert_out,
        } => search(
            n,
            k,
            mode.heuristic,
            seed,
            workers,
            max_candidates,
            max_seconds,
            restarts,
            cert_out.as_deref(),
            &mut out,
        ),
        Command::Graph { file, report } => graph(&file, report, &mut out),
        Command::Gtable {
            n,
            workers,
            max_seconds,
        } => gtable(n, workers, max_seconds, &mut out),
        Command::Verify { file } => verify(&file, &mut out),
    };
    Run { out, result }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let Run { out, result } = run(cli);
    print!("{out}");
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
