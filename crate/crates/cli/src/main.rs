use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use snakepath::cfrac::{builtin_spec, expand, Builtin};
use snakepath::harness::{self, Format, IdentityCheck};
use snakepath::maps;
use snakepath::paths::{enumerate_paths, BMPath, Scheme};
use snakepath::sgnperm::{enumerate_class, PermClass, SignedPerm, Stat};
use snakepath::snakes::{enumerate_snakes, Flavor, PatKind, Snake};
use snakepath::Error;

const EXIT_MISMATCH: u8 = 2;
const EXIT_USAGE: u8 = 3;

/// `println!` that exits quietly when stdout is closed, e.g. piped into `head`.
macro_rules! say {
    ($($arg:tt)*) => {{
        use std::io::Write as _;
        let mut out = std::io::stdout().lock();
        if writeln!(out, $($arg)*).is_err() {
            std::process::exit(0);
        }
    }};
}

#[derive(Parser)]
#[command(name = "snakepath", version, about = "Signed permutations, snakes and Motzkin paths, checked exactly")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Fmt {
    Json,
    Csv,
    Text,
}

impl From<Fmt> for Format {
    fn from(f: Fmt) -> Format {
        match f {
            Fmt::Json => Format::Json,
            Fmt::Csv => Format::Csv,
            Fmt::Text => Format::Text,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum MapName {
    Phi,
    Psi1,
    Psi2,
    Lambda1,
    Lambda2,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check registered identities.
    Verify {
        #[arg(long)]
        id: Option<String>,
        #[arg(long, default_value_t = 7)]
        nmax: usize,
        #[arg(long, value_enum, default_value_t = Fmt::Json)]
        format: Fmt,
        /// Report 0 for every timing so output is reproducible.
        #[arg(long)]
        no_timing: bool,
    },
    /// Expand a built-in continued fraction.
    Expand {
        #[arg(long)]
        spec: String,
        #[arg(long)]
        order: usize,
        #[arg(long, value_enum, default_value_t = Fmt::Text)]
        format: Fmt,
    },
    /// List a class of permutations or snakes with statistics.
    Enumerate {
        /// A, AStar, AltA, RAltA, Bn, Dn, BnStar, DnStar, or a snake flavor S, S0, S00, SD.
        #[arg(long)]
        class: String,
        #[arg(long)]
        n: usize,
        /// Comma separated, e.g. `fwex,neg,cro_B`; snakes also take cs, 2-31, pat_Q, pat_R.
        #[arg(long, default_value = "")]
        stats: String,
        #[arg(long, value_enum, default_value_t = Fmt::Text)]
        format: Fmt,
    },
    /// Apply a map to every element of its domain of size n.
    Bijection {
        #[arg(long, value_enum)]
        map: MapName,
        #[arg(long)]
        n: usize,
        /// Also check inverse or involution and exit 2 on failure.
        #[arg(long)]
        check: bool,
    },
    /// The two side-by-side tables.
    Tables {
        #[arg(long, default_value_t = 6)]
        nmax: usize,
        #[arg(long, value_enum, default_value_t = Fmt::Text)]
        format: Fmt,
    },
    /// Evaluate both sides of the nesting conjecture.
    Conjecture {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Fmt::Text)]
        format: Fmt,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.cmd) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn run(cmd: Cmd) -> Result<u8, Error> {
    match cmd {
        Cmd::Verify {
            id,
            nmax,
            format,
            no_timing,
        } => {
            let mut checks = match id {
                Some(id) => harness::verify_selected([id.as_str()], nmax)?,
                None => harness::verify_all(nmax)?,
            };
            if no_timing {
                checks.iter_mut().for_each(|c| c.millis = 0);
            }
            print_checks(&checks, format)?;
            Ok(verdict_code(&checks))
        }
        Cmd::Expand { spec, order, format } => {
            let which: Builtin = spec.parse()?;
            let s = expand(&builtin_spec(which), order);
            match format {
                Fmt::Json => say!("{}", to_json(&s)?),
                Fmt::Csv => {
                    say!("k,coefficient");
                    for (k, c) in s.coeffs.iter().enumerate() {
                        say!("{k},\"{c}\"");
                    }
                }
                Fmt::Text => {
                    for (k, c) in s.coeffs.iter().enumerate() {
                        say!("{k}: {c}");
                    }
                }
            }
            Ok(0)
        }
        Cmd::Enumerate {
            class,
            n,
            stats,
            format,
        } => {
            enumerate(&class, n, &stats, format)?;
            Ok(0)
        }
        Cmd::Bijection { map, n, check } => bijection(map, n, check),
        Cmd::Tables { nmax, format } => {
            let t = harness::discussion_tables(nmax)?;
            match format {
                Fmt::Json => say!("{}", to_json(&t)?),
                _ => {
                    say!("{:<3} {:<60} cs_D", "n", "signed");
                    for r in &t.rows {
                        say!("{:<3} {:<60} {}", r.n, r.signed.to_string(), r.cs_d);
                    }
                    say!("note: {}", t.note);
                }
            }
            Ok(0)
        }
        Cmd::Conjecture { n, format } => {
            let checks = harness::conjecture_pq(n)?;
            print_checks(&checks, format)?;
            Ok(0)
        }
    }
}

fn verdict_code(checks: &[IdentityCheck]) -> u8 {
    if checks.iter().all(|c| c.verdict.is_ok()) {
        0
    } else {
        EXIT_MISMATCH
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> Result<String, Error> {
    serde_json::to_string_pretty(v).map_err(|e| Error::Parse(e.to_string()))
}

fn print_checks(checks: &[IdentityCheck], format: Fmt) -> Result<(), Error> {
    let out = harness::render(checks, format.into())?;
    say!("{}", out.trim_end_matches('\n'));
    Ok(())
}

enum Item {
    Perm(SignedPerm),
    Snake(Snake),
}

fn stat_value(item: &Item, name: &str) -> Result<Value, Error> {
    let perm = match item {
        Item::Perm(p) => p,
        Item::Snake(s) => {
            match name {
                "cs" => return Ok(json!(s.cs())),
                "2-31" => return Ok(json!(s.total_2_31()?)),
                "pat_Q" => return Ok(json!(s.pat_stat(PatKind::Q)?)),
                "pat_R" => return Ok(json!(s.pat_stat(PatKind::R)?)),
                "cs_vector" => return Ok(json!(s.cs_vector()?)),
                _ => &s.body,
            }
        }
    };
    let stat: Stat = name.parse()?;
    Ok(match stat {
        Stat::Fwex => json!(perm.fwex()),
        Stat::Wex => json!(perm.wex()),
        Stat::Exc => json!(perm.exc()),
        Stat::Neg => json!(perm.neg()),
        Stat::CroB => json!(perm.cro_b()),
        Stat::NestB => json!(perm.nest_b()),
        Stat::Cro => json!(perm.cro()?),
        Stat::Stat31_2 => json!(perm.stat31_2()?),
    })
}

fn enumerate(class: &str, n: usize, stats: &str, format: Fmt) -> Result<(), Error> {
    let names: Vec<&str> = stats.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    let items: Box<dyn Iterator<Item = Item>> = match class.parse::<PermClass>() {
        Ok(c) => Box::new(enumerate_class(n, c)?.map(Item::Perm)),
        Err(_) => {
            let f: Flavor = class.parse()?;
            Box::new(enumerate_snakes(n, f)?.map(Item::Snake))
        }
    };
    if matches!(format, Fmt::Csv | Fmt::Text) {
        let sep = if matches!(format, Fmt::Csv) { "," } else { "\t" };
        let mut head = vec!["window"];
        head.extend(&names);
        say!("{}", head.join(sep));
    }
    let mut rows = Vec::new();
    for item in items {
        let window = match &item {
            Item::Perm(p) => p.window().to_vec(),
            Item::Snake(s) => s.window().to_vec(),
        };
        let values = names
            .iter()
            .map(|s| stat_value(&item, s))
            .collect::<Result<Vec<_>, _>>()?;
        match format {
            Fmt::Json => {
                let mut obj = serde_json::Map::new();
                obj.insert("window".into(), json!(window));
                for (k, v) in names.iter().zip(values) {
                    obj.insert(k.to_string(), v);
                }
                rows.push(Value::Object(obj));
            }
            Fmt::Csv | Fmt::Text => {
                let sep = if matches!(format, Fmt::Csv) { "," } else { "\t" };
                let w: Vec<String> = window.iter().map(i32::to_string).collect();
                let mut cells = vec![w.join(" ")];
                cells.extend(values.iter().map(Value::to_string));
                say!("{}", cells.join(sep));
            }
        }
    }
    if matches!(format, Fmt::Json) {
        say!("{}", to_json(&rows)?);
    }
    Ok(())
}

fn path_json(p: &BMPath) -> Value {
    json!(p.to_string())
}

fn bijection(map: MapName, n: usize, check: bool) -> Result<u8, Error> {
    let mut failures = 0usize;
    let mut count = 0usize;
    let mut emit = |input: Value, output: Value, ok: bool| {
        count += 1;
        if !ok {
            failures += 1;
        }
        let mut line = json!({ "input": input, "output": output });
        if check {
            line["ok"] = json!(ok);
        }
        say!("{line}");
    };
    match map {
        MapName::Phi => {
            for mu in enumerate_paths(Scheme::M, n)? {
                let r = maps::phi(&mu)?;
                let ok = !check || maps::phi_inv(r.first_weight, &r.path)? == mu;
                let out = json!({ "first_weight": r.first_weight.to_string(), "path": path_json(&r.path) });
                emit(path_json(&mu), out, ok);
            }
        }
        MapName::Psi1 | MapName::Psi2 => {
            let (scheme, f): (Scheme, fn(&BMPath) -> snakepath::Result<BMPath>) = match map {
                MapName::Psi1 => (Scheme::H, maps::psi1),
                _ => (Scheme::Mstar, maps::psi2),
            };
            for p in enumerate_paths(scheme, n)? {
                let img = f(&p)?;
                let ok = !check || f(&img)? == p;
                emit(path_json(&p), path_json(&img), ok);
            }
        }
        MapName::Lambda1 => {
            for s in enumerate_snakes(n, Flavor::S0)? {
                let p = maps::lambda1(&s)?;
                let ok = !check || (p.validate(Scheme::Tstar).is_ok() && maps::lambda1_inv(&p)? == s);
                emit(json!(s.window()), path_json(&p), ok);
            }
        }
        MapName::Lambda2 => {
            for s in enumerate_snakes(n + 1, Flavor::S00)? {
                let p = maps::lambda2(&s)?;
                let ok = !check || (p.validate(Scheme::T).is_ok() && maps::lambda2_inv(&p)? == s);
                emit(json!(s.window()), path_json(&p), ok);
            }
        }
    }
    if check {
        eprintln!("{count} elements, {failures} failures");
    }
    Ok(if failures == 0 { 0 } else { EXIT_MISMATCH })
}
