//! Thin command line around the library. Subcommands: solve, oracle,
//! validate-td, normalize, mu-width, selfcheck. Output is line oriented;
//! exit codes: 0 optimal, 2 infeasible, 3 mu-exceeded, 64 usage, 65 bad
//! input data, 70 internal error.

use imtw::automata::Preset;
use imtw::io;
use imtw::oracle::{brute_force_optimal, ProblemSpec};
use imtw::pipeline::{selfcheck, solve_pipeline, Instance, SolveStatus, TdInput};
use imtw::signatures::FamilyMode;
use imtw::supernice::make_supernice;
use imtw::treedec::{mu_width, validate};
use imtw::{Graph, Guards, VertexWeights};

const EXIT_OK: i32 = 0;
const EXIT_INFEASIBLE: i32 = 2;
const EXIT_MU_EXCEEDED: i32 = 3;
const EXIT_USAGE: i32 = 64;
const EXIT_DATA: i32 = 65;
const EXIT_INTERNAL: i32 = 70;

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let code = match args.first().map(String::as_str) {
        Some("solve") => cmd_solve(&args[1..], false),
        Some("oracle") => cmd_solve(&args[1..], true),
        Some("validate-td") => cmd_validate(&args[1..]),
        Some("normalize") => cmd_normalize(&args[1..]),
        Some("mu-width") => cmd_mu_width(&args[1..]),
        Some("selfcheck") => cmd_selfcheck(&args[1..]),
        _ => {
            eprintln!("{USAGE}");
            EXIT_USAGE
        }
    };
    std::process::exit(code);
}

const USAGE: &str = "usage:
  imtw solve --graph F.gr [--weights F.w] [--td F.td | --td-source trivial|search]
             --problem mwis|forest|tree|path|cycle [--with FACTOR]...
             [--w N] [--k N] [--family-mode bounded|all] [--verify]
  imtw oracle       (same instance flags; exhaustive ground truth)
  imtw validate-td  --graph F.gr --td F.td
  imtw normalize    --graph F.gr --td F.td --ell N
  imtw mu-width     --graph F.gr [--td F.td]
  imtw selfcheck    [--seed S] [--budget N]";

struct Flags {
    map: Vec<(String, String)>,
    switches: Vec<String>,
}

fn parse_flags(args: &[String], valued: &[&str], switch_names: &[&str]) -> Result<Flags, String> {
    let mut map = Vec::new();
    let mut switches = Vec::new();
    let mut i = 0;
    while i < args.len() {
        let a = &args[i];
        if switch_names.contains(&a.as_str()) {
            switches.push(a.clone());
            i += 1;
        } else if valued.contains(&a.as_str()) {
            let v = args.get(i + 1).ok_or_else(|| format!("{a} needs a value"))?;
            map.push((a.clone(), v.clone()));
            i += 2;
        } else {
            return Err(format!("unknown flag {a}"));
        }
    }
    Ok(Flags { map, switches })
}

impl Flags {
    fn get(&self, name: &str) -> Option<&str> {
        self.map.iter().rev().find(|(k, _)| k == name).map(|(_, v)| v.as_str())
    }
    fn get_all(&self, name: &str) -> Vec<String> {
        self.map.iter().filter(|(k, _)| k == name).map(|(_, v)| v.clone()).collect()
    }
    fn has(&self, name: &str) -> bool {
        self.switches.iter().any(|s| s == name)
    }
}

fn read_file(path: &str) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("cannot read {path}: {e}"))
}

fn load_instance(flags: &Flags) -> Result<(Graph, VertexWeights, TdInput), String> {
    let gr_path = flags.get("--graph").ok_or("--graph is required")?;
    let g = io::parse_gr(&read_file(gr_path)?).map_err(|e| e.to_string())?;
    let weights = match flags.get("--weights") {
        Some(p) => io::parse_weights(&read_file(p)?, g.n()).map_err(|e| e.to_string())?,
        None => VertexWeights::unit(g.n()),
    };
    let td = match (flags.get("--td"), flags.get("--td-source")) {
        (Some(_), Some(_)) => return Err("--td and --td-source are mutually exclusive".into()),
        (Some(p), None) => TdInput::Provided(io::parse_td(&read_file(p)?).map_err(|e| e.to_string())?),
        (None, Some("trivial")) | (None, None) => TdInput::Trivial,
        (None, Some("search")) => TdInput::Search,
        (None, Some(other)) => return Err(format!("unknown td source `{other}`")),
    };
    Ok((g, weights, td))
}

fn cmd_solve(args: &[String], use_oracle: bool) -> i32 {
    let flags = match parse_flags(
        args,
        &["--graph", "--weights", "--td", "--td-source", "--problem", "--with", "--w", "--k", "--family-mode"],
        &["--verify"],
    ) {
        Ok(f) => f,
        Err(e) => return usage_error(&e),
    };
    let (g, weights, td) = match load_instance(&flags) {
        Ok(x) => x,
        Err(e) => return data_error(&e),
    };
    let preset = match flags.get("--problem").and_then(Preset::from_name) {
        Some(p) => p,
        None => return usage_error("--problem must be one of mwis|forest|tree|path|cycle"),
    };
    let mut inst = Instance::new(g, weights, preset);
    inst.td = td;
    inst.extra = flags.get_all("--with");
    if let Some(ws) = flags.get("--w") {
        match ws.parse() {
            Ok(w) => inst.w = w,
            Err(_) => return usage_error("--w must be a nonnegative integer"),
        }
    }
    if let Some(ks) = flags.get("--k") {
        match ks.parse() {
            Ok(k) => inst.k = Some(k),
            Err(_) => return usage_error("--k must be a nonnegative integer"),
        }
    }
    match flags.get("--family-mode") {
        None | Some("bounded") => inst.mode = FamilyMode::Bounded,
        Some("all") => inst.mode = FamilyMode::All,
        Some(other) => return usage_error(&format!("unknown family mode `{other}`")),
    }

    if use_oracle {
        if !inst.extra.is_empty() {
            return usage_error("the oracle does not take --with factors");
        }
        let spec = ProblemSpec::with_w(preset, inst.w);
        return match brute_force_optimal(&inst.graph, &inst.weights, &spec, &inst.guards) {
            Ok(Some((x, w))) => {
                println!("status optimal");
                println!("weight {}", io::format_weight(&w));
                println!("solution {}", io::format_solution(x));
                EXIT_OK
            }
            Ok(None) => {
                println!("status infeasible");
                EXIT_INFEASIBLE
            }
            Err(e) => internal_error(&e.to_string()),
        };
    }

    match solve_pipeline(&inst) {
        Ok(rep) => {
            println!("c mu-width {}", rep.measured_mu);
            println!("c ell {}", rep.ell);
            println!("c supernice-nodes {}", rep.supernice_nodes);
            println!("c dp-max-entries {}", rep.stats.max_entries);
            match rep.status {
                SolveStatus::Optimal => {
                    println!("status optimal");
                    println!("weight {}", io::format_weight(&rep.weight.unwrap()));
                    println!("solution {}", io::format_solution(rep.solution.unwrap()));
                    if flags.has("--verify") {
                        let f = rep.verification.unwrap();
                        println!(
                            "c verify treewidth {} property {}",
                            f.treewidth, f.property_ok
                        );
                    }
                    EXIT_OK
                }
                SolveStatus::Infeasible => {
                    println!("status infeasible");
                    EXIT_INFEASIBLE
                }
                SolveStatus::MuExceeded => {
                    println!("status mu-exceeded");
                    println!("c measured mu-width {}", rep.measured_mu);
                    EXIT_MU_EXCEEDED
                }
            }
        }
        Err(e) => internal_error(&e.to_string()),
    }
}

fn cmd_validate(args: &[String]) -> i32 {
    let flags = match parse_flags(args, &["--graph", "--td"], &[]) {
        Ok(f) => f,
        Err(e) => return usage_error(&e),
    };
    let (Some(gp), Some(tp)) = (flags.get("--graph"), flags.get("--td")) else {
        return usage_error("validate-td needs --graph and --td");
    };
    let parsed = (|| -> Result<_, String> {
        let g = io::parse_gr(&read_file(gp)?).map_err(|e| e.to_string())?;
        let td = io::parse_td(&read_file(tp)?).map_err(|e| e.to_string())?;
        Ok((g, td))
    })();
    match parsed {
        Err(e) => data_error(&e),
        Ok((g, td)) => {
            let report = validate(&g, &td);
            print!("{report}");
            if report.is_valid() {
                EXIT_OK
            } else {
                EXIT_DATA
            }
        }
    }
}

fn cmd_normalize(args: &[String]) -> i32 {
    let flags = match parse_flags(args, &["--graph", "--td", "--ell"], &[]) {
        Ok(f) => f,
        Err(e) => return usage_error(&e),
    };
    let (Some(gp), Some(tp), Some(es)) = (flags.get("--graph"), flags.get("--td"), flags.get("--ell"))
    else {
        return usage_error("normalize needs --graph, --td, and --ell");
    };
    let Ok(ell) = es.parse::<usize>() else {
        return usage_error("--ell must be a nonnegative integer");
    };
    let parsed = (|| -> Result<_, String> {
        let g = io::parse_gr(&read_file(gp)?).map_err(|e| e.to_string())?;
        let td = io::parse_td(&read_file(tp)?).map_err(|e| e.to_string())?;
        Ok((g, td))
    })();
    match parsed {
        Err(e) => data_error(&e),
        Ok((g, td)) => match make_supernice(&g, &td, ell) {
            Ok(sn) => {
                print!("{}", io::emit_td(&sn.to_treedec(), g.n()));
                EXIT_OK
            }
            Err(e) => data_error(&e.to_string()),
        },
    }
}

fn cmd_mu_width(args: &[String]) -> i32 {
    let flags = match parse_flags(args, &["--graph", "--td"], &[]) {
        Ok(f) => f,
        Err(e) => return usage_error(&e),
    };
    let Some(gp) = flags.get("--graph") else {
        return usage_error("mu-width needs --graph");
    };
    let parsed = (|| -> Result<_, String> {
        let g = io::parse_gr(&read_file(gp)?).map_err(|e| e.to_string())?;
        let td = match flags.get("--td") {
            Some(tp) => io::parse_td(&read_file(tp)?).map_err(|e| e.to_string())?,
            None => imtw::treedec::TreeDecomposition::single_bag(g.vertex_set()),
        };
        Ok((g, td))
    })();
    match parsed {
        Err(e) => data_error(&e),
        Ok((g, td)) => {
            let report = validate(&g, &td);
            if !report.is_valid() {
                return data_error(&format!("decomposition invalid: {report}"));
            }
            match mu_width(&g, &td, &Guards::default()) {
                Ok(mu) => {
                    println!("mu-width {mu}");
                    EXIT_OK
                }
                Err(e) => internal_error(&e.to_string()),
            }
        }
    }
}

fn cmd_selfcheck(args: &[String]) -> i32 {
    let flags = match parse_flags(args, &["--seed", "--budget"], &[]) {
        Ok(f) => f,
        Err(e) => return usage_error(&e),
    };
    let seed: u64 = match flags.get("--seed").map(str::parse).transpose() {
        Ok(s) => s.unwrap_or(1),
        Err(_) => return usage_error("--seed must be an integer"),
    };
    let budget: usize = match flags.get("--budget").map(str::parse).transpose() {
        Ok(b) => b.unwrap_or(40),
        Err(_) => return usage_error("--budget must be an integer"),
    };
    let report = selfcheck(seed, budget);
    print!("{report}");
    if report.all_passed() {
        EXIT_OK
    } else {
        1
    }
}

fn usage_error(msg: &str) -> i32 {
    eprintln!("error: {msg}");
    eprintln!("{USAGE}");
    EXIT_USAGE
}

fn data_error(msg: &str) -> i32 {
    eprintln!("error: {msg}");
    EXIT_DATA
}

fn internal_error(msg: &str) -> i32 {
    eprintln!("internal error: {msg}");
    EXIT_INTERNAL
}
