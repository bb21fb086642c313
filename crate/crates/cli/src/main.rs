use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use tropkit::aut::{self, AutChain, AutParams, AutPublicKey};
use tropkit::classical::attack_trials;
use tropkit::kex::{self, KexParams};
use tropkit::sat::{self, DEFAULT_BUDGET};
use tropkit::symbolic::DEFAULT_MONOMIAL_CAP;
use tropkit::{fixtures, Error};

const CAP_ENV: &str = "TROPKIT_MONOMIAL_CAP";

#[derive(Parser, Debug)]
#[command(name = "tropkit", version, about = "Tropical algebra cryptography toolkit")]
struct Cli {
    /// Print machine-readable JSON instead of text
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Preset {
    Paper,
    Toy,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run one key exchange with polynomials in two public tropical matrices
    Kex {
        #[arg(long, value_enum, default_value = "paper")]
        preset: Preset,
        #[arg(long)]
        seed: u64,
    },
    /// Attack the same protocol over GL_k(F_p) and report the recovery rate
    ClassicalAttack {
        #[arg(long, default_value_t = 4)]
        k: usize,
        #[arg(long, default_value_t = 101)]
        p: u64,
        #[arg(long, default_value_t = 100)]
        trials: u32,
        #[arg(long)]
        seed: u64,
    },
    /// Generate an automorphism keypair and write both halves as JSON
    AutKeygen {
        #[arg(long, value_enum, default_value = "paper")]
        preset: Preset,
        /// Number of variables; defaults to the preset's
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out_pub: PathBuf,
        #[arg(long)]
        out_priv: PathBuf,
    },
    /// Encrypt an integer point with a public key
    AutEncrypt {
        #[arg(long = "pub")]
        public: PathBuf,
        /// Comma-separated integers, e.g. "3,-1,4"
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Decrypt a ciphertext point with a private key
    AutDecrypt {
        #[arg(long = "priv")]
        private: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Reduce a DIMACS CNF file to a tropical polynomial system
    SatReduce {
        file: PathBuf,
        /// Search the domain exhaustively for a solution
        #[arg(long)]
        solve: bool,
        #[arg(long, default_value = "0,1", allow_hyphen_values = true)]
        domain: String,
        /// Largest number of candidate points the search may visit
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
    },
    /// Check the built-in worked examples
    Selftest,
}

enum Failure {
    Usage(String),
    Op(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Op(e.to_string())
    }
}

type Outcome = Result<bool, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Op(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Kex { preset, seed } => cmd_kex(cli.json, *preset, *seed),
        Command::ClassicalAttack { k, p, trials, seed } => {
            let stats = attack_trials(*k, *p, *trials, *seed)?;
            if cli.json {
                emit(&json!({ "stats": stats, "success_rate": stats.success_rate() }));
            } else {
                println!("k={} p={} trials={}", stats.k, stats.p, stats.trials);
                println!("recovered={} wrong={} failed={}", stats.recovered, stats.wrong, stats.failed);
                println!("success_rate={:.4}", stats.success_rate());
            }
            Ok(true)
        }
        Command::AutKeygen { preset, n, seed, out_pub, out_priv } => {
            let base = match preset {
                Preset::Paper => AutParams::paper(*seed),
                Preset::Toy => AutParams::toy(*seed),
            };
            let params = AutParams {
                n: n.unwrap_or(base.n),
                monomial_cap: monomial_cap()?,
                ..base
            };
            let (pk, sk) = aut::keygen(&params)?;
            write_json(out_pub, &pk)?;
            write_json(out_priv, &sk)?;
            let summary = json!({
                "n": pk.n,
                "factors": sk.factors().len(),
                "max_monomials": pk.max_monomials(),
                "public_key": out_pub,
                "private_key": out_priv,
            });
            if cli.json {
                emit(&summary);
            } else {
                println!("n={} factors={} max_monomials={}", pk.n, sk.factors().len(), pk.max_monomials());
                println!("public key: {}", out_pub.display());
                println!("private key: {}", out_priv.display());
            }
            Ok(true)
        }
        Command::AutEncrypt { public, point } => {
            let pk: AutPublicKey = read_json(public)?;
            check_public_key(&pk)?;
            let s = parse_ints(point)?;
            let c = pk.encrypt(&s)?;
            print_point(cli.json, "ciphertext", &c);
            Ok(true)
        }
        Command::AutDecrypt { private, point } => {
            let sk: AutChain = read_json(private)?;
            let c = parse_ints(point)?;
            let s = aut::decrypt(&sk, &c)?;
            print_point(cli.json, "plaintext", &s);
            Ok(true)
        }
        Command::SatReduce { file, solve, domain, budget } => {
            cmd_sat(cli.json, file, *solve, domain, *budget)
        }
        Command::Selftest => {
            let checks = fixtures::run_all();
            let ok = checks.iter().all(|c| c.passed);
            if cli.json {
                emit(&json!({ "passed": ok, "checks": checks }));
            } else {
                for c in &checks {
                    let verdict = if c.passed { "PASS" } else { "FAIL" };
                    println!("{verdict} {}: expected {}, got {}", c.name, c.expected.replace('\n', "; "), c.actual.replace('\n', "; "));
                }
                println!("{}/{} checks passed", checks.iter().filter(|c| c.passed).count(), checks.len());
            }
            Ok(ok)
        }
    }
}

fn cmd_kex(as_json: bool, preset: Preset, seed: u64) -> Outcome {
    let params = match preset {
        Preset::Paper => KexParams::paper(seed),
        Preset::Toy => KexParams::toy(seed),
    };
    let t = kex::run_demo(&params)?;
    if as_json {
        emit(&json!({ "key_space_log10": params.key_space_log10(), "transcript": t }));
    } else {
        println!("n={} seed={}", params.n, seed);
        println!("key space ~ 10^{:.1}", params.key_space_log10());
        println!("shared key (Alice):\n{}", t.alice_key);
        println!("agreement={}", t.agreement);
    }
    Ok(t.agreement)
}

fn cmd_sat(as_json: bool, file: &Path, solve: bool, domain: &str, budget: u128) -> Outcome {
    let text = fs::read_to_string(file)
        .map_err(|e| Failure::Op(format!("reading {}: {e}", file.display())))?;
    let formula = sat::parse_dimacs(&text)?;
    let system = sat::reduce(&formula);
    let solution = if solve {
        let domain = parse_ints(domain)?;
        Some(sat::solve_tropical_brute(&system, &domain, budget)?)
    } else {
        None
    };
    if as_json {
        let mut out = json!({ "system": system });
        if let Some(sol) = &solution {
            out["solvable"] = json!(sol.is_some());
            out["solution"] = json!(sol);
            out["assignment"] = json!(sol.as_ref().and_then(|p| sat::project_assignment(p).ok()));
        }
        emit(&out);
    } else {
        print!("{system}");
        match solution {
            None => {}
            Some(None) => println!("unsolvable"),
            Some(Some(p)) => {
                let named: Vec<String> =
                    p.iter().enumerate().map(|(k, v)| format!("{}={v}", sat::unknown_name(k))).collect();
                println!("solvable: {}", named.join(" "));
                if let Ok(a) = sat::project_assignment(&p) {
                    let bits: Vec<&str> = a.iter().map(|&b| if b { "1" } else { "0" }).collect();
                    println!("assignment: {}", bits.join(" "));
                }
            }
        }
    }
    Ok(true)
}

fn monomial_cap() -> Result<usize, Failure> {
    match std::env::var(CAP_ENV) {
        Ok(v) => match v.trim().parse() {
            Ok(cap) if cap > 0 => Ok(cap),
            _ => Err(Failure::Usage(format!("{CAP_ENV} must be a positive integer, got {v:?}"))),
        },
        Err(_) => Ok(DEFAULT_MONOMIAL_CAP),
    }
}

fn check_public_key(pk: &AutPublicKey) -> Result<(), Failure> {
    if pk.coords.len() != pk.n || pk.coords.iter().any(|c| c.nvars() != pk.n) {
        return Err(Failure::Op(format!("public key does not have {} coordinates in {} variables", pk.n, pk.n)));
    }
    Ok(())
}

fn parse_ints(s: &str) -> Result<Vec<i64>, Failure> {
    s.split(',')
        .map(|t| t.trim().parse().map_err(|_| Failure::Usage(format!("not an integer: {t:?}"))))
        .collect()
}

fn print_point(as_json: bool, field: &str, p: &[i64]) {
    if as_json {
        emit(&json!({ field: p }));
    } else {
        let s: Vec<String> = p.iter().map(i64::to_string).collect();
        println!("{}", s.join(","));
    }
}

fn emit(value: &impl Serialize) {
    println!("{}", serde_json::to_string_pretty(value).expect("output is serializable"));
}

fn write_json(path: &Path, value: &impl Serialize) -> Result<(), Failure> {
    // Compact: a full-size public key runs to tens of thousands of monomials.
    let text = serde_json::to_string(value).expect("keys are serializable");
    fs::write(path, text + "\n").map_err(|e| Failure::Op(format!("writing {}: {e}", path.display())))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Op(format!("reading {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Op(format!("parsing {}: {e}", path.display())))
}
