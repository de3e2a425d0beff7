use std::io::{self, BufRead, IsTerminal, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use mdx_harness::dsl::{self, EvalError, EvalErrorKind, Interpreter, StmtKind};
use mdx_harness::generate::{GeneratorConfig, DEFAULT_SEED};
use mdx_harness::suites::{run_suite, Execution, RunOptions};

const OK: u8 = 0;
const IDENTITY_FAILED: u8 = 1;
const STRUCTURAL: u8 = 2;
const UNSUPPORTED: u8 = 3;

#[derive(Parser)]
#[command(
    name = "mdx",
    version,
    about = "Exact graded exterior calculus, multi-Courant brackets and multi-Poisson brackets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a `.mdx` script and print the results of its `print` and `assert` statements.
    Eval { script: PathBuf },
    /// Run an identity suite (or `all`) on seeded random inputs.
    Check(CheckArgs),
    /// Evaluate statements line by line; a bare expression is printed.
    Repl,
}

#[derive(clap::Args)]
struct CheckArgs {
    suite: String,
    #[arg(long, env = "MDX_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, default_value_t = 200)]
    trials: usize,
    #[arg(long)]
    dim: Option<usize>,
    #[arg(long)]
    ambient: Option<usize>,
    #[arg(long)]
    max_poly_degree: Option<u32>,
    /// Print the reports as JSON.
    #[arg(long)]
    json: bool,
    /// Run trials on one thread.
    #[arg(long)]
    sequential: bool,
    /// Negate the Schouten expansion sign in every trial (harness self-test).
    #[arg(long, hide = true)]
    mutate_schouten: bool,
}

fn error_code(e: &EvalError) -> u8 {
    match e.kind {
        EvalErrorKind::Structural => STRUCTURAL,
        EvalErrorKind::Unsupported => UNSUPPORTED,
    }
}

fn eval(path: &PathBuf) -> u8 {
    let src = match std::fs::read_to_string(path) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {}: {e}", path.display());
            return STRUCTURAL;
        }
    };
    let script = match dsl::parse(&src) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("{}:{e}", path.display());
            return STRUCTURAL;
        }
    };
    let mut interp = Interpreter::new();
    let mut code = OK;
    for stmt in &script.stmts {
        match interp.exec(stmt) {
            Ok(Some(out)) => {
                if out.failed() {
                    code = IDENTITY_FAILED;
                }
                println!("{out}");
            }
            Ok(None) => {}
            Err(e) => {
                eprintln!("{}:{e}", path.display());
                return error_code(&e);
            }
        }
    }
    code
}

fn check(args: &CheckArgs) -> u8 {
    let mut cfg = GeneratorConfig::with_seed(args.seed);
    if let Some(d) = args.dim {
        cfg.dim = d;
    }
    if let Some(n) = args.ambient {
        cfg.ambient = n;
    }
    if let Some(k) = args.max_poly_degree {
        cfg.max_poly_degree = k;
    }
    let opts = RunOptions {
        trials: args.trials,
        execution: if args.sequential {
            Execution::Sequential
        } else {
            Execution::Parallel
        },
        flip_schouten_sign: args.mutate_schouten,
    };
    let reports = match run_suite(&args.suite, &cfg, &opts) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return STRUCTURAL;
        }
    };
    if args.json {
        let text = if args.suite == "all" {
            serde_json::to_string_pretty(&reports)
        } else {
            serde_json::to_string_pretty(&reports[0])
        };
        println!("{}", text.expect("reports serialize"));
    } else {
        for r in &reports {
            print!("{}", r.render());
        }
        if reports.len() > 1 {
            let passed = reports.iter().filter(|r| r.passed).count();
            println!("{passed}/{} suites passed", reports.len());
        }
    }
    if reports.iter().all(|r| r.passed) {
        OK
    } else {
        IDENTITY_FAILED
    }
}

fn repl() -> u8 {
    let stdin = io::stdin();
    let interactive = stdin.is_terminal();
    let mut interp = Interpreter::new();
    let mut buffer = String::new();
    let mut code = OK;
    let prompt = |continuing: bool| {
        if interactive {
            print!("{}", if continuing { "...> " } else { "mdx> " });
            let _ = io::stdout().flush();
        }
    };
    prompt(false);
    for line in stdin.lock().lines() {
        let Ok(line) = line else { break };
        buffer.push_str(&line);
        buffer.push('\n');
        let trimmed = buffer.trim();
        if trimmed.is_empty() {
            buffer.clear();
            prompt(false);
            continue;
        }
        let parsed =
            dsl::parse(trimmed).or_else(|e| match dsl::parse_expr(trimmed.trim_end_matches(';')) {
                Ok(expr) => Ok(dsl::Script {
                    stmts: vec![dsl::Stmt {
                        kind: StmtKind::Print(expr),
                        pos: Default::default(),
                    }],
                }),
                Err(_) => Err(e),
            });
        match parsed {
            Ok(script) => {
                buffer.clear();
                for stmt in &script.stmts {
                    match interp.exec(stmt) {
                        Ok(Some(out)) => {
                            if out.failed() {
                                code = code.max(IDENTITY_FAILED);
                            }
                            println!("{out}");
                        }
                        Ok(None) => {}
                        Err(e) => {
                            println!("error: {e}");
                            code = code.max(error_code(&e));
                            break;
                        }
                    }
                }
                prompt(false);
            }
            Err(e) if e.at_end_of_input() => prompt(true),
            Err(e) => {
                buffer.clear();
                println!("error: {e}");
                code = code.max(STRUCTURAL);
                prompt(false);
            }
        }
    }
    if interactive {
        println!();
    }
    code
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match &cli.command {
        Command::Eval { script } => eval(script),
        Command::Check(args) => check(args),
        Command::Repl => repl(),
    };
    ExitCode::from(code)
}
