use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use klreg_core::ideals::{self, Support};
use klreg_core::ladder::{self, Ladder, LadderSpec};
use klreg_core::oracle::{self, Moves};
use klreg_core::perm::Permutation;
use klreg_core::{zip, Error};

#[derive(Parser)]
#[command(
    name = "klreg",
    version,
    about = "Regularity of 321-avoiding Kazhdan-Lusztig and ladder determinantal varieties"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Budget {
    /// Cap on diagrams / search nodes for brute-force checks.
    #[arg(long, env = "KLREG_BUDGET", default_value_t = oracle::DEFAULT_BUDGET)]
    budget: usize,
}

#[derive(Subcommand)]
enum Command {
    /// A pair w <= v of 321-avoiding permutations.
    Pair {
        #[arg(long)]
        v: String,
        #[arg(long)]
        w: String,
        #[arg(long)]
        render: bool,
        #[arg(long)]
        oracle: bool,
        #[arg(long)]
        recurrence: bool,
        #[command(flatten)]
        budget: Budget,
    },
    /// A two-sided mixed ladder read from JSON.
    Ladder {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        render: bool,
        #[arg(long)]
        oracle: bool,
        /// Write both ideals as a Macaulay2 script.
        #[arg(long)]
        export_ideal: Option<PathBuf>,
        #[command(flatten)]
        budget: Budget,
    },
    /// Compare the three degree computations over S_n.
    Sweep {
        #[arg(long)]
        n: usize,
        /// Random pairs on top of the exhaustive list (0 = exhaustive only).
        #[arg(long, default_value_t = 0)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        no_exhaustive: bool,
        #[command(flatten)]
        budget: Budget,
    },
}

enum Failure {
    Core(Error),
    Io(String),
    Disagree(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) => 2,
        Error::Resource { .. } => 4,
        Error::Range(_)
        | Error::Validation(_)
        | Error::Containment(..)
        | Error::IncomparablePair(..)
        | Error::Pattern(_)
        | Error::InconsistentConstraints(_)
        | Error::Pairing(_)
        | Error::Infeasible(_)
        | Error::Membership(_)
        | Error::MoveNotApplicable(_) => 3,
        _ => 1,
    }
}

fn parse_perm(s: &str) -> Result<Permutation, Failure> {
    s.parse::<Permutation>().map_err(|e| match e {
        Error::Parse(_) => Failure::Core(e),
        other => Failure::Core(Error::Parse(other.to_string())),
    })
}

fn verdict(agree: bool) -> &'static str {
    if agree {
        "AGREE"
    } else {
        "DISAGREE"
    }
}

fn render_pair(z: &zip::ZipResult) -> Value {
    let k = &z.d_zip_k;
    json!({
        "d_top": z.top.render(),
        "d_zip": z.d_zip.render(),
        "d_zip_k": k.render_with(|c| match (z.d_zip.pluses.contains(c), k.pluses.contains(c)) {
            (true, _) => '+',
            (false, true) => 'K',
            _ => '.',
        }),
    })
}

fn pair(
    v: &str,
    w: &str,
    render: bool,
    with_oracle: bool,
    recurrence: bool,
    budget: usize,
) -> Result<Value, Failure> {
    let (v, w) = (parse_perm(v)?, parse_perm(w)?);
    if v.n() != w.n() {
        return Err(
            Error::Validation(format!("v has size {} but w has size {}", v.n(), w.n())).into(),
        );
    }
    let z = zip::zip(&v, &w)?;
    let mut out = json!({
        "v": v,
        "w": w,
        "ell_v": z.ell_v,
        "ell_w": z.ell_w,
        "groth_degree": z.degree,
        "regularity": z.regularity,
        "a_invariant": z.a_invariant,
        "room_sums": z.room_sums,
        "components": z.components.len(),
    });
    if recurrence {
        out["recurrence_degree"] = json!(zip::groth_degree_recursive(&v, &w)?);
    }
    if render {
        out["render"] = render_pair(&z);
    }
    if with_oracle {
        let closure = oracle::closure(&v, &w, budget, Moves::Full)?;
        let ne = oracle::d_ne_agrees(&v, &w, budget)?;
        let agree = closure.max_size() == z.degree && ne;
        out["oracle"] = json!({
            "closure_size": closure.len(),
            "closure_max": closure.max_size(),
            "d_ne_matches_search": ne,
            "verdict": verdict(agree),
        });
        if !agree {
            return Err(Failure::Disagree(out));
        }
    }
    Ok(out)
}

fn load_ladder(path: &PathBuf) -> Result<Ladder, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    let spec: LadderSpec = serde_json::from_str(&text)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    Ok(Ladder::try_from(spec)?)
}

fn ladder_cmd(
    file: &PathBuf,
    render: bool,
    with_oracle: bool,
    export: Option<&PathBuf>,
    budget: usize,
) -> Result<Value, Failure> {
    let l = load_ladder(file)?;
    let r = ladder::analyze(&l)?;
    let mut out = json!({
        "v": r.v,
        "w": r.w,
        "n": l.n(),
        "cells": r.cells,
        "ell_v": r.zip.ell_v,
        "ell_w": r.zip.ell_w,
        "groth_degree": r.zip.degree,
        "weight": r.weight,
        "elbows": r.elbows.len(),
        "regularity": r.regularity,
        "a_invariant": r.a_invariant,
        "boundary": r.boundary,
        "minimality": r.minimality,
    });
    if render {
        out["render"] = json!({
            "p_bot": r.p_bot.render(&l),
            "p_zip": r.p_zip.render(&l),
        });
    }
    if let Some(path) = export {
        let kl = ideals::kl_generators(&r.v, &r.w)?;
        let lad = ideals::ladder_generators_with(&l, Support::Inside)?;
        let script = format!(
            "-- ladder ideal I and Kazhdan-Lusztig ideal J, variables z_i_j on the ladder\n{}\nJ = ideal(\n{}\n);\nI == J\n",
            ideals::export_m2(&lad),
            kl.iter().map(|p| format!("  {}", p.to_m2())).collect::<Vec<_>>().join(",\n"),
        );
        std::fs::write(path, script)
            .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
        out["exported"] = json!({ "ladder_generators": lad.len(), "kl_generators": kl.len() });
    }
    if with_oracle {
        let families = oracle::enumerate_nilp(&l, budget)?;
        let excited = oracle::closure(&r.v, &r.w, budget, Moves::ExcitedOnly)?;
        let agree = r.regularity == r.zip.regularity
            && r.a_invariant == r.zip.a_invariant
            && families.len() == excited.len();
        out["oracle"] = json!({
            "zip_regularity": r.zip.regularity,
            "zip_a_invariant": r.zip.a_invariant,
            "nilp_families": families.len(),
            "excited_closure": excited.len(),
            "verdict": verdict(agree),
        });
        if !agree {
            return Err(Failure::Disagree(out));
        }
    }
    Ok(out)
}

fn sweep(
    n: usize,
    samples: usize,
    seed: u64,
    exhaustive: bool,
    budget: usize,
) -> Result<Value, Failure> {
    if n == 0 {
        return Err(Error::Validation("n must be positive".into()).into());
    }
    let mut pairs = if exhaustive {
        oracle::all_pairs(n)
    } else {
        Vec::new()
    };
    pairs.extend(oracle::random_pairs(n, samples, seed));
    let report = oracle::sweep(&pairs, budget)?;
    let out = json!({
        "n": n,
        "checked": report.checked,
        "disagreements": report.disagreements,
        "verdict": verdict(report.disagreements.is_empty()),
    });
    if report.disagreements.is_empty() {
        Ok(out)
    } else {
        Err(Failure::Disagree(out))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Pair {
            v,
            w,
            render,
            oracle,
            recurrence,
            budget,
        } => pair(v, w, *render, *oracle, *recurrence, budget.budget),
        Command::Ladder {
            file,
            render,
            oracle,
            export_ideal,
            budget,
        } => ladder_cmd(file, *render, *oracle, export_ideal.as_ref(), budget.budget),
        Command::Sweep {
            n,
            samples,
            seed,
            no_exhaustive,
            budget,
        } => sweep(*n, *samples, *seed, !no_exhaustive, budget.budget),
    };
    match result {
        Ok(v) => {
            println!(
                "{}",
                serde_json::to_string_pretty(&v).expect("json values serialize")
            );
            ExitCode::SUCCESS
        }
        Err(Failure::Disagree(v)) => {
            println!(
                "{}",
                serde_json::to_string_pretty(&v).expect("json values serialize")
            );
            ExitCode::from(5)
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
