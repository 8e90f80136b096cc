//! `dlhom`: solve, check, reduce, generate and verify deletion list
//! homomorphism instances from JSON files.
//!
//! Exit codes: 0 yes, 1 no, 2 bad input, 3 internal failure.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::json;

use dlhom_core::chainsat::{
    reduce_cdcs_to_vdcs, reduce_fs_to_vdcs, reduce_vdcs_to_cdcs, reduce_vdcs_to_fsfc, CdcsInstance, VdcsInstance,
};
use dlhom_core::encode::{encode_multiway_cut, encode_oct, encode_vertex_cover};
use dlhom_core::fsfc::{solve_fsfc, FsfcInstance};
use dlhom_core::generate::{gen_random, GenSpec};
use dlhom_core::instance::{verify_solution, DeletionSolution, DlhomInstance, GraphFile, InstanceFile, TargetFile, WitnessFile};
use dlhom_core::lhom::solve_exact_oracle;
use dlhom_core::pipeline::solve_dlhom;
use dlhom_core::target::{check_forbidden, skew_decompose, ArcRepresentation, ForbiddenKind};

#[derive(Parser)]
#[command(name = "dlhom", version, about = "Deletion list homomorphism toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide an instance and print the minimum deletion set if one fits.
    Solve {
        instance: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Pipeline)]
        method: Method,
        /// Write the deletion set and homomorphism here on a yes answer.
        #[arg(long)]
        emit_witness: Option<PathBuf>,
    },
    /// Report whether a target is bipartite and skew decomposable.
    CheckTarget { target: PathBuf },
    /// Translate between problems.
    Reduce {
        #[arg(value_enum)]
        kind: ReductionKind,
        input: PathBuf,
        output: PathBuf,
    },
    /// Write a seeded random instance. `DLHOM_SEED` overrides the seed.
    Gen { spec: PathBuf, output: PathBuf },
    /// Check a witness against an instance.
    Verify { instance: PathBuf, witness: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    /// Exhaustive search over deletion sets.
    Oracle,
    /// Compression pipeline; needs a skew decomposable target.
    Pipeline,
    /// Fixed-side fixed-component solver; needs such lists.
    Fsfc,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReductionKind {
    VdcsToCdcs,
    CdcsToVdcs,
    VdcsToFsfc,
    FsToVdcs,
    Vc,
    Oct,
    Multiway,
}

/// Why a run stopped without an answer.
enum Failure {
    Input(anyhow::Error),
    Internal(anyhow::Error),
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Input(e.into())
    }
}

type Outcome = Result<bool, Failure>;

#[derive(Deserialize)]
struct GraphInput {
    graph: GraphFile,
    k: usize,
    #[serde(default)]
    terminals: Vec<usize>,
}

#[derive(Deserialize)]
struct FsInput {
    instance: InstanceFile,
    representation: ArcRepresentation,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::from(0),
        Ok(false) => ExitCode::from(1),
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(e)) => {
            eprintln!("internal error: {e:#}");
            ExitCode::from(3)
        }
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Solve { instance, method, emit_witness } => solve(&instance, method, emit_witness.as_deref()),
        Command::CheckTarget { target } => check_target(&target),
        Command::Reduce { kind, input, output } => reduce(kind, &input, &output),
        Command::Gen { spec, output } => gen(&spec, &output),
        Command::Verify { instance, witness } => verify(&instance, &witness),
    }
}

fn read_json<T: DeserializeOwned>(path: &Path) -> anyhow::Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Failure::Internal(e.into()))?;
    fs::write(path, text + "\n").with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

fn load_instance(path: &Path) -> Result<DlhomInstance, Failure> {
    let file: InstanceFile = read_json(path)?;
    file.into_instance()
        .map_err(|report| Failure::Input(anyhow!("invalid instance {}: {report}", path.display())))
}

fn solve(path: &Path, method: Method, witness: Option<&Path>) -> Outcome {
    let inst = load_instance(path)?;
    let found = match method {
        Method::Oracle => solve_exact_oracle(&inst),
        Method::Pipeline => solve_dlhom(&inst)?,
        Method::Fsfc => {
            let tree = skew_decompose(&inst.target).ok_or_else(|| anyhow!("target is not skew decomposable"))?;
            solve_fsfc(&FsfcInstance::new(inst.clone(), tree)?)
        }
    };
    let Some(sol) = found else {
        println!("{}", json!({ "answer": "no", "k": inst.k }));
        return Ok(false);
    };
    verify_solution(&inst, &sol).map_err(|v| Failure::Internal(anyhow!("solver produced an invalid witness: {v}")))?;
    println!("{}", json!({ "answer": "yes", "k": inst.k, "deleted": sol.deleted }));
    if let Some(out) = witness {
        write_json(out, &sol.to_file())?;
    }
    Ok(true)
}

fn check_target(path: &Path) -> Outcome {
    let file: TargetFile = read_json(path)?;
    let h = match file.to_target() {
        Ok(h) => h,
        Err(e) => {
            println!("{}", json!({ "bipartite": false, "reason": e.to_string() }));
            return Ok(false);
        }
    };
    let check = check_forbidden(&h);
    let witness = check.witness.map(|w| {
        let kind = match w.kind {
            ForbiddenKind::P6 => "P6",
            ForbiddenKind::C6 => "C6",
        };
        json!({ "kind": kind, "vertices": w.vertices })
    });
    let tree = skew_decompose(&h);
    if tree.is_some() != check.decomposable_candidate {
        return Err(Failure::Internal(anyhow!("decomposition and forbidden subgraph search disagree")));
    }
    let decomposable = tree.is_some();
    println!(
        "{}",
        serde_json::to_string_pretty(&json!({
            "bipartite": true,
            "decomposable": decomposable,
            "witness": witness,
            "tree": tree,
        }))
        .map_err(|e| Failure::Internal(e.into()))?
    );
    Ok(decomposable)
}

fn reduce(kind: ReductionKind, input: &Path, output: &Path) -> Outcome {
    match kind {
        ReductionKind::VdcsToCdcs => {
            let raw: CdcsInstance = read_json(input)?;
            let inst = VdcsInstance::new(raw.formula, raw.k)?;
            write_json(output, &reduce_vdcs_to_cdcs(&inst))?;
        }
        ReductionKind::CdcsToVdcs => {
            let raw: CdcsInstance = read_json(input)?;
            let inst = CdcsInstance::new(raw.formula, raw.k)?;
            write_json(output, &reduce_cdcs_to_vdcs(&inst))?;
        }
        ReductionKind::VdcsToFsfc => {
            let raw: CdcsInstance = read_json(input)?;
            let inst = VdcsInstance::new(raw.formula, raw.k)?;
            write_json(output, &reduce_vdcs_to_fsfc(&inst).instance.to_file())?;
        }
        ReductionKind::FsToVdcs => {
            let raw: FsInput = read_json(input)?;
            let inst = raw
                .instance
                .into_instance()
                .map_err(|report| anyhow!("invalid instance: {report}"))?;
            let img = reduce_fs_to_vdcs(
                &inst.graph,
                inst.lists.as_slice(),
                &inst.target,
                &raw.representation,
                inst.k,
            )?;
            write_json(output, &img.vdcs)?;
        }
        ReductionKind::Vc | ReductionKind::Oct | ReductionKind::Multiway => {
            let raw: GraphInput = read_json(input)?;
            let g = raw.graph.to_graph()?;
            let enc = match kind {
                ReductionKind::Vc => encode_vertex_cover(&g, raw.k),
                ReductionKind::Oct => encode_oct(&g, raw.k),
                _ => encode_multiway_cut(&g, &raw.terminals, raw.k)?,
            };
            write_json(output, &enc.instance.to_file())?;
        }
    }
    Ok(true)
}

fn gen(spec_path: &Path, output: &Path) -> Outcome {
    let mut spec: GenSpec = read_json(spec_path)?;
    if let Ok(seed) = std::env::var("DLHOM_SEED") {
        spec.seed = seed.trim().parse().with_context(|| format!("DLHOM_SEED={seed:?} is not a u64"))?;
    }
    write_json(output, &gen_random(&spec)?.to_file())?;
    Ok(true)
}

fn verify(instance: &Path, witness: &Path) -> Outcome {
    let inst = load_instance(instance)?;
    let file: WitnessFile = read_json(witness)?;
    let checked = DeletionSolution::from_file(&file, inst.graph.vertex_count())
        .and_then(|sol| verify_solution(&inst, &sol).map(|()| sol));
    match checked {
        Ok(sol) => {
            println!("{}", json!({ "valid": true, "deleted": sol.deleted }));
            Ok(true)
        }
        Err(v) => {
            println!("{}", json!({ "valid": false, "violation": v.to_string() }));
            Ok(false)
        }
    }
}
