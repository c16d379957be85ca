//! Command-line front end. Every verb that writes a file writes it
//! atomically; every verb is deterministic for fixed inputs and seeds.
//!
//! Exit codes: 0 success, 1 internal failure, 2 usage error, 3 I/O error,
//! 4 infeasible constraints, 5 invalid input.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::align::{AlignError, ObjectiveSpec, Role};
use crate::io::{
    load_scene_str, read_text, render_svg, sha256_hex, to_json, write_atomic, Artifact, ExtractFile,
    FunctionRegionRecord, InputRecord, IoError, PriorFile, ResultFile, EXTRACT_FORMAT, PRIOR_FORMAT, RESULT_FORMAT,
    RESULT_VERSION,
};
use crate::pipeline::{
    align_stage, finish, load_rooms, read_result, regenerate, Aligned, NamedInput, PipelineConfig, PipelineError,
    PipelineInputs, PipelineOutput, PostConfig, SearchConfig, SynthConfig, TemplateChoice,
};
use crate::scene::{build_scene_graphs, extract_function_regions, extract_walkable, CategoryTable, FunctionClass};
use crate::synth::{train_prior_scorer, SynthError};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILURE: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_IO: u8 = 3;
pub const EXIT_INFEASIBLE: u8 = 4;
pub const EXIT_INVALID: u8 = 5;

#[derive(Debug, Parser)]
#[command(name = "mss", version, about = "Mutual space alignment and mutual scene synthesis")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Function regions and scene graphs of one scene file.
    Extract(ExtractArgs),
    /// Search rigid alignments that maximize mutual function space.
    Align(AlignArgs),
    /// Remove narrow parts of a solution's mutual region.
    Simplify(SimplifyArgs),
    /// Fit the largest scaled activity shape into a solution's mutual region.
    Inscribe(InscribeArgs),
    /// Build the shared virtual scene for one solution.
    Synth(SynthArgs),
    /// Exhaustive alignment search over the full lattice (two or three rooms).
    Oracle(OracleArgs),
    /// Draw a scene file or result file as SVG.
    Render(RenderArgs),
    /// Learn a placement prior from example scenes.
    TrainPrior(TrainPriorArgs),
    /// Align, optionally post-process, and synthesize in one go.
    Run(RunArgs),
    /// Re-run a result file from its recorded inputs and configuration.
    Regenerate(RegenerateArgs),
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// File to write.
    #[arg(short, long)]
    pub output: PathBuf,
    /// Also draw the result as SVG here.
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ExtractArgs {
    pub scene: String,
    #[command(flatten)]
    pub out: OutputArgs,
}

fn parse_objective(s: &str) -> Result<(FunctionClass, f64), String> {
    let (class, weight) = match s.split_once(':') {
        Some((c, w)) => (c, w.trim().parse::<f64>().map_err(|e| format!("weight `{w}`: {e}"))?),
        None => (s, 1.0),
    };
    Ok((class.parse().map_err(|e| format!("{e}"))?, weight))
}

fn parse_constraint(s: &str) -> Result<(FunctionClass, f64), String> {
    let (class, area) = s.split_once(">=").ok_or_else(|| format!("expected CLASS>=AREA, got `{s}`"))?;
    Ok((
        class.parse().map_err(|e| format!("{e}"))?,
        area.trim().parse::<f64>().map_err(|e| format!("area `{area}`: {e}"))?,
    ))
}

#[derive(Debug, Args)]
pub struct ObjectiveArgs {
    /// Class to maximize, optionally weighted: `walkable`, `sittable:2`.
    /// Repeatable; defaults to `walkable`.
    #[arg(long = "objective", value_name = "CLASS[:WEIGHT]", value_parser = parse_objective)]
    pub objectives: Vec<(FunctionClass, f64)>,
    /// Minimum mutual area for a class: `sittable>=1.0`. Repeatable.
    #[arg(long = "constraint", value_name = "CLASS>=AREA", value_parser = parse_constraint)]
    pub constraints: Vec<(FunctionClass, f64)>,
    /// Maximize one weighted sum instead of a Pareto front.
    #[arg(long)]
    pub weighted_sum: bool,
}

impl ObjectiveArgs {
    pub fn spec(&self) -> ObjectiveSpec {
        let mut roles = std::collections::BTreeMap::new();
        if self.objectives.is_empty() {
            roles.insert(FunctionClass::Walkable, Role::Maximize { weight: 1.0 });
        }
        for &(c, weight) in &self.objectives {
            roles.insert(c, Role::Maximize { weight });
        }
        for &(c, min_area) in &self.constraints {
            roles.insert(c, Role::Constraint { min_area });
        }
        ObjectiveSpec {
            roles,
            weighted_sum: self.weighted_sum,
        }
    }
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    /// Population size.
    #[arg(long, default_value_t = 100)]
    pub pop: usize,
    /// Generations.
    #[arg(long, default_value_t = 80)]
    pub gens: usize,
    /// Chance an offspring is mutated.
    #[arg(long, default_value_t = 0.10)]
    pub mp: f64,
    /// Fraction of a mutated offspring's genes that change.
    #[arg(long, default_value_t = 0.50)]
    pub mr: f64,
    /// Crossover rate.
    #[arg(long, default_value_t = 0.80)]
    pub cr: f64,
    /// Translation step, meters.
    #[arg(long, default_value_t = 0.1)]
    pub tstep: f64,
    /// Rotation step, degrees.
    #[arg(long, default_value_t = 15.0)]
    pub rstep: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Largest centroid offset per axis, meters (default: from room sizes).
    #[arg(long)]
    pub bounds: Option<f64>,
}

impl SearchArgs {
    pub fn config(&self) -> SearchConfig {
        SearchConfig::Evolutionary {
            population: self.pop,
            generations: self.gens,
            mutation_probability: self.mp,
            mutation_rate: self.mr,
            crossover_rate: self.cr,
            translation_step: self.tstep,
            rotation_step_deg: self.rstep,
            seed: self.seed,
            translation_bounds: self.bounds,
        }
    }
}

#[derive(Debug, Args)]
pub struct AlignArgs {
    /// Two or more scene files.
    #[arg(required = true, num_args = 2..)]
    pub scenes: Vec<String>,
    #[command(flatten)]
    pub objective: ObjectiveArgs,
    #[command(flatten)]
    pub search: SearchArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct PostTarget {
    /// Solution to post-process.
    #[arg(long, default_value_t = 0)]
    pub solution: usize,
    /// Mutual region class to post-process.
    #[arg(long, default_value = "walkable", value_parser = parse_class)]
    pub class: FunctionClass,
}

fn parse_class(s: &str) -> Result<FunctionClass, String> {
    s.parse().map_err(|e| format!("{e}"))
}

#[derive(Debug, Args)]
pub struct SimplifyArgs {
    /// Result file of `align`, `oracle` or a later stage.
    pub result: PathBuf,
    /// Opening radius, meters: parts narrower than twice this go.
    #[arg(long)]
    pub eps: f64,
    #[command(flatten)]
    pub target: PostTarget,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct InscribeArgs {
    pub result: PathBuf,
    /// `square`, `circle`, or a template file.
    #[arg(long)]
    pub template: String,
    /// Scale the template equally along both axes.
    #[arg(long)]
    pub uniform_scale: bool,
    #[command(flatten)]
    pub target: PostTarget,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SynthOptions {
    /// Room function of the virtual room (default: most common input).
    #[arg(long)]
    pub room_function: Option<String>,
    /// Re-ranking pool size; 1 places the plain best candidate.
    #[arg(long, default_value_t = 10)]
    pub n: usize,
    /// Stop a category once no candidate scores above this.
    #[arg(long, default_value_t = 0.3)]
    pub tau: f64,
    /// Candidate grid step, meters.
    #[arg(long, default_value_t = 0.1)]
    pub grid: f64,
    /// Candidate yaw step, degrees.
    #[arg(long, default_value_t = 15.0)]
    pub yaw_step: f64,
    /// Pareto solution to furnish.
    #[arg(long, conflicts_with = "auto_first")]
    pub solution: Option<usize>,
    /// Furnish the first Pareto solution.
    #[arg(long)]
    pub auto_first: bool,
    /// Prior file from `train-prior` (default: learned from the inputs).
    #[arg(long)]
    pub prior: Option<String>,
    /// Most objects to synthesize.
    #[arg(long, default_value_t = 20)]
    pub max_objects: usize,
    /// Place the plain best-scoring candidate, without re-ranking.
    #[arg(long)]
    pub no_rerank: bool,
    /// Smallest mutual component (m²) that receives furniture.
    #[arg(long, default_value_t = crate::synth::MIN_MUTUAL_AREA)]
    pub min_mutual_area: f64,
}

impl SynthOptions {
    fn config(&self, solution: usize, seed: u64) -> SynthConfig {
        SynthConfig {
            solution,
            room_function: self.room_function.clone(),
            n: self.n,
            tau: self.tau,
            grid: self.grid,
            yaw_step_deg: self.yaw_step,
            seed,
            max_objects: self.max_objects,
            rerank: !self.no_rerank,
            min_mutual_area: self.min_mutual_area,
            prior: self.prior.clone(),
        }
    }
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    pub result: PathBuf,
    #[command(flatten)]
    pub synth: SynthOptions,
    /// Seed for the candidate grid offset and room-function ties.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    /// Two or three scene files.
    #[arg(required = true, num_args = 2..=3)]
    pub scenes: Vec<String>,
    #[arg(long, default_value_t = 0.1)]
    pub tstep: f64,
    /// Degrees.
    #[arg(long, default_value_t = 15.0)]
    pub rstep: f64,
    #[arg(long)]
    pub bounds: Option<f64>,
    /// Refuse grids with more lattice points than this.
    #[arg(long, default_value_t = crate::align::ORACLE_BUDGET)]
    pub budget: u64,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum View {
    /// The synthetic scene if the result has one, else the solutions.
    Auto,
    Solutions,
    Scene,
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    /// Scene file or result file.
    pub artifact: PathBuf,
    #[arg(short, long)]
    pub output: PathBuf,
    #[arg(long, value_enum, default_value_t = View::Auto)]
    pub view: View,
}

#[derive(Debug, Args)]
pub struct TrainPriorArgs {
    #[arg(required = true)]
    pub scenes: Vec<String>,
    #[arg(short, long)]
    pub output: PathBuf,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[arg(required = true, num_args = 2..)]
    pub scenes: Vec<String>,
    #[command(flatten)]
    pub objective: ObjectiveArgs,
    #[command(flatten)]
    pub search: SearchArgs,
    /// Simplify the chosen mutual walkable region with this radius.
    #[arg(long)]
    pub eps: Option<f64>,
    /// Inscribe `square`, `circle` or a template file.
    #[arg(long)]
    pub template: Option<String>,
    #[arg(long)]
    pub uniform_scale: bool,
    #[command(flatten)]
    pub synth: SynthOptions,
    /// Synthesis seed (default: the search seed).
    #[arg(long)]
    pub synth_seed: Option<u64>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct RegenerateArgs {
    pub result: PathBuf,
    /// Where to write the regenerated result (default: only compare).
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

/// A failure with its exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<IoError> for CliError {
    fn from(e: IoError) -> Self {
        let code = if e.is_io() { EXIT_IO } else { EXIT_INVALID };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

fn infeasible_report(best_violation: f64, shortfalls: &std::collections::BTreeMap<FunctionClass, f64>) -> String {
    let mut s = format!("infeasible: no alignment met the constraints; smallest total shortfall {best_violation:.4} m²");
    for (class, short) in shortfalls {
        s.push_str(&format!("\n  {class}: {short:.4} m² short of its minimum"));
    }
    s
}

impl From<PipelineError> for CliError {
    fn from(e: PipelineError) -> Self {
        let message = e.to_string();
        let code = match &e {
            PipelineError::Io(io) => return io_error(io, message),
            PipelineError::Align(AlignError::Infeasible {
                best_violation,
                shortfalls,
            }) => {
                return Self {
                    code: EXIT_INFEASIBLE,
                    message: infeasible_report(*best_violation, shortfalls),
                }
            }
            PipelineError::Align(AlignError::Geometry(_)) => EXIT_FAILURE,
            PipelineError::Align(_) => EXIT_INVALID,
            PipelineError::Synth(SynthError::EmptyCorpus) => EXIT_INVALID,
            PipelineError::Synth(_) | PipelineError::Geometry(_) => EXIT_FAILURE,
            PipelineError::Invalid(_) => EXIT_USAGE,
        };
        Self { code, message }
    }
}

fn io_error(e: &IoError, message: String) -> CliError {
    CliError {
        code: if e.is_io() { EXIT_IO } else { EXIT_INVALID },
        message,
    }
}

type CliResult = Result<String, CliError>;

fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    Ok(write_atomic(path, text.as_bytes())?)
}

fn write_output(out: &PipelineOutput, args: &OutputArgs) -> CliResult {
    write_text(&args.output, &to_json(&out.result))?;
    if let Some(svg) = &args.svg {
        match &out.scene {
            Some(scene) => render_svg(&Artifact::Scene(scene), svg)?,
            None => render_svg(
                &Artifact::Mutual {
                    rooms: &out.rooms,
                    result: &out.mutual,
                },
                svg,
            )?,
        }
    }
    let mut summary = format!("wrote {} ({} solution(s)", args.output.display(), out.result.solutions.len());
    if let Some(best) = out.result.solutions.first() {
        for (class, v) in &best.objective_values {
            summary.push_str(&format!("; first {class} {v:.4} m²"));
        }
    }
    if let Some(scene) = &out.scene {
        summary.push_str(&format!("; scene with {} objects", scene.objects.len()));
    }
    summary.push(')');
    Ok(summary)
}

fn solution_list(aligned: &Aligned) -> String {
    let mut s = String::new();
    for (i, sol) in aligned.mutual.solutions.iter().enumerate() {
        let vals: Vec<String> = sol.objective_values.iter().map(|(c, v)| format!("{c} {v:.4}")).collect();
        s.push_str(&format!("\n  {i}: {}", vals.join(", ")));
    }
    s
}

/// The solution index the user picked, or the only one there is.
fn pick_solution(opts: &SynthOptions, aligned: &Aligned) -> Result<usize, CliError> {
    let count = aligned.mutual.solutions.len();
    let index = match (opts.solution, opts.auto_first) {
        (Some(i), _) => i,
        (None, true) => 0,
        (None, false) if count == 1 => 0,
        (None, false) => {
            return Err(CliError::usage(format!(
                "the alignment has {count} Pareto solutions; choose one with --solution I or --auto-first:{}",
                solution_list(aligned)
            )))
        }
    };
    if index >= count {
        return Err(CliError::usage(format!("solution {index} does not exist ({count} solutions)")));
    }
    Ok(index)
}

fn extract(args: &ExtractArgs) -> CliResult {
    let table = CategoryTable::default();
    let input = NamedInput::read(&args.scene)?;
    let (rooms, _) = load_rooms(std::slice::from_ref(&input), &table)?;
    let room = &rooms[0];
    let mut regions = vec![extract_walkable(room)];
    for class in [FunctionClass::Sittable, FunctionClass::Workable] {
        regions.extend(extract_function_regions(room, class));
    }
    let prepared = crate::align::PreparedRoom::new(room);
    let file = ExtractFile {
        format: EXTRACT_FORMAT.into(),
        schema_version: RESULT_VERSION,
        input: InputRecord {
            role: "scene".into(),
            path: input.path.clone(),
            sha256: sha256_hex(&input.bytes),
        },
        room_id: room.id.clone(),
        areas: FunctionClass::ALL.iter().map(|&c| (c, prepared.region(c).area())).collect(),
        regions: regions.iter().map(FunctionRegionRecord::from_region).collect(),
        scene_graphs: build_scene_graphs(room),
    };
    write_text(&args.out.output, &to_json(&file))?;
    if let Some(svg) = &args.out.svg {
        render_svg(&Artifact::Room(room), svg)?;
    }
    Ok(format!("wrote {} ({} function regions)", args.out.output.display(), file.regions.len()))
}

fn align(args: &AlignArgs) -> CliResult {
    let cfg = PipelineConfig {
        search: args.search.config(),
        objective: args.objective.spec(),
        post: None,
        synth: None,
    };
    let inputs = PipelineInputs::read(&args.scenes, &cfg)?;
    let out = finish(align_stage(&inputs, &cfg)?, &inputs, &cfg)?;
    write_output(&out, &args.out)
}

/// A result file's configuration and inputs, for a later stage to extend.
fn previous(path: &Path) -> Result<(ResultFile, PipelineInputs), CliError> {
    let result = read_result(path)?;
    let inputs = PipelineInputs::for_result(&result)?;
    Ok((result, inputs))
}

fn post_config(prev: &Option<PostConfig>, target: &PostTarget) -> PostConfig {
    match prev {
        Some(p) if p.solution == target.solution && p.class == target.class => p.clone(),
        _ => PostConfig {
            solution: target.solution,
            class: target.class,
            eps: None,
            template: None,
            uniform_scale: false,
        },
    }
}

fn simplify(args: &SimplifyArgs) -> CliResult {
    let (result, inputs) = previous(&args.result)?;
    let mut cfg = result.config;
    let mut post = post_config(&cfg.post, &args.target);
    post.eps = Some(args.eps);
    cfg.post = Some(post);
    let out = finish(align_stage(&inputs, &cfg)?, &inputs, &cfg)?;
    write_output(&out, &args.out)
}

fn inscribe(args: &InscribeArgs) -> CliResult {
    let (result, mut inputs) = previous(&args.result)?;
    let mut cfg = result.config;
    let mut post = post_config(&cfg.post, &args.target);
    let choice = TemplateChoice::parse(&args.template);
    inputs.template = match &choice {
        TemplateChoice::File(p) => Some(NamedInput::read(p)?),
        _ => None,
    };
    post.template = Some(choice);
    post.uniform_scale = args.uniform_scale;
    cfg.post = Some(post);
    let out = finish(align_stage(&inputs, &cfg)?, &inputs, &cfg)?;
    write_output(&out, &args.out)
}

fn synth(args: &SynthArgs) -> CliResult {
    let (result, mut inputs) = previous(&args.result)?;
    let mut cfg = result.config;
    inputs.prior = args.synth.prior.as_deref().map(NamedInput::read).transpose()?;
    let aligned = align_stage(&inputs, &cfg)?;
    cfg.synth = Some(args.synth.config(pick_solution(&args.synth, &aligned)?, args.seed));
    let out = finish(aligned, &inputs, &cfg)?;
    write_output(&out, &args.out)
}

fn oracle(args: &OracleArgs) -> CliResult {
    let cfg = PipelineConfig {
        search: SearchConfig::Exhaustive {
            translation_step: args.tstep,
            rotation_step_deg: args.rstep,
            translation_bounds: args.bounds,
            budget: args.budget,
        },
        objective: ObjectiveSpec::maximize(FunctionClass::Walkable),
        post: None,
        synth: None,
    };
    let inputs = PipelineInputs::read(&args.scenes, &cfg)?;
    let out = finish(align_stage(&inputs, &cfg)?, &inputs, &cfg)?;
    write_output(&out, &args.out)
}

fn render(args: &RenderArgs) -> CliResult {
    let text = read_text(&args.artifact)?;
    let value: serde_json::Value = serde_json::from_str(&text).map_err(|e| IoError::syntax(&args.artifact, &e))?;
    let table = CategoryTable::default();
    if value.get("format").and_then(|f| f.as_str()) == Some(RESULT_FORMAT) {
        let result = read_result(&args.artifact)?;
        let scene_view = match args.view {
            View::Scene => true,
            View::Solutions => false,
            View::Auto => result.scene.is_some(),
        };
        if scene_view {
            let record = result
                .scene
                .as_ref()
                .ok_or_else(|| CliError::usage("the result has no synthetic scene; run `synth` first"))?;
            render_svg(&Artifact::Scene(&record.to_scene(&table)), &args.output)?;
        } else {
            let inputs = PipelineInputs::for_result(&result)?;
            let (rooms, _) = load_rooms(&inputs.scenes, &table)?;
            let mutual = result.mutual_result();
            render_svg(
                &Artifact::Mutual {
                    rooms: &rooms,
                    result: &mutual,
                },
                &args.output,
            )?;
        }
    } else {
        let loaded = load_scene_str(&text, &args.artifact, &table)?;
        render_svg(&Artifact::Room(&loaded.room), &args.output)?;
    }
    Ok(format!("wrote {}", args.output.display()))
}

fn train_prior(args: &TrainPriorArgs) -> CliResult {
    let table = CategoryTable::default();
    let inputs: Vec<NamedInput> = args.scenes.iter().map(|p| NamedInput::read(p)).collect::<Result<_, _>>()?;
    let (rooms, _) = load_rooms(&inputs, &table)?;
    let prior = train_prior_scorer(&rooms).map_err(|e| PipelineError::from(e))?;
    let file = PriorFile {
        format: PRIOR_FORMAT.into(),
        schema_version: RESULT_VERSION,
        inputs: inputs
            .iter()
            .map(|i| InputRecord {
                role: "scene".into(),
                path: i.path.clone(),
                sha256: sha256_hex(&i.bytes),
            })
            .collect(),
        prior,
    };
    write_text(&args.output, &to_json(&file))?;
    Ok(format!("wrote {} ({} categories)", args.output.display(), file.prior.categories.len()))
}

fn run(args: &RunArgs) -> CliResult {
    let post = (args.eps.is_some() || args.template.is_some()).then(|| PostConfig {
        solution: args.synth.solution.unwrap_or(0),
        class: FunctionClass::Walkable,
        eps: args.eps,
        template: args.template.as_deref().map(TemplateChoice::parse),
        uniform_scale: args.uniform_scale,
    });
    let mut cfg = PipelineConfig {
        search: args.search.config(),
        objective: args.objective.spec(),
        post,
        synth: Some(args.synth.config(0, args.synth_seed.unwrap_or(args.search.seed))),
    };
    let inputs = PipelineInputs::read(&args.scenes, &cfg)?;
    let aligned = align_stage(&inputs, &cfg)?;
    let index = pick_solution(&args.synth, &aligned)?;
    if let Some(s) = cfg.synth.as_mut() {
        s.solution = index;
    }
    if let Some(p) = cfg.post.as_mut() {
        p.solution = index;
    }
    let out = finish(aligned, &inputs, &cfg)?;
    write_output(&out, &args.out)
}

fn regenerate_cmd(args: &RegenerateArgs) -> CliResult {
    let original_text = read_text(&args.result)?;
    let result = read_result(&args.result)?;
    let out = regenerate(&result)?;
    let text = to_json(&out.result);
    if let Some(path) = &args.output {
        write_text(path, &text)?;
    }
    if text == original_text {
        Ok(format!("{}: regenerated byte-identically", args.result.display()))
    } else {
        Err(CliError {
            code: EXIT_FAILURE,
            message: format!("{}: regenerated result differs from the file", args.result.display()),
        })
    }
}

/// Runs one parsed command; on success returns the summary line.
pub fn execute(cli: &Cli) -> Result<String, CliError> {
    match &cli.command {
        Command::Extract(a) => extract(a),
        Command::Align(a) => align(a),
        Command::Simplify(a) => simplify(a),
        Command::Inscribe(a) => inscribe(a),
        Command::Synth(a) => synth(a),
        Command::Oracle(a) => oracle(a),
        Command::Render(a) => render(a),
        Command::TrainPrior(a) => train_prior(a),
        Command::Run(a) => run(a),
        Command::Regenerate(a) => regenerate_cmd(a),
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run_args<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(&cli) {
        Ok(summary) => {
            println!("{summary}");
            EXIT_OK
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            e.code
        }
    }
}

/// Entry point of the `mss` binary. `MSS_LOG` sets the log filter
/// (e.g. `MSS_LOG=debug`).
pub fn main() -> ExitCode {
    let _ = env_logger::Builder::from_env(env_logger::Env::new().filter_or("MSS_LOG", "warn")).try_init();
    ExitCode::from(run_args(std::env::args_os()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::align::AlignmentConfig;
    use clap::CommandFactory;

    #[test]
    fn command_line_is_well_formed() {
        Cli::command().debug_assert();
    }

    #[test]
    fn objective_and_constraint_syntax() {
        assert_eq!(parse_objective("sittable:2").unwrap(), (FunctionClass::Sittable, 2.0));
        assert_eq!(parse_objective("walkable").unwrap(), (FunctionClass::Walkable, 1.0));
        assert_eq!(parse_constraint("sittable>=1.0").unwrap(), (FunctionClass::Sittable, 1.0));
        assert!(parse_constraint("sittable=1").is_err());
        assert!(parse_objective("flyable").is_err());
    }

    #[test]
    fn defaults_echo_the_library_defaults() {
        let cli = Cli::try_parse_from(["mss", "align", "a.json", "b.json", "-o", "r.json"]).unwrap();
        let Command::Align(a) = cli.command else { panic!() };
        assert_eq!(a.search.config(), SearchConfig::evolutionary(&AlignmentConfig::default()));
        assert_eq!(a.objective.spec(), ObjectiveSpec::default());
        let cli = Cli::try_parse_from(["mss", "synth", "r.json", "-o", "s.json"]).unwrap();
        let Command::Synth(s) = cli.command else { panic!() };
        assert_eq!(s.synth.config(0, s.seed), SynthConfig::default());
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run_args(["mss", "align", "only-one.json", "-o", "x"]), EXIT_USAGE);
        assert_eq!(run_args(["mss", "frobnicate"]), EXIT_USAGE);
    }

    #[test]
    fn missing_input_exits_3() {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().join("r.json");
        let code = run_args(["mss", "align", "/nonexistent/a.json", "/nonexistent/b.json", "-o", out.to_str().unwrap()]);
        assert_eq!(code, EXIT_IO);
        assert!(!out.exists());
    }
}
