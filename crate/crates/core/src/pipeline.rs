//! The end-to-end chain — load scenes, align, post-process a mutual
//! region, synthesize — as one pure function of the input bytes and a
//! configuration. A result file embeds both (digests and the
//! configuration), so running the chain again reproduces it exactly.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::align::{
    alignment_lattice, brute_force_on, mutual_region, optimize_alignment, AlignError, AlignmentConfig, MutualResult,
    ObjectiveSpec, ParetoSolution, PreparedRoom, ORACLE_BUDGET,
};
use crate::geometry::{
    largest_inscribed_shape_with, simplify_region, ActivityTemplate, GeometryError, InscribeOptions, Region,
};
use crate::io::{
    load_scene_str, read_bytes, region_record, sha256_hex, InputRecord, InscribedRecord, IoError, PlacementRecord,
    PostRecord, PriorFile, ResultFile, SceneRecord, SimplifiedRecord, SolutionRecord, TemplateFile, PRIOR_FORMAT,
    RESULT_FORMAT, RESULT_VERSION,
};
use crate::scene::{CategoryTable, FunctionClass, Room};
use crate::synth::{
    augment_scene, initialize_scene, train_prior_scorer, AugmentConfig, InitConfig, PriorScorer, SynthError,
    SyntheticScene, MIN_MUTUAL_AREA,
};

#[derive(Debug, thiserror::Error)]
pub enum PipelineError {
    #[error(transparent)]
    Io(#[from] IoError),
    #[error(transparent)]
    Align(#[from] AlignError),
    #[error(transparent)]
    Synth(#[from] SynthError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    /// The request does not fit the data, e.g. a solution index out of range.
    #[error("{0}")]
    Invalid(String),
}

/// How the alignment lattice is searched.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum SearchConfig {
    Evolutionary {
        population: usize,
        generations: usize,
        mutation_probability: f64,
        mutation_rate: f64,
        crossover_rate: f64,
        translation_step: f64,
        rotation_step_deg: f64,
        seed: u64,
        #[serde(default)]
        translation_bounds: Option<f64>,
    },
    /// Full enumeration of the walkable objective (two or three rooms).
    Exhaustive {
        translation_step: f64,
        rotation_step_deg: f64,
        #[serde(default)]
        translation_bounds: Option<f64>,
        budget: u64,
    },
}

impl SearchConfig {
    pub fn evolutionary(cfg: &AlignmentConfig) -> Self {
        SearchConfig::Evolutionary {
            population: cfg.population,
            generations: cfg.generations,
            mutation_probability: cfg.mutation_probability,
            mutation_rate: cfg.mutation_rate,
            crossover_rate: cfg.crossover_rate,
            translation_step: cfg.translation_step,
            rotation_step_deg: crate::io::to_degrees(cfg.rotation_step),
            seed: cfg.seed,
            translation_bounds: cfg.translation_bounds,
        }
    }

    pub fn exhaustive() -> Self {
        let d = AlignmentConfig::default();
        SearchConfig::Exhaustive {
            translation_step: d.translation_step,
            rotation_step_deg: 15.0,
            translation_bounds: None,
            budget: ORACLE_BUDGET,
        }
    }

    /// The lattice settings as an [`AlignmentConfig`].
    pub fn alignment_config(&self) -> AlignmentConfig {
        match *self {
            SearchConfig::Evolutionary {
                population,
                generations,
                mutation_probability,
                mutation_rate,
                crossover_rate,
                translation_step,
                rotation_step_deg,
                seed,
                translation_bounds,
            } => AlignmentConfig {
                population,
                generations,
                mutation_probability,
                mutation_rate,
                crossover_rate,
                translation_step,
                rotation_step: rotation_step_deg.to_radians(),
                seed,
                translation_bounds,
            },
            SearchConfig::Exhaustive {
                translation_step,
                rotation_step_deg,
                translation_bounds,
                ..
            } => AlignmentConfig {
                translation_step,
                rotation_step: rotation_step_deg.to_radians(),
                translation_bounds,
                ..AlignmentConfig::default()
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TemplateChoice {
    Square,
    /// 64-gon.
    Circle,
    /// Path of a template file.
    File(String),
}

impl TemplateChoice {
    /// `square`, `circle`, or anything else as a file path.
    pub fn parse(s: &str) -> Self {
        match s {
            "square" => TemplateChoice::Square,
            "circle" => TemplateChoice::Circle,
            path => TemplateChoice::File(path.to_string()),
        }
    }

    pub fn label(&self) -> String {
        match self {
            TemplateChoice::Square => "square".into(),
            TemplateChoice::Circle => "circle".into(),
            TemplateChoice::File(p) => p.clone(),
        }
    }
}

/// Simplification and/or shape inscription of one solution's mutual region.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PostConfig {
    pub solution: usize,
    pub class: FunctionClass,
    #[serde(default)]
    pub eps: Option<f64>,
    #[serde(default)]
    pub template: Option<TemplateChoice>,
    #[serde(default)]
    pub uniform_scale: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SynthConfig {
    pub solution: usize,
    #[serde(default)]
    pub room_function: Option<String>,
    pub n: usize,
    pub tau: f64,
    pub grid: f64,
    pub yaw_step_deg: f64,
    pub seed: u64,
    pub max_objects: usize,
    pub rerank: bool,
    pub min_mutual_area: f64,
    /// Path of a prior file; `None` trains one on the input rooms.
    #[serde(default)]
    pub prior: Option<String>,
}

impl Default for SynthConfig {
    fn default() -> Self {
        let a = AugmentConfig::default();
        Self {
            solution: 0,
            room_function: None,
            n: a.n,
            tau: a.stop_threshold,
            grid: a.grid_step,
            yaw_step_deg: crate::io::to_degrees(a.yaw_step),
            seed: a.seed,
            max_objects: a.max_objects,
            rerank: a.rerank,
            min_mutual_area: MIN_MUTUAL_AREA,
            prior: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PipelineConfig {
    pub search: SearchConfig,
    pub objective: ObjectiveSpec,
    #[serde(default)]
    pub post: Option<PostConfig>,
    #[serde(default)]
    pub synth: Option<SynthConfig>,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self {
            search: SearchConfig::evolutionary(&AlignmentConfig::default()),
            objective: ObjectiveSpec::default(),
            post: None,
            synth: None,
        }
    }
}

/// An input file's path as recorded and its bytes.
#[derive(Clone, Debug, PartialEq)]
pub struct NamedInput {
    pub path: String,
    pub bytes: Vec<u8>,
}

impl NamedInput {
    pub fn read(path: &str) -> Result<Self, IoError> {
        Ok(Self {
            path: path.to_string(),
            bytes: read_bytes(Path::new(path))?,
        })
    }

    fn record(&self, role: &str) -> InputRecord {
        InputRecord {
            role: role.to_string(),
            path: self.path.clone(),
            sha256: sha256_hex(&self.bytes),
        }
    }

    fn text(&self) -> Result<&str, IoError> {
        std::str::from_utf8(&self.bytes).map_err(|e| IoError::Syntax {
            path: self.path.clone().into(),
            line: 1,
            column: 1,
            message: format!("not UTF-8: {e}"),
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct PipelineInputs {
    pub scenes: Vec<NamedInput>,
    pub template: Option<NamedInput>,
    pub prior: Option<NamedInput>,
}

impl PipelineInputs {
    /// Reads every file the configuration names besides the scenes.
    pub fn read(scenes: &[String], cfg: &PipelineConfig) -> Result<Self, IoError> {
        let template = match cfg.post.as_ref().and_then(|p| p.template.as_ref()) {
            Some(TemplateChoice::File(p)) => Some(NamedInput::read(p)?),
            _ => None,
        };
        let prior = match cfg.synth.as_ref().and_then(|s| s.prior.as_ref()) {
            Some(p) => Some(NamedInput::read(p)?),
            None => None,
        };
        Ok(Self {
            scenes: scenes.iter().map(|p| NamedInput::read(p)).collect::<Result<_, _>>()?,
            template,
            prior,
        })
    }

    /// Reads the inputs a result file lists and checks their digests.
    pub fn for_result(result: &ResultFile) -> Result<Self, IoError> {
        let mut out = PipelineInputs::default();
        for rec in &result.inputs {
            let input = NamedInput::read(&rec.path)?;
            let found = sha256_hex(&input.bytes);
            if found != rec.sha256 {
                return Err(IoError::DigestMismatch {
                    path: rec.path.clone().into(),
                    expected: rec.sha256.clone(),
                    found,
                });
            }
            match rec.role.as_str() {
                "template" => out.template = Some(input),
                "prior" => out.prior = Some(input),
                _ => out.scenes.push(input),
            }
        }
        Ok(out)
    }

    fn records(&self) -> Vec<InputRecord> {
        let mut v: Vec<InputRecord> = self.scenes.iter().map(|s| s.record("scene")).collect();
        v.extend(self.template.iter().map(|t| t.record("template")));
        v.extend(self.prior.iter().map(|p| p.record("prior")));
        v
    }
}

/// Parsed scenes plus the warnings raised while loading them.
pub fn load_rooms(inputs: &[NamedInput], table: &CategoryTable) -> Result<(Vec<Room>, Vec<String>), IoError> {
    let mut rooms = Vec::with_capacity(inputs.len());
    let mut warnings = Vec::new();
    for s in inputs {
        let loaded = load_scene_str(s.text()?, Path::new(&s.path), table)?;
        rooms.push(loaded.room);
        warnings.extend(loaded.warnings);
    }
    Ok((rooms, warnings))
}

pub fn load_template(input: &NamedInput) -> Result<ActivityTemplate, IoError> {
    let path = Path::new(&input.path);
    let file: TemplateFile = serde_json::from_str(input.text()?).map_err(|e| IoError::syntax(path, &e))?;
    let schema = |reason: String| IoError::Schema {
        path: path.to_path_buf(),
        line: 1,
        object: None,
        field: "boundary".into(),
        reason,
    };
    if file.boundary.len() < 4 || file.boundary.first() != file.boundary.last() {
        return Err(schema("a closed ring of at least three vertices is required".into()));
    }
    let pts: Vec<(f64, f64)> = file.boundary[..file.boundary.len() - 1].iter().map(|p| (p[0], p[1])).collect();
    Region::polygon(&pts)
        .and_then(ActivityTemplate::new)
        .map_err(|e| schema(e.to_string()))
}

pub fn load_prior(input: &NamedInput) -> Result<PriorScorer, IoError> {
    let path = Path::new(&input.path);
    let file: PriorFile = serde_json::from_str(input.text()?).map_err(|e| IoError::syntax(path, &e))?;
    if file.format != PRIOR_FORMAT {
        return Err(IoError::Schema {
            path: path.to_path_buf(),
            line: 1,
            object: None,
            field: "format".into(),
            reason: format!("expected `{PRIOR_FORMAT}`, found `{}`", file.format),
        });
    }
    Ok(file.prior)
}

/// Everything a run produced, in memory and as the result file.
#[derive(Clone, Debug)]
pub struct PipelineOutput {
    pub rooms: Vec<Room>,
    pub mutual: MutualResult,
    pub scene: Option<SyntheticScene>,
    pub warnings: Vec<String>,
    pub result: ResultFile,
}

fn exhaustive(rooms: &[Room], cfg: &AlignmentConfig, budget: u64) -> Result<MutualResult, AlignError> {
    let lattice = alignment_lattice(rooms, cfg)?;
    let prepared: Vec<PreparedRoom> = rooms.iter().map(PreparedRoom::new).collect();
    let walkable: Vec<Region> = prepared.iter().map(|p| p.region(FunctionClass::Walkable).clone()).collect();
    let best = brute_force_on(&walkable, &lattice, budget)?;
    let region = mutual_region(&prepared, &best.transforms, FunctionClass::Walkable);
    Ok(MutualResult {
        solutions: vec![ParetoSolution {
            transforms: best.transforms,
            genome: best.genome,
            objective_values: [(FunctionClass::Walkable, region.area())].into(),
            mutual_regions: [(FunctionClass::Walkable, region)].into(),
        }],
        chosen_index: None,
    })
}

fn solution<'a>(mutual: &'a MutualResult, index: usize) -> Result<&'a ParetoSolution, PipelineError> {
    mutual.solutions.get(index).ok_or_else(|| {
        PipelineError::Invalid(format!("solution {index} does not exist ({} solutions)", mutual.solutions.len()))
    })
}

fn post_process(mutual: &MutualResult, cfg: &PostConfig, template: Option<&NamedInput>) -> Result<PostRecord, PipelineError> {
    let s = solution(mutual, cfg.solution)?;
    let mut region = s
        .mutual_regions
        .get(&cfg.class)
        .cloned()
        .ok_or_else(|| PipelineError::Invalid(format!("solution {} has no {} region", cfg.solution, cfg.class)))?;
    let simplified = cfg.eps.map(|eps| {
        region = simplify_region(&region, eps);
        SimplifiedRecord {
            eps,
            area: region.area(),
            region: region_record(&region),
        }
    });
    let inscribed = match &cfg.template {
        None => None,
        Some(choice) => {
            let shape = match choice {
                TemplateChoice::Square => ActivityTemplate::square(),
                TemplateChoice::Circle => ActivityTemplate::circle(64),
                TemplateChoice::File(_) => load_template(
                    template.ok_or_else(|| PipelineError::Invalid("template file was not supplied".into()))?,
                )?,
            };
            let opts = InscribeOptions {
                uniform_scale: cfg.uniform_scale,
                ..InscribeOptions::default()
            };
            if region.is_empty() {
                None
            } else {
                let found = largest_inscribed_shape_with(&shape, &region, &opts)?;
                Some(InscribedRecord {
                    template: choice.label(),
                    placement: PlacementRecord::from_placement(&found.placement),
                    objective: found.objective,
                    area: found.shape.area(),
                    shape: region_record(&found.shape),
                })
            }
        }
    };
    Ok(PostRecord {
        solution: cfg.solution,
        class: cfg.class,
        simplified,
        inscribed,
    })
}

fn synthesize(
    rooms: &[Room],
    mutual: &MutualResult,
    cfg: &SynthConfig,
    prior: Option<&NamedInput>,
    table: &CategoryTable,
) -> Result<SyntheticScene, PipelineError> {
    let s = solution(mutual, cfg.solution)?;
    let init = initialize_scene(
        rooms,
        &s.transforms,
        &InitConfig {
            room_function: cfg.room_function.clone(),
            seed: cfg.seed,
            min_mutual_area: cfg.min_mutual_area,
            categories: table.clone(),
            ..InitConfig::default()
        },
    )?;
    let scorer = match prior {
        Some(p) => load_prior(p)?,
        None => train_prior_scorer(rooms)?,
    };
    let aug = AugmentConfig {
        grid_step: cfg.grid,
        yaw_step: cfg.yaw_step_deg.to_radians(),
        n: cfg.n,
        stop_threshold: cfg.tau,
        max_objects: cfg.max_objects,
        seed: cfg.seed,
        rerank: cfg.rerank,
        ..AugmentConfig::default()
    };
    Ok(augment_scene(&init, rooms, &s.transforms, &scorer, table, &aug)?)
}

/// Loaded rooms and the alignment of them, before post-processing and
/// synthesis.
#[derive(Clone, Debug)]
pub struct Aligned {
    pub rooms: Vec<Room>,
    pub mutual: MutualResult,
    pub warnings: Vec<String>,
}

/// Loads the scenes and searches for alignments as `cfg.search` says.
pub fn align_stage(inputs: &PipelineInputs, cfg: &PipelineConfig) -> Result<Aligned, PipelineError> {
    let table = CategoryTable::default();
    let (rooms, warnings) = load_rooms(&inputs.scenes, &table)?;
    let align_cfg = cfg.search.alignment_config();
    let started = std::time::Instant::now();
    let mutual = match &cfg.search {
        SearchConfig::Evolutionary { .. } => optimize_alignment(&rooms, &cfg.objective, &align_cfg)?,
        SearchConfig::Exhaustive { budget, .. } => exhaustive(&rooms, &align_cfg, *budget)?,
    };
    log::info!(
        "aligned {} rooms in {:.2?}: {} solution(s), best walkable {:.4} m²",
        rooms.len(),
        started.elapsed(),
        mutual.solutions.len(),
        mutual.best_area(FunctionClass::Walkable)
    );
    Ok(Aligned { rooms, mutual, warnings })
}

/// Post-processing and synthesis on top of an alignment computed by
/// [`align_stage`] from the same inputs and configuration.
pub fn finish(aligned: Aligned, inputs: &PipelineInputs, cfg: &PipelineConfig) -> Result<PipelineOutput, PipelineError> {
    let table = CategoryTable::default();
    let Aligned { rooms, mutual, warnings } = aligned;
    let post = cfg
        .post
        .as_ref()
        .map(|p| post_process(&mutual, p, inputs.template.as_ref()))
        .transpose()?;
    let scene = cfg
        .synth
        .as_ref()
        .map(|s| synthesize(&rooms, &mutual, s, inputs.prior.as_ref(), &table))
        .transpose()?;
    if let Some(p) = &post {
        let area = |a: Option<f64>| a.map_or("-".to_string(), |a| format!("{a:.4} m²"));
        log::info!(
            "post-processed solution {}: simplified {}, inscribed {}",
            p.solution,
            area(p.simplified.as_ref().map(|s| s.area)),
            area(p.inscribed.as_ref().map(|i| i.area))
        );
    }
    if let Some(s) = &scene {
        log::info!("synthesized {} objects on a {} floor", s.objects.len(), s.room_function);
    }
    let mutual = MutualResult {
        chosen_index: cfg.synth.as_ref().map(|s| s.solution),
        ..mutual
    };
    let result = ResultFile {
        format: RESULT_FORMAT.into(),
        schema_version: RESULT_VERSION,
        inputs: inputs.records(),
        config: cfg.clone(),
        solutions: mutual.solutions.iter().map(SolutionRecord::from_solution).collect(),
        chosen_index: mutual.chosen_index,
        post,
        scene: scene.as_ref().map(SceneRecord::from_scene),
    };
    Ok(PipelineOutput {
        rooms,
        mutual,
        scene,
        warnings,
        result,
    })
}

/// Runs every stage `cfg` asks for on `inputs`.
pub fn run_pipeline(inputs: &PipelineInputs, cfg: &PipelineConfig) -> Result<PipelineOutput, PipelineError> {
    finish(align_stage(inputs, cfg)?, inputs, cfg)
}

/// Runs a result file's recorded configuration on its recorded inputs.
pub fn regenerate(result: &ResultFile) -> Result<PipelineOutput, PipelineError> {
    let inputs = PipelineInputs::for_result(result)?;
    run_pipeline(&inputs, &result.config)
}

pub fn read_result(path: &Path) -> Result<ResultFile, IoError> {
    let text = crate::io::read_text(path)?;
    let file: ResultFile = serde_json::from_str(&text).map_err(|e| IoError::syntax(path, &e))?;
    if file.format != RESULT_FORMAT {
        return Err(IoError::Schema {
            path: path.to_path_buf(),
            line: 1,
            object: None,
            field: "format".into(),
            reason: format!("expected `{RESULT_FORMAT}`, found `{}`", file.format),
        });
    }
    if file.schema_version != RESULT_VERSION {
        return Err(IoError::Version {
            path: path.to_path_buf(),
            found: file.schema_version,
            expected: RESULT_VERSION,
        });
    }
    Ok(file)
}
