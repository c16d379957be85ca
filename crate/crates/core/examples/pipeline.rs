//! The whole chain as one reproducible function: the result file records
//! input digests and the configuration, so regenerating it gives the same
//! bytes.

use std::path::Path;

use mss::io::to_json;
use mss::pipeline::{
    regenerate, run_pipeline, PipelineConfig, PipelineInputs, PostConfig, SynthConfig, TemplateChoice,
};
use mss::scene::FunctionClass;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/scenes");
    let scenes: Vec<String> =
        ["office-a.json", "office-b.json"].iter().map(|f| dir.join(f).display().to_string()).collect();

    let cfg = PipelineConfig {
        post: Some(PostConfig {
            solution: 0,
            class: FunctionClass::Walkable,
            eps: Some(0.2),
            template: Some(TemplateChoice::Square),
            uniform_scale: false,
        }),
        synth: Some(SynthConfig::default()),
        ..PipelineConfig::default()
    };

    let inputs = PipelineInputs::read(&scenes, &cfg)?;
    let out = run_pipeline(&inputs, &cfg)?;
    let post = out.result.post.as_ref().expect("post-processing requested");
    println!("solutions on the front: {}", out.result.solutions.len());
    if let Some(s) = &post.simplified {
        println!("simplified walkable: {:.4} m²", s.area);
    }
    if let Some(i) = &post.inscribed {
        println!("inscribed {}: {:.4} m²", i.template, i.area);
    }
    if let Some(scene) = &out.scene {
        println!("virtual scene: {} objects", scene.objects.len());
    }

    let again = regenerate(&out.result)?;
    println!("regenerated byte-identical: {}", to_json(&again.result) == to_json(&out.result));
    Ok(())
}
