pub mod geometry;
pub mod scene;
pub mod align;
pub mod synth;
pub mod io;
pub mod pipeline;
pub mod cli;
