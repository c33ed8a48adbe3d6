//! Drive a full planning run from a JSON scenario file.
//!
//! Scenario files bundle the map, poses, vehicle, model, costs and limits;
//! angles are written in degrees. This parses one from a string, resolves it
//! into a runnable scenario, plans, and writes the CSV and SVG artifacts a
//! tool pipeline would consume.
//!
//! Run with `cargo run --example scenario_file`.

use carplan::prelude::*;
use carplan::render::{path_csv, render_svg};
use carplan::scenario::ScenarioFile;
use std::path::Path as FsPath;

const SCENARIO: &str = r#"{
    "map": {
        "grid": {
            "width": 24,
            "height": 16,
            "shapes": [
                {"kind": "border", "thickness": 1},
                {"kind": "rect", "x0": 10, "y0": 1, "x1": 14, "y1": 10}
            ]
        }
    },
    "start": {"x": 4.0, "y": 4.0, "theta_deg": 0.0},
    "goal": {"x": 20.0, "y": 4.0, "theta_deg": 0.0},
    "vehicle": {
        "wheelbase": 2.0,
        "length": 2.0,
        "width": 1.0,
        "v_max": 1.0,
        "delta_max_deg": 45.0
    },
    "model": "kinematic",
    "costs": {"reverse_penalty": 5.0},
    "limits": {"max_expansions": 100000}
}"#;

fn main() {
    let file = ScenarioFile::from_json(SCENARIO).expect("well-formed scenario");
    let sc = file.resolve(FsPath::new(".")).expect("resolvable scenario");
    println!(
        "loaded {}x{} map, start {:?}, goal {:?}",
        sc.grid.width(),
        sc.grid.height(),
        (sc.start.x, sc.start.y),
        (sc.goal.x, sc.goal.y)
    );

    let path = match plan(&sc).expect("valid scenario") {
        PlanOutcome::Path(path) => path,
        PlanOutcome::NoPath { reason, .. } => panic!("should be solvable: {reason:?}"),
    };
    println!(
        "planned around the spur wall: cost {:.3}, {} steps, {} reverse",
        path.cost,
        path.steps.len(),
        path.reverse_step_count()
    );

    let dir = std::env::temp_dir();
    let csv_path = dir.join("scenario_file_demo.csv");
    let svg_path = dir.join("scenario_file_demo.svg");
    std::fs::write(&csv_path, path_csv(&path)).expect("write CSV");
    let svg = render_svg(
        &sc.grid,
        Some(&path),
        &sc.vehicle.footprint,
        sc.start,
        sc.goal,
        5,
    );
    std::fs::write(&svg_path, svg).expect("write SVG");
    println!("artifacts: {} and {}", csv_path.display(), svg_path.display());
}
