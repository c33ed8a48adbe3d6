//! The initial heading changes the whole plan.
//!
//! The same start position, goal, and world are planned twice, once facing
//! +90 degrees and once facing -90 degrees. A car cannot simply pivot, so
//! the two plans swing through different space, under both motion models.
//!
//! Run with `cargo run --example heading_sensitivity`.

use carplan::prelude::*;
use carplan::world::fixture;
use std::f64::consts::FRAC_PI_2;

fn run(model: Model, theta0: f64) -> Path {
    let mut sc = fixture("open_field").expect("fixture exists").scenario;
    sc.model = model;
    sc.start = Pose::new(sc.start.x, sc.start.y, theta0);
    match plan(&sc).expect("valid scenario") {
        PlanOutcome::Path(path) => path,
        PlanOutcome::NoPath { reason, .. } => panic!("open field should be solvable: {reason:?}"),
    }
}

fn main() {
    for model in [Model::Kinematic, Model::Geometric] {
        let up = run(model, FRAC_PI_2);
        let down = run(model, -FRAC_PI_2);
        println!("{model:?} model:");
        for (label, path) in [("facing +90", &up), ("facing -90", &down)] {
            let peak = path
                .poses()
                .map(|p| p.y)
                .fold(f64::NEG_INFINITY, f64::max);
            println!(
                "  {label}: cost {:.3}, {} steps, highest y reached {:.2}",
                path.cost,
                path.steps.len(),
                peak
            );
        }
        let same = up
            .poses()
            .zip(down.poses())
            .all(|(a, b)| a == b)
            && up.steps.len() == down.steps.len();
        assert!(!same, "the two headings should produce different paths");
        println!("  pose sequences differ, as a car-like vehicle demands\n");
    }
}
