//! U-turn suite on the `alcove_turn` fixture.
//!
//! A short vehicle swings through the turn forward; a long one cannot and
//! must shuffle with reverse gear. Raising the reverse penalty trades gear
//! changes for extra driving. The last section contrasts midpoint-only
//! collision checking with the full body rectangle: the midpoint path cuts
//! corners that the body cannot actually clear.
//!
//! Run with `cargo run --example u_turn`.

use carplan::prelude::*;
use carplan::world::fixture;

fn describe(label: &str, scenario: &Scenario) -> Option<Path> {
    match plan(scenario).expect("valid scenario") {
        PlanOutcome::Path(path) => {
            println!(
                "{label:<34} cost={:8.3}  steps={:3}  reverse_steps={}",
                path.cost,
                path.steps.len(),
                path.reverse_step_count()
            );
            Some(path)
        }
        PlanOutcome::NoPath { reason, expansions } => {
            println!("{label:<34} no path ({reason:?}) after {expansions} expansions");
            None
        }
    }
}

/// How many poses of the path put the body in collision under the full
/// footprint check.
fn footprint_violations(scenario: &Scenario, path: &Path) -> usize {
    path.poses()
        .filter(|&pose| {
            carplan::pose_in_collision(
                pose,
                &scenario.vehicle.footprint,
                &scenario.grid,
                CollisionMode::Footprint,
            )
        })
        .count()
}

fn main() {
    let base = fixture("alcove_turn").expect("fixture exists").scenario;

    println!("-- vehicle length --");
    let mut small = base.clone();
    small.vehicle = vehicles::small();
    small.controls = ControlSet::defaults(&small.vehicle, small.grid.cell_size());
    describe("small vehicle", &small);
    describe("big vehicle", &base);

    println!("-- reverse penalty (big vehicle) --");
    for penalty in [0.0, 10.0, 100.0] {
        let mut sc = base.clone();
        sc.costs.reverse_penalty = penalty;
        describe(&format!("penalty {penalty}"), &sc);
    }

    println!("-- collision mode (big vehicle) --");
    let mut midpoint = base.clone();
    midpoint.search.collision_mode = CollisionMode::Midpoint;
    if let Some(path) = describe("midpoint check", &midpoint) {
        println!(
            "{:<34} body-in-collision poses: {}",
            "  re-checked with footprint",
            footprint_violations(&base, &path)
        );
    }
    if let Some(path) = describe("footprint check", &base) {
        println!(
            "{:<34} body-in-collision poses: {}",
            "  re-checked with footprint",
            footprint_violations(&base, &path)
        );
    }
}
