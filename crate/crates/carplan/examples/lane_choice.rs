//! Route choice depends on the body, not just the map.
//!
//! `twin_slots` offers two ways through a thick wall: a narrow dog-legged
//! slot that demands shuffling, and a wide corridor over the top. The
//! mid-size vehicle threads the slot while reversing is cheap and switches
//! to the wide lane when it is not. The long vehicle cannot fit the slot at
//! any price.
//!
//! Run with `cargo run --example lane_choice`.

use carplan::prelude::*;
use carplan::world::fixture;

/// The narrow slot lives inside the wall band; the wide lane passes over it.
fn lane_of(path: &Path) -> &'static str {
    let through_slot = path
        .poses()
        .any(|p| (19.0..29.0).contains(&p.x) && p.y < 20.0);
    if through_slot {
        "narrow slot"
    } else {
        "wide lane"
    }
}

fn main() {
    let base = fixture("twin_slots").expect("fixture exists").scenario;

    println!(
        "{:<8} {:>8} {:>12} {:>14} lane",
        "vehicle", "penalty", "cost", "reverse steps"
    );
    for (label, vehicle) in [("big", vehicles::big()), ("long", vehicles::long())] {
        for penalty in [0.0, 100.0] {
            let mut sc = base.clone();
            sc.vehicle = vehicle.clone();
            sc.controls = ControlSet::defaults(&sc.vehicle, sc.grid.cell_size());
            sc.costs.reverse_penalty = penalty;
            match plan(&sc).expect("valid scenario") {
                PlanOutcome::Path(path) => println!(
                    "{label:<8} {penalty:>8} {:>12.3} {:>14} {}",
                    path.cost,
                    path.reverse_step_count(),
                    lane_of(&path)
                ),
                PlanOutcome::NoPath { reason, .. } => {
                    println!("{label:<8} {penalty:>8} {:>12} {:>14} ({reason:?})", "-", "-")
                }
            }
        }
    }
    println!("\nthe slot is only a lane if your body fits it");
}
