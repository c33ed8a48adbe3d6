//! Trading reverse maneuvers against path length.
//!
//! The `ring_turnabout` fixture asks the vehicle to leave in the opposite
//! direction from where it stands, mid-corridor. With a cheap reverse it
//! shuffles back and forth on the spot; as the penalty grows the planner
//! spends ever more forward driving to buy fewer gear changes. The sweep
//! runs uninformed (heuristic weight 0), so every returned cost is the true
//! optimum and must be non-decreasing in the penalty.
//!
//! Run with `cargo run --example reverse_penalty`.

use carplan::prelude::*;
use carplan::world::fixture;

fn main() {
    let base = fixture("ring_turnabout").expect("fixture exists").scenario;

    println!("{:>8} {:>12} {:>15} {:>8}", "penalty", "cost", "reverse steps", "steps");
    let mut previous_cost = 0.0;
    let mut counts = Vec::new();
    for penalty in [0.0, 1.0, 10.0, 100.0] {
        let mut sc = base.clone();
        sc.costs.reverse_penalty = penalty;
        sc.costs.heuristic_weight = 0.0;
        let path = match plan(&sc).expect("valid scenario") {
            PlanOutcome::Path(path) => path,
            PlanOutcome::NoPath { reason, .. } => panic!("ring is solvable: {reason:?}"),
        };
        println!(
            "{penalty:>8} {:>12.4} {:>15} {:>8}",
            path.cost,
            path.reverse_step_count(),
            path.steps.len()
        );
        assert!(
            path.cost >= previous_cost,
            "optimal cost must be non-decreasing in the penalty"
        );
        previous_cost = path.cost;
        counts.push(path.reverse_step_count());
    }
    assert!(
        counts.last() < counts.first(),
        "a high penalty should eliminate reverse maneuvers"
    );
    println!("\nhigher penalty, fewer reverse maneuvers, never a cheaper plan");
}
