//! Cross-check the planner against the uninformed reference search.
//!
//! On small worlds with an admissible configuration (no heading or steering
//! cost terms, no reverse penalty, heuristic weight 1) the planner must find
//! exactly the cost the reference search finds, while expanding no more
//! nodes. This runs that comparison on compact variants of every fixture.
//!
//! Run with `cargo run --example oracle_check`.

use carplan::oracle::{dijkstra_reference, OracleOutcome};
use carplan::prelude::*;
use carplan::world::cropped_fixtures;

fn main() {
    println!(
        "{:<16} {:>12} {:>12} {:>9} {:>9}  verdict",
        "fixture", "plan cost", "oracle cost", "plan exp", "oracle exp"
    );
    let mut all_ok = true;
    for f in cropped_fixtures() {
        let mut sc = f.scenario;
        sc.costs = CostConfig {
            heading_weight: 0.0,
            steer_weight: 0.0,
            reverse_penalty: 0.0,
            heuristic_weight: 1.0,
        };
        sc.search.theta_bins = 8;

        let planned = plan(&sc).expect("valid scenario");
        let reference = dijkstra_reference(&sc).expect("valid scenario");
        match (planned, reference) {
            (PlanOutcome::Path(p), OracleOutcome::Path(o)) => {
                let ok = p.cost == o.cost && p.expansions <= o.expansions;
                all_ok &= ok;
                println!(
                    "{:<16} {:>12.6} {:>12.6} {:>9} {:>9}  {}",
                    f.name,
                    p.cost,
                    o.cost,
                    p.expansions,
                    o.expansions,
                    if ok { "match" } else { "MISMATCH" }
                );
            }
            (p, o) => {
                all_ok = false;
                println!("{:<16} planner: {p:?} oracle: {o:?}", f.name);
            }
        }
    }
    assert!(all_ok, "planner and reference search disagree");
    println!("\nall fixtures agree");
}
