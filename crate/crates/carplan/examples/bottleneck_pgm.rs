//! Round-trip a world through PGM and plan on the result.
//!
//! Occupancy grids import from plain grayscale images: dark pixels become
//! obstacles, light pixels free space, with image rows flipped so that the
//! bottom image row is y = 0 in world coordinates. This exports the
//! `bottleneck` fixture map to PGM bytes, reads it back, verifies the
//! round-trip is lossless, and plans straight off the imported grid. The
//! planner lines the body up with the single gap rather than heading along
//! the beeline.
//!
//! Run with `cargo run --example bottleneck_pgm`.

use carplan::prelude::*;
use carplan::world::{fixture, load_raster, to_pgm, RasterImportConfig};

fn main() {
    let original = fixture("bottleneck").expect("fixture exists").scenario;

    let bytes = to_pgm(&original.grid);
    println!(
        "exported {} cells ({} occupied) as {} PGM bytes",
        original.grid.width() * original.grid.height(),
        original.grid.occupied_count(),
        bytes.len()
    );

    let imported = load_raster(&bytes, &RasterImportConfig::default()).expect("valid PGM");
    assert_eq!(imported, original.grid, "PGM round-trip must be lossless");
    println!("re-imported grid is identical");

    let sc = Scenario {
        grid: imported,
        ..original
    };
    let path = match plan(&sc).expect("valid scenario") {
        PlanOutcome::Path(path) => path,
        PlanOutcome::NoPath { reason, .. } => panic!("bottleneck is solvable: {reason:?}"),
    };
    let colliding = path
        .poses()
        .filter(|&p| {
            carplan::pose_in_collision(
                p,
                &sc.vehicle.footprint,
                &sc.grid,
                CollisionMode::Footprint,
            )
        })
        .count();
    println!(
        "planned on the imported grid: cost {:.3}, {} steps, {} colliding poses",
        path.cost,
        path.steps.len(),
        colliding
    );
    assert_eq!(colliding, 0);

    // The beeline from start to goal is walled off; the path must detour
    // through the gap at y in [14, 17).
    let through_gap = path
        .poses()
        .any(|p| (12.0..20.0).contains(&p.x) && (14.0..17.0).contains(&p.y));
    assert!(through_gap, "the only way across is through the gap");
    println!("the path threads the single gap in the wall");
}
