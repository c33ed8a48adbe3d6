//! Body-aware path planning for car-like robots on occupancy grids.
//!
//! This crate plans feasible paths for a vehicle with a rectangular body and
//! limited steering. The planner searches over continuous poses while
//! deduplicating states on a discrete (cell, heading-bin) lattice, so paths
//! stay kinematically honest without the search space exploding.
//!
//! What you get:
//!
//! * two expansion models: an Euler-integrated kinematic bicycle
//!   ([`Model::Kinematic`]) and exact circular-arc primitives
//!   ([`Model::Geometric`]), both supporting forward and reverse motion;
//! * collision checking either for the pose reference point only
//!   ([`CollisionMode::Midpoint`]) or for the full oriented rectangle of the
//!   body ([`CollisionMode::Footprint`]);
//! * tunable costs: heading-change weight, steering effort, and a per-step
//!   reverse penalty that trades path length against gear changes;
//! * reference implementations ([`oracle`]) for cross-checking optimality,
//!   plus occupancy-grid I/O (PGM rasters) and artifact output (CSV, SVG).
//!
//! # Quick start
//!
//! ```
//! use carplan::prelude::*;
//!
//! let grid = GridBuilder::new(20, 20, 1.0).border(1).build().unwrap();
//! let scenario = Scenario {
//!     start: Pose::new(4.0, 10.0, 0.0),
//!     goal: Pose::new(16.0, 10.0, 0.0),
//!     vehicle: vehicles::big(),
//!     model: Model::Kinematic,
//!     controls: ControlSet::defaults(&vehicles::big(), grid.cell_size()),
//!     costs: CostConfig::default(),
//!     search: SearchConfig::default(),
//!     grid,
//! };
//! match plan(&scenario).unwrap() {
//!     PlanOutcome::Path(path) => println!("cost {:.2}", path.cost),
//!     PlanOutcome::NoPath { reason, .. } => println!("no path: {reason:?}"),
//! }
//! ```
//!
//! The `examples/` directory walks through each capability on small worlds;
//! `cargo run --example u_turn` is a good place to start.

#![forbid(unsafe_code)]

pub mod geometry;
pub mod model;
pub mod oracle;
pub mod pgm;
pub mod render;
pub mod scenario;
pub mod search;
pub mod world;

pub use geometry::{
    angle_diff, normalize_angle, pose_in_collision, CollisionMode, Footprint, OccupancyGrid,
    Point, Pose,
};
pub use model::{
    kinematic_step, geometric_step, motion_blocked, successors, ConfigError, Control, ControlSet,
    Direction, Model, Motion, Primitive, Successor, VehicleSpec,
};
pub use search::{
    plan, satisfies_goal, CostConfig, NoPathReason, Path, PathStep, PlanError, PlanOutcome,
    Scenario, SearchConfig,
};

/// Everything most callers need, in one import.
pub mod prelude {
    pub use crate::geometry::{CollisionMode, Footprint, OccupancyGrid, Point, Pose};
    pub use crate::model::{Control, ControlSet, Direction, Model, Motion, VehicleSpec};
    pub use crate::oracle;
    pub use crate::search::{
        plan, CostConfig, NoPathReason, Path, PlanError, PlanOutcome, Scenario, SearchConfig,
    };
    pub use crate::world::{vehicles, GridBuilder};
}
