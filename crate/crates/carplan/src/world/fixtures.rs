//! Named scenario fixtures: small, fully deterministic worlds that exercise
//! each planner behavior. The examples and the CLI's batch mode run these,
//! and the test suite asserts their structural claims (lane widths relative
//! to vehicle length, and so on) rather than magic coordinates.

use crate::geometry::Pose;
use crate::model::{ControlSet, Model, VehicleSpec};
use crate::search::{CostConfig, Scenario, SearchConfig};
use crate::world::GridBuilder;
use std::f64::consts::{FRAC_PI_2, PI};

/// Stock vehicles used across fixtures and examples.
pub mod vehicles {
    use crate::geometry::Footprint;
    use crate::model::VehicleSpec;
    use std::f64::consts::FRAC_PI_4;

    /// A nimble 1.0 x 0.6 vehicle with a one-unit wheelbase (turn radius 1).
    pub fn small() -> VehicleSpec {
        VehicleSpec {
            wheelbase: 1.0,
            max_speed: 1.0,
            max_steer: FRAC_PI_4,
            footprint: Footprint::new(1.0, 0.6),
        }
    }

    /// A car-sized 2.0 x 1.0 vehicle with a two-unit wheelbase (turn radius 2).
    pub fn big() -> VehicleSpec {
        VehicleSpec {
            wheelbase: 2.0,
            max_speed: 1.0,
            max_steer: FRAC_PI_4,
            footprint: Footprint::new(2.0, 1.0),
        }
    }

    /// A bus-sized 6.0 x 3.0 vehicle with a six-unit wheelbase (turn radius 6).
    pub fn long() -> VehicleSpec {
        VehicleSpec {
            wheelbase: 6.0,
            max_speed: 1.0,
            max_steer: FRAC_PI_4,
            footprint: Footprint::new(6.0, 3.0),
        }
    }
}

/// A named, self-describing planning scenario.
#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: &'static str,
    /// One-line description of the world's structure and intent.
    pub summary: &'static str,
    pub scenario: Scenario,
}

fn scenario(
    grid: crate::geometry::OccupancyGrid,
    start: Pose,
    goal: Pose,
    vehicle: VehicleSpec,
) -> Scenario {
    let controls = ControlSet::defaults(&vehicle, grid.cell_size());
    Scenario {
        start,
        goal,
        vehicle,
        model: Model::Kinematic,
        controls,
        costs: CostConfig::default(),
        search: SearchConfig::default(),
        grid,
    }
}

/// All fixtures, in a fixed order.
pub fn fixtures() -> Vec<Fixture> {
    vec![
        open_field(),
        ring_turnabout(),
        alcove_turn(),
        twin_slots(),
        bottleneck(),
    ]
}

/// Look up a fixture by name.
pub fn fixture(name: &str) -> Option<Fixture> {
    fixtures().into_iter().find(|f| f.name == name)
}

/// (a) An empty 20 x 20 field. Start heading +90 degrees; planning the same
/// scenario with -90 degrees shows how the initial heading shapes the path.
fn open_field() -> Fixture {
    let grid = GridBuilder::new(20, 20, 1.0).build().expect("fixture grid");
    Fixture {
        name: "open_field",
        summary: "empty 20x20 field; start faces +90 deg, goal lies east",
        scenario: scenario(
            grid,
            Pose::new(4.0, 10.0, FRAC_PI_2),
            Pose::new(16.0, 10.0, 0.0),
            vehicles::big(),
        ),
    }
}

/// (b) A rectangular ring of corridors around a central block. Start and goal
/// share a position mid-corridor with opposite headings, so the vehicle must
/// turn around: a three-point shuffle (with reverse steps) is short, the
/// forward loop around the block is long but reverse-free.
fn ring_turnabout() -> Fixture {
    let grid = GridBuilder::new(26, 18, 1.0)
        .border(1)
        .rect(6, 6, 20, 12)
        .build()
        .expect("fixture grid");
    Fixture {
        name: "ring_turnabout",
        summary: "5-wide corridor ring around a block; turn around in place or drive the loop",
        scenario: scenario(
            grid,
            Pose::new(9.0, 3.5, 0.0),
            Pose::new(9.0, 3.5, PI),
            vehicles::big(),
        ),
    }
}

/// (c) A ring whose bottom corridor (4 wide) has a 3-wide, 3-deep alcove in
/// the block above it. The small vehicle turns around without reverse gear;
/// the big vehicle cannot (its turning circle plus body overhang does not fit
/// the corridor or the alcove), so it must shuffle. The default reverse
/// penalty is raised to 10 so that shuffling is a real price, not a freebie.
fn alcove_turn() -> Fixture {
    let grid = GridBuilder::new(26, 16, 1.0)
        .border(1)
        .rect(6, 5, 20, 11)
        .clear(12, 5, 15, 8)
        .build()
        .expect("fixture grid");
    let mut scenario = scenario(
        grid,
        Pose::new(8.0, 3.0, 0.0),
        Pose::new(8.0, 3.0, PI),
        vehicles::big(),
    );
    scenario.costs.reverse_penalty = 10.0;
    Fixture {
        name: "alcove_turn",
        summary: "U-turn in a 4-wide corridor with a 3-wide alcove; tight for the big vehicle",
        scenario,
    }
}

/// (d) Two chambers joined by two lanes through a thick wall: a narrow
/// dog-legged slot (3 wide, with a 2-wide jog — passable for the length-2
/// vehicle only by shuffling, impassable for the length-6 vehicle) and a wide
/// 6-high corridor over the top of the wall.
fn twin_slots() -> Fixture {
    let grid = GridBuilder::new(48, 30, 1.0)
        .border(1)
        .rect(19, 1, 29, 23)
        .clear(19, 8, 25, 11)
        .clear(23, 8, 25, 16)
        .clear(23, 13, 29, 16)
        .build()
        .expect("fixture grid");
    Fixture {
        name: "twin_slots",
        summary: "narrow dog-leg lane (3 wide) vs wide top lane (6 wide) through a thick wall",
        scenario: scenario(
            grid,
            Pose::new(5.0, 9.5, 0.0),
            Pose::new(42.0, 14.5, 0.0),
            vehicles::big(),
        ),
    }
}

/// (e) A bottleneck: two wall slabs leave a single 3-high gap. Stand-in for a
/// rasterized real-world map; the planner must line up with the gap, thread
/// it, and fan back out.
fn bottleneck() -> Fixture {
    let grid = GridBuilder::new(32, 32, 1.0)
        .border(1)
        .rect(12, 1, 20, 14)
        .rect(12, 17, 20, 31)
        .build()
        .expect("fixture grid");
    Fixture {
        name: "bottleneck",
        summary: "two slabs with a single 3-high gap between chambers",
        scenario: scenario(
            grid,
            Pose::new(4.0, 10.0, 0.0),
            Pose::new(28.0, 22.0, 0.0),
            vehicles::big(),
        ),
    }
}

/// Small variants of every fixture, each at most 30 x 30 cells, for
/// exhaustive cross-checks against the reference searches. Fixtures already
/// within the size cap are passed through unchanged; the larger ones are
/// cropped to an interesting window with start and goal re-anchored inside
/// it.
pub fn cropped_fixtures() -> Vec<Fixture> {
    let mut out = Vec::new();
    for f in fixtures() {
        let grid = &f.scenario.grid;
        if grid.width() <= 30 && grid.height() <= 30 {
            out.push(f);
            continue;
        }
        let (window, start, goal) = match f.name {
            // West strip, the full wall with both lanes, and the east
            // chamber.
            "twin_slots" => (
                (14, 0, 30, 30),
                Pose::new(2.5, 9.5, 0.0),
                Pose::new(20.0, 14.5, 0.0),
            ),
            // Interior of the map, slabs and gap included; start and goal
            // sit at gap height so the optimum is a clean thread through it.
            "bottleneck" => (
                (1, 1, 30, 30),
                Pose::new(3.0, 14.5, 0.0),
                Pose::new(27.0, 14.5, 0.0),
            ),
            other => unreachable!("no crop window defined for fixture {other}"),
        };
        let (x0, y0, w, h) = window;
        let mut scenario = f.scenario.clone();
        scenario.grid = crate::world::crop_grid(grid, x0, y0, w, h);
        scenario.start = start;
        scenario.goal = goal;
        out.push(Fixture {
            name: f.name,
            summary: f.summary,
            scenario,
        });
    }
    out
}
