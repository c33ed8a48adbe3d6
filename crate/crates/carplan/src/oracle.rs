//! Independent reference planners used to cross-check the main search.
//!
//! [`dijkstra_reference`] explores the exact same successor graph as
//! [`plan`](crate::search::plan) — same motions, same costs, same collision
//! sampling, same goal condition — but with a deliberately separate
//! uniform-cost loop (settle-once, no heuristic). Agreement between the two
//! is the core optimality check in the test suite. It can be slow; that is
//! fine for its job.
//!
//! [`holonomic_lower_bound`] ignores the vehicle entirely and measures the
//! 8-connected grid distance, a quick sanity yardstick for path lengths.

use crate::geometry::{pose_in_collision, OccupancyGrid, Pose};
use crate::model::{motion_blocked, successors};
use crate::search::{pose_key, satisfies_goal, step_cost, NoPathReason, PlanError, Scenario};
use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashMap, HashSet};
use std::f64::consts::SQRT_2;

/// An optimal reference answer.
#[derive(Debug, Clone)]
pub struct OracleResult {
    /// Minimal total cost over the discretized search space.
    pub cost: f64,
    /// One optimal pose sequence, start first.
    pub poses: Vec<Pose>,
    /// Nodes settled before the goal popped.
    pub expansions: usize,
}

/// Outcome of a reference run; mirrors [`PlanOutcome`](crate::PlanOutcome).
#[derive(Debug, Clone)]
pub enum OracleOutcome {
    Path(OracleResult),
    NoPath {
        reason: NoPathReason,
        expansions: usize,
    },
}

impl OracleOutcome {
    pub fn result(&self) -> Option<&OracleResult> {
        match self {
            OracleOutcome::Path(r) => Some(r),
            OracleOutcome::NoPath { .. } => None,
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct QueueItem {
    g: f64,
    seq: u64,
    key: (i64, i64, usize),
}

impl PartialEq for QueueItem {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for QueueItem {}
impl PartialOrd for QueueItem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for QueueItem {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .g
            .total_cmp(&self.g)
            .then_with(|| other.seq.cmp(&self.seq))
    }
}

/// Uniform-cost search over the same discretized successor graph as the
/// planner. Settles each key at most once; never uses a heuristic.
pub fn dijkstra_reference(scenario: &Scenario) -> Result<OracleOutcome, PlanError> {
    let sc = scenario;
    sc.vehicle.validate()?;
    sc.controls.validate(&sc.vehicle)?;
    sc.costs.validate()?;
    sc.search.validate()?;
    if !sc.grid.contains_point(sc.goal.x, sc.goal.y) {
        return Err(PlanError::GoalOutOfBounds);
    }
    if pose_in_collision(
        sc.start,
        &sc.vehicle.footprint,
        &sc.grid,
        sc.search.collision_mode,
    ) {
        return Err(PlanError::StartInCollision);
    }

    let cell_size = sc.grid.cell_size();
    let position_tol = sc.search.goal_position_tolerance.unwrap_or(cell_size);
    let heading_tol = sc.search.goal_heading_tolerance;
    let bins = sc.search.theta_bins;

    struct Node {
        g: f64,
        pose: Pose,
        parent: Option<(i64, i64, usize)>,
    }
    let mut nodes: HashMap<(i64, i64, usize), Node> = HashMap::new();
    let mut settled: HashSet<(i64, i64, usize)> = HashSet::new();
    let mut queue = BinaryHeap::new();
    let mut seq = 0u64;

    let start_key = pose_key(sc.start, cell_size, bins);
    nodes.insert(
        start_key,
        Node {
            g: 0.0,
            pose: sc.start,
            parent: None,
        },
    );
    queue.push(QueueItem {
        g: 0.0,
        seq,
        key: start_key,
    });

    let mut expansions = 0usize;
    while let Some(item) = queue.pop() {
        if !settled.insert(item.key) {
            continue;
        }
        let (pose, g) = {
            let n = &nodes[&item.key];
            (n.pose, n.g)
        };
        if satisfies_goal(pose, sc.goal, position_tol, heading_tol) {
            let mut poses = Vec::new();
            let mut cursor = Some(item.key);
            while let Some(k) = cursor {
                let n = &nodes[&k];
                poses.push(n.pose);
                cursor = n.parent;
            }
            poses.reverse();
            return Ok(OracleOutcome::Path(OracleResult {
                cost: g,
                poses,
                expansions,
            }));
        }
        if expansions >= sc.search.max_expansions {
            return Ok(OracleOutcome::NoPath {
                reason: NoPathReason::BudgetExhausted,
                expansions,
            });
        }
        expansions += 1;

        for succ in successors(sc.model, pose, &sc.vehicle, &sc.controls) {
            if motion_blocked(
                pose,
                &succ.motion,
                &sc.vehicle,
                &sc.grid,
                sc.search.collision_mode,
            ) {
                continue;
            }
            let key = pose_key(succ.pose, cell_size, bins);
            if settled.contains(&key) {
                continue;
            }
            let tentative = g + step_cost(pose, succ.pose, succ.control, &sc.costs);
            let better = match nodes.get(&key) {
                Some(existing) => tentative < existing.g,
                None => true,
            };
            if better {
                nodes.insert(
                    key,
                    Node {
                        g: tentative,
                        pose: succ.pose,
                        parent: Some(item.key),
                    },
                );
                seq += 1;
                queue.push(QueueItem {
                    g: tentative,
                    seq,
                    key,
                });
            }
        }
    }
    Ok(OracleOutcome::NoPath {
        reason: NoPathReason::Unreachable,
        expansions,
    })
}

/// 8-connected grid distance between the cells containing `start` and `goal`,
/// ignoring heading and footprint (midpoint occupancy only).
///
/// Axis moves cost one cell size, diagonal moves `sqrt(2)` cell sizes, and a
/// diagonal move only requires the destination cell to be free. Returns
/// `None` when either endpoint cell is blocked or no cell path exists.
pub fn holonomic_lower_bound(grid: &OccupancyGrid, start: Pose, goal: Pose) -> Option<f64> {
    let from = grid.cell_of(start.x, start.y);
    let to = grid.cell_of(goal.x, goal.y);
    if grid.blocked_cell(from.0, from.1) || grid.blocked_cell(to.0, to.1) {
        return None;
    }

    #[derive(Debug, Clone, Copy)]
    struct CellItem {
        g: f64,
        cell: (i64, i64),
    }
    impl PartialEq for CellItem {
        fn eq(&self, other: &Self) -> bool {
            self.g == other.g
        }
    }
    impl Eq for CellItem {}
    impl PartialOrd for CellItem {
        fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
            Some(self.cmp(other))
        }
    }
    impl Ord for CellItem {
        fn cmp(&self, other: &Self) -> Ordering {
            other.g.total_cmp(&self.g)
        }
    }

    let cs = grid.cell_size();
    let mut dist: HashMap<(i64, i64), f64> = HashMap::new();
    let mut queue = BinaryHeap::new();
    dist.insert(from, 0.0);
    queue.push(CellItem { g: 0.0, cell: from });
    while let Some(item) = queue.pop() {
        if item.g > dist[&item.cell] {
            continue;
        }
        if item.cell == to {
            return Some(item.g);
        }
        for dy in -1i64..=1 {
            for dx in -1i64..=1 {
                if dx == 0 && dy == 0 {
                    continue;
                }
                let next = (item.cell.0 + dx, item.cell.1 + dy);
                if grid.blocked_cell(next.0, next.1) {
                    continue;
                }
                let step = if dx != 0 && dy != 0 { SQRT_2 * cs } else { cs };
                let g = item.g + step;
                if dist.get(&next).is_none_or(|&d| g < d) {
                    dist.insert(next, g);
                    queue.push(CellItem { g, cell: next });
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{ControlSet, Model};
    use crate::search::{plan, CostConfig, SearchConfig};
    use crate::world::{vehicles, GridBuilder};
    use approx::assert_relative_eq;

    fn admissible_costs() -> CostConfig {
        CostConfig {
            heading_weight: 0.0,
            // A small steer cost keeps the straight line uniquely optimal,
            // so both searches agree to the last bit instead of picking
            // among float-level ties between equal-length wiggly paths.
            steer_weight: 0.1,
            reverse_penalty: 0.0,
            heuristic_weight: 1.0,
        }
    }

    #[test]
    fn oracle_start_equals_goal() {
        let grid = OccupancyGrid::new_free(10, 10, 1.0);
        let vehicle = vehicles::small();
        let controls = ControlSet::defaults(&vehicle, 1.0);
        let sc = Scenario {
            start: Pose::new(5.0, 5.0, 0.0),
            goal: Pose::new(5.0, 5.0, 0.0),
            vehicle,
            model: Model::Kinematic,
            controls,
            costs: CostConfig::default(),
            search: SearchConfig::default(),
            grid,
        };
        let result = dijkstra_reference(&sc).unwrap();
        let r = result.result().expect("path");
        assert_eq!(r.cost, 0.0);
        assert_eq!(r.poses.len(), 1);
    }

    #[test]
    fn oracle_matches_plan_on_straight_line() {
        let grid = OccupancyGrid::new_free(20, 20, 1.0);
        let vehicle = vehicles::big();
        let controls = ControlSet::defaults(&vehicle, 1.0);
        let sc = Scenario {
            start: Pose::new(2.0, 2.0, 0.0),
            goal: Pose::new(17.0, 2.0, 0.0),
            vehicle,
            model: Model::Kinematic,
            controls,
            costs: admissible_costs(),
            search: SearchConfig::default(),
            grid,
        };
        let oracle = dijkstra_reference(&sc).unwrap();
        let planned = plan(&sc).unwrap();
        let oracle_cost = oracle.result().expect("oracle path").cost;
        let plan_cost = planned.path().expect("plan path").cost;
        assert_eq!(plan_cost, oracle_cost);
        assert!(planned.path().unwrap().expansions <= oracle.result().unwrap().expansions);
    }

    #[test]
    fn oracle_reports_enclosed_goal_unreachable() {
        let grid = GridBuilder::new(16, 16, 1.0)
            .rect(8, 8, 14, 14)
            .clear(10, 10, 12, 12)
            .build()
            .unwrap();
        let vehicle = vehicles::small();
        let controls = ControlSet::defaults(&vehicle, 1.0);
        let sc = Scenario {
            start: Pose::new(3.0, 3.0, 0.0),
            goal: Pose::new(11.0, 11.0, 0.0),
            vehicle,
            model: Model::Kinematic,
            controls,
            costs: CostConfig::default(),
            search: SearchConfig::default(),
            grid,
        };
        match dijkstra_reference(&sc).unwrap() {
            OracleOutcome::NoPath { reason, .. } => {
                assert_eq!(reason, NoPathReason::Unreachable)
            }
            OracleOutcome::Path(_) => panic!("expected NoPath"),
        }
    }

    #[test]
    fn lower_bound_pinned_values() {
        let grid = OccupancyGrid::new_free(10, 10, 1.0);
        let at = |x: f64, y: f64| Pose::new(x, y, 0.0);
        assert_relative_eq!(
            holonomic_lower_bound(&grid, at(2.5, 2.5), at(3.5, 2.5)).unwrap(),
            1.0
        );
        assert_relative_eq!(
            holonomic_lower_bound(&grid, at(2.5, 2.5), at(3.5, 3.5)).unwrap(),
            SQRT_2
        );
        assert_eq!(
            holonomic_lower_bound(&grid, at(2.5, 2.5), at(2.5, 2.5)).unwrap(),
            0.0
        );
    }

    #[test]
    fn lower_bound_detours_around_walls() {
        let grid = GridBuilder::new(10, 10, 1.0)
            .rect(4, 0, 5, 9)
            .build()
            .unwrap();
        let bound =
            holonomic_lower_bound(&grid, Pose::new(2.5, 2.5, 0.0), Pose::new(7.5, 2.5, 0.0))
                .unwrap();
        // Must climb past y = 9 to cross the wall: clearly longer than 5.
        assert!(bound > 5.0 + 4.0);
        // Fully separated halves: no path at all.
        let sealed = GridBuilder::new(10, 10, 1.0).rect(4, 0, 5, 10).build().unwrap();
        assert_eq!(
            holonomic_lower_bound(&sealed, Pose::new(2.5, 2.5, 0.0), Pose::new(7.5, 2.5, 0.0)),
            None
        );
    }
}
