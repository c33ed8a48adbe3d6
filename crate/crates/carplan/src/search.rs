//! The planner: A* over continuous poses, deduplicated on a discrete
//! (cell, cell, heading-bin) key.
//!
//! Each search node carries an exact continuous pose; nodes whose poses fall
//! into the same grid cell and heading bin compete for one key, keeping the
//! frontier finite. Expansion applies the vehicle model's motion primitives
//! to the continuous pose, so returned paths are kinematically feasible, not
//! grid-aligned.
//!
//! Costs combine travelled distance (with a weighted heading term), steering
//! effort, and a fixed penalty per reverse step. The heuristic is the
//! straight-line distance in the same weighted metric. With steering and
//! reverse weights at zero the heuristic is admissible and results are
//! optimal over the successor graph; with them nonzero it remains a useful
//! guide but optimality is best-effort, which matches how these planners are
//! used in practice.

use crate::geometry::{
    angle_diff, pose_in_collision, CollisionMode, OccupancyGrid, Pose,
};
use crate::model::{
    motion_blocked, successors, ConfigError, Control, ControlSet, Model, Motion, VehicleSpec,
};
use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashMap};
use std::f64::consts::FRAC_PI_8;
use thiserror::Error;

/// Weights of the edge-cost and heuristic terms.
#[derive(Debug, Clone, PartialEq)]
pub struct CostConfig {
    /// Weight of the wrapped heading difference inside the distance metric.
    pub heading_weight: f64,
    /// Cost per radian of commanded steer on each step.
    pub steer_weight: f64,
    /// Flat cost added to every reverse step.
    pub reverse_penalty: f64,
    /// Multiplier on the heuristic; `0` turns the search into Dijkstra.
    pub heuristic_weight: f64,
}

impl Default for CostConfig {
    fn default() -> Self {
        Self {
            heading_weight: 1.0,
            steer_weight: 0.1,
            reverse_penalty: 1.0,
            heuristic_weight: 1.0,
        }
    }
}

impl CostConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        for (name, value) in [
            ("heading_weight", self.heading_weight),
            ("steer_weight", self.steer_weight),
            ("reverse_penalty", self.reverse_penalty),
            ("heuristic_weight", self.heuristic_weight),
        ] {
            if !(value >= 0.0 && value.is_finite()) {
                return Err(ConfigError::CostWeight { name, value });
            }
        }
        Ok(())
    }
}

/// Search-side knobs: discretization, collision mode, budget, goal tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchConfig {
    /// Number of heading bins for state deduplication.
    pub theta_bins: usize,
    pub collision_mode: CollisionMode,
    /// Hard cap on node expansions before giving up.
    pub max_expansions: usize,
    /// Goal position tolerance (strict Euclidean); `None` means one cell.
    pub goal_position_tolerance: Option<f64>,
    /// Goal heading tolerance (inclusive, wrapped).
    pub goal_heading_tolerance: f64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            theta_bins: 16,
            collision_mode: CollisionMode::Footprint,
            max_expansions: 200_000,
            goal_position_tolerance: None,
            goal_heading_tolerance: FRAC_PI_8,
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.theta_bins == 0 {
            return Err(ConfigError::ThetaBins);
        }
        if self.max_expansions == 0 {
            return Err(ConfigError::MaxExpansions);
        }
        if let Some(tol) = self.goal_position_tolerance {
            if !(tol > 0.0 && tol.is_finite()) {
                return Err(ConfigError::GoalTolerance(tol));
            }
        }
        let ht = self.goal_heading_tolerance;
        if !(ht > 0.0 && ht.is_finite()) {
            return Err(ConfigError::GoalTolerance(ht));
        }
        Ok(())
    }
}

/// A complete planning problem instance.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub grid: OccupancyGrid,
    pub start: Pose,
    pub goal: Pose,
    pub vehicle: VehicleSpec,
    pub model: Model,
    pub controls: ControlSet,
    pub costs: CostConfig,
    pub search: SearchConfig,
}

impl Scenario {
    /// Check every configurable piece; [`plan`] runs this before searching.
    pub fn validate(&self) -> Result<(), ConfigError> {
        self.vehicle.validate()?;
        self.controls.validate(&self.vehicle)?;
        self.costs.validate()?;
        self.search.validate()
    }
}

/// Weighted distance between two poses: Euclidean in position with the
/// wrapped heading difference as a third, weighted axis.
fn weighted_dist(from: Pose, to: Pose, heading_weight: f64) -> f64 {
    let dx = to.x - from.x;
    let dy = to.y - from.y;
    let dt = heading_weight * angle_diff(to.theta, from.theta);
    (dx * dx + dy * dy + dt * dt).sqrt()
}

/// Cost of one motion from `from` to `to` under command `control`.
pub fn step_cost(from: Pose, to: Pose, control: Control, costs: &CostConfig) -> f64 {
    let mut c = weighted_dist(from, to, costs.heading_weight)
        + costs.steer_weight * control.delta.abs();
    if control.v < 0.0 {
        c += costs.reverse_penalty;
    }
    c
}

/// Heuristic estimate from `pose` to `goal`: the weighted distance scaled by
/// `heuristic_weight`.
pub fn heuristic(pose: Pose, goal: Pose, costs: &CostConfig) -> f64 {
    costs.heuristic_weight * weighted_dist(pose, goal, costs.heading_weight)
}

/// Discretization key of a pose: floor cell plus heading bin.
///
/// Heading bins partition `(-pi, pi]` uniformly; the bin of `pi` wraps onto
/// the bin of `-pi`.
pub fn pose_key(pose: Pose, cell_size: f64, theta_bins: usize) -> (i64, i64, usize) {
    let ix = (pose.x / cell_size).floor() as i64;
    let iy = (pose.y / cell_size).floor() as i64;
    let bin_width = std::f64::consts::TAU / theta_bins as f64;
    let bin = ((pose.theta + std::f64::consts::PI) / bin_width).floor() as i64;
    let bin = bin.rem_euclid(theta_bins as i64) as usize;
    (ix, iy, bin)
}

/// Whether `pose` satisfies the goal condition: position strictly within the
/// tolerance radius and wrapped heading error within the heading tolerance.
pub fn satisfies_goal(pose: Pose, goal: Pose, position_tol: f64, heading_tol: f64) -> bool {
    pose.distance_xy(goal) < position_tol
        && angle_diff(pose.theta, goal.theta).abs() <= heading_tol
}

/// One element of a returned path.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathStep {
    pub pose: Pose,
    /// Command that led into this pose; `None` on the start element.
    pub control: Option<Control>,
    /// Motion that led into this pose; `None` on the start element.
    pub motion: Option<Motion>,
    /// Cost of the step into this pose; `0` on the start element.
    pub cost: f64,
}

/// A feasible pose sequence from start to goal tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct Path {
    pub steps: Vec<PathStep>,
    /// Total cost: the sum of the per-step costs.
    pub cost: f64,
    /// Node expansions the search performed to find this path.
    pub expansions: usize,
}

impl Path {
    /// Poses along the path, start first.
    pub fn poses(&self) -> impl Iterator<Item = Pose> + '_ {
        self.steps.iter().map(|s| s.pose)
    }

    /// Number of steps driven in reverse.
    pub fn reverse_step_count(&self) -> usize {
        self.steps
            .iter()
            .filter(|s| s.control.is_some_and(|c| c.v < 0.0))
            .count()
    }

    /// Sum of Euclidean distances between consecutive poses.
    pub fn positional_length(&self) -> f64 {
        self.steps
            .windows(2)
            .map(|w| w[0].pose.distance_xy(w[1].pose))
            .sum()
    }
}

/// Why the search terminated without a path.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NoPathReason {
    /// The reachable key space was exhausted.
    Unreachable,
    /// The expansion budget ran out first.
    BudgetExhausted,
}

/// Result of a completed (non-erroneous) plan call.
#[derive(Debug, Clone, PartialEq)]
pub enum PlanOutcome {
    Path(Path),
    NoPath {
        reason: NoPathReason,
        expansions: usize,
    },
}

impl PlanOutcome {
    /// The path, if one was found.
    pub fn path(&self) -> Option<&Path> {
        match self {
            PlanOutcome::Path(p) => Some(p),
            PlanOutcome::NoPath { .. } => None,
        }
    }
}

/// A problem with the request itself, reported before searching.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum PlanError {
    #[error("start pose is in collision")]
    StartInCollision,
    #[error("goal pose lies outside the grid")]
    GoalOutOfBounds,
    #[error(transparent)]
    Config(#[from] ConfigError),
}

#[derive(Debug, Clone, Copy)]
struct HeapEntry {
    f: f64,
    g: f64,
    seq: u64,
    key: (i64, i64, usize),
}

impl PartialEq for HeapEntry {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for HeapEntry {}

impl PartialOrd for HeapEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HeapEntry {
    /// Reversed for `BinaryHeap`: smallest f first, FIFO among equal f.
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .f
            .total_cmp(&self.f)
            .then_with(|| other.seq.cmp(&self.seq))
    }
}

/// One settled-or-tentative search node. Records live in an append-only
/// arena and `parent` is an arena index, so reopening a key never rewrites
/// history: a child always reconstructs against the exact pose its motion
/// was integrated and collision-checked from.
#[derive(Debug, Clone, Copy)]
struct Record {
    g: f64,
    pose: Pose,
    parent: Option<usize>,
    control: Option<Control>,
    motion: Option<Motion>,
    step: f64,
}

/// Plan a path for the scenario.
///
/// Returns [`PlanOutcome::Path`] on success, [`PlanOutcome::NoPath`] when the
/// search space or budget runs out, and an error when the request itself is
/// invalid (bad configuration, start in collision under the scenario's
/// collision mode, goal outside the grid).
///
/// The search is deterministic: identical scenarios produce bitwise-identical
/// paths.
pub fn plan(scenario: &Scenario) -> Result<PlanOutcome, PlanError> {
    let sc = scenario;
    sc.validate()?;
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

    let mut arena: Vec<Record> = Vec::new();
    let mut best: HashMap<(i64, i64, usize), usize> = HashMap::new();
    let mut heap = BinaryHeap::new();
    let mut seq: u64 = 0;

    let start_key = pose_key(sc.start, cell_size, bins);
    arena.push(Record {
        g: 0.0,
        pose: sc.start,
        parent: None,
        control: None,
        motion: None,
        step: 0.0,
    });
    best.insert(start_key, 0);
    heap.push(HeapEntry {
        f: heuristic(sc.start, sc.goal, &sc.costs),
        g: 0.0,
        seq,
        key: start_key,
    });

    let mut expansions = 0usize;
    while let Some(entry) = heap.pop() {
        let rec_idx = best[&entry.key];
        let rec = arena[rec_idx];
        if entry.g > rec.g {
            continue; // superseded by a cheaper route to this key
        }
        if satisfies_goal(rec.pose, sc.goal, position_tol, heading_tol) {
            return Ok(PlanOutcome::Path(reconstruct(&arena, rec_idx, expansions)));
        }
        if expansions >= sc.search.max_expansions {
            return Ok(PlanOutcome::NoPath {
                reason: NoPathReason::BudgetExhausted,
                expansions,
            });
        }
        expansions += 1;

        for succ in successors(sc.model, rec.pose, &sc.vehicle, &sc.controls) {
            if motion_blocked(
                rec.pose,
                &succ.motion,
                &sc.vehicle,
                &sc.grid,
                sc.search.collision_mode,
            ) {
                continue;
            }
            let step = step_cost(rec.pose, succ.pose, succ.control, &sc.costs);
            let g = rec.g + step;
            let key = pose_key(succ.pose, cell_size, bins);
            let improved = match best.get(&key) {
                Some(&existing) => g < arena[existing].g,
                None => true,
            };
            if improved {
                arena.push(Record {
                    g,
                    pose: succ.pose,
                    parent: Some(rec_idx),
                    control: Some(succ.control),
                    motion: Some(succ.motion),
                    step,
                });
                best.insert(key, arena.len() - 1);
                seq += 1;
                heap.push(HeapEntry {
                    f: g + heuristic(succ.pose, sc.goal, &sc.costs),
                    g,
                    seq,
                    key,
                });
            }
        }
    }
    Ok(PlanOutcome::NoPath {
        reason: NoPathReason::Unreachable,
        expansions,
    })
}

fn reconstruct(arena: &[Record], goal_idx: usize, expansions: usize) -> Path {
    let mut steps = Vec::new();
    let mut cursor = Some(goal_idx);
    while let Some(idx) = cursor {
        let rec = &arena[idx];
        steps.push(PathStep {
            pose: rec.pose,
            control: rec.control,
            motion: rec.motion,
            cost: rec.step,
        });
        cursor = rec.parent;
    }
    steps.reverse();
    let cost = steps.iter().map(|s| s.cost).sum();
    Path {
        steps,
        cost,
        expansions,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Footprint;
    use crate::world::{vehicles, GridBuilder};
    use approx::assert_relative_eq;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn free_scenario() -> Scenario {
        let grid = OccupancyGrid::new_free(20, 20, 1.0);
        let vehicle = vehicles::big();
        let controls = ControlSet::defaults(&vehicle, grid.cell_size());
        Scenario {
            start: Pose::new(2.0, 2.0, 0.0),
            goal: Pose::new(17.0, 2.0, 0.0),
            vehicle,
            model: Model::Kinematic,
            controls,
            costs: CostConfig::default(),
            search: SearchConfig::default(),
            grid,
        }
    }

    #[test]
    fn step_cost_pinned_values() {
        let costs = CostConfig {
            heading_weight: 1.0,
            steer_weight: 0.0,
            reverse_penalty: 100.0,
            heuristic_weight: 1.0,
        };
        let a = Pose::new(0.0, 0.0, 0.0);
        let b = Pose::new(1.0, 0.0, 0.0);
        let fwd = Control { v: 1.0, delta: 0.0 };
        let rev = Control {
            v: -1.0,
            delta: 0.0,
        };
        assert_eq!(step_cost(a, b, fwd, &costs), 1.0);
        assert_eq!(step_cost(b, a, rev, &costs), 101.0);

        let steer = CostConfig {
            steer_weight: 2.0,
            reverse_penalty: 0.0,
            ..CostConfig::default()
        };
        let c = Pose::new(0.9, 0.3, 0.4);
        let d = weighted_dist(a, c, 1.0);
        assert_relative_eq!(
            step_cost(a, c, Control { v: 1.0, delta: 0.5 }, &steer),
            d + 1.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn heuristic_pinned_values() {
        let costs = CostConfig {
            steer_weight: 0.0,
            reverse_penalty: 0.0,
            ..CostConfig::default()
        };
        let goal = Pose::new(0.0, 0.0, 0.0);
        assert_eq!(heuristic(goal, goal, &costs), 0.0);
        assert_relative_eq!(
            heuristic(Pose::new(3.0, 4.0, 0.0), goal, &costs),
            5.0,
            epsilon = 1e-12
        );
        // 3pi/2 wraps to -pi/2: the short way round.
        assert_relative_eq!(
            heuristic(Pose::new(0.0, 0.0, 3.0 * PI / 2.0), goal, &costs),
            FRAC_PI_2,
            epsilon = 1e-12
        );
    }

    #[test]
    fn pose_key_bins_wrap_at_pi() {
        let key_at = |theta: f64| pose_key(Pose::new(0.5, 0.5, theta), 1.0, 16);
        assert_eq!(key_at(PI).2, key_at(-PI + 1e-9).2);
        assert_eq!(key_at(0.0).2, 8);
        assert_eq!(pose_key(Pose::new(3.7, -0.2, 0.0), 1.0, 16).0, 3);
        assert_eq!(pose_key(Pose::new(3.7, -0.2, 0.0), 1.0, 16).1, -1);
    }

    #[test]
    fn straight_run_costs_full_distance() {
        // The strict position tolerance forbids stopping one full cell short,
        // so the straight 15-cell run costs exactly 15.
        let sc = free_scenario();
        let path = plan(&sc).unwrap().path().cloned().expect("path");
        assert_eq!(path.cost, 15.0);
        assert_eq!(path.reverse_step_count(), 0);
        assert_eq!(path.steps.len(), 16);
        assert_eq!(path.steps[0].pose, sc.start);
        assert!(satisfies_goal(
            path.steps.last().unwrap().pose,
            sc.goal,
            1.0,
            FRAC_PI_8
        ));
    }

    #[test]
    fn start_within_tolerance_returns_trivial_path() {
        let mut sc = free_scenario();
        sc.goal = Pose::new(2.4, 2.0, 0.1);
        let path = plan(&sc).unwrap().path().cloned().expect("path");
        assert_eq!(path.steps.len(), 1);
        assert_eq!(path.cost, 0.0);
        assert_eq!(path.expansions, 0);
    }

    #[test]
    fn enclosed_goal_is_unreachable() {
        let grid = GridBuilder::new(20, 20, 1.0)
            .rect(10, 10, 16, 16)
            .clear(12, 12, 14, 14)
            .build()
            .unwrap();
        let mut sc = free_scenario();
        sc.grid = grid;
        sc.goal = Pose::new(13.0, 13.0, 0.0);
        match plan(&sc).unwrap() {
            PlanOutcome::NoPath { reason, .. } => {
                assert_eq!(reason, NoPathReason::Unreachable)
            }
            PlanOutcome::Path(_) => panic!("expected NoPath"),
        }
    }

    #[test]
    fn budget_exhaustion_is_reported_distinctly() {
        let mut sc = free_scenario();
        sc.search.max_expansions = 5;
        match plan(&sc).unwrap() {
            PlanOutcome::NoPath { reason, expansions } => {
                assert_eq!(reason, NoPathReason::BudgetExhausted);
                assert_eq!(expansions, 5);
            }
            PlanOutcome::Path(_) => panic!("expected NoPath"),
        }
    }

    #[test]
    fn start_in_collision_is_an_error() {
        let mut sc = free_scenario();
        for ix in 0..sc.grid.width() {
            let h = sc.grid.height();
            for iy in 0..h {
                if (1..4).contains(&ix) && (1..4).contains(&iy) {
                    sc.grid.set(ix, iy, true);
                }
            }
        }
        assert_eq!(plan(&sc), Err(PlanError::StartInCollision));
    }

    #[test]
    fn goal_outside_grid_is_an_error() {
        let mut sc = free_scenario();
        sc.goal = Pose::new(25.0, 2.0, 0.0);
        assert_eq!(plan(&sc), Err(PlanError::GoalOutOfBounds));
    }

    #[test]
    fn invalid_costs_are_a_config_error() {
        let mut sc = free_scenario();
        sc.costs.reverse_penalty = -1.0;
        assert!(matches!(plan(&sc), Err(PlanError::Config(_))));
    }

    #[test]
    fn geometric_model_reaches_the_goal_too() {
        let mut sc = free_scenario();
        sc.model = Model::Geometric;
        let path = plan(&sc).unwrap().path().cloned().expect("path");
        assert!(path.cost > 0.0);
        let last = path.steps.last().unwrap().pose;
        assert!(last.distance_xy(sc.goal) < 1.0);
    }

    #[test]
    fn plan_is_deterministic() {
        let sc = free_scenario();
        let a = plan(&sc).unwrap().path().cloned().unwrap();
        let b = plan(&sc).unwrap().path().cloned().unwrap();
        assert_eq!(a, b);
        assert_eq!(a.cost.to_bits(), b.cost.to_bits());
        for (x, y) in a.steps.iter().zip(&b.steps) {
            assert_eq!(x.pose.x.to_bits(), y.pose.x.to_bits());
            assert_eq!(x.pose.y.to_bits(), y.pose.y.to_bits());
            assert_eq!(x.pose.theta.to_bits(), y.pose.theta.to_bits());
        }
    }

    #[test]
    fn path_cost_matches_step_sum_and_no_collisions() {
        let grid = GridBuilder::new(24, 24, 1.0)
            .border(1)
            .rect(10, 1, 12, 16)
            .build()
            .unwrap();
        let vehicle = vehicles::small();
        let controls = ControlSet::defaults(&vehicle, 1.0);
        let sc = Scenario {
            start: Pose::new(4.0, 4.0, 0.0),
            goal: Pose::new(18.0, 4.0, 0.0),
            vehicle,
            model: Model::Kinematic,
            controls,
            costs: CostConfig::default(),
            search: SearchConfig::default(),
            grid,
        };
        let path = plan(&sc).unwrap().path().cloned().expect("path");
        let sum: f64 = path.steps.iter().map(|s| s.cost).sum();
        assert_relative_eq!(sum, path.cost, epsilon = 1e-9);
        for step in &path.steps {
            assert!(!pose_in_collision(
                step.pose,
                &sc.vehicle.footprint,
                &sc.grid,
                CollisionMode::Footprint
            ));
        }
    }

    #[test]
    fn tolerance_strictness_blocks_a_whole_cell_gap() {
        assert!(!satisfies_goal(
            Pose::new(16.0, 2.0, 0.0),
            Pose::new(17.0, 2.0, 0.0),
            1.0,
            FRAC_PI_8
        ));
        assert!(satisfies_goal(
            Pose::new(16.001, 2.0, 0.0),
            Pose::new(17.0, 2.0, 0.0),
            1.0,
            FRAC_PI_8
        ));
        // Heading tolerance is inclusive at the boundary.
        assert!(satisfies_goal(
            Pose::new(17.0, 2.0, FRAC_PI_8),
            Pose::new(17.0, 2.0, 0.0),
            1.0,
            FRAC_PI_8
        ));
    }

    #[test]
    fn reverse_penalty_prunes_reverse_steps_in_open_space() {
        // Goal directly behind the start: backing up one cell would be
        // cheapest without a penalty.
        let mut sc = free_scenario();
        sc.start = Pose::new(10.0, 10.0, 0.0);
        sc.goal = Pose::new(8.0, 10.0, 0.0);
        sc.costs.reverse_penalty = 0.0;
        sc.costs.heuristic_weight = 0.0;
        let cheap = plan(&sc).unwrap().path().cloned().unwrap();
        assert!(cheap.reverse_step_count() > 0);

        sc.costs.reverse_penalty = 100.0;
        let pricey = plan(&sc).unwrap().path().cloned().unwrap();
        assert_eq!(pricey.reverse_step_count(), 0);
        assert!(pricey.cost >= cheap.cost);
    }

    #[test]
    fn unused_footprint_field_not_required_by_midpoint_mode() {
        // Midpoint mode must work even when the footprint would not fit.
        let mut sc = free_scenario();
        sc.vehicle.footprint = Footprint::new(100.0, 100.0);
        sc.search.collision_mode = CollisionMode::Midpoint;
        assert!(plan(&sc).unwrap().path().is_some());
    }
}
