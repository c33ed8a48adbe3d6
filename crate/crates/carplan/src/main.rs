//! Command-line front end for the planner.
//!
//! Exit codes: 0 = a path was found, 1 = configuration or input error,
//! 2 = goal unreachable, 3 = expansion budget exhausted.

use carplan::oracle::{dijkstra_reference, OracleOutcome};
use carplan::render::{path_csv, render_svg};
use carplan::scenario::ScenarioFile;
use carplan::world::{fixture, fixtures, vehicles};
use carplan::{
    plan, CollisionMode, Model, NoPathReason, Path, PlanOutcome, Pose, Scenario,
};
use clap::{Parser, ValueEnum};
use std::path::{Path as FsPath, PathBuf};
use std::time::Instant;

#[derive(Parser, Debug)]
#[command(
    name = "carplan",
    version,
    about = "Plan paths for a car-like vehicle on an occupancy grid"
)]
struct Args {
    /// JSON scenario file.
    #[arg(long, conflicts_with_all = ["fixture", "all_fixtures"])]
    scenario: Option<PathBuf>,

    /// Built-in fixture name (see --list-fixtures).
    #[arg(long, conflicts_with = "all_fixtures")]
    fixture: Option<String>,

    /// Run every built-in fixture; --out/--svg become directories.
    #[arg(long)]
    all_fixtures: bool,

    /// List the built-in fixtures and exit.
    #[arg(long)]
    list_fixtures: bool,

    /// Override the motion model.
    #[arg(long, value_enum)]
    model: Option<ModelArg>,

    /// Override the vehicle with a stock one.
    #[arg(long, value_enum)]
    vehicle: Option<VehicleArg>,

    /// Override the per-step reverse penalty.
    #[arg(long)]
    reverse_penalty: Option<f64>,

    /// Override the steering-effort weight.
    #[arg(long)]
    steer_weight: Option<f64>,

    /// Override the heuristic weight (0 searches uninformed).
    #[arg(long)]
    heuristic_weight: Option<f64>,

    /// Override the collision check.
    #[arg(long, value_enum)]
    collision_mode: Option<CollisionArg>,

    /// Override the start pose as "x,y,theta_deg".
    #[arg(long)]
    start: Option<String>,

    /// Override the goal pose as "x,y,theta_deg".
    #[arg(long)]
    goal: Option<String>,

    /// Write the path as CSV to this file (directory with --all-fixtures).
    #[arg(long)]
    out: Option<PathBuf>,

    /// Write an SVG rendering to this file (directory with --all-fixtures).
    #[arg(long)]
    svg: Option<PathBuf>,

    /// Draw the body rectangle at every k-th pose in the SVG.
    #[arg(long, default_value_t = 5)]
    footprint_every: usize,

    /// Also run the uninformed reference search and report agreement.
    #[arg(long)]
    oracle: bool,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum ModelArg {
    Kinematic,
    Geometric,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum CollisionArg {
    Footprint,
    Midpoint,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum VehicleArg {
    Small,
    Big,
    Long,
}

fn main() {
    let args = match Args::try_parse() {
        Ok(args) => args,
        Err(err)
            if matches!(
                err.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            ) =>
        {
            print!("{err}");
            std::process::exit(0);
        }
        Err(err) => {
            eprint!("{err}");
            std::process::exit(1);
        }
    };
    std::process::exit(run(&args));
}

fn run(args: &Args) -> i32 {
    if args.list_fixtures {
        for f in fixtures() {
            println!("{:<16} {}", f.name, f.summary);
        }
        return 0;
    }

    if args.all_fixtures {
        let mut code = 0;
        for f in fixtures() {
            let mut scenario = f.scenario;
            if let Err(message) = apply_overrides(&mut scenario, args) {
                eprintln!("error: {message}");
                return 1;
            }
            let csv = match artifact_in_dir(args.out.as_deref(), f.name, "csv") {
                Ok(path) => path,
                Err(message) => {
                    eprintln!("error: {message}");
                    return 1;
                }
            };
            let svg = match artifact_in_dir(args.svg.as_deref(), f.name, "svg") {
                Ok(path) => path,
                Err(message) => {
                    eprintln!("error: {message}");
                    return 1;
                }
            };
            let this = run_one(&scenario, args, &format!("fixture={} ", f.name), csv, svg);
            if code == 0 {
                code = this;
            }
        }
        return code;
    }

    let mut scenario = match load_scenario(args) {
        Ok(scenario) => scenario,
        Err(message) => {
            eprintln!("error: {message}");
            return 1;
        }
    };
    if let Err(message) = apply_overrides(&mut scenario, args) {
        eprintln!("error: {message}");
        return 1;
    }
    run_one(&scenario, args, "", args.out.clone(), args.svg.clone())
}

fn load_scenario(args: &Args) -> Result<Scenario, String> {
    if let Some(path) = &args.scenario {
        let file = ScenarioFile::from_path(path).map_err(|e| e.to_string())?;
        let base = path.parent().unwrap_or(FsPath::new("."));
        return file.resolve(base).map_err(|e| e.to_string());
    }
    if let Some(name) = &args.fixture {
        return fixture(name).map(|f| f.scenario).ok_or_else(|| {
            let names: Vec<&str> = fixtures().iter().map(|f| f.name).collect();
            format!("unknown fixture '{name}'; available: {}", names.join(", "))
        });
    }
    Err("nothing to plan: pass --scenario, --fixture, or --all-fixtures".to_string())
}

fn apply_overrides(scenario: &mut Scenario, args: &Args) -> Result<(), String> {
    if let Some(model) = args.model {
        scenario.model = match model {
            ModelArg::Kinematic => Model::Kinematic,
            ModelArg::Geometric => Model::Geometric,
        };
    }
    if let Some(vehicle) = args.vehicle {
        scenario.vehicle = match vehicle {
            VehicleArg::Small => vehicles::small(),
            VehicleArg::Big => vehicles::big(),
            VehicleArg::Long => vehicles::long(),
        };
        // The control set derives from the vehicle; rebuild it to match.
        scenario.controls =
            carplan::ControlSet::defaults(&scenario.vehicle, scenario.grid.cell_size());
    }
    if let Some(penalty) = args.reverse_penalty {
        scenario.costs.reverse_penalty = penalty;
    }
    if let Some(weight) = args.steer_weight {
        scenario.costs.steer_weight = weight;
    }
    if let Some(weight) = args.heuristic_weight {
        scenario.costs.heuristic_weight = weight;
    }
    if let Some(mode) = args.collision_mode {
        scenario.search.collision_mode = match mode {
            CollisionArg::Footprint => CollisionMode::Footprint,
            CollisionArg::Midpoint => CollisionMode::Midpoint,
        };
    }
    if let Some(text) = &args.start {
        scenario.start = parse_pose(text).ok_or_else(|| {
            format!("invalid --start '{text}': expected x,y,theta_deg")
        })?;
    }
    if let Some(text) = &args.goal {
        scenario.goal = parse_pose(text).ok_or_else(|| {
            format!("invalid --goal '{text}': expected x,y,theta_deg")
        })?;
    }
    Ok(())
}

fn parse_pose(text: &str) -> Option<Pose> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 3 {
        return None;
    }
    let x: f64 = parts[0].trim().parse().ok()?;
    let y: f64 = parts[1].trim().parse().ok()?;
    let deg: f64 = parts[2].trim().parse().ok()?;
    Some(Pose::new(x, y, deg.to_radians()))
}

fn artifact_in_dir(
    dir: Option<&FsPath>,
    name: &str,
    extension: &str,
) -> Result<Option<PathBuf>, String> {
    let Some(dir) = dir else { return Ok(None) };
    std::fs::create_dir_all(dir).map_err(|e| format!("cannot create {}: {e}", dir.display()))?;
    Ok(Some(dir.join(format!("{name}.{extension}"))))
}

fn run_one(
    scenario: &Scenario,
    args: &Args,
    prefix: &str,
    csv_path: Option<PathBuf>,
    svg_path: Option<PathBuf>,
) -> i32 {
    let started = Instant::now();
    let outcome = match plan(scenario) {
        Ok(outcome) => outcome,
        Err(err) => {
            eprintln!("error: {err}");
            return 1;
        }
    };
    let wall_ms = started.elapsed().as_millis();

    match outcome {
        PlanOutcome::Path(path) => {
            println!(
                "{prefix}cost={} expansions={} reverse_step_count={} wall_ms={wall_ms}",
                path.cost,
                path.expansions,
                path.reverse_step_count()
            );
            if args.oracle {
                report_oracle(scenario, &path, prefix);
            }
            if let Some(out) = csv_path {
                if let Err(e) = std::fs::write(&out, path_csv(&path)) {
                    eprintln!("error: cannot write {}: {e}", out.display());
                    return 1;
                }
            }
            if let Err(code) = write_svg(scenario, Some(&path), svg_path, args) {
                return code;
            }
            0
        }
        PlanOutcome::NoPath { reason, expansions } => {
            let (status, code) = match reason {
                NoPathReason::Unreachable => ("unreachable", 2),
                NoPathReason::BudgetExhausted => ("budget_exhausted", 3),
            };
            println!("{prefix}status={status} expansions={expansions} wall_ms={wall_ms}");
            eprintln!("no path found: {status} after {expansions} expansions");
            if let Err(err_code) = write_svg(scenario, None, svg_path, args) {
                return err_code;
            }
            code
        }
    }
}

fn write_svg(
    scenario: &Scenario,
    path: Option<&Path>,
    svg_path: Option<PathBuf>,
    args: &Args,
) -> Result<(), i32> {
    let Some(out) = svg_path else { return Ok(()) };
    let svg = render_svg(
        &scenario.grid,
        path,
        &scenario.vehicle.footprint,
        scenario.start,
        scenario.goal,
        args.footprint_every,
    );
    std::fs::write(&out, svg).map_err(|e| {
        eprintln!("error: cannot write {}: {e}", out.display());
        1
    })
}

fn report_oracle(scenario: &Scenario, path: &Path, prefix: &str) {
    match dijkstra_reference(scenario) {
        Ok(OracleOutcome::Path(reference)) => {
            let matched = (reference.cost - path.cost).abs() <= 1e-6 * path.cost.max(1.0);
            println!(
                "{prefix}oracle_cost={} oracle_expansions={} oracle_match={matched}",
                reference.cost, reference.expansions
            );
        }
        Ok(OracleOutcome::NoPath { .. }) => {
            println!("{prefix}oracle_cost=unreachable oracle_match=false");
        }
        Err(err) => eprintln!("oracle error: {err}"),
    }
}
