//! Artifact output: CSV path dumps and SVG scene renderings.
//!
//! Both formats are fully deterministic — identical inputs yield
//! byte-identical output — so downstream diffing and regression checks can
//! compare artifacts directly.

use crate::geometry::{Footprint, OccupancyGrid, Pose};
use crate::search::Path;
use std::fmt::Write;

/// Render a path as CSV with a mandatory header.
///
/// Columns: `step_index, x, y, theta_rad, v, delta_rad, step_cost,
/// cumulative_cost`. The start row reports zero speed, steer and cost. The
/// final `cumulative_cost` equals the path's reported cost.
pub fn path_csv(path: &Path) -> String {
    let mut out = String::from("step_index,x,y,theta_rad,v,delta_rad,step_cost,cumulative_cost\n");
    let mut cumulative = 0.0;
    for (index, step) in path.steps.iter().enumerate() {
        cumulative += step.cost;
        let (v, delta) = match step.control {
            Some(c) => (c.v, c.delta),
            None => (0.0, 0.0),
        };
        writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            index, step.pose.x, step.pose.y, step.pose.theta, v, delta, step.cost, cumulative
        )
        .expect("writing to a String cannot fail");
    }
    out
}

/// Scale factor from world units to SVG pixels.
const PX_PER_UNIT: f64 = 16.0;

/// Render the scene as an SVG document: occupied cells as filled squares,
/// the path as a polyline through pose positions, the body rectangle at
/// every `footprint_every`-th pose (and the last), and start/goal markers
/// with heading arrows. World y points up.
pub fn render_svg(
    grid: &OccupancyGrid,
    path: Option<&Path>,
    footprint: &Footprint,
    start: Pose,
    goal: Pose,
    footprint_every: usize,
) -> String {
    let w = grid.world_width();
    let h = grid.world_height();
    // SVG y runs down; flip through the world height.
    let fy = |y: f64| h - y;
    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        w * PX_PER_UNIT,
        h * PX_PER_UNIT,
        w,
        h
    )
    .unwrap();
    writeln!(
        out,
        r##"<rect x="0" y="0" width="{w}" height="{h}" fill="#ffffff" stroke="#202020" stroke-width="0.1"/>"##
    )
    .unwrap();

    let cs = grid.cell_size();
    for (ix, iy) in grid.occupied_cells() {
        writeln!(
            out,
            r##"<rect x="{}" y="{}" width="{cs}" height="{cs}" fill="#37474f"/>"##,
            ix as f64 * cs,
            fy(iy as f64 * cs + cs),
        )
        .unwrap();
    }

    if let Some(path) = path {
        if path.steps.len() > 1 {
            let mut points = String::new();
            for pose in path.poses() {
                write!(points, "{},{} ", pose.x, fy(pose.y)).unwrap();
            }
            writeln!(
                out,
                r##"<polyline points="{}" fill="none" stroke="#e53935" stroke-width="0.12"/>"##,
                points.trim_end()
            )
            .unwrap();
        }
        let every = footprint_every.max(1);
        let last = path.steps.len() - 1;
        for (i, step) in path.steps.iter().enumerate() {
            if i % every != 0 && i != last {
                continue;
            }
            write_footprint(&mut out, footprint, step.pose, fy, "#1e88e5", 0.06);
        }
    }

    write_marker(&mut out, start, fy, "#2e7d32");
    write_marker(&mut out, goal, fy, "#6a1b9a");
    out.push_str("</svg>\n");
    out
}

fn write_footprint(
    out: &mut String,
    footprint: &Footprint,
    pose: Pose,
    fy: impl Fn(f64) -> f64,
    stroke: &str,
    width: f64,
) {
    let corners = footprint.corners(pose);
    let mut points = String::new();
    for c in corners {
        write!(points, "{},{} ", c.x, fy(c.y)).unwrap();
    }
    writeln!(
        out,
        r#"<polygon points="{}" fill="none" stroke="{stroke}" stroke-width="{width}"/>"#,
        points.trim_end()
    )
    .unwrap();
}

fn write_marker(out: &mut String, pose: Pose, fy: impl Fn(f64) -> f64, color: &str) {
    let (sin_t, cos_t) = pose.theta.sin_cos();
    let tip = (pose.x + 1.2 * cos_t, pose.y + 1.2 * sin_t);
    writeln!(
        out,
        r#"<circle cx="{}" cy="{}" r="0.3" fill="{color}"/>"#,
        pose.x,
        fy(pose.y)
    )
    .unwrap();
    writeln!(
        out,
        r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="{color}" stroke-width="0.15"/>"#,
        pose.x,
        fy(pose.y),
        tip.0,
        fy(tip.1)
    )
    .unwrap();
    // Arrow head: two short strokes swept back from the tip.
    for side in [0.6, -0.6] {
        let angle = pose.theta + std::f64::consts::PI + side;
        let (s, c) = angle.sin_cos();
        writeln!(
            out,
            r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="{color}" stroke-width="0.15"/>"#,
            tip.0,
            fy(tip.1),
            tip.0 + 0.4 * c,
            fy(tip.1 + 0.4 * s)
        )
        .unwrap();
    }
}
