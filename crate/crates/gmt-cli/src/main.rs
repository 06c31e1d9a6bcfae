//! `gmt`: command-line front end for the geometry toolkit.
//!
//! Subcommands: `flatnorm`, `quality`, `bounds`, `signature`,
//! `reconstruct`, `strip-demo`. Exit codes: 0 success, 1 domain/input
//! errors (message on stderr), 2 usage errors.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use gmt_core::area_invariant::{signature, Signature};
use gmt_core::flat_norm::{lambda_sweep, solve_flat_norm, FlatNormDecomposition, FlatNormProblem};
use gmt_core::geometry::{measure_complex, strip_complex, Chain, OrientedComplex2, Point2};
use gmt_core::mesh_quality::{regularity_constant, sdt_bounds, BoundVariant};
use gmt_core::reconstruction::{best_fit_circle, multiresolution_reconstruct, synthesize};
use gmt_core::svg::{emit_svg, Scene};
use gmt_core::{io, Error};

#[derive(Parser)]
#[command(
    name = "gmt",
    version,
    about = "Flat norms, mesh regularity, and area invariant signatures"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum VariantArg {
    Classic,
    Tight,
    Multi,
}

#[derive(Subcommand)]
enum Command {
    /// Simplicial flat norm of a chain on a mesh
    Flatnorm {
        /// Mesh file (v/e/t lines)
        #[arg(long)]
        mesh: PathBuf,
        /// Input chain file (dim header plus index/coefficient lines)
        #[arg(long)]
        chain: PathBuf,
        /// Scale on the filling mass
        #[arg(long, default_value_t = 1.0)]
        lambda: f64,
        /// Also solve at these scales and print a table (ascending)
        #[arg(long, value_delimiter = ',')]
        sweep: Option<Vec<f64>>,
        /// Decomposition output path
        #[arg(long)]
        out: PathBuf,
        /// Optional figure of the input chain, X, and filled S
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Regularity constants of a mesh
    Quality {
        #[arg(long)]
        mesh: PathBuf,
        /// Machine-readable output
        #[arg(long)]
        json: bool,
    },
    /// Deformation-theorem mass bound calculator
    Bounds {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        vartheta: f64,
        /// Diameter of the largest simplex
        #[arg(long)]
        diam: f64,
        #[arg(long = "mass-t")]
        mass_t: f64,
        #[arg(long = "mass-bt")]
        mass_bt: f64,
        #[arg(long, value_enum, default_value_t = VariantArg::Classic)]
        variant: VariantArg,
        /// Number of d-currents (multi variant)
        #[arg(long, default_value_t = 1)]
        m: u32,
        /// Number of (d+1)-currents (multi variant)
        #[arg(long, default_value_t = 0)]
        n: u32,
        /// Slack epsilon (tight and multi variants)
        #[arg(long, default_value_t = 1.0)]
        eps: f64,
        #[arg(long)]
        json: bool,
    },
    /// Integral area invariant signature of a polygon
    Signature {
        /// Polygon CSV (x,y per line, counterclockwise)
        #[arg(long)]
        polygon: PathBuf,
        /// Disk radius
        #[arg(long)]
        radius: f64,
        /// Signature CSV output path
        #[arg(long)]
        out: PathBuf,
        /// Optional figure: curve, representative disk, signature trace
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Reconstruct a curve from a fixed-radius signature
    Reconstruct {
        /// Signature CSV produced by `gmt signature`
        #[arg(long)]
        signature: PathBuf,
        /// Harmonic schedule: `lo:hi` for consecutive integers or a comma
        /// list such as `4,6,8`
        #[arg(long = "m-schedule")]
        m_schedule: String,
        /// Objective evaluations per stage
        #[arg(long, default_value_t = 5000)]
        budget: usize,
        /// Coefficients CSV output path
        #[arg(long)]
        out: PathBuf,
        /// Optional overlay figure of the reconstructions per stage
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Reference polygon CSV drawn alongside the reconstructions
        #[arg(long)]
        reference: Option<PathBuf>,
    },
    /// Flat norm of the zigzag chain on the equilateral strip complex
    StripDemo {
        /// Number of up/down triangle pairs
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1.0)]
        lambda: f64,
        /// Triangle side length
        #[arg(long, default_value_t = 2.0)]
        side: f64,
        /// Optional figure of the strip and decomposition
        #[arg(long)]
        svg: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("gmt: {e}");
            ExitCode::from(1)
        }
    }
}

fn read(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Domain(format!("cannot read {}: {e}", path.display())))
}

fn run(command: Command) -> Result<(), Error> {
    match command {
        Command::Flatnorm {
            mesh,
            chain,
            lambda,
            sweep,
            out,
            svg,
        } => cmd_flatnorm(&mesh, &chain, lambda, sweep.as_deref(), &out, svg.as_deref()),
        Command::Quality { mesh, json } => cmd_quality(&mesh, json),
        Command::Bounds {
            p,
            d,
            vartheta,
            diam,
            mass_t,
            mass_bt,
            variant,
            m,
            n,
            eps,
            json,
        } => cmd_bounds(p, d, vartheta, diam, mass_t, mass_bt, variant, m, n, eps, json),
        Command::Signature {
            polygon,
            radius,
            out,
            svg,
        } => cmd_signature(&polygon, radius, &out, svg.as_deref()),
        Command::Reconstruct {
            signature,
            m_schedule,
            budget,
            out,
            svg,
            reference,
        } => cmd_reconstruct(
            &signature,
            &m_schedule,
            budget,
            &out,
            svg.as_deref(),
            reference.as_deref(),
        ),
        Command::StripDemo {
            n,
            lambda,
            side,
            svg,
        } => cmd_strip_demo(n, lambda, side, svg.as_deref()),
    }
}

fn chain_segments(complex: &OrientedComplex2, chain: &Chain) -> Vec<Vec<Point2>> {
    let vs = complex.vertices();
    chain
        .iter()
        .map(|(edge, _)| {
            let (a, b) = complex.edges()[edge];
            vec![vs[a], vs[b]]
        })
        .collect()
}

fn decomposition_scene(
    complex: &OrientedComplex2,
    input: &Chain,
    decomposition: &FlatNormDecomposition,
) -> Scene {
    let vs = complex.vertices();
    let mut scene = Scene::new();
    // Filled S first so strokes stay visible on top.
    for (tri, _) in decomposition.s_chain.iter() {
        let [a, b, c] = complex.triangles()[tri];
        scene.filled_triangle([vs[a], vs[b], vs[c]], 2);
    }
    for segment in chain_segments(complex, input) {
        scene.polyline(segment, false, 0);
    }
    for segment in chain_segments(complex, &decomposition.x_chain) {
        scene.polyline(segment, false, 1);
    }
    scene
}

fn cmd_flatnorm(
    mesh_path: &Path,
    chain_path: &Path,
    lambda: f64,
    sweep: Option<&[f64]>,
    out: &Path,
    svg: Option<&Path>,
) -> Result<(), Error> {
    let complex = io::parse_mesh(&read(mesh_path)?)?;
    let input = io::parse_chain(&read(chain_path)?)?;
    let measures = measure_complex(&complex)?;

    if let Some(lambdas) = sweep {
        for (l, value, d) in lambda_sweep(&complex, &measures, &input, lambdas)? {
            println!("lambda {l:.9} value {value:.9} integral {}", d.is_integral);
        }
    }

    let problem = FlatNormProblem::new(&complex, &measures, &input, lambda)?;
    let decomposition = solve_flat_norm(&problem)?;
    println!("value {:.9}", decomposition.value);
    println!("integral {}", decomposition.is_integral);
    io::write_atomic(out, &io::write_decomposition(&decomposition))?;

    if let Some(svg_path) = svg {
        let scene = decomposition_scene(&complex, &input, &decomposition);
        io::write_atomic(svg_path, &emit_svg(&scene))?;
    }
    Ok(())
}

fn cmd_quality(mesh_path: &Path, json: bool) -> Result<(), Error> {
    let complex = io::parse_mesh(&read(mesh_path)?)?;
    let report = regularity_constant(&complex)?;
    if json {
        let value = serde_json::json!({
            "theta_min": round9(report.theta_min),
            "vartheta": round9(report.vartheta),
            "c_theta_bound": round9(report.c_theta_bound),
            "per_triangle_vartheta": report
                .per_triangle_vartheta
                .iter()
                .map(|&v| round9(v))
                .collect::<Vec<_>>(),
            "triangles": complex.triangles().len(),
        });
        println!("{value}");
    } else {
        println!("{}", styled("mesh quality report"));
        println!("triangles      {}", complex.triangles().len());
        println!("theta_min      {:.9}", report.theta_min);
        println!("vartheta       {:.9}", report.vartheta);
        println!("c_theta_bound  {:.9}", report.c_theta_bound);
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_bounds(
    p: u32,
    d: u32,
    vartheta: f64,
    diam: f64,
    mass_t: f64,
    mass_bt: f64,
    variant: VariantArg,
    m: u32,
    n: u32,
    eps: f64,
    json: bool,
) -> Result<(), Error> {
    let variant = match variant {
        VariantArg::Classic => BoundVariant::Classic,
        VariantArg::Tight => BoundVariant::SingleTight { eps },
        VariantArg::Multi => BoundVariant::Multi { m, n, eps },
    };
    let bounds = sdt_bounds(p, d, vartheta, diam, mass_t, mass_bt, variant)?;
    if json {
        let value = serde_json::json!({
            "mass_p": round9(bounds.mass_p),
            "mass_boundary_p": round9(bounds.mass_boundary_p),
            "mass_q": round9(bounds.mass_q),
            "mass_r": round9(bounds.mass_r),
            "flat_distance": round9(bounds.flat_distance),
        });
        println!("{value}");
    } else {
        println!("mass_p           {:.9}", bounds.mass_p);
        println!("mass_boundary_p  {:.9}", bounds.mass_boundary_p);
        println!("mass_q           {:.9}", bounds.mass_q);
        println!("mass_r           {:.9}", bounds.mass_r);
        println!("flat_distance    {:.9}", bounds.flat_distance);
    }
    Ok(())
}

fn cmd_signature(
    polygon_path: &Path,
    radius: f64,
    out: &Path,
    svg: Option<&Path>,
) -> Result<(), Error> {
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::Domain(format!(
            "radius must be positive, got {radius}"
        )));
    }
    let polygon = io::parse_polygon(&read(polygon_path)?)?;
    let sig = signature(&polygon, radius);
    io::write_atomic(out, &io::write_signature(&sig))?;

    if let Some(svg_path) = svg {
        let mut scene = Scene::new();
        let mut loop_points = polygon.vertices().to_vec();
        if let Some(&first) = loop_points.first() {
            loop_points.push(first);
        }
        scene.polyline(loop_points, false, 0);
        scene.disk(polygon.vertices()[0], radius, 3);
        scene.trace(sig.values.clone(), 0);
        io::write_atomic(svg_path, &emit_svg(&scene))?;
    }
    Ok(())
}

fn parse_schedule(text: &str) -> Result<Vec<usize>, Error> {
    let bad = |m: &str| Error::Domain(format!("bad m-schedule '{text}': {m}"));
    if let Some((lo, hi)) = text.split_once(':') {
        let lo: usize = lo.trim().parse().map_err(|_| bad("bad range start"))?;
        let hi: usize = hi.trim().parse().map_err(|_| bad("bad range end"))?;
        if lo > hi {
            return Err(bad("range start exceeds end"));
        }
        Ok((lo..=hi).collect())
    } else {
        text.split(',')
            .map(|f| f.trim().parse().map_err(|_| bad("bad integer")))
            .collect()
    }
}

fn cmd_reconstruct(
    signature_path: &Path,
    m_schedule: &str,
    budget: usize,
    out: &Path,
    svg: Option<&Path>,
    reference: Option<&Path>,
) -> Result<(), Error> {
    let target: Signature = io::parse_signature(&read(signature_path)?)?;
    let schedule = parse_schedule(m_schedule)?;
    let circle = best_fit_circle(&target)?;
    println!("best_fit_radius {:.9}", circle.radius);

    let stages = multiresolution_reconstruct(&target, &schedule, budget)?;
    for (i, stage) in stages.iter().enumerate() {
        println!(
            "stage {i} m {} objective {:.9} evaluations {}",
            stage.incumbent.harmonics(),
            stage.objective,
            stage.evaluations
        );
    }
    let final_stage = stages.last().expect("schedule validated nonempty");
    io::write_atomic(out, &io::write_coefficients(&final_stage.incumbent))?;

    if let Some(svg_path) = svg {
        let mut scene = Scene::new();
        if let Some(reference_path) = reference {
            let reference_poly = io::parse_polygon(&read(reference_path)?)?;
            let mut pts = reference_poly.vertices().to_vec();
            if let Some(&first) = pts.first() {
                pts.push(first);
            }
            scene.polyline(pts, false, 0);
        }
        for (i, stage) in stages.iter().enumerate() {
            let mut pts = synthesize(&stage.incumbent);
            if let Some(&first) = pts.first() {
                pts.push(first);
            }
            scene.polyline(pts, false, 1 + i);
        }
        scene.trace(target.values.clone(), 0);
        if let Some(sig) = gmt_core::reconstruction::signature_of_candidate(
            &synthesize(&final_stage.incumbent),
            target.radius,
        ) {
            scene.trace(sig.values, stages.len());
        }
        io::write_atomic(svg_path, &emit_svg(&scene))?;
    }
    Ok(())
}

fn cmd_strip_demo(n: usize, lambda: f64, side: f64, svg: Option<&Path>) -> Result<(), Error> {
    let (complex, top, _witness) = strip_complex(n, side)?;
    let measures = measure_complex(&complex)?;
    let problem = FlatNormProblem::new(&complex, &measures, &top, lambda)?;
    let decomposition = solve_flat_norm(&problem)?;
    let a = complex.vertices()[0];
    let b = complex.vertices()[n];
    let span = a.distance(&b);
    println!("value {:.9}", decomposition.value);
    println!("ratio {:.9}", decomposition.value / span);

    if let Some(svg_path) = svg {
        let scene = decomposition_scene(&complex, &top, &decomposition);
        io::write_atomic(svg_path, &emit_svg(&scene))?;
    }
    Ok(())
}

fn round9(v: f64) -> f64 {
    (v * 1e9).round() / 1e9
}

fn styled(text: &str) -> String {
    if std::env::var_os("GMT_NO_COLOR").is_some() {
        text.to_string()
    } else {
        format!("\u{1b}[1m{text}\u{1b}[0m")
    }
}
