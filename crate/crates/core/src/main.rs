//! Command-line interface: reads a grayscale scene or a label map, runs the
//! interpretation pipeline, and writes the report (and, optionally, the
//! hypothesis masks).

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use amodal::io::read_gray;
use amodal::pipeline::{run_scene, scene_from_bilevel, scene_from_labels, write_outputs, RunConfig};

#[derive(Parser, Debug)]
#[command(
    name = "amodal",
    about = "Completes occluded shapes and selects the preferred depth interpretation"
)]
struct Cli {
    /// Input image: 8-bit grayscale PGM/PNG (with --thresholds) or 16-bit
    /// PGM label map (with --labels).
    image: PathBuf,

    /// Elastica length weight.
    #[arg(long, default_value_t = 0.6)]
    beta: f64,

    /// Kernel ratio of the curvature step, in (0, 1).
    #[arg(long, default_value_t = 0.99)]
    alpha: f64,

    /// Diffusion time per threshold-dynamics step.
    #[arg(long, default_value_t = 12.0)]
    dt: f64,

    /// Convergence tolerance on the changed-pixel fraction.
    #[arg(long, default_value_t = 1e-3)]
    stop_tol: f64,

    /// Iteration cap for each completion.
    #[arg(long, default_value_t = 500)]
    max_iters: usize,

    /// Boundary pixels per tangent fit.
    #[arg(long, default_value_t = 7)]
    fit_window: usize,

    /// Strictly increasing bi-level thresholds, e.g. 64,192,256.
    #[arg(long, value_delimiter = ',')]
    thresholds: Option<Vec<f64>>,

    /// Two labels selecting the scene regions of a label map, e.g. 1,2.
    #[arg(long, value_delimiter = ',')]
    labels: Option<Vec<u32>>,

    /// Output directory for report.json and rendered masks.
    #[arg(long, default_value = "out")]
    out: PathBuf,

    /// Also write the per-hypothesis layer and completed-object masks.
    #[arg(long)]
    render: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(selected) => {
            println!("selected hypothesis: H{selected}");
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}

fn execute(cli: &Cli) -> amodal::Result<u8> {
    if let Some(labels) = &cli.labels {
        if labels.len() != 2 {
            return Err(amodal::Error::InvalidConfig(
                "--labels takes exactly two values, e.g. 1,2".into(),
            ));
        }
    }
    let config = RunConfig {
        beta: cli.beta,
        alpha: cli.alpha,
        dt: cli.dt,
        stop_tol: cli.stop_tol,
        max_iters: cli.max_iters,
        fit_window: cli.fit_window,
        thresholds: cli.thresholds.clone(),
        labels: cli.labels.as_ref().map(|l| (l[0], l[1])),
    };
    config.validate()?;

    let image = read_gray(&cli.image)?;
    let scene = match (&config.labels, &config.thresholds) {
        (Some((a, b)), _) => scene_from_labels(&image, *a, *b)?,
        (None, Some(ts)) => scene_from_bilevel(&image, ts)?,
        (None, None) => {
            return Err(amodal::Error::InvalidConfig(
                "provide --thresholds for grayscale input or --labels for a label map".into(),
            ))
        }
    };

    let outcome = run_scene(&scene, &config)?;
    write_outputs(&cli.out, &outcome, cli.render)?;

    for h in &outcome.report.hypotheses {
        let tag = if h.index == outcome.report.selected { "*" } else { " " };
        println!(
            "{tag} H{}: E_B={:.4} like~={:.4} prior~={:.4} posterior={:.4}{}",
            h.index,
            h.e_b,
            h.like_tilde,
            h.prior_tilde,
            h.posterior,
            if h.unconverged { " (unconverged)" } else { "" }
        );
    }
    Ok(outcome.report.selected)
}
