//! Command-line front end: `elian plan` for one instance, `elian bench` for
//! scenario batches.
//!
//! Exit codes: 0 found / batch ok, 1 not found, 2 timeout, 3 input error.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Mutex;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};

use elian::grid::{self, Cell, Grid, Instance, ScenarioSet};
use elian::harness::{
    aggregate, emit_report, load_configs, run_batch_with, run_instance, standard_configs,
    svg_string, write_records, BatchJob, BenchConfig, ReportFormat,
};
use elian::planner::{PlannerConfig, Verdict};

const EXIT_FOUND: u8 = 0;
const EXIT_NOT_FOUND: u8 = 1;
const EXIT_TIMEOUT: u8 = 2;
const EXIT_INPUT: u8 = 3;

#[derive(Parser)]
#[command(name = "elian", version, about = "Angle-constrained grid path finding")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Alg {
    Lian,
    Elian,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Plan a single instance.
    Plan {
        /// MovingAI .map file, or an ASCII grid (`#` blocked, `.` free).
        #[arg(long)]
        map: PathBuf,
        /// Start cell as `col,row`.
        #[arg(long, value_parser = parse_cell)]
        start: Cell,
        /// Goal cell as `col,row`.
        #[arg(long, value_parser = parse_cell)]
        goal: Cell,
        #[arg(long, value_enum, default_value = "elian")]
        alg: Alg,
        #[arg(long, default_value_t = 20.0)]
        delta_max: f64,
        /// Defaults to `delta-max` for LIAN and `delta-max / 4` for eLIAN.
        #[arg(long)]
        delta_min: Option<f64>,
        #[arg(long, default_value_t = 0.5)]
        k: f64,
        /// Maximum turn between consecutive segments, degrees.
        #[arg(long, default_value_t = 25.0)]
        angle: f64,
        /// Heuristic weight.
        #[arg(long, default_value_t = 2.0)]
        hweight: f64,
        /// Time cap in seconds.
        #[arg(long, default_value_t = 30.0)]
        timeout: f64,
        /// Write an SVG drawing of the map and path here.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Run configurations over MovingAI scenario files.
    Bench {
        /// One or more .scen files.
        #[arg(long, required = true, num_args = 1..)]
        scen: Vec<PathBuf>,
        /// Directory holding the maps named in the scenarios.
        #[arg(long)]
        maps_dir: PathBuf,
        /// JSON array of configurations; defaults to LIAN-20, eLIAN-20-10 and
        /// eLIAN-20-5 at 20°, 25° and 30° with w = 2.
        #[arg(long)]
        configs: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Output prefix: writes PREFIX.records.jsonl and PREFIX.report.{csv,json}.
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        /// Baseline label for deltas and normalisation.
        #[arg(long, default_value = "LIAN-20")]
        baseline: String,
        /// Time cap in seconds for the default configurations.
        #[arg(long, default_value_t = 30.0)]
        timeout: f64,
        /// Keep only the N hardest instances of each scenario file.
        #[arg(long)]
        hardest: Option<usize>,
    },
}

fn parse_cell(s: &str) -> Result<Cell, String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected col,row, got {s:?}"))?;
    let col = a
        .trim()
        .parse()
        .map_err(|_| format!("bad column in {s:?}"))?;
    let row = b.trim().parse().map_err(|_| format!("bad row in {s:?}"))?;
    Ok(Cell::new(col, row))
}

fn cap(secs: f64) -> Result<Option<Duration>, String> {
    if secs <= 0.0 {
        return Ok(None);
    }
    Duration::try_from_secs_f64(secs)
        .map(Some)
        .map_err(|e| format!("bad timeout {secs}: {e}"))
}

fn load_grid(path: &Path) -> Result<Grid, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let parsed = if text.trim_start().starts_with("type") {
        grid::parse_map(&text)
    } else {
        grid::parse_ascii(&text)
    };
    parsed.map_err(|e| format!("{}: {e}", path.display()))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT } else { 0 });
        }
    };
    let result = match cli.command {
        Command::Plan {
            map,
            start,
            goal,
            alg,
            delta_max,
            delta_min,
            k,
            angle,
            hweight,
            timeout,
            svg,
        } => plan(
            &map,
            start,
            goal,
            alg,
            delta_max,
            delta_min,
            k,
            angle,
            hweight,
            timeout,
            svg.as_deref(),
        ),
        Command::Bench {
            scen,
            maps_dir,
            configs,
            jobs,
            out,
            format,
            baseline,
            timeout,
            hardest,
        } => bench(
            &scen,
            &maps_dir,
            configs.as_deref(),
            jobs,
            &out,
            format,
            &baseline,
            timeout,
            hardest,
        ),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn plan(
    map: &Path,
    start: Cell,
    goal: Cell,
    alg: Alg,
    delta_max: f64,
    delta_min: Option<f64>,
    k: f64,
    angle: f64,
    hweight: f64,
    timeout: f64,
    svg: Option<&Path>,
) -> Result<u8, String> {
    let grid = load_grid(map)?;
    let alpha =
        elian::Degrees::checked(angle).ok_or_else(|| format!("angle {angle} outside [0, 180]"))?;
    let mut cfg = match alg {
        Alg::Lian => PlannerConfig::lian(delta_max, alpha.value()),
        Alg::Elian => PlannerConfig::elian(
            delta_max,
            delta_min.unwrap_or(delta_max / 4.0),
            alpha.value(),
        ),
    };
    if let (Alg::Lian, Some(m)) = (alg, delta_min) {
        cfg.delta_min = m;
    }
    let cfg = cfg
        .with_k(k)
        .with_weight(hweight)
        .with_time_cap(cap(timeout)?);
    cfg.validate().map_err(|e| e.to_string())?;

    let inst = Instance::new(map.display().to_string(), start, goal);
    let rec =
        run_instance(&grid, "plan#0", &inst, &BenchConfig::new(cfg)).map_err(|e| e.to_string())?;

    println!("algorithm    {}", rec.algorithm);
    println!("verdict      {:?}", rec.verdict);
    println!("runtime_s    {:.6}", rec.runtime_s);
    println!("expansions   {}", rec.expansions);
    println!("reinsertions {}", rec.reinsertions);
    if let Some(path) = &rec.path {
        println!("length       {:.4}", rec.path_length.unwrap_or_default());
        println!(
            "turn_total   {:.4}",
            rec.accumulated_angle.unwrap_or_default()
        );
        let pts: Vec<String> = path
            .iter()
            .map(|c| format!("{},{}", c.col, c.row))
            .collect();
        println!("path         {}", pts.join(" "));
    }
    if let Some(svg_path) = svg {
        let body = svg_string(&grid, rec.path.as_deref().unwrap_or(&[]));
        std::fs::write(svg_path, body).map_err(|e| format!("{}: {e}", svg_path.display()))?;
    }
    Ok(match rec.verdict {
        Verdict::Found => EXIT_FOUND,
        Verdict::NotFound => EXIT_NOT_FOUND,
        Verdict::Timeout => EXIT_TIMEOUT,
    })
}

#[allow(clippy::too_many_arguments)]
fn bench(
    scen: &[PathBuf],
    maps_dir: &Path,
    configs: Option<&Path>,
    jobs: usize,
    out: &Path,
    format: Format,
    baseline: &str,
    timeout: f64,
    hardest: Option<usize>,
) -> Result<u8, String> {
    let configs: Vec<BenchConfig> = match configs {
        Some(p) => load_configs(p).map_err(|e| e.to_string())?,
        None => standard_configs(cap(timeout)?),
    };
    if configs.is_empty() {
        return Err("no configurations to run".into());
    }

    let mut batch = Vec::new();
    for path in scen {
        let set = ScenarioSet::load(path).map_err(|e| e.to_string())?;
        let set = match hardest {
            Some(n) => set.hardest(n),
            None => set,
        };
        batch.push(BatchJob::in_dir(set, maps_dir));
    }

    let records_path = with_suffix(out, "records.jsonl");
    let file =
        File::create(&records_path).map_err(|e| format!("{}: {e}", records_path.display()))?;
    let sink = Mutex::new(BufWriter::new(file));
    let outcome = run_batch_with(&batch, &configs, jobs, |rec| {
        let mut w = sink.lock().expect("record sink");
        let _ = write_records(std::slice::from_ref(rec), &mut *w);
        let _ = w.flush();
    });
    drop(sink);

    for e in &outcome.errors {
        eprintln!(
            "skipped {}{}: {}",
            e.map_id,
            e.instance_id
                .as_deref()
                .map(|i| format!(" ({i})"))
                .unwrap_or_default(),
            e.message
        );
    }
    if outcome.records.is_empty() {
        return Err("no instance could be run".into());
    }

    let baseline = if outcome.records.iter().any(|r| r.algorithm == baseline) {
        baseline.to_string()
    } else {
        configs[0].label.clone()
    };
    let report = aggregate(&outcome.records, &baseline).map_err(|e| e.to_string())?;
    let (fmt, ext) = match format {
        Format::Csv => (ReportFormat::Csv, "report.csv"),
        Format::Json => (ReportFormat::Json, "report.json"),
    };
    let bytes = emit_report(&report, fmt).map_err(|e| e.to_string())?;
    let report_path = with_suffix(out, ext);
    std::fs::write(&report_path, bytes).map_err(|e| format!("{}: {e}", report_path.display()))?;

    println!(
        "{:<14} {:>6} {:>9} {:>9} {:>9} {:>12}",
        "algorithm", "alpha", "solved", "success%", "delta", "median_s"
    );
    for r in &report.rows {
        println!(
            "{:<14} {:>6} {:>9} {:>9.2} {:>9} {:>12}",
            r.algorithm,
            r.alpha_max,
            format!("{}/{}", r.solved, r.instances),
            r.success_rate,
            r.success_delta
                .map(|d| format!("{d:+.2}"))
                .unwrap_or_default(),
            r.median_runtime_s
                .map(|m| format!("{m:.4}"))
                .unwrap_or_default(),
        );
    }
    println!("records: {}", records_path.display());
    println!("report:  {}", report_path.display());
    Ok(EXIT_FOUND)
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(".");
    s.push(suffix);
    PathBuf::from(s)
}
