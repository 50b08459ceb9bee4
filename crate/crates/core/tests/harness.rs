mod common;

use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

use rand::seq::SliceRandom;

use elian::geometry::turn_angle;
use elian::grid::{Cell, Grid, Instance, ScenarioSet};
use elian::harness::{
    aggregate, emit_report, read_records, read_report, run_batch, standard_configs, svg_string,
    write_records, AggregateReport, BatchJob, BenchConfig, ReportFormat, CSV_COLUMNS,
};
use elian::planner::PlannerConfig;

fn movingai_text(grid: &Grid) -> String {
    let mut s = format!(
        "type octile\nheight {}\nwidth {}\nmap\n",
        grid.height(),
        grid.width()
    );
    for row in 0..grid.height() {
        for col in 0..grid.width() {
            s.push(if grid.is_blocked(Cell::new(col, row)) {
                '@'
            } else {
                '.'
            });
        }
        s.push('\n');
    }
    s
}

fn scen_text(map: &str, grid: &Grid, pairs: &[(Cell, Cell)]) -> String {
    let mut s = String::from("version 1\n");
    for (i, (a, b)) in pairs.iter().enumerate() {
        writeln!(
            s,
            "{}\t{map}\t{}\t{}\t{}\t{}\t{}\t{}\t{:.8}",
            i / 10,
            grid.width(),
            grid.height(),
            a.col,
            a.row,
            b.col,
            b.row,
            elian::geometry::euclid(*a, *b)
        )
        .unwrap();
    }
    s
}

fn small_configs() -> Vec<BenchConfig> {
    vec![
        BenchConfig::new(PlannerConfig::lian(10.0, 25.0).with_weight(2.0)),
        BenchConfig::new(PlannerConfig::elian(10.0, 5.0, 25.0).with_weight(2.0)),
        BenchConfig::new(PlannerConfig::elian(10.0, 2.5, 25.0).with_weight(2.0)),
    ]
}

/// Two maps on disk with scenario files, in `dir`.
fn write_corpus(dir: &Path) -> Vec<ScenarioSet> {
    let mut rng = common::rng(21);
    let mut sets = Vec::new();
    for name in ["alpha.map", "beta.map"] {
        let grid = common::random_grid(&mut rng, 48, 40, 0.04);
        let pairs: Vec<(Cell, Cell)> = (0..6)
            .filter_map(|_| common::random_pair(&mut rng, &grid))
            .collect();
        std::fs::write(dir.join(name), movingai_text(&grid)).unwrap();
        let scen = dir.join(format!("{name}.scen"));
        std::fs::write(&scen, scen_text(name, &grid, &pairs)).unwrap();
        sets.push(ScenarioSet::load(&scen).unwrap());
    }
    sets
}

#[test]
fn batch_over_files_covers_every_instance_and_config() {
    let dir = tempfile::tempdir().unwrap();
    let sets = write_corpus(dir.path());
    let jobs: Vec<BatchJob> = sets
        .into_iter()
        .map(|s| BatchJob::in_dir(s, dir.path()))
        .collect();
    let out = run_batch(&jobs, &small_configs(), 2);
    assert!(out.errors.is_empty(), "{:?}", out.errors);
    assert_eq!(out.records.len(), 2 * 6 * 3);
    for r in &out.records {
        match &r.path {
            Some(p) => {
                let len: f64 = p
                    .windows(2)
                    .map(|w| elian::geometry::euclid(w[0], w[1]))
                    .sum();
                let turn: f64 = p
                    .windows(3)
                    .map(|w| turn_angle(w[0], w[1], w[2]).value())
                    .sum();
                assert!((r.path_length.unwrap() - len).abs() < 1e-9);
                assert!((r.accumulated_angle.unwrap() - turn).abs() < 1e-9);
            }
            None => assert!(r.path_length.is_none() && r.accumulated_angle.is_none()),
        }
    }
}

#[test]
fn parallelism_does_not_change_results() {
    let dir = tempfile::tempdir().unwrap();
    let sets = write_corpus(dir.path());
    let jobs: Vec<BatchJob> = sets
        .into_iter()
        .map(|s| BatchJob::in_dir(s, dir.path()))
        .collect();
    let one = run_batch(&jobs, &small_configs(), 1);
    let many = run_batch(&jobs, &small_configs(), 8);
    assert_eq!(one.records.len(), many.records.len());
    for (a, b) in one.records.iter().zip(&many.records) {
        assert!(a.same_result(b), "{a:?}\n{b:?}");
    }
}

#[test]
fn unreadable_map_is_reported_and_skipped() {
    let dir = tempfile::tempdir().unwrap();
    let mut sets = write_corpus(dir.path());
    std::fs::write(
        dir.path().join("beta.map"),
        "type octile\nheight 2\nwidth 2\nmap\n.?\n..\n",
    )
    .unwrap();
    let beta = sets.pop().unwrap();
    let alpha = sets.pop().unwrap();
    let jobs = vec![
        BatchJob::in_dir(beta, dir.path()),
        BatchJob::in_dir(alpha, dir.path()),
    ];
    let out = run_batch(&jobs, &small_configs(), 1);
    assert_eq!(out.errors.len(), 1);
    assert_eq!(out.errors[0].map_id, "beta.map");
    assert!(
        out.errors[0].message.contains("line 5"),
        "{}",
        out.errors[0].message
    );
    assert_eq!(out.records.len(), 6 * 3);
}

#[test]
fn records_survive_jsonl() {
    let grid = Arc::new(Grid::empty(30, 30));
    let set = ScenarioSet {
        map_id: "open".into(),
        declared_size: None,
        instances: vec![Instance::new("open", Cell::new(1, 1), Cell::new(25, 20))],
    };
    let out = run_batch(&[BatchJob::from_grid(set, grid)], &small_configs(), 1);
    let mut buf = Vec::new();
    write_records(&out.records, &mut buf).unwrap();
    assert_eq!(
        read_records(std::str::from_utf8(&buf).unwrap()).unwrap(),
        out.records
    );
}

fn three_algorithm_report() -> AggregateReport {
    let dir = tempfile::tempdir().unwrap();
    let sets = write_corpus(dir.path());
    let jobs: Vec<BatchJob> = sets
        .into_iter()
        .map(|s| BatchJob::in_dir(s, dir.path()))
        .collect();
    let out = run_batch(&jobs, &small_configs(), 1);
    aggregate(&out.records, "LIAN-10").unwrap()
}

#[test]
fn aggregation_ignores_record_order() {
    let dir = tempfile::tempdir().unwrap();
    let sets = write_corpus(dir.path());
    let jobs: Vec<BatchJob> = sets
        .into_iter()
        .map(|s| BatchJob::in_dir(s, dir.path()))
        .collect();
    let mut records = run_batch(&jobs, &small_configs(), 1).records;
    let want = aggregate(&records, "LIAN-10").unwrap();
    let mut rng = common::rng(3);
    for _ in 0..10 {
        records.shuffle(&mut rng);
        assert_eq!(aggregate(&records, "LIAN-10").unwrap(), want);
    }
}

#[test]
fn report_rows_are_consistent() {
    let report = three_algorithm_report();
    assert_eq!(report.rows.len(), 3);
    let base = report.row("LIAN-10", 25.0).unwrap();
    assert_eq!(base.success_delta, None);
    assert!(base.mean_accumulated_angle.unwrap() > 0.0);
    assert!((base.normalized_angle.unwrap() - 1.0).abs() < 1e-12);
    for r in &report.rows {
        assert_eq!(r.instances, 12);
        assert!(r.common_solved <= r.solved);
        assert!((r.success_rate - 100.0 * r.solved as f64 / 12.0).abs() < 1e-12);
        if r.algorithm != "LIAN-10" {
            let d = r.success_delta.unwrap();
            assert!((d - (r.success_rate - base.success_rate)).abs() < 1e-12);
        }
    }
}

#[test]
fn csv_schema_and_round_trip() {
    let report = three_algorithm_report();
    let bytes = emit_report(&report, ReportFormat::Csv).unwrap();
    let text = String::from_utf8(bytes.clone()).unwrap();
    let header = text.lines().next().unwrap();
    assert_eq!(header, CSV_COLUMNS.join(","));
    assert_eq!(text.lines().count(), 1 + report.rows.len());
    assert_eq!(read_report(&bytes, ReportFormat::Csv).unwrap(), report);
}

#[test]
fn json_schema_and_round_trip() {
    let report = three_algorithm_report();
    let bytes = emit_report(&report, ReportFormat::Json).unwrap();
    let value: serde_json::Value = serde_json::from_slice(&bytes).unwrap();
    assert_eq!(value["baseline"], "LIAN-10");
    let rows = value["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    let keys: Vec<&str> = rows[0]
        .as_object()
        .unwrap()
        .keys()
        .map(String::as_str)
        .collect();
    for col in CSV_COLUMNS.iter().filter(|c| **c != "baseline") {
        assert!(keys.contains(col), "missing {col}");
    }
    assert_eq!(read_report(&bytes, ReportFormat::Json).unwrap(), report);
}

#[test]
fn empty_and_single_algorithm_reports() {
    let empty = AggregateReport {
        baseline: "LIAN-20".into(),
        rows: Vec::new(),
    };
    let csv = emit_report(&empty, ReportFormat::Csv).unwrap();
    assert_eq!(
        String::from_utf8(csv).unwrap().trim_end(),
        CSV_COLUMNS.join(",")
    );

    let grid = Arc::new(Grid::empty(40, 40));
    let set = ScenarioSet {
        map_id: "open".into(),
        declared_size: None,
        instances: vec![
            Instance::new("open", Cell::new(1, 1), Cell::new(21, 1)),
            Instance::new("open", Cell::new(1, 1), Cell::new(1, 31)),
        ],
    };
    let only = [BenchConfig::new(PlannerConfig::lian(20.0, 20.0))];
    let records = run_batch(&[BatchJob::from_grid(set, grid)], &only, 1).records;
    let report = aggregate(&records, "LIAN-20").unwrap();
    assert_eq!(report.rows.len(), 1);
    let row = &report.rows[0];
    assert_eq!((row.solved, row.common_solved), (2, 2));
    assert_eq!(row.mean_accumulated_angle, Some(0.0));
    // zero turning leaves nothing to normalise by
    assert_eq!(row.normalized_angle, None);
    for fmt in [ReportFormat::Csv, ReportFormat::Json] {
        let bytes = emit_report(&report, fmt).unwrap();
        assert_eq!(read_report(&bytes, fmt).unwrap(), report);
    }
}

#[test]
fn standard_configs_cover_three_angles() {
    let cfgs = standard_configs(None);
    let labels: Vec<&str> = cfgs.iter().map(|c| c.label.as_str()).collect();
    assert_eq!(cfgs.len(), 9);
    for l in ["LIAN-20", "eLIAN-20-10", "eLIAN-20-5"] {
        assert_eq!(labels.iter().filter(|x| **x == l).count(), 3);
    }
    assert!(cfgs
        .iter()
        .all(|c| c.config.weight == 2.0 && c.config.k == 0.5));
}

#[test]
fn svg_draws_corridor_path() {
    let c = common::Corridor {
        width: 40,
        height: 40,
        wall_row: 18,
        thickness: 6,
        gap: 3,
        upper_col: 18,
        lower_col: 24,
        start: Cell::new(10, 4),
        goal: Cell::new(28, 35),
    };
    let grid = c.grid();
    let out = elian::planner::search(
        &grid,
        c.start,
        c.goal,
        &PlannerConfig::elian(8.0, 4.0, 25.0),
    )
    .unwrap();
    let path = out.path.expect("eLIAN finds the corridor");
    let svg = svg_string(&grid, &path);
    assert!(svg.starts_with("<svg"));
    assert_eq!(
        svg.matches("class=\"blocked\"").count(),
        grid.blocked_count()
    );
    let points = svg
        .split("points=\"")
        .nth(1)
        .and_then(|s| s.split('"').next())
        .unwrap();
    assert_eq!(points.split_whitespace().count(), path.len());
    assert!(path.len() >= 4);
}
