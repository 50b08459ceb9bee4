//! Benchmark runs, aggregation and output.

mod batch;
mod record;
mod report;
mod suite;
mod svg;

pub use batch::{run_batch, run_batch_with, BatchError, BatchJob, BatchOutcome, MapSource};
pub use record::{instance_id, read_records, run_instance, write_records, BenchConfig, RunRecord};
pub use report::{
    aggregate, emit_report, median, read_report, AggregateReport, ReportError, ReportFormat,
    ReportRow, CSV_COLUMNS,
};
pub use suite::{load_configs, parse_configs, standard_configs, ConfigFileError, STANDARD_ANGLES};
pub use svg::{render_svg, svg_string};
