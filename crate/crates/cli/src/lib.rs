//! Job files, command dispatch and reports for the `lgorb` binary.

pub mod job;
pub mod render;
pub mod report;

pub use job::{parse_job, Command, Format, Job, JobError, Options};
pub use render::render_text;
pub use report::{run, Report, RunError, SCHEMA_VERSION};

/// Exit status: success.
pub const EXIT_OK: u8 = 0;
/// Exit status: parse or computation error.
pub const EXIT_ERROR: u8 = 1;
/// Exit status: a verification check failed or could not run.
pub const EXIT_VERIFY: u8 = 2;

/// Serializes `report` in the requested format.
pub fn emit(report: &Report, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Text => render_text(report),
    }
}
