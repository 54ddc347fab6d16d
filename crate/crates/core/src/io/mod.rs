//! Fixture files, report files, the on-disk basis cache and the CLI.

pub mod cli;
mod disk;
mod expr;
mod fixture;
mod report;

pub use cli::run_command;
pub use disk::{DiskStore, CACHE_DIR_ENV};
pub use expr::parse_expression;
pub use fixture::{bundled_fixture, parse_fixture, render_fixture, Expectations, Fixture, BUNDLED_FIXTURES};
pub use report::{
    from_json, payload_json, render, to_csv, to_json, Format, Metadata, ReportFile, CSV_HEADER, REPORT_SCHEMA,
    SCHEMA_VERSION,
};
