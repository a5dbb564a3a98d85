//! Library side of the `mayss` command: claims files, charts and the disk
//! cache.

pub mod cache;
pub mod chart;
pub mod claims;
pub mod expr;
pub mod session;

pub use cache::{Cache, CacheKey};
pub use chart::{build_chart, emit_chart, Chart, ChartCell, Format, Window};
pub use claims::{load_claims, parse_claims, run_claims, ClaimsFile, Report, RunOptions, Status};
pub use session::Session;
