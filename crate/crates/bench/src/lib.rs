//! Shared setup for the benchmarks.

use fqt_core::config::{Session, SessionConfig};

pub fn session(fixture: &str, precision: usize) -> Session {
    let mut c = SessionConfig::for_fixture(fixture);
    c.precision = precision;
    c.session().expect("bundled fixture builds")
}
