//! Support code for the `immlab` command: solve reports, DOT export and the
//! seeded benchmark suites.

pub mod dot;
pub mod report;
pub mod suite;
