//! Property suites and the acceptance criteria, shared by the CLI's
//! `selftest` and the `acceptance` test target.

pub mod criteria;
pub mod properties;
