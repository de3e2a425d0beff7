//! Command-line surface for `mdx-core`: the `.mdx` script language, seeded
//! random generators for every kind of object, and the identity suites run by
//! `mdx check`.

pub mod dsl;
pub mod generate;
pub mod suites;

pub use generate::{Generator, GeneratorConfig};
pub use suites::{run_suite, Execution, SuiteReport, SUITES};
