pub mod numeric;
pub mod suites;
