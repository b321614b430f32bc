//! Named example groups, instance checks of the lift and monomiality
//! results, corpus scans, the table cache and the `pichar` command line.

pub mod builders;
pub mod cache;
pub mod checks;
pub mod error;
pub mod report;
pub mod session;
pub mod spec;
pub mod replay;
pub mod corpus;
