pub mod cli;
pub mod export;
pub mod oracle;
pub mod suites;
