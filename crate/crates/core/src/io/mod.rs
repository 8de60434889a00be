pub mod cache;
pub mod format;
pub mod job;
pub mod parse;
