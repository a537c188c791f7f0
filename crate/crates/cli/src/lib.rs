pub mod format;
pub mod run;
