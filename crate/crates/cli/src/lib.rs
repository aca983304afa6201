//! Job-file front end for the `diagres` library.

pub mod build;
pub mod error;
pub mod job;
pub mod run;
