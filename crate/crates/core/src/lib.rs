// SPDX-License-Identifier: Apache-2.0

pub mod analysis;
pub mod cli;
pub mod codes;
pub mod error;
pub mod field;
pub mod geometry;
pub mod linalg;

pub use error::{Error, Result};
