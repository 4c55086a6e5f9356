//! The seven pipeline stages. Each one reads the raw inputs and/or the
//! artifacts of earlier stages from the output tree, writes its own files
//! under a fixed subdirectory, and fails with a message naming itself and
//! the missing upstream file when run out of order.

pub mod eval;
pub mod explain;
pub mod features;
pub mod fit;
pub mod flows;
pub mod prev;
pub mod ties;

use crate::args::Ctx;
use crate::error::Result;

/// Runs the full pipeline in stage order, stopping at the first failure.
pub fn pipeline(ctx: &Ctx) -> Result<()> {
    flows::run(ctx)?;
    ties::run(ctx)?;
    prev::run(ctx)?;
    features::run(ctx)?;
    fit::run(ctx)?;
    eval::run(ctx)?;
    explain::run(ctx)?;
    Ok(())
}
