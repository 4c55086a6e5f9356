//! Stage `ties`: strong-tie classification of the communication matrix.

use mobiprev_flows::{pair_strength, strong_ties, FlowKind, FlowMatrix};

use crate::args::Ctx;
use crate::error::{CliError, Result};
use crate::util::{open_reader, write_file};

const STAGE: &str = "ties";

pub fn run(ctx: &Ctx) -> Result<()> {
    let comm_path = ctx.out.communication();
    if !comm_path.is_file() {
        return Err(CliError::missing_artifact(STAGE, &comm_path, "flows"));
    }
    let comm = FlowMatrix::read_tsv(open_reader(&comm_path)?, FlowKind::Communication)
        .map_err(|e| CliError::stage(STAGE, format!("{}: {e}", comm_path.display())))?;
    let pairs = pair_strength(&comm);
    let ties = strong_ties(&pairs).map_err(|e| CliError::stage(STAGE, e))?;
    write_file(&ctx.out.ties_json(), |w| {
        ties.to_writer(w).map_err(|e| CliError::stage(STAGE, e))
    })?;

    let strong = ties.strong_edges().len();
    println!(
        "stage ties: {} departments scored, {strong} strong edges",
        ties.n_departments()
    );
    Ok(())
}
