pub mod bohr;
pub mod constants;
pub mod verify;

use bhbounds::error::Result;

use crate::args::{BohrCmd, Cli, Command, ConstantsCmd, VerifyCmd};
use crate::output::Table;

pub fn dispatch(cli: &Cli) -> Result<Table> {
    let seed = cli.seed;
    match &cli.command {
        Command::Constants(ConstantsCmd::Table(a)) => constants::table(a),
        Command::Verify(v) => match v {
            VerifyCmd::Blei(s) => verify::blei(s, seed),
            VerifyCmd::Dps(s) => verify::dps(s, seed),
            VerifyCmd::Interp(s) => verify::interp(s, seed),
            VerifyCmd::Khintchine(a) => verify::khintchine(a, seed),
            VerifyCmd::PolyKhintchine(a) => verify::poly_khintchine(a, seed),
            VerifyCmd::Harris(a) => verify::harris(a, seed),
            VerifyCmd::BhRatio(a) => verify::bh_ratio_suite(a, seed),
            VerifyCmd::Probe(a) => verify::probe(a, seed),
        },
        Command::Bohr(BohrCmd::Table(a)) => bohr::table(a, seed),
        Command::Bohr(BohrCmd::Upper(a)) => bohr::upper(a, seed),
    }
}
