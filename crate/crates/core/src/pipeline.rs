//! Pass pipelines as exposed by the command line tool.

use crate::circuit::Circuit;
use crate::error::Result;
use crate::resynth::{h_opt_circuit, internal_h_opt, Mode};
use crate::tmerge::t_merge;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Pass {
    #[default]
    InternalH,
    H,
    None,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Pipeline {
    pub tmerge: bool,
    pub pass: Pass,
    pub mode: Mode,
}

impl Pipeline {
    pub fn run(&self, c: &Circuit) -> Result<Circuit> {
        let merged;
        let c = if self.tmerge {
            merged = t_merge(c)?;
            &merged
        } else {
            c
        };
        match self.pass {
            Pass::InternalH => internal_h_opt(c, self.mode),
            Pass::H => h_opt_circuit(c, self.mode),
            Pass::None => {
                c.validate()?;
                Ok(c.clone())
            }
        }
    }
}
