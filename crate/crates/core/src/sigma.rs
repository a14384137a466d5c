//! Σ¹ membership verdicts.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::character::{lf_subgraph, living_subgraph, Character};
use crate::graph::{check_hypothesis, cycle_rank, is_connected, is_dominant, HypothesisMode};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    In,
    Out,
    OutConjectural,
}

/// Which argument settled the verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    MmwSufficient,
    MmwNecessary,
    TheoremA,
    LowCycleRank,
    ConjectureOnly,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Diagnostics {
    pub lf_connected: bool,
    pub lf_dominant: bool,
    pub l_connected: bool,
    pub even: bool,
    pub hypothesis_holds: bool,
    pub cycle_rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Verdict {
    pub status: Status,
    pub provenance: Provenance,
    pub diagnostics: Diagnostics,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = match self.provenance {
            Provenance::MmwSufficient => "IN Sigma^1 (Meier–Meinert–VanWyk sufficient)",
            Provenance::MmwNecessary => "OUT of Sigma^1 (Meier–Meinert–VanWyk necessary)",
            Provenance::TheoremA => "OUT of Sigma^1 (even graph, odd closed paths)",
            Provenance::LowCycleRank => "OUT of Sigma^1 (cycle rank at most 2)",
            Provenance::ConjectureOnly => "OUT of Sigma^1 if the Sigma^1-Conjecture holds (open case)",
        };
        f.write_str(text)
    }
}

/// The living subgraph is connected and its vertices dominate the carrier.
pub fn conjecture_predicate(chi: &Character) -> bool {
    is_connected(&living_subgraph(chi)) && is_dominant(chi.carrier(), &chi.support()).unwrap()
}

pub fn decide_sigma1(chi: &Character, mode: HypothesisMode) -> Verdict {
    let carrier = chi.carrier();
    let diagnostics = Diagnostics {
        lf_connected: is_connected(&lf_subgraph(chi)),
        lf_dominant: is_dominant(carrier, &chi.support()).unwrap(),
        l_connected: is_connected(&living_subgraph(chi)),
        even: carrier.is_even(),
        hypothesis_holds: check_hypothesis(carrier, mode),
        cycle_rank: cycle_rank(carrier),
    };
    let d = &diagnostics;
    let (status, provenance) = if !d.lf_connected || !d.lf_dominant {
        (Status::Out, Provenance::MmwNecessary)
    } else if d.l_connected {
        (Status::In, Provenance::MmwSufficient)
    } else if d.even && d.hypothesis_holds {
        (Status::Out, Provenance::TheoremA)
    } else if d.cycle_rank <= 2 {
        (Status::Out, Provenance::LowCycleRank)
    } else {
        (Status::OutConjectural, Provenance::ConjectureOnly)
    };
    Verdict {
        status,
        provenance,
        diagnostics,
    }
}
