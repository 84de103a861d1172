//! Genus machinery: embeddings, planarity, exact genus, subdivisions, and
//! the closed-form bounds that tie them together.
//!
//! Everything here is certificate-first. An exact genus comes with a
//! rotation system that face-traces to that genus; a lower bound comes with
//! a Kuratowski subdivision, a general subdivision, or a chain of named
//! inequalities. Chains record whether any step leans on the one formula
//! this crate trusts from the literature (the Cartesian-product genus lower
//! bound) rather than re-verifying mechanically.

mod genus;
mod rotation;
mod subdivision;

pub use genus::{
    cartesian_product_lower_bound, euler_girth_lower_bound, exact_genus, genus_complete,
    genus_complete_bipartite, is_planar, min_degree_genus_bound, min_degree_rules_out,
    PlanarityResult, Rational, DEFAULT_BUDGET,
};
pub use rotation::{verify_embedding, verify_embedding_by_component, RotationSystem};
pub use subdivision::{find_subdivision, verify_subdivision, SubdivisionMapping, SubdivisionSearch};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum TopologyError {
    #[error("malformed rotation system: {0}")]
    MalformedRotation(String),
    #[error("disconnected input: verify per component and add the genera")]
    DisconnectedInput,
}

/// Which Kuratowski pattern a planarity witness uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KuratowskiKind {
    K5,
    K33,
}

impl KuratowskiKind {
    pub fn name(&self) -> &'static str {
        match self {
            KuratowskiKind::K5 => "K_5",
            KuratowskiKind::K33 => "K_{3,3}",
        }
    }
}

/// One step in a chain of named inequalities; `trusted` marks steps that
/// rely on the Cartesian-product genus bound taken from the literature.
#[derive(Clone, Debug)]
pub struct ChainStep {
    pub rule: String,
    pub trusted: bool,
}

/// A lower bound justified by a sequence of named inequalities.
#[derive(Clone, Debug, Default)]
pub struct FormulaChain {
    pub steps: Vec<ChainStep>,
}

impl FormulaChain {
    pub fn new() -> Self {
        FormulaChain { steps: Vec::new() }
    }

    pub fn push(&mut self, rule: impl Into<String>) {
        self.steps.push(ChainStep {
            rule: rule.into(),
            trusted: false,
        });
    }

    pub fn push_trusted(&mut self, rule: impl Into<String>) {
        self.steps.push(ChainStep {
            rule: rule.into(),
            trusted: true,
        });
    }

    pub fn is_trusted(&self) -> bool {
        self.steps.iter().any(|s| s.trusted)
    }
}

/// Evidence for a genus lower bound.
#[derive(Clone, Debug)]
pub enum LowerBoundWitness {
    /// A subdivision of `K_5` or `K_{3,3}`: the host is not planar.
    KuratowskiSubdivision {
        pattern: KuratowskiKind,
        mapping: SubdivisionMapping,
    },
    /// A subdivision of some other pattern with known genus.
    SubdivisionOf {
        pattern_name: String,
        pattern_genus: usize,
        mapping: SubdivisionMapping,
    },
    /// A chain of named inequalities.
    FormulaChain(FormulaChain),
}

impl LowerBoundWitness {
    pub fn is_trusted(&self) -> bool {
        match self {
            LowerBoundWitness::FormulaChain(c) => c.is_trusted(),
            _ => false,
        }
    }

    pub fn describe(&self) -> Vec<String> {
        match self {
            LowerBoundWitness::KuratowskiSubdivision { pattern, .. } => {
                vec![format!("subdivision of {} found", pattern.name())]
            }
            LowerBoundWitness::SubdivisionOf {
                pattern_name,
                pattern_genus,
                ..
            } => vec![format!(
                "subdivision of {pattern_name} found, genus({pattern_name}) = {pattern_genus}"
            )],
            LowerBoundWitness::FormulaChain(c) => c
                .steps
                .iter()
                .map(|s| {
                    if s.trusted {
                        format!("{} [trusted-formula]", s.rule)
                    } else {
                        s.rule.clone()
                    }
                })
                .collect(),
        }
    }
}

/// The verdict for a graph's genus.
#[derive(Clone, Debug)]
pub enum GenusEvidence {
    /// Exact genus with an embedding certificate; smaller genera were
    /// excluded by exhausted search or an Euler-formula bound.
    Exact {
        genus: usize,
        embedding: RotationSystem,
        nodes: u64,
    },
    /// Both bounds with checkable evidence on each side.
    Bounds {
        lower: usize,
        lower_witness: Box<LowerBoundWitness>,
        upper: usize,
        upper_embedding: RotationSystem,
    },
    /// Budget ran out; carries the lower bound proven so far.
    TimedOut {
        lower: usize,
        lower_witness: Box<LowerBoundWitness>,
        nodes: u64,
    },
}

impl GenusEvidence {
    pub fn lower_bound(&self) -> usize {
        match self {
            GenusEvidence::Exact { genus, .. } => *genus,
            GenusEvidence::Bounds { lower, .. } => *lower,
            GenusEvidence::TimedOut { lower, .. } => *lower,
        }
    }

    pub fn upper_bound(&self) -> Option<usize> {
        match self {
            GenusEvidence::Exact { genus, .. } => Some(*genus),
            GenusEvidence::Bounds { upper, .. } => Some(*upper),
            GenusEvidence::TimedOut { .. } => None,
        }
    }

    pub fn exact(&self) -> Option<usize> {
        match self {
            GenusEvidence::Exact { genus, .. } => Some(*genus),
            _ => None,
        }
    }
}
