use crate::rational::{q_one, Q};
use serde::Serialize;

/// The ten boundedness properties of the implication diagram, top to bottom.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NodeId {
    StBoundedQ,
    UniformlyQIntegrable,
    BoundedLq,
    StBoundedIntegrable,
    UniformlyIntegrable,
    BoundedL1,
    StBoundedP,
    UniformlyPIntegrable,
    BoundedLp,
    Tight,
}

pub const ALL_NODES: [NodeId; 10] = [
    NodeId::StBoundedQ,
    NodeId::UniformlyQIntegrable,
    NodeId::BoundedLq,
    NodeId::StBoundedIntegrable,
    NodeId::UniformlyIntegrable,
    NodeId::BoundedL1,
    NodeId::StBoundedP,
    NodeId::UniformlyPIntegrable,
    NodeId::BoundedLp,
    NodeId::Tight,
];

/// What a node asserts, up to the power level it applies at.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeKind {
    /// St-bounded by a level-integrable random variable.
    StBound,
    /// Uniformly level-integrable; equivalently the level-th powers are
    /// icx-bounded by an integrable random variable.
    UniformIntegrability,
    /// Bounded in L^level.
    LpBound,
    /// St-bounded by a finite random variable (tight).
    Tight,
}

impl NodeId {
    pub fn index(&self) -> usize {
        ALL_NODES.iter().position(|n| n == self).unwrap()
    }

    pub fn kind(&self) -> NodeKind {
        match self {
            NodeId::StBoundedQ | NodeId::StBoundedIntegrable | NodeId::StBoundedP => {
                NodeKind::StBound
            }
            NodeId::UniformlyQIntegrable
            | NodeId::UniformlyIntegrable
            | NodeId::UniformlyPIntegrable => NodeKind::UniformIntegrability,
            NodeId::BoundedLq | NodeId::BoundedL1 | NodeId::BoundedLp => NodeKind::LpBound,
            NodeId::Tight => NodeKind::Tight,
        }
    }

    /// Integrability level of the node: `q` for the top band, `1` in the
    /// middle, `p` for the lower band, `1` (unused) for tightness.
    pub fn level(&self, p: &Q, q: &Q) -> Q {
        match self {
            NodeId::StBoundedQ | NodeId::UniformlyQIntegrable | NodeId::BoundedLq => q.clone(),
            NodeId::StBoundedIntegrable | NodeId::UniformlyIntegrable | NodeId::BoundedL1 => {
                q_one()
            }
            NodeId::StBoundedP | NodeId::UniformlyPIntegrable | NodeId::BoundedLp => p.clone(),
            NodeId::Tight => q_one(),
        }
    }

    pub fn description(&self) -> &'static str {
        match self {
            NodeId::StBoundedQ => "{|X|} is st-bounded by a q-integrable r.v.",
            NodeId::UniformlyQIntegrable => {
                "{|X|^q} is icx-bounded by an integrable r.v. (uniformly q-integrable)"
            }
            NodeId::BoundedLq => "{X} is bounded in L^q",
            NodeId::StBoundedIntegrable => "{|X|} is st-bounded by an integrable r.v.",
            NodeId::UniformlyIntegrable => {
                "{|X|} is icx-bounded by an integrable r.v. (uniformly integrable)"
            }
            NodeId::BoundedL1 => "{X} is bounded in L^1",
            NodeId::StBoundedP => "{|X|} is st-bounded by a p-integrable r.v.",
            NodeId::UniformlyPIntegrable => {
                "{|X|^p} is icx-bounded by an integrable r.v. (uniformly p-integrable)"
            }
            NodeId::BoundedLp => "{X} is bounded in L^p",
            NodeId::Tight => "{|X|} is st-bounded by a finite r.v. (tight)",
        }
    }

    pub fn short_name(&self) -> &'static str {
        match self {
            NodeId::StBoundedQ => "st_bounded_q",
            NodeId::UniformlyQIntegrable => "uniformly_q_integrable",
            NodeId::BoundedLq => "bounded_lq",
            NodeId::StBoundedIntegrable => "st_bounded_integrable",
            NodeId::UniformlyIntegrable => "uniformly_integrable",
            NodeId::BoundedL1 => "bounded_l1",
            NodeId::StBoundedP => "st_bounded_p",
            NodeId::UniformlyPIntegrable => "uniformly_p_integrable",
            NodeId::BoundedLp => "bounded_lp",
            NodeId::Tight => "tight",
        }
    }
}

/// The nine downward edges, consecutive pairs of [`ALL_NODES`].
pub fn edges() -> Vec<(NodeId, NodeId)> {
    ALL_NODES.windows(2).map(|w| (w[0], w[1])).collect()
}
