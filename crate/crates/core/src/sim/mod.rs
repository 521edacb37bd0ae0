//! In-process simulation of multipath transmission (MPT) and multipath
//! authentication (MPA).
//!
//! A [`Network`] is a graph whose edges carry shared secrets. Every secret
//! seeds a deterministic key stream; protocol run `r` on edge `{u, v}`
//! draws its one-time MAC key from stream `r`, so both endpoints derive
//! the same key without further coordination.

mod mpa;
mod mpt;
mod sweep;

pub use mpa::{mpa_sign, mpa_verify, neighbor_vote, AuthResult, Decision, MpaSignature, UniquenessWarning, Unreachable, Vote};
pub use mpt::{eavesdrop_distribution, mpt_send, EavesdropTable, Status, TransmissionResult, WireRecord};
pub use sweep::{sweep, SweepParams, SweepRow};

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::sync::Mutex;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use thiserror::Error;

use crate::auth::{AuthError, MacKey};
use crate::coding::{CodingError, Field};
use crate::connectivity::ConnectivityError;
use crate::construct::{maximal_unn_subgraph, ConstructError, UnnSubgraphResult};
use crate::graph::{Graph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimError {
    #[error("network graph must be connected")]
    Disconnected,
    #[error("network graph must be undirected")]
    Directed,
    #[error("vertex {vertex} out of range for network with {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("sender and receiver must differ (both {0})")]
    SameEndpoints(Vertex),
    #[error("adversary may not occupy sender or receiver {0}")]
    AdversaryOnEndpoint(Vertex),
    #[error("message byte {byte} does not fit in GF({p})")]
    ByteOutOfField { byte: u8, p: u32 },
    #[error("signing needs at least one neighbor")]
    EmptySubset,
    #[error("{neighbor} is not a neighbor of {signer}")]
    NotNeighbor { signer: Vertex, neighbor: Vertex },
    #[error("no key provisioned on edge {0}-{1}")]
    NoKey(Vertex, Vertex),
    #[error("threshold {threshold} not in 1..={tags}")]
    Threshold { threshold: usize, tags: usize },
    #[error("enumeration of {0} polynomials per secret is too large")]
    EnumerationTooLarge(u64),
    #[error("invalid adversary spec: {0}")]
    AdversarySpec(String),
    #[error(transparent)]
    Coding(#[from] CodingError),
    #[error(transparent)]
    Auth(#[from] AuthError),
    #[error(transparent)]
    Routing(#[from] ConnectivityError),
    #[error(transparent)]
    Construct(#[from] ConstructError),
}

fn edge_key(u: Vertex, v: Vertex) -> (Vertex, Vertex) {
    (u.min(v), u.max(v))
}

/// A graph with per-edge shared secrets.
pub struct Network {
    graph: Graph,
    field: Field,
    edge_keys: BTreeMap<(Vertex, Vertex), u64>,
    unn_tree: Option<UnnSubgraphResult>,
    // (edge, run) pairs whose one-time key has produced a tag
    issued: Mutex<BTreeSet<((Vertex, Vertex), u64)>>,
}

impl fmt::Debug for Network {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Network")
            .field("graph", &self.graph)
            .field("field", &self.field)
            .field("keys", &self.edge_keys.len())
            .field("restricted", &self.unn_tree.is_some())
            .finish()
    }
}

/// Provisions one distinct secret per edge, or per edge of the spanning
/// tree behind the extracted UNN subgraph when `restrict_to_tree` is set.
pub fn build_network(g: &Graph, seed: u64, restrict_to_tree: bool) -> Result<Network, SimError> {
    if g.is_directed() {
        return Err(SimError::Directed);
    }
    if !g.is_connected() {
        return Err(SimError::Disconnected);
    }
    let unn_tree = if restrict_to_tree { Some(maximal_unn_subgraph(g)?) } else { None };
    let keyed: Vec<(Vertex, Vertex)> = match &unn_tree {
        Some(r) => r.chosen_tree.edges().collect(),
        None => g.edges().collect(),
    };
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut used = BTreeSet::new();
    let mut edge_keys = BTreeMap::new();
    for e in keyed {
        let secret = loop {
            let s: u64 = rng.gen();
            if used.insert(s) {
                break s;
            }
        };
        edge_keys.insert(e, secret);
    }
    Ok(Network {
        graph: g.clone(),
        field: Field::default_field(),
        edge_keys,
        unn_tree,
        issued: Mutex::new(BTreeSet::new()),
    })
}

impl Network {
    /// Replaces the field used for sharing and MACs.
    pub fn with_field(mut self, field: Field) -> Self {
        self.field = field;
        self
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn unn_tree(&self) -> Option<&UnnSubgraphResult> {
        self.unn_tree.as_ref()
    }

    pub fn edge_keys(&self) -> &BTreeMap<(Vertex, Vertex), u64> {
        &self.edge_keys
    }

    pub fn has_key(&self, u: Vertex, v: Vertex) -> bool {
        self.edge_keys.contains_key(&edge_key(u, v))
    }

    /// One-time MAC key for run `run` on edge `{signer, owner}`.
    pub fn mac_key(&self, signer: Vertex, owner: Vertex, run: u64) -> Result<MacKey, SimError> {
        let secret = self
            .edge_keys
            .get(&edge_key(signer, owner))
            .ok_or(SimError::NoKey(signer, owner))?;
        let mut stream = ChaCha20Rng::seed_from_u64(*secret);
        stream.set_stream(run);
        Ok(MacKey::random(self.field, owner, &mut stream))
    }

    /// Marks the key for `(edge, run)` as spent; errors if it already was.
    fn consume(&self, signer: Vertex, owner: Vertex, run: u64) -> Result<(), SimError> {
        let mut issued = self.issued.lock().expect("key registry poisoned");
        if issued.insert((edge_key(signer, owner), run)) {
            Ok(())
        } else {
            Err(AuthError::KeyReuse { owner }.into())
        }
    }

    fn check_vertex(&self, v: Vertex) -> Result<(), SimError> {
        if v < self.graph.n() {
            Ok(())
        } else {
            Err(SimError::VertexOutOfRange { vertex: v, n: self.graph.n() })
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KeyCounts {
    pub provisioned: usize,
    /// Keys on a spanning tree, `n - 1`.
    pub tree_bound: usize,
    /// Keys for pairwise end-to-end secrets, `n(n-1)/2`.
    pub pairwise_bound: usize,
}

pub fn key_count_report(net: &Network) -> KeyCounts {
    let n = net.graph.n();
    KeyCounts {
        provisioned: net.edge_keys.len(),
        tree_bound: n.saturating_sub(1),
        pairwise_bound: n * n.saturating_sub(1) / 2,
    }
}

/// How an active node rewrites the `y`-values of shares crossing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Corruption {
    /// Adds `offset` to every share.
    FixedOffset(u32),
    /// Adds `offset` only to the shares of the listed message bytes.
    Selective { offset: u32, bytes: BTreeSet<usize> },
}

impl Corruption {
    fn offset_for(&self, byte: usize) -> Option<u32> {
        match self {
            Corruption::FixedOffset(o) => Some(*o),
            Corruption::Selective { offset, bytes } => bytes.contains(&byte).then_some(*offset),
        }
    }
}

/// Replies of compromised verifiers, and rewriting of replies relayed
/// through active nodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VoteBehavior {
    AlwaysAccept,
    AlwaysReject,
    Flip,
}

/// A static adversary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Adversary {
    pub passive: BTreeSet<Vertex>,
    pub active: BTreeSet<Vertex>,
    pub corruption: Corruption,
    pub votes: VoteBehavior,
}

impl Default for Adversary {
    fn default() -> Self {
        Adversary::none()
    }
}

impl Adversary {
    pub fn none() -> Self {
        Adversary {
            passive: BTreeSet::new(),
            active: BTreeSet::new(),
            corruption: Corruption::FixedOffset(1),
            votes: VoteBehavior::AlwaysAccept,
        }
    }

    pub fn passive<I: IntoIterator<Item = Vertex>>(nodes: I) -> Self {
        Adversary { passive: nodes.into_iter().collect(), ..Adversary::none() }
    }

    pub fn active<I: IntoIterator<Item = Vertex>>(nodes: I) -> Self {
        Adversary { active: nodes.into_iter().collect(), ..Adversary::none() }
    }

    pub fn nodes(&self) -> BTreeSet<Vertex> {
        self.passive.union(&self.active).copied().collect()
    }

    fn check_endpoints(&self, endpoints: &[Vertex]) -> Result<(), SimError> {
        for &v in endpoints {
            if self.passive.contains(&v) || self.active.contains(&v) {
                return Err(SimError::AdversaryOnEndpoint(v));
            }
        }
        Ok(())
    }
}

fn parse_nodes(s: &str) -> Result<BTreeSet<Vertex>, SimError> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.trim().parse().map_err(|_| SimError::AdversarySpec(format!("bad vertex `{t}`"))))
        .collect()
}

/// `;`-separated `key=value` items: `passive=1,2`, `active=3`,
/// `offset=5`, `bytes=0,2` (selective corruption), and
/// `votes=accept|reject|flip`. The empty string or `none` is the empty
/// adversary.
impl FromStr for Adversary {
    type Err = SimError;

    fn from_str(s: &str) -> Result<Self, SimError> {
        let mut adv = Adversary::none();
        let mut offset = 1u32;
        let mut bytes: Option<BTreeSet<usize>> = None;
        let s = s.trim();
        if s.is_empty() || s == "none" {
            return Ok(adv);
        }
        for item in s.split(';').filter(|i| !i.trim().is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| SimError::AdversarySpec(format!("expected key=value, found `{item}`")))?;
            match key.trim() {
                "passive" => adv.passive = parse_nodes(value)?,
                "active" => adv.active = parse_nodes(value)?,
                "offset" => {
                    offset = value
                        .trim()
                        .parse()
                        .map_err(|_| SimError::AdversarySpec(format!("bad offset `{value}`")))?
                }
                "bytes" => bytes = Some(parse_nodes(value)?),
                "votes" => {
                    adv.votes = match value.trim() {
                        "accept" => VoteBehavior::AlwaysAccept,
                        "reject" => VoteBehavior::AlwaysReject,
                        "flip" => VoteBehavior::Flip,
                        other => return Err(SimError::AdversarySpec(format!("unknown vote behavior `{other}`"))),
                    }
                }
                other => return Err(SimError::AdversarySpec(format!("unknown key `{other}`"))),
            }
        }
        adv.corruption = match bytes {
            Some(bytes) => Corruption::Selective { offset, bytes },
            None => Corruption::FixedOffset(offset),
        };
        Ok(adv)
    }
}
