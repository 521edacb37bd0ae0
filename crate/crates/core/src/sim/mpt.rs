use std::collections::{BTreeMap, BTreeSet};

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

use super::{Adversary, Network, SimError};
use crate::coding::{decode_wb, eval_poly, share, FieldElement, Share};
use crate::connectivity::{disjoint_paths, ConnectivityError, PathSet};
use crate::graph::Vertex;

/// One share on the wire: the share of message byte `byte` travelling on
/// path `path`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct WireRecord {
    pub path: usize,
    pub byte: usize,
    pub x: u32,
    pub y: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Success,
    DecodeFailure,
    RoutingFailure,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Success => "success",
            Status::DecodeFailure => "decode-failure",
            Status::RoutingFailure => "routing-failure",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransmissionResult {
    pub delivered: Option<Vec<u8>>,
    pub status: Status,
    /// Records observed by each passive node, in arrival order.
    pub transcript: BTreeMap<Vertex, Vec<WireRecord>>,
    /// Empty on routing failure.
    pub paths_used: PathSet,
    /// Paths with at least one active interior node.
    pub corrupted_paths: BTreeSet<usize>,
}

fn validate(net: &Network, alice: Vertex, bob: Vertex, d: usize, k: usize, adv: &Adversary) -> Result<(), SimError> {
    net.check_vertex(alice)?;
    net.check_vertex(bob)?;
    if alice == bob {
        return Err(SimError::SameEndpoints(alice));
    }
    let p = net.field.modulus();
    if d == 0 || d > k || k as u64 >= u64::from(p) {
        return Err(crate::coding::CodingError::Parameters { d, k, p }.into());
    }
    adv.check_endpoints(&[alice, bob])
}

/// Sends `message` from `alice` to `bob` over `k` vertex-disjoint paths,
/// each byte shared with threshold `d`. Share `i` (at `x = i + 1`) rides
/// path `i`; Bob decodes every byte with Welch-Berlekamp.
#[allow(clippy::too_many_arguments)]
pub fn mpt_send(
    net: &Network,
    alice: Vertex,
    bob: Vertex,
    message: &[u8],
    d: usize,
    k: usize,
    adv: &Adversary,
    seed: u64,
) -> Result<TransmissionResult, SimError> {
    validate(net, alice, bob, d, k, adv)?;
    let field = net.field;
    if let Some(&byte) = message.iter().find(|&&b| u32::from(b) >= field.modulus()) {
        return Err(SimError::ByteOutOfField { byte, p: field.modulus() });
    }
    let paths = match disjoint_paths(&net.graph, alice, bob, k) {
        Ok(p) => p,
        Err(ConnectivityError::Infeasible { .. }) => {
            return Ok(TransmissionResult {
                delivered: None,
                status: Status::RoutingFailure,
                transcript: BTreeMap::new(),
                paths_used: PathSet { source: alice, target: bob, paths: Vec::new() },
                corrupted_paths: BTreeSet::new(),
            })
        }
        Err(e) => return Err(e.into()),
    };

    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let sharings = message
        .iter()
        .map(|&b| share(field.elem(u64::from(b)), d, k, &mut rng))
        .collect::<Result<Vec<_>, _>>()?;

    let mut transcript: BTreeMap<Vertex, Vec<WireRecord>> = BTreeMap::new();
    let mut corrupted_paths = BTreeSet::new();
    // received[byte][path]
    let mut received: Vec<Vec<Share>> = sharings.iter().map(|sv| sv.shares.clone()).collect();
    for path in 0..k {
        for &node in paths.interior(path) {
            let passive = adv.passive.contains(&node);
            let active = adv.active.contains(&node);
            if active {
                corrupted_paths.insert(path);
            }
            for (byte, shares) in received.iter_mut().enumerate() {
                let s = &mut shares[path];
                if passive {
                    transcript.entry(node).or_default().push(WireRecord {
                        path,
                        byte,
                        x: s.x.value(),
                        y: s.y.value(),
                    });
                }
                if active {
                    if let Some(offset) = adv.corruption.offset_for(byte) {
                        s.y += field.elem(u64::from(offset));
                    }
                }
            }
        }
    }

    let mut delivered = Vec::with_capacity(message.len());
    for shares in &received {
        match decode_wb(shares, d) {
            Ok(v) if v.value() <= u32::from(u8::MAX) => delivered.push(v.value() as u8),
            _ => {
                return Ok(TransmissionResult {
                    delivered: None,
                    status: Status::DecodeFailure,
                    transcript,
                    paths_used: paths,
                    corrupted_paths,
                })
            }
        }
    }
    Ok(TransmissionResult {
        delivered: Some(delivered),
        status: Status::Success,
        transcript,
        paths_used: paths,
        corrupted_paths,
    })
}

/// Exact distribution of a passive adversary's view of a one-element
/// sharing, for every possible secret.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EavesdropTable {
    /// Indices of the paths (and shares) the adversary observes.
    pub seen_shares: Vec<usize>,
    /// `by_secret[s]` maps each observed `y`-tuple to the number of
    /// sharing polynomials producing it.
    pub by_secret: Vec<BTreeMap<Vec<u32>, u64>>,
}

impl EavesdropTable {
    /// True iff the view distribution is identical for every secret.
    pub fn is_secret_independent(&self) -> bool {
        self.by_secret.windows(2).all(|w| w[0] == w[1])
    }
}

const MAX_ENUMERATION: u64 = 1 << 24;

/// Enumerates all `p^(d-1)` sharing polynomials per secret and tabulates
/// what `passive` sees on the `k` paths Alice would use.
pub fn eavesdrop_distribution(
    net: &Network,
    alice: Vertex,
    bob: Vertex,
    d: usize,
    k: usize,
    passive: &BTreeSet<Vertex>,
) -> Result<EavesdropTable, SimError> {
    let adv = Adversary::passive(passive.iter().copied());
    validate(net, alice, bob, d, k, &adv)?;
    let field = net.field;
    let p = u64::from(field.modulus());
    let count = (0..d - 1).try_fold(1u64, |acc, _| acc.checked_mul(p).filter(|&c| c <= MAX_ENUMERATION));
    let Some(count) = count else {
        return Err(SimError::EnumerationTooLarge(p.saturating_pow(d as u32 - 1)));
    };
    let paths = disjoint_paths(&net.graph, alice, bob, k)?;
    let seen_shares: Vec<usize> =
        (0..k).filter(|&i| paths.interior(i).iter().any(|v| passive.contains(v))).collect();
    let xs: Vec<FieldElement> = seen_shares.iter().map(|&i| field.elem(i as u64 + 1)).collect();

    let mut by_secret = Vec::with_capacity(p as usize);
    for secret in field.elements() {
        let mut hist = BTreeMap::new();
        let mut poly = vec![field.zero(); d];
        poly[0] = secret;
        for index in 0..count {
            let mut rest = index;
            for c in poly.iter_mut().skip(1) {
                *c = field.elem(rest % p);
                rest /= p;
            }
            let view: Vec<u32> = xs.iter().map(|&x| eval_poly(&poly, x).value()).collect();
            *hist.entry(view).or_insert(0) += 1;
        }
        by_secret.push(hist);
    }
    Ok(EavesdropTable { seen_shares, by_secret })
}
