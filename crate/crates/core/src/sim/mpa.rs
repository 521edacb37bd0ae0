use std::collections::BTreeMap;

use super::{Adversary, Network, SimError, VoteBehavior};
use crate::auth::{mac, verify, MacKey, Tag};
use crate::connectivity::{disjoint_paths, ConnectivityError};
use crate::graph::Vertex;

/// Tags issued by `signer` in protocol run `run`, one per chosen neighbor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MpaSignature {
    pub signer: Vertex,
    pub run: u64,
    pub tags: BTreeMap<Vertex, Tag>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Decision {
    Accept,
    Reject,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Vote {
    Accept,
    Reject,
    Abstain,
}

/// How a neighbor Bob cannot reach is counted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Unreachable {
    #[default]
    Abstain,
    Reject,
}

/// Set when the claimed signer shares its neighborhood with other vertices,
/// any of which could have produced the same votes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniquenessWarning {
    pub claimed: Vertex,
    pub twins: Vec<Vertex>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuthResult {
    pub decision: Decision,
    pub votes: BTreeMap<Vertex, Vote>,
    pub threshold_used: usize,
    pub warning: Option<UniquenessWarning>,
}

impl AuthResult {
    pub fn accepting(&self) -> usize {
        self.votes.values().filter(|&&v| v == Vote::Accept).count()
    }
}

/// Tags `message` for every neighbor in `subset`, consuming the one-time
/// keys of run `run`.
pub fn mpa_sign(
    net: &Network,
    alice: Vertex,
    message: &[u8],
    subset: &[Vertex],
    run: u64,
) -> Result<MpaSignature, SimError> {
    net.check_vertex(alice)?;
    if subset.is_empty() {
        return Err(SimError::EmptySubset);
    }
    let mut keys = Vec::with_capacity(subset.len());
    for &i in subset {
        net.check_vertex(i)?;
        if !net.graph.has_edge(alice, i) {
            return Err(SimError::NotNeighbor { signer: alice, neighbor: i });
        }
        keys.push(net.mac_key(alice, i, run)?);
    }
    let mut tags = BTreeMap::new();
    for (&i, mut key) in subset.iter().zip(keys) {
        net.consume(alice, i, run)?;
        let digest = key.digest(message);
        tags.insert(i, mac(&mut key, digest)?);
    }
    Ok(MpaSignature { signer: alice, run, tags })
}

/// An honest neighbor's check of `tag` against its own copy of the key.
pub fn neighbor_vote(key: &MacKey, message: &[u8], tag: &Tag) -> bool {
    verify(key, key.digest(message), tag)
}

fn adversarial(behavior: VoteBehavior, honest: Vote) -> Vote {
    match behavior {
        VoteBehavior::AlwaysAccept => Vote::Accept,
        VoteBehavior::AlwaysReject => Vote::Reject,
        VoteBehavior::Flip => match honest {
            Vote::Accept => Vote::Reject,
            Vote::Reject => Vote::Accept,
            Vote::Abstain => Vote::Abstain,
        },
    }
}

/// Bob asks every tagged neighbor of `alice` to check its tag and accepts
/// iff at least `threshold` neighbors confirm. Requests and replies avoid
/// `alice`; an active relay on the reply path rewrites the reply.
#[allow(clippy::too_many_arguments)]
pub fn mpa_verify(
    net: &Network,
    bob: Vertex,
    alice: Vertex,
    message: &[u8],
    sig: &MpaSignature,
    threshold: usize,
    adv: &Adversary,
    unreachable: Unreachable,
) -> Result<AuthResult, SimError> {
    net.check_vertex(bob)?;
    net.check_vertex(alice)?;
    if threshold == 0 || threshold > sig.tags.len() {
        return Err(SimError::Threshold { threshold, tags: sig.tags.len() });
    }
    let mut without_alice = net.graph.clone();
    for v in net.graph.neighbors(alice).clone() {
        without_alice.remove_edge(alice, v);
    }

    let mut votes = BTreeMap::new();
    for (&i, tag) in &sig.tags {
        net.check_vertex(i)?;
        let honest = if net.graph.has_edge(alice, i) && net.has_key(alice, i) {
            let key = net.mac_key(alice, i, sig.run)?;
            if tag.key_owner == i && neighbor_vote(&key, message, tag) {
                Vote::Accept
            } else {
                Vote::Reject
            }
        } else {
            Vote::Reject
        };
        let mut vote = if adv.active.contains(&i) { adversarial(adv.votes, honest) } else { honest };
        if i != bob {
            match disjoint_paths(&without_alice, bob, i, 1) {
                Ok(paths) => {
                    for relay in paths.interior(0) {
                        if adv.active.contains(relay) {
                            vote = adversarial(adv.votes, vote);
                        }
                    }
                }
                Err(ConnectivityError::Infeasible { .. }) => {
                    vote = match unreachable {
                        Unreachable::Abstain => Vote::Abstain,
                        Unreachable::Reject => Vote::Reject,
                    };
                }
                Err(e) => return Err(e.into()),
            }
        }
        votes.insert(i, vote);
    }

    let own = net.graph.neighbors(alice);
    let twins: Vec<Vertex> = (0..net.graph.n()).filter(|&v| v != alice && net.graph.neighbors(v) == own).collect();
    let warning = (!twins.is_empty()).then_some(UniquenessWarning { claimed: alice, twins });

    let accepting = votes.values().filter(|&&v| v == Vote::Accept).count();
    Ok(AuthResult {
        decision: if accepting >= threshold { Decision::Accept } else { Decision::Reject },
        votes,
        threshold_used: threshold,
        warning,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::auth::AuthError;
    use crate::graph::Graph;
    use crate::sim::build_network;

    #[test]
    fn honest_run_on_k4() {
        let net = build_network(&Graph::complete(4), 1, false).unwrap();
        let sig = mpa_sign(&net, 0, b"hi", &[1, 2, 3], 0).unwrap();
        assert_eq!(sig.tags.len(), 3);
        let r = mpa_verify(&net, 3, 0, b"hi", &sig, 3, &Adversary::none(), Unreachable::Abstain).unwrap();
        assert_eq!(r.decision, Decision::Accept);
        assert!(r.votes.values().all(|&v| v == Vote::Accept));
        assert_eq!(r.warning, None);
    }

    #[test]
    fn each_tag_verifies_only_under_its_owner() {
        let net = build_network(&Graph::complete(4), 1, false).unwrap();
        let sig = mpa_sign(&net, 0, b"m", &[1, 2, 3], 5).unwrap();
        for (&owner, tag) in &sig.tags {
            for other in 1..4 {
                let key = net.mac_key(0, other, 5).unwrap();
                assert_eq!(neighbor_vote(&key, b"m", tag), other == owner);
            }
        }
    }

    #[test]
    fn sign_errors_and_key_reuse() {
        let net = build_network(&Graph::path(3), 1, false).unwrap();
        assert_eq!(mpa_sign(&net, 0, b"m", &[], 0), Err(SimError::EmptySubset));
        assert_eq!(mpa_sign(&net, 0, b"m", &[2], 0), Err(SimError::NotNeighbor { signer: 0, neighbor: 2 }));
        mpa_sign(&net, 1, b"m", &[0], 0).unwrap();
        assert_eq!(mpa_sign(&net, 1, b"m", &[0], 0), Err(SimError::Auth(AuthError::KeyReuse { owner: 0 })));
        mpa_sign(&net, 1, b"m", &[0], 1).unwrap();
    }

    #[test]
    fn substituted_message_mostly_rejected() {
        let net = build_network(&Graph::complete(5), 2, false).unwrap();
        let sig = mpa_sign(&net, 0, b"pay 10", &[1, 2, 3, 4], 0).unwrap();
        let r = mpa_verify(&net, 4, 0, b"pay 99", &sig, 2, &Adversary::none(), Unreachable::Abstain).unwrap();
        assert_eq!(r.decision, Decision::Reject);
    }

    #[test]
    fn active_neighbor_and_relay_rewrite_votes() {
        let net = build_network(&Graph::complete(4), 1, false).unwrap();
        let sig = mpa_sign(&net, 0, b"m", &[1, 2, 3], 0).unwrap();
        let mut adv = Adversary::active([2]);
        adv.votes = VoteBehavior::AlwaysReject;
        let r = mpa_verify(&net, 3, 0, b"m", &sig, 3, &adv, Unreachable::Abstain).unwrap();
        assert_eq!(r.votes[&2], Vote::Reject);
        assert_eq!(r.votes[&1], Vote::Accept);
        assert_eq!(r.decision, Decision::Reject);
        assert_eq!(r.accepting(), 2);
    }

    #[test]
    fn twin_signer_warns() {
        // K_{2,2}: 0 and 1 share the neighborhood {2, 3}
        let net = build_network(&Graph::complete_bipartite(2, 2), 1, false).unwrap();
        let sig = mpa_sign(&net, 1, b"m", &[2, 3], 0).unwrap();
        let r = mpa_verify(&net, 3, 0, b"m", &sig, 1, &Adversary::none(), Unreachable::Abstain).unwrap();
        assert_eq!(r.warning, Some(UniquenessWarning { claimed: 0, twins: vec![1] }));
    }

    #[test]
    fn unreachable_neighbor_policy() {
        // star: leaves only connect through the center
        let net = build_network(&Graph::star(3), 1, false).unwrap();
        let sig = mpa_sign(&net, 0, b"m", &[1, 2, 3], 0).unwrap();
        let r = mpa_verify(&net, 1, 0, b"m", &sig, 1, &Adversary::none(), Unreachable::Abstain).unwrap();
        assert_eq!(r.votes[&1], Vote::Accept);
        assert_eq!(r.votes[&2], Vote::Abstain);
        let r = mpa_verify(&net, 1, 0, b"m", &sig, 1, &Adversary::none(), Unreachable::Reject).unwrap();
        assert_eq!(r.votes[&3], Vote::Reject);
        assert!(mpa_verify(&net, 1, 0, b"m", &sig, 4, &Adversary::none(), Unreachable::Reject).is_err());
    }
}
