use std::collections::BTreeSet;
use std::thread;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{mpt_send, Adversary, Network, SimError, Status};
use crate::graph::Vertex;
use crate::random::random_distinct;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepParams {
    pub from: Vertex,
    pub to: Vertex,
    pub ds: Vec<usize>,
    pub ks: Vec<usize>,
    pub adversary_sizes: Vec<usize>,
    pub trials: usize,
    pub message: Vec<u8>,
    pub seed: u64,
}

/// Outcome of one `(d, k, |adv|)` cell. Adversary nodes are both passive
/// and active; `leaked` is set when some trial let them observe `d` or
/// more shares of a byte.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub d: usize,
    pub k: usize,
    pub adversary_size: usize,
    pub trials: usize,
    pub successes: usize,
    pub success_rate: f64,
    pub leaked: bool,
}

impl SweepRow {
    pub const CSV_HEADER: &'static str = "d,k,adversary,trials,success_rate,leaked";

    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{:.4},{}",
            self.d,
            self.k,
            self.adversary_size,
            self.trials,
            self.success_rate,
            if self.leaked { "yes" } else { "no" }
        )
    }
}

fn run_cell(net: &Network, params: &SweepParams, d: usize, k: usize, size: usize) -> Result<SweepRow, SimError> {
    let cell_seed = params.seed ^ ((d as u64) << 48) ^ ((k as u64) << 32) ^ ((size as u64) << 16);
    let mut rng = ChaCha8Rng::seed_from_u64(cell_seed);
    let candidates: Vec<Vertex> = (0..net.graph.n()).filter(|&v| v != params.from && v != params.to).collect();
    let mut successes = 0;
    let mut leaked = false;
    for trial in 0..params.trials {
        let chosen: BTreeSet<Vertex> = random_distinct(candidates.len(), size.min(candidates.len()), &mut rng)
            .into_iter()
            .map(|i| candidates[i])
            .collect();
        let adv = Adversary { passive: chosen.clone(), active: chosen, ..Adversary::none() };
        let r = mpt_send(net, params.from, params.to, &params.message, d, k, &adv, cell_seed.wrapping_add(trial as u64))?;
        if r.status == Status::Success && r.delivered.as_deref() == Some(&params.message[..]) {
            successes += 1;
        }
        let seen: BTreeSet<usize> = r.transcript.values().flatten().map(|rec| rec.path).collect();
        leaked |= seen.len() >= d;
    }
    let success_rate = if params.trials == 0 { 0.0 } else { successes as f64 / params.trials as f64 };
    Ok(SweepRow { d, k, adversary_size: size, trials: params.trials, successes, success_rate, leaked })
}

/// Runs every valid `(d, k, |adv|)` combination (`d <= k`) on its own
/// thread; rows come back in parameter order.
pub fn sweep(net: &Network, params: &SweepParams) -> Result<Vec<SweepRow>, SimError> {
    let mut cells = Vec::new();
    for &d in &params.ds {
        for &k in &params.ks {
            if d == 0 || d > k {
                continue;
            }
            for &size in &params.adversary_sizes {
                cells.push((d, k, size));
            }
        }
    }
    thread::scope(|scope| {
        let handles: Vec<_> = cells
            .iter()
            .map(|&(d, k, size)| scope.spawn(move || run_cell(net, params, d, k, size)))
            .collect();
        handles.into_iter().map(|h| h.join().expect("sweep worker panicked")).collect()
    })
}
