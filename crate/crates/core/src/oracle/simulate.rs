//! Monte-Carlo runs under the uniform measure.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::alphabet::Word;
use crate::error::{Error, Result};
use crate::nfa::Nfa;
use crate::rts::Rts;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimulationConfig {
    pub seed: u64,
    pub max_steps: usize,
    pub runs: usize,
    /// Largest successor set accepted at a configuration of a system that is
    /// not length-preserving.
    pub successor_cap: usize,
}

impl Default for SimulationConfig {
    fn default() -> Self {
        Self { seed: 0, max_steps: 10_000, runs: 1_000, successor_cap: 10_000 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimulationStats {
    pub runs: usize,
    pub goal_hits: usize,
    pub terminations: usize,
    /// Runs stopped by `max_steps`.
    pub timeouts: usize,
    pub goal_hit_frequency: f64,
    pub termination_frequency: f64,
    /// Mean number of steps until the goal was hit or the run terminated,
    /// over the runs that did either.
    pub mean_steps: Option<f64>,
}

/// Runs `cfg.runs` random walks from `c0`, each stopping at the first goal
/// configuration (when a goal is given), at a terminating configuration, or
/// after `cfg.max_steps` steps. Successors are chosen uniformly.
pub fn simulate(rts: &Rts, c0: &Word, goal: Option<&Nfa>, cfg: &SimulationConfig) -> Result<SimulationStats> {
    if cfg.runs == 0 {
        return Err(Error::InvalidArgument("runs must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut succ_cache: HashMap<Word, Vec<Word>> = HashMap::new();
    let mut goal_cache: HashMap<Word, bool> = HashMap::new();
    let (mut goal_hits, mut terminations, mut timeouts) = (0, 0, 0);
    let mut absorbed_steps = 0u64;

    for _ in 0..cfg.runs {
        let mut c = c0.clone();
        let mut steps = 0;
        loop {
            if let Some(g) = goal {
                let hit = match goal_cache.get(&c) {
                    Some(&h) => h,
                    None => {
                        let h = g.accepts(&c)?;
                        goal_cache.insert(c.clone(), h);
                        h
                    }
                };
                if hit {
                    goal_hits += 1;
                    absorbed_steps += steps as u64;
                    break;
                }
            }
            if !succ_cache.contains_key(&c) {
                let succ = successors(rts, &c, cfg.successor_cap)?;
                succ_cache.insert(c.clone(), succ);
            }
            let succ = &succ_cache[&c];
            if succ.is_empty() {
                terminations += 1;
                absorbed_steps += steps as u64;
                break;
            }
            if steps == cfg.max_steps {
                timeouts += 1;
                break;
            }
            c = succ[rng.gen_range(0..succ.len())].clone();
            steps += 1;
        }
    }
    let absorbed = goal_hits + terminations;
    Ok(SimulationStats {
        runs: cfg.runs,
        goal_hits,
        terminations,
        timeouts,
        goal_hit_frequency: goal_hits as f64 / cfg.runs as f64,
        termination_frequency: terminations as f64 / cfg.runs as f64,
        mean_steps: (absorbed > 0).then(|| absorbed_steps as f64 / absorbed as f64),
    })
}

fn successors(rts: &Rts, c: &Word, cap: usize) -> Result<Vec<Word>> {
    let (succ, truncated) = rts.successors(c, cap)?;
    if truncated {
        return Err(Error::SuccessorCapExceeded { cap, config: rts.render(c) });
    }
    Ok(succ)
}
