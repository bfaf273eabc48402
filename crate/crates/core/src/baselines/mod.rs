//! Comparison algorithms: JADE and PSO-DE.

mod jade;
mod psode;

pub use jade::{jade_generation, lehmer_mean, run_jade, JadeParams, JadeState};
pub use psode::{
    de_step, init_swarm, pso_step, psode_generation, run_psode, PsoDeParams, Swarm,
};
