//! Bimanual regrasp planning and Monte Carlo simulation of the two
//! baseline strategies: dead reckoning and sensor-aided localization.

mod config;
mod fsm;
mod monte_carlo;
mod trial;

pub use config::{ConfigError, SimConfig};
pub use fsm::{
    compile_sequence, compile_with_state, executed_rotations, face_frame, ActionKind, GraspState,
    Gripper, ManipAction, Mode, PlanError, Side,
};
pub use monte_carlo::{monte_carlo, run_seeds, simulate_run, RunOutcome, Summary};
pub use trial::{
    simulate_trial, simulate_trial_traced, ModelError, SimResult, Step, TimingModel,
    UncertaintyModel,
};
