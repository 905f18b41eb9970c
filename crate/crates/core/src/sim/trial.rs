//! Pose-error accumulation over one action plan.
//!
//! The cube's pose error relative to the grippers is a 2-D vector in the
//! grasp plane. Pickup starts it from a fresh camera estimate. Each contact
//! action is checked first: if the error already exceeds half a sub-cube the
//! grasp under- or over-constrains the cube and the trial fails there.
//! Otherwise the action succeeds and perturbs the pose by a Gaussian step.
//! Localize replaces the error with a bounded residual.

use thiserror::Error;

use super::fsm::{ActionKind, ManipAction};
use crate::geometry::FAILURE_THRESHOLD_CM;
use crate::rng::SplitMix64;
use crate::scramble::Seed;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UncertaintyModel {
    /// Per-component standard deviation of the step each contact adds (cm).
    pub sigma_step_cm: f64,
    /// Largest residual error after a Localize (cm).
    pub localize_bound_cm: f64,
    /// Per-component standard deviation of the error right after pickup
    /// (cm). Zero treats the camera estimate as exact.
    pub initial_sigma_cm: f64,
}

#[derive(Debug, Clone, PartialEq, Error)]
#[error("{field} must be a finite non-negative number, got {value}")]
pub struct ModelError {
    pub field: &'static str,
    pub value: f64,
}

fn non_negative(field: &'static str, value: f64) -> Result<f64, ModelError> {
    if value.is_finite() && value >= 0.0 {
        Ok(value)
    } else {
        Err(ModelError { field, value })
    }
}

fn positive(field: &'static str, value: f64) -> Result<f64, ModelError> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(ModelError { field, value })
    }
}

impl UncertaintyModel {
    pub fn new(sigma_step_cm: f64, localize_bound_cm: f64) -> Result<Self, ModelError> {
        Ok(UncertaintyModel {
            sigma_step_cm: non_negative("sigma_step_cm", sigma_step_cm)?,
            localize_bound_cm: non_negative("localize_bound_cm", localize_bound_cm)?,
            initial_sigma_cm: 0.0,
        })
    }

    pub fn with_initial_sigma(mut self, sigma: f64) -> Result<Self, ModelError> {
        self.initial_sigma_cm = non_negative("initial_sigma_cm", sigma)?;
        Ok(self)
    }

    pub fn failure_threshold_cm(&self) -> f64 {
        FAILURE_THRESHOLD_CM
    }
}

/// Duration of each action kind, in seconds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimingModel {
    pub pickup_s: f64,
    pub handoff_s: f64,
    pub rotate_s: f64,
    pub localize_s: f64,
}

impl TimingModel {
    pub fn new(
        pickup_s: f64,
        handoff_s: f64,
        rotate_s: f64,
        localize_s: f64,
    ) -> Result<Self, ModelError> {
        Ok(TimingModel {
            pickup_s: positive("pickup_s", pickup_s)?,
            handoff_s: positive("handoff_s", handoff_s)?,
            rotate_s: positive("rotate_s", rotate_s)?,
            localize_s: positive("localize_s", localize_s)?,
        })
    }

    pub fn duration(&self, kind: ActionKind) -> f64 {
        match kind {
            ActionKind::Pickup => self.pickup_s,
            ActionKind::Handoff => self.handoff_s,
            ActionKind::RotateLayer => self.rotate_s,
            ActionKind::Localize => self.localize_s,
        }
    }

    /// Total duration of a plan executed to the end.
    pub fn plan_duration(&self, plan: &[ManipAction]) -> f64 {
        plan.iter().map(|a| self.duration(a.kind())).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimResult {
    pub success: bool,
    /// Index into the plan of the action whose grasp failed.
    pub failed_at_action: Option<usize>,
    /// Sum of durations of the actions executed before any failure.
    pub elapsed_seconds: f64,
    /// Largest error magnitude reached during the trial (cm).
    pub peak_error_cm: f64,
}

/// Error state after an action, reported to a trace observer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Step {
    pub index: usize,
    pub kind: ActionKind,
    /// ‖e‖ after the action (or at the failed check).
    pub error_cm: f64,
    pub failed: bool,
}

pub fn simulate_trial(
    plan: &[ManipAction],
    model: &UncertaintyModel,
    timing: &TimingModel,
    seed: Seed,
) -> SimResult {
    simulate_trial_traced(plan, model, timing, seed, |_| {})
}

/// [`simulate_trial`] with a callback after every action.
pub fn simulate_trial_traced(
    plan: &[ManipAction],
    model: &UncertaintyModel,
    timing: &TimingModel,
    seed: Seed,
    mut observe: impl FnMut(&Step),
) -> SimResult {
    let mut rng = SplitMix64::new(seed.0);
    let mut err = [0.0f64; 2];
    let mut peak: f64 = 0.0;
    let mut elapsed = 0.0;
    let threshold = model.failure_threshold_cm();

    for (index, action) in plan.iter().enumerate() {
        let kind = action.kind();
        match kind {
            ActionKind::Pickup => {
                err = [0.0, 0.0];
                if model.initial_sigma_cm > 0.0 {
                    let (gx, gy) = rng.next_gaussian_pair();
                    err = [gx * model.initial_sigma_cm, gy * model.initial_sigma_cm];
                }
            }
            ActionKind::Localize => {
                let radius = model.localize_bound_cm * rng.next_f64();
                let theta = std::f64::consts::TAU * rng.next_f64();
                err = [radius * theta.cos(), radius * theta.sin()];
            }
            ActionKind::Handoff | ActionKind::RotateLayer => {
                let magnitude = norm(err);
                if magnitude > threshold {
                    observe(&Step {
                        index,
                        kind,
                        error_cm: magnitude,
                        failed: true,
                    });
                    return SimResult {
                        success: false,
                        failed_at_action: Some(index),
                        elapsed_seconds: elapsed,
                        peak_error_cm: peak,
                    };
                }
                let (gx, gy) = rng.next_gaussian_pair();
                err[0] += gx * model.sigma_step_cm;
                err[1] += gy * model.sigma_step_cm;
            }
        }
        elapsed += timing.duration(kind);
        let magnitude = norm(err);
        peak = peak.max(magnitude);
        observe(&Step {
            index,
            kind,
            error_cm: magnitude,
            failed: false,
        });
    }

    SimResult {
        success: true,
        failed_at_action: None,
        elapsed_seconds: elapsed,
        peak_error_cm: peak,
    }
}

fn norm(v: [f64; 2]) -> f64 {
    v[0].hypot(v[1])
}
