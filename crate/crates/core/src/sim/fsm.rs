//! Regrasp planner: turns a move sequence into a bimanual action plan.
//!
//! One gripper (the holder) grasps the cube so that it constrains two of
//! the three layers along an axis, leaving the outer layer on one side free.
//! The other gripper rotates that free layer. To expose a different layer
//! the free gripper regrasps the cube (a handoff) and the roles swap.

use std::fmt;

use thiserror::Error;

use crate::cube::{Axis, Face, Move, MoveSequence, Turns};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Gripper {
    Left,
    Right,
}

impl Gripper {
    pub fn other(self) -> Gripper {
        match self {
            Gripper::Left => Gripper::Right,
            Gripper::Right => Gripper::Left,
        }
    }
}

/// Which end of an axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Plus,
    Minus,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Plus => "+",
            Side::Minus => "-",
        })
    }
}

/// Axis and side of a face's outer layer.
pub fn face_frame(face: Face) -> (Axis, Side) {
    match face {
        Face::U => (Axis::Y, Side::Plus),
        Face::D => (Axis::Y, Side::Minus),
        Face::R => (Axis::X, Side::Plus),
        Face::L => (Axis::X, Side::Minus),
        Face::F => (Axis::Z, Side::Plus),
        Face::B => (Axis::Z, Side::Minus),
    }
}

fn frame_face(axis: Axis, side: Side) -> Face {
    match (axis, side) {
        (Axis::Y, Side::Plus) => Face::U,
        (Axis::Y, Side::Minus) => Face::D,
        (Axis::X, Side::Plus) => Face::R,
        (Axis::X, Side::Minus) => Face::L,
        (Axis::Z, Side::Plus) => Face::F,
        (Axis::Z, Side::Minus) => Face::B,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GraspState {
    pub holder: Gripper,
    pub axis: Axis,
    /// The unconstrained layer is the outer layer on this side of `axis`.
    pub free_side: Side,
}

impl GraspState {
    /// The grasp right after pickup.
    pub const INITIAL: GraspState = GraspState {
        holder: Gripper::Left,
        axis: Axis::X,
        free_side: Side::Plus,
    };

    pub fn free_face(&self) -> Face {
        frame_face(self.axis, self.free_side)
    }
}

/// Whether the planner inserts a sensing step before each contact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    DeadReckoning,
    SensorAided,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::DeadReckoning => "dead_reckoning",
            Mode::SensorAided => "sensor_aided",
        }
    }

    pub fn from_name(s: &str) -> Option<Mode> {
        match s {
            "dead_reckoning" => Some(Mode::DeadReckoning),
            "sensor_aided" => Some(Mode::SensorAided),
            _ => None,
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ActionKind {
    Pickup,
    Handoff,
    RotateLayer,
    Localize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ManipAction {
    /// Lift the cube off the table into the initial grasp.
    Pickup { actor: Gripper },
    /// `actor` takes over as holder, freeing the layer at (axis, side).
    Handoff {
        actor: Gripper,
        axis: Axis,
        free_side: Side,
    },
    /// `actor` turns the free layer.
    RotateLayer { actor: Gripper, turns: Turns },
    /// Re-estimate the cube pose with `actor`'s sensors.
    Localize { actor: Gripper },
}

impl ManipAction {
    pub fn kind(&self) -> ActionKind {
        match self {
            ManipAction::Pickup { .. } => ActionKind::Pickup,
            ManipAction::Handoff { .. } => ActionKind::Handoff,
            ManipAction::RotateLayer { .. } => ActionKind::RotateLayer,
            ManipAction::Localize { .. } => ActionKind::Localize,
        }
    }

    pub fn actor(&self) -> Gripper {
        match *self {
            ManipAction::Pickup { actor }
            | ManipAction::Handoff { actor, .. }
            | ManipAction::RotateLayer { actor, .. }
            | ManipAction::Localize { actor } => actor,
        }
    }
}

struct Planner {
    mode: Mode,
    state: GraspState,
    plan: Vec<ManipAction>,
}

impl Planner {
    fn contact(&mut self, action: ManipAction) {
        if self.mode == Mode::SensorAided {
            self.plan.push(ManipAction::Localize {
                actor: action.actor(),
            });
        }
        self.plan.push(action);
    }

    fn handoff(&mut self, axis: Axis, free_side: Side) {
        let actor = self.state.holder.other();
        self.contact(ManipAction::Handoff {
            actor,
            axis,
            free_side,
        });
        self.state = GraspState {
            holder: actor,
            axis,
            free_side,
        };
    }
}

/// Compiles `seq` into an action plan starting with a pickup into
/// [`GraspState::INITIAL`].
pub fn compile_sequence(seq: &MoveSequence, mode: Mode) -> Vec<ManipAction> {
    compile_with_state(seq, mode).0
}

/// Like [`compile_sequence`], also returning the final grasp.
pub fn compile_with_state(seq: &MoveSequence, mode: Mode) -> (Vec<ManipAction>, GraspState) {
    let mut p = Planner {
        mode,
        state: GraspState::INITIAL,
        plan: Vec::with_capacity(seq.len() * if mode == Mode::SensorAided { 5 } else { 3 } + 1),
    };
    p.plan.push(ManipAction::Pickup {
        actor: GraspState::INITIAL.holder,
    });

    for m in seq {
        let (axis, side) = face_frame(m.face);
        if p.state.axis != axis {
            p.handoff(axis, side);
        } else if p.state.free_side != side {
            let detour = Axis::ALL
                .into_iter()
                .find(|&a| a != axis)
                .expect("three axes");
            p.handoff(detour, Side::Plus);
            p.handoff(axis, side);
        }
        p.contact(ManipAction::RotateLayer {
            actor: p.state.holder.other(),
            turns: m.turns,
        });
    }
    (p.plan, p.state)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlanError {
    #[error("plan does not start with a pickup")]
    MissingPickup,
    #[error("action {index}: pickup after the cube is already held")]
    RepeatedPickup { index: usize },
    #[error("action {index}: {actor:?} is holding the cube and cannot act")]
    HolderActs { index: usize, actor: Gripper },
}

/// Executes a plan symbolically and returns the layer turns it performs.
pub fn executed_rotations(plan: &[ManipAction]) -> Result<MoveSequence, PlanError> {
    let mut state = match plan.first() {
        Some(ManipAction::Pickup { actor }) => GraspState {
            holder: *actor,
            ..GraspState::INITIAL
        },
        _ => return Err(PlanError::MissingPickup),
    };
    let mut out = MoveSequence::new();
    for (index, action) in plan.iter().enumerate().skip(1) {
        match *action {
            ManipAction::Pickup { .. } => return Err(PlanError::RepeatedPickup { index }),
            ManipAction::Localize { .. } => {}
            ManipAction::Handoff {
                actor,
                axis,
                free_side,
            } => {
                if actor == state.holder {
                    return Err(PlanError::HolderActs { index, actor });
                }
                state = GraspState {
                    holder: actor,
                    axis,
                    free_side,
                };
            }
            ManipAction::RotateLayer { actor, turns } => {
                if actor == state.holder {
                    return Err(PlanError::HolderActs { index, actor });
                }
                out.push(Move::new(state.free_face(), turns));
            }
        }
    }
    Ok(out)
}
