//! The twenty benchmark functions and the random shift-rotation transform.

mod functions;
mod transform;

pub use functions::{evaluate, error_from_optimum, FunctionId, Modality, ObjectiveSpec};
pub use transform::{
    evaluate_transformed, make_shift_rotate, orthonormalize, Instance, ShiftRotate,
    MAX_ROTATION_ATTEMPTS,
};
