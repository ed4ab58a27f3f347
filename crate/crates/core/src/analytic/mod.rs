//! Closed-form interaction-picture propagators and the transforms back to the lab frame.

mod frame;
mod free;
mod linear;

pub use frame::{lab_frame_restore, lab_frame_to_interaction};
pub use free::{
    apply_free_propagator, evolve_free_with_phase, free_derivative_elements, free_propagator_elements,
    free_segment_elements,
};
pub use linear::{
    linear_blocks, linear_propagator_elements, linear_row_solution, LinearBlocks, LinearPropagator, KAPPA_MIN,
};
