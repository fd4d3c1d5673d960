//! Shearlet dilation groups, their coordinates and the orbit map.

mod coords;
mod spec;

pub use coords::{ExactCoords, FloatCoords, GroupElementCoords, ShearMatrixForm};
pub use spec::{
    make_standard_group, make_toeplitz_group, shift_matrix, validate_spec, Check, GroupKind,
    ShearletGroup, ShearletGroupSpec, ValidationReport, CHECK_CANONICAL, CHECK_CLOSURE,
    CHECK_COMMUTATIVE, CHECK_FILTRATION, CHECK_NORMALIZATION, CHECK_SCALING, CHECK_SHAPE,
};
