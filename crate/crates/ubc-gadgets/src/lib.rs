//! Reduction instances from planar 3-SAT to connectivity with uncertain points.
//!
//! A [`FormulaLayout`] places variables and clauses on a grid; [`build`] replaces every
//! node and edge by a gadget made of vertical unit pairs, unit segments or unit squares and
//! tags each region with its role. [`assignment_to_selection`] turns a truth assignment into
//! the selection that is connected at `alpha_star` whenever the assignment satisfies the
//! formula.

pub mod audit;
pub mod bundled;
pub mod compile;
pub mod error;
pub mod formula;
pub mod layout;
mod pairs;
mod squares;

pub use audit::{clause_gate_report, forward_check, geometry_audit, random_selection_smoke};
pub use bundled::{bundled, bundled_layouts, BundledLayout, BUNDLED_NAMES};
pub use compile::{
    assignment_to_selection, build, build_pair_instance, build_segment_instance, build_square_instance, Family,
    GadgetInstance, RoleTag, RoleTagFile,
};
pub use error::{GadgetError, Result};
pub use formula::Formula;
pub use layout::{EdgeKind, EdgePlacement, FormulaLayout, NodePlacement, EXTENT_FACTOR};

/// Lower-point offsets and blue orientation of one variable block of `family`.
pub fn variable_block(family: Family) -> &'static [(i32, i32, bool)] {
    match family {
        Family::Pairs | Family::Segments => &pairs::BLOCK,
        Family::Squares => &squares::BLOCK,
    }
}
