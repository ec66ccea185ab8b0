//! Exact computations around rational normal scrolls, rational normal
//! curves through a frame, and binary curves.

pub mod binary;
pub mod families;
pub mod field;
pub mod form;
pub mod matrix;
pub mod report;
pub mod rnc;
pub mod sampling;
pub mod scroll_curves;
