//! Exact sl(2) frames, Jacobi last multipliers, Maurer–Cartan one-forms and
//! vector potentials for three-dimensional flows `ẋ = v(x)`, with a
//! floating-point oracle that cross-checks every symbolic identity.

pub mod algebra;
pub mod calculus;
pub mod cli;
pub mod mcframe;
pub mod numeric;
pub mod parser;
pub mod systems;
