pub mod diagrams;
pub mod filters;
pub mod harness;
pub mod hyperbolic;
pub mod trajectory;
pub mod uw;
