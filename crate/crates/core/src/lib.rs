pub mod algebra;
pub mod combinat;
pub mod invariants;
pub mod qtorus;
pub mod scattering;
