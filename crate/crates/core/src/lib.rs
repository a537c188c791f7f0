pub mod action;
pub mod corpus;
pub mod duality;
pub mod graph;
pub mod instances;
pub mod inverse;
pub mod iso;
pub mod quotient;
pub mod semidirect;
pub mod table;
