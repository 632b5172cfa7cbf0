//! Classification engine for singular fibres of projective Lagrangian fibrations
//! over codimension-one points of the base.
//!
//! The pipeline: exact monodromy gates ([`intmat`]) decide between the smooth
//! branch and the first-order branch; the branch classifiers ([`degeneration`])
//! turn combinatorial germ data into one of the 23 fibre-type records; the
//! canonical bundle formula ([`canbundle`]) attaches exact rational coefficients
//! and the Cartier multiple. [`kodaira`], [`dualgraph`] and [`mhs`] supply the
//! supporting calculus (fibre graphs, cycle symmetries, Hodge dimension counts).

pub mod canbundle;
pub mod degeneration;
pub mod dualgraph;
pub mod examples;
pub mod germfile;
pub mod intmat;
pub mod kodaira;
pub mod mhs;
