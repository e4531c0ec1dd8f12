//! Rule-out criteria for space-filling tetrahedra whose dihedral angles are
//! rational multiples of π.
//!
//! A tetrahedron is given by its six dihedral angles in the edge order
//! `(12, 34, 13, 24, 14, 23)`. [`criteria::analyze`] runs the three tests
//! (non-face-to-face, face-to-face and the linear-programming certificate)
//! and returns a [`criteria::Verdict`]. Every "does not tile" answer rests on
//! exact rational arithmetic or rigorous interval enclosures.

pub mod angles;
pub mod catalog;
pub mod cli;
pub mod combos;
pub mod criteria;
pub mod families;
pub mod lp;
pub mod realnum;
pub mod tetgeom;
