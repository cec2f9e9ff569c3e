//! Finite partially ordered spaces and their directed homotopy theory.
//!
//! The carrier of every construction here is a [`FinPoSpace`]: a finite set
//! of labeled points with a direction partial order and a topology preorder
//! (the specialization preorder of a finite space). On top of that the crate
//! provides:
//!
//! * the binary limits and colimits of the category, including the explicit
//!   staged coequalizer quotient ([`limits`]),
//! * cylinders, path objects and their adjunction ([`cylinder`]),
//! * relative dihomotopy decision procedures ([`homotopy`]),
//! * lifting problems, difibration and dicofibration certification, the
//!   mapping path and mapping cylinder factorizations ([`lifting`],
//!   [`factorization`]) and an auditor for the fibration, cofibration, and
//!   closed model category axioms on small catalogs ([`audit`]),
//! * a PV program frontend that compiles semaphore programs to grid state
//!   spaces and classifies execution schedules up to flip equivalence
//!   ([`pv`]).
//!
//! Everything is deterministic and pure; searches report whether their
//! answer is exact or only valid up to the explored bound.

pub mod audit;
pub mod catalog;
pub mod cylinder;
pub mod doc;
pub mod factorization;
pub mod homotopy;
pub mod interval;
pub mod lifting;
pub mod limits;
pub mod pospace;
pub mod pv;
pub mod relation;

pub use pospace::{DiMap, FinPoSpace, UnderDiMap, UnderPoSpace};
