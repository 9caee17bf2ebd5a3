//! Integer matrix numeration systems `(M, D)` with unipotent base `M`:
//! evaluation of digit words, completeness certificates and their
//! verification, residue and cone obstructions, explicit digit sets for
//! Jordan blocks and matrices similar to them, and the zero-word language
//! over `J₂`.

pub mod cli;
pub mod error;
pub mod j2;
pub mod lattice;
pub mod linalg;
pub mod numeration;
pub mod obstructions;
pub mod search;
pub mod threedigit;
pub mod zero_lang;

pub use error::{Error, Result};
pub use linalg::{hnf_decompose, jordan_block, Int, IntMatrix, IntVector};
pub use numeration::{shortest_representation, Certificate, NumberSystem, PivotWitness, Representer, Verdict, Word};
pub use obstructions::Obstruction;
