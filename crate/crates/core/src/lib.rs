//! Dellac configurations, their symplectic variant, the tableau family
//! `Tab_n` and surjective pistols: enumeration, statistics, and the maps
//! between tableaux and pistols.

pub mod bridge;
pub mod enumerate;
pub mod error;
pub mod fiber;
pub mod golden;
pub mod insertion;
pub mod labeling;
pub mod objects;
pub mod render;
pub mod rows;
pub mod sequences;
pub mod tpath;
pub mod verify;

pub use error::{Error, Result, ValidationError};
pub use objects::{
    DellacConfig, Object, StatVector, SurjectivePistol, SymplecticConfig, Tableau, MAX_N,
};
pub use rows::rho;
