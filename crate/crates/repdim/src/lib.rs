//! Computations with finite-dimensional basic algebras and their modules:
//! torsionless and divisible inventories, global dimensions of endomorphism
//! algebras, tiered layerings and lower bounds from Ext-nonvanishing.

pub mod algebra;
pub mod endgldim;
pub mod approx;
pub mod cert;
pub mod exactlin;
pub mod fixtures;
pub mod io;
pub mod modcat;
pub mod odim;
pub mod pipeline;
pub mod tiered;
pub mod torsfin;
