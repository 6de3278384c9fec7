pub mod classify;
pub mod cli;
pub mod cohomology;
pub mod cones;
pub mod git;
pub mod hypersurface;
pub mod polyalg;
