pub mod dimension;
pub mod cli;
pub mod draw;
pub mod error;
pub mod exposed;
pub mod generators;
pub mod graph;
pub mod io;
pub mod planar;
pub mod poset;
pub mod reductions;
pub mod verify;

pub use error::{Error, Result};
pub use poset::{concat_extensions, ElemSet, LinearExtension, Poset, SubposetView};
