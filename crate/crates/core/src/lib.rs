//! Exact computations with monomial ideals: arithmetic, Hilbert functions,
//! graded Betti numbers, Tor maps and homological invariants.

pub mod caps;
pub mod error;
pub mod grammar;
pub mod hilbert;
pub mod ideal;
pub mod invariants;
pub mod koszul;
pub mod linalg;
pub mod monomial;
pub mod ring;
pub mod simplicial;

pub use caps::Caps;
pub use error::{Error, Result};
pub use grammar::{parse_monomial, parse_ring, Definitions};
pub use ideal::{fiber_product, MonomialIdeal};
pub use invariants::{invariants_of, Invariants};
pub use monomial::{Monomial, Multidegree};
pub use ring::{Field, Ring};
pub use simplicial::{betti_table, BettiTable};
