//! Matchgate circuits on arbitrary interaction graphs.
//!
//! Matchgates restricted to nearest neighbours on a path or a cycle can be
//! simulated classically in polynomial time ([`jw`]). On any other connected
//! graph they are universal: [`compiler`] turns a logical circuit into
//! matchgates on the graph, using a dense state-vector oracle ([`oracle`])
//! as the reference for correctness.

pub mod compiler;
pub mod families;
pub mod formats;
pub mod graph;
pub mod jw;
pub mod linalg;
pub mod matchgate;
pub mod oracle;
pub mod random;

pub use graph::{classify, Graph, GraphClass, GraphError};
pub use matchgate::{GateError, Matchgate, PhysicalCircuit, Unitary2};
pub use oracle::{Encoding, ProductState};
