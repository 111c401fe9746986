//! Token systems, media and mediatic graphs.
//!
//! A medium is a token system in which any two states are joined by a
//! concise message and every return is vacuous. Its adjacency graph is
//! mediatic, and every mediatic graph induces a medium; [`convert`] moves
//! between the two.

pub mod convert;
pub mod dot;
pub mod error;
pub mod families;
pub mod fixtures;
pub mod graph;
pub mod io;
pub mod iso;
pub mod limits;
pub mod medium;
pub mod token;

pub use convert::{adjacency_graph, concise_message, graph_to_medium, medium_to_graph};
pub use error::{Error, Result};
pub use families::{enumerate_family, family_to_medium, is_wellgraded, Kind, Relation, RelationFamily};
pub use graph::{Arc, Circuit, Graph, LikePartition, MediaticReport};
pub use iso::{find_graph_iso, lift_to_media_iso, media_isomorphic, GraphIso, MediaIso};
pub use limits::Limits;
pub use medium::{check_axioms_bounded, check_medium, state_content, Content, Medium, MediumReport};
pub use token::{Message, MessageStats, StateId, TokenId, TokenSpec, TokenSystem};
