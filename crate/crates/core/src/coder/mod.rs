//! Code construction: the generalized Huffman engine, Shannon-type codes and
//! canonical bit assignment.

mod canonical;
mod engine;
mod rule;
mod shannon;
mod two_queue;

pub use canonical::canonical_codewords;
pub use engine::{generalized_huffman, optimal_code, CodeResult, MergeEvent, MergeTrace};
pub use rule::CombineRule;
pub use shannon::{j_shannon_code, shannon_code, unary_code};
pub use two_queue::two_queue_mmpr;
