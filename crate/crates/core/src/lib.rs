//! Cycle types of injective maps on ℕ, numerical monoids and normal submonoid descriptors.
//!
//! ```
//! use injclass::concrete::{split_witness, DressedMap};
//! use injclass::cycletype::CycleType;
//!
//! let t: CycleType = "ct(open=0,fwd=1,default=0,2:1)".parse().unwrap();
//! let f = DressedMap::canonical(&t).unwrap();
//! let h = split_witness(&f, 3).unwrap();
//! assert_eq!(f.then_perm(&h).exact_type(), t.split_cycle(3).unwrap());
//! ```

pub mod cli;
pub mod concrete;
pub mod cycletype;
pub mod harness;
pub mod numonoid;
pub mod parse;
pub mod submonoid;
