//! Regularity and a-invariants of 321-avoiding Kazhdan–Lusztig varieties and
//! two-sided mixed ladder determinantal varieties, computed diagrammatically.
//!
//! The pipeline for a pair `w <= v` of 321-avoiding permutations is
//!
//! ```text
//! D(v) --reading word--> D^NE(v,w) --compress--> D_top --zip--> D_zip --K-moves--> D_zip^K
//! ```
//!
//! and `#D_zip^K` is the degree of the unspecialized Grothendieck polynomial.
//! Regularity and a-invariant follow by subtracting `l(w)` and `l(v)`.
//!
//! ```
//! use klreg_core::{perm::Permutation, zip};
//!
//! let v = Permutation::new(vec![5, 8, 9, 10, 1, 2, 11, 3, 4, 6, 7]).unwrap();
//! let w = Permutation::new(vec![1, 4, 5, 8, 2, 3, 9, 6, 10, 11, 7]).unwrap();
//! let z = zip::zip(&v, &w).unwrap();
//! assert_eq!((z.regularity, z.a_invariant), (4, -10));
//! ```

pub mod error;
pub mod ideals;
pub mod ladder;
pub mod oracle;
pub mod perm;
pub mod pipes;
pub mod skew;
pub mod zip;

pub use error::{Error, Result};
