//! Exact computation in the bicategory of finite-dimensional algebras,
//! bimodules and intertwiners over the rationals.
//!
//! The crate is organised bottom-up:
//!
//! * [`scalar`] and [`mat`] — dense exact rational linear algebra
//!   (row reduction, kernels, cokernels, Kronecker products). Every result
//!   is exact; there is no floating point anywhere.
//! * [`algebra`] — finite-dimensional unital associative algebras presented
//!   by structure constants, semisimplicity detection via the trace form,
//!   and Wedderburn block certificates.
//! * [`bimodule`] — bimodules, intertwiners, hom spaces, the tensor product
//!   over an algebra, and the canonical module isomorphisms (braiding,
//!   adjunction, double dual, tensor-hom) as explicit matrices.
//! * [`bicategory`] — composition of 1- and 2-cells, associators, unitors,
//!   adjoints of 1-cells, Morita equivalence detection and dual objects.
//! * [`duality`] — the dualization pseudofunctor on the semisimple part,
//!   its coherence cells, the bidual comparison and its verification.
//! * [`kv`] — skeletal 2-vector spaces, the representation pseudofunctor
//!   and the comparison data making it compatible with dualization.
//! * [`corpus`], [`report`], [`suite`] — test-corpus generation, suite
//!   execution and machine-readable reports.
//!
//! All values are immutable after construction and all operations are pure,
//! so everything can be shared freely across threads.

pub mod algebra;
pub mod bicategory;
pub mod bimodule;
pub mod corpus;
pub mod duality;
pub mod error;
pub mod kv;
pub mod mat;
mod poly;
pub mod report;
pub mod scalar;
pub mod suite;

pub use algebra::{Algebra, CertBlock, SimpleModule, ValidationReport, WedderburnCertificate};
pub use bicategory::{AdjunctionData, DualObjectData, OneCell};
pub use bimodule::{Bimodule, HomSpace, Intertwiner, TensorProduct};
pub use corpus::{Corpus, CorpusSpec};
pub use error::Error;
pub use kv::{KVFunctor, KVNat, KVSpace, RepImage};
pub use mat::{Mat, Subspace};
pub use report::{CheckRecord, CheckStatus, Mutation, Report, SuiteReport};
pub use scalar::Scalar;
pub use suite::{SuiteCtx, SUITE_NAMES};

/// Crate version string recorded in reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
