//! Structural machinery bounding `|A + 2·A|`.
//!
//! A set is partitioned into blocks `B`, each with a certified bound on
//! `|A + 2·B|`, and the union bound combines them. Each block comes from the
//! main-lemma dichotomy: either a refined greedy cover gives savings in the
//! basic covering bound, or a uniform residual is converted into a small
//! covering via the technical lemma.

mod basic;
mod main_lemma;
mod partition;
mod refined;
mod technical;
mod tensor;

pub use basic::basic_bound;
pub use main_lemma::{main_lemma, Branch, MainOutcome, MainReport};
pub use partition::{auto_m, theorem1_partition, write_trace_sets, PartitionBlock, PartitionTrace};
pub use refined::{
    case_iii_certificates, refined_greedy, CaseIiiCertificate, RefinedCase, RefinedResult, StepCase, StepRecord,
};
pub use technical::{technical, TechnicalOutcome, TechnicalReport};
pub use tensor::{tensor_identities, tensor_power, TensorIdentities};
