//! Box censuses, classification, exponent fits, generated corpora and
//! invariant suites.

pub mod catalog;
pub mod classify;
pub mod corpus;
pub mod count;
pub mod field_checks;
pub mod fit;
pub mod lemmas;
pub mod report;

pub use catalog::{ActionCatalog, ActionEntry, PointSpec};
pub use classify::{classify, field_fingerprint, Classification, Classifier, FieldFingerprint, NON_SEPARABLE, OTHER, REDUCIBLE};
pub use corpus::{corpus_entry, generate_corpus, CorpusEntry};
pub use count::{census, CensusOptions, CensusRecord};
pub use fit::{exponent_fit, ExponentFit};
pub use lemmas::{mu_oracle, verify_lemmas, LemmaReport, Suite, VerifyParams};
pub use report::{records_from_csv, records_to_csv, records_to_json, CSV_HEADER};
