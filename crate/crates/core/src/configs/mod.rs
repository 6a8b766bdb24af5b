//! The catalogue of closed forms and the harness that checks it.

pub mod cache;
pub mod report;
pub mod table;
pub mod verify;

pub use cache::{cached_alpha, scheme_hash, AlphaCache, CACHE_ENV};
pub use report::{reproduce_table, reproduce_table_with, TableOptions, TableReport};
pub use table::{classify, closed_form_of, mu_d, table_rows, ClosedForm, RowKind, TableRow};
pub use verify::{
    verify_type, verify_type_with, Check, Status, VerificationOutcome, VerifyOptions,
};
