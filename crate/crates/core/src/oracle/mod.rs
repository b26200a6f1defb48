//! Exhaustive search for tiny instances: arrowing decisions, exact small
//! Ramsey numbers, colouring certificates and knowledge-base audits.

mod certificate;
mod search;
mod small;

pub use certificate::{check_coloring, is_good_coloring, ColoringCertificate, Verdict};
pub use search::{arrows, ArrowResult, ArrowStatus, SearchOptions, DEFAULT_BUDGET};
pub use small::{
    audit, ramsey_small, trivial_lower_bound, AuditEntry, AuditKind, AuditReport, SmallRamsey,
    AUDIT_VALUE_CAP,
};
