use thiserror::Error;

use crate::instance::JobRef;
use crate::oracle::OptResult;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("instance has no organizations")]
    EmptyInstance,
    #[error("organization {org} owns no machine")]
    NoMachines { org: usize },
    #[error("{job} has zero processing time")]
    ZeroDuration { job: JobRef },
    #[error("total processing time does not fit in 64 bits")]
    LoadOverflow,

    #[error("schedule is missing {job}")]
    MissingJob { job: JobRef },
    #[error("schedule references unknown {job}")]
    UnknownJob { job: JobRef },
    #[error("{job} is assigned to machine {machine}, but the instance has {machines} machines")]
    MachineOutOfRange {
        job: JobRef,
        machine: usize,
        machines: usize,
    },
    #[error("schedule is not feasible")]
    NotFeasible,

    /// Search ran out of nodes. The best incumbent found so far, if any, is
    /// attached; it must never be mistaken for a proven optimum.
    #[error("node budget of {budget} exhausted")]
    BudgetExceeded {
        budget: u64,
        explored: u64,
        incumbent: Option<Box<OptResult>>,
    },
    #[error("state cap of {cap} exceeded")]
    StateCapExceeded { cap: usize },
    #[error("resource cap exceeded while {context}")]
    ResourceExceeded { context: &'static str },
    #[error("arithmetic overflow while {context}")]
    Overflow { context: &'static str },

    #[error("3-partition instance needs a positive multiple of three integers, got {count}")]
    BadIntegerCount { count: usize },
    #[error("3-partition integers sum to {actual}, expected q*B = {expected}")]
    TripletSumMismatch { actual: u64, expected: u64 },
    #[error("3-partition instance is not restricted: {value} must lie strictly between {triplet_sum}/4 and {triplet_sum}/2")]
    NotRestricted { value: u64, triplet_sum: u64 },
    #[error("bin-packing integer {value} exceeds the capacity {capacity}")]
    ItemExceedsCapacity { value: u64, capacity: u64 },
    #[error("bin-packing instance needs at least one integer and one bin")]
    EmptyBinPacking,
    #[error("gadget source lists must be non-empty and of equal length ({left} vs {right})")]
    MismatchedSourceLists { left: usize, right: usize },
}
