//! Problem instances: organizations owning identical machines and sequential jobs.

use std::fmt;

use crate::error::{Error, Result};

/// Discrete time units. Processing times and completion times are integers;
/// instances are sized so that the total processing time fits in a `u64`.
pub type Time = u64;

/// One organization: how many identical machines it owns and the processing
/// times of its jobs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Organization {
    pub machine_count: usize,
    pub jobs: Vec<Time>,
}

/// The `job`-th job of the `org`-th organization. Both indices are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct JobRef {
    pub org: usize,
    pub job: usize,
}

impl JobRef {
    pub fn new(org: usize, job: usize) -> Self {
        JobRef { org, job }
    }
}

impl fmt::Display for JobRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "job {} of organization {}", self.job, self.org)
    }
}

/// A validated scheduling instance.
///
/// Machines are numbered globally 1..=m in organization order; machine
/// ownership never constrains assignments, only job ownership matters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    orgs: Vec<Organization>,
    machine_offsets: Vec<usize>,
    total_machines: usize,
    total_jobs: usize,
    total_load: Time,
    pmax: Time,
    nmax: usize,
    mmax: usize,
}

impl Instance {
    pub fn new(orgs: Vec<Organization>) -> Result<Self> {
        if orgs.is_empty() {
            return Err(Error::EmptyInstance);
        }
        let mut total_load: Time = 0;
        let mut pmax = 0;
        for (idx, org) in orgs.iter().enumerate() {
            if org.machine_count == 0 {
                return Err(Error::NoMachines { org: idx + 1 });
            }
            for (jdx, &p) in org.jobs.iter().enumerate() {
                if p == 0 {
                    return Err(Error::ZeroDuration {
                        job: JobRef::new(idx + 1, jdx + 1),
                    });
                }
                total_load = total_load.checked_add(p).ok_or(Error::LoadOverflow)?;
                pmax = pmax.max(p);
            }
        }
        let mut machine_offsets = Vec::with_capacity(orgs.len());
        let mut total_machines = 0;
        for org in &orgs {
            machine_offsets.push(total_machines);
            total_machines += org.machine_count;
        }
        let total_jobs = orgs.iter().map(|o| o.jobs.len()).sum();
        let nmax = orgs.iter().map(|o| o.jobs.len()).max().unwrap_or(0);
        let mmax = orgs.iter().map(|o| o.machine_count).max().unwrap_or(0);
        Ok(Instance {
            orgs,
            machine_offsets,
            total_machines,
            total_jobs,
            total_load,
            pmax,
            nmax,
            mmax,
        })
    }

    pub fn organizations(&self) -> &[Organization] {
        &self.orgs
    }

    /// Number of organizations (k).
    pub fn org_count(&self) -> usize {
        self.orgs.len()
    }

    /// The organization with 1-based index `org`.
    pub fn org(&self, org: usize) -> &Organization {
        &self.orgs[org - 1]
    }

    /// Total number of machines (m).
    pub fn machine_count(&self) -> usize {
        self.total_machines
    }

    /// Total number of jobs (n).
    pub fn job_count(&self) -> usize {
        self.total_jobs
    }

    /// Sum of all processing times.
    pub fn total_load(&self) -> Time {
        self.total_load
    }

    /// Largest processing time over all jobs, 0 if there are none.
    pub fn pmax(&self) -> Time {
        self.pmax
    }

    /// Largest number of jobs owned by a single organization.
    pub fn nmax(&self) -> usize {
        self.nmax
    }

    /// Largest number of machines owned by a single organization.
    pub fn mmax(&self) -> usize {
        self.mmax
    }

    pub fn contains(&self, job: JobRef) -> bool {
        job.org >= 1
            && job.org <= self.orgs.len()
            && job.job >= 1
            && job.job <= self.orgs[job.org - 1].jobs.len()
    }

    /// Processing time of `job`. Panics if the reference is out of bounds.
    pub fn duration(&self, job: JobRef) -> Time {
        self.orgs[job.org - 1].jobs[job.job - 1]
    }

    /// Global index of the first machine owned by `org` (1-based).
    pub fn first_machine(&self, org: usize) -> usize {
        self.machine_offsets[org - 1] + 1
    }

    /// All job references, in (organization, job) order.
    pub fn jobs(&self) -> impl Iterator<Item = JobRef> + '_ {
        self.orgs.iter().enumerate().flat_map(|(i, org)| {
            (1..=org.jobs.len()).map(move |j| JobRef::new(i + 1, j))
        })
    }

    /// Job references of one organization.
    pub fn org_jobs(&self, org: usize) -> impl Iterator<Item = JobRef> + '_ {
        (1..=self.orgs[org - 1].jobs.len()).map(move |j| JobRef::new(org, j))
    }
}
