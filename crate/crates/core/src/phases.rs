//! Grouping of organizations into phases by equal optimal local makespan.
//!
//! Every job inherits a deadline from its organization's phase; phases are
//! ordered by strictly increasing deadline.

use std::collections::BTreeMap;

use crate::instance::{Instance, JobRef, Time};
use crate::local::LocalOptima;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Phase {
    /// Deadline t_b: the common optimal local makespan of the members.
    pub deadline: Time,
    /// Member organizations, 1-based, ascending.
    pub orgs: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhasePartition {
    phases: Vec<Phase>,
    org_phase: Vec<usize>,
}

impl PhasePartition {
    pub fn count(&self) -> usize {
        self.phases.len()
    }

    pub fn phases(&self) -> &[Phase] {
        &self.phases
    }

    /// Deadline of the 0-based phase `b`.
    pub fn deadline(&self, b: usize) -> Time {
        self.phases[b].deadline
    }

    /// 0-based phase index of an organization (1-based).
    pub fn phase_of_org(&self, org: usize) -> usize {
        self.org_phase[org - 1]
    }

    /// 0-based phase index of a job.
    pub fn phase_of(&self, job: JobRef) -> usize {
        self.org_phase[job.org - 1]
    }
}

/// Groups organizations with equal optimal local makespan into phases,
/// ordered by deadline.
pub fn compute_phases(instance: &Instance, local: &LocalOptima) -> PhasePartition {
    let mut groups: BTreeMap<Time, Vec<usize>> = BTreeMap::new();
    for org in 1..=instance.org_count() {
        groups.entry(local.makespan(org)).or_default().push(org);
    }
    let mut phases = Vec::with_capacity(groups.len());
    let mut org_phase = vec![0; instance.org_count()];
    for (b, (deadline, orgs)) in groups.into_iter().enumerate() {
        for &org in &orgs {
            org_phase[org - 1] = b;
        }
        phases.push(Phase { deadline, orgs });
    }
    PhasePartition { phases, org_phase }
}

/// Collapses all phases whose deadline is at least `target` into one final
/// pseudo-phase with deadline `target`: a schedule of makespan `target`
/// satisfies those organizations regardless of their actual local optimum.
pub fn merge_phases_for_target(partition: &PhasePartition, target: Time) -> PhasePartition {
    let mut phases: Vec<Phase> = Vec::new();
    let mut merged: Vec<usize> = Vec::new();
    for phase in partition.phases() {
        if phase.deadline < target {
            phases.push(phase.clone());
        } else {
            merged.extend(phase.orgs.iter().copied());
        }
    }
    if !merged.is_empty() {
        merged.sort_unstable();
        phases.push(Phase {
            deadline: target,
            orgs: merged,
        });
    }
    let mut org_phase = vec![0; partition.org_phase.len()];
    for (b, phase) in phases.iter().enumerate() {
        for &org in &phase.orgs {
            org_phase[org - 1] = b;
        }
    }
    PhasePartition { phases, org_phase }
}
