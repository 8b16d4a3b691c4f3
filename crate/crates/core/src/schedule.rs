//! Schedules, feasibility, objectives, individual rationality, and the two
//! normalization passes (compaction and phase ordering).

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::instance::{Instance, JobRef, Time};
use crate::phases::PhasePartition;

/// Machine assignment and completion time of one job. Machines are global
/// 1-based indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Placement {
    pub machine: usize,
    pub completion: Time,
}

/// A total assignment of jobs to (machine, completion time) pairs.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Schedule {
    map: BTreeMap<JobRef, Placement>,
}

/// Which objective a solver or a rationality check works with.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ObjectiveKind {
    Makespan,
    SumCompletion,
}

impl Schedule {
    pub fn new() -> Self {
        Schedule::default()
    }

    pub fn set(&mut self, job: JobRef, machine: usize, completion: Time) {
        self.map.insert(job, Placement { machine, completion });
    }

    pub fn placement(&self, job: JobRef) -> Option<Placement> {
        self.map.get(&job).copied()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (JobRef, Placement)> + '_ {
        self.map.iter().map(|(j, p)| (*j, *p))
    }

    /// Builds a left-justified schedule from per-machine job sequences;
    /// `sequences[d]` holds the jobs of machine `d + 1` in processing order.
    pub fn from_sequences(instance: &Instance, sequences: &[Vec<JobRef>]) -> Result<Schedule> {
        let mut schedule = Schedule::new();
        for (d, seq) in sequences.iter().enumerate() {
            let mut load: Time = 0;
            for &job in seq {
                if !instance.contains(job) {
                    return Err(Error::UnknownJob { job });
                }
                load += instance.duration(job);
                schedule.set(job, d + 1, load);
            }
        }
        Ok(schedule)
    }

    /// Per-machine job lists ordered by start time. Fails on unknown jobs or
    /// out-of-range machine indices.
    pub fn machine_sequences(&self, instance: &Instance) -> Result<Vec<Vec<JobRef>>> {
        let m = instance.machine_count();
        let mut seqs: Vec<Vec<(Time, Time, JobRef)>> = vec![Vec::new(); m];
        for (job, placement) in self.iter() {
            if !instance.contains(job) {
                return Err(Error::UnknownJob { job });
            }
            if placement.machine == 0 || placement.machine > m {
                return Err(Error::MachineOutOfRange {
                    job,
                    machine: placement.machine,
                    machines: m,
                });
            }
            let start = placement.completion.saturating_sub(instance.duration(job));
            seqs[placement.machine - 1].push((start, placement.completion, job));
        }
        Ok(seqs
            .into_iter()
            .map(|mut v| {
                v.sort();
                v.into_iter().map(|(_, _, job)| job).collect()
            })
            .collect())
    }
}

/// Checks that the schedule is total on the instance's jobs and returns
/// whether it is feasible: every completion covers the processing time and no
/// two jobs on one machine violate the pairwise separation
/// `|C(a) - C(b)| >= min(p(a), p(b))`.
///
/// Structural problems (missing job, unknown job, machine out of range) are
/// errors, distinct from an infeasible but well-formed schedule.
pub fn check_feasible(instance: &Instance, schedule: &Schedule) -> Result<bool> {
    for (job, _) in schedule.iter() {
        if !instance.contains(job) {
            return Err(Error::UnknownJob { job });
        }
    }
    let m = instance.machine_count();
    let mut per_machine: Vec<Vec<(Time, Time)>> = vec![Vec::new(); m];
    for job in instance.jobs() {
        let placement = schedule
            .placement(job)
            .ok_or(Error::MissingJob { job })?;
        if placement.machine == 0 || placement.machine > m {
            return Err(Error::MachineOutOfRange {
                job,
                machine: placement.machine,
                machines: m,
            });
        }
        let p = instance.duration(job);
        if placement.completion < p {
            return Ok(false);
        }
        per_machine[placement.machine - 1].push((placement.completion, p));
    }
    for jobs in &per_machine {
        for (i, &(c_a, p_a)) in jobs.iter().enumerate() {
            for &(c_b, p_b) in &jobs[i + 1..] {
                let gap = c_a.abs_diff(c_b);
                if gap < p_a.min(p_b) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Makespan or sum of completion times of `jobs` under `schedule`. The
/// makespan of an empty set is 0.
pub fn objective_value<I>(schedule: &Schedule, jobs: I, kind: ObjectiveKind) -> Result<Time>
where
    I: IntoIterator<Item = JobRef>,
{
    let mut max: Time = 0;
    let mut sum: Time = 0;
    for job in jobs {
        let placement = schedule.placement(job).ok_or(Error::MissingJob { job })?;
        max = max.max(placement.completion);
        sum = sum.saturating_add(placement.completion);
    }
    Ok(match kind {
        ObjectiveKind::Makespan => max,
        ObjectiveKind::SumCompletion => sum,
    })
}

/// True iff no organization does worse under `schedule` than its optimal
/// local value for the given objective.
pub fn is_individually_rational(
    instance: &Instance,
    schedule: &Schedule,
    kind: ObjectiveKind,
    local: &crate::local::LocalOptima,
) -> Result<bool> {
    for org in 1..=instance.org_count() {
        let value = objective_value(schedule, instance.org_jobs(org), kind)?;
        if value > local.bound(org, kind) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Removes all idle time: every job starts at its predecessor's completion,
/// the first job of each machine at 0. Per-machine order is preserved, so no
/// completion time increases and feasibility and individual rationality carry
/// over. Idempotent.
pub fn left_justify(instance: &Instance, schedule: &Schedule) -> Result<Schedule> {
    let sequences = schedule.machine_sequences(instance)?;
    Schedule::from_sequences(instance, &sequences)
}

/// Reorders each machine so that jobs appear in non-decreasing phase order,
/// by exhaustively exchanging adjacent out-of-order pairs. Each exchange
/// keeps the pair inside its original time window, so feasibility is
/// preserved, the makespan never increases, and individual rationality for
/// the makespan objective carries over.
pub fn well_order(
    instance: &Instance,
    schedule: &Schedule,
    phases: &PhasePartition,
) -> Result<Schedule> {
    if !check_feasible(instance, schedule)? {
        return Err(Error::NotFeasible);
    }
    let sequences = schedule.machine_sequences(instance)?;
    let mut result = Schedule::new();
    for (d, seq) in sequences.iter().enumerate() {
        let mut items: Vec<(JobRef, Time)> = seq
            .iter()
            .map(|&job| (job, schedule.placement(job).unwrap().completion))
            .collect();
        loop {
            let mut swapped = false;
            for i in 0..items.len().saturating_sub(1) {
                let (a, c_a) = items[i];
                let (b, c_b) = items[i + 1];
                if phases.phase_of(a) > phases.phase_of(b) {
                    // b slides to a's old start, a completes at b's old end.
                    let start_a = c_a - instance.duration(a);
                    items[i] = (b, start_a + instance.duration(b));
                    items[i + 1] = (a, c_b);
                    swapped = true;
                }
            }
            if !swapped {
                break;
            }
        }
        for (job, completion) in items {
            result.set(job, d + 1, completion);
        }
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::Organization;
    use crate::local::compute_local_optima;
    use crate::phases::compute_phases;

    fn example_instance() -> Instance {
        Instance::new(vec![
            Organization {
                machine_count: 2,
                jobs: vec![3, 3, 3],
            },
            Organization {
                machine_count: 1,
                jobs: vec![1, 1, 1, 1, 1, 1],
            },
        ])
        .unwrap()
    }

    /// The per-organization local schedules: org 1 on machines 1-2 with
    /// completions 3, 3, 6; org 2 on machine 3 completing 1..=6.
    fn local_union() -> Schedule {
        let mut s = Schedule::new();
        s.set(JobRef::new(1, 1), 1, 3);
        s.set(JobRef::new(1, 2), 2, 3);
        s.set(JobRef::new(1, 3), 1, 6);
        for j in 1..=6 {
            s.set(JobRef::new(2, j), 3, j as Time);
        }
        s
    }

    /// Two unit jobs then one 3-job per machine; makespan 5, sum 24.
    fn shared_schedule() -> Schedule {
        let mut s = Schedule::new();
        for d in 0..3usize {
            s.set(JobRef::new(2, 2 * d + 1), d + 1, 1);
            s.set(JobRef::new(2, 2 * d + 2), d + 1, 2);
            s.set(JobRef::new(1, d + 1), d + 1, 5);
        }
        s
    }

    #[test]
    fn local_schedules_are_feasible() {
        let inst = example_instance();
        assert!(check_feasible(&inst, &local_union()).unwrap());
    }

    #[test]
    fn completion_must_cover_duration() {
        let inst = Instance::new(vec![Organization {
            machine_count: 1,
            jobs: vec![5],
        }])
        .unwrap();
        let mut s = Schedule::new();
        s.set(JobRef::new(1, 1), 1, 5);
        assert!(check_feasible(&inst, &s).unwrap());
        s.set(JobRef::new(1, 1), 1, 4);
        assert!(!check_feasible(&inst, &s).unwrap());
    }

    #[test]
    fn overlapping_pair_is_infeasible() {
        let inst = Instance::new(vec![Organization {
            machine_count: 1,
            jobs: vec![2, 3],
        }])
        .unwrap();
        let mut s = Schedule::new();
        s.set(JobRef::new(1, 1), 1, 3);
        s.set(JobRef::new(1, 2), 1, 3);
        assert!(!check_feasible(&inst, &s).unwrap());
    }

    #[test]
    fn malformed_schedules_are_errors_not_infeasible() {
        let inst = example_instance();
        let mut s = local_union();
        s.set(JobRef::new(1, 1), 7, 3);
        assert!(matches!(
            check_feasible(&inst, &s),
            Err(Error::MachineOutOfRange { machine: 7, .. })
        ));
        let mut missing = local_union();
        missing.map.remove(&JobRef::new(2, 6));
        assert!(matches!(
            check_feasible(&inst, &missing),
            Err(Error::MissingJob { .. })
        ));
        let mut unknown = local_union();
        unknown.set(JobRef::new(3, 1), 1, 1);
        assert!(matches!(
            check_feasible(&inst, &unknown),
            Err(Error::UnknownJob { .. })
        ));
    }

    #[test]
    fn objective_values_on_the_running_example() {
        let inst = example_instance();
        let all: Vec<_> = inst.jobs().collect();
        assert_eq!(
            objective_value(&local_union(), all.iter().copied(), ObjectiveKind::Makespan).unwrap(),
            6
        );
        assert_eq!(
            objective_value(&local_union(), [], ObjectiveKind::Makespan).unwrap(),
            0
        );
        assert_eq!(
            objective_value(
                &shared_schedule(),
                all.iter().copied(),
                ObjectiveKind::SumCompletion
            )
            .unwrap(),
            24
        );
    }

    #[test]
    fn rationality_of_the_shared_schedule() {
        let inst = example_instance();
        let local = compute_local_optima(&inst);
        let shared = shared_schedule();
        assert!(
            is_individually_rational(&inst, &shared, ObjectiveKind::Makespan, &local).unwrap()
        );
        assert!(!is_individually_rational(
            &inst,
            &shared,
            ObjectiveKind::SumCompletion,
            &local
        )
        .unwrap());
        let union = local_union();
        assert!(is_individually_rational(&inst, &union, ObjectiveKind::Makespan, &local).unwrap());
        assert!(is_individually_rational(
            &inst,
            &union,
            ObjectiveKind::SumCompletion,
            &local
        )
        .unwrap());
    }

    #[test]
    fn left_justify_compacts_and_is_idempotent() {
        let inst = Instance::new(vec![Organization {
            machine_count: 1,
            jobs: vec![2, 3],
        }])
        .unwrap();
        let mut s = Schedule::new();
        s.set(JobRef::new(1, 1), 1, 4);
        s.set(JobRef::new(1, 2), 1, 9);
        let compact = left_justify(&inst, &s).unwrap();
        assert_eq!(compact.placement(JobRef::new(1, 1)).unwrap().completion, 2);
        assert_eq!(compact.placement(JobRef::new(1, 2)).unwrap().completion, 5);
        assert_eq!(left_justify(&inst, &compact).unwrap(), compact);
    }

    #[test]
    fn left_justify_single_job() {
        let inst = Instance::new(vec![Organization {
            machine_count: 1,
            jobs: vec![2],
        }])
        .unwrap();
        let mut s = Schedule::new();
        s.set(JobRef::new(1, 1), 1, 7);
        let compact = left_justify(&inst, &s).unwrap();
        assert_eq!(compact.placement(JobRef::new(1, 1)).unwrap().completion, 2);
    }

    #[test]
    fn well_order_fixes_a_single_inversion() {
        // Two organizations with different local makespans; one machine
        // carries a phase-2 job before a phase-1 job.
        let inst = Instance::new(vec![
            Organization {
                machine_count: 1,
                jobs: vec![2],
            },
            Organization {
                machine_count: 1,
                jobs: vec![2, 2],
            },
        ])
        .unwrap();
        let local = compute_local_optima(&inst);
        let phases = compute_phases(&inst, &local);
        assert_eq!(phases.count(), 2);
        let mut s = Schedule::new();
        s.set(JobRef::new(2, 1), 1, 2); // phase 2 first
        s.set(JobRef::new(1, 1), 1, 4); // then phase 1
        s.set(JobRef::new(2, 2), 2, 2);
        let ordered = well_order(&inst, &s, &phases).unwrap();
        assert_eq!(ordered.placement(JobRef::new(1, 1)).unwrap().completion, 2);
        assert_eq!(ordered.placement(JobRef::new(2, 1)).unwrap().completion, 4);
        assert!(check_feasible(&inst, &ordered).unwrap());
        assert!(
            is_individually_rational(&inst, &ordered, ObjectiveKind::Makespan, &local).unwrap()
        );
    }

    #[test]
    fn well_order_is_identity_on_ordered_schedules() {
        let inst = example_instance();
        let local = compute_local_optima(&inst);
        let phases = compute_phases(&inst, &local);
        let s = shared_schedule();
        assert_eq!(well_order(&inst, &s, &phases).unwrap(), s);
    }

    #[test]
    fn well_order_rejects_infeasible_input() {
        let inst = example_instance();
        let local = compute_local_optima(&inst);
        let phases = compute_phases(&inst, &local);
        let mut s = shared_schedule();
        s.set(JobRef::new(1, 1), 1, 1);
        assert!(matches!(
            well_order(&inst, &s, &phases),
            Err(Error::NotFeasible)
        ));
    }
}
