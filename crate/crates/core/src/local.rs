//! Optimal local schedules: the best an organization can do on its own
//! machines, for both objectives.

use std::collections::BTreeMap;

use crate::instance::{Instance, JobRef, Time};
use crate::schedule::{ObjectiveKind, Schedule};

/// Optimal local makespan and optimal local sum of completion times, per
/// organization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalOptima {
    values: Vec<(Time, Time)>,
}

impl LocalOptima {
    /// Optimal local makespan of the 1-based organization `org`.
    pub fn makespan(&self, org: usize) -> Time {
        self.values[org - 1].0
    }

    /// Optimal local sum of completion times of `org`.
    pub fn sum_completion(&self, org: usize) -> Time {
        self.values[org - 1].1
    }

    pub fn bound(&self, org: usize, kind: ObjectiveKind) -> Time {
        match kind {
            ObjectiveKind::Makespan => self.makespan(org),
            ObjectiveKind::SumCompletion => self.sum_completion(org),
        }
    }

    pub fn max_makespan(&self) -> Time {
        self.values.iter().map(|v| v.0).max().unwrap_or(0)
    }
}

/// Longest-processing-time list scheduling; returns (makespan, machine per
/// job). Used both as an upper bound and as a certificate of optimality when
/// it meets the trivial lower bound.
fn lpt_assignment(machines: usize, durations: &[Time]) -> (Time, Vec<usize>) {
    let mut order: Vec<usize> = (0..durations.len()).collect();
    order.sort_by_key(|&i| (std::cmp::Reverse(durations[i]), i));
    let mut loads = vec![0u64; machines];
    let mut assignment = vec![0usize; durations.len()];
    for &i in &order {
        let d = (0..machines).min_by_key(|&d| (loads[d], d)).unwrap();
        loads[d] += durations[i];
        assignment[i] = d;
    }
    (loads.iter().copied().max().unwrap_or(0), assignment)
}

fn makespan_lower_bound(machines: usize, durations: &[Time]) -> Time {
    let total: Time = durations.iter().sum();
    let pmax = durations.iter().copied().max().unwrap_or(0);
    pmax.max(total.div_ceil(machines as Time))
}

/// Exact minimum-makespan assignment by dynamic programming over reachable
/// machine-load vectors. Load vectors are kept as sorted multisets since the
/// machines are identical; each reachable state stores one predecessor for
/// schedule reconstruction.
fn makespan_dp_assignment(machines: usize, durations: &[Time]) -> (Time, Vec<usize>) {
    struct State {
        loads: Vec<Time>,
        pred: usize,
        placed_load: Time,
    }

    // Placing long jobs first collapses symmetric states sooner.
    let mut order: Vec<usize> = (0..durations.len()).collect();
    order.sort_by_key(|&i| (std::cmp::Reverse(durations[i]), i));

    let mut levels: Vec<Vec<State>> = Vec::with_capacity(durations.len() + 1);
    levels.push(vec![State {
        loads: vec![0; machines],
        pred: usize::MAX,
        placed_load: 0,
    }]);
    for step in 0..order.len() {
        let p = durations[order[step]];
        let mut next: Vec<State> = Vec::new();
        let mut seen: BTreeMap<Vec<Time>, ()> = BTreeMap::new();
        for (idx, state) in levels[step].iter().enumerate() {
            let mut prev_load = None;
            for &z in &state.loads {
                if prev_load == Some(z) {
                    continue;
                }
                prev_load = Some(z);
                let mut loads = state.loads.clone();
                let pos = loads.iter().position(|&l| l == z).unwrap();
                loads[pos] = z + p;
                loads.sort_unstable();
                if seen.insert(loads.clone(), ()).is_none() {
                    next.push(State {
                        loads,
                        pred: idx,
                        placed_load: z,
                    });
                }
            }
        }
        levels.push(next);
    }

    let last = levels.last().unwrap();
    let best = last
        .iter()
        .enumerate()
        .min_by(|(_, a), (_, b)| {
            let ma = a.loads.last().unwrap();
            let mb = b.loads.last().unwrap();
            ma.cmp(mb).then_with(|| a.loads.cmp(&b.loads))
        })
        .map(|(i, _)| i)
        .unwrap();
    let value = *last[best].loads.last().unwrap();

    // Walk the predecessor chain, then replay forward on concrete machines,
    // always picking the lowest machine whose load matches the recorded one.
    let mut placed = vec![0 as Time; order.len()];
    let mut idx = best;
    for step in (0..order.len()).rev() {
        let state = &levels[step + 1][idx];
        placed[step] = state.placed_load;
        idx = state.pred;
    }
    let mut loads = vec![0u64; machines];
    let mut assignment = vec![0usize; durations.len()];
    for (step, &job) in order.iter().enumerate() {
        let d = (0..machines).find(|&d| loads[d] == placed[step]).unwrap();
        loads[d] += durations[job];
        assignment[job] = d;
    }
    (value, assignment)
}

/// Minimum-makespan assignment of `durations` to `machines` identical
/// machines (machine indices 0-based).
fn min_makespan_assignment(machines: usize, durations: &[Time]) -> (Time, Vec<usize>) {
    assert!(machines >= 1);
    if durations.is_empty() {
        return (0, Vec::new());
    }
    if machines == 1 {
        return (durations.iter().sum(), vec![0; durations.len()]);
    }
    if machines >= durations.len() {
        let value = durations.iter().copied().max().unwrap();
        return (value, (0..durations.len()).collect());
    }
    let lb = makespan_lower_bound(machines, durations);
    let (lpt_value, lpt) = lpt_assignment(machines, durations);
    if lpt_value == lb {
        return (lpt_value, lpt);
    }
    makespan_dp_assignment(machines, durations)
}

/// SPT list assignment: jobs sorted by non-decreasing duration (ties by
/// index) and placed greedily on the least-loaded machine (ties by index).
/// Returns (sum of completion times, per-job (machine, completion)).
fn spt_assignment(machines: usize, durations: &[Time]) -> (Time, Vec<(usize, Time)>) {
    assert!(machines >= 1);
    let mut order: Vec<usize> = (0..durations.len()).collect();
    order.sort_by_key(|&i| (durations[i], i));
    let mut loads = vec![0u64; machines];
    let mut placements = vec![(0usize, 0 as Time); durations.len()];
    let mut sum: Time = 0;
    for &i in &order {
        let d = (0..machines).min_by_key(|&d| (loads[d], d)).unwrap();
        loads[d] += durations[i];
        placements[i] = (d, loads[d]);
        sum += loads[d];
    }
    (sum, placements)
}

/// Minimum makespan any local schedule of these jobs can achieve, together
/// with a left-justified schedule attaining it (organization index 1,
/// machines 1..=machine_count).
pub fn opt_local_makespan(machine_count: usize, jobs: &[Time]) -> (Time, Schedule) {
    let (value, assignment) = min_makespan_assignment(machine_count, jobs);
    let mut loads = vec![0u64; machine_count];
    let mut schedule = Schedule::new();
    for (i, &d) in assignment.iter().enumerate() {
        loads[d] += jobs[i];
        schedule.set(JobRef::new(1, i + 1), d + 1, loads[d]);
    }
    (value, schedule)
}

/// The SPT schedule of these jobs, which minimizes the local sum of
/// completion times (organization index 1, machines 1..=machine_count).
pub fn spt_schedule(machine_count: usize, jobs: &[Time]) -> Schedule {
    let (_, placements) = spt_assignment(machine_count, jobs);
    let mut schedule = Schedule::new();
    for (i, &(machine, completion)) in placements.iter().enumerate() {
        schedule.set(JobRef::new(1, i + 1), machine + 1, completion);
    }
    schedule
}

/// Optimal local makespan and sum of completion times for every
/// organization.
pub fn compute_local_optima(instance: &Instance) -> LocalOptima {
    let values = instance
        .organizations()
        .iter()
        .map(|org| {
            let (makespan, _) = min_makespan_assignment(org.machine_count, &org.jobs);
            let (sumc, _) = spt_assignment(org.machine_count, &org.jobs);
            (makespan, sumc)
        })
        .collect();
    LocalOptima { values }
}

/// Combines each organization's optimal local schedule (for `kind`) on its
/// own machines into one global schedule. Always feasible and individually
/// rational; the standard fallback and search incumbent.
pub fn local_union_schedule(instance: &Instance, kind: ObjectiveKind) -> Schedule {
    let mut schedule = Schedule::new();
    for (idx, org) in instance.organizations().iter().enumerate() {
        let base = instance.first_machine(idx + 1) - 1;
        match kind {
            ObjectiveKind::Makespan => {
                let (_, assignment) = min_makespan_assignment(org.machine_count, &org.jobs);
                let mut loads = vec![0u64; org.machine_count];
                for (i, &d) in assignment.iter().enumerate() {
                    loads[d] += org.jobs[i];
                    schedule.set(JobRef::new(idx + 1, i + 1), base + d + 1, loads[d]);
                }
            }
            ObjectiveKind::SumCompletion => {
                let (_, placements) = spt_assignment(org.machine_count, &org.jobs);
                for (i, &(machine, completion)) in placements.iter().enumerate() {
                    schedule.set(JobRef::new(idx + 1, i + 1), base + machine + 1, completion);
                }
            }
        }
    }
    schedule
}
