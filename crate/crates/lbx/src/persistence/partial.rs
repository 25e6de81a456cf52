//! Partial persistence: record a linear update history once, then answer
//! queries against any timestamp.
//!
//! Recording replays the updates in order, diverting every write into a
//! per-address log of `(timestamp, value)` entries (timestamps are 1-based
//! update indices; several writes to one address inside one update keep
//! only the last). A query at time `tau` runs the machine's query
//! procedure against a view where reading an address finds the last logged
//! value at or before `tau`, or 0 if the address had never been written.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::persistence::machine::{CellMachine, MemRead, MemWrite};

type WriteLog = BTreeMap<u64, Vec<(u64, u64)>>;

/// Write recorder used during [`record_partial`]. Reads see the current
/// state (the newest entry of the log).
struct RecordingMemory<'a> {
    log: &'a mut WriteLog,
    now: u64,
}

impl MemRead for RecordingMemory<'_> {
    fn read(&self, addr: u64) -> u64 {
        self.log
            .get(&addr)
            .and_then(|entries| entries.last())
            .map(|&(_, v)| v)
            .unwrap_or(0)
    }
}

impl MemWrite for RecordingMemory<'_> {
    fn write(&mut self, addr: u64, value: u64) {
        let entries = self.log.entry(addr).or_default();
        match entries.last_mut() {
            Some(last) if last.0 == self.now => last.1 = value,
            _ => entries.push((self.now, value)),
        }
    }
}

/// Timestamp view used by queries: predecessor search on each address log.
struct TimeView<'a> {
    log: &'a WriteLog,
    tau: u64,
}

impl MemRead for TimeView<'_> {
    fn read(&self, addr: u64) -> u64 {
        let Some(entries) = self.log.get(&addr) else { return 0 };
        // Largest timestamp <= tau; entries are sorted by construction.
        let pos = entries.partition_point(|&(ts, _)| ts <= self.tau);
        if pos == 0 {
            0
        } else {
            entries[pos - 1].1
        }
    }
}

/// A recorded update history, queryable at any timestamp.
#[derive(Debug, Clone)]
pub struct PartialStore<M: CellMachine> {
    machine: M,
    update_count: u64,
    log: WriteLog,
}

/// Replay `updates` through `machine`, logging all writes.
pub fn record_partial<M: CellMachine>(
    machine: M,
    updates: &[M::Update],
) -> Result<PartialStore<M>> {
    let mut log = WriteLog::new();
    for (i, u) in updates.iter().enumerate() {
        let mut mem = RecordingMemory { log: &mut log, now: i as u64 + 1 };
        machine.apply_update(&mut mem, u)?;
    }
    Ok(PartialStore { machine, update_count: updates.len() as u64, log })
}

impl<M: CellMachine> PartialStore<M> {
    /// Number of recorded updates (`m`).
    pub fn update_count(&self) -> u64 {
        self.update_count
    }

    /// Total logged `(timestamp, value)` entries across all addresses.
    pub fn logged_writes(&self) -> usize {
        self.log.values().map(Vec::len).sum()
    }

    /// Answer `q` as of timestamp `tau`. `tau = 0` is the initial state;
    /// `tau = m` is the final state; anything above `m` is rejected.
    pub fn query(&self, q: &M::Query, tau: u64) -> Result<M::Answer> {
        if tau > self.update_count {
            return Err(Error::range(format!(
                "timestamp {tau} out of range for {} updates",
                self.update_count
            )));
        }
        let view = TimeView { log: &self.log, tau };
        self.machine.answer_query(&view, q)
    }
}
