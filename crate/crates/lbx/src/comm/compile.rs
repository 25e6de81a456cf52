//! Cell-probe memories and the probe-to-communication compilers.
//!
//! A query algorithm over a memory of `S` cells of `w` bits is modeled as
//! a stateless strategy ([`ProbeQuery`]): given the values read so far it
//! either asks for another cell or stops with a boolean answer. Such an
//! algorithm compiles into a two-party conversation where Alice (who runs
//! the algorithm but does not hold the memory) sends cell addresses and
//! Bob (who holds the memory) sends cell contents:
//!
//! * [`compile_single_query`]: per probe, Alice sends the address in
//!   `⌈lg S⌉` bits and Bob replies with the `w`-bit content — after `t`
//!   probes the transcript holds exactly `t·⌈lg S⌉` Alice bits and `t·w`
//!   Bob bits.
//! * [`compile_parallel_queries`]: `k` algorithms advance in lock-step
//!   rounds. Each round Alice sends one `k`-subset of addresses — the
//!   distinct proposals, padded with the smallest unused addresses — as a
//!   combination rank in `⌈lg C(S,k)⌉` bits, and Bob replies with the `k`
//!   contents in address order (`k·w` bits). When algorithms collide on an
//!   address, the subset alone no longer says which reply slot belongs to
//!   whom, so the compiler also produces a per-round assignment map
//!   (`k·⌈lg k⌉` bits per round); that overhead is tallied separately in
//!   [`ParallelAccounting`] and never counted into the transcript.

use std::collections::BTreeSet;

use crate::butterfly::{ButterflyShape, Subgraph};
use crate::combinatorics::{
    binomial, bits_for_range, from_bits_be, rank_combination, to_bits_be, unrank_combination,
};
use crate::error::{Error, Result};
use crate::lsd::transcript::{Party, Transcript};
use crate::problems::strings::BitStr;

/// A memory of fixed-width cells, the object both compilers talk about.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellMemory {
    word_bits: u32,
    cells: Vec<u64>,
}

impl CellMemory {
    /// An all-zero memory of `size` cells of `word_bits` bits each.
    pub fn new(size: usize, word_bits: u32) -> Result<Self> {
        if size == 0 {
            return Err(Error::param("memory needs at least one cell".to_string()));
        }
        if word_bits == 0 || word_bits > 64 {
            return Err(Error::param(format!(
                "word width must be in 1..=64, got {word_bits}"
            )));
        }
        Ok(CellMemory { word_bits, cells: vec![0; size] })
    }

    pub fn size(&self) -> usize {
        self.cells.len()
    }

    pub fn word_bits(&self) -> u32 {
        self.word_bits
    }

    fn check_value(&self, value: u64) -> Result<()> {
        if self.word_bits < 64 && value >> self.word_bits != 0 {
            return Err(Error::range(format!(
                "value {value} does not fit in {} bits",
                self.word_bits
            )));
        }
        Ok(())
    }

    pub fn read(&self, addr: usize) -> Result<u64> {
        self.cells
            .get(addr)
            .copied()
            .ok_or_else(|| Error::range(format!("address {addr} outside 0..{}", self.cells.len())))
    }

    pub fn write(&mut self, addr: usize, value: u64) -> Result<()> {
        self.check_value(value)?;
        let size = self.cells.len();
        let cell = self
            .cells
            .get_mut(addr)
            .ok_or_else(|| Error::range(format!("address {addr} outside 0..{size}")))?;
        *cell = value;
        Ok(())
    }

    /// Snapshot format: a "size word_bits" header line, then one
    /// lowercase-hex word per line.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.cells.len(), self.word_bits);
        for &cell in &self.cells {
            out.push_str(&format!("{cell:x}\n"));
        }
        out
    }

    /// Parse a snapshot produced by [`Self::to_text`].
    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::parse("empty memory snapshot".to_string()))?;
        let mut parts = header.split_whitespace();
        let size: usize = parts
            .next()
            .and_then(|p| p.parse().ok())
            .ok_or_else(|| Error::parse(format!("bad snapshot header {header:?}")))?;
        let word_bits: u32 = parts
            .next()
            .and_then(|p| p.parse().ok())
            .ok_or_else(|| Error::parse(format!("bad snapshot header {header:?}")))?;
        if parts.next().is_some() {
            return Err(Error::parse(format!("trailing tokens in header {header:?}")));
        }
        let mut mem = CellMemory::new(size, word_bits)?;
        let mut count = 0usize;
        for line in lines {
            let value = u64::from_str_radix(line.trim(), 16)
                .map_err(|e| Error::parse(format!("bad hex word {line:?}: {e}")))?;
            if count >= size {
                return Err(Error::parse(format!("more than {size} words in snapshot")));
            }
            mem.write(count, value)?;
            count += 1;
        }
        if count != size {
            return Err(Error::parse(format!("snapshot has {count} of {size} words")));
        }
        Ok(mem)
    }
}

/// One move of a query algorithm.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QueryStep {
    /// Read this cell next.
    Probe(usize),
    /// Stop with this answer.
    Done(bool),
}

/// A stateless cell-probe query strategy: the values read so far fully
/// determine the next move.
pub trait ProbeQuery {
    fn next(&self, reads: &[u64]) -> QueryStep;
}

/// Run a query directly against the memory. Returns the answer and the
/// probed addresses in order; errs after `max_probes` probes.
pub fn run_direct(
    mem: &CellMemory,
    query: &dyn ProbeQuery,
    max_probes: usize,
) -> Result<(bool, Vec<usize>)> {
    let mut reads = Vec::new();
    let mut probes = Vec::new();
    loop {
        match query.next(&reads) {
            QueryStep::Done(answer) => return Ok((answer, probes)),
            QueryStep::Probe(addr) => {
                if probes.len() >= max_probes {
                    return Err(Error::op(format!("query exceeded {max_probes} probes")));
                }
                reads.push(mem.read(addr)?);
                probes.push(addr);
            }
        }
    }
}

/// The result of compiling one query.
#[derive(Debug, Clone)]
pub struct CompiledQuery {
    pub transcript: Transcript,
    pub answer: bool,
    pub probes: Vec<usize>,
}

/// Compile one query into an address/content conversation.
pub fn compile_single_query(
    mem: &CellMemory,
    query: &dyn ProbeQuery,
    max_probes: usize,
) -> Result<CompiledQuery> {
    let addr_width = bits_for_range(mem.size() as u128);
    let mut transcript = Transcript::new();
    let mut reads = Vec::new();
    let mut probes = Vec::new();
    loop {
        match query.next(&reads) {
            QueryStep::Done(answer) => {
                return Ok(CompiledQuery { transcript, answer, probes })
            }
            QueryStep::Probe(addr) => {
                if probes.len() >= max_probes {
                    return Err(Error::op(format!("query exceeded {max_probes} probes")));
                }
                let value = mem.read(addr)?;
                transcript.push(
                    Party::Alice,
                    BitStr::from_bits(to_bits_be(addr as u128, addr_width)?),
                );
                transcript.push(
                    Party::Bob,
                    BitStr::from_bits(to_bits_be(value as u128, mem.word_bits())?),
                );
                reads.push(value);
                probes.push(addr);
            }
        }
    }
}

/// Decode a single-query transcript back into `(address, value)` probes.
pub fn decode_single(
    transcript: &Transcript,
    size: usize,
    word_bits: u32,
) -> Result<Vec<(usize, u64)>> {
    let addr_width = bits_for_range(size as u128) as usize;
    let messages = transcript.messages();
    if messages.len() % 2 != 0 {
        return Err(Error::parse("transcript does not pair up".to_string()));
    }
    let mut out = Vec::new();
    for pair in messages.chunks(2) {
        let (alice, bob) = (&pair[0], &pair[1]);
        if alice.party != Party::Alice || bob.party != Party::Bob {
            return Err(Error::parse("transcript parties out of order".to_string()));
        }
        if alice.bits.len() != addr_width || bob.bits.len() != word_bits as usize {
            return Err(Error::parse("message width mismatch".to_string()));
        }
        let addr = from_bits_be(alice.bits.bits())? as usize;
        if addr >= size {
            return Err(Error::range(format!("decoded address {addr} outside 0..{size}")));
        }
        out.push((addr, from_bits_be(bob.bits.bits())? as u64));
    }
    Ok(out)
}

/// Per-batch collision bookkeeping for the parallel compiler.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParallelAccounting {
    /// Rounds played (the lock-step time bound `t`).
    pub rounds: usize,
    /// `assignments[round][slot]` is the position, within that round's
    /// sorted address subset, holding the value for query `slot`. Queries
    /// that were already done hold position 0 by convention.
    pub assignments: Vec<Vec<usize>>,
    /// Cost of shipping the assignment maps: `rounds · k · ⌈lg k⌉` bits,
    /// kept out of the transcript tallies.
    pub assignment_bits: u64,
}

/// The result of compiling a batch of queries in lock-step.
#[derive(Debug, Clone)]
pub struct CompiledBatch {
    pub transcript: Transcript,
    pub answers: Vec<bool>,
    pub accounting: ParallelAccounting,
}

/// Compile `k` queries in lock-step rounds against one memory.
///
/// Requires `k <= S` (each round names `k` distinct cells). Queries that
/// finish early stop proposing; their slots are padded.
pub fn compile_parallel_queries(
    mem: &CellMemory,
    queries: &[&dyn ProbeQuery],
    max_rounds: usize,
) -> Result<CompiledBatch> {
    let k = queries.len();
    if k > mem.size() {
        return Err(Error::param(format!(
            "{k} parallel queries need {k} distinct cells, memory has {}",
            mem.size()
        )));
    }
    let rank_width = if k == 0 {
        0
    } else {
        bits_for_range(binomial(mem.size() as u64, k as u64)?)
    };

    let mut reads: Vec<Vec<u64>> = vec![Vec::new(); k];
    let mut answers: Vec<Option<bool>> = vec![None; k];
    let mut transcript = Transcript::new();
    let mut assignments: Vec<Vec<usize>> = Vec::new();

    loop {
        // Advance every live query one step.
        let mut proposals: Vec<Option<usize>> = vec![None; k];
        let mut any_live = false;
        for (i, query) in queries.iter().enumerate() {
            if answers[i].is_some() {
                continue;
            }
            match query.next(&reads[i]) {
                QueryStep::Done(answer) => answers[i] = Some(answer),
                QueryStep::Probe(addr) => {
                    if addr >= mem.size() {
                        return Err(Error::range(format!(
                            "address {addr} outside 0..{}",
                            mem.size()
                        )));
                    }
                    proposals[i] = Some(addr);
                    any_live = true;
                }
            }
        }
        if !any_live {
            break;
        }
        if assignments.len() >= max_rounds {
            return Err(Error::op(format!("batch exceeded {max_rounds} rounds")));
        }

        // The round's subset: distinct proposals padded with the smallest
        // unused addresses.
        let mut subset: BTreeSet<usize> = proposals.iter().flatten().copied().collect();
        let mut pad = 0usize;
        while subset.len() < k {
            subset.insert(pad);
            pad += 1;
        }
        let comb: Vec<usize> = subset.into_iter().collect();

        let comb64: Vec<u64> = comb.iter().map(|&a| a as u64).collect();
        let rank = rank_combination(mem.size() as u64, &comb64)?;
        transcript.push(Party::Alice, BitStr::from_bits(to_bits_be(rank, rank_width)?));

        let values: Vec<u64> = comb.iter().map(|&a| mem.read(a)).collect::<Result<_>>()?;
        let mut reply = Vec::with_capacity(k * mem.word_bits() as usize);
        for &value in &values {
            reply.extend(to_bits_be(value as u128, mem.word_bits())?);
        }
        transcript.push(Party::Bob, BitStr::from_bits(reply));

        let mut assignment = vec![0usize; k];
        for (i, proposal) in proposals.iter().enumerate() {
            if let Some(addr) = proposal {
                let pos = comb.binary_search(addr).expect("proposal is in the subset");
                assignment[i] = pos;
                reads[i].push(values[pos]);
            }
        }
        assignments.push(assignment);
    }

    let answers = answers.into_iter().map(|a| a.expect("loop ran to completion")).collect();
    let assignment_bits =
        assignments.len() as u64 * k as u64 * if k == 0 { 0 } else { bits_for_range(k as u128) as u64 };
    Ok(CompiledBatch {
        transcript,
        answers,
        accounting: ParallelAccounting {
            rounds: assignments.len(),
            assignments,
            assignment_bits,
        },
    })
}

/// Decode a parallel transcript back into per-round `(addresses, values)`.
pub fn decode_parallel(
    transcript: &Transcript,
    size: usize,
    word_bits: u32,
    k: usize,
) -> Result<Vec<(Vec<usize>, Vec<u64>)>> {
    if k == 0 || k > size {
        return Err(Error::param(format!("k = {k} outside 1..={size}")));
    }
    let rank_width = bits_for_range(binomial(size as u64, k as u64)?) as usize;
    let messages = transcript.messages();
    if messages.len() % 2 != 0 {
        return Err(Error::parse("transcript does not pair up".to_string()));
    }
    let mut out = Vec::new();
    for pair in messages.chunks(2) {
        let (alice, bob) = (&pair[0], &pair[1]);
        if alice.party != Party::Alice || bob.party != Party::Bob {
            return Err(Error::parse("transcript parties out of order".to_string()));
        }
        if alice.bits.len() != rank_width || bob.bits.len() != k * word_bits as usize {
            return Err(Error::parse("message width mismatch".to_string()));
        }
        let rank = from_bits_be(alice.bits.bits())?;
        let comb = unrank_combination(size as u64, k as u64, rank)?;
        let mut values = Vec::with_capacity(k);
        for chunk in bob.bits.bits().chunks(word_bits as usize) {
            values.push(from_bits_be(chunk)? as u64);
        }
        out.push((comb.into_iter().map(|a| a as usize).collect(), values));
    }
    Ok(out)
}

/// A fixed probe script answering with the parity of everything it read.
/// Handy as a deterministic stand-in for arbitrary query algorithms.
#[derive(Debug, Clone)]
pub struct ScriptedQuery {
    addrs: Vec<usize>,
}

impl ScriptedQuery {
    pub fn new(addrs: Vec<usize>) -> Self {
        ScriptedQuery { addrs }
    }
}

impl ProbeQuery for ScriptedQuery {
    fn next(&self, reads: &[u64]) -> QueryStep {
        if reads.len() < self.addrs.len() {
            QueryStep::Probe(self.addrs[reads.len()])
        } else {
            QueryStep::Done(reads.iter().fold(0, |acc, v| acc ^ v) & 1 == 1)
        }
    }
}

/// An adaptive pointer-chase: starts at a fixed address, then each value
/// read names the next address (mod the memory size). Exercises the data
/// dependence of probe sequences on replies.
#[derive(Debug, Clone)]
pub struct ChainedQuery {
    start: usize,
    hops: usize,
    size: usize,
}

impl ChainedQuery {
    pub fn new(start: usize, hops: usize, size: usize) -> Self {
        ChainedQuery { start, hops, size }
    }
}

impl ProbeQuery for ChainedQuery {
    fn next(&self, reads: &[u64]) -> QueryStep {
        if self.hops == 0 || reads.len() >= self.hops {
            QueryStep::Done(reads.last().map_or(false, |&v| v & 1 == 1))
        } else if reads.is_empty() {
            QueryStep::Probe(self.start)
        } else {
            QueryStep::Probe((*reads.last().expect("nonempty") as usize) % self.size)
        }
    }
}

/// Lay a butterfly subgraph out as a bit-packed edge-presence memory:
/// edge `e` occupies bit `edge_index(e) mod w` of cell `edge_index(e) / w`.
pub fn reachability_memory(sub: &Subgraph, word_bits: u32) -> Result<CellMemory> {
    let shape = sub.shape();
    let total = shape.edge_count();
    let size = usize::try_from(total.div_ceil(word_bits as u64))
        .map_err(|_| Error::overflow("edge bitmap exceeds addressable memory".to_string()))?;
    let mut mem = CellMemory::new(size, word_bits)?;
    for edge in shape.edges() {
        if sub.has_edge(&edge) {
            let idx = shape.edge_index(&edge)?;
            let cell = (idx / word_bits as u64) as usize;
            let bit = (idx % word_bits as u64) as u32;
            mem.write(cell, mem.read(cell)? | 1 << bit)?;
        }
    }
    Ok(mem)
}

/// The butterfly reachability query over a [`reachability_memory`] layout:
/// probes the `d` cells holding its unique path's edge bits, stopping
/// early at the first missing edge.
#[derive(Debug, Clone)]
pub struct ReachProbeQuery {
    /// `(cell, bit)` per level of the path.
    plan: Vec<(usize, u32)>,
}

impl ReachProbeQuery {
    pub fn new(
        shape: &ButterflyShape,
        word_bits: u32,
        source: &[u32],
        sink: &[u32],
    ) -> Result<Self> {
        let plan = shape
            .path_edges(source, sink)?
            .iter()
            .map(|edge| {
                let idx = shape.edge_index(edge)?;
                Ok(((idx / word_bits as u64) as usize, (idx % word_bits as u64) as u32))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ReachProbeQuery { plan })
    }
}

impl ProbeQuery for ReachProbeQuery {
    fn next(&self, reads: &[u64]) -> QueryStep {
        for (value, &(_, bit)) in reads.iter().zip(&self.plan) {
            if value >> bit & 1 == 0 {
                return QueryStep::Done(false);
            }
        }
        if reads.len() >= self.plan.len() {
            QueryStep::Done(true)
        } else {
            QueryStep::Probe(self.plan[reads.len()].0)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn filled(size: usize, word_bits: u32, seed: u64) -> CellMemory {
        let mut mem = CellMemory::new(size, word_bits).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mask = if word_bits == 64 { u64::MAX } else { (1u64 << word_bits) - 1 };
        for addr in 0..size {
            mem.write(addr, rng.gen::<u64>() & mask).unwrap();
        }
        mem
    }

    #[test]
    fn memory_validation_and_snapshot() {
        assert!(CellMemory::new(0, 4).is_err());
        assert!(CellMemory::new(4, 0).is_err());
        assert!(CellMemory::new(4, 65).is_err());
        let mut mem = CellMemory::new(3, 4).unwrap();
        mem.write(0, 15).unwrap();
        mem.write(2, 9).unwrap();
        assert!(mem.write(1, 16).is_err());
        assert!(mem.write(3, 0).is_err());
        assert!(mem.read(3).is_err());
        assert_eq!(mem.to_text(), "3 4\nf\n0\n9\n");
        assert_eq!(CellMemory::from_text(&mem.to_text()).unwrap(), mem);
        assert!(CellMemory::from_text("3 4\nf\n0\n").is_err());
        assert!(CellMemory::from_text("3 4\nf\n0\n9\n1\n").is_err());
        assert!(CellMemory::from_text("3 4\nf\n0\n10\n").is_err());
    }

    #[test]
    fn zero_probe_query_compiles_to_nothing() {
        let mem = filled(8, 4, 1);
        let q = ScriptedQuery::new(vec![]);
        let compiled = compile_single_query(&mem, &q, 10).unwrap();
        assert!(compiled.transcript.is_empty());
        assert!(!compiled.answer);
        assert!(compiled.probes.is_empty());
    }

    #[test]
    fn single_budget_is_exact() {
        // 8 cells of 4 bits, 2 probes: 2·3 address bits, 2·4 content bits.
        let mem = filled(8, 4, 2);
        let q = ScriptedQuery::new(vec![5, 1]);
        let compiled = compile_single_query(&mem, &q, 10).unwrap();
        assert_eq!(compiled.transcript.alice_bits(), 6);
        assert_eq!(compiled.transcript.bob_bits(), 8);
        let (answer, probes) = run_direct(&mem, &q, 10).unwrap();
        assert_eq!(compiled.answer, answer);
        assert_eq!(compiled.probes, probes);
        // The transcript replays into the same probes and values.
        let decoded = decode_single(&compiled.transcript, 8, 4).unwrap();
        assert_eq!(decoded.len(), 2);
        for (addr, value) in decoded {
            assert_eq!(mem.read(addr).unwrap(), value);
        }
    }

    #[test]
    fn parallel_budget_beats_repeated_single() {
        // One round of 2 probes over 8 cells: ⌈lg C(8,2)⌉ = 5 < 2·⌈lg 8⌉.
        let mem = filled(8, 4, 3);
        let a = ScriptedQuery::new(vec![2]);
        let b = ScriptedQuery::new(vec![6]);
        let batch = compile_parallel_queries(&mem, &[&a, &b], 10).unwrap();
        assert_eq!(batch.accounting.rounds, 1);
        assert_eq!(batch.transcript.alice_bits(), 5);
        assert_eq!(batch.transcript.bob_bits(), 8);
        assert_eq!(batch.accounting.assignment_bits, 2);
    }

    #[test]
    fn parallel_handles_collisions_padding_and_uneven_length() {
        let mem = filled(8, 4, 4);
        // Both probe cell 3 in round 0 (collision); the second query keeps
        // going one more round; the third finishes without probing.
        let a = ScriptedQuery::new(vec![3]);
        let b = ScriptedQuery::new(vec![3, 7]);
        let c = ScriptedQuery::new(vec![]);
        let batch = compile_parallel_queries(&mem, &[&a, &b, &c], 10).unwrap();
        assert_eq!(batch.accounting.rounds, 2);
        for (i, q) in [&a as &dyn ProbeQuery, &b, &c].into_iter().enumerate() {
            let (answer, _) = run_direct(&mem, q, 10).unwrap();
            assert_eq!(batch.answers[i], answer, "query {i}");
        }
        // Round 0 ships {3} padded to {0, 1, 3}: both live queries read
        // position 2, the finished one defaults to 0.
        assert_eq!(batch.accounting.assignments[0], vec![2, 2, 0]);
        let rounds = decode_parallel(&batch.transcript, 8, 4, 3).unwrap();
        assert_eq!(rounds[0].0, vec![0, 1, 3]);
        assert_eq!(rounds[1].0, vec![0, 1, 7]);
        for (addrs, values) in rounds {
            for (addr, value) in addrs.iter().zip(values) {
                assert_eq!(mem.read(*addr).unwrap(), value);
            }
        }
    }

    #[test]
    fn parallel_rejects_more_queries_than_cells() {
        let mem = filled(2, 4, 5);
        let a = ScriptedQuery::new(vec![0]);
        let b = ScriptedQuery::new(vec![1]);
        let c = ScriptedQuery::new(vec![0]);
        assert!(compile_parallel_queries(&mem, &[&a, &b, &c], 10).is_err());
    }

    #[test]
    fn random_batches_agree_with_direct_execution() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for trial in 0..100 {
            let size = rng.gen_range(4..=16);
            let word_bits = rng.gen_range(1..=12);
            let mem = filled(size, word_bits, 1000 + trial);
            let k = rng.gen_range(1..=size.min(5));
            let queries: Vec<Box<dyn ProbeQuery>> = (0..k)
                .map(|_| -> Box<dyn ProbeQuery> {
                    if rng.gen_bool(0.5) {
                        let len = rng.gen_range(0..=4);
                        Box::new(ScriptedQuery::new(
                            (0..len).map(|_| rng.gen_range(0..size)).collect(),
                        ))
                    } else {
                        Box::new(ChainedQuery::new(
                            rng.gen_range(0..size),
                            rng.gen_range(0..=4),
                            size,
                        ))
                    }
                })
                .collect();
            let refs: Vec<&dyn ProbeQuery> = queries.iter().map(|q| q.as_ref()).collect();
            let batch = compile_parallel_queries(&mem, &refs, 100).unwrap();
            let mut max_probes = 0;
            for (i, q) in refs.iter().enumerate() {
                let (answer, probes) = run_direct(&mem, *q, 100).unwrap();
                assert_eq!(batch.answers[i], answer, "trial {trial} query {i}");
                let single = compile_single_query(&mem, *q, 100).unwrap();
                assert_eq!(single.answer, answer);
                assert_eq!(
                    single.transcript.alice_bits(),
                    probes.len() as u64 * bits_for_range(size as u128) as u64
                );
                assert_eq!(single.transcript.bob_bits(), probes.len() as u64 * word_bits as u64);
                max_probes = max_probes.max(probes.len());
            }
            // Lock-step: rounds = longest query, budgets exact.
            assert_eq!(batch.accounting.rounds, max_probes);
            let rank_width = bits_for_range(binomial(size as u64, k as u64).unwrap()) as u64;
            assert_eq!(batch.transcript.alice_bits(), max_probes as u64 * rank_width);
            assert_eq!(
                batch.transcript.bob_bits(),
                max_probes as u64 * k as u64 * word_bits as u64
            );
            assert_eq!(
                batch.accounting.assignment_bits,
                max_probes as u64 * k as u64 * bits_for_range(k as u128) as u64
            );
        }
    }

    #[test]
    fn reachability_memory_round_trips_queries() {
        let shape = ButterflyShape::new(2, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let edges: Vec<_> = shape.edges().collect();
        for word_bits in [1u32, 3, 8, 64] {
            for _ in 0..30 {
                let mut sub = Subgraph::complete(shape.clone());
                for edge in &edges {
                    if rng.gen_bool(0.2) {
                        sub.remove_edge(edge.clone()).unwrap();
                    }
                }
                let mem = reachability_memory(&sub, word_bits).unwrap();
                for source in shape.vectors() {
                    for sink in shape.vectors() {
                        let q =
                            ReachProbeQuery::new(&shape, word_bits, &source, &sink).unwrap();
                        let (answer, probes) = run_direct(&mem, &q, 10).unwrap();
                        assert_eq!(
                            answer,
                            sub.reachable(&source, &sink).unwrap(),
                            "pair {source:?} -> {sink:?}"
                        );
                        assert!(probes.len() <= shape.depth());
                    }
                }
            }
        }
    }
}
