//! Zig-zag sort: a data-oblivious sorting algorithm that runs in
//! O(n log n) compare-exchanges for a fixed halver degree.
//!
//! Each iteration j splits the array into 2^j subarrays and makes three
//! passes: a splitting step that reduces every freshly split pair, an
//! ascending "outer zig" over adjacent pairs, and a descending "outer zag".
//! Every zig/zag step first swaps the two subarrays element by element (the
//! "inner zig-zag") and then applies `Reduce`, which is a halver followed
//! by the recursive `Attenuate`.
//!
//! The same generator drives both direct execution and network emission, so
//! the emitted network performs the identical gate sequence as
//! [`zigzag_sort`].

use std::collections::HashMap;
use std::ops::Range;

use num_rational::Rational64;
use thiserror::Error;

use crate::baselines::emit_sorter;
use crate::halver::{apply_matching, seeded_matchings, HalverSpec};
use crate::network::{GateKind, GateSink, Network};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ZigZagRealization {
    /// Inner zig-zag as unconditional swap gates (the default).
    SwapGates,
    /// Inner zig-zag as per-wire reverse comparators pairing `A[t]` with `B[t]`.
    ReverseComparators,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ZigZagConfig {
    /// Input width; must be a power of two.
    pub n: usize,
    pub halver: HalverSpec,
    /// Side size at or below which Reduce and Attenuate sort outright.
    pub base_threshold: usize,
    pub realization: ZigZagRealization,
    /// Keep pure degree-k halver edge counts everywhere so gate totals
    /// follow the closed forms; sorting correctness is not asserted.
    pub counting_mode: bool,
}

impl ZigZagConfig {
    pub fn new(n: usize, halver: HalverSpec) -> Result<ZigZagConfig, ZigZagError> {
        let cfg = ZigZagConfig {
            n,
            halver,
            base_threshold: 8,
            realization: ZigZagRealization::SwapGates,
            counting_mode: false,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_base_threshold(mut self, t: usize) -> Result<ZigZagConfig, ZigZagError> {
        self.base_threshold = t;
        self.validate()?;
        Ok(self)
    }

    pub fn with_realization(mut self, r: ZigZagRealization) -> ZigZagConfig {
        self.realization = r;
        self
    }

    pub fn with_counting_mode(mut self, on: bool) -> Result<ZigZagConfig, ZigZagError> {
        self.counting_mode = on;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<(), ZigZagError> {
        if self.n == 0 || !self.n.is_power_of_two() {
            return Err(ZigZagError::WidthNotPowerOfTwo(self.n));
        }
        if self.base_threshold < 2 || !self.base_threshold.is_power_of_two() {
            return Err(ZigZagError::BadThreshold(self.base_threshold));
        }
        if let HalverSpec::Expander { degree, .. } = self.halver {
            if degree == 0 {
                return Err(ZigZagError::ZeroDegree);
            }
        } else if self.counting_mode {
            return Err(ZigZagError::CountingNeedsExpander);
        }
        Ok(())
    }

    fn levels(&self) -> u32 {
        self.n.trailing_zeros()
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ZigZagError {
    #[error("width must be a power of two, got {0}")]
    WidthNotPowerOfTwo(usize),
    #[error("base threshold must be a power of two >= 2, got {0}")]
    BadThreshold(usize),
    #[error("expander degree must be at least 1")]
    ZeroDegree,
    #[error("counting mode requires an expander halver")]
    CountingNeedsExpander,
    #[error("input length {got} does not match configured width {want}")]
    LengthMismatch { want: usize, got: usize },
}

/// One of the 2^j equal subarrays at iteration level j. Indices are
/// 1-based to match the usual bookkeeping; `start` is the 0-based offset.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SubarrayView {
    pub level: u32,
    pub index: usize,
    pub start: usize,
    pub len: usize,
}

impl SubarrayView {
    pub fn new(n: usize, level: u32, index: usize) -> SubarrayView {
        let len = n >> level;
        debug_assert!(index >= 1 && index <= (1 << level));
        SubarrayView {
            level,
            index,
            start: (index - 1) * len,
            len,
        }
    }

    /// 1-based index of the level-`level` subarray containing 1-based cell
    /// `cell`.
    pub fn block_of_cell(n: usize, level: u32, cell: usize) -> usize {
        let len = n >> level;
        debug_assert!(cell >= 1 && cell <= n);
        cell.div_ceil(len)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Phase {
    Split,
    Zig,
    Zag,
}

impl std::fmt::Display for Phase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Phase::Split => write!(f, "split"),
            Phase::Zig => write!(f, "zig"),
            Phase::Zag => write!(f, "zag"),
        }
    }
}

/// Progress points reported while the algorithm structure is walked.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub(crate) enum BuildEvent {
    SplitDone(u32),
    /// After the reduce of zig pair (pair, pair+1) at this level.
    ZigStep {
        level: u32,
        pair: usize,
    },
    ZigDone(u32),
    /// After the reduce of zag pair (pair-1, pair) at this level.
    ZagStep {
        level: u32,
        pair: usize,
    },
    ZagDone(u32),
}

/// Applies gates to a slice as they are emitted.
pub(crate) struct Executor<'a, T> {
    pub data: &'a mut [T],
}

impl<T: Ord> GateSink for Executor<'_, T> {
    fn forward(&mut self, lo: usize, hi: usize) {
        if self.data[lo] > self.data[hi] {
            self.data.swap(lo, hi);
        }
    }

    fn reverse(&mut self, lo: usize, hi: usize) {
        if self.data[lo] < self.data[hi] {
            self.data.swap(lo, hi);
        }
    }

    fn swap(&mut self, lo: usize, hi: usize) {
        self.data.swap(lo, hi);
    }
}

/// Wraps a sink, logging each gate's kind and wire pair.
pub(crate) struct TraceSink<S> {
    pub inner: S,
    pub log: Vec<(GateKind, usize, usize)>,
}

impl<S: GateSink> GateSink for TraceSink<S> {
    fn forward(&mut self, lo: usize, hi: usize) {
        self.log.push((GateKind::Forward, lo, hi));
        self.inner.forward(lo, hi);
    }

    fn reverse(&mut self, lo: usize, hi: usize) {
        self.log.push((GateKind::Reverse, lo, hi));
        self.inner.reverse(lo, hi);
    }

    fn swap(&mut self, lo: usize, hi: usize) {
        self.log.push((GateKind::Swap, lo, hi));
        self.inner.swap(lo, hi);
    }
}

type MatchingCache = HashMap<usize, Vec<Vec<u32>>>;

/// Emit one halver application over sides of size `m` at offset `a`.
///
/// Outside counting mode an expander whose degree reaches the side size
/// falls back to the exact sorter; counting mode always lays down exactly
/// `degree` matchings so edge counts stay at degree * m.
fn halver_block<S: GateSink>(
    halver: &HalverSpec,
    counting: bool,
    cache: &mut MatchingCache,
    sink: &mut S,
    a: usize,
    m: usize,
) {
    match *halver {
        HalverSpec::Exact => emit_sorter(sink, a, 2 * m),
        HalverSpec::Expander { degree, seed } => {
            if !counting && degree as usize >= m {
                emit_sorter(sink, a, 2 * m);
                return;
            }
            let matchings = cache
                .entry(m)
                .or_insert_with(|| seeded_matchings(m, degree, seed));
            for matching in matchings {
                apply_matching(sink, a, m, matching);
            }
        }
    }
}

fn reduce_into<S: GateSink>(
    halver: &HalverSpec,
    threshold: usize,
    counting: bool,
    cache: &mut MatchingCache,
    sink: &mut S,
    a: usize,
    m: usize,
) {
    if !counting && m <= threshold {
        emit_sorter(sink, a, 2 * m);
        return;
    }
    halver_block(halver, counting, cache, sink, a, m);
    attenuate_into(halver, threshold, counting, cache, sink, a, m);
}

fn attenuate_into<S: GateSink>(
    halver: &HalverSpec,
    threshold: usize,
    counting: bool,
    cache: &mut MatchingCache,
    sink: &mut S,
    a: usize,
    m: usize,
) {
    if m <= threshold {
        if counting {
            // Closed-form base block: nine halver passes cost exactly the
            // recurrence fixpoint 9 * (k/2) * 2m edges.
            for _ in 0..9 {
                halver_block(halver, counting, cache, sink, a, m);
            }
        } else {
            emit_sorter(sink, a, 2 * m);
        }
        return;
    }
    let h = m / 2;
    let q = m / 4;
    halver_block(halver, counting, cache, sink, a, h); // A1 vs A2
    halver_block(halver, counting, cache, sink, a + m, h); // B1 vs B2
    halver_block(halver, counting, cache, sink, a + h, h); // A2 vs B1
    attenuate_into(halver, threshold, counting, cache, sink, a + h, h);
    halver_block(halver, counting, cache, sink, a + h, q); // halves of A2
    halver_block(halver, counting, cache, sink, a + m, q); // halves of B1
    halver_block(halver, counting, cache, sink, a + h + q, q); // A2b vs B1a
    attenuate_into(halver, threshold, counting, cache, sink, a + h + q, q);
}

fn inner_zigzag<S: GateSink>(realization: ZigZagRealization, sink: &mut S, a: usize, m: usize) {
    for t in 0..m {
        match realization {
            ZigZagRealization::SwapGates => sink.swap(a + t, a + m + t),
            ZigZagRealization::ReverseComparators => sink.reverse(a + t, a + m + t),
        }
    }
}

/// Walk the whole algorithm, emitting gates into `sink` and reporting
/// phase boundaries to `obs`.
pub(crate) fn drive<S, F>(cfg: &ZigZagConfig, sink: &mut S, obs: &mut F)
where
    S: GateSink,
    F: FnMut(BuildEvent, &mut S),
{
    let mut cache = MatchingCache::new();
    let counting = cfg.counting_mode;
    for j in 1..=cfg.levels() {
        let nj = cfg.n >> j;
        let blocks = 1usize << j;
        for i in 1..=(blocks / 2) {
            let start = (i - 1) * 2 * nj;
            reduce_into(
                &cfg.halver,
                cfg.base_threshold,
                counting,
                &mut cache,
                sink,
                start,
                nj,
            );
        }
        obs(BuildEvent::SplitDone(j), sink);
        for s in 1..blocks {
            let a = (s - 1) * nj;
            inner_zigzag(cfg.realization, sink, a, nj);
            reduce_into(
                &cfg.halver,
                cfg.base_threshold,
                counting,
                &mut cache,
                sink,
                a,
                nj,
            );
            obs(BuildEvent::ZigStep { level: j, pair: s }, sink);
        }
        obs(BuildEvent::ZigDone(j), sink);
        for s in (2..=blocks).rev() {
            let a = (s - 2) * nj;
            inner_zigzag(cfg.realization, sink, a, nj);
            reduce_into(
                &cfg.halver,
                cfg.base_threshold,
                counting,
                &mut cache,
                sink,
                a,
                nj,
            );
            obs(BuildEvent::ZagStep { level: j, pair: s }, sink);
        }
        obs(BuildEvent::ZagDone(j), sink);
    }
}

/// Sort `data` in place. The compare-exchange sequence depends only on the
/// configuration, never on the data.
pub fn zigzag_sort<T: Ord>(data: &mut [T], cfg: &ZigZagConfig) -> Result<(), ZigZagError> {
    cfg.validate()?;
    if data.len() != cfg.n {
        return Err(ZigZagError::LengthMismatch {
            want: cfg.n,
            got: data.len(),
        });
    }
    let mut exec = Executor { data };
    drive(cfg, &mut exec, &mut |_, _| {});
    Ok(())
}

/// Sort `data` in place and return the sequence of wire pairs touched, in
/// execution order.
pub fn zigzag_sort_traced<T: Ord>(
    data: &mut [T],
    cfg: &ZigZagConfig,
) -> Result<Vec<(GateKind, usize, usize)>, ZigZagError> {
    cfg.validate()?;
    if data.len() != cfg.n {
        return Err(ZigZagError::LengthMismatch {
            want: cfg.n,
            got: data.len(),
        });
    }
    let mut sink = TraceSink {
        inner: Executor { data },
        log: Vec::new(),
    };
    drive(cfg, &mut sink, &mut |_, _| {});
    Ok(sink.log)
}

/// Emit the whole algorithm as a single comparator network.
pub fn emit_zigzag_network(cfg: &ZigZagConfig) -> Result<Network, ZigZagError> {
    Ok(emit_zigzag_network_annotated(cfg)?.0)
}

/// Span of gates belonging to one phase of one iteration.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PhaseSpan {
    pub level: u32,
    pub phase: Phase,
    pub gates: Range<usize>,
}

/// Like [`emit_zigzag_network`], also reporting which gate range each
/// split/zig/zag phase occupies.
pub fn emit_zigzag_network_annotated(
    cfg: &ZigZagConfig,
) -> Result<(Network, Vec<PhaseSpan>), ZigZagError> {
    cfg.validate()?;
    let mut net = Network::new(cfg.n);
    let mut spans = Vec::new();
    let mut cursor = 0usize;
    drive(cfg, &mut net, &mut |event, net: &mut Network| {
        let here = net.len();
        let phase = match event {
            BuildEvent::SplitDone(j) => Some((j, Phase::Split)),
            BuildEvent::ZigDone(j) => Some((j, Phase::Zig)),
            BuildEvent::ZagDone(j) => Some((j, Phase::Zag)),
            _ => None,
        };
        if let Some((level, phase)) = phase {
            spans.push(PhaseSpan {
                level,
                phase,
                gates: cursor..here,
            });
            cursor = here;
        }
    });
    Ok((net, spans))
}

/// The `Reduce` building block as a standalone fragment on `2n` wires
/// (A low, B high).
pub fn emit_reduce(
    halver: &HalverSpec,
    base_threshold: usize,
    counting: bool,
    n: usize,
) -> Result<Network, ZigZagError> {
    fragment_config_check(halver, base_threshold, counting, n)?;
    let mut net = Network::new(2 * n);
    let mut cache = MatchingCache::new();
    reduce_into(halver, base_threshold, counting, &mut cache, &mut net, 0, n);
    Ok(net)
}

/// The recursive `Attenuate` as a standalone fragment on `2n` wires.
pub fn emit_attenuate(
    halver: &HalverSpec,
    base_threshold: usize,
    counting: bool,
    n: usize,
) -> Result<Network, ZigZagError> {
    fragment_config_check(halver, base_threshold, counting, n)?;
    let mut net = Network::new(2 * n);
    let mut cache = MatchingCache::new();
    attenuate_into(halver, base_threshold, counting, &mut cache, &mut net, 0, n);
    Ok(net)
}

fn fragment_config_check(
    halver: &HalverSpec,
    base_threshold: usize,
    counting: bool,
    n: usize,
) -> Result<(), ZigZagError> {
    if n == 0 || !n.is_power_of_two() {
        return Err(ZigZagError::WidthNotPowerOfTwo(n));
    }
    if base_threshold < 2 || !base_threshold.is_power_of_two() {
        return Err(ZigZagError::BadThreshold(base_threshold));
    }
    match halver {
        HalverSpec::Expander { degree: 0, .. } => Err(ZigZagError::ZeroDegree),
        HalverSpec::Exact if counting => Err(ZigZagError::CountingNeedsExpander),
        _ => Ok(()),
    }
}

/// Closed-form comparator counts for a halver costing `c` edges per
/// combined element.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct PredictedCounts {
    /// Attenuate on combined size n: 9cn.
    pub attenuate: Rational64,
    /// Reduce on combined size n: 10cn.
    pub reduce: Rational64,
    /// Whole zig-zag sort of width n: at most 50*c*n*log2(n).
    pub total_bound: Rational64,
}

/// Evaluate the closed forms at width (or combined size) `n`, a power of
/// two.
pub fn predicted_counts(c: Rational64, n: u64) -> PredictedCounts {
    assert!(n.is_power_of_two());
    let n_r = Rational64::from_integer(n as i64);
    let log2n = Rational64::from_integer(n.trailing_zeros() as i64);
    PredictedCounts {
        attenuate: Rational64::from_integer(9) * c * n_r,
        reduce: Rational64::from_integer(10) * c * n_r,
        total_bound: Rational64::from_integer(50) * c * n_r * log2n,
    }
}

/// Exact comparator count of a counting-mode zig-zag network of width `n`
/// with a degree-`k` halver: 25*k*n*log2(n) - 20*k*(n-1).
pub fn counting_mode_total(degree: u32, n: u64) -> u64 {
    assert!(n.is_power_of_two());
    let k = degree as u64;
    25 * k * n * n.trailing_zeros() as u64 - 20 * k * (n - 1)
}
