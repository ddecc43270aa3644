//! Comparator networks over indexed wires.
//!
//! A [`Network`] is an ordered list of oriented gates on `width` wires.
//! Executing the gates in sequence touches the same wire positions for
//! every input of a given width, which is what makes execution
//! data-oblivious. Three gate kinds exist: a forward comparator puts the
//! minimum on its lower wire, a reverse comparator puts the maximum on its
//! lower wire, and a swap gate exchanges unconditionally. Swap gates cost
//! zero comparisons in all counting.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum GateKind {
    Forward,
    Reverse,
    Swap,
}

/// One gate. Wires satisfy `lo < hi`; orientation is carried by the kind.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Gate {
    kind: GateKind,
    lo: u32,
    hi: u32,
}

impl Gate {
    pub fn new(kind: GateKind, lo: usize, hi: usize) -> Gate {
        assert!(lo < hi, "gate wires must be ascending: {lo} >= {hi}");
        Gate {
            kind,
            lo: lo as u32,
            hi: hi as u32,
        }
    }

    pub fn forward(lo: usize, hi: usize) -> Gate {
        Gate::new(GateKind::Forward, lo, hi)
    }

    pub fn reverse(lo: usize, hi: usize) -> Gate {
        Gate::new(GateKind::Reverse, lo, hi)
    }

    pub fn swap(lo: usize, hi: usize) -> Gate {
        Gate::new(GateKind::Swap, lo, hi)
    }

    pub fn kind(&self) -> GateKind {
        self.kind
    }

    pub fn lo(&self) -> usize {
        self.lo as usize
    }

    pub fn hi(&self) -> usize {
        self.hi as usize
    }

    pub fn is_comparator(&self) -> bool {
        !matches!(self.kind, GateKind::Swap)
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.kind {
            GateKind::Forward => 'c',
            GateKind::Reverse => 'r',
            GateKind::Swap => 'x',
        };
        write!(f, "{} {} {}", tag, self.lo, self.hi)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NetworkError {
    #[error("input length {got} does not match network width {want}")]
    WidthMismatch { want: usize, got: usize },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseErrorKind {
    #[error("expected `width <n>` before any gate")]
    MissingWidth,
    #[error("duplicate width line")]
    DuplicateWidth,
    #[error("invalid width")]
    BadWidth,
    #[error("malformed line (expected `c|r|x <i> <j>`)")]
    MalformedLine,
    #[error("unknown gate kind `{0}`")]
    UnknownKind(String),
    #[error("invalid wire index")]
    BadIndex,
    #[error("wire index {index} out of range for width {width}")]
    IndexOutOfRange { index: usize, width: usize },
    #[error("wire indices must be strictly ascending ({lo} >= {hi})")]
    NotAscending { lo: usize, hi: usize },
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

/// Sink for gate emission. Implemented by `Network` (collects gates) and by
/// the executors in the zigzag module (apply gates to data immediately).
pub(crate) trait GateSink {
    fn forward(&mut self, lo: usize, hi: usize);
    fn reverse(&mut self, lo: usize, hi: usize);
    fn swap(&mut self, lo: usize, hi: usize);
}

/// An ordered comparator network on `width` wires.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Network {
    width: usize,
    gates: Vec<Gate>,
}

impl Network {
    pub fn new(width: usize) -> Network {
        assert!(width >= 1, "network width must be positive");
        Network {
            width,
            gates: Vec::new(),
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn push(&mut self, gate: Gate) {
        assert!(
            gate.hi() < self.width,
            "gate touches wire {} on a width-{} network",
            gate.hi(),
            self.width
        );
        self.gates.push(gate);
    }

    /// Gate tallies as `(comparators, swaps)`. Swap gates never count as
    /// comparisons.
    pub fn gate_counts(&self) -> (usize, usize) {
        let comparators = self.gates.iter().filter(|g| g.is_comparator()).count();
        (comparators, self.gates.len() - comparators)
    }

    /// Greedy left-to-right layering: a gate joins the earliest layer after
    /// the last layer touching either of its wires. Returns the layer index
    /// of every gate in sequence order.
    pub fn layer_assignment(&self) -> Vec<usize> {
        let mut wire_time = vec![0usize; self.width];
        let mut out = Vec::with_capacity(self.gates.len());
        for g in &self.gates {
            let t = wire_time[g.lo()].max(wire_time[g.hi()]) + 1;
            wire_time[g.lo()] = t;
            wire_time[g.hi()] = t;
            out.push(t - 1);
        }
        out
    }

    /// Number of layers in the greedy layering.
    pub fn depth(&self) -> usize {
        let mut wire_time = vec![0usize; self.width];
        let mut depth = 0;
        for g in &self.gates {
            let t = wire_time[g.lo()].max(wire_time[g.hi()]) + 1;
            wire_time[g.lo()] = t;
            wire_time[g.hi()] = t;
            depth = depth.max(t);
        }
        depth
    }

    /// Run the network on `data` in place.
    pub fn apply_in_place<T: Ord>(&self, data: &mut [T]) -> Result<(), NetworkError> {
        if data.len() != self.width {
            return Err(NetworkError::WidthMismatch {
                want: self.width,
                got: data.len(),
            });
        }
        for g in &self.gates {
            let (lo, hi) = (g.lo(), g.hi());
            match g.kind {
                GateKind::Forward => {
                    if data[lo] > data[hi] {
                        data.swap(lo, hi);
                    }
                }
                GateKind::Reverse => {
                    if data[lo] < data[hi] {
                        data.swap(lo, hi);
                    }
                }
                GateKind::Swap => data.swap(lo, hi),
            }
        }
        Ok(())
    }

    /// Run the network on a copy of `input`.
    pub fn apply<T: Ord + Clone>(&self, input: &[T]) -> Result<Vec<T>, NetworkError> {
        let mut data = input.to_vec();
        self.apply_in_place(&mut data)?;
        Ok(data)
    }

    /// Like [`Network::apply_in_place`], additionally recording the wire pair every
    /// gate touches, in execution order. The recorded sequence depends only
    /// on the network, never on the data.
    pub fn apply_traced<T: Ord>(
        &self,
        data: &mut [T],
    ) -> Result<Vec<(GateKind, usize, usize)>, NetworkError> {
        if data.len() != self.width {
            return Err(NetworkError::WidthMismatch {
                want: self.width,
                got: data.len(),
            });
        }
        let mut log = Vec::with_capacity(self.gates.len());
        for g in &self.gates {
            let (lo, hi) = (g.lo(), g.hi());
            log.push((g.kind, lo, hi));
            match g.kind {
                GateKind::Forward => {
                    if data[lo] > data[hi] {
                        data.swap(lo, hi);
                    }
                }
                GateKind::Reverse => {
                    if data[lo] < data[hi] {
                        data.swap(lo, hi);
                    }
                }
                GateKind::Swap => data.swap(lo, hi),
            }
        }
        Ok(log)
    }

    /// Run the network on a binary input packed into the low `width` bits of
    /// a mask (wire `i` holds bit `i`). Requires `width <= 64`.
    pub fn apply_mask(&self, mut m: u64) -> u64 {
        debug_assert!(self.width <= 64);
        for g in &self.gates {
            let a = (m >> g.lo) & 1;
            let b = (m >> g.hi) & 1;
            let differ = a ^ b;
            let flip = match g.kind {
                GateKind::Forward => differ & a,
                GateKind::Reverse => differ & b,
                GateKind::Swap => differ,
            };
            m ^= (flip << g.lo) | (flip << g.hi);
        }
        m
    }

    /// Run the network on a batch of inputs at once: `rows[i]` holds wire
    /// `i` of every input in the batch. Streaming the gate list once per
    /// batch instead of once per input is substantially faster for large
    /// networks.
    pub fn apply_rows<T: Copy + Ord>(&self, rows: &mut [Vec<T>]) {
        debug_assert_eq!(rows.len(), self.width);
        for g in &self.gates {
            let (lo, hi) = (g.lo(), g.hi());
            if g.kind == GateKind::Swap {
                rows.swap(lo, hi);
                continue;
            }
            let (head, tail) = rows.split_at_mut(hi);
            let ra = &mut head[lo];
            let rb = &mut tail[0];
            match g.kind {
                GateKind::Forward => {
                    for (x, y) in ra.iter_mut().zip(rb.iter_mut()) {
                        let (mn, mx) = ((*x).min(*y), (*x).max(*y));
                        *x = mn;
                        *y = mx;
                    }
                }
                GateKind::Reverse => {
                    for (x, y) in ra.iter_mut().zip(rb.iter_mut()) {
                        let (mn, mx) = ((*x).min(*y), (*x).max(*y));
                        *x = mx;
                        *y = mn;
                    }
                }
                GateKind::Swap => unreachable!(),
            }
        }
    }

    /// Row-batched binary execution: `rows[i]` holds wire `i` of `64 * w`
    /// inputs as bit lanes across `w` words.
    pub fn apply_binary_rows(&self, rows: &mut [Vec<u64>]) {
        debug_assert_eq!(rows.len(), self.width);
        for g in &self.gates {
            let (lo, hi) = (g.lo(), g.hi());
            if g.kind == GateKind::Swap {
                rows.swap(lo, hi);
                continue;
            }
            let (head, tail) = rows.split_at_mut(hi);
            let ra = &mut head[lo];
            let rb = &mut tail[0];
            match g.kind {
                GateKind::Forward => {
                    for (x, y) in ra.iter_mut().zip(rb.iter_mut()) {
                        let (and, or) = (*x & *y, *x | *y);
                        *x = and;
                        *y = or;
                    }
                }
                GateKind::Reverse => {
                    for (x, y) in ra.iter_mut().zip(rb.iter_mut()) {
                        let (and, or) = (*x & *y, *x | *y);
                        *x = or;
                        *y = and;
                    }
                }
                GateKind::Swap => unreachable!(),
            }
        }
    }

    /// Run the network on 64 binary inputs at once: `lanes[i]` holds wire
    /// `i` of all 64 inputs, one per bit position.
    pub fn apply_lanes(&self, lanes: &mut [u64]) {
        debug_assert_eq!(lanes.len(), self.width);
        for g in &self.gates {
            let a = lanes[g.lo()];
            let b = lanes[g.hi()];
            match g.kind {
                GateKind::Forward => {
                    lanes[g.lo()] = a & b;
                    lanes[g.hi()] = a | b;
                }
                GateKind::Reverse => {
                    lanes[g.lo()] = a | b;
                    lanes[g.hi()] = a & b;
                }
                GateKind::Swap => {
                    lanes[g.lo()] = b;
                    lanes[g.hi()] = a;
                }
            }
        }
    }

    /// Check every binary input sorts. Exhaustive over all `2^width` inputs
    /// when `width <= exhaustive_limit`, otherwise `sample_count` seeded
    /// random inputs.
    pub fn verify_zero_one(
        &self,
        exhaustive_limit: u32,
        sample_count: u64,
        seed: u64,
    ) -> VerificationReport {
        if self.width <= exhaustive_limit as usize && self.width < 64 {
            self.verify_exhaustive()
        } else {
            self.verify_sampled(sample_count, seed)
        }
    }

    fn verify_exhaustive(&self) -> VerificationReport {
        let total = 1u64 << self.width;
        let w = self.width;
        let witness = (0..total)
            .into_par_iter()
            .find_first(|&m| !mask_sorted(self.apply_mask(m), w));
        VerificationReport {
            passed: witness.is_none(),
            witness: witness.map(|m| mask_to_bits(m, w)),
            inputs_checked: total,
            mode: VerifyMode::Exhaustive,
        }
    }

    fn verify_sampled(&self, sample_count: u64, seed: u64) -> VerificationReport {
        let batches = sample_count.div_ceil(64);
        let witness = (0..batches)
            .into_par_iter()
            .filter_map(|batch| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(batch));
                let input: Vec<u64> = (0..self.width).map(|_| rng.gen()).collect();
                let mut lanes = input.clone();
                self.apply_lanes(&mut lanes);
                let live = if batch == batches - 1 && !sample_count.is_multiple_of(64) {
                    sample_count % 64
                } else {
                    64
                };
                let bad = unsorted_lanes(&lanes) & live_mask(live);
                if bad == 0 {
                    None
                } else {
                    let lane = bad.trailing_zeros();
                    Some((
                        batch,
                        input
                            .iter()
                            .map(|&w| ((w >> lane) & 1) as u8)
                            .collect::<Vec<u8>>(),
                    ))
                }
            })
            .min_by_key(|(batch, _)| *batch);
        VerificationReport {
            passed: witness.is_none(),
            witness: witness.map(|(_, bits)| bits),
            inputs_checked: sample_count,
            mode: VerifyMode::Sampled,
        }
    }

    /// Text form, parseable by [`Network::parse_text`].
    pub fn to_text(&self) -> String {
        self.to_string()
    }

    pub fn parse_text(text: &str) -> Result<Network, ParseError> {
        text.parse()
    }
}

impl GateSink for Network {
    fn forward(&mut self, lo: usize, hi: usize) {
        self.push(Gate::forward(lo, hi));
    }

    fn reverse(&mut self, lo: usize, hi: usize) {
        self.push(Gate::reverse(lo, hi));
    }

    fn swap(&mut self, lo: usize, hi: usize) {
        self.push(Gate::swap(lo, hi));
    }
}

impl fmt::Display for Network {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "width {}", self.width)?;
        for g in &self.gates {
            writeln!(f, "{g}")?;
        }
        Ok(())
    }
}

impl FromStr for Network {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Network, ParseError> {
        let mut net: Option<Network> = None;
        for (idx, raw) in s.lines().enumerate() {
            let line = idx + 1;
            let text = raw.strip_suffix('\r').unwrap_or(raw);
            if text.starts_with('#') {
                continue;
            }
            let mut parts = text.split_ascii_whitespace();
            let head = match parts.next() {
                Some(h) => h,
                None => {
                    return Err(ParseError {
                        line,
                        kind: ParseErrorKind::MalformedLine,
                    })
                }
            };
            if head == "width" {
                if net.is_some() {
                    return Err(ParseError {
                        line,
                        kind: ParseErrorKind::DuplicateWidth,
                    });
                }
                let w: usize = parts
                    .next()
                    .and_then(|t| t.parse().ok())
                    .filter(|&w| w >= 1)
                    .ok_or(ParseError {
                        line,
                        kind: ParseErrorKind::BadWidth,
                    })?;
                if parts.next().is_some() {
                    return Err(ParseError {
                        line,
                        kind: ParseErrorKind::MalformedLine,
                    });
                }
                net = Some(Network::new(w));
                continue;
            }
            let net = net.as_mut().ok_or(ParseError {
                line,
                kind: ParseErrorKind::MissingWidth,
            })?;
            let kind = match head {
                "c" => GateKind::Forward,
                "r" => GateKind::Reverse,
                "x" => GateKind::Swap,
                other => {
                    return Err(ParseError {
                        line,
                        kind: ParseErrorKind::UnknownKind(other.to_string()),
                    })
                }
            };
            let lo: usize = parts
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or(ParseError {
                    line,
                    kind: ParseErrorKind::BadIndex,
                })?;
            let hi: usize = parts
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or(ParseError {
                    line,
                    kind: ParseErrorKind::BadIndex,
                })?;
            if parts.next().is_some() {
                return Err(ParseError {
                    line,
                    kind: ParseErrorKind::MalformedLine,
                });
            }
            if lo >= hi {
                return Err(ParseError {
                    line,
                    kind: ParseErrorKind::NotAscending { lo, hi },
                });
            }
            if hi >= net.width() {
                return Err(ParseError {
                    line,
                    kind: ParseErrorKind::IndexOutOfRange {
                        index: hi,
                        width: net.width(),
                    },
                });
            }
            net.gates.push(Gate {
                kind,
                lo: lo as u32,
                hi: hi as u32,
            });
        }
        net.ok_or(ParseError {
            line: s.lines().count().max(1),
            kind: ParseErrorKind::MissingWidth,
        })
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum VerifyMode {
    Exhaustive,
    Sampled,
}

impl fmt::Display for VerifyMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerifyMode::Exhaustive => write!(f, "exhaustive"),
            VerifyMode::Sampled => write!(f, "sampled"),
        }
    }
}

/// Outcome of a 0-1 verification pass. In exhaustive mode `inputs_checked`
/// is the full size of the input space, `2^width`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VerificationReport {
    pub passed: bool,
    pub witness: Option<Vec<u8>>,
    pub inputs_checked: u64,
    pub mode: VerifyMode,
}

/// True when the low `width` bits of `m` are non-decreasing read from wire
/// 0 upward, i.e. all ones sit above all zeros.
pub fn mask_sorted(m: u64, width: usize) -> bool {
    m == 0 || m.trailing_zeros() as usize + m.count_ones() as usize == width
}

pub fn mask_to_bits(m: u64, width: usize) -> Vec<u8> {
    (0..width).map(|i| ((m >> i) & 1) as u8).collect()
}

/// Lane mask of inputs whose wire values are not non-decreasing.
fn unsorted_lanes(lanes: &[u64]) -> u64 {
    let mut seen_one = 0u64;
    let mut bad = 0u64;
    for &w in lanes {
        bad |= seen_one & !w;
        seen_one |= w;
    }
    bad
}

fn live_mask(count: u64) -> u64 {
    if count >= 64 {
        u64::MAX
    } else {
        (1u64 << count) - 1
    }
}
