//! Reference data-oblivious sorters: Batcher's odd-even mergesort, the
//! bitonic sorter, and a Pratt-gap Shellsort network. All three are used as
//! correctness cross-checks and as comparison points for gate counting.

use thiserror::Error;

use crate::network::{GateSink, Network};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BaselineError {
    #[error("width must be a power of two, got {0}")]
    NotPowerOfTwo(usize),
}

/// Batcher odd-even mergesort network. `n` must be a power of two.
pub fn batcher_network(n: usize) -> Result<Network, BaselineError> {
    if n == 0 || !n.is_power_of_two() {
        return Err(BaselineError::NotPowerOfTwo(n));
    }
    let mut net = Network::new(n);
    emit_odd_even_mergesort(&mut net, 0, n);
    Ok(net)
}

/// Bitonic sorting network. `n` must be a power of two. Descending merge
/// stages are emitted as reverse comparators so wire pairs stay ascending.
pub fn bitonic_network(n: usize) -> Result<Network, BaselineError> {
    if n == 0 || !n.is_power_of_two() {
        return Err(BaselineError::NotPowerOfTwo(n));
    }
    let mut net = Network::new(n);
    emit_bitonic(&mut net, 0, n);
    Ok(net)
}

/// Ascending sequence of 3-smooth numbers (2^a * 3^b) strictly below `n`.
pub fn pratt_gaps(n: usize) -> Vec<usize> {
    let mut gaps = Vec::new();
    let mut p2 = 1usize;
    while p2 < n {
        let mut g = p2;
        while g < n {
            gaps.push(g);
            match g.checked_mul(3) {
                Some(next) => g = next,
                None => break,
            }
        }
        match p2.checked_mul(2) {
            Some(next) => p2 = next,
            None => break,
        }
    }
    gaps.sort_unstable();
    gaps
}

/// Shellsort network over the Pratt gap sequence: for each gap `g` in
/// descending order, one ascending pass of comparators `(i, i+g)`. Because
/// the array is already 2g- and 3g-sorted when gap `g` is reached, the
/// single pass g-sorts it.
pub fn pratt_network(n: usize) -> Network {
    assert!(n >= 1);
    let mut net = Network::new(n);
    for &g in pratt_gaps(n).iter().rev() {
        for i in 0..n - g {
            net.forward(i, i + g);
        }
    }
    net
}

/// Classic recursive odd-even mergesort on `[base, base+len)`, `len` a
/// power of two.
pub(crate) fn emit_odd_even_mergesort<S: GateSink>(sink: &mut S, base: usize, len: usize) {
    debug_assert!(len.is_power_of_two());
    if len <= 1 {
        return;
    }
    let half = len / 2;
    emit_odd_even_mergesort(sink, base, half);
    emit_odd_even_mergesort(sink, base + half, half);
    emit_odd_even_merge(sink, base, len, 1);
}

fn emit_odd_even_merge<S: GateSink>(sink: &mut S, base: usize, len: usize, step: usize) {
    let double = step * 2;
    if double < len {
        emit_odd_even_merge(sink, base, len, double);
        emit_odd_even_merge(sink, base + step, len, double);
        let mut i = base + step;
        while i + step < base + len {
            sink.forward(i, i + step);
            i += double;
        }
    } else {
        sink.forward(base, base + step);
    }
}

/// Batcher's merge exchange, valid for any `len`. Used where a sorter on a
/// non-power-of-two span is needed.
pub(crate) fn emit_merge_exchange<S: GateSink>(sink: &mut S, base: usize, len: usize) {
    if len <= 1 {
        return;
    }
    let t = usize::BITS - (len - 1).leading_zeros(); // ceil(log2(len))
    let mut p = 1usize << (t - 1);
    while p > 0 {
        let mut q = 1usize << (t - 1);
        let mut r = 0usize;
        let mut d = p;
        loop {
            for i in 0..len - d {
                if i & p == r {
                    sink.forward(base + i, base + i + d);
                }
            }
            if q == p {
                break;
            }
            d = q - p;
            q /= 2;
            r = p;
        }
        p /= 2;
    }
}

/// Fully sort `[base, base+len)` with whichever Batcher construction fits.
pub(crate) fn emit_sorter<S: GateSink>(sink: &mut S, base: usize, len: usize) {
    if len.is_power_of_two() {
        emit_odd_even_mergesort(sink, base, len);
    } else {
        emit_merge_exchange(sink, base, len);
    }
}

pub(crate) fn emit_bitonic<S: GateSink>(sink: &mut S, base: usize, len: usize) {
    emit_bitonic_dir(sink, base, len, true);
}

fn emit_bitonic_dir<S: GateSink>(sink: &mut S, base: usize, len: usize, ascending: bool) {
    if len <= 1 {
        return;
    }
    let half = len / 2;
    emit_bitonic_dir(sink, base, half, true);
    emit_bitonic_dir(sink, base + half, half, false);
    emit_bitonic_merge(sink, base, len, ascending);
}

fn emit_bitonic_merge<S: GateSink>(sink: &mut S, base: usize, len: usize, ascending: bool) {
    if len <= 1 {
        return;
    }
    let half = len / 2;
    for i in 0..half {
        if ascending {
            sink.forward(base + i, base + i + half);
        } else {
            sink.reverse(base + i, base + i + half);
        }
    }
    emit_bitonic_merge(sink, base, half, ascending);
    emit_bitonic_merge(sink, base + half, half, ascending);
}

/// One row of a gate-count comparison table.
#[derive(Clone, Debug)]
pub struct CountRow {
    pub algo: String,
    pub n: usize,
    pub comparators: usize,
    pub swaps: usize,
    pub depth: usize,
}

impl CountRow {
    /// Comparators per n*log2(n).
    pub fn coef_n_log_n(&self) -> f64 {
        let n = self.n as f64;
        self.comparators as f64 / (n * n.log2())
    }

    /// Comparators per n*log2(n)^2.
    pub fn coef_n_log2_n(&self) -> f64 {
        let n = self.n as f64;
        self.comparators as f64 / (n * n.log2() * n.log2())
    }
}

/// Build a network per size and tabulate its gate counts and depth.
pub fn count_comparisons<F>(algo: &str, build: F, sizes: &[usize]) -> Vec<CountRow>
where
    F: Fn(usize) -> Network,
{
    sizes
        .iter()
        .map(|&n| {
            let net = build(n);
            let (comparators, swaps) = net.gate_counts();
            CountRow {
                algo: algo.to_string(),
                n,
                comparators,
                swaps,
                depth: net.depth(),
            }
        })
        .collect()
}
