//! Construction and measurement of halver networks.
//!
//! A halver operates on two equal arrays A and B (here the low and high
//! halves of a fragment's wires) and bounds, for every k up to the side
//! size, how many of the largest k elements can remain in A and how many of
//! the smallest k can remain in B. The exact kind fully sorts the fragment,
//! which makes it a 0-halver. The expander kind unions `degree` seeded
//! random perfect matchings between the two sides and applies each edge as
//! a forward comparator with the A wire on the min side; its realized
//! epsilon is measured, never assumed.

use num_rational::Rational64;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::baselines::emit_sorter;
use crate::network::{GateSink, Network};

/// Widest fragment (both sides combined) the exhaustive measurements accept.
pub const EXHAUSTIVE_WIRE_LIMIT: usize = 24;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum HalverSpec {
    Exact,
    Expander { degree: u32, seed: u64 },
}

#[derive(Debug, Error, PartialEq)]
pub enum HalverError {
    #[error("halver side size must be at least 1")]
    EmptyInput,
    #[error("expander degree must be at least 1")]
    ZeroDegree,
    #[error("{wires} wires exceed the exhaustive enumeration limit of {limit}")]
    TooWide { wires: usize, limit: usize },
    #[error("fragment width {got} does not equal twice the side size {side}")]
    FragmentWidth { got: usize, side: usize },
    #[error("epsilon {0} outside the formula domain {1}")]
    Domain(f64, &'static str),
}

/// Emit a halver over sides of size `n`: A on wires
/// `[base, base+n)`, B on `[base+n, base+2n)`. The returned network has
/// width `base + 2n`.
///
/// An expander spec with `degree >= n` clamps to the complete bipartite
/// matching set (the round-robin decomposition, degree exactly `n`).
pub fn emit_halver(spec: &HalverSpec, n: usize, base: usize) -> Result<Network, HalverError> {
    if n == 0 {
        return Err(HalverError::EmptyInput);
    }
    let mut net = Network::new(base + 2 * n);
    match *spec {
        HalverSpec::Exact => emit_sorter(&mut net, base, 2 * n),
        HalverSpec::Expander { degree, seed } => {
            if degree == 0 {
                return Err(HalverError::ZeroDegree);
            }
            if degree as usize >= n {
                for matching in round_robin_matchings(n) {
                    apply_matching(&mut net, base, n, &matching);
                }
            } else {
                for matching in seeded_matchings(n, degree, seed) {
                    apply_matching(&mut net, base, n, &matching);
                }
            }
        }
    }
    Ok(net)
}

/// `degree` independent uniform perfect matchings between A and B,
/// deterministic in `(n, degree, seed)`. Matching `m` maps A index `t` to B
/// index `matchings[m][t]`. Duplicate edges across matchings are kept.
pub(crate) fn seeded_matchings(n: usize, degree: u32, seed: u64) -> Vec<Vec<u32>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..degree)
        .map(|_| {
            let mut perm: Vec<u32> = (0..n as u32).collect();
            perm.shuffle(&mut rng);
            perm
        })
        .collect()
}

/// The n matchings t -> (t + r) mod n, r = 0..n. Their union is the
/// complete bipartite graph.
pub(crate) fn round_robin_matchings(n: usize) -> Vec<Vec<u32>> {
    (0..n)
        .map(|r| (0..n).map(|t| ((t + r) % n) as u32).collect())
        .collect()
}

/// Edges of one matching in A-index order, each a forward comparator.
pub(crate) fn apply_matching<S: GateSink>(sink: &mut S, base: usize, n: usize, matching: &[u32]) {
    for (t, &b) in matching.iter().enumerate() {
        sink.forward(base + t, base + n + b as usize);
    }
}

/// Exact worst-case halving quality of a fragment on `2n` wires, computed
/// by exhaustive enumeration of all binary inputs. `worst_top[k-1]` is the
/// most ones that ever remain in A over inputs with exactly k ones, and
/// `worst_bottom[k-1]` the most zeros that remain in B over inputs with
/// exactly k zeros.
#[derive(Clone, Debug)]
pub struct HalverMeasurement {
    side: usize,
    worst_top: Vec<u32>,
    worst_bottom: Vec<u32>,
}

impl HalverMeasurement {
    pub fn side(&self) -> usize {
        self.side
    }

    pub fn worst_top(&self, k: usize) -> u32 {
        self.worst_top[k - 1]
    }

    pub fn worst_bottom(&self, k: usize) -> u32 {
        self.worst_bottom[k - 1]
    }

    /// Worst ratio for the largest-k family at one k.
    pub fn per_k_top(&self, k: usize) -> Rational64 {
        Rational64::new(self.worst_top[k - 1] as i64, k as i64)
    }

    /// Worst ratio for the smallest-k family at one k.
    pub fn per_k_bottom(&self, k: usize) -> Rational64 {
        Rational64::new(self.worst_bottom[k - 1] as i64, k as i64)
    }

    /// The least epsilon for which the fragment is an epsilon-halver.
    pub fn epsilon(&self) -> Rational64 {
        self.lambda_limited(Rational64::from_integer(1))
    }

    /// Epsilon restricted to k <= lambda * side (both families).
    pub fn lambda_limited(&self, lambda: Rational64) -> Rational64 {
        let mut eps = Rational64::from_integer(0);
        for k in 1..=self.side {
            if Rational64::from_integer(k as i64)
                > lambda * Rational64::from_integer(self.side as i64)
            {
                break;
            }
            eps = eps.max(self.per_k_top(k)).max(self.per_k_bottom(k));
        }
        eps
    }
}

fn require_fragment(net: &Network, n: usize) -> Result<(), HalverError> {
    if n == 0 {
        return Err(HalverError::EmptyInput);
    }
    if net.width() != 2 * n {
        return Err(HalverError::FragmentWidth {
            got: net.width(),
            side: n,
        });
    }
    if 2 * n > EXHAUSTIVE_WIRE_LIMIT {
        return Err(HalverError::TooWide {
            wires: 2 * n,
            limit: EXHAUSTIVE_WIRE_LIMIT,
        });
    }
    Ok(())
}

/// Measure the exact epsilon of a fragment on `2n` wires (A low, B high)
/// by running every one of the `2^(2n)` binary inputs through it.
pub fn measure_epsilon(net: &Network, n: usize) -> Result<HalverMeasurement, HalverError> {
    require_fragment(net, n)?;
    let wires = 2 * n;
    let total: u64 = 1 << wires;
    let a_mask: u64 = (1 << n) - 1;
    let identity = || (vec![0u32; n], vec![0u32; n]);
    let (worst_top, worst_bottom) = (0..total)
        .into_par_iter()
        .fold(identity, |(mut top, mut bottom), m| {
            let ones = m.count_ones() as usize;
            let zeros = wires - ones;
            if (1..=n).contains(&ones) || (1..=n).contains(&zeros) {
                let out = net.apply_mask(m);
                if (1..=n).contains(&ones) {
                    let in_a = (out & a_mask).count_ones();
                    if in_a > top[ones - 1] {
                        top[ones - 1] = in_a;
                    }
                }
                if (1..=n).contains(&zeros) {
                    let in_b = n as u32 - (out >> n).count_ones();
                    if in_b > bottom[zeros - 1] {
                        bottom[zeros - 1] = in_b;
                    }
                }
            }
            (top, bottom)
        })
        .reduce(identity, |(mut t1, mut b1), (t2, b2)| {
            for (a, b) in t1.iter_mut().zip(t2) {
                *a = (*a).max(b);
            }
            for (a, b) in b1.iter_mut().zip(b2) {
                *a = (*a).max(b);
            }
            (t1, b1)
        });
    Ok(HalverMeasurement {
        side: n,
        worst_top,
        worst_bottom,
    })
}

/// Worst attenuation ratio of a fragment, over all binary inputs whose
/// misplacement family size k stays within `lambda * n`: for inputs with
/// exactly k ones, the ratio of ones left in A to ones initially in A, and
/// symmetrically for zeros in B.
pub fn measure_attenuation(
    net: &Network,
    n: usize,
    lambda: Rational64,
) -> Result<Rational64, HalverError> {
    require_fragment(net, n)?;
    let wires = 2 * n;
    let total: u64 = 1 << wires;
    let a_mask: u64 = (1 << n) - 1;
    let k_cap = (lambda * Rational64::from_integer(n as i64))
        .floor()
        .to_integer() as usize;
    let worst = (0..total)
        .into_par_iter()
        .fold(
            || Rational64::from_integer(0),
            |mut acc, m| {
                let ones = m.count_ones() as usize;
                let zeros = wires - ones;
                let top_relevant = (1..=k_cap).contains(&ones);
                let bottom_relevant = (1..=k_cap).contains(&zeros);
                if top_relevant || bottom_relevant {
                    let out = net.apply_mask(m);
                    if top_relevant {
                        let before = (m & a_mask).count_ones() as i64;
                        if before > 0 {
                            let after = (out & a_mask).count_ones() as i64;
                            acc = acc.max(Rational64::new(after, before));
                        }
                    }
                    if bottom_relevant {
                        let before = n as i64 - (m >> n).count_ones() as i64;
                        if before > 0 {
                            let after = n as i64 - (out >> n).count_ones() as i64;
                            acc = acc.max(Rational64::new(after, before));
                        }
                    }
                }
                acc
            },
        )
        .reduce(|| Rational64::from_integer(0), Rational64::max);
    Ok(worst)
}

/// Bound on misplaced items when a halver is pushed past its nominal range:
/// for k in (n, 2n], at most `eps*n + (1-eps)*(k-n)` of the largest k stay
/// in A.
pub fn overflow_bound(epsilon: Rational64, n: usize, k: usize) -> Rational64 {
    let n = Rational64::from_integer(n as i64);
    let k = Rational64::from_integer(k as i64);
    epsilon * n + (Rational64::from_integer(1) - epsilon) * (k - n)
}

/// Exhaustively confirm the overflow bound for every k in (n, 2n], given
/// the fragment's measured epsilon.
pub fn check_overflow(net: &Network, n: usize, epsilon: Rational64) -> Result<bool, HalverError> {
    require_fragment(net, n)?;
    let wires = 2 * n;
    let total: u64 = 1 << wires;
    let a_mask: u64 = (1 << n) - 1;
    let ok = (0..total).into_par_iter().all(|m| {
        let ones = m.count_ones() as usize;
        let zeros = wires - ones;
        let top_relevant = ones > n; // k = ones in (n, 2n]
        let bottom_relevant = zeros > n;
        if !top_relevant && !bottom_relevant {
            return true;
        }
        let out = net.apply_mask(m);
        if top_relevant {
            let in_a = (out & a_mask).count_ones() as i64;
            if Rational64::from_integer(in_a) > overflow_bound(epsilon, n, ones) {
                return false;
            }
        }
        if bottom_relevant {
            let in_b = n as i64 - (out >> n).count_ones() as i64;
            if Rational64::from_integer(in_b) > overflow_bound(epsilon, n, zeros) {
                return false;
            }
        }
        true
    });
    Ok(ok)
}

/// A halver degree estimate. `k` is the regular-graph degree; edge counts
/// are conventionally quoted per combined element, so `c = k/2`.
#[derive(Clone, Copy, Debug)]
pub struct HalverDegree {
    pub k: f64,
}

impl HalverDegree {
    pub fn k_int(&self) -> u64 {
        self.k.ceil() as u64
    }

    pub fn c(&self) -> f64 {
        self.k / 2.0
    }

    pub fn c_int(&self) -> u64 {
        (self.k / 2.0).ceil() as u64
    }
}

/// Constructive expander-based degree for an epsilon-halver:
/// `k = 2(1-e)(1-e+sqrt(1-2e))/e^2`, valid for e in (0, 1/2].
pub fn degree_constructive(epsilon: f64) -> Result<HalverDegree, HalverError> {
    if !(epsilon > 0.0 && epsilon <= 0.5) {
        return Err(HalverError::Domain(epsilon, "(0, 1/2]"));
    }
    let e = epsilon;
    let k = 2.0 * (1.0 - e) * (1.0 - e + (1.0 - 2.0 * e).sqrt()) / (e * e);
    Ok(HalverDegree { k })
}

/// Non-constructive degree bound for an epsilon-halver:
/// `k = ceil(2*ln(e)/ln(1-e) + 2/e - 1)`, valid for e in (0, 1). The log
/// ratio is base-independent.
pub fn degree_paterson(epsilon: f64) -> Result<HalverDegree, HalverError> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(HalverError::Domain(epsilon, "(0, 1)"));
    }
    let e = epsilon;
    let k = (2.0 * e.ln() / (1.0 - e).ln() + 2.0 / e - 1.0).ceil();
    Ok(HalverDegree { k })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_halver_smallest_is_one_comparator() {
        let net = emit_halver(&HalverSpec::Exact, 1, 0).unwrap();
        assert_eq!(net.gate_counts(), (1, 0));
        let g = net.gates()[0];
        assert_eq!((g.lo(), g.hi()), (0, 1));
    }

    #[test]
    fn exact_halver_side_two_is_batcher_four() {
        let net = emit_halver(&HalverSpec::Exact, 2, 0).unwrap();
        assert_eq!(net.gate_counts(), (5, 0));
    }

    #[test]
    fn base_wire_offsets_the_fragment() {
        let net = emit_halver(&HalverSpec::Exact, 2, 3).unwrap();
        assert_eq!(net.width(), 7);
        assert!(net.gates().iter().all(|g| g.lo() >= 3 && g.hi() < 7));
        let shifted = emit_halver(&HalverSpec::Exact, 2, 0).unwrap();
        let pairs: Vec<(usize, usize)> = net
            .gates()
            .iter()
            .map(|g| (g.lo() - 3, g.hi() - 3))
            .collect();
        let expect: Vec<(usize, usize)> =
            shifted.gates().iter().map(|g| (g.lo(), g.hi())).collect();
        assert_eq!(pairs, expect);
    }

    #[test]
    fn exact_halver_measures_zero() {
        for n in [1usize, 2, 3, 4, 5, 6] {
            let net = emit_halver(&HalverSpec::Exact, n, 0).unwrap();
            let m = measure_epsilon(&net, n).unwrap();
            assert_eq!(m.epsilon(), Rational64::from_integer(0), "side {n}");
        }
    }

    #[test]
    fn empty_fragment_has_epsilon_one() {
        let net = Network::new(2);
        let m = measure_epsilon(&net, 1).unwrap();
        assert_eq!(m.epsilon(), Rational64::from_integer(1));
    }

    #[test]
    fn zero_side_rejected() {
        assert_eq!(
            emit_halver(&HalverSpec::Exact, 0, 0).unwrap_err(),
            HalverError::EmptyInput
        );
    }

    #[test]
    fn oversize_measurement_refused() {
        let net = Network::new(26);
        assert_eq!(
            measure_epsilon(&net, 13).unwrap_err(),
            HalverError::TooWide {
                wires: 26,
                limit: 24
            }
        );
    }

    #[test]
    fn clamped_expander_is_complete_bipartite_and_halves_perfectly() {
        let net = emit_halver(&HalverSpec::Expander { degree: 4, seed: 0 }, 4, 0).unwrap();
        assert_eq!(net.gate_counts(), (16, 0));
        let m = measure_epsilon(&net, 4).unwrap();
        assert_eq!(m.epsilon(), Rational64::from_integer(0));
    }

    #[test]
    fn expander_generation_is_deterministic() {
        let spec = HalverSpec::Expander {
            degree: 3,
            seed: 99,
        };
        let a = emit_halver(&spec, 8, 0).unwrap();
        let b = emit_halver(&spec, 8, 0).unwrap();
        assert_eq!(a, b);
        let other = emit_halver(
            &HalverSpec::Expander {
                degree: 3,
                seed: 100,
            },
            8,
            0,
        )
        .unwrap();
        assert_ne!(a, other);
    }

    #[test]
    fn measurement_matches_binomial_oracle() {
        // Independent per-k oracle: enumerate only the masks with exactly k
        // ones via Gosper's hack, for each k separately.
        let net = emit_halver(&HalverSpec::Expander { degree: 2, seed: 5 }, 4, 0).unwrap();
        let n = 4usize;
        let wires = 2 * n;
        let measured = measure_epsilon(&net, n).unwrap();
        let a_mask: u64 = (1 << n) - 1;
        for k in 1..=n {
            let mut worst_top = 0u32;
            let mut worst_bottom = 0u32;
            // masks with exactly k ones -> top family
            let mut m: u64 = (1 << k) - 1;
            while m < (1 << wires) {
                let out = net.apply_mask(m);
                worst_top = worst_top.max((out & a_mask).count_ones());
                let c = m & m.wrapping_neg();
                let r = m + c;
                m = (((r ^ m) >> 2) / c) | r;
            }
            // masks with exactly k zeros -> bottom family
            let mut m: u64 = (1 << (wires - k)) - 1;
            while m < (1 << wires) {
                let out = net.apply_mask(m);
                worst_bottom = worst_bottom.max(n as u32 - (out >> n).count_ones());
                let c = m & m.wrapping_neg();
                let r = m + c;
                m = (((r ^ m) >> 2) / c) | r;
            }
            assert_eq!(measured.worst_top(k), worst_top, "top k={k}");
            assert_eq!(measured.worst_bottom(k), worst_bottom, "bottom k={k}");
        }
    }

    #[test]
    fn bitonic_sorter_is_a_zero_halver_too() {
        // second full-sorter source agreeing with the batcher-backed kind
        for side in [2usize, 4, 8] {
            let net = crate::baselines::bitonic_network(2 * side).unwrap();
            let m = measure_epsilon(&net, side).unwrap();
            assert_eq!(m.epsilon(), Rational64::from_integer(0));
        }
    }

    #[test]
    fn seeded_expander_epsilon_regression() {
        // frozen after first exhaustive computation over all 2^16 inputs
        let net = emit_halver(
            &HalverSpec::Expander {
                degree: 6,
                seed: 42,
            },
            8,
            0,
        )
        .unwrap();
        let m = measure_epsilon(&net, 8).unwrap();
        assert_eq!(m.epsilon(), Rational64::new(1, 3));
        assert!(m.epsilon() > Rational64::from_integer(0));
        assert!(m.epsilon() < Rational64::from_integer(1));
    }

    #[test]
    fn constructive_formula_value_at_quoted_point() {
        // the closed form at 1/402.15; differs from the 642,883 figure the
        // constants table quotes for the same construction
        let d = degree_constructive(1.0 / 402.15).unwrap();
        assert!((d.k - 643_684.29).abs() < 0.5, "k = {}", d.k);
    }

    #[test]
    fn overflow_bound_spot_value() {
        // eps=1/32, n=64, k=80 -> 2 + (31/32)*16 = 17.5
        let b = overflow_bound(Rational64::new(1, 32), 64, 80);
        assert_eq!(b, Rational64::new(35, 2));
        // k = 2n collapses to n
        let b = overflow_bound(Rational64::new(1, 32), 64, 128);
        assert_eq!(b, Rational64::from_integer(64));
    }

    #[test]
    fn exact_halver_passes_overflow() {
        for n in [2usize, 4, 6] {
            let net = emit_halver(&HalverSpec::Exact, n, 0).unwrap();
            assert!(check_overflow(&net, n, Rational64::from_integer(0)).unwrap());
        }
    }

    #[test]
    fn constructive_degree_values() {
        let d = degree_constructive(1.0 / 15.0).unwrap();
        assert!((d.k - 783.0).abs() < 0.01, "k = {}", d.k);
        assert_eq!(d.c_int(), 392);
        let d = degree_constructive(0.5).unwrap();
        assert!((d.k - 2.0).abs() < 1e-12);
        assert_eq!(d.c_int(), 1);
        assert!(degree_constructive(0.6).is_err());
        assert!(degree_constructive(0.0).is_err());
    }

    #[test]
    fn paterson_degree_values() {
        let d = degree_paterson(1.0 / 15.0).unwrap();
        assert_eq!(d.k_int(), 108);
        assert_eq!(d.c_int(), 54);
        // sanity near 1/2: finite, at least 1
        let d = degree_paterson(0.5).unwrap();
        assert!(d.k.is_finite() && d.c() >= 1.0);
        assert!(degree_paterson(1.0).is_err());
    }
}
