//! Property tests for the structural invariants: permutation preservation,
//! serialization round-trips, layering validity, the 0-1 principle, and
//! emission/execution agreement.

use proptest::prelude::*;

use oblivnet::halver::{emit_halver, HalverSpec};
use oblivnet::network::{Gate, GateKind, Network};
use oblivnet::zigzag::{
    emit_zigzag_network, zigzag_sort, zigzag_sort_traced, ZigZagConfig, ZigZagRealization,
};
use oblivnet::{batcher_network, bitonic_network, pratt_gaps, pratt_network};

fn arb_gate(width: usize) -> impl Strategy<Value = Gate> {
    (0..3u8, 0..width, 0..width)
        .prop_filter("distinct wires", |(_, a, b)| a != b)
        .prop_map(|(kind, a, b)| {
            let (lo, hi) = (a.min(b), a.max(b));
            match kind {
                0 => Gate::forward(lo, hi),
                1 => Gate::reverse(lo, hi),
                _ => Gate::swap(lo, hi),
            }
        })
}

fn arb_network() -> impl Strategy<Value = Network> {
    (2usize..10).prop_flat_map(|width| {
        prop::collection::vec(arb_gate(width), 0..40).prop_map(move |gates| {
            let mut net = Network::new(width);
            for g in gates {
                net.push(g);
            }
            net
        })
    })
}

fn permutations(n: usize) -> Vec<Vec<u8>> {
    fn rec(prefix: &mut Vec<u8>, rest: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if rest.is_empty() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..rest.len() {
            let v = rest.remove(i);
            prefix.push(v);
            rec(prefix, rest, out);
            prefix.pop();
            rest.insert(i, v);
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut (0..n as u8).collect(), &mut out);
    out
}

proptest! {
    #[test]
    fn apply_preserves_multiset(net in arb_network(), values in prop::collection::vec(0u32..50, 0..10)) {
        prop_assume!(values.len() >= net.width());
        let input = &values[..net.width()];
        let mut output = net.apply(input).unwrap();
        let mut expect = input.to_vec();
        output.sort_unstable();
        expect.sort_unstable();
        prop_assert_eq!(output, expect);
    }

    #[test]
    fn text_round_trip(net in arb_network()) {
        let back = Network::parse_text(&net.to_text()).unwrap();
        prop_assert_eq!(back, net);
    }

    #[test]
    fn layering_is_valid(net in arb_network()) {
        let layers = net.layer_assignment();
        let depth = net.depth();
        prop_assert_eq!(layers.iter().max().map_or(0, |m| m + 1), depth);
        let mut seen = vec![usize::MAX; net.width()];
        for (g, &l) in net.gates().iter().zip(&layers) {
            prop_assert_ne!(seen[g.lo()], l);
            prop_assert_ne!(seen[g.hi()], l);
            seen[g.lo()] = l;
            seen[g.hi()] = l;
        }
    }

    // For widths up to 6, passing the exhaustive 0-1 check is equivalent to
    // sorting every permutation.
    #[test]
    fn zero_one_principle_cross_check(
        width in 2usize..=6,
        gates in prop::collection::vec((0usize..6, 0usize..6), 0..25),
    ) {
        let mut net = Network::new(width);
        for (a, b) in gates {
            let (a, b) = (a % width, b % width);
            if a != b {
                net.push(Gate::forward(a.min(b), a.max(b)));
            }
        }
        let zero_one = net.verify_zero_one(24, 0, 0).passed;
        let all_perms = permutations(width).iter().all(|p| {
            let out = net.apply(p).unwrap();
            out.windows(2).all(|w| w[0] <= w[1])
        });
        prop_assert_eq!(zero_one, all_perms);
    }

    #[test]
    fn pratt_gaps_match_sieve(n in 1usize..5000) {
        let mut sieve: Vec<usize> = Vec::new();
        for v in 1..n {
            let mut x = v;
            while x % 2 == 0 { x /= 2; }
            while x % 3 == 0 { x /= 3; }
            if x == 1 { sieve.push(v); }
        }
        prop_assert_eq!(pratt_gaps(n), sieve);
    }

    #[test]
    fn zigzag_sorts_and_preserves(
        n_idx in 0usize..5,
        seed in any::<u64>(),
        swap_mode in any::<bool>(),
    ) {
        let n = [2usize, 4, 8, 16, 32][n_idx];
        let realization = if swap_mode {
            ZigZagRealization::SwapGates
        } else {
            ZigZagRealization::ReverseComparators
        };
        let cfg = ZigZagConfig::new(n, HalverSpec::Exact).unwrap().with_realization(realization);
        let mut data: Vec<u32> = (0..n as u32).map(|i| {
            // cheap deterministic scramble
            (seed as u32).wrapping_mul(2654435761).wrapping_add(i.wrapping_mul(40503)) % 64
        }).collect();
        let mut expect = data.clone();
        zigzag_sort(&mut data, &cfg).unwrap();
        expect.sort_unstable();
        prop_assert_eq!(data, expect);
    }

    #[test]
    fn emission_equals_direct_execution(seed in any::<u64>(), n_idx in 0usize..3) {
        let n = [8usize, 16, 32][n_idx];
        for realization in [ZigZagRealization::SwapGates, ZigZagRealization::ReverseComparators] {
            let cfg = ZigZagConfig::new(n, HalverSpec::Exact).unwrap().with_realization(realization);
            let net = emit_zigzag_network(&cfg).unwrap();
            let mut data: Vec<u64> = (0..n as u64).map(|i| seed.rotate_left(i as u32) % 97).collect();
            let by_net = net.apply(&data).unwrap();
            zigzag_sort(&mut data, &cfg).unwrap();
            prop_assert_eq!(by_net, data);
        }
    }

    #[test]
    fn expander_emission_deterministic(n in 1usize..12, degree in 1u32..12, seed in any::<u64>()) {
        let spec = HalverSpec::Expander { degree, seed };
        let a = emit_halver(&spec, n, 0).unwrap();
        let b = emit_halver(&spec, n, 0).unwrap();
        prop_assert_eq!(a, b);
    }
}

#[test]
fn zero_one_principle_positive_case() {
    let net = batcher_network(4).unwrap();
    assert!(net.verify_zero_one(24, 0, 0).passed);
    assert!(permutations(4).iter().all(|p| {
        let out = net.apply(p).unwrap();
        out.windows(2).all(|w| w[0] <= w[1])
    }));
}

#[test]
fn removing_a_batcher_gate_breaks_sorting() {
    let full = batcher_network(4).unwrap();
    let mut pruned = Network::new(4);
    let mut removed = false;
    for g in full.gates() {
        if !removed && g.lo() == 1 && g.hi() == 2 && g.kind() == GateKind::Forward {
            removed = true;
            continue;
        }
        pruned.push(*g);
    }
    assert!(removed);
    let report = pruned.verify_zero_one(24, 0, 0);
    assert!(!report.passed);
    // the classic counterexample input, and the reported witness, both fail
    assert_eq!(pruned.apply(&[0u8, 1, 1, 0]).unwrap(), vec![0, 1, 0, 1]);
    let witness = report.witness.unwrap();
    let out = pruned.apply(&witness).unwrap();
    assert!(out.windows(2).any(|w| w[0] > w[1]));
}

#[test]
fn baselines_pass_sampled_verification_to_1024() {
    for n in [64usize, 256, 1024] {
        for (name, net) in [
            ("batcher", batcher_network(n).unwrap()),
            ("bitonic", bitonic_network(n).unwrap()),
            ("pratt", pratt_network(n)),
        ] {
            let report = net.verify_zero_one(24, 20_000, 9);
            assert!(report.passed, "{name} n={n}: {:?}", report.witness);
            assert_eq!(report.inputs_checked, 20_000);
        }
    }
}

#[test]
fn all_sorters_agree_on_identical_input() {
    let n = 16;
    let input: Vec<u32> = (0..n as u32)
        .map(|i| i.wrapping_mul(2246822519) % 40)
        .collect();
    let cfg = ZigZagConfig::new(n, HalverSpec::Exact).unwrap();
    let mut zig = input.clone();
    zigzag_sort(&mut zig, &cfg).unwrap();
    for net in [
        batcher_network(n).unwrap(),
        bitonic_network(n).unwrap(),
        pratt_network(n),
    ] {
        assert_eq!(net.apply(&input).unwrap(), zig);
    }
}

#[test]
fn direct_sort_trace_matches_emitted_gate_list() {
    let cfg = ZigZagConfig::new(16, HalverSpec::Exact).unwrap();
    let net = emit_zigzag_network(&cfg).unwrap();
    let mut data: Vec<u16> = (0..16).rev().collect();
    let trace = zigzag_sort_traced(&mut data, &cfg).unwrap();
    let emitted: Vec<_> = net
        .gates()
        .iter()
        .map(|g| (g.kind(), g.lo(), g.hi()))
        .collect();
    assert_eq!(trace, emitted);
}
